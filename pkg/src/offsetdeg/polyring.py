"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A :class:`Ring` fixes an ordered tuple of variable names.  Every
:class:`Polynomial` belongs to one ring and stores its terms as a dict
``{monomial_key: coefficient}`` with no zero coefficients.

Monomials are packed into a single Python integer: one 16-bit field per
variable (variable 0 most significant) topped by a field holding the total
degree.  Integer comparison of keys is then the graded lexicographic order,
and multiplying monomials is adding keys.  The top bit of each field is a
guard bit used by the divisibility test, which limits exponents and total
degrees to below 2**15.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from math import isqrt
from math import lcm as ilcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import DegeneracyError, OffsetDegreeError

__all__ = [
    "CANONICAL_VARS",
    "Ring",
    "Polynomial",
    "NotDivisible",
    "DegenerateResultant",
    "arith",
    "exact_div",
    "derivative",
    "homogenize",
    "degree_in",
    "content_pp",
    "gcd",
    "gcd_prs",
    "normalize",
    "resultant",
    "substitute",
    "squarefree_defect",
    "squarefree_part",
    "is_homogeneous",
]

#: Variables every computation context provides, in canonical order.
CANONICAL_VARS = ("y1", "y2", "y3", "d", "k", "x1", "x2", "t")

_BITS = 16
_FIELD = (1 << _BITS) - 1
_HALF = 1 << (_BITS - 1)
MAX_EXPONENT = _HALF - 1


class NotDivisible(OffsetDegreeError, ArithmeticError):
    """Raised by :func:`exact_div` when the quotient is not a polynomial."""


class DegenerateResultant(DegeneracyError):
    """Raised when a resultant argument has degree 0 in the eliminated variable."""


class Ring:
    """An ordered variable universe shared by the polynomials of one computation."""

    __slots__ = ("names", "nvars", "_index", "_shift", "_tshift", "_tunit", "_guard", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self._shift = tuple(_BITS * (self.nvars - 1 - i) for i in range(self.nvars))
        self._tshift = _BITS * self.nvars
        self._tunit = 1 << self._tshift
        self._guard = sum(_HALF << (_BITS * j) for j in range(self.nvars + 1))
        self._hash = hash(names)

    @classmethod
    def canonical(cls, params: Sequence[str] = ()) -> "Ring":
        """The formula universe ``y1 y2 y3 d k x1 x2 t`` followed by ``params``."""
        return cls(CANONICAL_VARS + tuple(params))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def __reduce__(self):
        return (Ring, (self.names,))

    def index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(var)
            return var
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"variable {var!r} is not in {self!r}") from None

    def indices(self, vars: Iterable[Union[str, int]]) -> tuple[int, ...]:
        return tuple(sorted({self.index(v) for v in vars}))

    # -- monomial keys --------------------------------------------------

    def key(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        k = 0
        total = 0
        for e, s in zip(exps, self._shift):
            if e < 0 or e > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} out of range")
            k |= e << s
            total += e
        if total > MAX_EXPONENT:
            raise OverflowError("total degree out of range")
        return k | (total << self._tshift)

    def exponents(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & _FIELD for s in self._shift)

    def var_key(self, var, power: int = 1) -> int:
        i = self.index(var)
        return (power << self._shift[i]) + power * self._tunit

    # -- constructors ---------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return Polynomial._make(self, {0: 1})

    def const(self, c: int) -> "Polynomial":
        c = int(c)
        return Polynomial._make(self, {0: c} if c else {})

    def gen(self, name) -> "Polynomial":
        return Polynomial._make(self, {self.var_key(name): 1})

    def gens(self, *names) -> tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in names)

    def from_dict(self, terms: Mapping[Sequence[int], int]) -> "Polynomial":
        out: dict[int, int] = {}
        for exps, c in terms.items():
            if c:
                k = self.key(tuple(exps))
                v = out.get(k, 0) + int(c)
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Polynomial._make(self, out)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return self.from_dict({tuple(exps): coeff})


def _divides(small: int, big: int, guard: int) -> bool:
    return ((big | guard) - small) & guard == guard


class Polynomial:
    """Immutable sparse polynomial; see the module docstring for the encoding."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Sequence[int], int] | None = None):
        p = ring.from_dict(terms or {})
        self.ring = ring
        self._terms = p._terms
        self._hash = None

    @classmethod
    def _make(cls, ring: Ring, terms: dict) -> "Polynomial":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    def __reduce__(self):
        return (_rebuild, (self.ring.names, tuple(self._terms.items())))

    # -- inspection -----------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms as ``(exponents, coeff)`` pairs in decreasing graded-lex order."""
        ring = self.ring
        return [(ring.exponents(k), self._terms[k]) for k in sorted(self._terms, reverse=True)]

    def coeffs(self) -> list[int]:
        return list(self._terms.values())

    def leading_key(self) -> int:
        return max(self._terms)

    def leading_coeff(self) -> int:
        if not self._terms:
            return 0
        return self._terms[max(self._terms)]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(self._terms) >> self.ring._tshift

    def degree(self, var) -> int:
        if not self._terms:
            return -1
        s = self.ring._shift[self.ring.index(var)]
        return max((k >> s) & _FIELD for k in self._terms)

    def variables(self) -> tuple[int, ...]:
        """Indices of the variables occurring in the polynomial."""
        acc = 0
        for k in self._terms:
            acc |= k
        shifts = self.ring._shift
        return tuple(i for i in range(self.ring.nvars) if (acc >> shifts[i]) & _FIELD)

    def depends_on(self, var) -> bool:
        s = self.ring._shift[self.ring.index(var)]
        return any((k >> s) & _FIELD for k in self._terms)

    def content_int(self) -> int:
        g = 0
        for c in self._terms.values():
            g = igcd(g, c)
            if g == 1:
                break
        return g

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return Polynomial._make(self.ring, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._make(self.ring, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        if not c:
            return self.ring.zero()
        return Polynomial._make(self.ring, {k: v * c for k, v in self._terms.items()})

    def shift(self, key: int) -> "Polynomial":
        """Multiply by the monomial with packed key ``key``."""
        return Polynomial._make(self.ring, {k + key: v for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for exps, c in self.terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"

    def evaluate(self, values: Mapping) -> object:
        """Evaluate at a full point ``{name: value}``; values may be any numeric type."""
        ring = self.ring
        vals = [values[n] if self.depends_on(n) else 0 for n in ring.names]
        total = 0
        for exps, c in self.terms():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total


def _rebuild(names, items):
    return Polynomial._make(Ring(names), dict(items))


def _mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        (kb, cb), = b.items()
        return {k + kb: c * cb for k, c in a.items()}
    out: dict[int, int] = {}
    get = out.get
    aitems = list(a.items())
    for kb, cb in b.items():
        for ka, ca in aitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _check_same(p: Polynomial, q: Polynomial) -> None:
    if p.ring != q.ring:
        raise ValueError(f"ring mismatch: {p.ring!r} vs {q.ring!r}")


# ---------------------------------------------------------------------------
# Basic operations
# ---------------------------------------------------------------------------


def arith(p: Polynomial, q: Polynomial, kind: str) -> Polynomial:
    _check_same(p, q)
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisible` otherwise."""
    _check_same(p, q)
    qt = q._terms
    if not qt:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    pt = p._terms
    if not pt:
        return p
    guard = ring._guard
    if len(qt) == 1:
        (kq, cq), = qt.items()
        out = {}
        for k, c in pt.items():
            if c % cq or not _divides(kq, k, guard):
                raise NotDivisible(f"{q} does not divide {p}")
            out[k - kq] = c // cq
        return Polynomial._make(ring, out)

    lk = max(qt)
    lc = qt[lk]
    tail = [(k, c) for k, c in qt.items() if k != lk]
    rem = dict(pt)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        if c % lc or not _divides(lk, k, guard):
            raise NotDivisible(f"{q} does not divide {p}")
        mk = k - lk
        mc = c // lc
        quot[mk] = mc
        for kt, ct in tail:
            kk = kt + mk
            v = rem.get(kk, 0) - mc * ct
            if v:
                if kk not in rem:
                    heapq.heappush(heap, -kk)
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return Polynomial._make(ring, quot)


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        exact_div(p, q)
    except NotDivisible:
        return False
    return True


def derivative(p: Polynomial, v) -> Polynomial:
    ring = p.ring
    i = ring.index(v)
    s = ring._shift[i]
    dec = (1 << s) + ring._tunit
    out = {}
    for k, c in p._terms.items():
        e = (k >> s) & _FIELD
        if e:
            out[k - dec] = c * e
    return Polynomial._make(ring, out)


def _degree_fn(ring: Ring, wrt):
    shifts = [ring._shift[i] for i in ring.indices(wrt)]
    if len(shifts) == ring.nvars:
        ts = ring._tshift
        return lambda k: k >> ts

    def deg(k):
        return sum((k >> s) & _FIELD for s in shifts)

    return deg


def degree_in(p: Polynomial, wrt) -> int:
    """Maximal combined degree in the variables ``wrt``; ``-1`` for the zero polynomial."""
    if not p._terms:
        return -1
    deg = _degree_fn(p.ring, wrt)
    return max(deg(k) for k in p._terms)


def is_homogeneous(p: Polynomial, wrt) -> bool:
    if not p._terms:
        return True
    deg = _degree_fn(p.ring, wrt)
    return len({deg(k) for k in p._terms}) == 1


def homogenize(p: Polynomial, hv, wrt) -> Polynomial:
    ring = p.ring
    if p.depends_on(hv):
        raise ValueError(f"homogenizing variable {hv!r} occurs in the polynomial")
    deg = _degree_fn(ring, wrt)
    top = degree_in(p, wrt)
    unit = ring.var_key(hv)
    return Polynomial._make(ring, {k + (top - deg(k)) * unit: c for k, c in p._terms.items()})


# ---------------------------------------------------------------------------
# Coefficient views
# ---------------------------------------------------------------------------


def _split(p: Polynomial, idx: Sequence[int]) -> dict[int, dict[int, int]]:
    """Group terms by their monomial in ``idx``: ``{main_key: {rest_key: c}}``."""
    ring = p.ring
    shifts = [ring._shift[i] for i in idx]
    mask = 0
    for s in shifts:
        mask |= _FIELD << s
    ts = ring._tshift
    groups: dict[int, dict[int, int]] = {}
    for k, c in p._terms.items():
        mk = k & mask
        md = sum((mk >> s) & _FIELD for s in shifts)
        main = mk | (md << ts)
        groups.setdefault(main, {})[k - main] = c
    return groups


def coefficients(p: Polynomial, main) -> dict[tuple[int, ...], Polynomial]:
    """Coefficients of ``p`` viewed as a polynomial in the variables ``main``.

    Keys are exponent vectors restricted to ``main`` (in ring order).
    """
    ring = p.ring
    idx = ring.indices(main)
    out = {}
    for mk, rest in _split(p, idx).items():
        exps = ring.exponents(mk)
        out[tuple(exps[i] for i in idx)] = Polynomial._make(ring, rest)
    return out


def _to_univariate(p: Polynomial, i: int) -> list[Polynomial]:
    ring = p.ring
    s = ring._shift[i]
    unit = ring._tunit
    buckets: dict[int, dict[int, int]] = {}
    for k, c in p._terms.items():
        e = (k >> s) & _FIELD
        buckets.setdefault(e, {})[k - e * ((1 << s) + unit)] = c
    if not buckets:
        return []
    out = [ring.zero()] * (max(buckets) + 1)
    for e, terms in buckets.items():
        out[e] = Polynomial._make(ring, terms)
    return out


def _from_univariate(coeffs: Sequence[Polynomial], i: int, ring: Ring) -> Polynomial:
    step = (1 << ring._shift[i]) + ring._tunit
    out: dict[int, int] = {}
    for e, c in enumerate(coeffs):
        off = e * step
        for k, v in c._terms.items():
            out[k + off] = v
    return Polynomial._make(ring, out)


def _trim(u: list[Polynomial]) -> list[Polynomial]:
    while u and not u[-1]._terms:
        u.pop()
    return u


def _prem(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a  mod  b``."""
    r = list(a)
    db = len(b) - 1
    lcb = b[-1]
    n = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        j = len(r) - 1 - db
        r = [c * lcb for c in r[:-1]]
        for i in range(db):
            if b[i]._terms:
                r[i + j] = r[i + j] - lr * b[i]
        _trim(r)
        n -= 1
    if n and r:
        f = lcb ** n
        r = [c * f for c in r]
    return r


def _div_coeffs(u: list[Polynomial], q: Polynomial) -> list[Polynomial]:
    if q.is_constant() and q.constant_value() == 1:
        return u
    return [exact_div(c, q) for c in u]


def _subresultant_prs(a: list[Polynomial], b: list[Polynomial], ring: Ring):
    """Run the subresultant PRS on ``a``, ``b`` with ``deg a >= deg b >= 0``.

    Returns ``(last_a, last_b, sign, h)`` at termination, where the loop stops
    as soon as ``b`` has degree 0 or vanishes.
    """
    g = ring.one()
    h = ring.one()
    s = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        a = b
        if not r:
            return a, [], s, h
        den = g * h**delta if delta else g
        b = _div_coeffs(r, den)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g**delta, h ** (delta - 1))
        if len(b) == 1:
            return a, b, s, h


def _resultant_prs(p: Polynomial, q: Polynomial, i: int) -> Polynomial:
    ring = p.ring
    a = _to_univariate(p, i)
    b = _to_univariate(q, i)
    s = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            s = -1
        a, b = b, a
    a, b, s2, h = _subresultant_prs(a, b, ring)
    if not b:
        return ring.zero()
    da = len(a) - 1
    lb = b[-1]
    if da == 0:
        res = h
    elif da == 1:
        res = lb
    else:
        res = exact_div(lb**da, h ** (da - 1))
    return res if s * s2 > 0 else -res


def sylvester_matrix(p: Polynomial, q: Polynomial, v) -> list[list[Polynomial]]:
    """Sylvester matrix of ``p`` and ``q`` in ``v``, ``p``'s rows first."""
    ring = p.ring
    i = ring.index(v)
    a = _to_univariate(p, i)[::-1]
    b = _to_univariate(q, i)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = ring.zero()
    rows = []
    for r in range(n):
        rows.append([zero] * r + a + [zero] * (size - r - len(a)))
    for r in range(m):
        rows.append([zero] * r + b + [zero] * (size - r - len(b)))
    return rows


def bareiss_det(matrix: Sequence[Sequence[Polynomial]], ring: Ring) -> Polynomial:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return ring.one()
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not m[k][k]._terms:
            for r in range(k + 1, n):
                if m[r][k]._terms:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                val = piv * row_i[j]
                if mik._terms and row_k[j]._terms:
                    val = val - mik * row_k[j]
                row_i[j] = exact_div(val, prev)
            row_i[k] = ring.zero()
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Polynomial, q: Polynomial, v, method: str = "prs") -> Polynomial:
    """Sylvester resultant of ``p`` and ``q`` eliminating ``v``.

    ``method`` is ``"prs"`` (subresultant remainder sequence) or ``"bareiss"``
    (fraction-free determinant of the Sylvester matrix).
    """
    _check_same(p, q)
    ring = p.ring
    i = ring.index(v)
    dp, dq = p.degree(i), q.degree(i)
    if dp < 1 or dq < 1:
        raise DegenerateResultant(
            f"resultant in {ring.names[i]} needs positive degrees, got {dp} and {dq}"
        )
    if method == "prs":
        return _resultant_prs(p, q, i)
    if method == "bareiss":
        return bareiss_det(sylvester_matrix(p, q, i), ring)
    raise ValueError(f"unknown resultant method {method!r}")


# ---------------------------------------------------------------------------
# gcd and content
# ---------------------------------------------------------------------------


def normalize(p: Polynomial) -> Polynomial:
    """Primitive over the integers with a positive leading coefficient."""
    if not p._terms:
        return p
    c = p.content_int()
    if p.leading_coeff() < 0:
        c = -c
    if c == 1:
        return p
    return Polynomial._make(p.ring, {k: v // c for k, v in p._terms.items()})


def _monomial_gcd(m: Polynomial, p: Polynomial) -> Polynomial:
    ring = m.ring
    (km,) = m._terms
    exps = list(ring.exponents(km))
    for k in p._terms:
        e2 = ring.exponents(k)
        exps = [min(a, b) for a, b in zip(exps, e2)]
        if not any(exps):
            break
    return ring.monomial(exps)


def _gcd_many(polys: Iterable[Polynomial], ring: Ring) -> Polynomial:
    """Normalized gcd of several polynomials, smallest first, stopping at 1."""
    items = sorted((p for p in polys if p._terms), key=len)
    if not items:
        return ring.zero()
    g = normalize(items[0])
    for p in items[1:]:
        if g.is_constant():
            break
        g = gcd(g, p)
    return g


def _content_in(u: list[Polynomial], ring: Ring) -> Polynomial:
    return _gcd_many(u, ring)


def _trivial_gcd(p: Polynomial, q: Polynomial):
    ring = p.ring
    if not p._terms:
        return normalize(q)
    if not q._terms:
        return normalize(p)
    if p.is_constant() or q.is_constant():
        return ring.one()
    if p.is_monomial():
        return _monomial_gcd(p, q)
    if q.is_monomial():
        return _monomial_gcd(q, p)
    if p == q:
        return normalize(p)
    return None


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor over the rationals, see :func:`normalize`.

    Tries the heuristic evaluation gcd first and falls back to the
    subresultant remainder sequence when it gives up.
    """
    _check_same(p, q)
    g = _trivial_gcd(p, q)
    if g is not None:
        return g
    g = _heu_gcd(p, q)
    if g is not None:
        return normalize(g)
    return gcd_prs(p, q)


def gcd_prs(p: Polynomial, q: Polynomial) -> Polynomial:
    """gcd through contents and the subresultant remainder sequence."""
    _check_same(p, q)
    g = _trivial_gcd(p, q)
    if g is not None:
        return g
    ring = p.ring
    vp, vq = p.variables(), q.variables()
    common = sorted(set(vp) & set(vq))
    if not common:
        return ring.one()
    i = common[0]
    if len(vp) > len(common) or len(vq) > len(common):
        # Variables present in one argument only must drop out of the gcd.
        only_p = [j for j in vp if j not in vq]
        only_q = [j for j in vq if j not in vp]
        if only_p:
            return gcd_prs(_gcd_many(coefficients(p, only_p).values(), ring), q)
        return gcd_prs(p, _gcd_many(coefficients(q, only_q).values(), ring))
    a = _to_univariate(p, i)
    b = _to_univariate(q, i)
    ca = _content_in(a, ring)
    cb = _content_in(b, ring)
    c = gcd_prs(ca, cb)
    a = _div_coeffs(a, ca)
    b = _div_coeffs(b, cb)
    if len(a) < len(b):
        a, b = b, a
    last_a, last_b, _, _ = _subresultant_prs(a, b, ring)
    if last_b:
        g = ring.one()
    else:
        g = _from_univariate(_div_coeffs(last_a, _content_in(last_a, ring)), i, ring)
    return normalize(c * g)


# Heuristic gcd: evaluate one variable at a large integer, recurse, and
# rebuild the candidate from the symmetric base-xi digits of the result.
# A candidate is only accepted once it divides both inputs exactly.

_HEU_ATTEMPTS = 6


def _max_norm(p: Polynomial) -> int:
    return max(abs(c) for c in p._terms.values())


def _eval_at(p: Polynomial, i: int, xi: int) -> Polynomial:
    ring = p.ring
    s = ring._shift[i]
    step = (1 << s) + ring._tunit
    pw = {0: 1}
    out: dict[int, int] = {}
    for k, c in p._terms.items():
        e = (k >> s) & _FIELD
        if e not in pw:
            pw[e] = xi**e
        nk = k - e * step
        out[nk] = out.get(nk, 0) + c * pw[e]
    return Polynomial._make(ring, {k: c for k, c in out.items() if c})


def _interpolate(h: Polynomial, i: int, xi: int) -> Polynomial:
    ring = h.ring
    step = (1 << ring._shift[i]) + ring._tunit
    half = xi // 2
    out: dict[int, int] = {}
    for k, c in h._terms.items():
        e = 0
        while c:
            digit = c % xi
            if digit > half:
                digit -= xi
            c = (c - digit) // xi
            if digit:
                out[k + e * step] = digit
            e += 1
    return Polynomial._make(ring, out)


def _int_primitive(p: Polynomial) -> Polynomial:
    c = p.content_int()
    if p.leading_coeff() < 0:
        c = -c
    return p if c == 1 else Polynomial._make(p.ring, {k: v // c for k, v in p._terms.items()})


def _try_div(p: Polynomial, q: Polynomial):
    try:
        return exact_div(p, q)
    except NotDivisible:
        return None


def _heu_gcd(f: Polynomial, g: Polynomial):
    """gcd over the integers (content included) or ``None`` if the heuristic fails."""
    ring = f.ring
    if f.is_constant() and g.is_constant():
        return ring.const(igcd(f.constant_value(), g.constant_value()))
    if not f._terms or not g._terms:
        return None
    cf, cg = f.content_int(), g.content_int()
    ic = igcd(cf, cg)
    f = Polynomial._make(ring, {k: v // ic for k, v in f._terms.items()}) if ic != 1 else f
    g = Polynomial._make(ring, {k: v // ic for k, v in g._terms.items()}) if ic != 1 else g
    occurring = sorted(set(f.variables()) | set(g.variables()))
    i = occurring[0]
    if f.is_constant() or g.is_constant():
        # One side is an integer n: the gcd is igcd(n, content of the other).
        return ring.const(ic * igcd(f.content_int(), g.content_int()))
    fn, gn = _max_norm(f), _max_norm(g)
    # xi >= 2 min(|f|, |g|) + 2 makes an exactly dividing candidate the gcd.
    xi = 2 * min(fn, gn) + 29
    for _ in range(_HEU_ATTEMPTS):
        if xi.bit_length() > 4096:
            return None
        ff = _eval_at(f, i, xi)
        gg = _eval_at(g, i, xi)
        if ff._terms and gg._terms:
            h = _heu_gcd(ff, gg)
            if h is None:
                return None
            cand = _int_primitive(_interpolate(h, i, xi))
            if cand._terms:
                if _try_div(f, cand) is not None and _try_div(g, cand) is not None:
                    return cand.scale(ic)
            for whole, image in ((f, ff), (g, gg)):
                cof_img = _try_div(image, h)
                if cof_img is None:
                    continue
                cof = _interpolate(cof_img, i, xi)
                if not cof._terms:
                    continue
                cand = _try_div(whole, cof)
                if cand is not None:
                    cand = _int_primitive(cand)
                    other = g if whole is f else f
                    if _try_div(other, cand) is not None:
                        return cand.scale(ic)
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


def content_pp(p: Polynomial, main) -> tuple[Polynomial, Polynomial]:
    """Split ``p`` viewed in ``main`` into ``(content, primitive_part)``.

    The content carries the integer content of ``p`` and has a positive
    leading coefficient, so ``content * pp == p`` and ``pp`` is primitive.
    """
    ring = p.ring
    if not p._terms:
        return ring.zero(), ring.zero()
    coeffs = list(coefficients(p, main).values())
    c = _gcd_many(coeffs, ring)
    ic = igcd(*[ci.content_int() for ci in coeffs]) if len(coeffs) > 1 else coeffs[0].content_int()
    content = c.scale(ic // c.content_int())
    return content, exact_div(p, content)


def squarefree_defect(p: Polynomial) -> Polynomial:
    """gcd of ``p`` and all its partial derivatives; constant iff ``p`` is squarefree."""
    if not p._terms:
        raise ValueError("squarefree_defect of the zero polynomial")
    ring = p.ring
    g = normalize(p)
    for i in p.variables():
        g = gcd(g, derivative(p, i))
        if g.is_constant():
            break
    return g


def squarefree_part(p: Polynomial) -> Polynomial:
    defect = squarefree_defect(p)
    return normalize(exact_div(p, defect))


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

Binding = Union[int, Fraction, Polynomial]


def substitute(p: Polynomial, bindings: Mapping[object, Binding]) -> Polynomial:
    """Simultaneous substitution of variables by rationals or polynomials.

    Rational bindings may introduce denominators; the result is then
    multiplied by the least common denominator so it stays integral.
    """
    ring = p.ring
    numeric: dict[int, Fraction] = {}
    poly: dict[int, Polynomial] = {}
    for var, val in bindings.items():
        i = ring.index(var)
        if isinstance(val, Polynomial):
            _check_same(p, val)
            poly[i] = val
        else:
            numeric[i] = Fraction(val)
    if not numeric and not poly:
        return p

    if not numeric and all(v.is_monomial() and v.leading_coeff() == 1 and v.total_degree() == 1
                           for v in poly.values()):
        return _permute(p, {i: v.variables()[0] for i, v in poly.items()})

    nidx = sorted(numeric)
    nshift = [ring._shift[i] for i in nidx]
    nvals = [numeric[i] for i in nidx]
    acc: dict[int, Fraction] = {}
    if numeric:
        mask = sum(_FIELD << s for s in nshift)
        for k, c in p._terms.items():
            mk = k & mask
            es = [(mk >> s) & _FIELD for s in nshift]
            rest = k - mk - sum(es) * ring._tunit
            val = Fraction(c)
            for x, e in zip(nvals, es):
                if e:
                    val *= x**e
            if val:
                acc[rest] = acc.get(rest, 0) + val
        den = 1
        for v in acc.values():
            den = ilcm(den, v.denominator)
        base = Polynomial._make(ring, {k: int(v * den) for k, v in acc.items() if v})
    else:
        base = p

    if not poly:
        return base

    pidx = sorted(poly)
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = poly[i] ** e
        return powers[key]

    groups = _split(base, pidx)
    result = ring.zero()
    for mk, rest in groups.items():
        exps = ring.exponents(mk)
        term = Polynomial._make(ring, rest)
        for i in pidx:
            if exps[i]:
                term = term * power(i, exps[i])
        result = result + term
    return result


def _permute(p: Polynomial, mapping: Mapping[int, int]) -> Polynomial:
    ring = p.ring
    full = list(range(ring.nvars))
    for i, j in mapping.items():
        full[i] = j
    out: dict[int, int] = {}
    for k, c in p._terms.items():
        exps = ring.exponents(k)
        new = [0] * ring.nvars
        for i, e in enumerate(exps):
            new[full[i]] += e
        nk = ring.key(new)
        v = out.get(nk, 0) + c
        if v:
            out[nk] = v
        else:
            out.pop(nk, None)
    return Polynomial._make(ring, out)
