"""Desk-scale cross-check: eliminate the offset equation explicitly.

The system ``f = 0``, ``(x1-y1)^2 + (x2-y2)^2 - d^2 = 0`` and
``-f2 (x1-y1) + f1 (x2-y2) = 0`` is reduced by iterated resultants (``y1``
first, then ``y2``).  Iterated resultants pick up extraneous factors, so the
squarefree result is split into irreducible factors and each one is kept
only if it vanishes at a numerically generated offset point.  Those sample
points are built from curve points with nonzero ``f1^2 + f2^2``, which is
how the excluded isotropic points are enforced.

This is a test fixture: it is slow, probabilistic in its filtering, and
limited to low-degree curves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import sympy

from .errors import CostGuard, OffsetDegreeError
from .formulas import ImplicitCurve
from .polyring import (
    Polynomial,
    content_pp,
    degree_in,
    derivative,
    normalize,
    resultant,
    squarefree_part,
    substitute,
)

SYMBOLIC_MAX_DEGREE = 2
SPECIALIZED_MAX_DEGREE = 4
MIN_SAMPLES = 20
REL_TOL = mpmath.mpf("1e-6")
MAX_LINES = 60
MAX_RETRIES = 5
_DPS = 60
_LINE_DENOM = 97


class SampleFailure(OffsetDegreeError):
    pass


@dataclass
class EliminationResult:
    g_candidate: Polynomial
    kept_factors: list[Polynomial]
    discarded_factors: list[tuple[Polynomial, str]]
    mode: str
    d0: Optional[Fraction] = None
    attempts: list[dict] = field(default_factory=list)


def _eliminate(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    if not q.depends_on(v):
        return q
    if not p.depends_on(v):
        return p
    return resultant(p, q, v)


def _random_d0(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(7, 40), rng.randint(3, 11))


def _to_sympy(p: Polynomial):
    ring = p.ring
    idx = p.variables()
    gens = [sympy.Symbol(ring.names[i]) for i in idx]
    terms = {tuple(exps[i] for i in idx): c for exps, c in p.terms()}
    if not gens:
        return sympy.Poly(p.constant_value(), sympy.Symbol("y1")), []
    return sympy.Poly.from_dict(terms, *gens), list(idx)


def _from_sympy(poly, idx, ring) -> Polynomial:
    out = {}
    for exps, c in poly.as_dict().items():
        full = [0] * ring.nvars
        for i, e in zip(idx, exps):
            full[i] = e
        out[tuple(full)] = int(c)
    return ring.from_dict(out)


def irreducible_factors(p: Polynomial) -> list[Polynomial]:
    """Distinct irreducible factors over the rationals (delegated to sympy)."""
    if p.is_constant():
        return []
    poly, idx = _to_sympy(p)
    _, factors = sympy.factor_list(poly)
    return [normalize(_from_sympy(fac, idx, p.ring)) for fac, _ in factors]


def offset_samples(c: ImplicitCurve, d0: Fraction, rng: random.Random,
                   count: int = MIN_SAMPLES) -> list[tuple]:
    """Complex points ``(x1, x2)`` on the offset at distance ``d0``.

    Curve points come from intersecting the curve with random rational lines;
    each is pushed by ``+-d0`` along the unit normal.
    """
    ring = c.ring
    t = ring.gen("t")
    f1, f2 = c.f1, c.f2
    samples = []
    with mpmath.workdps(_DPS):
        dv = mpmath.mpf(d0.numerator) / d0.denominator
        for _ in range(MAX_LINES):
            # y = (P + s V) / Q; off-lattice base points keep the lines away
            # from special points such as vertices and singularities.
            q = _LINE_DENOM
            p1, p2 = rng.randint(-9 * q, 9 * q), rng.randint(-9 * q, 9 * q)
            v1, v2 = rng.randint(-9 * q, 9 * q), rng.randint(1, 9 * q)
            along = substitute(c.F, {"y1": p1 + v1 * t, "y2": p2 + v2 * t, "y3": q})
            deg = along.degree("t")
            if deg < 1:
                continue
            coeffs = [0] * (deg + 1)
            for exps, coef in along.terms():
                coeffs[deg - exps[ring.index("t")]] += coef
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=200)
            except mpmath.libmp.NoConvergence:
                continue
            for s in roots:
                y = {"y1": (p1 + v1 * s) / q, "y2": (p2 + v2 * s) / q}
                g1 = _evaluate(f1, y)
                g2 = _evaluate(f2, y)
                nn = g1 * g1 + g2 * g2
                if abs(nn) < mpmath.mpf("1e-20"):
                    continue
                root = mpmath.sqrt(nn)
                for sign in (1, -1):
                    samples.append((y["y1"] + sign * dv * g1 / root, y["y2"] + sign * dv * g2 / root))
            if len(samples) >= count:
                return samples
    raise SampleFailure(f"only {len(samples)} offset samples after {MAX_LINES} random lines")


def _evaluate(p: Polynomial, point: dict):
    ring = p.ring
    vals = [point.get(n, 0) for n in ring.names]
    total = mpmath.mpc(0)
    for exps, coef in p.terms():
        term = mpmath.mpf(coef)
        for v, e in zip(vals, exps):
            if e:
                term *= v**e
        total += term
    return total


def _vanishes(p: Polynomial, point: dict) -> bool:
    ring = p.ring
    vals = [point.get(n, 0) for n in ring.names]
    total = mpmath.mpc(0)
    scale = mpmath.mpf(0)
    for exps, coef in p.terms():
        term = mpmath.mpf(coef)
        for v, e in zip(vals, exps):
            if e:
                term *= v**e
        total += term
        scale += abs(term)
    return abs(total) <= REL_TOL * scale


def _filter(R: Polynomial, c: ImplicitCurve, rng: random.Random, d0_sample: Fraction,
            d_symbolic: bool):
    discarded: list[tuple[Polynomial, str]] = []
    if R.is_zero():
        raise OffsetDegreeError("elimination resultant vanished identically")
    sqf = squarefree_part(R)
    content, pp = content_pp(sqf, ("x1", "x2"))
    if not content.is_constant():
        discarded.append((normalize(content), "does not involve x1 or x2"))
    samples = offset_samples(c, d0_sample, rng)
    with mpmath.workdps(_DPS):
        dv = mpmath.mpf(d0_sample.numerator) / d0_sample.denominator
        points = [{"x1": a, "x2": b, "d": dv} for a, b in samples]
        kept = []
        for fac in irreducible_factors(pp):
            if any(_vanishes(fac, pt) for pt in points):
                kept.append(fac)
            else:
                discarded.append((fac, "vanishes at no offset sample"))
        g = R.ring.one()
        for fac in kept:
            g = g * fac
        unexplained = [pt for pt in points if not any(_vanishes(fac, pt) for fac in kept)]
    if unexplained:
        raise SampleFailure(f"{len(unexplained)} offset samples lie on no kept factor")
    return normalize(g), kept, discarded


def eliminate_offset(c: ImplicitCurve, mode: str = "symbolic-d", d0=None, seed: int = 0) -> EliminationResult:
    """Eliminate ``y1, y2`` from the offset system of ``c``.

    ``mode`` is ``"symbolic-d"`` (keep ``d`` as a variable) or
    ``"specialized-d"`` (fix ``d = d0``).  Without an explicit ``d0`` the
    specialized mode draws distances from a seeded sequence and retries
    until two consecutive distances give the same degrees.
    """
    rng = random.Random(seed)
    if mode == "symbolic-d":
        if c.n > SYMBOLIC_MAX_DEGREE:
            raise CostGuard(f"symbolic-d elimination is limited to degree {SYMBOLIC_MAX_DEGREE}, curve has degree {c.n}")
        R = _system_resultant(c, None)
        g, kept, discarded = _filter(R, c, rng, _random_d0(rng), True)
        return EliminationResult(g, kept, discarded, mode)
    if mode != "specialized-d":
        raise ValueError(f"unknown oracle mode {mode!r}")
    if c.n > SPECIALIZED_MAX_DEGREE:
        raise CostGuard(f"specialized-d elimination is limited to degree {SPECIALIZED_MAX_DEGREE}, curve has degree {c.n}")
    if d0 is not None:
        d0 = Fraction(d0)
        g, kept, discarded = _filter(_system_resultant(c, d0), c, rng, d0, False)
        return EliminationResult(g, kept, discarded, mode, d0,
                                 [{"d0": str(d0), "degrees": _xdegrees(g)}])
    attempts = []
    best = None
    for _ in range(MAX_RETRIES + 1):
        d0 = _random_d0(rng)
        g, kept, discarded = _filter(_system_resultant(c, d0), c, rng, d0, False)
        degs = _xdegrees(g)
        attempts.append({"d0": str(d0), "degrees": degs})
        if best is None or degs > _xdegrees(best.g_candidate):
            best = EliminationResult(g, kept, discarded, mode, d0)
        if len(attempts) >= 2 and attempts[-1]["degrees"] == attempts[-2]["degrees"] == _xdegrees(best.g_candidate):
            break
    best.attempts = attempts
    return best


def _xdegrees(g: Polynomial) -> tuple[int, int]:
    return (g.degree("x1"), g.degree("x2"))


def _system_resultant(c: ImplicitCurve, d0: Optional[Fraction]) -> Polynomial:
    ring = c.ring
    y1, y2, x1, x2, d = ring.gens("y1", "y2", "x1", "x2", "d")
    f = c.f
    f1 = derivative(f, "y1")
    f2 = derivative(f, "y2")
    if d0 is None:
        b = (x1 - y1) ** 2 + (x2 - y2) ** 2 - d * d
    else:
        # d0 = p/q: q^2 ((x1-y1)^2 + (x2-y2)^2) - p^2
        q2, p2 = d0.denominator ** 2, d0.numerator ** 2
        b = ((x1 - y1) ** 2 + (x2 - y2) ** 2).scale(q2) - p2
    n = -f2 * (x1 - y1) + f1 * (x2 - y2)
    r1 = _eliminate(f, b, "y1")
    r2 = _eliminate(f, n, "y1")
    return _eliminate(r1, r2, "y2")


def oracle_degrees(res: EliminationResult) -> tuple[int, int, Optional[int]]:
    g = res.g_candidate
    dd = g.degree("d") if res.mode == "symbolic-d" else None
    return g.degree("x1"), g.degree("x2"), dd
