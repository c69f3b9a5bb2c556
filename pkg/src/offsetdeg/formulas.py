"""Partial and distance degrees of the generic offset of a plane curve.

Nothing here computes the offset equation.  Each degree is read off a
primitive part:

* ``delta1`` (degree in ``x1``): ``deg_{y1,y2} PP_{d,k}(Res_y3(F, S))`` where
  ``S = (F1^2 + F2^2)(y2 - k*y3)^2 - F2^2 y3^2 d^2``.
* ``delta2``: the same after exchanging ``y1`` and ``y2`` in ``f``.
* ``delta_d`` (degree in ``d``): ``2 deg_{y1,y2} PP_{x1,x2}(Res_y3(F, N))``
  where ``N = -F2 (x1*y3 - y1) + F1 (x2*y3 - y2)``.

``F`` is the homogenization of ``f`` in ``y3`` and ``Fi = dF/dyi``.
Rational parametrizations ``(X/W, Y/W)`` get the univariate analogues in
``t``, evaluated both through the primitive part of ``S_hat`` and through
the closed form with ``Theta``; the two must agree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DegeneracyError, InternalError, ValidationError
from .parser import RationalParametrization
from .polyring import (
    NotDivisible,
    Polynomial,
    content_pp,
    degree_in,
    derivative,
    exact_div,
    gcd,
    homogenize,
    is_homogeneous,
    resultant,
    squarefree_defect,
    substitute,
)

Y = ("y1", "y2")
IRREDUCIBILITY_NOTE = "absolute irreducibility of the input is assumed, not verified"


class IsLine(ValidationError):
    pass


class NotSquarefree(ValidationError):
    pass


class IsotropicDivisor(ValidationError):
    pass


class InvalidCurve(ValidationError):
    pass


class DegenerateAuxiliary(DegeneracyError):
    pass


class DegenerateParametrization(DegeneracyError):
    pass


class FormulaMismatch(InternalError):
    def __init__(self, a, b, axis=""):
        self.a = a
        self.b = b
        super().__init__(f"parametric formulae disagree{' on ' + axis if axis else ''}: A={a}, B={b}")


@dataclass(frozen=True)
class ImplicitCurve:
    f: Polynomial
    n: int
    f1: Polynomial
    f2: Polynomial
    F: Polynomial
    F1: Polynomial
    F2: Polynomial
    notes: tuple[str, ...] = ()

    @property
    def ring(self):
        return self.f.ring

    def swapped(self) -> "ImplicitCurve":
        y1, y2 = self.ring.gens("y1", "y2")
        return validate_implicit(substitute(self.f, {"y1": y2, "y2": y1}))


@dataclass
class DegreeReport:
    delta1: int
    delta2: int
    delta_d: Optional[int]
    method: str
    diagnostics: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "delta1": self.delta1,
            "delta2": self.delta2,
            "delta_d": self.delta_d,
            "method": self.method,
            "diagnostics": self.diagnostics,
        }


# ---------------------------------------------------------------------------
# Implicit input
# ---------------------------------------------------------------------------


def validate_implicit(f: Polynomial) -> ImplicitCurve:
    """Check the hypotheses the degree formulae rely on and cache derived forms.

    ``f`` is first made primitive with respect to ``{y1, y2}``, so constant and
    parameter-only factors never count against squarefreeness.
    """
    ring = f.ring
    if f.is_zero():
        raise InvalidCurve("the zero polynomial does not define a curve")
    foreign = [ring.names[i] for i in f.variables() if ring.names[i] in ("y3", "d", "k", "x1", "x2", "t")]
    if foreign:
        raise InvalidCurve(f"curve equation may only use y1, y2 and parameters, found {', '.join(foreign)}")
    n = degree_in(f, Y)
    if n < 1:
        raise InvalidCurve("the equation does not involve y1 or y2")
    _, f = content_pp(f, Y)
    if n < 2:
        raise IsLine("curve is a line")
    if not squarefree_defect(f).is_constant():
        defect = squarefree_defect(f)
        if degree_in(defect, Y) > 0:
            raise NotSquarefree(f"curve equation has the repeated factor {defect}")
    f1 = derivative(f, "y1")
    f2 = derivative(f, "y2")
    if f1.is_zero() and f2.is_zero():
        raise InvalidCurve("both partial derivatives vanish")
    try:
        exact_div(f1 * f1 + f2 * f2, f)
    except NotDivisible:
        pass
    else:
        raise IsotropicDivisor("f divides f1^2 + f2^2 (every point is isotropic)")
    F = homogenize(f, "y3", Y)
    if F.degree("y3") < 1:
        raise InvalidCurve("homogeneous equation: the curve splits into lines through the origin")
    return ImplicitCurve(
        f=f, n=n, f1=f1, f2=f2, F=F,
        F1=derivative(F, "y1"), F2=derivative(F, "y2"),
        notes=(IRREDUCIBILITY_NOTE,),
    )


def build_auxiliary_S(c: ImplicitCurve) -> Polynomial:
    y2, y3, d, k = c.ring.gens("y2", "y3", "d", "k")
    F1, F2 = c.F1, c.F2
    line = y2 - k * y3
    S = (F1 * F1 + F2 * F2) * line * line - F2 * F2 * y3 * y3 * d * d
    if S.degree("y3") < 1:
        raise DegenerateAuxiliary("auxiliary polynomial S does not depend on y3")
    return S


def build_normal_N(c: ImplicitCurve) -> Polynomial:
    y1, y2, y3, x1, x2 = c.ring.gens("y1", "y2", "y3", "x1", "x2")
    N = -c.F2 * (x1 * y3 - y1) + c.F1 * (x2 * y3 - y2)
    if N.degree("y3") < 1:
        raise DegenerateAuxiliary("normal polynomial N does not depend on y3")
    return N


def _expected_resultant_degree(A: Polynomial, m: int, B: Polynomial, n: int) -> int:
    # Res_y3 of forms of degrees m, n with actual y3-degrees a, b.
    a, b = A.degree("y3"), B.degree("y3")
    return m * n - (m - a) * (n - b)


def _formula(c: ImplicitCurve, other: Polynomial, other_deg: int, params, method: str) -> tuple[int, dict]:
    start = time.perf_counter()
    R = resultant(c.F, other, "y3", method=method)
    if R.is_zero():
        raise DegeneracyError("resultant vanished identically")
    if not is_homogeneous(R, Y):
        raise InternalError("resultant is not homogeneous in y1, y2")
    rdeg = degree_in(R, Y)
    expected = _expected_resultant_degree(c.F, c.n, other, other_deg)
    if rdeg != expected:
        raise InternalError(f"resultant has degree {rdeg} in y1, y2, expected {expected}")
    content, pp = content_pp(R, params)
    value = degree_in(pp, Y)
    diag = {
        "resultant_degree": rdeg,
        "content_degree": degree_in(content, Y),
        "ms": round(1000 * (time.perf_counter() - start), 3),
    }
    return value, diag


def _delta_x1(c: ImplicitCurve, method: str) -> tuple[int, dict]:
    S = build_auxiliary_S(c)
    return _formula(c, S, 2 * c.n, ("d", "k"), method)


def partial_degree_implicit(c: ImplicitCurve, axis: str = "x1", method: str = "prs") -> int:
    """Degree of the generic offset in ``x1`` or ``x2``."""
    return _partial_implicit(c, axis, method)[0]


def _partial_implicit(c, axis, method):
    if axis == "x1":
        return _delta_x1(c, method)
    if axis == "x2":
        return _delta_x1(c.swapped(), method)
    raise ValueError(f"axis must be 'x1' or 'x2', not {axis!r}")


def distance_degree_implicit(c: ImplicitCurve, method: str = "prs") -> int:
    """Degree of the generic offset in the distance ``d`` (always even)."""
    return _distance_implicit(c, method)[0]


def _distance_implicit(c, method):
    N = build_normal_N(c)
    mu, diag = _formula(c, N, c.n, ("x1", "x2"), method)
    return 2 * mu, diag


# ---------------------------------------------------------------------------
# Parametric input
# ---------------------------------------------------------------------------


def _check_parametrization(p: RationalParametrization) -> None:
    ring = p.ring
    for name, comp in (("X", p.X), ("Y", p.Y), ("W", p.W)):
        extra = [ring.names[i] for i in comp.variables() if ring.names[i] in ("y1", "y2", "y3", "d", "k", "x1", "x2")]
        if extra:
            raise ValidationError(f"{name} may only depend on t and parameters, found {', '.join(extra)}")
    if p.W.is_zero():
        raise ValidationError("W is zero")
    if p.N1.is_zero() and p.N2.is_zero():
        raise DegenerateParametrization("normal vector vanishes identically (constant parametrization)")


def _components(p: RationalParametrization, axis: str):
    """``(numerator, N_across, N_along)`` for the requested axis."""
    if axis == "x1":
        return p.Y, p.N1, p.N2
    if axis == "x2":
        return p.X, p.N2, p.N1
    raise ValueError(f"axis must be 'x1' or 'x2', not {axis!r}")


def build_S_hat(p: RationalParametrization, axis: str = "x1") -> Polynomial:
    _check_parametrization(p)
    V, Na, Nb = _components(p, axis)
    d, k = p.ring.gens("d", "k")
    W = p.W
    line = W * k - V
    S = (Na * Na + Nb * Nb) * line * line - d * d * W * W * Nb * Nb
    if S.is_zero():
        raise DegenerateParametrization("S_hat vanishes identically")
    return S


def _parametric_A(p, axis):
    S = build_S_hat(p, axis)
    content, pp = content_pp(S, ("d", "k"))
    return degree_in(pp, ("t",)), {
        "resultant_degree": degree_in(S, ("t",)),
        "content_degree": degree_in(content, ("t",)),
    }


def _deg(p: Polynomial) -> int:
    return degree_in(p, ("t",))


def _parametric_B(p, axis):
    _check_parametrization(p)
    V, Na, Nb = _components(p, axis)
    W = p.W
    gN = gcd(Na, Nb)
    theta = gcd(W * W * gN * gN, (Na * Na + Nb * Nb) * V * gcd(W, V))
    if theta.is_zero():
        raise DegenerateParametrization("Theta vanishes identically")
    top = 2 * (max(_deg(V), _deg(W)) + max(_deg(Na), _deg(Nb)))
    return top - _deg(theta), {"resultant_degree": top, "content_degree": _deg(theta)}


def partial_degree_parametric_A(p: RationalParametrization, axis: str = "x1") -> int:
    """Degree in ``t`` of the primitive part of ``S_hat`` with respect to ``{k, d}``."""
    return _parametric_A(p, axis)[0]


def partial_degree_parametric_B(p: RationalParametrization, axis: str = "x1") -> int:
    """Closed form ``2(max(deg V, deg W) + max(deg N1, deg N2)) - deg Theta``."""
    return _parametric_B(p, axis)[0]


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


def degree_report(data: Union[ImplicitCurve, RationalParametrization, Polynomial],
                  method: str = "prs") -> DegreeReport:
    start = time.perf_counter()
    if isinstance(data, Polynomial):
        data = validate_implicit(data)
    if isinstance(data, ImplicitCurve):
        d1, g1 = _partial_implicit(data, "x1", method)
        d2, g2 = _partial_implicit(data, "x2", method)
        dd, gd = _distance_implicit(data, method)
        if dd % 2:
            raise InternalError(f"distance degree {dd} is odd")
        diagnostics = {
            "resultant_degree": {"delta1": g1["resultant_degree"], "delta2": g2["resultant_degree"],
                                 "delta_d": gd["resultant_degree"]},
            "content_degree": {"delta1": g1["content_degree"], "delta2": g2["content_degree"],
                               "delta_d": gd["content_degree"]},
            "ms": round(1000 * (time.perf_counter() - start), 3),
        }
        return DegreeReport(d1, d2, dd, "implicit", diagnostics, data.notes)
    if isinstance(data, RationalParametrization):
        values = {}
        rdeg, cdeg = {}, {}
        for axis, label in (("x1", "delta1"), ("x2", "delta2")):
            a, ga = _parametric_A(data, axis)
            b, gb = _parametric_B(data, axis)
            if a != b:
                raise FormulaMismatch(a, b, axis)
            values[label] = a
            rdeg[label] = ga["resultant_degree"]
            cdeg[label] = ga["content_degree"]
        diagnostics = {
            "resultant_degree": rdeg,
            "content_degree": cdeg,
            "formulae_agree": True,
            "ms": round(1000 * (time.perf_counter() - start), 3),
        }
        return DegreeReport(values["delta1"], values["delta2"], None, "parametric", diagnostics)
    raise TypeError(f"cannot build a degree report for {type(data).__name__}")
