import random
from fractions import Fraction

import pytest

from offsetdeg.errors import CostGuard
from offsetdeg.formulas import degree_report, validate_implicit
from offsetdeg.oracle import (
    MIN_SAMPLES,
    eliminate_offset,
    irreducible_factors,
    offset_samples,
    oracle_degrees,
)
from offsetdeg.parser import parse_polynomial
from offsetdeg.polyring import exact_div, normalize

# The generic offset of the parabola y2 = y1^2 as printed in the literature.
PARABOLA_SEXTIC = (
    "-48*d^2*x1^4-32*d^2*x1^2*x2^2+48*d^4*x1^2+16*x1^6+16*x2^2*x1^4+16*d^4*x2^2"
    "-16*d^6-40*x2*x1^4-32*x1^2*x2^3+8*d^2*x2*x1^2-32*d^2*x2^3+32*d^4*x2+x1^4"
    "+32*x1^2*x2^2+16*x2^4-20*d^2*x1^2-8*d^2*x2^2-8*d^4-2*x2*x1^2-8*x2^3"
    "+8*x2*d^2+x2^2-d^2"
)


def curve(text):
    return validate_implicit(parse_polynomial(text))


def same_up_to_scale(p, q):
    return normalize(p) == normalize(q) and len(p) == len(q)


def test_circle_symbolic():
    c = curve("y1^2+y2^2-1")
    res = eliminate_offset(c, "symbolic-d")
    x1, x2, d = c.ring.gens("x1", "x2", "d")
    expected = (x1**2 + x2**2 - (1 + d) ** 2) * (x1**2 + x2**2 - (1 - d) ** 2)
    assert same_up_to_scale(res.g_candidate, expected)
    assert oracle_degrees(res) == (4, 4, 4)
    assert res.discarded_factors


def test_parabola_symbolic_matches_printed_sextic():
    c = curve("y2-y1^2")
    res = eliminate_offset(c, "symbolic-d")
    printed = parse_polynomial(PARABOLA_SEXTIC, allowed_vars={"x1", "x2", "d"}, ring=c.ring)
    q = exact_div(res.g_candidate, printed)
    assert q.is_constant()
    assert oracle_degrees(res) == (6, 4, 6)
    r = degree_report(c)
    assert (r.delta1, r.delta2, r.delta_d) == (6, 4, 6)


def test_hyperbola_specialized():
    res = eliminate_offset(curve("y1*y2-1"), "specialized-d", d0=2)
    assert oracle_degrees(res) == (6, 6, None)
    assert res.attempts == [{"d0": "2", "degrees": (6, 6)}]


@pytest.mark.slow
def test_cusp_specialized():
    res = eliminate_offset(curve("y1^3-y2^2"), "specialized-d", d0=3)
    assert oracle_degrees(res)[:2] == (8, 6)


def test_specialized_retries_are_reported():
    res = eliminate_offset(curve("y1*y2-1"), "specialized-d", seed=4)
    assert len(res.attempts) >= 2
    assert res.attempts[-1]["degrees"] == res.attempts[-2]["degrees"] == (6, 6)


def test_seed_makes_runs_reproducible():
    a = eliminate_offset(curve("y1^2+y2^2-4"), "specialized-d", seed=9)
    b = eliminate_offset(curve("y1^2+y2^2-4"), "specialized-d", seed=9)
    assert a.g_candidate == b.g_candidate and a.attempts == b.attempts


def test_cost_guards():
    with pytest.raises(CostGuard) as info:
        eliminate_offset(curve("y1^3+y2^3-3*y1*y2"), "symbolic-d")
    assert info.value.exit_code == 4
    with pytest.raises(CostGuard):
        eliminate_offset(curve("y1^5+y2^2-1"), "specialized-d", d0=1)


def test_samples_lie_at_distance_d0():
    c = curve("y2-y1^2")
    pts = offset_samples(c, Fraction(3, 2), random.Random(0))
    assert len(pts) >= MIN_SAMPLES


def test_irreducible_factors():
    c = curve("y1^2+y2^2-1")
    y1, y2 = c.ring.gens("y1", "y2")
    facs = irreducible_factors((y1 - y2) * (y1**2 + 1) * 6)
    assert sorted(map(str, facs)) == sorted(map(str, [normalize(y1 - y2), y1**2 + 1]))
