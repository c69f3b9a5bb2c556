"""Engine properties shared by the unit tests and the acceptance suite.

Each ``prop_*`` takes a number of examples and returns a Hypothesis test
that can be called directly.
"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from offsetdeg.formulas import build_auxiliary_S, build_normal_N
from offsetdeg.polyring import (
    content_pp,
    degree_in,
    derivative,
    exact_div,
    gcd,
    is_homogeneous,
    normalize,
    resultant,
    substitute,
)

from strategies import RING, nonzero_polys, polys, random_curve


def _settings(n):
    return settings(max_examples=n, deadline=None, database=None, derandomize=True,
                    suppress_health_check=list(HealthCheck))


def prop_ring_axioms(n):
    @_settings(n)
    @given(polys(), polys(), polys())
    def check(p, q, r):
        zero, one = RING.zero(), RING.one()
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + zero == p and p * one == p and p * zero == zero
        assert p - p == zero and -(-p) == p
        assert p**2 == p * p
    return check


def prop_leibniz(n):
    @_settings(n)
    @given(polys(), polys(), st.sampled_from(["a", "b", "c"]))
    def check(p, q, v):
        assert derivative(p * q, v) == derivative(p, v) * q + p * derivative(q, v)
        assert derivative(p + q, v) == derivative(p, v) + derivative(q, v)
    return check


def prop_exact_division(n):
    @_settings(n)
    @given(polys(), nonzero_polys())
    def check(p, q):
        assert exact_div(p * q, q) == p
    return check


def prop_gcd_divisibility(n):
    @_settings(n)
    @given(nonzero_polys(max_deg=2, max_terms=4), nonzero_polys(max_deg=2, max_terms=4),
           nonzero_polys(max_deg=2, max_terms=3))
    def check(p, q, r):
        g = gcd(p * r, q * r)
        assert exact_div(p * r, g) * g == p * r
        assert exact_div(q * r, g) * g == q * r
        # r divides the gcd, so the gcd is at least as large as r
        exact_div(g, normalize(r))
        assert g == normalize(g)
    return check


def prop_content_pp(n):
    @_settings(n)
    @given(polys(max_terms=6), st.sampled_from([("a",), ("b",), ("a", "b"), ("c", "a")]))
    def check(p, main):
        c, pp = content_pp(p, main)
        assert c * pp == p
        if not p.is_zero():
            assert degree_in(c, main) == 0
            # the primitive part has no content left
            c2, _ = content_pp(pp, main)
            assert c2 in (1, -1)
    return check


def prop_resultant_specialization(n):
    @_settings(n)
    @given(nonzero_polys(max_deg=2, max_terms=4), nonzero_polys(max_deg=2, max_terms=4),
           st.integers(-4, 4))
    def check(p, q, value):
        if p.degree("a") < 1 or q.degree("a") < 1:
            return
        sp, sq = substitute(p, {"b": value}), substitute(q, {"b": value})
        if sp.degree("a") != p.degree("a") or sq.degree("a") != q.degree("a"):
            return
        assert substitute(resultant(p, q, "a"), {"b": value}) == resultant(sp, sq, "a")
    return check


def prop_resultant_multiplicativity(n):
    @_settings(n)
    @given(nonzero_polys(max_deg=2, max_terms=3), nonzero_polys(max_deg=2, max_terms=3),
           nonzero_polys(max_deg=2, max_terms=3))
    def check(p, q, r):
        if min(p.degree("a"), q.degree("a"), r.degree("a")) < 1:
            return
        assert resultant(p * q, r, "a") == resultant(p, r, "a") * resultant(q, r, "a")
    return check


def prop_formula_homogeneity(n):
    @_settings(n)
    @given(st.randoms(use_true_random=False), st.sampled_from(["S", "N"]))
    def check(rng, which):
        c = random_curve(rng, max_deg=3, max_terms=4)
        other, deg = (build_auxiliary_S(c), 2 * c.n) if which == "S" else (build_normal_N(c), c.n)
        R = resultant(c.F, other, "y3")
        a, b = c.F.degree("y3"), other.degree("y3")
        assert is_homogeneous(R, ("y1", "y2"))
        assert degree_in(R, ("y1", "y2")) == c.n * deg - (c.n - a) * (deg - b)
    return check


ENGINE_PROPERTIES = {
    "ring axioms": prop_ring_axioms,
    "Leibniz rule": prop_leibniz,
    "exact division": prop_exact_division,
    "gcd divisibility": prop_gcd_divisibility,
    "content * primitive part": prop_content_pp,
    "resultant specialization": prop_resultant_specialization,
    "resultant multiplicativity": prop_resultant_multiplicativity,
    "formula resultant homogeneity": prop_formula_homogeneity,
}
