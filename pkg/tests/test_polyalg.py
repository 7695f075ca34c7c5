from fractions import Fraction

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from splitkit.polyalg import (GF, QQ, ZS, ZZ, Polynomial, SpanBasis, ideal_truncation,
                              in_span, monomial_count, monomials_of_degree, parse_poly,
                              span_rank)


def P(text, ring=ZZ, names=("x", "y", "z")):
    return parse_poly(text, ring, names=names)


def test_square_over_integers():
    assert str(P("(x+y)^2")) == "x^2 + 2*x*y + y^2"


def test_freshman_dream_mod_3():
    assert P("(x+y)^3", GF(3)) == P("x^3 + y^3", GF(3))


def test_substitute_zero():
    f = P("x*y + y")
    assert f.substitute({0: 0}) == P("y")


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        P("x", ZZ) + P("x", GF(3))


def test_parse_roundtrip():
    f = P("3*x^2*y - z + 7")
    assert P(str(f)) == f


def test_degree_and_homogeneity():
    f = P("x^2*y + z^3")
    assert f.degree() == 3 and f.is_homogeneous(3)
    assert not P("x + 1").is_homogeneous()
    assert P("0").degree() == -1


def test_zs_rejects_bad_denominators():
    R = ZS([2])
    assert R.convert(Fraction(3, 4)) == Fraction(3, 4)
    with pytest.raises(ValueError):
        R.convert(Fraction(1, 3))


def test_span_rank_examples():
    x, y = P("x", QQ, ("x", "y")), P("y", QQ, ("x", "y"))
    assert span_rank([x, y, x + y], 1) == 2
    assert in_span(P("3*x^2", QQ), [P("x^2", QQ)])
    mons = [Polynomial(QQ, 3, {e: 1}) for e in monomials_of_degree(3, 6)]
    assert len(mons) == 28 and span_rank(mons) == 28


def test_span_rank_needs_field():
    with pytest.raises(TypeError):
        span_rank([P("x")])


def test_ideal_truncation_examples():
    z = P("z", QQ)
    trunc = ideal_truncation([z], 2)
    assert span_rank(trunc) == 4
    for t in ("z", "x*z", "y*z", "z^2"):
        assert in_span(P(t, QQ), trunc)
    g = P("x^2 - y", QQ)
    assert in_span(P("x^3 - x*y", QQ), ideal_truncation([g], 3))
    assert not in_span(P("x^2", QQ), ideal_truncation([g], 3))


def test_monomial_count_matches_enumeration():
    for n in range(1, 5):
        for d in range(6):
            assert monomial_count(n, d) == len(monomials_of_degree(n, d))


# -- properties --------------------------------------------------------------------------

coeffs = st.integers(-5, 5)
exps = st.tuples(*[st.integers(0, 3)] * 3)


def polys(ring):
    return st.dictionaries(exps, coeffs, max_size=5).map(lambda t: Polynomial(ring, 3, t))


@given(polys(ZZ), polys(ZZ), polys(ZZ))
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == f.zero()


@settings(max_examples=50)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_frobenius_is_additive(p, data):
    R = GF(p)
    f, g = data.draw(polys(R)), data.draw(polys(R))
    assert (f + g) ** p == f ** p + g ** p


@given(polys(ZZ), st.tuples(coeffs, coeffs, coeffs))
def test_evaluate_is_a_homomorphism(f, pt):
    g = f * f + f
    assert g.evaluate(pt) == f.evaluate(pt) ** 2 + f.evaluate(pt)


@settings(max_examples=40)
@given(st.lists(polys(QQ), min_size=1, max_size=5), st.data())
def test_span_rank_invariant_under_elementary_ops(gens, data):
    r = span_rank(gens)
    i = data.draw(st.integers(0, len(gens) - 1))
    j = data.draw(st.integers(0, len(gens) - 1))
    c = data.draw(st.integers(-3, 3))
    moved = list(gens)
    if i != j:
        moved[i] = moved[i] + moved[j].scale(c)
    moved.reverse()
    assert span_rank(moved) == r
    basis = SpanBasis(QQ, gens)
    assert all(basis.contains(g) for g in gens)


@given(polys(ZZ))
def test_print_parse_roundtrip(f):
    assert parse_poly(str(f), ZZ, names=f.names) == f
