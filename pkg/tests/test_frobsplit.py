import random

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from splitkit.frobsplit import (EpsilonContext, SplittingCandidate, cartier_evaluate,
                                compatibly_splits, epsilon, frame_for, frobenius_power,
                                gamma0_sections_sl2, gamma0_splitting_sl2, is_splitting,
                                j_membership, primed, satisfies_splitting_support,
                                splitting_by_coefficients, steinberg_coefficients_sl2)
from splitkit.polyalg import (GF, Polynomial, monomials_of_degree, monomials_up_to_degree,
                              parse_poly)


def poly(text, p, names=("x",)):
    return parse_poly(text, GF(p), names=names)


def cand(text, p, names=("x",)):
    return SplittingCandidate.of(poly(text, p, names))


def test_cartier_examples():
    c = cand("x^2", 3)
    assert cartier_evaluate(c, poly("1", 3)) == primed(poly("1", 3))
    assert cartier_evaluate(c, poly("x", 3)).is_zero()
    assert str(cartier_evaluate(c, poly("x^3", 3))) == "x'"


def test_mismatch_rejected():
    with pytest.raises(ValueError):
        cartier_evaluate(cand("x^2", 3), poly("x", 5))
    with pytest.raises(ValueError):
        SplittingCandidate(3, 2, poly("x^2", 3))


def test_is_splitting_examples():
    for p in (2, 3, 5):
        names = ("x1", "x2", "x3")
        assert is_splitting(cand(f"(x1*x2*x3)^{p - 1}", p, names))
    assert not is_splitting(cand("2*(x1*x2)^2", 3, ("x1", "x2")))
    assert not is_splitting(cand("x^2 + x^5", 3))


def test_compatible_splitting_examples():
    names = ("x1", "x2", "x3")
    c = cand("(x1*x2*x3)^2", 3, names)
    assert compatibly_splits(c, [poly("x3", 3, names)])
    assert compatibly_splits(cand("x^2", 3), [poly("x", 3)])
    c = cand("x1^4", 3, ("x1", "x2"))
    assert not is_splitting(c)
    with pytest.warns(UserWarning):
        assert compatibly_splits(c, [])


def test_coordinate_splitting_does_not_split_a_nonmonomial_ideal():
    names = ("x1", "x2")
    c = cand("(x1*x2)^2", 3, names)
    assert not compatibly_splits(c, [poly("x1 + x2", 3, names)])


def test_epsilon_examples():
    ctx = EpsilonContext(3, 3)
    frame = frame_for("sl2", 3)
    assert epsilon(ctx, frame.polynomial({(2, 2, 2): 1})) == 1
    assert epsilon(ctx, frame.polynomial({(3, 1, 2): 1})) == 0
    with pytest.raises(ValueError):
        epsilon(ctx, frame.polynomial({(1, 1, 1): 1}))


def test_j_membership_examples():
    frame = frame_for("sl2", 3)
    a, b, c = (frame.var(i) for i in range(3))
    for flavor in ("generators", "hom"):
        assert j_membership(c ** 2 * a ** 2 * b ** 2, flavor, frame)
        assert j_membership(c ** 3 * a * b ** 2, flavor, frame)
        assert not j_membership(a ** 6, flavor, frame)
    with pytest.raises(ValueError):
        j_membership(a ** 6, "neither", frame)
    with pytest.raises(ValueError):
        frame_for("so5", 3)


def test_j_flavors_agree_on_degree_six():
    frame = frame_for("sl2", 3)
    answers = [j_membership(frame.polynomial({e: 1}), "generators", frame)
               for e in monomials_of_degree(3, 6)]
    hom = [j_membership(frame.polynomial({e: 1}), "hom", frame)
           for e in monomials_of_degree(3, 6)]
    assert answers == hom
    # c^2 divides the monomial: 15 of 28
    assert sum(answers) == 15


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_steinberg_coefficients(p):
    st_ = steinberg_coefficients_sl2(p)
    assert str(st_.f1) == f"x^{p - 1}"
    assert str(st_.f2) == f"y^{p - 1}"
    assert (st_.t_exponent_f1, st_.t_exponent_f2) == (p - 1, -(p - 1))
    assert satisfies_splitting_support(st_.f1, p)
    assert is_splitting(SplittingCandidate.of(gamma0_splitting_sl2(p)))


def test_steinberg_rejects_bad_primes():
    for p in (2, 4, 17):
        with pytest.raises(ValueError):
            steinberg_coefficients_sl2(p)


@pytest.mark.parametrize("p", [3, 5])
def test_gamma0_sections_contain_the_splitting(p):
    secs = gamma0_sections_sl2(p)
    assert len(secs) == p * p
    assert secs[(0, 0)] == gamma0_splitting_sl2(p)
    # every section is divisible by f1 = x^(p-1)
    assert all(min(e[0] for e in s.terms) >= p - 1 for s in secs.values())


# -- properties ---------------------------------------------------------------------------------

def _random_poly(p, n, degree, rng, terms=4):
    mons = monomials_up_to_degree(n, degree)
    return Polynomial(GF(p), n, {rng.choice(mons): rng.randrange(p) for _ in range(terms)})


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 10 ** 9))
def test_semilinearity(p, n, seed):
    rng = random.Random(seed)
    c = SplittingCandidate(p, n, _random_poly(p, n, 2 * p, rng))
    h = _random_poly(p, n, 2, rng, terms=2)
    g = _random_poly(p, n, 2 * p, rng)
    assert cartier_evaluate(c, frobenius_power(h) * g) == primed(h) * cartier_evaluate(c, g)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(0, 10 ** 9))
def test_two_splitting_criteria_agree(p, n, seed):
    rng = random.Random(seed)
    f = _random_poly(p, n, 3 * p, rng)
    if rng.random() < 0.5:
        # bias towards actual splittings
        low = tuple(rng.randrange(p - 1) if p > 2 else 0 for _ in range(n))
        f = Polynomial(GF(p), n, {(p - 1,) * n: 1, low: rng.randrange(p)})
    c = SplittingCandidate(p, n, f)
    assert is_splitting(c) == splitting_by_coefficients(c)
    g = _random_poly(p, n, 2, rng)
    if is_splitting(c):
        assert cartier_evaluate(c, frobenius_power(g)) == primed(g)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_epsilon_is_invariant(seed):
    rng = random.Random(seed)
    frame = frame_for("sl2", 3)
    ctx = EpsilonContext(3, 3)
    mons = monomials_of_degree(3, ctx.d)
    f = frame.polynomial({rng.choice(mons): rng.randrange(1, 3) for _ in range(6)})
    for z in frame.basis():
        assert epsilon(ctx, frame.act(z, f)) == 0
