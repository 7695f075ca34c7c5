import random
from fractions import Fraction

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from splitkit.liealg import (ChevalleyPoint, as_matrix, borel_limit_test, cartesian_check_sl2,
                             centralizer_dim, centralizer_fiber_basis, chevalley_chi,
                             commutator, companion_section, invariant_dims, is_regular,
                             is_upper_triangular, mat_inverse, mat_mul, phi_typeA,
                             random_chevalley_point, random_invertible, random_matrix, same_span,
                             traceless_powers, w_invariant_dims)
from splitkit.polyalg import GF, QQ

E12 = as_matrix([[0, 1], [0, 0]])


def test_regularity_examples():
    assert centralizer_dim(E12) == 1 and is_regular(E12)
    assert is_regular(as_matrix([[1, 0, 0], [0, 2, 0], [0, 0, -3]]))
    for n in (2, 3, 4):
        assert not is_regular(as_matrix([[0] * n for _ in range(n)]))


def test_chevalley_chi_examples():
    h = Fraction(3, 2)
    assert chevalley_chi(as_matrix([[h, 0], [0, -h]])).invariants == (-h * h,)
    nil = as_matrix([[0, 1, 4], [0, 0, 1], [0, 0, 0]])
    assert chevalley_chi(nil).invariants == (0, 0)
    with pytest.raises(ValueError):
        chevalley_chi(as_matrix([[1, 0], [0, 0]]))


def test_companion_of_zero_is_regular_nilpotent():
    x = companion_section(ChevalleyPoint((0,)))
    assert is_regular(x)
    assert mat_mul(x, x) == as_matrix([[0, 0], [0, 0]])


def test_centralizer_examples():
    assert same_span(centralizer_fiber_basis(E12), [E12])
    d = as_matrix([[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    plane = [as_matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
             as_matrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]])]
    assert same_span(centralizer_fiber_basis(d), plane)
    with pytest.raises(ValueError):
        centralizer_fiber_basis(as_matrix([[0, 0], [0, 0]]))


# coefficients of 1/(1-t^2) and 1/((1-t^2)(1-t^3))
SL2_DIMS = [1, 0, 1, 0, 1, 0, 1, 0, 1]
SL3_DIMS = [1, 0, 1, 1, 1, 1, 2]


def test_invariant_dims_sl2():
    assert [invariant_dims(2, d) for d in range(9)] == SL2_DIMS
    assert [w_invariant_dims(2, d) for d in range(9)] == SL2_DIMS


def test_invariant_dims_sl3():
    assert [invariant_dims(3, d) for d in range(7)] == SL3_DIMS
    assert [w_invariant_dims(3, d) for d in range(7)] == SL3_DIMS


def test_invariant_dims_cap():
    with pytest.raises(ValueError):
        invariant_dims(3, 40)


def test_borel_limit_examples():
    assert borel_limit_test(as_matrix([[1, 5, 2], [0, 2, 7], [0, 0, -3]]))
    assert not borel_limit_test(as_matrix([[0, 0], [1, 0]]))
    rng = random.Random(5)
    for _ in range(20):
        x = random_matrix(3, QQ, rng, traceless=True)
        x = [[x[i][j] if j >= i else 0 for j in range(3)] for i in range(3)]
        x[2][0] = rng.choice([-2, -1, 1, 2])
        assert not borel_limit_test(x)


def test_phi_examples():
    rng = random.Random(11)
    F5 = GF(5)
    for _ in range(200):
        g = random_invertible(3, F5, rng)
        h = random_invertible(3, F5, rng)
        hinv = mat_inverse(h, F5)
        lhs = phi_typeA(mat_mul(mat_mul(h, g, F5), hinv, F5), F5)
        rhs = mat_mul(mat_mul(h, phi_typeA(g, F5), F5), hinv, F5)
        assert lhs == rhs
    up = as_matrix([[2, 1, 3], [0, 1, 4], [0, 0, 5]])
    assert is_upper_triangular(phi_typeA(up))
    with pytest.raises(ValueError):
        phi_typeA(as_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], GF(3)), GF(3))


def test_cartesian_examples():
    chk = cartesian_check_sl2(E12)
    assert chk.fiber_disc == chk.base_disc == 0 and chk.match
    chk = cartesian_check_sl2(as_matrix([[1, 0], [0, -1]]))
    assert chk.match and chk.fiber_disc == 4
    rng = random.Random(3)
    F7 = GF(7)
    done = 0
    while done < 100:
        x = random_matrix(2, F7, rng, traceless=True)
        if not is_regular(x, F7):
            continue
        assert cartesian_check_sl2(x, F7).match
        done += 1


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.sampled_from(["QQ", "F7"]), st.integers(0, 10 ** 9))
def test_kostant_section(n, which, seed):
    ring = QQ if which == "QQ" else GF(7)
    rng = random.Random(seed)
    c = random_chevalley_point(n, ring, rng)
    x = companion_section(c, ring)
    assert is_regular(x, ring)
    assert chevalley_chi(x, ring) == c
    assert same_span(centralizer_fiber_basis(x, ring), traceless_powers(x, ring), ring)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_chi_is_conjugation_invariant(seed):
    rng = random.Random(seed)
    x = random_matrix(3, QQ, rng, traceless=True)
    g = random_invertible(3, QQ, rng)
    y = mat_mul(mat_mul(g, x), mat_inverse(g))
    assert chevalley_chi(y) == chevalley_chi(x)
    # centralizer dimension is a conjugation invariant too
    assert centralizer_dim(y) == centralizer_dim(x)
    assert commutator(x, x) == as_matrix([[0] * 3 for _ in range(3)])
