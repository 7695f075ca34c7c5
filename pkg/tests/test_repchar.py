import itertools
from collections import Counter

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from splitkit.repchar import (character, extreme_kernel_dim, minuscule_rank_criterion,
                              weyl_dimension)
from splitkit.rootdata import build_root_system, is_minuscule, parse_type, weyl_orbit

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


def test_a1_dimensions_match_weight_strings():
    for m in range(10):
        string = {(m - 2 * k,): 1 for k in range(m + 1)}
        assert weyl_dimension(A1, (m,)) == m + 1
        assert character(A1, (m,)).entries == string


def test_a2_small_dims():
    assert weyl_dimension(A2, (1, 0)) == 3
    assert weyl_dimension(A2, (0, 0)) == 1
    with pytest.raises(ValueError):
        weyl_dimension(A2, (1, -1))


def test_a2_adjoint_against_tensor_product():
    std = [(1, 0), (-1, 1), (0, -1)]
    tensor = Counter(tuple(a - b for a, b in zip(u, v)) for u in std for v in std)
    tensor[(0, 0)] -= 1  # split off the trivial summand
    ch = character(A2, (1, 1))
    assert ch.entries == {k: v for k, v in tensor.items() if v}
    assert ch.dimension == 8 and ch.multiplicity((0, 0)) == 2


def test_trivial_character():
    assert character(A2, (0, 0)).entries == {(0, 0): 1}


def test_rank_criterion_examples():
    b2 = build_root_system("B", 2)
    c = minuscule_rank_criterion(A2, (1, 0))
    assert (c.dim, c.orbit, c.equal) == (3, 3, True)
    c = minuscule_rank_criterion(b2, (1, 0))
    assert (c.dim, c.orbit, c.equal) == (5, 4, False)
    c = minuscule_rank_criterion(A1, (3,))
    assert (c.dim, c.orbit, c.equal) == (4, 2, False)


def test_extreme_kernel():
    for m in range(1, 8):
        assert extreme_kernel_dim(A1, (m,)) == m - 1
    assert extreme_kernel_dim(A2, (1, 1)) == 2
    assert extreme_kernel_dim(A2, (0, 1)) == 0


@pytest.mark.parametrize("label,top", [("B2", 3), ("G2", 2), ("C3", 1), ("D4", 1), ("A3", 2)])
def test_freudenthal_against_weyl(label, top):
    rs = build_root_system(*parse_type(label))
    for lam in itertools.product(range(top + 1), repeat=rs.rank):
        if weyl_dimension(rs, lam) > 500:
            continue
        ch = character(rs, lam)
        assert ch.dimension == weyl_dimension(rs, lam)
        # multiplicities are W-invariant
        for mu, m in ch.entries.items():
            for nu in weyl_orbit(rs, mu):
                assert ch.multiplicity(nu) == m


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A1", "A2", "A3", "B2", "C3", "G2"]), st.data())
def test_minuscule_iff_dim_equals_orbit(label, data):
    rs = build_root_system(*parse_type(label))
    lam = data.draw(st.tuples(*[st.integers(0, 3)] * rs.rank))
    if not any(lam):
        return
    assert minuscule_rank_criterion(rs, lam).equal == is_minuscule(rs, lam)
