import random
import warnings
from math import comb

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from splitkit.flagsections import (MODELS, euler_characteristic, evaluation_rank,
                                   fixed_point_localization, gtilde_sections, incidence_model,
                                   kostant_fiber_rank, product_sections,
                                   restriction_kernel_dims, sl2_alteration_dim,
                                   springer_restriction, surjectivity_check)
from splitkit.liealg import ChevalleyPoint, as_matrix
from splitkit.polyalg import GF, QQ, Polynomial


def _beta_at(x):
    inc = incidence_model("SL2")
    amb = inc.ambient
    names = ("u", "v")
    images = [Polynomial.variable(QQ, 2, 0, names), Polynomial.variable(QQ, 2, 1, names)]
    images += [Polynomial.constant(QQ, 2, c, names) for c in amb.frame.coords(as_matrix(x))]
    return inc.equations[0].compose(images)


def test_beta_examples():
    assert str(_beta_at([[0, 1], [0, 0]])) == "-v^2"
    assert str(_beta_at([[1, 0], [0, -1]])) == "-2*u*v"


def test_unsupported_model():
    with pytest.raises(ValueError):
        incidence_model("SL4_omega1")
    with pytest.raises(ValueError):
        product_sections("SL3_omega1", (0, 1), 1)


@pytest.mark.parametrize("model", MODELS)
def test_samples_satisfy_equations(model):
    inc = incidence_model(model, GF(101))
    rng = random.Random(0)
    for _ in range(500):
        pt, x = inc.sample(rng)
        vals = list(pt) + inc.ambient.frame.coords(x)
        assert all(eq.evaluate(vals) == 0 for eq in inc.equations)


def test_product_dims():
    assert product_sections("SL2", 1, 0).dim == 2
    assert product_sections("SL2", 3, 2).dim == 24
    assert product_sections("SL3_omega1", None, 1).dim == 24


def test_gtilde_sl2_examples():
    # Gamma(O(-1)) = 0, so no relations occur for lambda = 1
    assert gtilde_sections("SL2", 1, 1).dim == 6
    assert gtilde_sections("SL2", 2, 1).dim == 8
    assert gtilde_sections("SL2", 1, 0).dim == 2


def test_euler_characteristic_sl2_closed_form():
    for m in range(0, 8):
        for d in range(0, 8):
            assert euler_characteristic("SL2", m, d) == sl2_alteration_dim(m, d)


def test_euler_characteristic_sl3_frozen():
    # minuscule cases: every product section survives, 3 * dim S^d(sl3)
    for model in ("SL3_omega1", "SL3_omega2"):
        assert [euler_characteristic(model, None, d) for d in range(4)] == \
            [3 * comb(d + 7, 7) for d in range(4)]
    assert [euler_characteristic("SL3_2omega1", None, d) for d in range(4)] == [6, 45, 192, 612]


def test_surjectivity_sl2():
    for m in range(0, 7):
        for d in range(0, 7):
            r = surjectivity_check("SL2", m, d)
            assert r.surjective, r


@pytest.mark.parametrize("model", MODELS[1:])
def test_surjectivity_sl3_low_degree(model):
    for d in range(3):
        r = surjectivity_check(model, None, d, seed=7)
        assert r.status == "pass", r


def test_evaluation_rank_reports_every_route():
    ev = evaluation_rank("SL3_2omega1", None, 1)
    assert ev["status"] == "conclusive"
    assert set(ev["ranks"].values()) == {45}
    assert len(ev["ranks"]) == 4


def test_undersampling_is_inconclusive():
    ev = evaluation_rank("SL3_2omega1", None, 2, oversample=0.2)
    assert ev["status"] == "inconclusive" and ev["rank"] is None
    assert gtilde_sections("SL3_omega1", None, 0).status == "conclusive"


def test_springer_examples():
    for m in range(1, 7):
        r = springer_restriction("SL2", m)
        assert (r.total_dim, r.image_rank, r.kernel_dim) == (m + 1, 2, m - 1)
    r = springer_restriction("SL3_omega1")
    assert (r.total_dim, r.image_rank, r.kernel_dim) == (3, 3, 0)
    r = springer_restriction("SL3_omega2")
    assert (r.total_dim, r.image_rank, r.kernel_dim) == (3, 3, 0)
    r = springer_restriction("SL3_2omega1")
    assert (r.total_dim, r.image_rank, r.kernel_dim) == (6, 3, 3)


def test_localization_examples():
    for m in range(1, 7):
        assert fixed_point_localization("SL2", m).kernel_dim == m - 1
    assert fixed_point_localization("SL3_omega1").kernel_dim == 0
    assert fixed_point_localization("SL3_2omega1").kernel_dim == 3
    for model in MODELS[1:]:
        loc = fixed_point_localization(model)
        assert loc.kernel_dim == loc.expected


def test_kostant_examples():
    assert kostant_fiber_rank("SL2", 3, ChevalleyPoint((0,))) == 2
    assert kostant_fiber_rank("SL2", 3, ChevalleyPoint((-1,))) == 2
    with pytest.warns(UserWarning):
        assert kostant_fiber_rank("SL2", 0, (5,)) == 1
    with pytest.raises(ValueError):
        kostant_fiber_rank("SL3_omega1", None, (0, 0))


def test_minuscule_bridge():
    assert restriction_kernel_dims("SL2", 1, 3) == [0, 0, 0, 0]
    for m in (2, 3, 4):
        assert any(restriction_kernel_dims("SL2", m, 2))
    assert restriction_kernel_dims("SL3_omega1", None, 2) == [0, 0, 0]
    assert restriction_kernel_dims("SL3_2omega1", None, 1) == [0, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 6))
def test_sl2_koszul_count(m, d):
    # multiplication by beta is injective, so dim = product - relations
    g = gtilde_sections("SL2", m, d)
    relations = (m - 1) * comb(d + 1, 2) if m >= 2 and d >= 1 else 0
    assert g.detail.get("relation_rank", 0) == relations
    assert g.dim == g.product_dim - relations


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10))
def test_kostant_rank_constant(m, c2):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert kostant_fiber_rank("SL2", m, (c2,), GF(11)) == 2
