"""Sections of O(lambda) on P_lambda x g and on the partial Grothendieck alteration.

Supported models (rank <= 2):

* ``SL2``          P^1 with coordinates (u, v), any lambda = m >= 0
* ``SL3_omega1``   P^2 of lines, coordinates (v1, v2, v3), lambda = omega_1
* ``SL3_omega2``   P^2 of planes, dual coordinates (w1, w2, w3), lambda = omega_2
* ``SL3_2omega1``  P^2 of lines with O(2), lambda = 2 omega_1

Sections of the product in g-degree d are (forms of degree k on the
projective factor) x (S^d g^*).  Sections on the alteration are computed by
an exact Koszul cokernel for SL2 and by evaluation ranks at sampled points
for SL3.  Expected dimensions come from an independent Euler-characteristic
count (Weyl's dimension polynomial summed over the weights of S^d p^*).
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .linalg import Echelon, rank_mod_p
from .liealg import (ChevalleyPoint, SlFrame, as_matrix, companion_section, mat_inverse,
                     mat_mul)
from .polyalg import (GF, QQ, Polynomial, SpanBasis, ideal_truncation,
                      monomials_of_degree, monomials_up_to_degree)
from .repchar import extreme_kernel_dim, weyl_dimension_polynomial
from .rootdata import build_root_system, weyl_orbit

MODELS = ("SL2", "SL3_omega1", "SL3_omega2", "SL3_2omega1")
SAMPLING_PRIMES = (1000003, 998244353)
OVERSAMPLE = 3

_SL3_LAMBDA = {"SL3_omega1": (1, 0), "SL3_omega2": (0, 1), "SL3_2omega1": (2, 0)}


def _check_model(model):
    if model not in MODELS:
        raise ValueError(f"unsupported model {model!r}; expected one of {MODELS}")


def model_weight(model, lam=None):
    """Normalize lambda to a weight tuple, validating it against the model."""
    _check_model(model)
    if model == "SL2":
        if lam is None:
            raise ValueError("SL2 needs an explicit lambda")
        m = lam[0] if isinstance(lam, (tuple, list)) else lam
        if m < 0:
            raise ValueError("lambda must be dominant")
        return (int(m),)
    expected = _SL3_LAMBDA[model]
    if lam is not None and tuple(lam) != expected:
        raise ValueError(f"model {model} carries lambda = {expected}, got {tuple(lam)}")
    return expected


def root_system(model):
    return build_root_system("A", 1 if model == "SL2" else 2)


def projective_degree(model, lam):
    lam = model_weight(model, lam)
    if model == "SL2":
        return lam[0]
    return sum(lam)


def group_rank(model):
    return 2 if model == "SL2" else 3


@dataclass
class Ambient:
    """Polynomial ring k[projective coordinates, g-coordinates]."""

    model: str
    ring: object
    frame: SlFrame = field(init=False)
    proj_names: tuple = field(init=False)

    def __post_init__(self):
        n = group_rank(self.model)
        self.frame = SlFrame(n, self.ring)
        if self.model == "SL2":
            self.proj_names = ("u", "v")
        elif self.model == "SL3_omega2":
            self.proj_names = ("w1", "w2", "w3")
        else:
            self.proj_names = ("v1", "v2", "v3")

    @property
    def nproj(self):
        return len(self.proj_names)

    @property
    def names(self):
        return self.proj_names + self.frame.names

    @property
    def nvars(self):
        return self.nproj + self.frame.nvars

    def var(self, i):
        return Polynomial.variable(self.ring, self.nvars, i, self.names)

    def proj(self, i):
        return self.var(i)

    def g_matrix(self):
        """Generic traceless matrix with entries in this ring."""
        frame_mat = self.frame.generic_matrix()
        positions = list(range(self.nproj, self.nvars))
        return [[q.embed(self.nvars, positions, self.names) for q in row] for row in frame_mat]

    def poly(self, terms):
        return Polynomial(self.ring, self.nvars, terms, self.names)


# -- incidence model -------------------------------------------------------------------------

@dataclass
class IncidenceModel:
    model: str
    ambient: Ambient
    equations: list

    def sample(self, rng, ring=None):
        """Random point (projective vector, x) of the alteration via (g, xi in p)."""
        ring = ring or self.ambient.ring
        return sample_point(self.model, rng, ring)


def _wedge_components(a, b):
    n = len(a)
    return [a[i] * b[j] - a[j] * b[i] for i in range(n) for j in range(i + 1, n)]


def incidence_model(model, ring=QQ):
    _check_model(model)
    amb = Ambient(model, ring)
    x = amb.g_matrix()
    if model == "SL2":
        u, v = amb.proj(0), amb.proj(1)
        a, b, c = x[0][0], x[0][1], x[1][0]
        eqs = [c * u * u - (a * u * v).scale(2) - b * v * v]
    elif model == "SL3_omega2":
        w = [amb.proj(i) for i in range(3)]
        wx = [sum((w[i] * x[i][j] for i in range(3)), w[0].zero()) for j in range(3)]
        eqs = _wedge_components(wx, w)
    else:
        v = [amb.proj(i) for i in range(3)]
        xv = [sum((x[i][j] * v[j] for j in range(3)), v[0].zero()) for i in range(3)]
        eqs = _wedge_components(xv, v)
    return IncidenceModel(model, amb, eqs)


def parabolic_mask(model):
    """Entries (i, j) allowed to be nonzero in the standard parabolic p_lambda."""
    n = group_rank(model)
    if model == "SL2":
        return {(0, 0), (0, 1), (1, 1)}
    if model == "SL3_omega2":
        zero = {(2, 0), (2, 1)}
    else:
        zero = {(1, 0), (2, 0)}
    return {(i, j) for i in range(n) for j in range(n)} - zero


def _random_scalar(ring, rng, spread=50):
    if ring.kind == "GF":
        return rng.randrange(ring.p)
    return rng.randint(-spread, spread)


def _random_parabolic(model, ring, rng):
    n = group_rank(model)
    mask = parabolic_mask(model)
    rows = [[_random_scalar(ring, rng) if (i, j) in mask else 0 for j in range(n)] for i in range(n)]
    rows[n - 1][n - 1] = -sum(rows[i][i] for i in range(n - 1))
    return as_matrix(rows, ring)


def _random_group_element(n, ring, rng):
    """Invertible matrix; over Q a product of integer elementary matrices (integral inverse)."""
    if ring.kind == "GF":
        while True:
            g = as_matrix([[rng.randrange(ring.p) for _ in range(n)] for _ in range(n)], ring)
            try:
                return g, mat_inverse(g, ring)
            except ZeroDivisionError:
                continue
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-9, 9)
        # row operation R_i += c R_j
        g = [[g[r][s] + (c * g[j][s] if r == i else 0) for s in range(n)] for r in range(n)]
    g = as_matrix(g, ring)
    return g, mat_inverse(g, ring)


def sample_point(model, rng, ring):
    """(projective vector, x) = (g . base flag, g xi g^-1)."""
    n = group_rank(model)
    g, ginv = _random_group_element(n, ring, rng)
    xi = _random_parabolic(model, ring, rng)
    x = mat_mul(mat_mul(g, xi, ring), ginv, ring)
    if model == "SL3_omega2":
        point = tuple(ginv[n - 1])
    else:
        point = tuple(g[i][0] for i in range(n))
    return point, x


# -- section spaces ------------------------------------------------------------------------------

@dataclass
class SectionSpace:
    model: str
    lam: tuple
    g_degree: int
    ambient: Ambient
    exponents: list

    @property
    def dim(self):
        return len(self.exponents)

    @property
    def basis(self):
        return [self.ambient.poly({e: 1}) for e in self.exponents]


def product_sections(model, lam, d, ring=QQ):
    lam = model_weight(model, lam)
    if d < 0:
        raise ValueError("g-degree must be nonnegative")
    amb = Ambient(model, ring)
    k = projective_degree(model, lam)
    exps = [pe + ge for pe in monomials_of_degree(amb.nproj, k)
            for ge in monomials_of_degree(amb.frame.nvars, d)]
    return SectionSpace(model, lam, d, amb, exps)


# -- independent dimension count ---------------------------------------------------------------------

def parabolic_weights(model):
    """T-weights (fundamental-weight coordinates) of p_lambda, zero weights included."""
    rs = root_system(model)
    n = group_rank(model)
    mask = parabolic_mask(model)
    out = [(0,) * rs.rank] * (n - 1)
    for (i, j) in sorted(mask):
        if i == j:
            continue
        # E_ij has root eps_i - eps_j
        root = [0] * (n - 1)
        lo, hi = min(i, j), max(i, j)
        sign = 1 if i < j else -1
        for k in range(lo, hi):
            root[k] = sign
        out.append(rs.root_to_weight(tuple(root)))
    return out


def euler_characteristic(model, lam, d):
    """chi(P_lambda, O(lambda) (x) S^d p^*) as a sum of Weyl dimension polynomials.

    Each multiset of d weights of p shifts lambda; the shifted weight
    contributes the Euler characteristic of the corresponding line bundle
    on the full flag variety.
    """
    lam = model_weight(model, lam)
    rs = root_system(model)
    weights = parabolic_weights(model)
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(range(len(weights)), d):
        mu = list(lam)
        for idx in combo:
            mu = [a + b for a, b in zip(mu, weights[idx])]
        total += weyl_dimension_polynomial(rs, mu)
    assert total.denominator == 1
    return int(total)


def sl2_alteration_dim(lam, d):
    """Closed form (d + 1)(lambda + d + 1) for SL2, lambda >= 0."""
    return (d + 1) * (lam + d + 1)


def expected_gtilde_dim(model, lam, d):
    lam = model_weight(model, lam)
    if model == "SL2" and lam[0] == 0:
        # P_0 = G: the alteration is g itself
        return comb(d + 2, 2)
    return euler_characteristic(model, lam, d)


# -- sections on the alteration ----------------------------------------------------------------------

@dataclass
class AlterationSections:
    model: str
    lam: tuple
    g_degree: int
    dim: int | None
    status: str
    method: str
    product_dim: int
    detail: dict = field(default_factory=dict)


def _sl2_cokernel(lam, d):
    """Rank of multiplication by beta: Gamma(O(lam-2)) (x) S^(d-1) -> Gamma(O(lam)) (x) S^d."""
    model = incidence_model("SL2", QQ)
    (beta,) = model.equations
    amb = model.ambient
    relations = []
    if lam >= 2 and d >= 1:
        for pe in monomials_of_degree(2, lam - 2):
            for ge in monomials_of_degree(3, d - 1):
                relations.append(amb.poly({pe + ge: 1}) * beta)
    span = SpanBasis(QQ, relations)
    return len(relations), span


def gtilde_sections(model, lam, d, seed=0):
    lam = model_weight(model, lam)
    prod_dim = product_sections(model, lam, d).dim
    if model == "SL2":
        if lam[0] == 0:
            return AlterationSections(model, lam, d, prod_dim, "exact", "P_0 is a point", prod_dim)
        nrel, span = _sl2_cokernel(lam[0], d)
        return AlterationSections(model, lam, d, prod_dim - span.rank, "exact", "koszul-cokernel",
                                  prod_dim, {"relations": nrel, "relation_rank": span.rank})
    if d > 4:
        raise ValueError("SL3 models are supported up to g-degree 4")
    ev = evaluation_rank(model, lam, d, seed=seed)
    return AlterationSections(model, lam, d, ev["rank"], ev["status"], "evaluation-rank",
                              prod_dim, ev)


def _power_table(values, top, p):
    table = [np.ones_like(values)]
    for _ in range(top):
        table.append((table[-1] * values) % p)
    return table


def _evaluate_mod_p(space, points, p):
    """Matrix (points x basis) of the basis monomials evaluated mod p."""
    nvars = space.ambient.nvars
    frame = space.ambient.frame
    cols = []
    for pt, x in points:
        cols.append(list(pt) + frame.coords(x))
    vals = np.array([[int(c) % p for c in row] for row in cols], dtype=np.int64)
    top = max(max(e) for e in space.exponents) if space.exponents else 0
    tables = [_power_table(vals[:, i], top, p) for i in range(nvars)]
    out = np.ones((len(points), space.dim), dtype=np.int64)
    for j, e in enumerate(space.exponents):
        col = np.ones(len(points), dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                col = (col * tables[i][k]) % p
        out[:, j] = col
    return out


def _as_int(c):
    c = Fraction(c)
    if c.denominator != 1:
        raise ValueError("integral sample expected")
    return c.numerator


def _evaluate_exact(space, points):
    frame = space.ambient.frame
    rows = []
    for pt, x in points:
        vals = [_as_int(c) for c in list(pt) + frame.coords(x)]
        row = []
        for e in space.exponents:
            v = 1
            for c, k in zip(vals, e):
                if k:
                    v *= c ** k
            row.append(v)
        rows.append(row)
    return rows


def evaluation_rank(model, lam, d, seed=0, oversample=OVERSAMPLE, primes=SAMPLING_PRIMES):
    """Rank of the restriction of product sections to sampled points of the alteration.

    Conclusive only if the rank is stable between N and N + dim samples at
    the first prime, agrees at the second prime, and agrees with the rank of an
    integral sample reduced mod the first prime (a lower bound for the rank
    over Q).
    """
    space = product_sections(model, lam, d)
    n_samples = max(int(oversample * space.dim), 8)
    ranks = {}
    for p in primes:
        rng = random.Random(f"{seed}:{model}:{d}:{p}")
        count = n_samples + space.dim if p == primes[0] else n_samples
        pts = [sample_point(model, rng, GF(p)) for _ in range(count)]
        mat = _evaluate_mod_p(space, pts, p)
        ranks[f"GF({p})[N]"] = rank_mod_p(mat[:n_samples], p)
        if p == primes[0]:
            ranks[f"GF({p})[N+dim]"] = rank_mod_p(mat, p)
    rng = random.Random(f"{seed}:{model}:{d}:QQ")
    q_count = space.dim + 10
    qpts = [sample_point(model, rng, QQ) for _ in range(q_count)]
    ranks["QQ-subsample"] = rank_mod_p(np.array([[v % primes[0] for v in row]
                                                 for row in _evaluate_exact(space, qpts)],
                                                dtype=np.int64), primes[0])
    values = set(ranks.values())
    status = "conclusive" if len(values) == 1 else "inconclusive"
    rank = values.pop() if status == "conclusive" else None
    return {"rank": rank, "status": status, "ranks": ranks, "samples": n_samples}


@dataclass
class SurjectivityResult:
    model: str
    lam: tuple
    g_degree: int
    status: str
    image_rank: int | None
    expected_dim: int
    product_dim: int

    @property
    def surjective(self):
        return self.status == "pass"


def surjectivity_check(model, lam, d, seed=0):
    """Image rank of the restriction equals dim Gamma(alteration, O(lambda)) in g-degree d."""
    lam = model_weight(model, lam)
    gt = gtilde_sections(model, lam, d, seed=seed)
    expected = expected_gtilde_dim(model, lam, d)
    if gt.status == "inconclusive":
        status = "inconclusive"
    else:
        status = "pass" if gt.dim == expected else "fail"
    return SurjectivityResult(model, lam, d, status, gt.dim, expected, gt.product_dim)


# -- Springer fibers ----------------------------------------------------------------------------------

def principal_nilpotent(n, ring=QQ):
    return as_matrix([[int(j == i + 1) for j in range(n)] for i in range(n)], ring)


def _chart(model):
    """Index of the projective coordinate set to 1 (chart containing the fixed point)."""
    return 2 if model == "SL3_omega2" else 0


def fiber_chart_ideal(model, x, ring=QQ):
    """Equations of the fiber over x, restricted to the standard chart."""
    inc = incidence_model(model, ring)
    amb = inc.ambient
    coords = amb.frame.coords(x)
    chart = _chart(model)
    others = [i for i in range(amb.nproj) if i != chart]
    names = tuple(amb.proj_names[i] for i in others)
    m = len(others)
    images = []
    for i in range(amb.nproj):
        if i == chart:
            images.append(Polynomial.constant(ring, m, 1, names))
        else:
            images.append(Polynomial.variable(ring, m, others.index(i), names))
    for c in coords:
        images.append(Polynomial.constant(ring, m, c, names))
    return [q for q in (eq.compose(images) for eq in inc.equations) if q], names


def _dehomogenize(model, exps, names, ring):
    chart = _chart(model)
    m = len(names)
    out = []
    for e in exps:
        rest = tuple(k for i, k in enumerate(e) if i != chart)
        out.append(Polynomial(ring, m, {rest: 1}, names))
    return out


def quotient_rank(images, ideal, degree):
    """rank of ``images`` in k[y]/I, with I truncated at ``degree``."""
    ring = images[0].ring
    trunc = ideal_truncation(ideal, degree)
    base = SpanBasis(ring, trunc)
    r0 = base.rank
    for f in images:
        base.add(f)
    return base.rank - r0


def local_length(ideal, nvars, degree, ring=QQ, names=None):
    """dim k[y]_{<= degree} / (truncated ideal)."""
    trunc = ideal_truncation(ideal, degree)
    total = sum(comb(k + nvars - 1, nvars - 1) for k in range(degree + 1))
    return total - SpanBasis(ring, trunc).rank


@dataclass(frozen=True)
class SpringerRestriction:
    total_dim: int
    image_rank: int
    kernel_dim: int
    scheme_length: int
    orbit_size: int


def springer_restriction(model, lam=None):
    """Gamma(P_lambda, O(lambda)) -> Gamma(Springer fiber at the principal nilpotent)."""
    lam = model_weight(model, lam)
    if model == "SL2" and lam[0] == 0:
        raise ValueError("lambda = 0 has a point as flag variety")
    n = group_rank(model)
    e = principal_nilpotent(n)
    ideal, names = fiber_chart_ideal(model, e)
    k = projective_degree(model, lam)
    amb = Ambient(model, QQ)
    exps = monomials_of_degree(amb.nproj, k)
    images = _dehomogenize(model, exps, names, QQ)
    top = max([k] + [g.degree() for g in ideal]) + 3
    lengths = {local_length(ideal, len(names), deg, names=names) for deg in (top, top + 1, top + 2)}
    if len(lengths) != 1:
        raise ArithmeticError("truncated local ring did not stabilize")
    length = lengths.pop()
    rank = quotient_rank(images, ideal, top)
    orbit = len(weyl_orbit(root_system(model), lam))
    if length != orbit:
        raise ArithmeticError(f"zero scheme in the chart has length {length}, expected {orbit}")
    return SpringerRestriction(len(exps), rank, len(exps) - rank, length, orbit)


# -- torus fixed points ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Localization:
    kernel_dim: int
    expected: int


def fixed_point_localization(model, lam=None):
    """Kernel of evaluation of Gamma(P_lambda, O(lambda)) at the coordinate points."""
    lam = model_weight(model, lam)
    amb = Ambient(model, QQ)
    k = projective_degree(model, lam)
    exps = monomials_of_degree(amb.nproj, k)
    points = [tuple(int(i == j) for j in range(amb.nproj)) for i in range(amb.nproj)]
    rows = [[int(all(pt[i] or not e[i] for i in range(amb.nproj))) for e in exps] for pt in points]
    ech = Echelon(None)
    for r in rows:
        ech.add({j: c for j, c in enumerate(r) if c})
    kernel = len(exps) - ech.rank
    return Localization(kernel, extreme_kernel_dim(root_system(model), lam))


# -- Kostant slice ------------------------------------------------------------------------------------

def kostant_fiber_rank(model, lam, c, ring=None):
    """dim Gamma(fiber over the companion matrix of c, O(lambda)); SL2 only."""
    if model != "SL2":
        raise ValueError("kostant_fiber_rank is implemented for the SL2 model")
    lam = model_weight(model, lam)[0]
    ring = ring or QQ
    if lam == 0:
        warnings.warn("lambda = 0: the flag variety is a point, rank 1 (degenerate case)",
                      stacklevel=2)
        return 1
    if not isinstance(c, ChevalleyPoint):
        c = ChevalleyPoint(tuple(ring.convert(t) for t in c))
    if c.n != 2:
        raise ValueError("SL2 needs a single invariant c2")
    x = companion_section(c, ring)
    a, b, cc = x[0][0], x[0][1], x[1][0]
    names = ("u", "v")
    u = Polynomial.variable(ring, 2, 0, names)
    v = Polynomial.variable(ring, 2, 1, names)
    beta = (u * u).scale(cc) - (u * v).scale(2 * a) - (v * v).scale(b)
    rel = [Polynomial(ring, 2, {e: 1}, names) * beta for e in monomials_of_degree(2, lam - 2)]
    span = SpanBasis(ring, rel)
    return (lam + 1) - span.rank


# -- minuscule bridge -------------------------------------------------------------------------------

def restriction_kernel_dims(model, lam, max_degree, seed=0):
    """dim product - dim alteration sections in g-degrees 0..max_degree."""
    out = []
    for d in range(max_degree + 1):
        gt = gtilde_sections(model, lam, d, seed=seed)
        if gt.dim is None:
            out.append(None)
        else:
            out.append(gt.product_dim - gt.dim)
    return out


__all__ = [
    "MODELS", "AlterationSections", "IncidenceModel", "SectionSpace", "SpringerRestriction",
    "SurjectivityResult", "euler_characteristic", "evaluation_rank", "expected_gtilde_dim",
    "fixed_point_localization", "gtilde_sections", "incidence_model", "kostant_fiber_rank",
    "product_sections", "restriction_kernel_dims", "sl2_alteration_dim", "springer_restriction",
    "surjectivity_check", "monomials_up_to_degree",
]
