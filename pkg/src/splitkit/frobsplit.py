"""Frobenius-splitting calculus on affine space over F_p.

A polynomial ``f`` stands for the section ``f (dx_1 ... dx_n)^(1-p)``, which
acts on ``k[x]`` through the Cartier-operator rule

    x^a (dx)^(1-p) : x^b  ->  x'^((a + b + 1 - p) / p)   if p divides every entry,
                              0                          otherwise.

Outputs are written in primed variables ``x_i' = x_i^p`` with exponents
already divided by ``p``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .liealg import SlFrame
from .polyalg import (GF, Polynomial, SpanBasis, ideal_truncation,
                      monomials_up_to_degree)


@dataclass(frozen=True)
class SplittingCandidate:
    p: int
    n: int
    f: Polynomial

    def __post_init__(self):
        if self.f.ring != GF(self.p):
            raise ValueError(f"candidate must live over GF({self.p}), got {self.f.ring}")
        if self.f.nvars != self.n:
            raise ValueError(f"candidate has {self.f.nvars} variables, expected {self.n}")

    @classmethod
    def of(cls, f):
        return cls(f.ring.p, f.nvars, f)


def primed(poly):
    return poly.rename(tuple(f"{name}'" for name in poly.names))


def cartier_evaluate(c, g):
    """Apply the map attached to ``c`` to ``g``; result in primed coordinates."""
    if g.ring != c.f.ring or g.nvars != c.n:
        raise ValueError("input must share the candidate's prime and variable count")
    p = c.p
    shift = 1 - p
    out = {}
    for a, ca in c.f.terms.items():
        for b, cb in g.terms.items():
            e = []
            for x, y in zip(a, b):
                s = x + y + shift
                if s < 0 or s % p:
                    break
                e.append(s // p)
            else:
                e = tuple(e)
                v = (out.get(e, 0) + ca * cb) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
    return primed(Polynomial._raw(c.f.ring, c.n, c.f.names, out))


def is_splitting(c):
    """phi(1) = 1."""
    return cartier_evaluate(c, c.f.one()) == primed(c.f.one())


def splitting_by_coefficients(c):
    """Coefficient form of the splitting test.

    ``x^(p-1,...,p-1)`` has coefficient 1 and no ``x^((p-1) + p a)``, a != 0,
    occurs.
    """
    p = c.p
    if c.f.coeff((p - 1,) * c.n) != 1:
        return False
    for e, v in c.f.terms.items():
        if all(k >= p - 1 and (k - (p - 1)) % p == 0 for k in e) and any(k > p - 1 for k in e):
            return False
    return True


def frobenius_power(g):
    """g^p, computed coefficientwise as sum c^p x^(p b) (exact over F_p)."""
    p = g.ring.p
    return Polynomial._raw(g.ring, g.nvars, g.names,
                           {tuple(p * k for k in e): pow(v, p, p) for e, v in g.terms.items()})


DEFAULT_BOUND_FACTOR = 3


def compatibly_splits(c, ideal_gens, degree_bound=None):
    """Check phi(Fr_* I) in I' on all inputs m*g with deg(m*g) <= degree_bound.

    The default bound is ``3p``.  An empty generator list is vacuously
    compatible and triggers a warning.
    """
    ideal_gens = list(ideal_gens)
    if not ideal_gens:
        warnings.warn("compatibly_splits called with no ideal generators; vacuously true",
                      stacklevel=2)
        return True
    if degree_bound is None:
        degree_bound = DEFAULT_BOUND_FACTOR * c.p
    for g in ideal_gens:
        if g.ring != c.f.ring or g.nvars != c.n:
            raise ValueError("ideal generators must share the candidate's ring")
    inputs = ideal_truncation(ideal_gens, degree_bound)
    outputs = [cartier_evaluate(c, h) for h in inputs]
    top = max((o.degree() for o in outputs), default=-1)
    if top < 0:
        return True
    target = SpanBasis(c.f.ring, [primed(h) for h in ideal_truncation(ideal_gens, top)])
    return all(target.contains(o) for o in outputs if o)


# -- epsilon ------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonContext:
    p: int
    dim_g: int

    @property
    def d(self):
        return (self.p - 1) * self.dim_g


def epsilon(ctx, f):
    """Coefficient of the all-(p-1) monomial of a degree-d form.

    Its kernel is the degree-d part of the ideal generated by p-th powers.
    """
    if f.nvars != ctx.dim_g or f.ring != GF(ctx.p):
        raise ValueError("form must live in S(g^*) over GF(p)")
    if not f.is_homogeneous(ctx.d) or (f and f.degree() != ctx.d):
        raise ValueError(f"epsilon needs a homogeneous form of degree {ctx.d}")
    return f.coeff((ctx.p - 1,) * ctx.dim_g)


# -- the submodule J -----------------------------------------------------------------

FLAVORS = ("generators", "hom")


def frame_for(name, p):
    if name == "sl2":
        return SlFrame(2, GF(p))
    if name == "sl3":
        return SlFrame(3, GF(p))
    raise ValueError(f"unknown frame {name!r}; expected 'sl2' or 'sl3'")


def j_generators(frame):
    """Generators of J_1 + J_2 inside S(g^*), in the given frame."""
    p = frame.ring.p
    lower = frame.lower_indices
    k = (p - 1) * len(lower)
    gens = []
    for e in monomials_up_to_degree(len(lower), k):
        if sum(e) != k:
            continue
        full = [0] * frame.nvars
        for idx, a in zip(lower, e):
            full[idx] = a
        gens.append(frame.polynomial({tuple(full): 1}))
    for idx in lower:
        gens.append(frame.var(idx) ** p)
    return gens


def hom_bound(frame):
    """Input degree that makes the Hom-side test conclusive for the linear ideal of b."""
    p = frame.ring.p
    return frame.nvars * (p - 1) + 1


def j_membership(f, flavor, frame="sl2", degree_bound=None):
    """Decide f in J by generators (J_1 + J_2) or by the defining Hom condition."""
    if isinstance(frame, str):
        frame = frame_for(frame, f.ring.p)
    if f.nvars != frame.nvars or f.ring != frame.ring:
        raise ValueError("f does not live in the frame's coordinate ring")
    if flavor == "generators":
        bound = f.degree() if degree_bound is None else degree_bound
        if f.degree() > bound:
            raise ValueError("degree_bound is below the degree of f")
        if not f:
            return True
        span = SpanBasis(f.ring, ideal_truncation(j_generators(frame), bound))
        return span.contains(f)
    if flavor == "hom":
        bound = hom_bound(frame) if degree_bound is None else degree_bound
        ideal = [frame.var(i) for i in frame.lower_indices]
        return compatibly_splits(SplittingCandidate.of(f), ideal, bound)
    raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


# -- rank-one Steinberg module ------------------------------------------------------------

def st_pairing(m, p):
    """Invariant form on S^m(k^2) in the basis e1^k e2^(m-k), k = 0..m.

    Induced from the symplectic form with (e1, e2) = 1:
    (e1^k e2^(m-k), e1^(m-k) e2^k) = (-1)^(m-k) / C(m, k).
    """
    size = m + 1
    out = [[0] * size for _ in range(size)]
    for k in range(size):
        v = Fraction((-1) ** (m - k), comb(m, k))
        out[k][m - k] = v.numerator * pow(v.denominator, -1, p) % p
    return out


def symmetric_power_action(g, m, ring):
    """Matrix of g on S^m(k^2) for a 2x2 matrix g with polynomial entries.

    Column j is the image of e1^j e2^(m-j).
    """
    # g e1 = g[0][0] e1 + g[1][0] e2 ; g e2 = g[0][1] e1 + g[1][1] e2
    names = ("E1", "E2")
    nv = g[0][0].nvars
    E = [Polynomial.variable(ring, nv + 2, nv + i, g[0][0].names + names) for i in range(2)]

    def lift(q):
        return q.embed(nv + 2, list(range(nv)), g[0][0].names + names)

    ge1 = lift(g[0][0]) * E[0] + lift(g[1][0]) * E[1]
    ge2 = lift(g[0][1]) * E[0] + lift(g[1][1]) * E[1]
    cols = []
    for j in range(m + 1):
        image = ge1 ** j * ge2 ** (m - j)
        col = []
        for k in range(m + 1):
            coeff = {}
            for e, v in image.terms.items():
                if e[nv] == k and e[nv + 1] == m - k:
                    coeff[e[:nv]] = v
            col.append(Polynomial(ring, nv, coeff, g[0][0].names))
        cols.append(col)
    return [[cols[j][k] for j in range(m + 1)] for k in range(m + 1)]


def _pair(form, v, w, zero):
    out = zero
    for i, vi in enumerate(v):
        for j, wj in enumerate(w):
            if form[i][j] and vi and wj:
                out = out + (vi * wj).scale(form[i][j])
    return out


def _act(mat, vec):
    return [sum((mat[k][j] * vec[j] for j in range(len(vec)) if vec[j]), mat[k][0].zero())
            for k in range(len(mat))]


def _split_torus(q, t_index, s_index):
    """Rewrite t^i s^j as t^(i-j) (s = 1/t); return {t-exponent: polynomial in the rest}."""
    out = {}
    keep = [k for k in range(q.nvars) if k not in (t_index, s_index)]
    names = tuple(q.names[k] for k in keep)
    for e, v in q.terms.items():
        texp = e[t_index] - e[s_index]
        rest = tuple(e[k] for k in keep)
        bucket = out.setdefault(texp, {})
        bucket[rest] = (bucket.get(rest, 0) + v) % q.ring.p
    return {k: Polynomial(q.ring, len(keep), b, names) for k, b in out.items()
            if any(b.values())}


@dataclass(frozen=True)
class SteinbergCoefficients:
    p: int
    f1: Polynomial
    f2: Polynomial
    t_exponent_f1: int
    t_exponent_f2: int


def big_cell_element(p):
    """g = u_-(x) u(y) t over k[x, y, t, s] with s = t^-1 (big cell U_- B, B = U T)."""
    ring = GF(p)
    names = ("x", "y", "t", "s")
    x, y, t, s = (Polynomial.variable(ring, 4, i, names) for i in range(4))
    one, zero = x.one(), x.zero()
    u_minus = [[one, zero], [x, one]]
    torus = [[t, zero], [zero, s]]
    u_plus = [[one, y], [zero, one]]

    def mul(a, b):
        return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]

    return mul(mul(u_minus, u_plus), torus)


def steinberg_coefficients_sl2(p):
    """f1(x), f2(y): big-cell dependence of (v+, g v+) and (v-, g v-) on St = S^(p-1)(k^2)."""
    if p == 2:
        raise ValueError("p = 2 is excluded (pairing normalization is degenerate)")
    if p > 13 or p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"p must be an odd prime <= 13, got {p}")
    ring = GF(p)
    m = p - 1
    g = big_cell_element(p)
    act = symmetric_power_action(g, m, ring)
    form = st_pairing(m, p)
    zero = g[0][0].zero()
    one = zero.one()
    v_plus = [zero] * m + [one]     # e1^m
    v_minus = [one] + [zero] * m    # e2^m
    parts1 = _split_torus(_pair(form, v_plus, _act(act, v_plus), zero), 2, 3)
    parts2 = _split_torus(_pair(form, v_minus, _act(act, v_minus), zero), 2, 3)
    if len(parts1) != 1 or len(parts2) != 1:
        raise ArithmeticError("matrix coefficient is not a single torus weight")
    (t1, q1), = parts1.items()
    (t2, q2), = parts2.items()
    f1 = _restrict(q1, keep=0, name="x")
    f2 = _restrict(q2, keep=1, name="y")
    return SteinbergCoefficients(p, f1, f2, t1, t2)


def _restrict(q, keep, name):
    """Polynomial in (x, y) that only involves one variable -> univariate."""
    other = 1 - keep
    if any(e[other] for e in q.terms):
        raise ArithmeticError("coefficient unexpectedly depends on both big-cell coordinates")
    return Polynomial(q.ring, 1, {(e[keep],): v for e, v in q.terms.items()}, (name,))


def satisfies_splitting_support(f1, p):
    """x^(p-1) occurs and no x^((p-1) + p a), a != 0, occurs."""
    if not f1.coeff((p - 1,)):
        return False
    return not any(e[0] > p - 1 and (e[0] - (p - 1)) % p == 0 for e in f1.terms)


def gamma0_sections_sl2(p):
    """Big-cell sections (v, g w) f1(x) t^(2(p-1)) for all basis vectors v, w of St.

    Coordinates (x, y, t); each returned polynomial represents a section of
    the inverse canonical power on U_- B.
    """
    ring = GF(p)
    m = p - 1
    g = big_cell_element(p)
    act = symmetric_power_action(g, m, ring)
    form = st_pairing(m, p)
    zero = g[0][0].zero()
    one = zero.one()
    coeffs = steinberg_coefficients_sl2(p)
    x = Polynomial.variable(ring, 3, 0, ("x", "y", "t"))
    f1 = coeffs.f1.compose([x])
    out = {}
    for i in range(m + 1):
        for j in range(m + 1):
            v = [one if k == i else zero for k in range(m + 1)]
            w = [one if k == j else zero for k in range(m + 1)]
            coeff = _pair(form, v, _act(act, w), zero)
            shifted = _laurent_to_poly(coeff, 2 * (p - 1))
            out[(i, j)] = shifted * f1
    return out


def _laurent_to_poly(q, shift):
    """Multiply a Laurent polynomial in (x, y, t, s=1/t) by t^shift -> k[x, y, t]."""
    terms = {}
    for e, v in q.terms.items():
        texp = e[2] - e[3] + shift
        if texp < 0:
            raise ArithmeticError("shift does not clear the denominator")
        key = (e[0], e[1], texp)
        terms[key] = (terms.get(key, 0) + v) % q.ring.p
    return Polynomial(q.ring, 3, terms, ("x", "y", "t"))


def gamma0_splitting_sl2(p):
    """f2(y) f1(x) t^(p-1): the image of v- (x) v- (x) v+ (x) v+ on the big cell.

    Torus factors: (v+, g v+) carries t^(p-1), (v-, g v-) carries t^-(p-1) and
    the invariant volume form contributes t^(p-1).
    """
    coeffs = steinberg_coefficients_sl2(p)
    ring = GF(p)
    names = ("x", "y", "t")
    x, y, t = (Polynomial.variable(ring, 3, i, names) for i in range(3))
    return coeffs.f1.compose([x]) * coeffs.f2.compose([y]) * t ** (p - 1)
