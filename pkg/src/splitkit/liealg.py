"""Matrix models of sl_n: adjoint action, Chevalley map, companion sections.

Matrices are tuples of row tuples with entries in a :class:`CoeffRing`
(``Fraction`` over QQ, reduced ints over GF(p)).  Polynomial functions on
sl_n live in :class:`SlFrame`, whose coordinates are the matrix entries in
row-major order with the last diagonal entry dropped (it equals minus the
sum of the others).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import Echelon, nullspace
from .polyalg import QQ, Polynomial, monomials_of_degree


# -- plain matrix arithmetic ------------------------------------------------------

def as_matrix(rows, ring=QQ):
    return tuple(tuple(ring.convert(c) for c in r) for r in rows)


def identity(n, ring=QQ):
    return as_matrix([[int(i == j) for j in range(n)] for i in range(n)], ring)


def zeros(n, ring=QQ):
    return as_matrix([[0] * n for _ in range(n)], ring)


def mat_mul(a, b, ring=QQ):
    n, m, k = len(a), len(b), len(b[0])
    return tuple(tuple(ring.convert(sum(a[i][t] * b[t][j] for t in range(m))) for j in range(k))
                 for i in range(n))


def mat_add(a, b, ring=QQ):
    return tuple(tuple(ring.convert(x + y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a, b, ring=QQ):
    return tuple(tuple(ring.convert(x - y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a, ring=QQ):
    return tuple(tuple(ring.convert(c * x) for x in r) for r in a)


def commutator(a, b, ring=QQ):
    return mat_sub(mat_mul(a, b, ring), mat_mul(b, a, ring), ring)


def trace(a, ring=QQ):
    return ring.convert(sum(a[i][i] for i in range(len(a))))


def mat_inverse(a, ring=QQ):
    n = len(a)
    p = ring.field_p
    m = [list(r) + [ring.convert(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / Fraction(m[col][col]) if p is None else pow(int(m[col][col]), -1, p)
        m[col] = [ring.convert(x * inv) for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [ring.convert(x - f * y) for x, y in zip(m[r], m[col])]
    return tuple(tuple(r[n:]) for r in m)


def is_upper_triangular(x):
    return all(not x[i][j] for i in range(len(x)) for j in range(i))


def random_matrix(n, ring, rng, lo=-5, hi=5, traceless=False):
    if ring.kind == "GF":
        rows = [[rng.randrange(ring.p) for _ in range(n)] for _ in range(n)]
    else:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
    if traceless:
        rows[n - 1][n - 1] = -sum(rows[i][i] for i in range(n - 1))
    return as_matrix(rows, ring)


def random_invertible(n, ring, rng, **kw):
    while True:
        g = random_matrix(n, ring, rng, **kw)
        if determinant(g, ring):
            return g


def determinant(a, ring=QQ):
    n = len(a)
    p = ring.field_p if ring.is_field else None
    m = [[Fraction(x) if p is None else x for x in r] for r in a]
    det = Fraction(1) if p is None else 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return ring.convert(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = 1 / m[col][col] if p is None else pow(int(m[col][col]), -1, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv
            m[r] = [x - f * y if p is None else (x - f * y) % p for x, y in zip(m[r], m[col])]
    return ring.convert(det)


# -- sl_n frames --------------------------------------------------------------------

class SlFrame:
    """Coordinates on sl_n and the coadjoint action on polynomial functions."""

    def __init__(self, n, ring=QQ):
        if n < 2:
            raise ValueError("sl_n needs n >= 2")
        self.n = n
        self.ring = ring
        self.positions = [(i, j) for i in range(n) for j in range(n) if (i, j) != (n - 1, n - 1)]
        if n == 2:
            self.names = ("a", "b", "c")
        else:
            self.names = tuple(f"x{i + 1}{j + 1}" for i, j in self.positions)
        self.nvars = len(self.positions)

    def __repr__(self):
        return f"SlFrame(n={self.n}, ring={self.ring})"

    @property
    def dim(self):
        return self.nvars

    def var(self, i):
        return Polynomial.variable(self.ring, self.nvars, i, self.names)

    def var_at(self, i, j):
        return self.var(self.positions.index((i, j)))

    def polynomial(self, terms):
        return Polynomial(self.ring, self.nvars, terms, self.names)

    @cached_property
    def lower_indices(self):
        """Coordinates of the opposite nilradical u_- (strictly lower entries)."""
        return [k for k, (i, j) in enumerate(self.positions) if i > j]

    @cached_property
    def borel_indices(self):
        return [k for k, (i, j) in enumerate(self.positions) if i <= j]

    def generic_matrix(self):
        n = self.n
        zero = Polynomial(self.ring, self.nvars, {}, self.names)
        rows = [[zero] * n for _ in range(n)]
        for k, (i, j) in enumerate(self.positions):
            rows[i][j] = self.var(k)
        last = zero
        for i in range(n - 1):
            last = last - rows[i][i]
        rows[n - 1][n - 1] = last
        return rows

    def coords(self, x):
        """Coordinate vector of a traceless matrix."""
        return [x[i][j] for i, j in self.positions]

    def from_coords(self, v):
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for c, (i, j) in zip(v, self.positions):
            rows[i][j] = c
        rows[n - 1][n - 1] = -sum(rows[i][i] for i in range(n - 1))
        return as_matrix(rows, self.ring)

    def basis(self):
        """Basis of sl_n: E_ij (i != j) and H_i = E_ii - E_{i+1,i+1}, in coordinate order."""
        n = self.n
        out = []
        for (i, j) in self.positions:
            rows = [[0] * n for _ in range(n)]
            if i == j:
                rows[i][i] = 1
                rows[i + 1][i + 1] = -1
            else:
                rows[i][j] = 1
            out.append(as_matrix(rows, self.ring))
        return out

    def root_vectors(self):
        n = self.n
        out = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    rows = [[0] * n for _ in range(n)]
                    rows[i][j] = 1
                    out.append(as_matrix(rows, self.ring))
        return out

    @cached_property
    def _bracket_coords(self):
        return {}

    def derivation(self, z):
        """Linear coefficients ``L_k`` with ``z.f = -sum_k (d f / d x_k) L_k``."""
        key = z
        cached = self._bracket_coords.get(key)
        if cached is not None:
            return cached
        x = self.generic_matrix()
        n = self.n
        br = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = x[0][0].zero()
                for t in range(n):
                    if z[i][t]:
                        acc = acc + x[t][j].scale(z[i][t])
                    if z[t][j]:
                        acc = acc - x[i][t].scale(z[t][j])
                br[i][j] = acc
        coeffs = [br[i][j] for i, j in self.positions]
        self._bracket_coords[key] = coeffs
        return coeffs

    def act(self, z, f):
        """Coadjoint (derivation) action of the Lie algebra element ``z`` on ``f``."""
        out = f.zero()
        for k, lin in enumerate(self.derivation(z)):
            if lin:
                d = f.derivative(k)
                if d:
                    out = out - d * lin
        return out

    def monomial_weight(self, e):
        """Torus weight of a monomial, as an integer vector in epsilon coordinates."""
        w = [0] * self.n
        for k, (i, j) in zip(e, self.positions):
            if k and i != j:
                w[i] -= k
                w[j] += k
        return tuple(w)


# -- regularity, Chevalley map, sections ----------------------------------------------

def _check_square(x):
    n = len(x)
    if any(len(r) != n for r in x):
        raise ValueError("matrix must be square")
    return n


def ad_matrix(x, ring=QQ):
    """Matrix of ad(x): sl_n -> gl_n; columns indexed by the SlFrame basis."""
    n = _check_square(x)
    frame = SlFrame(n, ring)
    cols = [commutator(x, b, ring) for b in frame.basis()]
    return [[cols[k][i][j] for k in range(len(cols))] for i in range(n) for j in range(n)]


def centralizer_dim(x, ring=QQ):
    n = len(x)
    m = ad_matrix(x, ring)
    return len(nullspace(m, n * n - 1, ring.field_p))


def is_regular(x, ring=QQ):
    return centralizer_dim(x, ring) == len(x) - 1


def char_poly(x, ring=QQ):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(T - x)`` by memoized Laplace expansion."""
    n = _check_square(x)
    t_poly = Polynomial.variable(ring, 1, 0, ("T",))
    m = [[(t_poly if i == j else t_poly.zero()) - x[i][j] for j in range(n)] for i in range(n)]

    memo = {}

    def minor(row, cols):
        if row == n:
            return t_poly.one()
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = t_poly.zero()
        sign = 1
        for idx, c in enumerate(cols):
            entry = m[row][c]
            if entry:
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    det = minor(0, tuple(range(n)))
    return [ring.convert(det.coeff((n - k,))) for k in range(n + 1)]


@dataclass(frozen=True)
class ChevalleyPoint:
    """Characteristic-polynomial coefficients ``(c2, ..., cn)``."""

    invariants: tuple

    @property
    def n(self):
        return len(self.invariants) + 1


def chevalley_chi(x, ring=QQ):
    coeffs = char_poly(x, ring)
    if coeffs[1]:
        raise ValueError("chevalley_chi expects a traceless matrix")
    return ChevalleyPoint(tuple(coeffs[2:]))


def companion_section(c, ring=QQ):
    """Companion matrix of ``T^n + c2 T^(n-2) + ... + cn``; traceless and regular."""
    coeffs = [0, 0] + list(c.invariants)  # [c0=1 placeholder, c1=0, c2..cn]
    n = c.n
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        # last column: -a_i where char poly = T^n + a_{n-1}T^{n-1} + ... + a_0
        rows[i][n - 1] = -coeffs[n - i]
    return as_matrix(rows, ring)


def centralizer_fiber_basis(x, ring=QQ):
    """Basis of ker ad(x) inside sl_n for a regular ``x``."""
    n = len(x)
    frame = SlFrame(n, ring)
    kernel = nullspace(ad_matrix(x, ring), n * n - 1, ring.field_p)
    if len(kernel) != n - 1:
        raise ValueError("centralizer_fiber_basis needs a regular element")
    basis = frame.basis()
    out = []
    for v in kernel:
        acc = zeros(n, ring)
        for c, b in zip(v, basis):
            if c:
                acc = mat_add(acc, mat_scale(c, b, ring), ring)
        out.append(acc)
    return out


def traceless_powers(x, ring=QQ):
    """Traceless parts of x^1..x^(n-1) (x^0 has zero traceless part)."""
    n = len(x)
    if ring.kind == "GF" and n % ring.p == 0:
        raise ValueError(f"{n} is not invertible in {ring}")
    out = []
    power = identity(n, ring)
    for _ in range(1, n):
        power = mat_mul(power, x, ring)
        tr = trace(power, ring)
        shift = mat_scale(ring.convert(tr) * _inv(n, ring), identity(n, ring), ring)
        out.append(mat_sub(power, shift, ring))
    return out


def _inv(k, ring):
    if ring.kind == "GF":
        return pow(k, -1, ring.p)
    return Fraction(1, k)


def same_span(mats_a, mats_b, ring=QQ):
    """Exact equality of the linear spans of two lists of matrices."""
    def vec(m):
        return {i: c for i, c in enumerate(c for r in m for c in r) if c}

    ech_a, ech_b = Echelon(ring.field_p), Echelon(ring.field_p)
    for m in mats_a:
        ech_a.add(vec(m))
    for m in mats_b:
        ech_b.add(vec(m))
    return (ech_a.rank == ech_b.rank
            and all(ech_a.contains(vec(m)) for m in mats_b)
            and all(ech_b.contains(vec(m)) for m in mats_a))


# -- invariant theory ---------------------------------------------------------------------

INVARIANT_DIM_CAP = {2: 12, 3: 10}


def invariant_dims(n, d):
    """dim (S^d sl_n^*)^{sl_n} over Q, by exact elimination.

    Invariants have torus weight zero, so unknowns are the weight-zero
    monomials; the remaining conditions are ``E_ij . f = 0`` for all root
    vectors.
    """
    if n not in INVARIANT_DIM_CAP or d > INVARIANT_DIM_CAP[n] or d < 0:
        raise ValueError(f"invariant_dims supports n in {{2,3}}, d <= 10; got n={n}, d={d}")
    frame = SlFrame(n, QQ)
    unknowns = [e for e in monomials_of_degree(frame.nvars, d)
                if not any(frame.monomial_weight(e))]
    if d == 0:
        return 1
    col_index = {}
    ech = Echelon(None)
    gens = frame.root_vectors()
    for e in unknowns:
        f = frame.polynomial({e: 1})
        vec = {}
        for gi, z in enumerate(gens):
            for m, c in frame.act(z, f).terms.items():
                key = col_index.setdefault((gi, m), len(col_index))
                vec[key] = c
        ech.add(vec)
    return len(unknowns) - ech.rank


def w_invariant_dims(n, d):
    """dim (S^d t^*)^W for sl_n, by the rank of Reynolds-averaged monomials."""
    if n not in INVARIANT_DIM_CAP or d > INVARIANT_DIM_CAP[n] or d < 0:
        raise ValueError(f"w_invariant_dims supports n in {{2,3}}, d <= 10; got n={n}, d={d}")
    m = n - 1
    names = tuple(f"t{i + 1}" for i in range(m))
    ts = [Polynomial.variable(QQ, m, i, names) for i in range(m)]
    last = ts[0].zero()
    for t in ts:
        last = last - t
    full = ts + [last]
    perms = list(itertools.permutations(range(n)))
    ech = Echelon(None)
    cols = {}
    for e in monomials_of_degree(m, d):
        mono = Polynomial(QQ, m, {e: 1}, names)
        avg = mono.zero()
        for s in perms:
            avg = avg + mono.compose([full[s[i]] for i in range(m)])
        ech.add({cols.setdefault(k, len(cols)): c for k, c in avg.terms.items()})
    return ech.rank


# -- Borel limit, phi, Cartesian check ---------------------------------------------------------

def two_rho_check_exponents(n):
    return [n - 1 - 2 * i for i in range(n)]


def borel_limit_exponents(x):
    """t-exponents of the nonzero entries of Ad(2rho^vee(t)) x."""
    n = len(x)
    w = two_rho_check_exponents(n)
    return {(i, j): w[i] - w[j] for i in range(n) for j in range(n) if x[i][j]}


def borel_limit_test(x):
    """True iff t -> Ad(2rho^vee(t)) x extends over t = 0."""
    return all(k >= 0 for k in borel_limit_exponents(x).values())


def phi_typeA(g, ring=QQ):
    """Equivariant map GL_n -> sl_n, g -> g - tr(g)/n; sends 1 to 0 with identity differential."""
    n = len(g)
    if ring.kind == "GF" and n % ring.p == 0:
        raise ValueError(f"{n} is not invertible in {ring}")
    shift = ring.convert(trace(g, ring) * _inv(n, ring))
    return mat_sub(g, mat_scale(shift, identity(n, ring), ring), ring)


@dataclass(frozen=True)
class CartesianCheck:
    fiber_disc: object
    base_disc: object
    match: bool


def cartesian_check_sl2(x, ring=QQ):
    """Compare the fiber of the Grothendieck alteration over x with t x_{t//W} {chi(x)}.

    Fiber: zero scheme in P^1 of c u^2 - 2a uv - b v^2.  Base side:
    k[h]/(h^2 + c2).  Both are length-2 algebras with canonical generators,
    compared through their discriminants.
    """
    if len(x) != 2:
        raise ValueError("cartesian_check_sl2 needs a 2x2 matrix")
    if ring.kind == "GF" and ring.p == 2:
        raise ValueError("characteristic 2 is excluded")
    a, b, c = x[0][0], x[0][1], x[1][0]
    if not (a or b or c):
        raise ValueError("x = 0 is not regular")
    # binary quadratic  c u^2 + (-2a) uv + (-b) v^2
    fiber = ring.convert((-2 * a) ** 2 - 4 * c * (-b))
    (c2,) = chevalley_chi(x, ring).invariants
    base = ring.convert(-4 * c2)
    return CartesianCheck(fiber, base, fiber == base)


def random_chevalley_point(n, ring, rng, lo=-9, hi=9):
    if ring.kind == "GF":
        vals = [rng.randrange(ring.p) for _ in range(n - 1)]
    else:
        vals = [Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(n - 1)]
    return ChevalleyPoint(tuple(ring.convert(v) for v in vals))


def seeded(seed):
    return random.Random(seed)
