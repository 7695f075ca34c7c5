"""Root systems, Weyl groups and weights for simple types A-G.

Conventions: Bourbaki numbering of simple roots; ``cartan_matrix[i][j] =
<alpha_i, coroot_j>`` so that ``alpha_i = sum_j A[i][j] omega_j``.  Weights
are integer tuples in the fundamental-weight basis and roots are integer
tuples in the simple-root basis.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .polyalg import prime_support

SUPPORTED_RANKS = {"A": range(1, 9), "B": range(2, 9), "C": range(2, 9), "D": range(4, 9),
                   "E": range(6, 9), "F": (4,), "G": (2,)}
# Largest Weyl group materialized element by element.
WEYL_ENUMERATION_CAP = 60000


def cartan_matrix(cartan_type, rank):
    t, n = cartan_type, rank
    if t not in SUPPORTED_RANKS or n not in SUPPORTED_RANKS[t]:
        raise ValueError(f"invalid Cartan type {t}{n}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        a[i][j] = a[j][i] = -1

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            # alpha_n short
            a[n - 2][n - 1] = -2
        elif t == "C":
            a[n - 1][n - 2] = -2
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(2, 3)
        a[1][2] = -2
        a[2][1] = -1
    elif t == "G":
        a[0][1] = -1
        a[1][0] = -3
    return a


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    cartan: tuple = field(repr=False)
    positive_roots: tuple = field(repr=False)

    @property
    def cartan_matrix(self):
        return [list(r) for r in self.cartan]

    @property
    def simple_roots(self):
        return [tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)]

    @property
    def name(self):
        return f"{self.cartan_type}{self.rank}"

    @cached_property
    def roots(self):
        return tuple(self.positive_roots) + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def root_lengths(self):
        """Squared lengths of simple roots, scaled so the shortest is 1."""
        n = self.rank
        r = [None] * n
        r[0] = Fraction(1)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if r[j] is None and self.cartan[i][j]:
                    # A[i][j] r_j = A[j][i] r_i
                    r[j] = r[i] * self.cartan[j][i] / self.cartan[i][j]
                    queue.append(j)
        m = min(r)
        return tuple(x / m for x in r)

    def root_to_weight(self, root):
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(root[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, weight):
        """Fundamental-weight coordinates -> (rational) simple-root coordinates."""
        return tuple(_solve_left(self.cartan, weight))

    def root_norm(self, root):
        """Squared length of a root in the normalization of ``root_lengths``."""
        r = self.root_lengths
        n = self.rank
        return sum(root[i] * root[j] * self.cartan[i][j] * r[j] / 2 for i in range(n) for j in range(n))

    @cached_property
    def _coroot_cache(self):
        return {}

    def coroot(self, root):
        """Coroot of ``root`` in simple-coroot coordinates."""
        root = tuple(root)
        cached = self._coroot_cache.get(root)
        if cached is None:
            cached = self._coroot_cache[root] = self._compute_coroot(root)
        return cached

    def _compute_coroot(self, root):
        norm = self.root_norm(root)
        r = self.root_lengths
        out = []
        for i, c in enumerate(root):
            v = Fraction(c) * r[i] / norm
            if v.denominator != 1:
                raise ArithmeticError("coroot is not integral")
            out.append(int(v))
        return tuple(out)

    def pairing(self, weight, root):
        """<weight, coroot(root)>."""
        return sum(w * c for w, c in zip(weight, self.coroot(root)))

    def reflect_weight(self, i, weight):
        k = weight[i]
        if not k:
            return tuple(weight)
        a = self.cartan[i]
        return tuple(w - k * a[j] for j, w in enumerate(weight))

    def reflect_root(self, i, root):
        k = self.pairing(self.root_to_weight(root), self.simple_roots[i])
        return tuple(c - (k if j == i else 0) for j, c in enumerate(root))

    @cached_property
    def highest_root(self):
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def rho(self):
        return (1,) * self.rank

    @cached_property
    def weyl_order(self):
        if self.cartan_type in "EF" or _formula_order(self) > WEYL_ENUMERATION_CAP:
            return _formula_order(self)
        return len(self.weyl_group)

    @cached_property
    def weyl_group(self):
        """All Weyl group elements as integer matrices acting on weight coordinates.

        ``w[j]`` is the image of the j-th fundamental weight.
        """
        if _formula_order(self) > WEYL_ENUMERATION_CAP:
            raise ValueError(f"Weyl group of {self.name} too large to enumerate")
        n = self.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        seen = {ident}
        queue = deque([ident])
        while queue:
            w = queue.popleft()
            for i in range(n):
                sw = tuple(self.reflect_weight(i, col) for col in w)
                if sw not in seen:
                    seen.add(sw)
                    queue.append(sw)
        return sorted(seen)

    @staticmethod
    def act(w, weight):
        n = len(weight)
        return tuple(sum(weight[j] * w[j][k] for j in range(n)) for k in range(n))


def _solve_left(a, b):
    """Solve x A = b exactly (A square integer matrix)."""
    n = len(a)
    # transpose system A^T x = b
    m = [[Fraction(a[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _formula_order(rs):
    """|W| as the product of degrees; exponents read off from root heights."""
    heights = [sum(r) for r in rs.positive_roots]
    top = max(heights)
    counts = [heights.count(k) for k in range(1, top + 2)]
    order = 1
    for k in range(1, top + 1):
        mult = counts[k - 1] - counts[k]
        order *= (k + 1) ** mult
    return order


def build_root_system(cartan_type, rank):
    """Root system of type ``cartan_type``/``rank``, positive roots by reflection closure."""
    cartan_type = str(cartan_type).upper()
    a = cartan_matrix(cartan_type, rank)
    stub = RootSystem(cartan_type, rank, tuple(map(tuple, a)), ())
    simple = stub.simple_roots
    roots = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(rank):
            s = stub.reflect_root(i, r)
            if s not in roots:
                roots.add(s)
                queue.append(s)
    positive = sorted((r for r in roots if all(c >= 0 for c in r)), key=lambda r: (sum(r), r))
    return RootSystem(cartan_type, rank, tuple(map(tuple, a)), tuple(positive))


def parse_type(label):
    """``'B2'`` -> ``('B', 2)``."""
    label = label.strip().upper()
    if len(label) < 2 or not label[1:].isdigit():
        raise ValueError(f"bad Cartan type label {label!r}")
    return label[0], int(label[1:])


def is_dominant(weight):
    return all(c >= 0 for c in weight)


def weyl_orbit(rs, weight):
    """W-orbit of an arbitrary integral weight (closure under simple reflections)."""
    weight = tuple(weight)
    orbit = {weight}
    queue = deque([weight])
    while queue:
        mu = queue.popleft()
        for i in range(rs.rank):
            nu = rs.reflect_weight(i, mu)
            if nu not in orbit:
                orbit.add(nu)
                queue.append(nu)
    return orbit


def dominant_representative(rs, weight):
    mu = tuple(weight)
    while True:
        i = next((k for k, c in enumerate(mu) if c < 0), None)
        if i is None:
            return mu
        mu = rs.reflect_weight(i, mu)


def stabilizer_order(rs, weight):
    """Order of the stabilizer of a dominant weight, counted over the enumerated group."""
    weight = tuple(weight)
    if not is_dominant(weight):
        raise ValueError(f"stabilizer_order needs a dominant weight, got {weight}")
    return sum(1 for w in rs.weyl_group if rs.act(w, weight) == weight)


def is_minuscule(rs, weight):
    weight = tuple(weight)
    if not is_dominant(weight):
        raise ValueError(f"is_minuscule needs a dominant weight, got {weight}")
    if not any(weight):
        raise ValueError("the zero weight is treated separately, not as minuscule")
    return all(abs(rs.pairing(weight, a)) <= 1 for a in rs.roots)


def bad_primes(rs):
    out = set()
    for c in rs.highest_root:
        if c > 1:
            out |= prime_support(c)
    return out


def s_primes(rs):
    out = bad_primes(rs)
    if rs.cartan_type == "A":
        n1 = rs.rank + 1
        out |= prime_support(n1)
    return out


@dataclass(frozen=True)
class InvariantForm:
    """W-invariant form on the weight lattice, induced by the coroot form.

    ``coroot_gram[i][j] = B(coroot_i, coroot_j)`` with ``B`` the invariant
    form taking value 2 on long coroots; ``gram`` is its inverse, the form
    on fundamental weights.
    """

    coroot_gram: tuple
    gram: tuple
    denominator_support: frozenset

    def __call__(self, mu, nu):
        n = len(mu)
        return sum(mu[i] * self.gram[i][j] * nu[j] for i in range(n) for j in range(n))

    def coroot_value(self, x, y):
        n = len(x)
        return sum(x[i] * self.coroot_gram[i][j] * y[j] for i in range(n) for j in range(n))


def invariant_form(rs):
    n = rs.rank
    r = rs.root_lengths
    # coroot squared lengths are proportional to 1/r_j; long coroots <-> shortest roots.
    shortest = min(r)
    clen = [2 * shortest / r[j] for j in range(n)]
    b = [[rs.cartan[j][i] * clen[j] / 2 for j in range(n)] for i in range(n)]
    gram = _inverse(b)
    dens = set()
    for row in gram:
        for x in row:
            if x.denominator != 1:
                dens |= prime_support(x.denominator)
    return InvariantForm(tuple(map(tuple, b)), tuple(map(tuple, gram)), frozenset(dens))


def _inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def form_invertible_away_from_S(rs):
    """True iff the form and its inverse are defined over Z localized at ``s_primes``."""
    form = invariant_form(rs)
    det = determinant(form.coroot_gram)
    support = prime_support(det.numerator) | prime_support(det.denominator)
    entries = set()
    for mat in (form.gram, form.coroot_gram):
        for row in mat:
            for x in row:
                if x.denominator != 1:
                    entries |= prime_support(x.denominator)
    return (support | entries) <= s_primes(rs)
