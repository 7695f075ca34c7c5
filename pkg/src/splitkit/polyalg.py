"""Sparse exact multivariate polynomials and degree-truncated linear algebra.

Terms are stored as ``{exponent tuple: coefficient}`` with no zero
coefficients.  Monomials are ordered graded-lexicographically everywhere a
deterministic order is needed.
"""
from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb

from .linalg import Echelon


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_support(n):
    """Set of primes dividing the nonzero integer ``n``."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("zero has no finite prime support")
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class CoeffRing:
    """Coefficient ring: ``ZZ``, ``QQ``, ``GF(p)`` or ``ZZ`` localized at a prime set.

    ``primes`` is the set of primes allowed in denominators for the localized
    kind (the ring written Z_S elsewhere, S generated by ``primes``).
    """

    kind: str
    p: int | None = None
    primes: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF", "ZS"):
            raise ValueError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "GF" and not (self.p and _is_prime(self.p)):
            raise ValueError(f"GF requires a prime modulus, got {self.p}")
        if self.kind == "ZS":
            bad = [q for q in self.primes if not _is_prime(q)]
            if bad:
                raise ValueError(f"localization set must contain primes, got {bad}")

    @property
    def is_field(self):
        return self.kind in ("QQ", "GF")

    @property
    def characteristic(self):
        return self.p if self.kind == "GF" else 0

    @property
    def field_p(self):
        """Modulus handed to :mod:`splitkit.linalg` (None for Q)."""
        if self.kind == "GF":
            return self.p
        if self.kind == "QQ":
            return None
        raise TypeError(f"{self} is not a field")

    def convert(self, c):
        if self.kind == "GF":
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return int(c) % self.p
        if self.kind == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            return int(c)
        c = Fraction(c)
        if self.kind == "ZS" and c.denominator != 1:
            if not prime_support(c.denominator) <= self.primes:
                raise ValueError(f"denominator of {c} is not invertible in {self}")
        return c

    def __str__(self):
        if self.kind == "GF":
            return f"GF({self.p})"
        if self.kind == "ZS":
            return f"ZZ[1/{','.join(map(str, sorted(self.primes)))}]"
        return self.kind


ZZ = CoeffRing("ZZ")
QQ = CoeffRing("QQ")


@lru_cache(maxsize=None)
def GF(p):
    return CoeffRing("GF", p=p)


def ZS(primes):
    return CoeffRing("ZS", primes=frozenset(primes))


def grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial in a fixed number of variables."""

    __slots__ = ("ring", "nvars", "names", "terms")

    def __init__(self, ring, nvars, terms=None, names=None):
        self.ring = ring
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("number of variable names does not match nvars")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(a < 0 for a in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = ring.convert(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- construction helpers ------------------------------------------------
    @classmethod
    def _raw(cls, ring, nvars, names, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.nvars = nvars
        obj.names = names
        obj.terms = terms
        return obj

    def _new(self, terms):
        return Polynomial._raw(self.ring, self.nvars, self.names, terms)

    @classmethod
    def constant(cls, ring, nvars, c, names=None):
        return cls(ring, nvars, {(0,) * nvars: c}, names)

    @classmethod
    def monomial(cls, ring, exps, coeff=1, names=None):
        return cls(ring, len(exps), {tuple(exps): coeff}, names)

    @classmethod
    def variable(cls, ring, nvars, i, names=None):
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): 1}, names)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({(0,) * self.nvars: self.ring.convert(1)})

    def gens(self):
        return [Polynomial.variable(self.ring, self.nvars, i, self.names) for i in range(self.nvars)]

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring or other.nvars != self.nvars:
                raise ValueError(
                    f"ring mismatch: {self.ring}[{self.nvars}] vs {other.ring}[{other.nvars}]"
                )
            return other
        return Polynomial.constant(self.ring, self.nvars, other, self.names)

    def _fix(self, c):
        if self.ring.kind == "GF":
            return c % self.ring.p
        return c

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = self._fix(out.get(e, 0) + c)
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: self._fix(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out = {}
        fix = self._fix
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = fix(out.get(e, 0) + c1 * c2)
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return self._new(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.ring.convert(c)
        out = {}
        for e, v in self.terms.items():
            nv = self._fix(v * c)
            if nv:
                out[e] = nv
        return self._new(out)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.ring == other.ring and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def monomials(self):
        """Exponent vectors in descending graded-lex order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    # -- maps ------------------------------------------------------------------
    def substitute(self, mapping):
        """Substitute ``{var index: Polynomial or scalar}``; other variables stay."""
        images = []
        for i, g in enumerate(self.gens()):
            if i in mapping:
                images.append(self._coerce(mapping[i]))
            else:
                images.append(g)
        return self.compose(images)

    def compose(self, images):
        """Replace variable ``i`` by ``images[i]`` (all in one common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0] if images else self
        out = target.zero()
        powers = [dict() for _ in images]

        def power(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        for e, c in self.terms.items():
            term = target.one().scale(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point):
        """Evaluate at a point given as a sequence of ring-compatible scalars."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        return self.ring.convert(total) if self.ring.kind == "GF" else total

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                nc = self._fix(c * e[i])
                if nc:
                    out[tuple(ne)] = nc
        return self._new(out)

    def to_ring(self, ring):
        return Polynomial(ring, self.nvars, self.terms, self.names)

    def rename(self, names):
        return Polynomial._raw(self.ring, self.nvars, tuple(names), self.terms)

    def embed(self, nvars, positions, names=None):
        """Place this polynomial's variables at ``positions`` of a larger ring."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for k, pos in zip(e, positions):
                ne[pos] += k
            out[tuple(ne)] = c
        return Polynomial(self.ring, nvars, out, names)

    # -- printing ----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials():
            c = self.terms[e]
            factors = []
            for name, k in zip(self.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            neg = (c < 0) if not isinstance(c, int) or self.ring.kind != "GF" else False
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self}, {self.ring})"


def monomials_of_degree(nvars, d):
    """All exponent vectors of total degree ``d``, descending graded-lex."""
    if d < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=grlex_key, reverse=True)


def monomials_up_to_degree(nvars, d):
    out = []
    for k in range(d, -1, -1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def monomial_count(nvars, d):
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


# -- parsing -------------------------------------------------------------------

def parse_poly(text, ring=ZZ, nvars=None, names=None):
    """Parse ``x1^2*x2 - 3*x3`` style text.

    Variables are ``x1..xn`` unless ``names`` is given; ``nvars`` defaults to
    the largest index that appears.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    used = [n.id for n in ast.walk(tree) if isinstance(n, ast.Name)]
    if names is None:
        idx = []
        for u in used:
            if not (u.startswith("x") and u[1:].isdigit() and int(u[1:]) >= 1):
                raise ValueError(f"unknown variable {u!r}; expected x1, x2, ...")
            idx.append(int(u[1:]))
        n = max(idx, default=0) if nvars is None else nvars
        if idx and max(idx) > n:
            raise ValueError(f"variable x{max(idx)} exceeds nvars={n}")
        names = tuple(f"x{i + 1}" for i in range(n))
    else:
        names = tuple(names)
        n = len(names)
        unknown = set(used) - set(names)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
    gens = {name: Polynomial.variable(ring, n, i, names) for i, name in enumerate(names)}

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(ring, n, node.value, names)
        if isinstance(node, ast.Name):
            return gens[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be nonnegative integer literals")
                return walk(node.left) ** node.right.value
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


# -- truncated linear algebra -------------------------------------------------------

def _require_field(polys):
    rings = {f.ring for f in polys}
    for r in rings:
        if not r.is_field:
            raise TypeError(f"span computations need a field, got {r}")
    if len(rings) > 1:
        raise ValueError("polynomials live over different rings")
    return rings.pop() if rings else None


def _index_vectors(polys):
    """Map monomials to column indices (grlex order) and polys to sparse vectors."""
    monos = sorted({e for f in polys for e in f.terms}, key=grlex_key, reverse=True)
    col = {e: i for i, e in enumerate(monos)}
    return col, [{col[e]: c for e, c in f.terms.items()} for f in polys]


def span_rank(polys, degree=None):
    """Rank of the coefficient matrix of ``polys`` (restricted to ``degree`` if given)."""
    polys = list(polys)
    if degree is not None:
        polys = [f.homogeneous_part(degree) for f in polys]
    ring = _require_field(polys)
    if ring is None:
        return 0
    _, vecs = _index_vectors(polys)
    ech = Echelon(ring.field_p)
    for v in vecs:
        ech.add(v)
    return ech.rank


def in_span(f, polys):
    """Exact membership of ``f`` in the linear span of ``polys``."""
    polys = list(polys)
    _require_field(polys + [f])
    col, vecs = _index_vectors(polys + [f])
    ech = Echelon(f.ring.field_p)
    for v in vecs[:-1]:
        ech.add(v)
    return ech.contains(vecs[-1])


class SpanBasis:
    """Reusable echelon basis of a polynomial span for repeated membership tests."""

    def __init__(self, ring, polys=()):
        if not ring.is_field:
            raise TypeError(f"span computations need a field, got {ring}")
        self.ring = ring
        self._cols = {}
        self._ech = Echelon(ring.field_p)
        for f in polys:
            self.add(f)

    def _vec(self, f, grow):
        out = {}
        for e, c in f.terms.items():
            j = self._cols.get(e)
            if j is None:
                if not grow:
                    return None
                j = self._cols[e] = len(self._cols)
            out[j] = c
        return out

    def add(self, f):
        return self._ech.add(self._vec(f, True))

    def contains(self, f):
        v = self._vec(f, False)
        if v is None:
            return False
        return self._ech.contains(v)

    @property
    def rank(self):
        return self._ech.rank


def ideal_truncation(gens, degree):
    """Spanning set of the degree <= ``degree`` part of the ideal: (monomial) * g."""
    out = []
    for g in gens:
        dg = g.degree()
        if dg < 0 or dg > degree:
            continue
        for m in monomials_up_to_degree(g.nvars, degree - dg):
            out.append(Polynomial._raw(g.ring, g.nvars, g.names, {
                tuple(a + b for a, b in zip(m, e)): c for e, c in g.terms.items()
            }))
    return out


def product(polys, start):
    return reduce(lambda a, b: a * b, polys, start)
