"""Dimensions and characters of irreducible highest-weight modules.

The dimension comes from the Weyl product formula; characters come from
Freudenthal's recursion.  The two are computed independently so they can be
checked against each other.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (dominant_representative, invariant_form, is_dominant,
                       is_minuscule, weyl_orbit)

CHARACTER_DIM_CAP = 10000


def weyl_dimension_polynomial(rs, weight):
    """Weyl's product formula evaluated at any integral weight (may be <= 0).

    For non-dominant weights this is the Euler characteristic of the line
    bundle, which is what the section-count oracles in ``flagsections`` use.
    """
    num = Fraction(1)
    for a in rs.positive_roots:
        c = rs.coroot(a)
        top = sum((w + 1) * k for w, k in zip(weight, c))
        bottom = sum(c)
        num *= Fraction(top, bottom)
    return num


def weyl_dimension(rs, weight):
    weight = tuple(weight)
    if not is_dominant(weight):
        raise ValueError(f"weyl_dimension needs a dominant weight, got {weight}")
    d = weyl_dimension_polynomial(rs, weight)
    assert d.denominator == 1
    return int(d)


@dataclass(frozen=True)
class Character:
    highest_weight: tuple
    entries: dict

    def multiplicity(self, mu):
        return self.entries.get(tuple(mu), 0)

    @property
    def dimension(self):
        return sum(self.entries.values())


def _dominates(rs, lam, mu):
    """True iff lam - mu is a nonnegative integer combination of simple roots."""
    diff = [a - b for a, b in zip(lam, mu)]
    coords = rs.weight_to_root(diff)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def character(rs, weight):
    """Character of the irreducible module of highest weight ``weight`` (Freudenthal)."""
    lam = tuple(weight)
    if not is_dominant(lam):
        raise ValueError(f"character needs a dominant weight, got {lam}")
    if weyl_dimension(rs, lam) > CHARACTER_DIM_CAP:
        raise ValueError(f"module of highest weight {lam} exceeds the size cap {CHARACTER_DIM_CAP}")
    form = invariant_form(rs)
    pos = [rs.root_to_weight(a) for a in rs.positive_roots]
    simple = [rs.root_to_weight(a) for a in rs.simple_roots]

    # weights of the module: connected to lam by subtracting simple roots,
    # with dominant representative below lam
    depth = {lam: 0}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for a in simple:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu in depth:
                continue
            if _dominates(rs, lam, dominant_representative(rs, nu)):
                depth[nu] = depth[mu] + 1
                queue.append(nu)

    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    top = form(lr, lr)
    mult = {lam: 1}
    for mu in sorted(depth, key=depth.get):
        if mu == lam:
            continue
        dom = dominant_representative(rs, mu)
        if dom in mult:
            mult[mu] = mult[dom]
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = top - form(mr, mr)
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                if nu not in depth:
                    break
                total += mult.get(nu, 0) * form(nu, a)
                k += 1
        m = 2 * total / denom
        assert m.denominator == 1 and m >= 0, (mu, m)
        mult[mu] = int(m)
        mult[dom] = int(m)
    entries = {mu: mult[mu] for mu in depth if mult[mu] > 0}
    return Character(lam, entries)


@dataclass(frozen=True)
class RankCriterion:
    dim: int
    orbit: int
    equal: bool


def minuscule_rank_criterion(rs, weight):
    weight = tuple(weight)
    if not any(weight):
        raise ValueError("the zero weight is treated separately")
    dim = weyl_dimension(rs, weight)
    orbit = len(weyl_orbit(rs, weight))
    return RankCriterion(dim, orbit, dim == orbit)


def extreme_kernel_dim(rs, weight):
    """Dimension of the span of non-extreme weight spaces."""
    weight = tuple(weight)
    return weyl_dimension(rs, weight) - len(weyl_orbit(rs, weight))


__all__ = ["Character", "RankCriterion", "character", "extreme_kernel_dim", "is_minuscule",
           "minuscule_rank_criterion", "weyl_dimension", "weyl_dimension_polynomial"]
