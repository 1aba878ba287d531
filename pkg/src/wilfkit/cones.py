"""The Kunz cone, the relaxed Kunz polyhedron, and the unit-group action.

For a multiplicity m >= 3, points are indexed by the nonzero residues
1..m-1; coordinate k of a vector is the entry for residue k+1.  The cone
facets are the inequalities x_i + x_j >= x_{(i+j) mod m} over pairs
i <= j with i + j not divisible by m, listed in lexicographic (i, j) order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .geometry import LinearSystem, eq, ge, system


class MultiplicityTooSmall(ValueError):
    pass


class NotAUnit(ValueError):
    pass


@dataclass(frozen=True)
class KunzFacet:
    m: int
    i: int
    j: int
    index: int

    @property
    def target(self) -> int:
        """Residue on the right-hand side of the inequality."""
        return (self.i + self.j) % self.m

    @property
    def wraps(self) -> bool:
        """True when i + j exceeds m (inhomogeneous constant -1 in P_m)."""
        return self.i + self.j > self.m

    def normal(self, m: int | None = None) -> tuple[int, ...]:
        m = self.m if m is None else m
        coeffs = [0] * (m - 1)
        coeffs[self.i - 1] += 1
        coeffs[self.j - 1] += 1
        coeffs[self.target - 1] -= 1
        return tuple(coeffs)


def facet_pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j)
            for i in range(1, m)
            for j in range(i, m)
            if (i + j) % m != 0]


@dataclass(frozen=True)
class KunzCone:
    m: int
    facets: tuple[KunzFacet, ...]

    @property
    def dim(self) -> int:
        return self.m - 1

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    @cached_property
    def _index_map(self) -> dict[tuple[int, int], int]:
        return {(f.i, f.j): f.index for f in self.facets}

    def facet_index(self, i: int, j: int) -> int:
        return self._index_map[(i, j)]

    def homogeneous_system(self) -> LinearSystem:
        return system(self.dim, [ge(f.normal(), 0) for f in self.facets])

    def tight_pairs(self, facet_mask: int) -> list[tuple[int, int]]:
        return [(f.i, f.j) for f in self.facets if facet_mask >> f.index & 1]

    def pairs_mask(self, pairs) -> int:
        idx = self._index_map
        mask = 0
        for i, j in pairs:
            key = (i, j) if i <= j else (j, i)
            if key not in idx:
                raise ValueError(f"({i},{j}) is not a facet pair for m={self.m}")
            mask |= 1 << idx[key]
        return mask


def build_cone(m: int) -> KunzCone:
    """Kunz cone facets in canonical lexicographic order."""
    if m < 3:
        raise MultiplicityTooSmall(f"multiplicity must be at least 3, got {m}")
    facets = tuple(KunzFacet(m, i, j, k) for k, (i, j) in enumerate(facet_pairs(m)))
    return KunzCone(m, facets)


def relaxed_polyhedron(m: int) -> tuple[LinearSystem, tuple[Fraction, ...]]:
    """Inhomogeneous system of the relaxed Kunz polyhedron and its apex.

    The apex (-1/m, ..., -(m-1)/m) satisfies every constraint with equality;
    this is checked before returning.
    """
    cone = build_cone(m)
    cons = [ge(f.normal(), -1 if f.wraps else 0) for f in cone.facets]
    sys = system(m - 1, cons)
    apex = tuple(Fraction(-i, m) for i in range(1, m))
    for c in sys.constraints:
        if c.evaluate(apex) != 0:
            raise AssertionError("apex is not tight on every facet")
    return sys, apex


def kunz_polyhedron_constraints(cone: KunzCone) -> LinearSystem:
    """The Kunz polyhedron: relaxed constraints plus positivity x_i >= 1."""
    d = cone.m - 1
    cons = []
    for k in range(d):
        unit = [0] * d
        unit[k] = 1
        cons.append(ge(unit, 1))
    for f in cone.facets:
        cons.append(ge(f.normal(), -1 if f.wraps else 0))
    return system(d, cons)


def is_kunz_coordinates(m: int, x) -> bool:
    """True iff x is the Kunz coordinate vector of some multiplicity-m semigroup."""
    if m < 2:
        raise MultiplicityTooSmall(f"multiplicity must be at least 2, got {m}")
    if len(x) != m - 1:
        return False
    if any(not isinstance(v, int) or v < 1 for v in x):
        return False
    if m == 2:
        return True
    for i in range(1, m):
        for j in range(i, m):
            if (i + j) % m == 0:
                continue
            slack = x[i - 1] + x[j - 1] - x[(i + j) % m - 1]
            if (i + j < m and slack < 0) or (i + j > m and slack < -1):
                return False
    return True


@dataclass(frozen=True)
class UnitAction:
    """Relabeling of residues by a unit u: new[(u*i) mod m] = old[i]."""

    m: int
    u: int
    coord_perm: tuple[int, ...]   # 0-based: coordinate i-1 maps to (u*i mod m)-1
    facet_perm: tuple[int, ...]   # facet index permutation

    def apply_vector(self, x):
        out = [None] * (self.m - 1)
        for k, v in enumerate(x):
            out[self.coord_perm[k]] = v
        return tuple(out)

    def apply_facet_mask(self, mask: int) -> int:
        out = 0
        perm = self.facet_perm
        while mask:
            low = mask & -mask
            out |= 1 << perm[low.bit_length() - 1]
            mask ^= low
        return out

    def apply_pair(self, i: int, j: int) -> tuple[int, int]:
        a = self.u * i % self.m
        b = self.u * j % self.m
        return (a, b) if a <= b else (b, a)


def unit_action(cone: KunzCone, u: int) -> UnitAction:
    m = cone.m
    u %= m
    if gcd(u, m) != 1:
        raise NotAUnit(f"{u} is not a unit modulo {m}")
    coord_perm = tuple(u * i % m - 1 for i in range(1, m))
    facet_perm = [0] * cone.facet_count
    for f in cone.facets:
        a = u * f.i % m
        b = u * f.j % m
        if a > b:
            a, b = b, a
        facet_perm[f.index] = cone.facet_index(a, b)
    return UnitAction(m, u, coord_perm, tuple(facet_perm))


def unit_actions(cone: KunzCone) -> list[UnitAction]:
    """The full unit group action, identity first, ordered by the unit."""
    return [unit_action(cone, u) for u in range(1, cone.m) if gcd(u, cone.m) == 1]


def act(action: UnitAction, value):
    """Apply a unit action to a coordinate vector or a facet bit mask."""
    if isinstance(value, int):
        return action.apply_facet_mask(value)
    return action.apply_vector(value)
