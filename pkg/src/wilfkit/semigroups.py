"""Numerical semigroups: invariants, Apery sets, Kunz coordinates.

This module is both user-facing functionality and the brute-force oracle the
rest of the package is tested against, so everything here is computed from
first definitions (shortest-path Apery sets, definitional pseudo-Frobenius
numbers) rather than through the polyhedral machinery.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .cones import is_kunz_coordinates
from .posets import KunzPoset


class EmptyInput(ValueError):
    pass


class NotCofinite(ValueError):
    """Generators with gcd > 1 generate no numerical semigroup."""


class NotAMember(ValueError):
    pass


class InvalidKunzVector(ValueError):
    pass


def _apery_by_dijkstra(generators, n: int) -> list[int]:
    """Minimal semigroup element in each residue class mod n."""
    dist = [None] * n
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if dist[r] is not None and d > dist[r]:
            continue
        for g in generators:
            nd = d + g
            nr = nd % n
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return dist


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite additively closed subset of the nonnegative integers.

    Stores the Apery set of the multiplicity, from which every invariant is
    derived; membership checks are O(1).
    """

    generators: tuple[int, ...]       # minimal generating set, sorted
    apery: tuple[int, ...]            # apery[r] = min member congruent to r (mod m)

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    m = multiplicity

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @property
    def frobenius(self) -> int:
        return max(self.apery) - self.multiplicity

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        return tuple(x for x in range(1, self.conductor) if x not in self)

    @property
    def genus(self) -> int:
        m = self.multiplicity
        return sum((a - r) // m for r, a in enumerate(self.apery))

    @property
    def sporadic_count(self) -> int:
        """Number of members below the conductor."""
        return self.conductor - self.genus

    @cached_property
    def pseudo_frobenius(self) -> tuple[int, ...]:
        if self.multiplicity == 1:
            return (-1,)
        out = []
        for f in self.gaps:
            if all(f + a in self for a in self.generators):
                out.append(f)
        return tuple(out)

    @property
    def type(self) -> int:
        return len(self.pseudo_frobenius)

    def __contains__(self, x) -> bool:
        if not isinstance(x, int) or x < 0:
            return False
        return x >= self.apery[x % self.multiplicity]

    def __repr__(self) -> str:
        return f"NumericalSemigroup<{', '.join(map(str, self.generators))}>"


def from_generators(gens) -> NumericalSemigroup:
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise EmptyInput("at least one generator is required")
    if any(g < 1 for g in gens):
        raise EmptyInput("generators must be positive")
    g = 0
    for x in gens:
        g = gcd(g, x)
    if g != 1:
        raise NotCofinite(f"gcd of generators is {g}, not 1")
    m = gens[0]
    apery = tuple(_apery_by_dijkstra(gens, m))
    # recompute the minimal generating set: m plus the apery elements that
    # are not a sum of two nonzero apery elements
    atoms = [m]
    for i in range(1, m):
        a = apery[i]
        if all(apery[j] + apery[(i - j) % m] > a for j in range(1, m) if j != i):
            atoms.append(a)
    return NumericalSemigroup(tuple(sorted(atoms)), apery)


def apery_set(S: NumericalSemigroup, n: int) -> list[int]:
    """Apery set of n in S, listed by residue class 0, 1, ..., n-1."""
    if n <= 0 or n not in S:
        raise NotAMember(f"{n} is not a positive member of the semigroup")
    return _apery_by_dijkstra(S.generators, n)


def kunz_coordinates(S: NumericalSemigroup) -> tuple[int, ...]:
    m = S.multiplicity
    return tuple((S.apery[i] - i) // m for i in range(1, m))


def from_kunz(m: int, x) -> NumericalSemigroup:
    x = tuple(x)
    if m < 1 or len(x) != m - 1:
        raise InvalidKunzVector(f"expected {m - 1} coordinates")
    if m == 1:
        return from_generators([1])
    if m == 2:
        if not (isinstance(x[0], int) and x[0] >= 1):
            raise InvalidKunzVector(f"{x} is not a Kunz vector for m=2")
    elif not is_kunz_coordinates(m, x):
        raise InvalidKunzVector(f"{x} is not a Kunz vector for m={m}")
    return from_generators([m] + [m * x[i - 1] + i for i in range(1, m)])


def wilf_slack(S: NumericalSemigroup) -> int:
    """e(S) * n(S) - c(S); nonnegative iff S satisfies Wilf's inequality."""
    return S.embedding_dimension * S.sporadic_count - S.conductor


def is_wilf(S: NumericalSemigroup) -> bool:
    return wilf_slack(S) >= 0


def apery_poset(S: NumericalSemigroup) -> KunzPoset:
    """Divisibility order on the nonzero Apery elements, labeled by residue."""
    m = S.multiplicity
    if m < 2:
        raise ValueError("Apery poset needs multiplicity at least 2")
    relations = []
    for i in range(1, m):
        for j in range(1, m):
            if i != j and S.apery[j] - S.apery[i] in S:
                relations.append((i, j))
    return KunzPoset.from_relations(m, relations)


def _atoms_of_mask(mask: int) -> list[int]:
    """Minimal generators of the semigroup given as a member bitmask.

    Only sound when every minimal generator is below the mask width; the
    genus enumeration guarantees this (atoms never exceed 2*genus + 1).
    """
    rest = mask & ~1
    sums = 0
    probe = rest
    while probe:
        low = probe & -probe
        sums |= rest << (low.bit_length() - 1)
        probe ^= low
    atoms = []
    probe = rest
    while probe:
        low = probe & -probe
        s = low.bit_length() - 1
        if not (sums >> s) & 1:
            atoms.append(s)
        probe ^= low
    return atoms


def enumerate_by_genus(g_max: int):
    """Yield every numerical semigroup of genus <= g_max exactly once.

    Standard removal tree: children of S are S minus one minimal generator
    exceeding the Frobenius number.  Yields semigroups in breadth-first
    order (by genus), deterministically.
    """
    if g_max < 0:
        return
    bound = 2 * g_max + 2  # members below this bound determine everything
    full = (1 << bound) - 1
    level = [(full, -1, 0)]  # (member mask, frobenius, genus)
    while level:
        nxt = []
        for mask, frob, genus in level:
            atoms = _atoms_of_mask(mask)
            yield from_generators(atoms)
            if genus < g_max:
                for a in atoms:
                    if a > frob:
                        nxt.append((mask & ~(1 << a), a, genus + 1))
        level = nxt
