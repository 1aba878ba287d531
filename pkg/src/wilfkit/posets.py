"""Kunz posets: partial orders on the nonzero residues modulo m.

A face of the Kunz cone induces relations i <= (i+j mod m) for each tight
facet pair (i, j).  When the reflexive-transitive closure of these relations
is antisymmetric it is a genuine poset; otherwise the face contains no
semigroup and `from_tight_set` reports the failure as a value, because the
verifier still has to process such faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class InvalidPair(ValueError):
    pass


def _close_reflexive_transitive(succ: list[int], n: int) -> list[int]:
    for i in range(n):
        succ[i] |= 1 << i
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = succ[i]
            probe = acc
            while probe:
                low = probe & -probe
                acc |= succ[low.bit_length() - 1]
                probe ^= low
            if acc != succ[i]:
                succ[i] = acc
                changed = True
    return succ


@dataclass(frozen=True)
class KunzPoset:
    """Partial order on {1, ..., m-1}; succ[k] is the up-set bitmask of k+1."""

    m: int
    succ: tuple[int, ...]  # bit j-1 of succ[i-1] set iff i <= j (reflexive)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.succ[i - 1] >> (j - 1) & 1)

    @cached_property
    def minimal_elements(self) -> tuple[int, ...]:
        n = self.m - 1
        has_pred = 0
        for i in range(n):
            has_pred |= self.succ[i] & ~(1 << i)
        return tuple(i + 1 for i in range(n) if not has_pred >> i & 1)

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.m - 1)
                     if self.succ[i] == 1 << i)

    @property
    def ground_set(self) -> range:
        return range(1, self.m)

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All (i, k) with i strictly below k."""
        out = []
        for i in range(self.m - 1):
            probe = self.succ[i] & ~(1 << i)
            while probe:
                low = probe & -probe
                out.append((i + 1, low.bit_length()))
                probe ^= low
        return out

    @classmethod
    def from_relations(cls, m: int, relations) -> "KunzPoset":
        """Close the given (i, j) relations; raises if antisymmetry fails."""
        n = m - 1
        succ = [0] * n
        for i, j in relations:
            if not (1 <= i < m and 1 <= j < m):
                raise InvalidPair(f"({i}, {j}) outside the ground set")
            succ[i - 1] |= 1 << (j - 1)
        succ = _close_reflexive_transitive(succ, n)
        for i in range(n):
            for j in range(i + 1, n):
                if succ[i] >> j & 1 and succ[j] >> i & 1:
                    raise InvalidPair(f"antisymmetry fails on {i + 1}, {j + 1}")
        return cls(m, tuple(succ))


@dataclass(frozen=True)
class PreorderFailure:
    """Result of from_tight_set when the closed relation has a cycle.

    Faces with such tight sets contain no numerical semigroups (a cycle would
    force two distinct Apery elements to divide each other).  The verifier
    still needs residue candidates and occurrence counts for them.
    """

    m: int
    reach: tuple[int, ...]            # reflexive-transitive closure
    never_target: tuple[int, ...]     # residues that are no (i+j mod m)
    never_source: tuple[int, ...]     # residues in no tight pair's left side

    @cached_property
    def condensation_maximal_residues(self) -> tuple[int, ...]:
        """Residues in strongly connected classes with no outgoing edge."""
        n = self.m - 1
        out = []
        for i in range(n):
            scc = self.reach[i]
            probe = scc
            closed = True
            while probe:
                low = probe & -probe
                j = low.bit_length() - 1
                if not (self.reach[j] >> i) & 1:
                    closed = False  # j is strictly above i's class
                    break
                probe ^= low
            if closed:
                out.append(i + 1)
        return tuple(out)


def from_tight_set(m: int, tight_pairs):
    """Poset generated by the tight facet pairs, or a PreorderFailure.

    Each tight pair (i, j) contributes i <= (i+j mod m) and j <= (i+j mod m).
    """
    n = m - 1
    succ = [0] * n
    targeted = 0
    sourced = 0
    for i, j in tight_pairs:
        if not (1 <= i <= j < m) or (i + j) % m == 0:
            raise InvalidPair(f"({i}, {j}) is not a facet pair for m={m}")
        k = (i + j) % m
        succ[i - 1] |= 1 << (k - 1)
        succ[j - 1] |= 1 << (k - 1)
        targeted |= 1 << (k - 1)
        sourced |= (1 << (i - 1)) | (1 << (j - 1))
    succ = _close_reflexive_transitive(succ, n)
    for i in range(n):
        for j in range(i + 1, n):
            if succ[i] >> j & 1 and succ[j] >> i & 1:
                return PreorderFailure(
                    m, tuple(succ),
                    tuple(k + 1 for k in range(n) if not targeted >> k & 1),
                    tuple(k + 1 for k in range(n) if not sourced >> k & 1))
    return KunzPoset(m, tuple(succ))


def embedding_dimension(poset) -> int:
    """1 + number of minimal elements; occurrence counts on failures."""
    if isinstance(poset, PreorderFailure):
        return 1 + len(poset.never_target)
    return 1 + len(poset.minimal_elements)


def poset_type(poset) -> int:
    """Number of maximal elements; occurrence counts on failures."""
    if isinstance(poset, PreorderFailure):
        return len(poset.never_source)
    return len(poset.maximal_elements)


def check_kunz_axiom(poset: KunzPoset) -> bool:
    """i < j implies (j - i mod m) <= j, for all distinct comparable pairs."""
    m = poset.m
    for i in range(1, m):
        for j in range(1, m):
            if i != j and poset.leq(i, j):
                if not poset.leq((j - i) % m, j):
                    return False
    return True
