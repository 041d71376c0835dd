"""Diversity arithmetic over lists of element sets.

Diversity of a list of sets is the sum of pairwise Hamming distances.
It decomposes into per-element contributions: an element contained in p
of the r sets contributes p*(r-p).  That decomposition is what lets the
dynamic-programming solvers accumulate diversity one forgotten vertex at
a time, so both the concrete and the symbolic callers share
:func:`influence`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Sequence


def hamming_distance(a: AbstractSet[int], b: AbstractSet[int]) -> int:
    """Number of elements in exactly one of the two sets."""
    return len(a ^ b) if isinstance(a, (set, frozenset)) else len(set(a) ^ set(b))


def diversity(sets: Sequence[AbstractSet[int]]) -> int:
    """Sum of Hamming distances over all unordered pairs."""
    sets = [s if isinstance(s, (set, frozenset)) else set(s) for s in sets]
    total = 0
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            total += len(sets[i] ^ sets[j])
    return total


def influence(membership_count: int, r: int) -> int:
    """Diversity contributed by one element contained in p of the r sets."""
    p = membership_count
    if not 0 <= p <= r:
        raise ValueError(f"membership count {p} outside [0, {r}]")
    return p * (r - p)


def max_possible_diversity(universe_size: int, r: int) -> int:
    """Upper bound: every element can contribute at most floor(r/2)*ceil(r/2)."""
    return universe_size * (r // 2) * ((r + 1) // 2)


@dataclass(frozen=True)
class SolutionTuple:
    """A list of r element sets over a common universe 0..universe_size-1."""

    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        for s in self.sets:
            for v in s:
                if not (0 <= v < self.universe_size):
                    raise ValueError(f"element {v} outside universe")

    @property
    def r(self) -> int:
        return len(self.sets)

    def diversity(self) -> int:
        return diversity(self.sets)
