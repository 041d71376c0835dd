"""Exhaustive reference solver for small diverse instances.

Ground truth for every equivalence test: enumerates the complete solution
space (all qualifying subsets, not only minimal ones) and maximizes the
summed pairwise Hamming distance over solution tuples.  Guards fail loudly
instead of sampling; an approximate oracle is worse than none.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .diversity import max_possible_diversity
from .instances import FAST, HS, PLC, VC, ProblemInstance, point_on_line

DOMAIN_GUARD = 24
TUPLE_GUARD = 10 ** 7
SUBSET_GUARD = 5 * 10 ** 6


class OracleGuardError(RuntimeError):
    """The requested enumeration exceeds the oracle's exactness guards."""


@dataclass(frozen=True)
class SolutionSpace:
    """Every solution of size at most k, in deterministic (size, lex) order."""

    instance: ProblemInstance
    k: int
    solutions: tuple[frozenset[int], ...]


def _digraph_is_acyclic(n: int, arcs) -> bool:
    out: list[list[int]] = [[] for _ in range(n)]
    indegree = [0] * n
    for u, v in arcs:
        out[u].append(v)
        indegree[v] += 1
    queue = [v for v in range(n) if indegree[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                queue.append(w)
    return seen == n


def is_solution(instance: ProblemInstance, chosen_ids) -> bool:
    """Does the id set satisfy the instance's covering/hitting predicate?"""
    chosen = frozenset(chosen_ids)
    for element_id in chosen:
        if element_id not in instance._by_id:
            raise ValueError(f"id {element_id} is not in the instance domain")
    if instance.kind == VC:
        graph = instance.payload
        selected = {instance.element(i) for i in chosen}
        return all(u in selected or v in selected for u, v in graph.edges)
    if instance.kind == HS:
        hypergraph = instance.payload
        selected = {instance.element(i) for i in chosen}
        return all(e & selected for e in hypergraph.hyperedges)
    if instance.kind == PLC:
        lines = [instance.element(i) for i in chosen]
        return all(any(point_on_line(pt, line) for line in lines)
                   for pt in instance.payload.points)
    if instance.kind == FAST:
        tournament = instance.payload
        removed = {instance.element(i) for i in chosen}
        remaining = [a for a in tournament.arcs if a not in removed]
        return _digraph_is_acyclic(tournament.n, remaining)
    raise ValueError(f"unknown kind {instance.kind!r}")


def enumerate_solutions(instance: ProblemInstance, k: int) -> SolutionSpace:
    """All solutions of size at most k over the instance domain."""
    ids = list(instance.ids)
    if len(ids) > DOMAIN_GUARD:
        raise OracleGuardError(
            f"domain size {len(ids)} exceeds the guard {DOMAIN_GUARD}")
    total = 0
    found: list[frozenset[int]] = []
    for size in range(min(k, len(ids)) + 1):
        for subset in combinations(ids, size):
            total += 1
            if total > SUBSET_GUARD:
                raise OracleGuardError("subset enumeration exceeds the guard")
            if is_solution(instance, subset):
                found.append(frozenset(subset))
    return SolutionSpace(instance=instance, k=k, solutions=tuple(found))


def _pair_distances(solutions) -> list[list[int]]:
    n = len(solutions)
    dist = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dij = len(solutions[i] ^ solutions[j])
            dist[i][j] = dij
            dist[j][i] = dij
    return dist


def _check_tuple_guard(space: SolutionSpace, r: int) -> None:
    if len(space.solutions) ** r > TUPLE_GUARD:
        raise OracleGuardError(
            f"{len(space.solutions)}^{r} tuples exceed the guard {TUPLE_GUARD}")


def max_diversity(space: SolutionSpace, r: int) -> tuple[int, tuple[frozenset[int], ...]]:
    """Exact maximum diversity over all r-tuples (repetition allowed).

    Diversity is symmetric, so multisets of solution indices suffice; the
    reported witness is the first maximizing tuple in enumeration order.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if not space.solutions:
        raise ValueError("empty solution space has no tuples")
    _check_tuple_guard(space, r)
    dist = _pair_distances(space.solutions)
    best = -1
    best_combo = None
    for combo in combinations_with_replacement(range(len(space.solutions)), r):
        value = 0
        for a in range(r):
            row = dist[combo[a]]
            for b in range(a + 1, r):
                value += row[combo[b]]
        if value > best:
            best = value
            best_combo = combo
    return best, tuple(space.solutions[i] for i in best_combo)


def find_diverse_tuple(space: SolutionSpace, r: int,
                       d: int) -> tuple[frozenset[int], ...] | None:
    """First r-tuple with diversity at least d, or None (early-exit search)."""
    if r < 1:
        raise ValueError("need r >= 1")
    if not space.solutions:
        return None
    _check_tuple_guard(space, r)
    if d <= 0:
        return (space.solutions[0],) * r
    dist = _pair_distances(space.solutions)
    for combo in combinations_with_replacement(range(len(space.solutions)), r):
        value = 0
        for a in range(r):
            row = dist[combo[a]]
            for b in range(a + 1, r):
                value += row[combo[b]]
        if value >= d:
            return tuple(space.solutions[i] for i in combo)
    return None


def decide_diverse(instance: ProblemInstance, k: int, r: int, d: int) -> bool:
    """Is there an r-tuple of size-<=k solutions with diversity at least d?"""
    if d > max_possible_diversity(instance.domain_size, r):
        return False
    space = enumerate_solutions(instance, k)
    if not space.solutions:
        return False
    return find_diverse_tuple(space, r, d) is not None
