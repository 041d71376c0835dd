"""Shared generators and checkers for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from diversekit import (Graph, Hypergraph, PointSet, ProblemInstance,
                        Tournament)
from diversekit.kernels import LosslessKernelResult, domain_recover
from diversekit.oracle import enumerate_solutions, is_solution


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = frozenset((u, v) for u in range(n) for v in range(u + 1, n)
                      if rng.random() < p)
    return Graph(n, edges)


def random_hypergraph(rng: random.Random, n: int, m: int, d: int) -> Hypergraph:
    edges = []
    for _ in range(m):
        size = min(rng.randint(1, d), n)
        edges.append(frozenset(rng.sample(range(n), size)))
    return Hypergraph(n, tuple(edges), d)


def random_points(rng: random.Random, n: int, grid: int = 4) -> PointSet:
    points: set[tuple[int, int]] = set()
    while len(points) < n:
        points.add((rng.randint(0, grid), rng.randint(0, grid)))
    return PointSet(tuple(sorted(points)))


def random_tournament(rng: random.Random, n: int) -> Tournament:
    arcs = frozenset(((u, v) if rng.random() < 0.5 else (v, u))
                     for u in range(n) for v in range(u + 1, n))
    return Tournament(n, arcs)


def minimal_cover(rng: random.Random, graph: Graph) -> frozenset[int]:
    """A random minimal vertex cover."""
    cover = set()
    edges = list(graph.edges)
    rng.shuffle(edges)
    for u, v in edges:
        if u not in cover and v not in cover:
            cover.add(rng.choice((u, v)))
    for v in sorted(cover, reverse=True):
        trial = cover - {v}
        if all(u in trial or w in trial for u, w in graph.edges):
            cover = trial
    return frozenset(cover)


def random_branching_decomposition(rng: random.Random, n_vertices: int,
                                   n_nodes: int):
    """Random valid (graph, decomposition) pair whose tree may branch.

    Each vertex occupies a random connected subtree (validity by
    construction); the graph's edges are a random subset of the pairs
    sharing a bag.  An empty root bag is appended on top.
    """
    from diversekit import RootedTreeDecomposition

    parent = [-1] + [rng.randrange(t) for t in range(1, n_nodes)]
    adjacency: list[list[int]] = [[] for _ in range(n_nodes)]
    for t in range(1, n_nodes):
        adjacency[t].append(parent[t])
        adjacency[parent[t]].append(t)
    bags: list[set[int]] = [set() for _ in range(n_nodes)]
    for v in range(n_vertices):
        nodes = {rng.randrange(n_nodes)}
        for _ in range(rng.randint(0, n_nodes)):
            frontier = sorted(s for t in nodes for s in adjacency[t]
                              if s not in nodes)
            if not frontier:
                break
            nodes.add(rng.choice(frontier))
        for t in nodes:
            bags[t].add(v)
    colocated = {(u, v) for bag in bags for u in bag for v in bag if u < v}
    edges = frozenset(pair for pair in colocated if rng.random() < 0.6)
    parent[0] = n_nodes
    dec = RootedTreeDecomposition(
        tuple(parent + [-1]),
        tuple(frozenset(bag) for bag in bags) + (frozenset(),))
    return Graph(n_vertices, edges), dec


def solution_sets(instance: ProblemInstance, k: int) -> set[frozenset[int]]:
    if k < 0:
        return set()
    return set(enumerate_solutions(instance, k).solutions)


def check_reduction_semantics(instance: ProblemInstance, k: int,
                              kernel: LosslessKernelResult) -> str | None:
    """Solutions of the original decompose exactly as forced + allowed +
    a solution of the reduced instance, at every budget up to k."""
    forced = frozenset(kernel.forced)
    allowed = sorted(kernel.allowed)
    original_domain = set(instance.ids)
    for budget in range(k + 1):
        lhs = solution_sets(instance, budget)
        rhs: set[frozenset[int]] = set()
        spare = budget - len(forced)
        for take in range(0, max(spare, 0) + 1):
            for extra in combinations(allowed, take):
                inner = budget - len(forced) - take
                for reduced_solution in solution_sets(kernel.reduced, inner):
                    if set(reduced_solution) <= original_domain:
                        rhs.add(frozenset(set(reduced_solution) | forced | set(extra)))
        if lhs != rhs:
            return f"budget {budget}: {len(lhs)} original vs {len(rhs)} recomposed"
    return None


def check_recovery_semantics(instance: ProblemInstance, k: int,
                             kernel: LosslessKernelResult,
                             recover_choices=None) -> str | None:
    """Adding recovered allowed elements to a reduced solution, and removing
    them again, preserves solutionhood at the shifted budget."""
    allowed = list(kernel.allowed)
    k_reduced = kernel.k_reduced
    if recover_choices is None:
        recover_choices = [tuple(allowed) if len(allowed) <= 6
                           else tuple(allowed[:6]), ()]
    for chosen in recover_choices:
        recovered = domain_recover(kernel.reduced, instance, chosen,
                                   recovery=kernel.recovery)
        recovered_frame = set(kernel.reduced.ids) | set(chosen)
        for budget in range(k_reduced + 1):
            for reduced_solution in solution_sets(kernel.reduced, budget):
                for take in range(len(chosen) + 1):
                    for extra in combinations(chosen, take):
                        lifted = frozenset(set(reduced_solution) | set(extra))
                        if not is_solution(recovered, lifted):
                            return (f"forward: {sorted(lifted)} not a solution "
                                    f"after recovering {sorted(chosen)}")
        for budget in range(k_reduced + len(chosen) + 1):
            for lifted in solution_sets(recovered, budget):
                if not set(lifted) <= recovered_frame:
                    continue
                extra = set(lifted) & set(chosen)
                inner = budget - len(extra)
                if 0 <= inner <= k_reduced:
                    stripped = frozenset(set(lifted) - extra)
                    if not (is_solution(kernel.reduced, stripped)
                            and len(stripped) <= inner):
                        return f"backward: {sorted(lifted)} does not strip"
    return None
