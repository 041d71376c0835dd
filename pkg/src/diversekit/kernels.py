"""Loss-less kernelization and its lift to diverse problems.

Each kernel shrinks an instance and classifies every removed domain
element as *forced* (contained in every solution within budget) or
*allowed* (freely addable to any solution).  That bookkeeping is exactly
what makes the reduction safe for diverse solving: forced elements are
shared by all solutions and contribute no diversity, while a bounded
number of allowed elements is recovered into the reduced instance so
solution tuples keep enough room to differ.

A kernel either returns a :class:`LosslessKernelResult` or an explicit
:class:`NoVerdict`; impossibility is never encoded as a dummy instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .instances import (FAST, HS, PLC, VC, Graph, Hypergraph, PointSet,
                        ProblemInstance, Tournament, point_on_line)


@dataclass(frozen=True)
class NoVerdict:
    """The instance has no solution within the given budget."""

    reason: str


@dataclass
class LosslessKernelResult:
    original: ProblemInstance
    reduced: ProblemInstance
    forced: tuple[int, ...]
    allowed: tuple[int, ...]
    k_reduced: int
    size_bound: int
    recovery_cost: Callable[[int], int]
    bounds: dict[str, int] = field(default_factory=dict)
    recovery: dict | None = None


@dataclass(frozen=True)
class DiverseKernelOutput:
    instance: ProblemInstance
    k_reduced: int
    r: int
    d: int
    a_star: tuple[int, ...]


def _as_instance(value, kind) -> ProblemInstance:
    if isinstance(value, ProblemInstance):
        if value.kind != kind:
            raise ValueError(f"expected a {kind} instance, got {value.kind}")
        return value
    wrapper = {VC: ProblemInstance.vertex_cover,
               HS: ProblemInstance.hitting_set,
               PLC: ProblemInstance.point_line_cover,
               FAST: ProblemInstance.feedback_arc_set}[kind]
    return wrapper(value)


# ---------------------------------------------------------------------------
# vertex cover


def vc_lossless_kernel(instance, k: int):
    """High-degree/isolated-vertex kernel for vertex cover.

    A vertex with more than ``budget`` neighbours is in every small
    cover (forced); isolated vertices cover nothing (allowed).  After
    exhaustion, a yes-instance keeps at most k'^2 + k' vertices and k'^2
    edges, so larger leftovers are a no-verdict.
    """
    instance = _as_instance(instance, VC)
    if k < 0:
        raise ValueError("budget must be nonnegative")
    graph: Graph = instance.payload
    adjacency = {v: set(graph.adjacency[v]) for v in range(graph.n)}
    present = set(range(graph.n))
    budget = k
    forced_local: list[int] = []
    while True:
        over = next((v for v in sorted(present) if len(adjacency[v]) > budget), None)
        if over is None:
            break
        forced_local.append(over)
        present.remove(over)
        for u in adjacency[over]:
            adjacency[u].discard(over)
        adjacency[over] = set()
        budget -= 1
        if budget < 0:
            return NoVerdict("forced vertices exceed the budget")
    allowed_local = [v for v in sorted(present) if not adjacency[v]]
    keep = [v for v in sorted(present) if adjacency[v]]
    if len(keep) > budget * budget + budget:
        return NoVerdict(f"{len(keep)} vertices remain, more than k'^2+k'")
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset((min(index[u], index[v]), max(index[u], index[v]))
                      for u, v in graph.edges
                      if u in index and v in index)
    if len(edges) > budget * budget:
        return NoVerdict(f"{len(edges)} edges remain, more than k'^2")
    reduced = ProblemInstance(VC, Graph(len(keep), edges), range(len(keep)),
                              [instance.ids[v] for v in keep])
    return LosslessKernelResult(
        original=instance,
        reduced=reduced,
        forced=tuple(sorted(instance.ids[v] for v in forced_local)),
        allowed=tuple(sorted(instance.ids[v] for v in allowed_local)),
        k_reduced=budget,
        size_bound=k * k + k,
        recovery_cost=lambda s: s,
        bounds={"vertices": budget * budget + budget, "edges": budget * budget},
    )


# ---------------------------------------------------------------------------
# d-hitting set


def _edge_sort_key(e: frozenset[int]):
    return (len(e), tuple(sorted(e)))


def _disjoint_family(sets: Sequence[tuple[frozenset[int], frozenset[int]]],
                     need: int) -> list | None:
    """Exactly ``need`` entries whose first components are pairwise disjoint.

    Entries are (petal, tag) pairs; exact depth-first search, first
    solution in the given order.
    """
    chosen: list = []

    def dfs(idx: int, used: frozenset[int]) -> bool:
        if len(chosen) == need:
            return True
        if len(chosen) + (len(sets) - idx) < need:
            return False
        for i in range(idx, len(sets)):
            petal, tag = sets[i]
            if not petal & used:
                chosen.append((petal, tag))
                if dfs(i + 1, used | petal):
                    return True
                chosen.pop()
        return False

    return chosen if dfs(0, frozenset()) else None


def _find_sunflower(edges: set[frozenset[int]], petal_count: int):
    """A sunflower with the given petal count and nonempty core, if any.

    Candidate cores are nonempty proper subsets of edges; petals are the
    core-stripped remainders of edges containing the core, and they must
    be pairwise disjoint.  Cores are scanned smallest first.
    """
    cores: set[frozenset[int]] = set()
    for e in edges:
        members = sorted(e)
        for mask in range(1, 1 << len(members)):
            core = frozenset(members[i] for i in range(len(members))
                             if (mask >> i) & 1)
            if core != e:
                cores.add(core)
    for core in sorted(cores, key=_edge_sort_key):
        candidates = [(e - core, e) for e in sorted(edges, key=_edge_sort_key)
                      if core < e]
        if len(candidates) < petal_count:
            continue
        packing = _disjoint_family(candidates, petal_count)
        if packing is not None:
            return core, [edge for _, edge in packing]
    return None


def hs_lossless_kernel(instance, k: int):
    """Sunflower kernel for hitting set with hyperedges of size at most d.

    Rules, applied to a fixed point in this order: drop superset edges;
    force the member of a unit edge; report no when budget+1 pairwise
    disjoint edges exist; given a sunflower with budget+1 petals, force a
    singleton core, and replace the edges containing a larger core by the
    core itself (every small hitting set meets the core, so the solution
    sets are unchanged).  Vertices left in no edge are allowed.
    """
    instance = _as_instance(instance, HS)
    if k < 0:
        raise ValueError("budget must be nonnegative")
    hypergraph: Hypergraph = instance.payload
    edges: set[frozenset[int]] = set(hypergraph.hyperedges)
    budget = k
    forced_local: list[int] = []
    while True:
        if budget < 0:
            return NoVerdict("forced elements exceed the budget")
        edges = {e for e in edges if not any(o < e for o in edges)}
        unit = next((e for e in sorted(edges, key=_edge_sort_key) if len(e) == 1),
                    None)
        if unit is not None:
            y = min(unit)
            forced_local.append(y)
            edges = {e for e in edges if y not in e}
            budget -= 1
            continue
        tagged = [(e, e) for e in sorted(edges, key=_edge_sort_key)]
        if _disjoint_family(tagged, budget + 1) is not None:
            return NoVerdict(f"{budget + 1} pairwise disjoint hyperedges")
        sunflower = _find_sunflower(edges, budget + 1)
        if sunflower is None:
            break
        core, _petals = sunflower
        if len(core) == 1:
            y = min(core)
            forced_local.append(y)
            edges = {e for e in edges if y not in e}
            budget -= 1
        else:
            edges = {e for e in edges if not core <= e}
            edges.add(core)
    used = sorted(set().union(*edges)) if edges else []
    forced_set = set(forced_local)
    allowed_local = [v for v in range(hypergraph.n)
                     if v not in forced_set and v not in set(used)]
    index = {v: i for i, v in enumerate(used)}
    relabeled = tuple(sorted((frozenset(index[v] for v in e) for e in edges),
                             key=_edge_sort_key))
    reduced = ProblemInstance(
        HS, Hypergraph(len(used), relabeled, hypergraph.d),
        range(len(used)), [instance.ids[v] for v in used])
    edge_bound = sum(math.factorial(j) * k ** j
                     for j in range(1, hypergraph.d + 1))
    return LosslessKernelResult(
        original=instance,
        reduced=reduced,
        forced=tuple(sorted(instance.ids[v] for v in forced_local)),
        allowed=tuple(sorted(instance.ids[v] for v in allowed_local)),
        k_reduced=budget,
        size_bound=hypergraph.d * edge_bound,
        recovery_cost=lambda s: s,
        bounds={"hyperedges": edge_bound, "vertices": hypergraph.d * edge_bound},
    )


# ---------------------------------------------------------------------------
# point line cover


def plc_lossless_kernel(instance, k: int):
    """Heavy-line kernel for point-line cover.

    A candidate line through more than ``budget`` of the remaining points
    is in every small cover: distinct lines meet in at most one point, so
    a cover avoiding it would miss one of those points.  Forced lines
    take their points with them; candidate lines left without points are
    allowed; more than budget^2 leftover points is a no-verdict.
    """
    instance = _as_instance(instance, PLC)
    if k < 0:
        raise ValueError("budget must be nonnegative")
    points = set(instance.payload.points)
    active = dict(zip(instance.ids, instance.elements))
    budget = k
    forced_ids: list[int] = []
    while True:
        if budget < 0:
            return NoVerdict("forced lines exceed the budget")
        heavy = None
        for line_id in sorted(active):
            line = active[line_id]
            if sum(point_on_line(p, line) for p in points) >= budget + 1:
                heavy = line_id
                break
        if heavy is None:
            break
        line = active.pop(heavy)
        forced_ids.append(heavy)
        points = {p for p in points if not point_on_line(p, line)}
        budget -= 1
    if len(points) > budget * budget:
        return NoVerdict(f"{len(points)} points remain, more than k'^2")
    kept_ids = []
    allowed_ids = []
    for line_id in sorted(active):
        if any(point_on_line(p, active[line_id]) for p in points):
            kept_ids.append(line_id)
        else:
            allowed_ids.append(line_id)
    reduced = ProblemInstance(PLC, PointSet(tuple(sorted(points))),
                              [active[i] for i in kept_ids], kept_ids)
    return LosslessKernelResult(
        original=instance,
        reduced=reduced,
        forced=tuple(sorted(forced_ids)),
        allowed=tuple(allowed_ids),
        k_reduced=budget,
        size_bound=k * k,
        recovery_cost=lambda s: s,
        bounds={"points": budget * budget, "lines": len(kept_ids)},
    )


# ---------------------------------------------------------------------------
# feedback arc set in tournaments


def _arc_triangle_counts(n: int, arcs: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    outs: list[set[int]] = [set() for _ in range(n)]
    ins: list[set[int]] = [set() for _ in range(n)]
    for u, v in arcs:
        outs[u].add(v)
        ins[v].add(u)
    return {(u, v): len(outs[v] & ins[u]) for u, v in arcs}


def _vertices_in_triangles(n: int, arcs: dict[tuple[int, int], int]) -> set[int]:
    outs: list[set[int]] = [set() for _ in range(n)]
    ins: list[set[int]] = [set() for _ in range(n)]
    for u, v in arcs:
        outs[u].add(v)
        ins[v].add(u)
    marked: set[int] = set()
    for u, v in arcs:
        for w in outs[v] & ins[u]:
            marked.update((u, v, w))
    return marked


def fast_lossless_kernel(instance, k: int):
    """Triangle kernel for feedback arc set in tournaments.

    Phase 1 reverses any arc lying on more than ``budget`` triangles (the
    original arc is forced: the triangles pairwise share only that arc)
    and pays one budget for it; a previously reversed arc becoming
    eligible again proves the instance has no small solution.  Deleting a
    triangle-free vertex changes no triangle, so phase 2 removes all of
    them afterwards; their original-orientation arcs are allowed.  More
    than k'(k'+2) surviving vertices is a no-verdict.
    """
    instance = _as_instance(instance, FAST)
    if k < 0:
        raise ValueError("budget must be nonnegative")
    tournament: Tournament = instance.payload
    n = tournament.n
    arcs: dict[tuple[int, int], int] = dict(zip(instance.elements, instance.ids))
    next_fresh = max(instance.ids, default=-1) + 1
    fresh_ids: set[int] = set()
    budget = k
    forced_ids: list[int] = []
    while True:
        if budget < 0:
            return NoVerdict("forced arc reversals exceed the budget")
        counts = _arc_triangle_counts(n, arcs)
        pick = None
        for pair, arc_id in sorted(arcs.items(), key=lambda item: item[1]):
            if counts[pair] >= budget + 1:
                pick = (pair, arc_id)
                break
        if pick is None:
            break
        (u, v), arc_id = pick
        if arc_id in fresh_ids:
            return NoVerdict("a reversed arc is forced again")
        forced_ids.append(arc_id)
        del arcs[(u, v)]
        arcs[(v, u)] = next_fresh
        fresh_ids.add(next_fresh)
        next_fresh += 1
        budget -= 1
    snapshot = dict(arcs)
    in_triangle = _vertices_in_triangles(n, arcs)
    allowed_ids = sorted(arc_id for (u, v), arc_id in arcs.items()
                         if (u not in in_triangle or v not in in_triangle)
                         and arc_id not in fresh_ids)
    keep = sorted(in_triangle)
    if len(keep) > budget * (budget + 2):
        return NoVerdict(f"{len(keep)} vertices remain, more than k'(k'+2)")
    index = {v: i for i, v in enumerate(keep)}
    surviving = sorted(((arc_id, (index[u], index[v]))
                        for (u, v), arc_id in arcs.items()
                        if u in index and v in index))
    reduced = ProblemInstance(
        FAST,
        Tournament(len(keep), frozenset(pair for _, pair in surviving)),
        [pair for _, pair in surviving],
        [arc_id for arc_id, _ in surviving],
        vertex_labels=[instance.vertex_labels[v] for v in keep])
    reduced_n = len(keep)
    return LosslessKernelResult(
        original=instance,
        reduced=reduced,
        forced=tuple(sorted(forced_ids)),
        allowed=tuple(allowed_ids),
        k_reduced=budget,
        size_bound=k * (k + 2),
        recovery_cost=lambda s: s * (2 * s - 1) + 2 * s * reduced_n,
        bounds={"vertices": budget * (budget + 2)},
        recovery={"arcs": snapshot, "n": n},
    )


KERNELS = {VC: vc_lossless_kernel, HS: hs_lossless_kernel,
           PLC: plc_lossless_kernel, FAST: fast_lossless_kernel}


def lossless_kernel(instance: ProblemInstance, k: int):
    return KERNELS[instance.kind](instance, k)


# ---------------------------------------------------------------------------
# domain recovery and the diverse transform


def domain_recover(reduced: ProblemInstance, original: ProblemInstance,
                   recover_ids, recovery: dict | None = None) -> ProblemInstance:
    """Reintroduce removed domain elements into a reduced instance.

    Vertices return isolated, lines return point-free, and tournament
    arcs pull their missing endpoints back in with the orientations the
    kernel left behind (so a recovered endpoint stays triangle-free).
    """
    recover_ids = tuple(sorted(recover_ids))
    if not recover_ids:
        return reduced
    reduced_ids = set(reduced.ids)
    for element_id in recover_ids:
        if element_id in reduced_ids:
            raise ValueError(f"id {element_id} is already in the reduced domain")
        if element_id not in original._by_id:
            raise ValueError(f"id {element_id} is not in the original domain")
    if reduced.kind in (VC, HS):
        merged = sorted(reduced.ids + recover_ids)
        index = {element_id: i for i, element_id in enumerate(merged)}
        old_to_new = [index[element_id] for element_id in reduced.ids]
        if reduced.kind == VC:
            edges = frozenset(
                (min(old_to_new[u], old_to_new[v]), max(old_to_new[u], old_to_new[v]))
                for u, v in reduced.payload.edges)
            payload = Graph(len(merged), edges)
        else:
            hyperedges = tuple(frozenset(old_to_new[v] for v in e)
                               for e in reduced.payload.hyperedges)
            payload = Hypergraph(len(merged), hyperedges, reduced.payload.d)
        return ProblemInstance(reduced.kind, payload, range(len(merged)), merged)
    if reduced.kind == PLC:
        combined = sorted(
            list(zip(reduced.ids, reduced.elements))
            + [(element_id, original.element(element_id)) for element_id in recover_ids])
        return ProblemInstance(PLC, reduced.payload,
                               [element for _, element in combined],
                               [element_id for element_id, _ in combined])
    if reduced.kind == FAST:
        if recovery is None:
            raise ValueError("tournament recovery needs the kernel's recovery state")
        # The snapshot is keyed by the original instance's local vertex
        # pairs; work in that space and translate to external labels last.
        snapshot: dict[tuple[int, int], int] = recovery["arcs"]
        to_local = {label: v for v, label in enumerate(original.vertex_labels)}
        needed = {to_local[label] for label in reduced.vertex_labels}
        for element_id in recover_ids:
            needed.update(original.element(element_id))
        locals_sorted = sorted(needed)
        index = {v: i for i, v in enumerate(locals_sorted)}
        arcs = sorted((arc_id, (index[u], index[v]))
                      for (u, v), arc_id in snapshot.items()
                      if u in index and v in index)
        return ProblemInstance(
            FAST, Tournament(len(locals_sorted),
                             frozenset(pair for _, pair in arcs)),
            [pair for _, pair in arcs], [arc_id for arc_id, _ in arcs],
            vertex_labels=[original.vertex_labels[v] for v in locals_sorted])
    raise ValueError(f"unknown kind {reduced.kind!r}")


def diverse_kernel_transform(instance: ProblemInstance, k: int, r: int, d: int,
                             kernel):
    """Turn a loss-less kernel into a kernel for the diverse problem.

    At most k*r allowed elements (lowest ids first, for determinism) are
    recovered into the reduced instance; the result, with the reduced
    budget, is equivalent to the original diverse instance.
    """
    if isinstance(kernel, NoVerdict):
        return kernel
    if kernel.original != instance:
        raise ValueError("kernel was produced from a different instance")
    allowed = kernel.allowed
    a_star = allowed if len(allowed) <= k * r else allowed[:k * r]
    recovered = domain_recover(kernel.reduced, instance, a_star,
                               recovery=kernel.recovery)
    return DiverseKernelOutput(instance=recovered, k_reduced=kernel.k_reduced,
                               r=r, d=d, a_star=tuple(a_star))


def kernel_report(result, domain_before: int, solved_domain: int | None = None) -> dict:
    """JSON-ready summary of a kernelization outcome."""
    if isinstance(result, NoVerdict):
        return {"verdict": "no", "reason": result.reason}
    return {
        "forced": sorted(result.forced),
        "allowed": sorted(result.allowed),
        "k_reduced": result.k_reduced,
        "domain_before": domain_before,
        "domain_after": (solved_domain if solved_domain is not None
                         else result.reduced.domain_size),
    }
