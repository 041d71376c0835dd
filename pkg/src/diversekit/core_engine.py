"""Dynamic cores and their bottom-up evaluator.

A dynamic core supplies, for every decomposition node, a set of
transition tuples ``(parent_state, child_state_1, ..., child_state_delta)``
plus an accept set for the root.  A witness assigns one state to every
node so that each node's tuple appears in its transition set and the root
state is accepted.  The evaluator computes, bottom up, the states that
admit a witness on each subtree; the instance is accepted exactly when a
reachable root state is accepted.

States are opaque tokens; implementations use totally ordered hashable
values (tuples) so sets deduplicate deterministically and extraction is
reproducible.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Collection, Hashable, Iterable, Sequence

from .decomposition import RootedTreeDecomposition

State = Hashable
Membership = Callable[[int, State], int]
ProcessFn = Callable[[int, Sequence[Collection[State]]], Iterable[tuple]]


class DynamicCore:
    """Per-node transition relation plus root accept set.

    ``process(node, child_tables)`` materializes the node's transition
    tuples on demand.  The reachable child states are passed in so a core
    can skip tuples whose child states never occur; the evaluator filters
    against the child tables regardless, so over-producing is harmless.
    """

    def __init__(self, accept: Iterable[State], process: ProcessFn, name: str = "",
                 context=None):
        self.accept = frozenset(accept)
        self._process = process
        self.name = name
        self.context = context  # the decomposition the core was built over

    def process(self, node: int, child_tables: Sequence[Collection[State]]) -> Iterable[tuple]:
        return self._process(node, child_tables)


@dataclass(frozen=True)
class NodeStats:
    node: int
    delta: int
    states: int
    tuples: int


@dataclass
class EvaluationResult:
    decision: bool
    tables: dict[int, set]
    backpointers: dict[tuple[int, State], tuple]
    stats: list[NodeStats] = field(default_factory=list)
    tuple_checks: int = 0


def evaluate(core: DynamicCore, dec: RootedTreeDecomposition,
             threads: int = 1) -> EvaluationResult:
    """Bottom-up reachability over the core's transition tuples.

    Every pulled tuple is inspected exactly once: it survives when each
    child state lies in the corresponding child table, and the surviving
    parent state records the first witnessing tuple as its backpointer.
    Sibling subtrees are independent, so with ``threads > 1`` nodes of
    equal height are processed concurrently (child tables are always
    complete before their parent runs).
    """
    tables: dict[int, set] = {}
    backpointers: dict[tuple[int, State], tuple] = {}
    per_node_stats: dict[int, NodeStats] = {}
    checks = 0

    def process_node(t: int) -> tuple[int, set, dict, NodeStats, int]:
        kids = dec.children[t]
        child_tables = [tables[c] for c in kids]
        reachable: set = set()
        pointers: dict[tuple[int, State], tuple] = {}
        pulled = 0
        local_checks = 0
        for tup in core.process(t, child_tables):
            pulled += 1
            if len(tup) != len(kids) + 1:
                raise ValueError(
                    f"node {t}: tuple arity {len(tup)} does not match "
                    f"child count {len(kids)} plus one")
            local_checks += 1
            if all(tup[i + 1] in child_tables[i] for i in range(len(kids))):
                state = tup[0]
                if state not in reachable:
                    reachable.add(state)
                    pointers[(t, state)] = tup
        stats = NodeStats(node=t, delta=len(kids), states=len(reachable), tuples=pulled)
        return t, reachable, pointers, stats, local_checks

    if threads <= 1:
        for t in dec.postorder:
            _, reachable, pointers, stats, local = process_node(t)
            tables[t] = reachable
            backpointers.update(pointers)
            per_node_stats[t] = stats
            checks += local
    else:
        heights: dict[int, int] = {}
        for t in dec.postorder:
            kids = dec.children[t]
            heights[t] = 1 + max((heights[c] for c in kids), default=-1)
        by_height: dict[int, list[int]] = {}
        for t, h in heights.items():
            by_height.setdefault(h, []).append(t)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for h in sorted(by_height):
                for t, reachable, pointers, stats, local in pool.map(
                        process_node, sorted(by_height[h])):
                    tables[t] = reachable
                    backpointers.update(pointers)
                    per_node_stats[t] = stats
                    checks += local

    decision = bool(tables[dec.root] & core.accept)
    ordered_stats = [per_node_stats[t] for t in sorted(per_node_stats)]
    return EvaluationResult(decision=decision, tables=tables,
                            backpointers=backpointers, stats=ordered_stats,
                            tuple_checks=checks)


def extract_witness(dec: RootedTreeDecomposition, tables: dict[int, set],
                    backpointers: dict[tuple[int, State], tuple],
                    accept: Collection[State]) -> dict[int, State] | None:
    """One witness per accepting run, or None when the decision was no.

    Deterministic: the smallest accepting root state is chosen and the
    recorded backpointers are followed.
    """
    accepted = sorted(s for s in tables[dec.root] if s in accept)
    if not accepted:
        return None
    assignment: dict[int, State] = {dec.root: accepted[0]}
    stack = [dec.root]
    while stack:
        t = stack.pop()
        tup = backpointers[(t, assignment[t])]
        for child, state in zip(dec.children[t], tup[1:]):
            assignment[child] = state
            stack.append(child)
    return assignment


def check_witness(core: DynamicCore, dec: RootedTreeDecomposition,
                  witness: dict[int, State]) -> bool:
    """Re-verify a witness directly against the core's tuples and accept set."""
    if witness[dec.root] not in core.accept:
        return False
    for t in dec.postorder:
        kids = dec.children[t]
        expected = tuple([witness[t]] + [witness[c] for c in kids])
        child_tables = [{witness[c]} for c in kids]
        if expected not in set(map(tuple, core.process(t, child_tables))):
            return False
    return True


def solution_from_witness(membership: Membership, dec: RootedTreeDecomposition,
                          witness: dict[int, State]) -> frozenset[int]:
    """Decode the vertex set selected by a witness.

    A vertex is selected when the membership function reports 1 at any
    node whose bag contains it; the function must agree across tree edges
    on shared vertices, and disagreement raises.
    """
    for t in range(dec.size):
        p = dec.parent[t]
        if p < 0:
            continue
        for v in dec.bags[t] & dec.bags[p]:
            if membership(v, witness[t]) != membership(v, witness[p]):
                raise ValueError(
                    f"membership inconsistency for vertex {v} across edge "
                    f"({p},{t})")
    selected: set[int] = set()
    for t in range(dec.size):
        for v in dec.bags[t]:
            if membership(v, witness[t]):
                selected.add(v)
    return frozenset(selected)
