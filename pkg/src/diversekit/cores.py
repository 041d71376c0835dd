"""Concrete dynamic cores and the diverse-solutions solvers for vertex cover.

Two independent implementations decide Diverse Vertex Cover:

* :func:`solve_diverse` runs the generic product construction: one budget-k
  vertex cover core per requested solution, combined with a capped
  diversity accumulator, evaluated by the shared core engine;
* :func:`solve_diverse_vc_direct` is a self-contained table DP over the
  same decomposition.

They are deliberately separate code paths so each can serve as the
other's oracle beyond brute-force range.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core_engine import (DynamicCore, EvaluationResult, Membership, NodeStats,
                          evaluate, extract_witness, solution_from_witness)
from .decomposition import RootedTreeDecomposition
from .diversity import diversity, influence, max_possible_diversity
from .instances import Graph

MAX_BAG_BITS = 62


def _require_normalized(dec: RootedTreeDecomposition) -> None:
    if not dec.is_normalized:
        raise ValueError("decomposition must be normalized "
                         "(delta <= 2, |new| <= 1, empty root bag)")


def _bag_orders(dec: RootedTreeDecomposition) -> list[tuple[int, ...]]:
    return [tuple(sorted(bag)) for bag in dec.bags]


def _valid_selections(graph: Graph, bag: tuple[int, ...]) -> list[frozenset[int]]:
    """Subsets S of the bag whose complement within the bag is edgeless."""
    if len(bag) > MAX_BAG_BITS:
        raise ValueError(f"bag of size {len(bag)} exceeds the {MAX_BAG_BITS}-bit "
                         "selection enumeration guard")
    local_edges = [(i, j) for i in range(len(bag)) for j in range(i + 1, len(bag))
                   if graph.has_edge(bag[i], bag[j])]
    out = []
    for mask in range(1 << len(bag)):
        if all((mask >> i) & 1 or (mask >> j) & 1 for i, j in local_edges):
            out.append(frozenset(bag[i] for i in range(len(bag)) if (mask >> i) & 1))
    return sorted(out, key=lambda s: tuple(sorted(s)))


def vc_core(graph: Graph, dec: RootedTreeDecomposition,
            k: int) -> tuple[DynamicCore, Membership]:
    """Dynamic core for vertex covers of size at most k.

    States are pairs (selected bag vertices, number of selected vertices
    already forgotten in the subtree).  A transition keeps the selection
    consistent with each child on shared vertices, requires the
    non-selected bag part to be edgeless, and accumulates the forgotten
    count; states whose count exceeds k are dropped.
    """
    _require_normalized(dec)
    if k < 0:
        raise ValueError("budget must be nonnegative")
    bags = _bag_orders(dec)
    valid = {t: _valid_selections(graph, bags[t]) for t in range(dec.size)}
    bag_sets = [frozenset(bag) for bag in bags]

    def process(t, child_tables):
        kids = dec.children[t]
        forg = dec.forg[t]
        new = dec.new[t]
        extras = [frozenset()]
        for v in sorted(new):
            extras += [e | {v} for e in extras]
        extras.sort(key=lambda s: tuple(sorted(s)))
        valid_here = set(valid[t])
        tuples = []
        if not kids:
            for sel in valid[t]:
                s = len(sel & forg)
                if s <= k:
                    tuples.append(((tuple(sorted(sel)), s),))
            return tuples
        sorted_children = [sorted(tbl) for tbl in child_tables]
        if len(kids) == 1:
            for child_state in sorted_children[0]:
                sel_c = frozenset(child_state[0])
                base = sel_c & bag_sets[t]
                for extra in extras:
                    sel = base | extra
                    if sel not in valid_here:
                        continue
                    s = child_state[1] + len(sel & forg)
                    if s <= k:
                        tuples.append(((tuple(sorted(sel)), s), child_state))
            return tuples
        shared = [bag_sets[t] & bag_sets[c] for c in kids]
        for st1 in sorted_children[0]:
            base1 = frozenset(st1[0]) & bag_sets[t]
            for st2 in sorted_children[1]:
                base2 = frozenset(st2[0]) & bag_sets[t]
                base = base1 | base2
                if base & shared[0] != base1 or base & shared[1] != base2:
                    continue
                for extra in extras:
                    sel = base | extra
                    if sel not in valid_here:
                        continue
                    s = st1[1] + st2[1] + len(sel & forg)
                    if s <= k:
                        tuples.append(((tuple(sorted(sel)), s), st1, st2))
        return tuples

    # Forgotten-count states never exceed the vertex count, so budgets
    # beyond n behave exactly like n.
    accept = {((), s) for s in range(min(k, graph.n) + 1)}
    core = DynamicCore(accept, process, name=f"vc<=k={k}", context=dec)

    def membership(v, state):
        return int(v in state[0])

    return core, membership


def diverse_product_core(components, dec: RootedTreeDecomposition,
                         d: int) -> DynamicCore:
    """Combine r dynamic cores with a diversity accumulator capped at d.

    A product state is (w_1, ..., w_r, l): one component state per core
    plus the diversity collected over already-forgotten vertices, capped
    at d.  Transitions pair one transition per component with the child
    l-values; the diversity gained at a node is the summed per-vertex
    influence over its forgotten vertices, computed through the component
    membership functions.  Accepted root states carry l equal to d (the
    cap makes that equivalent to "at least d").
    """
    _require_normalized(dec)
    if d < 0:
        raise ValueError("diversity target must be nonnegative")
    cores = [c for c, _ in components]
    memberships = [m for _, m in components]
    r = len(components)
    for core in cores:
        if core.context is not None and core.context is not dec:
            raise ValueError("component cores were built over a different "
                             "decomposition")

    accept = {tuple(ws) + (d,)
              for ws in product(*[sorted(c.accept) for c in cores])}

    def process(t, child_tables):
        kids = dec.children[t]
        forg = sorted(dec.forg[t])
        indexes = []
        for i, core in enumerate(cores):
            projected = [{state[i] for state in tbl} for tbl in child_tables]
            index: dict[tuple, list] = {}
            for tup in core.process(t, projected):
                index.setdefault(tuple(tup[1:]), []).append(tup[0])
            for key in index:
                index[key] = sorted(set(index[key]))
            indexes.append(index)
        tuples = []
        sorted_children = [sorted(tbl) for tbl in child_tables]
        for child_combo in product(*sorted_children):
            parent_lists = []
            for i in range(r):
                key = tuple(state[i] for state in child_combo)
                options = indexes[i].get(key)
                if not options:
                    parent_lists = None
                    break
                parent_lists.append(options)
            if parent_lists is None:
                continue
            carried = sum(state[-1] for state in child_combo)
            for ws in product(*parent_lists):
                gained = 0
                for v in forg:
                    p = sum(memberships[i](v, ws[i]) for i in range(r))
                    gained += influence(p, r)
                level = min(d, carried + gained)
                tuples.append((ws + (level,),) + child_combo)
        return tuples

    return DynamicCore(accept, process, name=f"diverse(r={r},d={d})",
                       context=dec)


@dataclass
class DiverseSolveResult:
    decision: bool
    solutions: tuple[frozenset[int], ...] | None
    diversity: int | None
    evaluation: EvaluationResult


def solve_diverse(graph: Graph, dec: RootedTreeDecomposition, components,
                  d: int, threads: int = 1) -> DiverseSolveResult:
    """Decide the diverse problem for the given component cores and extract
    one solution list on acceptance."""
    core = diverse_product_core(components, dec, d)
    result = evaluate(core, dec, threads=threads)
    if not result.decision:
        return DiverseSolveResult(False, None, None, result)
    witness = extract_witness(dec, result.tables, result.backpointers, core.accept)
    solutions = []
    for i, (_, membership) in enumerate(components):
        component_witness = {t: witness[t][i] for t in witness}
        solutions.append(solution_from_witness(membership, dec, component_witness))
    achieved = diversity(solutions)
    if achieved < d:
        raise AssertionError(f"extracted solutions reach diversity {achieved} < {d}")
    return DiverseSolveResult(True, tuple(solutions), achieved, result)


def solve_diverse_vc(graph: Graph, dec: RootedTreeDecomposition, k: int,
                     r: int, d: int, threads: int = 1) -> DiverseSolveResult:
    """Product-framework entry point for r equal vertex cover components.

    The budget-k core is constructed once and shared by all r components.
    """
    core, membership = vc_core(graph, dec, k)
    return solve_diverse(graph, dec, [(core, membership)] * r, d, threads=threads)


# ---------------------------------------------------------------------------
# direct table DP for Diverse Vertex Cover


def _diverse_vc_tables(graph: Graph, dec: RootedTreeDecomposition, k: int,
                       r: int, cap: int):
    """Bottom-up tables of the direct Diverse Vertex Cover DP.

    A table entry at node t is a flat tuple
    ``(mask_1, s_1, ..., mask_r, s_r, l)``: per requested solution the
    selected-bag bitmask and the count of selected forgotten vertices,
    plus the capped diversity over forgotten vertices.  Returns the root
    table and per-node statistics.
    """
    _require_normalized(dec)
    if k < 0 or r < 1 or cap < 0:
        raise ValueError("need k >= 0, r >= 1, cap >= 0")
    bags = _bag_orders(dec)
    size = dec.size

    valid_masks: list[set[int]] = []
    forg_positions: list[list[int]] = []
    forg_masks: list[int] = []
    for t in range(size):
        bag = bags[t]
        if len(bag) > MAX_BAG_BITS:
            raise ValueError(f"bag of size {len(bag)} exceeds the "
                             f"{MAX_BAG_BITS}-bit selection enumeration guard")
        local_edges = [(i, j) for i in range(len(bag))
                       for j in range(i + 1, len(bag))
                       if graph.has_edge(bag[i], bag[j])]
        valid_masks.append({mask for mask in range(1 << len(bag))
                            if all((mask >> i) & 1 or (mask >> j) & 1
                                   for i, j in local_edges)})
        positions = [i for i, v in enumerate(bag) if v in dec.forg[t]]
        forg_positions.append(positions)
        forg_masks.append(sum(1 << i for i in positions))

    # Per (parent, child): remap a child selection mask to the parent bag,
    # plus the parent-bag mask of vertices shared with that child.
    remap: dict[tuple[int, int], list[int]] = {}
    shared_mask: dict[tuple[int, int], int] = {}
    for t in range(size):
        parent_pos = {v: i for i, v in enumerate(bags[t])}
        for c in dec.children[t]:
            table = []
            child_bag = bags[c]
            bit_targets = [parent_pos.get(v, -1) for v in child_bag]
            for mask in range(1 << len(child_bag)):
                m = 0
                rest = mask
                pos = 0
                while rest:
                    if rest & 1 and bit_targets[pos] >= 0:
                        m |= 1 << bit_targets[pos]
                    rest >>= 1
                    pos += 1
                table.append(m)
            remap[(t, c)] = table
            shared_mask[(t, c)] = sum(1 << parent_pos[v] for v in child_bag
                                      if v in parent_pos)

    def gained_diversity(masks: tuple[int, ...], t: int) -> int:
        total = 0
        for pos in forg_positions[t]:
            p = 0
            for mask in masks:
                p += (mask >> pos) & 1
            total += p * (r - p)
        return total

    tables: dict[int, set[tuple[int, ...]]] = {}
    stats: list[NodeStats] = []
    for t in dec.postorder:
        kids = dec.children[t]
        new_positions = [i for i, v in enumerate(bags[t]) if v in dec.new[t]]
        extra_masks = [0] if not new_positions else \
            [m for m in (sum(1 << p for p in combo)
                         for combo in _subsets(new_positions))]
        table: set[tuple[int, ...]] = set()
        examined = 0
        if not kids:
            choices = sorted(valid_masks[t])
            for masks in product(choices, repeat=r):
                examined += 1
                entry = []
                ok = True
                for mask in masks:
                    s = (mask & forg_masks[t]).bit_count()
                    if s > k:
                        ok = False
                        break
                    entry += [mask, s]
                if not ok:
                    continue
                entry.append(min(cap, gained_diversity(masks, t)))
                table.add(tuple(entry))
        elif len(kids) == 1:
            c = kids[0]
            table_remap = remap[(t, c)]
            for child_entry in tables[c]:
                bases = tuple(table_remap[child_entry[2 * i]] for i in range(r))
                for extra_combo in product(extra_masks, repeat=r):
                    examined += 1
                    entry = []
                    masks = []
                    ok = True
                    for i in range(r):
                        mask = bases[i] | extra_combo[i]
                        if mask not in valid_masks[t]:
                            ok = False
                            break
                        s = child_entry[2 * i + 1] + (mask & forg_masks[t]).bit_count()
                        if s > k:
                            ok = False
                            break
                        masks.append(mask)
                        entry += [mask, s]
                    if not ok:
                        continue
                    entry.append(min(cap, child_entry[-1]
                                     + gained_diversity(tuple(masks), t)))
                    table.add(tuple(entry))
        else:
            c1, c2 = kids
            remap1, remap2 = remap[(t, c1)], remap[(t, c2)]
            shared1, shared2 = shared_mask[(t, c1)], shared_mask[(t, c2)]
            for e1 in tables[c1]:
                bases1 = tuple(remap1[e1[2 * i]] for i in range(r))
                for e2 in tables[c2]:
                    joined = []
                    consistent = True
                    for i in range(r):
                        b = bases1[i] | remap2[e2[2 * i]]
                        if b & shared1 != bases1[i] or b & shared2 != remap2[e2[2 * i]]:
                            consistent = False
                            break
                        joined.append(b)
                    if not consistent:
                        continue
                    for extra_combo in product(extra_masks, repeat=r):
                        examined += 1
                        entry = []
                        masks = []
                        ok = True
                        for i in range(r):
                            mask = joined[i] | extra_combo[i]
                            if mask not in valid_masks[t]:
                                ok = False
                                break
                            s = (e1[2 * i + 1] + e2[2 * i + 1]
                                 + (mask & forg_masks[t]).bit_count())
                            if s > k:
                                ok = False
                                break
                            masks.append(mask)
                            entry += [mask, s]
                        if not ok:
                            continue
                        entry.append(min(cap, e1[-1] + e2[-1]
                                         + gained_diversity(tuple(masks), t)))
                        table.add(tuple(entry))
        tables[t] = table
        stats.append(NodeStats(node=t, delta=len(kids), states=len(table),
                               tuples=examined))
        for c in kids:
            del tables[c]
    stats.sort(key=lambda st: st.node)
    return tables[dec.root], stats


def _subsets(items):
    out = [[]]
    for item in items:
        out += [sub + [item] for sub in out]
    return [tuple(sub) for sub in out]


def solve_diverse_vc_direct(graph: Graph, dec: RootedTreeDecomposition, k: int,
                            r: int, d: int) -> tuple[bool, list[NodeStats]]:
    """Direct DP decision for Diverse Vertex Cover (no solution extraction).

    Accepts exactly when some root entry carries the full capped
    diversity d.
    """
    root_table, stats = _diverse_vc_tables(graph, dec, k, r, d)
    return any(entry[-1] == d for entry in root_table), stats


def diverse_vc_sweep(graph: Graph, dec: RootedTreeDecomposition, k: int,
                     r: int, cap: int | None = None):
    """One capped run of the direct DP: (threshold, per-node stats, cap).

    Capping commutes with the accumulation, so the run at the diversity
    ceiling answers the decision for every target: yes at d iff d is at
    most the threshold.  A ``None`` threshold means no cover tuple exists.
    """
    if cap is None:
        cap = max_possible_diversity(graph.n, r)
    root_table, stats = _diverse_vc_tables(graph, dec, k, r, cap)
    threshold = max((entry[-1] for entry in root_table), default=None)
    return threshold, stats, cap


def diverse_vc_max_diversity(graph: Graph, dec: RootedTreeDecomposition,
                             k: int, r: int, cap: int | None = None) -> int | None:
    """Largest achievable diversity over r size-k covers, via the direct DP."""
    return diverse_vc_sweep(graph, dec, k, r, cap)[0]


def framework_max_diversity(graph: Graph, dec: RootedTreeDecomposition,
                            k: int, r: int, cap: int | None = None) -> int | None:
    """Product-framework counterpart of :func:`diverse_vc_max_diversity`."""
    if cap is None:
        cap = max_possible_diversity(graph.n, r)
    core, membership = vc_core(graph, dec, k)
    product_core = diverse_product_core([(core, membership)] * r, dec, cap)
    result = evaluate(product_core, dec)
    accepted = [state for state in result.tables[dec.root]
                if all(state[i] in core.accept for i in range(r))]
    if not accepted:
        return None
    return max(state[-1] for state in accepted)


def direct_table_bound(bag_size: int, k: int, r: int, cap: int) -> int:
    """Declared ceiling on a node's direct-DP table size."""
    return ((1 << bag_size) * (k + 1)) ** r * (cap + 1)
