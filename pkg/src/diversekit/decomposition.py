"""Rooted tree decompositions: validation, normalization, construction.

Conventions used throughout the solvers:

* the root bag is empty;
* ``forg(t)`` is the set of bag vertices of ``t`` absent from the parent
  bag (so every graph vertex is "forgotten" at exactly one node);
* ``new(t)`` is the set of bag vertices of ``t`` absent from all child
  bags.

Normalization rewrites any valid decomposition, without changing its
width, into one where every node has at most two children and introduces
at most one new vertex.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property

from .instances import Graph, ParseError, _data_lines, _int


@dataclass(frozen=True)
class RootedTreeDecomposition:
    """Rooted tree with one vertex bag per node; parent[root] is -1."""

    parent: tuple[int, ...]
    bags: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.parent) != len(self.bags) or not self.bags:
            raise ValueError("decomposition needs one bag per node")
        roots = [t for t, p in enumerate(self.parent) if p < 0]
        if len(roots) != 1:
            raise ValueError("decomposition must have exactly one root")
        seen: set[int] = set()
        for t in range(len(self.parent)):
            node, trail = t, []
            while node >= 0 and node not in seen:
                trail.append(node)
                node = self.parent[node]
                if node in trail:
                    raise ValueError("parent links contain a cycle")
            seen.update(trail)

    @property
    def size(self) -> int:
        return len(self.bags)

    @cached_property
    def root(self) -> int:
        return next(t for t, p in enumerate(self.parent) if p < 0)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.size)]
        for t, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(t)
        return tuple(tuple(sorted(k)) for k in kids)

    def delta(self, t: int) -> int:
        return len(self.children[t])

    @cached_property
    def max_delta(self) -> int:
        return max(self.delta(t) for t in range(self.size))

    @cached_property
    def forg(self) -> tuple[frozenset[int], ...]:
        out = []
        for t, p in enumerate(self.parent):
            out.append(frozenset() if p < 0 else self.bags[t] - self.bags[p])
        return tuple(out)

    @cached_property
    def new(self) -> tuple[frozenset[int], ...]:
        out = []
        for t in range(self.size):
            covered: set[int] = set()
            for c in self.children[t]:
                covered |= self.bags[c]
            out.append(self.bags[t] - covered)
        return tuple(out)

    @cached_property
    def width(self) -> int:
        return max(len(bag) for bag in self.bags) - 1

    @cached_property
    def postorder(self) -> tuple[int, ...]:
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
            else:
                stack.append((node, True))
                for c in reversed(self.children[node]):
                    stack.append((c, False))
        return tuple(order)

    @property
    def is_normalized(self) -> bool:
        return (not self.bags[self.root]
                and all(self.delta(t) <= 2 for t in range(self.size))
                and all(len(self.new[t]) <= 1 for t in range(self.size)))


def validate(graph: Graph, dec: RootedTreeDecomposition) -> list[str]:
    """Check the decomposition axioms; an empty list means the input is valid.

    Each violation string names the failed axiom and a witness.
    """
    violations: list[str] = []
    if dec.bags[dec.root]:
        violations.append(
            f"root-bag: root node {dec.root} has nonempty bag {sorted(dec.bags[dec.root])}")
    covered: set[int] = set()
    for t, bag in enumerate(dec.bags):
        for v in bag:
            if not (0 <= v < graph.n):
                violations.append(f"bag-range: node {t} contains unknown vertex {v}")
        covered |= bag
    for v in range(graph.n):
        if v not in covered:
            violations.append(f"vertex-coverage: vertex {v} appears in no bag")
    for u, v in sorted(graph.edges):
        if not any(u in bag and v in bag for bag in dec.bags):
            violations.append(f"edge-coverage: edge ({u},{v}) is inside no bag")
    for v in range(graph.n):
        nodes = {t for t, bag in enumerate(dec.bags) if v in bag}
        if len(nodes) <= 1:
            continue
        start = min(nodes)
        reached = {start}
        frontier = [start]
        while frontier:
            t = frontier.pop()
            neighbours = list(dec.children[t])
            if dec.parent[t] >= 0:
                neighbours.append(dec.parent[t])
            for s in neighbours:
                if s in nodes and s not in reached:
                    reached.add(s)
                    frontier.append(s)
        missing = nodes - reached
        if missing:
            violations.append(
                f"connectivity: vertex {v} occurs in disconnected nodes "
                f"{sorted(nodes)} (unreached: {sorted(missing)})")
    return violations


class _Builder:
    def __init__(self) -> None:
        self.bags: list[frozenset[int]] = []
        self.parent: list[int] = []

    def add(self, bag: frozenset[int], children: list[int]) -> int:
        node = len(self.bags)
        self.bags.append(bag)
        self.parent.append(-1)
        for c in children:
            self.parent[c] = node
        return node

    def build(self) -> RootedTreeDecomposition:
        return RootedTreeDecomposition(tuple(self.parent), tuple(self.bags))


def normalize(graph: Graph, dec: RootedTreeDecomposition) -> RootedTreeDecomposition:
    """Rewrite into an equal-width decomposition with delta <= 2 and |new| <= 1.

    Vertices are introduced one per node in ascending id order; nodes with
    more than two children are folded into a left comb of equal-bag join
    nodes whose child chains first restrict to the parent bag.
    """
    errors = validate(graph, dec)
    if errors:
        raise ValueError("invalid input decomposition: " + "; ".join(errors))
    out = _Builder()

    def chain_to(bag: frozenset[int], child: int, child_bag: frozenset[int]) -> int:
        # Introduce bag \ child_bag one vertex at a time; dropping vertices
        # needs no intermediate nodes.
        added = sorted(bag - child_bag)
        current = bag - frozenset(added)
        node = child
        for v in added:
            current = current | {v}
            node = out.add(frozenset(current), [node])
        if not added:
            node = out.add(bag, [node])
        return node

    def convert(t: int) -> int:
        bag = dec.bags[t]
        kids = [convert(c) for c in dec.children[t]]
        if not kids:
            ordered = sorted(bag)
            node = out.add(frozenset(ordered[:1]), [])
            for i in range(2, len(ordered) + 1):
                node = out.add(frozenset(ordered[:i]), [node])
            return node
        tops = [chain_to(bag, kid, out.bags[kid]) for kid in kids]
        node = tops[0]
        for other in tops[1:]:
            node = out.add(bag, [node, other])
        return node

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * dec.size + 100))
    try:
        convert(dec.root)
    finally:
        sys.setrecursionlimit(old_limit)
    return out.build()


def pd_from_vertex_cover(graph: Graph, cover: frozenset[int] | set[int]) -> RootedTreeDecomposition:
    """Path decomposition with bags cover+{v} for each vertex, width |cover|.

    The cover certifies that every edge has an endpoint in every bag, so
    the path of bags (one per vertex, ascending) is a valid decomposition.
    """
    cover = frozenset(cover)
    for u, v in graph.edges:
        if u not in cover and v not in cover:
            raise ValueError(f"not a vertex cover: edge ({u},{v}) uncovered")
    builder = _Builder()
    node = -1
    for v in sorted(range(graph.n), reverse=True):
        node = builder.add(cover | {v}, [node] if node >= 0 else [])
    builder.add(frozenset(), [node] if node >= 0 else [])
    return builder.build()


def find_vertex_cover(graph: Graph, k: int) -> frozenset[int] | None:
    """Bounded search tree: branch on an endpoint of an uncovered edge.

    Returns some vertex cover of size <= k if one exists, else None.
    Deterministic: the lexicographically smallest uncovered edge is
    branched first, lower endpoint first.
    """
    if k < 0:
        raise ValueError("budget must be nonnegative")
    edges = sorted(graph.edges)

    def search(chosen: set[int], budget: int) -> frozenset[int] | None:
        uncovered = next(((u, v) for u, v in edges
                          if u not in chosen and v not in chosen), None)
        if uncovered is None:
            return frozenset(chosen)
        if budget == 0:
            return None
        for endpoint in uncovered:
            chosen.add(endpoint)
            found = search(chosen, budget - 1)
            chosen.discard(endpoint)
            if found is not None:
                return found
        return None

    return search(set(), k)


def parse_td(text: str, graph: Graph) -> RootedTreeDecomposition:
    """Read PACE 2017 .td format and re-root at an added empty root node.

    Lines: 's td N w+1 n', 'b i v1 ...' bag definitions, 'i j' tree edges;
    everything 1-based.  The empty root is attached to bag 1.
    """
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges: list[tuple[int, int]] = []
    for lineno, parts in _data_lines(text, ("c",)):
        if parts[0] == "s":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate solution line")
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"line {lineno}: malformed 's td' line")
            header = tuple(_int(p, lineno) for p in parts[2:])
        elif parts[0] == "b":
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: malformed bag line")
            idx = _int(parts[1], lineno)
            if idx in bags:
                raise ParseError(f"line {lineno}: duplicate bag {idx}")
            members = [_int(tok, lineno) - 1 for tok in parts[2:]]
            for v in members:
                if not (0 <= v < graph.n):
                    raise ParseError(f"line {lineno}: bag vertex out of range 1..{graph.n}")
            bags[idx] = frozenset(members)
        else:
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: malformed tree edge line")
            tree_edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
    if header is None:
        raise ParseError("missing 's td' line")
    n_bags = header[0]
    if set(bags) != set(range(1, n_bags + 1)):
        raise ParseError(f"expected bags 1..{n_bags}, found {sorted(bags)}")
    if len(tree_edges) != n_bags - 1:
        raise ParseError(f"a tree on {n_bags} bags needs {n_bags - 1} edges, "
                         f"found {len(tree_edges)}")
    adjacency: dict[int, list[int]] = {i: [] for i in bags}
    for a, b in tree_edges:
        if a not in bags or b not in bags:
            raise ParseError(f"tree edge ({a},{b}) references unknown bag")
        adjacency[a].append(b)
        adjacency[b].append(a)
    # 0-based nodes: bag i -> node i-1; appended empty root attached to bag 1.
    parent = [-2] * n_bags
    parent_of_first = n_bags
    order = [1]
    parent[0] = parent_of_first
    seen = {1}
    while order:
        current = order.pop()
        for nxt in adjacency[current]:
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt - 1] = current - 1
                order.append(nxt)
    if len(seen) != n_bags:
        raise ParseError("tree edges do not connect all bags")
    bag_list = [bags[i] for i in range(1, n_bags + 1)] + [frozenset()]
    return RootedTreeDecomposition(tuple(parent + [-1]), tuple(bag_list))
