"""Problem instances and their solution domains.

Four instance kinds are supported: undirected graphs (vertex cover),
bounded-arity hypergraphs (hitting set), integer point sets in the plane
(point-line cover) and tournaments (feedback arc set).  Every instance
carries an explicit *domain*: the candidate solution elements, each with a
stable integer id.  Reduced instances produced by kernelization keep the
original ids, so Hamming distances between solutions stay comparable
across rewrites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

VC = "vc"
HS = "hs"
PLC = "plc"
FAST = "fast"
KINDS = (VC, HS, PLC, FAST)


class ParseError(ValueError):
    """Malformed instance file; the message names the offending line."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) not in canonical range")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph with hyperedges of size at most d on vertices 0..n-1."""

    n: int
    hyperedges: tuple[frozenset[int], ...]
    d: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.d < 1:
            raise ValueError("invalid hypergraph dimensions")
        for e in self.hyperedges:
            if not e:
                raise ValueError("empty hyperedge")
            if len(e) > self.d:
                raise ValueError(f"hyperedge {sorted(e)} exceeds arity {self.d}")
            for v in e:
                if not (0 <= v < self.n):
                    raise ValueError(f"hyperedge member {v} out of range")


def canonical_line(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int, int]:
    """Coprime integer triple (a, b, c) of the line a*x + b*y = c through p and q.

    The sign is canonical: the first nonzero of (a, b) is positive, so equal
    lines obtained from different point pairs produce identical triples.
    Exact integer arithmetic keeps line identity reliable.
    """
    if p == q:
        raise ValueError(f"cannot span a line from the single point {p}")
    (x1, y1), (x2, y2) = p, q
    a = y2 - y1
    b = -(x2 - x1)
    c = a * x1 + b * y1
    g = math.gcd(a, b)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return (a, b, c)


def point_on_line(point: tuple[int, int], line: tuple[int, int, int]) -> bool:
    a, b, c = line
    x, y = point
    return a * x + b * y == c


def spanned_lines(points: Sequence[tuple[int, int]]) -> tuple[tuple[int, int, int], ...]:
    """All distinct lines through at least two of the given points, sorted."""
    seen = set()
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            seen.add(canonical_line(pts[i], pts[j]))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class PointSet:
    """Distinct integer points in the plane."""

    points: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    @cached_property
    def lines(self) -> tuple[tuple[int, int, int], ...]:
        return spanned_lines(self.points)


@dataclass(frozen=True)
class Tournament:
    """Complete orientation of K_n: exactly one arc per vertex pair."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) out of range")
            key = edge_key(u, v)
            if key in seen:
                raise ValueError(f"both orientations of pair {key} present")
            seen.add(key)
        if len(self.arcs) != self.n * (self.n - 1) // 2:
            raise ValueError("not a tournament: some vertex pair has no arc")

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        outs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            outs[u].add(v)
        return tuple(frozenset(s) for s in outs)


class ProblemInstance:
    """An instance together with its identified solution domain.

    ``elements`` lists the domain elements in increasing id order; ``ids``
    are the matching stable integer ids.  For vertex problems the elements
    are local vertex indices of the payload, for point-line cover they are
    canonical line triples, for tournaments they are local arcs.
    ``vertex_labels`` maps local payload vertices to their external names
    (used by tournament rewrites whose domain consists of arcs).
    """

    __slots__ = ("kind", "payload", "elements", "ids", "vertex_labels",
                 "_by_id", "_by_element")

    def __init__(self, kind, payload, elements: Iterable, ids: Iterable[int],
                 vertex_labels: Sequence[int] | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown problem kind {kind!r}")
        elements = tuple(elements)
        ids = tuple(ids)
        if len(elements) != len(ids):
            raise ValueError("domain elements and ids differ in length")
        if any(b <= a for a, b in zip(ids, ids[1:])):
            raise ValueError("domain ids must be strictly increasing")
        self.kind = kind
        self.payload = payload
        self.elements = elements
        self.ids = ids
        if vertex_labels is None and kind in (VC, HS, FAST):
            vertex_labels = tuple(range(payload.n))
        self.vertex_labels = tuple(vertex_labels) if vertex_labels is not None else None
        self._by_id = dict(zip(ids, elements))
        self._by_element = dict(zip(elements, ids))

    @classmethod
    def vertex_cover(cls, graph: Graph) -> "ProblemInstance":
        return cls(VC, graph, range(graph.n), range(graph.n))

    @classmethod
    def hitting_set(cls, hypergraph: Hypergraph) -> "ProblemInstance":
        return cls(HS, hypergraph, range(hypergraph.n), range(hypergraph.n))

    @classmethod
    def point_line_cover(cls, points: PointSet) -> "ProblemInstance":
        lines = points.lines
        return cls(PLC, points, lines, range(len(lines)))

    @classmethod
    def feedback_arc_set(cls, tournament: Tournament) -> "ProblemInstance":
        arcs = tuple(sorted(tournament.arcs))
        return cls(FAST, tournament, arcs, range(len(arcs)))

    def element(self, element_id: int):
        return self._by_id[element_id]

    def id_of(self, element) -> int:
        return self._by_element[element]

    @property
    def domain_size(self) -> int:
        return len(self.ids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (self.kind == other.kind and self.payload == other.payload
                and self.elements == other.elements and self.ids == other.ids
                and self.vertex_labels == other.vertex_labels)

    def __hash__(self) -> int:
        return hash((self.kind, self.payload, self.elements, self.ids))

    def __repr__(self) -> str:
        return (f"ProblemInstance(kind={self.kind!r}, "
                f"domain_size={self.domain_size})")


def enumerate_domain(instance: ProblemInstance) -> list[int]:
    """Domain element ids in their deterministic (sorted) order."""
    return list(instance.ids)


# ---------------------------------------------------------------------------
# file formats


def _data_lines(text: str, comment_prefixes: tuple[str, ...]) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or any(line.startswith(p) for p in comment_prefixes):
            continue
        yield lineno, line.split()


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected integer, got {token!r}") from None


def parse_graph(text: str) -> Graph:
    """Read DIMACS edge format: 'c' comments, 'p edge n m' header, 'e u v' lines."""
    n = m = None
    edges: set[tuple[int, int]] = set()
    for lineno, parts in _data_lines(text, ("c",)):
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"line {lineno}: malformed header, expected 'p edge n m'")
            n, m = _int(parts[2], lineno), _int(parts[3], lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before 'p edge' header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed edge line")
            u, v = _int(parts[1], lineno) - 1, _int(parts[2], lineno) - 1
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"line {lineno}: endpoint out of range 1..{n}")
            key = edge_key(u, v)
            if key in edges:
                raise ParseError(f"line {lineno}: duplicate edge")
            edges.add(key)
        else:
            raise ParseError(f"line {lineno}: unrecognised line type {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'p edge' header")
    if m != len(edges):
        raise ParseError(f"header declares {m} edges but file defines {len(edges)}")
    return Graph(n, frozenset(edges))


def serialize_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {graph.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in sorted(graph.edges)]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Read 'p hs n m d' header plus m lines 'h v1 v2 ... vj' (1-based, j <= d)."""
    n = m = d = None
    hyperedges: list[frozenset[int]] = []
    for lineno, parts in _data_lines(text, ("c",)):
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem header")
            if len(parts) != 5 or parts[1] != "hs":
                raise ParseError(f"line {lineno}: malformed header, expected 'p hs n m d'")
            n, m, d = (_int(parts[2], lineno), _int(parts[3], lineno),
                       _int(parts[4], lineno))
        elif parts[0] == "h":
            if n is None:
                raise ParseError(f"line {lineno}: hyperedge before 'p hs' header")
            members = [_int(tok, lineno) - 1 for tok in parts[1:]]
            if not members:
                raise ParseError(f"line {lineno}: empty hyperedge")
            if len(members) > d:
                raise ParseError(f"line {lineno}: hyperedge larger than arity {d}")
            for v in members:
                if not (0 <= v < n):
                    raise ParseError(f"line {lineno}: member out of range 1..{n}")
            hyperedges.append(frozenset(members))
        else:
            raise ParseError(f"line {lineno}: unrecognised line type {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'p hs' header")
    if m != len(hyperedges):
        raise ParseError(f"header declares {m} hyperedges but file defines {len(hyperedges)}")
    return Hypergraph(n, tuple(hyperedges), d)


def serialize_hypergraph(hypergraph: Hypergraph) -> str:
    lines = [f"p hs {hypergraph.n} {len(hypergraph.hyperedges)} {hypergraph.d}"]
    canonical = sorted(tuple(sorted(e)) for e in hypergraph.hyperedges)
    lines += ["h " + " ".join(str(v + 1) for v in e) for e in canonical]
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> PointSet:
    """Read one 'x y' integer pair per line; '#' starts a comment."""
    points: list[tuple[int, int]] = []
    for lineno, parts in _data_lines(text, ("#",)):
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'x y'")
        pt = (_int(parts[0], lineno), _int(parts[1], lineno))
        if pt in points:
            raise ParseError(f"line {lineno}: duplicate point {pt}")
        points.append(pt)
    return PointSet(tuple(points))


def serialize_points(points: PointSet) -> str:
    lines = [f"{x} {y}" for x, y in sorted(points.points)]
    return "\n".join(lines) + "\n" if lines else ""


def parse_tournament(text: str) -> Tournament:
    """Read 'p tour n' header plus one 'a u v' line per arc (1-based)."""
    n = None
    arcs: set[tuple[int, int]] = set()
    pairs: set[tuple[int, int]] = set()
    for lineno, parts in _data_lines(text, ("c",)):
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem header")
            if len(parts) != 3 or parts[1] != "tour":
                raise ParseError(f"line {lineno}: malformed header, expected 'p tour n'")
            n = _int(parts[2], lineno)
        elif parts[0] == "a":
            if n is None:
                raise ParseError(f"line {lineno}: arc before 'p tour' header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed arc line")
            u, v = _int(parts[1], lineno) - 1, _int(parts[2], lineno) - 1
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"line {lineno}: endpoint out of range 1..{n}")
            key = edge_key(u, v)
            if key in pairs:
                raise ParseError(f"line {lineno}: pair {u + 1},{v + 1} already oriented")
            pairs.add(key)
            arcs.add((u, v))
        else:
            raise ParseError(f"line {lineno}: unrecognised line type {parts[0]!r}")
    if n is None:
        raise ParseError("missing 'p tour' header")
    try:
        return Tournament(n, frozenset(arcs))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_tournament(tournament: Tournament) -> str:
    lines = [f"p tour {tournament.n}"]
    lines += [f"a {u + 1} {v + 1}" for u, v in sorted(tournament.arcs)]
    return "\n".join(lines) + "\n"
