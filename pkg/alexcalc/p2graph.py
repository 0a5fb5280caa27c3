"""Colored P2-graphs: construction, composition across a glued P2, canonical labels."""

from __future__ import annotations

import enum
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING

import networkx as nx
from networkx.algorithms import isomorphism

from alexcalc.errors import FormatError, NotWhite, VertexMissing
from alexcalc.spaces import UNKNOWN, Unknown

if TYPE_CHECKING:
    from alexcalc.catalog import Catalog
    from alexcalc.expr import SpaceExpr

logger = logging.getLogger(__name__)

EMPTY_LABEL = b"<empty>"


class Color(enum.StrEnum):
    BLACK = "black"
    WHITE = "white"


@dataclass(frozen=True)
class ColoredGraph:
    """Multigraph with black/white vertices; ``edges`` holds each edge once as a sorted pair."""

    vertices: tuple[tuple[str, Color], ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def build(cls, vertices, edges) -> ColoredGraph:
        verts = tuple(sorted((v, Color(c)) for v, c in vertices))
        ids = {v for v, _ in verts}
        if len(ids) != len(verts):
            raise FormatError("duplicate vertex id in graph")
        norm = []
        for u, v in edges:
            for x in (u, v):
                if x not in ids:
                    raise VertexMissing(f"edge endpoint {x!r} is not a vertex")
            norm.append((u, v) if u <= v else (v, u))
        return cls(verts, tuple(sorted(norm)))

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def color(self, v: str) -> Color:
        for vid, c in self.vertices:
            if vid == v:
                return c
        raise VertexMissing(f"no vertex {v!r}")

    def neighbors(self, v: str) -> list[str]:
        """Neighbors with multiplicity; a loop lists *v* twice."""
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            if b == v:
                out.append(a)
        return out

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def degree_law_violations(self) -> list[str]:
        problems = []
        for v, c in self.vertices:
            d = self.degree(v)
            if c is Color.WHITE and d != 1:
                problems.append(f"white vertex {v} has degree {d}")
            if c is Color.BLACK and d % 2:
                problems.append(f"black vertex {v} has odd degree {d}")
        for a, b in self.edges:
            if a == b and self.color(a) is Color.WHITE:
                problems.append(f"loop on white vertex {a}")
        return problems

    def satisfies_degree_law(self) -> bool:
        return not self.degree_law_violations()

    def relabel(self, prefix: str) -> ColoredGraph:
        return ColoredGraph(
            tuple((prefix + v, c) for v, c in self.vertices),
            tuple((prefix + a, prefix + b) for a, b in self.edges),
        )

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        for v, c in self.vertices:
            g.add_node(v, color=str(c))
        g.add_edges_from(self.edges)
        return g


def empty_graph() -> ColoredGraph:
    return ColoredGraph((), ())


def disjoint_union(*graphs: ColoredGraph, prefixes: list[str] | None = None) -> ColoredGraph:
    if prefixes is None:
        prefixes = [f"{i}." for i in range(len(graphs))]
    vertices: list[tuple[str, Color]] = []
    edges: list[tuple[str, str]] = []
    for g, p in zip(graphs, prefixes):
        r = g.relabel(p)
        vertices.extend(r.vertices)
        edges.extend(r.edges)
    return ColoredGraph.build(vertices, edges)


compose_s2 = disjoint_union


def glue_whites(g: ColoredGraph, wa: str, wb: str) -> ColoredGraph:
    """Delete whites *wa*, *wb* of *g* and join their neighbors by one edge."""
    for w in (wa, wb):
        if w not in g.vertex_ids:
            raise VertexMissing(f"no vertex {w!r}")
        if g.color(w) is not Color.WHITE:
            raise NotWhite(f"vertex {w!r} is not white")
    na, nb = g.neighbors(wa), g.neighbors(wb)
    if len(na) != 1 or len(nb) != 1:
        raise NotWhite("glued white vertices must have degree 1")
    if na[0] == wb:
        raise NotWhite(f"whites {wa!r} and {wb!r} are adjacent")

    edges = list(g.edges)
    edges.remove(tuple(sorted((wa, na[0]))))
    edges.remove(tuple(sorted((wb, nb[0]))))
    edges.append((na[0], nb[0]))
    vertices = [(v, c) for v, c in g.vertices if v not in (wa, wb)]
    return ColoredGraph.build(vertices, edges)


def compose_p2(ga: ColoredGraph, wa: str, gb: ColoredGraph, wb: str) -> ColoredGraph:
    """Graph after gluing along the planes collared by *wa* in *ga* and *wb* in *gb*.

    Vertices of the result are prefixed ``a.`` and ``b.``.
    """
    for g, w in ((ga, wa), (gb, wb)):
        if w not in g.vertex_ids:
            raise VertexMissing(f"no vertex {w!r}")
        if g.color(w) is not Color.WHITE:
            raise NotWhite(f"vertex {w!r} is not white")
    union = disjoint_union(ga, gb, prefixes=["a.", "b."])
    return glue_whites(union, "a." + wa, "b." + wb)


def has_degenerate_pair(g: ColoredGraph) -> bool:
    """Two blacks joined by at least two edges where one has no other incidences."""
    mult = Counter(e for e in g.edges if e[0] != e[1])
    for (u, v), m in mult.items():
        if m < 2:
            continue
        if g.color(u) is not Color.BLACK or g.color(v) is not Color.BLACK:
            continue
        if g.degree(u) == m or g.degree(v) == m:
            return True
    return False


def black_path_profile(g: ColoredGraph) -> tuple[int, ...] | None:
    """Pendant-white counts read along the black vertices when they form a simple path."""
    blacks = [v for v, c in g.vertices if c is Color.BLACK]
    if not blacks:
        return None
    adj: dict[str, list[str]] = {b: [] for b in blacks}
    pendants = Counter()
    for a, b in g.edges:
        ca, cb = g.color(a), g.color(b)
        if ca is Color.BLACK and cb is Color.BLACK:
            if a == b:
                return None
            adj[a].append(b)
            adj[b].append(a)
        elif ca is Color.BLACK:
            pendants[a] += 1
        elif cb is Color.BLACK:
            pendants[b] += 1
    ends = [b for b in blacks if len(adj[b]) <= 1]
    if any(len(adj[b]) > 2 for b in blacks) or (len(blacks) > 1 and len(ends) != 2):
        return None
    path = [min(ends)]
    while len(path) < len(blacks):
        nxt = [n for n in adj[path[-1]] if n not in path]
        if len(nxt) != 1:
            return None
        path.append(nxt[0])
    profile = tuple(pendants[b] for b in path)
    return min(profile, profile[::-1])


# ---------------------------------------------------------------------------
# canonical labeling: individualization-refinement with automorphism pruning
# ---------------------------------------------------------------------------


class _Labeler:
    def __init__(self, g: ColoredGraph):
        self.ids = list(g.vertex_ids)
        index = {v: i for i, v in enumerate(self.ids)}
        self.n = len(self.ids)
        self.colors = [0 if c is Color.BLACK else 1 for _, c in g.vertices]
        self.mult: list[dict[int, int]] = [defaultdict(int) for _ in range(self.n)]
        for a, b in g.edges:
            i, j = index[a], index[b]
            self.mult[i][j] += 1
            if i != j:
                self.mult[j][i] += 1
        twin_key = {}
        self.twin = []
        for v in range(self.n):
            key = (
                self.colors[v],
                self.mult[v].get(v, 0),
                tuple(sorted((u, m) for u, m in self.mult[v].items() if u != v)),
            )
            self.twin.append(twin_key.setdefault(key, v))
        self.best: tuple | None = None
        self.best_order: list[int] | None = None
        self.automorphisms: list[list[int]] = []
        self.leaves = 0

    def _refine(self, cells: list[list[int]]) -> list[list[int]]:
        changed = True
        while changed:
            changed = False
            cell_of = {}
            for i, c in enumerate(cells):
                for v in c:
                    cell_of[v] = i
            out = []
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                sig = {}
                for v in c:
                    agg: dict[int, int] = defaultdict(int)
                    for u, m in self.mult[v].items():
                        if u != v:
                            agg[cell_of[u]] += m
                    sig[v] = (self.mult[v].get(v, 0), tuple(sorted(agg.items())))
                keys = sorted(set(sig.values()))
                if len(keys) > 1:
                    changed = True
                for k in keys:
                    out.append([v for v in c if sig[v] == k])
            cells = out
        return cells

    def _encode(self, order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        edges = []
        for v in range(self.n):
            for u, m in self.mult[v].items():
                if pos[v] <= pos[u]:
                    edges.append((pos[v], pos[u], m))
        return (tuple(self.colors[v] for v in order), tuple(sorted(edges)))

    def _orbits(self, fixed: list[int], candidates: list[int]) -> dict[int, int]:
        parent = {v: v for v in range(self.n)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for perm in self.automorphisms:
            if all(perm[x] == x for x in fixed):
                for v in candidates:
                    a, b = find(v), find(perm[v])
                    if a != b:
                        parent[a] = b
        return {v: find(v) for v in candidates}

    def search(self, cells: list[list[int]], fixed: list[int]) -> None:
        cells = self._refine(cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self.leaves += 1
            order = [c[0] for c in cells]
            code = self._encode(order)
            if self.best is None or code < self.best:
                self.best, self.best_order = code, order
            elif code == self.best:
                perm = [0] * self.n
                for a, b in zip(self.best_order, order):
                    perm[a] = b
                self.automorphisms.append(perm)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in sorted(cell):
            if any(self.twin[u] == self.twin[v] for u in explored):
                continue
            if explored:
                orbit = self._orbits(fixed, cell)
                if any(orbit[u] == orbit[v] for u in explored):
                    continue
            rest = [u for u in cell if u != v]
            self.search(cells[:target] + [[v], rest] + cells[target + 1:], fixed + [v])
            explored.append(v)


def canonical_label(g: ColoredGraph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    if not g.vertices:
        return EMPTY_LABEL
    lab = _Labeler(g)
    initial = [
        [v for v in range(lab.n) if lab.colors[v] == 0],
        [v for v in range(lab.n) if lab.colors[v] == 1],
    ]
    lab.search([c for c in initial if c], [])
    logger.debug("canonical_label: %d vertices, %d leaves", lab.n, lab.leaves)
    colors, edges = lab.best
    text = "n=%d;c=%s;e=%s" % (
        lab.n,
        "".join("BW"[c] for c in colors),
        ",".join(f"{i}-{j}x{m}" for i, j, m in edges),
    )
    return text.encode("ascii")


def is_isomorphic(a: ColoredGraph, b: ColoredGraph) -> bool:
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    return nx.is_isomorphic(
        a.to_networkx(),
        b.to_networkx(),
        node_match=isomorphism.categorical_node_match("color", None),
    )


# ---------------------------------------------------------------------------
# exchange format
# ---------------------------------------------------------------------------


def format_adjacency(g: ColoredGraph) -> str:
    """One line per vertex: ``id color: neighbor,neighbor,...``."""
    lines = []
    for v, c in g.vertices:
        lines.append(f"{v} {c}: {','.join(sorted(g.neighbors(v)))}")
    return "\n".join(lines)


def parse_adjacency(text: str) -> ColoredGraph:
    vertices = []
    lists: dict[str, Counter] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2:
            raise FormatError(f"expected 'id color: neighbors', got {line!r}", lineno)
        vid, color = parts
        try:
            vertices.append((vid, Color(color)))
        except ValueError:
            raise FormatError(f"unknown color {color!r}", lineno) from None
        lists[vid] = Counter(n.strip() for n in tail.split(",") if n.strip())

    edges = []
    for v, counts in lists.items():
        for u, m in counts.items():
            if u not in lists:
                raise VertexMissing(f"neighbor {u!r} of {v!r} is not a vertex")
            if u == v:
                if m % 2:
                    raise FormatError(f"loop at {v!r} must be listed twice")
                edges.extend([(v, v)] * (m // 2))
            elif v < u:
                if lists[u][v] != m:
                    raise FormatError(f"asymmetric adjacency between {v!r} and {u!r}")
                edges.extend([(v, u)] * m)
    return ColoredGraph.build(vertices, edges)


def to_dot(g: ColoredGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, c in g.vertices:
        fill = "black" if c is Color.BLACK else "white"
        font = "white" if c is Color.BLACK else "black"
        lines.append(f'  "{v}" [style=filled, fillcolor={fill}, fontcolor={font}];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines)


def graph_of(e: SpaceExpr, catalog: Catalog | None = None) -> ColoredGraph | Unknown:
    """Graph of the manifold part of the normal form of *e*: one component per singular cluster."""
    from alexcalc.normalizer import normal_form

    nf = normal_form(e, catalog)
    graphs = [c.graph for c in nf.clusters]
    if any(g is None for g in graphs):
        return UNKNOWN
    return disjoint_union(*graphs, prefixes=[f"c{i}." for i in range(len(graphs))])
