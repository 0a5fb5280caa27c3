"""Normal prime decomposition by rewriting, plus the equivalence front-end.

The expression is flattened into atom occurrences joined by P2 gluings.
Rewriting works on that flat view:

    R1  drop S3 summands
    R2  absorb a Susp(P2) that is glued to something else; the site on the
        other side stays alive (or is reconnected when both poles were used)
    R3' S2xS1 becomes S2~S1 once the total space is non-orientable
    R3  sort the manifold summands

Each connected set of glued singular atoms is a cluster, keyed by its
sorted atom names and the canonical label of its colored graph.
"""

from __future__ import annotations

import enum
import functools
import logging
import random
from dataclasses import dataclass, field

from alexcalc.catalog_data import S2_BUNDLE_NAMES, S2_TWISTED, SPHERE, SUSPENSION
from alexcalc.errors import FuelExhausted
from alexcalc.expr import Atom, SiteRef, SpaceExpr, SumP2, SumS2, layout, orientable, singular_count
from alexcalc.homology import h1
from alexcalc.p2graph import (
    ColoredGraph,
    canonical_label,
    disjoint_union,
    glue_whites,
    graph_of,
    has_degenerate_pair,
)
from alexcalc.spaces import UNKNOWN, AtomSpec, Unknown

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 10_000


@dataclass(frozen=True)
class Cluster:
    atoms: tuple[str, ...]
    canonical: str
    graph: ColoredGraph | None = field(default=None, compare=False)
    representative: SpaceExpr | None = field(default=None, compare=False)
    members: tuple[AtomSpec, ...] = field(default=(), compare=False)

    @property
    def sort_key(self) -> tuple[tuple[str, ...], str]:
        return self.atoms, self.canonical


@dataclass(frozen=True)
class NormalForm:
    """Manifold summands, copies of S2~S1, then singular clusters; equality is identity of normal forms."""

    manifold_summands: tuple[str, ...]
    s2_bundle_count: int
    clusters: tuple[Cluster, ...]
    manifold_specs: tuple[AtomSpec, ...] = field(default=(), compare=False)
    s2_bundle_spec: AtomSpec | None = field(default=None, compare=False)
    sphere_spec: AtomSpec | None = field(default=None, compare=False)

    def summands(self) -> list[list[AtomSpec]]:
        pieces = [[spec] for spec in self.manifold_specs]
        pieces += [[self.s2_bundle_spec] for _ in range(self.s2_bundle_count)]
        pieces += [list(c.members) for c in self.clusters]
        return pieces

    def all_members(self) -> list[AtomSpec]:
        return [m for piece in self.summands() for m in piece]

    def as_expr(self) -> SpaceExpr:
        parts: list[SpaceExpr] = [Atom(spec) for spec in self.manifold_specs]
        parts += [Atom(self.s2_bundle_spec) for _ in range(self.s2_bundle_count)]
        parts += [c.representative for c in self.clusters]
        if not parts:
            return Atom(self.sphere_spec)
        expr = parts[0]
        for p in parts[1:]:
            expr = SumS2(expr, p)
        return expr


# ---------------------------------------------------------------------------
# rewriting on the flat view
# ---------------------------------------------------------------------------


type SiteKey = tuple[int, str]


class _State:
    def __init__(self, e: SpaceExpr):
        lay = layout(e)
        self.atoms: dict[int, AtomSpec] = dict(enumerate(lay.atoms))
        self.links: dict[SiteKey, SiteKey] = {}
        for g in lay.gluings:
            a = (g.left_occurrence, g.left_site)
            b = (g.right_occurrence, g.right_site)
            self.links[a] = b
            self.links[b] = a

    def linked_sites(self, occ: int) -> list[tuple[str, SiteKey]]:
        spec = self.atoms[occ]
        return [(s, self.links[(occ, s)]) for s in spec.site_ids if (occ, s) in self.links]

    def candidates(self) -> list[tuple[str, int]]:
        out = []
        for occ, spec in self.atoms.items():
            if spec.name == SPHERE and not spec.sites:
                out.append(("R1", occ))
            elif spec.name == SUSPENSION and not spec.opaque and self.linked_sites(occ):
                out.append(("R2", occ))
        return out

    def apply(self, rule: str, occ: int) -> None:
        if rule == "R2":
            linked = self.linked_sites(occ)
            for s, other in linked:
                del self.links[(occ, s)]
                del self.links[other]
            if len(linked) == 2:
                x, y = linked[0][1], linked[1][1]
                self.links[x] = y
                self.links[y] = x
        del self.atoms[occ]

    def components(self) -> list[list[int]]:
        parent = {occ: occ for occ in self.atoms}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, _), (b, _) in self.links.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for occ in sorted(self.atoms):
            groups.setdefault(find(occ), []).append(occ)
        return list(groups.values())


def _rewrite(state: _State, rng: random.Random | None, fuel: int) -> None:
    steps = 0
    while True:
        candidates = state.candidates()
        if not candidates:
            return
        if steps >= fuel:
            raise FuelExhausted(f"normalization did not finish within {fuel} rewrites")
        rule, occ = rng.choice(candidates) if rng is not None else candidates[0]
        logger.debug("rewrite %s on %s (occurrence %d)", rule, state.atoms[occ].name, occ)
        state.apply(rule, occ)
        steps += 1


# ---------------------------------------------------------------------------
# clusters
# ---------------------------------------------------------------------------


class _Tree:
    """One cluster: a tree of occurrences whose edges are gluings."""

    def __init__(self, state: _State, occs: list[int]):
        self.atoms = {occ: state.atoms[occ] for occ in occs}
        self.adj: dict[int, list[tuple[str, int, str]]] = {occ: [] for occ in occs}
        for (a, sa), (b, sb) in state.links.items():
            if a in self.adj:
                self.adj[a].append((sa, b, sb))
        self._codes: dict[tuple[int, int | None], str] = {}

    def encode(self, v: int, parent: int | None) -> str:
        """Rooted structure key: atom name, then sorted (site>site:child) entries."""
        key = (v, parent)
        if key not in self._codes:
            parts = sorted(f"{ms}>{os}:{self.encode(u, v)}" for ms, u, os in self.adj[v] if u != parent)
            self._codes[key] = f"{self.atoms[v].name}[{','.join(parts)}]"
        return self._codes[key]

    def root(self) -> int:
        return min(self.atoms, key=lambda v: (self.encode(v, None), v))

    def assemble(self, v: int, parent: int | None) -> tuple[SpaceExpr, tuple[int, ...], list[AtomSpec]]:
        expr: SpaceExpr = Atom(self.atoms[v])
        path: tuple[int, ...] = ()
        members = [self.atoms[v]]
        children = sorted(
            ((ms, u, os) for ms, u, os in self.adj[v] if u != parent),
            key=lambda c: (c[0], c[2], self.encode(c[1], v)),
        )
        for ms, u, os in children:
            child, child_path, child_members = self.assemble(u, v)
            expr = SumP2(expr, SiteRef(path, ms), child, SiteRef(child_path, os))
            path = (0,) + path
            members += child_members
        return expr, path, members

    def graph(self) -> ColoredGraph | None:
        occs = sorted(self.atoms)
        graphs = [self.atoms[o].graph for o in occs]
        if any(g is None for g in graphs):
            return None
        g = disjoint_union(*graphs, prefixes=[f"o{o}." for o in occs])
        for a, edges in self.adj.items():
            for sa, b, sb in edges:
                if (a, sa) < (b, sb):
                    va = self.atoms[a].site(sa).vertex
                    vb = self.atoms[b].site(sb).vertex
                    g = glue_whites(g, f"o{a}.{va}", f"o{b}.{vb}")
        if has_degenerate_pair(g):
            logger.debug("cluster graph has a degenerate black pair, graph left unknown")
            return None
        return g


def _cluster(state: _State, occs: list[int]) -> Cluster:
    tree = _Tree(state, occs)
    root = tree.root()
    representative, _, members = tree.assemble(root, None)
    graph = tree.graph()
    if graph is not None:
        canonical = "graph:" + canonical_label(graph).decode("ascii")
    else:
        canonical = "tree:" + tree.encode(root, None)
    return Cluster(
        atoms=tuple(sorted(m.name for m in members)),
        canonical=canonical,
        graph=graph,
        representative=representative,
        members=tuple(members),
    )


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------


def normal_form(e: SpaceExpr, catalog=None, *, rng: random.Random | None = None, fuel: int | None = None) -> NormalForm:
    if catalog is None:
        from alexcalc.catalog import default_catalog

        catalog = default_catalog()
    if rng is None and fuel is None:
        return _normal_form_cached(e, catalog)
    return _normal_form(e, catalog, rng, DEFAULT_FUEL if fuel is None else fuel)


@functools.lru_cache(maxsize=2048)
def _normal_form_cached(e: SpaceExpr, catalog) -> NormalForm:
    return _normal_form(e, catalog, None, DEFAULT_FUEL)


def _normal_form(e: SpaceExpr, catalog, rng: random.Random | None, fuel: int) -> NormalForm:
    state = _State(e)
    _rewrite(state, rng, fuel)

    manifolds: list[AtomSpec] = []
    clusters: list[Cluster] = []
    for occs in state.components():
        spec = state.atoms[occs[0]]
        if len(occs) == 1 and not spec.sites:
            manifolds.append(spec)
        else:
            clusters.append(_cluster(state, occs))

    non_orientable = bool(clusters) or any(m.flags.orientable is False for m in manifolds)
    bundles = 0
    if non_orientable:
        # R3': N # S2xS1 = N # S2~S1 for non-orientable N
        bundles = sum(1 for m in manifolds if m.name in S2_BUNDLE_NAMES)
        if bundles:
            logger.debug("rewrite R3' on %d S2 bundle summand(s)", bundles)
        manifolds = [m for m in manifolds if m.name not in S2_BUNDLE_NAMES]

    manifolds.sort(key=lambda m: m.name)
    clusters.sort(key=lambda c: c.sort_key)
    return NormalForm(
        manifold_summands=tuple(m.name for m in manifolds),
        s2_bundle_count=bundles,
        clusters=tuple(clusters),
        manifold_specs=tuple(manifolds),
        s2_bundle_spec=catalog.atom(S2_TWISTED),
        sphere_spec=catalog.atom(SPHERE),
    )


# ---------------------------------------------------------------------------
# equivalence and distinguishing
# ---------------------------------------------------------------------------


class Verdict(enum.StrEnum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    """An invariant that takes different values on the two sides."""

    invariant: str
    left: str
    right: str


@dataclass(frozen=True)
class Inconclusive:
    checked: tuple[str, ...]


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    certificate: Certificate | None = None


INV_SINGULAR_COUNT = "singular count"
INV_ORIENTABILITY = "orientability"
INV_H1 = "H1"
INV_GRAPH = "colored P2-graph"
INV_COVER_H1 = "cover H1"

BATTERY = (INV_SINGULAR_COUNT, INV_ORIENTABILITY, INV_H1, INV_GRAPH, INV_COVER_H1)


def _value(invariant: str, e: SpaceExpr, catalog) -> str | Unknown:
    from alexcalc.cover import double_branched_cover

    if invariant == INV_SINGULAR_COUNT:
        return str(singular_count(e))
    if invariant == INV_ORIENTABILITY:
        o = orientable(e)
        return UNKNOWN if o is UNKNOWN else ("orientable" if o else "non-orientable")
    if invariant == INV_H1:
        g = h1(e)
        return UNKNOWN if g is UNKNOWN else str(g)
    if singular_count(e) == 0:
        # graph and cover are only defined for singular spaces
        return UNKNOWN
    if invariant == INV_GRAPH:
        g = graph_of(e, catalog)
        return UNKNOWN if g is UNKNOWN else canonical_label(g).decode("ascii")
    if invariant == INV_COVER_H1:
        cov = double_branched_cover(e, catalog)
        if cov is UNKNOWN:
            return UNKNOWN
        g = h1(cov)
        return UNKNOWN if g is UNKNOWN else str(g)
    raise ValueError(f"unknown invariant {invariant!r}")


def distinguish(a: SpaceExpr, b: SpaceExpr, catalog=None) -> Certificate | Inconclusive:
    """First invariant of the battery that separates *a* from *b*."""
    checked = []
    for invariant in BATTERY:
        va, vb = _value(invariant, a, catalog), _value(invariant, b, catalog)
        if va is UNKNOWN or vb is UNKNOWN:
            continue
        checked.append(invariant)
        if va != vb:
            logger.debug("distinguish: %s separates (%s vs %s)", invariant, va, vb)
            return Certificate(invariant, va, vb)
    return Inconclusive(tuple(checked))


def equivalent(a: SpaceExpr, b: SpaceExpr, catalog=None) -> Comparison:
    if normal_form(a, catalog) == normal_form(b, catalog):
        return Comparison(Verdict.YES)
    result = distinguish(a, b, catalog)
    if isinstance(result, Certificate):
        return Comparison(Verdict.NO, result)
    return Comparison(Verdict.UNKNOWN)
