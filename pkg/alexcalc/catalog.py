"""Catalog of blocks and closed atoms with capping, doubling and gluing."""

from __future__ import annotations

import functools
import json
import logging
import math
import re
from pathlib import Path

from alexcalc.catalog_data import (
    ATOM_RECORDS,
    BLOCK_GLUING_TABLE,
    BLOCK_RECORDS,
    CAPPING_TABLE,
    DOUBLING_TABLE,
    GLUING_BLOCKS,
    GLUING_TABLE,
    S2_BUNDLE_NAMES,
    S2_PRODUCT,
    SPHERE,
)
from alexcalc.errors import (
    AmbiguousBoundary,
    BoundaryMismatch,
    CatalogError,
    InvalidGenus,
    NoProjectivePlaneBoundary,
    NotClosed,
    UnknownName,
)
from alexcalc.expr import Atom, SpaceExpr, SumS2
from alexcalc.homology import AbelianGroup
from alexcalc.p2graph import Color, ColoredGraph
from alexcalc.spaces import (
    AtomFlags,
    AtomSpec,
    BlockSpec,
    BoundaryComponent,
    BoundaryKind,
    SingularSite,
)

logger = logging.getLogger(__name__)

XG_PATTERN = re.compile(r"^Xg\((\d+)\)$")
SURFACE_BUNDLE_PATTERN = re.compile(r"^F(\d+)xS1$")
LENS_PATTERN = re.compile(r"^L\((-?\d+),(-?\d+)\)$")
SURGERY_PATTERN = re.compile(
    r"^surgery\.(?:S3|S2~S1)(?:\.[A-Za-z][A-Za-z0-9_]*-(?:T-?\d+/\d+|K|P))*\.bpt(\d+)$"
)

_FLAG_FIELDS = ("manifold", "prime", "irreducible", "simply_connected", "has_nonseparating_p2", "orientable", "amphichiral")


# ---------------------------------------------------------------------------
# record parsing and validation
# ---------------------------------------------------------------------------


def _sites_from_record(rec: dict, line: int | None) -> tuple[SingularSite, ...]:
    sites = []
    for s in rec.get("sites", []):
        if "id" not in s:
            raise CatalogError(f"{rec.get('name')}: site without id", line)
        image = s.get("h1_image")
        sites.append(SingularSite(str(s["id"]), tuple(image) if image is not None else None, s.get("vertex")))
    if len({s.id for s in sites}) != len(sites):
        raise CatalogError(f"{rec.get('name')}: duplicate site ids", line)
    return tuple(sites)


def atom_from_record(rec: dict, line: int | None = None) -> AtomSpec:
    try:
        name = rec["name"]
        raw_flags = rec["flags"]
    except KeyError as exc:
        raise CatalogError(f"atom record missing field {exc}", line) from None
    unknown = set(raw_flags) - set(_FLAG_FIELDS)
    if unknown:
        raise CatalogError(f"{name}: unknown flags {sorted(unknown)}", line)
    h1 = None
    if rec.get("h1") is not None:
        try:
            h1 = AbelianGroup(int(rec["h1"].get("rank", 0)), tuple(rec["h1"].get("torsion", ())))
        except ValueError as exc:
            raise CatalogError(f"{name}: {exc}", line) from None
    graph = None
    if rec.get("graph") is not None:
        g = rec["graph"]
        graph = ColoredGraph.build([tuple(v) for v in g["vertices"]], [tuple(e) for e in g["edges"]])
    cover = rec.get("cover")
    spec = AtomSpec(
        name=name,
        sites=_sites_from_record(rec, line),
        flags=AtomFlags(**raw_flags),
        h1=h1,
        cover=tuple(cover) if cover is not None else None,
        orientation_cover=rec.get("orientation_cover"),
        graph=graph,
    )
    validate_atom(spec, line)
    return spec


def block_from_record(rec: dict, line: int | None = None) -> BlockSpec:
    name = rec.get("name")
    if not name:
        raise CatalogError("block record without name", line)
    try:
        kinds = [BoundaryKind(k) for k in rec.get("boundary", [])]
    except ValueError as exc:
        raise CatalogError(f"{name}: {exc}", line) from None
    spec = BlockSpec(
        name=name,
        boundary=tuple(BoundaryComponent(k, f"d{i}") for i, k in enumerate(kinds, start=1)),
        sites=_sites_from_record(rec, line),
        double_cover=rec.get("double_cover"),
        involution_note=rec.get("involution", ""),
        fixed_point_count=int(rec.get("fixed_points", 0)),
    )
    validate_block(spec, line)
    return spec


def validate_atom(spec: AtomSpec, line: int | None = None) -> None:
    """Reject atoms breaking parity, flag coherence, or graph/site consistency."""
    f = spec.flags
    if spec.singular_count % 2:
        raise CatalogError(f"{spec.name}: odd number of singular sites ({spec.singular_count})", line)
    if f.manifold != (spec.singular_count == 0):
        raise CatalogError(f"{spec.name}: manifold flag must hold exactly when there are no sites", line)
    if f.irreducible is True and f.prime is False:
        raise CatalogError(f"{spec.name}: irreducible implies prime", line)
    if (
        f.prime is True
        and f.irreducible is False
        and spec.name not in S2_BUNDLE_NAMES
        and f.has_nonseparating_p2 is not True
    ):
        raise CatalogError(
            f"{spec.name}: prime but not irreducible requires an S2 bundle or a non-separating P2", line
        )
    if spec.h1 is not None:
        for s in spec.sites:
            if s.h1_image is not None and len(s.h1_image) != spec.h1.generators:
                raise CatalogError(f"{spec.name}: site {s.id} image has the wrong length", line)
    if spec.graph is not None:
        problems = spec.graph.degree_law_violations()
        if problems:
            raise CatalogError(f"{spec.name}: {problems[0]}", line)
        whites = {v for v, c in spec.graph.vertices if c is Color.WHITE}
        site_vertices = [s.vertex for s in spec.sites]
        if None in site_vertices or set(site_vertices) != whites or len(whites) != len(site_vertices):
            raise CatalogError(f"{spec.name}: white vertices must correspond one-to-one with sites", line)


def validate_block(spec: BlockSpec, line: int | None = None) -> None:
    if not spec.boundary:
        raise CatalogError(f"{spec.name}: a block must have boundary", line)
    if (spec.singular_count + len(spec.p2_components)) % 2:
        raise CatalogError(f"{spec.name}: odd number of singular sites and P2 boundary components", line)
    expected = spec.singular_count if spec.sites else len(spec.p2_components)
    if spec.fixed_point_count != expected:
        raise CatalogError(
            f"{spec.name}: fixed point count {spec.fixed_point_count} does not match {expected}", line
        )


# ---------------------------------------------------------------------------
# parametric families
# ---------------------------------------------------------------------------


def hyperelliptic_fixed_points(g: int) -> int:
    """Fixed points of the hyperelliptic involution of F_g (Riemann-Hurwitz over S2)."""
    return 2 * 2 - (2 - 2 * g)


def xg_singular_count(g: int) -> int:
    # product involution on F_g x S1, conjugation fixing two points of S1,
    # minus the two sites consumed by the self-gluing
    return 2 * hyperelliptic_fixed_points(g) - 2


def xg_atom(g: int) -> AtomSpec:
    if not isinstance(g, int) or g < 1:
        raise InvalidGenus(f"genus must be a positive integer, got {g!r}")
    n = xg_singular_count(g)
    whites = [f"w{i}" for i in range(1, n + 1)]
    graph = ColoredGraph.build(
        [("b", Color.BLACK)] + [(w, Color.WHITE) for w in whites],
        [("b", "b")] + [("b", w) for w in whites],
    )
    return AtomSpec(
        name=f"Xg({g})",
        sites=tuple(SingularSite(f"x{i}", None, f"w{i}") for i in range(1, n + 1)),
        flags=AtomFlags(
            manifold=False,
            prime=True,
            irreducible=False,
            has_nonseparating_p2=True,
            orientable=False,
        ),
        cover=(f"F{g}xS1", S2_PRODUCT),
        graph=graph,
    )


def surface_bundle_atom(g: int) -> AtomSpec:
    if g < 1:
        raise InvalidGenus(f"genus must be a positive integer, got {g!r}")
    return AtomSpec(
        name=f"F{g}xS1",
        sites=(),
        flags=AtomFlags(True, True, True, False, False, True),
        h1=AbelianGroup(2 * g + 1),
    )


def lens_parameters(p: int, q: int) -> tuple[int, int]:
    """Canonical (p, q) for L(p, q) up to homeomorphism, mirrors identified."""
    if math.gcd(p, q) != 1:
        raise UnknownName(f"L({p},{q}) needs coprime parameters")
    p = abs(p)
    if p == 0:
        return 0, 1
    if p == 1:
        return 1, 0
    q %= p
    inv = pow(q, -1, p)
    return p, min(q, -q % p, inv, -inv % p)


def lens_atom(p: int, q: int) -> AtomSpec | None:
    """L(p, q); returns None for p in {0, 1}, which are S2xS1 and S3."""
    p, q = lens_parameters(p, q)
    if p <= 1:
        return None
    return AtomSpec(
        name=f"L({p},{q})",
        sites=(),
        flags=AtomFlags(True, True, True, False, False, True),
        h1=AbelianGroup(0, (p,)),
    )


def surgery_atom(name: str) -> AtomSpec | None:
    """Opaque realization of a surgery outside the known table, named by its description."""
    m = SURGERY_PATTERN.match(name)
    if m is None:
        return None
    n = 2 * int(m.group(1))
    return AtomSpec(
        name=name,
        sites=tuple(SingularSite(f"y{i}") for i in range(1, n + 1)),
        flags=AtomFlags(manifold=n == 0, orientable=False if n else None),
        opaque=True,
    )


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _renamed_sites(prefix: str, sites) -> tuple[SingularSite, ...]:
    return tuple(SingularSite(f"{prefix}{s.id}") for s in sites)


class Catalog:
    """Immutable registry of atoms and blocks."""

    def __init__(self, atoms: dict[str, AtomSpec], blocks: dict[str, BlockSpec], builtin: frozenset[str]):
        self._atoms = dict(atoms)
        self._blocks = dict(blocks)
        self._builtin = builtin

    @classmethod
    def builtin(cls) -> Catalog:
        atoms = {r["name"]: atom_from_record(r) for r in ATOM_RECORDS}
        blocks = {r["name"]: block_from_record(r) for r in BLOCK_RECORDS}
        return cls(atoms, blocks, frozenset(atoms) | frozenset(blocks))

    def merged(self, text: str) -> Catalog:
        """A new catalog with the JSON Lines records in *text* added."""
        atoms, blocks = dict(self._atoms), dict(self._blocks)
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CatalogError(f"invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(rec, dict):
                raise CatalogError("record must be a JSON object", lineno)
            name = rec.get("name")
            if name is not None and not isinstance(name, str):
                raise CatalogError(f"record name must be a string, got {name!r}", lineno)
            if name in self._builtin:
                raise CatalogError(f"{name} is built in and cannot be redefined", lineno)
            if name in atoms or name in blocks:
                raise CatalogError(f"{name} is defined twice", lineno)
            if self._parametric(name) is not None:
                raise CatalogError(f"{name} clashes with a parametric family", lineno)
            kind = rec.get("kind")
            if kind not in ("atom", "block"):
                raise CatalogError(f"unknown record kind {kind!r}", lineno)
            try:
                if kind == "atom":
                    atoms[name] = atom_from_record(rec, lineno)
                else:
                    blocks[name] = block_from_record(rec, lineno)
            except (KeyError, TypeError, AttributeError, ValueError) as exc:
                raise CatalogError(f"{name}: malformed {kind} record: {exc}", lineno) from None
            logger.debug("catalog: added %s %s", kind, name)
        logger.info(
            "catalog: %d atoms, %d blocks after merge",
            len(atoms),
            len(blocks),
        )
        return Catalog(atoms, blocks, self._builtin)

    @classmethod
    def load(cls, path: str | Path) -> Catalog:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Catalog file not found: {path}")
        return default_catalog().merged(path.read_text(encoding="utf-8"))

    def names(self) -> list[str]:
        return sorted(self._atoms) + sorted(self._blocks)

    def atoms(self) -> list[AtomSpec]:
        return [self._atoms[n] for n in sorted(self._atoms)]

    def blocks(self) -> list[BlockSpec]:
        return [self._blocks[n] for n in sorted(self._blocks)]

    def _parametric(self, name) -> AtomSpec | None:
        if not isinstance(name, str):
            return None
        if m := XG_PATTERN.match(name):
            return xg_atom(int(m.group(1)))
        if m := SURFACE_BUNDLE_PATTERN.match(name):
            return surface_bundle_atom(int(m.group(1)))
        if m := LENS_PATTERN.match(name):
            p, q = int(m.group(1)), int(m.group(2))
            atom = lens_atom(p, q)
            if atom is None:
                return self._atoms[S2_PRODUCT if p == 0 else SPHERE]
            return atom
        return surgery_atom(name)

    def lookup(self, name: str) -> AtomSpec | BlockSpec:
        if name in self._atoms:
            return self._atoms[name]
        if name in self._blocks:
            return self._blocks[name]
        spec = self._parametric(name)
        if spec is None:
            raise UnknownName(f"unknown atom or block {name!r}")
        return spec

    def atom(self, name: str) -> AtomSpec:
        spec = self.lookup(name)
        if isinstance(spec, BlockSpec):
            raise NotClosed(f"{name} has boundary and cannot appear in a closed expression")
        return spec

    def block(self, name: str) -> BlockSpec:
        spec = self.lookup(name)
        if not isinstance(spec, BlockSpec):
            raise NotClosed(f"{name} is a closed atom, not a block")
        return spec

    def sum_of(self, names: list[str]) -> SpaceExpr:
        """Left-associated connected sum of the named atoms."""
        expr: SpaceExpr = Atom(self.atom(names[0]))
        for n in names[1:]:
            expr = SumS2(expr, Atom(self.atom(n)))
        return expr

    # -- capping ---------------------------------------------------------

    def cap_off(self, block: BlockSpec) -> AtomSpec | BlockSpec:
        if not block.p2_components:
            raise NoProjectivePlaneBoundary(f"{block.name} has no projective plane boundary")
        if block.name in CAPPING_TABLE:
            return self.lookup(CAPPING_TABLE[block.name])
        added = tuple(SingularSite(f"c{i}") for i in range(1, len(block.p2_components) + 1))
        sites = block.sites + added
        name = f"cap({block.name})"
        if not block.other_components:
            logger.warning("cap_off: %s is outside the capping table, result is opaque", block.name)
            return AtomSpec(name=name, sites=sites, flags=AtomFlags(manifold=not sites, orientable=False), opaque=True)
        return BlockSpec(
            name=name,
            boundary=block.other_components,
            sites=sites,
            fixed_point_count=len(sites),
            opaque=True,
        )

    def _gluing_component(self, block: BlockSpec) -> BoundaryComponent:
        if len(block.boundary) == 1:
            return block.boundary[0]
        others = block.other_components
        if len(others) != 1:
            raise AmbiguousBoundary(
                f"{block.name} has {len(others)} candidate gluing components, expected exactly one"
            )
        return others[0]

    # -- doubling --------------------------------------------------------

    def double_along(self, block: BlockSpec) -> SpaceExpr:
        self._gluing_component(block)
        capped = self.cap_off(block) if len(block.boundary) > 1 else block
        for key in (block.name, capped.name):
            if key in DOUBLING_TABLE:
                return self.sum_of(DOUBLING_TABLE[key])
        logger.warning("double_along: %s is outside the doubling table, result is opaque", block.name)
        sites = _renamed_sites("a_", capped.sites) + _renamed_sites("b_", capped.sites)
        return Atom(
            AtomSpec(
                name=f"double({block.name})",
                sites=sites,
                flags=AtomFlags(manifold=not sites, orientable=False if sites else None),
                opaque=True,
            )
        )

    # -- gluing ----------------------------------------------------------

    def glue(self, a: BlockSpec, b: BlockSpec) -> SpaceExpr | BlockSpec:
        ca = self._gluing_component(a)
        cb = self._gluing_component(b)
        if ca.kind is not cb.kind:
            raise BoundaryMismatch(f"cannot glue {a.name} ({ca.kind}) to {b.name} ({cb.kind})")
        key = _pair(a.name, b.name)
        if key in BLOCK_GLUING_TABLE:
            return self.block(BLOCK_GLUING_TABLE[key])
        if key in GLUING_TABLE:
            return self.sum_of(GLUING_TABLE[key])

        logger.warning("glue: (%s, %s) is outside the gluing table, result is opaque", *key)
        first, second = (a, b) if a.name <= b.name else (b, a)
        sites = _renamed_sites("a_", first.sites) + _renamed_sites("b_", second.sites)
        name = f"glue({key[0]},{key[1]})"
        rest = [c for c in first.boundary if c is not ca and c is not cb]
        rest += [c for c in second.boundary if c is not ca and c is not cb]
        if rest:
            boundary = tuple(BoundaryComponent(c.kind, f"d{i}") for i, c in enumerate(rest, start=1))
            return BlockSpec(
                name=name,
                boundary=boundary,
                sites=sites,
                fixed_point_count=len(sites),
                opaque=True,
            )
        return Atom(
            AtomSpec(
                name=name,
                sites=sites,
                flags=AtomFlags(manifold=not sites, orientable=False if sites else None),
                opaque=True,
            )
        )

    def enumerate_gluings(self) -> list[tuple[tuple[str, str], SpaceExpr]]:
        """Every boundary-compatible unordered pair of the single-boundary blocks, in catalog order."""
        out = []
        for i, na in enumerate(GLUING_BLOCKS):
            for nb in GLUING_BLOCKS[i:]:
                a, b = self.block(na), self.block(nb)
                if a.boundary[0].kind is not b.boundary[0].kind:
                    continue
                out.append(((na, nb), self.glue(a, b)))
        return out

    def xg_atom(self, g: int) -> AtomSpec:
        return xg_atom(g)


@functools.cache
def default_catalog() -> Catalog:
    return Catalog.builtin()
