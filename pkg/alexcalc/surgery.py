"""Generalized Dehn surgery descriptions, their realization, and four-dimensional fillings."""

from __future__ import annotations

import enum
import logging
import math
import re
from dataclasses import dataclass

from alexcalc.catalog import Catalog, default_catalog
from alexcalc.catalog_data import S2_TWISTED, SPHERE, SUSPENSION
from alexcalc.errors import FormatError, IncompatibleFilling, NonCoprimeSlope, OddSingularCount
from alexcalc.expr import Atom, SpaceExpr, orientable, singular_count
from alexcalc.normalizer import normal_form
from alexcalc.spaces import AtomSpec

logger = logging.getLogger(__name__)

UNKNOT = "unknot"
PLACEHOLDER_ID = "L1"
COMPONENT_ID = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class Base(enum.StrEnum):
    S3 = "S3"
    TWISTED = "S2~S1"


class FillingKind(enum.StrEnum):
    TORUS = "torus"
    KLEIN_BOTTLE = "kleinbottle"
    PLACEHOLDER = "placeholder"


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    def normalized(self) -> Slope:
        """q >= 0, and 1/0 for the trivial filling; raises on non-coprime pairs."""
        if math.gcd(self.p, self.q) != 1:
            raise NonCoprimeSlope(f"slope {self.p}/{self.q} is not a coprime pair")
        if self.q < 0 or (self.q == 0 and self.p < 0):
            return Slope(-self.p, -self.q)
        return self

    @property
    def is_trivial(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class LinkComponent:
    id: str
    filling: FillingKind
    slope: Slope | None = None


@dataclass(frozen=True)
class SurgeryDescription:
    base: Base
    components: tuple[LinkComponent, ...] = ()
    bpt_sites: int = 0


@dataclass(frozen=True)
class FillingRecipe4D:
    base_4manifold: str
    two_handles: int
    y_pieces: int
    boundary_expr: SpaceExpr


def validate(d: SurgeryDescription) -> SurgeryDescription:
    """Check slopes and base/filling compatibility; returns the description with normalized slopes."""
    if d.bpt_sites < 0:
        raise IncompatibleFilling("bpt count must be non-negative")
    ids = [c.id for c in d.components]
    if len(set(ids)) != len(ids):
        raise IncompatibleFilling("link component ids must be distinct")
    for cid in ids:
        if not COMPONENT_ID.fullmatch(cid):
            raise IncompatibleFilling(f"component id {cid!r} must be a letter followed by letters, digits or _")
    components = []
    for c in d.components:
        match c.filling:
            case FillingKind.TORUS:
                if c.slope is None:
                    raise IncompatibleFilling(f"component {c.id}: torus filling needs a slope")
                components.append(LinkComponent(c.id, c.filling, c.slope.normalized()))
            case FillingKind.KLEIN_BOTTLE:
                if d.base is Base.S3:
                    raise IncompatibleFilling(
                        f"component {c.id}: knots in S3 have torus boundary, a solid Klein bottle cannot fill it"
                    )
                components.append(c)
            case _:
                components.append(c)
    if d.bpt_sites and d.base is not Base.TWISTED:
        raise IncompatibleFilling("B(pt) replacements need the twisted base")
    return SurgeryDescription(d.base, tuple(components), d.bpt_sites)


def surgery_name(d: SurgeryDescription) -> str:
    """Catalog name of an opaque realization, e.g. surgery.S3.trefoil-T1/1.bpt0."""
    parts = ["surgery", str(d.base)] + [_component_tag(c) for c in d.components] + [f"bpt{d.bpt_sites}"]
    return ".".join(parts)


def _component_tag(c: LinkComponent) -> str:
    match c.filling:
        case FillingKind.TORUS:
            return f"{c.id}-T{c.slope}"
        case FillingKind.KLEIN_BOTTLE:
            return f"{c.id}-K"
    return f"{c.id}-P"


def _opaque(d: SurgeryDescription, catalog: Catalog) -> AtomSpec:
    logger.warning("realize: %s is outside the known surgeries, result is opaque", format_surgery_inline(d))
    return catalog.atom(surgery_name(d))


def realize(d: SurgeryDescription, catalog: Catalog | None = None) -> SpaceExpr:
    catalog = catalog or default_catalog()
    d = validate(d)
    live = [c for c in d.components if not (c.filling is FillingKind.TORUS and c.slope.is_trivial)]
    match d.base, live, d.bpt_sites:
        case Base.S3, [], 0:
            return Atom(catalog.atom(SPHERE))
        case Base.TWISTED, [], 0:
            return Atom(catalog.atom(S2_TWISTED))
        case Base.TWISTED, [], 1:
            # the core solid Klein bottle replaced by B(pt)
            return Atom(catalog.atom(SUSPENSION))
        case Base.S3, [LinkComponent(id=cid, filling=FillingKind.TORUS, slope=slope)], 0 if cid == UNKNOT:
            return Atom(catalog.atom(f"L({slope.p},{slope.q})"))
    return Atom(_opaque(d, catalog))


def _known_description(e: SpaceExpr, catalog: Catalog) -> SurgeryDescription | None:
    nf = normal_form(e, catalog)
    table = [
        SurgeryDescription(Base.S3),
        SurgeryDescription(Base.TWISTED),
        SurgeryDescription(Base.TWISTED, (), 1),
    ]
    for d in table:
        if normal_form(realize(d, catalog), catalog) == nf:
            return d
    pieces = nf.all_members()
    if len(pieces) == 1 and not pieces[0].sites:
        name = pieces[0].name
        if name.startswith("L(") or name == "S2xS1":
            p, q = (int(x) for x in name[2:-1].split(",")) if name.startswith("L(") else (0, 1)
            return SurgeryDescription(Base.S3, (LinkComponent(UNKNOT, FillingKind.TORUS, Slope(p, q)),))
    return None


def surgery_skeleton(e: SpaceExpr, catalog: Catalog | None = None) -> SurgeryDescription:
    """Base and bpt count of a surgery presentation of *e*; the link is a placeholder unless known."""
    catalog = catalog or default_catalog()
    n = singular_count(e)
    if n % 2:
        raise OddSingularCount(f"{n} singular points; a closed space has an even number")
    known = _known_description(e, catalog)
    if known is not None:
        return known
    base = Base.S3 if n == 0 and orientable(e) is True else Base.TWISTED
    return SurgeryDescription(base, (LinkComponent(PLACEHOLDER_ID, FillingKind.PLACEHOLDER),), n // 2)


def filling_4d(e: SpaceExpr, catalog: Catalog | None = None) -> FillingRecipe4D:
    skeleton = surgery_skeleton(e, catalog)
    handles = len(skeleton.components)
    ball = "D4" if skeleton.base is Base.S3 else "S1x~D3"
    return FillingRecipe4D(
        base_4manifold=f"{ball} + {handles} two-handle(s)",
        two_handles=handles,
        y_pieces=singular_count(e) // 2,
        boundary_expr=e,
    )


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def parse_surgery(text: str) -> SurgeryDescription:
    base = None
    components = []
    bpt = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match line.split():
            case ["base", name]:
                try:
                    base = Base(name)
                except ValueError:
                    raise FormatError(f"unknown base {name!r}", lineno) from None
            case ["component", cid, "torus", slope]:
                p, sep, q = slope.partition("/")
                try:
                    components.append(LinkComponent(cid, FillingKind.TORUS, Slope(int(p), int(q))))
                except ValueError:
                    raise FormatError(f"slope {slope!r} must look like p/q", lineno) from None
                if not sep:
                    raise FormatError(f"slope {slope!r} must look like p/q", lineno)
            case ["component", cid, "kleinbottle"]:
                components.append(LinkComponent(cid, FillingKind.KLEIN_BOTTLE))
            case ["component", cid, "placeholder"]:
                components.append(LinkComponent(cid, FillingKind.PLACEHOLDER))
            case ["bpt", count]:
                try:
                    bpt = int(count)
                except ValueError:
                    raise FormatError(f"bpt count {count!r} is not an integer", lineno) from None
            case _:
                raise FormatError(f"unrecognised line {line!r}", lineno)
    if base is None:
        raise FormatError("missing base line")
    return SurgeryDescription(base, tuple(components), bpt)


def _component_text(c: LinkComponent) -> str:
    if c.filling is FillingKind.TORUS:
        return f"{c.id} torus {c.slope}"
    return f"{c.id} {c.filling}"


def format_surgery(d: SurgeryDescription) -> str:
    lines = [f"base {d.base}"]
    lines += [f"component {_component_text(c)}" for c in d.components]
    lines.append(f"bpt {d.bpt_sites}")
    return "\n".join(lines) + "\n"


def format_surgery_inline(d: SurgeryDescription) -> str:
    parts = [str(d.base)] + [_component_text(c) for c in d.components] + [f"bpt {d.bpt_sites}"]
    return "; ".join(parts)
