"""Domain types shared by the catalog, the expression algebra and the invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from alexcalc.homology import AbelianGroup
    from alexcalc.p2graph import ColoredGraph


class Unknown(enum.Enum):
    """Third truth value: the engine cannot derive the answer from declared data."""

    UNKNOWN = "unknown"

    def __repr__(self) -> str:
        return "UNKNOWN"


UNKNOWN = Unknown.UNKNOWN

type Tri = bool | Unknown


def tri(value: bool | None) -> Tri:
    return UNKNOWN if value is None else value


class BoundaryKind(enum.StrEnum):
    SPHERE = "S2"
    PROJECTIVE_PLANE = "P2"
    TORUS = "T2"
    KLEIN_BOTTLE = "Kl"


@dataclass(frozen=True)
class BoundaryComponent:
    kind: BoundaryKind
    label: str


@dataclass(frozen=True)
class SingularSite:
    """A topologically singular point; its space of directions is always P2.

    ``h1_image`` is the class of the link generator in the owning atom's
    H1 generator basis, or None when unknown. ``vertex`` names the white
    vertex of the colored graph that collars this site's cone.
    """

    id: str
    h1_image: tuple[int, ...] | None = None
    vertex: str | None = None
    link: str = "P2"


@dataclass(frozen=True)
class AtomFlags:
    manifold: bool
    prime: bool | None = None
    irreducible: bool | None = None
    simply_connected: bool | None = None
    has_nonseparating_p2: bool | None = None
    orientable: bool | None = None
    amphichiral: bool = True


@dataclass(frozen=True)
class AtomSpec:
    """A closed space used as a leaf of expressions.

    ``cover`` lists manifold atom names whose connected sum is the double
    branched cover (singular atoms only).
    """

    name: str
    sites: tuple[SingularSite, ...]
    flags: AtomFlags
    h1: AbelianGroup | None = None
    cover: tuple[str, ...] | None = None
    orientation_cover: str | None = None
    graph: ColoredGraph | None = None
    opaque: bool = False

    @property
    def singular_count(self) -> int:
        return len(self.sites)

    @property
    def site_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.sites)

    def site(self, site_id: str) -> SingularSite | None:
        for s in self.sites:
            if s.id == site_id:
                return s
        return None


@dataclass(frozen=True)
class BlockSpec:
    """A compact space with non-empty boundary (manifold or singular block)."""

    name: str
    boundary: tuple[BoundaryComponent, ...]
    sites: tuple[SingularSite, ...] = ()
    double_cover: str | None = None
    involution_note: str = ""
    fixed_point_count: int = 0
    opaque: bool = field(default=False, compare=False)

    @property
    def singular_count(self) -> int:
        return len(self.sites)

    @property
    def p2_components(self) -> tuple[BoundaryComponent, ...]:
        return tuple(b for b in self.boundary if b.kind is BoundaryKind.PROJECTIVE_PLANE)

    @property
    def other_components(self) -> tuple[BoundaryComponent, ...]:
        return tuple(b for b in self.boundary if b.kind is not BoundaryKind.PROJECTIVE_PLANE)
