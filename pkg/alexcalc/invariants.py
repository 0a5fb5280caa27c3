"""Invariant battery for one expression, collected into a report."""

from __future__ import annotations

from dataclasses import dataclass

from alexcalc.catalog import Catalog
from alexcalc.cover import double_branched_cover
from alexcalc.expr import SpaceExpr, is_irreducible, is_prime, orientable, singular_count
from alexcalc.formatter import format_expr, format_normal_form
from alexcalc.homology import AbelianGroup, h1, h1_space
from alexcalc.normalizer import normal_form
from alexcalc.p2graph import graph_of
from alexcalc.spaces import UNKNOWN, Tri, Unknown


def simply_connected(e: SpaceExpr, catalog: Catalog | None = None) -> Tri:
    """Decided from declared flags over the connected-sum layer, or refuted by H1 of the space."""
    space = h1_space(e)
    if space is not UNKNOWN and not space.is_trivial:
        return False
    pieces = normal_form(e, catalog).summands()
    if any(len(p) == 1 and p[0].flags.simply_connected is False for p in pieces):
        return False
    if all(len(p) == 1 and p[0].flags.simply_connected is True for p in pieces):
        return True
    return UNKNOWN


@dataclass(frozen=True)
class InvariantReport:
    normal_form: str
    singular_count: int
    orientable: Tri
    h1: AbelianGroup | Unknown
    h1_space: AbelianGroup | Unknown
    simply_connected: Tri
    prime: Tri
    irreducible: Tri
    graph: str | Unknown
    cover: str | Unknown | None

    def pairs(self) -> list[tuple[str, object]]:
        return [
            ("normal_form", self.normal_form),
            ("singular_count", self.singular_count),
            ("orientable", self.orientable),
            ("h1", self.h1),
            ("h1_space", self.h1_space),
            ("simply_connected", self.simply_connected),
            ("prime", self.prime),
            ("irreducible", self.irreducible),
            ("graph", self.graph),
            ("cover", "none" if self.cover is None else self.cover),
        ]


def invariant_report(e: SpaceExpr, catalog: Catalog | None = None) -> InvariantReport:
    n = singular_count(e)
    graph = UNKNOWN
    cover = None
    if n:
        g = graph_of(e, catalog)
        if g is not UNKNOWN:
            graph = f"{len(g.vertices)} vertices, {len(g.edges)} edges"
        c = double_branched_cover(e, catalog)
        cover = UNKNOWN if c is UNKNOWN else format_expr(c)
    return InvariantReport(
        normal_form=format_normal_form(normal_form(e, catalog)),
        singular_count=n,
        orientable=orientable(e),
        h1=h1(e),
        h1_space=h1_space(e),
        simply_connected=simply_connected(e, catalog),
        prime=is_prime(e, catalog),
        irreducible=is_irreducible(e, catalog),
        graph=graph,
        cover=cover,
    )
