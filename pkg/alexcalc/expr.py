"""Connected-sum expressions with singular-site tracking, and the prime/irreducible predicates."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import TYPE_CHECKING

from alexcalc.catalog_data import S2_BUNDLE_NAMES, SUSPENSION
from alexcalc.errors import InconsistentFlags, SiteAlreadyConsumed, SiteNotFound
from alexcalc.spaces import UNKNOWN, AtomSpec, Tri, tri

if TYPE_CHECKING:
    from alexcalc.catalog import Catalog


@dataclass(frozen=True)
class SiteRef:
    """A site of the atom reached by *path* (0 = left, 1 = right) from an operand root."""

    path: tuple[int, ...]
    site_id: str


@dataclass(frozen=True)
class Atom:
    spec: AtomSpec


@dataclass(frozen=True)
class SumS2:
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class SumP2:
    left: SpaceExpr
    left_site: SiteRef
    right: SpaceExpr
    right_site: SiteRef


SpaceExpr = Atom | SumS2 | SumP2


@dataclass(frozen=True)
class Gluing:
    left_occurrence: int
    left_site: str
    right_occurrence: int
    right_site: str


@dataclass(frozen=True)
class Layout:
    """Flat view of an expression: atom occurrences in left-to-right order."""

    atoms: tuple[AtomSpec, ...]
    paths: tuple[tuple[int, ...], ...]
    gluings: tuple[Gluing, ...]
    available: tuple[tuple[int, str], ...]


def _resolve(lay: Layout, ref: SiteRef) -> tuple[int, str]:
    try:
        occ = lay.paths.index(ref.path)
    except ValueError:
        raise SiteNotFound(f"no atom at path {ref.path} for site {ref.site_id!r}") from None
    if lay.atoms[occ].site(ref.site_id) is None:
        raise SiteNotFound(f"atom {lay.atoms[occ].name} has no site {ref.site_id!r}")
    if (occ, ref.site_id) not in lay.available:
        raise SiteAlreadyConsumed(f"site {ref.site_id!r} of {lay.atoms[occ].name} is already consumed")
    return occ, ref.site_id


def _build_layout(e: SpaceExpr) -> Layout:
    match e:
        case Atom(spec):
            return Layout((spec,), ((),), (), tuple((0, s.id) for s in spec.sites))
        case SumS2(left, right) | SumP2(left, _, right, _):
            lo, ro = _build_layout(left), _build_layout(right)
            shift = len(lo.atoms)
            gluings = list(lo.gluings) + [
                Gluing(g.left_occurrence + shift, g.left_site, g.right_occurrence + shift, g.right_site)
                for g in ro.gluings
            ]
            left_free = list(lo.available)
            right_free = list(ro.available)
            if isinstance(e, SumP2):
                la = _resolve(lo, e.left_site)
                ra = _resolve(ro, e.right_site)
                left_free.remove(la)
                right_free.remove(ra)
                gluings.append(Gluing(la[0], la[1], ra[0] + shift, ra[1]))
            return Layout(
                lo.atoms + ro.atoms,
                tuple((0,) + p for p in lo.paths) + tuple((1,) + p for p in ro.paths),
                tuple(gluings),
                tuple(left_free) + tuple((o + shift, s) for o, s in right_free),
            )
    raise TypeError(f"not an expression: {e!r}")


@functools.lru_cache(maxsize=4096)
def layout(e: SpaceExpr) -> Layout:
    return _build_layout(e)


def atom(spec: AtomSpec) -> Atom:
    return Atom(spec)


def conn_sum_s2(a: SpaceExpr, b: SpaceExpr) -> SumS2:
    return SumS2(a, b)


def resolve_site(e: SpaceExpr, site_id: str, occurrence: int = 1) -> SiteRef:
    """The *occurrence*-th available site called *site_id*, counting left to right."""
    lay = layout(e)
    seen = 0
    for occ, sid in lay.available:
        if sid == site_id:
            seen += 1
            if seen == occurrence:
                return SiteRef(lay.paths[occ], sid)
    if any(a.site(site_id) for a in lay.atoms):
        raise SiteAlreadyConsumed(f"no free occurrence #{occurrence} of site {site_id!r}")
    raise SiteNotFound(f"no site {site_id!r}")


def site_occurrence(e: SpaceExpr, ref: SiteRef) -> int:
    """Inverse of resolve_site: position of *ref* among free sites with the same id."""
    lay = layout(e)
    occ = _resolve(lay, ref)[0]
    k = 0
    for o, sid in lay.available:
        if sid == ref.site_id:
            k += 1
            if o == occ:
                return k
    raise SiteNotFound(f"site {ref.site_id!r} is not free")


def conn_sum_p2(a: SpaceExpr, sa: SiteRef | str, b: SpaceExpr, sb: SiteRef | str) -> SumP2:
    if isinstance(sa, str):
        sa = resolve_site(a, sa)
    if isinstance(sb, str):
        sb = resolve_site(b, sb)
    node = SumP2(a, sa, b, sb)
    layout(node)
    return node


def available_sites(e: SpaceExpr) -> list[SiteRef]:
    lay = layout(e)
    return [SiteRef(lay.paths[occ], sid) for occ, sid in lay.available]


def singular_count(e: SpaceExpr) -> int:
    return len(layout(e).available)


def atoms_of(e: SpaceExpr) -> tuple[AtomSpec, ...]:
    return layout(e).atoms


def orientable(e: SpaceExpr) -> Tri:
    """Orientability of the manifold part; spaces with singular points are non-orientable."""
    if singular_count(e):
        return False
    values = [a.flags.orientable for a in atoms_of(e)]
    if False in values:
        return False
    if None in values:
        return UNKNOWN
    return True


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def _known_not_sphere(spec: AtomSpec) -> bool:
    if spec.sites:
        return True
    return not spec.opaque or (spec.h1 is not None and not spec.h1.is_trivial)


def _known_not_suspension(spec: AtomSpec) -> bool:
    return spec.singular_count != 2 or (not spec.opaque and spec.name != SUSPENSION)


def check_flags(spec: AtomSpec) -> None:
    if spec.flags.irreducible is True and spec.flags.prime is False:
        raise InconsistentFlags(f"{spec.name} is flagged irreducible but not prime")


def atom_irreducible(spec: AtomSpec) -> Tri:
    check_flags(spec)
    f = spec.flags
    if f.irreducible is not None:
        return f.irreducible
    if f.prime is False:
        return False
    if f.prime and f.has_nonseparating_p2 is False and spec.name not in S2_BUNDLE_NAMES:
        return True
    return UNKNOWN


def is_prime(e: SpaceExpr, catalog: Catalog | None = None) -> Tri:
    from alexcalc.normalizer import normal_form

    nf = normal_form(e, catalog)
    for spec in nf.all_members():
        check_flags(spec)
    pieces = nf.summands()
    if not pieces:
        return True
    if len(pieces) >= 2:
        known = sum(1 for p in pieces if all(_known_not_sphere(m) for m in p))
        return False if known >= 2 else UNKNOWN
    members = pieces[0]
    if len(members) == 1:
        return tri(members[0].flags.prime)
    return False if all(_known_not_suspension(m) for m in members) else UNKNOWN


def irreducible_from_flags(e: SpaceExpr, catalog: Catalog | None = None) -> Tri:
    """Irreducibility derived from declared flags only, without consulting covers."""
    from alexcalc.normalizer import normal_form

    nf = normal_form(e, catalog)
    pieces = nf.summands()
    if not pieces:
        return True
    if len(pieces) == 1 and len(pieces[0]) == 1:
        return atom_irreducible(pieces[0][0])
    prime = is_prime(e, catalog)
    return False if prime is False else UNKNOWN


def is_irreducible(e: SpaceExpr, catalog: Catalog | None = None) -> Tri:
    result = irreducible_from_flags(e, catalog)
    if result is UNKNOWN and singular_count(e) > 0:
        from alexcalc.cover import irreducibility_transfer

        return irreducibility_transfer(e, catalog)
    return result
