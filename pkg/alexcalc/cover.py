"""Double branched covers of expressions and two-sheeted piece covers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import networkx as nx

from alexcalc.catalog import Catalog, default_catalog
from alexcalc.catalog_data import GLUING_COVER_TABLE, S2_PRODUCT
from alexcalc.errors import FormatError, InconsistentFlags, ManifoldInput
from alexcalc.expr import Atom, SpaceExpr, SumP2, SumS2, irreducible_from_flags, singular_count
from alexcalc.formatter import format_expr
from alexcalc.homology import h1
from alexcalc.normalizer import normal_form
from alexcalc.spaces import UNKNOWN, Tri, Unknown

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# symbolic covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Connected:
    """Preimage is connected; each ball downstairs lifts to two balls."""

    expr: SpaceExpr


@dataclass(frozen=True)
class _Split:
    """Preimage is two copies of *expr* (orientable manifold part)."""

    expr: SpaceExpr


def _sum(*parts: SpaceExpr) -> SpaceExpr:
    expr = parts[0]
    for p in parts[1:]:
        expr = SumS2(expr, p)
    return expr


def _lift(e: SpaceExpr, catalog: Catalog) -> _Connected | _Split | Unknown:
    match e:
        case Atom(spec):
            if spec.sites:
                if spec.cover is None:
                    return UNKNOWN
                return _Connected(catalog.sum_of(list(spec.cover)))
            if spec.flags.orientable is True:
                return _Split(e)
            if spec.flags.orientable is False and spec.orientation_cover is not None:
                return _Connected(Atom(catalog.atom(spec.orientation_cover)))
            return UNKNOWN
        case SumP2(left, _, right, _):
            la, lb = _lift(left, catalog), _lift(right, catalog)
            if la is UNKNOWN or lb is UNKNOWN:
                return UNKNOWN
            return _Connected(_sum(la.expr, lb.expr))
        case SumS2(left, right):
            la, lb = _lift(left, catalog), _lift(right, catalog)
            if la is UNKNOWN or lb is UNKNOWN:
                return UNKNOWN
            match la, lb:
                case _Split(), _Split():
                    return _Split(_sum(la.expr, lb.expr))
                case _Connected(), _Connected():
                    return _Connected(_sum(la.expr, lb.expr, Atom(catalog.atom(S2_PRODUCT))))
                case _Connected(), _Split():
                    return _Connected(_sum(la.expr, lb.expr, lb.expr))
                case _Split(), _Connected():
                    return _Connected(_sum(lb.expr, la.expr, la.expr))
    raise TypeError(f"not an expression: {e!r}")


def double_branched_cover(e: SpaceExpr, catalog: Catalog | None = None) -> SpaceExpr | Unknown:
    """Orientable manifold whose quotient by an involution with isolated fixed points is *e*.

    Returned in normal form.
    """
    if singular_count(e) == 0:
        raise ManifoldInput("a manifold has no double branched cover with isolated fixed points")
    catalog = catalog or default_catalog()
    lifted = _lift(e, catalog)
    if lifted is UNKNOWN:
        return UNKNOWN
    return normal_form(lifted.expr, catalog).as_expr()


def irreducibility_transfer(e: SpaceExpr, catalog: Catalog | None = None) -> Tri:
    """Irreducibility of *e* read through its cover; the two must agree when both are known."""
    if singular_count(e) == 0:
        return UNKNOWN
    own = irreducible_from_flags(e, catalog)
    cover = double_branched_cover(e, catalog)
    if cover is UNKNOWN:
        return own
    upstairs = irreducible_from_flags(cover, catalog)
    if own is UNKNOWN:
        return upstairs
    if upstairs is not UNKNOWN and upstairs != own:
        raise InconsistentFlags(
            f"declared irreducibility {own} disagrees with the cover's irreducibility {upstairs}"
        )
    return own


@dataclass(frozen=True)
class CoverCheck:
    subject: str
    expected: str
    computed: str

    @property
    def agrees(self) -> bool:
        return self.expected == self.computed


def cross_check_gluings(catalog: Catalog | None = None) -> list[CoverCheck]:
    """Compare the composition rule on each closed block gluing with the gluing of block covers."""
    catalog = catalog or default_catalog()
    checks = []
    for (a, b), names in GLUING_COVER_TABLE.items():
        space = catalog.glue(catalog.block(a), catalog.block(b))
        expected = normal_form(catalog.sum_of(names), catalog).as_expr()
        computed = double_branched_cover(space, catalog)
        checks.append(
            CoverCheck(
                subject=f"{a} u {b}",
                expected=f"{format_expr(expected)} / H1 {h1(expected)}",
                computed="unknown" if computed is UNKNOWN else f"{format_expr(computed)} / H1 {h1(computed)}",
            )
        )
    return checks


def cross_check_atoms(catalog: Catalog | None = None) -> list[CoverCheck]:
    """Every declared cover must be an orientable manifold with known H1."""
    catalog = catalog or default_catalog()
    checks = []
    for spec in catalog.atoms():
        if not spec.sites or spec.cover is None:
            continue
        parts = [catalog.atom(n) for n in spec.cover]
        ok = all(p.flags.manifold and p.flags.orientable is True and p.h1 is not None for p in parts)
        checks.append(
            CoverCheck(
                subject=spec.name,
                expected="orientable manifold with H1",
                computed="orientable manifold with H1" if ok else " # ".join(spec.cover),
            )
        )
    return checks


# ---------------------------------------------------------------------------
# two-sheeted piece covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    name: str
    sheets: int
    base: str | None = None

    @property
    def base_name(self) -> str:
        return self.base or self.name


@dataclass(frozen=True)
class PieceCover:
    """Pieces of a covering space, how their boundaries are matched, and the base gluing pattern.

    A boundary label ``x~k`` is the k-th degree-one lift of the base boundary ``x``;
    a bare ``x`` covers ``x`` with degree equal to the piece's sheet count.
    """

    pieces: tuple[Piece, ...]
    matches: tuple[tuple[str, str], ...] = ()
    base_matches: tuple[tuple[str, str], ...] = ()

    def piece(self, name: str) -> Piece | None:
        return next((p for p in self.pieces if p.name == name), None)


def _split_ref(ref: str) -> tuple[str, str]:
    name, sep, label = ref.partition(".")
    if not sep or not name or not label:
        raise FormatError(f"boundary reference {ref!r} must look like piece.boundary")
    return name, label


def _lift_label(label: str, piece: Piece) -> tuple[str, int]:
    """(base boundary label, degree) of a piece boundary label."""
    base_label, sep, k = label.partition("~")
    if sep:
        return base_label, 1
    return label, piece.sheets


def cover_problems(pc: PieceCover) -> list[str]:
    """Every violated degree or matching condition; empty when the description is a valid two-sheeted cover."""
    problems: list[str] = []
    if not pc.pieces:
        return ["no pieces"]
    names = [p.name for p in pc.pieces]
    if len(set(names)) != len(names):
        problems.append("duplicate piece names")
    for p in pc.pieces:
        if p.sheets not in (1, 2):
            problems.append(f"piece {p.name} has {p.sheets} sheets")

    degree_over: dict[str, int] = {}
    for p in pc.pieces:
        degree_over[p.base_name] = degree_over.get(p.base_name, 0) + p.sheets
    for base, total in sorted(degree_over.items()):
        if total != 2:
            problems.append(f"total degree over {base} is {total}")

    base_pairs: set[frozenset[str]] = set()
    base_boundaries: dict[str, set[str]] = {}
    for x, y in pc.base_matches:
        try:
            for ref in (x, y):
                bname, blabel = _split_ref(ref)
                base_boundaries.setdefault(bname, set()).add(blabel)
        except FormatError as exc:
            problems.append(exc.message)
            continue
        base_pairs.add(frozenset((x, y)))

    seen: set[str] = set()
    pair_degree: dict[frozenset[str], int] = {}
    lifts: dict[tuple[str, str], int] = {}
    graph = nx.Graph()
    graph.add_nodes_from(names)
    for a, b in pc.matches:
        if a == b:
            problems.append(f"boundary {a} is matched to itself")
            continue
        for ref in (a, b):
            if ref in seen:
                problems.append(f"boundary {ref} is matched twice")
            seen.add(ref)
        try:
            (pa, la), (pb, lb) = _split_ref(a), _split_ref(b)
        except FormatError as exc:
            problems.append(exc.message)
            continue
        piece_a, piece_b = pc.piece(pa), pc.piece(pb)
        if piece_a is None or piece_b is None:
            problems.append(f"match {a} {b} names an unknown piece")
            continue
        (xa, da), (xb, db) = _lift_label(la, piece_a), _lift_label(lb, piece_b)
        if da != db:
            problems.append(f"match {a} {b} joins degree {da} to degree {db}")
        base_pair = frozenset((f"{piece_a.base_name}.{xa}", f"{piece_b.base_name}.{xb}"))
        if base_pair not in base_pairs:
            problems.append(f"match {a} {b} does not lie over a base gluing")
        pair_degree[base_pair] = pair_degree.get(base_pair, 0) + da
        lifts[(pa, xa)] = lifts.get((pa, xa), 0) + da
        lifts[(pb, xb)] = lifts.get((pb, xb), 0) + db
        graph.add_edge(pa, pb)

    for pair in base_pairs:
        if pair_degree.get(pair, 0) != 2:
            shown = " ".join(sorted(pair))
            problems.append(f"base gluing {shown} is covered with degree {pair_degree.get(pair, 0)}")
    for p in pc.pieces:
        for label in sorted(base_boundaries.get(p.base_name, ())):
            got = lifts.get((p.name, label), 0)
            if got != p.sheets:
                problems.append(f"piece {p.name} lifts {p.base_name}.{label} with degree {got}, expected {p.sheets}")

    if names and not nx.is_connected(graph):
        problems.append("total space is not connected")
    return problems


def verify_two_sheeted(pc: PieceCover) -> bool:
    problems = cover_problems(pc)
    for msg in problems:
        logger.debug("verify_two_sheeted: %s", msg)
    return not problems


def refine_piece(pc: PieceCover, name: str) -> PieceCover:
    """Cut a two-sheeted piece into two one-sheeted halves that swap across a new interior surface."""
    piece = pc.piece(name)
    if piece is None:
        raise FormatError(f"no piece {name!r}")
    if piece.sheets != 2:
        raise FormatError(f"piece {name} has {piece.sheets} sheets, only two-sheeted pieces split")
    halves = (f"{name}_1", f"{name}_2")
    base = piece.base_name
    cut_in, cut_out = "cut+", "cut-"

    def relabel(ref: str) -> str:
        pname, label = _split_ref(ref)
        if pname != name:
            return ref
        base_label, sep, k = label.partition("~")
        if not sep or k not in ("1", "2"):
            raise FormatError(f"{ref} is not a single-sheet lift and cannot be split")
        return f"{halves[int(k) - 1]}.{base_label}"

    pieces = []
    for p in pc.pieces:
        if p.name == name:
            pieces += [replace(p, name=h, sheets=1, base=base) for h in halves]
        else:
            pieces.append(p)
    matches = [(relabel(a), relabel(b)) for a, b in pc.matches]
    matches += [
        (f"{halves[0]}.{cut_in}", f"{halves[1]}.{cut_out}"),
        (f"{halves[1]}.{cut_in}", f"{halves[0]}.{cut_out}"),
    ]
    base_matches = list(pc.base_matches) + [(f"{base}.{cut_in}", f"{base}.{cut_out}")]
    return PieceCover(tuple(pieces), tuple(matches), tuple(base_matches))


def parse_piece_cover(text: str) -> PieceCover:
    pieces, matches, base_matches = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        match parts:
            case ["piece", pname, "sheets", n]:
                base = None
            case ["piece", pname, "over", base, "sheets", n]:
                pass
            case ["match", a, b]:
                matches.append((a, b))
                continue
            case ["base-match", a, b]:
                base_matches.append((a, b))
                continue
            case _:
                raise FormatError(f"unrecognised line {line!r}", lineno)
        if "." in pname:
            raise FormatError(f"piece name {pname!r} may not contain '.'", lineno)
        try:
            sheets = int(n)
        except ValueError:
            raise FormatError(f"sheet count {n!r} is not an integer", lineno) from None
        pieces.append(Piece(pname, sheets, base))
    return PieceCover(tuple(pieces), tuple(matches), tuple(base_matches))


def format_piece_cover(pc: PieceCover) -> str:
    lines = []
    for p in pc.pieces:
        over = f" over {p.base}" if p.base else ""
        lines.append(f"piece {p.name}{over} sheets {p.sheets}")
    lines += [f"match {a} {b}" for a, b in pc.matches]
    lines += [f"base-match {a} {b}" for a, b in pc.base_matches]
    return "\n".join(lines) + "\n"
