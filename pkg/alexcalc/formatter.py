"""Text rendering: expressions, normal forms, certificates, reports and ASCII tables."""

from __future__ import annotations

from typing import TYPE_CHECKING

from alexcalc.expr import Atom, SiteRef, SpaceExpr, SumP2, SumS2, site_occurrence
from alexcalc.spaces import UNKNOWN

if TYPE_CHECKING:
    from alexcalc.catalog import Catalog
    from alexcalc.invariants import InvariantReport
    from alexcalc.normalizer import Comparison, NormalForm

FMT_TEXT = "text"
FMT_MACHINE = "machine"


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


def _site_text(operand: SpaceExpr, ref: SiteRef) -> str:
    k = site_occurrence(operand, ref)
    return ref.site_id if k == 1 else f"{ref.site_id}@{k}"


def format_expr(e: SpaceExpr) -> str:
    """Canonical spacing; ``#^{..}`` binds tighter than ``#`` and both associate to the left."""
    match e:
        case Atom(spec):
            return spec.name
        case SumS2(left, right):
            rhs = format_expr(right)
            if isinstance(right, SumS2):
                rhs = f"({rhs})"
            return f"{format_expr(left)} # {rhs}"
        case SumP2(left, left_site, right, right_site):
            lhs, rhs = format_expr(left), format_expr(right)
            if isinstance(left, SumS2):
                lhs = f"({lhs})"
            if not isinstance(right, Atom):
                rhs = f"({rhs})"
            sites = f"{_site_text(left, left_site)},{_site_text(right, right_site)}"
            return f"{lhs} #^{{{sites}}} {rhs}"
    raise TypeError(f"not an expression: {e!r}")


def format_normal_form(nf: NormalForm) -> str:
    return format_expr(nf.as_expr())


# ---------------------------------------------------------------------------
# key/value blocks
# ---------------------------------------------------------------------------


def format_value(value) -> str:
    if value is UNKNOWN or value is None:
        return "unknown"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def format_machine(pairs: list[tuple[str, object]]) -> str:
    """Line-oriented ``key: value`` block."""
    return "\n".join(f"{k}: {format_value(v)}" for k, v in pairs)


def format_comparison(comp: Comparison, fmt: str = FMT_TEXT) -> str:
    cert = comp.certificate
    block = []
    if cert is not None:
        block = [
            ("certificate.invariant", cert.invariant),
            ("certificate.left", cert.left),
            ("certificate.right", cert.right),
        ]
    if fmt == FMT_MACHINE:
        return format_machine([("verdict", str(comp.verdict))] + block)
    head = str(comp.verdict)
    if cert is not None:
        head = f"{comp.verdict}: {cert.invariant} certificate"
    return "\n".join([head] + ([format_machine(block)] if block else []))


def format_report(report: InvariantReport, fmt: str = FMT_TEXT) -> str:
    pairs = report.pairs()
    if fmt == FMT_MACHINE:
        return format_machine(pairs)
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.replace('_', ' ').ljust(width)}  {format_value(v)}" for k, v in pairs)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def format_ascii_table(headers: list[str], rows: list[list], title: str | None = None) -> str:
    """Render *headers* and *rows* as a box-drawing ASCII table."""
    str_rows = [["" if c is None else format_value(c) for c in row] for row in rows]
    col_widths = [len(h) for h in headers]
    for row in str_rows:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(cell))

    def sep(left, mid, right, fill="─"):
        return left + mid.join(fill * (w + 2) for w in col_widths) + right

    def data_line(cells):
        parts = []
        for i, cell in enumerate(cells):
            if cell.isdigit():
                parts.append(cell.rjust(col_widths[i]))
            else:
                parts.append(cell.ljust(col_widths[i]))
        return "│ " + " │ ".join(parts) + " │"

    lines: list[str] = []
    if title:
        lines.append(title)
    lines.append(sep("┌", "┬", "┐"))
    lines.append(data_line(headers))
    lines.append(sep("├", "┼", "┤"))
    for row in str_rows:
        lines.append(data_line(row))
    lines.append(sep("└", "┴", "┘"))
    return "\n".join(lines)


def catalog_rows(catalog: Catalog) -> list[list]:
    rows = []
    for spec in catalog.atoms():
        rows.append(
            [
                spec.name,
                "atom",
                spec.singular_count,
                "" if spec.h1 is None else str(spec.h1),
                " # ".join(spec.cover) if spec.cover else "",
            ]
        )
    for block in catalog.blocks():
        rows.append(
            [
                block.name,
                "block",
                block.singular_count,
                "boundary " + ",".join(str(b.kind) for b in block.boundary),
                block.double_cover or "",
            ]
        )
    return rows


def format_catalog(catalog: Catalog, fmt: str = FMT_TEXT) -> str:
    rows = catalog_rows(catalog)
    if fmt == FMT_MACHINE:
        return "\n".join(
            format_machine([("name", r[0]), ("kind", r[1]), ("sites", r[2]), ("data", r[3]), ("cover", r[4])])
            + "\n"
            for r in rows
        ).rstrip("\n")
    return format_ascii_table(["Name", "Kind", "Sites", "H1 / boundary", "Cover"], rows, title="Catalog")


def format_gluings(gluings: list[tuple[tuple[str, str], SpaceExpr]], fmt: str = FMT_TEXT) -> str:
    if fmt == FMT_MACHINE:
        return "\n".join(f"{a} u {b}: {format_expr(e)}" for (a, b), e in gluings)
    return "\n".join(f"{a} u_K {b} -> {format_expr(e)}" for (a, b), e in gluings)
