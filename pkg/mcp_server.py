"""MCP server exposing the Alexandrov-space calculus as tools."""

import json
import sys

from mcp.server.fastmcp import FastMCP

from alexcalc import (
    UNKNOWN,
    AlexCalcError,
    default_catalog,
    double_branched_cover,
    equivalent,
    format_expr,
    format_normal_form,
    invariant_report,
    normal_form,
    parse_expr,
)
from alexcalc.formatter import FMT_TEXT, catalog_rows, format_catalog, format_value

mcp = FastMCP(
    "alexcalc – Alexandrov Space Calculus",
    instructions=(
        "This server computes with closed three-dimensional Alexandrov spaces "
        "written as connected-sum expressions such as 'Susp(P2) # S3' or "
        "'Q #^{q1,q1} Q'. Use normalize for the normal prime decomposition, "
        "compare to decide homeomorphism with a certificate, invariants for the "
        "full invariant battery, cover for the double branched cover, "
        "enumerate_gluings for the block gluing classification, and get_catalog "
        "to discover the available atom and block names."
    ),
)


class _StdoutFilter:
    """Forward stdout but drop whitespace-only writes that would break JSON-RPC."""

    __slots__ = ("_real",)

    def __init__(self, real):
        self._real = real

    @property
    def buffer(self):
        return self._real.buffer

    def write(self, s: str):
        if s and s.strip() == "":
            return
        self._real.write(s)

    def flush(self):
        self._real.flush()

    def __getattr__(self, name):
        return getattr(self._real, name)


def _error(exc: AlexCalcError) -> str:
    payload = {"error": exc.message}
    if exc.span is not None:
        payload["span"] = list(exc.span)
    return json.dumps(payload)


@mcp.tool()
def normalize(expression: str) -> str:
    """Normal prime decomposition of a closed Alexandrov space expression.

    Args:
        expression: e.g. "double(B(pt))" or "Susp(P2) # S2xS1".
    """
    try:
        nf = normal_form(parse_expr(expression))
    except AlexCalcError as exc:
        return _error(exc)
    return json.dumps({
        "expression": expression,
        "normal_form": format_normal_form(nf),
        "manifold_summands": list(nf.manifold_summands),
        "s2_bundles": nf.s2_bundle_count,
        "clusters": [format_expr(c.representative) for c in nf.clusters],
    }, indent=2)


@mcp.tool()
def compare(left: str, right: str) -> str:
    """Decide whether two expressions describe homeomorphic spaces.

    The verdict is Yes, No (with the separating invariant as certificate) or Unknown.
    """
    try:
        comp = equivalent(parse_expr(left), parse_expr(right))
    except AlexCalcError as exc:
        return _error(exc)
    cert = comp.certificate
    return json.dumps({
        "verdict": str(comp.verdict),
        "certificate": None if cert is None else {
            "invariant": cert.invariant,
            "left": cert.left,
            "right": cert.right,
        },
    }, indent=2)


@mcp.tool()
def invariants(expression: str) -> str:
    """Singular count, orientability, H1, primality and related invariants of an expression."""
    try:
        report = invariant_report(parse_expr(expression))
    except AlexCalcError as exc:
        return _error(exc)
    return json.dumps({k: format_value(v) for k, v in report.pairs()}, indent=2)


@mcp.tool()
def cover(expression: str) -> str:
    """Double branched cover of a space with singular points, as a manifold expression."""
    try:
        result = double_branched_cover(parse_expr(expression))
    except AlexCalcError as exc:
        return _error(exc)
    return json.dumps({
        "expression": expression,
        "cover": "unknown" if result is UNKNOWN else format_expr(result),
    }, indent=2)


@mcp.tool()
def enumerate_gluings() -> str:
    """Every compatible pair of singular blocks glued along a common boundary, with its class."""
    catalog = default_catalog()
    rows = [
        {"left": a, "right": b, "result": format_normal_form(normal_form(e, catalog))}
        for (a, b), e in catalog.enumerate_gluings()
    ]
    return json.dumps({
        "gluings": rows,
        "classes": sorted({r["result"] for r in rows}),
    }, indent=2)


@mcp.tool()
def get_catalog(output_format: str = "json") -> str:
    """Return the catalog of atoms and blocks.

    Args:
        output_format: "json" for structured data, "text" for an ASCII table.
    """
    catalog = default_catalog()
    if output_format == FMT_TEXT:
        return format_catalog(catalog)
    keys = ("name", "kind", "sites", "data", "cover")
    return json.dumps([dict(zip(keys, row)) for row in catalog_rows(catalog)], indent=2, ensure_ascii=False)


def main() -> None:
    # stray whitespace on stdout corrupts the JSON-RPC stream
    sys.stdout = _StdoutFilter(sys.stdout)
    mcp.run()


if __name__ == "__main__":
    main()
