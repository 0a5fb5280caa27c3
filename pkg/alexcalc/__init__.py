"""alexcalc – symbolic calculus of closed three-dimensional Alexandrov spaces."""

from alexcalc.errors import AlexCalcError
from alexcalc.spaces import UNKNOWN, AtomSpec, BlockSpec, Unknown
from alexcalc.catalog import Catalog, default_catalog
from alexcalc.expr import (
    Atom,
    SiteRef,
    SpaceExpr,
    SumP2,
    SumS2,
    conn_sum_p2,
    conn_sum_s2,
    is_irreducible,
    is_prime,
    orientable,
    singular_count,
)
from alexcalc.homology import AbelianGroup, h1, h1_space, smith_normal_form
from alexcalc.p2graph import ColoredGraph, canonical_label, graph_of, is_isomorphic
from alexcalc.normalizer import Comparison, NormalForm, Verdict, distinguish, equivalent, normal_form
from alexcalc.cover import (
    PieceCover,
    double_branched_cover,
    parse_piece_cover,
    refine_piece,
    verify_two_sheeted,
)
from alexcalc.surgery import SurgeryDescription, filling_4d, parse_surgery, realize, surgery_skeleton
from alexcalc.invariants import InvariantReport, invariant_report
from alexcalc.parser import parse_expr
from alexcalc.formatter import (
    FMT_MACHINE,
    FMT_TEXT,
    format_ascii_table,
    format_catalog,
    format_comparison,
    format_expr,
    format_normal_form,
    format_report,
)
from alexcalc.randomized import random_expr, selftest

__all__ = [
    "AlexCalcError",
    "UNKNOWN",
    "AtomSpec",
    "BlockSpec",
    "Unknown",
    "Catalog",
    "default_catalog",
    "Atom",
    "SiteRef",
    "SpaceExpr",
    "SumP2",
    "SumS2",
    "conn_sum_p2",
    "conn_sum_s2",
    "is_irreducible",
    "is_prime",
    "orientable",
    "singular_count",
    "AbelianGroup",
    "h1",
    "h1_space",
    "smith_normal_form",
    "ColoredGraph",
    "canonical_label",
    "graph_of",
    "is_isomorphic",
    "Comparison",
    "NormalForm",
    "Verdict",
    "distinguish",
    "equivalent",
    "normal_form",
    "PieceCover",
    "double_branched_cover",
    "parse_piece_cover",
    "refine_piece",
    "verify_two_sheeted",
    "SurgeryDescription",
    "filling_4d",
    "parse_surgery",
    "realize",
    "surgery_skeleton",
    "InvariantReport",
    "invariant_report",
    "parse_expr",
    "FMT_MACHINE",
    "FMT_TEXT",
    "format_ascii_table",
    "format_catalog",
    "format_comparison",
    "format_expr",
    "format_normal_form",
    "format_report",
    "random_expr",
    "selftest",
]
