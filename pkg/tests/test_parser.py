import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexcalc.catalog import default_catalog
from alexcalc.errors import (
    ExprSyntaxError,
    InvalidGenus,
    NoProjectivePlaneBoundary,
    NotClosed,
    SiteAlreadyConsumed,
    SiteNotFound,
    UnknownName,
)
from alexcalc.expr import Atom, SiteRef, SumP2, SumS2
from alexcalc.formatter import format_expr
from alexcalc.parser import parse_expr
from alexcalc.randomized import random_expr


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


# ---------------------------------------------------------------------------
# accepted input
# ---------------------------------------------------------------------------

class TestParse:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("S3", "S3"),
            ("  T3#HW ", "T3 # HW"),
            ("Susp(P2)#^{north,south}Susp(P2)", "Susp(P2) #^{north,south} Susp(P2)"),
            ("cap(octopod)", "T3/beta"),
            ("glue(K(P2),K(P2))", "Susp(P2)"),
            ("Xg(3)", "Xg(3)"),
            ("L(5,3)", "L(5,2)"),
            ("L(0,1)", "S2xS1"),
            ("(S3 # T3)", "S3 # T3"),
        ],
    )
    def test_golden(self, catalog, text, expected):
        assert format_expr(parse_expr(text, catalog)) == expected

    def test_p2_sum_binds_tighter(self, catalog):
        e = parse_expr("S3 # Susp(P2) #^{north,north} Susp(P2)", catalog)
        assert isinstance(e, SumS2)
        assert isinstance(e.left, Atom)
        assert isinstance(e.right, SumP2)

    def test_sums_associate_left(self, catalog):
        e = parse_expr("S3 # T3 # HW", catalog)
        assert isinstance(e.left, SumS2)
        assert e.right.spec.name == "HW"

    def test_p2_sums_associate_left(self, catalog):
        e = parse_expr("Susp(P2) #^{south,north} Susp(P2) #^{south,north} Susp(P2)", catalog)
        assert isinstance(e, SumP2)
        assert isinstance(e.left, SumP2)
        assert e.left_site == SiteRef((1,), "south")

    def test_parentheses_override(self, catalog):
        e = parse_expr("S3 # (T3 # HW)", catalog)
        assert isinstance(e.right, SumS2)
        assert format_expr(e) == "S3 # (T3 # HW)"

    def test_occurrence_suffix(self, catalog):
        e = parse_expr("(Susp(P2) # Susp(P2)) #^{north@2,south} Susp(P2)", catalog)
        assert e.left_site == SiteRef((1,), "north")
        assert e.right_site == SiteRef((), "south")
        assert format_expr(e) == "(Susp(P2) # Susp(P2)) #^{north@2,south} Susp(P2)"

    def test_first_free_occurrence_is_the_default(self, catalog):
        e = parse_expr("(Susp(P2) # Susp(P2)) #^{north,south} Susp(P2)", catalog)
        assert e.left_site == SiteRef((0,), "north")

    def test_grammar_is_cached_per_catalog(self, catalog):
        assert parse_expr("T3", catalog) == parse_expr("T3", catalog)


# ---------------------------------------------------------------------------
# rejected input
# ---------------------------------------------------------------------------

class TestErrors:
    def test_empty(self, catalog):
        with pytest.raises(ExprSyntaxError) as exc:
            parse_expr("   ", catalog)
        assert exc.value.span == (0, 0)

    def test_unknown_name(self, catalog):
        with pytest.raises(UnknownName) as exc:
            parse_expr("Foo # S3", catalog)
        assert exc.value.span == (0, 3)

    def test_unknown_name_later_in_the_text(self, catalog):
        with pytest.raises(UnknownName) as exc:
            parse_expr("S3 # Foo", catalog)
        assert exc.value.span == (5, 8)

    def test_missing_site(self, catalog):
        with pytest.raises(SiteNotFound) as exc:
            parse_expr("Q #^{q9,q1} Q", catalog)
        assert exc.value.span == (5, 7)

    def test_missing_site_on_the_right(self, catalog):
        with pytest.raises(SiteNotFound) as exc:
            parse_expr("Q #^{q1,q9} Q", catalog)
        assert exc.value.span == (8, 10)

    def test_consumed_site(self, catalog):
        with pytest.raises(SiteAlreadyConsumed):
            parse_expr("(Susp(P2) #^{north,north} Susp(P2)) #^{north@2,south} Susp(P2)", catalog)

    def test_block_in_closed_expression(self, catalog):
        with pytest.raises(NotClosed) as exc:
            parse_expr("octopod", catalog)
        assert exc.value.span == (0, 7)

    def test_capping_that_leaves_boundary(self, catalog):
        with pytest.raises(NotClosed):
            parse_expr("cap(geminus)", catalog)

    def test_capping_without_projective_plane(self, catalog):
        with pytest.raises(NoProjectivePlaneBoundary) as exc:
            parse_expr("cap(D3)", catalog)
        assert exc.value.span == (0, 7)

    def test_invalid_genus(self, catalog):
        with pytest.raises(InvalidGenus) as exc:
            parse_expr("Xg(0)", catalog)
        assert exc.value.span == (0, 5)

    @pytest.mark.parametrize("text", ["S3 #", "(S3", "S3 #^{a} S3", "# S3", "S3 S3"])
    def test_syntax_errors(self, catalog, text):
        with pytest.raises(ExprSyntaxError) as exc:
            parse_expr(text, catalog)
        assert exc.value.span is not None


# ---------------------------------------------------------------------------
# printing then parsing
# ---------------------------------------------------------------------------

class TestRoundTrip:
    def test_seeded_expressions(self, catalog):
        rng = random.Random(7)
        for _ in range(1000):
            e = random_expr(rng, catalog)
            text = format_expr(e)
            assert parse_expr(text, catalog) == e, text

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=6))
    def test_format_is_a_fixed_point(self, seed, max_atoms):
        catalog = default_catalog()
        text = format_expr(random_expr(random.Random(seed), catalog, max_atoms=max_atoms))
        assert format_expr(parse_expr(text, catalog)) == text
