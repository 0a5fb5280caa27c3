import json

import pytest

from alexcalc.catalog import (
    Catalog,
    default_catalog,
    hyperelliptic_fixed_points,
    lens_parameters,
    validate_atom,
    validate_block,
    xg_atom,
    xg_singular_count,
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
from alexcalc.formatter import format_normal_form
from alexcalc.homology import AbelianGroup
from alexcalc.normalizer import normal_form
from alexcalc.spaces import AtomSpec, BlockSpec, BoundaryComponent, BoundaryKind

POINCARE = {
    "kind": "atom",
    "name": "Poincare",
    "sites": [],
    "h1": {"rank": 0, "torsion": []},
    "flags": {"manifold": True, "prime": True, "irreducible": True, "simply_connected": False, "orientable": True},
}


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def _nf(catalog, expr) -> str:
    return format_normal_form(normal_form(expr, catalog))


# ---------------------------------------------------------------------------
# built-in entries
# ---------------------------------------------------------------------------

class TestBuiltin:
    def test_every_atom_has_even_singular_count(self, catalog):
        for spec in catalog.atoms():
            assert spec.singular_count % 2 == 0, spec.name

    def test_every_block_passes_validation(self, catalog):
        for block in catalog.blocks():
            validate_block(block)

    def test_names_cover_atoms_and_blocks(self, catalog):
        names = catalog.names()
        for n in ("S3", "Susp(P2)", "T3/beta", "Q", "octopod", "B(pt)", "K(P2)"):
            assert n in names

    def test_unknown_name(self, catalog):
        with pytest.raises(UnknownName):
            catalog.lookup("Poincare")

    def test_block_is_not_an_atom(self, catalog):
        with pytest.raises(NotClosed):
            catalog.atom("octopod")

    def test_atom_is_not_a_block(self, catalog):
        with pytest.raises(NotClosed):
            catalog.block("S3")

    def test_sum_of_is_left_associated(self, catalog):
        e = catalog.sum_of(["S3", "T3", "HW"])
        assert e.right.spec.name == "HW"
        assert e.left.left.spec.name == "S3"


# ---------------------------------------------------------------------------
# capping
# ---------------------------------------------------------------------------

class TestCapping:
    def test_geminus_caps_to_bpt(self, catalog):
        assert catalog.cap_off(catalog.block("geminus")).name == "B(pt)"

    def test_octopod_caps_to_t3_beta(self, catalog):
        capped = catalog.cap_off(catalog.block("octopod"))
        assert isinstance(capped, AtomSpec)
        assert capped.name == "T3/beta"
        assert capped.singular_count == 8

    def test_quadripus_caps_to_bs4(self, catalog):
        assert catalog.cap_off(catalog.block("quadripus")).name == "B(S4)"

    def test_no_projective_plane_boundary(self, catalog):
        with pytest.raises(NoProjectivePlaneBoundary):
            catalog.cap_off(catalog.block("D3"))

    def test_untabled_block_caps_to_opaque_block(self, catalog):
        capped = catalog.cap_off(catalog.block("dipus"))
        assert isinstance(capped, BlockSpec)
        assert capped.opaque
        assert capped.name == "cap(dipus)"
        assert [b.kind for b in capped.boundary] == [BoundaryKind.KLEIN_BOTTLE]
        assert [s.id for s in capped.sites] == ["c1", "c2"]


# ---------------------------------------------------------------------------
# doubling
# ---------------------------------------------------------------------------

class TestDoubling:
    def test_double_bpt(self, catalog):
        assert _nf(catalog, catalog.double_along(catalog.block("B(pt)"))) == "Susp(P2) # Susp(P2)"

    def test_double_bs2(self, catalog):
        assert _nf(catalog, catalog.double_along(catalog.block("B(S2)"))) == "Susp(P2) # Susp(P2)"

    def test_double_bs4(self, catalog):
        assert _nf(catalog, catalog.double_along(catalog.block("B(S4)"))) == "T3/beta"

    def test_double_geminus_goes_through_its_capping(self, catalog):
        assert _nf(catalog, catalog.double_along(catalog.block("geminus"))) == "Susp(P2) # Susp(P2)"

    def test_ambiguous_boundary(self, catalog):
        with pytest.raises(AmbiguousBoundary):
            catalog.double_along(catalog.block("octopod"))


# ---------------------------------------------------------------------------
# gluing
# ---------------------------------------------------------------------------

class TestGluing:
    def test_boundary_mismatch(self, catalog):
        with pytest.raises(BoundaryMismatch):
            catalog.glue(catalog.block("D3"), catalog.block("B(pt)"))

    def test_two_cones(self, catalog):
        assert _nf(catalog, catalog.glue(catalog.block("K(P2)"), catalog.block("K(P2)"))) == "Susp(P2)"

    def test_gluing_is_symmetric(self, catalog):
        a = catalog.glue(catalog.block("D3"), catalog.block("B(S2)"))
        b = catalog.glue(catalog.block("B(S2)"), catalog.block("D3"))
        assert normal_form(a, catalog) == normal_form(b, catalog)

    def test_two_quadripods_make_an_octopod(self, catalog):
        glued = catalog.glue(catalog.block("quadripus"), catalog.block("quadripus"))
        assert isinstance(glued, BlockSpec)
        assert glued.name == "octopod"

    def test_untabled_gluing_counts_fixed_points_from_sites(self, catalog):
        glued = catalog.glue(catalog.block("geminus"), catalog.block("dipus"))
        assert isinstance(glued, BlockSpec)
        assert glued.opaque
        assert glued.name == "glue(dipus,geminus)"
        assert len(glued.boundary) == 4
        assert glued.sites == ()
        assert glued.fixed_point_count == 0

        with_sites = catalog.glue(catalog.block("B(pt)"), catalog.block("geminus"))
        assert len(with_sites.boundary) == 2
        assert with_sites.fixed_point_count == len(with_sites.sites) == 2

    def test_enumerate_gluings_has_six_pairs(self, catalog):
        gluings = catalog.enumerate_gluings()
        assert [pair for pair, _ in gluings] == [
            ("D3", "D3"),
            ("D3", "B(S2)"),
            ("K(P2)", "K(P2)"),
            ("B(pt)", "B(pt)"),
            ("B(S2)", "B(S2)"),
            ("B(S4)", "B(S4)"),
        ]

    def test_enumerate_gluings_has_four_classes(self, catalog):
        classes = {_nf(catalog, e) for _, e in catalog.enumerate_gluings()}
        assert classes == {"S3", "Susp(P2)", "Susp(P2) # Susp(P2)", "T3/beta"}


# ---------------------------------------------------------------------------
# parametric families
# ---------------------------------------------------------------------------

class TestParametric:
    @pytest.mark.parametrize("g", range(1, 11))
    def test_xg_singular_count(self, g):
        assert hyperelliptic_fixed_points(g) == 2 * g + 2
        assert xg_singular_count(g) == 4 * g + 2
        assert xg_atom(g).singular_count == 4 * g + 2

    @pytest.mark.parametrize("g", range(1, 11))
    def test_xg_passes_coherence_checks(self, g):
        spec = xg_atom(g)
        validate_atom(spec)
        assert spec.flags.prime is True
        assert spec.flags.irreducible is False

    def test_xg_counts_are_pairwise_distinct(self):
        counts = [xg_atom(g).singular_count for g in range(1, 11)]
        assert len(set(counts)) == 10

    def test_invalid_genus(self, catalog):
        with pytest.raises(InvalidGenus):
            xg_atom(0)
        with pytest.raises(InvalidGenus):
            catalog.lookup("Xg(0)")

    def test_xg_lookup(self, catalog):
        assert catalog.lookup("Xg(3)") == xg_atom(3)

    def test_surface_bundle(self, catalog):
        assert catalog.atom("F2xS1").h1 == AbelianGroup(5)

    @pytest.mark.parametrize(
        "p, q, expected",
        [(5, 2, (5, 2)), (5, 3, (5, 2)), (5, 1, (5, 1)), (7, 3, (7, 2)), (0, 1, (0, 1)), (1, 0, (1, 0))],
    )
    def test_lens_parameters(self, p, q, expected):
        assert lens_parameters(p, q) == expected

    def test_lens_needs_coprime_parameters(self):
        with pytest.raises(UnknownName):
            lens_parameters(4, 2)

    def test_degenerate_lens_spaces(self, catalog):
        assert catalog.lookup("L(0,1)").name == "S2xS1"
        assert catalog.lookup("L(1,5)").name == "S3"

    def test_lens_atom(self, catalog):
        spec = catalog.atom("L(5,3)")
        assert spec.name == "L(5,2)"
        assert spec.h1 == AbelianGroup(0, (5,))


# ---------------------------------------------------------------------------
# user catalogs
# ---------------------------------------------------------------------------

class TestUserCatalog:
    def test_merge_adds_atom(self, catalog):
        merged = catalog.merged("# extra atoms\n" + json.dumps(POINCARE) + "\n")
        assert merged.atom("Poincare").h1 == AbelianGroup()
        assert "Poincare" not in catalog.names()

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "extra.jsonl"
        path.write_text(json.dumps(POINCARE) + "\n", encoding="utf-8")
        assert "Poincare" in Catalog.load(path).names()

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            Catalog.load(tmp_path / "missing.jsonl")

    def test_builtin_cannot_be_redefined(self, catalog):
        with pytest.raises(CatalogError, match="built in"):
            catalog.merged(json.dumps({**POINCARE, "name": "S3"}))

    def test_duplicate_entry(self, catalog):
        line = json.dumps(POINCARE)
        with pytest.raises(CatalogError, match="twice") as exc:
            catalog.merged(line + "\n" + line)
        assert exc.value.line == 2

    def test_invalid_json(self, catalog):
        with pytest.raises(CatalogError, match="invalid JSON"):
            catalog.merged("{not json")

    def test_unknown_kind(self, catalog):
        with pytest.raises(CatalogError, match="kind"):
            catalog.merged(json.dumps({**POINCARE, "kind": "orbifold"}))

    def test_odd_parity_rejected(self, catalog):
        rec = {"kind": "atom", "name": "Odd", "sites": [{"id": "x"}], "flags": {"manifold": False}}
        with pytest.raises(CatalogError, match="odd number"):
            catalog.merged(json.dumps(rec))

    def test_manifold_flag_must_match_sites(self, catalog):
        rec = {"kind": "atom", "name": "Fake", "sites": [{"id": "x"}, {"id": "y"}], "flags": {"manifold": True}}
        with pytest.raises(CatalogError, match="manifold flag"):
            catalog.merged(json.dumps(rec))

    def test_prime_not_irreducible_needs_a_reason(self, catalog):
        rec = {"kind": "atom", "name": "Weird", "sites": [], "flags": {"manifold": True, "prime": True, "irreducible": False}}
        with pytest.raises(CatalogError, match="S2 bundle"):
            catalog.merged(json.dumps(rec))

    def test_irreducible_implies_prime(self, catalog):
        rec = {"kind": "atom", "name": "Weird", "sites": [], "flags": {"manifold": True, "prime": False, "irreducible": True}}
        with pytest.raises(CatalogError, match="implies prime"):
            catalog.merged(json.dumps(rec))

    def test_graph_degree_law(self, catalog):
        rec = {
            "kind": "atom",
            "name": "BadGraph",
            "sites": [{"id": "a", "vertex": "wa"}, {"id": "b", "vertex": "wb"}],
            "flags": {"manifold": False},
            "graph": {
                "vertices": [["b", "black"], ["wa", "white"], ["wb", "white"]],
                "edges": [["b", "wa"], ["b", "wb"], ["b", "wb"]],
            },
        }
        with pytest.raises(CatalogError, match="degree"):
            catalog.merged(json.dumps(rec))

    def test_block_fixed_points(self, catalog):
        rec = {"kind": "block", "name": "Lopsided", "boundary": ["P2", "P2"], "fixed_points": 3}
        with pytest.raises(CatalogError, match="fixed point count"):
            catalog.merged(json.dumps(rec))

    def test_block_without_boundary(self):
        with pytest.raises(CatalogError):
            validate_block(BlockSpec("Closed", ()))

    def test_block_parity(self):
        block = BlockSpec("OddCone", (BoundaryComponent(BoundaryKind.PROJECTIVE_PLANE, "d1"),), fixed_point_count=1)
        with pytest.raises(CatalogError, match="odd"):
            validate_block(block)


class TestMalformedRecords:
    @pytest.mark.parametrize(
        "rec",
        [
            {"kind": "atom", "name": "Foo", "flags": {}},
            {"kind": "atom", "name": "Foo", "flags": 3},
            {"kind": "atom", "name": "Foo", "flags": {"manifold": True}, "h1": 5},
            {"kind": "atom", "name": "Foo", "flags": {"manifold": True}, "h1": {"rank": "many"}},
            {"kind": "atom", "name": "Foo", "flags": {"manifold": True}, "sites": [7]},
            {
                "kind": "atom",
                "name": "Foo",
                "flags": {"manifold": False},
                "sites": [{"id": "a", "vertex": "wa"}, {"id": "b", "vertex": "wb"}],
                "graph": {"vertices": [["b", "red"], ["wa", "white"], ["wb", "white"]], "edges": []},
            },
            {"kind": "atom", "name": "Foo", "flags": {"manifold": True}, "graph": {"edges": []}},
            {"kind": "block", "name": "Bar", "boundary": ["P2", "P2"], "fixed_points": "two"},
            {"kind": "block", "name": "Bar", "boundary": 4},
        ],
    )
    def test_becomes_catalog_error_with_line(self, catalog, rec):
        text = "# header\n" + json.dumps(rec) + "\n"
        with pytest.raises(CatalogError) as info:
            catalog.merged(text)
        assert info.value.line == 2

    @pytest.mark.parametrize("raw", ["[1, 2]", '"Foo"', '{"kind": "atom", "name": ["Foo"], "flags": {}}'])
    def test_non_object_or_bad_name(self, catalog, raw):
        with pytest.raises(CatalogError) as info:
            catalog.merged(raw)
        assert info.value.line == 1
