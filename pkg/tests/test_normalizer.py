import random

import pytest

from alexcalc.catalog import default_catalog
from alexcalc.errors import FuelExhausted
from alexcalc.formatter import format_expr, format_normal_form
from alexcalc.invariants import invariant_report
from alexcalc.normalizer import (
    INV_GRAPH,
    INV_H1,
    INV_ORIENTABILITY,
    INV_SINGULAR_COUNT,
    Certificate,
    Inconclusive,
    Verdict,
    distinguish,
    equivalent,
    normal_form,
)
from alexcalc.parser import parse_expr
from alexcalc.randomized import random_expr, rebuild

X1 = "Q #^{q1,q1} Q"
X2 = "Q #^{q2,q2} Q"


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def nf(text: str, catalog) -> str:
    return format_normal_form(normal_form(parse_expr(text, catalog), catalog))


# ---------------------------------------------------------------------------
# golden normal forms
# ---------------------------------------------------------------------------

class TestGoldens:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("double(B(pt))", "Susp(P2) # Susp(P2)"),
            ("double(B(S2))", "Susp(P2) # Susp(P2)"),
            ("double(B(S4))", "T3/beta"),
            ("cap(octopod)", "T3/beta"),
            ("glue(K(P2),K(P2))", "Susp(P2)"),
            ("S3", "S3"),
            ("S3 # S3 # S3", "S3"),
            ("T3 # S3", "T3"),
            ("T3 # S2xS1", "S2xS1 # T3"),
            ("S2xS1 # Susp(P2)", "S2~S1 # Susp(P2)"),
            ("S2xS1 # S2~S1", "S2~S1 # S2~S1"),
            ("Susp(P2) #^{north,north} Susp(P2)", "Susp(P2)"),
            ("Q #^{q1,north} Susp(P2)", "Q"),
        ],
    )
    def test_golden(self, catalog, text, expected):
        assert nf(text, catalog) == expected

    def test_summands_are_sorted(self, catalog):
        assert nf("T3 # HW # S2xS1", catalog) == "HW # S2xS1 # T3"

    def test_manifolds_before_bundles_before_clusters(self, catalog):
        assert nf("Susp(P2) # S2xS1 # HW", catalog) == "HW # S2~S1 # Susp(P2)"

    def test_empty_normal_form_is_the_sphere(self, catalog):
        form = normal_form(parse_expr("S3 # S3", catalog), catalog)
        assert form.manifold_summands == ()
        assert form.clusters == ()
        assert format_normal_form(form) == "S3"


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

class TestRewriting:
    def test_suspension_bridge_reconnects(self, catalog):
        bridged = normal_form(parse_expr("Q #^{q2,north} Susp(P2) #^{south,q2} Q", catalog), catalog)
        direct = normal_form(parse_expr(X2, catalog), catalog)
        assert bridged == direct

    def test_suspension_chain_collapses(self, catalog):
        text = "Susp(P2) #^{south,north} Susp(P2) #^{south,north} Susp(P2)"
        assert nf(text, catalog) == "Susp(P2)"

    def test_p2_sum_commutes(self, catalog):
        a = normal_form(parse_expr("Q #^{q1,p000} T3/beta", catalog), catalog)
        b = normal_form(parse_expr("T3/beta #^{p000,q1} Q", catalog), catalog)
        assert a == b

    def test_cluster_records_its_atoms(self, catalog):
        form = normal_form(parse_expr("Q #^{q1,p000} T3/beta # Susp(P2)", catalog), catalog)
        assert [c.atoms for c in form.clusters] == [("Q", "T3/beta"), ("Susp(P2)",)]

    def test_fuel(self, catalog):
        e = parse_expr("S3 # S3 # S3", catalog)
        with pytest.raises(FuelExhausted):
            normal_form(e, catalog, fuel=1)

    def test_rule_order_does_not_matter(self, catalog):
        rng = random.Random(20240611)
        for _ in range(1000):
            e = random_expr(rng, catalog)
            expected = normal_form(e, catalog)
            shuffled = normal_form(e, catalog, rng=random.Random(rng.getrandbits(32)))
            assert shuffled == expected, format_expr(e)
            assert format_normal_form(shuffled) == format_normal_form(expected)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

class TestEquivalent:
    def test_q_gluings_differ_by_graph(self, catalog):
        comp = equivalent(parse_expr(X1, catalog), parse_expr(X2, catalog), catalog)
        assert comp.verdict is Verdict.NO
        assert comp.certificate.invariant == INV_GRAPH

    def test_q_gluings_share_the_cheaper_invariants(self, catalog):
        result = distinguish(parse_expr(X1, catalog), parse_expr(X2, catalog), catalog)
        assert isinstance(result, Certificate)
        assert result.invariant == INV_GRAPH
        assert result.left != result.right

    def test_block_gluings_agree(self, catalog):
        comp = equivalent(parse_expr("glue(K(P2),K(P2))", catalog), parse_expr("glue(D3,B(S2))", catalog), catalog)
        assert comp.verdict is Verdict.YES
        assert comp.certificate is None

    def test_singular_count_separates(self, catalog):
        comp = equivalent(parse_expr("Susp(P2)", catalog), parse_expr("T3/beta", catalog), catalog)
        assert comp.verdict is Verdict.NO
        assert comp.certificate == Certificate(INV_SINGULAR_COUNT, "2", "8")

    def test_orientability_separates(self, catalog):
        comp = equivalent(parse_expr("S2xS1", catalog), parse_expr("S2~S1", catalog), catalog)
        assert comp.certificate.invariant == INV_ORIENTABILITY

    def test_h1_separates(self, catalog):
        comp = equivalent(parse_expr("T3", catalog), parse_expr("HW", catalog), catalog)
        assert comp.certificate == Certificate(INV_H1, "Z^3", "Z/4 + Z/4")

    def test_xg_family_is_pairwise_distinct(self, catalog):
        atoms = [parse_expr(f"Xg({g})", catalog) for g in range(1, 11)]
        for i, a in enumerate(atoms):
            for b in atoms[i + 1:]:
                comp = equivalent(a, b, catalog)
                assert comp.verdict is Verdict.NO
                assert comp.certificate.invariant == INV_SINGULAR_COUNT

    def test_isomorphic_clusters_are_identified(self, catalog):
        # q1, q3 and q4 collar the same black vertex of Q
        a = parse_expr("Q #^{q1,q1} Q", catalog)
        b = parse_expr("Q #^{q3,q4} Q", catalog)
        assert equivalent(a, b, catalog).verdict is Verdict.YES
        result = distinguish(a, b, catalog)
        assert isinstance(result, Inconclusive)
        assert INV_GRAPH in result.checked

    def test_unknown_when_nothing_separates(self, catalog):
        comp = equivalent(parse_expr("double(dipus)", catalog), parse_expr("Q", catalog), catalog)
        assert comp.verdict is Verdict.UNKNOWN
        assert comp.certificate is None


class TestEquivalentReports:
    @pytest.mark.parametrize(
        "left,right",
        [
            ("glue(K(P2),K(P2))", "glue(D3,B(S2))"),
            ("double(B(pt))", "Susp(P2) # Susp(P2)"),
            ("S2xS1 # Susp(P2)", "S2~S1 # Susp(P2)"),
            ("T3/beta #^{p000,north} Susp(P2)", "T3/beta"),
            ("Q #^{q1,q1} Q", "Q #^{q3,q4} Q"),
            ("S3 # T3 # HW", "HW # T3"),
        ],
    )
    def test_yes_means_equal_reports(self, catalog, left, right):
        a, b = parse_expr(left, catalog), parse_expr(right, catalog)
        assert equivalent(a, b, catalog).verdict is Verdict.YES
        assert invariant_report(a, catalog) == invariant_report(b, catalog)

    def test_rebuilt_trees_report_alike(self, catalog):
        rng = random.Random(7)
        for _ in range(300):
            e = random_expr(rng, catalog, max_atoms=6)
            f = rebuild(e, rng)
            assert equivalent(e, f, catalog).verdict is Verdict.YES, format_expr(e)
            assert invariant_report(e, catalog) == invariant_report(f, catalog), format_expr(e)
