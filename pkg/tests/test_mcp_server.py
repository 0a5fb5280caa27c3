import io
import json

from mcp_server import _StdoutFilter, compare, cover, enumerate_gluings, get_catalog, invariants, normalize


class TestTools:
    def test_normalize(self):
        data = json.loads(normalize("S2xS1 # Susp(P2)"))
        assert data["normal_form"] == "S2~S1 # Susp(P2)"
        assert data["s2_bundles"] == 1
        assert data["clusters"] == ["Susp(P2)"]

    def test_error_carries_span(self):
        data = json.loads(normalize("S3 # Foo"))
        assert data["span"] == [5, 8]
        assert "Foo" in data["error"]

    def test_compare(self):
        data = json.loads(compare("T3", "HW"))
        assert data["verdict"] == "No"
        assert data["certificate"] == {"invariant": "H1", "left": "Z^3", "right": "Z/4 + Z/4"}

    def test_compare_yes(self):
        assert json.loads(compare("double(B(S4))", "cap(octopod)")) == {"verdict": "Yes", "certificate": None}

    def test_invariants(self):
        data = json.loads(invariants("Q"))
        assert data["h1"] == "unknown"
        assert data["singular_count"] == "4"

    def test_cover(self):
        assert json.loads(cover("T3/beta"))["cover"] == "T3"
        assert "error" in json.loads(cover("T3"))

    def test_enumerate_gluings(self):
        data = json.loads(enumerate_gluings())
        assert len(data["gluings"]) == 6
        assert data["classes"] == ["S3", "Susp(P2)", "Susp(P2) # Susp(P2)", "T3/beta"]

    def test_catalog(self):
        rows = json.loads(get_catalog())
        assert {"name": "S3", "kind": "atom", "sites": 0, "data": "0", "cover": ""} in rows
        assert get_catalog("text").startswith("Catalog")


class TestStdoutFilter:
    def test_drops_blank_writes(self):
        real = io.StringIO()
        out = _StdoutFilter(real)
        out.write("\n")
        out.write("  ")
        out.write('{"jsonrpc": "2.0"}')
        assert real.getvalue() == '{"jsonrpc": "2.0"}'
