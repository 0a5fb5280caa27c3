"""Built-in catalog records and the capping, doubling and gluing tables."""

SPHERE = "S3"
SUSPENSION = "Susp(P2)"
S2_PRODUCT = "S2xS1"
S2_TWISTED = "S2~S1"
S2_BUNDLE_NAMES = frozenset({S2_PRODUCT, S2_TWISTED})

_MANIFOLD_PRIME = {
    "manifold": True,
    "prime": True,
    "irreducible": True,
    "simply_connected": False,
    "has_nonseparating_p2": False,
    "orientable": True,
}


def _star(center: str, whites: list[str]) -> dict:
    return {
        "vertices": [[center, "black"]] + [[w, "white"] for w in whites],
        "edges": [[center, w] for w in whites],
    }


_OCTANTS = [f"{a}{b}{c}" for a in "01" for b in "01" for c in "01"]

ATOM_RECORDS: list[dict] = [
    {
        "kind": "atom",
        "name": SPHERE,
        "sites": [],
        "h1": {"rank": 0, "torsion": []},
        "flags": {**_MANIFOLD_PRIME, "simply_connected": True},
    },
    {
        "kind": "atom",
        "name": SUSPENSION,
        # manifold part P2 x I; both boundary planes carry the generator of Z/2
        "sites": [
            {"id": "north", "h1_image": [1], "vertex": "n"},
            {"id": "south", "h1_image": [1], "vertex": "s"},
        ],
        "h1": {"rank": 0, "torsion": [2]},
        "flags": {
            "manifold": False,
            "prime": True,
            "irreducible": True,
            "simply_connected": True,
            "has_nonseparating_p2": False,
            "orientable": False,
        },
        "cover": [SPHERE],
        "graph": {"vertices": [["n", "white"], ["s", "white"]], "edges": [["n", "s"]]},
    },
    {
        "kind": "atom",
        "name": S2_PRODUCT,
        "sites": [],
        "h1": {"rank": 1, "torsion": []},
        "flags": {**_MANIFOLD_PRIME, "irreducible": False},
    },
    {
        "kind": "atom",
        "name": S2_TWISTED,
        "sites": [],
        "h1": {"rank": 1, "torsion": []},
        "flags": {**_MANIFOLD_PRIME, "irreducible": False, "orientable": False},
        "orientation_cover": S2_PRODUCT,
    },
    {
        "kind": "atom",
        "name": "T3/beta",
        # H1 of the octopod is (Z/2)^3 (translations mod 2) + Z/2 (the reflection);
        # the cone over the image of the half-lattice point n kills (n, 1)
        "sites": [
            {"id": f"p{o}", "h1_image": [int(x) for x in o] + [1], "vertex": f"w{o}"}
            for o in _OCTANTS
        ],
        "h1": {"rank": 0, "torsion": [2, 2, 2, 2]},
        "flags": {
            "manifold": False,
            "prime": True,
            "irreducible": True,
            "simply_connected": True,
            "has_nonseparating_p2": False,
            "orientable": False,
        },
        "cover": ["T3"],
        "graph": _star("c", [f"w{o}" for o in _OCTANTS]),
    },
    {
        "kind": "atom",
        "name": "cap(bipod)",
        "sites": [{"id": "c1", "vertex": "w1"}, {"id": "c2", "vertex": "w2"}],
        "flags": {
            "manifold": False,
            "prime": True,
            "irreducible": True,
            "simply_connected": False,
            "has_nonseparating_p2": False,
            "orientable": False,
        },
        "cover": ["HW"],
        "graph": _star("b", ["w1", "w2"]),
    },
    {
        "kind": "atom",
        "name": "cap(tetrapod)",
        "sites": [{"id": f"c{i}", "vertex": f"w{i}"} for i in range(1, 5)],
        "flags": {
            "manifold": False,
            "prime": True,
            "irreducible": True,
            "simply_connected": False,
            "has_nonseparating_p2": False,
            "orientable": False,
        },
        "cover": ["Tbundle(-I)"],
        "graph": _star("b", [f"w{i}" for i in range(1, 5)]),
    },
    {
        "kind": "atom",
        "name": "Q",
        # irreducible manifold part with one essential separating P2:
        # q1, q3, q4 collar planes on the b1 side, q2 on the b2 side
        "sites": [
            {"id": "q1", "vertex": "w1"},
            {"id": "q2", "vertex": "w2"},
            {"id": "q3", "vertex": "w3"},
            {"id": "q4", "vertex": "w4"},
        ],
        "flags": {"manifold": False, "prime": False, "irreducible": False, "orientable": False},
        "graph": {
            "vertices": [["b1", "black"], ["b2", "black"]]
            + [[f"w{i}", "white"] for i in range(1, 5)],
            "edges": [["b1", "b2"], ["b1", "w1"], ["b1", "w3"], ["b1", "w4"], ["b2", "w2"]],
        },
    },
    {
        "kind": "atom",
        "name": "T3",
        "sites": [],
        "h1": {"rank": 3, "torsion": []},
        "flags": _MANIFOLD_PRIME,
    },
    {
        "kind": "atom",
        "name": "HW",
        "sites": [],
        "h1": {"rank": 0, "torsion": [4, 4]},
        "flags": _MANIFOLD_PRIME,
    },
    {
        "kind": "atom",
        "name": "Tbundle(-I)",
        # T2 x [0,1] / (z1, z2, 0) ~ (conj z1, conj z2, 1): Z + coker(-2I)
        "sites": [],
        "h1": {"rank": 1, "torsion": [2, 2]},
        "flags": _MANIFOLD_PRIME,
    },
]

BLOCK_RECORDS: list[dict] = [
    {"kind": "block", "name": "D3", "boundary": ["S2"], "fixed_points": 0},
    {
        "kind": "block",
        "name": "K(P2)",
        "boundary": ["P2"],
        "sites": [{"id": "c"}],
        "double_cover": "D3",
        "involution": "x -> -x on D3",
        "fixed_points": 1,
    },
    {
        "kind": "block",
        "name": "B(pt)",
        "boundary": ["Kl"],
        "sites": [{"id": "a"}, {"id": "b"}],
        "double_cover": "D2xS1",
        "involution": "alpha(x, z) = (-x, conj z) on D2 x S1",
        "fixed_points": 2,
    },
    {
        "kind": "block",
        "name": "B(S2)",
        "boundary": ["S2"],
        "sites": [{"id": "n"}, {"id": "s"}],
        "double_cover": "S2xI",
        "involution": "(sigma, -id) on S2 x [-1, 1], sigma the suspension of the antipodal map of S1",
        "fixed_points": 2,
    },
    {
        "kind": "block",
        "name": "B(S4)",
        "boundary": ["T2"],
        "sites": [{"id": f"v{i}"} for i in range(1, 5)],
        "double_cover": "T2xI",
        "involution": "(z1, z2, t) -> (conj z1, conj z2, -t) on T2 x [-1, 1]",
        "fixed_points": 4,
    },
    {
        "kind": "block",
        "name": "geminus",
        "boundary": ["P2", "P2", "Kl"],
        "double_cover": "D2xS1",
        "involution": "tau(x, z) = (-x, conj z), two fixed points removed",
        "fixed_points": 2,
    },
    {
        "kind": "block",
        "name": "dipus",
        "boundary": ["P2", "P2", "Kl"],
        "double_cover": "Kl~xI",
        "involution": "free part of the involution on the orientable I-bundle over Kl",
        "fixed_points": 2,
    },
    {
        "kind": "block",
        "name": "bipod",
        "boundary": ["P2", "P2"],
        "double_cover": "HW",
        "involution": "involution of the Hantzsche-Wendt manifold with two fixed points",
        "fixed_points": 2,
    },
    {
        "kind": "block",
        "name": "quadripus",
        "boundary": ["P2", "P2", "P2", "P2", "T2"],
        "double_cover": "T2xI",
        "involution": "(z1, z2, t) -> (conj z1, conj z2, -t), four fixed points removed",
        "fixed_points": 4,
    },
    {
        "kind": "block",
        "name": "tetrapod",
        "boundary": ["P2", "P2", "P2", "P2"],
        "double_cover": "Tbundle(-I)",
        "involution": "(z1, z2, t) -> (conj z1, conj z2, -t) on the torus bundle with monodromy -I",
        "fixed_points": 4,
    },
    {
        "kind": "block",
        "name": "octopod",
        "boundary": ["P2"] * 8,
        "double_cover": "T3",
        "involution": "beta(x) = -x on T3, eight fixed points removed",
        "fixed_points": 8,
    },
]

# block name -> canonical result of coning off every P2 boundary component
CAPPING_TABLE: dict[str, str] = {
    "geminus": "B(pt)",
    "quadripus": "B(S4)",
    "octopod": "T3/beta",
    "bipod": "cap(bipod)",
    "tetrapod": "cap(tetrapod)",
    "K(P2)": SUSPENSION,
}

# block name -> connected summands of its double
DOUBLING_TABLE: dict[str, list[str]] = {
    "D3": [SPHERE],
    "K(P2)": [SUSPENSION],
    "B(pt)": [SUSPENSION, SUSPENSION],
    "B(S2)": [SUSPENSION, SUSPENSION],
    "B(S4)": ["T3/beta"],
}

GLUING_BLOCKS: tuple[str, ...] = ("D3", "K(P2)", "B(pt)", "B(S2)", "B(S4)")

# sorted block pair -> connected summands of the closed result
GLUING_TABLE: dict[tuple[str, str], list[str]] = {
    ("D3", "D3"): [SPHERE],
    ("B(S2)", "D3"): [SUSPENSION],
    ("K(P2)", "K(P2)"): [SUSPENSION],
    ("B(pt)", "B(pt)"): [SUSPENSION, SUSPENSION],
    ("B(S2)", "B(S2)"): [SUSPENSION, SUSPENSION],
    ("B(S4)", "B(S4)"): ["T3/beta"],
}

# sorted block pair -> block produced by gluing along the non-P2 boundary
BLOCK_GLUING_TABLE: dict[tuple[str, str], str] = {
    ("quadripus", "quadripus"): "octopod",
}

# Covers of the closed gluings computed from the block covers alone:
# two balls + S2 x I, D3 u D3, and the doubles of D2 x S1, S2 x I, T2 x I.
GLUING_COVER_TABLE: dict[tuple[str, str], list[str]] = {
    ("B(S2)", "D3"): [SPHERE],
    ("K(P2)", "K(P2)"): [SPHERE],
    ("B(pt)", "B(pt)"): [S2_PRODUCT],
    ("B(S2)", "B(S2)"): [S2_PRODUCT],
    ("B(S4)", "B(S4)"): ["T3"],
}
