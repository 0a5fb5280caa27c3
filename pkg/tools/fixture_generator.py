"""Generate piece-cover and surgery description files for testing."""

from pathlib import Path

DEFAULT_OUTPUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "resources"

# name -> (pieces, matches, base matches); a piece is (name, base, sheets)
SAMPLE_COVERS: dict[str, tuple[list[tuple[str, str, int]], list[tuple[str, str]], list[tuple[str, str]]]] = {
    # capped bipod: two copies of the cone region over one twisted collar
    "bipod": (
        [("D1", "Dhat", 1), ("K1xI", "KlxI", 2), ("D2", "Dhat", 1)],
        [("D1.K", "K1xI.K~1"), ("D2.K", "K1xI.K~2")],
        [("Dhat.K", "KlxI.K")],
    ),
    # capped tetrapod: same pattern over a torus collar
    "tetrapod": (
        [("Q1", "Qhat", 1), ("T0xI", "T2xI", 2), ("Q2", "Qhat", 1)],
        [("Q1.T0", "T0xI.T0~1"), ("Q2.T0", "T0xI.T0~2")],
        [("Qhat.T0", "T2xI.T0")],
    ),
    # bipod with the second collar lift moved onto the first cone piece
    "bipod_mutated": (
        [("D1", "Dhat", 1), ("K1xI", "KlxI", 2), ("D2", "Dhat", 1)],
        [("D1.K", "K1xI.K~1"), ("D1.K", "K1xI.K~2")],
        [("Dhat.K", "KlxI.K")],
    ),
}

# name -> (base, components, bpt); a component is (id, filling, slope or None)
SAMPLE_SURGERIES: dict[str, tuple[str, list[tuple[str, str, str | None]], int]] = {
    "lens": ("S3", [("unknot", "torus", "5/2")], 0),
    "trivial": ("S3", [("unknot", "torus", "1/0")], 0),
    "twisted_bpt": ("S2~S1", [], 1),
    "klein_in_s3": ("S3", [("k1", "kleinbottle", None)], 0),
}


def render_cover(name: str) -> str:
    pieces, matches, base_matches = SAMPLE_COVERS[name]
    lines = [f"# {name}"]
    lines += [f"piece {p} over {base} sheets {n}" for p, base, n in pieces]
    lines += [f"match {a} {b}" for a, b in matches]
    lines += [f"base-match {a} {b}" for a, b in base_matches]
    return "\n".join(lines) + "\n"


def render_surgery(name: str) -> str:
    base, components, bpt = SAMPLE_SURGERIES[name]
    lines = [f"# {name}", f"base {base}"]
    for cid, filling, slope in components:
        lines.append(f"component {cid} {filling}" + (f" {slope}" if slope else ""))
    lines.append(f"bpt {bpt}")
    return "\n".join(lines) + "\n"


def generate_fixtures(output_dir: str | Path = DEFAULT_OUTPUT_DIR) -> list[Path]:
    """Write every sample as ``<name>.cover`` / ``<name>.surgery`` under *output_dir*."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in SAMPLE_COVERS:
        path = output_dir / f"{name}.cover"
        path.write_text(render_cover(name), encoding="utf-8")
        written.append(path)
    for name in SAMPLE_SURGERIES:
        path = output_dir / f"{name}.surgery"
        path.write_text(render_surgery(name), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for path in generate_fixtures():
        print(f"Generated: {path}")
