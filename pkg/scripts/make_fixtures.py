"""Regenerate the CLI job fixtures shipped in hypersing/fixtures."""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from hypersing.corpus import equivalent_pair, fixture_dir, germ
from hypersing.forms import format_form
from hypersing.poly import format_poly

STATIC = {
    "invariants_e6": """\
# simple germ, quasihomogeneous
command = invariants
vars = x, y
f = x^3 + y^4
""",
    "invariants_t55": """\
# smallest non-quasihomogeneous example in the corpus
command = invariants
vars = x, y
f = x^5 + y^5 + x^2*y^2
""",
    "invariants_p8": """\
command = invariants
vars = x, y, z
f = x^3 + y^3 + z^3
""",
    "invariants_nonisolated": """\
# singular along the y axis; expected exit code 3
command = invariants
vars = x, y
f = x^2*y
""",
    "cohomology_e6": """\
command = cohomology
vars = x, y
f = x^3 + y^4
""",
    "cohomology_t55": """\
command = cohomology
vars = x, y
f = x^5 + y^5 + x^2*y^2
""",
    "interpolate_e6": """\
# weighted Euler field times x, flowed for unit time
command = interpolate
vars = x, y
f = x^3 + y^4
trunc = 8
v = 1/3*x^2, 1/4*x*y
""",
    "interpolate_hamiltonian": """\
command = interpolate
vars = x, y
f = x^3 + y^4
trunc = 6
v = 4*y^3, -3*x^2
""",
    "class_t55_kernel": """\
# generator of the one-dimensional cohomology; class is nonzero
command = class
vars = x, y
f = x^5 + y^5 + x^2*y^2
alpha = x dy
""",
    "class_t55_exact": """\
command = class
vars = x, y
f = x^5 + y^5 + x^2*y^2
alpha = (2*x*y) dx + (x^2 + 3*y^2) dy
""",
}

CONVERSE = (("E6", 8, 11), ("T55", 8, 12), ("A3", 8, 13), ("P8", 6, 14))


def wrap(items: list[str], width: int = 88) -> str:
    """Join with commas, continuing on indented lines."""
    lines, current = [], ""
    for k, item in enumerate(items):
        piece = item + ("," if k < len(items) - 1 else "")
        for word in piece.split(" "):
            if current and len(current) + 1 + len(word) > width:
                lines.append(current)
                current = "    " + word
            else:
                current = f"{current} {word}" if current else word
    lines.append(current)
    return "\n".join(lines)


def converse_job(name: str, N: int, seed: int) -> str:
    g = germ(name)
    f = g.poly
    phi, omega, omega_prime = equivalent_pair(f, random.Random(seed), N)
    return "\n".join([
        f"# generated by scripts/make_fixtures.py (seed {seed})",
        "command = verify-converse",
        f"vars = {', '.join(g.variables)}",
        f"f = {format_poly(f)}",
        f"trunc = {N}",
        "phi = " + wrap([format_poly(c) for c in phi.components]),
        "omega = " + wrap([format_form(omega.form)]),
        "omega_prime = " + wrap([format_form(omega_prime.form)]),
        "",
    ])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(fixture_dir()))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for stem, text in STATIC.items():
        (out / f"{stem}.job").write_text(text, encoding="utf-8")
    for name, N, seed in CONVERSE:
        (out / f"converse_{name.lower()}.job").write_text(converse_job(name, N, seed), encoding="utf-8")
    print(f"wrote {len(STATIC) + len(CONVERSE)} fixtures to {out}")


if __name__ == "__main__":
    main()
