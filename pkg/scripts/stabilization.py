"""Codimension of the jet-level Brieskorn image and dim ker pi as the truncation grows."""

from __future__ import annotations

import argparse

from hypersing.cohomology import brieskorn_subspace, kernel_pi_dim, window_degree
from hypersing.corpus import germ
from hypersing.errors import TruncationTooLow
from hypersing.singularity import milnor_number


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("germ", nargs="?", default="T55")
    parser.add_argument("--max", type=int, default=28)
    args = parser.parse_args()
    f = germ(args.germ).poly
    mu = milnor_number(f)
    print(f"{args.germ}: f = {f}, mu = {mu}")
    print(f"{'N':>4} {'window':>7} {'codim':>6} {'ker':>4}")
    for N in range(f.degree() + 1, args.max + 1, 2):
        try:
            space = brieskorn_subspace(f, N)
        except TruncationTooLow:
            continue
        print(f"{N:>4} {window_degree(f, N):>7} {space.codimension:>6} {kernel_pi_dim(f, N)[0]:>4}")


if __name__ == "__main__":
    main()
