"""Invariants and cohomology dimensions for every germ in the corpus."""

from __future__ import annotations

import argparse
import time

from hypersing.cohomology import verify_ses1
from hypersing.corpus import CORPUS, NON_ISOLATED
from hypersing.singularity import analyze


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--germs", nargs="*", help="restrict to these names")
    args = parser.parse_args()
    header = f"{'germ':11} {'f':24} {'mu':>4} {'tau':>4} {'d':>3} {'qh':>5} {'B':>4} {'ker':>4} {'N*':>4} {'sat':>4} {'sec':>7}"
    print(header)
    print("-" * len(header))
    for g in CORPUS:
        if args.germs and g.name not in args.germs:
            continue
        start = time.perf_counter()
        s = analyze(g.poly)
        c = verify_ses1(g.poly)
        sec = time.perf_counter() - start
        print(f"{g.name:11} {g.expr:24} {s.mu:>4} {s.tau:>4} {s.d:>3} {str(s.quasihomogeneous):>5} "
              f"{c.mu_check:>4} {c.ker_pi_dim:>4} {c.stabilized_at:>4} {c.saturation_window:>4} {sec:>7.2f}")
    for g in NON_ISOLATED:
        if args.germs and g.name not in args.germs:
            continue
        print(f"{g.name:11} {g.expr:24} {'inf':>4}  (not isolated)")


if __name__ == "__main__":
    main()
