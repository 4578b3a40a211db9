"""End-to-end sweep: random equivalent volume-form pairs for each corpus germ."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, fields

from hypersing.converse import verify_converse
from hypersing.corpus import CORPUS, equivalent_pair


@dataclass
class SweepConfig:
    truncation: int = 8
    pairs: int = 5
    seed: int = 0
    germs: tuple[str, ...] = ()


def sweep(cfg: SweepConfig) -> bool:
    rng = random.Random(cfg.seed)
    all_ok = True
    print(f"{'germ':6} {'pair':>4} {'class':>6} {'hat':>6} {'exact':>6} {'sec':>6}")
    for g in CORPUS:
        if cfg.germs and g.name not in cfg.germs:
            continue
        f = g.poly
        for k in range(cfg.pairs):
            start = time.perf_counter()
            phi, omega, omega_prime = equivalent_pair(f, rng, cfg.truncation)
            r = verify_converse(f, omega, omega_prime, phi, cfg.truncation)
            ok = r.class_zero and r.alpha_hat_class_zero and r.difference_exact and r.d_alpha_exact
            all_ok &= ok
            print(f"{g.name:6} {k:>4} {str(r.class_zero):>6} {str(r.alpha_hat_class_zero):>6} "
                  f"{str(r.difference_exact):>6} {time.perf_counter() - start:>6.2f}")
    print("all checks passed" if all_ok else "SOME CHECKS FAILED")
    return all_ok


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = SweepConfig()
    for f in fields(SweepConfig):
        if f.name == "germs":
            parser.add_argument("--germs", nargs="*", default=[])
        else:
            parser.add_argument(f"--{f.name}", type=int, default=getattr(defaults, f.name))
    args = parser.parse_args()
    cfg = SweepConfig(args.truncation, args.pairs, args.seed, tuple(args.germs))
    raise SystemExit(0 if sweep(cfg) else 1)


if __name__ == "__main__":
    main()
