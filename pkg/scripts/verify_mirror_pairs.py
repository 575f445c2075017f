#!/usr/bin/env python3
"""Sweep the built-in dual pairs and report mirror verdicts per space.

Runs every SL(n)/Z_m quotient up to a chosen rank bound together with the
B/C and D series, checks the orbifold series against the dual datum on each
space descriptor, and prints one table row per (group, space) with timings.
Exits 1 if any pair disagrees.
"""

import argparse
import sys
import time
from dataclasses import dataclass

from orbev.epoly import SPACES
from orbev.orbifold_engine import mirror_check
from orbev.root_data import RootDatum, classical_datum, sl_quotient_datum


@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 6
    bc_ranks: tuple = (2, 3, 4)
    d_ranks: tuple = (3, 4)
    spaces: tuple = tuple(SPACES)
    cap: int = 2_000_000

    def data(self) -> list[RootDatum]:
        out = []
        for n in range(2, self.max_n + 1):
            for m in range(1, n + 1):
                if n % m == 0:
                    out.append(sl_quotient_datum(n, m))
        for family in "BC":
            for n in self.bc_ranks:
                out.append(classical_datum(family, n, "simply_connected"))
        for n in self.d_ranks:
            for form in ("simply_connected", "adjoint"):
                out.append(classical_datum("D", n, form))
        return out


def run_sweep(config: SweepConfig) -> int:
    failures = 0
    header = f"{'group':<12} {'space':<16} {'classes':>7} {'E(1,1)':>8} {'verdict':<9} {'time':>7}"
    print(header)
    print("-" * len(header))
    for datum in config.data():
        for name in config.spaces:
            start = time.monotonic()
            report = mirror_check(datum, SPACES[name], cap=config.cap)
            elapsed = time.monotonic() - start
            ok = report.equal and report.term_by_term
            failures += 0 if ok else 1
            count = report.primal.total.evaluate(1, 1)
            verdict = "equal" if ok else "DIFFERS"
            print(
                f"{datum.label:<12} {name:<16} {len(report.pairs):>7} "
                f"{str(count):>8} {verdict:<9} {elapsed:6.2f}s"
            )
    print()
    if failures:
        print(f"{failures} pair(s) differ")
        return 1
    print("all pairs agree")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=6, help="largest SL(n) to include")
    parser.add_argument(
        "--space",
        action="append",
        choices=sorted(SPACES),
        help="restrict to this descriptor (repeatable, default all)",
    )
    parser.add_argument("--cap", type=int, default=2_000_000, help="group enumeration cap")
    args = parser.parse_args()
    config = SweepConfig(
        max_n=args.max_n,
        spaces=tuple(args.space) if args.space else tuple(SPACES),
        cap=args.cap,
    )
    return run_sweep(config)


if __name__ == "__main__":
    sys.exit(main())
