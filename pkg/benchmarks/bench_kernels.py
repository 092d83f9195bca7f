"""Compare the compiled and pure-Python scan kernels on unpruned brute force.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each case scans every (f, g) pair without the f-level prune, so the time is
all kernel.  Both backends must return the same verdict and witness.
"""

from __future__ import annotations

import argparse
import statistics
import time

from gcf.field import Field
from gcf.kernels import BACKENDS
from gcf.matrix import companion
from gcf.poly import Poly
from gcf.polytype import NilpotentProfile, brute_force, counterexample_matrix


def cases(quick: bool):
    F2, F3 = Field(2), Field(3)
    yield "counterexample GF(2), n=5", counterexample_matrix(F2)
    yield "C_f, f=X^6+X+1 over GF(3)", companion(Poly.parse(F3, "X^6+X+1"))
    yield "nilpotent 1|3|5 GF(2), n=9", NilpotentProfile.from_sizes([1, 3, 5]).matrix(F2)
    if not quick:
        yield "counterexample GF(3), n=6", counterexample_matrix(F3)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest case")
    args = ap.parse_args()
    names = sorted(BACKENDS)
    if "cython" not in BACKENDS:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'case':32} {'pairs':>8} " + " ".join(f"{b + ' s':>10}" for b in names) + "   speedup")
    for label, A in cases(args.quick):
        times, results = {}, {}
        for b in names:
            runs = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                v = brute_force(A, prune=False, backend=b)
                runs.append(time.perf_counter() - t0)
            times[b] = statistics.median(runs)
            results[b] = (v.status, v.witness, v.search_stats["examined"])
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        pairs = results[names[0]][2]
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "      -"
        cols = " ".join(f"{times[b]:10.3f}" for b in names)
        print(f"{label:32} {pairs:8d} {cols}  {speed}   ({results[names[0]][0]})")


if __name__ == "__main__":
    main()
