"""Compiled kernels against the pure-Python reference.

Times the axiom, identity and split sweeps on the shipped fixtures with both
backends, checks that the two return identical results, and prints one row
per (sweep, fixture).

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --max-len 4 --repeat 3 --json bench.json
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from partialgroups import kernels
from partialgroups.fixtures import (
    cyclic_by_inversion,
    klein_by_swap,
    sym3_squared,
    sym4_restricted,
    wreath_sym2_sym3,
)
from partialgroups.semidirect import canonical_parts, check_internal_semidirect


def _wreath():
    W = wreath_sym2_sym3().sparse
    return W.L, (W.hat_X.L.labels, W.hat_N.L.labels)


def _external(L):
    return L, canonical_parts(L)


# name -> (partial group, its two semidirect parts or None)
SUBJECTS = {
    "inversion product (6)": lambda: _external(cyclic_by_inversion().L),
    "dihedral swap (8)": lambda: _external(klein_by_swap().L),
    "restricted Sym(3)^2 (20)": lambda: (sym3_squared().loc.L, None),
    "restricted Sym(4) (24)": lambda: (sym4_restricted().loc.L, None),
    "wreath product (72)": _wreath,
}


def _split_args(L, parts, max_len):
    if parts is None:
        return None
    wit = check_internal_semidirect(L, *parts, max_len)
    if not wit:
        return None
    dec = wit.decomposition
    return [L.idx(dec[g][0]) for g in L.labels], [L.idx(dec[g][1]) for g in L.labels]


def _time(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return out, statistics.median(times)


def bench(max_len: int, repeat: int, python_limit: int) -> list[dict]:
    rows = []
    for name, make in SUBJECTS.items():
        L, parts = make()
        n = max_len if len(L) <= python_limit else min(max_len, 3)
        sweeps = {
            "axioms": lambda b: kernels.axiom_sweep(L, n, b),
            "identities": lambda b: kernels.lemma_sweep(L, n, backend=b),
        }
        split = _split_args(L, parts, n)
        if split is not None:
            sweeps["split"] = lambda b: kernels.sd3_sweep(L, split[0], split[1], n, b)
        for sweep, fn in sweeps.items():
            fast, t_fast = _time(lambda: fn("compiled"), repeat)
            slow, t_slow = _time(lambda: fn("python"), repeat)
            rows.append(
                {
                    "sweep": sweep,
                    "fixture": name,
                    "max_len": n,
                    "compiled_s": t_fast,
                    "python_s": t_slow,
                    "speedup": t_slow / t_fast if t_fast > 0 else float("inf"),
                    "identical": fast == slow,
                }
            )
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--max-len", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=1, help="median of this many runs")
    parser.add_argument(
        "--python-limit", type=int, default=24, help="larger fixtures are swept to length 3 at most"
    )
    parser.add_argument("--json", metavar="PATH", help="also write the rows as JSON")
    args = parser.parse_args(argv)
    if "compiled" not in kernels.available_backends():
        print("compiled kernels are not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
        return 2
    rows = bench(args.max_len, args.repeat, args.python_limit)
    print(f"{'sweep':<11}{'fixture':<27}{'len':>4}{'compiled s':>12}{'python s':>11}{'speedup':>9}  same")
    for r in rows:
        print(
            f"{r['sweep']:<11}{r['fixture']:<27}{r['max_len']:>4}{r['compiled_s']:>12.4f}"
            f"{r['python_s']:>11.3f}{r['speedup']:>8.1f}x  {'yes' if r['identical'] else 'NO'}"
        )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["identical"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
