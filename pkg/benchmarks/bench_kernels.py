"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--order 3] [--repeat 3]
"""

import argparse
import time

from bolcensus.catalog import CATALOG, lookup
from bolcensus.groupoid import table_count
from bolcensus.kernels import BACKENDS, compile_identity


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=3, choices=(2, 3))
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    n = args.order
    programs = [compile_identity(e.identity) for e in CATALOG]
    sgr = compile_identity(lookup("SGR").identity)

    rows = []
    for name, kern in sorted(BACKENDS.items()):
        sweep, mask = best_of(lambda: kern.sweep_mask(n, 0, table_count(n), programs), args.repeat)
        bt, counts = best_of(lambda: [kern.backtrack(n, p)[0] for p in programs], args.repeat)
        assert list(mask.sum(axis=1)) == counts, "engines disagree"
        one, _ = best_of(lambda: kern.backtrack(n, sgr), args.repeat)
        rows.append((name, sweep, bt, one))

    print(f"order {n}, {len(programs)} identities, best of {args.repeat}")
    print(f"{'backend':<10}{'sweep all':>12}{'backtrack all':>16}{'backtrack SGR':>16}")
    for name, sweep, bt, one in rows:
        print(f"{name:<10}{sweep:>11.3f}s{bt:>15.3f}s{one:>15.4f}s")
    if len(rows) == 2:
        (_, cs, cb, c1), (_, ps, pb, p1) = rows
        print(f"{'speedup':<10}{ps / cs:>11.1f}x{pb / cb:>15.1f}x{p1 / c1:>15.1f}x")


if __name__ == "__main__":
    main()
