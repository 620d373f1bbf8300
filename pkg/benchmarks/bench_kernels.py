"""Compare the compiled and numpy kernels on the workloads the library actually runs.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import time

import numpy as np

from lusztigsp import kernels
from lusztigsp.ffield import FieldSpec
from lusztigsp.lusztig import Algebra, product_lusztig_function
from lusztigsp.liealg import sp_generators_with_inverses


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads(quick):
    cone = (2, 3) if quick else (2, 5)
    n, p = cone
    gens = sp_generators_with_inverses(n, FieldSpec(p))
    codes = kernels.backends()["python"].nilpotent_codes(n, p)

    s = FieldSpec(3 if quick else 5)
    f = product_lusztig_function(1, 1, s)
    A = f.algebra
    xs = A.points()
    ys, w = f.support()
    yd = A.dual(ys)

    return [
        (f"nilpotent_codes n={n} p={p}", lambda impl: impl.nilpotent_codes(n, p)),
        (
            f"conjugation_orbits n={n} p={p} ({len(codes)} elements)",
            lambda impl: impl.conjugation_orbits(codes, gens, n, p),
        ),
        (
            f"character_sums {len(xs)}x{len(yd)} p={s.p}",
            lambda impl: impl.character_sums(xs, yd, w, s.p),
        ),
    ]


def same(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if np.iscomplexobj(a):
        return np.max(np.abs(a - b)) < 1e-9
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    args = ap.parse_args()

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled core not built; only the numpy path is timed")
    names = sorted(impls)
    print(f"{'workload':<52}" + "".join(f"{k:>10}" for k in names) + f"{'speedup':>9}")
    for label, run in workloads(args.quick):
        results = {k: best_of(lambda: run(impls[k]), args.repeat) for k in names}
        if len(names) == 2 and not same(results["cython"][1], results["python"][1]):
            raise SystemExit(f"backends disagree on {label}")
        row = f"{label:<52}" + "".join(f"{results[k][0]:>9.3f}s" for k in names)
        if len(names) == 2:
            row += f"{results['python'][0] / results['cython'][0]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
