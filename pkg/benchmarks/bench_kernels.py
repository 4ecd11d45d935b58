"""Time each hot kernel on its numba and numpy paths side by side.

    python benchmarks/bench_kernels.py [--repeat 5] [--q 9] [--end-to-end]

Both paths are checked for identical output before timing.  The first numba call
compiles (or loads the on-disk cache); that warm-up is excluded from the timings.
``--end-to-end`` also times a q=7 spectrum search in fresh processes, once per
backend, switching with INTERDIST_DISABLE_NUMBA.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from interdist import kernels
from interdist.field import field_of_order
from interdist.geometry import plane
from interdist.poly import Polynomial


def cases(q: int):
    F = field_of_order(q)
    pl = plane(F)
    rng = np.random.default_rng(0)
    f = Polynomial(F, [int(c) for c in rng.integers(0, q, q)])
    sets = np.array([rng.choice(pl.n, q + 1, replace=False) for _ in range(20000)], dtype=np.int32)
    member = np.zeros(pl.n, dtype=np.int32)
    member[sets[0]] = 1
    small = plane(field_of_order(4))
    return {
        "line_hits": (f.values().astype(np.int32), F.sub_table.astype(np.int32), F.mul_table.astype(np.int32)),
        "line_counts": (member, pl.line_points),
        "batch_hist": (sets, pl.point_lines, pl.n, q + 2),
        "batch_u0": (sets, pl.point_lines, pl.n),
        "exhaustive": (small.n, 5, small.point_lines, small.n),
    }


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def end_to_end(trials: int):
    cmd = [sys.executable, "-m", "interdist.cli", "spectrum", "--field", "7",
           "--trials", str(trials), "--no-walk"]
    outputs = {}
    for label, flag in (("numpy", "1"), ("numba", "0")):
        env = dict(os.environ, INTERDIST_DISABLE_NUMBA=flag)
        t0 = time.perf_counter()
        outputs[label] = subprocess.run(cmd, env=env, capture_output=True, check=True).stdout
        print(f"spectrum q=7, {trials} trials, {label}: {time.perf_counter() - t0:.2f} s")
    if outputs["numpy"] != outputs["numba"]:
        raise SystemExit("backends produced different spectrum output")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--trials", type=int, default=200_000)
    args = ap.parse_args()

    print(f"{'kernel':<12} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}")
    for name, call_args in cases(args.q).items():
        impl = kernels.implementations(name)
        np_fn = impl["numpy"]
        t_np = best_of(np_fn, call_args, args.repeat)
        nb_fn = impl.get("numba")
        if nb_fn is None:
            print(f"{name:<12} {t_np * 1e3:>12.2f} {'n/a':>12} {'':>9}")
            continue
        if not same(np_fn(*call_args), nb_fn(*call_args)):  # also the warm-up
            raise SystemExit(f"{name}: numba and numpy disagree")
        t_nb = best_of(nb_fn, call_args, args.repeat)
        print(f"{name:<12} {t_np * 1e3:>12.2f} {t_nb * 1e3:>12.2f} {t_np / t_nb:>8.1f}x")
    if args.end_to_end:
        end_to_end(args.trials)


if __name__ == "__main__":
    main()
