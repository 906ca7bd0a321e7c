"""Benchmark the numba-compiled kernels against the NumPy/Python fallbacks.

Runs both variants of each hot kernel on representative workloads and prints a
timing table.  Usage:

    python benchmarks/bench_kernels.py [--heavy]

``--heavy`` adds the rank-5 enumeration, which takes a few seconds compiled
and a few minutes interpreted.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fusionrules import _kernels, named_fixture, product, su2k
from fusionrules.explorer import _involutions, _prepare


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_assoc(rows):
    big = product(named_fixture("so8_2"), named_fixture("ising")).tensor  # rank 33
    for name, tensor in [("assoc so8_2 (rank 11)", named_fixture("so8_2").tensor),
                         ("assoc so8_2 x ising (rank 33)", big)]:
        t_np, a = timed(_kernels.assoc_defect_numpy, tensor)
        if _kernels.assoc_defect_numba is not None:
            t_nb, b = timed(_kernels.assoc_defect_numba, tensor)
            assert np.array_equal(a, b)
        else:
            t_nb = float("nan")
        rows.append((name, t_nb, t_np))


def bench_power(rows):
    rule = su2k(16)
    mats = [rule.tensor[i].astype(np.float64) for i in range(rule.rank)]

    def run(fn):
        return [fn(m, 1e-8, 10 ** 6)[0] for m in mats]

    t_np, a = timed(run, _kernels.power_radius_numpy)
    if _kernels.power_radius_numba is not None:
        t_nb, b = timed(run, _kernels.power_radius_numba)
        assert np.allclose(a, b, atol=1e-12)
    else:
        t_nb = float("nan")
    rows.append(("power iteration su2k(16), all labels", t_nb, t_np))


def bench_search(rows, heavy):
    cases = [("search rank 4, mult 2", 4, 2), ("search rank 4, mult 3", 4, 3)]
    if heavy:
        cases.append(("search rank 5, mult 1", 5, 1))
    for name, rank, mult in cases:
        plans = [_prepare(rank, dual, False) for dual in _involutions(rank)]

        def run(fn):
            out = []
            for plan in plans:
                out.append(fn(plan.base, plan.orbit_a, plan.orbit_b,
                              plan.quad_ptr, plan.quads, mult, rank))
            return out

        t_py, a = timed(run, _kernels.search_tensors_python, repeat=1)
        if _kernels.search_tensors_numba is not None:
            timed(run, _kernels.search_tensors_numba, repeat=1)  # warm the JIT
            t_nb, b = timed(run, _kernels.search_tensors_numba, repeat=1)
            assert all(np.array_equal(x, y) for x, y in zip(a, b))
        else:
            t_nb = float("nan")
        rows.append((name, t_nb, t_py))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true")
    args = parser.parse_args()

    rows: list[tuple[str, float, float]] = []
    bench_assoc(rows)
    bench_power(rows)
    bench_search(rows, args.heavy)

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'fallback':>10}  {'speedup':>8}")
    for name, t_nb, t_fb in rows:
        speed = f"{t_fb / t_nb:.1f}x" if t_nb == t_nb and t_nb > 0 else "-"
        nb = f"{t_nb * 1e3:.2f}ms" if t_nb == t_nb else "n/a"
        print(f"{name:<{width}}  {nb:>10}  {t_fb * 1e3:>8.2f}ms  {speed:>8}")


if __name__ == "__main__":
    main()
