"""Compare the compiled search kernel against its pure-Python twin.

Both backends expose the same two functions and must return identical
results, node counts included; this script times them side by side on the
workloads that dominate real use: exhausting all sets below the optimum
and finding a minimum set one size up.

Run from a checkout with the package installed:

    python3 benchmarks/bench_kernels.py
"""

import time

from ajtkit import _kernels_py

try:
    from ajtkit import _kernels
except ImportError:
    _kernels = None


CASES = [
    # (p, limit, label)
    (61, 7, "exhaust below optimum"),
    (61, 8, "find minimum set"),
    (67, 7, "exhaust below optimum"),
    (67, 8, "find minimum set"),
    (101, 8, "exhaust below optimum"),
]


def run(backend, p, limit):
    t0 = time.perf_counter()
    mask, exhausted, nodes = backend.s1_exhaust(p, limit, 10**9)
    return time.perf_counter() - t0, mask, exhausted, nodes


def main():
    if _kernels is None:
        print("compiled backend not built; timing pure backend only")
    header = f"{'case':<28}{'p':>5}{'limit':>7}{'nodes':>10}"
    header += f"{'pure (s)':>11}"
    if _kernels is not None:
        header += f"{'compiled (s)':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for p, limit, label in CASES:
        t_py, mask_py, ex_py, nodes_py = run(_kernels_py, p, limit)
        line = f"{label:<28}{p:>5}{limit:>7}{nodes_py:>10}{t_py:>11.4f}"
        if _kernels is not None:
            t_c, mask_c, ex_c, nodes_c = run(_kernels, p, limit)
            assert (mask_c, ex_c, nodes_c) == (mask_py, ex_py, nodes_py), (
                f"backend mismatch at p={p} limit={limit}"
            )
            line += f"{t_c:>14.4f}{t_py / t_c:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
