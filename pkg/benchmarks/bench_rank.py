"""Compare the numba and numpy modular rank kernels.

    python3 benchmarks/bench_rank.py [--sizes 200 400 800] [--density 0.02] [--repeat 3]

Matrices are random sparse integer matrices with planted linear dependencies,
the same shape of input the bar-complex differentials produce.  The first
numba call is a warm-up so compilation time is excluded.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from arcalg import _kernels
from arcalg.linalg import SparseMatrix


def sample(n: int, density: float, seed: int) -> tuple[tuple, int]:
    rng = np.random.default_rng(seed)
    ncols = n
    dense = (rng.random((n, ncols)) < density) * rng.integers(-3, 4, (n, ncols))
    # a tenth of the rows are combinations of others
    for r in range(0, n, 10):
        a, b = rng.integers(0, n, 2)
        dense[r] = dense[a] - 2 * dense[b]
    mat = SparseMatrix.from_dense(dense.tolist())
    return mat.to_csr(_kernels.DEFAULT_PRIME), ncols


def best_of(fn, repeat: int) -> tuple[float, int]:
    best, value = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t)
    return best, value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    ap.add_argument("--density", type=float, default=0.02)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    warm, nc = sample(20, 0.2, 0)
    _kernels.rank_mod_p(*warm, nc, backend="numba")

    print(f"{'size':>6} {'rank':>6} {'numba (s)':>10} {'numpy (s)':>10} {'speedup':>8}")
    for n in args.sizes:
        csr, ncols = sample(n, args.density, n)
        t_nb, r_nb = best_of(lambda: _kernels.rank_mod_p(*csr, ncols, backend="numba"), args.repeat)
        t_np, r_np = best_of(lambda: _kernels.rank_mod_p(*csr, ncols, backend="numpy"), args.repeat)
        if r_nb != r_np:
            raise SystemExit(f"backends disagree at size {n}: {r_nb} vs {r_np}")
        print(f"{n:>6} {r_nb:>6} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
