"""Modular row-reduction kernels.

Two interchangeable implementations of ``rank_mod_p``: a numba ``@njit`` loop
and a blocked numpy path.  ``ARCALG_DISABLE_NUMBA=1`` (or numba missing)
selects numpy.  Both keep a reduced row echelon basis and stop as soon as the
rank reaches ``limit``.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_PRIME = 1_000_003

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("ARCALG_DISABLE_NUMBA", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes")


def _rank_loop(indptr, indices, data, ncols, p, limit):
    nrows = indptr.shape[0] - 1
    cap = min(limit, ncols)
    basis = np.zeros((max(cap, 1), ncols), dtype=np.int64)
    pivcol = np.full(max(cap, 1), -1, dtype=np.int64)
    where = np.full(ncols, -1, dtype=np.int64)  # pivot column -> basis row
    row = np.zeros(ncols, dtype=np.int64)
    rank = 0
    for r in range(nrows):
        if rank >= cap:
            break
        start, stop = indptr[r], indptr[r + 1]
        if start == stop:
            continue
        for c in range(ncols):
            row[c] = 0
        for k in range(start, stop):
            row[indices[k]] = (row[indices[k]] + data[k]) % p
        # basis is in RREF: one pass clears every pivot column
        for k in range(rank):
            c = pivcol[k]
            f = row[c]
            if f != 0:
                for j in range(ncols):
                    if basis[k, j] != 0:
                        row[j] = (row[j] - f * basis[k, j]) % p
        lead = -1
        for c in range(ncols):
            if row[c] != 0:
                lead = c
                break
        if lead < 0:
            continue
        # normalise: inverse by Fermat
        inv = 1
        b, e = row[lead], p - 2
        while e > 0:
            if e & 1:
                inv = (inv * b) % p
            b = (b * b) % p
            e >>= 1
        for j in range(ncols):
            row[j] = (row[j] * inv) % p
        for k in range(rank):
            f = basis[k, lead]
            if f != 0:
                for j in range(ncols):
                    if row[j] != 0:
                        basis[k, j] = (basis[k, j] - f * row[j]) % p
        for j in range(ncols):
            basis[rank, j] = row[j]
        pivcol[rank] = lead
        where[lead] = rank
        rank += 1
    return rank


if HAVE_NUMBA:
    _rank_loop_jit = njit(cache=True)(_rank_loop)
else:  # pragma: no cover
    _rank_loop_jit = None


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (2**62) // (p * p))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[1], step):
        out = (out + a[:, s:s + step] @ b[s:s + step]) % p
    return out


def _rank_numpy(indptr, indices, data, ncols, p, limit, chunk=256):
    nrows = indptr.shape[0] - 1
    cap = min(limit, ncols)
    basis = np.zeros((0, ncols), dtype=np.int64)
    pivots: list[int] = []
    for lo in range(0, nrows, chunk):
        if len(pivots) >= cap:
            break
        hi = min(nrows, lo + chunk)
        block = np.zeros((hi - lo, ncols), dtype=np.int64)
        rows = np.repeat(np.arange(hi - lo), np.diff(indptr[lo:hi + 1]))
        np.add.at(block, (rows, indices[indptr[lo]:indptr[hi]]), data[indptr[lo]:indptr[hi]])
        block %= p
        if pivots:
            block = (block - _mulmod(block[:, pivots], basis, p)) % p
        new_rows = []
        new_piv = []
        for i in range(block.shape[0]):
            if len(pivots) + len(new_piv) >= cap:
                break
            nz = np.flatnonzero(block[i])
            if nz.size == 0:
                continue
            c = int(nz[0])
            v = block[i] * pow(int(block[i, c]), -1, p) % p
            below = block[i + 1:, c].copy()
            if below.any():
                block[i + 1:] = (block[i + 1:] - np.outer(below, v)) % p
            for k, prev in enumerate(new_rows):
                f = prev[c]
                if f:
                    new_rows[k] = (prev - f * v) % p
            new_rows.append(v)
            new_piv.append(c)
        if new_rows:
            fresh = np.array(new_rows, dtype=np.int64)
            if pivots:
                basis = (basis - _mulmod(basis[:, new_piv], fresh, p)) % p
            basis = np.vstack([basis, fresh])
            pivots.extend(new_piv)
    return min(len(pivots), cap)


def rank_mod_p(indptr, indices, data, ncols: int, p: int = DEFAULT_PRIME, limit: int | None = None,
               backend: str | None = None) -> int:
    """Rank over GF(p) of a CSR integer matrix, capped at ``limit``."""
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    data = np.asarray(data, dtype=np.int64) % p
    nrows = indptr.shape[0] - 1
    if limit is None:
        limit = min(nrows, ncols)
    if ncols == 0 or nrows == 0 or limit <= 0:
        return 0
    if backend is None:
        backend = "numba" if numba_enabled() else "numpy"
    if backend == "numba":
        if p >= 2**31:
            raise ValueError("numba kernel needs p < 2**31")
        return int(_rank_loop_jit(indptr, indices, data, ncols, p, limit))
    return int(_rank_numpy(indptr, indices, data, ncols, p, limit))
