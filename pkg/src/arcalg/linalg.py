"""Exact sparse linear algebra and chain complexes.

Matrices are stored row-wise as ``{column: value}`` dicts; a linear map
``f: V -> W`` is the matrix whose row ``k`` is ``f(basis_k)`` in W-coordinates.
Ranks over Q are exact: a modular rank is always a lower bound, so when it
meets a known upper bound it is the true rank; otherwise the matrix is
eliminated over the rationals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._kernels import DEFAULT_PRIME, rank_mod_p
from .errors import InvalidComplex, InvalidParameters
from .fields import QQ, Field

log = logging.getLogger(__name__)


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    rows: list[dict[int, object]] = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = [dict() for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise InvalidParameters("row count mismatch")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "SparseMatrix":
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, [{j: v for j, v in enumerate(r) if v} for r in dense])

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """Row-vector convention: (self then other), i.e. x -> other(self(x))."""
        if self.ncols != other.nrows:
            raise InvalidParameters("shape mismatch in composition")
        out = []
        for r in self.rows:
            acc: dict[int, object] = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.append({j: v for j, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, out)

    def is_zero(self, field: Field = QQ) -> bool:
        return all(not field(v) for r in self.rows for v in r.values())

    def transpose(self) -> "SparseMatrix":
        out: list[dict[int, object]] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[j][i] = v
        return SparseMatrix(self.ncols, self.nrows, out)

    def to_csr(self, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        indptr = [0]
        indices: list[int] = []
        data: list[int] = []
        for r in self.rows:
            for j, v in r.items():
                if isinstance(v, Fraction):
                    v = v.numerator * pow(v.denominator, -1, p)
                v = int(v) % p
                if v:
                    indices.append(j)
                    data.append(v)
            indptr.append(len(indices))
        return (np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64),
                np.asarray(data, dtype=np.int64))


def echelon(rows: Iterable[dict[int, object]], field: Field = QQ, limit: int | None = None) -> dict[int, dict[int, object]]:
    """Row echelon basis of the span of ``rows``: {pivot column: row with 1 at the pivot}."""
    pivots: dict[int, dict[int, object]] = {}
    for row in sorted(rows, key=len):
        if limit is not None and len(pivots) >= limit:
            break
        r = {j: field(v) for j, v in row.items() if field(v)}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = field.inv(r[c])
                pivots[c] = {j: field(v * inv) for j, v in r.items()}
                break
            f = r[c]
            for j, v in piv.items():
                nv = field(r.get(j, 0) - f * v)
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
    return pivots


def rank_exact(mat: SparseMatrix, field: Field = QQ) -> int:
    # eliminate along the shorter side
    m = mat if mat.ncols <= mat.nrows else mat.transpose()
    return len(echelon(m.rows, field))


def rank(mat: SparseMatrix, field: Field = QQ, upper: int | None = None, prime: int = DEFAULT_PRIME) -> int:
    """Exact rank.  ``upper`` is a proven upper bound (e.g. a nullity) used to certify a modular rank."""
    bound = min(mat.nrows, mat.ncols)
    if upper is not None:
        bound = min(bound, upper)
    if bound == 0 or mat.nnz() == 0:
        return 0
    p = field.characteristic or prime
    m = mat if mat.ncols <= mat.nrows else mat.transpose()
    r = rank_mod_p(*m.to_csr(p), m.ncols, p=p, limit=bound)
    if field.characteristic or r == bound:
        return r
    log.debug("modular rank %d below bound %d on %dx%d; eliminating over Q", r, bound, mat.nrows, mat.ncols)
    return rank_exact(mat, field)


def reduce_vector(vec: dict[int, object], pivots: dict[int, dict[int, object]], field: Field = QQ) -> dict[int, object]:
    """Normal form of ``vec`` modulo the span of an :func:`echelon` basis."""
    r = {j: field(v) for j, v in vec.items() if field(v)}
    changed = True
    while changed:
        changed = False
        for c in sorted(c for c in r if c in pivots):
            if c not in r:
                continue
            f = r[c]
            for j, v in pivots[c].items():
                nv = field(r.get(j, 0) - f * v)
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
            changed = True
    return r


def in_span(vec: dict[int, object], pivots: dict[int, dict[int, object]], field: Field = QQ) -> bool:
    return not reduce_vector(vec, pivots, field)


@dataclass
class ChainComplex:
    """Homologically graded complex; ``diffs[k]`` maps degree k to degree k-1.

    ``dims`` covers every degree in the window; missing differentials are zero.
    """

    dims: dict[int, int]
    diffs: dict[int, SparseMatrix] = field(default_factory=dict)
    field: Field = QQ
    check: bool = True

    def __post_init__(self):
        for k, d in self.diffs.items():
            if d.nrows != self.dims.get(k, 0) or d.ncols != self.dims.get(k - 1, 0):
                raise InvalidParameters(f"differential d_{k} has shape {d.nrows}x{d.ncols}")
        if self.check:
            self.check_square_zero()

    def check_square_zero(self) -> None:
        for k, d in self.diffs.items():
            nxt = self.diffs.get(k - 1)
            if nxt is None or d.nrows == 0:
                continue
            if not d.compose(nxt).is_zero(self.field):
                raise InvalidComplex(f"d_{k - 1} d_{k} != 0")

    def homology(self, degrees: Iterable[int] | None = None) -> dict[int, int]:
        """Betti numbers; ranks are certified exact (see :func:`rank`)."""
        degrees = sorted(self.dims) if degrees is None else sorted(degrees)
        ranks: dict[int, int] = {}
        lo = min(self.dims, default=0)
        # ascending order lets each rank bound the next by a nullity
        for k in sorted(set(self.dims) | {max(degrees, default=0) + 1}):
            d = self.diffs.get(k)
            if d is None:
                ranks[k] = 0
                continue
            upper = self.dims.get(k - 1, 0) - ranks.get(k - 1, 0) if k - 1 >= lo else None
            ranks[k] = rank(d, self.field, upper=upper)
        return {k: self.dims.get(k, 0) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in degrees}


def rref(rows: Iterable[dict[int, object]], field: Field = QQ) -> dict[int, dict[int, object]]:
    """Reduced echelon basis: each row has 1 at its pivot and 0 at every other pivot.

    Coordinates of a vector ``v`` in the span are then ``{c: v[c]}`` over pivots ``c``.
    """
    pivots = echelon(rows, field)
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for c2 in sorted(pivots):
            if c2 >= c:
                break
            other = pivots[c2]
            f = other.get(c)
            if f:
                for j, v in row.items():
                    nv = field(other.get(j, 0) - f * v)
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
    return pivots


def left_kernel(rows: Sequence[dict[int, object]], field: Field = QQ) -> list[dict[int, object]]:
    """Basis of {x : Σ_k x_k rows[k] = 0}, as sparse vectors indexed by row number."""
    pivots: dict[int, tuple[dict[int, object], dict[int, object]]] = {}
    kernel = []
    for k, row in enumerate(rows):
        r = {j: field(v) for j, v in row.items() if field(v)}
        track: dict[int, object] = {k: field(1)}
        while r:
            c = min(r)
            hit = pivots.get(c)
            if hit is None:
                inv = field.inv(r[c])
                pivots[c] = ({j: field(v * inv) for j, v in r.items()}, {j: field(v * inv) for j, v in track.items()})
                break
            prow, ptrack = hit
            f = r[c]
            for j, v in prow.items():
                nv = field(r.get(j, 0) - f * v)
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
            for j, v in ptrack.items():
                nv = field(track.get(j, 0) - f * v)
                if nv:
                    track[j] = nv
                else:
                    track.pop(j, None)
        else:
            kernel.append(track)
    return kernel
