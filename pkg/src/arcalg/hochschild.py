"""Bimodules over arc algebras and their Hochschild homology.

Hochschild homology is computed with the bar complex relative to the
semisimple subalgebra spanned by the idempotents::

    C_p = M ⊗_{R^e} Ā^{⊗_R p},   Ā = positive-degree part of A

with the usual differential.  A bimodule may carry a differential of
homological degree +1 (a complex of bimodules); it is folded into the total
complex in degree ``t = p - h`` with the sign ``(-1)^p``.
"""

from __future__ import annotations

import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .algebra import ArcAlgebra
from .errors import InvalidParameters, StructuralAssumptionFailed, TruncationError
from .fields import Field
from .linalg import ChainComplex, SparseMatrix, echelon, reduce_vector
from .weights import Weight

log = logging.getLogger(__name__)

Vector = dict[int, object]


class Bimodule:
    """Finite-dimensional A-bimodule given by its basis and action callbacks.

    ``left(i, k)`` returns ``basis_i * m_k`` and ``right(k, i)`` returns
    ``m_k * basis_i`` as ``{module index: coefficient}``.  Each basis vector
    sits in a single idempotent block ``e_left[k] m e_right[k]``.  Optional
    ``hdeg`` and ``differential`` make this a complex of bimodules.
    """

    def __init__(
        self,
        algebra: ArcAlgebra,
        keys: Sequence[Hashable],
        left_weight: Sequence[Weight],
        right_weight: Sequence[Weight],
        degrees: Sequence[int],
        left: Callable[[int, int], Vector],
        right: Callable[[int, int], Vector],
        hdeg: Sequence[int] | None = None,
        differential: Sequence[Vector] | None = None,
        name: str = "M",
    ):
        self.algebra = algebra
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.left_weight = list(left_weight)
        self.right_weight = list(right_weight)
        self.degrees = list(degrees)
        self.hdeg = list(hdeg) if hdeg is not None else [0] * len(self.keys)
        self.differential = list(differential) if differential is not None else None
        self.name = name
        self._left_fn = left
        self._right_fn = right
        self._left: dict[tuple[int, int], Vector] = {}
        self._right: dict[tuple[int, int], Vector] = {}
        self._lock = threading.Lock()
        self._by_left: dict[Weight, list[int]] = defaultdict(list)
        self._by_right: dict[Weight, list[int]] = defaultdict(list)
        for k in range(len(self.keys)):
            self._by_left[self.left_weight[k]].append(k)
            self._by_right[self.right_weight[k]].append(k)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def dim(self) -> int:
        return len(self.keys)

    def __repr__(self) -> str:
        return f"<Bimodule {self.name} over {self.algebra!r}, dim {self.dim}>"

    def left(self, i: int, k: int) -> Vector:
        x = self.algebra.basis[i]
        if x.cap != self.left_weight[k]:
            return {}
        hit = self._left.get((i, k))
        if hit is None:
            hit = self._left_fn(i, k)
            with self._lock:
                self._left[i, k] = hit
        return hit

    def right(self, k: int, i: int) -> Vector:
        x = self.algebra.basis[i]
        if x.cup != self.right_weight[k]:
            return {}
        hit = self._right.get((k, i))
        if hit is None:
            hit = self._right_fn(k, i)
            with self._lock:
                self._right[k, i] = hit
        return hit

    def with_left_weight(self, lam: Weight) -> list[int]:
        return self._by_left.get(lam, [])

    def with_right_weight(self, lam: Weight) -> list[int]:
        return self._by_right.get(lam, [])

    def graded_dimension(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for d in self.degrees:
            out[d] += 1
        return dict(sorted(out.items()))

    # -- checks -------------------------------------------------------------
    def check_axioms(self, samples: Iterable[tuple[int, int, int]] | None = None) -> None:
        """Verify (ab)m = a(bm), m(ab) = (ma)b and (am)b = a(mb) on basis triples."""
        A = self.algebra
        field = A.field
        nA = len(A.basis)
        if samples is None:
            samples = ((i, j, k) for i in range(nA) for j in range(nA) for k in range(self.dim))

        def lin(vec: dict, fn) -> dict:
            out: dict[int, object] = defaultdict(int)
            for k, c in vec.items():
                for k2, c2 in fn(k).items():
                    out[k2] += c * c2
            return {k: field(c) for k, c in out.items() if field(c)}

        for i, j, k in samples:
            ab = A.basis_product(i, j)
            lhs = lin(ab, lambda t: self.left(t, k))
            rhs = lin(self.left(j, k), lambda t: self.left(i, t))
            if lhs != rhs:
                raise StructuralAssumptionFailed(f"left action not associative at {(i, j, k)}")
            lhs = lin(ab, lambda t: self.right(k, t))
            rhs = lin(self.right(k, i), lambda t: self.right(t, j))
            if lhs != rhs:
                raise StructuralAssumptionFailed(f"right action not associative at {(i, j, k)}")
            lhs = lin(self.left(i, k), lambda t: self.right(t, j))
            rhs = lin(self.right(k, j), lambda t: self.left(i, t))
            if lhs != rhs:
                raise StructuralAssumptionFailed(f"actions do not commute at {(i, j, k)}")

    def check_differential(self) -> None:
        """d² = 0 and d commutes with both actions."""
        if self.differential is None:
            return
        field = self.algebra.field
        d = self.differential
        for k in range(self.dim):
            acc: dict[int, object] = defaultdict(int)
            for k2, c in d[k].items():
                for k3, c2 in d[k2].items():
                    acc[k3] += c * c2
            if any(field(v) for v in acc.values()):
                raise StructuralAssumptionFailed(f"d^2 != 0 on {self.keys[k]}")
        for i in range(len(self.algebra.basis)):
            for k in range(self.dim):
                for side in ("left", "right"):
                    act = (lambda t: self.left(i, t)) if side == "left" else (lambda t: self.right(t, i))
                    lhs: dict[int, object] = defaultdict(int)
                    for k2, c in act(k).items():
                        for k3, c2 in d[k2].items():
                            lhs[k3] += c * c2
                    rhs: dict[int, object] = defaultdict(int)
                    for k2, c in d[k].items():
                        for k3, c2 in act(k2).items():
                            rhs[k3] += c * c2
                    keys = set(lhs) | set(rhs)
                    if any(field(lhs.get(t, 0) - rhs.get(t, 0)) for t in keys):
                        raise StructuralAssumptionFailed(f"differential is not a {side} module map")


def diagonal_bimodule(A: ArcAlgebra) -> Bimodule:
    return Bimodule(
        A,
        keys=A.basis,
        left_weight=[d.cup for d in A.basis],
        right_weight=[d.cap for d in A.basis],
        degrees=A.degrees,
        left=lambda i, k: A.basis_product(i, k),
        right=lambda k, i: A.basis_product(k, i),
        name="Delta",
    )


def same_bimodule(M: Bimodule, N: Bimodule) -> bool:
    """Equal keys, idempotents, degrees and action tables (basis matched by key)."""
    if set(M.keys) != set(N.keys) or M.dim != N.dim:
        return False
    perm = [N.index[k] for k in M.keys]
    nA = len(M.algebra.basis)
    for k in range(M.dim):
        kk = perm[k]
        if (M.left_weight[k], M.right_weight[k], M.degrees[k]) != (N.left_weight[kk], N.right_weight[kk], N.degrees[kk]):
            return False
        for i in range(nA):
            if {perm[t]: c for t, c in M.left(i, k).items()} != N.left(i, kk):
                return False
            if {perm[t]: c for t, c in M.right(k, i).items()} != N.right(kk, i):
                return False
    return True


def tensor_over_A(M: Bimodule, N: Bimodule) -> Bimodule:
    """M ⊗_A N: pairs with matching middle idempotent modulo m·a ⊗ n - m ⊗ a·n."""
    A = M.algebra
    if not A.same_as(N.algebra):
        raise InvalidParameters("bimodules over different algebras")
    if M.differential is not None or N.differential is not None:
        raise InvalidParameters("tensor_over_A takes plain bimodules")
    field = A.field
    pairs = []
    for k in range(M.dim):
        for l in N.with_left_weight(M.right_weight[k]):
            pairs.append((k, l))
    pindex = {p: i for i, p in enumerate(pairs)}
    relations = []
    for i, x in enumerate(A.basis):
        for k in M.with_right_weight(x.cup):
            for l in N.with_left_weight(x.cap):
                vec: dict[int, object] = defaultdict(int)
                for k2, c in M.right(k, i).items():
                    vec[pindex[k2, l]] += c
                for l2, c in N.left(i, l).items():
                    vec[pindex[k, l2]] -= c
                vec = {t: v for t, v in vec.items() if field(v)}
                if vec:
                    relations.append(vec)
    pivots = echelon(relations, field)
    free = [t for t in range(len(pairs)) if t not in pivots]
    fpos = {t: s for s, t in enumerate(free)}

    def normal(vec: dict[int, object]) -> Vector:
        red = reduce_vector(vec, pivots, field)
        return {fpos[t]: c for t, c in red.items()}

    def left(i: int, s: int) -> Vector:
        k, l = pairs[free[s]]
        vec: dict[int, object] = defaultdict(int)
        for k2, c in M.left(i, k).items():
            vec[pindex[k2, l]] += c
        return normal(vec)

    def right(s: int, i: int) -> Vector:
        k, l = pairs[free[s]]
        vec: dict[int, object] = defaultdict(int)
        for l2, c in N.right(l, i).items():
            vec[pindex[k, l2]] += c
        return normal(vec)

    keys = [(M.keys[pairs[t][0]], N.keys[pairs[t][1]]) for t in free]
    return Bimodule(
        A,
        keys=keys,
        left_weight=[M.left_weight[pairs[t][0]] for t in free],
        right_weight=[N.right_weight[pairs[t][1]] for t in free],
        degrees=[M.degrees[pairs[t][0]] + N.degrees[pairs[t][1]] for t in free],
        left=left,
        right=right,
        name=f"({M.name} (x) {N.name})",
    )


# -- Hochschild homology --------------------------------------------------------


@dataclass
class HHResult:
    """Hochschild homology ranks by total degree.

    ``ranks`` only holds certified degrees; ``uncertified`` lists degrees that
    were partially built.  ``graded`` splits ranks by internal degree.
    """

    ranks: dict[int, int]
    graded: dict[int, dict[int, int]]
    certified_max: int
    pmax: int
    chain_dims: dict[int, int] = field(default_factory=dict)
    uncertified: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def rank_list(self) -> list[int]:
        lo = min(self.ranks, default=0)
        return [self.ranks.get(t, 0) for t in range(lo, self.certified_max + 1)]

    def to_json(self) -> dict:
        return {
            "ranks": {str(t): r for t, r in sorted(self.ranks.items())},
            "graded": {str(t): {str(q): r for q, r in sorted(g.items())} for t, g in sorted(self.graded.items())},
            "total": self.total,
            "certified_max_degree": self.certified_max,
            "bar_depth": self.pmax,
        }


def _positive_blocks(A: ArcAlgebra) -> dict[Weight, list[int]]:
    """Positive-degree basis indices grouped by cup weight."""
    out: dict[Weight, list[int]] = defaultdict(list)
    for i, d in enumerate(A.basis):
        if A.degrees[i] > 0:
            out[d.cup].append(i)
    return out


def bar_chains(A: ArcAlgebra, M: Bimodule, pmax: int) -> dict[int, list[tuple[int, ...]]]:
    """Chains (k, a_1, ..., a_p) for p = 0..pmax, keyed by p."""
    pos = _positive_blocks(A)
    basis = A.basis
    chains: dict[int, list[tuple[int, ...]]] = {p: [] for p in range(pmax + 1)}

    def grow(prefix: tuple[int, ...], start: Weight, current: Weight, p: int) -> None:
        if current == start:
            chains[p].append(prefix)
        if p == pmax:
            return
        for i in pos.get(current, ()):
            grow(prefix + (i,), start, basis[i].cap, p + 1)

    for k in range(M.dim):
        grow((k,), M.left_weight[k], M.right_weight[k], 0)
    return chains


def relative_bar_hochschild(A: ArcAlgebra, M: Bimodule, pmax: int, graded: bool = True) -> HHResult:
    """HH_*(A, M) from the relative bar complex built up to bar degree ``pmax``.

    Total degree is ``t = p - h``.  Degrees ``t <= pmax - 1 - max(h)`` are
    certified (both adjacent differentials are complete); others are reported
    in ``uncertified`` and left out of ``ranks``.
    """
    if pmax < 1:
        raise TruncationError("bar depth must be at least 1 to certify degree 0")
    if not A.same_as(M.algebra):
        raise InvalidParameters("bimodule is over a different algebra")
    field = A.field
    hmax = max(M.hdeg, default=0)
    hmin = min(M.hdeg, default=0)
    certified_max = pmax - 1 - hmax
    if certified_max < -hmax:
        raise TruncationError(f"bar depth {pmax} certifies no degree (homological span {hmin}..{hmax})")
    chains = bar_chains(A, M, pmax)
    deg = A.degrees

    def tdeg(ch: tuple[int, ...]) -> int:
        return len(ch) - 1 - M.hdeg[ch[0]]

    def qdeg(ch: tuple[int, ...]) -> int:
        return M.degrees[ch[0]] + sum(deg[i] for i in ch[1:]) if graded else 0

    slots: dict[tuple[int, int], list[tuple[int, ...]]] = defaultdict(list)
    for p, lst in chains.items():
        for ch in lst:
            slots[tdeg(ch), qdeg(ch)].append(ch)
    index = {(key): {ch: n for n, ch in enumerate(lst)} for key, lst in slots.items()}

    def boundary(ch: tuple[int, ...]) -> dict[tuple[int, ...], object]:
        out: dict[tuple[int, ...], object] = defaultdict(int)
        k, rest = ch[0], ch[1:]
        p = len(rest)
        if p:
            for k2, c in M.right(k, rest[0]).items():
                out[(k2,) + rest[1:]] += c
            for i in range(p - 1):
                sign = -1 if i % 2 == 0 else 1
                prod = A.basis_product(rest[i], rest[i + 1])
                for a, c in prod.items():
                    out[(k,) + rest[:i] + (a,) + rest[i + 2:]] += sign * c
            sign = -1 if p % 2 else 1
            for k2, c in M.left(rest[-1], k).items():
                out[(k2,) + rest[:-1]] += sign * c
        if M.differential is not None:
            sign = -1 if p % 2 else 1
            for k2, c in M.differential[k].items():
                out[(k2,) + rest] += sign * c
        return out

    qs = sorted({q for (_, q) in slots})
    ts = sorted({t for (t, _) in slots})
    ranks: dict[int, int] = defaultdict(int)
    graded_out: dict[int, dict[int, int]] = defaultdict(dict)
    tmin = min(ts, default=0)
    wanted = [t for t in range(tmin, certified_max + 1)]
    for q in qs:
        dims = {t: len(slots.get((t, q), ())) for t in range(tmin, certified_max + 2)}
        diffs = {}
        for t in range(tmin + 1, certified_max + 2):
            src = slots.get((t, q), [])
            tgt_index = index.get((t - 1, q), {})
            rows = []
            for ch in src:
                row = {}
                for target, c in boundary(ch).items():
                    c = field(c)
                    if not c:
                        continue
                    j = tgt_index.get(target)
                    if j is None:
                        raise InvalidParameters(f"boundary left the slice: {target}")
                    row[j] = c
                rows.append(row)
            diffs[t] = SparseMatrix(len(src), dims.get(t - 1, 0), rows)
        cx = ChainComplex(dims, diffs, field, check=False)
        hom = cx.homology(wanted)
        for t, r in hom.items():
            if r:
                ranks[t] += r
                graded_out[t][q] = r
    result = HHResult(
        ranks={t: ranks.get(t, 0) for t in wanted},
        graded={t: dict(sorted(g.items())) for t, g in graded_out.items()},
        certified_max=certified_max,
        pmax=pmax,
        chain_dims={p: len(lst) for p, lst in chains.items()},
        uncertified=[t for t in range(certified_max + 1, pmax - hmin + 1)],
    )
    return result


def check_bar_square_zero(A: ArcAlgebra, M: Bimodule, pmax: int) -> bool:
    """Build the total complex without grading and verify d² = 0 in every degree."""
    field = A.field
    chains = bar_chains(A, M, pmax)
    all_chains = [ch for lst in chains.values() for ch in lst]
    idx = {ch: n for n, ch in enumerate(all_chains)}
    # reuse the differential of relative_bar_hochschild via a tiny local copy
    k_deg = A.degrees  # noqa: F841

    def boundary(ch):
        out: dict[tuple[int, ...], object] = defaultdict(int)
        k, rest = ch[0], ch[1:]
        p = len(rest)
        if p:
            for k2, c in M.right(k, rest[0]).items():
                out[(k2,) + rest[1:]] += c
            for i in range(p - 1):
                sign = -1 if i % 2 == 0 else 1
                for a, c in A.basis_product(rest[i], rest[i + 1]).items():
                    out[(k,) + rest[:i] + (a,) + rest[i + 2:]] += sign * c
            sign = -1 if p % 2 else 1
            for k2, c in M.left(rest[-1], k).items():
                out[(k2,) + rest[:-1]] += sign * c
        if M.differential is not None:
            sign = -1 if p % 2 else 1
            for k2, c in M.differential[k].items():
                out[(k2,) + rest] += sign * c
        return out

    for ch in all_chains:
        if len(ch) - 1 < 2 and M.differential is None:
            continue
        acc: dict[tuple[int, ...], object] = defaultdict(int)
        for t1, c1 in boundary(ch).items():
            if t1 not in idx:
                continue
            for t2, c2 in boundary(t1).items():
                acc[t2] += c1 * c2
        if any(field(v) for v in acc.values()):
            return False
    return True
