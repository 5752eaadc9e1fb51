"""Right modules over K(n, m): projectives, standards, simples and their numerology."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import ArcAlgebra
from .errors import InvalidParameters, StructuralAssumptionFailed
from .linalg import left_kernel, reduce_vector, rref
from .weights import OrientedCircleDiagram, Weight, bruhat_leq, cup_degree, is_oriented_cup

Diagram = OrientedCircleDiagram
Vector = dict[int, object]


class RightModule:
    """Finite-dimensional graded right module with a homogeneous basis.

    ``weights[k]`` is the idempotent fixing basis vector k from the right;
    ``act(k, i)`` returns ``m_k · basis_i`` as a sparse vector.
    """

    def __init__(self, algebra: ArcAlgebra, degrees: Sequence[int], weights: Sequence[Weight],
                 act: Callable[[int, int], Vector], labels: Sequence[object] | None = None, name: str = "M"):
        self.algebra = algebra
        self.degrees = list(degrees)
        self.weights = list(weights)
        self.labels = list(labels) if labels is not None else list(range(len(self.degrees)))
        self.name = name
        self._act = act
        self._memo: dict[tuple[int, int], Vector] = {}

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __repr__(self) -> str:
        return f"<RightModule {self.name}, dim {self.dim}>"

    def act(self, k: int, i: int) -> Vector:
        if self.algebra.basis[i].cup != self.weights[k]:
            return {}
        hit = self._memo.get((k, i))
        if hit is None:
            hit = self._act(k, i)
            self._memo[k, i] = hit
        return hit

    def graded_dimension(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for d in self.degrees:
            out[d] += 1
        return dict(sorted(out.items()))

    def action_matrix(self, i: int) -> list[Vector]:
        return [self.act(k, i) for k in range(self.dim)]

    def check(self) -> None:
        """Homogeneity, unit, and (m·x)·y = m·(xy) on all basis triples."""
        A = self.algebra
        F = A.field
        nA = len(A.basis)
        for k in range(self.dim):
            unit: dict[int, object] = defaultdict(int)
            for lam in A.weights:
                for t, c in self.act(k, A.idempotent_index(lam)).items():
                    unit[t] += c
            if {t: F(c) for t, c in unit.items() if F(c)} != {k: F(1)}:
                raise StructuralAssumptionFailed(f"idempotents do not sum to the identity on {self.name}")
            for i in range(nA):
                for t in self.act(k, i):
                    if self.degrees[t] != self.degrees[k] + A.degrees[i]:
                        raise StructuralAssumptionFailed(f"action of {A.basis[i]} is not homogeneous")
                for j in range(nA):
                    lhs: dict[int, object] = defaultdict(int)
                    for t, c in self.act(k, i).items():
                        for t2, c2 in self.act(t, j).items():
                            lhs[t2] += c * c2
                    rhs: dict[int, object] = defaultdict(int)
                    for p, c in A.basis_product(i, j).items():
                        for t2, c2 in self.act(k, p).items():
                            rhs[t2] += c * c2
                    keys = set(lhs) | set(rhs)
                    if any(F(lhs.get(t, 0) - rhs.get(t, 0)) for t in keys):
                        raise StructuralAssumptionFailed(f"action not associative on {self.name}")


def regular_module(A: ArcAlgebra) -> RightModule:
    return RightModule(A, A.degrees, [d.cap for d in A.basis], lambda k, i: A.basis_product(k, i),
                       labels=A.basis, name="A")


def _sub_by_basis(A: ArcAlgebra, keep: list[int], act: Callable[[int, int], Vector], degrees, weights,
                  labels, name) -> RightModule:
    pos = {k: s for s, k in enumerate(keep)}

    def sub_act(s: int, i: int) -> Vector:
        out = {}
        for t, c in act(keep[s], i).items():
            if t in pos:
                out[pos[t]] = c
        return out

    return RightModule(A, [degrees[k] for k in keep], [weights[k] for k in keep], sub_act,
                       labels=[labels[k] for k in keep], name=name)


def projective(A: ArcAlgebra, lam: Weight | str) -> RightModule:
    """P(λ) = e_λ A: diagrams with cup weight λ under right multiplication."""
    lam = Weight.parse(lam) if isinstance(lam, str) else lam
    if lam not in A.weight_index:
        raise InvalidParameters(f"{lam} is not a weight of {A!r}")
    keep = [k for k, d in enumerate(A.basis) if d.cup == lam]
    return _sub_by_basis(A, keep, lambda k, i: A.basis_product(k, i), A.degrees,
                         [d.cap for d in A.basis], A.basis, f"P({lam})")


def standard(A: ArcAlgebra, lam: Weight | str) -> RightModule:
    """V(λ) = P(λ)/U(λ), U(λ) = span of diagrams (λ, μ, a) with μ ≠ λ (checked to be a submodule)."""
    lam = Weight.parse(lam) if isinstance(lam, str) else lam
    P = projective(A, lam)
    bad = {k for k in range(P.dim) if P.labels[k].mid != lam}
    for k in bad:
        for i in range(len(A.basis)):
            if any(t not in bad for t in P.act(k, i)):
                raise StructuralAssumptionFailed(f"U({lam}) is not a submodule of P({lam})")
    keep = [k for k in range(P.dim) if k not in bad]
    pos = {k: s for s, k in enumerate(keep)}

    def act(s: int, i: int) -> Vector:
        return {pos[t]: c for t, c in P.act(keep[s], i).items() if t in pos}

    return RightModule(A, [P.degrees[k] for k in keep], [P.weights[k] for k in keep], act,
                       labels=[P.labels[k] for k in keep], name=f"V({lam})")


def irreducible(A: ArcAlgebra, lam: Weight | str) -> RightModule:
    """L(λ): one-dimensional, e_λ acts by 1 and everything else by 0."""
    lam = Weight.parse(lam) if isinstance(lam, str) else lam
    if lam not in A.weight_index:
        raise InvalidParameters(f"{lam} is not a weight of {A!r}")
    e = A.idempotent_index(lam)
    one = A.field(1)
    return RightModule(A, [0], [lam], lambda k, i: {0: one} if i == e else {},
                       labels=[Diagram(lam, lam, lam)], name=f"L({lam})")


def degree_zero_is_idempotent_span(A: ArcAlgebra) -> bool:
    zero = [d for k, d in enumerate(A.basis) if A.degrees[k] == 0]
    return sorted(zero, key=Diagram.sort_key) == sorted((Diagram(w, w, w) for w in A.weights), key=Diagram.sort_key)


# -- decomposition numbers ------------------------------------------------------------------


Poly = dict[int, int]


def _pmul(a: Poly, b: Poly) -> Poly:
    out: dict[int, int] = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


@dataclass
class DecompositionData:
    weights: list[Weight]
    D: list[list[Poly]]
    cartan: list[list[Poly]]
    product: list[list[Poly]]
    unitriangular: bool

    @property
    def factorization_holds(self) -> bool:
        return self.cartan == self.product

    def to_json(self) -> dict:
        def enc(mat):
            return [[{str(e): c for e, c in sorted(p.items())} for p in row] for row in mat]

        return {
            "weights": [str(w) for w in self.weights],
            "D": enc(self.D),
            "cartan": enc(self.cartan),
            "DtD_equals_cartan": self.factorization_holds,
            "unitriangular": self.unitriangular,
        }


def decomposition_data(A: ArcAlgebra) -> DecompositionData:
    """Matrix with entry [μ][λ] = q^{deg(λ̲ μ)} when μ orients the cup of λ, else 0.

    Rows are indexed by the orienting weight μ, columns by λ, so the graded
    Cartan block (a, b) equals (Dᵀ D)_{ab} = Σ_μ D[μ][a] D[μ][b].
    """
    ws = A.weights
    D = [[({cup_degree(lam, mu): 1} if is_oriented_cup(lam, mu) else {}) for lam in ws] for mu in ws]
    cartan = [[A.graded_dimension((a, b)) for b in ws] for a in ws]
    size = len(ws)
    product = []
    for a in range(size):
        row = []
        for b in range(size):
            acc: Poly = {}
            for mu in range(size):
                acc = _padd(acc, _pmul(D[mu][a], D[mu][b]))
            row.append(acc)
        product.append(row)
    # nonzero [μ][λ] forces λ ≤ μ in the Bruhat order, with 1 on the diagonal
    unitri = all(D[i][i] == {0: 1} for i in range(size)) and all(
        not D[i][j] or bruhat_leq(ws[j], ws[i]) for i in range(size) for j in range(size))
    return DecompositionData(ws, D, cartan, product, unitri)


# -- projective resolutions ------------------------------------------------------------------


@dataclass
class _Sub:
    """Homogeneous submodule of a module given by RREF basis vectors."""

    vectors: list[Vector]
    degrees: list[int]
    weights: list[Weight]


def _as_module(A: ArcAlgebra, parent: RightModule, sub: _Sub) -> RightModule:
    F = A.field
    piv = rref(sub.vectors, F)
    order = sorted(piv)
    vecs = [piv[c] for c in order]
    pos = {c: s for s, c in enumerate(order)}

    def act(s: int, i: int) -> Vector:
        acc: dict[int, object] = defaultdict(int)
        for t, c in vecs[s].items():
            for t2, c2 in parent.act(t, i).items():
                acc[t2] += c * c2
        acc = {t: F(c) for t, c in acc.items() if F(c)}
        out = {pos[t]: c for t, c in acc.items() if t in pos}
        # sanity: the image lies in the submodule
        rebuilt: dict[int, object] = defaultdict(int)
        for s2, c in out.items():
            for t, v in vecs[s2].items():
                rebuilt[t] += c * v
        if {t: F(v) for t, v in rebuilt.items() if F(v)} != acc:
            raise StructuralAssumptionFailed("kernel is not closed under the action")
        return out

    degs, wts = [], []
    for v in vecs:
        t = next(iter(v))
        degs.append(parent.degrees[t])
        wts.append(parent.weights[t])
    return RightModule(A, degs, wts, act, name=f"ker in {parent.name}")


def projective_cover_kernel(M: RightModule) -> tuple[list[tuple[Weight, int]], RightModule | None]:
    """Generators (weight, degree) of a minimal projective cover and its kernel (None if zero)."""
    A = M.algebra
    F = A.field
    positive = [i for i in range(len(A.basis)) if A.degrees[i] > 0]
    rad = []
    for k in range(M.dim):
        for i in positive:
            v = M.act(k, i)
            if v:
                rad.append(v)
    span = rref(rad, F)
    gens = []
    for k in range(M.dim):
        # basis vector k is independent of the radical iff it survives reduction
        if reduce_vector({k: 1}, span, F):
            gens.append(k)
            span = rref(list(span.values()) + [{k: F(1)}], F)
    # P = ⊕ e_{w(g)} A, mapped by y -> g·y
    cols: list[tuple[int, int]] = []  # (generator, algebra basis index)
    for g in gens:
        lam = M.weights[g]
        for i, d in enumerate(A.basis):
            if d.cup == lam:
                cols.append((g, i))
    images = [M.act(g, i) for g, i in cols]
    pdim = len(cols)
    if pdim - M.dim == 0:
        return [(M.weights[g], M.degrees[g]) for g in gens], None
    # homogeneous kernel: split by (degree, right weight)
    slots: dict[tuple[int, Weight], list[int]] = defaultdict(list)
    for s, (g, i) in enumerate(cols):
        slots[M.degrees[g] + A.degrees[i], A.basis[i].cap].append(s)
    vectors, degs, wts = [], [], []
    for (deg, wt), idx in slots.items():
        for x in left_kernel([images[s] for s in idx], F):
            vectors.append({idx[r]: c for r, c in x.items()})
            degs.append(deg)
            wts.append(wt)
    if len(vectors) != pdim - M.dim:
        raise StructuralAssumptionFailed("projective cover is not surjective")

    def p_act(s: int, i: int) -> Vector:
        g, a = cols[s]
        out = {}
        for t, c in A.basis_product(a, i).items():
            out[col_index[g, t]] = c
        return out

    col_index = {c: s for s, c in enumerate(cols)}
    P = RightModule(A, [M.degrees[g] + A.degrees[i] for g, i in cols], [A.basis[i].cap for g, i in cols],
                    p_act, name="P")
    kernel = _as_module(A, P, _Sub(vectors, degs, wts))
    return [(M.weights[g], M.degrees[g]) for g in gens], kernel


def projective_dimension(M: RightModule, limit: int = 64) -> int:
    """Length of a minimal projective resolution."""
    current = M
    for step in range(limit + 1):
        _, kernel = projective_cover_kernel(current)
        if kernel is None:
            return step
        current = kernel
    raise StructuralAssumptionFailed(f"projective dimension exceeds {limit}")


def global_dimension(A: ArcAlgebra) -> int:
    """max over simples of the projective dimension."""
    return max(projective_dimension(irreducible(A, lam)) for lam in A.weights)


@dataclass
class ModuleReport:
    algebra: ArcAlgebra
    rows: list[dict]
    decomposition: DecompositionData

    def to_json(self) -> dict:
        return {"algebra": repr(self.algebra), "weights": self.rows, **self.decomposition.to_json()}


def module_report(A: ArcAlgebra) -> ModuleReport:
    rows = []
    for lam in A.weights:
        P, V, L = projective(A, lam), standard(A, lam), irreducible(A, lam)

        def enc(M):
            return {str(e): c for e, c in M.graded_dimension().items()}

        rows.append({"weight": str(lam), "P": enc(P), "V": enc(V), "L": enc(L)})
    return ModuleReport(A, rows, decomposition_data(A))
