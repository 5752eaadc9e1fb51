"""Verification suites; each acceptance criterion is one function returning a CheckResult."""

from __future__ import annotations

import itertools
import logging
import math
import os
import random
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import (
    ArcAlgebra,
    cl_diagram,
    in_ideal_weight,
    opposite_iso,
    pd_algebra,
    pd_iso,
    verify_quotient_iso,
)
from .braids import (
    BraidWord,
    akh,
    identity_matches_diagonal,
    jones,
    kh_cube,
    semi_orthogonal_identity,
)
from .fields import QQ, Field
from .hochschild import diagonal_bimodule, relative_bar_hochschild
from .linalg import rref
from .modules import (
    decomposition_data,
    degree_zero_is_idempotent_span,
    projective,
    regular_module,
    standard,
)
from .weights import OrientedCircleDiagram, _match, max_weight, orientations_of, reflect, rotate_diagram

log = logging.getLogger(__name__)

Diagram = OrientedCircleDiagram


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.failures[0]}" if self.failures else ""
        return f"{status} [{self.key}] {self.title} ({self.seconds:.1f}s){extra}"

    def to_json(self) -> dict:
        return {"key": self.key, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "details": self.details, "failures": self.failures[:20]}


class _Collector:
    def __init__(self):
        self.failures: list[str] = []
        self.counts: dict[str, int] = defaultdict(int)

    def expect(self, ok: bool, tag: str, message: str) -> None:
        self.counts[tag] += 1
        if not ok:
            self.failures.append(f"{tag}: {message}")


def _timed(key: str, title: str, body: Callable[[_Collector], dict | None]) -> CheckResult:
    start = time.perf_counter()
    col = _Collector()
    try:
        details = body(col) or {}
    except Exception as exc:  # a crash is a failure, reported with its message
        log.exception("check %s crashed", key)
        col.failures.append(f"{type(exc).__name__}: {exc}")
        details = {}
    details = {**details, "checks": dict(col.counts)}
    return CheckResult(key, title, not col.failures, time.perf_counter() - start, details, col.failures)


# -- helpers -------------------------------------------------------------------------------


def _vec_product(A: ArcAlgebra, u: dict[int, object], v: dict[int, object]) -> dict[int, object]:
    acc: dict[int, object] = defaultdict(int)
    for i, a in u.items():
        for j, b in v.items():
            for k, c in A.basis_product(i, j).items():
                acc[k] += a * b * c
    return {k: c for k, c in acc.items() if c}


def _composable(A: ArcAlgebra) -> dict:
    by_cup = defaultdict(list)
    for i, d in enumerate(A.basis):
        by_cup[d.cup].append(i)
    return by_cup


def _structure_on(A: ArcAlgebra, col: _Collector, triples: Iterable[tuple[int, int, int]],
                  pairs: Iterable[tuple[int, int]], rng: random.Random) -> None:
    tag = repr(A)
    for i, j in pairs:
        x, y = A.basis[i], A.basis[j]
        prod = A.basis_product(i, j)
        if x.cap != y.cup:
            col.expect(not prod, f"{tag} idempotent blocks", f"{x}*{y} should vanish")
            continue
        col.expect(all(A.degrees[k] == A.degrees[i] + A.degrees[j] for k in prod),
                   f"{tag} degree", f"{x}*{y} not homogeneous")
        # order independence: reversed and one random surgery order
        cups = len(_match(A.lift_labels(x.cap.labels))[0])
        if cups > 1:
            for order in (list(reversed(range(cups))), rng.sample(range(cups), cups)):
                col.expect(A.basis_product(i, j, order=order) == prod, f"{tag} surgery order",
                           f"{x}*{y} depends on order {order}")
    for i, j, k in triples:
        lhs = _vec_product(A, _vec_product(A, {i: 1}, {j: 1}), {k: 1})
        rhs = _vec_product(A, {i: 1}, _vec_product(A, {j: 1}, {k: 1}))
        col.expect(lhs == rhs, f"{tag} associativity", f"{A.basis[i]}, {A.basis[j]}, {A.basis[k]}")


def _unit_and_idempotents(A: ArcAlgebra, col: _Collector, sample: Iterable[int]) -> None:
    tag = repr(A)
    one = {A.idempotent_index(w): 1 for w in A.weights}
    for i in sample:
        col.expect(_vec_product(A, one, {i: 1}) == {i: 1}, f"{tag} unit", f"1*{A.basis[i]}")
        col.expect(_vec_product(A, {i: 1}, one) == {i: 1}, f"{tag} unit", f"{A.basis[i]}*1")
    for a in A.weights:
        for b in A.weights:
            got = A.basis_product(A.idempotent_index(a), A.idempotent_index(b))
            want = {A.idempotent_index(a): 1} if a == b else {}
            col.expect(got == want, f"{tag} orthogonal idempotents", f"e_{a} e_{b}")


def cancelling_products(A: ArcAlgebra, col: _Collector) -> None:
    """(b λ λ̄)(λ̲ λ a) = b λ a whenever both factors are basis diagrams.

    Checked literally, and separately for the weaker statement that b λ a
    occurs with coefficient 1 (so the product is nonzero).
    """
    tag = repr(A)
    for lam in A.weights:
        left = [i for i, d in enumerate(A.basis) if d.cap == lam and d.mid == lam]
        right = [i for i, d in enumerate(A.basis) if d.cup == lam and d.mid == lam]
        for i in left:
            for j in right:
                b, a = A.basis[i].cup, A.basis[j].cap
                target = Diagram(b, lam, a)
                prod = A.basis_product(i, j)
                ok = target in A.index and prod == {A.index[target]: 1}
                extra = ", ".join(str(A.basis[k]) for k in prod if A.basis[k] != target)
                col.expect(ok, f"{tag} cancelling product", f"{A.basis[i]} * {A.basis[j]} also gives {extra}")
                lead = target in A.index and prod.get(A.index[target]) == 1
                col.expect(lead, f"{tag} cancelling product coefficient", f"{A.basis[i]} * {A.basis[j]}")


def block_cyclicity(A: ArcAlgebra, col: _Collector) -> None:
    """Each nonzero block has a 1-dim minimal-degree part generating it from either side."""
    tag = repr(A)
    F = A.field
    for b in A.weights:
        for a in A.weights:
            idx = A.block(b, a)
            if not idx:
                continue
            low = min(A.degrees[k] for k in idx)
            mins = [k for k in idx if A.degrees[k] == low]
            col.expect(len(mins) == 1, f"{tag} minimal degree", f"block ({b},{a}) has {len(mins)} minimal elements")
            g = mins[0]
            left = [A.basis_product(y, g) for y in A.block(b, b)]
            right = [A.basis_product(g, y) for y in A.block(a, a)]
            col.expect(len(rref(left, F)) == len(idx), f"{tag} cyclic (left)", f"block ({b},{a})")
            col.expect(len(rref(right, F)) == len(idx), f"{tag} cyclic (right)", f"block ({b},{a})")


def trichotomy(A: ArcAlgebra, col: _Collector) -> None:
    tag = repr(A)
    for l0 in A.weights:
        for l1 in A.weights:
            ors = orientations_of(l1, l0)
            ok = (not ors) or any(eta not in (l0, l1) for eta in ors) or \
                l0 == max_weight(l1) or l1 == max_weight(l0)
            col.expect(ok, f"{tag} trichotomy", f"({l0}, {l1})")


# -- acceptance criteria ---------------------------------------------------------------------


def check_dimensions(field: Field = QQ) -> CheckResult:
    def body(col: _Collector) -> dict:
        K = ArcAlgebra.K(1, 2, field)
        H = ArcAlgebra.H(2, field)
        col.expect(K.dim == 5, "dim K(1,2)", f"got {K.dim}")
        col.expect(K.graded_dimension() == {0: 2, 1: 2, 2: 1}, "graded K(1,2)", f"got {K.graded_dimension()}")
        col.expect(H.dim == 12, "dim H(2)", f"got {H.dim}")
        return {"K(1,2)": K.graded_dimension(), "H(2)": H.dim}

    return _timed("1", "Algebra dimensions", body)


def check_structure(field: Field = QQ, seed: int = 0, samples: int = 10_000,
                    exhaustive=((1, 2), (1, 3), (2, 3), (2, 4)), randomized=((2, 5), (3, 6))) -> CheckResult:
    def body(col: _Collector) -> dict:
        rng = random.Random(seed)
        for n, m in exhaustive:
            A = ArcAlgebra.K(n, m, field)
            by_cup = _composable(A)
            pairs = list(itertools.product(range(A.dim), repeat=2))
            triples = ((i, j, k) for i in range(A.dim) for j in by_cup[A.basis[i].cap]
                       for k in by_cup[A.basis[j].cap])
            _structure_on(A, col, triples, pairs, rng)
            _unit_and_idempotents(A, col, range(A.dim))
            cancelling_products(A, col)
            block_cyclicity(A, col)
            trichotomy(A, col)
        for n, m in randomized:
            A = ArcAlgebra.K(n, m, field)
            by_cup = _composable(A)
            pairs, triples = [], []
            for _ in range(samples):
                i = rng.randrange(A.dim)
                j = rng.choice(by_cup[A.basis[i].cap])
                k = rng.choice(by_cup[A.basis[j].cap])
                pairs.append((i, j))
                triples.append((i, j, k))
            pairs.extend((rng.randrange(A.dim), rng.randrange(A.dim)) for _ in range(samples // 10))
            _structure_on(A, col, triples, pairs, rng)
            _unit_and_idempotents(A, col, rng.sample(range(A.dim), min(A.dim, 200)))
            cancelling_products(A, col)
            trichotomy(A, col)
        return {"exhaustive": [list(p) for p in exhaustive], "randomized": [list(p) for p in randomized],
                "samples": samples, "seed": seed}

    return _timed("2", "Structure suite", body)


def check_isomorphisms(field: Field = QQ, sizes=((1, 3), (2, 4)), quotient_sizes=((1, 2), (1, 3))) -> CheckResult:
    def body(col: _Collector) -> dict:
        for n, m in sizes:
            A = ArcAlgebra.K(n, m, field)
            B = pd_algebra(A)
            for i, x in enumerate(A.basis):
                col.expect(reflect(x) in A.index and reflect(x).degree == x.degree, f"K({n},{m}) reflect basis", str(x))
                col.expect(rotate_diagram(x) in B.index and rotate_diagram(x).degree == x.degree,
                           f"K({n},{m}) rotate basis", str(x))
            for i, x in enumerate(A.basis):
                ex = A.basis_element(i)
                for j, y in enumerate(A.basis):
                    ey = A.basis_element(j)
                    xy = ex * ey
                    col.expect(opposite_iso(xy) == opposite_iso(ey) * opposite_iso(ex),
                               f"K({n},{m}) reflection anti-multiplicative", f"{x}, {y}")
                    col.expect(pd_iso(xy, B) == pd_iso(ey, B) * pd_iso(ex, B),
                               f"K({n},{m}) rotation anti-multiplicative", f"{x}, {y}")
        reports = []
        for n, m in quotient_sizes:
            for which in ("bc", "be"):
                rep = verify_quotient_iso(which, n, m, field)
                reports.append(rep.to_json())
                col.expect(rep.passed, f"quotient {which}", f"{rep.name}: {rep.counterexample}")
            A = ArcAlgebra.K(n, m, field)
            H = ArcAlgebra.H(m, field)
            for i, x in enumerate(A.basis):
                for j, y in enumerate(A.basis):
                    want = {cl_diagram(A.basis[k]): c for k, c in A.basis_product(i, j).items()}
                    got = {}
                    if x.cap == y.cup:
                        hi, hj = H.index[cl_diagram(x)], H.index[cl_diagram(y)]
                        for k, c in H.basis_product(hi, hj).items():
                            d = H.basis[k]
                            if not in_ideal_weight(d.mid, "I", n, m):
                                got[d] = c
                    col.expect(got == want, f"cl multiplicative K({n},{m})", f"{x}, {y}")
        return {"quotients": reports}

    return _timed("3", "Isomorphism suite", body)


def check_hochschild(field: Field = QQ, sizes=((1, 2), (1, 3), (2, 4)), depth: int = 5) -> CheckResult:
    def body(col: _Collector) -> dict:
        out = {}
        for n, m in sizes:
            A = ArcAlgebra.K(n, m, field)
            res = relative_bar_hochschild(A, diagonal_bimodule(A), depth)
            ranks = res.rank_list()
            out[f"K({n},{m})"] = {"ranks": ranks, "chain_dims": res.chain_dims}
            col.expect(res.certified_max >= 3, "truncation", f"K({n},{m}) certified only to {res.certified_max}")
            col.expect(ranks[:1] == [math.comb(m, n)], f"HH_0 K({n},{m})", f"got {ranks[:1]}, want {math.comb(m, n)}")
            col.expect(ranks[1:4] == [0, 0, 0], f"HH_1..3 K({n},{m})", f"got {ranks[1:4]}")
        return out

    return _timed("4", "Hochschild homology of arc algebras", body)


def _poly_square(p: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    for a, x in p.items():
        for b, y in p.items():
            out[a + b] += x * y
    return dict(out)


def check_modules(field: Field = QQ, n_max: int = 2, m_max: int = 5) -> CheckResult:
    def body(col: _Collector) -> dict:
        sizes = [(n, m) for m in range(1, m_max + 1) for n in range(0, min(n_max, m) + 1)]
        for n, m in sizes:
            A = ArcAlgebra.K(n, m, field)
            tag = repr(A)
            reg = regular_module(A)
            seen = []
            for lam in A.weights:
                P = projective(A, lam)
                seen.extend(P.labels)
                for s, d in enumerate(P.labels):
                    k = A.index[d]
                    for i in range(A.dim):
                        got = {P.labels[t]: c for t, c in P.act(s, i).items()}
                        want = {A.basis[t]: c for t, c in reg.act(k, i).items()}
                        if got != want:
                            col.expect(False, f"{tag} P(λ) action", f"{lam}, {d}, {A.basis[i]}")
                            break
            col.expect(sorted(seen, key=Diagram.sort_key) == sorted(A.basis, key=Diagram.sort_key),
                       f"{tag} ⊕P(λ) = A", "basis partition")
            col.expect(degree_zero_is_idempotent_span(A), f"{tag} degree 0", "not the idempotent span")
            total: dict[int, int] = defaultdict(int)
            for lam in A.weights:
                V = standard(A, lam)
                for e, c in _poly_square(V.graded_dimension()).items():
                    total[e] += c
            col.expect({e: c for e, c in total.items() if c} == A.graded_dimension(),
                       f"{tag} Σ dim_q V(λ)²", f"{dict(total)} vs {A.graded_dimension()}")
            dd = decomposition_data(A)
            col.expect(dd.unitriangular, f"{tag} D unitriangular", "")
            col.expect(dd.factorization_holds, f"{tag} DᵀD = Cartan", "")
        return {"sizes": [list(s) for s in sizes]}

    return _timed("5", "Module numerology", body)


def _words(n: int, length: int) -> Iterable[BraidWord]:
    letters = [s * i for i in range(1, n) for s in (1, -1)]
    for ell in range(length + 1):
        for w in itertools.product(letters, repeat=ell):
            yield BraidWord(n, w)


def check_khovanov(field: Field = QQ, max_length: int = 4) -> CheckResult:
    def body(col: _Collector) -> dict:
        count = 0
        for n in (2, 3):
            for w in _words(n, max_length):
                count += 1
                col.expect(kh_cube(w, field).euler() == jones(w), "χ_q = Jones", str(w))
        unknots = [BraidWord(1), BraidWord(2, (1,)), BraidWord(3, (1, 2))]
        ranks = [kh_cube(b, field).total for b in unknots]
        col.expect(ranks == [2, 2, 2], "unknot rank", f"got {ranks}")
        trefoil = kh_cube(BraidWord(2, (1, 1, 1)), field).total
        col.expect(trefoil == 4, "trefoil rank", f"got {trefoil}")
        return {"words": count, "unknot_ranks": ranks, "trefoil_rank": trefoil}

    return _timed("6", "Khovanov oracle self-consistency", body)


def check_annular(field: Field = QQ, conjugations: bool = True) -> CheckResult:
    def body(col: _Collector) -> dict:
        out: dict = {}
        for n in (1, 2, 3):
            res = akh(BraidWord(n), field=field)
            col.expect(res.is_complete, "trivial braid complete", f"n={n}")
            col.expect(res.total == 2 ** n, "trivial braid total", f"n={n}: {res.total}")
            for j, r in res.sectors.items():
                col.expect(r.ranks.get(0, 0) == math.comb(n, j) and r.total == r.ranks.get(0, 0),
                           "trivial braid sector", f"n={n}, j={j}: {r.ranks}")
            out[f"trivial Br{n}"] = res.sector_totals()
            for j in range(n + 1):
                for layers in (0, 1):
                    col.expect(identity_matches_diagonal(j, n, layers, field), "B(id) = Δ", f"j={j}, n={n}")
        if conjugations:
            cases = [(BraidWord(2, (1,)), [BraidWord(2, (1,)), BraidWord(2, (-1,))]),
                     (BraidWord(2, (1, 1)), [BraidWord(2, (1,))]),
                     (BraidWord(3, (1, 2)), [BraidWord(3, (1,)), BraidWord(3, (2,))])]
            for beta, conj in cases:
                base = akh(beta, field=field)
                out[f"akh[{beta}]"] = base.sector_totals()
                for c in conj:
                    word = beta.conjugate(c)
                    other = akh(word, field=field)
                    col.expect(base.is_complete and other.is_complete, "complete", str(word))
                    col.expect(other.sector_totals() == base.sector_totals(), "conjugation invariance",
                               f"{beta} vs {word}: {base.sector_totals()} / {other.sector_totals()}")
        return out

    return _timed("7", "Annular suite", body)


def check_spectral(field: Field = QQ, max_m: int = 8) -> CheckResult:
    def body(col: _Collector) -> dict:
        words = [BraidWord(2), BraidWord(2, (1,)), BraidWord(2, (1, 1)), BraidWord(2, (1, 1, 1)),
                 BraidWord(3, (1, 2))]
        out = {}
        for w in words:
            a = akh(w, field=field)
            k = kh_cube(w, field).total
            out[str(w) + f" (Br{w.n})"] = {"akh": a.total, "kh": k}
            col.expect(a.is_complete, "AKh complete", str(w))
            col.expect(a.total >= k, "rank AKh ≥ rank Kh", f"{w}: {a.total} < {k}")
            col.expect((a.total - k) % 2 == 0, "parity", f"{w}: {a.total} vs {k}")
        for m in range(max_m + 1):
            for n in range(m + 1):
                col.expect(semi_orthogonal_identity(n, m), "binomial identity", f"({n},{m})")
        return out

    return _timed("8", "Spectral-sequence constraints", body)


CRITERIA: dict[str, Callable[..., CheckResult]] = {
    "1": check_dimensions,
    "2": check_structure,
    "3": check_isomorphisms,
    "4": check_hochschild,
    "5": check_modules,
    "6": check_khovanov,
    "7": check_annular,
    "8": check_spectral,
}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ARCALG_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str = "quick", field: Field = QQ, seed: int = 0, n_max: int = 2, m_max: int = 4) -> list[CheckResult]:
    """``quick``: fast subset; ``algebra``: algebra and module checks up to (n_max, m_max); ``full``: every criterion."""
    if suite == "quick":
        jobs = [
            lambda: check_dimensions(field),
            lambda: check_structure(field, seed, samples=500, exhaustive=((1, 2), (1, 3), (2, 3)), randomized=((2, 4),)),
            lambda: check_isomorphisms(field, sizes=((1, 3),), quotient_sizes=((1, 2),)),
            lambda: check_hochschild(field, sizes=((1, 2), (1, 3))),
            lambda: check_modules(field, 2, 4),
            lambda: check_khovanov(field, max_length=3),
        ]
    elif suite == "algebra":
        ex = tuple((n, m) for m in range(1, m_max + 1) for n in range(1, min(n_max, m) + 1))
        jobs = [
            lambda: check_dimensions(field),
            lambda: check_structure(field, seed, samples=1000, exhaustive=ex, randomized=()),
            lambda: check_isomorphisms(field, sizes=tuple(s for s in ex if s[1] <= 4),
                                       quotient_sizes=tuple(s for s in ex if s[1] <= 3)),
            lambda: check_modules(field, n_max, m_max),
        ]
    elif suite == "full":
        jobs = [
            lambda: check_dimensions(field),
            lambda: check_structure(field, seed),
            lambda: check_isomorphisms(field),
            lambda: check_hochschild(field),
            lambda: check_modules(field),
            lambda: check_khovanov(field),
            lambda: check_annular(field),
            lambda: check_spectral(field),
        ]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    threads = _threads()
    if threads == 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), jobs))
