"""Arc algebras K(n, m), H(m) = H_{m,2m} and the compact subalgebras H_{n,m}.

Products of K(n, m) are computed in H_{m,2m}: both factors are lifted along
the closure map, multiplied by surgery, terms whose middle weight falls outside
the closure image are dropped, and the rest is pulled back.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .errors import InvalidParameters
from .fields import QQ, Field
from .tqft import surgery_product_labels
from .weights import (
    OrientedCircleDiagram,
    Weight,
    c_map,
    cl,
    e_map,
    enumerate_weights,
    is_compact,
    orientations_of,
    reflect,
    rotate_diagram,
)

Diagram = OrientedCircleDiagram


class ArcAlgebra:
    """Graded algebra with basis the oriented circle diagrams over ``weights``.

    ``kind`` is ``"K"`` (extended arc algebra), ``"H"`` (compact algebra
    H_{m,2m}, multiplied directly) or ``"Hc"`` (compact subalgebra H_{n,m} of
    K(n, m)).
    """

    def __init__(self, kind: str, n: int, m: int, field: Field = QQ):
        if kind not in ("K", "H", "Hc"):
            raise InvalidParameters(f"unknown algebra kind {kind!r}")
        if n < 0 or m < 0 or n > m:
            raise InvalidParameters(f"need 0 <= n <= m, got n={n}, m={m}")
        self.kind = kind
        self.n = n
        self.m = m
        self.field = field
        weights = enumerate_weights(n, m)
        if kind in ("H", "Hc"):
            weights = [w for w in weights if is_compact(w)]
        self.weights: list[Weight] = weights
        self.weight_index = {w: k for k, w in enumerate(weights)}
        basis = []
        for b in weights:
            for a in weights:
                for lam in orientations_of(b, a):
                    basis.append(Diagram(b, lam, a))
        self.basis: list[Diagram] = basis
        self.index = {d: k for k, d in enumerate(basis)}
        self.degrees = [d.degree for d in basis]
        self._blocks: dict[tuple[Weight, Weight], list[int]] = defaultdict(list)
        for k, d in enumerate(basis):
            self._blocks[d.cup, d.cap].append(k)
        self._table: dict[tuple[int, int], dict[int, int]] = {}
        self._lock = threading.Lock()

    # -- constructors ------------------------------------------------------
    @classmethod
    def K(cls, n: int, m: int, field: Field = QQ) -> "ArcAlgebra":
        return cls("K", n, m, field)

    @classmethod
    def H(cls, m: int, field: Field = QQ) -> "ArcAlgebra":
        """The compact arc algebra H_{m,2m}."""
        return cls("H", m, 2 * m, field)

    @classmethod
    def compact(cls, n: int, m: int, field: Field = QQ) -> "ArcAlgebra":
        """H_{n,m}: span of diagrams of K(n, m) with compact cup and cap weights."""
        return cls("Hc", n, m, field)

    def __repr__(self) -> str:
        if self.kind == "H":
            return f"H({self.n})"
        if self.kind == "Hc":
            return f"H_{{{self.n},{self.m}}}"
        return f"K({self.n},{self.m})"

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def same_as(self, other: "ArcAlgebra") -> bool:
        return (self.kind, self.n, self.m, self.field) == (other.kind, other.n, other.m, other.field)

    # -- basis bookkeeping -------------------------------------------------
    def block(self, b: Weight, a: Weight) -> list[int]:
        """Indices of basis diagrams with cup weight ``b`` and cap weight ``a``."""
        return self._blocks.get((b, a), [])

    def idempotent_index(self, lam: Weight) -> int:
        return self.index[Diagram(lam, lam, lam)]

    def lift_labels(self, s: str) -> str:
        if self.kind == "H":
            return s
        return "v" * (self.m - self.n) + s + "^" * self.n

    def _inside_closure(self, s: str) -> bool:
        pad = self.m - self.n
        return s.startswith("v" * pad) and s.endswith("^" * self.n)

    def _unlift(self, s: str) -> str:
        if self.kind == "H":
            return s
        return s[self.m - self.n:self.m - self.n + self.m]

    # -- multiplication ------------------------------------------------------
    def basis_product(self, i: int, j: int, order=None) -> dict[int, int]:
        """Structure constants of basis[i] * basis[j] (nonnegative integers)."""
        if order is None:
            hit = self._table.get((i, j))
            if hit is not None:
                return hit
        x, y = self.basis[i], self.basis[j]
        if x.cap != y.cup:
            out: dict[int, int] = {}
        else:
            lift = self.lift_labels
            raw = surgery_product_labels(
                lift(x.cup.labels), lift(x.mid.labels), lift(x.cap.labels),
                lift(y.cup.labels), lift(y.mid.labels), lift(y.cap.labels),
                order=order,
            )
            out = {}
            for nu, coeff in raw.items():
                if self.kind != "H" and not self._inside_closure(nu):
                    continue
                d = Diagram(x.cup, Weight(self._unlift(nu)), y.cap)
                out[self.index[d]] = coeff
        if order is None:
            with self._lock:
                self._table[i, j] = out
        return out

    def element(self, terms: Mapping[Diagram | str, object] | None = None) -> "AlgebraElement":
        out = {}
        for d, c in (terms or {}).items():
            if isinstance(d, str):
                d = Diagram.parse(d)
            if d not in self.index:
                raise InvalidParameters(f"{d} is not a basis diagram of {self!r}")
            c = self.field(c)
            if c:
                out[d] = out.get(d, 0) + c
        return AlgebraElement(self, {d: c for d, c in out.items() if c})

    def basis_element(self, k: int | Diagram) -> "AlgebraElement":
        d = self.basis[k] if isinstance(k, int) else k
        return AlgebraElement(self, {d: self.field(1)})

    def e(self, lam: Weight | str) -> "AlgebraElement":
        if isinstance(lam, str):
            lam = Weight.parse(lam)
        return self.basis_element(Diagram(lam, lam, lam))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {Diagram(w, w, w): self.field(1) for w in self.weights})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if not (x.algebra.same_as(self) and y.algebra.same_as(self)):
            raise InvalidParameters("cannot multiply elements of different algebras")
        acc: dict[int, object] = defaultdict(int)
        idx = self.index
        for dx, cx in x.terms.items():
            i = idx[dx]
            for dy, cy in y.terms.items():
                if dx.cap != dy.cup:
                    continue
                for k, c in self.basis_product(i, idx[dy]).items():
                    acc[k] += cx * cy * c
        basis = self.basis
        return AlgebraElement(self, {basis[k]: self.field(c) for k, c in acc.items() if self.field(c)})

    # -- gradings --------------------------------------------------------------
    def graded_dimension(self, block: tuple[Weight, Weight] | None = None) -> dict[int, int]:
        """Poincaré polynomial as {degree: rank}; ``block=(b, a)`` restricts to one block."""
        idx = range(len(self.basis)) if block is None else self.block(*block)
        out: dict[int, int] = defaultdict(int)
        for k in idx:
            out[self.degrees[k]] += 1
        return dict(sorted(out.items()))


@dataclass
class AlgebraElement:
    algebra: ArcAlgebra
    terms: dict[Diagram, object] = field(default_factory=dict)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return AlgebraElement(self.algebra, {d: c for d, c in out.items() if c})

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {d: self.algebra.field(-c) for d, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "AlgebraElement":
        s = self.algebra.field(scalar)
        return AlgebraElement(self.algebra, {d: self.algebra.field(c * s) for d, c in self.terms.items() if c * s})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.__rmul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.same_as(other.algebra) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Diagram, object]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def degrees(self) -> set[int]:
        return {d.degree for d in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def to_json(self) -> list:
        return [[str(c), str(d)] for d, c in self]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{d}]" for d, c in self)


def element_from_json(algebra: ArcAlgebra, data: Iterable) -> AlgebraElement:
    """Parse ``[[coefficient, "cup:mid:cap"], ...]``."""
    from fractions import Fraction

    terms: dict[Diagram, object] = {}
    for coeff, text in data:
        d = Diagram.parse(text)
        terms[d] = terms.get(d, 0) + Fraction(str(coeff))
    return algebra.element(terms)


# -- structural maps ----------------------------------------------------------


def map_basis(x: AlgebraElement, target: ArcAlgebra, f: Callable[[Diagram], Diagram]) -> AlgebraElement:
    return target.element({f(d): c for d, c in x.terms.items()})


def opposite_iso(x: AlgebraElement) -> AlgebraElement:
    """Reflection in the horizontal axis: an anti-automorphism of K(n, m)."""
    return map_basis(x, x.algebra, reflect)


def pd_algebra(alg: ArcAlgebra) -> ArcAlgebra:
    if alg.kind != "K":
        raise InvalidParameters("rotation is defined on K(n, m)")
    return ArcAlgebra.K(alg.m - alg.n, alg.m, alg.field)


def pd_iso(x: AlgebraElement, target: ArcAlgebra | None = None) -> AlgebraElement:
    """Rotation by π: K(n, m) -> K(m-n, m), anti-multiplicative."""
    target = target or pd_algebra(x.algebra)
    return map_basis(x, target, rotate_diagram)


def cl_diagram(d: Diagram) -> Diagram:
    return Diagram(cl(d.cup), cl(d.mid), cl(d.cap))


def cl_lift(x: AlgebraElement, target: ArcAlgebra | None = None) -> AlgebraElement:
    """K(n, m) -> H_{m,2m} on the basis (not an algebra map; multiplicative modulo I_Λ)."""
    alg = x.algebra
    target = target or ArcAlgebra.H(alg.m, alg.field)
    return map_basis(x, target, cl_diagram)


def in_ideal_weight(mid: Weight, which: str, n: int, m: int) -> bool:
    """Whether a middle weight of H_{m,2m} satisfies the spanning condition of ``which``."""
    s = mid.labels
    if len(s) != 2 * m:
        raise InvalidParameters(f"{mid} is not a weight of H_{{{m},{2 * m}}}")
    i1 = not s[: m - n].count("^") == 0
    i2 = not s[2 * m - n:].count("v") == 0
    if which == "I1":
        return i1
    if which == "I2":
        return i2
    if which in ("I", "I_Lambda", "ILambda"):
        return i1 or i2
    raise InvalidParameters(f"unknown ideal {which!r}")


def ideal_membership(x: AlgebraElement, which: str, n: int, m: int) -> bool:
    """True iff every term of ``x`` (in H_{m,2m}) lies in the named spanning set."""
    alg = x.algebra
    if alg.kind != "H" or alg.n != m:
        raise InvalidParameters(f"ideal membership is tested in H_{{{m},{2 * m}}}")
    return all(in_ideal_weight(d.mid, which, n, m) for d in x.terms)


@dataclass
class QuotientReport:
    name: str
    passed: bool
    source_dim: int
    quotient_dim: int
    pairs_checked: int
    counterexample: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "source_dim": self.source_dim,
            "quotient_dim": self.quotient_dim,
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
        }


def verify_quotient_iso(which: str, n: int, m: int, field: Field = QQ) -> QuotientReport:
    """Exhaustive check of H_{n,m} ≅ H_{m-n,2(m-n)}/I ("bc") or K(n,m) ≅ H_{n,m+n}/J ("be")."""
    if which == "bc":
        if 2 * n > m:
            # H_{n,m} = 0 and the ideal is everything
            return QuotientReport(f"bc({n},{m})", True, 0, 0, 0)
        source = ArcAlgebra.compact(n, m, field)
        target = ArcAlgebra.H(m - n, field)
        pad = m - 2 * n

        def in_ideal(d: Diagram) -> bool:
            return "^" in d.mid.labels[:pad]

        def f(d: Diagram) -> Diagram:
            return Diagram(c_map(d.cup), c_map(d.mid), c_map(d.cap))
    elif which == "be":
        source = ArcAlgebra.K(n, m, field)
        target = ArcAlgebra.compact(n, m + n, field)

        def in_ideal(d: Diagram) -> bool:
            return "v" in d.mid.labels[m:]

        def f(d: Diagram) -> Diagram:
            return Diagram(e_map(d.cup), e_map(d.mid), e_map(d.cap))
    else:
        raise InvalidParameters(f"unknown quotient {which!r}; use 'bc' or 'be'")

    name = f"{which}({n},{m})"
    quotient = [d for d in target.basis if not in_ideal(d)]
    images = []
    for d in source.basis:
        img = f(d)
        if img not in target.index or in_ideal(img):
            return QuotientReport(name, False, source.dim, len(quotient), 0, f"{d} maps outside the quotient basis")
        if img.degree != d.degree:
            return QuotientReport(name, False, source.dim, len(quotient), 0, f"{d} changes degree")
        images.append(img)
    if sorted(images, key=Diagram.sort_key) != sorted(quotient, key=Diagram.sort_key):
        return QuotientReport(name, False, source.dim, len(quotient), 0, "not a bijection onto the quotient basis")
    checked = 0
    for i, x in enumerate(source.basis):
        for j, y in enumerate(source.basis):
            checked += 1
            want = {f(source.basis[k]): c for k, c in source.basis_product(i, j).items()}
            got = {}
            if images[i].cap == images[j].cup:
                ti, tj = target.index[images[i]], target.index[images[j]]
                for k, c in target.basis_product(ti, tj).items():
                    d = target.basis[k]
                    if not in_ideal(d):
                        got[d] = c
            if got != want:
                return QuotientReport(name, False, source.dim, len(quotient), checked, f"product {x} * {y}")
    return QuotientReport(name, True, source.dim, len(quotient), checked)
