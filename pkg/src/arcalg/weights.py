"""Weights, cup/cap diagrams and oriented circle diagrams.

A weight of type ``(n, m)`` is a word of length ``m`` in the symbols ``v``
(down) and ``^`` (up) containing exactly ``n`` copies of ``v``.  Positions are
1-based in every public function.  Cup and cap diagrams are never stored on
diagrams; they are recomputed (and cached) from weights so that a basis
element is identified by its weight triple alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import InvalidParameters

DOWN = "v"
UP = "^"
_FLIP = str.maketrans("v^", "^v")
_SORT = str.maketrans("v^", "01")


@dataclass(frozen=True, slots=True)
class Weight:
    labels: str

    def __post_init__(self):
        if any(c not in "v^" for c in self.labels):
            raise InvalidParameters(f"weight {self.labels!r} must use only 'v' and '^'")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        return cls(text.strip().replace("∨", DOWN).replace("∧", UP))

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return self.labels.count(DOWN)

    def __getitem__(self, pos: int) -> str:
        """Label at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.labels):
            raise IndexError(pos)
        return self.labels[pos - 1]

    def __len__(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return self.labels

    def __repr__(self) -> str:
        return f"Weight({self.labels!r})"

    def __lt__(self, other: "Weight") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> str:
        # lexicographic with v before ^
        return self.labels.translate(_SORT)

    def down_positions(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.labels) if c == DOWN)

    def flipped(self) -> "Weight":
        return Weight(self.labels.translate(_FLIP))


def _check_nm(n: int, m: int) -> None:
    if n < 0 or m < 0 or n > m:
        raise InvalidParameters(f"need 0 <= n <= m, got n={n}, m={m}")


def enumerate_weights(n: int, m: int) -> list[Weight]:
    """All ``C(m, n)`` weights of type (n, m), lexicographic with v < ^."""
    _check_nm(n, m)
    out = []
    for downs in combinations(range(m), n):
        chars = [UP] * m
        for i in downs:
            chars[i] = DOWN
        out.append(Weight("".join(chars)))
    out.sort(key=Weight.sort_key)
    return out


@lru_cache(maxsize=None)
def _match(labels: str) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    # bracket scan: v opens, ^ closes the nearest open v
    stack: list[int] = []
    cups = []
    rays = []
    for i, c in enumerate(labels):
        if c == DOWN:
            stack.append(i)
        elif stack:
            cups.append((stack.pop(), i))
        else:
            rays.append(i)
    rays.extend(stack)
    return tuple(sorted(cups)), tuple(sorted(rays))


def good_points(lam: Weight) -> dict[int, int]:
    """Map each good point of ``lam`` to its partner (both 1-based)."""
    cups, _ = _match(lam.labels)
    return {i + 1: j + 1 for i, j in cups}


def bad_points(lam: Weight) -> list[int]:
    good = good_points(lam)
    return [p for p in lam.down_positions() if p not in good]


def is_compact(lam: Weight) -> bool:
    """True when every v of ``lam`` is a good point."""
    return not bad_points(lam)


@dataclass(frozen=True, slots=True)
class ArcDiagram:
    m: int
    cups: tuple[tuple[int, int], ...]
    rays: tuple[int, ...]
    side: str  # "cup" or "cap"

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.cups:
            out[i] = j
            out[j] = i
        return out


def cup_diagram(lam: Weight) -> ArcDiagram:
    cups, rays = _match(lam.labels)
    return ArcDiagram(lam.m, tuple((i + 1, j + 1) for i, j in cups), tuple(r + 1 for r in rays), "cup")


def cap_diagram(lam: Weight) -> ArcDiagram:
    d = cup_diagram(lam)
    return ArcDiagram(d.m, d.cups, d.rays, "cap")


def _rays_ok(labels: str, rays: Iterable[int]) -> bool:
    seen_down = False
    for r in rays:
        if labels[r] == DOWN:
            seen_down = True
        elif seen_down:
            return False
    return True


def _half_oriented(shape: str, labels: str) -> bool:
    cups, rays = _match(shape)
    for i, j in cups:
        if labels[i] == labels[j]:
            return False
    return _rays_ok(labels, rays)


def _same_size(*ws: Weight) -> None:
    first = ws[0]
    for w in ws[1:]:
        if w.m != first.m or w.n != first.n:
            raise InvalidParameters(f"weights {first} and {w} are not of the same type")


def is_oriented_cup(b: Weight, lam: Weight) -> bool:
    _same_size(b, lam)
    return _half_oriented(b.labels, lam.labels)


def is_oriented_cap(lam: Weight, a: Weight) -> bool:
    _same_size(lam, a)
    return _half_oriented(a.labels, lam.labels)


def is_oriented(b: Weight, lam: Weight, a: Weight) -> bool:
    _same_size(b, lam, a)
    return _half_oriented(b.labels, lam.labels) and _half_oriented(a.labels, lam.labels)


def _half_degree(shape: str, labels: str) -> int:
    cups, _ = _match(shape)
    return sum(1 for i, _j in cups if labels[i] == UP)


@dataclass(frozen=True, slots=True, order=False)
class OrientedCircleDiagram:
    """Basis diagram: cup diagram of ``cup`` below, ``mid`` on the axis, cap diagram of ``cap`` above."""

    cup: Weight
    mid: Weight
    cap: Weight

    @classmethod
    def parse(cls, text: str) -> "OrientedCircleDiagram":
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidParameters(f"diagram {text!r} must look like 'cup:mid:cap'")
        b, lam, a = (Weight.parse(p) for p in parts)
        _same_size(b, lam, a)
        return cls(b, lam, a)

    def __str__(self) -> str:
        return f"{self.cup}:{self.mid}:{self.cap}"

    def sort_key(self) -> tuple[str, str, str]:
        return (self.cup.sort_key(), self.cap.sort_key(), self.mid.sort_key())

    @property
    def degree(self) -> int:
        return degree(self)

    def is_valid(self) -> bool:
        return is_oriented(self.cup, self.mid, self.cap)


def degree(d: OrientedCircleDiagram) -> int:
    """Number of clockwise cups plus clockwise caps (left end labelled ^)."""
    return _half_degree(d.cup.labels, d.mid.labels) + _half_degree(d.cap.labels, d.mid.labels)


def cup_degree(b: Weight, lam: Weight) -> int:
    return _half_degree(b.labels, lam.labels)


def cap_degree(lam: Weight, a: Weight) -> int:
    return _half_degree(a.labels, lam.labels)


def idempotent(lam: Weight) -> OrientedCircleDiagram:
    return OrientedCircleDiagram(lam, lam, lam)


@dataclass(frozen=True, slots=True)
class Component:
    kind: str  # "circle" or "line"
    points: tuple[int, ...]  # 1-based, in traversal order starting at the smallest point for circles


@dataclass(frozen=True, slots=True)
class CircleDecomposition:
    components: tuple[Component, ...]

    @property
    def circles(self) -> list[Component]:
        return [c for c in self.components if c.kind == "circle"]

    @property
    def lines(self) -> list[Component]:
        return [c for c in self.components if c.kind == "line"]


@lru_cache(maxsize=None)
def _decompose(bottom: str, top: str) -> tuple[tuple[str, tuple[int, ...]], ...]:
    m = len(bottom)
    below = {}
    above = {}
    for i, j in _match(bottom)[0]:
        below[i], below[j] = j, i
    for i, j in _match(top)[0]:
        above[i], above[j] = j, i
    seen = [False] * m
    comps = []
    for start in range(m):
        if seen[start]:
            continue
        # walk one way until a ray or back at start
        path = [start]
        seen[start] = True
        cur, use_below = start, True
        closed = False
        while True:
            nxt = (below if use_below else above).get(cur)
            if nxt is None:
                break
            if nxt == start:
                closed = True
                break
            path.append(nxt)
            seen[nxt] = True
            cur, use_below = nxt, not use_below
        if not closed:
            # extend the other way from start
            back = []
            cur, use_below = start, False
            while True:
                nxt = (below if use_below else above).get(cur)
                if nxt is None:
                    break
                back.append(nxt)
                seen[nxt] = True
                cur, use_below = nxt, not use_below
            path = back[::-1] + path
        comps.append(("circle" if closed else "line", tuple(p + 1 for p in path)))
    comps.sort(key=lambda c: min(c[1]))
    return tuple(comps)


def circle_decomposition(b: Weight, a: Weight) -> CircleDecomposition:
    """Components of cup_diagram(b) glued to cap_diagram(a), ordered by least point."""
    if b.m != a.m:
        raise InvalidParameters("cup and cap weights have different lengths")
    return CircleDecomposition(tuple(Component(k, p) for k, p in _decompose(b.labels, a.labels)))


@lru_cache(maxsize=None)
def _orientations(bottom: str, top: str, n: int) -> tuple[str, ...]:
    comps = _decompose(bottom, top)
    m = len(bottom)
    found = []
    for choice in product((DOWN, UP), repeat=len(comps)):
        chars = [""] * m
        for (_, pts), first in zip(comps, choice):
            lab = first
            for p in pts:
                chars[p - 1] = lab
                lab = UP if lab == DOWN else DOWN
        labels = "".join(chars)
        if labels.count(DOWN) != n:
            continue
        if _half_oriented(bottom, labels) and _half_oriented(top, labels):
            found.append(labels)
    found.sort(key=lambda s: (_half_degree(bottom, s) + _half_degree(top, s), s.translate(_SORT)))
    return tuple(found)


def orientations_of(b: Weight, a: Weight) -> list[Weight]:
    """All weights orienting cup_diagram(b) with cap_diagram(a), sorted by (degree, lex)."""
    _same_size(b, a)
    return [Weight(s) for s in _orientations(b.labels, a.labels, b.n)]


def bruhat_leq(lam: Weight, mu: Weight) -> bool:
    """Bruhat order: moving v symbols rightward goes up."""
    _same_size(lam, mu)
    return all(p <= q for p, q in zip(lam.down_positions(), mu.down_positions()))


def max_weight(lam: Weight) -> Weight:
    """Largest weight orienting cup_diagram(lam) glued to cap_diagram(lam)."""
    chars = list(lam.labels)
    for i, j in _match(lam.labels)[0]:
        chars[i], chars[j] = UP, DOWN
    return Weight("".join(chars))


def cl(lam: Weight) -> Weight:
    """Closure Λ_{n,m} -> Λ_{m,2m}: pad with m-n v's on the left and n ^'s on the right."""
    n, m = lam.n, lam.m
    return Weight(DOWN * (m - n) + lam.labels + UP * n)


def c_map(lam: Weight) -> Weight:
    """Λ_{n,m} -> Λ_{m-n,2(m-n)} for 2n <= m: prepend m-2n v's."""
    n, m = lam.n, lam.m
    if 2 * n > m:
        raise InvalidParameters(f"c_map needs 2n <= m, got n={n}, m={m}")
    return Weight(DOWN * (m - 2 * n) + lam.labels)


def e_map(lam: Weight) -> Weight:
    """Λ_{n,m} -> Λ_{n,m+n}: append n ^'s."""
    return Weight(lam.labels + UP * lam.n)


def rotate_pd(lam: Weight) -> Weight:
    """Rotation by π: position a goes to m+1-a with v and ^ exchanged."""
    return Weight(lam.labels[::-1].translate(_FLIP))


def rotate_diagram(d: OrientedCircleDiagram) -> OrientedCircleDiagram:
    # cups become caps: the rotated cap diagram comes from the old cup weight
    return OrientedCircleDiagram(rotate_pd(d.cap), rotate_pd(d.mid), rotate_pd(d.cup))


def reflect(d: OrientedCircleDiagram) -> OrientedCircleDiagram:
    return OrientedCircleDiagram(d.cap, d.mid, d.cup)


def iter_diagrams(cups: Iterable[Weight], caps: Iterable[Weight] | None = None) -> Iterator[OrientedCircleDiagram]:
    cups = list(cups)
    caps = cups if caps is None else list(caps)
    for b in cups:
        for a in caps:
            for lam in orientations_of(b, a):
                yield OrientedCircleDiagram(b, lam, a)
