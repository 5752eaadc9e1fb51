"""Surgery calculus for stacked circle diagrams.

Everything here works on *layered pictures*: rows of ``width`` points, every
point having exactly one strand leaving downward and one leaving upward.  A
downward strand either ends at another point of the same row (a cup) or at the
point directly below (a vertical); upward strands likewise are caps or
verticals.  The bottom row's cups and the top row's caps close the picture up,
so every component is a circle.

A state of the picture assigns a Frobenius value to each circle: ``ONE`` for
an anticlockwise circle (its leftmost point labelled ``v``) and ``X`` for a
clockwise one.  Saddles (surgeries) act by the rank-two Frobenius algebra::

    merge: 1*1 -> 1, 1*x -> x, x*1 -> x, x*x -> 0
    split: 1 -> 1(x)x + x(x)1,  x -> x(x)x
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import InvalidParameters
from .weights import DOWN, UP, _match


class FrobeniusValue(IntEnum):
    ONE = 0
    X = 1

    def __str__(self) -> str:
        return "1" if self is FrobeniusValue.ONE else "x"


ONE = FrobeniusValue.ONE
X = FrobeniusValue.X


def merge(u: FrobeniusValue, v: FrobeniusValue) -> dict[FrobeniusValue, int]:
    if u == X and v == X:
        return {}
    return {X if X in (u, v) else ONE: 1}


def split(u: FrobeniusValue) -> dict[tuple[FrobeniusValue, FrobeniusValue], int]:
    if u == ONE:
        return {(ONE, X): 1, (X, ONE): 1}
    return {(X, X): 1}


class Picture:
    """Mutable layered 1-manifold; node ``row * width + pos`` with 0-based ``pos``."""

    __slots__ = ("width", "rows", "up", "down", "_comp")

    def __init__(self, width: int, rows: int):
        self.width = width
        self.rows = rows
        size = width * rows
        self.up = [-1] * size
        self.down = [-1] * size
        self._comp = None

    @classmethod
    def from_layers(cls, bottom: str, layers: Sequence[int | None], top: str) -> "Picture":
        """Cups of ``bottom`` under row 0, one row per layer boundary, caps of ``top`` on the last row.

        ``layers[k]`` is ``None`` for an identity layer, or a 0-based position
        ``i`` for the elementary tangle capping (i, i+1) below and cupping it above.
        """
        width = len(bottom)
        pic = cls(width, len(layers) + 1)
        for i, j in _match(bottom)[0]:
            pic.down[i], pic.down[j] = j, i
        for k, pos in enumerate(layers):
            lo, hi = k * width, (k + 1) * width
            for p in range(width):
                if pos is not None and p in (pos, pos + 1):
                    continue
                pic.up[lo + p] = hi + p
                pic.down[hi + p] = lo + p
            if pos is not None:
                pic.up[lo + pos], pic.up[lo + pos + 1] = lo + pos + 1, lo + pos
                pic.down[hi + pos], pic.down[hi + pos + 1] = hi + pos + 1, hi + pos
        last = len(layers) * width
        for i, j in _match(top)[0]:
            pic.up[last + i], pic.up[last + j] = last + j, last + i
        pic.check_closed()
        return pic

    def copy(self) -> "Picture":
        other = Picture.__new__(Picture)
        other.width, other.rows = self.width, self.rows
        other.up, other.down = self.up[:], self.down[:]
        other._comp = None
        return other

    def check_closed(self) -> None:
        if -1 in self.up or -1 in self.down:
            raise InvalidParameters("picture has open strands (weights must be compact)")

    def stack(self, other: "Picture") -> "Picture":
        """Put ``other`` on top of ``self`` without connecting them (caps/cups stay)."""
        if other.width != self.width:
            raise InvalidParameters("cannot stack pictures of different widths")
        pic = Picture(self.width, self.rows + other.rows)
        off = self.rows * self.width
        pic.up[:off], pic.down[:off] = self.up[:], self.down[:]
        pic.up[off:] = [u + off for u in other.up]
        pic.down[off:] = [d + off for d in other.down]
        return pic

    def is_arc(self, a: int, b: int) -> bool:
        return a // self.width == b // self.width

    # -- components -------------------------------------------------------
    def components(self) -> tuple[list[int], list[list[int]]]:
        if self._comp is None:
            size = len(self.up)
            comp = [-1] * size
            comps: list[list[int]] = []
            for start in range(size):
                if comp[start] != -1:
                    continue
                c = len(comps)
                nodes = [start]
                comp[start] = c
                cur, going_up = start, True
                while True:
                    nxt = self.up[cur] if going_up else self.down[cur]
                    if nxt // self.width == cur // self.width:
                        going_up = not going_up
                    cur = nxt
                    if cur == start:
                        break
                    comp[cur] = c
                    nodes.append(cur)
                comps.append(nodes)
            self._comp = (comp, comps)
        return self._comp

    def labelling(self, values: Sequence[int]) -> list[str]:
        """Node labels induced by circle values (ONE: leftmost point labelled v)."""
        comp, comps = self.components()
        labels = [""] * len(self.up)
        w = self.width
        for c, nodes in enumerate(comps):
            left = min(nodes, key=lambda v: (v % w, v))
            first = DOWN if values[c] == ONE else UP
            labels[left] = first
            stack = [left]
            while stack:
                v = stack.pop()
                for u in (self.up[v], self.down[v]):
                    if labels[u]:
                        continue
                    same = not self.is_arc(u, v)
                    labels[u] = labels[v] if same else (UP if labels[v] == DOWN else DOWN)
                    stack.append(u)
        return labels

    def values_from_labels(self, labels: Sequence[str]) -> tuple[int, ...]:
        """Inverse of :meth:`labelling`; raises if the labels are not a consistent orientation."""
        comp, comps = self.components()
        w = self.width
        vals = []
        for nodes in comps:
            left = min(nodes, key=lambda v: (v % w, v))
            vals.append(ONE if labels[left] == DOWN else X)
        vals = tuple(vals)
        if list(labels) != self.labelling(vals):
            raise InvalidParameters("labels do not orient the picture")
        return vals

    def row_labels(self, labels: Sequence[str], row: int) -> str:
        return "".join(labels[row * self.width:(row + 1) * self.width])

    def clockwise_arcs(self, labels: Sequence[str]) -> int:
        w = self.width
        count = 0
        for v in range(len(self.up)):
            for u in (self.up[v], self.down[v]):
                # count each arc once from its left end
                if u // w == v // w and u > v and labels[v] == UP:
                    count += 1
        return count

    # -- saddles ----------------------------------------------------------
    def _saddle(self, row: int, i: int, j: int, to_vertical: bool) -> tuple[int, int, int, int]:
        w = self.width
        p, q = row * w + i, row * w + j
        pp, qq = p + w, q + w
        if to_vertical:
            if not (self.up[p] == q and self.down[pp] == qq):
                raise InvalidParameters(f"no cap/cup pair at row {row} positions {i},{j}")
            self.up[p], self.down[pp] = pp, p
            self.up[q], self.down[qq] = qq, q
        else:
            if not (self.up[p] == pp and self.up[q] == qq):
                raise InvalidParameters(f"no vertical pair at row {row} positions {i},{j}")
            self.up[p], self.up[q] = q, p
            self.down[pp], self.down[qq] = qq, pp
        self._comp = None
        return p, q, pp, qq


def apply_saddle(
    pic: Picture,
    terms: dict[tuple[int, ...], int],
    row: int,
    i: int,
    j: int,
    to_vertical: bool = True,
) -> tuple[Picture, dict[tuple[int, ...], int]]:
    """One saddle on every state of ``terms``; returns the new picture and states.

    ``to_vertical`` replaces the cap above row ``row`` and the cup below row
    ``row + 1`` at (i, j) by two verticals; otherwise two verticals become a
    cap/cup pair.  Merge or split is decided by the component structure.
    """
    old_comp, _ = pic.components()
    new = pic.copy()
    p, q, pp, qq = new._saddle(row, i, j, to_vertical)
    comp, comps = new.components()
    if to_vertical:
        a_old, b_old = old_comp[p], old_comp[pp]
        first, second = comp[p], comp[q]
    else:
        a_old, b_old = old_comp[p], old_comp[q]
        first, second = comp[p], comp[pp]
    # unaffected components keep their value
    carry = []
    for c, nodes in enumerate(comps):
        if c in (first, second):
            continue
        carry.append((c, old_comp[nodes[0]]))
    out: dict[tuple[int, ...], int] = defaultdict(int)
    ncomp = len(comps)
    if a_old != b_old:
        assert first == second
        for vals, coeff in terms.items():
            for v, k in merge(vals[a_old], vals[b_old]).items():
                nv = [0] * ncomp
                for c, oc in carry:
                    nv[c] = vals[oc]
                nv[first] = v
                out[tuple(nv)] += coeff * k
    else:
        assert first != second
        for vals, coeff in terms.items():
            for (v1, v2), k in split(vals[a_old]).items():
                nv = [0] * ncomp
                for c, oc in carry:
                    nv[c] = vals[oc]
                nv[first], nv[second] = v1, v2
                out[tuple(nv)] += coeff * k
    return new, {k: v for k, v in out.items() if v}


def saddle(pic: Picture, terms: dict[tuple[int, ...], int], row: int, i: int, to_vertical: bool):
    """Saddle on adjacent strands (i, i+1); see :func:`apply_saddle`."""
    return apply_saddle(pic, terms, row, i, i + 1, to_vertical)


def surgery_product_labels(
    d: str, lam: str, c: str, b: str, mu: str, a: str, order: Iterable[int] | None = None
) -> dict[str, int]:
    """Product of compact diagrams (d lam c)(b mu a) as {middle weight: coefficient}.

    Zero unless ``b == c``.  ``order`` permutes the cup surgeries (for testing
    order independence); default is left endpoint ascending.
    """
    if b != c:
        return {}
    lower = Picture.from_layers(d, [], c)
    upper = Picture.from_layers(b, [], a)
    pic = lower.stack(upper)
    labels = [*lam, *mu]
    state = {pic.values_from_labels(labels): 1}
    cups = list(_match(c)[0])
    if order is not None:
        cups = [cups[k] for k in order]
    for i, j in cups:
        pic, state = apply_saddle(pic, state, 0, i, j, True)
        if not state:
            return {}
    out: dict[str, int] = {}
    for vals, coeff in state.items():
        nu = pic.row_labels(pic.labelling(vals), 0)
        out[nu] = out.get(nu, 0) + coeff
    return out


@dataclass(frozen=True)
class FlatTangle:
    """Crossingless matching from ``bottom`` points to ``top`` points.

    Endpoints are ``("b", k)`` and ``("t", k)`` with 0-based ``k``; ``arcs`` is a
    set of frozenset pairs.  ``removed_circles`` counts loops discarded while
    composing.
    """

    bottom: int
    top: int
    arcs: frozenset
    removed_circles: int = 0

    def __post_init__(self):
        if (self.bottom + self.top) % 2:
            raise InvalidParameters("a flat tangle needs an even number of endpoints")
        seen = [e for arc in self.arcs for e in arc]
        want = [("b", k) for k in range(self.bottom)] + [("t", k) for k in range(self.top)]
        if sorted(seen) != sorted(want):
            raise InvalidParameters("arcs must cover every endpoint exactly once")
        if not _planar(self):
            raise InvalidParameters("arcs cross")

    @classmethod
    def identity(cls, n: int) -> "FlatTangle":
        return cls(n, n, frozenset(frozenset({("b", k), ("t", k)}) for k in range(n)))

    @classmethod
    def elementary(cls, n: int, i: int) -> "FlatTangle":
        """U_i on n strands (1-based i): cap on bottom (i, i+1), cup on top (i, i+1)."""
        if not 1 <= i < n:
            raise InvalidParameters(f"U_{i} needs 1 <= i < {n}")
        arcs = {frozenset({("b", k), ("t", k)}) for k in range(n) if k not in (i - 1, i)}
        arcs.add(frozenset({("b", i - 1), ("b", i)}))
        arcs.add(frozenset({("t", i - 1), ("t", i)}))
        return cls(n, n, frozenset(arcs))

    def partner(self) -> dict:
        out = {}
        for arc in self.arcs:
            u, v = tuple(arc)
            out[u], out[v] = v, u
        return out

    def through_strands(self) -> int:
        return sum(1 for arc in self.arcs if {e[0] for e in arc} == {"b", "t"})


def _boundary_pos(e, bottom: int, top: int) -> int:
    # position along the boundary circle: bottom left-to-right, then top right-to-left
    side, k = e
    return k if side == "b" else bottom + (top - 1 - k)


def _planar(t: FlatTangle) -> bool:
    chords = []
    for arc in t.arcs:
        u, v = sorted(_boundary_pos(e, t.bottom, t.top) for e in arc)
        chords.append((u, v))
    for a, b in chords:
        for c, d in chords:
            if a < c < b < d:
                return False
    return True


def compose_tangles(s: FlatTangle, t: FlatTangle) -> FlatTangle:
    """Glue ``t`` on top of ``s``; closed loops are deleted and counted."""
    if s.top != t.bottom:
        raise InvalidParameters(f"cannot compose: {s.top} top points vs {t.bottom} bottom points")
    ps, pt = s.partner(), t.partner()
    arcs = set()
    visited_mid = set()
    ends = [("b", k) for k in range(s.bottom)] + [("t", k) for k in range(t.top)]
    done = set()
    for start in ends:
        if start in done:
            continue
        # walk from an outer endpoint through the middle row
        if start[0] == "b":
            side, cur = "s", ps[start]
        else:
            side, cur = "t", pt[start]
        while True:
            if side == "s":
                if cur[0] == "b":
                    end = cur
                    break
                visited_mid.add(cur[1])
                cur, side = pt[("b", cur[1])], "t"
            else:
                if cur[0] == "t":
                    end = ("t", cur[1])
                    break
                visited_mid.add(cur[1])
                cur, side = ps[("t", cur[1])], "s"
        done.add(start)
        done.add(end)
        arcs.add(frozenset({start, end}))
    loops = 0
    for k in range(s.top):
        if k in visited_mid:
            continue
        loops += 1
        cur = k
        while cur not in visited_mid:
            visited_mid.add(cur)
            nxt = pt[("b", cur)][1]
            visited_mid.add(nxt)
            cur = ps[("t", nxt)][1]
    return FlatTangle(s.bottom, t.top, frozenset(arcs), s.removed_circles + t.removed_circles + loops)


def closure_circles(t: FlatTangle) -> int:
    """Number of circles in the trace closure of an (n, n) flat tangle, removed loops included."""
    if t.bottom != t.top:
        raise InvalidParameters("trace closure needs as many bottom as top points")
    p = t.partner()
    seen = set()
    count = 0
    for e in p:
        if e in seen:
            continue
        count += 1
        cur = e
        while cur not in seen:
            seen.add(cur)
            other = p[cur]
            seen.add(other)
            # closure joins top k with bottom k
            cur = ("b", other[1]) if other[0] == "t" else ("t", other[1])
    return count + t.removed_circles
