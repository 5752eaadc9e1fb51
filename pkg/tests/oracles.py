"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np

from arcalg.braids import BraidWord, _closure_circles, resolution_layers
from arcalg.tqft import ONE, X, merge, split


def dense_rank(rows: list[list[int]]) -> int:
    """Rank over Q of a small integer matrix via sympy-free fraction elimination."""
    from fractions import Fraction

    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def annular_kh(word: BraidWord) -> dict[int, int]:
    """Annular Khovanov homology of the closure, total rank per annular grading k.

    Cube of resolutions in the thickened annulus; a circle is essential when
    it crosses the closure seam an odd number of times.  The differential is
    the part of the Khovanov differential preserving k.
    """
    n, ell = word.n, len(word)
    vertices = list(itertools.product((0, 1), repeat=ell))
    info = {}
    for v in vertices:
        circ = _closure_circles(word, resolution_layers(word, v))
        nc = max(circ) + 1
        seam = [0] * nc
        for p in range(n):
            seam[circ[ell * n + p]] += 1
        info[v] = (circ, nc, [s % 2 == 1 for s in seam])

    def kdeg(v, vals):
        ess = info[v][2]
        return sum((1 if x == ONE else -1) for x, e in zip(vals, ess) if e)

    gens = defaultdict(list)
    where = {}
    for v in vertices:
        for vals in itertools.product((ONE, X), repeat=info[v][1]):
            q = sum(1 if x == ONE else -1 for x in vals) + sum(v)
            slot = (sum(v), q, kdeg(v, vals))
            where[v, vals] = (slot, len(gens[slot]))
            gens[slot].append((v, vals))

    def edge(v, k, vals):
        w = v[:k] + (1,) + v[k + 1:]
        cv = info[v][0]
        cw, nw, _ = info[w]
        pos = abs(word.letters[k]) - 1
        local = [k * n + pos, k * n + pos + 1, (k + 1) * n + pos, (k + 1) * n + pos + 1]
        src = sorted({cv[x] for x in local})
        tgt = sorted({cw[x] for x in local})
        base = [None] * nw
        for node, c in enumerate(cw):
            if c not in tgt and base[c] is None:
                base[c] = vals[cv[node]]
        out = {}
        if len(src) == 2:
            for val, co in merge(vals[src[0]], vals[src[1]]).items():
                nv = list(base)
                nv[tgt[0]] = val
                out[tuple(nv)] = out.get(tuple(nv), 0) + co
        else:
            for (a, b), co in split(vals[src[0]]).items():
                nv = list(base)
                nv[tgt[0]], nv[tgt[1]] = a, b
                out[tuple(nv)] = out.get(tuple(nv), 0) + co
        return w, out

    def dmat(r, q, kk):
        src = gens.get((r, q, kk), [])
        tgt = gens.get((r + 1, q, kk), [])
        mat = [[0] * len(tgt) for _ in src]
        for a, (v, vals) in enumerate(src):
            for k in range(ell):
                if v[k]:
                    continue
                sign = -1 if sum(v[:k]) % 2 else 1
                w, out = edge(v, k, vals)
                for nv, co in out.items():
                    slot, idx = where[w, nv]
                    if slot == (r + 1, q, kk):
                        mat[a][idx] += sign * co
        return mat

    totals: dict[int, int] = defaultdict(int)
    for (r, q, kk), lst in gens.items():
        din = dmat(r - 1, q, kk) if gens.get((r - 1, q, kk)) else []
        dout = dmat(r, q, kk) if gens.get((r + 1, q, kk)) else []
        rin = dense_rank(din) if din else 0
        rout = dense_rank(dout) if dout else 0
        totals[kk] += len(lst) - rin - rout
    return {k: v for k, v in sorted(totals.items()) if v}


def jones_via_numpy(word: BraidWord) -> dict[int, int]:
    """Kauffman bracket using numpy polynomial arithmetic in t = A (offset exponents)."""
    ell = len(word)
    w = word.positive - word.negative
    total = defaultdict(int)
    loop = np.array([-1, 0, 0, 0, -1])  # -A^{-2} - A^{2}, exponents -2..2
    for state in itertools.product((0, 1), repeat=ell):
        layers = []
        for x, s in zip(word.letters, state):
            vertical = (s == 0) == (x > 0)
            layers.append(None if vertical else abs(x) - 1)
        c = max(_closure_circles(word, layers)) + 1
        poly = np.array([1])
        for _ in range(c):
            poly = np.convolve(poly, loop)
        low = (ell - 2 * sum(state)) - 2 * c
        for i, coeff in enumerate(poly):
            if coeff:
                total[low + i] += int(coeff)
    out = defaultdict(int)
    for e, c in total.items():
        e2 = e - 3 * w
        k = e2 // 2
        out[-k] += (-1) ** (w % 2) * (-1) ** (k % 2) * c
    return {q: c for q, c in sorted(out.items()) if c}
