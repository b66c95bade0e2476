"""Exact Kauffman bracket / normalized bracket state sums.

Laurent polynomials in A are dicts {exponent: coefficient}.  The state sum
is exact over the integers and feasible for the diagram sizes handled here
(<= 16 crossings or so).

The A-labeling is pinned only up to the global A <-> 1/A substitution
(the usual planar-chirality bit); this cannot affect any use here, since
unlink comparison values are symmetric under it and the normalized
bracket is invariant under all Reidemeister moves either way.  The
convention-free anchors (span 4n on reduced alternating diagrams and
|f| = det at A = exp(i pi/4)) are enforced by the test suite.
"""

from __future__ import annotations

from .diagram import LinkDiagram

Laurent = dict[int, int]


def _poly_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(p: Laurent, q: Laurent) -> Laurent:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _poly_pow(p: Laurent, k: int) -> Laurent:
    out: Laurent = {0: 1}
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


DELTA: Laurent = {2: -1, -2: -1}   # -A^2 - A^-2


def kauffman_bracket(d: LinkDiagram) -> Laurent:
    """<D> by the full state sum; the A-smoothing joins slots (0,3) and
    (1,2) of each crossing."""
    n = d.n
    labels = sorted({e for quad in d.quads for e in quad})
    index = {e: i for i, e in enumerate(labels)}
    out: Laurent = {}
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
                return True
            return False

        loops = len(labels)
        a_count = 0
        for c in range(n):
            if (state >> c) & 1 == 0:
                a_count += 1
                pairs = ((0, 3), (1, 2))
            else:
                pairs = ((0, 1), (2, 3))
            for x, y in pairs:
                if union(index[d.quads[c][x]], index[d.quads[c][y]]):
                    loops -= 1
        loops += d.free_loops
        term = _poly_mul({2 * a_count - n: 1}, _poly_pow(DELTA, loops - 1))
        out = _poly_add(out, term)
    if n == 0:
        out = _poly_pow(DELTA, max(d.free_loops - 1, 0)) if d.free_loops else {}
    return out


def normalized_bracket(d: LinkDiagram) -> Laurent:
    """f(D) = (-A^3)^(-w) <D>, an oriented-link invariant."""
    w = d.writhe
    twist: Laurent = {-3 * w: (-1) ** w}
    return _poly_mul(twist, kauffman_bracket(d))


def unlink_normalized_bracket(k: int) -> Laurent:
    """f of the k-component unlink."""
    if k < 1:
        raise ValueError("need k >= 1")
    return _poly_pow(DELTA, k - 1)
