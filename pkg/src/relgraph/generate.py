"""Exhaustive generation of small graphs up to isomorphism.

Graphs are represented internally as tuples of adjacency bitmasks (bit v of
row u set iff edge (u, v); a loop sets bit u of row u). Canonical form is
the lexicographically least row tuple over all relabelings, restricted to
permutations that respect an iterated degree-refinement partition, which
keeps the search tiny for the desk-scale sizes used here.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .core import Graph

Rows = tuple[int, ...]


def rows_of(g: Graph) -> Rows:
    return g.adjacency


def graph_of(rows: Rows) -> Graph:
    n = len(rows)
    edges = set()
    for u in range(n):
        m = rows[u]
        v = 0
        while m:
            if m & 1 and u <= v:
                edges.add((u, v))
            m >>= 1
            v += 1
    return Graph(n, frozenset(edges))


def _permute(rows: Rows, perm: tuple[int, ...]) -> Rows:
    """Relabel so that old vertex v becomes perm[v]."""
    n = len(rows)
    out = [0] * n
    for v in range(n):
        m = rows[v]
        acc = 0
        u = 0
        while m:
            if m & 1:
                acc |= 1 << perm[u]
            m >>= 1
            u += 1
        out[perm[v]] = acc
    return tuple(out)


def _refined_invariants(rows: Rows) -> list[tuple]:
    n = len(rows)
    inv: list[tuple] = [
        (rows[v] >> v & 1, bin(rows[v]).count("1")) for v in range(n)
    ]
    for _ in range(n):
        nxt = []
        for v in range(n):
            neigh = sorted(
                inv[u] for u in range(n) if rows[v] >> u & 1
            )
            nxt.append((inv[v], tuple(neigh)))
        if len(set(nxt)) == len(set(inv)) and all(
            (nxt[a] == nxt[b]) == (inv[a] == inv[b])
            for a in range(n)
            for b in range(a + 1, n)
        ):
            break
        inv = nxt
    return inv


def canonical_rows(rows: Rows) -> Rows:
    """Least relabeling of ``rows``; equal exactly for isomorphic graphs."""
    n = len(rows)
    if n <= 1:
        return rows
    inv = _refined_invariants(rows)
    order = sorted(range(n), key=lambda v: (inv[v], v))
    blocks: list[list[int]] = []
    for v in order:
        if blocks and inv[blocks[-1][0]] == inv[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    best: Rows | None = None
    for parts in product(*(permutations(b) for b in blocks)):
        flat = [v for part in parts for v in part]
        perm = [0] * n
        for pos, v in enumerate(flat):
            perm[v] = pos
        cand = _permute(rows, tuple(perm))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def canonical_key(g: Graph) -> Rows:
    return canonical_rows(rows_of(g))


def isomorphic_key_equal(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_key(g) == canonical_key(h)


@lru_cache(maxsize=None)
def _all_rows(n: int, loops: bool) -> tuple[Rows, ...]:
    if n == 0:
        return ((),)
    if n == 1:
        out = [(0,)]
        if loops:
            out.append((1,))
        return tuple(out)
    seen: set[Rows] = set()
    new = n - 1
    for base in _all_rows(n - 1, loops):
        loop_choices = (0, 1 << new) if loops else (0,)
        for mask in range(1 << new):
            for loop_bit in loop_choices:
                rows = [r | ((mask >> v & 1) << new) for v, r in enumerate(base)]
                rows.append(mask | loop_bit)
                seen.add(canonical_rows(tuple(rows)))
    return tuple(sorted(seen))


def all_graphs(n: int, loops: bool = False) -> list[Graph]:
    """All graphs on exactly n vertices, one per isomorphism class."""
    return [graph_of(rows) for rows in _all_rows(n, loops)]


def all_graphs_up_to(n: int, loops: bool = False) -> list[Graph]:
    """All graphs on 1..n vertices, one per isomorphism class."""
    out: list[Graph] = []
    for k in range(1, n + 1):
        out.extend(all_graphs(k, loops))
    return out
