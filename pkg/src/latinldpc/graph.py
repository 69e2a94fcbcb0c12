"""Tanner graph analytics: girth, cycle enumeration, trapping-set search.

A TannerGraph is the bipartite graph whose bi-adjacency matrix is a parity
check: n variable nodes (columns) and m check nodes (rows).  All heavy
searches run through latinldpc.kernels, which picks the compiled extension
when available and the pure-Python twins otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .basematrix import SparseParityCheck
from .patterns import TrappingSetPattern, codeword_patterns


class TannerGraph:
    """Bipartite variable/check graph with CSR adjacency in both directions."""

    def __init__(self, n_var: int, n_chk: int, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges):
            if edges[:, 0].min() < 0 or edges[:, 0].max() >= n_var:
                raise ValueError("variable id out of range")
            if edges[:, 1].min() < 0 or edges[:, 1].max() >= n_chk:
                raise ValueError("check id out of range")
        self.n_var = int(n_var)
        self.n_chk = int(n_chk)
        self.block_q = None
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        v, c = edges[order, 0], edges[order, 1]
        self.vptr = np.zeros(n_var + 1, dtype=np.int64)
        np.add.at(self.vptr, v + 1, 1)
        np.cumsum(self.vptr, out=self.vptr)
        self.vadj = c.astype(np.int32)
        order2 = np.lexsort((edges[:, 0], edges[:, 1]))
        v2, c2 = edges[order2, 0], edges[order2, 1]
        self.cptr = np.zeros(n_chk + 1, dtype=np.int64)
        np.add.at(self.cptr, c2 + 1, 1)
        np.cumsum(self.cptr, out=self.cptr)
        self.cadj = v2.astype(np.int32)

    @classmethod
    def from_parity(cls, h: SparseParityCheck) -> "TannerGraph":
        g = cls.__new__(cls)
        g.n_var = h.n_cols
        g.n_chk = h.n_rows
        cptr_csc, rows = h.csc_arrays()
        g.vptr = cptr_csc
        g.vadj = rows.astype(np.int32)
        rptr, cols = h.csr_arrays()
        g.cptr = rptr
        g.cadj = cols.astype(np.int32)
        # block structure metadata, when the parity check came from expand():
        # the additive translation group acts on such graphs, which lets
        # searches restrict roots to one representative per block column
        g.block_q = h.q
        return g

    @classmethod
    def from_alist(cls, path) -> "TannerGraph":
        from .alist import read_alist

        return cls.from_parity(read_alist(path))

    @property
    def n_edges(self) -> int:
        return len(self.vadj)

    def var_degrees(self) -> np.ndarray:
        return np.diff(self.vptr)

    def chk_degrees(self) -> np.ndarray:
        return np.diff(self.cptr)

    def var_checks(self, v: int):
        return self.vadj[self.vptr[v]:self.vptr[v + 1]]

    def chk_vars(self, c: int):
        return self.cadj[self.cptr[c]:self.cptr[c + 1]]

    def __repr__(self):
        return f"TannerGraph(n={self.n_var}, m={self.n_chk}, edges={self.n_edges})"


def girth(g: TannerGraph):
    """Shortest cycle length (an even integer), math.inf for forests."""
    best = kernels.girth_bipartite(g.vptr, g.vadj, g.cptr, g.cadj)
    return math.inf if best < 0 else int(best)


@dataclass(frozen=True)
class Cycle:
    """A simple cycle, as the variable and check nodes in traversal order."""

    variables: tuple
    checks: tuple

    def variable_set(self) -> frozenset:
        return frozenset(self.variables)


def enumerate_cycles(g: TannerGraph, length: int, cap: int = 10_000_000) -> list[Cycle]:
    """Every simple cycle with `length` nodes (length/2 variables), once each."""
    if length not in (4, 6, 8, 10, 12):
        raise ValueError("cycle length must be one of 4, 6, 8, 10, 12")
    arr, complete = kernels.enumerate_cycles(
        g.vptr, g.vadj, g.cptr, g.cadj, length, cap
    )
    if not complete:
        raise RuntimeError(f"cycle enumeration exceeded cap={cap}")
    n = g.n_var
    out = []
    for row in arr:
        nodes = row.tolist()
        vars_ = tuple(x for x in nodes if x < n)
        chks = tuple(x - n for x in nodes if x >= n)
        out.append(Cycle(vars_, chks))
    return out


def _pattern_order(pat: TrappingSetPattern):
    """Placement order for pattern search: grow from a densest vertex and
    always pick the next vertex with the most edges back into the placed
    prefix, so cycles in the pattern close (and prune) as early as possible.
    """
    adj = pat.adjacency()
    degs = pat.degrees()
    root = max(range(pat.a), key=lambda v: degs[v])
    order = [root]
    placed = {root}
    while len(order) < pat.a:
        best = None
        best_key = None
        for v in range(pat.a):
            if v in placed:
                continue
            back = len(adj[v] & placed)
            if back == 0:
                continue
            key = (back, degs[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    anchor_pos = [0]
    for k in range(1, pat.a):
        v = order[k]
        for idx in range(k):
            if order[idx] in adj[v]:
                anchor_pos.append(idx)
                break
    return order, anchor_pos


def _pattern_adj_matrix(pat: TrappingSetPattern) -> np.ndarray:
    m = np.zeros((pat.a, pat.a), dtype=np.uint8)
    for u, v in pat.edges:
        m[u, v] = m[v, u] = 1
    return m


def _require_column_weight_3(g: TannerGraph):
    if not (g.var_degrees() == 3).all():
        raise ValueError("pattern operations need a column-weight-3 graph")


def find_pattern(g: TannerGraph, pat: TrappingSetPattern, roots=None):
    """First set of variables inducing a subgraph isomorphic to the pattern.

    Returns the mapped variable ids as a tuple (in pattern-vertex order),
    or None when no occurrence exists.
    """
    _require_column_weight_3(g)
    order, anchor_pos = _pattern_order(pat)
    hit = kernels.find_induced_pattern(
        g.vptr, g.vadj, g.cptr, g.cadj,
        _pattern_adj_matrix(pat), order, anchor_pos, roots,
    )
    return None if hit is None else tuple(int(x) for x in hit)


def verify_occurrence(g: TannerGraph, pat: TrappingSetPattern, variables) -> bool:
    """Independent check that `variables` induce a subgraph isomorphic to
    the pattern (mapped in pattern-vertex order)."""
    variables = list(variables)
    if len(variables) != pat.a or len(set(variables)) != pat.a:
        return False
    counts = {}
    for v in variables:
        for c in g.var_checks(v):
            counts[c] = counts.get(c, 0) + 1
    if any(cnt > 2 for cnt in counts.values()):
        return False
    pairs = set()
    vset = {v: i for i, v in enumerate(variables)}
    for c, cnt in counts.items():
        if cnt == 2:
            pair = tuple(sorted(vset[v] for v in g.chk_vars(c) if v in vset))
            if pair in pairs:
                return False  # two checks on the same pair: a multi-edge
            pairs.add(pair)
    return pairs == set(pat.edges)


def eight_cycle_sharing_report(g: TannerGraph, cap: int = 10_000_000):
    """(ok, n_cycles, witness): does every 8-cycle share 2+ variables with
    at most one other 8-cycle?  The witness is a triple of Cycle objects
    (one cycle plus two distinct partners) when violated."""
    cycles = enumerate_cycles(g, 8, cap=cap)
    by_pair: dict[tuple, list[int]] = {}
    partners: list[set] = [set() for _ in cycles]
    for idx, cyc in enumerate(cycles):
        vs = sorted(cyc.variables)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                key = (vs[i], vs[j])
                bucket = by_pair.setdefault(key, [])
                for other in bucket:
                    partners[other].add(idx)
                    partners[idx].add(other)
                    if len(partners[other]) > 1:
                        w = sorted(partners[other])
                        return False, len(cycles), (cycles[other], cycles[w[0]], cycles[w[1]])
                    if len(partners[idx]) > 1:
                        w = sorted(partners[idx])
                        return False, len(cycles), (cycles[idx], cycles[w[0]], cycles[w[1]])
                bucket.append(idx)
    return True, len(cycles), None


def eight_cycle_sharing_ok(g: TannerGraph) -> bool:
    ok, _, _ = eight_cycle_sharing_report(g)
    return ok


def min_distance_at_least_10(g: TannerGraph) -> bool:
    """Certify minimum distance >= 10 by excluding codeword templates.

    Any weight-w codeword induces an all-even-degree subgraph on w
    variables; girth >= 6 rules out weight 2, and the connected collapsed
    templates of weights 4, 6 and 8 are searched explicitly.  Raises when
    girth < 6 (the certificate logic needs 4-cycle freeness).
    """
    _require_column_weight_3(g)
    if girth(g) < 6:
        raise ValueError("certificate needs girth >= 6")
    roots = None
    if getattr(g, "block_q", None):
        # translation symmetry of expanded block codes: one root per column
        roots = list(range(0, g.n_var, g.block_q))
    for pat in codeword_patterns(8):
        if find_pattern(g, pat, roots=roots) is not None:
            return False
    return True
