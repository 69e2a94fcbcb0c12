"""Pure-Python/numpy kernels: the fallback twins of the compiled extension.

Same contracts as latinldpc._fast; selected by latinldpc.kernels when
the extension is unavailable or LATINLDPC_KERNEL=py is set.  Graph inputs
arrive as CSR-style index arrays: (vptr, vadj) maps variables to check ids,
(cptr, cadj) maps checks to variable ids.
"""

from __future__ import annotations

import numpy as np

BACKEND = "py"

_BIG = 1 << 30


def _to_lists(indptr, indices):
    return [indices[indptr[i]:indptr[i + 1]].tolist() for i in range(len(indptr) - 1)]


def girth_bipartite(vptr, vadj, cptr, cadj) -> int:
    """Length of the shortest cycle, or -1 for a forest.

    BFS rooted at every check node; any non-tree edge met at depths
    (d_u, d_w) witnesses a cycle of length d_u + d_w + 1 through the root's
    BFS tree, and the minimum over all roots is exact.
    """
    n = len(vptr) - 1
    m = len(cptr) - 1
    var_adj = _to_lists(vptr, vadj)
    chk_adj = _to_lists(cptr, cadj)
    # global ids: variables 0..n-1, checks n..n+m-1
    adj = [[n + c for c in var_adj[v]] for v in range(n)]
    adj += [list(chk_adj[c]) for c in range(m)]
    total = n + m
    dist = np.full(total, -1, dtype=np.int64)
    parent = np.full(total, -1, dtype=np.int64)
    best = _BIG
    for root in range(n, n + m):
        dist[:] = -1
        parent[:] = -1
        dist[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    cyc = du + dist[w] + 1
                    if cyc < best:
                        best = cyc
        if best == 4:
            break
    return -1 if best == _BIG else int(best)


def enumerate_cycles(vptr, vadj, cptr, cadj, length: int, cap: int = 10_000_000):
    """All simple cycles of exactly `length` nodes, each reported once.

    Returns (cycles, complete): cycles is an int32 array of shape
    (count, length) holding alternating global node ids (variables are
    0..n-1, checks n..n+m-1) starting at the cycle's minimum id, with the
    traversal direction fixed so the second entry is smaller than the last;
    complete is False when `cap` stopped the enumeration early.
    """
    if length % 2 != 0 or length < 4:
        raise ValueError("cycle length must be an even integer >= 4")
    n = len(vptr) - 1
    m = len(cptr) - 1
    var_adj = _to_lists(vptr, vadj)
    chk_adj = _to_lists(cptr, cadj)
    adj = [[n + c for c in var_adj[v]] for v in range(n)]
    adj += [list(chk_adj[c]) for c in range(m)]
    adj_sets = [set(a) for a in adj]
    total = n + m
    out = []
    onpath = bytearray(total)
    path = [0] * length
    complete = True

    def dfs(u, depth):
        nonlocal complete
        if not complete:
            return
        anchor = path[0]
        if depth == length - 1:
            if anchor in adj_sets[u] and path[1] < path[depth]:
                if len(out) >= cap:
                    complete = False
                    return
                out.append(tuple(path))
            return
        for w in adj[u]:
            if w > anchor and not onpath[w]:
                path[depth + 1] = w
                onpath[w] = 1
                dfs(w, depth + 1)
                onpath[w] = 0

    for anchor in range(total):
        path[0] = anchor
        onpath[anchor] = 1
        dfs(anchor, 0)
        onpath[anchor] = 0
        if not complete:
            break
    arr = np.asarray(out, dtype=np.int32).reshape(len(out), length)
    return arr, complete


def find_induced_pattern(vptr, vadj, cptr, cadj, pat_adj, order, anchor_pos, roots=None):
    """First induced occurrence of a collapsed pattern, or None.

    pat_adj: a x a uint8 adjacency of the collapsed pattern.
    order: placement order of pattern vertices (order[0] is the root).
    anchor_pos[k]: index < k such that order[anchor_pos[k]] is adjacent in
    the pattern to order[k] (candidates extend from that vertex's image).
    roots: candidate variables for order[0] (defaults to every variable).

    An occurrence maps pattern vertices to distinct variables so that two
    mapped variables share exactly one check if pattern-adjacent and none
    otherwise, and no check touches three mapped variables; that is exactly
    induced-subgraph isomorphism for column-weight-3 templates.
    Returns mapped variable ids in pattern-vertex order.
    """
    n = len(vptr) - 1
    var_adj = _to_lists(vptr, vadj)
    chk_adj = _to_lists(cptr, cadj)
    a = len(order)
    mapped = [-1] * a  # by pattern vertex
    used = set()
    if roots is None:
        roots = range(n)

    def candidate_ok(pv, w):
        pairshare = {}
        for c in var_adj[w]:
            cnt = 0
            partner = -1
            for p in chk_adj[c]:
                if p != w and p in used:
                    cnt += 1
                    partner = p
            if cnt >= 2:
                return False
            if cnt == 1:
                pairshare[partner] = pairshare.get(partner, 0) + 1
        for pu in range(a):
            vu = mapped[pu]
            if vu < 0:
                continue
            if pairshare.get(vu, 0) != int(pat_adj[pv][pu]):
                return False
        return True

    def place(k):
        if k == a:
            return True
        pv = order[k]
        va = mapped[order[anchor_pos[k]]]
        cands = set()
        for c in var_adj[va]:
            for p in chk_adj[c]:
                if p != va and p not in used:
                    cands.add(p)
        for w in sorted(cands):
            if candidate_ok(pv, w):
                mapped[pv] = w
                used.add(w)
                if place(k + 1):
                    return True
                used.discard(w)
                mapped[pv] = -1
        return False

    for r in roots:
        pv0 = order[0]
        if not candidate_ok(pv0, r):
            continue
        mapped[pv0] = r
        used.add(r)
        if place(1):
            return [mapped[pv] for pv in range(a)]
        used.discard(r)
        mapped[pv0] = -1
    return None


def _segment_sums(arr, indptr):
    """Row-wise segment sums over the last axis; safe for empty segments."""
    starts = indptr[:-1]
    empty = indptr[:-1] == indptr[1:]
    safe = np.minimum(starts, max(arr.shape[-1] - 1, 0))
    sums = np.add.reduceat(arr, safe, axis=-1)
    if empty.any():
        sums[..., empty] = 0
    return sums


def spa_decode_frames(cptr, evar, vptr, veidx, cofe, llrs, max_iter: int, clamp: float):
    """Batched log-domain sum-product decoding of frames of channel LLRs.

    cptr/evar: check-major edge layout (evar[e] = variable of edge e).
    vptr/veidx: variable-major grouping of edge ids.  cofe[e] = check of
    edge e.  llrs: (F, n).  Returns (words, success, iters): hard-decision
    words (F, n) uint8, zero-syndrome flags, iterations used per frame.
    The check update runs in the phi domain with magnitudes clamped to
    [1e-12, clamp] so extreme LLRs cannot overflow.
    """
    llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
    F, n = llrs.shape
    E = len(evar)
    words = np.zeros((F, n), dtype=np.uint8)
    success = np.zeros(F, dtype=bool)
    iters = np.full(F, max_iter, dtype=np.int32)

    active = np.arange(F)
    mcv = np.zeros((F, E), dtype=np.float64)
    llr_act = llrs.copy()

    for it in range(max_iter + 1):
        totals = llr_act + _segment_sums(mcv[:, veidx], vptr)
        hard = totals < 0
        synd = _segment_sums(hard[:, evar].astype(np.int64), cptr) & 1
        ok = ~synd.any(axis=1)
        if ok.any():
            idx = active[ok]
            words[idx] = hard[ok]
            success[idx] = True
            iters[idx] = it
            keep = ~ok
            active = active[keep]
            if len(active) == 0:
                return words, success, iters
            mcv = mcv[keep]
            llr_act = llr_act[keep]
            totals = totals[keep]
            hard = hard[keep]
        if it == max_iter:
            words[active] = hard
            break
        mvc = np.clip(totals[:, evar] - mcv, -clamp, clamp)
        mag = np.clip(np.abs(mvc), 1e-12, clamp)
        phi = -np.log(np.tanh(mag / 2.0))
        tot_phi = _segment_sums(phi, cptr)
        excl = np.maximum(tot_phi[:, cofe] - phi, 1e-12)
        new_mag = -np.log(np.tanh(excl / 2.0))
        neg = mvc < 0
        tot_neg = _segment_sums(neg.astype(np.int64), cptr)
        excl_neg = tot_neg[:, cofe] - neg
        sign = 1.0 - 2.0 * (excl_neg & 1)
        mcv = np.clip(sign * new_mag, -clamp, clamp)
    return words, success, iters
