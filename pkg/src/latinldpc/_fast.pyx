# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Contracts (and the reference semantics) live in
latinldpc._pyref; this module must stay behaviorally identical."""

import numpy as np

from libc.math cimport log, tanh
from libc.stdint cimport int32_t, int64_t, uint8_t

BACKEND = "c"

cdef enum:
    BIG = 1 << 30


def girth_bipartite(vptr, vadj, cptr, cadj):
    """Shortest cycle length via BFS from every check node; -1 for forests."""
    cdef int64_t[::1] vp = np.ascontiguousarray(vptr, dtype=np.int64)
    cdef int32_t[::1] va = np.ascontiguousarray(vadj, dtype=np.int32)
    cdef int64_t[::1] cp = np.ascontiguousarray(cptr, dtype=np.int64)
    cdef int32_t[::1] ca = np.ascontiguousarray(cadj, dtype=np.int32)
    cdef int n = vp.shape[0] - 1
    cdef int m = cp.shape[0] - 1
    cdef int total = n + m
    # combined adjacency: variables first (neighbors shifted by n), then checks
    aptr_np = np.concatenate((np.asarray(vp), np.asarray(vp)[n] + np.asarray(cp)[1:]))
    adj_np = np.concatenate((np.asarray(va) + n, np.asarray(ca))).astype(np.int32)
    cdef int64_t[::1] aptr = np.ascontiguousarray(aptr_np, dtype=np.int64)
    cdef int32_t[::1] adj = adj_np
    dist_np = np.empty(total, dtype=np.int32)
    par_np = np.empty(total, dtype=np.int32)
    queue_np = np.empty(total, dtype=np.int32)
    cdef int32_t[::1] dist = dist_np
    cdef int32_t[::1] par = par_np
    cdef int32_t[::1] queue = queue_np
    cdef int best = BIG
    cdef int root, qi, qlen, u, w, du, cyc
    cdef int64_t e
    for root in range(n, total):
        dist_np[:] = -1
        par_np[:] = -1
        dist[root] = 0
        queue[0] = root
        qlen = 1
        qi = 0
        while qi < qlen:
            u = queue[qi]
            qi += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for e in range(aptr[u], aptr[u + 1]):
                w = adj[e]
                if dist[w] == -1:
                    dist[w] = du + 1
                    par[w] = u
                    queue[qlen] = w
                    qlen += 1
                elif par[u] != w and par[w] != u:
                    cyc = du + dist[w] + 1
                    if cyc < best:
                        best = cyc
        if best == 4:
            break
    return -1 if best >= BIG else best


def enumerate_cycles(vptr, vadj, cptr, cadj, int length, int64_t cap=10_000_000):
    """All simple cycles of exactly `length` nodes; see _pyref for encoding."""
    if length % 2 != 0 or length < 4:
        raise ValueError("cycle length must be an even integer >= 4")
    cdef int64_t[::1] vp = np.ascontiguousarray(vptr, dtype=np.int64)
    cdef int32_t[::1] va = np.ascontiguousarray(vadj, dtype=np.int32)
    cdef int64_t[::1] cp = np.ascontiguousarray(cptr, dtype=np.int64)
    cdef int32_t[::1] ca = np.ascontiguousarray(cadj, dtype=np.int32)
    cdef int n = vp.shape[0] - 1
    cdef int m = cp.shape[0] - 1
    cdef int total = n + m
    aptr_np = np.concatenate((np.asarray(vp), np.asarray(vp)[n] + np.asarray(cp)[1:]))
    adj_np = np.concatenate((np.asarray(va) + n, np.asarray(ca))).astype(np.int32)
    cdef int64_t[::1] aptr = np.ascontiguousarray(aptr_np, dtype=np.int64)
    cdef int32_t[::1] adj = adj_np

    buf_np = np.empty((4096, length), dtype=np.int32)
    cdef int32_t[:, ::1] buf = buf_np
    cdef int64_t count = 0
    cdef bint complete = True

    path_np = np.empty(length, dtype=np.int32)
    iters_np = np.empty(length, dtype=np.int64)
    onpath_np = np.zeros(total, dtype=np.uint8)
    cdef int32_t[::1] path = path_np
    cdef int64_t[::1] iters = iters_np
    cdef uint8_t[::1] onpath = onpath_np

    cdef int anchor, depth, u, w, k
    cdef int64_t e
    cdef bint adjacent
    for anchor in range(total):
        path[0] = anchor
        onpath[anchor] = 1
        depth = 0
        iters[0] = aptr[anchor]
        while depth >= 0:
            u = path[depth]
            if depth == length - 1:
                # close the cycle if u is adjacent to the anchor
                adjacent = False
                for e in range(aptr[u], aptr[u + 1]):
                    if adj[e] == anchor:
                        adjacent = True
                        break
                if adjacent and path[1] < path[depth]:
                    if count >= cap:
                        complete = False
                        break
                    if count >= buf.shape[0]:
                        buf_np = np.concatenate((buf_np, np.empty_like(buf_np)))
                        buf = buf_np
                    for k in range(length):
                        buf[count, k] = path[k]
                    count += 1
                onpath[u] = 0
                depth -= 1
                continue
            e = iters[depth]
            if e >= aptr[u + 1]:
                onpath[u] = 0
                depth -= 1
                continue
            iters[depth] = e + 1
            w = adj[e]
            if w > anchor and not onpath[w]:
                depth += 1
                path[depth] = w
                onpath[w] = 1
                if depth < length - 1:
                    iters[depth] = aptr[w]
        if not complete:
            break
        # clear any leftovers from an interrupted walk
        for k in range(length):
            if k <= depth:
                onpath[path[k]] = 0
        onpath[anchor] = 0
    return buf_np[:count].copy(), complete


cdef bint _cand_ok(int w, int pv, int a,
                   int64_t[::1] vp, int32_t[::1] va,
                   int64_t[::1] cp, int32_t[::1] ca,
                   uint8_t[::1] used, int32_t[::1] mapped,
                   uint8_t[:, ::1] pat):
    cdef int cnt, partner, p, i, nslots
    cdef int64_t e, e2
    cdef int slots_v[3]
    cdef int slots_c[3]
    cdef bint found
    nslots = 0
    for e in range(vp[w], vp[w + 1]):
        cnt = 0
        partner = -1
        for e2 in range(cp[va[e]], cp[va[e] + 1]):
            p = ca[e2]
            if p != w and used[p]:
                cnt += 1
                partner = p
        if cnt >= 2:
            return False
        if cnt == 1:
            found = False
            for i in range(nslots):
                if slots_v[i] == partner:
                    slots_c[i] += 1
                    found = True
                    break
            if not found:
                slots_v[nslots] = partner
                slots_c[nslots] = 1
                nslots += 1
    cdef int pu, vu, actual
    for pu in range(a):
        vu = mapped[pu]
        if vu < 0:
            continue
        actual = 0
        for i in range(nslots):
            if slots_v[i] == vu:
                actual = slots_c[i]
                break
        if actual != pat[pv, pu]:
            return False
    return True


cdef bint _place(int k, int a, int n,
                 int64_t[::1] vp, int32_t[::1] va,
                 int64_t[::1] cp, int32_t[::1] ca,
                 uint8_t[::1] used, int32_t[::1] mapped,
                 uint8_t[:, ::1] pat,
                 int32_t[::1] order, int32_t[::1] anchor_pos):
    if k == a:
        return True
    cdef int pv = order[k]
    cdef int vanchor = mapped[order[anchor_pos[k]]]
    cdef int cands[512]
    cdef int ncand = 0
    cdef int p, i, j, tmp
    cdef bint seen
    cdef int64_t e, e2
    for e in range(vp[vanchor], vp[vanchor + 1]):
        for e2 in range(cp[va[e]], cp[va[e] + 1]):
            p = ca[e2]
            if p == vanchor or used[p]:
                continue
            seen = False
            for i in range(ncand):
                if cands[i] == p:
                    seen = True
                    break
            if not seen and ncand < 512:
                cands[ncand] = p
                ncand += 1
    # ascending order keeps results identical to the pure-Python kernel
    for i in range(1, ncand):
        tmp = cands[i]
        j = i - 1
        while j >= 0 and cands[j] > tmp:
            cands[j + 1] = cands[j]
            j -= 1
        cands[j + 1] = tmp
    for i in range(ncand):
        p = cands[i]
        if _cand_ok(p, pv, a, vp, va, cp, ca, used, mapped, pat):
            mapped[pv] = p
            used[p] = 1
            if _place(k + 1, a, n, vp, va, cp, ca, used, mapped, pat, order, anchor_pos):
                return True
            used[p] = 0
            mapped[pv] = -1
    return False


def find_induced_pattern(vptr, vadj, cptr, cadj, pat_adj, order, anchor_pos, roots=None):
    """First induced occurrence of a collapsed pattern; see _pyref."""
    deg_v = np.diff(np.asarray(vptr))
    deg_c = np.diff(np.asarray(cptr))
    if len(deg_v) and len(deg_c) and int(deg_v.max()) * int(deg_c.max()) > 512:
        # candidate buffer too small for this graph; use the reference kernel
        from . import _pyref
        return _pyref.find_induced_pattern(
            vptr, vadj, cptr, cadj, pat_adj, order, anchor_pos, roots
        )
    cdef int64_t[::1] vp = np.ascontiguousarray(vptr, dtype=np.int64)
    cdef int32_t[::1] va = np.ascontiguousarray(vadj, dtype=np.int32)
    cdef int64_t[::1] cp = np.ascontiguousarray(cptr, dtype=np.int64)
    cdef int32_t[::1] ca = np.ascontiguousarray(cadj, dtype=np.int32)
    cdef uint8_t[:, ::1] pat = np.ascontiguousarray(pat_adj, dtype=np.uint8)
    cdef int32_t[::1] order_v = np.ascontiguousarray(order, dtype=np.int32)
    cdef int32_t[::1] anchor_v = np.ascontiguousarray(anchor_pos, dtype=np.int32)
    cdef int n = vp.shape[0] - 1
    cdef int a = order_v.shape[0]
    if roots is None:
        roots_np = np.arange(n, dtype=np.int32)
    else:
        roots_np = np.ascontiguousarray(roots, dtype=np.int32)
    cdef int32_t[::1] roots_v = roots_np
    used_np = np.zeros(n, dtype=np.uint8)
    mapped_np = np.full(a, -1, dtype=np.int32)
    cdef uint8_t[::1] used = used_np
    cdef int32_t[::1] mapped = mapped_np
    cdef int ri, r, pv0
    pv0 = order_v[0]
    for ri in range(roots_v.shape[0]):
        r = roots_v[ri]
        if not _cand_ok(r, pv0, a, vp, va, cp, ca, used, mapped, pat):
            continue
        mapped[pv0] = r
        used[r] = 1
        if _place(1, a, n, vp, va, cp, ca, used, mapped, pat, order_v, anchor_v):
            return [int(mapped[i]) for i in range(a)]
        used[r] = 0
        mapped[pv0] = -1
    return None


def spa_decode_frames(cptr, evar, vptr, veidx, cofe, llrs, int max_iter, double clamp):
    """Per-frame log-domain sum-product decoding; see _pyref for semantics."""
    cdef int64_t[::1] cp = np.ascontiguousarray(cptr, dtype=np.int64)
    cdef int32_t[::1] ev = np.ascontiguousarray(evar, dtype=np.int32)
    cdef int64_t[::1] vp = np.ascontiguousarray(vptr, dtype=np.int64)
    cdef int32_t[::1] ve = np.ascontiguousarray(veidx, dtype=np.int32)
    llrs_np = np.ascontiguousarray(np.atleast_2d(llrs), dtype=np.float64)
    cdef double[:, ::1] L = llrs_np
    cdef int F = L.shape[0]
    cdef int n = L.shape[1]
    cdef int m = cp.shape[0] - 1
    cdef int64_t E = ev.shape[0]

    words_np = np.zeros((F, n), dtype=np.uint8)
    success_np = np.zeros(F, dtype=np.uint8)
    iters_np = np.full(F, max_iter, dtype=np.int32)
    cdef uint8_t[:, ::1] words = words_np
    cdef uint8_t[::1] success = success_np
    cdef int32_t[::1] iters = iters_np

    mcv_np = np.empty(E, dtype=np.float64)
    mvc_np = np.empty(E, dtype=np.float64)
    phi_np = np.empty(E, dtype=np.float64)
    totals_np = np.empty(n, dtype=np.float64)
    hard_np = np.empty(n, dtype=np.uint8)
    cdef double[::1] mcv = mcv_np
    cdef double[::1] mvc = mvc_np
    cdef double[::1] phi = phi_np
    cdef double[::1] totals = totals_np
    cdef uint8_t[::1] hard = hard_np

    cdef int f, it, v, c, parity, negs
    cdef int64_t e
    cdef double x, mag, tot_phi, excl, sgn
    cdef bint ok
    for f in range(F):
        for e in range(E):
            mcv[e] = 0.0
        for it in range(max_iter + 1):
            for v in range(n):
                totals[v] = L[f, v]
            for e in range(E):
                totals[ev[e]] += mcv[e]
            for v in range(n):
                hard[v] = 1 if totals[v] < 0.0 else 0
            ok = True
            for c in range(m):
                parity = 0
                for e in range(cp[c], cp[c + 1]):
                    parity ^= hard[ev[e]]
                if parity:
                    ok = False
                    break
            if ok:
                success[f] = 1
                iters[f] = it
                break
            if it == max_iter:
                break
            for e in range(E):
                x = totals[ev[e]] - mcv[e]
                if x > clamp:
                    x = clamp
                elif x < -clamp:
                    x = -clamp
                mvc[e] = x
                mag = x if x >= 0.0 else -x
                if mag < 1e-12:
                    mag = 1e-12
                phi[e] = -log(tanh(mag / 2.0))
            for c in range(m):
                tot_phi = 0.0
                negs = 0
                for e in range(cp[c], cp[c + 1]):
                    tot_phi += phi[e]
                    if mvc[e] < 0.0:
                        negs += 1
                for e in range(cp[c], cp[c + 1]):
                    excl = tot_phi - phi[e]
                    if excl < 1e-12:
                        excl = 1e-12
                    mag = -log(tanh(excl / 2.0))
                    if mag > clamp:
                        mag = clamp
                    if (negs - (1 if mvc[e] < 0.0 else 0)) & 1:
                        mcv[e] = -mag
                    else:
                        mcv[e] = mag
        for v in range(n):
            words[f, v] = hard[v]
    return words_np, success_np.astype(bool), iters_np
