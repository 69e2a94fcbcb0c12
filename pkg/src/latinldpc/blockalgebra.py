"""Block-level algebra for incremental checks during progressive construction.

In the expansion of a base matrix into permutation blocks, a cycle of length
2k corresponds to a block index sequence (i_1,j_1),...,(i_k,j_k) with
cyclically consecutive-distinct rows and columns whose alternating sum
sum_l (w[i_l,j_l] - w[i_l,j_{l+1}]) vanishes; in-block positions are then
determined up to a free translation (the additive group of GF(q) acts on the
Tanner graph), so cycles, trapping sets and codeword supports all come in
orbits of exactly q translates.  Everything here therefore works on base
matrix entries and GF(q) tables only.  The graph module provides the
independent graph-side counterparts used by post-construction audits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .basematrix import UNSET
from .galois import GaloisField
from .patterns import TrappingSetPattern

FRONTIER_CAP = 4_000_000


class BlockContext:
    """Field plus dense add/sub tables for vectorized entry arithmetic."""

    def __init__(self, field: GaloisField):
        if field.q > 1024:
            raise ValueError("block-level machinery supports q <= 1024")
        self.field = field
        self.add_t, self.sub_t = field.add_sub_tables()


@lru_cache(maxsize=None)
def _cyclic_row_seqs(gamma: int, k: int, first=None) -> tuple:
    """Row index sequences of length k, cyclically consecutive-distinct."""
    firsts = range(gamma) if first is None else (first,)
    out = []
    for i1 in firsts:
        for rest in product(range(gamma), repeat=k - 1):
            seq = (i1,) + rest
            if all(seq[l] != seq[(l + 1) % k] for l in range(k)):
                out.append(seq)
    return tuple(out)


def _set_mask(w: np.ndarray) -> np.ndarray:
    return w != UNSET


def cycle4_through(ctx: BlockContext, w: np.ndarray, r: int, c: int) -> bool:
    """Any 4-cycle through block (r, c)?  Entry (r, c) must be set."""
    sub = ctx.sub_t
    mask = _set_mask(w)
    gamma, eta = w.shape
    for i2 in range(gamma):
        if i2 == r or not mask[i2, c]:
            continue
        d = sub[w[r, c], w[i2, c]]
        js = mask[r] & mask[i2]
        js[c] = False
        cols = np.nonzero(js)[0]
        if len(cols) and (sub[w[r, cols], w[i2, cols]] == d).any():
            return True
    return False


def cycle6_through(ctx: BlockContext, w: np.ndarray, r: int, c: int) -> bool:
    """Any 6-cycle through block (r, c)?"""
    add, sub = ctx.add_t, ctx.sub_t
    mask = _set_mask(w)
    gamma, eta = w.shape
    for _, a, b in _cyclic_row_seqs(gamma, 3, first=r):
        if not mask[b, c]:
            continue
        mu = mask[r] & mask[a]
        mu[c] = False
        mv = mask[a] & mask[b]
        mv[c] = False
        u = np.nonzero(mu)[0]
        v = np.nonzero(mv)[0]
        if not len(u) or not len(v):
            continue
        s1 = sub[w[r, c], w[r, u]]                     # (U,)
        s2 = sub[w[a, u][:, None], w[a, v][None, :]]   # (U, V)
        s3 = sub[w[b, v], w[b, c]]                     # (V,)
        total = add[add[s1[:, None], s2], s3[None, :]]
        total[u[:, None] == v[None, :]] = -1  # u != v (off-grid marker)
        if (total == 0).any():
            return True
    return False


def cycle8_through(ctx: BlockContext, w: np.ndarray, r: int, c: int) -> bool:
    """Any 8-cycle through block (r, c)?"""
    add, sub = ctx.add_t, ctx.sub_t
    mask = _set_mask(w)
    gamma, eta = w.shape
    for _, a, b, d in _cyclic_row_seqs(gamma, 4, first=r):
        if not mask[d, c]:
            continue
        mu = mask[r] & mask[a]
        mu[c] = False
        mv = mask[a] & mask[b]
        mt = mask[b] & mask[d]
        mt[c] = False
        u = np.nonzero(mu)[0]
        v = np.nonzero(mv)[0]
        t = np.nonzero(mt)[0]
        if not len(u) or not len(v) or not len(t):
            continue
        s1 = sub[w[r, c], w[r, u]]
        s2 = sub[w[a, u][:, None], w[a, v][None, :]]
        s12 = add[s1[:, None], s2]                       # (U, V)
        s3 = sub[w[b, v][:, None], w[b, t][None, :]]
        s4 = sub[w[d, t], w[d, c]]
        s34 = add[s3, s4[None, :]]                       # (V, T)
        total = add[s12[:, :, None], s34[None, :, :]]    # (U, V, T)
        bad = (u[:, None, None] == v[None, :, None]) | (
            v[None, :, None] == t[None, None, :]
        )
        total = np.where(bad, -1, total)
        if (total == 0).any():
            return True
    return False


def w_girth(ctx: BlockContext, w: np.ndarray, up_to: int = 8):
    """Smallest cycle length in {4, 6, 8} present in the expansion of the set
    entries, or None when the girth exceeds `up_to` (so >= up_to + 2)."""
    mask = _set_mask(w)
    gamma, eta = w.shape
    checks = {4: cycle4_through, 6: cycle6_through, 8: cycle8_through}
    for length in (4, 6, 8):
        if length > up_to:
            break
        fn = checks[length]
        for r in range(gamma):
            for c in range(eta):
                if mask[r, c] and fn(ctx, w, r, c):
                    return length
    return None


# ---------------------------------------------------------------------------
# Eight-cycle orbits and the cycle-sharing registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleOrbit:
    """A translation orbit of 8-cycles: block columns, rows and in-block
    offsets of one representative (offsets normalized so xs[0] = 0)."""

    cols: tuple
    rows: tuple
    xs: tuple
    key: tuple


def _orbit_canonical(field: GaloisField, cols, rows, xs):
    """Canonical key over the 8 traversals of the cycle, offsets rebased."""
    k = 4
    variants = []
    for s in range(k):
        cc = tuple(cols[(s + l) % k] for l in range(k))
        rr = tuple(rows[(s + l) % k] for l in range(k))
        xx = tuple(xs[(s + l) % k] for l in range(k))
        variants.append((cc, rr, xx))
        # reversed traversal starting at the same variable
        cc_r = (cols[s],) + tuple(cols[(s - l) % k] for l in range(1, k))
        rr_r = tuple(rows[(s - 1 - l) % k] for l in range(k))
        xx_r = (xs[s],) + tuple(xs[(s - l) % k] for l in range(1, k))
        variants.append((cc_r, rr_r, xx_r))
    best = None
    for cc, rr, xx in variants:
        base = xx[0]
        rebased = tuple(int(field.sub(x, base)) for x in xx)
        key = (cc, rebased, rr)
        if best is None or key < best:
            best = key
    return best


def eight_cycle_orbits_through_col(ctx: BlockContext, w: np.ndarray, c: int):
    """All 8-cycle orbits passing through block column c (simple cycles only:
    walks that revisit a variable or a check are filtered out)."""
    f = ctx.field
    add, sub = ctx.add_t, ctx.sub_t
    mask = _set_mask(w)
    gamma, eta = w.shape
    if not mask[:, c].all():
        raise ValueError("column under test must be fully set")
    found = {}
    orbits = []
    for rseq in _cyclic_row_seqs(gamma, 4):
        r, a, b, d = rseq
        mu = mask[r] & mask[a]
        mu[c] = False
        mv = mask[a] & mask[b]
        mt = mask[b] & mask[d]
        mt[c] = False
        u = np.nonzero(mu)[0]
        v = np.nonzero(mv)[0]
        t = np.nonzero(mt)[0]
        if not len(u) or not len(v) or not len(t):
            continue
        s1 = sub[w[r, c], w[r, u]]
        s2 = sub[w[a, u][:, None], w[a, v][None, :]]
        s12 = add[s1[:, None], s2]
        s3 = sub[w[b, v][:, None], w[b, t][None, :]]
        s4 = sub[w[d, t], w[d, c]]
        s34 = add[s3, s4[None, :]]
        total = add[s12[:, :, None], s34[None, :, :]]
        bad = (u[:, None, None] == v[None, :, None]) | (
            v[None, :, None] == t[None, None, :]
        )
        total = np.where(bad, -1, total)
        for iu, iv, it in zip(*np.nonzero(total == 0)):
            cols = (c, int(u[iu]), int(v[iv]), int(t[it]))
            xs = [0]
            for l in range(3):
                step = sub[w[rseq[l], cols[l]], w[rseq[l], cols[l + 1]]]
                xs.append(int(add[xs[-1], step]))
            ys = [int(add[xs[l], w[rseq[l], cols[l]]]) for l in range(4)]
            vars_ = {(cols[l], xs[l]) for l in range(4)}
            chks = {(rseq[l], ys[l]) for l in range(4)}
            if len(vars_) < 4 or len(chks) < 4:
                continue  # degenerate closed walk, not a simple 8-cycle
            key = _orbit_canonical(f, cols, rseq, xs)
            if key not in found:
                found[key] = True
                orbits.append(CycleOrbit(cols, tuple(rseq), tuple(xs), key))
    return orbits


def eight_cycle_orbits_all(ctx: BlockContext, w: np.ndarray):
    """Every 8-cycle orbit of the (fully set) active columns."""
    seen = {}
    out = []
    for c in range(w.shape[1]):
        for orb in eight_cycle_orbits_through_col(ctx, w, c):
            if orb.key not in seen:
                seen[orb.key] = True
                out.append(orb)
    return out


def orbit_size(ctx: BlockContext, orb: CycleOrbit) -> int:
    """Number of distinct cycles in a translation orbit: q / |stabilizer|.

    In odd characteristic the stabilizer is trivial; in characteristic 2 a
    cycle can be invariant under a translation of order 2 (or 4), because
    the 4 variables can split into translation pairs.
    """
    f = ctx.field
    sub = ctx.sub_t
    vars_ = frozenset((orb.cols[l], orb.xs[l]) for l in range(4))
    stab = 0
    for l in range(4):
        if orb.cols[l] != orb.cols[0]:
            continue
        c = int(sub[orb.xs[l], orb.xs[0]])
        shifted = frozenset((cc, int(ctx.add_t[x, c])) for cc, x in vars_)
        if shifted == vars_:
            stab += 1
    return f.q // stab


def count_eight_cycles(ctx: BlockContext, w: np.ndarray) -> int:
    """Exact number of 8-cycles in the expansion (sum of orbit sizes)."""
    return sum(orbit_size(ctx, orb) for orb in eight_cycle_orbits_all(ctx, w))


class EightCycleRegistry:
    """Incrementally tracked 8-cycle orbits with pairwise sharing counts.

    Two 8-cycles share >= 2 variables exactly when their orbits have an
    ordered slot pair with equal (column, column, offset difference) key; the
    translation delta between the sharing representatives is determined by
    the matched slots.  Per orbit the partner count of every translate is the
    same, so the sharing condition reduces to: each orbit's set of
    (other orbit, delta) partners has at most one element.

    In characteristic 2 a translation-invariant partner orbit can appear
    under two deltas that name the same cycle, which makes this check
    slightly conservative (it may reject a graph that barely satisfies the
    condition, never the reverse).  Odd-characteristic fields, including all
    the production constructions here, are exact.
    """

    def __init__(self, ctx: BlockContext):
        self.ctx = ctx
        self.orbits: list[CycleOrbit] = []
        self.key_index: dict[tuple, list[int]] = {}
        self.partners: list[set] = []

    @staticmethod
    def _slot_keys(ctx: BlockContext, orb: CycleOrbit):
        sub = ctx.sub_t
        keys = []
        for l in range(4):
            for l2 in range(4):
                if l != l2:
                    keys.append(
                        ((orb.cols[l], orb.cols[l2], int(sub[orb.xs[l], orb.xs[l2]])), l)
                    )
        return keys

    def _match_partners(self, new_orbits):
        """Partner pairs created by adding new_orbits: list of
        (orbit_id_or_new_index, other, delta) with new orbits indexed by
        ('new', idx)."""
        ctx = self.ctx
        sub = ctx.sub_t
        pairs = []
        new_keys = [self._slot_keys(ctx, orb) for orb in new_orbits]
        # new vs existing
        for idx, orb in enumerate(new_orbits):
            for (key, l) in new_keys[idx]:
                for other_id, m in self.key_index.get(key, ()):
                    delta = int(sub[orb.xs[l], self.orbits[other_id].xs[m]])
                    pairs.append((("new", idx), other_id, delta))
        # new vs new (including self-pairs from distinct slot matches)
        index_new: dict[tuple, list] = {}
        for idx, keys in enumerate(new_keys):
            for (key, l) in keys:
                index_new.setdefault(key, []).append((idx, l))
        for key, entries in index_new.items():
            for i1 in range(len(entries)):
                for i2 in range(len(entries)):
                    if i1 == i2:
                        continue
                    (idx1, l1), (idx2, l2) = entries[i1], entries[i2]
                    if idx1 > idx2:
                        continue
                    delta = int(
                        sub[new_orbits[idx1].xs[l1], new_orbits[idx2].xs[l2]]
                    )
                    if idx1 == idx2 and delta == 0:
                        continue
                    pairs.append((("new", idx1), ("new", idx2), delta))
        return pairs

    def probe(self, new_orbits):
        """Would committing new_orbits keep every cycle's partner count <= 1?

        Returns (ok, partner_additions) where partner_additions maps an
        orbit handle to its prospective partner set additions.
        """
        pairs = self._match_partners(new_orbits)
        prospective: dict = {}

        def pset(handle):
            if handle not in prospective:
                if isinstance(handle, tuple) and handle[0] == "new":
                    prospective[handle] = set()
                else:
                    prospective[handle] = set(self.partners[handle])
            return prospective[handle]

        f = self.ctx.field
        for h1, h2, delta in pairs:
            pset(h1).add((h2, delta))
            pset(h2).add((h1, f.neg(delta)))
        ok = all(len(s) <= 1 for s in prospective.values())
        return ok, prospective

    def commit(self, new_orbits):
        ok, prospective = self.probe(new_orbits)
        base = len(self.orbits)
        handle_to_id = {}
        for idx, orb in enumerate(new_orbits):
            handle_to_id[("new", idx)] = base + idx
            self.orbits.append(orb)
            self.partners.append(set())
            for (key, l) in self._slot_keys(self.ctx, orb):
                self.key_index.setdefault(key, []).append((base + idx, l))

        def resolve(handle):
            return handle_to_id.get(handle, handle)

        for handle, pset in prospective.items():
            resolved = {(resolve(h), d) for h, d in pset}
            self.partners[resolve(handle)] = resolved
        return ok

    def checkpoint(self) -> int:
        return len(self.orbits)

    def rollback(self, mark: int) -> None:
        """Drop every orbit committed after `mark` (LIFO column uncommit)."""
        if mark >= len(self.orbits):
            return
        for orb in self.orbits[mark:]:
            for (key, _l) in self._slot_keys(self.ctx, orb):
                bucket = self.key_index.get(key)
                if bucket is not None:
                    self.key_index[key] = [(i, l) for i, l in bucket if i < mark]
                    if not self.key_index[key]:
                        del self.key_index[key]
        del self.orbits[mark:]
        del self.partners[mark:]
        for s in self.partners:
            stale = {entry for entry in s if entry[0] >= mark}
            s -= stale

    def max_partner_count(self) -> int:
        return max((len(s) for s in self.partners), default=0)


# ---------------------------------------------------------------------------
# Block-level pattern instance search
# ---------------------------------------------------------------------------


def _automorphisms(pat: TrappingSetPattern):
    adj = [0] * pat.a
    for u, v in pat.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    degs = [bin(m).count("1") for m in adj]
    autos = []
    perm = [-1] * pat.a

    def place(k, used):
        if k == pat.a:
            autos.append(tuple(perm))
            return
        for w in range(pat.a):
            if used >> w & 1 or degs[w] != degs[k]:
                continue
            ok = True
            for prev in range(k):
                if bool(adj[k] >> prev & 1) != bool(adj[w] >> perm[prev] & 1):
                    ok = False
                    break
            if ok:
                perm[k] = w
                place(k + 1, used | 1 << w)
                perm[k] = -1

    place(0, 0)
    return autos


def _vertex_orbit_reps(pat: TrappingSetPattern):
    reps = []
    seen = set()
    autos = _automorphisms(pat)
    for v in range(pat.a):
        if v in seen:
            continue
        reps.append(v)
        for sigma in autos:
            seen.add(sigma[v])
    return reps


def _build_plan(pat: TrappingSetPattern, root: int):
    """Placement order from `root`, closing back edges as early as possible.

    Returns a list of steps: ("place", v, anchor) introduces vertex v through
    its pattern edge to the placed anchor; ("close", u, v) consumes a further
    pattern edge between two placed vertices.
    """
    adj = pat.adjacency()
    degs = pat.degrees()
    placed = [root]
    placed_set = {root}
    steps = []
    while len(placed) < pat.a:
        best = None
        best_key = None
        for v in range(pat.a):
            if v in placed_set:
                continue
            back = len(adj[v] & placed_set)
            if back == 0:
                continue
            key = (back, degs[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        nbrs = sorted(adj[best] & placed_set)
        steps.append(("place", best, nbrs[0]))
        for u in nbrs[1:]:
            steps.append(("close", u, best))
        placed.append(best)
        placed_set.add(best)
    return steps


class PatternSearcher:
    """Vectorized search for pattern instances directly on a base matrix.

    An instance assigns each pattern vertex a (block column, offset) pair and
    each pattern edge a block row so that the two endpoint variables meet the
    same check; offsets are normalized so the root sits at offset 0 (every
    instance is one representative of q translates).  A final exact census
    per candidate enforces induced isomorphism (exactly one shared check per
    pattern edge, none elsewhere, no check touching three variables).
    """

    def __init__(self, ctx: BlockContext, pat: TrappingSetPattern):
        self.ctx = ctx
        self.pat = pat
        self.roots = _vertex_orbit_reps(pat)
        self.plans = {r: _build_plan(pat, r) for r in self.roots}

    def find_through_col(self, w: np.ndarray, col: int):
        """First instance with at least one variable in block column `col`."""
        return self._search(w, [col])

    def find_any(self, w: np.ndarray):
        return self._search(w, list(range(w.shape[1])))

    # -- internals ---------------------------------------------------------

    def _search(self, w: np.ndarray, root_cols):
        gamma, eta = w.shape
        if (w == UNSET).any():
            raise ValueError("pattern search needs fully set columns")
        for root in self.roots:
            hit = self._run_plan(w, root, root_cols)
            if hit is not None:
                return hit
        return None

    def _run_plan(self, w: np.ndarray, root: int, root_cols):
        ctx = self.ctx
        add, sub = ctx.add_t, ctx.sub_t
        gamma, eta = w.shape
        a = self.pat.a
        full_mask = (1 << gamma) - 1
        n0 = len(root_cols)
        cols = np.full((n0, a), -1, dtype=np.int64)
        xs = np.zeros((n0, a), dtype=np.int64)
        rowfree = np.full((n0, a), full_mask, dtype=np.int64)
        cols[:, root] = np.asarray(root_cols, dtype=np.int64)
        placed = [root]
        adj = self.pat.adjacency()

        for step in self.plans[root]:
            if cols.shape[0] == 0:
                return None
            if step[0] == "place":
                _, v, u = step
                parts = []
                for i in range(gamma):
                    sel = (rowfree[:, u] >> i) & 1 == 1
                    if not sel.any():
                        continue
                    c_sel = cols[sel]
                    x_sel = xs[sel]
                    w_iu = w[i, c_sel[:, u]]
                    for j in range(eta):
                        xv = add[x_sel[:, u], sub[w_iu, w[i, j]]]
                        keep = np.ones(len(xv), dtype=bool)
                        # induced filtering: a placed vertex must share a
                        # check with v in exactly one row if pattern-adjacent
                        # (its future close edge, or the anchor edge itself)
                        # and in none otherwise
                        for p in placed:
                            keep &= ~((c_sel[:, p] == j) & (x_sel[:, p] == xv))
                            shared = np.zeros(len(xv), dtype=np.int64)
                            for i2 in range(gamma):
                                shared += (
                                    add[xv, w[i2, j]]
                                    == add[x_sel[:, p], w[i2, c_sel[:, p]]]
                                )
                            if p == u or p in adj[v]:
                                keep &= shared == 1
                            else:
                                keep &= shared == 0
                            if not keep.any():
                                break
                        if not keep.any():
                            continue
                        nc = c_sel[keep].copy()
                        nx = x_sel[keep].copy()
                        nr = rowfree[sel][keep].copy()
                        nc[:, v] = j
                        nx[:, v] = xv[keep]
                        nr[:, u] &= ~(1 << i)
                        nr[:, v] = full_mask & ~(1 << i)
                        parts.append((nc, nx, nr))
                if not parts:
                    return None
                cols = np.concatenate([p[0] for p in parts])
                xs = np.concatenate([p[1] for p in parts])
                rowfree = np.concatenate([p[2] for p in parts])
                placed.append(v)
            else:
                _, u, v = step
                parts = []
                for i in range(gamma):
                    elig = (((rowfree[:, u] >> i) & 1) == 1) & (
                        ((rowfree[:, v] >> i) & 1) == 1
                    )
                    if not elig.any():
                        continue
                    c_u = cols[elig, u]
                    c_v = cols[elig, v]
                    eq = add[xs[elig, u], w[i, c_u]] == add[xs[elig, v], w[i, c_v]]
                    if not eq.any():
                        continue
                    nc = cols[elig][eq].copy()
                    nx = xs[elig][eq].copy()
                    nr = rowfree[elig][eq].copy()
                    nr[:, u] &= ~(1 << i)
                    nr[:, v] &= ~(1 << i)
                    parts.append((nc, nx, nr))
                if not parts:
                    return None
                cols = np.concatenate([p[0] for p in parts])
                xs = np.concatenate([p[1] for p in parts])
                rowfree = np.concatenate([p[2] for p in parts])
            if cols.shape[0] > FRONTIER_CAP:
                raise RuntimeError(
                    "pattern search frontier exceeded cap; base matrix too dense"
                )
        for row in range(cols.shape[0]):
            inst = (tuple(int(x) for x in cols[row]), tuple(int(x) for x in xs[row]))
            if self._census_ok(w, inst):
                return inst
        return None

    def _census_ok(self, w: np.ndarray, inst) -> bool:
        """Exact induced-isomorphism verification of a candidate instance."""
        ctx = self.ctx
        add = ctx.add_t
        cols, xs = inst
        a = self.pat.a
        gamma = w.shape[0]
        if len({(cols[v], xs[v]) for v in range(a)}) != a:
            return False
        pair_counts = {}
        for i in range(gamma):
            spots = {}
            for v in range(a):
                pos = int(add[xs[v], w[i, cols[v]]])
                spots.setdefault(pos, []).append(v)
            for members in spots.values():
                if len(members) >= 3:
                    return False
                if len(members) == 2:
                    pair = (min(members), max(members))
                    pair_counts[pair] = pair_counts.get(pair, 0) + 1
        edges = set(self.pat.edges)
        for pair, cnt in pair_counts.items():
            if pair not in edges or cnt != 1:
                return False
        return pair_counts.keys() == edges


def instance_variable_ids(field: GaloisField, inst) -> tuple:
    """Expanded-graph variable ids (col*q + position) of one representative."""
    cols, xs = inst
    q = field.q
    return tuple(int(c) * q + field.position_of(int(x)) for c, x in zip(cols, xs))
