"""Trapping-set subgraph templates for column-weight-3 codes.

An (a, b) template describes a variable nodes whose induced Tanner subgraph
has b odd-degree checks.  It is stored in collapsed form: a simple graph on
the a variables where each degree-2 check became an edge; every variable has
3 check slots, so each vertex carries 3 - degree pendant marks (degree-1
checks).  Codeword supports are the b = 0 case.  The Tanner girth of a
template is twice the girth of its collapsed graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

MAX_PATTERN_VERTICES = 8


@dataclass(frozen=True)
class TrappingSetPattern:
    """Collapsed form of an (a, b) induced-subgraph template.

    edges are sorted (u, v) pairs with u < v over vertices 0..a-1; the
    pendant count at a vertex is 3 - degree.  girth_tanner is the exact
    Tanner girth (twice the collapsed girth).
    """

    a: int
    b: int
    edges: tuple[tuple[int, int], ...]
    girth_tanner: int

    def __post_init__(self):
        if (3 * self.a - self.b) % 2 != 0:
            raise ValueError("3a - b must be even for column weight 3")
        if len(self.edges) != (3 * self.a - self.b) // 2:
            raise ValueError("edge count must equal (3a - b)/2")
        degs = self.degrees()
        if any(d > 3 for d in degs):
            raise ValueError("collapsed degree exceeds column weight 3")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")

    def degrees(self) -> list[int]:
        degs = [0] * self.a
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return degs

    def pendants(self) -> list[int]:
        return [3 - d for d in self.degrees()]

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.a)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def label(self) -> str:
        return f"ts_{self.a}_{self.b}_g{self.girth_tanner}"


def _collapsed_girth(a: int, edges) -> int:
    """Girth of a simple graph (inf -> large sentinel 10**9), small a only."""
    adj = [[] for _ in range(a)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = 10**9
    for root in range(a):
        dist = [-1] * a
        parent_edge = [-1] * a
        dist[root] = 0
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = u
                    queue.append(w)
                elif parent_edge[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def _is_connected(a: int, edges) -> bool:
    if a == 1:
        return True
    adj = [[] for _ in range(a)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == a


def _adjacency_masks(a: int, edges) -> list[int]:
    adj = [0] * a
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _invariant(a: int, edges) -> tuple:
    """Cheap isomorphism invariant: degrees plus 3- and 4-cycle counts."""
    adj = _adjacency_masks(a, edges)
    degs = tuple(sorted(bin(m).count("1") for m in adj))
    tri = 0
    for u, v in edges:
        tri += bin(adj[u] & adj[v]).count("1")
    squares = 0
    for u in range(a):
        for v in range(u + 1, a):
            common = bin(adj[u] & adj[v] & ~(1 << u) & ~(1 << v)).count("1")
            squares += common * (common - 1) // 2
    return (degs, tri // 3, squares)


def _isomorphic(a: int, e1, e2) -> bool:
    """Backtracking graph isomorphism for tiny graphs (a <= 8)."""
    adj1 = _adjacency_masks(a, e1)
    adj2 = _adjacency_masks(a, e2)
    deg1 = [bin(m).count("1") for m in adj1]
    deg2 = [bin(m).count("1") for m in adj2]
    if sorted(deg1) != sorted(deg2):
        return False
    order = sorted(range(a), key=lambda u: -deg1[u])
    mapping = [-1] * a

    def place(k: int, used: int) -> bool:
        if k == a:
            return True
        u = order[k]
        for w in range(a):
            if used >> w & 1 or deg2[w] != deg1[u]:
                continue
            ok = True
            for prev in order[:k]:
                if bool(adj1[u] >> prev & 1) != bool(adj2[w] >> mapping[prev] & 1):
                    ok = False
                    break
            if ok:
                mapping[u] = w
                if place(k + 1, used | 1 << w):
                    return True
                mapping[u] = -1
        return False

    return place(0, 0)


@lru_cache(maxsize=None)
def generate_patterns(a: int, b: int, girth_tanner: int) -> tuple[TrappingSetPattern, ...]:
    """All (a, b) templates with Tanner girth >= girth_tanner, up to isomorphism.

    Enumerates connected simple graphs on a vertices with (3a - b)/2 edges,
    maximum degree 3 and collapsed girth >= girth_tanner/2; infeasible
    parameters yield an empty tuple.  Results are deterministic: canonical
    duplicate rejection and a sorted output order.
    """
    if a < 1 or a > MAX_PATTERN_VERTICES:
        raise ValueError(f"a must be in [1, {MAX_PATTERN_VERTICES}]")
    if girth_tanner % 2 != 0 or girth_tanner < 4:
        raise ValueError("girth_tanner must be an even integer >= 4")
    if b < 0 or (3 * a - b) % 2 != 0:
        return ()
    n_edges = (3 * a - b) // 2
    if n_edges < a - 1 or n_edges > 3 * a // 2 or n_edges < 0:
        return ()  # cannot be connected / exceeds degree budget
    min_collapsed_girth = girth_tanner // 2
    all_edges = list(combinations(range(a), 2))

    reps: dict[tuple, list[tuple]] = {}

    def record(chosen):
        if not _is_connected(a, chosen):
            return
        edges = tuple(chosen)
        inv = _invariant(a, edges)
        bucket = reps.setdefault(inv, [])
        for other in bucket:
            if _isomorphic(a, edges, other):
                return
        bucket.append(edges)

    def extend(chosen, degs, start):
        if len(chosen) == n_edges:
            record(chosen)
            return
        remaining_needed = n_edges - len(chosen)
        # each new edge consumes 2 units of remaining degree capacity
        if sum(3 - d for d in degs) < 2 * remaining_needed:
            return
        for idx in range(start, len(all_edges)):
            if len(all_edges) - idx < remaining_needed:
                break
            u, v = all_edges[idx]
            if degs[u] >= 3 or degs[v] >= 3:
                continue
            # girth prune: a new edge closes a cycle of length dist(u, v) + 1
            if min_collapsed_girth > 3:
                d = _bfs_dist(a, chosen, u, v, min_collapsed_girth - 1)
                if d is not None and d + 1 < min_collapsed_girth:
                    continue
            chosen.append((u, v))
            degs[u] += 1
            degs[v] += 1
            extend(chosen, degs, idx + 1)
            chosen.pop()
            degs[u] -= 1
            degs[v] -= 1

    extend([], [0] * a, 0)
    pats = []
    for bucket in reps.values():
        for edges in bucket:
            g2 = _collapsed_girth(a, edges)
            if g2 < min_collapsed_girth:
                continue
            girth = 2 * g2 if g2 < 10**9 else 10**9
            pats.append(TrappingSetPattern(a, b, tuple(sorted(edges)), girth))
    pats.sort(key=lambda p: (p.girth_tanner, p.edges))
    return tuple(pats)


def _bfs_dist(a: int, edges, src: int, dst: int, cap: int):
    """Shortest path length src->dst using current edges, None if > cap."""
    adj = [[] for _ in range(a)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {src: 0}
    queue = [src]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if dist[u] >= cap:
            break
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if w == dst:
                    return dist[w]
                queue.append(w)
    return dist.get(dst)


def codeword_patterns(max_weight: int = 8) -> tuple[TrappingSetPattern, ...]:
    """Templates of codeword supports (b = 0) of weight 4..max_weight for
    Tanner girth >= 6.  Avoiding these certifies minimum distance
    > max_weight in a girth >= 6 column-weight-3 graph.
    """
    out = []
    for a in range(4, max_weight + 1, 2):
        out.extend(generate_patterns(a, 0, 6))
    return tuple(out)


def write_pattern_catalog(patterns, path) -> None:
    """Edge-list text export with pendant-mark annotations."""
    with open(path, "w") as fh:
        fh.write(f"catalog {len(patterns)}\n")
        for pat in patterns:
            fh.write(f"pattern a={pat.a} b={pat.b} girth={pat.girth_tanner}\n")
            for u, v in pat.edges:
                fh.write(f"  edge {u} {v}\n")
            pend = pat.pendants()
            marks = " ".join(f"{v}:{pend[v]}" for v in range(pat.a) if pend[v])
            fh.write(f"  pendants {marks if marks else '-'}\n")


def read_pattern_catalog(path) -> tuple[TrappingSetPattern, ...]:
    pats = []
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    i = 0
    if not lines or not lines[0].startswith("catalog "):
        raise ValueError(f"{path}: missing catalog header")
    i = 1
    while i < len(lines):
        ln = lines[i].strip()
        if not ln:
            i += 1
            continue
        if not ln.startswith("pattern "):
            raise ValueError(f"{path}: line {i + 1}: expected pattern header")
        fields = dict(tok.split("=") for tok in ln.split()[1:])
        a, b, girth = int(fields["a"]), int(fields["b"]), int(fields["girth"])
        i += 1
        edges = []
        while i < len(lines) and lines[i].strip().startswith("edge "):
            _, u, v = lines[i].split()
            edges.append((int(u), int(v)))
            i += 1
        if i < len(lines) and lines[i].strip().startswith("pendants"):
            i += 1
        pats.append(TrappingSetPattern(a, b, tuple(sorted(tuple(sorted(e)) for e in edges)), girth))
    return tuple(pats)
