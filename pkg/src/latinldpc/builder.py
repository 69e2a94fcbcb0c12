"""Progressive check-and-select-or-disregard construction.

The Tanner graph grows in stages of one base-matrix column (q variable
nodes).  Within a stage, each of the gamma row positions receives a field
element tried from a candidate list (random or sequential); after every
placement the constraint set tau is re-checked incrementally, restricted to
structures through the new block, and a violating candidate is disregarded.
A failed row position backtracks within the column (column-level rollback);
when a whole stage exhausts its budget the construction stops and the
achieved matrix is re-audited by a full graph-side check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import graph as graphmod
from .basematrix import UNSET, BaseMatrix, expand
from .blockalgebra import (
    BlockContext,
    EightCycleRegistry,
    PatternSearcher,
    cycle4_through,
    cycle6_through,
    cycle8_through,
    eight_cycle_orbits_through_col,
)
from .galois import GaloisField
from .patterns import TrappingSetPattern, codeword_patterns


@dataclass(frozen=True)
class Condition:
    """Which graphical structures must stay out of the Tanner graph."""

    girth_min: int = 6
    forbidden_patterns: tuple = ()
    eight_cycle_sharing: bool = False
    min_distance_10: bool = False

    def __post_init__(self):
        if self.girth_min not in (6, 8, 10):
            raise ValueError("girth_min must be 6, 8 or 10")
        for pat in self.forbidden_patterns:
            if not isinstance(pat, TrappingSetPattern):
                raise TypeError("forbidden_patterns must hold TrappingSetPattern")

    def effective_patterns(self) -> tuple:
        """Explicitly forbidden templates plus the codeword templates implied
        by the minimum-distance flag, deduplicated."""
        pats = list(self.forbidden_patterns)
        if self.min_distance_10:
            for pat in codeword_patterns(8):
                if pat not in pats:
                    pats.append(pat)
        return tuple(pats)

    def describe(self) -> dict:
        return {
            "girth_min": self.girth_min,
            "forbidden_patterns": [
                {"a": p.a, "b": p.b, "girth": p.girth_tanner, "edges": list(p.edges)}
                for p in self.forbidden_patterns
            ],
            "eight_cycle_sharing": self.eight_cycle_sharing,
            "min_distance_10": self.min_distance_10,
        }


@dataclass(frozen=True)
class BuildPolicy:
    """Candidate ordering and budget knobs for the progressive builder."""

    candidate_order: str = "random"
    seed: int = 0
    max_retries_per_block: int | None = None  # default: 3q attempts per block
    target_rho: int | None = None
    fix_first_row_zero: bool = True
    fix_first_col_zero: bool = True
    max_column_backtracks: int | None = None  # default: 3q column uncommits
    debug_full_audit: bool = False  # graph-side audit after every column

    def __post_init__(self):
        if self.candidate_order not in ("random", "sequential"):
            raise ValueError("candidate_order must be 'random' or 'sequential'")
        if self.max_retries_per_block is not None and self.max_retries_per_block < 1:
            raise ValueError("retry budget must be positive")


@dataclass
class BuildResult:
    w: BaseMatrix
    rho: int
    log: list
    stats: dict
    audit: "ConditionReport"


@dataclass
class ConditionReport:
    ok: bool
    violations: list  # (clause, witness) pairs
    details: dict = dc_field(default_factory=dict)

    def summary(self) -> str:
        if self.ok:
            return "all condition clauses satisfied"
        return "; ".join(f"{clause}: {wit}" for clause, wit in self.violations)


class InfeasibleCondition(RuntimeError):
    """No initial column satisfies the condition (not even rho = 1 is placeable)."""


def _condition_searchers(ctx: BlockContext, tau: Condition):
    return [PatternSearcher(ctx, pat) for pat in tau.effective_patterns()]


def progressive_construct(
    f: GaloisField, gamma: int, tau: Condition, policy: BuildPolicy, audit: bool = True
) -> BuildResult:
    """Grow a gamma-row base matrix over GF(q) under the condition tau.

    Stages add one column each until target_rho is reached or no candidate
    column survives; the result is independently re-audited on the expanded
    Tanner graph (audit=False skips that, for callers auditing in bulk).
    Identical (field, gamma, tau, policy) inputs reproduce identical output.
    """
    if gamma < 2:
        raise ValueError("gamma must be >= 2")
    if tau.effective_patterns() and gamma != 3:
        raise ValueError("trapping-set templates assume column weight 3")
    q = f.q
    ctx = BlockContext(f)
    rng = np.random.Generator(np.random.Philox(key=policy.seed))
    budget_per_block = policy.max_retries_per_block or 3 * q
    searchers = _condition_searchers(ctx, tau)
    registry = EightCycleRegistry(ctx) if tau.eight_cycle_sharing else None
    max_rho = policy.target_rho if policy.target_rho is not None else q
    log: list[dict] = []
    stats = {"candidates_tried": 0, "row_rollbacks": 0}

    elements = np.asarray(f.elements(), dtype=np.int64)
    w = np.full((gamma, max_rho), UNSET, dtype=np.int64)
    rho = 0

    def candidate_list(row: int, col: int) -> list[int]:
        if policy.fix_first_col_zero and col == 0:
            return [0]
        if policy.fix_first_row_zero and row == 0:
            return [0]
        if policy.candidate_order == "sequential":
            return elements.tolist()
        return elements[rng.permutation(q)].tolist()

    def entry_ok(row: int, col: int) -> tuple[bool, str]:
        view = w[:, : col + 1]
        if cycle4_through(ctx, view, row, col):
            return False, "4-cycle"
        if tau.girth_min >= 8 and cycle6_through(ctx, view, row, col):
            return False, "6-cycle"
        if tau.girth_min >= 10 and cycle8_through(ctx, view, row, col):
            return False, "8-cycle"
        return True, ""

    def column_ok(col: int) -> tuple[bool, str, list]:
        """Checks that only apply once a column is complete."""
        view = w[:, : col + 1]
        for searcher in searchers:
            hit = searcher.find_through_col(view, col)
            if hit is not None:
                return False, f"pattern {searcher.pat.label()}", []
        new_orbits = []
        if registry is not None:
            new_orbits = eight_cycle_orbits_through_col(ctx, view, col)
            ok, _ = registry.probe(new_orbits)
            if not ok:
                return False, "eight-cycle sharing", []
        return True, "", new_orbits

    column_budget = gamma * budget_per_block
    backtracks_left = (
        policy.max_column_backtracks
        if policy.max_column_backtracks is not None
        else 3 * q
    )

    class _ColumnState:
        __slots__ = ("col", "cand", "attempts", "tries", "row", "checkpoint")

        def __init__(self, col):
            self.col = col
            self.cand = [[] for _ in range(gamma)]
            self.attempts = [0] * gamma
            self.tries = 0
            self.row = 0
            self.cand[0] = candidate_list(0, col)
            self.checkpoint = None

    def fill_column(st: _ColumnState) -> bool:
        """Run (or resume) the within-column DFS; True when a full column
        satisfying all incremental checks is placed."""
        col = st.col
        while st.tries < column_budget:
            row = st.row
            if not st.cand[row] or st.attempts[row] >= budget_per_block:
                w[row, col] = UNSET
                st.attempts[row] = 0
                st.cand[row] = []
                st.row = row - 1
                if st.row < 0:
                    return False
                w[st.row, col] = UNSET
                stats["row_rollbacks"] += 1
                continue
            value = st.cand[row].pop(0)
            st.attempts[row] += 1
            st.tries += 1
            stats["candidates_tried"] += 1
            w[row, col] = value
            ok, reason = entry_ok(row, col)
            orbits = []
            if ok and row == gamma - 1:
                ok, reason, orbits = column_ok(col)
            log.append(
                {
                    "stage": col,
                    "row": row,
                    "candidate": _exp_token(f, value),
                    "accepted": bool(ok),
                    "reason": reason,
                }
            )
            if not ok:
                w[row, col] = UNSET
                continue
            if row == gamma - 1:
                if registry is not None:
                    st.checkpoint = registry.checkpoint()
                    registry.commit(orbits)
                return True
            st.row = row + 1
            st.cand[st.row] = candidate_list(st.row, col)
        w[:, col] = UNSET
        return False

    stack: list[_ColumnState] = []
    while rho < max_rho:
        st = _ColumnState(rho)
        placed = fill_column(st)
        while not placed:
            if rho == 0:
                raise InfeasibleCondition(
                    "condition rejects every first column; tau unsatisfiable"
                )
            if backtracks_left <= 0 or not stack:
                break
            # uncommit the previous column and resume its candidate search
            backtracks_left -= 1
            stats["column_backtracks"] = stats.get("column_backtracks", 0) + 1
            prev = stack.pop()
            rho -= 1
            if registry is not None and prev.checkpoint is not None:
                registry.rollback(prev.checkpoint)
            prev.row = gamma - 1
            w[prev.row, prev.col] = UNSET
            st = prev
            placed = fill_column(st)
        if not placed:
            break
        stack.append(st)
        rho += 1
        if policy.debug_full_audit:
            partial = BaseMatrix(f, w[:, :rho].copy())
            rep = verify_condition(
                graphmod.TannerGraph.from_parity(expand(partial)), tau
            )
            if not rep.ok:
                raise AssertionError(
                    f"debug audit failed after column {rho - 1}: {rep.summary()}"
                )

    wm = BaseMatrix(f, w[:, :rho].copy())
    report = (
        verify_condition(graphmod.TannerGraph.from_parity(expand(wm)), tau)
        if audit
        else ConditionReport(True, [], {"skipped": True})
    )
    return BuildResult(wm, rho, log, stats, report)


def _exp_token(f: GaloisField, value: int) -> str:
    from .alist import exponent_token

    return exponent_token(f, value)


def verify_condition(g: graphmod.TannerGraph, tau: Condition) -> ConditionReport:
    """Full, non-incremental audit of every clause of tau on a Tanner graph.

    Uses the graph-side algorithms (BFS girth, induced-pattern DFS, cycle
    enumeration), independent of the block-level machinery the builder used.
    """
    violations = []
    details = {}
    gg = graphmod.girth(g)
    details["girth"] = gg
    if gg < tau.girth_min:
        violations.append(("girth", f"girth {gg} < {tau.girth_min}"))
    # for expanded block codes the translation group acts on the graph, so
    # any occurrence has a translate whose root vertex sits at an in-block
    # position-0 variable; restricting roots that way loses nothing
    roots = None
    if getattr(g, "block_q", None):
        roots = list(range(0, g.n_var, g.block_q))
    for pat in tau.effective_patterns():
        hit = graphmod.find_pattern(g, pat, roots=roots)
        if hit is not None:
            violations.append((f"pattern {pat.label()}", hit))
    if tau.eight_cycle_sharing:
        ok, n_cycles, witness = graphmod.eight_cycle_sharing_report(g)
        details["eight_cycles"] = n_cycles
        if not ok:
            violations.append(
                ("eight-cycle sharing", tuple(sorted(witness[0].variables)))
            )
    if tau.min_distance_10:
        codeword_labels = {p.label() for p in codeword_patterns(8)}
        details["min_distance_10"] = gg >= 6 and not any(
            clause.removeprefix("pattern ") in codeword_labels
            for clause, _ in violations
            if clause.startswith("pattern ")
        )
    return ConditionReport(not violations, violations, details)


def write_build_log(log, path) -> None:
    with open(path, "w") as fh:
        for entry in log:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
