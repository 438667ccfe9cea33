"""Checkpoint-aware greedy path construction.

Paths are built one list at a time, each as a chain of shortest subpaths
between consecutive checkpoints in a working graph that masks everything
already consumed.  Failure is data, never an exception: the failure kind
plus the exact partial state at the break point drive the branching rules.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .config import SolverConfig, SolveStats
from .flows import st_flow_value
from .graph import Workspace, shortest_path_blocked
from .model import CheckpointInstance

__all__ = ["FailureCondition", "GreedySuccess", "GreedyFailure",
           "GreedyOutcome", "run_greedy"]


class FailureCondition(enum.Enum):
    """Why a greedy run broke off.

    NO_SUBPATH: two consecutive checkpoints are disconnected in the working
    graph (branching rule 1).  OVERLONG: the accumulated path length would
    exceed the bound (rule 2).  CUT_TOO_SMALL: the optional separator check
    found fewer than the still-needed number of disjoint routes (rule 3).
    """

    NO_SUBPATH = 1
    OVERLONG = 2
    CUT_TOO_SMALL = 3

    @property
    def rule(self) -> int:
        return self.value


@dataclass(frozen=True)
class GreedySuccess:
    paths: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GreedyFailure:
    """Exact break-point state.

    ``i_beta``/``j_beta`` are the 1-based outer/inner iterations of the
    break (j_beta is None for the separator check, which sits between
    outer iterations).  ``overlong_len`` carries the length of the found
    but rejected subpath under OVERLONG; the position-ordering heuristic
    sorts by it.
    """

    condition: FailureCondition
    i_beta: int
    j_beta: Optional[int]
    complete_paths: tuple[tuple[int, ...], ...]
    partial_subpaths: tuple[tuple[int, ...], ...]
    overlong_len: Optional[int] = None


GreedyOutcome = Union[GreedySuccess, GreedyFailure]


def _join(subpaths: list[tuple[int, ...]]) -> tuple[int, ...]:
    out = list(subpaths[0])
    for q in subpaths[1:]:
        out.extend(q[1:])
    return tuple(out)


def run_greedy(inst: CheckpointInstance, cfg: SolverConfig,
               ws: Optional[Workspace] = None,
               stats: Optional[SolveStats] = None) -> GreedyOutcome:
    """One greedy attempt at the instance.

    Working graph per path i: the input graph minus internal vertices of
    the completed paths (terminals stay).  Per subpath j of list L: minus
    the vertices of this path's earlier subpaths, minus every checkpoint of
    every list, with the two subpath endpoints re-added.

    Forbidden intervals do not mask the working graph: the greedy outcome
    must depend on the checkpoint lists alone, so that enabling the
    symmetry-breaking rule can only remove subtrees (the search skips
    refuted insertions) and never perturb where a greedy run breaks.

    Requires that no list exceeds ell + 1 entries (the caller prunes that
    case first).
    """
    g = inst.base.graph
    s, t, k, ell = inst.base.s, inst.base.t, inst.base.k, inst.base.ell
    if ws is None:
        ws = Workspace(g)
    if stats is None:
        stats = SolveStats()
    lists = inst.lists
    cp_all = sorted(inst.checkpoint_union())

    blocked_base = ws.blocked_base
    blocked = ws.blocked
    blocked_base[:] = 0
    completed: list[tuple[int, ...]] = []

    def remaining_bare(first_pending: int) -> bool:
        return all(len(lists[x]) == 2 for x in range(first_pending, k))

    def cut_check_enabled(first_pending: int) -> bool:
        if not cfg.d_ms:
            return False
        if cfg.dms_bare_lists_only and not remaining_bare(first_pending):
            return False
        return True

    # the root separator test normally lives in trivial detection; when that
    # is disabled, the cut check also runs once before any path is attempted
    # (the unmasked flow value is fixed per solve, so it is memoized)
    if not cfg.trivial_detection and cut_check_enabled(0):
        if ws.root_flow is None:
            ws.root_flow = st_flow_value(g, s, t)
        if ws.root_flow < k:
            stats.dms_fired += 1
            return GreedyFailure(FailureCondition.CUT_TOO_SMALL, 1, None,
                                 (), ())

    for i0 in range(k):
        entries = lists[i0]
        used_direct = (s, t) in completed
        ell_i = 0
        subpaths: list[tuple[int, ...]] = []
        for j0 in range(len(entries) - 1):
            u, u2 = entries[j0], entries[j0 + 1]
            np.copyto(blocked, blocked_base)
            for q in subpaths:
                for v in q:
                    blocked[v] = 1
            for v in cp_all:
                blocked[v] = 1
            blocked[u] = 0
            blocked[u2] = 0
            # the direct s-t edge is a consumable route: once one completed
            # path is exactly (s, t), no later path may be that same edge
            ban = (s, t) if (used_direct and u == s and u2 == t) else None
            q = shortest_path_blocked(g, blocked, u, u2, ws, ban_edge=ban)
            if q is None:
                return GreedyFailure(FailureCondition.NO_SUBPATH,
                                     i0 + 1, j0 + 1,
                                     tuple(completed), tuple(subpaths))
            q_len = len(q) - 1
            if ell_i + q_len > ell:
                return GreedyFailure(FailureCondition.OVERLONG,
                                     i0 + 1, j0 + 1,
                                     tuple(completed), tuple(subpaths),
                                     overlong_len=q_len)
            ell_i += q_len
            subpaths.append(q)
        path = _join(subpaths)
        completed.append(path)
        for v in path[1:-1]:
            blocked_base[v] = 1
        if i0 + 1 < k and cut_check_enabled(i0 + 1):
            removed = [int(v) for v in np.nonzero(blocked_base)[0]]
            if st_flow_value(g, s, t, removed=removed) < k - (i0 + 1):
                stats.dms_fired += 1
                return GreedyFailure(FailureCondition.CUT_TOO_SMALL,
                                     i0 + 2, None, tuple(completed), ())
    return GreedySuccess(tuple(completed))
