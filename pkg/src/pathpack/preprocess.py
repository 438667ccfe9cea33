"""Input-graph reduction and pre-search trivial-instance detection.

Reduction keeps only vertices that can appear on a solution path: those
within distance ell of both terminals and within distance floor(ell/2) of
at least one, followed by iterated removal of degree <= 1 vertices (the
terminals are protected).  The reduced instance is decision-equivalent.

Trivial detection runs once at the root, on bare checkpoint lists: the
ell = 1, ell = 2 and k = 1 cases are decided outright, then the minimum
separator and the minimum-total-length disjoint paths give certificates for
many remaining instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .flows import min_total_length_disjoint_paths, st_flow_value
from .graph import Graph, Workspace, shortest_path_blocked
from .model import CheckpointInstance, PackingInstance, Solution

__all__ = ["ReductionReport", "TrivialOutcome", "reduce_instance",
           "detect_trivial"]


@dataclass(frozen=True)
class ReductionReport:
    """Which vertices survived and how ids translate.

    ``to_original[new_id] = old_id``; ``to_reduced`` maps the other way for
    kept vertices only.  The kept order is ascending, so reduced ids
    preserve the original relative order (BFS tie-breaking is unchanged).
    """

    kept: frozenset[int]
    n_before: int
    n_after: int
    m_before: int
    m_after: int
    to_original: tuple[int, ...]
    to_reduced: dict[int, int]

    def path_to_original(self, path: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.to_original[v] for v in path)

    def solution_to_original(self, sol: Solution) -> Solution:
        return Solution(tuple(self.path_to_original(p) for p in sol.paths))


def reduce_instance(inst: CheckpointInstance,
                    ws: Optional[Workspace] = None,
                    ) -> tuple[CheckpointInstance, ReductionReport]:
    """Shrink the instance to the relevant neighborhood of the terminals.

    Every checkpoint must survive (checkpoints come from candidate solution
    paths, which the kept set covers by construction); a missing one is an
    internal error, not a silent drop.  Intended for the pipeline root, so
    the interval store must still be empty.
    """
    if len(inst.intervals) != 0:
        raise ValueError("reduce expects an empty forbidden-interval store")
    g = inst.base.graph
    s, t, ell = inst.base.s, inst.base.t, inst.base.ell
    if ws is None:
        ws = Workspace(g)
    ds = ws.distances_unmasked(s)
    dt = ws.distances_unmasked(t)
    half = ell // 2
    keep = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if 0 <= ds[v] <= ell and 0 <= dt[v] <= ell \
                and (ds[v] <= half or dt[v] <= half):
            keep[v] = True
    # terminals always stay so the reduced instance remains well formed,
    # even when they cannot reach each other within ell
    keep[s] = True
    keep[t] = True

    # iterated degree <= 1 pruning; each round removes at least one vertex
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if not keep[v] or v == s or v == t:
                continue
            deg = int(np.count_nonzero(keep[g.neighbors(v)]))
            if deg <= 1:
                keep[v] = False
                changed = True

    kept_sorted = [v for v in range(g.n) if keep[v]]
    to_reduced = {v: i for i, v in enumerate(kept_sorted)}
    edges = [(to_reduced[u], to_reduced[v]) for u, v in g.edges()
             if keep[u] and keep[v]]
    reduced_g = Graph(len(kept_sorted), edges)
    for entries in inst.lists:
        for v in entries:
            if not keep[v]:
                raise AssertionError(
                    f"checkpoint {v} eliminated by reduction")
    new_base = PackingInstance(reduced_g, to_reduced[s], to_reduced[t],
                               inst.base.k, ell)
    new_lists = tuple(tuple(to_reduced[v] for v in entries)
                      for entries in inst.lists)
    reduced = CheckpointInstance(new_base, new_lists, inst.intervals)
    report = ReductionReport(
        kept=frozenset(kept_sorted),
        n_before=g.n, n_after=reduced_g.n,
        m_before=g.m, m_after=reduced_g.m,
        to_original=tuple(kept_sorted),
        to_reduced=to_reduced,
    )
    return reduced, report


@dataclass(frozen=True)
class TrivialOutcome:
    kind: str                      # "yes" | "no" | "unknown"
    witness: Optional[Solution] = None
    via: str = ""                  # detector tag


def _yes(witness: Solution, via: str) -> TrivialOutcome:
    return TrivialOutcome("yes", witness, via)


def _no(via: str) -> TrivialOutcome:
    return TrivialOutcome("no", None, via)


def detect_trivial(inst: CheckpointInstance,
                   ws: Optional[Workspace] = None) -> TrivialOutcome:
    """Root-only detectors, applied in order.

    ell = 1: yes iff k = 1 and the terminals are adjacent.  ell = 2: one
    path per common neighbor plus the direct edge, so yes iff that count
    reaches k.  k = 1: shortest-path length against ell.  Then the minimum
    separator refutes when its flow value is below k, and the k disjoint
    paths of minimum total length either directly form a witness (longest
    path <= ell), refute (total > k * ell), or leave the instance open.
    """
    for entries in inst.lists:
        if len(entries) != 2:
            raise ValueError("trivial detection expects bare lists")
    g = inst.base.graph
    s, t, k, ell = inst.base.s, inst.base.t, inst.base.k, inst.base.ell
    if ws is None:
        ws = Workspace(g)

    if ell == 1:
        if k == 1 and g.has_edge(s, t):
            return _yes(Solution(((s, t),)), "ell1")
        return _no("ell1")

    if ell == 2:
        common = sorted(set(map(int, g.neighbors(s)))
                        & set(map(int, g.neighbors(t))))
        count = len(common) + (1 if g.has_edge(s, t) else 0)
        if count < k:
            return _no("ell2")
        paths: list[tuple[int, ...]] = []
        if g.has_edge(s, t):
            paths.append((s, t))
        for c in common:
            if len(paths) == k:
                break
            paths.append((s, c, t))
        return _yes(Solution(tuple(paths[:k])), "ell2")

    if k == 1:
        none = np.zeros(g.n, dtype=np.uint8)
        path = shortest_path_blocked(g, none, s, t, ws)
        if path is not None and len(path) - 1 <= ell:
            return _yes(Solution((path,)), "k1")
        return _no("k1")

    if st_flow_value(g, s, t) < k:
        return _no("min-separator")

    result = min_total_length_disjoint_paths(g, s, t, k)
    if result is None:
        return _no("min-total-length")
    longest = max(len(p) - 1 for p in result.paths)
    if longest <= ell:
        return _yes(Solution(result.paths), "min-total-length")
    if result.total_length > k * ell:
        return _no("min-total-length")
    return TrivialOutcome("unknown")
