"""Vertex-split transformation and the two flow subroutines built on it:
minimum s-t vertex separator size (via unit-capacity max flow) and k
internally vertex-disjoint s-t paths of minimum total length (via min-cost
unit flow with successive shortest paths).

Splitting each vertex v into v_in -> v_out (unit arc) turns vertex
disjointness into arc disjointness; an original s-t path of length L becomes
an s_out -> t_in path of length 2L - 1.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph

__all__ = [
    "SplitDigraph",
    "DisjointPathsResult",
    "split_transform",
    "st_flow_value",
    "min_vertex_separator_size",
    "min_total_length_disjoint_paths",
]

_INF = float("inf")


def _vin(v: int) -> int:
    return 2 * v


def _vout(v: int) -> int:
    return 2 * v + 1


class SplitDigraph:
    """Residual network over the split digraph.

    Arcs are stored in pairs: even id = real arc (capacity 1, cost 1), odd
    id = its residual reverse (capacity 0, cost -1).  The leading real arcs
    are the internal arcs, one per (kept) vertex in id order; cross arcs
    follow in edge order, two per original edge.
    """

    def __init__(self, g: Graph, removed: Optional[Sequence[int]] = None):
        n = g.n
        alive = [True] * n
        if removed is not None:
            for v in removed:
                alive[v] = False
        self.graph_n = n
        self.node_count = 2 * n
        self.adj: list[list[int]] = [[] for _ in range(self.node_count)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.alive = alive
        for v in range(n):
            if alive[v]:
                self._add_arc(_vin(v), _vout(v))
        for u, v in g.edges():
            if alive[u] and alive[v]:
                self._add_arc(_vout(u), _vin(v))
                self._add_arc(_vout(v), _vin(u))
        self.arc_count = len(self.to) // 2

    def _add_arc(self, u: int, w: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(w)
        self.cap.append(1)
        self.adj[w].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def flow_on(self, real_arc: int) -> int:
        return 1 - self.cap[2 * real_arc]

    def cancel_flow(self, real_arc: int) -> None:
        self.cap[2 * real_arc] = 1
        self.cap[2 * real_arc + 1] = 0


def split_transform(g: Graph) -> SplitDigraph:
    """Build the split digraph of ``g``: 2n nodes, n + 2m arcs."""
    return SplitDigraph(g)


def _max_flow(net: SplitDigraph, source: int, sink: int) -> int:
    """Edmonds-Karp on the unit-capacity residual network."""
    nn = net.node_count
    parent_arc = [-1] * nn
    value = 0
    while True:
        for i in range(nn):
            parent_arc[i] = -1
        parent_arc[source] = -2
        queue = [source]
        head = 0
        reached = False
        while head < len(queue) and not reached:
            u = queue[head]
            head += 1
            for e in net.adj[u]:
                if net.cap[e] <= 0:
                    continue
                w = net.to[e]
                if parent_arc[w] != -1:
                    continue
                parent_arc[w] = e
                if w == sink:
                    reached = True
                    break
                queue.append(w)
        if not reached:
            return value
        w = sink
        while w != source:
            e = parent_arc[w]
            net.cap[e] -= 1
            net.cap[e ^ 1] += 1
            w = net.to[e ^ 1]
        value += 1


def st_flow_value(g: Graph, s: int, t: int,
                  removed: Optional[Iterable[int]] = None) -> int:
    """Max s_out -> t_in flow value in the split digraph.

    Equals the maximum number of internally vertex-disjoint s-t paths (a
    direct s-t edge contributes one unit that no internal arc can cut), so
    this is the quantity the solver compares against k.
    """
    if s == t:
        raise ValueError("terminals s and t must differ")
    g.check_vertex(s)
    g.check_vertex(t)
    removed_list = sorted(set(removed)) if removed is not None else None
    if removed_list is not None and (s in removed_list or t in removed_list):
        raise ValueError("terminals must not be removed")
    net = SplitDigraph(g, removed_list)
    return _max_flow(net, _vout(s), _vin(t))


def min_vertex_separator_size(g: Graph, s: int, t: int) -> float:
    """Size of a minimum s-t vertex separator.

    When s and t are adjacent no vertex separator exists; the distinguished
    marker ``inf`` is returned (callers that need a path count should use
    :func:`st_flow_value` instead).
    """
    if s == t:
        raise ValueError("terminals s and t must differ")
    if g.has_edge(s, t):
        return _INF
    return st_flow_value(g, s, t)


@dataclass(frozen=True)
class DisjointPathsResult:
    """k pairwise internally vertex-disjoint s-t paths of minimum total
    length; ``split_length`` is the corresponding arc count in the split
    digraph, satisfying total_length = (split_length + k) / 2."""

    paths: tuple[tuple[int, ...], ...]
    total_length: int
    split_length: int


_UNREACHED = 1 << 60


def _dijkstra_reduced(net: SplitDigraph, source: int, potential: list[int],
                      dist: list[int], parent_arc: list[int]) -> None:
    nn = net.node_count
    for i in range(nn):
        dist[i] = _UNREACHED
        parent_arc[i] = -1
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for e in net.adj[u]:
            if net.cap[e] <= 0:
                continue
            w = net.to[e]
            cost = 1 if e % 2 == 0 else -1
            nd = d + cost + potential[u] - potential[w]
            if nd < dist[w]:
                dist[w] = nd
                parent_arc[w] = e
                heapq.heappush(heap, (nd, w))


def min_total_length_disjoint_paths(g: Graph, s: int, t: int, k: int,
                                    removed: Optional[Iterable[int]] = None,
                                    ) -> Optional[DisjointPathsResult]:
    """k internally vertex-disjoint s-t paths minimizing total length, or
    None when fewer than k disjoint paths exist.

    Successive shortest-path augmentations with potentials keep every
    intermediate flow cost-optimal; unit costs keep everything integral.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if s == t:
        raise ValueError("terminals s and t must differ")
    g.check_vertex(s)
    g.check_vertex(t)
    removed_list = sorted(set(removed)) if removed is not None else None
    if removed_list is not None and (s in removed_list or t in removed_list):
        raise ValueError("terminals must not be removed")
    net = SplitDigraph(g, removed_list)
    source, sink = _vout(s), _vin(t)
    nn = net.node_count
    potential = [0] * nn
    dist = [_UNREACHED] * nn
    parent_arc = [-1] * nn
    for _ in range(k):
        _dijkstra_reduced(net, source, potential, dist, parent_arc)
        if dist[sink] >= _UNREACHED:
            return None
        # capping at dist[sink] keeps reduced costs non-negative even for
        # nodes this round could not reach
        cap_at = dist[sink]
        for i in range(nn):
            potential[i] += dist[i] if dist[i] < cap_at else cap_at
        w = sink
        while w != source:
            e = parent_arc[w]
            net.cap[e] -= 1
            net.cap[e ^ 1] += 1
            w = net.to[e ^ 1]

    # cancel opposite cross arcs first (a cost-optimal flow should not
    # contain any, but decomposition must not rely on that)
    n = g.n
    cross_base = sum(1 for v in range(n) if net.alive[v])
    for a in range(cross_base, net.arc_count, 2):
        if net.flow_on(a) == 1 and net.flow_on(a + 1) == 1:
            net.cancel_flow(a)
            net.cancel_flow(a + 1)

    # per-node flowed out-arcs, consumed greedily by smallest head id
    out_flow: list[list[int]] = [[] for _ in range(nn)]
    for a in range(net.arc_count):
        if net.flow_on(a) == 1:
            e = 2 * a
            u = net.to[e ^ 1]
            out_flow[u].append(e)
    for u in range(nn):
        out_flow[u].sort(key=lambda e: net.to[e])

    paths: list[tuple[int, ...]] = []
    split_total = 0
    for _ in range(k):
        path = [s]
        cur = source
        arcs_used = 0
        while cur != sink:
            if not out_flow[cur]:
                raise AssertionError("flow decomposition ran out of arcs")
            e = out_flow[cur].pop(0)
            arcs_used += 1
            nxt = net.to[e]
            if nxt == sink:
                path.append(t)
                cur = nxt
                continue
            x = nxt // 2
            internal = out_flow[nxt].pop(0)
            arcs_used += 1
            if net.to[internal] != _vout(x):
                raise AssertionError("expected the internal arc of a vertex")
            path.append(x)
            cur = _vout(x)
        paths.append(tuple(path))
        split_total += arcs_used

    total = sum(len(p) - 1 for p in paths)
    if 2 * total != split_total + k:
        raise AssertionError("length conversion identity violated")
    return DisjointPathsResult(tuple(paths), total, split_total)
