"""Immutable simple undirected graph with masked BFS primitives.

Vertices are dense ``0..n-1`` internally; the text file format and the CLI
are 1-based.  The graph itself is immutable and shareable; all BFS scratch
state lives in a per-run :class:`Workspace` so concurrent solves on one
graph never interfere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .kernels import bfs_tree

__all__ = [
    "Graph",
    "VertexMask",
    "Workspace",
    "GraphFormatError",
    "parse_graph",
    "load_graph",
    "format_graph",
    "random_gnp",
    "shortest_path",
    "distances_from",
    "neighborhood",
]


class GraphFormatError(ValueError):
    """Malformed graph text; carries the offending 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Simple, undirected, loopless graph over vertices ``0..n-1``.

    Adjacency is stored CSR-style (``indptr``, ``nbrs``) with each row
    sorted ascending, which the BFS kernels rely on for determinism.
    """

    __slots__ = ("n", "m", "indptr", "nbrs")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        self.n = n
        self.m = m
        self.indptr = np.zeros(n + 1, dtype=np.int32)
        for u in range(n):
            adj[u].sort()
            self.indptr[u + 1] = self.indptr[u] + len(adj[u])
        self.nbrs = np.empty(2 * m, dtype=np.int32)
        for u in range(n):
            self.nbrs[self.indptr[u]:self.indptr[u + 1]] = adj[u]

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (a read-only view)."""
        return self.nbrs[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        return i < row.size and row[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges once, as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield (u, int(v))

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex id {v} out of range 0..{self.n - 1}")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexMask:
    """A set of vertices treated as absent, together with incident edges.

    A masked view of ``g`` is exactly the subgraph induced on the vertices
    not in ``removed``.  Masks compose additively; the solver layers them
    instead of ever copying the graph.
    """

    removed: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "removed", frozenset(self.removed))

    def check(self, g: Graph) -> None:
        for v in self.removed:
            g.check_vertex(v)

    def to_blocked(self, n: int) -> np.ndarray:
        blocked = np.zeros(n, dtype=np.uint8)
        for v in self.removed:
            blocked[v] = 1
        return blocked


class Workspace:
    """Per-run scratch buffers for BFS and mask composition.

    Single-owner state: one Workspace must not be shared across concurrent
    solves.  ``dist_cache`` memoizes unmasked full-graph distance arrays
    (used by checkpoint-gap bounds and candidate ordering).
    """

    def __init__(self, g: Graph):
        n = g.n
        self.g = g
        self.dist = np.empty(n, dtype=np.int32)
        self.parent = np.empty(n, dtype=np.int32)
        self.queue = np.empty(n, dtype=np.int32)
        self.blocked = np.zeros(n, dtype=np.uint8)
        self.blocked_base = np.zeros(n, dtype=np.uint8)
        self.dist_cache: dict[int, np.ndarray] = {}
        self.root_flow: Optional[int] = None  # memo for the unmasked s-t flow

    def distances_unmasked(self, src: int) -> np.ndarray:
        """Cached full-graph BFS distances from ``src`` (-1 = unreachable)."""
        hit = self.dist_cache.get(src)
        if hit is None:
            none = np.zeros(self.g.n, dtype=np.uint8)
            bfs_tree(self.g.indptr, self.g.nbrs, none, src, -1, -1, -1, -1,
                     self.dist, self.parent, self.queue)
            hit = self.dist.copy()
            self.dist_cache[src] = hit
        return hit


def _extract_path(parent: np.ndarray, a: int, b: int) -> tuple[int, ...]:
    out = [b]
    v = b
    while v != a:
        v = int(parent[v])
        out.append(v)
    out.reverse()
    return tuple(out)


def shortest_path_blocked(g: Graph, blocked: np.ndarray, a: int, b: int,
                          ws: Workspace,
                          ban_edge: Optional[tuple[int, int]] = None,
                          ) -> Optional[tuple[int, ...]]:
    """Array-level shortest path used on the solver's hot path."""
    if a == b:
        return (a,)
    bu, bv = ban_edge if ban_edge is not None else (-1, -1)
    bfs_tree(g.indptr, g.nbrs, blocked, a, b, -1, bu, bv,
             ws.dist, ws.parent, ws.queue)
    if ws.dist[b] < 0:
        return None
    return _extract_path(ws.parent, a, b)


def shortest_path(g: Graph, mask: Optional[VertexMask], a: int, b: int,
                  ws: Optional[Workspace] = None,
                  ) -> Optional[tuple[int, ...]]:
    """Minimum-length a-b path in the masked view, or None if disconnected.

    Deterministic: among equal-length routes the lexicographically smallest
    vertex sequence is returned (ascending-id BFS, parents fixed on first
    discovery).
    """
    g.check_vertex(a)
    g.check_vertex(b)
    if mask is not None:
        mask.check(g)
        if a in mask.removed or b in mask.removed:
            raise ValueError("path endpoints must not be masked")
        blocked = mask.to_blocked(g.n)
    else:
        blocked = np.zeros(g.n, dtype=np.uint8)
    if ws is None:
        ws = Workspace(g)
    return shortest_path_blocked(g, blocked, a, b, ws)


def distances_from(g: Graph, mask: Optional[VertexMask], src: int,
                   radius: Optional[int] = None,
                   ws: Optional[Workspace] = None) -> dict[int, int]:
    """Exact BFS distances from ``src`` for every vertex within ``radius``
    (all reachable vertices when radius is None)."""
    g.check_vertex(src)
    if mask is not None:
        mask.check(g)
        if src in mask.removed:
            raise ValueError("BFS source must not be masked")
        blocked = mask.to_blocked(g.n)
    else:
        blocked = np.zeros(g.n, dtype=np.uint8)
    if ws is None:
        ws = Workspace(g)
    r = -1 if radius is None else radius
    count = bfs_tree(g.indptr, g.nbrs, blocked, src, -1, r, -1, -1,
                     ws.dist, ws.parent, ws.queue)
    return {int(ws.queue[i]): int(ws.dist[ws.queue[i]]) for i in range(count)}


def neighborhood(g: Graph, src: int, r: int,
                 ws: Optional[Workspace] = None) -> set[int]:
    """All vertices at distance <= r from ``src`` (always contains src)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    return set(distances_from(g, None, src, radius=r, ws=ws))


# ---------------------------------------------------------------------------
# text format and generation
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the plain edge-list format.

    Lines starting with '#' are comments.  The first data line is
    ``<n> <m>``; exactly m lines ``<u> <v>`` follow with 1-based endpoints,
    u != v, duplicates rejected.
    """
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    n = 0
    m_expected = 0
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("expected two integers", line_no)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("expected two integers", line_no) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative header values", line_no)
            header = (a, b)
            n, m_expected = a, b
            continue
        if len(edges) >= m_expected:
            raise GraphFormatError(
                f"more than the declared {m_expected} edges", line_no)
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphFormatError(f"endpoint out of range 1..{n}", line_no)
        if a == b:
            raise GraphFormatError("self-loop not allowed", line_no)
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {a} {b}", line_no)
        seen.add(key)
        edges.append((a - 1, b - 1))
    if header is None:
        raise GraphFormatError("missing '<n> <m>' header", 1)
    if len(edges) != m_expected:
        raise GraphFormatError(
            f"declared {m_expected} edges but found {len(edges)}",
            len(text.splitlines()) or 1)
    return Graph(n, edges)


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph) -> str:
    """Serialize to the text format (1-based, deterministic edge order)."""
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p): each unordered pair is an edge with probability p.

    Pairs are drawn in a fixed (u < v) order from ``random.Random(seed)``,
    so identical (n, p, seed) always yields the identical graph.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v)
             for u in range(n)
             for v in range(u + 1, n)
             if rng.random() < p]
    return Graph(n, edges)
