"""Problem instances, checkpoint lists, forbidden intervals, solutions, and
solver-independent solution validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Graph

__all__ = [
    "PackingInstance",
    "CheckpointInstance",
    "Solution",
    "ForbiddenInterval",
    "IntervalStore",
    "ValidationReport",
    "from_packing",
    "validate_solution",
    "is_list_trivially_too_long",
    "check_checkpoint_list",
]


@dataclass(frozen=True)
class PackingInstance:
    """Decide: are there k internally vertex-disjoint s-t paths in ``graph``,
    each of length at most ``ell``?"""

    graph: Graph
    s: int
    t: int
    k: int
    ell: int

    def __post_init__(self):
        self.graph.check_vertex(self.s)
        self.graph.check_vertex(self.t)
        if self.s == self.t:
            raise ValueError("terminals s and t must differ")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.ell < 1:
            raise ValueError("ell must be at least 1")


@dataclass(frozen=True)
class ForbiddenInterval:
    """Inserting ``x`` between entries ``a`` and ``b`` of list ``list_index``
    was refuted: within the current scope, that list's path can never visit
    a, x, b in this order.

    Intervals are list-scoped.  For interior a, b this changes nothing (an
    interior checkpoint occurs in exactly one list), but a plain (s, t, x)
    triple would also match every other list, and banning x there is wrong
    when the lists are not interchangeable: the refuted child only proves
    that no solution routes x on THIS list's path.
    """

    list_index: int
    a: int
    b: int
    x: int

    def __post_init__(self):
        if self.x == self.a or self.x == self.b:
            raise ValueError("interval vertex must differ from its endpoints")


class IntervalStore:
    """Scoped stack of forbidden intervals.

    A search node takes a mark on entry, pushes one interval after each
    refuted child, and truncates back to its mark on exit, so an interval is
    visible exactly to the later siblings of the refuted child and to their
    subtrees.
    """

    def __init__(self):
        self._items: list[ForbiddenInterval] = []

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def mark(self) -> int:
        return len(self._items)

    def push(self, list_index: int, a: int, b: int, x: int) -> None:
        self._items.append(ForbiddenInterval(list_index, a, b, x))

    def pop_to(self, mark: int) -> None:
        del self._items[mark:]

    def forbids(self, list_index: int, positions: dict[int, int], gap: int,
                x: int) -> bool:
        """True if some stored interval (a, b, x) for this list has ``a`` at
        position <= gap and ``b`` at position >= gap + 1.

        ``positions`` maps vertex -> 1-based position in the checkpoint list
        under consideration; ``gap`` is the 1-based index of the subpath slot
        between positions gap and gap + 1.
        """
        for iv in self._items:
            if iv.x != x or iv.list_index != list_index:
                continue
            pa = positions.get(iv.a)
            pb = positions.get(iv.b)
            if pa is not None and pb is not None and pa <= gap and pb >= gap + 1:
                return True
        return False


def check_checkpoint_list(entries: Sequence[int], s: int, t: int) -> None:
    """Raise unless ``entries`` is a valid checkpoint list for (s, t)."""
    if len(entries) < 2 or entries[0] != s or entries[-1] != t:
        raise ValueError("checkpoint list must start at s and end at t")
    interior = entries[1:-1]
    if len(set(interior)) != len(interior):
        raise ValueError("interior checkpoints must be distinct")
    if s in interior or t in interior:
        raise ValueError("terminals cannot be interior checkpoints")


@dataclass(frozen=True)
class CheckpointInstance:
    """A search-tree node's state: base instance, k checkpoint lists, and
    the (shared, scoped) forbidden-interval store.

    Interior checkpoints are globally distinct across lists: the branching
    rules exclude already-listed vertices, so no vertex is inserted twice.
    """

    base: PackingInstance
    lists: tuple[tuple[int, ...], ...]
    intervals: IntervalStore = field(default_factory=IntervalStore)

    def __post_init__(self):
        if len(self.lists) != self.base.k:
            raise ValueError("need exactly k checkpoint lists")
        seen: set[int] = set()
        for entries in self.lists:
            check_checkpoint_list(entries, self.base.s, self.base.t)
            for v in entries[1:-1]:
                self.base.graph.check_vertex(v)
                if v in seen:
                    raise ValueError(
                        f"checkpoint {v} appears in more than one list")
                seen.add(v)

    def checkpoint_union(self) -> set[int]:
        """All list entries across lists, terminals included."""
        out: set[int] = set()
        for entries in self.lists:
            out.update(entries)
        return out

    def with_insertion(self, list_index: int, pos: int,
                       v: int) -> "CheckpointInstance":
        """New instance with ``v`` spliced into list ``list_index`` before
        0-based position ``pos``; shares the interval store."""
        entries = self.lists[list_index]
        new_entries = entries[:pos] + (v,) + entries[pos:]
        new_lists = (self.lists[:list_index] + (new_entries,)
                     + self.lists[list_index + 1:])
        return CheckpointInstance(self.base, new_lists, self.intervals)


def from_packing(inst: PackingInstance) -> CheckpointInstance:
    """Wrap a plain instance: k bare lists (s, t), empty interval store."""
    bare = (inst.s, inst.t)
    return CheckpointInstance(inst, tuple(bare for _ in range(inst.k)))


def is_list_trivially_too_long(entries: Sequence[int], ell: int) -> bool:
    """A list with more than ell + 1 entries cannot be satisfied by a path
    of length at most ell."""
    return len(entries) > ell + 1


@dataclass(frozen=True)
class Solution:
    """A witness: k vertex sequences, validatable independently of how they
    were found."""

    paths: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: Optional[str] = None
    path_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _bad(reason: str, i: Optional[int] = None) -> ValidationReport:
    return ValidationReport(False, reason, i)


def validate_solution(inst: CheckpointInstance, sol: Solution) -> ValidationReport:
    """Check a claimed witness against the instance definition only.

    Edge existence is checked against the original graph; no solver state
    (masks, intervals, statistics) is consulted.  Never raises on
    well-formed inputs; returns the first violation found.
    """
    g = inst.base.graph
    s, t, k, ell = inst.base.s, inst.base.t, inst.base.k, inst.base.ell
    if len(sol.paths) != k:
        return _bad(f"expected {k} paths, got {len(sol.paths)}")
    for i, path in enumerate(sol.paths):
        if len(path) < 2:
            return _bad("path has fewer than two vertices", i)
        if path[0] != s or path[-1] != t:
            return _bad("path endpoints are not (s, t)", i)
        if len(set(path)) != len(path):
            return _bad("path revisits a vertex", i)
        for v in path:
            if not (0 <= v < g.n):
                return _bad(f"vertex {v} out of range", i)
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                return _bad(f"({a},{b}) is not an edge", i)
        if len(path) - 1 > ell:
            return _bad(f"length {len(path) - 1} exceeds bound {ell}", i)
        # the path must visit its list's entries in order, interior
        # checkpoints at interior positions
        pos = {v: j for j, v in enumerate(path)}
        prev = -1
        for entry in inst.lists[i]:
            at = pos.get(entry)
            if at is None:
                return _bad(f"checkpoint {entry} missing from path", i)
            if at <= prev:
                return _bad(f"checkpoint {entry} out of order", i)
            prev = at
        for entry in inst.lists[i][1:-1]:
            if pos[entry] in (0, len(path) - 1):
                return _bad(f"checkpoint {entry} at terminal position", i)
    for i in range(k):
        for j in range(i + 1, k):
            if sol.paths[i] == sol.paths[j]:
                return _bad(f"paths {i} and {j} are identical", j)
            shared = (set(sol.paths[i]) & set(sol.paths[j])) - {s, t}
            if shared:
                v = min(shared)
                return _bad(f"paths {i} and {j} share internal vertex {v}", j)
    return ValidationReport(True)
