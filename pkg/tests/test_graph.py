import random

import pytest

from pathpack import (Graph, GraphFormatError, VertexMask, distances_from,
                      format_graph, neighborhood, parse_graph, random_gnp,
                      shortest_path)
from pathpack.oracle import enumerate_bounded_paths

from conftest import vid, vids


# ---------------------------------------------------------------------------
# construction invariants
# ---------------------------------------------------------------------------

def test_adjacency_is_symmetric_sorted_and_deduplicated(gex):
    for u in range(gex.n):
        row = list(gex.neighbors(u))
        assert row == sorted(row)
        assert len(row) == len(set(row))
        for v in row:
            assert u in gex.neighbors(v)
            assert u != v
    assert sum(gex.degree(v) for v in range(gex.n)) == 2 * gex.m


def test_rejects_self_loops_duplicates_and_range():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


# ---------------------------------------------------------------------------
# shortest_path
# ---------------------------------------------------------------------------

def test_shortest_path_direct_edge_dominates():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert shortest_path(g, None, 0, 2) == (0, 2)


def test_shortest_path_on_fixture(gex):
    assert shortest_path(gex, None, vid(1), vid(5)) == vids(1, 2, 3, 4, 5)


def test_shortest_path_masked_disconnects(gex):
    mask = VertexMask(vids(2, 3, 4))
    assert shortest_path(gex, mask, vid(1), vid(5)) is None


def test_shortest_path_same_vertex(gex):
    assert shortest_path(gex, None, 3, 3) == (3,)


def test_shortest_path_usage_errors(gex):
    with pytest.raises(ValueError):
        shortest_path(gex, None, 0, 99)
    with pytest.raises(ValueError):
        shortest_path(gex, VertexMask({0}), 0, 4)


def test_shortest_path_deterministic(gex):
    first = shortest_path(gex, None, vid(1), vid(5))
    for _ in range(5):
        assert shortest_path(gex, None, vid(1), vid(5)) == first


# ---------------------------------------------------------------------------
# distances_from / neighborhood
# ---------------------------------------------------------------------------

def test_distances_radius_two_fixture(gex):
    got = distances_from(gex, None, vid(1), radius=2)
    assert got == {vid(1): 0, vid(2): 1, vid(6): 1,
                   vid(3): 2, vid(7): 2, vid(9): 2}


def test_distances_radius_zero(gex):
    assert distances_from(gex, None, vid(4), radius=0) == {vid(4): 0}


def test_distances_path_graph_unbounded():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert distances_from(g, None, 0) == {0: 0, 1: 1, 2: 2, 3: 3}


def test_neighborhood_fixture(gex):
    assert neighborhood(gex, vid(1), 2) == set(vids(1, 2, 6, 3, 7, 9))
    assert neighborhood(gex, vid(5), 2) == set(vids(5, 4, 11, 3, 8, 10))


def test_neighborhood_zero_and_monotone(gex):
    assert neighborhood(gex, vid(3), 0) == {vid(3)}
    for r in range(5):
        assert neighborhood(gex, vid(1), r) <= neighborhood(gex, vid(1), r + 1)


def test_masked_view_excludes_removed_everywhere(gex):
    mask = VertexMask({vid(2)})
    dist = distances_from(gex, mask, vid(1))
    assert vid(2) not in dist
    path = shortest_path(gex, mask, vid(1), vid(5))
    assert vid(2) not in path


# ---------------------------------------------------------------------------
# oracle cross-check on random masked graphs
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(20))
def test_shortest_path_matches_exhaustive_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randrange(4, 13)
    g = random_gnp(n, rng.choice([0.2, 0.4]), seed)
    removed = set(rng.sample(range(n), rng.randrange(0, n - 2)))
    alive = [v for v in range(n) if v not in removed]
    a, b = rng.sample(alive, 2) if len(alive) >= 2 else (alive[0], alive[0])
    sub = Graph(n, [(u, v) for u, v in g.edges()
                    if u not in removed and v not in removed])
    best = None
    if a != b:
        cands = enumerate_bounded_paths(sub, a, b, n)
        best = min((len(p) - 1 for p in cands), default=None)
    got = shortest_path(g, VertexMask(removed), a, b)
    if best is None and a != b:
        assert got is None
    elif a != b:
        assert got is not None and len(got) - 1 == best
        assert not (set(got) & removed)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def test_parse_and_format_round_trip(gex):
    text = format_graph(gex)
    again = parse_graph(text)
    assert again.n == gex.n and again.m == gex.m
    assert list(again.edges()) == list(gex.edges())


def test_parse_accepts_comments_and_blanks():
    g = parse_graph("# hello\n\n3 2\n1 2\n# mid\n2 3\n")
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize("text,line", [
    ("3 2\n1 2\n2 2\n", 3),          # self-loop
    ("3 2\n1 2\n1 2\n", 3),          # duplicate
    ("3 2\n1 2\n2 1\n", 3),          # reversed duplicate
    ("3 2\n1 4\n2 3\n", 2),          # out of range
    ("3 2\n1 2\nx y\n", 3),          # not integers
    ("3 1\n1 2\n2 3\n", 3),          # too many edges
])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert err.value.line_no == line


def test_parse_missing_edges_rejected():
    with pytest.raises(GraphFormatError):
        parse_graph("3 2\n1 2\n")


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def test_random_gnp_extremes_and_determinism():
    assert random_gnp(5, 0.0, 1).m == 0
    assert random_gnp(4, 1.0, 9).m == 6
    a = random_gnp(20, 0.2, 42)
    b = random_gnp(20, 0.2, 42)
    assert list(a.edges()) == list(b.edges())
    assert format_graph(a) == format_graph(b)
