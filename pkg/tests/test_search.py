import itertools
import random

import pytest

from pathpack import (CheckpointInstance, Graph, PackingInstance,
                      SolverConfig, config_from_name, from_packing,
                      random_gnp, validate_solution)
from pathpack.greedy import FailureCondition, GreedyFailure, run_greedy
from pathpack.oracle import oracle_decide
from pathpack.search import (branch_cut, branch_no_subpath, branch_overlong,
                             node_infeasible, solve)

from conftest import vid, vids

PLAIN = SolverConfig(trivial_detection=False, d_ms=False,
                     b_fi=False, c_dist=False, c_pl=False)


def _dist_fn(g):
    from pathpack import Workspace
    return Workspace(g).distances_unmasked


# ---------------------------------------------------------------------------
# node infeasibility tests
# ---------------------------------------------------------------------------

def test_infeasible_overfull_list(gex):
    base = PackingInstance(gex, vid(1), vid(5), 1, 5)
    entries = vids(1, 2, 9, 10, 11, 3, 5)  # 7 entries > ell + 1
    ci = CheckpointInstance(base, (entries,))
    assert node_infeasible(ci, SolverConfig()) == "len"


def test_infeasible_consecutive_adjacency_bound(gex):
    base = PackingInstance(gex, vid(1), vid(5), 1, 5)
    ci = CheckpointInstance(base, (vids(1, 7, 10, 5),))
    cfg = SolverConfig(b_cpl=True, b_sp=False)
    assert node_infeasible(ci, cfg, _dist_fn(gex)) == "bcpl"
    # without the toggle no verdict
    assert node_infeasible(ci, SolverConfig(b_cpl=False, b_sp=False)) is None


def test_infeasible_gap_distance_bound(gex):
    base = PackingInstance(gex, vid(1), vid(5), 1, 5)
    ci = CheckpointInstance(base, (vids(1, 10, 8, 5),))
    dist = _dist_fn(gex)
    # gap distances on the fixture: 3 + 4 + 2 = 9 > 5
    assert dist(vid(1))[vid(10)] == 3
    assert dist(vid(10))[vid(8)] == 4
    assert dist(vid(8))[vid(5)] == 2
    assert node_infeasible(ci, SolverConfig(b_cpl=False, b_sp=True),
                           dist) == "bsp"


def test_infeasible_check_order(gex):
    # an overfull list wins over bcpl/bsp regardless of toggles
    base = PackingInstance(gex, vid(1), vid(5), 1, 2)
    ci = CheckpointInstance(base, (vids(1, 7, 10, 5),))
    assert node_infeasible(ci, SolverConfig(b_cpl=True, b_sp=True),
                           _dist_fn(gex)) == "len"


# ---------------------------------------------------------------------------
# branching rules
# ---------------------------------------------------------------------------

def test_branch_after_missing_subpath_fixture(gex):
    ci = from_packing(PackingInstance(gex, vid(1), vid(5), 2, 5))
    fail = run_greedy(ci, PLAIN)
    cands = branch_no_subpath(fail, ci, PLAIN)
    assert [c.vertex for c in cands] == list(vids(2, 3, 4))
    assert all(c.list_index == 1 and c.pos == 1 for c in cands)
    assert all((c.u, c.u2) == (vid(1), vid(5)) for c in cands)
    # c-dist ties on this instance: order unchanged
    cfg = SolverConfig(trivial_detection=False, d_ms=False, c_dist=True)
    cands2 = branch_no_subpath(fail, ci, cfg, _dist_fn(gex))
    assert [c.vertex for c in cands2] == list(vids(2, 3, 4))


def test_branch_empty_pool_refutes():
    g = Graph(3, [(0, 1), (1, 2)])
    ci = from_packing(PackingInstance(g, 0, 2, 2, 5))
    fail = run_greedy(ci, PLAIN)
    assert fail.condition is FailureCondition.NO_SUBPATH
    child = ci.with_insertion(1, 1, 1)  # list (s, a, t)
    inner = run_greedy(child, PLAIN)
    assert inner.condition is FailureCondition.NO_SUBPATH
    assert inner.i_beta == 1
    assert branch_no_subpath(inner, child, PLAIN) == []


def test_branch_overlong_empty_pool_at_first_subpath():
    # first and only subpath already too long: nothing to branch over
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    ci = from_packing(PackingInstance(g, 0, 3, 1, 2))
    fail = run_greedy(ci, PLAIN)
    assert fail.condition is FailureCondition.OVERLONG
    assert (fail.i_beta, fail.j_beta) == (1, 1)
    assert branch_overlong(fail, ci, PLAIN) == []
    assert solve(PackingInstance(g, 0, 3, 1, 2), PLAIN)[0] == "no"


def test_branch_cut_empty_pool_before_first_path():
    # separator check fires before any path exists: immediate refutation
    g = Graph(3, [(0, 1), (1, 2)])
    cfg = SolverConfig(trivial_detection=False, b_sp=False, b_fi=False,
                       c_dist=False, c_pl=False)
    decision, _, stats = solve(PackingInstance(g, 0, 2, 2, 5), cfg)
    assert decision == "no"
    assert stats.nodes == 1 and stats.br3 == 1 and stats.dms_fired == 1


@pytest.fixture()
def overlong_state():
    # s,m,v1,x,y,v2,t = 0..6
    g = Graph(7, [(0, 1), (1, 2), (1, 5), (2, 3), (3, 4), (4, 5), (5, 6)])
    ci = CheckpointInstance(PackingInstance(g, 0, 6, 1, 5), ((0, 2, 5, 6),))
    fail = run_greedy(ci, PLAIN)
    assert fail.condition is FailureCondition.OVERLONG
    return g, ci, fail


def test_branch_overlong_pools_per_position(overlong_state):
    g, ci, fail = overlong_state
    cands = branch_overlong(fail, ci, PLAIN)
    by_pos = {}
    for c in cands:
        by_pos.setdefault(c.pos, []).append(c.vertex)
    # m=1, x=3, y=4; own subpath excluded from each pool
    assert by_pos == {1: [3, 4], 2: [1], 3: [1, 3, 4]}
    # ascending position order without c-pl
    assert [c.pos for c in cands] == [1, 1, 2, 3, 3, 3]


def test_branch_overlong_position_order_by_length(overlong_state):
    g, ci, fail = overlong_state
    cfg = SolverConfig(trivial_detection=False, d_ms=False, c_pl=True)
    cands = branch_overlong(fail, ci, cfg)
    # greedy subpath lengths: pos1 -> 2, pos2 -> 3, pos3 (rejected) -> 1
    assert [c.pos for c in cands] == [2, 1, 1, 3, 3, 3]


def test_branch_overlong_cdist_orders_within_position(overlong_state):
    g, ci, fail = overlong_state
    cfg = SolverConfig(trivial_detection=False, d_ms=False, c_dist=True)
    cands = [c for c in branch_overlong(fail, ci, cfg, _dist_fn(g))
             if c.pos == 3]
    # gap (v2=5, t=6): distance sums m: 1+2, x: 2+3, y: 1+2 -> m, y, x
    assert [c.vertex for c in cands] == [1, 4, 3]


def test_branch_after_cut_failure_counts(gex):
    ci = from_packing(PackingInstance(gex, vid(1), vid(5), 3, 9))
    fail = run_greedy(ci, SolverConfig())
    assert fail.condition is FailureCondition.CUT_TOO_SMALL
    cands = branch_cut(fail, ci, SolverConfig())
    # pool {v2,v3,v4} x pending lists {2,3} x one gap each
    assert len(cands) == 6
    assert {(c.list_index, c.pos) for c in cands} == {(1, 1), (2, 1)}
    assert [c.vertex for c in cands[:3]] == list(vids(2, 3, 4))


def test_branch_candidates_never_listed_vertices(gex):
    ci = from_packing(PackingInstance(gex, vid(1), vid(5), 2, 5))
    child = ci.with_insertion(1, 1, vid(3))
    fail = run_greedy(child, PLAIN)
    if isinstance(fail, GreedyFailure) \
            and fail.condition is FailureCondition.NO_SUBPATH:
        cands = branch_no_subpath(fail, child, PLAIN)
        listed = child.checkpoint_union()
        assert all(c.vertex not in listed for c in cands)


# ---------------------------------------------------------------------------
# solve end to end
# ---------------------------------------------------------------------------

def test_solve_fixture_replay(gex):
    inst = PackingInstance(gex, vid(1), vid(5), 2, 5)
    cfg = SolverConfig(trivial_detection=False, d_ms=False)
    decision, witness, stats = solve(inst, cfg)
    assert decision == "yes"
    assert stats.br1 >= 1 and stats.solved_by == "search"
    got = {p for p in witness.paths}
    assert got == {vids(1, 6, 7, 8, 4, 5), vids(1, 2, 9, 10, 11, 5)}


def test_solve_fixture_trivial_root(gex):
    inst = PackingInstance(gex, vid(1), vid(5), 2, 5)
    decision, witness, stats = solve(inst, SolverConfig())
    assert decision == "yes" and stats.solved_by == "trivial-yes"
    assert stats.nodes == 0
    assert validate_solution(from_packing(inst), witness)


def test_solve_path_graph_no_both_ways():
    g = Graph(3, [(0, 1), (1, 2)])
    inst = PackingInstance(g, 0, 2, 2, 5)
    d1, _, st1 = solve(inst, SolverConfig())
    assert (d1, st1.solved_by) == ("no", "trivial-no")
    bare = config_from_name("bare", SolverConfig(trivial_detection=False,
                                                 preprocess=False))
    d2, _, st2 = solve(inst, bare)
    assert d2 == "no" and st2.nodes == 2


def test_solve_usage_errors(gex):
    with pytest.raises(ValueError):
        solve(PackingInstance(gex, 0, 0, 2, 5))


def test_solved_by_greedy_tag(gex):
    # k = 1 with detection off: the root greedy run itself is the witness
    inst = PackingInstance(gex, vid(1), vid(5), 1, 5)
    decision, _, stats = solve(inst, SolverConfig(trivial_detection=False))
    assert decision == "yes"
    assert stats.solved_by == "greedy" and stats.nodes == 1


def test_interval_scope_unwinds_to_empty(gex):
    from pathpack.config import SolveStats
    from pathpack.search import _TreeSearch
    ci = from_packing(PackingInstance(gex, vid(1), vid(5), 2, 4))
    cfg = config_from_name("b-sp+b-fi", SolverConfig(trivial_detection=False))
    search = _TreeSearch(ci, cfg, SolveStats(), None)
    assert search.run() is None
    assert len(ci.intervals) == 0


def test_solve_matches_oracle_on_seeded_grid():
    g = random_gnp(14, 0.3, 7)
    for k, ell in itertools.product((2, 3), (5, 6)):
        inst = PackingInstance(g, 0, 13, k, ell)
        want = oracle_decide(inst).decision
        for name in ("bare", "b-sp", "all"):
            for triv in (True, False):
                cfg = config_from_name(
                    name, SolverConfig(trivial_detection=triv))
                got, wit, _ = solve(inst, cfg)
                assert got == want
                if wit is not None:
                    assert validate_solution(from_packing(inst), wit)


def test_solve_deterministic(gex):
    inst = PackingInstance(gex, vid(1), vid(5), 2, 5)
    cfg = SolverConfig(trivial_detection=False)
    runs = [solve(inst, cfg) for _ in range(3)]
    for d, w, st in runs[1:]:
        assert d == runs[0][0]
        assert w == runs[0][1]
        a, b = st.as_dict(), runs[0][2].as_dict()
        a.pop("wall_ms"), b.pop("wall_ms")
        assert a == b


def test_solve_timeout_reports():
    g = random_gnp(18, 0.35, 51494)
    inst = PackingInstance(g, 16, 0, 3, 7)
    cfg = config_from_name("bare", SolverConfig(trivial_detection=False,
                                                timeout_ms=30))
    decision, witness, stats = solve(inst, cfg)
    assert decision == "timeout" and witness is None
    assert stats.solved_by == "timeout"


def test_depth_and_branch_bounds_hold():
    # asserts inside the solver enforce the bounds; exercise a spread
    rng = random.Random(11)
    for trial in range(25):
        n = rng.randrange(6, 15)
        g = random_gnp(n, rng.choice([0.2, 0.35]), trial + 40)
        s, t = rng.sample(range(n), 2)
        k, ell = rng.choice([1, 2, 3]), rng.choice([4, 5, 6])
        for name in ("bare", "all"):
            cfg = config_from_name(name, SolverConfig(trivial_detection=False))
            _, _, st = solve(PackingInstance(g, s, t, k, ell), cfg)
            assert st.max_depth <= k * ell


# ---------------------------------------------------------------------------
# forbidden intervals
# ---------------------------------------------------------------------------

def test_intervals_recorded_and_skipped():
    # enabling the rule must never grow the tree, and it fires somewhere
    rng = random.Random(23)
    fired = 0
    for trial in range(30):
        n = rng.randrange(8, 16)
        g = random_gnp(n, rng.choice([0.2, 0.3]), trial + 90)
        s, t = rng.sample(range(n), 2)
        inst = PackingInstance(g, s, t, rng.choice([2, 3]), rng.choice([5, 6]))
        off = config_from_name("b-sp", SolverConfig(trivial_detection=False))
        on = config_from_name("b-sp+b-fi", SolverConfig(trivial_detection=False))
        d0, _, st0 = solve(inst, off)
        d1, _, st1 = solve(inst, on)
        assert d0 == d1
        assert st1.nodes <= st0.nodes
        assert st1.bfi_masked <= st1.bfi_recorded * st1.nodes
        if st1.bfi_masked > 0:
            fired += 1
            assert st1.nodes < st0.nodes or st1.bfi_recorded > 0
    assert fired > 0


def test_interval_store_empty_after_solve(gex):
    inst = PackingInstance(gex, vid(1), vid(5), 2, 4)
    cfg = config_from_name("b-sp+b-fi", SolverConfig(trivial_detection=False))
    decision, _, stats = solve(inst, cfg)
    assert decision == "no"


# ---------------------------------------------------------------------------
# ordering neutrality on refuted instances
# ---------------------------------------------------------------------------

def test_candidate_order_neutral_on_no_instances():
    rng = random.Random(31)
    checked = 0
    for trial in range(40):
        n = rng.randrange(8, 16)
        g = random_gnp(n, rng.choice([0.2, 0.3]), trial + 400)
        s, t = rng.sample(range(n), 2)
        inst = PackingInstance(g, s, t, rng.choice([2, 3]), rng.choice([5, 6]))
        plain = config_from_name("b-sp", SolverConfig(trivial_detection=False))
        d0, _, st0 = solve(inst, plain)
        if d0 != "no":
            continue
        ordered = config_from_name("b-sp+c", SolverConfig(trivial_detection=False))
        d1, _, st1 = solve(inst, ordered)
        assert d1 == "no"
        assert st1.nodes == st0.nodes
        checked += 1
    assert checked >= 5
