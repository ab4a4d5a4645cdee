"""Branch and bound vs unpruned ground truth, plus annealing behavior."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import planepart as pp
from planepart.graphs import Graph
from planepart.search import (
    AnnealParams,
    SearchResult,
    anneal_search,
    brute_force_exists,
    exhaustive_exists,
    exhaustive_max_intimacy,
)
from planepart.verify import margins

from oracles import get_graph, get_plane, random_bipartite


def complete_graph(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def test_pg2_3_no_1_internal():
    res = exhaustive_exists(get_graph(3), 1)
    assert res.status == "exhausted_none"
    assert res.witness is None
    assert res.nodes_explored > 0


def test_pg2_3_0_internal_found():
    g = get_graph(3)
    res = exhaustive_exists(g, 0)
    assert res.status == "found"
    rep = margins(g, res.witness)
    assert rep.partition_intimacy >= 0


@pytest.mark.parametrize("q,expect", [(2, 0), (3, 0)])
def test_max_intimacy_small_planes(q, expect):
    t, res = exhaustive_max_intimacy(get_graph(q))
    assert t == expect
    assert res.status == "found"
    assert margins(get_graph(q), res.witness).partition_intimacy >= expect


def test_k4_max_intimacy():
    # any split of K4 strands someone: 3-regular, best margin is -1
    t, res = exhaustive_max_intimacy(complete_graph(4))
    assert t == -1
    assert res.status == "found"


def test_k33_no_0_internal():
    k33 = Graph.from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)], n_left=3)
    res = exhaustive_exists(k33, 0)
    assert res.status == "exhausted_none"
    assert brute_force_exists(k33, 0) is False


def test_workers_agree_with_single():
    g = get_graph(3)
    for t in (0, 1):
        solo = exhaustive_exists(g, t)
        pooled = exhaustive_exists(g, t, workers=2)
        assert solo.status == pooled.status
        if pooled.status == "found":
            assert margins(g, pooled.witness).partition_intimacy >= t


def test_node_budget_times_out():
    res = exhaustive_exists(get_graph(4), 0, max_nodes=1)
    assert res.status == "timeout"
    assert res.witness is None


def test_infeasible_t_short_circuits():
    g = get_graph(2)  # 3-regular: margin caps at 3, so t=2 needs d_own > d
    res = exhaustive_exists(g, 2)
    assert res.status == "exhausted_none"
    assert res.nodes_explored == 0


def test_brute_force_rejects_large_graph():
    with pytest.raises(ValueError):
        brute_force_exists(get_graph(3), 0)


@pytest.mark.parametrize("t,expect", [(0, True), (1, False)])
def test_bruteforce_fano(t, expect):
    assert brute_force_exists(get_graph(2), t) is expect


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_exhaustive_matches_bruteforce(data):
    nl = data.draw(st.integers(2, 6))
    nr = data.draw(st.integers(2, 6))
    seed = data.draw(st.integers(0, 10**6))
    t = data.draw(st.sampled_from([-1, 0, 1]))
    g = random_bipartite(random.Random(seed), nl, nr, p=0.5)
    truth = brute_force_exists(g, t)
    res = exhaustive_exists(g, t)
    assert (res.status == "found") is truth
    if truth:
        assert margins(g, res.witness).partition_intimacy >= t


def test_regular_graphs_admit_near_internal():
    # every regular graph here splits with margin >= -2 everywhere
    for g in (get_graph(2), get_graph(3), complete_graph(4), complete_graph(5)):
        t, res = exhaustive_max_intimacy(g)
        assert t >= -1


def test_search_result_json_schema():
    g = get_graph(2)
    doc = exhaustive_exists(g, 0).to_json()
    assert set(doc) == {"status", "nodes_explored", "wall_time", "details", "witness"}
    assert doc["status"] == "found"
    assert isinstance(doc["nodes_explored"], int)
    assert doc["witness"]["assignment"]
    empty = exhaustive_exists(g, 2).to_json()
    assert empty["witness"] is None


def test_anneal_from_baer_seed():
    q = 9
    g = get_graph(q)
    init = pp.construct_baer_partition(get_plane(q))
    res = anneal_search(g, 1, AnnealParams(seed=0, restarts=1, sweeps=5), init=init)
    assert res.status == "found"
    assert res.details["sweep"] == 0
    assert margins(g, res.witness).partition_intimacy >= 1


def test_anneal_cold_start_pg2_4():
    g = get_graph(4)
    res = anneal_search(g, 0, AnnealParams(seed=2, restarts=3, sweeps=300))
    assert res.status == "found"
    assert margins(g, res.witness).partition_intimacy >= 0


def test_anneal_never_fakes_a_witness():
    # no 1-internal partition of this graph exists; anneal may only time out
    g = get_graph(3)
    for seed in range(5):
        res = anneal_search(g, 1, AnnealParams(seed=seed, restarts=2, sweeps=60))
        assert res.status == "timeout"
        assert res.witness is None
        assert res.details["best_objective"] > 0


def test_anneal_deterministic():
    g = get_graph(4)
    p = AnnealParams(seed=7, restarts=2, sweeps=120)
    r1 = anneal_search(g, 0, p)
    r2 = anneal_search(g, 0, p)
    assert r1.status == r2.status
    assert r1.nodes_explored == r2.nodes_explored
    assert r1.details == r2.details
    if r1.witness is not None:
        assert r1.witness.side.tolist() == r2.witness.side.tolist()


def test_anneal_seed_changes_trajectory():
    g = get_graph(4)
    r1 = anneal_search(g, 0, AnnealParams(seed=1, restarts=1, sweeps=50))
    r2 = anneal_search(g, 0, AnnealParams(seed=2, restarts=1, sweeps=50))
    different = (
        r1.nodes_explored != r2.nodes_explored
        or r1.details != r2.details
        or (
            r1.witness is not None
            and r2.witness is not None
            and r1.witness.side.tolist() != r2.witness.side.tolist()
        )
    )
    assert different


def test_anneal_rejects_mismatched_init():
    g = get_graph(2)
    init = pp.construct_baer_partition(get_plane(4))
    with pytest.raises(ValueError):
        anneal_search(g, 0, AnnealParams(restarts=1, sweeps=1), init=init)


def test_witness_provenance_labels():
    g = get_graph(3)
    res = exhaustive_exists(g, 0)
    assert res.witness.provenance["construction"] == "exhaustive"
    assert res.witness.provenance["parameters"]["t"] == 0
    res2 = anneal_search(g, 0, AnnealParams(seed=3, restarts=2, sweeps=200))
    if res2.witness is not None:
        assert res2.witness.provenance["construction"] == "anneal"
        assert res2.witness.provenance["parameters"]["seed"] == 3
