"""Margin arithmetic checked against a direct neighbor-scan oracle."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import planepart as pp
from planepart.verify import is_internal, is_strict, margins

from oracles import get_graph, get_plane, naive_intimacy, naive_margins, random_partition


@pytest.mark.parametrize("q", [3, 4])
def test_margins_match_oracle_random(q):
    g = get_graph(q)
    rng = random.Random(1000 + q)
    for _ in range(100):
        side = random_partition(rng, g.n)
        rep = margins(g, side)
        assert rep.margin.tolist() == naive_margins(g, side)
        assert rep.partition_intimacy == naive_intimacy(g, side)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_own_degree_edge_identity(q):
    # sum_v d_own(v) = 2*(|E| - e(A,B)): own-side edges counted twice
    g = get_graph(q)
    rng = random.Random(77 * q)
    for _ in range(20):
        side = random_partition(rng, g.n)
        rep = margins(g, side)
        d_own = (rep.margin + g.degrees) // 2
        crossing = 0
        for v in range(g.n):
            crossing += sum(1 for u in g.neighbors(v) if side[u] != side[v])
        crossing //= 2
        assert int(d_own.sum()) == 2 * (g.edge_count - crossing)


def test_baer_partition_intimacy_q9():
    q = 9
    part = pp.construct_baer_partition(get_plane(q))
    rep = margins(get_graph(q), part)
    assert rep.partition_intimacy == 1
    assert rep.class_sizes[0] + rep.class_sizes[1] == get_graph(q).n


@pytest.mark.parametrize("q", [3, 4, 5])
def test_single_vertex_class_margin(q):
    g = get_graph(q)
    side = np.zeros(g.n, dtype=np.uint8)
    side[0] = 1
    rep = margins(g, side)
    assert rep.min_margin_b == -(q + 1)
    # floor toward minus infinity: -4 // 2 == -2, -5 // 2 == -3
    assert rep.partition_intimacy == (-(q + 1)) // 2


def test_intimacy_floor_is_toward_minus_infinity():
    g = get_graph(4)  # 5-regular, odd degree gives odd margins
    side = np.zeros(g.n, dtype=np.uint8)
    side[0] = 1
    rep = margins(g, side)
    assert rep.min_margin_b == -5
    assert rep.partition_intimacy == -3


def test_is_internal_examples():
    g3 = get_graph(3)
    assert is_internal(g3, pp.construct_combinatorial(get_plane(3)))
    lonely = np.zeros(g3.n, dtype=np.uint8)
    lonely[0] = 1
    assert not is_internal(g3, lonely)
    g5 = get_graph(5)
    assert is_internal(g5, pp.construct_oval(get_plane(5), variant="interior_skew"))


def test_is_strict_examples():
    assert is_strict(get_graph(8), pp.construct_even(get_plane(8)))
    # odd-degree vertices can tie at margin 0, which strictness rejects
    assert not is_strict(get_graph(3), pp.construct_combinatorial(get_plane(3)))
    g = get_graph(3)
    side = np.ones(g.n, dtype=np.uint8)
    side[0] = 0
    assert not is_strict(g, side)


def test_margins_rejects_empty_class():
    g = get_graph(2)
    with pytest.raises(ValueError):
        margins(g, np.zeros(g.n, dtype=np.uint8))
    with pytest.raises(ValueError):
        margins(g, np.ones(g.n, dtype=np.uint8))


def test_margins_rejects_bad_side_values():
    g = get_graph(2)
    side = np.zeros(g.n, dtype=np.int64)
    side[0] = 2
    with pytest.raises(ValueError):
        margins(g, side)
    with pytest.raises(ValueError):
        margins(g, np.zeros(g.n - 1, dtype=np.uint8))


def test_report_json_schema():
    g = get_graph(2)
    pl = get_plane(2)
    side = np.zeros(g.n, dtype=np.uint8)
    side[g.n - 1] = 1
    rep = margins(g, side)
    labels = pl.labels
    doc = rep.to_json(labels)
    assert set(doc) == {"margins", "summary"}
    assert len(doc["margins"]) == g.n
    assert all(lbl in doc["margins"] for lbl in labels)
    s = doc["summary"]
    assert s["class_sizes"] == {"A": g.n - 1, "B": 1}
    assert s["min_margin_B"] == -3
    assert s["partition_intimacy"] == -2
    assert all(isinstance(v, int) for v in doc["margins"].values())


def test_report_json_default_labels():
    g = get_graph(2)
    side = np.zeros(g.n, dtype=np.uint8)
    side[3] = 1
    doc = margins(g, side).to_json()
    assert "v0" in doc["margins"]
    assert f"v{g.n - 1}" in doc["margins"]


@settings(max_examples=60)
@given(st.lists(st.integers(0, 1), min_size=14, max_size=14))
def test_margins_property_fano(bits):
    side = np.array(bits, dtype=np.uint8)
    g = get_graph(2)
    if side.sum() in (0, g.n):
        side[0] ^= 1
    rep = margins(g, side)
    assert rep.margin.tolist() == naive_margins(g, side)
    assert rep.partition_intimacy == naive_intimacy(g, side)
    assert is_internal(g, side) == (rep.partition_intimacy >= 0)
