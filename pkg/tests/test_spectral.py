"""Incidence spectrum, Gram identity, mixing window, intimacy cap."""

import math
import random

import numpy as np
import pytest

import planepart as pp
from planepart.spectral import (
    check_mixing,
    edges_between,
    incidence_matrix,
    intimacy_upper_bound,
    mixing_bound,
    singular_spectrum,
)

from oracles import get_plane

ALL_SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", ALL_SMALL_ORDERS)
def test_gram_identity_exact(q):
    # M M^T = qI + J holds entrywise over the integers
    rep = singular_spectrum(get_plane(q))
    assert rep.max_residual == 0


@pytest.mark.parametrize(
    "q,top,second,mult",
    [
        (2, 3.0, math.sqrt(2), 6),
        (3, 4.0, math.sqrt(3), 12),
        (4, 5.0, 2.0, 20),
    ],
)
def test_singular_values_small(q, top, second, mult):
    rep = singular_spectrum(get_plane(q))
    assert len(rep.singular_values) == 2
    (v1, m1), (v2, m2) = rep.singular_values
    assert m1 == 1 and abs(v1 - top) < 1e-9
    assert m2 == mult and abs(v2 - second) < 1e-9
    assert abs(rep.lambda2 - second) < 1e-9


@pytest.mark.parametrize("q", ALL_SMALL_ORDERS)
def test_spectrum_shape_general(q):
    n = q * q + q + 1
    rep = singular_spectrum(get_plane(q))
    (v1, m1), (v2, m2) = rep.singular_values
    assert (m1, m2) == (1, n - 1)
    assert abs(v1 - (q + 1)) < 1e-9
    assert abs(v2 - math.sqrt(q)) < 1e-9


def test_spectrum_rejects_large_order():
    with pytest.raises(ValueError):
        singular_spectrum(get_plane(17))


def test_spectrum_json_round_numbers():
    doc = singular_spectrum(get_plane(2)).to_json()
    assert doc["max_residual"] == 0
    top, mult = doc["singular_values"][0]
    assert mult == 1 and abs(top - 3.0) < 1e-9
    assert abs(doc["lambda2"] - math.sqrt(2)) < 1e-9


def test_incidence_matrix_row_sums():
    m = incidence_matrix(get_plane(4))
    assert m.shape == (21, 21)
    assert (m.sum(axis=0) == 5).all()
    assert (m.sum(axis=1) == 5).all()


def test_mixing_bound_degenerate_cases():
    b = mixing_bound(31, 6, math.sqrt(5), 0, 12)
    assert b.lower == b.upper == 0.0
    # full-by-full: window collapses onto the exact total d*n
    b = mixing_bound(31, 6, math.sqrt(5), 31, 31)
    assert b.deviation_cap == 0.0
    assert b.lower == b.upper == 6 * 31


def test_mixing_bound_q5_example():
    b = mixing_bound(31, 6, math.sqrt(5), 10, 10)
    assert abs(b.expected - 600 / 31) < 1e-9
    assert abs(b.deviation_cap - math.sqrt(5) * 10 * 21 / 31) < 1e-9


def test_mixing_bound_rejects_out_of_range():
    with pytest.raises(ValueError):
        mixing_bound(31, 6, math.sqrt(5), -1, 3)
    with pytest.raises(ValueError):
        mixing_bound(31, 6, math.sqrt(5), 3, 32)


def test_edges_between_pencil():
    pl = get_plane(5)
    n = pl.n
    p = 0
    its_lines = [n + ln for ln in pl.lines_through[p]]
    assert edges_between(pl, [p], its_lines) == pl.q + 1
    missing = [n + j for j in range(n) if j not in set(pl.lines_through[p])][: pl.q + 1]
    assert edges_between(pl, [p], missing) == 0


def test_edges_between_validates_vertex_ranges():
    pl = get_plane(3)
    with pytest.raises(ValueError):
        edges_between(pl, [pl.n], [pl.n + 1])  # a line id in the point slot
    with pytest.raises(ValueError):
        edges_between(pl, [0], [1])  # a point id in the line slot


def test_edges_between_totals():
    pl = get_plane(4)
    n = pl.n
    total = edges_between(pl, range(n), range(n, 2 * n))
    assert total == n * (pl.q + 1)


@pytest.mark.parametrize("q", [3, 5])
def test_check_mixing_random_pairs(q):
    pl = get_plane(q)
    n = pl.n
    rng = random.Random(9000 + q)
    for _ in range(200):
        s = rng.randint(1, n)
        t = rng.randint(1, n)
        pts = rng.sample(range(n), s)
        lns = [n + j for j in rng.sample(range(n), t)]
        assert check_mixing(pl, pts, lns)


def test_check_mixing_pencil_cases():
    pl = get_plane(5)
    n = pl.n
    p = 3
    its = [n + ln for ln in pl.lines_through[p]]
    assert check_mixing(pl, [p], its)
    rest = [n + j for j in range(n) if j not in set(pl.lines_through[p])]
    assert check_mixing(pl, [p], rest[:6])


@pytest.mark.parametrize(
    "q,bound", [(2, 0), (3, 0), (4, 0), (5, 1), (9, 1), (16, 1), (25, 2), (27, 2), (49, 3)]
)
def test_intimacy_upper_bound_values(q, bound):
    assert intimacy_upper_bound(q) == bound
    # defining property: largest t with 4 t^2 < q
    t = intimacy_upper_bound(q)
    assert 4 * t * t < q
    assert 4 * (t + 1) * (t + 1) >= q


def test_intimacy_upper_bound_rejects_non_prime_power():
    with pytest.raises(ValueError):
        intimacy_upper_bound(6)
    with pytest.raises(ValueError):
        intimacy_upper_bound(1)


def test_baer_edge_audit_q9():
    # point class vs line class of the Baer split: e(A_P, A_L) hits the
    # count forced by induced regularity and stays inside the mixing window
    q = 9
    pl = get_plane(q)
    part = pp.construct_baer_partition(pl)
    a = part.class_a()
    n = pl.n
    a_pts = [v for v in a if v < n]
    a_lns = [v for v in a if v >= n]
    e = edges_between(pl, a_pts, a_lns)
    assert e == 234
    assert e == len(a_pts) * 6
    inti = pp.margins(pp.incidence_graph(pl), part).partition_intimacy
    assert e >= len(a_pts) * ((q + 1) // 2 + inti)
    b = mixing_bound(n, q + 1, math.sqrt(q), len(a_pts), len(a_lns))
    assert e <= b.upper + 1e-9
