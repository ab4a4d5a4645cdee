"""The desarguesian projective plane PG(2,q) over GF(q).

Points and lines carry homogeneous coordinate triples normalized so the
last nonzero coordinate is 1; the point ``(a:b:c)`` lies on the line
``[x:y:z]`` exactly when ``ax + by + cz = 0``.  Both index sets are sorted
by the normalized triple with the last coordinate most significant,
coordinates compared by their canonical integer encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fields import Field, factor_prime_power, make_field, prime_factors
from .graphs import Graph

# the dense n*n incidence matrix (n = q^2+q+1) stays small through this order
MAX_PLANE_ORDER = 64

_CHUNK = 1024


def canonical_triples(q: int) -> list[tuple[int, int, int]]:
    """Normalized triples in index order: (1:0:0), (x:1:0), then (x:y:1)."""
    out: list[tuple[int, int, int]] = [(1, 0, 0)]
    out.extend((x, 1, 0) for x in range(q))
    out.extend((x, y, 1) for y in range(q) for x in range(q))
    return out


class Plane:
    """PG(2,q) with exact incidence and index lookups."""

    def __init__(self, field: Field):
        q = field.q
        if q > MAX_PLANE_ORDER:
            raise ValueError(
                f"plane order {q} exceeds supported maximum {MAX_PLANE_ORDER}"
            )
        self.field = field
        self.q = q
        self.n = q * q + q + 1
        self.triples = canonical_triples(q)
        self.incidence = self._build_incidence()
        rows = [np.flatnonzero(self.incidence[i]) for i in range(self.n)]
        if any(r.size != q + 1 for r in rows):
            raise RuntimeError("incidence row of wrong size; field tables corrupt")
        # the pairing is symmetric in the two triples, so pencils equal ranges
        self.lines_through = rows
        self.points_on = rows

    def _build_incidence(self) -> np.ndarray:
        f = self.field
        t = np.array(self.triples, dtype=np.int32)
        mul, add = f.mul_table, f.add_table
        inc = np.empty((self.n, self.n), dtype=bool)
        for lo in range(0, self.n, _CHUNK):
            hi = min(lo + _CHUNK, self.n)
            a = t[lo:hi]
            s = mul[a[:, 0][:, None], t[:, 0][None, :]]
            s = add[s, mul[a[:, 1][:, None], t[:, 1][None, :]]]
            s = add[s, mul[a[:, 2][:, None], t[:, 2][None, :]]]
            inc[lo:hi] = s == 0
        return inc

    @cached_property
    def index_of(self) -> dict[tuple[int, int, int], int]:
        return {t: i for i, t in enumerate(self.triples)}

    def normalize(self, triple) -> tuple[int, int, int]:
        """Scale a nonzero triple so its last nonzero coordinate is 1."""
        f = self.field
        for k in (2, 1, 0):
            if triple[k]:
                s = f.inv(triple[k])
                return tuple(f.mul(s, c) for c in triple)  # type: ignore[return-value]
        raise ValueError("zero triple has no projective class")

    def is_incident(self, point: int, line: int) -> bool:
        return bool(self.incidence[point, line])

    def point_label(self, i: int) -> str:
        a, b, c = self.triples[i]
        return f"P({a}:{b}:{c})"

    def line_label(self, j: int) -> str:
        x, y, z = self.triples[j]
        return f"L[{x}:{y}:{z}]"

    @cached_property
    def labels(self) -> list[str]:
        """Graph-order labels: all points, then all lines."""
        pts = [self.point_label(i) for i in range(self.n)]
        lns = [self.line_label(j) for j in range(self.n)]
        return pts + lns

    def to_json(self) -> dict:
        return {
            "order": self.q,
            "field": {
                "p": self.field.p,
                "h": self.field.h,
                "modulus": list(self.field.modulus),
            },
            "points": [self.point_label(i) for i in range(self.n)],
            "lines": [self.line_label(j) for j in range(self.n)],
            "lines_points": [self.points_on[j].tolist() for j in range(self.n)],
        }

    def __repr__(self) -> str:
        return f"Plane(q={self.q}, n={self.n})"


def build_plane(field: Field) -> Plane:
    return Plane(field)


def plane_of_order(q: int) -> Plane:
    """Build PG(2,q) from a prime-power order."""
    p, h = factor_prime_power(q)
    return Plane(make_field(p, h))


def incidence_graph(pl: Plane) -> Graph:
    """Bipartite point/line graph: points are vertices 0..n-1, lines follow."""
    n = pl.n
    nbrs = [pl.lines_through[i] + n for i in range(n)]
    nbrs += [pl.points_on[j] for j in range(n)]
    return Graph.from_neighbor_lists(nbrs, n_left=n, labels=pl.labels)


# -- Singer cycle -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SingerCycle:
    """A cyclic collineation acting regularly on points and on lines."""

    poly: tuple[int, int, int]  # x^3 + c2 x^2 + c1 x + c0 as (c0, c1, c2)
    matrix: tuple[tuple[int, int, int], ...]
    point_perm: np.ndarray
    line_perm: np.ndarray


def _mulmod_cubic(f: Field, a, b, m):
    # a, b: little-endian length-3 digit tuples; m = (c0, c1, c2), monic cubic
    prod = [0] * 5
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = f.add(prod[i + j], f.mul(ai, bj))
    for k in (4, 3):
        c = prod[k]
        if c:
            prod[k] = 0
            for i, mi in enumerate(m):
                prod[k - 3 + i] = f.sub(prod[k - 3 + i], f.mul(c, mi))
    return (prod[0], prod[1], prod[2])


def _pow_x_mod_cubic(f: Field, m, e: int):
    result = (1, 0, 0)
    base = (0, 1, 0)
    while e:
        if e & 1:
            result = _mulmod_cubic(f, result, base, m)
        base = _mulmod_cubic(f, base, base, m)
        e >>= 1
    return result


def _has_root(f: Field, c0: int, c1: int, c2: int) -> bool:
    for x in f.elements():
        v = f.add(f.mul(f.add(f.mul(f.add(x, c2), x), c1), x), c0)
        if v == 0:
            return True
    return False


def least_primitive_cubic(f: Field) -> tuple[int, int, int]:
    """Least monic primitive degree-3 polynomial over GF(q).

    Primitive means the companion matrix has multiplicative order q^3 - 1,
    checked by exponentiation at the cofactors of each prime divisor.
    """
    group = f.q**3 - 1
    primes = prime_factors(group)
    for c2 in f.elements():
        for c1 in f.elements():
            for c0 in f.units():  # c0 = 0 gives a root at 0
                if _has_root(f, c0, c1, c2):
                    continue
                m = (c0, c1, c2)
                if all(
                    _pow_x_mod_cubic(f, m, group // r) != (1, 0, 0) for r in primes
                ):
                    if _pow_x_mod_cubic(f, m, group) != (1, 0, 0):
                        raise RuntimeError("irreducible cubic with wrong order")
                    return m
    raise RuntimeError(f"no primitive cubic over GF({f.q})")


def _mat_vec(f: Field, m, v):
    return tuple(
        f.add(f.add(f.mul(m[i][0], v[0]), f.mul(m[i][1], v[1])), f.mul(m[i][2], v[2]))
        for i in range(3)
    )


def _mat_inv(f: Field, m):
    def det2(a, b, c, d):
        return f.sub(f.mul(a, d), f.mul(b, c))

    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = det2(m[r[0]][c[0]], m[r[0]][c[1]], m[r[1]][c[0]], m[r[1]][c[1]])
            cof[i][j] = minor if (i + j) % 2 == 0 else f.neg(minor)
    det = f.add(
        f.add(f.mul(m[0][0], cof[0][0]), f.mul(m[0][1], cof[0][1])),
        f.mul(m[0][2], cof[0][2]),
    )
    dinv = f.inv(det)
    # inverse = adjugate / det; adjugate = transpose of cofactors
    return tuple(
        tuple(f.mul(dinv, cof[j][i]) for j in range(3)) for i in range(3)
    )


def _perm_from_action(pl: Plane, act) -> np.ndarray:
    perm = np.empty(pl.n, dtype=np.int64)
    for i, t in enumerate(pl.triples):
        perm[i] = pl.index_of[pl.normalize(act(t))]
    return perm


def _require_single_cycle(perm: np.ndarray, what: str):
    n = len(perm)
    seen = 0
    v = 0
    for _ in range(n):
        v = perm[v]
        seen += 1
        if v == 0:
            break
    if v != 0 or seen != n:
        raise RuntimeError(f"{what} does not act as a single {n}-cycle")


def singer_cycle(pl: Plane) -> SingerCycle:
    """Cyclic collineation of order q^2+q+1 from the least primitive cubic.

    Points map by the companion matrix, lines by its inverse transpose, so
    incidence is preserved.
    """
    f = pl.field
    c0, c1, c2 = least_primitive_cubic(f)
    mat = (
        (0, 0, f.neg(c0)),
        (1, 0, f.neg(c1)),
        (0, 1, f.neg(c2)),
    )
    inv_t = tuple(zip(*_mat_inv(f, mat)))
    point_perm = _perm_from_action(pl, lambda t: _mat_vec(f, mat, t))
    line_perm = _perm_from_action(pl, lambda t: _mat_vec(f, inv_t, t))
    _require_single_cycle(point_perm, "point action")
    _require_single_cycle(line_perm, "line action")
    return SingerCycle(
        poly=(c0, c1, c2), matrix=mat, point_perm=point_perm, line_perm=line_perm
    )


# -- Baer subplane decomposition ---------------------------------------------


@dataclass(frozen=True, eq=False)
class BaerDecomposition:
    """Disjoint Baer subplanes covering the points and the lines of PG(2,q)."""

    suborder: int
    subplanes: list[tuple[np.ndarray, np.ndarray]]  # (point ids, line ids)


def verify_subplane(pl: Plane, pts, lns, m: int) -> bool:
    """Check that (pts, lns) is a projective subplane of order m."""
    pts = np.asarray(sorted(set(int(x) for x in pts)), dtype=np.int64)
    lns = np.asarray(sorted(set(int(x) for x in lns)), dtype=np.int64)
    k = m * m + m + 1
    if pts.size != k or lns.size != k:
        return False
    sub = pl.incidence[np.ix_(pts, lns)].astype(np.int64)
    if not (sub.sum(axis=0) == m + 1).all():
        return False
    if not (sub.sum(axis=1) == m + 1).all():
        return False
    common = sub @ sub.T
    off = common[~np.eye(k, dtype=bool)]
    return bool((off >= 1).all())


def baer_decomposition(pl: Plane, sc: SingerCycle | None = None) -> BaerDecomposition:
    """Partition points and lines into q - sqrt(q) + 1 Baer subplanes.

    Point classes are the orbits of the subgroup generated by the
    (q - sqrt(q) + 1)-th power of the Singer cycle; each class's line set is
    recovered as the lines meeting it in sqrt(q) + 1 points.
    """
    q = pl.q
    r = math.isqrt(q)
    if r * r != q:
        raise ValueError(f"Baer decomposition requires a square order, got q={q}")
    sc = sc or singer_cycle(pl)
    n = pl.n
    e = q - r + 1  # subplane count; orbit length is n // e = q + r + 1
    cycle = np.empty(n, dtype=np.int64)
    v = 0
    for k in range(n):
        cycle[k] = v
        v = sc.point_perm[v]
    size = n // e
    orbits = [
        np.sort(cycle[(j + e * np.arange(size)) % n]) for j in range(e)
    ]
    orbits.sort(key=lambda o: int(o[0]))
    rich = r + 1
    subplanes: list[tuple[np.ndarray, np.ndarray]] = []
    for pts in orbits:
        counts = pl.incidence[pts, :].sum(axis=0)
        lns = np.flatnonzero(counts == rich)
        if lns.size != size or not verify_subplane(pl, pts, lns, r):
            raise RuntimeError("Singer power orbit is not a Baer subplane")
        subplanes.append((pts, lns))
    covered = np.concatenate([s[1] for s in subplanes])
    if np.unique(covered).size != n:
        raise RuntimeError("subplane line sets do not partition the lines")
    return BaerDecomposition(suborder=r, subplanes=subplanes)
