"""Friendly-partition constructions on the incidence graph of PG(2,q).

Each construction returns a :class:`Partition` over the 2(q^2+q+1) graph
vertices (points first, lines after) together with provenance.  None of
them measures its own quality; callers get margins from
:mod:`planepart.verify`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .plane import BaerDecomposition, Plane, baer_decomposition


@dataclass(eq=False)
class Partition:
    """Two-class vertex assignment: side 0 is class A, side 1 is class B."""

    side: np.ndarray
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.side = np.asarray(self.side, dtype=np.uint8)
        counts = np.bincount(self.side, minlength=2)
        if counts[0] == 0 or counts[1] == 0:
            raise ValueError("partition classes must both be nonempty")

    @property
    def n(self) -> int:
        return int(self.side.size)

    def class_a(self) -> np.ndarray:
        return np.flatnonzero(self.side == 0)

    def class_b(self) -> np.ndarray:
        return np.flatnonzero(self.side == 1)

    def to_json(self, labels) -> dict:
        return {
            "assignment": {
                labels[v]: ("A" if s == 0 else "B") for v, s in enumerate(self.side)
            },
            "provenance": self.provenance,
        }

    @staticmethod
    def from_json(doc: dict, label_to_id: dict[str, int], n: int) -> "Partition":
        side = np.full(n, -1, dtype=np.int8)
        for label, cls in doc["assignment"].items():
            if label not in label_to_id:
                raise ValueError(f"unknown vertex label {label!r}")
            if cls not in ("A", "B"):
                raise ValueError(f"bad class {cls!r} for vertex {label!r}")
            side[label_to_id[label]] = 0 if cls == "A" else 1
        if (side < 0).any():
            missing = int(np.count_nonzero(side < 0))
            raise ValueError(f"assignment misses {missing} vertices")
        return Partition(
            side=side.astype(np.uint8), provenance=doc.get("provenance", {})
        )


def _partition(pl: Plane, point_ids, line_ids, name: str, params: dict) -> Partition:
    n = pl.n
    side = np.ones(2 * n, dtype=np.uint8)
    side[np.asarray(sorted(point_ids), dtype=np.int64)] = 0
    if len(line_ids):
        side[np.asarray(sorted(line_ids), dtype=np.int64) + n] = 0
    prov = {
        "construction": name,
        "parameters": dict(params),
        "field_modulus": list(pl.field.modulus),
    }
    return Partition(side=side, provenance=prov)


# -- Baer subplane split -------------------------------------------------------


def construct_baer_partition(
    pl: Plane, dec: BaerDecomposition | None = None
) -> Partition:
    """Class A = the first floor((q - sqrt(q) + 1)/2) Baer subplanes.

    Induces a regular graph on each side: valency sqrt(q) + m on A and
    sqrt(q) + m + 1 on B, where m is the number of A-subplanes minus one.
    """
    dec = dec or baer_decomposition(pl)
    m = (pl.q - dec.suborder + 1) // 2
    pts = np.concatenate([dec.subplanes[j][0] for j in range(m)])
    lns = np.concatenate([dec.subplanes[j][1] for j in range(m)])
    return _partition(
        pl, pts, lns, "baer", {"q": pl.q, "subplanes_in_a": m}
    )


# -- pencil construction for odd q ---------------------------------------------


def construct_combinatorial(
    pl: Plane,
    point: int | None = None,
    line: int | None = None,
    pencil=None,
    drop_variant: bool = False,
) -> Partition:
    """Class A from half a pencil: q odd.

    Take (q+1)/2 lines through a point P off a reference line ell.  A gets
    every point of those pencil lines, and every line through the (q+1)/2
    points where the pencil meets ell.  The drop variant removes P and ell
    themselves from A.
    """
    q = pl.q
    if q % 2 == 0:
        raise ValueError(f"combinatorial construction requires odd q, got q={q}")
    point = pl.index_of[(0, 0, 1)] if point is None else point
    line = pl.index_of[(0, 0, 1)] if line is None else line
    if pl.is_incident(point, line):
        raise ValueError("combinatorial construction requires a point off the line")
    half = (q + 1) // 2
    if pencil is None:
        pencil = pl.lines_through[point][:half].tolist()
    pencil = [int(x) for x in pencil]
    if len(set(pencil)) != half:
        raise ValueError(f"pencil must hold {half} distinct lines")
    if not all(pl.is_incident(point, ln) for ln in pencil):
        raise ValueError("pencil lines must all pass through the chosen point")

    p1: set[int] = set()
    for ln in pencil:
        p1.update(pl.points_on[ln].tolist())
    meet = [pt for pt in pl.points_on[line].tolist() if pt in p1]
    if len(meet) != half:
        raise RuntimeError("pencil does not meet the reference line correctly")
    l1: set[int] = set()
    for pt in meet:
        l1.update(pl.lines_through[pt].tolist())
    if drop_variant:
        p1.discard(point)
        l1.discard(line)
    return _partition(
        pl,
        p1,
        l1,
        "combinatorial",
        {
            "q": q,
            "point": point,
            "line": line,
            "pencil": sorted(pencil),
            "drop_variant": drop_variant,
        },
    )


# -- algebraic constructions by residue class ----------------------------------

_UNIT_TRIPLES = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def _coordinate_class(
    pl: Plane,
    *,
    slope_sq: bool,
    yaxis_sq: bool,
    xaxis_sq: bool,
    ideal_sq: bool,
    units: bool,
) -> list[int]:
    """Vertex ids picked by square tests on the four coordinate families."""
    f = pl.field
    sq = f.square_set

    def keep(v: int, want_sq: bool) -> bool:
        return (v in sq) == want_sq

    fam = {
        (x, y, 1)
        for x in f.units()
        for y in f.units()
        if keep(f.div(y, x), slope_sq)
    }
    fam.update((0, y, 1) for y in f.units() if keep(y, yaxis_sq))
    fam.update((x, 0, 1) for x in f.units() if keep(x, xaxis_sq))
    fam.update((x, 1, 0) for x in f.units() if keep(x, ideal_sq))
    if units:
        fam.update(_UNIT_TRIPLES)
    return [pl.index_of[t] for t in fam]


def construct_algebraic_1mod4(pl: Plane, erase_units: bool = False) -> Partition:
    """Square-slope class A for q = 1 mod 4.

    A-points: (x:y:1) with y/x a square, (0:y:1) with y a square, (x:0:1)
    and (x:1:0) with x a nonsquare, plus the three unit triples.  A-lines
    flip the slope and ideal tests: [x:y:1] with y/x a nonsquare, [0:y:1]
    with y a square, [x:0:1] with x a nonsquare, [x:1:0] with x a square,
    plus units.  The erase variant leaves out the six unit-triple vertices.
    """
    q = pl.q
    if q % 4 != 1:
        raise ValueError(f"alg1mod4 construction requires q = 1 (mod 4), got q={q}")
    keep_units = not erase_units
    pts = _coordinate_class(
        pl, slope_sq=True, yaxis_sq=True, xaxis_sq=False, ideal_sq=False,
        units=keep_units,
    )
    lns = _coordinate_class(
        pl, slope_sq=False, yaxis_sq=True, xaxis_sq=False, ideal_sq=True,
        units=keep_units,
    )
    return _partition(
        pl, pts, lns, "alg1mod4", {"q": q, "erase_units": erase_units}
    )


def construct_algebraic_3mod4(pl: Plane, erase_units: bool = False) -> Partition:
    """Square-slope class A for q = 3 mod 4.

    A-points: same coordinate families as the 1 mod 4 case.  A-lines flip
    the two axis tests instead: [x:y:1] with y/x a square, [0:y:1] with y a
    nonsquare, [x:0:1] with x a square, [x:1:0] with x a nonsquare, plus
    units.  The erase variant leaves out the six unit-triple vertices.
    """
    q = pl.q
    if q % 4 != 3:
        raise ValueError(f"alg3mod4 construction requires q = 3 (mod 4), got q={q}")
    keep_units = not erase_units
    pts = _coordinate_class(
        pl, slope_sq=True, yaxis_sq=True, xaxis_sq=False, ideal_sq=False,
        units=keep_units,
    )
    lns = _coordinate_class(
        pl, slope_sq=True, yaxis_sq=False, xaxis_sq=True, ideal_sq=False,
        units=keep_units,
    )
    return _partition(
        pl, pts, lns, "alg3mod4", {"q": q, "erase_units": erase_units}
    )


# -- conic classification and oval splits --------------------------------------

LINE_SKEW, LINE_TANGENT, LINE_SECANT = 0, 1, 2


@dataclass(eq=False)
class OvalData:
    """A conic oval with its line classification and point tangent counts."""

    plane: Plane
    oval: np.ndarray          # point ids, q+1 of them
    tangent_count: np.ndarray  # per point: tangent lines through it
    line_class: np.ndarray     # per line: LINE_SKEW / LINE_TANGENT / LINE_SECANT

    @cached_property
    def on_oval(self) -> np.ndarray:
        mask = np.zeros(self.plane.n, dtype=bool)
        mask[self.oval] = True
        return mask

    @property
    def interior_points(self) -> np.ndarray:
        return np.flatnonzero(~self.on_oval & (self.tangent_count == 0))

    @property
    def exterior_points(self) -> np.ndarray:
        return np.flatnonzero(~self.on_oval & (self.tangent_count == 2))

    @property
    def skew_lines(self) -> np.ndarray:
        return np.flatnonzero(self.line_class == LINE_SKEW)

    @property
    def tangent_lines(self) -> np.ndarray:
        return np.flatnonzero(self.line_class == LINE_TANGENT)

    @property
    def secant_lines(self) -> np.ndarray:
        return np.flatnonzero(self.line_class == LINE_SECANT)


def classify_conic(pl: Plane) -> OvalData:
    """Classify lines and points against the conic (t : t^2 : 1), (0:1:0).

    Odd q only.  Every line meets the conic in 0, 1 or 2 points; points off
    the conic lie on 0 or 2 tangents (interior respectively exterior).
    """
    q = pl.q
    if q % 2 == 0:
        raise ValueError(f"conic classification requires odd q, got q={q}")
    f = pl.field
    oval_triples = [(t, f.mul(t, t), 1) for t in f.elements()]
    oval_triples.append((0, 1, 0))
    oval = np.array(sorted(pl.index_of[t] for t in oval_triples), dtype=np.int64)
    hits = pl.incidence[oval, :].sum(axis=0)
    if hits.max() > 2:
        raise RuntimeError("conic has three collinear points")
    line_class = hits.astype(np.int64)
    tangents = np.flatnonzero(line_class == LINE_TANGENT)
    tangent_count = pl.incidence[:, tangents].sum(axis=1).astype(np.int64)
    od = OvalData(
        plane=pl, oval=oval, tangent_count=tangent_count, line_class=line_class
    )
    _validate_oval(od)
    return od


def _validate_oval(od: OvalData):
    pl, q = od.plane, od.plane.q
    ok = (
        od.oval.size == q + 1
        and (od.tangent_count[od.oval] == 1).all()
        and np.isin(od.tangent_count[~od.on_oval], (0, 2)).all()
        and od.interior_points.size == q * (q - 1) // 2
        and od.exterior_points.size == q * (q + 1) // 2
        and od.tangent_lines.size == q + 1
        and od.secant_lines.size == q * (q + 1) // 2
        and od.skew_lines.size == q * (q - 1) // 2
    )
    if not ok:
        raise RuntimeError("conic classification failed its count checks")


OVAL_VARIANTS = ("interior_skew", "exterior_skewtangent")


def construct_oval(
    pl: Plane, od: OvalData | None = None, variant: str = "interior_skew"
) -> Partition:
    """Class A from the conic geometry: q odd.

    ``interior_skew`` takes interior points with skew lines, inducing a
    (q+1)/2-regular graph on A.  ``exterior_skewtangent`` takes exterior
    points with skew and tangent lines.
    """
    if variant not in OVAL_VARIANTS:
        raise ValueError(f"unknown oval variant {variant!r}; pick from {OVAL_VARIANTS}")
    od = od or classify_conic(pl)
    if variant == "interior_skew":
        pts, lns = od.interior_points, od.skew_lines
    else:
        pts = od.exterior_points
        lns = np.concatenate([od.skew_lines, od.tangent_lines])
    return _partition(pl, pts, lns, "oval", {"q": pl.q, "variant": variant})


# -- maximal arcs and the even-order construction -------------------------------


@dataclass(eq=False)
class ArcData:
    """A maximal arc: every line meets it in 0 or ``degree`` points."""

    arc: np.ndarray
    degree: int
    secant_profile: np.ndarray  # per line: intersection size with the arc


def construct_denniston(pl: Plane) -> ArcData:
    """Degree-q/2 maximal arc in PG(2,q), q = 2^h with h > 1.

    Points (x:y:1) where x^2 + lambda*x*y + y^2 lands in the trace kernel,
    lambda the least unit making the form anisotropic.
    """
    f = pl.field
    q = pl.q
    if f.p != 2 or f.h < 2:
        raise ValueError(
            f"Denniston arc requires q = 2^h with h > 1, got q={q}"
        )
    lam = next(x for x in f.units() if f.trace(f.inv(x)) == 1)
    kernel = {x for x in f.elements() if f.trace(x) == 0}
    ids = []
    for x in f.elements():
        xx = f.mul(x, x)
        lx = f.mul(lam, x)
        for y in f.elements():
            val = f.add(f.add(xx, f.mul(lx, y)), f.mul(y, y))
            if val in kernel:
                ids.append(pl.index_of[(x, y, 1)])
    arc = np.array(sorted(ids), dtype=np.int64)
    profile = pl.incidence[arc, :].sum(axis=0).astype(np.int64)
    data = ArcData(arc=arc, degree=q // 2, secant_profile=profile)
    if not verify_maximal_arc(pl, arc, q // 2):
        raise RuntimeError("Denniston point set is not a maximal arc")
    return data


def verify_maximal_arc(pl: Plane, arc_points, degree: int) -> bool:
    """Size is (degree-1)(q+1)+1 and every line meets the set in 0 or degree."""
    arc = np.asarray(sorted(set(int(x) for x in arc_points)), dtype=np.int64)
    if arc.size != (degree - 1) * (pl.q + 1) + 1:
        return False
    hits = pl.incidence[arc, :].sum(axis=0)
    return bool(np.isin(hits, (0, degree)).all())


def construct_even(
    pl: Plane, arc: ArcData | None = None, secant_line: int | None = None
) -> Partition:
    """Strictly friendly partition for even q via a maximal arc: q = 2^h, h > 1.

    A gets the symmetric difference of the arc with a q/2-secant ell, plus
    every line that meets the arc and passes through a point of ell off the
    arc.  Every vertex ends with strictly more neighbors on its own side.
    """
    arc = arc or construct_denniston(pl)
    q = pl.q
    half = q // 2
    secants = np.flatnonzero(arc.secant_profile == half)
    if secant_line is None:
        secant_line = int(secants[0])
    elif arc.secant_profile[secant_line] != half:
        raise ValueError(
            f"line {secant_line} meets the arc in {int(arc.secant_profile[secant_line])} "
            f"points, need a {half}-secant"
        )
    on_ell = set(pl.points_on[secant_line].tolist())
    arc_set = set(arc.arc.tolist())
    p1 = arc_set.symmetric_difference(on_ell)
    l1: set[int] = set()
    for pt in on_ell - arc_set:
        for ln in pl.lines_through[pt].tolist():
            if arc.secant_profile[ln] > 0:
                l1.add(ln)
    return _partition(
        pl, p1, l1, "even", {"q": q, "secant_line": secant_line}
    )
