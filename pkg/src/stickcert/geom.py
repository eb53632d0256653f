"""Exact-arithmetic polygon geometry: equilaterality, regular projection
directions, projection to diagrams, and height-extrema counting.

Every verdict (parallelism, intersection, over/under, height comparison) is
decided with arbitrary-precision integer or rational arithmetic; floating
point never enters a decision path.  Directions are integer vectors: extrema
counting and projection depend only on the ray of the height functional, so
nothing is lost by avoiding unit vectors.

Vertices are stored as big integers plus one global rational ``scale`` (the
published data uses 1e-7), which reproduces printed coordinates bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import _accel
from .diagram import Diagram, canonical_diagram

Vec3 = tuple[int, int, int]

DEFAULT_SCALE = Fraction(1, 10**7)
DEFAULT_REL_TOL = Fraction(1, 10**5)


class GeometryError(ValueError):
    """Degenerate geometric input or an impossible request."""


class NonMorseError(GeometryError):
    """Height direction has an adjacent-vertex tie; extrema are undefined."""


class IrregularDirectionError(GeometryError):
    """Projection direction fails a regularity predicate."""


def _sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _dot(a: Vec3, b: Vec3) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _cross2(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Polygon3:
    """Closed polygon: ordered integer vertices plus a global rational scale.

    Invariants enforced at construction: at least 3 vertices, consecutive
    vertices distinct (including the closing edge), and no three consecutive
    vertices exactly collinear.
    """

    vertices: tuple[Vec3, ...]
    scale: Fraction = DEFAULT_SCALE
    name: str = ""

    def __post_init__(self):
        verts = tuple(tuple(int(c) for c in v) for v in self.vertices)
        for v in verts:
            if len(v) != 3:
                raise GeometryError(f"vertex {v} is not a 3-vector")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise GeometryError("scale must be positive")
        n = len(verts)
        if n < 3:
            raise GeometryError(f"polygon needs >= 3 vertices, got {n}")
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise GeometryError(f"zero-length edge at vertex {i}")
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            if _cross(_sub(b, a), _sub(c, b)) == (0, 0, 0):
                raise GeometryError(f"vertices {i - 1},{i},{(i + 1) % n} are collinear")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_vectors(self) -> list[Vec3]:
        vs = self.vertices
        return [_sub(vs[(i + 1) % self.n], vs[i]) for i in range(self.n)]

    def max_abs_coordinate(self) -> int:
        return max(abs(c) for v in self.vertices for c in v)


@dataclass(frozen=True)
class Direction:
    """Integer projection/height direction with an integer plane basis.

    ``u`` and ``v`` are exactly orthogonal to ``d`` and u x v is a nonzero
    multiple of d, so (u.x, v.x) are plane coordinates consistent with the
    orientation of d.
    """

    d: Vec3
    u: Vec3
    v: Vec3

    def __post_init__(self):
        d = tuple(int(c) for c in self.d)
        u = tuple(int(c) for c in self.u)
        v = tuple(int(c) for c in self.v)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if d == (0, 0, 0):
            raise GeometryError("zero direction")
        if _dot(d, u) != 0 or _dot(d, v) != 0:
            raise GeometryError("basis not orthogonal to direction")
        w = _cross(u, v)
        if w == (0, 0, 0) or _cross(w, d) != (0, 0, 0):
            raise GeometryError("u, v do not span the plane transverse to d")

    @classmethod
    def from_vector(cls, d) -> "Direction":
        """Deterministic integer basis: u = d x e_k for the axis e_k most
        orthogonal to d (ties to smallest k), v = d x u."""
        d = tuple(int(c) for c in d)
        if d == (0, 0, 0):
            raise GeometryError("zero direction")
        k = min(range(3), key=lambda i: (abs(d[i]), i))
        ek = tuple(1 if i == k else 0 for i in range(3))
        u = _cross(d, ek)
        v = _cross(d, u)
        return cls(d, u, v)


@dataclass(frozen=True)
class RegularityReport:
    verdict: str  # "regular" | "fail"
    failure_kind: str | None = None
    witness: tuple | None = None

    @property
    def regular(self) -> bool:
        return self.verdict == "regular"


@dataclass(frozen=True)
class EquilateralReport:
    equilateral: bool
    max_rel_deviation: Fraction


def edge_lengths_squared(poly: Polygon3) -> list[Fraction]:
    """Exact squared edge lengths in scaled units: |v_{i+1} - v_i|^2 scale^2."""
    s2 = poly.scale * poly.scale
    return [_dot(e, e) * s2 for e in poly.edge_vectors()]


def check_equilateral(poly: Polygon3, rel_tol: Fraction = DEFAULT_REL_TOL) -> EquilateralReport:
    """Decide max_i |L_i - Lbar| / Lbar <= rel_tol exactly on squared lengths.

    Lbar^2 is the mean of the squared lengths.  The verdict compares
    (1 -+ rel_tol)^2 Lbar^2 against each L_i^2 by cross multiplication; the
    reported deviation is a 12-digit rational approximation of the true
    maximum (the verdict never depends on it).
    """
    rel_tol = Fraction(rel_tol)
    if rel_tol <= 0:
        raise GeometryError("rel_tol must be positive")
    sq = [_dot(e, e) for e in poly.edge_vectors()]
    mean = Fraction(sum(sq), len(sq))
    lo = (1 - rel_tol) ** 2 * mean if rel_tol < 1 else Fraction(0)
    hi = (1 + rel_tol) ** 2 * mean
    ok = all(lo <= q <= hi for q in sq)
    prec = 10**12
    worst = Fraction(0)
    for q in sq:
        ratio = Fraction(q) / mean
        root = Fraction(isqrt(ratio.numerator * prec * prec // ratio.denominator), prec)
        dev = abs(root - 1)
        if dev > worst:
            worst = dev
    return EquilateralReport(equilateral=ok, max_rel_deviation=worst)


def move_vertex(poly: Polygon3, index: int, new_vertex) -> Polygon3:
    """Replace one vertex; the result must satisfy all polygon invariants."""
    if not 0 <= index < poly.n:
        raise GeometryError(f"vertex index {index} out of range 0..{poly.n - 1}")
    verts = list(poly.vertices)
    verts[index] = tuple(int(c) for c in new_vertex)
    return Polygon3(tuple(verts), scale=poly.scale, name=poly.name)


# ---------------------------------------------------------------------------
# regularity


def heights(poly: Polygon3, direction: Direction) -> list[int]:
    return [_dot(direction.d, v) for v in poly.vertices]


def check_regular(poly: Polygon3, direction: Direction) -> RegularityReport:
    """Exact regularity predicates for projecting ``poly`` along ``direction``.

    Regular means: no edge parallel to d, no adjacent-vertex height tie, all
    vertex projections distinct, no vertex over the open image of any other
    edge (including straight-through adjacent triples), and no triple point
    among edge crossings.
    """
    d = direction.d
    n = poly.n
    vs = poly.vertices
    h = heights(poly, direction)
    for i in range(n):
        if h[i] == h[(i + 1) % n]:
            return RegularityReport("fail", "adjacent-height-tie", (i, (i + 1) % n))
    for i, e in enumerate(poly.edge_vectors()):
        if _cross(e, d) == (0, 0, 0):
            return RegularityReport("fail", "edge-parallel-to-d", (i,))
    p = [(_dot(direction.u, v), _dot(direction.v, v)) for v in vs]
    seen: dict[tuple[int, int], int] = {}
    for i, q in enumerate(p):
        if q in seen:
            return RegularityReport("fail", "vertex-coincidence", (seen[q], i))
        seen[q] = i
    for i in range(n):
        a, b, c = p[i - 1], p[i], p[(i + 1) % n]
        if _cross2(_sub2(b, a), _sub2(c, b)) == 0:
            return RegularityReport("fail", "vertex-over-edge", ((i - 1) % n, i))
    for i in range(n):
        a, b = p[i], p[(i + 1) % n]
        ab = _sub2(b, a)
        for k in range(n):
            if k == i or k == (i + 1) % n:
                continue
            q = p[k]
            if _cross2(ab, _sub2(q, a)) == 0:
                # collinear: strictly inside the open segment?
                if _dot2(_sub2(q, a), _sub2(q, b)) < 0:
                    return RegularityReport("fail", "vertex-over-edge", (i, k))
    hits = _crossing_points(poly, direction, p)
    points: dict[tuple[int, int, int], tuple[int, int]] = {}
    for (i, j), (px, py) in hits.items():
        key = _normalized_point(px, py)
        if key in points:
            return RegularityReport("fail", "triple-point", (points[key], (i, j)))
        points[key] = (i, j)
    return RegularityReport("regular")


def _sub2(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] - b[0], a[1] - b[1])


def _dot2(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[0] + a[1] * b[1]


def _orient(a, b, c) -> int:
    return _cross2(_sub2(b, a), _sub2(c, a))


def _nonadjacent_pairs(n: int):
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            yield i, j


def _crossing_points(poly, direction, p) -> dict[tuple[int, int], tuple[Fraction, Fraction]]:
    """Projected proper intersections of non-adjacent edges, exact points."""
    n = poly.n
    hits = {}
    for i, j in _nonadjacent_pairs(n):
        a, b = p[i], p[(i + 1) % n]
        c, d = p[j], p[(j + 1) % n]
        o1 = _orient(a, b, c)
        o2 = _orient(a, b, d)
        if _sign(o1) * _sign(o2) >= 0:
            continue
        o3 = _orient(c, d, a)
        o4 = _orient(c, d, b)
        if _sign(o3) * _sign(o4) >= 0:
            continue
        t = Fraction(o3, o3 - o4)  # parameter along edge i
        px = a[0] + t * (b[0] - a[0])
        py = a[1] + t * (b[1] - a[1])
        hits[(i, j)] = (px, py)
    return hits


def _normalized_point(px: Fraction, py: Fraction) -> tuple[int, int, int]:
    den = px.denominator * py.denominator // _gcd(px.denominator, py.denominator)
    return (int(px * den), int(py * den), den)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def find_regular_direction(
    poly: Polygon3,
    seed: int = 0,
    max_rejections: int = 10**6,
    initial_bound: int = 64,
) -> tuple[Direction, RegularityReport]:
    """Rejection-sample an exact-regular integer direction, deterministically.

    Draws integer vectors with entries in [-B, B]; B doubles every 256
    consecutive rejections (regularity is generic, so failures are measure
    zero and the loop terminates almost immediately in practice).
    """
    bound = initial_bound
    for attempt in range(max_rejections):
        if attempt and attempt % 256 == 0:
            bound *= 2
        d = _accel.direction_single(seed, 0, attempt, bound)
        if d == (0, 0, 0):
            continue
        direction = Direction.from_vector(d)
        report = check_regular(poly, direction)
        if report.regular:
            return direction, report
    raise GeometryError(
        f"no regular direction after {max_rejections} rejections; "
        "input is degenerate"
    )


# ---------------------------------------------------------------------------
# projection


def crossing_pairs(poly: Polygon3, direction: Direction) -> set[tuple[int, int]]:
    """Edge-index pairs (i < j) whose projections cross transversally."""
    report = check_regular(poly, direction)
    if not report.regular:
        raise IrregularDirectionError(
            f"direction {direction.d} not regular: {report.failure_kind} at {report.witness}"
        )
    p = [(_dot(direction.u, v), _dot(direction.v, v)) for v in poly.vertices]
    return set(_crossing_points(poly, direction, p))


def project_to_diagram(poly: Polygon3, direction: Direction) -> Diagram:
    """Project along a regular direction to a knot diagram.

    Crossings are the transverse intersections of projected non-adjacent
    edges; over/under is decided by exact rational height comparison at the
    intersection point, the crossing sign by the orientation of the projected
    (over, under) direction frame.  Crossing ids follow traversal order from
    polygon vertex 0.
    """
    report = check_regular(poly, direction)
    if not report.regular:
        raise IrregularDirectionError(
            f"direction {direction.d} not regular: {report.failure_kind} at {report.witness}"
        )
    n = poly.n
    vs = poly.vertices
    h = heights(poly, direction)
    p = [(_dot(direction.u, v), _dot(direction.v, v)) for v in vs]

    per_edge: dict[int, list[tuple[Fraction, tuple[int, int]]]] = {i: [] for i in range(n)}
    over_of: dict[tuple[int, int], int] = {}
    sign_of: dict[tuple[int, int], int] = {}
    for i, j in _nonadjacent_pairs(n):
        a, b = p[i], p[(i + 1) % n]
        c, d2 = p[j], p[(j + 1) % n]
        o1 = _orient(a, b, c)
        o2 = _orient(a, b, d2)
        if _sign(o1) * _sign(o2) >= 0:
            continue
        o3 = _orient(c, d2, a)
        o4 = _orient(c, d2, b)
        if _sign(o3) * _sign(o4) >= 0:
            continue
        t = Fraction(o3, o3 - o4)
        s = Fraction(o1, o1 - o2)
        hi = h[i] + t * (h[(i + 1) % n] - h[i])
        hj = h[j] + s * (h[(j + 1) % n] - h[j])
        if hi == hj:
            raise GeometryError(
                f"edges {i} and {j} intersect in space; polygon is not embedded"
            )
        key = (i, j)
        per_edge[i].append((t, key))
        per_edge[j].append((s, key))
        over_edge, under_edge = (i, j) if hi > hj else (j, i)
        over_of[key] = over_edge
        ov = _sub2(p[(over_edge + 1) % n], p[over_edge])
        un = _sub2(p[(under_edge + 1) % n], p[under_edge])
        sign_of[key] = _sign(_cross2(ov, un))

    if not over_of:
        return Diagram(())

    passages: list[tuple[tuple[int, int], str]] = []
    for i in range(n):
        for t, key in sorted(per_edge[i]):
            passages.append((key, "O" if over_of[key] == i else "U"))
    m = len(passages)
    pos: dict[tuple[tuple[int, int], str], int] = {
        entry: k for k, entry in enumerate(passages)
    }
    raw = []
    for key in over_of:
        pu = pos[(key, "U")]
        po = pos[(key, "O")]
        sign = sign_of[key]
        if sign > 0:
            slots = (pu, (po + 1) % m, (pu + 1) % m, po)
        else:
            slots = (pu, po, (pu + 1) % m, (po + 1) % m)
        raw.append((slots, sign))
    return canonical_diagram(raw, start_edge=0)


# ---------------------------------------------------------------------------
# extrema counting


def local_maxima_count(poly: Polygon3, direction: Direction) -> int:
    """Number of vertices strictly above both neighbors in height."""
    h = heights(poly, direction)
    n = poly.n
    for i in range(n):
        if h[i] == h[(i + 1) % n]:
            raise NonMorseError(
                f"adjacent vertices {i},{(i + 1) % n} share height along {direction.d}"
            )
    return sum(1 for i in range(n) if h[i] > h[i - 1] and h[i] > h[(i + 1) % n])


def local_minima_count(poly: Polygon3, direction: Direction) -> int:
    """Independent minima counter (used as the antipodal-symmetry oracle)."""
    h = heights(poly, direction)
    n = poly.n
    for i in range(n):
        if h[i] == h[(i + 1) % n]:
            raise NonMorseError("adjacent height tie")
    return sum(1 for i in range(n) if h[i] < h[i - 1] and h[i] < h[(i + 1) % n])


@dataclass(frozen=True)
class SweepResult:
    min_count: int
    max_count: int
    min_witness: Direction
    max_witness: Direction
    samples: int


_INT64_SAFE = 2**62


def direction_sweep(
    poly: Polygon3, samples: int, seed: int = 0, bound: int = 10_000
) -> SweepResult:
    """Min/max local-maxima count over ``samples`` pseudo-random directions.

    Per-sample RNG streams (seed, index) make the result independent of
    batching; non-Morse and zero draws are redrawn within their own stream.
    Uses the int64 kernel when heights provably fit; otherwise falls back to
    exact big-integer evaluation with identical draws.
    """
    if samples < 1:
        raise GeometryError("samples must be >= 1")
    n = poly.n
    vmax = poly.max_abs_coordinate()
    counts = np.empty(samples, dtype=np.int64)
    dirs = np.zeros((samples, 3), dtype=np.int64)
    use_kernel = 3 * bound * vmax < _INT64_SAFE
    if use_kernel:
        verts = np.array(poly.vertices, dtype=np.int64)
    pending = np.arange(samples, dtype=np.int64)
    draw = 0
    while pending.size:
        cand = _accel.direction_batch(seed, pending, draw, bound)
        nonzero = np.any(cand != 0, axis=1)
        if use_kernel:
            got = _accel.maxima_counts(verts, cand)
        else:
            got = np.array(
                [
                    _count_maxima_bigint(poly, tuple(int(x) for x in row))
                    for row in cand
                ],
                dtype=np.int64,
            )
        ok = nonzero & (got >= 0)
        counts[pending[ok]] = got[ok]
        dirs[pending[ok]] = cand[ok]
        pending = pending[~ok]
        draw += 1
    min_idx = int(np.argmin(counts))
    max_idx = int(np.argmax(counts))
    result = SweepResult(
        min_count=int(counts[min_idx]),
        max_count=int(counts[max_idx]),
        min_witness=Direction.from_vector(tuple(int(x) for x in dirs[min_idx])),
        max_witness=Direction.from_vector(tuple(int(x) for x in dirs[max_idx])),
        samples=samples,
    )
    if not (1 <= result.min_count and result.max_count <= n // 2):
        raise GeometryError("extrema count outside [1, n/2]; internal error")
    return result


def _count_maxima_bigint(poly: Polygon3, d: Vec3) -> int:
    """Big-int twin of the sweep kernel; -1 encodes a non-Morse draw."""
    if d == (0, 0, 0):
        return -1
    h = [_dot(d, v) for v in poly.vertices]
    n = poly.n
    for i in range(n):
        if h[i] == h[(i + 1) % n]:
            return -1
    return sum(1 for i in range(n) if h[i] > h[i - 1] and h[i] > h[(i + 1) % n])
