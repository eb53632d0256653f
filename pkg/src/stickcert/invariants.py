"""Diagram invariants: Alexander polynomial via Fox calculus, knot
determinant, Fox p-coloring counts, and a crossing-capped normalized
Kauffman bracket.

All computations are exact over big integers.  The Alexander determinant is
evaluated at 2c+1 integer points with fraction-free elimination and
reconstructed by exact interpolation; the surplus points double as a
consistency check on the interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _accel
from .diagram import Diagram, check, simplify, wirtinger


class InvariantError(ValueError):
    """Invalid invariant request."""


class CapExceeded(InvariantError):
    """State sum would exceed the crossing cap; fall back to Alexander."""


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial as sorted (exponent, coefficient) pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, 1),))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({exp: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: int) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def min_exp(self) -> int:
        if self.is_zero:
            raise InvariantError("zero polynomial has no extreme exponent")
        return self.terms[0][0]

    def max_exp(self) -> int:
        if self.is_zero:
            raise InvariantError("zero polynomial has no extreme exponent")
        return self.terms[-1][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def scale(self, k: int) -> "LaurentPoly":
        if k == 0:
            return LaurentPoly.zero()
        return LaurentPoly(tuple((e, k * c) for e, c in self.terms))

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def invert_variable(self) -> "LaurentPoly":
        """Substitute the variable by its inverse (exponent negation)."""
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.terms)))

    def evaluate(self, x: Fraction | int) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms:
            total += c * Fraction(x) ** e
        return total

    def normalized(self) -> "LaurentPoly":
        """Canonical unit multiple: min exponent 0, leading coefficient > 0."""
        if self.is_zero:
            return self
        shifted = self.shift(-self.min_exp())
        if shifted.terms[-1][1] < 0:
            shifted = -shifted
        return shifted


def poly_text(poly: LaurentPoly, var: str = "t") -> str:
    """Canonical ascending-exponent rendering, e.g. ``1 - 1*t + 1*t^2``."""
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for e, c in poly.terms:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif e == 1:
            body = f"{mag}*{var}"
        else:
            body = f"{mag}*{var}^{e}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse_poly_text(text: str, var: str = "t") -> LaurentPoly:
    """Inverse of poly_text (bit-exact on its output)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero()
    s = s.replace("- ", "-").replace("+ ", "+")
    tokens = s.split()
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign = 1
        if tok.startswith("+"):
            tok = tok[1:]
        elif tok.startswith("-"):
            sign = -1
            tok = tok[1:]
        if "*" in tok:
            coeff_s, pow_s = tok.split("*", 1)
            if pow_s == var:
                exp = 1
            elif pow_s.startswith(f"{var}^"):
                exp = int(pow_s[len(var) + 1 :])
            else:
                raise InvariantError(f"bad term {tok!r}")
            coeff = int(coeff_s)
        else:
            coeff = int(tok)
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
    return LaurentPoly.from_dict(coeffs)


# ---------------------------------------------------------------------------
# Alexander polynomial


def _int_det(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix (destructive)."""
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, n):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = mat[k][k]
        for i in range(k + 1, n):
            row_i = mat[i]
            row_k = mat[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * mat[n - 1][n - 1]


def _interpolate(points: list[tuple[int, int]], degree_bound: int) -> list[int]:
    """Exact Lagrange interpolation; verifies integrality and degree bound.

    Uses the first degree_bound+1 points to build the polynomial and the
    remaining points as consistency checks.
    """
    base = points[: degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for xi, yi in base:
        num = [Fraction(1)]
        den = Fraction(1)
        for xj, _ in base:
            if xj == xi:
                continue
            # multiply num by (x - xj)
            nxt = [Fraction(0)] * (len(num) + 1)
            for p, cp in enumerate(num):
                nxt[p] -= cp * xj
                nxt[p + 1] += cp
            num = nxt
            den *= xi - xj
        w = Fraction(yi) / den
        for p, cp in enumerate(num):
            coeffs[p] += cp * w
    out = []
    for cp in coeffs:
        if cp.denominator != 1:
            raise InvariantError("interpolation produced a non-integer coefficient")
        out.append(int(cp))
    for xi, yi in points[degree_bound + 1 :]:
        val = 0
        for p in reversed(range(degree_bound + 1)):
            val = val * xi + out[p]
        if val != yi:
            raise InvariantError("interpolation failed the surplus-point check")
    return out


def alexander(diagram: Diagram) -> LaurentPoly:
    """Normalized Alexander polynomial via Fox calculus.

    Builds the c x c Fox-derivative matrix of the Wirtinger presentation
    (rows ``t*in + (1-t)*over - out`` at positive crossings and the unit
    multiple ``in + (t-1)*over - t*out`` at negative ones), deletes one row
    and one column, and takes the exact determinant by evaluation at 2c+1
    integers plus interpolation.  The result is normalized to minimum
    exponent 0 with positive leading coefficient, making equality tests
    canonical.
    """
    check(diagram)
    c = diagram.n_crossings
    if c == 0:
        return LaurentPoly.one()
    pres = wirtinger(diagram)
    m = pres.n_arcs
    # row r as three (column, poly-in-t) contributions; poly encoded as
    # (constant, linear) integer pair
    rows: list[dict[int, tuple[int, int]]] = []
    for rel in pres.relations:
        row: dict[int, tuple[int, int]] = {}

        def bump(col: int, const: int, lin: int) -> None:
            c0, c1 = row.get(col, (0, 0))
            row[col] = (c0 + const, c1 + lin)

        if rel.sign > 0:
            bump(rel.in_arc, 0, 1)       # t
            bump(rel.over_arc, 1, -1)    # 1 - t
            bump(rel.out_arc, -1, 0)     # -1
        else:
            bump(rel.in_arc, 1, 0)       # 1
            bump(rel.over_arc, -1, 1)    # t - 1
            bump(rel.out_arc, 0, -1)     # -t
        rows.append(row)
    size = m - 1
    if size == 0:
        return LaurentPoly.one()
    degree_bound = size
    ts = list(range(2, 2 + 2 * c + 1))
    points = []
    for tval in ts:
        mat = [[0] * size for _ in range(size)]
        for r in range(size):
            for col, (c0, c1) in rows[r].items():
                if col < size:
                    mat[r][col] = c0 + c1 * tval
        points.append((tval, _int_det(mat)))
    coeffs = _interpolate(points, degree_bound)
    poly = LaurentPoly.from_dict({e: co for e, co in enumerate(coeffs)})
    if poly.is_zero:
        raise InvariantError("Alexander determinant vanished; diagram defect")
    return poly.normalized()


def determinant(diagram: Diagram) -> int:
    """Knot determinant |Delta(-1)|."""
    val = alexander(diagram).evaluate(-1)
    assert val.denominator == 1
    return abs(int(val))


# ---------------------------------------------------------------------------
# Fox colorings


@dataclass(frozen=True)
class ColoringCount:
    p: int
    count: int

    @property
    def nontrivial(self) -> bool:
        return self.count > self.p


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def count_colorings(diagram: Diagram, p: int) -> ColoringCount:
    """Count Fox p-colorings exactly: arc labels over Z/p with
    2*over = under_in + under_out at every crossing."""
    if not _is_prime(p):
        raise InvariantError(f"{p} is not prime")
    check(diagram)
    if diagram.n_crossings == 0:
        return ColoringCount(p, p)
    pres = wirtinger(diagram)
    m = pres.n_arcs
    rows = []
    for rel in pres.relations:
        row = [0] * m
        row[rel.over_arc] = (row[rel.over_arc] + 2) % p
        row[rel.in_arc] = (row[rel.in_arc] - 1) % p
        row[rel.out_arc] = (row[rel.out_arc] - 1) % p
        rows.append(row)
    rank = 0
    col = 0
    r = 0
    while r < len(rows) and col < m:
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] % p != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p != 0:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return ColoringCount(p, p ** (m - rank))


# ---------------------------------------------------------------------------
# Kauffman bracket


def kauffman_bracket(diagram: Diagram, crossing_cap: int = 24) -> LaurentPoly:
    """Writhe-normalized Kauffman bracket in the variable A.

    Simplifies first, then runs the 2^c state sum (c <= crossing_cap, else
    CapExceeded).  The result is invariant under Reidemeister moves and
    detects mirroring via A <-> 1/A.
    """
    check(diagram)
    d = simplify(diagram)
    c = d.n_crossings
    if c > crossing_cap:
        raise CapExceeded(f"{c} crossings after simplify exceeds cap {crossing_cap}")
    if c == 0:
        return LaurentPoly.one()
    slots = np.array([[e - 1 for e in x.slots] for x in d.crossings], dtype=np.int64)
    counts = _accel.bracket_counts(slots)
    delta = LaurentPoly.from_dict({2: -1, -2: -1})  # -A^2 - A^-2
    delta_pows = [LaurentPoly.one()]
    for _ in range(c):
        delta_pows.append(delta_pows[-1] * delta)
    total = LaurentPoly.zero()
    for a_cnt in range(counts.shape[0]):
        for loops in range(1, counts.shape[1]):
            nstates = int(counts[a_cnt, loops])
            if nstates == 0:
                continue
            term = delta_pows[loops - 1].shift(2 * a_cnt - c).scale(nstates)
            total = total + term
    w = sum(x.sign for x in d.crossings)
    corrected = total.shift(-3 * w)
    if w % 2:
        corrected = -corrected
    return corrected
