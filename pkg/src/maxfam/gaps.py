"""Lattice triangles and the Weierstrass gap sequences at the places of Omega.

A differential x^(k-1) y^(l-q-1) dx is regular exactly when (k, l) is an
interior lattice point of the triangle with vertices (0, q+1), (2i, 0),
(2i+2, 0).  The gap sequences at the places over infinity, zero and +-alpha are
read off from those points together with two sub-triangles; everything here is
exact integer (or Fraction) arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .curve import CurveIndex
from .errors import DomainError, InternalInconsistency

Point = tuple[int, int]


class PlaceClass(enum.Enum):
    INFINITY = "inf"
    ZERO = "zero"
    ALPHA = "alpha"


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, a, b, c):
        verts = tuple((Fraction(x), Fraction(y)) for x, y in (a, b, c))
        object.__setattr__(self, "vertices", verts)
        if self.doubled_area == 0:
            raise DomainError(f"degenerate triangle {self}")

    @property
    def doubled_area(self) -> Fraction:
        """Twice the signed area (positive for counter-clockwise order)."""
        (x0, y0), (x1, y1), (x2, y2) = self.vertices
        return (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for pt in self.vertices for v in pt)

    def contains_strictly(self, k: int, l: int) -> bool:
        sign = 1 if self.doubled_area > 0 else -1
        v = self.vertices
        for j in range(3):
            (ax, ay), (bx, by) = v[j], v[(j + 1) % 3]
            if sign * ((bx - ax) * (l - ay) - (by - ay) * (k - ax)) <= 0:
                return False
        return True

    def __repr__(self):
        def fmt(z: Fraction) -> str:
            return str(z.numerator) if z.denominator == 1 else str(z)

        return "Triangle(" + ", ".join(f"({fmt(x)},{fmt(y)})" for x, y in self.vertices) + ")"


def interior_points(t: Triangle) -> list[Point]:
    """Lattice points strictly inside t, sorted lexicographically."""
    xs = [x for x, _ in t.vertices]
    ys = [y for _, y in t.vertices]
    return [
        (k, l)
        for k in range(math.floor(min(xs)), math.ceil(max(xs)) + 1)
        for l in range(math.floor(min(ys)), math.ceil(max(ys)) + 1)
        if t.contains_strictly(k, l)
    ]


def boundary_count(t: Triangle) -> int:
    """Lattice points on the boundary of an integral triangle."""
    if not t.is_integral:
        raise DomainError("boundary count needs integral vertices")
    v = t.vertices
    return sum(
        math.gcd(int(v[(j + 1) % 3][0] - v[j][0]), int(v[(j + 1) % 3][1] - v[j][1]))
        for j in range(3)
    )


def pick_interior_count(t: Triangle) -> int:
    """Interior count from Pick's theorem, I = A - B/2 + 1."""
    twice = abs(t.doubled_area) - boundary_count(t) + 2
    if twice.denominator != 1 or twice % 2:
        raise InternalInconsistency(f"Pick count for {t} is not an integer")
    return int(twice) // 2


def triangles_for(c: CurveIndex) -> tuple[Triangle, Triangle, Triangle]:
    """(Delta, Delta_1, Delta_2) for the curve F_i."""
    q, d, i = c.q, c.d, c.i
    delta = Triangle((0, q + 1), (2 * i, 0), (2 * (i + 1), 0))
    delta1 = Triangle((i + 1, d), (2 * i + 1, 0), (2 * (i + 1), 0))
    delta2 = Triangle((i, d), (2 * i, 0), (2 * i + 1, 0))
    return delta, delta1, delta2


def genus_by_pick(c: CurveIndex) -> int:
    """Count regular differentials of the form x^(k-1) y^(l-q-1) dx two ways."""
    delta = triangles_for(c)[0]
    direct = len(interior_points(delta))
    pick = pick_interior_count(delta)
    if direct != pick:
        raise InternalInconsistency(f"{delta}: enumeration gives {direct}, Pick gives {pick}")
    return direct


@dataclass(frozen=True)
class GapSet:
    place_class: PlaceClass
    gaps: tuple[int, ...]

    def __contains__(self, n: int) -> bool:
        return n in self.gaps

    def __len__(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)


def _disjoint_union(first: Iterable[int], second: Iterable[int], what: str) -> tuple[int, ...]:
    a, b = list(first), list(second)
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        raise InternalInconsistency(f"{what}: repeated value inside one constituent set")
    clash = set(a) & set(b)
    if clash:
        raise InternalInconsistency(f"{what}: constituent sets overlap in {sorted(clash)}")
    return tuple(sorted(a + b))


def gap_parts(c: CurveIndex, place_class: PlaceClass) -> tuple[list[int], list[int]]:
    """The two constituent lists whose disjoint union is the gap sequence."""
    q, d, i = c.q, c.d, c.i
    delta, delta1, delta2 = triangles_for(c)
    inner = interior_points(delta)
    low = [(k, l) for k, l in inner if l < d]
    if place_class is PlaceClass.INFINITY:
        first = [-k * d - (l - q - 1) * (i + 1) for k, l in low]
        second = [-k * d - (l - q - 1) * (i + 1) + q + 1 for k, l in interior_points(delta1)]
    elif place_class is PlaceClass.ZERO:
        first = [k * d + (l - q - 1) * i for k, l in low]
        second = [k * d + (l - q - 1) * i + q + 1 for k, l in interior_points(delta2)]
    elif place_class is PlaceClass.ALPHA:
        in1 = set(interior_points(delta1))
        first = [l for k, l in inner if (k, l) not in in1]
        second = [l + q + 1 for _, l in sorted(in1)]
    else:
        raise ValueError(place_class)
    return first, second


def gap_set(c: CurveIndex, place_class: PlaceClass | str) -> GapSet:
    place_class = PlaceClass(place_class)
    first, second = gap_parts(c, place_class)
    gaps = _disjoint_union(first, second, f"G_{place_class.value} for {c}")
    return GapSet(place_class, gaps)


def nongaps(c: CurveIndex, place_class: PlaceClass | str) -> list[int]:
    """Non-gaps in [0, 2g]; every integer above 2g is a non-gap as well."""
    gs = set(gap_set(c, place_class).gaps)
    return [n for n in range(2 * c.genus + 1) if n not in gs]


def is_numerical_semigroup(nongap_list: Iterable[int], genus: int) -> bool:
    """True iff the set (plus everything > 2g) contains 0 and is closed under addition."""
    s = set(nongap_list)
    top = 2 * genus
    if 0 not in s or any(n < 0 or n > top for n in s):
        return False
    members = sorted(s)
    for x in members:
        for y in members:
            if x + y > top:
                break
            if x + y not in s:
                return False
    return True
