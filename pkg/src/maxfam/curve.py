"""Members F_i : y^(q+1) = x^(2i)(x^2+1) of the family, their special places, and point counts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidIndex, InvalidParameter, UnsupportedQ
from .gf import FieldCtx, build_field


@dataclass(frozen=True, order=True)
class CurveIndex:
    """A validated (q, d, i) naming one member of the family.

    ``i`` is always the canonical representative in [1, (d-1)/2].  Build with
    :func:`validate_index`; the constructor re-checks all invariants.
    """

    q: int
    d: int
    i: int

    def __post_init__(self):
        if 2 * self.d != self.q + 1:
            raise InvalidParameter(f"d must equal (q+1)/2, got q={self.q}, d={self.d}")
        if self.d % 2 == 0:
            raise UnsupportedQ(f"d = {self.d} is even (q = {self.q} is not 1 mod 4)")
        if not 1 <= self.i <= (self.d - 1) // 2:
            raise InvalidIndex(f"i = {self.i} is not canonical for d = {self.d}")
        if math.gcd(self.i * (self.i + 1), self.d) != 1:
            raise InvalidIndex(f"gcd(i(i+1), d) != 1 for i = {self.i}, d = {self.d}")

    @property
    def genus(self) -> int:
        return self.q - 1

    @property
    def special(self) -> bool:
        """q = 5 is admitted but sits outside the generic theorems."""
        return self.q == 5

    @property
    def field(self) -> FieldCtx:
        return build_field(self.q)


def canonicalize_index(i_raw: int, d: int) -> int:
    """Representative of {i mod d, -i-1 mod d} in [1, (d-1)/2].

    Both reductions are isomorphisms of the family (x -> x, y -> y/x^m and
    x -> 1/x, y -> y/x^m), so every valid index has exactly one such
    representative.
    """
    if d < 3 or d % 2 == 0:
        raise InvalidParameter(f"d must be odd and >= 3, got {d}")
    r = i_raw % d
    if math.gcd(r * (r + 1), d) != 1:
        raise InvalidIndex(f"gcd(i(i+1), d) != 1 for i = {i_raw}, d = {d}")
    # r = 0 and r = d-1 are caught above since gcd(0, d) = d
    half = (d - 1) // 2
    return r if r <= half else d - 1 - r


def validate_index(q: int, i_raw: int) -> CurveIndex:
    build_field(q)  # rejects q that is not an odd prime power >= 5
    d = (q + 1) // 2
    if d % 2 == 0:
        raise UnsupportedQ(f"q = {q} gives even d = {d}; the family needs q = 1 mod 4")
    return CurveIndex(q, d, canonicalize_index(i_raw, d))


def valid_curves(q: int) -> list[CurveIndex]:
    """Every canonical member of the family for this q."""
    d = (q + 1) // 2
    if d % 2 == 0:
        raise UnsupportedQ(f"q = {q} gives even d = {d}")
    return [
        CurveIndex(q, d, i) for i in range(1, (d - 1) // 2 + 1) if math.gcd(i * (i + 1), d) == 1
    ]


# --- places of Omega and divisors --------------------------------------------


class PlaceLabel(enum.Enum):
    ZERO1 = "Zero1"
    ZERO2 = "Zero2"
    INF1 = "Inf1"
    INF2 = "Inf2"
    ALPHA = "Alpha"
    MINUS_ALPHA = "MinusAlpha"


OMEGA = tuple(PlaceLabel)


@dataclass(frozen=True)
class FormalDivisor:
    """Integer combination of the six places of Omega (all of degree one)."""

    coefficients: Mapping[PlaceLabel, int] = field(default_factory=dict)

    def __post_init__(self):
        full = {p: int(self.coefficients.get(p, 0)) for p in OMEGA}
        object.__setattr__(self, "coefficients", full)

    @property
    def degree(self) -> int:
        return sum(self.coefficients.values())

    def __getitem__(self, place: PlaceLabel) -> int:
        return self.coefficients[place]

    def __add__(self, other: FormalDivisor) -> FormalDivisor:
        return FormalDivisor({p: self[p] + other[p] for p in OMEGA})

    def scale(self, k: int) -> FormalDivisor:
        return FormalDivisor({p: k * self[p] for p in OMEGA})

    def as_dict(self) -> dict[str, int]:
        return {p.value: c for p, c in self.coefficients.items()}


def _div(zero: int, alpha: int, inf: int) -> FormalDivisor:
    P = PlaceLabel
    return FormalDivisor(
        {P.ZERO1: zero, P.ZERO2: zero, P.ALPHA: alpha, P.MINUS_ALPHA: alpha, P.INF1: inf, P.INF2: inf}
    )


def divisor_table(c: CurveIndex) -> tuple[FormalDivisor, FormalDivisor, FormalDivisor]:
    """Divisors of x, y and dx, supported on Omega.

    The coefficient of P_alpha + P_-alpha in (dx) is q: the places over x = +-alpha
    are totally ramified of index q+1 (tame), so the different exponent is q.
    This is also the only value giving deg (dx) = 2g - 2.
    """
    d, i, q = c.d, c.i, c.q
    return _div(d, 0, -d), _div(i, 1, -(i + 1)), _div(d - 1, q, -(d + 1))


# --- point counting ----------------------------------------------------------


def hasse_weil_bound(q: int, genus: int) -> int:
    """Upper bound q^2 + 1 + 2 g q on degree-one places over GF(q^2)."""
    return q * q + 1 + 2 * genus * q


def _rhs_codes(c: CurveIndex, x_codes: Iterable[int]) -> Iterable[tuple[int, int]]:
    F = c.field
    for x in x_codes:
        x2 = F.mul_codes(x, x)
        yield x, F.mul_codes(F.pow_code(x2, c.i) if x else 0, F.add_codes(x2, 1))


def affine_count_fast(c: CurveIndex, x_codes: Iterable[int] | None = None) -> int:
    """#{(x, y) : y^(q+1) = f(x)} restricted to the given x values.

    y -> y^(q+1) is the norm to GF(q), which is (q+1)-to-1 onto GF(q)^*, so each
    x contributes 1 if f(x) = 0, q+1 if f(x) lies in GF(q)^*, and 0 otherwise.
    """
    F = c.field
    if x_codes is None:
        x_codes = range(F.element_count)
    s = 0
    for _, fx in _rhs_codes(c, x_codes):
        if fx == 0:
            s += 1
        elif F.is_base_code(fx):
            s += c.q + 1
    return s


def affine_count_naive(c: CurveIndex) -> int:
    """Direct double loop over all (x, y) in GF(q^2)^2.  O(q^4); oracle only."""
    F = c.field
    xs = list(F.elements())
    squares = [x * x for x in xs]
    rhs = [x2**c.i * (x2 + 1) for x2 in squares]
    lhs = [y ** (c.q + 1) for y in xs]
    s = 0
    for fx in rhs:
        for ny in lhs:
            if ny == fx:
                s += 1
    return s


NAIVE_Q_LIMIT = 25


def count_places(c: CurveIndex, method: str = "fast", *, allow_large: bool = False) -> int:
    """Number N of degree-one places of F_i over GF(q^2).

    N = S + 3 where S is the affine solution count: the single affine point over
    x = 0 carries two places, the points over x = +-alpha carry one each, and
    the two places over x = infinity have no affine point.
    """
    if method == "fast":
        s = affine_count_fast(c)
    elif method == "naive":
        if c.q > NAIVE_Q_LIMIT and not allow_large:
            raise InvalidParameter(
                f"naive count is O(q^4); q = {c.q} exceeds {NAIVE_Q_LIMIT} (pass allow_large)"
            )
        s = affine_count_naive(c)
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    return s + 3


def is_maximal(c: CurveIndex, method: str = "fast") -> bool:
    return count_places(c, method) == hasse_weil_bound(c.q, c.genus)
