"""Exact arithmetic in GF(q^2) for odd prime powers q = p^n.

GF(q^2) is realised as GF(p)[t]/(m(t)) with m monic irreducible of degree 2n.
An element is a coefficient vector (c_0, ..., c_{2n-1}) in the basis 1, t, ...,
t^{2n-1}.  Internally every element is also identified with the integer code
c_0 + c_1 p + ... + c_{2n-1} p^{2n-1}; counting codes upward is the canonical
enumeration order (low digit fastest).

The modulus is the lexicographically smallest monic irreducible of degree 2n,
comparing (c_0, ..., c_{2n-1}) with c_0 most significant.  Multiplication goes
through discrete log / antilog tables built from the first primitive element,
so a context costs O(q^2) to build and is then immutable.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvalidParameter
from .ntheory import factorize, prime_power

# --- polynomials over GF(p), coefficient lists low-to-high -------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - c * mk) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p), coefficients low-to-high."""
    f = _ptrim([c % p for c in poly])
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        raise InvalidParameter("irreducibility test expects a monic polynomial of degree >= 1")
    x = [0, 1]
    # frob[k] = x^(p^k) mod f
    frob = [_pmod(x, f, p)]
    for _ in range(deg):
        frob.append(_ppowmod(frob[-1], p, f, p))
    if _psub(frob[deg], _pmod(x, f, p), p):
        return False
    for r, _ in factorize(deg).factors:
        g = _pgcd(f, _psub(frob[deg // r], x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree over GF(p).

    Returned as the full coefficient tuple (c_0, ..., c_{degree-1}, 1).
    """
    for low in itertools.product(range(p), repeat=degree):
        if low[0] == 0:
            continue  # divisible by t
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {degree} over GF({p})")


# --- field context -----------------------------------------------------------


class FieldCtx:
    """GF(q^2) with q = p^n.  Build through :func:`build_field`."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p**n
        self.degree = 2 * n
        self.element_count = self.q * self.q
        self.modulus = smallest_irreducible(p, self.degree)
        self._order = self.element_count - 1
        self._pw = [p**k for k in range(self.degree)]
        self._digits = [self._code_digits(c) for c in range(self.element_count)]
        self._build_tables()
        self._alpha = None
        self._a = None

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, q={self.q})"

    def __reduce__(self):
        return (build_field, (self.q,))

    # construction helpers

    def _code_digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def _encode(self, digits: Iterable[int]) -> int:
        return sum((d % self.p) * w for d, w in zip(digits, self._pw))

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmulmod(
            _ptrim(list(self._digits[a])), _ptrim(list(self._digits[b])), list(self.modulus), self.p
        )
        return self._encode(prod)

    def _build_tables(self) -> None:
        order = self._order
        cofactors = [order // r for r, _ in factorize(order).factors]
        mod = list(self.modulus)
        gen = None
        for code in range(2, self.element_count):
            poly = _ptrim(list(self._digits[code]))
            if all(_ppowmod(poly, e, mod, self.p) != [1] for e in cofactors):
                gen = code
                break
        if gen is None:  # q^2 = p^2 with p=... never happens for q >= 5
            raise AssertionError("no primitive element found")
        exp = [0] * order
        log = [-1] * self.element_count
        cur = 1
        for k in range(order):
            exp[k] = cur
            log[cur] = k
            cur = self._slow_mul(cur, gen)
        if cur != 1:
            raise AssertionError("primitive element has wrong order")
        self.generator_code = gen
        self.exp_table = exp
        self.log_table = log

    # raw code arithmetic (hot loops use these directly)

    def add_codes(self, a: int, b: int) -> int:
        p = self.p
        return sum(((x + y) % p) * w for x, y, w in zip(self._digits[a], self._digits[b], self._pw))

    def neg_code(self, a: int) -> int:
        p = self.p
        return sum(((-x) % p) * w for x, w in zip(self._digits[a], self._pw))

    def sub_codes(self, a: int, b: int) -> int:
        p = self.p
        return sum(((x - y) % p) * w for x, y, w in zip(self._digits[a], self._digits[b], self._pw))

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self._order]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        return self.exp_table[-self.log_table[a] % self._order]

    def pow_code(self, a: int, k: int) -> int:
        if a == 0:
            if k <= 0:
                raise DomainError(f"0 ** {k} is undefined")
            return 0
        k %= self._order
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul_codes(result, base)
            base = self.mul_codes(base, base)
            k >>= 1
        return result

    def is_base_code(self, a: int) -> bool:
        # e^q = e  <=>  e = 0 or log(e) divisible by q+1
        return a == 0 or self.log_table[a] % (self.q + 1) == 0

    # element-level API

    def element(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        """Coerce an int (image of ZZ -> GF(p)), coefficient sequence or element."""
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise InvalidParameter("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) != self.degree or any(not 0 <= c < self.p for c in coeffs):
            raise InvalidParameter(f"need {self.degree} residues in [0, {self.p})")
        return FieldElement(self, self._encode(coeffs))

    def from_code(self, code: int) -> FieldElement:
        if not 0 <= code < self.element_count:
            raise InvalidParameter(f"code {code} out of range")
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self.generator_code)

    def elements(self) -> Iterator[FieldElement]:
        """All q^2 elements in enumeration order."""
        for code in range(self.element_count):
            yield FieldElement(self, code)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, self.add_codes(a.code, b.code))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, self.sub_codes(a.code, b.code))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, self.mul_codes(a.code, b.code))

    def inv(self, a: FieldElement) -> FieldElement:
        return FieldElement(self, self.inv_code(a.code))

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, self.mul_codes(a.code, self.inv_code(b.code)))

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        return FieldElement(self, self.pow_code(a.code, k))

    def frobenius(self, a: FieldElement) -> FieldElement:
        """e -> e^q, the generator of Gal(GF(q^2)/GF(q))."""
        return FieldElement(self, self.pow_code(a.code, self.q))

    def norm_to_base(self, a: FieldElement) -> FieldElement:
        return FieldElement(self, self.pow_code(a.code, self.q + 1) if a.code else 0)

    def is_in_base(self, a: FieldElement) -> bool:
        return self.is_base_code(a.code)

    def base_field(self) -> list[FieldElement]:
        """The q elements of GF(q), in enumeration order."""
        return [FieldElement(self, c) for c in range(self.element_count) if self.is_base_code(c)]

    def roots_of_unity(self, k: int) -> list[FieldElement]:
        """All e with e^k = 1, in enumeration order."""
        return [
            FieldElement(self, c)
            for c in range(1, self.element_count)
            if self.log_table[c] * k % self._order == 0
        ]

    def special_elements(self) -> tuple[FieldElement, FieldElement]:
        """(alpha, a): the first elements with alpha^2 = -1 and a^(q+1) = -1."""
        if self._alpha is None:
            minus_one = self.p - 1
            self._alpha = next(
                c for c in range(1, self.element_count) if self.pow_code(c, 2) == minus_one
            )
            self._a = next(
                c
                for c in range(1, self.element_count)
                if self.pow_code(c, self.q + 1) == minus_one
            )
        return FieldElement(self, self._alpha), FieldElement(self, self._a)


class FieldElement:
    """An element of a :class:`FieldCtx`.  Immutable; equality is coefficientwise."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx._digits[self.code]

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise InvalidParameter("elements from different fields")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.code))

    def __bool__(self):
        return self.code != 0

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add_codes(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub_codes(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub_codes(o, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg_code(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_codes(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_codes(self.code, self.ctx.inv_code(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_codes(o, self.ctx.inv_code(self.code)))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow_code(self.code, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv_code(self.code))

    def __repr__(self):
        return f"GF({self.ctx.q}^2)[{','.join(map(str, self.coeffs))}]"

    def __str__(self):
        return ",".join(map(str, self.coeffs))


@functools.lru_cache(maxsize=None)
def build_field(q: int) -> FieldCtx:
    """Context for GF(q^2).  q must be an odd prime power >= 5."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise InvalidParameter(f"q must be an integer, got {q!r}")
    if q < 5:
        raise InvalidParameter(f"q must be at least 5, got {q}")
    if q % 2 == 0:
        raise InvalidParameter(f"q must be odd, got {q}")
    pn = prime_power(q)
    if pn is None:
        raise InvalidParameter(f"q = {q} is not a prime power")
    return FieldCtx(*pn)
