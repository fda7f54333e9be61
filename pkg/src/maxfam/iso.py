"""Isomorphism classes of the family, computed modulo d = (q+1)/2.

Two canonical indices i1, i2 name isomorphic fields iff i1 = i2 or one of

    i1*i2 = 1,  i1*i2 + i1 + i2 = 0,  i1*i2 + i1 + 1 = 0,  i1*i2 + i2 + 1 = 0   (mod d).

Everything in this module works with d directly, so counting identities can be
checked for many more d than there are convenient prime powers q.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistency, InvalidIndex, InvalidParameter
from .ntheory import FactoredInt, factorize


def _check_d(d: int, minimum: int = 5) -> None:
    if not isinstance(d, int) or d % 2 == 0 or d < minimum:
        raise InvalidParameter(f"d must be an odd integer >= {minimum}, got {d!r}")


def valid_indices(d: int) -> list[int]:
    """Canonical indices {i in [1, (d-1)/2] : gcd(i(i+1), d) = 1}."""
    _check_d(d)
    return [i for i in range(1, (d - 1) // 2 + 1) if math.gcd(i * (i + 1), d) == 1]


def _require_canonical(i: int, d: int) -> None:
    if not 1 <= i <= (d - 1) // 2 or math.gcd(i * (i + 1), d) != 1:
        raise InvalidParameter(f"{i} is not a canonical valid index for d = {d}")


def congruences(i1: int, i2: int, d: int) -> tuple[bool, bool, bool, bool]:
    """Which of the four isomorphism congruences hold for the ordered pair (i1, i2)."""
    p = i1 * i2
    return (
        (p - 1) % d == 0,
        (p + i1 + i2) % d == 0,
        (p + i1 + 1) % d == 0,
        (p + i2 + 1) % d == 0,
    )


def are_isomorphic(i1: int, i2: int, d: int) -> bool:
    _check_d(d)
    _require_canonical(i1, d)
    _require_canonical(i2, d)
    return i1 == i2 or any(congruences(i1, i2, d))


def partners(i: int, d: int) -> set[int]:
    """All canonical j != i related to i by one of the four congruences.

    Each congruence is linear in j with a unit coefficient (i or i+1), so it has
    exactly one solution mod d; it counts only if that residue is canonical.
    """
    inv_i = pow(i, -1, d)
    inv_i1 = pow(i + 1, -1, d)
    cands = (
        inv_i,  # i j = 1
        -i * inv_i1,  # j (i+1) = -i
        -(i + 1) * inv_i,  # i j = -(i+1)
        -inv_i1,  # j (i+1) = -1
    )
    half = (d - 1) // 2
    out = set()
    for j in cands:
        j %= d
        if 1 <= j <= half and j != i and math.gcd(j * (j + 1), d) == 1:
            out.add(j)
    return out


@dataclass(frozen=True)
class IsoPartition:
    d: int
    classes: tuple[tuple[int, ...], ...]
    singleton_indices: tuple[int, ...]
    pair_class: tuple[int, ...] | None

    @property
    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(len(c) for c in self.classes).items()))

    def class_of(self, i: int) -> tuple[int, ...]:
        for c in self.classes:
            if i in c:
                return c
        raise KeyError(i)


def _powmod_vec(base: np.ndarray, e: int, d: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % d
    while e:
        if e & 1:
            result = result * b % d
        b = b * b % d
        e >>= 1
    return result


_VEC_LIMIT = 2**31


def _components(d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(indices, component labels, partner positions) for valid_indices(d).

    Partner positions is an (n, 4) array, one column per congruence, -1 where the
    solution is not a canonical index other than i itself.  Labels are the
    smallest index in each connected component.
    """
    if d >= _VEC_LIMIT:
        raise InvalidParameter(f"d = {d} too large for class enumeration")
    units = _unit_mask(d)
    half = (d - 1) // 2
    i = np.flatnonzero(units[1 : half + 1] & units[2 : half + 2]).astype(np.int64) + 1
    phi = int(np.count_nonzero(units[:d]))
    inv_i = _powmod_vec(i, phi - 1, d)
    inv_i1 = _powmod_vec(i + 1, phi - 1, d)
    cands = np.stack(
        [inv_i, (-i * inv_i1) % d, (-(i + 1) * inv_i) % d, (-inv_i1) % d], axis=1
    )
    pos = np.full(d, -1, dtype=np.int64)
    pos[i] = np.arange(len(i))
    partner = pos[cands]
    partner[cands == i[:, None]] = -1
    labels = i.copy()
    while True:
        new = labels.copy()
        for k in range(4):
            col = partner[:, k]
            ok = col >= 0
            new[ok] = np.minimum(new[ok], labels[col[ok]])
        if np.array_equal(new, labels):
            break
        labels = new
    return i, labels, partner


def _check_transitive(d: int, i: np.ndarray, labels: np.ndarray, partner: np.ndarray) -> None:
    # partners always lie in the own class, so the relation is transitive exactly
    # when every index is directly related to all other members of its class
    s = np.sort(partner, axis=1)
    distinct = (s[:, 0] >= 0).astype(np.int64)
    for k in range(1, 4):
        distinct += (s[:, k] >= 0) & (s[:, k] != s[:, k - 1])
    sizes = np.bincount(labels, minlength=d)[labels]
    bad = np.flatnonzero(sizes - 1 != distinct)
    if len(bad):
        k = int(bad[0])
        raise InternalInconsistency(
            f"d={d}: index {int(i[k])} is related to {int(distinct[k])} of the "
            f"{int(sizes[k]) - 1} other members of its class"
        )


def partition_classes(d: int) -> IsoPartition:
    """Connected components of the congruence relation on valid_indices(d).

    The relation must already be an equivalence; any pair joined only through
    transitive closure raises InternalInconsistency.
    """
    _check_d(d, 7)
    i, labels, partner = _components(d)
    _check_transitive(d, i, labels, partner)
    groups: dict[int, list[int]] = {}
    for idx, lab in zip(i.tolist(), labels.tolist()):
        groups.setdefault(lab, []).append(idx)
    classes = tuple(tuple(g) for _, g in sorted(groups.items()))
    singles = tuple(c[0] for c in classes if len(c) == 1)
    pairs = [c for c in classes if len(c) == 2]
    return IsoPartition(d, classes, singles, pairs[0] if len(pairs) == 1 else None)


@dataclass(frozen=True)
class ClassStats:
    """Summary of a partition without materialising every class."""

    d: int
    n_classes: int
    size_histogram: dict[int, int]
    singletons: tuple[int, ...]
    pairs: tuple[tuple[int, ...], ...]


def class_stats(d: int) -> ClassStats:
    """Same enumeration as partition_classes, summarised; used by large sweeps."""
    _check_d(d, 7)
    i, labels, partner = _components(d)
    _check_transitive(d, i, labels, partner)
    counts = np.bincount(labels, minlength=d)
    roots = np.flatnonzero(counts)
    hist = Counter(counts[roots].tolist())
    singles = tuple(roots[counts[roots] == 1].tolist())
    pair_roots = roots[counts[roots] == 2]
    pairs = tuple(tuple(i[labels == r].tolist()) for r in pair_roots.tolist())
    return ClassStats(d, len(roots), dict(sorted(hist.items())), singles, pairs)


# --- counting -----------------------------------------------------------------


def _closed_form_pi(f: FactoredInt) -> int:
    exps = dict(f.factors)
    if exps.get(3, 0) >= 2:
        return 0
    m1 = sum(1 for p in f.primes if p % 3 == 1)
    m2 = sum(1 for p in f.primes if p % 3 == 2)
    if m2 >= 1:
        return 0
    if m1 == 0:
        raise InvalidParameter(f"pi(d) closed form needs d > 3, got {f.value}")
    return 2 ** (m1 - 1)


def _brute_pi(d: int) -> int:
    i = np.arange(1, (d - 3) // 2 + 1, dtype=np.int64)
    return int(np.count_nonzero((i * (i + 1) + 1) % d == 0))


def pi_count(d: int, mode: str = "closed_form") -> int:
    """Number of solutions of i^2 + i + 1 = 0 (mod d) with 1 <= i <= (d-3)/2."""
    _check_d(d, 7)
    if mode == "closed_form":
        return _closed_form_pi(factorize(d))
    if mode == "brute_force":
        return _brute_pi(d)
    raise InvalidParameter(f"unknown mode {mode!r}")


def _unit_mask(d: int) -> np.ndarray:
    """mask[k] is True iff gcd(k, d) = 1, for k in [0, d]; divisors found by trial."""
    ks = np.arange(2, math.isqrt(d) + 1)
    small = ks[d % ks == 0]
    mask = np.ones(d + 1, dtype=bool)
    mask[::d] = False
    for k in small.tolist():
        mask[::k] = False
        mask[:: d // k] = False
    return mask


def _brute_phi2(d: int) -> int:
    m = _unit_mask(d)
    return int(np.count_nonzero(m[:d] & m[1:]))


def phi2(d: int, mode: str = "closed_form") -> int:
    """#{i in [0, d-1] : gcd(i(i+1), d) = 1}."""
    _check_d(d)
    if mode == "closed_form":
        out = 1
        for p, e in factorize(d).factors:
            out *= p ** (e - 1) * (p - 2)
        return out
    if mode == "brute_force":
        return _brute_phi2(d)
    raise InvalidParameter(f"unknown mode {mode!r}")


def class_count(d: int, mode: str = "formula") -> int:
    """Number N(d) of isomorphism classes, by formula or by enumeration."""
    _check_d(d, 7)
    if mode == "formula":
        num = phi2(d) + 4 * pi_count(d) + 3
        if num % 6:
            raise InternalInconsistency(f"d={d}: (phi2 + 4 pi + 3) = {num} is not divisible by 6")
        return num // 6
    if mode == "enumeration":
        return class_stats(d).n_classes
    raise InvalidParameter(f"unknown mode {mode!r}")


# --- degree-two subfields -------------------------------------------------------


class SubfieldPattern(enum.Enum):
    ALL_DISTINCT = "AllDistinct"
    TWO_EQUAL = "TwoEqual"
    ALL_EQUAL = "AllEqual"


def canonical_fj(j: int, d: int) -> int:
    """Canonical index of z^d = t^j (t^2+1): the representative of {j, -j-2} mod d
    lying in [1, (d-3)/2], or d-1 (the fixed point of j -> -j-2)."""
    r = j % d
    if math.gcd(r * (r + 2), d) != 1:
        raise InvalidIndex(f"gcd(j(j+2), d) != 1 for j = {j}, d = {d}")
    if r == d - 1:
        return r
    s = (-r - 2) % d
    for cand in (r, s):
        if 1 <= cand <= (d - 3) // 2:
            return cand
    raise InvalidIndex(f"no canonical representative for j = {j}, d = {d}")


@dataclass(frozen=True)
class SubfieldCase:
    """One of the three involution-fixed subfields, before canonical reduction."""

    case: str  # "Sigma0", "Case1" .. "Case4"
    j: int  # exponent of the intermediate F_i-type curve (Sigma0: the index i itself)
    j0: int | None  # the inverse that selected the case, if any
    fj: int  # raw index of the F_j-type target, 2j


def subfield_cases(i: int, d: int) -> tuple[SubfieldCase, SubfieldCase, SubfieldCase]:
    """The sigma_0 subfield plus the Case 1/2 (inverse of i) and Case 3/4 (inverse of i+1) ones."""
    half = (d - 1) // 2
    sigma0 = SubfieldCase("Sigma0", i, None, 2 * i)
    j0 = pow(i, -1, d)
    if j0 <= half:
        inv = SubfieldCase("Case1", j0, j0, 2 * j0)
    else:
        j = d - (j0 + 1)
        inv = SubfieldCase("Case2", j, j0, 2 * j)
    j0 = pow(i + 1, -1, d)
    if j0 <= half:
        j = j0 - 1
        inv1 = SubfieldCase("Case3", j, j0, 2 * j)
    else:
        j = d - j0
        inv1 = SubfieldCase("Case4", j, j0, 2 * j)
    return sigma0, inv, inv1


@dataclass(frozen=True)
class SubfieldProfile:
    i: int
    d: int
    fj_indices: tuple[int, int, int]  # (sigma0, Case1/2, Case3/4), canonical
    pattern: SubfieldPattern

    @property
    def has_roquette(self) -> bool:
        """Whether F_{d-1} (the only index fixed by j -> -j-2) occurs."""
        return self.d - 1 in self.fj_indices


def subfield_indices(i: int, d: int) -> SubfieldProfile:
    _check_d(d, 7)
    _require_canonical(i, d)
    idx = tuple(canonical_fj(c.fj, d) for c in subfield_cases(i, d))
    distinct = len(set(idx))
    pattern = {3: SubfieldPattern.ALL_DISTINCT, 2: SubfieldPattern.TWO_EQUAL}.get(
        distinct, SubfieldPattern.ALL_EQUAL
    )
    return SubfieldProfile(i, d, idx, pattern)
