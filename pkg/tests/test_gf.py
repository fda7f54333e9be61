import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxfam.errors import DomainError, InvalidParameter
from maxfam.gf import build_field, is_irreducible, smallest_irreducible


def test_moduli_are_frozen():
    assert build_field(5).modulus == (1, 1, 1)
    assert build_field(13).modulus == (1, 3, 1)
    assert build_field(9).modulus == (1, 0, 1, 1, 1)
    assert build_field(25).modulus == (1, 0, 1, 1, 1)


def test_special_elements_are_frozen():
    for q, alpha, a in [(13, "5,0", "5,0"), (9, "0,2,1,0", "0,0,1,0"), (25, "2,0,0,0", "2,0,0,0")]:
        F = build_field(q)
        al, aa = F.special_elements()
        assert (str(al), str(aa)) == (alpha, a)
        assert al**2 == -1
        assert aa ** (q + 1) == -1


def test_smallest_irreducible_is_smallest():
    # every monic quadratic over GF(13) before (1, 3, 1) in the ordering must be reducible
    p = 13
    for c0, c1 in itertools.product(range(p), repeat=2):
        if (c0, c1) == (1, 3):
            break
        assert not is_irreducible((c0, c1, 1), p)
    assert smallest_irreducible(p, 2) == (1, 3, 1)


def test_table_multiplication_matches_polynomial_oracle():
    F = build_field(9)
    for a in range(F.element_count):
        for b in range(F.element_count):
            assert F.mul_codes(a, b) == F._slow_mul(a, b)


def test_field_axioms_exhaustive_q5():
    F = build_field(5)
    els = list(F.elements())
    assert len(els) == 25
    for a in els:
        assert a + (-a) == 0
        if a:
            assert a * a.inverse() == 1
        for b in els[:10]:
            assert a * b == b * a
            assert (a + b) * b == a * b + b * b


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 168), st.integers(0, 168), st.integers(0, 168))
def test_distributive_and_associative_q13(x, y, z):
    F = build_field(13)
    a, b, c = F.from_code(x), F.from_code(y), F.from_code(z)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert (a + b) - b == a


def test_frobenius_is_an_involution_q9():
    F = build_field(9)
    for a in F.elements():
        assert F.frobenius(F.frobenius(a)) == a
        assert (F.frobenius(a) == a) == F.is_in_base(a)


def test_norm_is_q_plus_1_to_one_q13():
    F = build_field(13)
    counts = {}
    for a in F.elements():
        if a:
            n = F.norm_to_base(a)
            assert F.is_in_base(n)
            counts[n.code] = counts.get(n.code, 0) + 1
    assert len(counts) == 12
    assert set(counts.values()) == {14}


def test_base_field_and_roots_of_unity():
    F = build_field(13)
    assert len(F.base_field()) == 13
    assert len(F.roots_of_unity(14)) == 14
    assert all(b**14 == 1 for b in F.roots_of_unity(14))


def test_pow_of_zero():
    F = build_field(5)
    assert F.zero**3 == 0
    with pytest.raises(DomainError):
        F.zero**0
    with pytest.raises(DomainError):
        F.zero.inverse()


def test_element_coercion_and_repr():
    F = build_field(13)
    assert F.element(-1) == 12
    assert F.element([5, 0]) == F.from_code(5)
    assert str(F.element([3, 7])) == "3,7"
    with pytest.raises(InvalidParameter):
        F.element([13, 0])


@pytest.mark.parametrize("q", [12, 4, 3, 15, 2.5, "9"])
def test_build_field_rejects(q):
    with pytest.raises(InvalidParameter):
        build_field(q)


def test_build_field_is_cached_and_deterministic():
    assert build_field(49) is build_field(49)
    F = build_field(121)
    assert F.element_count == 121**2
    assert F.exp_table[1] == F.generator_code
