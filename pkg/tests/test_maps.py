import pytest

from maxfam.curve import valid_curves, validate_index
from maxfam.errors import CaseNotApplicable, InvalidParameter, NotFound
from maxfam.gf import build_field
from maxfam.iso import canonical_fj, congruences
from maxfam.maps import (
    CoordinateRing,
    MonomialMap,
    aut_order,
    aut_structure,
    compose,
    conjugation_cycle,
    h_group,
    identity_map,
    in_h,
    inverse,
    is_three_cycle,
    maps_equal_on_curve,
    order_on_curve,
    preserves_relation,
    relation_residue,
    standard_map,
    subfield_generators,
)


@pytest.fixture(scope="module")
def F13():
    return build_field(13)


# --- ring arithmetic ---------------------------------------------------------


def test_relation_reduces_to_zero():
    for q, e in ((13, 1), (13, 2), (25, 5), (9, -3)):
        assert CoordinateRing(build_field(q), e).relation().is_zero()


def test_one_rewrite_step(F13):
    R = CoordinateRing(F13, 2)
    lhs = R.monomial(1, 0, 15)
    rhs = R.monomial(1, 6, 1) + R.monomial(1, 4, 1)
    assert lhs == rhs


def test_inverse_of_y(F13):
    R = CoordinateRing(F13, 1)
    assert R.monomial(1, 0, -1) * R.y() == R.one()
    assert (R.monomial(3, -2, -5) * R.monomial(F13.element(3).inverse(), 2, 5)) == 1


def test_f_denominators_cancel(F13):
    R = CoordinateRing(F13, 1)
    f = R.monomial(1, 2, 0) + 1
    inv_xf = R.monomial(1, 0, -14)  # y^-(q+1) = 1 / (x^2 f)
    assert inv_xf.B == 1
    assert inv_xf * f == R.monomial(1, -2, 0)
    assert (inv_xf * f).B == 0
    assert R.monomial(1, 0, -15) * f * R.y() == R.monomial(1, -2, 0)


def test_ring_is_commutative_and_distributive(F13):
    R = CoordinateRing(F13, 3)
    a = R.monomial(5, -1, 7) + R.monomial(2, 3, 20)
    b = R.monomial(7, 2, -3) - R.y()
    c = R.x() + R.monomial(11, 0, -16)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


def test_evaluation_is_a_homomorphism(F13):
    R = CoordinateRing(F13, 2)
    a = R.monomial(5, -1, 7) + R.monomial(2, 3, -20)
    b = R.monomial(7, 2, -3) - R.y()
    F = F13
    for x, y in R.sample_points(16):
        assert (a * b).evaluate(x, y) == F.mul_codes(a.evaluate(x, y), b.evaluate(x, y))
        assert (a + b).evaluate(x, y) == F.add_codes(a.evaluate(x, y), b.evaluate(x, y))


def test_sample_points_lie_on_curve(F13):
    R = CoordinateRing(F13, 2)
    pts = R.sample_points()
    assert len(pts) == 64 and len(set(pts)) == 64
    F = F13
    for x, y in pts:
        x2 = F.mul_codes(x, x)
        assert F.pow_code(y, 14) == F.mul_codes(F.pow_code(x2, 2), F.add_codes(x2, 1))
        assert F.add_codes(x2, 1) != 0


# --- composition ----------------------------------------------------------------


def test_compose_with_identity(F13):
    m = standard_map("iso3", {"i": 1, "j": 3}, F13)
    ident = identity_map(F13)
    for out in (compose(m, ident), compose(ident, m)):
        assert out.exponents == m.exponents and (out.cx, out.cy) == (m.cx, m.cy)


def test_pi_squared_is_literally_identity(F13):
    p = standard_map("pi", {}, F13)
    pp = compose(p, p)
    assert pp.exponents == ((1, 0), (0, 1)) and pp.cx == 1 and pp.cy == 1


def test_omega_cubed_is_literally_identity(F13):
    w = standard_map("omega", {"i": 2}, F13)
    w3 = compose(w, compose(w, w))
    assert w3.exponents == ((1, 0), (0, 1)) and w3.cx == 1 and w3.cy == 1


def test_inverse_is_literal(F13):
    m = standard_map("iso1", {"i": 2, "j": 4}, F13)
    for out in (compose(inverse(m), m), compose(m, inverse(m))):
        assert out.exponents == ((1, 0), (0, 1)) and out.cx == 1 and out.cy == 1
    with pytest.raises(InvalidParameter):
        inverse(MonomialMap(F13.one, 2, 0, F13.one, 0, 1))


def test_shift_composed_with_inverse_has_order_one():
    c = validate_index(25, 2)
    s = standard_map("shift", {"i": 2, "m": 3}, c.field)
    assert preserves_relation(s)
    assert order_on_curve(compose(s, inverse(s)), c) == 1


def test_reflect_and_shift_preserve_relation(F13):
    assert preserves_relation(standard_map("reflect", {"j": 3, "m": 1}, F13))  # i = 7-3-1 = 3
    assert preserves_relation(standard_map("reflect", {"j": 1, "m": 2}, F13))  # i = 12
    assert preserves_relation(standard_map("shift", {"i": 1, "m": -2}, F13))


# --- standard maps ------------------------------------------------------------------


@pytest.mark.parametrize("q", [13, 17, 25])
def test_every_congruence_map_preserves_relation(q):
    F = build_field(q)
    idx = [c.i for c in valid_curves(q)]
    d = (q + 1) // 2
    for i in idx:
        for j in idx:
            for kind, held in zip(("iso1", "iso3", "iso2", "iso4"), congruences(i, j, d)):
                if held:
                    assert preserves_relation(standard_map(kind, {"i": i, "j": j}, F))


def test_iso_maps_hold_for_raw_indices():
    F = build_field(25)
    # 2 * 20 = 40 = 1 mod 13 with j outside the canonical range
    assert preserves_relation(standard_map("iso1", {"i": 2, "j": 20}, F))


def test_side_conditions(F13):
    with pytest.raises(InvalidParameter):
        standard_map("iso1", {"i": 1, "j": 2}, F13)
    with pytest.raises(InvalidParameter):
        standard_map("omega", {"i": 1}, F13)
    with pytest.raises(InvalidParameter):
        standard_map("h", {"sign": 1, "b": F13.generator}, F13)
    with pytest.raises(InvalidParameter):
        standard_map("pi", {"i": 2}, F13)
    with pytest.raises(InvalidParameter):
        standard_map("rotate", {}, F13)


def test_literal_second_map_with_unswapped_indices_fails():
    # the displayed form of map (2) only works with i and j exchanged
    F = build_field(25)
    _, a = F.special_elements()
    i, j, d = 2, 5, 13
    r = (i * j + i + 1) // d
    lit = MonomialMap((a**d).inverse(), j, -d, (a**i).inverse(), r, -(i + 1), "lit", j, i)
    assert not preserves_relation(lit)
    assert preserves_relation(standard_map("iso2", {"i": i, "j": j}, F))


def test_negative_control_fails_everywhere():
    for q in (9, 13, 17, 25):
        F = build_field(q)
        for c in valid_curves(q):
            neg = standard_map("negative_control", {"e": c.i}, F)
            assert not preserves_relation(neg)
            assert not relation_residue(neg).is_zero()


def test_h_group(F13):
    c = validate_index(13, 1)
    hs = h_group(c)
    assert len(hs) == 28
    assert all(preserves_relation(h, c, c) for h in hs)
    prim = [b for b in F13.roots_of_unity(14) if all(b**k != 1 for k in range(1, 14))][0]
    assert order_on_curve(standard_map("h", {"b": prim, "i": 1}, F13), c) == 14


def test_orders(F13):
    c1, c2 = validate_index(13, 1), validate_index(13, 2)
    assert order_on_curve(standard_map("omega", {"i": 2}, F13), c2) == 3
    assert order_on_curve(standard_map("pi", {}, F13), c1) == 2
    assert order_on_curve(standard_map("pi_prime", {}, F13), c1) == 2
    omega1 = standard_map("omega1", {}, F13)
    assert preserves_relation(omega1)
    with pytest.raises(NotFound):
        order_on_curve(omega1, c1, max_order=1)


def test_omega_conjugation_is_three_cycle():
    for q, i in ((13, 2), (25, 3)):
        c = validate_index(q, i)
        w = standard_map("omega", {"i": i}, c.field)
        assert is_three_cycle(conjugation_cycle(w, c))


def test_pi_normalises_h_but_is_not_in_h(F13):
    c = validate_index(13, 1)
    p = standard_map("pi", {}, F13)
    assert not in_h(p, c)
    for h in h_group(c)[::5]:
        assert in_h(compose(p, compose(h, p)), c)


def test_omega1_and_h_give_pi_and_pi_prime(F13):
    c = validate_index(13, 1)
    _, a = F13.special_elements()
    w1 = standard_map("omega1", {}, F13)
    got = [compose(standard_map("h", {"sign": s, "b": (a * a).inverse()}, F13), w1) for s in (1, -1)]
    assert maps_equal_on_curve(got[0], standard_map("pi", {}, F13), c)
    assert maps_equal_on_curve(got[1], standard_map("pi_prime", {}, F13), c)


# --- subfields -------------------------------------------------------------------------


def test_subfield_generators_examples():
    c = validate_index(13, 1)
    g = subfield_generators(c, "Sigma0")
    assert g.target_exponent == 2 and g.involution == "sigma0"
    R = CoordinateRing(c.field, 1)
    assert g.t_k == R.monomial(1, 0, 2)
    g4 = subfield_generators(c, "Case4")
    assert canonical_fj(g4.target_exponent, c.d) == c.d - 1
    assert subfield_generators(validate_index(13, 2), "Case2").target_exponent == 4
    with pytest.raises(CaseNotApplicable):
        subfield_generators(c, "Case2")


@pytest.mark.parametrize("q", [13, 17, 25])
def test_three_subfields_per_index(q):
    for c in valid_curves(q):
        found = []
        for case in ("Sigma0", "Case1", "Case2", "Case3", "Case4"):
            try:
                found.append(subfield_generators(c, case).involution)
            except CaseNotApplicable:
                pass
        assert sorted(found) == ["sigma0", "sigma1", "sigma2"]


# --- automorphism group orders ----------------------------------------------------------


def test_aut_order_examples():
    assert aut_order(13, 1) == 56
    assert aut_order(13, 2) == 42
    assert aut_order(5, 1) == 360
    assert aut_order(9, 2) == 40
    assert aut_order(25, 2) == 26
    with pytest.raises(InvalidParameter):
        aut_order(13, 4)


def test_constructed_groups():
    # H_i with pi (or its transport to (d-1)/2) has exactly 4(q+1) elements;
    # with omega it has 6(q+1), twice the stated 3(q+1)
    assert aut_structure(13, 1).constructed_order == 56
    assert aut_structure(13, 3).constructed_order == 56
    s = aut_structure(13, 2)
    assert (s.h_order, s.constructed_order, s.consistent) == (28, 84, False)
    s = aut_structure(25, 2)
    assert (s.constructed_order, s.stated_order) == (52, 26)
    s5 = aut_structure(5, 1)
    assert s5.consistent and s5.constructed_order == 72
