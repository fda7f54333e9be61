import pytest

from maxfam.curve import (
    OMEGA,
    CurveIndex,
    FormalDivisor,
    PlaceLabel,
    canonicalize_index,
    count_places,
    divisor_table,
    hasse_weil_bound,
    is_maximal,
    valid_curves,
    validate_index,
)
from maxfam.errors import InvalidIndex, InvalidParameter, UnsupportedQ


def test_canonicalize_index():
    assert canonicalize_index(1, 7) == 1
    assert canonicalize_index(5, 7) == 1  # -5-1 = -6 = 1
    assert canonicalize_index(4, 7) == 2
    assert canonicalize_index(8, 7) == 1
    with pytest.raises(InvalidIndex):
        canonicalize_index(3, 9)
    with pytest.raises(InvalidIndex):
        canonicalize_index(0, 7)


def test_validate_index_errors():
    with pytest.raises(UnsupportedQ):
        validate_index(7, 1)
    with pytest.raises(InvalidParameter):
        validate_index(12, 1)
    with pytest.raises(InvalidIndex):
        validate_index(17, 2)
    with pytest.raises(InvalidIndex):
        CurveIndex(13, 7, 4)


def test_valid_curves():
    assert [c.i for c in valid_curves(13)] == [1, 2, 3]
    assert [c.i for c in valid_curves(17)] == [1, 4]
    assert [c.i for c in valid_curves(29)] == [1, 7]
    assert [c.i for c in valid_curves(5)] == [1]
    assert valid_curves(5)[0].special


def test_divisors_have_degree_zero_and_dx_has_degree_2g_minus_2():
    for q in (5, 9, 13, 25, 49):
        for c in valid_curves(q):
            dx_, dy_, ddx = divisor_table(c)
            assert dx_.degree == 0 and dy_.degree == 0
            assert ddx.degree == 2 * c.genus - 2
            assert ddx[PlaceLabel.ALPHA] == q


def test_divisor_of_y_matches_relation():
    # (q+1)(y) = 2i(x) + (x^2+1), and (x^2+1) = Alpha + MinusAlpha - 2 Inf
    c = validate_index(25, 3)
    dx_, dy_, _ = divisor_table(c)
    P = PlaceLabel
    f = FormalDivisor({P.ALPHA: c.q + 1, P.MINUS_ALPHA: c.q + 1, P.INF1: -2 * c.d, P.INF2: -2 * c.d})
    assert dy_.scale(c.q + 1).as_dict() == (dx_.scale(2 * c.i) + f).as_dict()
    assert len(OMEGA) == 6


def test_place_counts_frozen():
    assert count_places(validate_index(13, 1)) == 482
    assert count_places(validate_index(5, 1)) == 66
    assert hasse_weil_bound(13, 12) == 482


@pytest.mark.parametrize("q", [5, 9, 13])
def test_fast_count_matches_naive(q):
    for c in valid_curves(q):
        assert count_places(c, "fast") == count_places(c, "naive")


def test_fast_count_partition_over_x():
    from maxfam.curve import affine_count_fast

    c = validate_index(25, 2)
    n = c.field.element_count
    parts = [range(k, n, 7) for k in range(7)]
    assert sum(affine_count_fast(c, p) for p in parts) == affine_count_fast(c)


def test_all_members_maximal_up_to_49():
    for q in (9, 13, 17, 25, 29, 37, 41, 49):
        assert all(is_maximal(c) for c in valid_curves(q))


def test_naive_guard():
    c = validate_index(29, 1)
    with pytest.raises(InvalidParameter):
        count_places(c, "naive")
    with pytest.raises(InvalidParameter):
        count_places(c, "quick")
