import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_force_count, weyl_dimension
from qsorep.patterns import (
    CLASSICAL,
    NONCLASSICAL,
    HighestWeight,
    dimension,
    enumerate_basis,
    l_coords,
    shift,
    validate_weight,
)
from qsorep.scalars import HalfInt


def hw(n, kind, *entries_twice):
    return HighestWeight(n, kind, tuple(HalfInt(t) for t in entries_twice))


def test_validate_weight_examples():
    assert validate_weight(hw(5, CLASSICAL, 2, 0))
    assert validate_weight(hw(4, NONCLASSICAL, 3, 1))
    assert not validate_weight(hw(3, NONCLASSICAL, 2))  # integral entry
    assert not validate_weight(hw(5, CLASSICAL, 0, 2))  # not decreasing
    assert not validate_weight(hw(4, CLASSICAL, 2, 3))  # mixed parity
    assert validate_weight(hw(4, CLASSICAL, 2, -2))  # signed last slot
    assert not validate_weight(hw(3, CLASSICAL, -2))  # odd rank needs >= 0
    assert not validate_weight(hw(4, NONCLASSICAL, 3, -1))


def test_enumerate_basis_examples():
    b = enumerate_basis(hw(3, CLASSICAL, 2))
    assert b.dim == 3
    assert [p.row(2)[0].twice for p in b.patterns] == [-2, 0, 2]

    assert dimension(hw(5, CLASSICAL, 2, 0)) == 5

    b = enumerate_basis(hw(3, NONCLASSICAL, 3))
    assert b.dim == 2
    assert [str(p.row(2)[0]) for p in b.patterns] == ["1/2", "3/2"]


def test_enumerate_rejects_invalid_weight():
    with pytest.raises(ValueError, match="invalid highest weight"):
        enumerate_basis(hw(3, NONCLASSICAL, 2))


def test_order_is_lexicographic_top_down():
    b = enumerate_basis(hw(5, CLASSICAL, 4, 2))
    keys = [
        tuple(e.twice for row in reversed(pat.rows) for e in row) for pat in b.patterns
    ]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(b.index[p] == i for i, p in enumerate(b.patterns))


def test_l_coords_reference():
    b = enumerate_basis(hw(4, CLASSICAL, 2, 0))
    pat = next(p for p in b.patterns if p.row(3)[0] == 1)
    assert l_coords(pat, 3)[0] == 2  # m + 1 on row 3
    assert l_coords(pat, 2)[0] == pat.row(2)[0]  # row 2 is its own l
    top = l_coords(pat, 4)
    assert (top[0].twice, top[1].twice) == (pat.row(4)[0].twice + 2, pat.row(4)[1].twice)


def test_shift_examples():
    b = enumerate_basis(hw(3, CLASSICAL, 2))
    top = next(p for p in b.patterns if p.row(2)[0] == 1)
    assert shift(top, 2, 1, +1, CLASSICAL) is None
    mid = next(p for p in b.patterns if p.row(2)[0] == 0)
    up = shift(mid, 2, 1, +1, CLASSICAL)
    assert up is not None and up.row(2)[0] == 1

    bn = enumerate_basis(hw(3, NONCLASSICAL, 3))
    low = next(p for p in bn.patterns if p.row(2)[0] == HalfInt(1))
    assert shift(low, 2, 1, -1, NONCLASSICAL) is None


def test_shift_refuses_top_row():
    b = enumerate_basis(hw(3, CLASSICAL, 2))
    with pytest.raises(ValueError):
        shift(b.patterns[0], 3, 1, +1, CLASSICAL)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_shift_round_trip(data):
    weights = [
        hw(4, CLASSICAL, 4, 2),
        hw(5, CLASSICAL, 4, 2),
        hw(4, NONCLASSICAL, 5, 3),
        hw(5, NONCLASSICAL, 5, 1),
    ]
    w = data.draw(st.sampled_from(weights))
    b = enumerate_basis(w)
    pat = data.draw(st.sampled_from(list(b.patterns)))
    k = data.draw(st.integers(2, w.n - 1))
    j = data.draw(st.integers(1, k // 2))
    delta = data.draw(st.sampled_from([+1, -1]))
    moved = shift(pat, k, j, delta, w.kind)
    if moved is not None:
        assert moved in b.index
        back = shift(moved, k, j, -delta, w.kind)
        assert back == pat


@pytest.mark.parametrize(
    "w",
    [
        hw(3, CLASSICAL, 4),
        hw(3, CLASSICAL, 3),
        hw(4, CLASSICAL, 2, 0),
        hw(4, CLASSICAL, 3, 1),
        hw(5, CLASSICAL, 2, 2),
        hw(5, CLASSICAL, 3, 1),
        hw(6, CLASSICAL, 2, 2, 0),
        hw(7, CLASSICAL, 2, 2, 2),
        hw(4, NONCLASSICAL, 5, 1),
        hw(5, NONCLASSICAL, 3, 1),
        hw(6, NONCLASSICAL, 3, 3, 1),
        hw(7, NONCLASSICAL, 3, 1, 1),
    ],
)
def test_dimension_matches_brute_force_box_search(w):
    assert dimension(w) == brute_force_count(w)


@pytest.mark.parametrize(
    "w",
    [
        hw(3, CLASSICAL, 6),
        hw(4, CLASSICAL, 4, 2),
        hw(5, CLASSICAL, 6, 2),
        hw(6, CLASSICAL, 4, 2, 2),
        hw(6, CLASSICAL, 4, 2, -2),
        hw(7, CLASSICAL, 6, 4, 0),
    ],
)
def test_classical_dimension_matches_weyl_formula(w):
    assert dimension(w) == pytest.approx(weyl_dimension(w.n, w.entries))


def test_every_pattern_passes_interlacing_validator():
    from qsorep.patterns import pattern_is_valid

    for w in [hw(5, CLASSICAL, 4, 2), hw(6, NONCLASSICAL, 5, 3, 1)]:
        b = enumerate_basis(w)
        assert all(pattern_is_valid(p, w) for p in b.patterns)


def test_nonclassical_minimal_weight_is_one_dimensional():
    for n in (3, 4, 5, 6, 7):
        w = HighestWeight(n, NONCLASSICAL, tuple(HalfInt(1) for _ in range(n // 2)))
        assert dimension(w) == 1


def test_so3_dimension_is_2j_plus_1():
    for tw in range(0, 13):
        w = HighestWeight(3, CLASSICAL, (HalfInt(2 * tw),))
        assert dimension(w) == 2 * tw + 1
