from itertools import product

import pytest
from hypothesis import given, strategies as st

from circbruhat.polyweights import (
    CyclicInterval,
    MPoly,
    alpha_sum,
    cover_weight,
    evaluate_all_ones,
    interval_weight,
    is_r_good,
)

NV = 3


def a(i, n=NV):
    return MPoly.var(i, n)


@st.composite
def polys(draw, nvars=NV):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, 3)] * nvars),
            st.integers(-10**20, 10**20),
            max_size=5,
        )
    )
    return MPoly(nvars, terms)


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MPoly.zero(NV)
    assert p * MPoly.one(NV) == p


@given(polys(), st.integers(0, 4))
def test_pow_matches_repeated_product(p, e):
    expected = MPoly.one(NV)
    for _ in range(e):
        expected = expected * p
    assert p**e == expected


@given(polys(), polys())
def test_all_ones_is_a_ring_map(p, q):
    assert evaluate_all_ones(p * q) == evaluate_all_ones(p) * evaluate_all_ones(q)
    assert evaluate_all_ones(p + q) == evaluate_all_ones(p) + evaluate_all_ones(q)


def test_no_zero_coefficients_stored():
    p = MPoly(2, {(1, 0): 3, (0, 1): 0})
    assert p.terms == {(1, 0): 3}
    assert (p - p).terms == {}


def test_square_of_alpha_sum():
    sq = alpha_sum(3) ** 2
    assert len(sq) == 6
    assert sq.coefficient((2, 0, 0)) == 1 and sq.coefficient((1, 1, 0)) == 2
    assert alpha_sum(3) ** 0 == MPoly.one(3)


def test_cb23_example_identity():
    a1, a2, a3 = a(1), a(2), a(3)
    total = a1 * a2 + a1 * (a1 + a3) + a2 * (a1 + a2) + a2 * a3 + a3 * a1 + a3 * (a2 + a3)
    assert total == alpha_sum(3) ** 2
    assert evaluate_all_ones(total) == 9


def test_mismatched_nvars():
    with pytest.raises(ValueError):
        MPoly.var(1, 2) + MPoly.var(1, 3)
    with pytest.raises(ValueError):
        MPoly.var(1, 2) * MPoly.var(1, 3)


def test_large_coefficients_are_exact():
    big = MPoly.constant(1, 3**200)
    assert (big * big).coefficient((0,)) == 9**200


def test_cover_weight_examples():
    assert cover_weight(1, 2, 3) == a(1)
    assert cover_weight(3, 2, 3) == a(3) + a(1)
    assert cover_weight(3, 1, 3) == a(3)
    with pytest.raises(ValueError):
        cover_weight(2, 2, 3)


@pytest.mark.parametrize("n", range(2, 8))
def test_cover_weights_partition_the_alphabet(n):
    for i, j in product(range(1, n + 1), repeat=2):
        if i != j:
            assert cover_weight(i, j, n) + cover_weight(j, i, n) == alpha_sum(n)
            expected = j - i if i < j else n - (i - j)
            assert len(cover_weight(i, j, n)) == expected


@pytest.mark.parametrize("n", range(2, 7))
def test_r_good_is_membership_of_alpha_r(n):
    for i, j in product(range(1, n + 1), repeat=2):
        if i == j:
            continue
        w = cover_weight(i, j, n)
        for r in range(-n, 2 * n + 1):
            unit = [0] * n
            unit[(r - 1) % n] = 1
            assert is_r_good(i, j, n, r) == (w.coefficient(unit) == 1)
        assert is_r_good(i, j, n, n) == (i > j)


def test_r_good_examples():
    assert is_r_good(1, 2, 3, 1)
    assert not is_r_good(1, 2, 3, 2)
    assert is_r_good(3, 2, 3, 1)


def test_cyclic_interval_members():
    assert CyclicInterval(2, 4, 5).members() == [2, 3]
    assert CyclicInterval(4, 2, 5).members() == [4, 5, 1]


def test_interval_weight():
    assert interval_weight(1, 3, 3) == a(1) + a(2)
    with pytest.raises(ValueError):
        interval_weight(2, 2, 3)


def test_all_ones():
    assert evaluate_all_ones(alpha_sum(4) ** 3) == 64
    assert evaluate_all_ones(MPoly.zero(4)) == 0


def test_render_and_json():
    p = MPoly(3, {(2, 1, 0): 2, (0, 0, 1): 1})
    assert p.render() == "2*a1^2*a2 + a3"
    assert MPoly.zero(2).render() == "0"
    assert (a(1) + a(3)).render(sep="+") == "a1+a3"
    data = (alpha_sum(3) ** 5).to_json()
    assert all(isinstance(t["coef"], str) for t in data)
    assert MPoly.from_json(3, data) == alpha_sum(3) ** 5
    # graded-lex: higher degree first, then lexicographically larger exponents
    assert [t["exps"] for t in (a(1) + a(2) ** 2 + MPoly.one(3)).to_json()] == [[0, 2, 0], [1, 0, 0], [0, 0, 0]]
