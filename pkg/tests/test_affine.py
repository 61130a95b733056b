from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from circbruhat.affine import (
    AffinePermutation,
    DecoratedPermutation,
    embed,
    f_min,
    f_top,
    from_decorated,
    reflection_t,
    translation,
)
from circbruhat.cbposet import enumerate_cb
from circbruhat.perms import Permutation, all_permutations

A = lambda *window: AffinePermutation(window)  # noqa: E731


def shi_length(f: AffinePermutation) -> int:
    """Inversion classes via sum over window pairs of |floor((f(j) - f(i)) / n)|.

    Independent of the windowed scan used by AffinePermutation.length.
    """
    n, w = f.n, f.window
    return sum(abs((w[j] - w[i]) // n) for i, j in combinations(range(n), 2))


def brute_length(f: AffinePermutation, reach: int = 4) -> int:
    """Count pairs (i, j), i in [n], i < j, f(i) > f(j), scanning j up to reach*n past i."""
    n = f.n
    return sum(1 for i in range(1, n + 1) for j in range(i + 1, i + reach * n) if f(i) > f(j))


def test_window_validation():
    with pytest.raises(ValueError):
        A(1, 4, 3)  # 1 and 4 collide mod 3
    with pytest.raises(ValueError):
        AffinePermutation(())


def test_evaluate():
    f = A(3, 6, 5, 9, 7)
    assert f(0) == 2
    assert [f(i) for i in range(1, 6)] == [3, 6, 5, 9, 7]
    assert A(3, 4, 5)(7) == 9
    assert f(-4) == f(1) - 5


@pytest.mark.parametrize("window, k", [((1, 2, 3, 4), 0), ((3, 4, 5), 2), ((3, 6, 5, 9, 7), 3)])
def test_av(window, k):
    assert A(*window).av() == k


def test_av_is_always_integral_for_valid_windows():
    # distinct residues force sum(f(i) - i) to be a multiple of n
    for perm in all_permutations(4):
        for shifts in product(range(-1, 2), repeat=4):
            f = AffinePermutation(tuple(v + 4 * s for v, s in zip(perm.images, shifts)))
            assert f.av() == sum(shifts)


def test_length_examples():
    for k, n in [(2, 3), (2, 5), (3, 6)]:
        assert f_top(k, n).length() == 0
        for lam in combinations(range(1, n + 1), k):
            assert f_min(lam, n).length() == k * (n - k)
    assert A(4, 3, 5).length() == 1


def test_length_requires_bounded():
    with pytest.raises(ValueError):
        A(1, 0, 5).length()


@pytest.mark.parametrize("n", range(1, 7))
def test_length_agrees_with_independent_counts(n):
    for k in range(n + 1):
        for f in enumerate_cb(k, n):
            assert f.length() == shi_length(f) == brute_length(f)


def test_compose_examples():
    f = A(3, 4, 5)
    assert f * A(1, 2, 3) == f
    assert f * reflection_t(1, 2, 3) == A(4, 3, 5)
    assert A(4, 3, 5) * reflection_t(3, 2, 3) == A(4, 2, 6)


def test_compose_adds_av():
    f, g = A(3, 6, 5, 9, 7), A(2, 3, 4, 5, 6)
    assert (f * g).av() == f.av() + g.av()


def test_inverse():
    for f in enumerate_cb(2, 4):
        assert f * f.inverse() == A(1, 2, 3, 4)
        assert f.inverse() * f == A(1, 2, 3, 4)


def test_reflections():
    assert reflection_t(1, 2, 3) == A(2, 1, 3)
    assert reflection_t(3, 2, 3) == A(1, 0, 5)
    # substituting i=3, j=1, n=4: position 1 gets 3-4, position 3 gets 1+4
    assert reflection_t(3, 1, 4) == A(-1, 2, 5, 4)
    for i, j in product(range(1, 5), repeat=2):
        if i != j:
            t = reflection_t(i, j, 4)
            assert t.av() == 0 and t * t == A(1, 2, 3, 4)
    with pytest.raises(ValueError):
        reflection_t(2, 2, 3)
    with pytest.raises(ValueError):
        reflection_t(0, 2, 3)


def test_is_bounded():
    assert f_top(2, 3).is_bounded()
    assert not A(1, 0, 5).is_bounded()
    assert A(3, 6, 5, 9, 7).is_bounded()


def test_anti_excedances():
    assert A(3, 6, 5, 9, 7).anti_excedance_positions() == {2, 4, 5}
    assert f_top(4, 4).anti_excedance_positions() == {1, 2, 3, 4}
    assert A(2, 5, 4, 7).anti_excedance_positions() == {2, 4}


def test_cyclic_shift_examples():
    assert f_top(2, 5).cyclic_shift() == f_top(2, 5)
    g = A(2, 5, 4, 7).cyclic_shift()
    assert g == A(4, 3, 6, 5)
    assert g.is_bounded() and g.av() == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_bound_kn_invariants(n):
    for k in range(n + 1):
        for f in enumerate_cb(k, n):
            assert f.is_bounded() and f.av() == k
            assert len(f.anti_excedance_positions()) == k
            g = f
            for _ in range(n):
                g = g.cyclic_shift()
                assert g.is_bounded() and g.av() == k
                assert g.length() == f.length()
            assert g == f


@pytest.mark.parametrize("n", range(2, 6))
def test_cyclic_shift_conjugates_reflections(n):
    def nxt(i):
        return i % n + 1

    for k in range(n + 1):
        for f in enumerate_cb(k, n):
            for i, j in product(range(1, n + 1), repeat=2):
                if i != j:
                    lhs = (f * reflection_t(i, j, n)).cyclic_shift()
                    assert lhs == f.cyclic_shift() * reflection_t(nxt(i), nxt(j), n)


def test_decorated_examples():
    d = f_min({1, 3}, 4).to_decorated()
    assert d.perm == Permutation.identity(4) and d.white == {1, 3}
    d = A(1, 5, 6).to_decorated()
    assert d.perm == Permutation((1, 2, 3)) and d.white == {2, 3}
    d = A(4, 3, 5).to_decorated()
    assert d.perm == Permutation((1, 3, 2)) and d.white == {1}


def test_from_decorated_examples():
    assert from_decorated(DecoratedPermutation(Permutation.identity(3))) == A(1, 2, 3)
    assert from_decorated(DecoratedPermutation(Permutation((1, 3, 2)), frozenset({1}))) == A(4, 3, 5)
    assert from_decorated(DecoratedPermutation(Permutation((2, 3, 1)))) == A(2, 3, 4)


def test_decorated_rejects_white_non_fixed_point():
    with pytest.raises(ValueError):
        DecoratedPermutation(Permutation((2, 1, 3)), frozenset({1}))


def test_json():
    f = A(2, 5, 4, 7)
    assert f.to_json() == {"n": 4, "window": [2, 5, 4, 7]}
    assert AffinePermutation.from_json({"n": 4, "window": [2, 5, 4, 7]}) == f
    d = A(1, 5, 6).to_decorated()
    assert d.to_json() == {"perm": [1, 2, 3], "white": [2, 3]}
    assert DecoratedPermutation.from_json(d.to_json()) == d


@pytest.mark.parametrize("n", range(1, 7))
def test_decorated_bijection(n):
    decorated = set()
    for perm in all_permutations(n):
        fixed = [i for i in range(1, n + 1) if perm(i) == i]
        for r in range(len(fixed) + 1):
            for white in combinations(fixed, r):
                decorated.add(DecoratedPermutation(perm, frozenset(white)))
    by_k = {}
    for d in decorated:
        f = from_decorated(d)
        assert f.is_bounded()
        assert f.to_decorated() == d
        assert len(d.anti_excedances()) == len(f.anti_excedance_positions())
        by_k.setdefault(len(d.anti_excedances()), set()).add(f)
    for k in range(n + 1):
        assert by_k.get(k, set()) == set(enumerate_cb(k, n))


def test_translation_and_embedding():
    assert translation(2, 4) == A(5, 6, 3, 4)
    assert translation(2, 4).av() == 2
    assert embed(Permutation((2, 1, 3))) == A(2, 1, 3)


@given(st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(st.just(n), st.permutations(range(1, n + 1)), st.lists(st.integers(-2, 2), min_size=n, max_size=n))
))
def test_evaluate_is_periodic(data):
    n, perm, shifts = data
    f = AffinePermutation(tuple(v + n * s for v, s in zip(perm, shifts)))
    for i in range(-2 * n, 2 * n):
        assert f(i + n) == f(i) + n
    assert (f * f.inverse()).window == tuple(range(1, n + 1))
