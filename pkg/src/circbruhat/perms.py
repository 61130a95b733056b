"""Finite permutations of [n] with the ordinary Bruhat order and the k-Bruhat order.

Everything here speaks 1-indexed one-line notation: ``Permutation((2, 4, 1, 3))``
sends 1 to 2, 2 to 4, and so on.  Products compose right to left, so
``(p * q)(i) == p(q(i))`` and ``p * s_{ij}`` swaps the entries in positions i, j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "all_permutations",
    "length",
    "bruhat_covers_below",
    "is_k_grassmannian",
    "grassmannian_from_subset",
    "k_grassmannians",
    "k_bruhat_leq",
    "k_bruhat_covers_above",
    "k_bruhat_interval",
    "k_bruhat_interval_maximal_chains",
    "k_bruhat_saturated_chains",
]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of [{len(images)}]: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Permutation:
        return cls(tuple(data))

    def to_json(self) -> list[int]:
        return list(self.images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside [1, {self.n}]")
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("cannot compose permutations of different degree")
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for pos, val in enumerate(self.images, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def swap_positions(self, p: int, q: int) -> Permutation:
        """Right multiplication by the transposition s_{p,q}."""
        images = list(self.images)
        images[p - 1], images[q - 1] = images[q - 1], images[p - 1]
        return Permutation(tuple(images))

    def length(self) -> int:
        return length(self)

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of one-line notation."""
    for images in permutations(range(1, n + 1)):
        yield Permutation(images)


def length(p: Permutation) -> int:
    """Number of inversions."""
    w = p.images
    return sum(1 for a, b in combinations(range(len(w)), 2) if w[a] > w[b])


def bruhat_covers_below(p: Permutation) -> list[tuple[Permutation, tuple[int, int]]]:
    """Every ``(p * s_ij, (i, j))`` with i < j that drops the length by exactly one."""
    target = length(p) - 1
    out = []
    for i, j in combinations(range(1, p.n + 1), 2):
        q = p.swap_positions(i, j)
        if length(q) == target:
            out.append((q, (i, j)))
    return out


def is_k_grassmannian(p: Permutation, k: int) -> bool:
    w = p.images
    return all(w[a] < w[a + 1] for a in range(k - 1)) and all(
        w[a] < w[a + 1] for a in range(k, p.n - 1)
    )


def grassmannian_from_subset(subset: Iterable[int], n: int) -> Permutation:
    """The k-Grassmannian permutation whose first k values are ``subset``."""
    subset = list(subset)
    chosen = set(subset)
    if len(chosen) != len(subset):
        raise ValueError(f"duplicate entries in {subset}")
    if not chosen <= set(range(1, n + 1)):
        raise ValueError(f"{sorted(chosen)} is not a subset of [{n}]")
    rest = [v for v in range(1, n + 1) if v not in chosen]
    return Permutation(tuple(sorted(chosen)) + tuple(rest))


def k_grassmannians(k: int, n: int) -> list[Permutation]:
    return [grassmannian_from_subset(c, n) for c in combinations(range(1, n + 1), k)]


def k_bruhat_leq(u: Permutation, v: Permutation, k: int) -> bool:
    if u.n != v.n:
        raise ValueError("permutations of different degree")
    n = u.n
    if any(u.images[i] > v.images[i] for i in range(k)):
        return False
    if any(u.images[j] < v.images[j] for j in range(k, n)):
        return False
    for lo, hi in ((0, k), (k, n)):
        for a, b in combinations(range(lo, hi), 2):
            if u.images[a] < u.images[b] and v.images[a] > v.images[b]:
                return False
    return True


def k_bruhat_covers_above(u: Permutation, k: int) -> list[tuple[Permutation, tuple[int, int]]]:
    """Covers ``u <._k u * s_pq`` with p <= k < q, found by scanning all such (p, q)."""
    w = u.images
    out = []
    for p in range(1, k + 1):
        for q in range(k + 1, u.n + 1):
            lo, hi = w[p - 1], w[q - 1]
            if lo > hi:
                continue
            if any(lo < w[r - 1] < hi for r in range(p + 1, q)):
                continue
            out.append((u.swap_positions(p, q), (p, q)))
    return out


def k_bruhat_interval(u: Permutation, w: Permutation, k: int) -> list[Permutation]:
    """All x in S_n with u <=_k x <=_k w, by brute force over S_n."""
    return [x for x in all_permutations(u.n) if k_bruhat_leq(u, x, k) and k_bruhat_leq(x, w, k)]


def k_bruhat_interval_maximal_chains(u: Permutation, w: Permutation, k: int) -> int:
    if not k_bruhat_leq(u, w, k):
        raise ValueError(f"{u} is not below {w} in the {k}-Bruhat order")
    top_len = length(w)
    memo: dict[Permutation, int] = {w: 1}

    def count(x: Permutation) -> int:
        if x in memo:
            return memo[x]
        total = 0
        if length(x) < top_len:
            for y, _ in k_bruhat_covers_above(x, k):
                if k_bruhat_leq(y, w, k):
                    total += count(y)
        memo[x] = total
        return total

    return count(u)


def k_bruhat_saturated_chains(u: Permutation, w: Permutation, k: int) -> Iterator[list[Permutation]]:
    """Every saturated chain u = x_0 <._k x_1 <._k ... <._k x_m = w, listed explicitly."""
    if u == w:
        yield [u]
        return
    if length(u) >= length(w):
        return
    for y, _ in k_bruhat_covers_above(u, k):
        if k_bruhat_leq(y, w, k):
            for rest in k_bruhat_saturated_chains(y, w, k):
                yield [u] + rest
