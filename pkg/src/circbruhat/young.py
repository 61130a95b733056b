"""Young diagrams inside a k x m rectangle and standard tableaux of the rectangle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Iterable

from .perms import (
    Permutation,
    grassmannian_from_subset,
    is_k_grassmannian,
    k_bruhat_covers_above,
    k_bruhat_interval,
)

__all__ = [
    "YoungDiagram",
    "partition_from_subset",
    "subset_from_partition",
    "covers_above",
    "all_diagrams",
    "syt_count_hook",
    "syt_count_chains",
    "verify_grassmannian_anti_isomorphism",
]

DEFAULT_BOX_CAP = 16


@dataclass(frozen=True)
class YoungDiagram:
    """Row lengths, weakly decreasing, zero-padded to exactly k rows of width <= m."""

    rows: tuple[int, ...]
    m: int

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows {list(rows)} are not weakly decreasing")
        if rows and (rows[-1] < 0 or rows[0] > self.m):
            raise ValueError(f"rows {list(rows)} do not fit in width {self.m}")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def to_json(self) -> list[int]:
        return list(self.rows)

    def contains(self, other: YoungDiagram) -> bool:
        return all(a >= b for a, b in zip(self.rows, other.rows))


def partition_from_subset(subset: Iterable[int], k: int, n: int) -> YoungDiagram:
    """p_i = (n - k) - lambda_i + i for lambda_1 < ... < lambda_k."""
    lam = sorted(subset)
    if len(lam) != k or len(set(lam)) != k:
        raise ValueError(f"expected {k} distinct entries, got {lam}")
    if lam and (lam[0] < 1 or lam[-1] > n):
        raise ValueError(f"{lam} is not a subset of [{n}]")
    parts = [(n - k) - li + i for i, li in enumerate(lam, start=1)]
    return YoungDiagram(tuple(sorted(parts, reverse=True)), n - k)


def subset_from_partition(y: YoungDiagram, n: int) -> frozenset[int]:
    k = y.k
    if y.m != n - k:
        raise ValueError(f"diagram width {y.m} does not match n - k = {n - k}")
    # rows are stored decreasing, so rows[i-1] is p_i
    return frozenset((n - k) - p + i for i, p in enumerate(y.rows, start=1))


def covers_above(y: YoungDiagram, k: int | None = None, m: int | None = None) -> list[YoungDiagram]:
    """Diagrams obtained from y by adding one box inside the rectangle."""
    m = y.m if m is None else m
    rows = list(y.rows)
    if k is not None and k != len(rows):
        raise ValueError(f"diagram has {len(rows)} rows, expected {k}")
    out = []
    for a, r in enumerate(rows):
        if r < m and (a == 0 or rows[a - 1] > r):
            bigger = rows.copy()
            bigger[a] += 1
            out.append(YoungDiagram(tuple(bigger), m))
    return out


def all_diagrams(k: int, m: int) -> list[YoungDiagram]:
    out = []

    def grow(prefix: list[int], bound: int):
        if len(prefix) == k:
            out.append(YoungDiagram(tuple(prefix), m))
            return
        for r in range(bound, -1, -1):
            grow(prefix + [r], r)

    grow([], m)
    return out


def syt_count_hook(k: int, m: int) -> int:
    if k < 0 or m < 0:
        raise ValueError("rectangle sides must be nonnegative")
    hooks = prod((k - a) + (m - b) + 1 for a in range(1, k + 1) for b in range(1, m + 1))
    count, rem = divmod(factorial(k * m), hooks)
    assert rem == 0, "hook product must divide (km)!"
    return count


def syt_count_chains(k: int, m: int, cap: int = DEFAULT_BOX_CAP) -> int:
    """Maximal chains of L(k, m), counted by a memoised walk from the empty diagram."""
    if k * m > cap:
        raise ValueError(f"{k}x{m} rectangle exceeds the cap of {cap} boxes")
    full = (m,) * k

    @lru_cache(maxsize=None)
    def count(rows: tuple[int, ...]) -> int:
        if rows == full:
            return 1
        return sum(count(y.rows) for y in covers_above(YoungDiagram(rows, m)))

    return count((0,) * k)


def verify_grassmannian_anti_isomorphism(k: int, n: int) -> bool:
    """w_lambda -> Y_p(lambda) turns k-Bruhat covers of [id, w_max]_k into reversed covers of L(k, n-k)."""
    ident = Permutation.identity(n)
    w_max = grassmannian_from_subset(range(n - k + 1, n + 1), n)
    interval = set(k_bruhat_interval(ident, w_max, k))
    grass = {grassmannian_from_subset(c, n): frozenset(c) for c in combinations(range(1, n + 1), k)}
    if interval != set(grass) or not all(is_k_grassmannian(w, k) for w in interval):
        return False

    to_diagram = {w: partition_from_subset(lam, k, n) for w, lam in grass.items()}
    if set(to_diagram.values()) != set(all_diagrams(k, n - k)):
        return False

    perm_edges = {
        (to_diagram[v], to_diagram[w])
        for w in interval
        for v, _ in k_bruhat_covers_above(w, k)
        if v in interval
    }
    # w <._k v must become Y(v) <. Y(w)
    young_edges = {(y, big) for y in to_diagram.values() for big in covers_above(y)}
    return perm_edges == young_edges
