"""Affine permutations of period n, stored by their window [f(1), ..., f(n)].

Only the pieces needed for bounded affine permutations are here: evaluation
off the window, composition, the average shift, inversion length, the
reflections t_ij, the cyclic shift and the dictionary with decorated
permutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .perms import Permutation

__all__ = [
    "AffinePermutation",
    "DecoratedPermutation",
    "reflection_t",
    "translation",
    "f_top",
    "f_min",
    "from_decorated",
    "embed",
]


@dataclass(frozen=True)
class AffinePermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(v) for v in self.window)
        n = len(window)
        if n == 0:
            raise ValueError("empty window")
        if len({v % n for v in window}) != n:
            raise ValueError(f"window {list(window)} is not a bijection modulo {n}")
        object.__setattr__(self, "window", window)

    @classmethod
    def from_json(cls, data: dict) -> AffinePermutation:
        f = cls(tuple(data["window"]))
        if "n" in data and data["n"] != f.n:
            raise ValueError(f"window length {f.n} does not match n={data['n']}")
        return f

    def to_json(self) -> dict:
        return {"n": self.n, "window": list(self.window)}

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + self.n * q

    def __mul__(self, other: AffinePermutation) -> AffinePermutation:
        if not isinstance(other, AffinePermutation):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("cannot compose affine permutations of different period")
        return AffinePermutation(tuple(self(v) for v in other.window))

    def inverse(self) -> AffinePermutation:
        n = self.n
        inv = [0] * n
        for i, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, n)
            # f(i) = v  =>  f^{-1}(r+1) = i - q*n
            inv[r] = i - q * n
        return AffinePermutation(tuple(inv))

    def av(self) -> int:
        total = sum(v - i for i, v in enumerate(self.window, start=1))
        if total % self.n:
            raise ValueError(f"{self} has non-integral average shift {total}/{self.n}")
        return total // self.n

    def is_bounded(self) -> bool:
        return all(i <= v <= i + self.n for i, v in enumerate(self.window, start=1))

    def length(self) -> int:
        """Inversion classes, one representative (i, j) with i in [n] per class.

        Boundedness gives f(j) >= j, so an inversion partner j of i satisfies
        j < f(i) and the scan over i < j < f(i) is exhaustive.
        """
        if not self.is_bounded():
            raise ValueError(f"length scan requires a bounded element, got {self}")
        count = 0
        for i, fi in enumerate(self.window, start=1):
            count += sum(1 for j in range(i + 1, fi) if self(j) < fi)
        return count

    def anti_excedance_positions(self) -> frozenset[int]:
        n = self.n
        return frozenset(i for i, v in enumerate(self.window, start=1) if v > n)

    def cyclic_shift(self) -> AffinePermutation:
        return AffinePermutation(tuple(self(i) + 1 for i in range(self.n)))

    def to_decorated(self) -> DecoratedPermutation:
        n = self.n
        perm = Permutation(tuple((v - 1) % n + 1 for v in self.window))
        white = frozenset(i for i, v in enumerate(self.window, start=1) if v == i + n)
        return DecoratedPermutation(perm, white)

    def __str__(self):
        return "[" + ",".join(map(str, self.window)) + "]"


@dataclass(frozen=True)
class DecoratedPermutation:
    perm: Permutation
    white: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        white = frozenset(self.white)
        bad = sorted(i for i in white if not 1 <= i <= self.perm.n or self.perm(i) != i)
        if bad:
            raise ValueError(f"white points {bad} are not fixed points of {self.perm}")
        object.__setattr__(self, "white", white)

    @classmethod
    def from_json(cls, data: dict) -> DecoratedPermutation:
        return cls(Permutation(tuple(data["perm"])), frozenset(data.get("white", ())))

    def to_json(self) -> dict:
        return {"perm": self.perm.to_json(), "white": sorted(self.white)}

    def anti_excedances(self) -> frozenset[int]:
        inv = self.perm.inverse()
        return frozenset(i for i in range(1, self.perm.n + 1) if inv(i) > i) | self.white


def from_decorated(d: DecoratedPermutation) -> AffinePermutation:
    n = d.perm.n
    window = []
    for i, v in enumerate(d.perm.images, start=1):
        if v > i:
            window.append(v)
        elif v < i:
            window.append(v + n)
        else:
            window.append(i + n if i in d.white else i)
    return AffinePermutation(tuple(window))


@lru_cache(maxsize=None)
def reflection_t(i: int, j: int, n: int) -> AffinePermutation:
    """t_ij: a transposition of positions when i < j, the r=1 affine reflection when i > j."""
    if i == j:
        raise ValueError("t_ij needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices ({i}, {j}) outside [1, {n}]")
    window = list(range(1, n + 1))
    if i < j:
        window[i - 1], window[j - 1] = j, i
    else:
        window[j - 1], window[i - 1] = i - n, j + n
    return AffinePermutation(tuple(window))


def translation(k: int, n: int) -> AffinePermutation:
    """t_k = [1+n, ..., k+n, k+1, ..., n]."""
    return AffinePermutation(tuple(i + n if i <= k else i for i in range(1, n + 1)))


def f_top(k: int, n: int) -> AffinePermutation:
    return AffinePermutation(tuple(i + k for i in range(1, n + 1)))


def f_min(subset: Iterable[int], n: int) -> AffinePermutation:
    chosen = frozenset(subset)
    return AffinePermutation(tuple(i + n if i in chosen else i for i in range(1, n + 1)))


def embed(p: Permutation | Sequence[int]) -> AffinePermutation:
    """S_n inside the affine group: same window."""
    images = p.images if isinstance(p, Permutation) else tuple(p)
    return AffinePermutation(tuple(images))
