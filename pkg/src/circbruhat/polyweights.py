"""Sparse integer polynomials in a1..an and the cyclic cover weights.

Terms live in a dict keyed by dense exponent tuples; coefficients are Python
ints, so nothing ever overflows.  Zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "MPoly",
    "CyclicInterval",
    "cover_weight",
    "interval_weight",
    "is_r_good",
    "evaluate_all_ones",
    "alpha_sum",
]


class MPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], int] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coef:
                clean[exps] = clean.get(exps, 0) + int(coef)
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> MPoly:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: int) -> MPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> MPoly:
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, i: int, nvars: int) -> MPoly:
        """The variable a_i (1-indexed)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} outside [1, {nvars}]")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, indices: Iterable[int], nvars: int) -> MPoly:
        """Sum of a_i over ``indices`` (each with coefficient one)."""
        terms: dict[tuple[int, ...], int] = {}
        for i in indices:
            exps = [0] * nvars
            exps[i - 1] = 1
            terms[tuple(exps)] = terms.get(tuple(exps), 0) + 1
        return cls(nvars, terms)

    def _check(self, other: MPoly):
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> MPoly:
        if isinstance(other, int):
            return MPoly.constant(self.nvars, other)
        self._check(other)
        return other

    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return self.scale(-1)

    def __sub__(self, other) -> MPoly:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> MPoly:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> MPoly:
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> MPoly:
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.constant(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exps: Iterable[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def render(self, sep: str = " + ") -> str:
        """Text like ``2*a1^2*a2 + a3``."""
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in self.sorted_terms():
            factors = [
                f"a{i}" if e == 1 else f"a{i}^{e}"
                for i, e in enumerate(exps, start=1)
                if e
            ]
            if not factors:
                parts.append(str(coef))
            elif coef == 1:
                parts.append("*".join(factors))
            elif coef == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{coef}*" + "*".join(factors))
        return sep.join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.render()!r})"

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coef": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: list[dict]) -> MPoly:
        return cls(nvars, {tuple(t["exps"]): int(t["coef"]) for t in data})


def alpha_sum(n: int) -> MPoly:
    """a1 + ... + an."""
    return MPoly.linear(range(1, n + 1), n)


@dataclass(frozen=True)
class CyclicInterval:
    """The indices i, i+1, ..., j-1 read cyclically in [n]."""

    i: int
    j: int
    n: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("cyclic interval needs i != j")
        if not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise ValueError(f"endpoints ({self.i}, {self.j}) outside [1, {self.n}]")

    def members(self) -> list[int]:
        if self.i < self.j:
            return list(range(self.i, self.j))
        return list(range(self.i, self.n + 1)) + list(range(1, self.j))

    def __contains__(self, r: int) -> bool:
        r = (r - 1) % self.n + 1
        if self.i < self.j:
            return self.i <= r < self.j
        return r >= self.i or r < self.j


def cover_weight(i: int, j: int, n: int) -> MPoly:
    return MPoly.linear(CyclicInterval(i, j, n).members(), n)


def interval_weight(i: int, j: int, nvars: int) -> MPoly:
    """a_i + ... + a_{j-1} for i < j, no wrap-around (the finite Bruhat weight)."""
    if not 1 <= i < j <= nvars + 1:
        raise ValueError(f"need 1 <= i < j <= {nvars + 1}, got ({i}, {j})")
    return MPoly.linear(range(i, j), nvars)


def is_r_good(i: int, j: int, n: int, r: int) -> bool:
    return r in CyclicInterval(i, j, n)


def evaluate_all_ones(a: MPoly) -> int:
    return sum(a.terms.values())
