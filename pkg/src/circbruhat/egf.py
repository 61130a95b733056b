"""Truncated power series in x and y with exact rational coefficients.

Used to expand the exponential generating function

    sum |CB(k, n)| x^k y^n / n!  =  e^{xy} (x - 1) / (x - e^{y(x - 1)})

which gives the sizes of CB(k, n) independently of any enumeration.  The
quotient is not formally a division by a unit, so it is rewritten: with
g = (e^{y(x-1)} - 1) / (x - 1), which is exact column by column because the
y^m coefficient of e^{y(x-1)} - 1 is (x - 1)^m / m!, one has
x - e^{y(x-1)} = (x - 1)(1 - g) and the generating function is e^{xy} / (1 - g).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

__all__ = ["BiSeries", "cb_cardinalities", "decorated_permutation_count", "DEFAULT_CAP"]

DEFAULT_CAP = 8


class BiSeries:
    """Coefficients c[a][b] of x^a y^b for a <= max_x, b <= max_y."""

    __slots__ = ("max_x", "max_y", "coeffs")

    def __init__(self, max_x: int, max_y: int, coeffs=None):
        self.max_x = max_x
        self.max_y = max_y
        grid = [[Fraction(0)] * (max_y + 1) for _ in range(max_x + 1)]
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, dict) else (
                ((a, b), v) for a, row in enumerate(coeffs) for b, v in enumerate(row)
            )
            for (a, b), v in items:
                if a <= max_x and b <= max_y:
                    grid[a][b] = Fraction(v)
        self.coeffs = tuple(tuple(row) for row in grid)

    @classmethod
    def constant(cls, max_x: int, max_y: int, c=1) -> BiSeries:
        return cls(max_x, max_y, {(0, 0): c})

    @classmethod
    def x(cls, max_x: int, max_y: int) -> BiSeries:
        return cls(max_x, max_y, {(1, 0): 1})

    @classmethod
    def y(cls, max_x: int, max_y: int) -> BiSeries:
        return cls(max_x, max_y, {(0, 1): 1})

    def __getitem__(self, ab: tuple[int, int]) -> Fraction:
        a, b = ab
        return self.coeffs[a][b]

    def _like(self, other) -> BiSeries:
        if isinstance(other, (int, Fraction)):
            return BiSeries.constant(self.max_x, self.max_y, other)
        if (other.max_x, other.max_y) != (self.max_x, self.max_y):
            raise ValueError("series truncated at different orders")
        return other

    def __add__(self, other) -> BiSeries:
        other = self._like(other)
        return BiSeries(
            self.max_x,
            self.max_y,
            [[p + q for p, q in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)],
        )

    __radd__ = __add__

    def __neg__(self) -> BiSeries:
        return self.scale(-1)

    def __sub__(self, other) -> BiSeries:
        return self + (-self._like(other))

    def __rsub__(self, other) -> BiSeries:
        return self._like(other) - self

    def scale(self, c) -> BiSeries:
        return BiSeries(self.max_x, self.max_y, [[c * v for v in row] for row in self.coeffs])

    def __mul__(self, other) -> BiSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._like(other)
        mx, my = self.max_x, self.max_y
        out = [[Fraction(0)] * (my + 1) for _ in range(mx + 1)]
        left = [(a, b, v) for a, row in enumerate(self.coeffs) for b, v in enumerate(row) if v]
        right = [(a, b, v) for a, row in enumerate(other.coeffs) for b, v in enumerate(row) if v]
        for a1, b1, v1 in left:
            for a2, b2, v2 in right:
                a, b = a1 + a2, b1 + b2
                if a <= mx and b <= my:
                    out[a][b] += v1 * v2
        return BiSeries(mx, my, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.max_x, self.max_y, self.coeffs) == (other.max_x, other.max_y, other.coeffs)

    def _nilpotency(self) -> int:
        # a series with zero constant term has a^j == 0 once j exceeds max_x + max_y
        return self.max_x + self.max_y

    def exp(self) -> BiSeries:
        if self[0, 0] != 0:
            raise ValueError("exp needs a series with zero constant term")
        result = BiSeries.constant(self.max_x, self.max_y)
        term = result
        for j in range(1, self._nilpotency() + 1):
            term = (term * self).scale(Fraction(1, j))
            result = result + term
        return result

    def inverse(self) -> BiSeries:
        c = self[0, 0]
        if c == 0:
            raise ZeroDivisionError("series has no inverse: constant term is zero")
        h = 1 - self.scale(1 / c)
        result = BiSeries.constant(self.max_x, self.max_y)
        term = result
        for _ in range(self._nilpotency()):
            term = term * h
            result = result + term
        return result.scale(1 / c)

    def __truediv__(self, other) -> BiSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        return self * self._like(other).inverse()

    def divide_by_x_minus_one(self) -> BiSeries:
        """Exact quotient by (x - 1), taken column by column as polynomials in x.

        Each y-column must be a polynomial fitting inside the x truncation and
        vanishing at x = 1; otherwise the quotient is not exact and this raises.
        """
        out = [[Fraction(0)] * (self.max_y + 1) for _ in range(self.max_x + 1)]
        for b in range(self.max_y + 1):
            col = [self.coeffs[a][b] for a in range(self.max_x + 1)]
            carry = Fraction(0)
            # synthetic division by (x - 1), from the top degree down
            for a in range(self.max_x, 0, -1):
                carry += col[a]
                out[a - 1][b] = carry
            if carry + col[0] != 0:
                raise ArithmeticError(f"y^{b} column is not divisible by (x - 1)")
        return BiSeries(self.max_x, self.max_y, out)

    def __repr__(self):
        terms = [f"{v}*x^{a}*y^{b}" for a, row in enumerate(self.coeffs) for b, v in enumerate(row) if v]
        return f"BiSeries({self.max_x}, {self.max_y}: " + (" + ".join(terms) or "0") + ")"


def cardinality_series(n_max: int) -> BiSeries:
    """The generating function truncated at x^n_max, y^n_max."""
    X, Y = BiSeries.x(n_max, n_max), BiSeries.y(n_max, n_max)
    shifted = (Y * (X - 1)).exp()
    g = (shifted - 1).divide_by_x_minus_one()
    return (X * Y).exp() / (1 - g)


def cb_cardinalities(n_max: int, cap: int = DEFAULT_CAP) -> list[list[int]]:
    """Row n lists |CB(0, n)|, ..., |CB(n, n)| for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > cap:
        raise ValueError(f"n_max={n_max} exceeds the cap {cap}")
    series = cardinality_series(n_max)
    table = []
    for n in range(n_max + 1):
        row = []
        for k in range(n_max + 1):
            value = series[k, n] * factorial(n)
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {value} at k={k}, n={n}")
            if k > n:
                if value != 0:
                    raise ArithmeticError(f"nonzero coefficient {value} at k={k} > n={n}")
                continue
            row.append(int(value))
        table.append(row)
    return table


def decorated_permutation_count(n: int) -> int:
    """Total decorated permutations of [n]: sum over j fixed points of C(n,j) D(n-j) 2^j."""
    derangements = [1, 0]
    for m in range(2, n + 1):
        derangements.append((m - 1) * (derangements[m - 1] + derangements[m - 2]))
    return sum(comb(n, j) * derangements[n - j] * 2**j for j in range(n + 1))
