"""The circular Bruhat order CB(k, n) as an explicit Hasse diagram.

Elements are the bounded affine permutations with average shift k, listed in
lexicographic window order.  An edge ``Cover(upper, lower, i, j)`` records
``lower = upper * t_ij`` with the length going up by one, i.e. upper covers
lower in CB(k, n) (the dual of the length order on Bound(k, n)).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable

from .affine import AffinePermutation, DecoratedPermutation, f_min, f_top, from_decorated, reflection_t
from .perms import all_permutations
from .polyweights import cover_weight

__all__ = [
    "Cover",
    "CBPoset",
    "PosetInvariantError",
    "enumerate_cb",
    "covers_below",
    "build",
    "fiber_subposet",
]

log = logging.getLogger(__name__)


class PosetInvariantError(RuntimeError):
    """Raised when a freshly built CB(k, n) violates one of its structural invariants."""


@dataclass(frozen=True)
class Cover:
    upper: int
    lower: int
    i: int
    j: int


def _check_kn(k: int, n: int):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")


def enumerate_cb(k: int, n: int) -> list[AffinePermutation]:
    """All elements of CB(k, n), sorted by window.

    Walks S_n, colours the fixed points every possible way, lifts to a bounded
    affine permutation and keeps those with exactly k anti-excedances.
    """
    _check_kn(k, n)
    out = []
    for perm in all_permutations(n):
        fixed = [i for i in range(1, n + 1) if perm(i) == i]
        base = n - len(fixed) - sum(1 for i, v in enumerate(perm.images, 1) if v > i)
        # base = number of non-fixed anti-excedances; each white point adds one
        need = k - base
        if not 0 <= need <= len(fixed):
            continue
        for white in combinations(fixed, need):
            out.append(from_decorated(DecoratedPermutation(perm, frozenset(white))))
    out.sort(key=lambda f: f.window)
    return out


def covers_below(f: AffinePermutation, k: int | None = None) -> list[tuple[AffinePermutation, tuple[int, int]]]:
    """Elements covered by f in CB(k, n), with the (i, j) of the reflection used."""
    if k is not None and f.av() != k:
        raise ValueError(f"{f} has average shift {f.av()}, not {k}")
    n = f.n
    target = f.length() + 1
    out = []
    for i, j in product(range(1, n + 1), repeat=2):
        if i == j:
            continue
        g = f * reflection_t(i, j, n)
        if g.is_bounded() and g.length() == target:
            out.append((g, (i, j)))
    return out


def _cover_windows(window: tuple[int, ...]) -> list[tuple[tuple[int, ...], int, int]]:
    return [(g.window, i, j) for g, (i, j) in covers_below(AffinePermutation(window))]


@dataclass(frozen=True, eq=False)
class CBPoset:
    k: int
    n: int
    elements: tuple[AffinePermutation, ...]
    covers: tuple[Cover, ...]
    ranks: tuple[int, ...]
    # set for fiber subposets CB(k, n)_lambda
    fiber: frozenset[int] | None = None
    index: dict[AffinePermutation, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {f: idx for idx, f in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def index_of(self, f: AffinePermutation) -> int:
        try:
            return self.index[f]
        except KeyError:
            raise KeyError(f"{f} is not an element of this poset") from None

    @property
    def max_rank(self) -> int:
        return self.k * (self.n - self.k)

    @cached_property
    def lower_covers(self) -> tuple[tuple[Cover, ...], ...]:
        below: list[list[Cover]] = [[] for _ in self.elements]
        for c in self.covers:
            below[c.upper].append(c)
        return tuple(tuple(cs) for cs in below)

    @cached_property
    def upper_covers(self) -> tuple[tuple[Cover, ...], ...]:
        above: list[list[Cover]] = [[] for _ in self.elements]
        for c in self.covers:
            above[c.lower].append(c)
        return tuple(tuple(cs) for cs in above)

    @cached_property
    def by_rank_descending(self) -> tuple[int, ...]:
        """Element indices ordered from the top rank down (ties by index)."""
        return tuple(sorted(range(len(self.elements)), key=lambda x: (-self.ranks[x], x)))

    @property
    def top(self) -> int:
        return self.index_of(f_top(self.k, self.n))

    @property
    def minimal(self) -> list[int]:
        return [x for x, r in enumerate(self.ranks) if r == 0]

    def maximal(self) -> list[int]:
        return [x for x, cs in enumerate(self.upper_covers) if not cs]

    def to_json(self) -> dict:
        data = {
            "k": self.k,
            "n": self.n,
            "elements": [
                {"window": list(f.window), "rank": r, "decorated": f.to_decorated().to_json()}
                for f, r in zip(self.elements, self.ranks)
            ],
            "covers": [
                {
                    "upper": c.upper,
                    "lower": c.lower,
                    "i": c.i,
                    "j": c.j,
                    "weight": cover_weight(c.i, c.j, self.n).render(sep="+"),
                }
                for c in self.covers
            ],
        }
        if self.fiber is not None:
            data["lambda"] = sorted(self.fiber)
        return data

    def to_dot(self) -> str:
        name = f"CB_{self.k}_{self.n}"
        if self.fiber is not None:
            name += "_lambda_" + "_".join(map(str, sorted(self.fiber)))
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
        for x, f in enumerate(self.elements):
            lines.append(f'  n{x} [label="{f}"];')
        for r in sorted(set(self.ranks), reverse=True):
            members = " ".join(f"n{x};" for x, rr in enumerate(self.ranks) if rr == r)
            lines.append(f"  {{ rank=same; {members} }}")
        for c in self.covers:
            label = cover_weight(c.i, c.j, self.n).render(sep="+")
            lines.append(f'  n{c.upper} -> n{c.lower} [label="{label}", arrowhead=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build(k: int, n: int, jobs: int = 1) -> CBPoset:
    """Materialise CB(k, n) and check its invariants.

    ``jobs > 1`` farms the cover scans out to worker processes; results are
    reassembled in element order so the poset is identical either way.
    """
    _check_kn(k, n)
    elements = enumerate_cb(k, n)
    index = {f: x for x, f in enumerate(elements)}
    windows = [f.window for f in elements]
    if jobs > 1 and len(elements) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(windows) // (4 * jobs))
            scanned = list(pool.map(_cover_windows, windows, chunksize=chunk))
    else:
        scanned = [_cover_windows(w) for w in windows]

    covers = []
    for upper, below in enumerate(scanned):
        for window, i, j in below:
            g = AffinePermutation(window)
            if g not in index:
                raise PosetInvariantError(f"cover {g} of {elements[upper]} is not in CB({k},{n})")
            covers.append(Cover(upper, index[g], i, j))

    top_rank = k * (n - k)
    ranks = tuple(top_rank - f.length() for f in elements)
    poset = CBPoset(k, n, tuple(elements), tuple(covers), ranks)
    _validate(poset)
    log.debug("built CB(%d,%d): %d elements, %d covers", k, n, len(elements), len(covers))
    return poset


def _validate(p: CBPoset):
    k, n = p.k, p.n
    for f in p.elements:
        if not f.is_bounded() or f.av() != k or len(f.anti_excedance_positions()) != k:
            raise PosetInvariantError(f"{f} is not a valid element of CB({k},{n})")
    if min(p.ranks, default=0) < 0:
        raise PosetInvariantError("negative rank")
    tops = [x for x, r in enumerate(p.ranks) if r == p.max_rank]
    if len(tops) != 1 or p.elements[tops[0]] != f_top(k, n):
        raise PosetInvariantError(f"expected unique top {f_top(k, n)}, found {[str(p.elements[x]) for x in tops]}")
    bottoms = {p.elements[x] for x in p.minimal}
    expected = {f_min(c, n) for c in combinations(range(1, n + 1), k)}
    if len(p.minimal) != comb(n, k) or bottoms != expected:
        raise PosetInvariantError(f"rank-0 elements are not the {comb(n, k)} minimal elements f_min")
    for c in p.covers:
        if p.ranks[c.upper] != p.ranks[c.lower] + 1:
            raise PosetInvariantError(f"cover {c} does not drop rank by one")
    for x, cs in enumerate(p.lower_covers):
        if p.ranks[x] > 0 and not cs:
            raise PosetInvariantError(f"{p.elements[x]} has positive rank but covers nothing")


def fiber_subposet(p: CBPoset, subset: Iterable[int]) -> CBPoset:
    """CB(k, n)_lambda with the order generated by its n-good covers (i > j)."""
    lam = frozenset(subset)
    if len(lam) != p.k or not lam <= set(range(1, p.n + 1)):
        raise ValueError(f"lambda must be a {p.k}-subset of [{p.n}], got {sorted(lam)}")
    keep = [x for x, f in enumerate(p.elements) if f.anti_excedance_positions() == lam]
    remap = {old: new for new, old in enumerate(keep)}
    covers = tuple(
        Cover(remap[c.upper], remap[c.lower], c.i, c.j)
        for c in p.covers
        if c.i > c.j and c.upper in remap and c.lower in remap
    )
    return CBPoset(
        p.k,
        p.n,
        tuple(p.elements[x] for x in keep),
        covers,
        tuple(p.ranks[x] for x in keep),
        fiber=lam,
    )
