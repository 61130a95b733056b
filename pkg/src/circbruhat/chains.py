"""Weighted chain sums on CB(k, n), good-chain counts, and the checks built on them.

Conventions: a cover ``f t_ij <. f`` carries the weight ``cover_weight(i, j, n)``;
delta[x][r-1] is the number of saturated chains from element x down to rank 0
whose covers are all r-good.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Iterator

from .affine import AffinePermutation
from .cbposet import CBPoset, build, fiber_subposet
from .perms import (
    Permutation,
    all_permutations,
    bruhat_covers_below,
    grassmannian_from_subset,
    k_bruhat_covers_above,
    k_bruhat_interval_maximal_chains,
    k_bruhat_leq,
    length,
)
from .polyweights import MPoly, alpha_sum, cover_weight, interval_weight, is_r_good
from .young import syt_count_chains, syt_count_hook

__all__ = [
    "CheckResult",
    "chain_weights",
    "delta_table",
    "weighted_chain_sum",
    "delta",
    "saturated_chains",
    "enumerate_maximal_chains",
    "chain_weight",
    "brute_force_chain_sum",
    "verify_delta_independence",
    "verify_induct_identity",
    "n_good_maximal_chain_count",
    "f_u",
    "u_f",
    "verify_anti_isomorphism",
    "verify_corollary_chains",
    "verify_bs_consequence",
    "verify_main_theorem",
    "verify_top_chain_count",
    "bruhat_chain_sum",
    "stembridge_closed_form",
    "verify_stembridge",
]

DEFAULT_STEMBRIDGE_CAP = 4


@dataclass
class CheckResult:
    """Outcome of one verification; truthy iff it passed."""

    check: str
    params: dict
    passed: bool
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        data = {"check": self.check, **self.params, "pass": self.passed}
        data.update(self.details)
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


# Per-poset caches; CBPoset hashes by identity so entries die with the poset.
_weights_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()
_delta_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def chain_weights(p: CBPoset) -> tuple[MPoly, ...]:
    """W(x): total weight of the saturated chains from the top down to x."""
    cached = _weights_cache.get(p)
    if cached is not None:
        return cached
    n = p.n
    weights = [MPoly.zero(n) for _ in p.elements]
    weights[p.top] = MPoly.one(n)
    for x in p.by_rank_descending:
        wx = weights[x]
        if not wx:
            continue
        for c in p.lower_covers[x]:
            weights[c.lower] = weights[c.lower] + wx * cover_weight(c.i, c.j, n)
    result = tuple(weights)
    _weights_cache[p] = result
    return result


def delta_table(p: CBPoset) -> tuple[tuple[int, ...], ...]:
    """delta_r for every element and every r in [n], in one upward sweep."""
    cached = _delta_cache.get(p)
    if cached is not None:
        return cached
    n = p.n
    good = {}
    table: list[tuple[int, ...] | None] = [None] * len(p.elements)
    for x in reversed(p.by_rank_descending):
        if p.ranks[x] == 0:
            table[x] = (1,) * n
            continue
        row = [0] * n
        for c in p.lower_covers[x]:
            key = (c.i, c.j)
            if key not in good:
                good[key] = [is_r_good(c.i, c.j, n, r) for r in range(1, n + 1)]
            below = table[c.lower]
            for r0, ok in enumerate(good[key]):
                if ok:
                    row[r0] += below[r0]
        table[x] = tuple(row)
    result = tuple(table)
    _delta_cache[p] = result
    return result


def weighted_chain_sum(p: CBPoset) -> MPoly:
    weights = chain_weights(p)
    total = MPoly.zero(p.n)
    for x in p.minimal:
        total = total + weights[x]
    return total


def _resolve(p: CBPoset, f: AffinePermutation | int) -> int:
    return f if isinstance(f, int) else p.index_of(f)


def delta(p: CBPoset, f: AffinePermutation | int, r: int) -> int:
    if not 1 <= r <= p.n:
        raise ValueError(f"r must lie in [1, {p.n}], got {r}")
    return delta_table(p)[_resolve(p, f)][r - 1]


def saturated_chains(p: CBPoset, f: AffinePermutation | int, r: int | None = None) -> Iterator[list[int]]:
    """Explicit saturated chains from f down to rank 0, all covers r-good if r is given.

    Chains are lists of element indices, top first.
    """
    x = _resolve(p, f)
    if p.ranks[x] == 0:
        yield [x]
        return
    for c in p.lower_covers[x]:
        if r is not None and not is_r_good(c.i, c.j, p.n, r):
            continue
        for rest in saturated_chains(p, c.lower, r):
            yield [x] + rest


def enumerate_maximal_chains(p: CBPoset) -> Iterator[list[int]]:
    return saturated_chains(p, p.top)


def chain_weight(p: CBPoset, chain: list[int]) -> MPoly:
    edge = {(c.upper, c.lower): c for c in p.covers}
    w = MPoly.one(p.n)
    for a, b in zip(chain, chain[1:]):
        c = edge[(a, b)]
        w = w * cover_weight(c.i, c.j, p.n)
    return w


def brute_force_chain_sum(p: CBPoset) -> MPoly:
    """Sum of chain weights by listing every maximal chain; exponential, for small posets."""
    total = MPoly.zero(p.n)
    for chain in enumerate_maximal_chains(p):
        total = total + chain_weight(p, chain)
    return total


def verify_delta_independence(p: CBPoset) -> CheckResult:
    table = delta_table(p)
    params = {"k": p.k, "n": p.n}
    for x, row in enumerate(table):
        if len(set(row)) != 1:
            return CheckResult(
                "delta_independence", params, False, f"{p.elements[x]}: delta_r = {list(row)}"
            )
    return CheckResult("delta_independence", params, True, details={"elements": len(table)})


def verify_induct_identity(p: CBPoset, f: AffinePermutation | int) -> bool | None:
    """Sum over covers of delta(g) wt(g <. f) == delta(f) (a1 + ... + an).

    Returns None at rank 0, where the left side is an empty sum and the
    identity says nothing.
    """
    x = _resolve(p, f)
    if p.ranks[x] == 0:
        return None
    table = delta_table(p)
    lhs = MPoly.zero(p.n)
    for c in p.lower_covers[x]:
        lhs = lhs + cover_weight(c.i, c.j, p.n).scale(table[c.lower][0])
    return lhs == alpha_sum(p.n).scale(table[x][0])


def n_good_maximal_chain_count(p: CBPoset) -> int:
    return delta_table(p)[p.top][p.n - 1]


def f_u(u: Permutation, subset: Iterable[int]) -> AffinePermutation:
    """The element u t_k w_lambda^{-1} of CB(k, n)_lambda."""
    lam = frozenset(subset)
    n, k = u.n, len(lam)
    w = grassmannian_from_subset(lam, n)
    if not k_bruhat_leq(u, w, k):
        raise ValueError(f"{u} is not below {w} in the {k}-Bruhat order")
    window = [0] * n
    for i in range(1, n + 1):
        window[w(i) - 1] = u(i) + n if i <= k else u(i)
    return AffinePermutation(tuple(window))


def u_f(f: AffinePermutation) -> tuple[Permutation, frozenset[int]]:
    """Inverse of f_u: returns (u_f, Lambda(f))."""
    lam = f.anti_excedance_positions()
    n, k = f.n, len(lam)
    w = grassmannian_from_subset(lam, n)
    images = tuple(f(w(i)) - n if i <= k else f(w(i)) for i in range(1, n + 1))
    return Permutation(images), lam


def verify_anti_isomorphism(k: int, n: int, subset: Iterable[int], p: CBPoset | None = None) -> CheckResult:
    lam = frozenset(subset)
    params = {"k": k, "n": n, "lambda": sorted(lam)}
    name = "anti_isomorphism"
    if p is None:
        p = build(k, n)
    fiber = fiber_subposet(p, lam)
    w = grassmannian_from_subset(lam, n)
    ideal = [u for u in all_permutations(n) if k_bruhat_leq(u, w, k)]
    ideal_set = set(ideal)

    image = {u: f_u(u, lam) for u in ideal}
    if len(set(image.values())) != len(ideal):
        return CheckResult(name, params, False, "u -> f_u is not injective")
    if set(image.values()) != set(fiber.elements):
        missing = set(fiber.elements) - set(image.values())
        return CheckResult(name, params, False, f"not onto the fiber; missing {sorted(map(str, missing))}")
    for u, f in image.items():
        if u_f(f) != (u, lam):
            return CheckResult(name, params, False, f"u_f(f_u({u})) = {u_f(f)[0]}")
    for f in fiber.elements:
        if f_u(u_f(f)[0], lam) != f:
            return CheckResult(name, params, False, f"f_u(u_f({f})) != {f}")

    # u <._k v  <->  f_v <._gamma f_u, recorded as (upper, lower) in CB
    from_perms = {
        (image[u], image[v]) for u in ideal for v, _ in k_bruhat_covers_above(u, k) if v in ideal_set
    }
    from_fiber = {(fiber.elements[c.upper], fiber.elements[c.lower]) for c in fiber.covers}
    if from_perms != from_fiber:
        diff = sorted(map(lambda e: f"{e[0]}>{e[1]}", from_perms ^ from_fiber))
        return CheckResult(name, params, False, f"cover relations differ: {diff}")
    return CheckResult(name, params, True, details={"elements": len(ideal), "covers": len(from_fiber)})


def verify_corollary_chains(p: CBPoset, f: AffinePermutation | int) -> bool:
    x = _resolve(p, f)
    g = p.elements[x]
    u, lam = u_f(g)
    w = grassmannian_from_subset(lam, p.n)
    return delta_table(p)[x][p.n - 1] == k_bruhat_interval_maximal_chains(u, w, p.k)


def _cycle(n: int) -> Permutation:
    return Permutation(tuple(range(2, n + 1)) + (1,))


def verify_bs_consequence(p: CBPoset) -> CheckResult:
    """c u_f w_f^{-1} c^{-1} == u_chi(f) w_chi(f)^{-1}, and the two k-Bruhat intervals have equally many maximal chains."""
    params = {"k": p.k, "n": p.n}
    n, k = p.n, p.k
    c = _cycle(n)
    c_inv = c.inverse()
    counts: dict[AffinePermutation, int] = {}

    def interval_count(f: AffinePermutation) -> int:
        if f not in counts:
            u, lam = u_f(f)
            counts[f] = k_bruhat_interval_maximal_chains(u, grassmannian_from_subset(lam, n), k)
        return counts[f]

    for f in p.elements:
        g = f.cyclic_shift()
        u, lam = u_f(f)
        ug, lam_g = u_f(g)
        lhs = c * u * grassmannian_from_subset(lam, n).inverse() * c_inv
        rhs = ug * grassmannian_from_subset(lam_g, n).inverse()
        if lhs != rhs:
            return CheckResult("bs_consequence", params, False, f"conjugation fails at {f}: {lhs} vs {rhs}")
        if interval_count(f) != interval_count(g):
            return CheckResult(
                "bs_consequence",
                params,
                False,
                f"chain counts differ: {f} -> {interval_count(f)}, {g} -> {interval_count(g)}",
            )
    return CheckResult("bs_consequence", params, True, details={"elements": len(p.elements)})


def verify_main_theorem(k: int, n: int, p: CBPoset | None = None, jobs: int = 1) -> CheckResult:
    if p is None:
        p = build(k, n, jobs=jobs)
    lhs = weighted_chain_sum(p)
    coefficient = syt_count_hook(k, n - k)
    rhs = (alpha_sum(n) ** (k * (n - k))).scale(coefficient)
    params = {"k": k, "n": n}
    details = {"syt_count": coefficient, "lhs_terms": len(lhs)}
    if lhs != rhs:
        return CheckResult("main_theorem", params, False, f"chain sum {lhs} != {rhs}", details)
    return CheckResult("main_theorem", params, True, details=details)


def verify_top_chain_count(p: CBPoset) -> CheckResult:
    """delta_n(f_top) against the hook-length count and the lattice-chain count."""
    k, m = p.k, p.n - p.k
    got = n_good_maximal_chain_count(p)
    hook = syt_count_hook(k, m)
    chains = syt_count_chains(k, m, cap=max(k * m, 1))
    params = {"k": p.k, "n": p.n}
    details = {"n_good_chains": got, "hook": hook, "lattice_chains": chains}
    ok = got == hook == chains
    return CheckResult("top_chain_count", params, ok, None if ok else f"{got}, {hook}, {chains} disagree", details)


def bruhat_chain_sum(n: int) -> MPoly:
    """Weighted maximal-chain sum of the Bruhat order on S_n with weights a_i + ... + a_{j-1}."""
    nvars = max(n - 1, 0)
    perms = sorted(all_permutations(n), key=lambda q: -length(q))
    weights: dict[Permutation, MPoly] = {q: MPoly.zero(nvars) for q in perms}
    weights[perms[0]] = MPoly.one(nvars)
    for q in perms:
        wq = weights[q]
        if not wq:
            continue
        for below, (i, j) in bruhat_covers_below(q):
            weights[below] = weights[below] + wq * interval_weight(i, j, nvars)
    return weights[Permutation.identity(n)]


def stembridge_closed_form(n: int) -> MPoly:
    nvars = max(n - 1, 0)
    num = factorial(comb(n, 2))
    den = prod(m ** (n - m) for m in range(1, n))
    coefficient, rem = divmod(num, den)
    assert rem == 0
    product = MPoly.one(nvars)
    for i, j in combinations(range(1, n + 1), 2):
        product = product * interval_weight(i, j, nvars)
    return product.scale(coefficient)


def verify_stembridge(n: int, cap: int = DEFAULT_STEMBRIDGE_CAP) -> CheckResult:
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise ValueError(f"n={n} exceeds the Stembridge cap {cap}")
    lhs = bruhat_chain_sum(n)
    rhs = stembridge_closed_form(n)
    params = {"n": n}
    details = {"lhs_terms": len(lhs)}
    if lhs != rhs:
        return CheckResult("stembridge", params, False, f"{lhs} != {rhs}", details)
    return CheckResult("stembridge", params, True, details=details)
