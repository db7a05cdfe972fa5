"""Orbifold contributions to Hilbert series of polarized n-folds.

The Hilbert series of a projectively Gorenstein n-fold with canonical weight k
and isolated cyclic quotient singularities decomposes as an initial term
(depending only on the first few plurigenera) plus one closed-form term per
singularity.  This module computes those closed forms exactly and provides the
combinatorics of which singularity collections ("baskets") are admissible on a
given weighted projective variety.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import chain, combinations, product
from math import gcd

from .ratfun import (
    DomainError,
    P_ONE,
    P_ZERO,
    RF_ZERO,
    RationalFunction,
    T,
    UniPolynomial,
    poly_gcd,
    poly_xgcd,
    series_of,
)


@dataclass(frozen=True, slots=True)
class QuotientSingularity:
    """Isolated cyclic quotient point of type 1/r(a_1, ..., a_n).

    Weights are reduced representatives in (0, r), stored sorted, so equal
    types always compare equal.
    """

    r: int
    weights: tuple[int, ...]

    def __init__(self, r: int, weights) -> None:
        ws = tuple(sorted(int(a) for a in weights))
        if r < 2:
            raise DomainError("index must be at least 2")
        if any(not 0 < a < r for a in ws):
            raise DomainError("weights must lie strictly between 0 and the index")
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "weights", ws)

    def __str__(self) -> str:
        return f"1/{self.r}({','.join(str(a) for a in self.weights)})"


@dataclass(frozen=True, slots=True)
class OrbifoldContribution:
    """One singularity's closed-form share of a Hilbert series.

    ``numerator`` is value * (1-t)^n (1-t^r) whenever that product is a
    polynomial (always the case for the canonical weights used here); its
    support lies in the window [floor(c/2)+1, floor(c/2)+r-1] for
    c = k + n + 1.
    """

    singularity: QuotientSingularity
    k: int
    value: RationalFunction
    numerator: UniPolynomial | None


@cache
def qorb(sing: QuotientSingularity, k: int, n: int = 3) -> OrbifoldContribution:
    """Closed-form contribution of an isolated quotient singularity.

    Raises DomainError if the canonical weight k is incompatible with the
    type, or if the type is not an isolated singularity.
    """
    a = sing.weights
    if len(a) != n:
        raise DomainError("weight count must match the dimension")
    r = sing.r
    if (k + sum(a)) % r:
        raise DomainError("canonical weight not compatible")
    if any(gcd(r, ai) != 1 for ai in a):
        raise DomainError("non-isolated type")
    pi = P_ONE
    for ai in a:
        pi = pi * UniPolynomial.one_minus_t_pow(ai)
    one_minus_tr = UniPolynomial.one_minus_t_pow(r)
    h = poly_gcd(one_minus_tr, pi).degree
    l = (k + n + 1) // 2 + h
    de = max(0, -(l // r))
    m = l + de * r
    one_minus_t = UniPolynomial([1, -1])
    aa = one_minus_tr.exact_div(one_minus_t)
    b0 = pi.exact_div(one_minus_t**n)
    hpoly, _, beta = poly_xgcd(aa, T**m * b0)
    denom = hpoly * one_minus_t**n * one_minus_tr * T ** (de * r)
    value = RationalFunction(T**m * beta, denom)
    numer_rf = value * (one_minus_t**n * one_minus_tr)
    numerator = numer_rf.num if numer_rf.den == P_ONE else None
    return OrbifoldContribution(sing, k, value, numerator)


def initial_term(series: RationalFunction, n: int, k: int) -> RationalFunction:
    """The smooth part of an orbifold Hilbert series decomposition.

    Determined by the series coefficients up to degree floor((k+n+1)/2) and
    extended symmetrically; the result has denominator (1-t)^(n+1).
    """
    c = k + n + 1
    if c < 0:
        return RF_ZERO
    half = c // 2
    one_minus_t = UniPolynomial([1, -1])
    pp = series_of(series * one_minus_t ** (n + 1), half)
    acc = P_ZERO
    for i in range(half + 1):
        ci = pp[i]
        if not ci:
            continue
        if c % 2 == 0 and i == half:
            acc = acc + UniPolynomial.monomial(i, ci)
        else:
            acc = acc + UniPolynomial.monomial(i, ci) + UniPolynomial.monomial(c - i, ci)
    return RationalFunction(acc, one_minus_t ** (n + 1))


def gcd_closure(values) -> frozenset[int]:
    """Closure of a set of positive integers under pairwise gcd."""
    s = set(values)
    frontier = set(s)
    while frontier:
        fresh = set()
        for x in frontier:
            for y in s:
                g = gcd(x, y)
                if g not in s and g not in fresh:
                    fresh.add(g)
        s |= fresh
        frontier = fresh
    return frozenset(s)


@cache
def _types_for_index(
    r: int, residues: tuple[int, ...], k: int, n: int
) -> tuple[QuotientSingularity, ...]:
    """Distinct n-element sub-multisets of the residues compatible with k.

    Cached: the same (index, residue multiset) pair recurs constantly across
    the weight tuples of a sweep.
    """
    out = []
    for combo in sorted(set(combinations(residues, n))):
        if (sum(combo) + k) % r == 0:
            out.append(QuotientSingularity(r, combo))
    return tuple(out)


def porb_cont(
    weights, n: int = 3, k: int = -1
) -> tuple[tuple[QuotientSingularity, ...], tuple[int, ...]]:
    """Candidate isolated singularity types on a weighted variety.

    Returns (types, extended_weights).  The weight list is extended by the new
    values of its gcd-closure (once each): every cyclic isotropy order on the
    ambient space is a gcd of weights, so those are the candidate indices r.
    For each index, candidate types are the n-element sub-multisets of the
    residues of the original weights coprime to r whose weight sum is
    compatible with the canonical weight k.
    """
    ws = tuple(sorted(int(w) for w in weights))
    if any(w <= 0 for w in ws):
        raise DomainError("weights must be positive")
    closure = gcd_closure(ws)
    extended = tuple(sorted(chain(ws, (v for v in closure if v not in set(ws)))))
    types: list[QuotientSingularity] = []
    for r in sorted({v for v in extended if v > 1}):
        residues = tuple(sorted(w % r for w in ws if gcd(w, r) == 1))
        if len(residues) < n:
            continue
        types.extend(_types_for_index(r, residues, k, n))
    return tuple(types), extended


def _grouped_by_index(
    types: tuple[QuotientSingularity, ...]
) -> dict[int, list[QuotientSingularity]]:
    by_r: dict[int, list[QuotientSingularity]] = {}
    for t in types:
        by_r.setdefault(t.r, []).append(t)
    return by_r


def baskets(
    types, extended_weights
) -> tuple[tuple[QuotientSingularity, ...], ...]:
    """All nonempty collections of distinct types that fit on the variety.

    A collection fits if, for every index r, it uses at most as many types of
    index r as there are weights equal to r in the extended weight list.
    """
    counts = Counter(extended_weights)
    by_r = _grouped_by_index(tuple(types))
    per_r: list[list[tuple[QuotientSingularity, ...]]] = []
    for r, group in sorted(by_r.items()):
        cap = min(counts[r], len(group))
        choices: list[tuple[QuotientSingularity, ...]] = [()]
        for size in range(1, cap + 1):
            choices.extend(combinations(group, size))
        per_r.append(choices)
    out = []
    for combo in product(*per_r):
        basket = tuple(chain.from_iterable(combo))
        if basket:
            out.append(basket)
    return tuple(out)


def _type_vectors(
    types: tuple[QuotientSingularity, ...], k: int, n: int
) -> list[tuple[Fraction, ...]]:
    """Each type's contribution over the common denominator (1-t)^n prod(1-t^r)."""
    indices = sorted({t.r for t in types})
    cofactor: dict[int, UniPolynomial] = {}
    for r in indices:
        p = P_ONE
        for r2 in indices:
            if r2 != r:
                p = p * UniPolynomial.one_minus_t_pow(r2)
        cofactor[r] = p
    vecs: list[UniPolynomial] = []
    for t in types:
        num = qorb(t, k, n).numerator
        if num is None:  # pragma: no cover - not reachable for supported k
            raise DomainError("contribution is not polynomial over the window")
        vecs.append(num * cofactor[t.r])
    length = max((v.degree for v in vecs), default=-1) + 1
    return [tuple(v[i] for i in range(length)) for v in vecs]


def basket_kernel(
    types, extended_weights, k: int, n: int = 3
) -> tuple[tuple[QuotientSingularity, ...], ...]:
    """Admissible collections of at least two distinct types whose
    contributions sum to zero exactly.

    Uses the nullspace of the contribution vectors: a collection is a 0/1
    vector in the kernel, so only free-coordinate patterns need enumerating.
    """
    types = tuple(types)
    m = len(types)
    if m < 2:
        return ()
    vecs = _type_vectors(types, k, n)
    length = len(vecs[0]) if vecs else 0
    # row-reduce the (length x m) matrix whose columns are the vectors
    rows = [[vecs[j][i] for j in range(m)] for i in range(length)]
    pivot_of_col: dict[int, int] = {}
    ri = 0
    for col in range(m):
        piv = next((i for i in range(ri, length) if rows[i][col]), None)
        if piv is None:
            continue
        rows[ri], rows[piv] = rows[piv], rows[ri]
        lead = rows[ri][col]
        rows[ri] = [x / lead for x in rows[ri]]
        for i in range(length):
            if i != ri and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[ri])]
        pivot_of_col[col] = ri
        ri += 1
    free_cols = [c for c in range(m) if c not in pivot_of_col]
    if not free_cols:
        return ()
    if len(free_cols) > 24:
        raise DomainError("kernel search space too large")
    counts = Counter(extended_weights)
    out = []
    for mask in range(1, 1 << len(free_cols)):
        assign = {c: (mask >> i) & 1 for i, c in enumerate(free_cols)}
        member = [0] * m
        ok = True
        for c, val in assign.items():
            member[c] = val
        for col, prow in pivot_of_col.items():
            val = -sum(rows[prow][f] * assign[f] for f in free_cols)
            if val not in (0, 1):
                ok = False
                break
            member[col] = int(val)
        if not ok:
            continue
        subset = tuple(t for t, used in zip(types, member) if used)
        if len(subset) < 2:
            continue
        index_counts = Counter(t.r for t in subset)
        if any(index_counts[r] > counts[r] for r in index_counts):
            continue
        total = [Fraction(0)] * len(vecs[0])
        for t, used in zip(range(m), member):
            if used:
                total = [x + y for x, y in zip(total, vecs[t])]
        if any(total):
            continue
        out.append(subset)
    out.sort(key=lambda s: tuple((t.r, t.weights) for t in s))
    return tuple(out)
