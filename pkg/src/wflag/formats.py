"""Flag variety formats: weighted embeddings, ambient weights, Hilbert series.

A *format* is a rational homogeneous variety together with the compiled root
datum needed to compute with its coordinate ring.  A *parameter* is a
cocharacter ``mu`` plus a positive central shift ``u``; together they induce
positive weights on the ambient coordinates and hence a weighted-projective
embedding of the variety.

The Hilbert series of the weighted image is computed in closed form.  Writing
the character of the degree-d part restricted along ``mu`` via the Weyl
character formula and summing the geometric series over d gives

    P(t) = [sum_w sgn(w) t^{<w rho, mu>} / (1 - t^{<w lam, mu> + u})]
           / [sum_w sgn(w) t^{<w rho, mu>}]

valid when no root is orthogonal to ``mu``.  When some are, numerator and
denominator both vanish identically; we then expand both along a second
auxiliary direction delta (regular, so the degeneracy is resolved), s = 1+eps,
and take the first nonvanishing coefficient of each, which recovers P exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations_with_replacement

from .ratfun import (
    DomainError,
    P_ONE,
    P_ZERO,
    RationalFunction,
    RF_ZERO,
    UniPolynomial,
)
from .weyl import (
    Matrix,
    Vector,
    dot,
    freudenthal_multiplicities,
    identity_matrix,
    mat_vec,
    restricted_character,
    vscale,
    weyl_elements,
)


@dataclass(frozen=True)
class FormatSpec:
    """Compiled root datum of one homogeneous variety."""

    name: str
    lie_rank: int
    dimension: int
    codimension: int
    highest_weight: Vector
    weyl_vector: Vector
    weyl_generators: tuple[Matrix, ...]
    positive_roots: tuple[Vector, ...]  # simple roots occupy the first lie_rank slots
    invariant_form: Matrix
    auxiliary_cocharacter: Vector  # pairs > 0 with every positive root
    adjunction_coefficients: tuple[int, int]  # q = c_u * u + c_m * sum(mu)


@dataclass(frozen=True)
class CocharacterParam:
    """A weighting of the ambient coordinates: cocharacter mu and shift u."""

    mu: tuple[int, ...]
    u: int


@dataclass(frozen=True)
class EmbeddingData:
    """Everything the search needs about one weighted embedding."""

    format_name: str
    mu: tuple[int, ...]
    u: int
    weights: tuple[int, ...]  # ambient weights, sorted
    numerator: UniPolynomial  # H with P = H / prod(1 - t^w)
    numerator_reduced: UniPolynomial  # H / (1-t)^codimension
    series: RationalFunction  # P itself
    adjunction_number: int  # q = deg H
    sigma: int  # canonical degree of the image, q - sum(weights)


def _transposition_matrix(n: int, i: int) -> Matrix:
    m = [list(r) for r in identity_matrix(n)]
    m[i], m[i + 1] = m[i + 1], m[i]
    return tuple(tuple(r) for r in m)


G2_FORMAT = FormatSpec(
    name="g2",
    lie_rank=2,
    dimension=5,
    codimension=8,
    highest_weight=(3, 2),  # highest long root; the module is the adjoint one
    weyl_vector=(5, 3),
    weyl_generators=(((-1, 3), (0, 1)), ((1, 0), (1, -1))),
    positive_roots=((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
    invariant_form=((2, -3), (-3, 6)),
    auxiliary_cocharacter=(1, 1),
    adjunction_coefficients=(11, 0),
)

GR25_FORMAT = FormatSpec(
    name="gr25",
    lie_rank=4,
    dimension=6,
    codimension=3,
    highest_weight=(1, 1, 0, 0, 0),  # second exterior power of the standard module
    weyl_vector=(4, 3, 2, 1, 0),  # rho representative; constant shifts drop out
    weyl_generators=tuple(_transposition_matrix(5, i) for i in range(4)),
    positive_roots=tuple(
        tuple(int(k == i) - int(k == j) for k in range(5))
        for i in range(5)
        for j in range(i + 1, 5)
        if j == i + 1
    )
    + tuple(
        tuple(int(k == i) - int(k == j) for k in range(5))
        for i in range(5)
        for j in range(i + 1, 5)
        if j > i + 1
    ),
    invariant_form=identity_matrix(5),
    auxiliary_cocharacter=(4, 3, 2, 1, 0),
    adjunction_coefficients=(5, 2),
)

FORMATS: dict[str, FormatSpec] = {"g2": G2_FORMAT, "gr25": GR25_FORMAT}


@cache
def _weight_system(fmt: FormatSpec) -> tuple[tuple[Vector, int], ...]:
    """Weights (with multiplicity) of the defining module, sorted."""
    mults = freudenthal_multiplicities(
        fmt.highest_weight,
        fmt.positive_roots,
        fmt.lie_rank,
        fmt.invariant_form,
        fmt.weyl_vector,
        fmt.weyl_generators,
    )
    return tuple(sorted(mults.items()))


def weight_multiplicities(fmt: FormatSpec, d: int) -> dict[Vector, int]:
    """Weight multiplicities of the degree-d part of the coordinate ring."""
    if d < 0:
        raise DomainError("degree must be nonnegative")
    if d == 0:
        return {vscale(0, fmt.highest_weight): 1}
    return freudenthal_multiplicities(
        vscale(d, fmt.highest_weight),
        fmt.positive_roots,
        fmt.lie_rank,
        fmt.invariant_form,
        fmt.weyl_vector,
        fmt.weyl_generators,
    )


def ambient_weights(fmt: FormatSpec, param: CocharacterParam) -> tuple[int, ...]:
    """Weights induced on the ambient coordinates, sorted ascending.

    Raises DomainError if any weight fails to be positive.
    """
    ws: list[int] = []
    for v, m in _weight_system(fmt):
        w = dot(v, param.mu) + param.u
        ws.extend([w] * m)
    if any(w <= 0 for w in ws):
        raise DomainError("invalid parameters: nonpositive ambient weight")
    assert len(ws) == fmt.dimension + fmt.codimension + 1
    return tuple(sorted(ws))


# -- closed-form Hilbert series -------------------------------------------

_CERT_MESSAGE = "truncation insufficient or format data inconsistent"


def _gbinom(h: int, j: int) -> int:
    """Generalized binomial coefficient C(h, j) for any integer h."""
    num, den = 1, 1
    for i in range(j):
        num *= h - i
        den *= i + 1
    assert num % den == 0
    return num // den


def _closed_form_series(fmt: FormatSpec, param: CocharacterParam) -> RationalFunction:
    mu, u = param.mu, param.u
    delta = fmt.auxiliary_cocharacter
    elements = weyl_elements(fmt.weyl_generators)
    data = []
    for m, s in elements:
        wr = mat_vec(m, fmt.weyl_vector)
        wl = mat_vec(m, fmt.highest_weight)
        data.append((s, dot(wr, mu), dot(wr, delta), dot(wl, mu) + u, dot(wl, delta)))
    fmin = min(f for _, f, _, _, _ in data)

    def denominator_coefficient(j: int) -> UniPolynomial:
        p = P_ZERO
        for s, f, h, _, _ in data:
            c = s * _gbinom(h, j)
            if c:
                p = p + UniPolynomial.monomial(f - fmin, c)
        return p

    k = None
    for j in range(len(fmt.positive_roots) + 1):
        bj = denominator_coefficient(j)
        if not bj.is_zero():
            k = j
            break
    if k is None:
        raise ArithmeticError(_CERT_MESSAGE)
    b_k = bj

    # group the Weyl sum by the orbit point of the highest weight; every term
    # in a group shares the same geometric-series denominator
    groups: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for s, f, h, g, e in data:
        groups.setdefault((g, e), []).append((s, f, h))

    numerator_coeffs = [RF_ZERO] * (k + 1)
    for (g, e), members in groups.items():
        d0 = UniPolynomial.one_minus_t_pow(g)
        d0_pows = [P_ONE]
        for _ in range(k + 1):
            d0_pows.append(d0_pows[-1] * d0)
        # inverse of the denominator expansion: coefficient i is n[i]/d0^(i+1)
        n = [P_ONE]
        for j in range(1, k + 1):
            acc = P_ZERO
            for i in range(1, j + 1):
                di = UniPolynomial.monomial(g, -_gbinom(e, i))
                acc = acc + di * n[j - i] * d0_pows[i - 1]
            n.append(-acc)
        pref = []
        for j in range(k + 1):
            p = P_ZERO
            for s, f, h in members:
                c = s * _gbinom(h, j)
                if c:
                    p = p + UniPolynomial.monomial(f - fmin, c)
            pref.append(p)
        for j in range(k + 1):
            cj = P_ZERO
            for i in range(j + 1):
                cj = cj + pref[j - i] * n[i] * d0_pows[j - i]
            if not cj.is_zero():
                numerator_coeffs[j] = numerator_coeffs[j] + RationalFunction(
                    cj, d0_pows[j + 1]
                )
    for j in range(k):
        if not numerator_coeffs[j].is_zero():
            raise ArithmeticError(_CERT_MESSAGE)
    return numerator_coeffs[k] / RationalFunction(b_k)


@cache
def hilbert_series(fmt: FormatSpec, param: CocharacterParam) -> EmbeddingData:
    """The weighted embedding attached to (format, parameter), fully certified.

    The numerator H (with P = H / prod(1 - t^w) over the ambient weights) is
    checked to be a polynomial with H(0) = 1, of the degree predicted by the
    adjunction coefficients, and (anti)palindromic as Gorenstein symmetry
    demands.
    """
    weights = ambient_weights(fmt, param)
    series = _closed_form_series(fmt, param)
    den = P_ONE
    for w in weights:
        den = den * UniPolynomial.one_minus_t_pow(w)
    h_rf = series * den
    if h_rf.den != P_ONE:
        raise ArithmeticError(_CERT_MESSAGE)
    h = h_rf.num
    cu, cm = fmt.adjunction_coefficients
    q = cu * param.u + cm * sum(param.mu)
    e = fmt.codimension
    if h[0] != 1 or h.degree != q:
        raise ArithmeticError(_CERT_MESSAGE)
    if h.reciprocal(q) != h * ((-1) ** e):
        raise ArithmeticError(_CERT_MESSAGE)
    reduced = h.exact_div(UniPolynomial([1, -1]) ** e)
    return EmbeddingData(
        format_name=fmt.name,
        mu=param.mu,
        u=param.u,
        weights=weights,
        numerator=h,
        numerator_reduced=reduced,
        series=series,
        adjunction_number=q,
        sigma=q - sum(weights),
    )


def graded_series_coefficients(
    fmt: FormatSpec, param: CocharacterParam, order: int
) -> list[int]:
    """First coefficients of the Hilbert series, degree by degree.

    Independent of the closed form: each graded piece is a restricted Weyl
    character computed by exact Laurent division.  Slow but direct; used to
    cross-check `hilbert_series`.
    """
    weights = ambient_weights(fmt, param)
    wmin = min(weights)
    out = [0] * (order + 1)
    out[0] = 1
    delta = fmt.auxiliary_cocharacter
    for d in range(1, order // wmin + 1):
        char = restricted_character(
            fmt.weyl_generators,
            vscale(d, fmt.highest_weight),
            fmt.weyl_vector,
            param.mu,
            delta,
        )
        for (a, _), c in char.items():
            m = a + d * param.u
            if 0 <= m <= order:
                out[m] += c
    return out


# -- parameter enumeration -------------------------------------------------


def _params_g2(
    fmt: FormatSpec, u_max: int, q_max: int | None
) -> list[CocharacterParam]:
    found: dict[tuple[int, ...], CocharacterParam] = {}
    for u in range(1, u_max + 1):
        if q_max is not None and fmt.adjunction_coefficients[0] * u > q_max:
            continue
        for a in range(-(u - 1), u):
            for b in range(-(u - 1), u):
                param = CocharacterParam((a, b), u)
                try:
                    ws = ambient_weights(fmt, param)
                except DomainError:
                    continue
                if ws not in found:
                    found[ws] = param
    return list(found.values())


def _params_gr25(
    fmt: FormatSpec, u_max: int | None, q_max: int | None
) -> list[CocharacterParam]:
    if q_max is None:
        raise DomainError(
            "q_max is required here: ambient weights are unbounded for fixed u"
        )
    found: dict[tuple[int, ...], CocharacterParam] = {}
    top = max(q_max - 5, 0)
    for rest in combinations_with_replacement(range(top + 1), 4):
        mu = (0,) + rest
        s = sum(mu)
        u_lo = 1 - mu[1]
        u_hi = (q_max - 2 * s) // 5
        if u_max is not None:
            u_hi = min(u_hi, u_max)
        for u in range(u_lo, u_hi + 1):
            param = CocharacterParam(mu, u)
            try:
                ws = ambient_weights(fmt, param)
            except DomainError:
                continue
            if ws not in found:
                found[ws] = param
    return list(found.values())


@cache
def enumerate_parameters(
    fmt: FormatSpec, u_max: int | None = None, q_max: int | None = None
) -> tuple[CocharacterParam, ...]:
    """All valid parameters up to the given bounds, one per weight multiset.

    Parameters inducing the same ambient weight multiset are identified; the
    representative kept is the smallest in iteration order (lexicographically
    least mu).  Results are sorted by (sum of weights, weights).
    """
    if fmt.name == "g2":
        if u_max is None:
            raise DomainError("u_max is required for this format")
        params = _params_g2(fmt, u_max, q_max)
    elif fmt.name == "gr25":
        params = _params_gr25(fmt, u_max, q_max)
    else:
        raise DomainError(f"unknown format {fmt.name!r}")
    return tuple(
        sorted(
            params,
            key=lambda p: (
                sum(ambient_weights(fmt, p)),
                ambient_weights(fmt, p),
            ),
        )
    )
