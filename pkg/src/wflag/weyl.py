"""Weyl group machinery: closure, weight multiplicities, restricted characters.

All vectors are integer coordinate tuples; reflections are given as integer
matrices acting on those coordinates.  Two different pairings appear:

* ``dot`` — the evaluation of a weight against a one-parameter subgroup
  (cocharacter), used to turn weights into scalar gradings;
* ``form_pair`` — a Weyl-invariant symmetric form on the weight space, used
  for dominance tests and the Freudenthal recursion.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import product

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


# -- small integer linear algebra -----------------------------------------


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in cols) for ra in a
    )


def int_det(m: Matrix) -> int:
    """Determinant of an integer matrix (fraction-free Bareiss elimination)."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c: int, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def dot(u: Vector, v: Vector) -> int:
    return sum(x * y for x, y in zip(u, v))


def form_pair(form: Matrix, u: Vector, v: Vector) -> int:
    return sum(u[i] * form[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


# -- Weyl group closure ----------------------------------------------------


@cache
def weyl_elements(generators: tuple[Matrix, ...]) -> tuple[tuple[Matrix, int], ...]:
    """All group elements generated by the given matrices, with determinant signs.

    Returned sorted by matrix entries so the order is reproducible.
    """
    n = len(generators[0])
    gen_signs = [int_det(g) for g in generators]
    seen: dict[Matrix, int] = {identity_matrix(n): 1}
    frontier = list(seen)
    while frontier:
        fresh = []
        for m in frontier:
            s = seen[m]
            for g, gs in zip(generators, gen_signs):
                prod = mat_mul(m, g)
                if prod not in seen:
                    seen[prod] = s * gs
                    fresh.append(prod)
        frontier = fresh
    return tuple(sorted(seen.items()))


# -- dominance and simple-root coordinates ---------------------------------


def to_dominant(
    v: Vector, simple_roots: tuple[Vector, ...], form: Matrix,
    generators: tuple[Matrix, ...],
) -> Vector:
    """The dominant representative of the Weyl orbit of v."""
    while True:
        for i, a in enumerate(simple_roots):
            if form_pair(form, v, a) < 0:
                v = mat_vec(generators[i], v)
                break
        else:
            return v


def is_dominant(v: Vector, simple_roots: tuple[Vector, ...], form: Matrix) -> bool:
    return all(form_pair(form, v, a) >= 0 for a in simple_roots)


def simple_root_coordinates(
    v: Vector, simple_roots: tuple[Vector, ...]
) -> tuple[Fraction, ...] | None:
    """Coordinates of v in the simple-root basis, or None if v is not in the span.

    Plain Gaussian elimination over Q; the systems here are tiny.
    """
    dim = len(v)
    r = len(simple_roots)
    rows = [[Fraction(simple_roots[j][i]) for j in range(r)] + [Fraction(v[i])]
            for i in range(dim)]
    pivots: list[int] = []
    ri = 0
    for col in range(r):
        piv = next((i for i in range(ri, dim) if rows[i][col]), None)
        if piv is None:
            continue
        rows[ri], rows[piv] = rows[piv], rows[ri]
        lead = rows[ri][col]
        rows[ri] = [x / lead for x in rows[ri]]
        for i in range(dim):
            if i != ri and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[ri])]
        pivots.append(col)
        ri += 1
    # consistency: rows below the pivot rows must have zero rhs
    for i in range(ri, dim):
        if rows[i][-1]:
            return None
    if len(pivots) < r:
        return None  # simple roots are independent, so this should not happen
    out = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        out[col] = rows[i][-1]
    return tuple(out)


# -- dimensions and multiplicities -----------------------------------------


def weyl_dimension(
    highest: Vector, positive_roots: tuple[Vector, ...], form: Matrix, rho: Vector
) -> int:
    """Dimension of the irreducible module with the given highest weight."""
    lam_rho = vadd(highest, rho)
    val = Fraction(1)
    for a in positive_roots:
        val *= Fraction(form_pair(form, lam_rho, a), form_pair(form, rho, a))
    assert val.denominator == 1 and val > 0
    return int(val)


def freudenthal_multiplicities(
    highest: Vector,
    positive_roots: tuple[Vector, ...],
    rank: int,
    form: Matrix,
    rho: Vector,
    generators: tuple[Matrix, ...],
) -> dict[Vector, int]:
    """Weight multiplicities of the irreducible module, as a full dict.

    Freudenthal's recursion over the dominant weights below the highest one,
    then expanded over Weyl orbits.
    """
    simple = tuple(positive_roots[:rank])
    elements = weyl_elements(generators)
    root_coords: list[tuple[int, ...]] = []
    for a in positive_roots:
        ca = simple_root_coordinates(a, simple)
        assert ca is not None and all(x.denominator == 1 and x >= 0 for x in ca)
        root_coords.append(tuple(int(x) for x in ca))

    # the lowest weight bounds the box of candidate dominant weights
    orbit = {mat_vec(m, highest) for m, _ in elements}
    lowest = next(
        v for v in orbit if all(form_pair(form, v, a) <= 0 for a in simple)
    )
    span = simple_root_coordinates(vsub(highest, lowest), simple)
    assert span is not None
    box = tuple(int(x) for x in span)
    assert all(x.denominator == 1 and x >= 0 for x in span)

    candidates: list[tuple[int, Vector, tuple[int, ...]]] = []
    for cs in product(*(range(b + 1) for b in box)):
        mu = highest
        for c, a in zip(cs, simple):
            if c:
                mu = vsub(mu, vscale(c, a))
        if is_dominant(mu, simple, form):
            candidates.append((sum(cs), mu, cs))
    candidates.sort()

    lam_rho = vadd(highest, rho)
    norm_top = form_pair(form, lam_rho, lam_rho)
    mults: dict[Vector, int] = {}
    dom_cache: dict[Vector, Vector] = {}
    for height, mu, cs in candidates:
        if height == 0:
            mults[mu] = 1
            continue
        total = 0
        for a, ca in zip(positive_roots, root_coords):
            kmax = min(cs[i] // ca[i] for i in range(rank) if ca[i])
            nu = mu
            for _ in range(kmax):
                nu = vadd(nu, a)
                nd = dom_cache.get(nu)
                if nd is None:
                    nd = to_dominant(nu, simple, form, generators)
                    dom_cache[nu] = nd
                m = mults.get(nd, 0)
                if m:
                    total += m * form_pair(form, nu, a)
        mu_rho = vadd(mu, rho)
        denom = norm_top - form_pair(form, mu_rho, mu_rho)
        assert denom > 0
        val = Fraction(2 * total, denom)
        assert val.denominator == 1
        if val:
            mults[mu] = int(val)

    full: dict[Vector, int] = {}
    for mu, m in mults.items():
        for mat, _ in elements:
            full[mat_vec(mat, mu)] = m
    return full


# -- restricted characters -------------------------------------------------


def alternating_projection(
    elements: tuple[tuple[Matrix, int], ...], v: Vector, mu: Vector, delta: Vector
) -> dict[tuple[int, int], int]:
    """sum over w of sign(w) * x^{<w v, mu>} y^{<w v, delta>} as a sparse dict."""
    out: dict[tuple[int, int], int] = {}
    for m, s in elements:
        w = mat_vec(m, v)
        key = (dot(w, mu), dot(w, delta))
        out[key] = out.get(key, 0) + s
    return {k: c for k, c in out.items() if c}


def laurent_divide_2d(
    numer: dict[tuple[int, int], int], denom: dict[tuple[int, int], int]
) -> dict[tuple[int, int], int]:
    """Exact division of two-variable Laurent polynomials.

    Requires the denominator to have a unique term of maximal second exponent
    with coefficient +-1 (true for Weyl denominators projected along a regular
    dominant direction).  Works level by level in the second exponent; each
    subtraction only touches strictly lower levels, so one descending pass
    suffices.
    """
    if not numer:
        return {}
    top_h = max(k[1] for k in denom)
    leads = [k for k in denom if k[1] == top_h]
    if len(leads) != 1 or abs(denom[leads[0]]) != 1:
        raise ArithmeticError("denominator has no usable leading term")
    f0, h0 = leads[0]
    c0 = denom[leads[0]]
    floor = min(k[1] for k in numer) - min(k[1] for k in denom)

    levels: dict[int, dict[int, int]] = {}
    for (f, h), c in numer.items():
        levels.setdefault(h, {})[f] = c
    rest = [(k, c) for k, c in denom.items() if k != (f0, h0)]
    quotient: dict[tuple[int, int], int] = {}
    while levels:
        h = max(levels)
        lev = {f: c for f, c in levels.pop(h).items() if c}
        if not lev:
            continue
        if h - h0 < floor:
            raise ArithmeticError("inexact Laurent division")
        qlev = {f - f0: c * c0 for f, c in lev.items()}
        for f, c in qlev.items():
            quotient[(f, h - h0)] = c
        for (fw, hw), cw in rest:
            tgt = levels.setdefault(h - h0 + hw, {})
            for f, c in qlev.items():
                key = f + fw
                tgt[key] = tgt.get(key, 0) - c * cw
    return {k: c for k, c in quotient.items() if c}


def restricted_character(
    generators: tuple[Matrix, ...],
    highest: Vector,
    rho: Vector,
    mu: Vector,
    delta: Vector,
) -> dict[tuple[int, int], int]:
    """Character of the irreducible module with the given highest weight,
    pushed down to exponents (<v, mu>, <v, delta>).

    delta must pair strictly positively with every positive root; mu is
    arbitrary (in particular it may be orthogonal to some roots).
    """
    elements = weyl_elements(generators)
    numer = alternating_projection(elements, vadd(highest, rho), mu, delta)
    den = alternating_projection(elements, rho, mu, delta)
    return laurent_divide_2d(numer, den)
