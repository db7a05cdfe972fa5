#!/usr/bin/env python3
"""Walk through the orbifold decomposition of the degree-7 hypersurface.

X = X_7 in P(1,1,1,1,2) is a canonically polarized 3-fold with K_X = O_X(1),
Hilbert series P(t) = (1 - t^7) / ((1-t)^4 (1-t^2)), and a single 1/2(1,1,1)
quotient point.  This program rebuilds each piece of the identity

    P(t) = P_I(t) + P_Q(t)

and checks it exactly, printing every intermediate object.  Exits 1 if any
step fails.
"""
from __future__ import annotations

import sys

from wflag.orbifold import QuotientSingularity, initial_term, qorb
from wflag.ratfun import RationalFunction, UniPolynomial


def main() -> int:
    n, k = 3, 1
    series = RationalFunction.from_quotient_weights([7], [1, 1, 1, 1, 2])
    print(f"P(t) = (1 - t^7) / ((1-t)^4 (1-t^2)) = {series}")

    init = initial_term(series, n, k)
    a_poly = (init * (UniPolynomial.one_minus_t_pow(1) ** (n + 1))).num
    print(f"initial term numerator A(t) = {a_poly}")
    print(f"P_I(t) = {init}")

    sing = QuotientSingularity(2, (1, 1, 1))
    contrib = qorb(sing, k, n)
    print(f"quotient point {sing}: numerator B(t) = {contrib.numerator}")
    print(f"P_Q(t) = {contrib.value}")

    total = init + contrib.value
    if total == series:
        print("identity holds: P = P_I + P_Q")
        return 0
    print(f"identity FAILS; difference = {series - total}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
