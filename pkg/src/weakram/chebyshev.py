"""Chebyshev polynomials of both kinds and the versal polynomial psi.

Everything here is exact: integer coefficient lists (little-endian,
constant term first) with rational arithmetic where intermediate values
need it.  Reductions into finite coefficient rings happen at call sites.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .rings import RingError


def poly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_scale(a, c):
    return poly_trim([c * x for x in a])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_pow(a, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_compose(outer, inner):
    """outer(inner(X)) by Horner's rule."""
    out = []
    for c in reversed(outer):
        out = poly_add(poly_mul(out, inner), [c])
    return out


def poly_divmod(a, b):
    """Exact rational division: returns (quotient, remainder)."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in poly_trim(list(b))]
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return poly_trim(q), poly_trim(a)


def poly_gcd_monic(a, b):
    """Monic gcd over the rationals."""
    a = [Fraction(c) for c in poly_trim(list(a))]
    b = [Fraction(c) for c in poly_trim(list(b))]
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def poly_eval(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def _as_int_poly(coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise RingError(f"expected integral coefficients, got {c}")
            c = int(c)
        out.append(c)
    return out


def cheb_poly(kind, j):
    """Chebyshev polynomial coefficients from the closed binomial sums.

    kind "first" gives T_j for j >= 0; kind "second" gives S_j (degree j)
    for j >= -1, where S_{-1} = 0 and sin((j+1)t) = sin(t) S_j(cos t).
    """
    if kind == "first":
        if j < 0:
            raise RingError("first-kind index must be >= 0")
        if j == 0:
            return [1]
        out = [Fraction(0)] * (j + 1)
        for ell in range(0, math.ceil(j / 2) + 1):
            if ell > j - ell:
                continue
            c = Fraction(math.comb(j - ell, ell) * j, j - ell) * (-1) ** ell
            out[j - 2 * ell] += Fraction(c * 2 ** (j - 2 * ell), 2)
        return _as_int_poly(poly_trim(out))
    if kind == "second":
        if j < -1:
            raise RingError("second-kind index must be >= -1")
        if j == -1:
            return []
        out = [0] * (j + 1)
        for ell in range(0, math.ceil(j / 2) + 1):
            if ell > j - ell:
                continue
            out[j - 2 * ell] += math.comb(j - ell, ell) * (-1) ** ell * 2 ** (j - 2 * ell)
        return poly_trim(out)
    raise RingError(f"unknown Chebyshev kind: {kind!r}")


def cheb_poly_recurrence(kind, j):
    """Same polynomials from the three-term recurrence, as an independent route."""
    if kind == "first":
        if j < 0:
            raise RingError("first-kind index must be >= 0")
        prev, cur = [1], [0, 1]
    elif kind == "second":
        if j < -1:
            raise RingError("second-kind index must be >= -1")
        if j == -1:
            return []
        prev, cur = [1], [0, 2]
    else:
        raise RingError(f"unknown Chebyshev kind: {kind!r}")
    if j == 0:
        return prev
    for _ in range(j - 1):
        prev, cur = cur, poly_add(poly_mul([0, 2], cur), poly_scale(prev, -1))
    return cur


def psi_poly(p):
    """The monic degree-(p-1)/2 polynomial cutting out the versal cyclic lift.

    Its reduction mod p is X^((p-1)/2) and its constant term is p, so it is
    Eisenstein at p.
    """
    if not isinstance(p, int) or p < 3 or not _is_prime(p):
        raise RingError("p must be an odd prime (the p = 2 family has no psi)")
    e = (p - 1) // 2
    base = [4, 1]
    out = []
    for ell in range(0, e + 1):
        term = poly_scale(poly_pow(base, e - ell),
                          math.comb(p - 1 - ell, ell) * (-1) ** ell)
        out = poly_add(out, term)
    return out


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _shifted(poly):
    """poly(1 + X/2) with exact rational coefficients."""
    return poly_compose([Fraction(c) for c in poly], [Fraction(1), Fraction(1, 2)])


def psi_ideal_check(p):
    """Divide T_p(1+X/2) - 1 and S_{p-1}(1+X/2) by psi, both exactly.

    Returns the two cofactors (rational coefficient lists) together with
    divisibility flags; a nonzero remainder would falsify the construction.
    """
    if not isinstance(p, int) or p < 3 or not _is_prime(p):
        raise RingError("p must be an odd prime")
    psi = [Fraction(c) for c in psi_poly(p)]
    tp = poly_add(_shifted(cheb_poly("first", p)), [Fraction(-1)])
    sp = _shifted(cheb_poly("second", p - 1))
    q1, r1 = poly_divmod(tp, psi)
    q2, r2 = poly_divmod(sp, psi)
    return {
        "p": p,
        "first_kind_divisible": not r1,
        "second_kind_divisible": not r2,
        "first_cofactor": q1,
        "second_cofactor": q2,
    }
