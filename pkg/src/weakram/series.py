"""Truncated formal power series over a coefficient ring.

A series stores exactly K coefficients c_0 ... c_{K-1}; no operation ever
reports a coefficient at or beyond the truncation order.
"""

from __future__ import annotations

from .rings import Elem, RingError


class TruncatedSeries:
    __slots__ = ("ring", "coeffs", "K")

    def __init__(self, ring, coeffs, K=None):
        coeffs = tuple(c if isinstance(c, Elem) else ring.from_int(c)
                       for c in coeffs)
        if K is None:
            K = len(coeffs)
        if K < 1:
            raise RingError("truncation order must be >= 1")
        if len(coeffs) < K:
            coeffs = coeffs + tuple(ring.zero() for _ in range(K - len(coeffs)))
        elif len(coeffs) > K:
            coeffs = coeffs[:K]
        for c in coeffs:
            if c.ring != ring:
                raise RingError("coefficient from a different ring")
        self.ring = ring
        self.coeffs = coeffs
        self.K = K

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ring == other.ring and self.K == other.K
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.K, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[c.payload for c in self.coeffs]!r}, K={self.K})"

    def _check(self, other):
        if self.ring != other.ring:
            raise RingError("series live over different rings")
        if self.K != other.K:
            raise RingError("series have different truncation orders")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(self.ring,
                               tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                               self.K)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(self.ring,
                               tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
                               self.K)

    def __neg__(self):
        return TruncatedSeries(self.ring, tuple(-a for a in self.coeffs), self.K)

    def __mul__(self, other):
        if isinstance(other, (Elem, int)):
            if isinstance(other, int):
                other = self.ring.from_int(other)
            return TruncatedSeries(self.ring,
                                   tuple(c * other for c in self.coeffs), self.K)
        self._check(other)
        zero = self.ring.zero()
        out = [zero] * self.K
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.K - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, tuple(out), self.K)

    __rmul__ = __mul__

    def truncate(self, K):
        if K > self.K:
            raise RingError("cannot extend a truncated series")
        return TruncatedSeries(self.ring, self.coeffs[:K], K)

    def is_identity(self):
        """Whether the series equals y up to the truncation order."""
        return self == identity_series(self.ring, self.K)

    def to_json(self):
        return {"ring": self.ring.to_json(), "K": self.K,
                "coeffs": [c.to_json() for c in self.coeffs]}


def identity_series(ring, K):
    coeffs = [ring.zero()] * K
    if K >= 2:
        coeffs[1] = ring.one()
    return TruncatedSeries(ring, tuple(coeffs), K)


def series_from_mobius(mobius, K):
    """Expand (a*y + b)/(c*y + d) to order K; d must be a unit."""
    ring = mobius.ring
    dinv = mobius.d.inv()
    # 1/(d + c y) = dinv * sum ((-c*dinv) y)^k
    t = -mobius.c * dinv
    geo = [ring.one()]
    for _ in range(K - 1):
        geo.append(geo[-1] * t)
    inv_den = TruncatedSeries(ring, tuple(g * dinv for g in geo), K)
    num = [mobius.b, mobius.a] + [ring.zero()] * max(0, K - 2)
    return TruncatedSeries(ring, tuple(num[:K]), K) * inv_den


def series_compose(f, g):
    """f(g(y)) truncated at the common order.

    Requires the constant term of g to be zero or nilpotent, so that the
    substitution is well defined under truncation.
    """
    f._check(g)
    ring = f.ring
    c0 = g.coeffs[0]
    if not (c0.is_zero() or ring.is_nilpotent(c0.payload)):
        raise RingError("constant term of the inner series must be nilpotent")
    out = TruncatedSeries(ring, (), f.K)
    for c in reversed(f.coeffs):
        const = TruncatedSeries(ring, (c,), f.K)
        out = out * g + const
    return out


def ramification_break(f):
    """The largest i with f in the i-th ramification group.

    This is ord(f(y) - y) - 1.  Returns None when f agrees with y to the
    stated truncation, meaning the break is at least K - 1.
    """
    ring = f.ring
    if f.K >= 2 and not f.coeffs[1].is_unit():
        raise RingError("linear coefficient must be a unit")
    delta = f - identity_series(ring, f.K)
    for i, c in enumerate(delta.coeffs):
        if not c.is_zero():
            return i - 1
    return None
