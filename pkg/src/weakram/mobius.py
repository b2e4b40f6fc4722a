"""PGL2 elements over a ring: projective equality, powers, orders.

A MobiusElem is a 2x2 matrix with unit determinant.  No projective
normalization is imposed on the entries; equality up to a unit scalar is
a dedicated operation.
"""

from __future__ import annotations

from .rings import Elem, NonUnitError, RingError


class MobiusElem:
    __slots__ = ("ring", "a", "b", "c", "d")

    def __init__(self, ring, a, b, c, d):
        entries = []
        for x in (a, b, c, d):
            if isinstance(x, int):
                x = ring.from_int(x)
            if not isinstance(x, Elem) or x.ring != ring:
                raise RingError("matrix entries must come from the given ring")
            entries.append(x)
        self.ring = ring
        self.a, self.b, self.c, self.d = entries
        if not ring.is_unit_formal(self.det().payload):
            raise RingError("determinant must be a unit")

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, MobiusElem):
            return NotImplemented
        return self.ring == other.ring and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.ring, self.entries()))

    def __repr__(self):
        e = [x.payload for x in self.entries()]
        return f"MobiusElem([[{e[0]!r}, {e[1]!r}], [{e[2]!r}, {e[3]!r}]])"

    def __mul__(self, other):
        if not isinstance(other, MobiusElem):
            return NotImplemented
        if self.ring != other.ring:
            raise RingError("matrices live over different rings")
        return MobiusElem(
            self.ring,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjugate(self):
        return MobiusElem(self.ring, self.d, -self.b, -self.c, self.a)

    def conjugate(self, m):
        """self * m * self^{-1} up to the unit det(self), exact in the ring."""
        raw = self * m * self.adjugate()
        dinv = self.det().inv()
        return MobiusElem(self.ring, raw.a * dinv, raw.b * dinv,
                          raw.c * dinv, raw.d * dinv)

    def scale(self, s):
        return MobiusElem(self.ring, self.a * s, self.b * s, self.c * s, self.d * s)

    def is_scalar(self):
        """b = c = 0 and a = d; with unit determinant the scalar is a unit."""
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def to_json(self):
        return [[self.a.to_json(), self.b.to_json()],
                [self.c.to_json(), self.d.to_json()]]


def mobius_identity(ring):
    return MobiusElem(ring, ring.one(), ring.zero(), ring.zero(), ring.one())


def mobius_from_json(ring, data):
    (a, b), (c, d) = data
    mk = lambda v: Elem(ring, ring.payload_from_json(v))
    return MobiusElem(ring, mk(a), mk(b), mk(c), mk(d))


def mobius_pow(m, k):
    """k-fold product by binary powering; the 0-th power is the identity."""
    if not isinstance(k, int) or k < 0:
        raise RingError("exponent must be a non-negative integer")
    out = mobius_identity(m.ring)
    base = m
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def projective_equal(m, n):
    """The unit lambda with m = lambda * n, or None when there is none.

    The scalar is unique: if two worked, their difference would annihilate
    a matrix with unit determinant.
    """
    if m.ring != n.ring:
        raise RingError("matrices live over different rings")
    ring = m.ring
    if m == n:
        return ring.one()
    pairs = list(zip(m.entries(), n.entries()))

    def check(lam):
        return (lam.is_unit()
                and all(me == lam * ne for me, ne in pairs))

    for me, ne in pairs:
        if ne.is_zero():
            if not me.is_zero():
                return None
            continue
        try:
            lam = me * ne.inv()
            if check(lam):
                return lam
        except NonUnitError:
            pass
    for me, ne in pairs:
        if ne.is_zero():
            continue
        q = ring.divide_exact(me.payload, ne.payload)
        if q is not None:
            lam = Elem(ring, q)
            if check(lam):
                return lam
    if ring.is_finite and ring.size() <= 65536:
        for lam in ring.elements():
            if not lam.is_zero() and check(lam):
                return lam
    return None


def pgl_order(m, bound):
    """Least k <= bound with m^k scalar, or None if the bound is exceeded."""
    if bound < 1:
        raise RingError("bound must be >= 1")
    power = m
    for k in range(1, bound + 1):
        if power.is_scalar():
            return k
        power = power * m
    return None
