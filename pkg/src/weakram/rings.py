"""Exact arithmetic with canonical normal forms in small commutative rings.

Supported rings: the integers, Z/m, Galois rings GR(p^n, s), restricted
polynomial quotients (one monic modulus per variable, nilpotency, pairwise
annihilation), and the ramified truncation O/(p*pi) of the ring of integers
of a totally ramified extension of W(F_{p^s}) cut out by an Eisenstein
polynomial.

Every element is kept in a canonical normal form, so two elements are equal
exactly when their payloads are equal.  All values are immutable and all
operations are pure; handles and elements may be shared freely.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

SCHEMA_VERSION = 1


class RingError(ValueError):
    """A malformed descriptor, unsupported relation shape, or bad operand."""


class NonUnitError(ZeroDivisionError):
    """Inversion of an element that is not a unit (the input is well formed)."""


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _int_inv(a, m):
    g, x, _ = _xgcd(a % m, m)
    if g != 1:
        raise NonUnitError(f"{a} is not invertible modulo {m}")
    return x % m


# ------------------------------------------------------------------------
# polynomials over F_p with int coefficient lists (little-endian)

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    a = list(a)
    binv = _int_inv(b[-1], p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * binv) % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return q, _fp_trim(a)


def _fp_poly_irreducible(f, p):
    """Trial division by all monic polynomials of degree <= deg(f)//2."""
    f = _fp_trim(list(f))
    d = len(f) - 1
    if d <= 0:
        return False
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            _, r = _fp_divmod(f, g, p)
            if not r:
                return False
    return True


def default_galois_modulus(p, s):
    """The canonical monic degree-s polynomial irreducible mod p.

    Candidates are ordered by their coefficient tuple read from degree s-1
    down to the constant term; the first irreducible one wins.  This makes
    descriptors reproducible across runs.
    """
    if s == 1:
        return (0, 1)
    for k in range(p ** s):
        digits = []
        kk = k
        for _ in range(s):
            digits.append(kk % p)
            kk //= p
        f = digits + [1]
        if _fp_poly_irreducible(f, p):
            return tuple(f)
    raise RingError(f"no irreducible polynomial of degree {s} mod {p}")


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


# ------------------------------------------------------------------------


class Elem:
    """A ring element: a ring handle plus a canonical payload."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.ring != self.ring:
                raise RingError("operands belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Elem(self.ring, self.ring.add(self.payload, o.payload))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Elem(self.ring, self.ring.sub(self.payload, o.payload))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Elem(self.ring, self.ring.sub(o.payload, self.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Elem(self.ring, self.ring.mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.payload))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise RingError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, Elem):
            return NotImplemented
        return self.ring == other.ring and self.payload == other.payload

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __repr__(self):
        return f"Elem({self.ring!r}, {self.payload!r})"

    def __str__(self):
        return str(self.payload)

    def is_zero(self):
        return self.payload == self.ring.zero().payload

    def is_unit(self):
        return self.ring.is_unit(self.payload)

    def inv(self):
        return Elem(self.ring, self.ring.inv(self.payload))

    def to_json(self):
        return self.ring.payload_to_json(self.payload)


class Ring:
    """Common interface of all ring handles."""

    characteristic = None
    is_finite = False

    def elem(self, payload):
        return Elem(self, self.normalize(payload))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_unit(self, payload):
        try:
            self.inv(payload)
            return True
        except NonUnitError:
            return False

    def is_unit_formal(self, payload):
        """Unit test in the ring the handle models.

        For most handles this is plain invertibility.  Quotient rings with a
        declared residue characteristic model complete local rings whose
        variables sit in the maximal ideal; there an element is a unit as
        soon as its constant term is, even when no polynomial inverse exists.
        """
        return self.is_unit(payload)

    def divide_exact(self, a, b):
        """Payload q with q*b == a, or None when no such q is found."""
        try:
            return self.mul(a, self.inv(b))
        except NonUnitError:
            return None

    def elements(self):
        raise RingError(f"{self} is not a finite ring")

    def size(self):
        raise RingError(f"{self} is not a finite ring")

    def sample(self, rng):
        raise NotImplementedError

    def payload_to_json(self, payload):
        return payload

    def payload_from_json(self, data):
        return self.normalize(data)

    def __ne__(self, other):
        return not self.__eq__(other)


class IntegerRing(Ring):
    characteristic = 0

    def normalize(self, payload):
        if not isinstance(payload, int):
            raise RingError("integer payload expected")
        return payload

    def from_int(self, k):
        return Elem(self, k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NonUnitError(f"{a} is not a unit in Z")

    def divide_exact(self, a, b):
        if b == 0:
            return None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def is_nilpotent(self, a):
        return a == 0

    def sample(self, rng):
        return Elem(self, rng.randint(-50, 50))

    def __repr__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "kind": "integers"}


class ModularRing(Ring):
    """Z/m with representatives in [0, m)."""

    is_finite = True

    def __init__(self, m):
        if not isinstance(m, int) or m < 2:
            raise RingError("modulus must be an integer >= 2")
        self.m = m
        self.characteristic = m

    def normalize(self, payload):
        if not isinstance(payload, int):
            raise RingError("integer payload expected")
        return payload % self.m

    def from_int(self, k):
        return Elem(self, k % self.m)

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def inv(self, a):
        return _int_inv(a, self.m)

    def divide_exact(self, a, b):
        g, x, _ = _xgcd(b, self.m)
        if a % g:
            return None
        # any solution works; callers verify the product
        return (x * (a // g)) % self.m

    def is_nilpotent(self, a):
        return pow(a, self.m.bit_length(), self.m) == 0

    def elements(self):
        for k in range(self.m):
            yield Elem(self, k)

    def size(self):
        return self.m

    def sample(self, rng):
        return Elem(self, rng.randrange(self.m))

    def __repr__(self):
        return f"Z/{self.m}"

    def __eq__(self, other):
        return isinstance(other, ModularRing) and self.m == other.m

    def __hash__(self):
        return hash(("Zm", self.m))

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "kind": "integers_mod", "m": self.m}


class GaloisRing(Ring):
    """GR(p^n, s) = (Z/p^n)[x]/(f) with f monic of degree s, irreducible mod p.

    For n = 1 this is the field F_{p^s}.  Payloads are little-endian
    coefficient tuples of length s with entries in [0, p^n).
    """

    is_finite = True

    def __init__(self, p, n, s, modulus=None):
        if not _is_prime(p):
            raise RingError(f"{p} is not prime")
        if n < 1 or s < 1:
            raise RingError("exponent and degree must be >= 1")
        self.p = p
        self.n = n
        self.s = s
        self.q = p ** n
        self.characteristic = self.q
        if modulus is None:
            modulus = default_galois_modulus(p, s)
        modulus = tuple(c % self.q for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1:
            raise RingError("modulus must be monic of degree s")
        if s > 1 and not _fp_poly_irreducible([c % p for c in modulus], p):
            raise RingError("modulus is reducible mod p")
        self.modulus = modulus

    def normalize(self, payload):
        payload = tuple(int(c) % self.q for c in payload)
        if len(payload) != self.s:
            raise RingError(f"payload must have length {self.s}")
        return payload

    def from_int(self, k):
        return Elem(self, (k % self.q,) + (0,) * (self.s - 1))

    def add(self, a, b):
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.q for x in a)

    def mul(self, a, b):
        s, q = self.s, self.q
        prod = [0] * (2 * s - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % q
        for i in range(2 * s - 2, s - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for k in range(s):
                    prod[i - s + k] = (prod[i - s + k] - c * self.modulus[k]) % q
        return tuple(prod[:s])

    def residue(self, a):
        """Image in the residue field F_{p^s} (little-endian tuple mod p)."""
        return tuple(c % self.p for c in a)

    def teich_lift(self, a):
        """The coefficientwise lift of a residue-field payload."""
        return self.normalize(a)

    def inv(self, a):
        if all(c % self.p == 0 for c in a):
            raise NonUnitError(f"{a} is not a unit in {self}")
        # inverse mod p by polynomial xgcd, then Hensel steps up to p^n
        fp_mod = [c % self.p for c in self.modulus]
        r0, r1 = fp_mod, _fp_trim([c % self.p for c in a])
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _fp_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_trim([(x - y) % self.p for x, y in
                                   itertools.zip_longest(s0, _fp_mul(q, s1, self.p), fillvalue=0)])
        if not r1:
            raise NonUnitError(f"{a} is not a unit in {self}")
        c = _int_inv(r1[0], self.p)
        coeffs = [c * v for v in s1] + [0] * self.s
        x = self.normalize(tuple(coeffs[:self.s]))
        two = self.from_int(2).payload
        for _ in range(max(1, self.n.bit_length())):
            x = self.mul(x, self.sub(two, self.mul(a, x)))
        if self.mul(a, x) != self.one().payload:
            raise NonUnitError(f"{a} is not a unit in {self}")
        return x

    def is_nilpotent(self, a):
        return all(c % self.p == 0 for c in a)

    def elements(self):
        for tup in itertools.product(range(self.q), repeat=self.s):
            yield Elem(self, tup)

    def size(self):
        return self.q ** self.s

    def sample(self, rng):
        return Elem(self, tuple(rng.randrange(self.q) for _ in range(self.s)))

    def __repr__(self):
        if self.n == 1:
            return f"F_{self.p ** self.s}"
        return f"GR({self.q},{self.s})"

    def __eq__(self, other):
        return (isinstance(other, GaloisRing) and
                (self.p, self.n, self.s, self.modulus) ==
                (other.p, other.n, other.s, other.modulus))

    def __hash__(self):
        return hash(("GR", self.p, self.n, self.s, self.modulus))

    def payload_to_json(self, payload):
        return list(payload)

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "kind": "galois_ring", "p": self.p,
                "n": self.n, "s": self.s, "modulus": list(self.modulus)}


class RationalField(Ring):
    """Q with Fraction payloads.  Internal helper, not part of the JSON schema."""

    characteristic = 0

    def normalize(self, payload):
        return Fraction(payload)

    def from_int(self, k):
        return Elem(self, Fraction(k))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NonUnitError("0 is not a unit")
        return 1 / a

    def is_nilpotent(self, a):
        return a == 0

    def sample(self, rng):
        return Elem(self, Fraction(rng.randint(-20, 20), rng.randint(1, 9)))

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "kind": "rationals"}


# relation shapes for QuotientRing
MODULUS = "modulus"
NILPOTENT = "nilpotent"
ANNIHILATE = "annihilate"


class QuotientRing(Ring):
    """base[v1, ..., vk] modulo a restricted relation set.

    Supported relations, with a fixed rewrite order (modulus substitution to
    a fixed point, then nilpotency, then annihilation):

      ("modulus", v, coeffs)   one monic univariate modulus for v
      ("nilpotent", v, e)      v^e = 0
      ("annihilate", v, w)     v*w = 0 for distinct variables v, w

    A variable carrying a modulus may not appear in an annihilation pair
    (the rewrite system would not be confluent).  Payloads are sorted tuples
    of (exponent-tuple, base payload) with zero coefficients dropped.
    """

    def __init__(self, base, variables, relations=(), residue_char=None):
        if isinstance(base, QuotientRing):
            raise RingError("nested quotient rings are not supported")
        if residue_char is not None and not _is_prime(residue_char):
            raise RingError("residue characteristic must be prime")
        self.residue_char = residue_char
        self.base = base
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars) or not self.vars:
            raise RingError("variable names must be distinct and non-empty")
        self._vidx = {v: i for i, v in enumerate(self.vars)}
        self._mod = {}
        self._nil = {}
        self._ann = set()
        for rel in relations:
            shape = rel[0]
            if shape == MODULUS:
                _, v, coeffs = rel
                i = self._require_var(v)
                if i in self._mod or i in self._nil:
                    raise RingError(f"variable {v} already constrained")
                coeffs = tuple(int(c) for c in coeffs)
                if len(coeffs) < 2 or coeffs[-1] != 1:
                    raise RingError("modulus must be monic of degree >= 1")
                self._mod[i] = coeffs
            elif shape == NILPOTENT:
                _, v, e = rel
                i = self._require_var(v)
                if i in self._mod or i in self._nil:
                    raise RingError(f"variable {v} already constrained")
                if not isinstance(e, int) or e < 1:
                    raise RingError("nilpotency exponent must be >= 1")
                self._nil[i] = e
            elif shape == ANNIHILATE:
                _, v, w = rel
                i, j = self._require_var(v), self._require_var(w)
                if i == j:
                    raise RingError("use a nilpotency relation for v*v = 0")
                self._ann.add(frozenset((i, j)))
            else:
                raise RingError(f"unsupported relation shape: {shape!r}")
        for pair in self._ann:
            for i in pair:
                if i in self._mod:
                    raise RingError(
                        f"variable {self.vars[i]} has a modulus and an "
                        "annihilation relation; this combination is rejected")
        self.relations = tuple(relations)
        self.characteristic = base.characteristic

    def _require_var(self, v):
        if v not in self._vidx:
            raise RingError(f"unknown variable {v!r}")
        return self._vidx[v]

    # -- normal form ------------------------------------------------------

    def _reduce(self, terms):
        """Rewrite a {exps: base payload} dict into normal form."""
        base = self.base
        zero = base.zero().payload
        pending = True
        while pending:
            pending = False
            for exps in list(terms.keys()):
                coeff = terms[exps]
                for i, d in self._mod.items():
                    deg = len(d) - 1
                    if exps[i] >= deg:
                        del terms[exps]
                        for k in range(deg):
                            if d[k] == 0:
                                continue
                            ne = list(exps)
                            ne[i] = exps[i] - deg + k
                            ne = tuple(ne)
                            add = base.mul(coeff, base.from_int(-d[k]).payload)
                            terms[ne] = base.add(terms.get(ne, zero), add)
                        pending = True
                        break
                if pending:
                    break
        out = {}
        for exps, coeff in terms.items():
            if coeff == zero:
                continue
            if any(exps[i] >= e for i, e in self._nil.items()):
                continue
            if any(all(exps[i] > 0 for i in pair) for pair in self._ann):
                continue
            out[exps] = coeff
        return tuple(sorted(out.items()))

    def normalize(self, payload):
        terms = {}
        zero = self.base.zero().payload
        for exps, coeff in payload:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars) or any(e < 0 for e in exps):
                raise RingError("bad exponent vector")
            coeff = self.base.normalize(coeff)
            terms[exps] = self.base.add(terms.get(exps, zero), coeff)
        return self._reduce(terms)

    def from_int(self, k):
        e = self.base.from_int(k)
        if e.is_zero():
            return Elem(self, ())
        return Elem(self, (((0,) * len(self.vars), e.payload),))

    def var(self, name):
        i = self._require_var(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.vars)))
        return self.elem(((exps, self.base.one().payload),))

    def const(self, base_elem):
        if isinstance(base_elem, Elem):
            if base_elem.ring != self.base:
                raise RingError("constant must come from the base ring")
            base_elem = base_elem.payload
        return self.elem((((0,) * len(self.vars), base_elem),))

    def add(self, a, b):
        zero = self.base.zero().payload
        terms = dict(a)
        for exps, coeff in b:
            terms[exps] = self.base.add(terms.get(exps, zero), coeff)
        return self._reduce(terms)

    def neg(self, a):
        return tuple((exps, self.base.neg(c)) for exps, c in a)

    def mul(self, a, b):
        zero = self.base.zero().payload
        terms = {}
        for ea, ca in a:
            for eb, cb in b:
                exps = tuple(x + y for x, y in zip(ea, eb))
                c = self.base.mul(ca, cb)
                terms[exps] = self.base.add(terms.get(exps, zero), c)
        return self._reduce(terms)

    # -- structure helpers -------------------------------------------------

    def constant_part(self, a):
        zero_exps = (0,) * len(self.vars)
        for exps, coeff in a:
            if exps == zero_exps:
                return coeff
        return self.base.zero().payload

    def _nilpotency_bound(self):
        b = getattr(self.base, "n", None)
        if isinstance(self.base, ModularRing):
            b = self.base.m.bit_length()
        if b is None:
            b = 1
        return b + sum(self._nil.values()) + 1

    def is_nilpotent(self, a):
        x = a
        for _ in range(self._nilpotency_bound().bit_length() + 1):
            if not x:
                return True
            x = self.mul(x, x)
        return not x

    def is_unit_formal(self, a):
        if self.residue_char is None:
            return self.is_unit(a)
        c = self.constant_part(a)
        if isinstance(self.base, IntegerRing):
            return c % self.residue_char != 0
        return self.base.is_unit(c)

    def inv(self, a):
        zero_exps = (0,) * len(self.vars)
        c = self.constant_part(a)
        rest = tuple(t for t in a if t[0] != zero_exps)
        if rest and self.is_nilpotent(rest):
            cinv = self.base.inv(c)  # may raise NonUnitError
            cinv_e = self.const(cinv).payload
            nu = self.mul(cinv_e, self.neg(rest))
            acc = self.one().payload
            term = self.one().payload
            for _ in range(self._nilpotency_bound()):
                term = self.mul(term, nu)
                if not term:
                    break
                acc = self.add(acc, term)
            out = self.mul(cinv_e, acc)
            if self.mul(a, out) == self.one().payload:
                return out
            raise NonUnitError(f"{a} is not a unit in {self}")
        if not rest:
            return self.const(self.base.inv(c)).payload
        out = self._inv_via_modulus(a)
        if out is not None:
            return out
        raise NonUnitError(f"{a} is not a unit in {self}")

    def _single_modulus_var(self):
        used_mod = list(self._mod.items())
        if len(used_mod) != 1 or self._nil or self._ann or len(self.vars) != 1:
            return None
        return used_mod[0]

    def _to_frac_poly(self, a):
        """Univariate payload -> Fraction coefficient list (single-var rings)."""
        i, d = self._single_modulus_var()
        coeffs = [Fraction(0)] * (len(d) - 1)
        for exps, c in a:
            coeffs[exps[i]] = self._base_to_frac(c)
        return coeffs

    def _base_to_frac(self, c):
        if isinstance(self.base, IntegerRing):
            return Fraction(c)
        if isinstance(self.base, RationalField):
            return c
        raise RingError("fraction arithmetic needs a characteristic-0 base")

    def _from_frac_poly(self, coeffs):
        """Fraction coefficients -> payload, or None if not integral."""
        i = self._single_modulus_var()[0]
        terms = []
        for e, c in enumerate(coeffs):
            if c == 0:
                continue
            if isinstance(self.base, IntegerRing):
                if c.denominator != 1:
                    return None
                val = int(c)
            else:
                val = c
            exps = tuple(e if j == i else 0 for j in range(len(self.vars)))
            terms.append((exps, val))
        return self.normalize(tuple(terms))

    def _inv_via_modulus(self, a):
        """Inverse through Q[X]/(modulus) with an integrality check."""
        if self._single_modulus_var() is None:
            return None
        if self.base.characteristic != 0:
            return None
        d = self._single_modulus_var()[1]
        mod = [Fraction(c) for c in d]
        u = self._to_frac_poly(a)
        inv = _frac_poly_invmod(u, mod)
        if inv is None:
            return None
        out = self._from_frac_poly(inv)
        if out is not None and self.mul(a, out) == self.one().payload:
            return out
        return None

    def divide_exact(self, a, b):
        if not b:
            return None
        try:
            return self.mul(a, self.inv(b))
        except NonUnitError:
            pass
        if self._single_modulus_var() is not None and self.base.characteristic == 0:
            mod = [Fraction(c) for c in self._single_modulus_var()[1]]
            fa, fb = self._to_frac_poly(a), self._to_frac_poly(b)
            binv = _frac_poly_invmod(fb, mod)
            if binv is None:
                return None
            q = _frac_poly_mulmod(fa, binv, mod)
            out = self._from_frac_poly(q)
            if out is not None and self.mul(out, b) == a:
                return out
            return None
        if not self._mod and not self._nil and not self._ann:
            return self._divide_free(a, b)
        return None

    def _divide_free(self, a, b):
        """Exact division in a free polynomial ring over a domain."""
        def order(e):
            return (sum(e), e)
        rem = {exps: c for exps, c in a}
        quot = {}
        lead_b = max((e for e, _ in b), key=order)
        coeff_b = dict(b)[lead_b]
        zero = self.base.zero().payload
        guard = 0
        while rem:
            guard += 1
            if guard > 10000:
                return None
            lead_r = max(rem, key=order)
            diff = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(d < 0 for d in diff):
                return None
            c = self.base.divide_exact(rem[lead_r], coeff_b)
            if c is None:
                return None
            quot[diff] = c
            for eb, cb in b:
                exps = tuple(x + y for x, y in zip(diff, eb))
                sub = self.base.mul(c, cb)
                v = self.base.sub(rem.get(exps, zero), sub)
                if v == zero:
                    rem.pop(exps, None)
                else:
                    rem[exps] = v
        q = self._reduce(quot)
        return q if self.mul(q, b) == a else None

    def is_finite_ring(self):
        bounded = all(i in self._mod or i in self._nil
                      for i in range(len(self.vars)))
        return bounded and self.base.is_finite

    @property
    def is_finite(self):
        return self.is_finite_ring()

    def _monomials(self):
        ranges = []
        for i in range(len(self.vars)):
            if i in self._mod:
                ranges.append(range(len(self._mod[i]) - 1))
            elif i in self._nil:
                ranges.append(range(self._nil[i]))
            else:
                raise RingError(f"{self} is not a finite ring")
        for exps in itertools.product(*ranges):
            if any(all(exps[i] > 0 for i in pair) for pair in self._ann):
                continue
            yield exps

    def elements(self):
        monos = list(self._monomials())
        base_elems = [e.payload for e in self.base.elements()]
        for combo in itertools.product(base_elems, repeat=len(monos)):
            yield self.elem(tuple(zip(monos, combo)))

    def size(self):
        return self.base.size() ** len(list(self._monomials()))

    def sample(self, rng):
        terms = []
        for _ in range(rng.randint(0, 4)):
            exps = []
            for i in range(len(self.vars)):
                if i in self._mod:
                    hi = len(self._mod[i]) - 2
                elif i in self._nil:
                    hi = self._nil[i] - 1
                else:
                    hi = 2
                exps.append(rng.randint(0, max(hi, 0)))
            terms.append((tuple(exps), self.base.sample(rng).payload))
        return self.elem(tuple(terms))

    def __repr__(self):
        rels = ", ".join(self._rel_strings())
        body = f"{self.base!r}[{', '.join(self.vars)}]"
        return f"{body}/({rels})" if rels else body

    def _rel_strings(self):
        out = []
        for i, d in self._mod.items():
            out.append(f"{self.vars[i]}: modulus deg {len(d) - 1}")
        for i, e in self._nil.items():
            out.append(f"{self.vars[i]}^{e}")
        for pair in sorted(tuple(sorted(p)) for p in self._ann):
            out.append(f"{self.vars[pair[0]]}*{self.vars[pair[1]]}")
        return out

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and self.base == other.base and
                self.vars == other.vars and self._mod == other._mod and
                self._nil == other._nil and self._ann == other._ann and
                self.residue_char == other.residue_char)

    def __hash__(self):
        return hash(("Quot", self.base, self.vars, tuple(sorted(self._mod.items())),
                     tuple(sorted(self._nil.items())),
                     tuple(sorted(tuple(sorted(p)) for p in self._ann)),
                     self.residue_char))

    def payload_to_json(self, payload):
        return [[list(exps), self.base.payload_to_json(c)] for exps, c in payload]

    def payload_from_json(self, data):
        return self.normalize(tuple(
            (tuple(exps), self.base.payload_from_json(c)) for exps, c in data))

    def to_json(self):
        rels = []
        for i, d in sorted(self._mod.items()):
            rels.append([MODULUS, self.vars[i], list(d)])
        for i, e in sorted(self._nil.items()):
            rels.append([NILPOTENT, self.vars[i], e])
        for pair in sorted(tuple(sorted(p)) for p in self._ann):
            rels.append([ANNIHILATE, self.vars[pair[0]], self.vars[pair[1]]])
        out = {"schema": SCHEMA_VERSION, "kind": "quotient",
               "base": self.base.to_json(), "vars": list(self.vars),
               "relations": rels}
        if self.residue_char is not None:
            out["residue_char"] = self.residue_char
        return out


def _frac_poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _frac_poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _frac_poly_trim(q), _frac_poly_trim(a)


def _frac_poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _frac_poly_trim(out)


def _frac_poly_mulmod(a, b, mod):
    _, r = _frac_poly_divmod(_frac_poly_mul(a, b), mod)
    return r


def _frac_poly_invmod(u, mod):
    """Inverse of u in Q[X]/(mod), or None when gcd(u, mod) != 1."""
    u = _frac_poly_trim([Fraction(c) for c in u])
    if not u:
        return None
    r0, r1 = list(mod), u
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _frac_poly_divmod(r0, r1)
        r0, r1 = r1, r
        prod = _frac_poly_mul(q, s1)
        s0, s1 = s1, _frac_poly_trim(
            [x - y for x, y in itertools.zip_longest(s0, prod, fillvalue=Fraction(0))])
    if len(r0) != 1:
        return None
    c = r0[0]
    inv = [x / c for x in s0]
    if len(inv) >= len(mod):
        _, inv = _frac_poly_divmod(inv, mod)
    return inv


class RamifiedTower(Ring):
    """O/(p*pi) for the order O = GR(p^2, s)[a]/(psi(a)), psi Eisenstein.

    With e = (p-1)/2 = deg(psi) and pi = (a), the quotient has p*a = 0 and
    a^e = -psi(0); a payload stores the constant coefficient in GR(p^2, s)
    and the coefficients of a^1 ... a^(e-1) in the residue field F_{p^s}.
    """

    is_finite = True

    def __init__(self, p, s, psi=None):
        if not _is_prime(p) or p == 2:
            raise RingError("p must be an odd prime")
        if s < 1:
            raise RingError("degree must be >= 1")
        self.p = p
        self.s = s
        self.e = (p - 1) // 2
        if psi is None:
            from .chebyshev import psi_poly
            psi = psi_poly(p)
        psi = tuple(int(c) for c in psi)
        if len(psi) != self.e + 1 or psi[-1] != 1:
            raise RingError("psi must be monic of degree (p-1)/2")
        if any(c % p for c in psi[:-1]):
            raise RingError("psi is not Eisenstein: lower coefficients must be divisible by p")
        if psi[0] % (p * p) == 0:
            raise RingError("psi is not Eisenstein: constant term has p-valuation > 1")
        self.psi = psi
        self.eps = (psi[0] // p) % p
        self.gr2 = GaloisRing(p, 2, s)
        self.fld = GaloisRing(p, 1, s)
        self.characteristic = p * p

    def normalize(self, payload):
        c0, rest = payload
        c0 = self.gr2.normalize(c0)
        rest = tuple(self.fld.normalize(r) for r in rest)
        if len(rest) != self.e - 1:
            raise RingError(f"payload needs {self.e - 1} higher coefficients")
        return (c0, rest)

    def from_int(self, k):
        return Elem(self, (self.gr2.from_int(k).payload,
                           tuple(self.fld.zero().payload for _ in range(self.e - 1))))

    def gen(self):
        """The image of the Eisenstein root a."""
        if self.e == 1:
            return self.from_int(-self.p * self.eps)
        rest = [self.fld.zero().payload] * (self.e - 1)
        rest[0] = self.fld.one().payload
        return Elem(self, (self.gr2.zero().payload, tuple(rest)))

    def from_residue(self, fld_payload):
        """The coefficientwise lift of a residue-field element."""
        return Elem(self, (self.gr2.teich_lift(fld_payload),
                           tuple(self.fld.zero().payload for _ in range(self.e - 1))))

    def times_p(self, fld_payload):
        """p times (any lift of) a residue-field element."""
        c0 = tuple((self.p * c) % (self.p ** 2) for c in fld_payload)
        return Elem(self, (c0, tuple(self.fld.zero().payload for _ in range(self.e - 1))))

    def add(self, a, b):
        return (self.gr2.add(a[0], b[0]),
                tuple(self.fld.add(x, y) for x, y in zip(a[1], b[1])))

    def neg(self, a):
        return (self.gr2.neg(a[0]), tuple(self.fld.neg(x) for x in a[1]))

    def mul(self, a, b):
        e = self.e
        p2 = self.p * self.p
        acoef = (self.gr2.residue(a[0]),) + a[1]
        bcoef = (self.gr2.residue(b[0]),) + b[1]
        c0 = self.gr2.mul(a[0], b[0])
        # a^e folds into the constant slot via a^e = -p*eps;
        # a^m vanishes for m > e since p*a = 0
        if e >= 2:
            fold = self.fld.zero().payload
            for i in range(1, e):
                j = e - i
                fold = self.fld.add(fold, self.fld.mul(acoef[i], bcoef[j]))
            if any(fold):
                scale = (-self.p * self.eps) % p2
                corr = tuple((scale * c) % p2 for c in fold)
                c0 = self.gr2.add(c0, corr)
        rest = []
        for k in range(1, e):
            acc = self.fld.zero().payload
            for i in range(0, k + 1):
                j = k - i
                if i <= e - 1 and j <= e - 1:
                    acc = self.fld.add(acc, self.fld.mul(acoef[i], bcoef[j]))
            rest.append(acc)
        return (c0, tuple(rest))

    def is_nilpotent(self, a):
        return all(c % self.p == 0 for c in a[0])

    def inv(self, a):
        c0 = a[0]
        c0inv = self.gr2.inv(c0)  # raises NonUnitError for non-units
        unit = Elem(self, (c0inv, tuple(self.fld.zero().payload
                                        for _ in range(self.e - 1))))
        x = Elem(self, a)
        nil = unit * x - self.one()
        acc = self.one()
        term = self.one()
        for _ in range(self.e + 2):
            term = term * (-nil)
            if term.is_zero():
                break
            acc = acc + term
        out = (unit * acc).payload
        if self.mul(a, out) != self.one().payload:
            raise NonUnitError(f"{a} is not a unit in {self}")
        return out

    def elements(self):
        for c0 in self.gr2.elements():
            for rest in itertools.product(self.fld.elements(), repeat=self.e - 1):
                yield Elem(self, (c0.payload, tuple(r.payload for r in rest)))

    def size(self):
        return self.gr2.size() * self.fld.size() ** (self.e - 1)

    def sample(self, rng):
        return Elem(self, (self.gr2.sample(rng).payload,
                           tuple(self.fld.sample(rng).payload for _ in range(self.e - 1))))

    def __repr__(self):
        return f"O/(p*pi)(p={self.p},s={self.s})"

    def __eq__(self, other):
        return (isinstance(other, RamifiedTower) and
                (self.p, self.s, self.psi) == (other.p, other.s, other.psi))

    def __hash__(self):
        return hash(("RT", self.p, self.s, self.psi))

    def payload_to_json(self, payload):
        return [list(payload[0]), [list(r) for r in payload[1]]]

    def payload_from_json(self, data):
        return self.normalize((tuple(data[0]), tuple(tuple(r) for r in data[1])))

    def to_json(self):
        return {"schema": SCHEMA_VERSION, "kind": "ramified_tower",
                "p": self.p, "s": self.s, "psi": list(self.psi)}


# ------------------------------------------------------------------------


def ring_make(descriptor):
    """Validate a ring descriptor and return a usable handle.

    Accepts a Ring instance (validated on construction) or a JSON
    descriptor dict.
    """
    if isinstance(descriptor, Ring):
        return descriptor
    if isinstance(descriptor, dict):
        return ring_from_json(descriptor)
    raise RingError(f"not a ring descriptor: {descriptor!r}")


def ring_from_json(data):
    kind = data.get("kind")
    if kind == "integers":
        return IntegerRing()
    if kind == "integers_mod":
        return ModularRing(int(data["m"]))
    if kind == "galois_ring":
        modulus = data.get("modulus")
        return GaloisRing(int(data["p"]), int(data["n"]), int(data["s"]),
                          tuple(modulus) if modulus is not None else None)
    if kind == "quotient":
        rels = [tuple(r) if r[0] != MODULUS else (r[0], r[1], tuple(r[2]))
                for r in data.get("relations", [])]
        return QuotientRing(ring_from_json(data["base"]),
                            tuple(data["vars"]), rels,
                            residue_char=data.get("residue_char"))
    if kind == "ramified_tower":
        psi = data.get("psi")
        return RamifiedTower(int(data["p"]), int(data["s"]),
                             tuple(psi) if psi is not None else None)
    raise RingError(f"unknown ring kind: {kind!r}")


def elem_invert(x):
    """The multiplicative inverse of x; raises NonUnitError for non-units."""
    return x.inv()


def binom_in_ring(x, nn):
    """The falling-factorial binomial x(x-1)...(x-nn+1)/nn! inside x's ring.

    Requires nn! to be a unit, which over residue characteristic p means
    nn in {0, ..., p-1}.
    """
    if not isinstance(nn, int) or nn < 0:
        raise RingError("binomial index must be a non-negative integer")
    ring = x.ring
    num = ring.one()
    for i in range(nn):
        num = num * (x - ring.from_int(i))
    fact = 1
    for i in range(2, nn + 1):
        fact *= i
    try:
        fact_inv = ring.from_int(fact).inv()
    except NonUnitError:
        raise NonUnitError(
            f"{nn}! is not a unit in {ring}; the binomial needs nn below the "
            "residue characteristic") from None
    return num * fact_inv
