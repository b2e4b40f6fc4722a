"""Versal deformation data for weakly ramified local actions.

The table of versal rings is data; every verifiable claim about a row
(generator orders, commutations, tame twists) is re-derived by
verify_relations over an exact finitely generated model of the stated
complete local ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .chebyshev import psi_poly
from .mobius import MobiusElem, mobius_identity, mobius_pow, pgl_order, projective_equal
from .rings import (ANNIHILATE, Elem, GaloisRing, IntegerRing, MODULUS,
                    NILPOTENT, QuotientRing, RingError, binom_in_ring)


def _mult_order(e, bound):
    acc = e
    for k in range(1, bound + 1):
        if acc == e.ring.one():
            return k
        acc = acc * e
    return None


@dataclass(frozen=True)
class GroupSpec:
    """A weakly ramified stabilizer (Z/p)^t : Z/n with explicit basis data.

    The translation part V is spanned by `basis` inside `field`; `zeta` is
    a primitive n-th root of unity acting on V by multiplication.
    """

    p: int
    t: int
    n: int
    field: GaloisRing
    basis: tuple
    zeta: object = None

    def __post_init__(self):
        p, t, n = self.p, self.t, self.n
        if t < 0 or n < 1:
            raise RingError("need t >= 0 and n >= 1")
        if self.field.p != p or self.field.n != 1:
            raise RingError("ambient field must have characteristic p")
        if len(self.basis) != t:
            raise RingError("basis length must equal t")
        if t >= 1 and (p ** t - 1) % n != 0:
            raise RingError(f"n = {n} does not divide p^t - 1 = {p ** t - 1}")
        span = self.span()
        if len(span) != p ** t:
            raise RingError("basis vectors are dependent over F_p")
        if n > 1:
            z = self.zeta
            if z is None or z.ring != self.field:
                raise RingError("zeta must be an element of the ambient field")
            if _mult_order(z, n) != n:
                raise RingError(f"zeta must have multiplicative order exactly {n}")
            for u in self.basis:
                if (z * u).payload not in span:
                    raise RingError("zeta does not stabilize V")

    def span(self):
        """All of V, as a map payload -> F_p coordinate tuple."""
        out = {self.field.zero().payload: (0,) * self.t}
        for coords in itertools.product(range(self.p), repeat=self.t):
            v = self.field.zero()
            for c, u in zip(coords, self.basis):
                v = v + u * c
            out.setdefault(v.payload, coords)
        return out

    @property
    def s(self):
        """Degree of F_p(zeta) over F_p."""
        if self.n == 1 or self.zeta is None:
            return 1
        z = self.zeta
        acc = z
        for s in range(1, self.field.s + 1):
            acc = acc ** self.p
            if acc == z:
                return s
        raise RingError("zeta is not algebraic over F_p")  # unreachable

    def coords_of(self, v):
        span = self.span()
        if v.payload not in span:
            raise RingError("element does not lie in V")
        return span[v.payload]

    def group_order(self):
        return self.p ** self.t * self.n

    def label(self):
        if self.t == 0:
            return f"Z/{self.n}"
        head = f"Z/{self.p}" if self.t == 1 else f"(Z/{self.p})^{self.t}"
        if self.n == 1:
            return head
        return f"{head}:Z/{self.n}"

    def same_action(self, other):
        """Equality as subgroups of PGL2 over a common ambient field."""
        if (self.p, self.t, self.n) != (other.p, other.t, other.n):
            return False
        if self.field != other.field:
            return False
        if set(self.span()) != set(other.span()):
            return False
        if self.n == 1:
            return True
        mine = {(self.zeta ** k).payload for k in range(self.n)}
        theirs = {(other.zeta ** k).payload for k in range(other.n)}
        return mine == theirs

    def to_json(self):
        out = {"p": self.p, "t": self.t, "n": self.n,
               "field": self.field.to_json(),
               "basis": [u.to_json() for u in self.basis]}
        if self.zeta is not None:
            out["zeta"] = self.zeta.to_json()
        return out


def group_spec(p, t, n, field=None, basis=None, zeta=None):
    """The canonical spec: V = F_{p^t} with its power basis.

    For t = 0 the ambient field is F_p(zeta).
    """
    if t >= 1:
        m = t
    else:
        m = 1
        while (p ** m - 1) % n != 0:
            m += 1
    if field is None:
        field = GaloisRing(p, 1, m)
    if basis is None:
        basis = tuple(field.elem(tuple(1 if i == j else 0 for i in range(field.s)))
                      for j in range(t))
    if zeta is None and n > 1:
        zeta = _find_order_n(field, n)
    return GroupSpec(p, t, n, field, tuple(basis), zeta)


def _find_order_n(field, n):
    for e in field.elements():
        if e.is_zero():
            continue
        if _mult_order(e, n) == n:
            return e
    raise RingError(f"no element of order {n} in {field}")


def generators_from_spec(spec):
    """The normalized generators: translations sigma_u and the zeta dilation."""
    k = spec.field
    gens = []
    for i, u in enumerate(spec.basis):
        gens.append((f"sigma_u{i + 1}",
                     MobiusElem(k, k.one(), k.zero(), u, k.one())))
    if spec.n > 1:
        gens.append(("g", MobiusElem(k, spec.zeta, k.zero(), k.zero(), k.one())))
    return gens


@dataclass
class VersalPresentation:
    group: str
    ring: object                 # exact model ring, or None when unsupported
    ring_label: str
    characteristic: int
    generators: tuple = ()
    relations: tuple = ()        # formal relation strings, display only
    notes: tuple = ()
    aux: dict = dc_field(default_factory=dict)

    def generator(self, name):
        for nm, m in self.generators:
            if nm == name:
                return m
        raise RingError(f"no generator named {name!r}")

    def to_json(self):
        return {
            "group": self.group,
            "ring": self.ring.to_json() if self.ring is not None else None,
            "ring_label": self.ring_label,
            "characteristic": self.characteristic,
            "generators": [[nm, m.to_json()] for nm, m in self.generators],
            "relations": list(self.relations),
            "notes": list(self.notes),
        }


def cyclic_versal_ring(p):
    """Z[alpha]/(psi_p), the exact model of W(k)[[alpha]]/(psi_p)."""
    return QuotientRing(IntegerRing(), ("alpha",),
                        ((MODULUS, "alpha", tuple(psi_poly(p))),),
                        residue_char=p)


def equichar_ring(spec):
    """k[alpha, x_1..x_{t-1}] / (alpha^((p-1)/2), alpha*x_i) over k = F_{p^t}."""
    p, t = spec.p, spec.t
    if p < 5:
        raise RingError("the equicharacteristic family needs p >= 5")
    names = ("alpha",) + tuple(f"x{i}" for i in range(1, t))
    rels = [(NILPOTENT, "alpha", (p - 1) // 2)]
    rels += [(ANNIHILATE, "alpha", f"x{i}") for i in range(1, t)]
    return QuotientRing(spec.field, names, tuple(rels))


def equichar_generator(u, spec, assignments=None, convention="basis-twist"):
    """The deformed translation by u in V, over the equicharacteristic ring.

    The matrix is assembled from the four binomial sums in alpha.  The
    lower-left entry additionally moves with the deformation coordinates:
    under the default convention the basis vector u_{i+1} is displaced by
    x_i * u_{i+1}, which keeps u -> sigma_u additive and the family
    commutative of order p.  convention="literal" instead adds the constant
    u_1 + sum x_i u_i; that reading breaks commutativity and is kept only
    as a recorded experiment.
    """
    p, t = spec.p, spec.t
    if p in (2, 3):
        raise RingError("the family is stated for p >= 5 (alpha = 0 at p = 3)")
    if t < 2:
        raise RingError("the family needs t > 1")
    if assignments is None:
        ring = equichar_ring(spec)
        assignments = {name: ring.var(name) for name in ring.vars}
    alpha = assignments["alpha"]
    ring = alpha.ring
    xs = [assignments[f"x{i}"] for i in range(1, t)]
    e = (p - 1) // 2

    def into(kelem):
        if isinstance(ring, QuotientRing) and ring.base == spec.field:
            return ring.const(kelem)
        raise RingError("assignments must live over a quotient of the spec field")

    coords = spec.coords_of(u)
    uim = into(u)
    A = ring.zero()
    for j in range(0, e + 1):
        A = A + binom_in_ring(uim - 1 + j, 2 * j) * alpha ** j
    C = ring.zero()
    for j in range(0, e):
        C = C + binom_in_ring(uim + j, 2 * j + 1) * alpha ** j
    D = ring.zero()
    for j in range(0, e + 1):
        D = D + binom_in_ring(uim + j, 2 * j) * alpha ** j
    if convention == "basis-twist":
        extra = ring.zero()
        for i in range(1, t):
            extra = extra + xs[i - 1] * into(spec.basis[i]) * coords[i]
    elif convention == "literal":
        extra = into(spec.basis[0])
        for i in range(1, t):
            extra = extra + xs[i - 1] * into(spec.basis[i])
    else:
        raise RingError(f"unknown convention {convention!r}")
    return MobiusElem(ring, A, alpha * C, C + extra, D)


# -- explicit characteristic-zero lifts ------------------------------------


def _cyclic_p_matrices(p):
    R = cyclic_versal_ring(p)
    alpha, one = R.var("alpha"), R.one()
    m = MobiusElem(R, one, alpha, one, one + alpha)
    return R, (("sigma_u1", m),)


def lift_generators(case, p):
    """The explicit characteristic-zero lifts, over exact model rings."""
    if case == "CyclicP":
        if p < 3:
            raise RingError("CyclicP needs an odd prime")
        R, gens = _cyclic_p_matrices(p)
        return VersalPresentation(
            group=f"Z/{p}", ring=R,
            ring_label=f"W(k)[[alpha]]/(psi_{p}(alpha))",
            characteristic=0, generators=gens,
            relations=("sigma_u1^p = 1",),
            notes=("rigid for p = 3 where psi = alpha + 3",))
    if case == "Cyclic2":
        if p != 2:
            raise RingError("Cyclic2 fixes p = 2")
        R = QuotientRing(IntegerRing(), ("alpha",), (), residue_char=2)
        alpha, one = R.var("alpha"), R.one()
        m = MobiusElem(R, one, alpha, one, -one)
        return VersalPresentation(
            group="Z/2", ring=R, ring_label="W(k)[[alpha]]",
            characteristic=0, generators=(("sigma_u1", m),),
            relations=("sigma_u1^2 = 1",))
    if case == "Klein":
        if p != 2:
            raise RingError("Klein fixes p = 2")
        R = QuotientRing(IntegerRing(), ("alpha", "ut"), (), residue_char=2)
        alpha, ut, one = R.var("alpha"), R.var("ut"), R.one()
        s1 = MobiusElem(R, one, alpha, one, -one)
        su = MobiusElem(R, one, -alpha * ut - 2, ut, -one)
        return VersalPresentation(
            group="(Z/2)^2", ring=R, ring_label="W(k)[[alpha]] (ut lifts u)",
            characteristic=0, generators=(("sigma_u1", s1), ("sigma_u2", su)),
            relations=("sigma_u1^2 = sigma_u2^2 = 1",
                       "sigma_u1 sigma_u2 = sigma_u2 sigma_u1"))
    if case == "Dp":
        if p <= 3:
            raise RingError("Dp needs p > 3 (use S3 for p = 3)")
        R, gens = _cyclic_p_matrices(p)
        alpha, one = R.var("alpha"), R.one()
        g = MobiusElem(R, one, alpha, R.zero(), -one)
        return VersalPresentation(
            group=f"Z/{p}:Z/2", ring=R,
            ring_label=f"W(k)[[alpha]]/(psi_{p}(alpha))",
            characteristic=0, generators=gens + (("g", g),),
            relations=(f"sigma_u1^{p} = g^2 = (g sigma_u1)^2 = 1",))
    if case == "S3":
        if p != 3:
            raise RingError("S3 fixes p = 3")
        R = IntegerRing()
        m = MobiusElem(R, 1, -3, 1, -2)
        g = MobiusElem(R, 1, 0, 1, -1)
        return VersalPresentation(
            group="Z/3:Z/2", ring=R, ring_label="W(k)",
            characteristic=0, generators=(("sigma_u1", m), ("g", g)),
            relations=("sigma_u1^3 = g^2 = (g sigma_u1)^2 = 1",))
    if case == "A4":
        if p != 2:
            raise RingError("A4 fixes p = 2")
        return _a4_presentation()
    raise RingError(f"unknown case {case!r}")


_A4_CACHE = []


def _a4_presentation():
    if not _A4_CACHE:
        from .obstruction import exhaustive_lift_search
        spec = group_spec(2, 2, 3)
        ring = QuotientRing(IntegerRing(), ("j",), ((MODULUS, "j", (1, 1, 1)),))
        outcome = exhaustive_lift_search(spec, ring, entry_bound=6)
        if outcome.status != "found":
            raise RingError("tetrahedral lift search unexpectedly exhausted")
        _A4_CACHE.append(outcome.witness)
    return _A4_CACHE[0]


# -- the table --------------------------------------------------------------


def versal_table(spec):
    """The versal deformation ring and generator family for one local action."""
    p, t, n = spec.p, spec.t, spec.n
    label = spec.label()
    if t == 0:
        return VersalPresentation(
            group=label, ring=IntegerRing(), ring_label="W(k)",
            characteristic=0,
            notes=("tame actions lift uniquely over W(k)",))
    if n == 1:
        if t == 1:
            if p == 2:
                return lift_generators("Cyclic2", 2)
            return lift_generators("CyclicP", p)
        if p == 2:
            if t == 2:
                return lift_generators("Klein", 2)
            vs = [f"x{i}" for i in range(1, t + 1)]
            rels = ("x1+...+x%d" % t, "u1*x1+...+u%d*x%d" % (t, t),
                    "alpha*(xi*uj - xj*ui) for all i, j")
            return VersalPresentation(
                group=label, ring=None,
                ring_label=("k[[alpha,%s]]/(%s)" % (",".join(vs), ", ".join(rels))),
                characteristic=2,
                relations=rels,
                notes=("relation shapes outside the supported quotient kernel; "
                       "presentation data only",))
        if p == 3:
            names = tuple(f"x{i}" for i in range(1, t))
            ring = QuotientRing(spec.field, names, ())
            return VersalPresentation(
                group=label, ring=ring,
                ring_label="k[[%s]]" % ",".join(names),
                characteristic=3,
                generators=tuple(generators_from_spec(spec)),
                notes=("alpha direction is rigid at p = 3; generators shown "
                       "are the residue translations",))
        ring = equichar_ring(spec)
        assignments = {name: ring.var(name) for name in ring.vars}
        gens = tuple((f"sigma_u{i + 1}",
                      equichar_generator(u, spec, assignments))
                     for i, u in enumerate(spec.basis))
        return VersalPresentation(
            group=label, ring=ring,
            ring_label=("k[[alpha,%s]]/(alpha^%d, alpha*x_i)"
                        % (",".join(ring.vars[1:]), (p - 1) // 2)),
            characteristic=p, generators=gens)
    # n > 1
    if t == 1:
        if n == 2:
            if p == 3:
                return lift_generators("S3", 3)
            return lift_generators("Dp", p)
        return VersalPresentation(
            group=label, ring=spec.field, ring_label="k",
            characteristic=p,
            generators=tuple(generators_from_spec(spec)),
            notes=("rigid: the dilation kills the alpha direction, and no "
                   "order-p lift exists modulo p^2",))
    if p == 2 and t == 2 and n == 3:
        return lift_generators("A4", 2)
    s = spec.s
    if p >= 5 and n == 2:
        ring = equichar_ring(spec)
        assignments = {name: ring.var(name) for name in ring.vars}
        gens = tuple((f"sigma_u{i + 1}",
                      equichar_generator(u, spec, assignments))
                     for i, u in enumerate(spec.basis))
        gens += tuple(gm for gm in generators_from_spec(spec) if gm[0] == "g")
        return VersalPresentation(
            group=label, ring=ring,
            ring_label=("k[[alpha,%s]]/(alpha^%d, alpha*x_i)"
                        % (",".join(ring.vars[1:]), (p - 1) // 2)),
            characteristic=p, generators=gens,
            notes=("tame generator shown at the residue level",))
    count = t // s - 1
    names = tuple(f"x{i}" for i in range(1, count + 1))
    ring = QuotientRing(spec.field, names, ()) if names else spec.field
    return VersalPresentation(
        group=label, ring=ring,
        ring_label="k[[%s]]" % ",".join(names) if names else "k",
        characteristic=p,
        generators=tuple(generators_from_spec(spec)),
        notes=("generators shown are the residue action",))


# -- relation verification ---------------------------------------------------


def verify_relations(pres, spec):
    """Check the group relations of a presentation in PGL2 over its ring.

    Reports, per relation: order of every p-part generator is p, the p-part
    commutes projectively (scalars recorded), the tame generator has order
    n, and conjugation by it realizes the zeta twist on V.
    """
    results = []
    p_part = [(nm, m) for nm, m in pres.generators if nm.startswith("sigma")]
    tame = [(nm, m) for nm, m in pres.generators if nm == "g"]

    def record(name, ok, scalar=None):
        entry = {"relation": name, "ok": bool(ok)}
        if scalar is not None:
            entry["scalar"] = scalar.to_json()
        results.append(entry)

    for nm, m in p_part:
        power = mobius_pow(m, spec.p)
        ok = power.is_scalar() and not m.is_scalar()
        record(f"{nm}^{spec.p} scalar", ok)
    for (nm1, m1), (nm2, m2) in itertools.combinations(p_part, 2):
        lam = projective_equal(m1 * m2, m2 * m1)
        record(f"{nm1} {nm2} = lambda {nm2} {nm1}", lam is not None, lam)
    for nm, g in tame:
        order = pgl_order(g, spec.n)
        record(f"{nm} has order {spec.n}", order == spec.n)
        zinv = spec.zeta.inv()
        for i, (nm_u, m_u) in enumerate(p_part):
            target = spec.coords_of(zinv * spec.basis[i])
            rhs = mobius_identity(pres.ring)
            for c, (_, m_j) in zip(target, p_part):
                rhs = rhs * mobius_pow(m_j, c)
            lhs = g * m_u * g.adjugate()
            lam = projective_equal(lhs, rhs)
            record(f"{nm} {nm_u} {nm}^-1 twists by zeta^-1", lam is not None, lam)
    return {"group": spec.label(), "ring": pres.ring_label,
            "relations": results,
            "all_ok": all(r["ok"] for r in results)}


def reduce_matrix(mat, field, var_images=None):
    """Push a matrix over an exact model ring down to a residue field."""
    ring = mat.ring
    var_images = dict(var_images or {})

    def red(e):
        if isinstance(ring, IntegerRing):
            return field.from_int(e.payload)
        if isinstance(ring, GaloisRing):
            if ring != field:
                raise RingError("field mismatch in reduction")
            return e
        if isinstance(ring, QuotientRing):
            out = field.zero()
            for exps, coeff in e.payload:
                if isinstance(ring.base, IntegerRing):
                    term = field.from_int(coeff)
                elif ring.base == field:
                    term = Elem(field, coeff)
                else:
                    raise RingError("unsupported base ring in reduction")
                for vname, ex in zip(ring.vars, exps):
                    if ex:
                        img = var_images.get(vname, field.zero())
                        term = term * img ** ex
                out = out + term
            return out
        raise RingError(f"no reduction map from {ring}")

    return MobiusElem(field, red(mat.a), red(mat.b), red(mat.c), red(mat.d))
