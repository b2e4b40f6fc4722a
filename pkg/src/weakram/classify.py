"""From local ramification data to the global answer: weak-ramification
certification, group recognition in PGL2 over a finite field, the
characteristic of the versal ring per point, and the genus-bound example.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .deformation import GroupSpec, versal_table
from .mobius import MobiusElem
from .rings import Elem, GaloisRing, RingError
from .series import TruncatedSeries, ramification_break, series_from_mobius


@dataclass
class LocalActionInput:
    """Generators of one stabilizer acting on k[[y]], over F_{p^s}.

    Generators may be matrices or truncated series; each must fix the
    origin (zero constant term) and be invertible (unit linear term).
    """

    field: GaloisRing
    generators: list
    K: int = 6

    def __post_init__(self):
        if self.field.n != 1:
            raise RingError("the coefficient field must be a finite field")
        for g in self.generators:
            s = self.as_series(g)
            if not s.coeffs[0].is_zero():
                raise RingError("generators must fix the origin")
            if not s.coeffs[1].is_unit():
                raise RingError("generators must have a unit linear coefficient")

    @property
    def p(self):
        return self.field.p

    def as_series(self, g):
        if isinstance(g, TruncatedSeries):
            if g.K < self.K:
                raise RingError(f"series truncated below K = {self.K}")
            return g.truncate(self.K) if g.K > self.K else g
        if isinstance(g, MobiusElem):
            return series_from_mobius(g, self.K)
        raise RingError("generators must be series or matrices")

    def series(self):
        return [self.as_series(g) for g in self.generators]


def _series_to_homography(s):
    """Recover zeta*y/(1 + u*y) from a weak series, or None if it is not one."""
    field = s.ring
    zeta = s.coeffs[1]
    if not s.coeffs[0].is_zero() or not zeta.is_unit():
        return None
    u = -(s.coeffs[2] * zeta.inv()) if s.K >= 3 else field.zero()
    cand = MobiusElem(field, zeta, field.zero(), u, field.one())
    if series_from_mobius(cand, s.K) == s:
        return cand
    return None


def _affine_key(mat):
    """Canonical (a, c) for an origin-fixing homography a*y/(c*y + 1)."""
    if not mat.b.is_zero():
        raise RingError("matrix does not fix the origin")
    dinv = mat.d.inv()
    return ((mat.a * dinv).payload, (mat.c * dinv).payload)


def _affine_mul(field, x, y):
    # (a1, c1) o (a2, c2) represents the composite homography
    a1, c1 = x
    a2, c2 = y
    a1e, c1e = Elem(field, a1), Elem(field, c1)
    a2e, c2e = Elem(field, a2), Elem(field, c2)
    return ((a1e * a2e).payload, (c1e * a2e + c2e).payload)


def _closure(field, keys, bound):
    elems = {(field.one().payload, field.zero().payload)}
    frontier = list(elems)
    gens = list(keys)
    for g in gens:
        if g not in elems:
            elems.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _affine_mul(field, x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > bound:
                        raise RingError(f"group closure exceeds the bound {bound}")
        frontier = nxt
    return elems


def ramification_filtration(inp, closure_bound=500, deterministic=True,
                            samples=200, seed=0):
    """Breaks of every generator plus a weak-ramification flag.

    The flag is true when every wild generator breaks at exactly 1 and the
    whole group closure keeps breaks at most 1.  Groups larger than the
    closure bound are sampled instead unless deterministic mode insists.
    """
    if inp.K < 3:
        raise RingError("truncation too small to certify weak ramification")
    breaks = []
    weak = True
    for s in inp.series():
        b = ramification_break(s)
        breaks.append(b)
        if b is None or b > 1:
            weak = False
        # a tame generator (break 0) or a conductor-1 wild one (break 1) is fine
    closure_breaks_ok = None
    if weak:
        mats = [_series_to_homography(inp.as_series(g)) for g in inp.generators]
        if all(m is not None for m in mats):
            field = inp.field
            keys = [_affine_key(m) for m in mats]
            try:
                elems = _closure(field, keys, closure_bound)
                closure_breaks_ok = True
                for a, c in elems:
                    ae, ce = Elem(field, a), Elem(field, c)
                    mat = MobiusElem(field, ae, field.zero(), ce, field.one())
                    b = ramification_break(series_from_mobius(mat, inp.K))
                    if b is not None and b > 1:
                        closure_breaks_ok = False
                        weak = False
                        break
            except RingError:
                if deterministic:
                    raise
                closure_breaks_ok = _sampled_closure_ok(inp, samples, seed)
                weak = weak and closure_breaks_ok
        else:
            # non-homographic weak generators: certify the generators only
            closure_breaks_ok = None
    return {"breaks": breaks, "weak": weak,
            "closure_checked": closure_breaks_ok, "K": inp.K}


def _sampled_closure_ok(inp, samples, seed):
    import random
    rng = random.Random(seed)
    series = inp.series()
    from .series import series_compose
    for _ in range(samples):
        word_len = rng.randint(1, 6)
        acc = series[rng.randrange(len(series))]
        for _ in range(word_len - 1):
            acc = series_compose(series[rng.randrange(len(series))], acc)
        b = ramification_break(acc)
        if b is not None and b > 1:
            return False
    return True


def recognize_group(inp, closure_bound=500):
    """Identify the stabilizer shape (Z/p)^t : Z/n from its generators.

    Computes the closure in PGL2(F_{p^s}), splits off the unipotent
    translation part V, reads t from its size, n from the index, and pulls
    a primitive n-th root of unity from the multiplier of a tame element.
    """
    filt = ramification_filtration(inp, closure_bound)
    if not filt["weak"]:
        raise RingError("the action is not certified weakly ramified")
    mats = [_series_to_homography(inp.as_series(g)) for g in inp.generators]
    if any(m is None for m in mats):
        raise RingError("recognition needs homographic generators "
                        "(normalized weak form)")
    field = inp.field
    elems = _closure(field, [_affine_key(m) for m in mats], closure_bound)
    p = field.p
    one = field.one().payload
    translations = sorted(c for a, c in elems if a == one)
    size_v = len(translations)
    t = 0
    while p ** t < size_v:
        t += 1
    if p ** t != size_v or len(elems) % size_v:
        raise RingError("closure is not of semidirect translation type")
    n = len(elems) // size_v
    if t >= 1 and (p ** t - 1) % n:
        raise RingError("tame index does not divide p^t - 1")
    basis = []
    span = {field.zero().payload}
    for c in translations:
        if c not in span:
            basis.append(Elem(field, c))
            new_span = set(span)
            for s_payload in span:
                acc = Elem(field, s_payload)
                for _ in range(p - 1):
                    acc = acc + Elem(field, c)
                    new_span.add(acc.payload)
            span = new_span
    if len(basis) != t:
        raise RingError("translations do not form an F_p-space of rank t")
    zeta = None
    if n > 1:
        multipliers = sorted({a for a, c in elems})
        for a in multipliers:
            e = Elem(field, a)
            k, acc = 1, e
            while acc != field.one() and k <= n:
                acc = acc * e
                k += 1
            if k == n:
                zeta = e
                break
        if zeta is None:
            raise RingError("no multiplier of order n found")
    return GroupSpec(p, t, n, field, tuple(basis), zeta)


@dataclass
class GlobalAnswer:
    nu: int
    flat: bool
    per_point: list = dc_field(default_factory=list)

    def to_json(self):
        return {"nu": self.nu, "flat": self.flat,
                "per_point": [{"group": spec.label(),
                               "table_row": row.to_json()}
                              for spec, row in self.per_point]}


def _on_liftable_list(spec):
    p, t, n = spec.p, spec.t, spec.n
    if t == 0:
        return True
    if (t, n) == (1, 1):
        return True
    if t == 1 and n == 2 and p > 2:
        return True
    if p == 2 and t == 2 and n == 1:
        return True
    if p == 2 and t == 2 and n == 3:
        return True
    return False


def nu_global(local_specs):
    """Aggregate local stabilizers into the characteristic of the global
    versal ring: 0 exactly when every wild stabilizer is cyclic of order p,
    dihedral D_p (the Klein group for p = 2), or tetrahedral for p = 2."""
    primes = {s.p for s in local_specs if s.t >= 1}
    if len(primes) > 1:
        raise RingError(f"mixed residue characteristics: {sorted(primes)}")
    per_point = [(s, versal_table(s)) for s in local_specs]
    if not primes:
        return GlobalAnswer(nu=0, flat=True, per_point=per_point)
    p = primes.pop()
    liftable = all(_on_liftable_list(s) for s in local_specs)
    return GlobalAnswer(nu=0 if liftable else p, flat=liftable,
                        per_point=per_point)


def hurwitz_example(p):
    """The curve with affine model (x^p - x)(y^p - y) = 1: genus, group
    order, the genus bound on automorphisms, and whether a characteristic-0
    lift survives the bound."""
    if p < 3 or not _is_prime(p):
        raise RingError("p must be a prime >= 3")
    genus = (p - 1) ** 2
    group_order = 2 * p * p * (p - 1)
    hurwitz_bound = 84 * (genus - 1)
    return {"p": p, "genus": genus, "groupOrder": group_order,
            "hurwitzBound": hurwitz_bound,
            "liftableChar0": not group_order > hurwitz_bound}


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
