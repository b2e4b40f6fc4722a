"""Executable non-liftability arguments: constraint extraction, iterate
identities, order-p probes, polynomial congruences, and certified finite
searches.

Search certification scope: candidates are homographic bases congruent to
the residue generators mod p plus perturbations p*S(y) with deg S below the
stated bound, and relations are checked on truncated series mod y^K.  Two
candidates realizing the same truncated series (together with the same
residue tails, which the congruence constraint forces mod p) satisfy the
same relations, so the search enumerates realized series.  An "exhausted"
outcome certifies that no candidate of this shape lifts at the stated
truncation; a "found" outcome exhibits a witness at the stated truncation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .chebyshev import cheb_poly
from .deformation import GroupSpec, VersalPresentation, group_spec
from .mobius import MobiusElem, mobius_pow, projective_equal
from .rings import (Elem, GaloisRing, IntegerRing, ModularRing, NonUnitError,
                    QuotientRing, RamifiedTower, RationalField, Ring,
                    RingError, binom_in_ring, MODULUS)
from .series import TruncatedSeries, identity_series, series_compose, series_from_mobius


# -- functional-equation constraints ----------------------------------------


def _series_inv(f):
    """Multiplicative inverse of a truncated series with unit constant term."""
    ring = f.ring
    c0inv = f.coeffs[0].inv()
    out = [c0inv]
    for k in range(1, f.K):
        acc = ring.zero()
        for i in range(1, k + 1):
            acc = acc + f.coeffs[i] * out[k - i]
        out.append(-c0inv * acc)
    return TruncatedSeries(ring, tuple(out), f.K)


def perturbation_constraints(p, u, K=3):
    """Linear relations on c_0..c_{K-1} forced by the residue functional
    equation S(y/(y+1)) = (y/(uy+1) + 1)^(-2) S(y).

    Returns the constraint rows (coefficient vectors over the residue field)
    for each series order 1 <= j < K, together with the variables they force
    to vanish.  Over characteristic 2 the leading constraint 2*c0 = 0 is
    vacuous and is reported as a zero row.
    """
    if K < 2:
        raise RingError("K < 2 carries no informative constraints")
    field = u.ring
    if not isinstance(field, GaloisRing) or field.n != 1:
        raise RingError("u must live in a residue field")
    if u ** field.p == u:
        raise RingError("u must not lie in the prime field")
    one, zero = field.one(), field.zero()
    m0 = series_from_mobius(MobiusElem(field, one, zero, one, one), K)
    n0 = series_from_mobius(MobiusElem(field, one, zero, u, one), K)
    shifted = TruncatedSeries(field, (one,) + n0.coeffs[1:], K)
    winv = _series_inv(shifted)
    w = winv * winv
    # powers of m0 give the substitution matrix
    powers = [TruncatedSeries(field, (one,), K)]
    for i in range(1, K):
        powers.append(powers[-1] * m0)
    rows = []
    for j in range(1, K):
        row = []
        for i in range(K):
            lhs = powers[i].coeffs[j]
            rhs = w.coeffs[j - i] if 0 <= j - i < K else zero
            row.append(lhs - rhs)
        rows.append(tuple(row))
    forced = _forced_zero(rows, field)
    return {
        "p": p,
        "u": u.to_json(),
        "K": K,
        "rows": [[c.to_json() for c in row] for row in rows],
        "forced_zero": forced,
    }


def _forced_zero(rows, field):
    """Indices i with c_i = 0 in every solution of the homogeneous system."""
    K = len(rows[0]) if rows else 0
    mat = [list(r) for r in rows if any(not c.is_zero() for c in r)]
    # reduced row echelon form over the field
    pivots = []
    r = 0
    for col in range(K):
        piv = None
        for i in range(r, len(mat)):
            if not mat[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inv()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    forced = []
    for r_i, col in enumerate(pivots):
        if all(mat[r_i][c].is_zero() for c in range(K) if c != col):
            forced.append(col)
    return sorted(forced)


# -- iterate identity over O/(p*pi) ------------------------------------------


def equichar_matrix_at_root(tower, u_lift):
    """The matrix [[A, aC], [C, A + aC]] with the binomial sums evaluated
    at the Eisenstein root a of the tower's psi."""
    e = tower.e
    a = tower.gen()
    A = tower.zero()
    apow = tower.one()
    for j in range(0, e + 1):
        A = A + binom_in_ring(u_lift - 1 + j, 2 * j) * apow
        apow = apow * a
    C = tower.zero()
    apow = tower.one()
    for j in range(0, e):
        C = C + binom_in_ring(u_lift + j, 2 * j + 1) * apow
        apow = apow * a
    return MobiusElem(tower, A, a * C, C, A + a * C)


def iterate_identity_check(p, u, c, imax, lift="naive", K=3):
    """Verify T^i = n^i + p*i*c*y^2 to order y^K in O/(p*pi), 1 <= i <= imax.

    Here n is the homography attached to a residue parameter u in
    F_{p^2} - F_p, T = n + p*c*y^2, and `lift` selects which lift of u
    enters the matrix ("naive" or "plus_p"); the identity must not depend
    on the choice.  Reports the first failing order and coefficient.
    """
    if imax < 1:
        raise RingError("imax must be >= 1")
    tower = RamifiedTower(p, 2)
    fld = tower.fld
    u = fld.elem(u) if not isinstance(u, Elem) else u
    c = fld.elem(c) if not isinstance(c, Elem) else c
    if u.ring != fld or c.ring != fld:
        raise RingError("u and c must live in the residue field F_{p^2}")
    if u ** p == u:
        raise RingError("u must not lie in the prime field")
    u_lift = tower.from_residue(u.payload)
    if lift == "plus_p":
        u_lift = u_lift + tower.from_int(p)
    elif lift != "naive":
        raise RingError(f"unknown lift {lift!r}")
    n_mat = equichar_matrix_at_root(tower, u_lift)
    K_int = K + tower.e + 2
    pc = tower.times_p(c.payload)
    n_series = series_from_mobius(n_mat, K_int)
    t_coeffs = list(n_series.coeffs)
    t_coeffs[2] = t_coeffs[2] + pc
    T = TruncatedSeries(tower, tuple(t_coeffs), K_int)
    results = []
    first_failure = None
    acc = T
    npow = n_mat
    for i in range(1, imax + 1):
        want = list(series_from_mobius(npow, K_int).coeffs[:K])
        want[2] = want[2] + pc * i
        got = acc.coeffs[:K]
        ok = tuple(got) == tuple(want)
        results.append({"i": i, "ok": ok})
        if not ok and first_failure is None:
            for idx, (g, w) in enumerate(zip(got, want)):
                if g != w:
                    first_failure = {"i": i, "coefficient": idx,
                                     "got": g.to_json(), "want": w.to_json()}
                    break
        if i < imax:
            acc = series_compose(T, acc)
            npow = npow * n_mat
    return {"p": p, "imax": imax, "lift": lift,
            "u": u.to_json(), "c": c.to_json(),
            "results": results,
            "all_ok": all(r["ok"] for r in results),
            "first_failure": first_failure}


# -- order-p probe over Z/p^2 -------------------------------------------------


class _LinFormRing(Ring):
    """Z/p^2 extended by three formal p-torsion parameters p*c0, p*c1, p*c2.

    Payloads are (a, (b0, b1, b2)) representing a + p*(b.c); since every
    parameter carries a factor p, products stay linear in the parameters.
    """

    is_finite = False

    def __init__(self, p):
        self.p = p
        self.p2 = p * p
        self.characteristic = self.p2

    def normalize(self, payload):
        a, b = payload
        return (a % self.p2, tuple(x % self.p for x in b))

    def from_int(self, k):
        return Elem(self, (k % self.p2, (0, 0, 0)))

    def param(self, i):
        b = [0, 0, 0]
        b[i] = 1
        return Elem(self, (0, tuple(b)))

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p2,
                tuple((a + b) % self.p for a, b in zip(x[1], y[1])))

    def neg(self, x):
        return ((-x[0]) % self.p2, tuple((-a) % self.p for a in x[1]))

    def mul(self, x, y):
        return ((x[0] * y[0]) % self.p2,
                tuple((x[0] * b + y[0] * a) % self.p
                      for a, b in zip(x[1], y[1])))

    def is_nilpotent(self, x):
        return x[0] % self.p == 0

    def inv(self, x):
        a, b = x
        if a % self.p == 0:
            raise NonUnitError(f"{x} is not a unit")
        ainv = pow(a, -1, self.p2)
        return ((ainv) % self.p2,
                tuple((-ainv * ainv * v) % self.p for v in b))

    def sample(self, rng):
        return Elem(self, (rng.randrange(self.p2),
                           tuple(rng.randrange(self.p) for _ in range(3))))

    def __repr__(self):
        return f"Z/{self.p2}[p*c0,p*c1,p*c2]"

    def __eq__(self, other):
        return isinstance(other, _LinFormRing) and self.p == other.p

    def __hash__(self):
        return hash(("LinForm", self.p))

    def to_json(self):
        return {"schema": 1, "kind": "linform", "p": self.p}


def order_p_probe(p, K=3):
    """For every (c0, c1, c2) in (Z/p)^3 verify that the p-th self-composite
    of T = y/(y+1) + p(c0 + c1 y + c2 y^2) is y - p*y^2 mod (p^2, y^3).

    The sweep is exhaustive (the conclusion quantifies over all triples) and
    a parallel symbolic pass records the coefficients of every iterate as
    affine forms in the parameters; the parameter part of each form carries
    an explicit factor p by construction.
    """
    if p <= 3:
        raise RingError("the probe is stated for p > 3 (p = 3 is excluded)")
    if not _is_prime(p):
        raise RingError(f"{p} is not prime")
    ring = ModularRing(p * p)
    K_int = K + 3
    ref = series_from_mobius(MobiusElem(ring, 1, 0, 1, 1), K_int)
    expected = (0, 1, (-p) % (p * p))
    count = 0
    all_match = True
    for c0, c1, c2 in itertools.product(range(p), repeat=3):
        coeffs = list(ref.coeffs)
        for idx, ci in enumerate((c0, c1, c2)):
            coeffs[idx] = coeffs[idx] + p * ci
        T = TruncatedSeries(ring, tuple(coeffs), K_int)
        acc = T
        for _ in range(p - 1):
            acc = series_compose(T, acc)
        got = tuple(c.payload for c in acc.coeffs[:K])
        count += 1
        if got != expected:
            all_match = False
    # symbolic pass: one run covering all parameter triples at once
    lring = _LinFormRing(p)
    sref = series_from_mobius(MobiusElem(lring, 1, 0, 1, 1), K_int)
    coeffs = list(sref.coeffs)
    for idx in range(3):
        # param(idx) already carries the factor p: it is p*c_idx
        coeffs[idx] = coeffs[idx] + lring.param(idx)
    sT = TruncatedSeries(lring, tuple(coeffs), K_int)
    formulas = []
    acc = sT
    for i in range(1, p + 1):
        row = []
        for a, b in (c.payload for c in acc.coeffs[:K]):
            row.append({"const": a, "p_c0": b[0], "p_c1": b[1], "p_c2": b[2]})
        formulas.append({"i": i, "coefficients": row})
        if i < p:
            acc = series_compose(sT, acc)
    final = formulas[-1]["coefficients"]
    symbolic_match = (
        all(f["p_c0"] == f["p_c1"] == f["p_c2"] == 0 for f in final)
        and tuple(f["const"] for f in final) == expected)
    return {"p": p, "count": count, "all_match": all_match and symbolic_match,
            "expected": list(expected), "iterate_formulas": formulas,
            "note": ("parameter contributions enter each coefficient with an "
                     "explicit factor p; the form tables record the verified "
                     "multipliers for every iterate")}


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


# -- polynomial congruences ----------------------------------------------------


def binomial_identity_check(p):
    """Exact congruence sum_j (j/p) C(p,j) (A-C)^(p-j) C^j = C(A^(p-1) - C^(p-1))
    in F_p[A, C]."""
    if p < 3 or not _is_prime(p):
        raise RingError("p must be an odd prime")
    lhs = {}
    for j in range(1, p):
        cj = math.comb(p, j) * j
        if cj % p:
            raise RingError("binomial multiple is not divisible by p")
        cj //= p
        for a_exp in range(0, p - j + 1):
            coeff = cj * math.comb(p - j, a_exp) * (-1) ** (p - j - a_exp)
            key = (a_exp, p - a_exp)
            lhs[key] = lhs.get(key, 0) + coeff
    rhs = {(p - 1, 1): 1, (0, p): -1}
    keys = set(lhs) | set(rhs)
    return all((lhs.get(k, 0) - rhs.get(k, 0)) % p == 0 for k in keys)


def eigen_order_values(A, C, alpha, p):
    """Evaluate the two eigenvalue polynomials controlling order p at
    Y = 1 + alpha/2.

    P = sum_j C(p,j) (A-C)^(p-j) C^j T_j(Y) - 1 and Q is the same sum with
    the second-kind polynomials S_{j-1}; both vanish exactly when the matrix
    [[A, alpha*C], [C, A + alpha*C]] has order p.  Needs 2 invertible; over
    the characteristic-0 quotient models the evaluation runs through exact
    rational arithmetic and the (necessarily integral) result is mapped back.
    """
    ring = A.ring
    if C.ring != ring or alpha.ring != ring:
        raise RingError("A, C, alpha must share a ring")
    try:
        half = ring.from_int(2).inv()
        return _eigen_eval(ring, A, C, alpha, half, p)
    except NonUnitError:
        pass
    if (isinstance(ring, QuotientRing) and isinstance(ring.base, IntegerRing)
            and ring._single_modulus_var() is not None):
        var, mod = ring._single_modulus_var()
        qring = QuotientRing(RationalField(), (ring.vars[var],),
                             ((MODULUS, ring.vars[var], mod),))

        def up(e):
            from fractions import Fraction
            return qring.elem(tuple((exps, Fraction(cc)) for exps, cc in e.payload))

        half = qring.from_int(2).inv()
        P, Q = _eigen_eval(qring, up(A), up(C), up(alpha), half, p)

        def down(e):
            out = []
            for exps, cc in e.payload:
                if cc.denominator != 1:
                    raise RingError("value does not lie in the integral model")
                out.append((exps, int(cc)))
            return ring.elem(tuple(out))

        return down(P), down(Q)
    raise NonUnitError("2 is not invertible in this ring")


def _eigen_eval(ring, A, C, alpha, half, p):
    Y = ring.one() + alpha * half

    def horner(coeffs):
        acc = ring.zero()
        for co in reversed(coeffs):
            acc = acc * Y + ring.from_int(co)
        return acc

    P = -ring.one()
    Q = ring.zero()
    diff = A - C
    for j in range(0, p + 1):
        weight = ring.from_int(math.comb(p, j)) * diff ** (p - j) * C ** j
        P = P + weight * horner(cheb_poly("first", j))
        Q = Q + weight * horner(cheb_poly("second", j - 1))
    return P, Q


# -- certified finite searches ---------------------------------------------


@dataclass
class PerturbedLift:
    """A homographic base plus a perturbation whose contribution enters
    multiplied by p; the realized series is the expansion of the base with
    p * (sum of perturbation coefficients) added coefficientwise."""

    base: MobiusElem
    perturb: tuple
    ring: Ring
    K: int

    def realized(self, K_int=None):
        K_int = K_int or self.K
        series = series_from_mobius(self.base, K_int)
        coeffs = list(series.coeffs)
        gr = self.ring
        for i, o in enumerate(self.perturb):
            if i >= K_int:
                break
            coeffs[i] = coeffs[i] + Elem(gr, _p_times(gr, o))
        return TruncatedSeries(gr, tuple(coeffs), K_int)


@dataclass
class SearchOutcome:
    status: str
    witness: object
    search_space: str
    cardinality: int
    checked: int
    detail: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "status": self.status,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "search_space": self.search_space,
            "cardinality": str(self.cardinality),
            "checked": str(self.checked),
            "detail": self.detail,
        }


def _p_times(gr, fld_payload):
    """p times a residue-field payload, inside GR(p^2, s)."""
    return tuple((gr.p * c) % gr.q for c in fld_payload)


def exhaustive_lift_search(spec, ring, *, perturb_degree=3, K=3,
                           entry_bound=None, fixed=None, order_seed=None,
                           ceiling=2 ** 34):
    """Enumerate all candidate lifts of the spec's generators over the ring.

    Two modes: Galois rings GR(p^2, s) run the truncated-series search over
    perturbed homographies; the characteristic-0 Eisenstein-integer quotient
    runs the exact tetrahedral matrix search within the given entry bound.
    """
    if (spec.p, spec.t, spec.n) == (2, 2, 3):
        if entry_bound is None:
            raise RingError("the tetrahedral search needs an entry bound")
        if not (isinstance(ring, QuotientRing) and
                isinstance(ring.base, IntegerRing)):
            raise RingError("the tetrahedral search runs over Z[j]/(j^2+j+1)")
        return _tetrahedral_search(spec, ring, entry_bound)
    if isinstance(ring, GaloisRing) and ring.n == 2:
        if spec.n != 1:
            raise RingError("series searches cover elementary abelian specs")
        return _series_search(spec, ring, perturb_degree, K, fixed,
                              order_seed, ceiling)
    raise RingError("unsupported search configuration")


def _series_search(spec, gr, perturb_degree, K, fixed, order_seed, ceiling):
    p, t = spec.p, spec.t
    if gr.p != p:
        raise RingError("ring and group have different characteristics")
    fld = GaloisRing(p, 1, gr.s)
    if spec.field != fld:
        raise RingError("the spec's field must be the residue field of the ring")
    if not 1 <= perturb_degree <= K:
        raise RingError("perturbation degree must lie in 1..K")
    K_int = K + 3
    fixed = dict(fixed or {})
    offsets = [e.payload for e in fld.elements()]
    n_off = len(offsets) ** perturb_degree
    free = [i for i in range(t) if i not in fixed]
    cardinality = n_off ** len(free)
    if cardinality > ceiling:
        raise RingError(f"search space {cardinality} exceeds the ceiling {ceiling}")

    ident = tuple(identity_series(gr, K_int).coeffs[:K])

    def candidates(i):
        u = spec.basis[i]
        base = MobiusElem(gr, gr.one(), gr.zero(),
                          Elem(gr, gr.teich_lift(u.payload)), gr.one())
        out = []
        for combo in itertools.product(offsets, repeat=perturb_degree):
            out.append(PerturbedLift(base, combo, gr, K).realized(K_int))
        if order_seed is not None:
            random.Random(order_seed).shuffle(out)
        return out

    def order_ok(T):
        acc = T
        for _ in range(p - 1):
            acc = series_compose(T, acc)
        return tuple(acc.coeffs[:K]) == ident

    def commute(T1, T2):
        lhs = series_compose(T1, T2)
        rhs = series_compose(T2, T1)
        return tuple(lhs.coeffs[:K]) == tuple(rhs.coeffs[:K])

    sizes, ok_lists = {}, {}
    for i in range(t):
        if i in fixed:
            mat = fixed[i]
            if not isinstance(mat, MobiusElem):
                raise RingError("fixed generators must be matrices over the ring")
            s = series_from_mobius(mat, K_int)
            if not order_ok(s):
                raise RingError(f"fixed generator {i} does not have order {p}")
            sizes[i] = 1
            ok_lists[i] = [s]
        else:
            cands = candidates(i)
            sizes[i] = len(cands)
            ok_lists[i] = [T for T in cands if order_ok(T)]

    bad = {i: sizes[i] - len(ok_lists[i]) for i in range(t)}
    space_desc = (f"perturbed homographies over {gr!r} congruent to the "
                  f"residue generators mod {p}, perturbation degree "
                  f"{perturb_degree}, relations checked mod y^{K}")
    detail = {"per_generator": {str(i): {"candidates": sizes[i],
                                         "order_p": len(ok_lists[i])}
                                for i in range(t)},
              "order_seed": order_seed}

    def finish(status, witness, checked):
        if status == "exhausted" and checked != cardinality:
            raise RuntimeError("count accounting is broken: "
                               f"{checked} != {cardinality}")
        return SearchOutcome(status, witness, space_desc, cardinality,
                             checked, detail)

    def witness_of(series_list):
        gens = tuple((f"sigma_u{k + 1}", s) for k, s in enumerate(series_list))
        return VersalPresentation(
            group=spec.label(), ring=gr, ring_label=repr(gr),
            characteristic=gr.characteristic, generators=gens,
            notes=(f"series witness mod y^{K}",))

    if t == 2:
        checked = bad[0] * sizes[1] + len(ok_lists[0]) * bad[1]
        for T0 in ok_lists[0]:
            for T1 in ok_lists[1]:
                checked += 1
                if commute(T0, T1):
                    return finish("found", witness_of([T0, T1]), checked)
        return finish("exhausted", None, checked)

    if t == 3:
        checked = bad[0] * sizes[1] * sizes[2]
        checked += len(ok_lists[0]) * bad[1] * sizes[2]
        pairs = []
        for T0 in ok_lists[0]:
            for T1 in ok_lists[1]:
                if commute(T0, T1):
                    pairs.append((T0, T1))
                else:
                    checked += sizes[2]
        detail["commuting_pairs"] = len(pairs)
        for T0, T1 in pairs:
            checked += bad[2]
            for T2 in ok_lists[2]:
                checked += 1
                if commute(T0, T2) and commute(T1, T2):
                    return finish("found", witness_of([T0, T1, T2]), checked)
        return finish("exhausted", None, checked)

    raise RingError("series searches support t = 2 or t = 3")


# -- tetrahedral search over the Eisenstein integers -------------------------

_E_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))
_E_UNIT_INV = {(1, 0): (1, 0), (-1, 0): (-1, 0), (0, 1): (-1, -1),
               (0, -1): (1, 1), (1, 1): (0, -1), (-1, -1): (0, 1)}


def _e_add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _e_sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _e_neg(x):
    return (-x[0], -x[1])


def _e_mul(x, y):
    # j^2 = -1 - j
    a = x[0] * y[0] - x[1] * y[1]
    b = x[0] * y[1] + x[1] * y[0] - x[1] * y[1]
    return (a, b)


def _e_scale(x, pair):
    return _e_mul(x, pair)


def _m_mul(m, n):
    (a, b, c, d), (e, f, g, h) = m, n
    return (_e_add(_e_mul(a, e), _e_mul(b, g)),
            _e_add(_e_mul(a, f), _e_mul(b, h)),
            _e_add(_e_mul(c, e), _e_mul(d, g)),
            _e_add(_e_mul(c, f), _e_mul(d, h)))


def _m_det(m):
    return _e_sub(_e_mul(m[0], m[3]), _e_mul(m[1], m[2]))


def _m_adj(m):
    return (m[3], _e_neg(m[1]), _e_neg(m[2]), m[0])


def _m_scale(m, s):
    return tuple(_e_mul(x, s) for x in m)


def _m_trace(m):
    return _e_add(m[0], m[3])


def _m_is_scalar(m):
    return m[1] == (0, 0) and m[2] == (0, 0) and m[0] == m[3]


def _m_proportional(m, n):
    for i in range(4):
        for j in range(i + 1, 4):
            if _e_mul(m[i], n[j]) != _e_mul(m[j], n[i]):
                return False
    return True


def _box_values(bound, parity):
    out = []
    for x in range(-bound, bound + 1):
        if x % 2 != parity[0] % 2:
            continue
        for y in range(-bound, bound + 1):
            if y % 2 != parity[1] % 2:
                continue
            out.append((x, y))
    return out


def _e_conj(x):
    # conjugation sends j to j^2 = -1 - j
    return (x[0] - x[1], -x[1])


def _e_norm(x):
    return x[0] * x[0] - x[0] * x[1] + x[1] * x[1]


def _e_divide(a, b):
    """a/b in Z[j] when the quotient is integral, else None."""
    n = _e_norm(b)
    if n == 0:
        return None
    num = _e_mul(a, _e_conj(b))
    if num[0] % n or num[1] % n:
        return None
    return (num[0] // n, num[1] // n)


def _in_box(x, bound):
    return abs(x[0]) <= bound and abs(x[1]) <= bound


def _tetrahedral_search(spec, ring, bound):
    """Exact matrix search for the (Z/2)^2 : Z/3 lift over Z[j]/(j^2+j+1).

    Searches trace-zero involutions m lifting the translation by 1 and
    twist matrices g lifting a scalar multiple of diag(zeta, 1) with g^3
    scalar, all entries a+bj with |a|, |b| <= bound; the second involution
    is the exact conjugate m' = g m g^{-1}, required to land in the same
    box and to commute with m projectively, with the conjugation cycle
    closing on m m'.
    """
    omega = (0, 1)
    one = (1, 0)
    omega2 = (1, 1)
    scalars = (one, omega, omega2)
    zeta_res = spec.zeta.payload if spec.zeta is not None else omega
    if zeta_res not in (omega, omega2):
        raise RingError("the twist must reduce to a primitive cube root")

    m_list = []
    for lam in scalars:
        avals = _box_values(bound, lam)
        bvals = _box_values(bound, (0, 0))
        for a in avals:
            a2 = _e_mul(a, a)
            for b in bvals:
                for c in avals:
                    det = _e_neg(_e_add(a2, _e_mul(b, c)))
                    if det in _E_UNITS:
                        m_list.append((a, b, c, _e_neg(a)))

    g_list = []
    offvals = _box_values(bound, (0, 0))
    for lam in scalars:
        p1 = _e_mul(lam, zeta_res)
        p4 = lam
        parity_tau = ((p1[0] + p4[0]) % 2, (p1[1] + p4[1]) % 2)
        for tau in _E_UNITS:
            if (tau[0] % 2, tau[1] % 2) != parity_tau:
                continue
            delta = _e_mul(tau, tau)
            for g1 in _box_values(bound, p1):
                g4 = _e_sub(tau, g1)
                if not _in_box(g4, bound):
                    continue
                if (g4[0] % 2, g4[1] % 2) != (p4[0] % 2, p4[1] % 2):
                    continue
                base = _e_sub(_e_mul(g1, g4), delta)
                for g2 in offvals:
                    if g2 == (0, 0):
                        if base == (0, 0):
                            for g3 in offvals:
                                g_list.append(((g1, g2, g3, g4), delta))
                        continue
                    g3 = _e_divide(base, g2)
                    if g3 is not None and _in_box(g3, bound) \
                            and g3[0] % 2 == 0 and g3[1] % 2 == 0:
                        g_list.append(((g1, g2, g3, g4), delta))

    checked = 0
    found = None
    for g, delta in g_list:
        dinv = _E_UNIT_INV[delta]
        adj = _m_adj(g)
        for m in m_list:
            checked += 1
            mp = _m_scale(_m_mul(_m_mul(g, m), adj), dinv)
            if not all(_in_box(x, bound) for x in mp):
                continue
            prod = _m_mul(m, mp)
            if _m_trace(prod) != (0, 0) or _m_is_scalar(prod):
                continue
            # close the twist cycle: g m' g^-1 ~ m m'
            mpp = _m_scale(_m_mul(_m_mul(g, mp), adj), dinv)
            if not _m_proportional(mpp, prod):
                continue
            found = (m, mp, g)
            break
        if found:
            break

    space_desc = (f"trace-zero involutions and order-3 twists over Z[j], "
                  f"entries bounded by {bound}, paired through exact conjugation")
    detail = {"involution_candidates": len(m_list),
              "twist_candidates": len(g_list)}
    cardinality = len(m_list) * len(g_list)
    if found is None:
        return SearchOutcome("exhausted", None, space_desc,
                             cardinality, checked, detail)
    m, mp, g = found

    jvar = ring.var(ring.vars[0])
    one_r = ring.one()

    def wrap(mat):
        def mk(pair):
            return one_r * pair[0] + jvar * pair[1]
        return MobiusElem(ring, mk(mat[0]), mk(mat[1]), mk(mat[2]), mk(mat[3]))

    M, MP, G = wrap(m), wrap(mp), wrap(g)
    # m' lifts the translation by 1/zeta = zeta^2; the basis translation by
    # zeta itself lifts to m * m' since 1 + zeta^2 = zeta over F_4
    sigma2 = M * MP
    pres = VersalPresentation(
        group=spec.label(), ring=ring,
        ring_label="W(k)[j]/(j^2+j+1)", characteristic=0,
        generators=(("sigma_u1", M), ("sigma_u2", sigma2), ("g", G)),
        relations=("sigma_u1^2 = sigma_u2^2 = scalar", "g^3 = scalar",
                   "g sigma g^-1 realizes the zeta twist"),
        notes=("found by exact search; the conjugate partner g m g^-1 is "
               "stored in aux",))
    pres.aux = {"m": M, "mprime": MP, "g": G}
    return SearchOutcome("found", pres, space_desc, cardinality, checked, detail)
