"""Command-line surface with stable JSON output.

Every subcommand prints {"schema": 1, "command": ..., "result": ...} on
stdout.  Output is byte-identical across runs for identical inputs; run
metadata appears only under --verbose.  Integers that may not survive a
53-bit float round-trip are emitted as decimal strings.

Exit codes: 0 success (including "found"), 1 verification failure or
exhausted search, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .chebyshev import psi_poly
from .classify import LocalActionInput, hurwitz_example, nu_global, recognize_group
from .deformation import group_spec, lift_generators, verify_relations, versal_table
from .mobius import MobiusElem
from .obstruction import exhaustive_lift_search, iterate_identity_check, order_p_probe
from .rings import Elem, GaloisRing, RingError, ring_from_json
from .series import TruncatedSeries

_INT_LIMIT = 2 ** 53 - 1


def _encode(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if -_INT_LIMIT <= x <= _INT_LIMIT else str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else _encode(int(x))
    if isinstance(x, dict):
        return {k: _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    return x


def _emit(command, result, verbose=False, started=None):
    out = {"schema": 1, "command": command, "result": _encode(result)}
    if verbose and started is not None:
        out["meta"] = {"version": __version__,
                       "elapsed_s": round(time.time() - started, 3)}
    print(json.dumps(out, sort_keys=True))


def _load_json_arg(text):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


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


def _cmd_psi(args):
    if not _is_prime(args.p) or args.p == 2:
        raise RingError(f"{args.p} is not an odd prime")
    _emit("psi", {"coeffs": psi_poly(args.p)}, args.verbose, args._started)
    return 0


def _cmd_table(args):
    spec = group_spec(args.p, args.t, args.n)
    _emit("table", versal_table(spec).to_json(), args.verbose, args._started)
    return 0


_CASE_SPECS = {
    "CyclicP": lambda p: (p, 1, 1),
    "Cyclic2": lambda p: (2, 1, 1),
    "Klein": lambda p: (2, 2, 1),
    "Dp": lambda p: (p, 1, 2),
    "S3": lambda p: (3, 1, 2),
    "A4": lambda p: (2, 2, 3),
}


def _cmd_verify(args):
    if args.case not in _CASE_SPECS:
        raise RingError(f"unknown case {args.case!r}")
    pres = lift_generators(args.case, args.p)
    spec = group_spec(*_CASE_SPECS[args.case](args.p))
    report = verify_relations(pres, spec)
    _emit("verify", report, args.verbose, args._started)
    return 0 if report["all_ok"] else 1


def _cmd_search(args):
    gdata = _load_json_arg(args.group)
    spec = group_spec(int(gdata["p"]), int(gdata["t"]), int(gdata["n"]))
    ring = ring_from_json(_load_json_arg(args.ring))
    fixed = None
    if args.fix_first:
        if spec.p != 3:
            raise RingError("--fix-first pins the rigid p = 3 cyclic lift")
        fixed = {0: MobiusElem(ring, 1, -3, 1, -2)}
    outcome = exhaustive_lift_search(
        spec, ring, perturb_degree=args.perturb_degree, K=args.K,
        entry_bound=args.entry_bound, fixed=fixed, order_seed=args.order_seed)
    _emit("search", outcome.to_json(), args.verbose, args._started)
    return 0 if outcome.status == "found" else 1


def _cmd_classify(args):
    data = _load_json_arg("@" + args.input if not args.input.startswith("@")
                          else args.input)
    specs = []
    recognized = []
    for entry in data:
        field = GaloisRing(int(entry["p"]), 1, int(entry["s"]))
        K = int(entry.get("K", 6))
        gens = []
        for g in entry["generators"]:
            if "matrix" in g:
                (a, b), (c, d) = g["matrix"]
                mk = lambda v: Elem(field, field.payload_from_json(v))
                gens.append(MobiusElem(field, mk(a), mk(b), mk(c), mk(d)))
            elif "series" in g:
                coeffs = tuple(Elem(field, field.payload_from_json(v))
                               for v in g["series"])
                gens.append(TruncatedSeries(field, coeffs, len(coeffs)))
            else:
                raise RingError("generator entries need 'matrix' or 'series'")
        inp = LocalActionInput(field, gens, K=K)
        spec = recognize_group(inp, closure_bound=int(entry.get("closureBound", 500)))
        specs.append(spec)
        recognized.append({"p": spec.p, "t": spec.t, "n": spec.n,
                           "group": spec.label()})
    answer = nu_global(specs)
    _emit("classify", {"recognized": recognized, "answer": answer.to_json()},
          args.verbose, args._started)
    return 0


def _cmd_identity(args):
    import random
    fld = GaloisRing(args.p, 1, 2)
    rng = random.Random(args.seed)
    runs = []
    all_ok = True
    for _ in range(args.samples):
        while True:
            u = fld.sample(rng)
            if u ** args.p != u:
                break
        c = fld.sample(rng)
        for lift in ("naive", "plus_p"):
            rep = iterate_identity_check(args.p, u, c, args.imax, lift=lift)
            all_ok = all_ok and rep["all_ok"]
            runs.append(rep)
    _emit("identity", {"p": args.p, "imax": args.imax, "samples": args.samples,
                       "seed": args.seed, "all_ok": all_ok, "runs": runs},
          args.verbose, args._started)
    return 0 if all_ok else 1


def _cmd_probe(args):
    report = order_p_probe(args.p)
    if not args.formulas:
        report = dict(report)
        report.pop("iterate_formulas")
    _emit("probe", report, args.verbose, args._started)
    return 0 if report["all_match"] else 1


def _cmd_hurwitz(args):
    _emit("hurwitz", hurwitz_example(args.p), args.verbose, args._started)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weakram",
        description="Exact lifting and obstruction computations for weakly "
                    "ramified automorphism groups of k[[y]].")
    parser.add_argument("--verbose", action="store_true",
                        help="attach run metadata to the output")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("psi", help="versal polynomial coefficients")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_psi)

    sp = sub.add_parser("table", help="versal ring table row for (p, t, n)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_table)

    sp = sub.add_parser("verify", help="verify the relations of a stored lift")
    sp.add_argument("--case", required=True,
                    choices=sorted(_CASE_SPECS))
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("search", help="certified finite lift search")
    sp.add_argument("--group", required=True,
                    help='inline JSON {"p":..,"t":..,"n":..} or @file')
    sp.add_argument("--ring", required=True,
                    help="inline ring descriptor JSON or @file")
    sp.add_argument("--perturb-degree", type=int, default=3)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--entry-bound", type=int, default=None)
    sp.add_argument("--order-seed", type=int, default=None)
    sp.add_argument("--fix-first", action="store_true",
                    help="pin the first generator to the rigid p = 3 lift")
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("classify", help="recognize local actions and compute nu")
    sp.add_argument("--input", required=True, help="path to a JSON action list")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("identity", help="iterate identity over O/(p pi)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--imax", type=int, default=None)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_identity)

    sp = sub.add_parser("probe", help="order-p probe over Z/p^2")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--formulas", action="store_true",
                    help="include the symbolic iterate tables")
    sp.set_defaults(func=_cmd_probe)

    sp = sub.add_parser("hurwitz", help="genus bound example")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_hurwitz)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args._started = time.time()
    if getattr(args, "imax", None) is None and args.subcommand == "identity":
        args.imax = args.p
    try:
        return args.func(args)
    except (RingError, OSError, json.JSONDecodeError, KeyError, ValueError) as ex:
        print(json.dumps({"schema": 1, "command": args.subcommand,
                          "error": str(ex)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
