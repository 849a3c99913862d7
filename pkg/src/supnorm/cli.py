"""Command-line interface: ``supnorm <module> <action> ...``.

Exit codes: 0 success, 2 usage or contract error, 3 verification failure,
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import acceptance, buildings, charring, ksmall, satake
from .errors import SupnormError
from .lattices import DEFAULT_ENUM_CAP, sphere_count
from .rootdata import build_root_datum

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_RESOURCE = 0, 2, 3, 4


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _scalars(text: str) -> list[str]:
    return [a.strip() for a in text.split(",") if a.strip()]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, charring.GaussianRational):
        return _scalar_text(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in (sorted(x) if isinstance(x, (set, frozenset)) else x)]
    return x


def _scalar_text(z) -> str:
    if isinstance(z, charring.GaussianRational):
        re_, im = Fraction(str(z.x)), Fraction(str(z.y))
        if not im:
            return str(re_)
        return f"{re_}{'+' if im >= 0 else '-'}{abs(im)}i"
    z = complex(z)
    return f"{z.real:.12g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.12g}i"


class Runner:
    """Collects one RunReport and renders it as JSON or text."""

    def __init__(self, args, argv):
        self.args = args
        self.report = {"command": " ".join(["supnorm", *argv]), "seed": args.seed,
                       "inputs": {}, "outputs": {}, "exact": True}
        self.start = time.perf_counter()

    def emit(self, text_lines: list[str]):
        if self.args.timing:
            self.report["wall_time"] = round(time.perf_counter() - self.start, 3)
        if self.args.json:
            print(json.dumps(_jsonable(self.report), indent=2, sort_keys=True))
        else:
            for line in text_lines:
                print(line)


# ---------------------------------------------------------------------------
# handlers


def cmd_ksmall_verify(args, run: Runner) -> int:
    E = ksmall.build_embedding(args.family, args.k)
    cert = ksmall.verify_ksmall(E, box_radius=args.box_radius)
    run.report["inputs"] = {"family": args.family, "k": args.k, "box_radius": args.box_radius}
    run.report["outputs"] = cert.to_dict()
    run.emit([f"{cert.label}: kappa2 >= {cert.to_dict()['kappa2_lower']} "
              f"(lattice min {cert.kappa2_lattice} at {cert.witness_mu}), {cert.verdict}"])
    return EXIT_OK if cert.positive else EXIT_VERIFY


def cmd_ksmall_list(args, run: Runner) -> int:
    rows = {f: list(sizes) for f, (_, sizes) in ksmall.FAMILIES.items()}
    run.report["outputs"] = {"families": rows}
    run.emit([f"{f}: k in {v}" for f, v in rows.items()])
    return EXIT_OK


def _datum(args):
    return build_root_datum(args.family, args.rank)


def cmd_charring_eval(args, run: Runner) -> int:
    datum = _datum(args)
    point, exact = charring.torus_point(_scalars(args.x))
    val = charring.char_value(datum, args.lam, point, cap=args.cap or charring.DEFAULT_DIM_CAP)
    run.report["inputs"] = {"datum": datum.label, "lambda": list(args.lam), "x": _scalars(args.x)}
    run.report["outputs"] = {"value": _scalar_text(val)}
    run.report["exact"] = exact
    run.emit([f"chi_{args.lam}(x) = {_scalar_text(val)} ({'exact' if exact else 'floating'})"])
    return EXIT_OK


def cmd_charring_mult(args, run: Runner) -> int:
    datum = _datum(args)
    table = charring.weight_multiplicities(datum, args.lam, cap=args.cap or charring.DEFAULT_DIM_CAP)
    mults = sorted(table.multiplicities.items(), reverse=True)
    run.report["inputs"] = {"datum": datum.label, "lambda": list(args.lam)}
    run.report["outputs"] = {"dimension": table.dimension,
                             "weights": [{"weight": list(w), "mult": m} for w, m in mults]}
    run.emit([f"dimension {table.dimension}"] + [f"  {w}: {m}" for w, m in mults])
    return EXIT_OK


def cmd_charring_levi(args, run: Runner) -> int:
    datum = _datum(args)
    lam = charring.levi_lambda(datum, args.theta)
    run.report["inputs"] = {"datum": datum.label, "theta": list(args.theta)}
    run.report["outputs"] = {"lambda_L": list(lam)}
    run.emit([f"lambda_L = {lam}"])
    return EXIT_OK


def cmd_charring_search(args, run: Runner) -> int:
    datum = _datum(args)
    point, exact = charring.torus_point(_scalars(args.x))
    mu, val = charring.nonvanishing_search(datum, point, args.R, args.floor, args.strategy)
    run.report["inputs"] = {"datum": datum.label, "x": _scalars(args.x), "R": args.R,
                            "strategy": args.strategy}
    run.report["outputs"] = {"mu": list(mu), "value": _scalar_text(val)}
    run.report["exact"] = exact
    run.emit([f"mu = {mu}, chi_mu(x) = {_scalar_text(val)}"])
    return EXIT_OK


def cmd_satake_table(args, run: Runner) -> int:
    q = None if args.q == "sym" else Fraction(args.q)
    V = satake.satake_omega(args.n, args.mu, q)
    run.report["inputs"] = {"n": args.n, "mu": list(args.mu), "q": args.q}
    run.report["outputs"] = {"mu": list(args.mu), "terms": V.to_dict()["terms"]}
    run.emit([f"chi_{t['lambda']}: {t['coeff']}" for t in V.to_dict()["terms"]])
    return EXIT_OK


def cmd_satake_oracle(args, run: Runner) -> int:
    o = satake.satake_bruteforce(args.n, args.mu, args.p)
    agrees = o.transform == satake.satake_omega(args.n, args.mu, args.p)
    run.report["inputs"] = {"n": args.n, "mu": list(args.mu), "p": args.p}
    run.report["outputs"] = dict(o.to_dict(), agrees_with_table=agrees)
    run.emit([f"sphere size {o.sphere_size}"]
             + [f"chi_{t['lambda']}: {t['coeff']}" for t in o.to_dict()["terms"]]
             + [f"agrees with Hall-Littlewood table: {agrees}"])
    return EXIT_OK if agrees else EXIT_VERIFY


def cmd_satake_amplify(args, run: Runner) -> int:
    point, exact = charring.torus_point(_scalars(args.x))
    mu, val = satake.amplifier_select(args.n, point, Fraction(args.q), args.R, args.strategy)
    run.report["inputs"] = {"n": args.n, "x": _scalars(args.x), "q": args.q, "R": args.R,
                            "strategy": args.strategy}
    run.report["outputs"] = {"mu": list(mu), "value": _scalar_text(val)}
    run.report["exact"] = exact
    run.emit([f"mu = {mu}, S omega_mu(x) = {_scalar_text(val)}"])
    return EXIT_OK


def cmd_buildings_delta(args, run: Runner) -> int:
    prof = buildings.delta_profile(_datum(args), args.mu)
    run.report["inputs"] = {"family": args.family, "rank": args.rank, "mu": list(args.mu)}
    run.report["outputs"] = prof.to_dict()
    run.emit([f"delta = {list(prof.values)}, total = {prof.total}"])
    return EXIT_OK


def cmd_buildings_sphere(args, run: Runner) -> int:
    datum = build_root_datum("A", args.n - 1)
    poly = buildings.sphere_size_polynomial(datum, args.mu)
    out = {"coefficients": poly}
    lines = [" + ".join(f"{c}*q^{i}" for i, c in enumerate(poly) if c)]
    if args.at_q is not None:
        out["value"] = buildings.evaluate_polynomial(poly, args.at_q)
        lines.append(f"at q={args.at_q}: {out['value']}")
        if args.enumerate:
            out["enumerated"] = sphere_count(args.n, args.mu, args.at_q, args.cap or DEFAULT_ENUM_CAP)
            lines.append(f"enumerated: {out['enumerated']}")
    run.report["inputs"] = {"n": args.n, "mu": list(args.mu), "at_q": args.at_q}
    run.report["outputs"] = out
    run.emit(lines)
    if "enumerated" in out and out["enumerated"] != out["value"]:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_buildings_intersect(args, run: Runner) -> int:
    rng = random.Random(args.seed)
    twist = None
    if args.twist == "random":
        if args.config.startswith("diag"):
            twist = (buildings.random_twist(rng, args.p), buildings.random_twist(rng, args.p))
        else:
            twist = buildings.random_twist(rng, args.p, args.n)
    config = buildings.IntersectionConfig(args.config, args.p, twist, args.n)
    report = buildings.buildingcount_check(config, args.mu)
    run.report["inputs"] = dict(config.to_dict(), mu=list(args.mu))
    run.report["outputs"] = report.to_dict()
    run.emit([f"count {report.count}, bound {report.bound}, ratio {report.to_dict()['ratio']}"])
    return EXIT_OK


def cmd_reproduce_section7(args, run: Runner) -> int:
    if args.family:
        cases = [(args.family, args.k)]
    else:
        cases = list(ksmall.SECTION7_CASES)
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            rows = acceptance.section7_table(cases, args.box_radius, mapper=pool.map)
    else:
        rows = acceptance.section7_table(cases, args.box_radius)
    ok = all(r["verdict"] == "positive" for r in rows)
    run.report["inputs"] = {"cases": [list(c) for c in cases], "box_radius": args.box_radius}
    run.report["outputs"] = {"rows": rows, "all_positive": ok}
    lines = [f"{'case':<38} {'kappa2>=':>9} {'lattice':>8}  verdict"]
    lines += [f"{r['label']:<38} {r['kappa2_lower']:>9} {r['kappa2_lattice']:>8}  {r['verdict']}"
              for r in rows]
    run.emit(lines)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_acceptance(args, run: Runner) -> int:
    echo = None if args.json else (lambda r: print(r.line(), flush=True))
    results = acceptance.run_acceptance(args.only, args.seed, echo)
    ok = all(r.passed for r in results)
    run.report["inputs"] = {"only": args.only}
    run.report["outputs"] = {"criteria": [r.to_dict(args.timing) for r in results],
                             "all_passed": ok}
    run.emit([f"{sum(r.passed for r in results)}/{len(results)} criteria passed"])
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser


def _global_flags(default: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if default else {"default": argparse.SUPPRESS}
    p.add_argument("--json", action="store_true", help="machine-readable output", **kw)
    p.add_argument("--seed", type=int, help="seed for sampling (default 0)",
                   **({"default": 0} if default else kw))
    p.add_argument("--threads", type=int, help="worker processes for fan-out",
                   **({"default": 1} if default else kw))
    p.add_argument("--cap", type=int, help="enumeration / dimension cap",
                   **({"default": None} if default else kw))
    p.add_argument("--timing", action="store_true", help="include wall time in the report", **kw)
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags(False)
    parser = argparse.ArgumentParser(prog="supnorm", parents=[_global_flags(True)],
                                     description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="module", required=True)

    def sub(group, name, func, help_):
        p = group.add_parser(name, parents=[flags], help=help_)
        p.set_defaults(func=func)
        return p

    def datum_args(p):
        p.add_argument("--family", required=True, help="A, B, C, D, G2 or SU2")
        p.add_argument("--rank", type=int, required=True)

    ks = top.add_parser("ksmall", help="K-smallness certificates").add_subparsers(dest="action", required=True)
    p = sub(ks, "verify", cmd_ksmall_verify, "certify one embedding")
    p.add_argument("--family", required=True, choices=sorted(ksmall.FAMILIES))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--box-radius", "--box", dest="box_radius", type=int, default=3)
    sub(ks, "list", cmd_ksmall_list, "list embedding families")

    ch = top.add_parser("charring", help="Weyl characters").add_subparsers(dest="action", required=True)
    p = sub(ch, "eval", cmd_charring_eval, "evaluate a character at a torus point")
    datum_args(p)
    p.add_argument("--lambda", dest="lam", type=_ints, required=True)
    p.add_argument("--x", required=True, help='comma-separated complex literals, e.g. "i,1/2,1"')
    p = sub(ch, "mult", cmd_charring_mult, "weight multiplicities")
    datum_args(p)
    p.add_argument("--lambda", dest="lam", type=_ints, required=True)
    p = sub(ch, "levi", cmd_charring_levi, "lambda_L for a set of simple roots")
    datum_args(p)
    p.add_argument("--theta", type=_ints, default=(), help="0-based simple root positions")
    p = sub(ch, "search", cmd_charring_search, "non-vanishing character search")
    datum_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--R", type=int, default=2)
    p.add_argument("--floor", type=float, default=0.0)
    p.add_argument("--strategy", choices=("max", "first"), default="max")

    sa = top.add_parser("satake", help="type-A Satake transforms").add_subparsers(dest="action", required=True)
    p = sub(sa, "table", cmd_satake_table, "Hall-Littlewood expansion of S omega_mu")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=_ints, required=True)
    p.add_argument("--q", default="sym", help="'sym' or a rational number")
    p = sub(sa, "oracle", cmd_satake_oracle, "brute-force transform at q = p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=_ints, required=True)
    p.add_argument("--p", type=int, required=True)
    p = sub(sa, "amplify", cmd_satake_amplify, "amplifier selection at a Satake parameter")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--q", default="101")
    p.add_argument("--R", type=int, default=2)
    p.add_argument("--strategy", choices=("max", "first"), default="max")

    bu = top.add_parser("buildings", help="sphere counts").add_subparsers(dest="action", required=True)
    p = sub(bu, "delta", cmd_buildings_delta, "delta(mu, k) profile")
    datum_args(p)
    p.add_argument("--mu", type=_ints, required=True)
    p = sub(bu, "sphere", cmd_buildings_sphere, "sphere-size polynomial for GL_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=_ints, required=True)
    p.add_argument("--at-q", type=int)
    p.add_argument("--enumerate", action="store_true", help="also count Hermite forms at q = p")
    p = sub(bu, "intersect", cmd_buildings_intersect, "intersection count with a twisted subgroup")
    p.add_argument("--config", required=True, choices=buildings.KINDS)
    p.add_argument("--mu", type=_ints, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--twist", choices=("identity", "random"), default="identity")

    rp = top.add_parser("reproduce", help="regenerate tables").add_subparsers(dest="action", required=True)
    p = sub(rp, "section7", cmd_reproduce_section7, "the K-smallness verification table")
    p.add_argument("--family", choices=sorted(ksmall.FAMILIES))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--box-radius", type=int, default=3)

    p = top.add_parser("acceptance", parents=[flags], help="run the acceptance criteria")
    p.set_defaults(func=cmd_acceptance)
    p.add_argument("--only", help=f"groups {sorted(acceptance.GROUPS)} or criterion numbers")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    run = Runner(args, argv)
    try:
        return args.func(args, run)
    except SupnormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
