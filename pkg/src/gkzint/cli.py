"""Command-line driver: ``gkzint <command> [flags]``.

Exit status is 0 when every verdict passes, 1 when some verdict fails and
2 on bad input.
"""
import argparse
import json
import os
import sys
import time
import warnings
from fractions import Fraction

from . import __version__
from .config import DEFAULT_NODE_CAP, enumerate_orthant, kernel_basis, load_configuration
from .congruence import MultiIndex, check_prop31, check_prop32, scan_congruences
from .corpus import corpus_config, corpus_names
from .errors import BudgetExceeded, GKZError, NotPointed
from .geometry import (
    NonPointedWitness,
    cone_generators,
    duplicate_vector_check,
    orthant_is_trivial,
    pointedness_certificate,
)
from .integrality import (
    DEFAULT_PRIMES,
    dwork_all_primes,
    exp_integrality,
    mirror_coordinate,
    mirror_map,
    verify_congruence_4_3_to_4_8,
)
from .intlinalg import primitive
from .report import FAIL, PASS, Report, combine, to_jsonable
from .solutions import build_gk, build_log_solution, check_box, check_euler, log_plus_gk, relation_slab

COMMANDS = (
    "validate",
    "lattice",
    "gk",
    "exp-check",
    "dwork-check",
    "operators-check",
    "mirror",
    "congruence-scan",
    "cone-check",
    "report-all",
)


class InputError(Exception):
    pass


def _csv_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="gkzint", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--timing", action="store_true", help="record wall time in the manifest")
        if name != "congruence-scan":
            p.add_argument("--config", required=True, help=f"JSON file, or one of {', '.join(corpus_names())}")
        if name in ("gk", "exp-check", "dwork-check", "operators-check"):
            p.add_argument("--k", type=int, default=None)
        if name not in ("validate", "congruence-scan"):
            p.add_argument("--max-level", type=int, default=None)
            p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
        if name in ("dwork-check", "report-all", "congruence-scan"):
            p.add_argument("--primes", type=_csv_ints, default=None)
        if name in ("mirror", "operators-check"):
            p.add_argument("--relation", type=_csv_ints, default=None)
        if name in ("operators-check", "report-all"):
            p.add_argument("--coord-bound", type=int, default=3)
        if name == "congruence-scan":
            p.add_argument("--nmax", type=int, default=4)
            p.add_argument("--emax", type=int, default=12)
    return parser


def _load(spec):
    if os.path.exists(spec):
        return load_configuration(spec)
    if spec in corpus_names():
        return corpus_config(spec)
    raise InputError(f"no such configuration file: {spec}")


def _ks(cfg, k):
    if k is None:
        return list(range(1, cfg.N + 1))
    if not 1 <= k <= cfg.N:
        raise InputError(f"--k must lie in 1..{cfg.N}")
    return [k]


def _level(args, default):
    value = args.max_level if args.max_level is not None else default
    if value < 1:
        raise InputError("--max-level must be positive")
    return value


def _relation(cfg, values):
    if values is None:
        return None
    rel = tuple(values)
    if not cfg.is_relation(rel):
        raise InputError(f"{list(rel)} is not a relation of the configuration")
    return rel


# ---------------------------------------------------------------- commands


def do_validate(cfg, args):
    return [
        Report(
            check="validate",
            target=cfg.name or "configuration",
            verdict=PASS,
            details={"n": cfg.n, "N": cfg.N, "h": list(cfg.h), "duplicates": [list(p) for p in cfg.duplicate_pairs()]},
        )
    ]


def do_lattice(cfg, args):
    m = _level(args, 6)
    basis = [list(r) for r in kernel_basis(cfg)]
    orthants = {}
    for k in range(1, cfg.N + 1):
        rels = enumerate_orthant(cfg, k, m, node_cap=args.node_cap)
        orthants[str(k)] = [list(r) for r in rels]
    checked = [r for rels in orthants.values() for r in rels] + basis
    bad = [r for r in checked if any(cfg.apply(r)) or sum(r)]
    return [
        Report(
            check="lattice",
            target=cfg.name or "configuration",
            verdict=FAIL if bad else PASS,
            witness={"l": bad[0]} if bad else None,
            details={"rank": len(basis), "basis": basis, "orthant_level": m, "orthants": orthants},
        )
    ]


def do_cone(cfg, args):
    m = _level(args, 6)
    gens = cone_generators(cfg, m, node_cap=args.node_cap)
    cert = pointedness_certificate(gens)
    if isinstance(cert, NonPointedWitness):
        rep = Report(
            "pointedness",
            cfg.name or "configuration",
            FAIL,
            witness={"coefficients": list(cert.coefficients), "generators": [list(g) for g in cert.generators]},
            details={"pointed": False, "witness_verified": cert.verify(), "generators": len(gens)},
        )
    else:
        rep = Report(
            "pointedness",
            cfg.name or "configuration",
            PASS,
            valid_level=Fraction(m),
            details={
                "pointed": True,
                "w": list(cert.w),
                "min_margin": min(cert.margins, default=None),
                "certificate_verified": cert.verify(),
                "generators": len(gens),
            },
        )
    return [rep, duplicate_vector_check(cfg)]


def _ray_text(series):
    """Write a series supported on one ray as a polynomial in x = lambda^r."""
    items = series.items()
    if not items:
        return "0"
    nonconst = [u for u, _ in items if any(u)]
    r = primitive(nonconst[0]) if nonconst else None
    powers = []
    for u, c in items:
        if not any(u):
            powers.append((0, c))
            continue
        t = next((u[i] // r[i] for i in range(len(u)) if r[i]), None)
        if t is None or t <= 0 or tuple(t * x for x in r) != u:
            return None
        powers.append((t, c))
    out = []
    for t, c in powers:
        mono = "" if t == 0 else ("x" if t == 1 else f"x^{t}")
        if t and abs(c) == 1:
            body = mono
        elif t:
            body = f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    if r is not None:
        text += f"   (x = lambda^{tuple(r)})"
    return text


def series_text(series):
    text = _ray_text(series)
    if text is not None:
        return text
    return " + ".join(f"({c})*lambda^{u}" for u, c in series.items())


def do_gk(cfg, args):
    m = _level(args, 10)
    reports = []
    for k in _ks(cfg, args.k):
        gk = build_gk(cfg, k, m, node_cap=args.node_cap)
        rep = check_euler(cfg, gk, target=f"G_{k}")
        rep.check = "gk"
        rep.details["series"] = gk.series.to_dict()
        rep.details["text"] = series_text(gk.series)
        reports.append(rep)
    return reports


def do_exp(cfg, args):
    m = _level(args, 30)
    out = []
    for k in _ks(cfg, args.k):
        rep = exp_integrality(build_gk(cfg, k, m, node_cap=args.node_cap), m)
        rep.details["text"] = series_text(rep.series)
        out.append(rep)
    return out


def _primes(args):
    return list(args.primes) if args.primes else list(DEFAULT_PRIMES)


def do_dwork(cfg, args):
    m = _level(args, 20)
    primes = _primes(args)
    out = []
    for k in _ks(cfg, args.k):
        gk = build_gk(cfg, k, m, node_cap=args.node_cap)
        series_route = dwork_all_primes(gk, primes, m)
        valuation_route = verify_congruence_4_3_to_4_8(cfg, k, m, primes, node_cap=args.node_cap)
        agree = series_route.per_prime == valuation_route.per_prime
        out.extend([series_route, valuation_route])
        out.append(
            Report(
                "route_agreement",
                f"G_{k}",
                PASS if agree else FAIL,
                details={"series_route": series_route.verdict, "valuation_route": valuation_route.verdict},
            )
        )
    return out


def _euler_reports(cfg, ks, m, node_cap):
    return [check_euler(cfg, build_gk(cfg, k, m, node_cap=node_cap), target=f"G_{k}") for k in ks]


def _box_reports(cfg, ks, m, rels, node_cap):
    out = []
    for k in ks:
        gk = build_gk(cfg, k, m, node_cap=node_cap)
        if gk.is_zero():
            continue
        rep = check_box(cfg, log_plus_gk(gk), rels, target=f"log(lambda_{k}) + G_{k}")
        rep.details.pop("subchecks", None)
        out.append(rep)
    return out


def _solution_reports(cfg, m, rels, sol_rels, node_cap):
    out = []
    for rel in sol_rels:
        target = f"log solution rel={list(rel)}"
        try:
            f = build_log_solution(cfg, rel, m, node_cap=node_cap)
        except NotPointed as exc:
            out.append(Report("log_solution", target, FAIL, witness={"reason": str(exc)}))
            continue
        euler = check_euler(cfg, f, target=target)
        box = check_box(cfg, f, rels, target=target)
        box.details.pop("subchecks", None)
        out.extend([euler, box])
    return out


def do_operators(cfg, args):
    m = _level(args, 8)
    ks = _ks(cfg, args.k)
    rels = relation_slab(cfg, args.coord_bound)
    rel = _relation(cfg, args.relation)
    sol_rels = [rel] if rel is not None else [tuple(r) for r in kernel_basis(cfg)]
    out = _euler_reports(cfg, ks, m, args.node_cap)
    out += _box_reports(cfg, ks, m, rels, args.node_cap)
    out += _solution_reports(cfg, m, rels, sol_rels, args.node_cap)
    return out


def _mirror_report(cfg, rel, m, node_cap):
    try:
        series, rep = mirror_map(cfg, rel, m, node_cap=node_cap)
    except NotPointed as exc:
        return Report("mirror_integrality", f"mirror rel={list(rel)}", FAIL, witness={"reason": str(exc)})
    q = mirror_coordinate(series, rel)
    rep.details["q"] = q.to_dict()
    rep.details["text"] = series_text(q)
    return rep


def do_mirror(cfg, args):
    m = _level(args, 20)
    rel = _relation(cfg, args.relation)
    if rel is None:
        raise InputError("--relation is required")
    return [_mirror_report(cfg, rel, m, args.node_cap)]


def do_congruence_scan(args):
    if args.nmax < 1 or args.emax < 0:
        raise InputError("--nmax must be positive and --emax nonnegative")
    return [scan_congruences(args.nmax, args.emax, args.primes or [2, 3, 5, 7])]


def _spot_checks(cfg, m, primes, node_cap):
    """Both multinomial statements on the multi-indices that occur in G_k."""
    subs = []
    seen = set()
    for k in range(1, cfg.N + 1):
        for rel in enumerate_orthant(cfg, k, m, node_cap=node_cap):
            parts = tuple(x for j, x in enumerate(rel) if j != k - 1)
            if parts in seen:
                continue
            seen.add(parts)
            for p in primes:
                subs += [check_prop31(MultiIndex(parts), p), check_prop32(MultiIndex(parts), p)]
    rep = combine("congruence_spot_checks", cfg.name or "configuration", subs, details={"cases": len(subs)})
    rep.details.pop("subchecks")
    return rep


def do_report_all(cfg, args):
    m = _level(args, 20)
    primes = _primes(args)
    cap = args.node_cap
    ks = list(range(1, cfg.N + 1))
    nontrivial = [k for k in ks if not orthant_is_trivial(cfg, k)]
    rels = relation_slab(cfg, args.coord_bound)
    box_level = min(m, 8)
    out = do_validate(cfg, args)
    lat_args = argparse.Namespace(max_level=6, node_cap=cap)
    out += do_lattice(cfg, lat_args)
    out += do_cone(cfg, lat_args)
    gk_args = argparse.Namespace(max_level=m, node_cap=cap, k=None)
    out += do_gk(cfg, gk_args)
    out += _euler_reports(cfg, ks, m, cap)
    out += _box_reports(cfg, ks, box_level, rels, cap)
    out += _solution_reports(cfg, box_level, rels, [tuple(r) for r in kernel_basis(cfg)], cap)
    out.append(_spot_checks(cfg, m, primes, cap))
    for k in nontrivial:
        out += do_dwork(cfg, argparse.Namespace(max_level=m, node_cap=cap, k=k, primes=primes))
    for k in ks:
        rep = exp_integrality(build_gk(cfg, k, m, node_cap=cap), m)
        rep.details["text"] = series_text(rep.series)
        out.append(rep)
    for rel in kernel_basis(cfg):
        out.append(_mirror_report(cfg, tuple(rel), m, cap))
    return out


HANDLERS = {
    "validate": do_validate,
    "lattice": do_lattice,
    "gk": do_gk,
    "exp-check": do_exp,
    "dwork-check": do_dwork,
    "operators-check": do_operators,
    "mirror": do_mirror,
    "cone-check": do_cone,
    "report-all": do_report_all,
}


def manifest(args, elapsed=None):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "config", "timing")}
    out = {
        "command": args.command,
        "config": getattr(args, "config", None),
        "parameters": params,
        "version": __version__,
    }
    if elapsed is not None:
        out["timing_seconds"] = round(elapsed, 3)
    return out


def render_text(doc):
    lines = [f"gkzint {doc['manifest']['version']} {doc['manifest']['command']}"]
    for rep in doc["reports"]:
        line = f"[{rep['verdict']}] {rep['check']}: {rep['target']}"
        if rep.get("valid_level") is not None:
            line += f" (valid to level {rep['valid_level']})"
        lines.append(line)
        details = rep.get("details") or {}
        if "text" in details:
            lines.append(f"    {details['text']}")
        if rep["verdict"] == FAIL and rep.get("witness"):
            lines.append(f"    witness: {json.dumps(rep['witness'], sort_keys=True)}")
    lines.append(f"overall: {doc['verdict']}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None):
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    start = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if args.command == "congruence-scan":
                reports = do_congruence_scan(args)
            else:
                cfg = _load(args.config)
                reports = HANDLERS[args.command](cfg, args)
    except (InputError, GKZError, OSError) as exc:
        if isinstance(exc, BudgetExceeded):
            print(f"gkzint: search budget exceeded: {exc}", file=stderr)
        else:
            print(f"gkzint: error: {exc}", file=stderr)
        return 2
    elapsed = time.perf_counter() - start if args.timing else None
    ok = all(r.passed for r in reports)
    doc = {
        "manifest": manifest(args, elapsed),
        "reports": [r.to_dict() for r in reports],
        "verdict": PASS if ok else FAIL,
    }
    if args.format == "json":
        stdout.write(json.dumps(to_jsonable(doc), sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(render_text(doc) + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
