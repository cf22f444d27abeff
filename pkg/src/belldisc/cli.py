"""Command-line front end: ``belldisc verify | simulate | bound``.

A JSON report goes to stdout and a short table to stderr. Exit codes:
0 all checks pass, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from typing import Callable

import numpy as np

from . import __version__
from . import bellzoo as bz
from . import entanglement as ent
from . import locc
from .qcore import UsageError, ValidationError, permute_qubits, relative_entropy

EXACT_TOL = 1e-12
SPECTRAL_TOL = 1e-9
RHO3_BOUND = 2 - math.log2(3)


def _num(x: float) -> float:
    if isinstance(x, complex):
        x = x.real
    if math.isinf(x):
        return x
    y = float(f"{x:.12g}")
    return 0.0 if y == 0 else y


def _clean(obj):
    """Round floats to 12 significant digits, recursively."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, complex)):
        x = _num(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def approx(name: str, expected: float, computed: float, tol: float, **extra) -> dict:
    ok = abs(expected - computed) <= tol
    return {"name": name, "kind": "approx", "expected": expected, "computed": computed,
            "tolerance": tol, "pass": bool(ok), **extra}


def holds(name: str, ok: bool, value: float, relation: str, **extra) -> dict:
    return {"name": name, "kind": "bool", "expected": True, "computed": bool(ok),
            "value": value, "relation": relation, "tolerance": None, "pass": bool(ok), **extra}


class Context:
    """Per-run accumulator for protocol summaries and bound reports."""

    def __init__(self, tol: float | None):
        self.tol = tol
        self.protocols: list[dict] = []
        self.bounds: list[ent.BoundsReport] = []

    def exact(self) -> float:
        return self.tol if self.tol is not None else EXACT_TOL

    def spectral(self) -> float:
        return self.tol if self.tol is not None else SPECTRAL_TOL


def check_smolin_rearrangement(ctx: Context) -> list[dict]:
    rho = bz.smolin()
    out = []
    for tag, perm in (("B<->C", [0, 2, 1, 3]), ("B<->D", [0, 3, 2, 1])):
        dev = float(np.max(np.abs(permute_qubits(rho, perm) - rho)))
        out.append(approx(f"smolin-rearrangement {tag}", 0.0, dev, ctx.exact()))
    check = ent.verify_certificate(rho, ent.smolin_certificate(bz.AC_BD))
    out.append(holds("smolin-rearrangement certificate AC:BD", check.ok, check.deviation,
                     f"deviation <= {ent.CERT_TOL}"))
    return out


def check_rho3_bound(ctx: Context) -> list[dict]:
    rho_s = bz.smolin()
    values = {",".join(map(str, t)): relative_entropy(bz.rho3(t), rho_s) for t in bz.all_triples()}
    worst = max(values.values(), key=lambda v: abs(v - RHO3_BOUND))
    return [approx("rho3-bound", RHO3_BOUND, worst, ctx.spectral(), per_triple=values,
                   below_one=all(v < 1 for v in values.values()))]


def check_ppt_table(ctx: Context) -> list[dict]:
    rho = bz.smolin()
    out = []
    for cut in bz.TWO_TWO_CUTS:
        lam = ent.ppt_min_eigenvalue(rho, cut)
        out.append(holds(f"ppt-table smolin {cut}", lam >= -ctx.exact(), lam, f">= -{ctx.exact()}"))
    lam = ent.ppt_min_eigenvalue(rho, "A:BCD")
    out.append(holds("ppt-table smolin A:BCD", lam < -1e-6, lam, "< -1e-6"))
    return out


def check_rho2prime_sandwich(ctx: Context) -> list[dict]:
    fid_dev, rel_dev, exact_ok = 0.0, 0.0, True
    for ab in bz.ab_grid():
        for branch in (1, 2):
            fid_dev = max(fid_dev, abs(1 - locc.unlock_rho2prime(ab, branch).fidelity))
        rho = bz.rho2prime(ab)
        for cut in (bz.AC_BD, bz.AD_BC):
            sigma, cert = ent.dephasing_candidate(rho, cut)
            rel_dev = max(rel_dev, abs(1 - ent.rel_ent_upper_bound(rho, sigma, cert)))
            report = ent.distillable_bounds("rho2prime", cut, ab=ab)
            ctx.bounds.append(report)
            exact_ok &= report.exact is not None and abs(report.exact - 1) <= SPECTRAL_TOL
    return [
        approx("rho2prime-sandwich unlock fidelity", 0.0, fid_dev, ctx.exact()),
        approx("rho2prime-sandwich dephased rel-entropy", 0.0, rel_dev, ctx.spectral()),
        holds("rho2prime-sandwich distillable = 1 (AC:BD, AD:BC)", exact_ok, 1.0, "lower == upper == 1"),
    ]


def check_rho2_cross(ctx: Context) -> list[dict]:
    return [approx("rho2-cross-check", 1.0, relative_entropy(bz.rho2(), bz.smolin()), ctx.spectral())]


def check_two_bell(ctx: Context) -> list[dict]:
    worst = 1.0
    for i, j in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        t = locc.discriminate_two_bell(i, j)
        ctx.protocols.append(t.summary())
        worst = min(worst, t.success_probability)
    return [approx("two-bell success (6 pairs)", 1.0, worst, ctx.exact())]


def check_two_copy(ctx: Context) -> list[dict]:
    worst, correct = 1.0, 0
    for label in range(1, 5):
        t = locc.discriminate_four_bell_two_copies(label)
        ctx.protocols.append(t.summary())
        worst = min(worst, t.success_probability)
        correct += locc.sample(t, 1000, 42).correct
    return [approx("two-copy success (4 labels)", 1.0, worst, ctx.exact()),
            approx("two-copy sampling 4x1000 shots seed 42", 4000, correct, 0)]


def check_overlap_identity(ctx: Context) -> list[dict]:
    rng = np.random.default_rng(0)
    v = rng.normal(size=(10_000, 2)) + 1j * rng.normal(size=(10_000, 2))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    worst = 0.0
    for t in bz.all_triples():
        for e in v:
            o = locc.overlap_triple(e, t)
            worst = max(worst, abs(sum(x * x for x in o) - 1))
    out = [approx("overlap-identity squares sum (1e4 x 4)", 0.0, worst, ctx.exact())]
    for t in bz.all_triples():
        rep = locc.three_bell_oneway_search(t, (91, 180))
        out.append(holds(f"overlap-identity search {rep.triple}", rep.bound_holds, rep.minimum,
                         ">= 1/sqrt(3) - 1e-9"))
    return out


def check_rho3_unlockable(ctx: Context) -> list[dict]:
    worst = max(abs(1 - locc.unlock_joint(l).fidelity) for l in range(1, 5))
    return [approx("rho3-unlockable joint Bell measurement fidelity", 0.0, worst, ctx.exact())]


def check_bounds_consistency(ctx: Context) -> list[dict]:
    for state, kw in (("smolin", {}), ("rho3", {"triple": (1, 2, 3)}), ("rho2prime", {})):
        for cut in bz.TWO_TWO_CUTS:
            ctx.bounds.append(ent.distillable_bounds(state, cut, **kw))
    for t in bz.all_triples():
        ctx.bounds.append(ent.distillable_bounds("rho3", bz.AC_BD, triple=t))
    ordered = all(b.lower_ebits <= b.upper_ebits + ent.BOUND_SLACK for b in ctx.bounds)
    rho3_upper = max(b.upper_ebits for b in ctx.bounds
                     if b.state.startswith("rho3") and b.cut == bz.AC_BD)
    two_ok = all(locc.discriminate_two_bell(i, j).success_probability >= 1 - EXACT_TOL
                 for i, j in itertools.combinations(range(1, 5), 2))
    return [
        holds("bounds-consistency lower <= upper", ordered, len(ctx.bounds), "all reports"),
        holds("bounds-consistency rho3 AC:BD upper < 1 with pairwise protocols exact",
              rho3_upper < 1 and two_ok, rho3_upper, "< 1"),
    ]


CHECKS: dict[str, Callable[[Context], list[dict]]] = {
    "smolin-rearrangement": check_smolin_rearrangement,
    "rho3-bound": check_rho3_bound,
    "ppt-table": check_ppt_table,
    "rho2prime-sandwich": check_rho2prime_sandwich,
    "rho2-cross-check": check_rho2_cross,
    "two-bell": check_two_bell,
    "two-copy": check_two_copy,
    "overlap-identity": check_overlap_identity,
    "rho3-unlockable": check_rho3_unlockable,
    "bounds-consistency": check_bounds_consistency,
}


def _report(ctx: Context, checks: list[dict], **extra) -> dict:
    return {"tool_version": __version__, **extra, "checks": checks,
            "protocols": ctx.protocols, "bounds": [b.as_dict() for b in ctx.bounds]}


def _emit(report: dict, out=None, err=None) -> None:
    out = out or sys.stdout
    err = err or sys.stderr
    out.write(json.dumps(_clean(report), indent=2, sort_keys=False) + "\n")
    for c in report["checks"]:
        mark = "PASS" if c["pass"] else "FAIL"
        val = c["value"] if c["kind"] == "bool" else c["computed"]
        err.write(f"{mark}  {c['name']:<62} {_clean(val)}\n")


def _complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected re[,im], got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _triple(text: str) -> tuple[int, int, int]:
    try:
        vals = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j,k, got {text!r}") from None
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three labels, got {text!r}")
    return vals


def _tol(text: str) -> float:
    val = float(text)
    if not val >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be nonnegative, got {text!r}")
    return val


def _cut(text: str) -> bz.Cut:
    try:
        return bz.Cut.parse(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="belldisc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run named checks (or --all)")
    p.add_argument("names", nargs="*", help="check names; see --list")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true", help="print check names and exit")
    p.add_argument("--tol", type=_tol, default=None, help="override every tolerance")

    p = sub.add_parser("simulate", help="run a protocol exactly, optionally sampling")
    p.add_argument("subject", choices=["two-bell", "two-copy", "unlock", "joint-unlock"])
    p.add_argument("labels", nargs="*", type=int, help="two Bell labels for two-bell")
    p.add_argument("--a", type=_complex, default=complex(1 / math.sqrt(2)))
    p.add_argument("--b", type=_complex, default=complex(1 / math.sqrt(2)))
    p.add_argument("--triple", type=_triple, default=(1, 2, 3))
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_tol, default=None)

    p = sub.add_parser("bound", help="distillable-entanglement bounds of a named state")
    p.add_argument("--state", choices=["smolin", "rho3", "rho2prime"], required=True)
    p.add_argument("--cut", type=_cut, default=bz.AC_BD)
    p.add_argument("--triple", type=_triple, default=(1, 2, 3))
    p.add_argument("--a", type=_complex, default=complex(1 / math.sqrt(2)))
    p.add_argument("--b", type=_complex, default=complex(1 / math.sqrt(2)))
    return parser


def cmd_verify(args, parser) -> int:
    if args.list:
        print("\n".join(CHECKS))
        return 0
    names = list(CHECKS) if args.all else args.names
    if not names:
        parser.error("give check names or --all")
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        parser.error(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    ctx = Context(args.tol)
    checks = [c for n in names for c in CHECKS[n](ctx)]
    report = _report(ctx, checks, command="verify", selected=names)
    _emit(report)
    return 0 if all(c["pass"] for c in checks) else 1


def cmd_simulate(args, parser) -> int:
    ctx = Context(args.tol)
    tol = ctx.exact()
    transcripts: list[locc.Transcript] = []
    checks = []
    if args.subject == "two-bell":
        if len(args.labels) != 2:
            parser.error("two-bell needs two labels, e.g. 'simulate two-bell 1 4'")
        transcripts.append(locc.discriminate_two_bell(*args.labels))
    elif args.labels:
        parser.error(f"{args.subject} takes no positional labels")
    elif args.subject == "two-copy":
        transcripts.extend(locc.discriminate_four_bell_two_copies(l) for l in range(1, 5))
    elif args.subject == "unlock":
        ab = bz.AbPair(args.a, args.b)
        for branch in (1, 2):
            res = locc.unlock_rho2prime(ab, branch)
            transcripts.append(res.transcript)
            checks.append(approx(f"unlock branch {branch} CD fidelity with B1", 1.0,
                                 res.fidelity, tol))
    else:
        bz.rho3(args.triple)  # rejects repeated labels
        for l in args.triple:
            res = locc.unlock_joint(l)
            transcripts.append(res.transcript)
            checks.append(approx(f"joint unlock label {l} CD fidelity with B1", 1.0,
                                 res.fidelity, tol))
    for t in transcripts:
        summary = t.summary()
        if args.shots is not None:
            summary["sampling"] = locc.sample(t, args.shots, args.seed).as_dict()
            tally = summary["sampling"]
            checks.append(holds(f"{t.protocol} sampled all correct", tally["correct"] == args.shots,
                                tally["correct"], f"== {args.shots}"))
        ctx.protocols.append(summary)
        checks.append(approx(f"{t.protocol} success probability", 1.0, t.success_probability, tol))
    _emit(_report(ctx, checks, command="simulate", subject=args.subject))
    return 0 if all(c["pass"] for c in checks) else 1


def cmd_bound(args, parser) -> int:
    ctx = Context(None)
    kw = {}
    if args.state == "rho3":
        kw["triple"] = args.triple
    if args.state == "rho2prime":
        kw["ab"] = bz.AbPair(args.a, args.b)
    if args.cut not in bz.TWO_TWO_CUTS:
        parser.error("cut must be one of AB:CD, AC:BD, AD:BC")
    report = ent.distillable_bounds(args.state, args.cut, **kw)
    ctx.bounds.append(report)
    check = holds("bound lower <= upper", report.lower_ebits <= report.upper_ebits + ent.BOUND_SLACK,
                  report.upper_ebits - report.lower_ebits, ">= -1e-9")
    _emit(_report(ctx, [check], command="bound"))
    return 0 if check["pass"] else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": cmd_verify, "simulate": cmd_simulate, "bound": cmd_bound}
    try:
        return handlers[args.command](args, parser)
    except (UsageError, ValidationError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
