"""Command-line front end.

Subcommands: check, enumerate, intersect, poset, lp, paper-examples, fuzz.
Output is human-readable by default, ``--json`` switches to the Report
structure.  Exit codes: 0 all pass, 1 invariant violation or failed check,
2 usage or parse error.  ``SMLAT_ORACLE_CAP`` overrides the brute-force cap.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __doc__ as _pkg_doc
from .casebook import run_casebook
from .compound import build_compound, firm_optimal_compound, worker_optimal_compound
from .core import Instance, family_delta, is_stable, parse_instance
from .da import firm_da, worker_da
from .errors import InvariantViolation, NotASublattice, ParseError, SmlatError, ValidationError
from .fuzz import FuzzConfig, run_fuzz
from .lp import INFEASIBLE, build_lp, solve_feasible, theta_round
from .multiroom import firm_optimal_multiroom, worker_optimal_multiroom
from .oracle import enumerate_stable_bruteforce, oracle_cap, stable_intersection
from .outcomes import NO_IDEA, NO_MATCH
from .report import Report
from .rotations import (build_rotation_poset, compression_from_membership,
                        export_poset_text)


def _load(path: str) -> Instance:
    text = Path(path).read_text(encoding="utf-8")
    return parse_instance(text, name=Path(path).stem)


def _emit(report: Report, args, extra_text: str = "") -> int:
    if args.json:
        print(report.to_json())
    else:
        if extra_text:
            print(extra_text, end="")
        print(report.render_text())
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    t0 = time.time()
    inst = _load(args.instance)
    report = Report("check", inputs={"instance": args.instance, "n": inst.n})
    report.add("instance parses and validates", "pass")
    top, bottom = worker_da(inst), firm_da(inst)
    report.add("worker-optimal matching", "info", str(top))
    report.add("firm-optimal matching", "info", str(bottom))
    poset = build_rotation_poset(inst)
    report.add("rotations", "info", str(len(poset.rotations)))
    report.add("stable matchings (closed sets)", "info", str(poset.closed_count()))
    if inst.n <= oracle_cap():
        ok = len(enumerate_stable_bruteforce(inst)) == poset.closed_count()
        report.add("poset count matches brute-force oracle", "pass" if ok else "fail")
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args)


def cmd_enumerate(args) -> int:
    t0 = time.time()
    inst = _load(args.instance)
    poset = build_rotation_poset(inst)
    matchings = list(poset.iter_matchings())
    report = Report("enumerate", inputs={"instance": args.instance, "n": inst.n})
    report.add("stable matchings", "info", str(len(matchings)))
    text = "".join(f"{m}\n" for m in matchings)
    if args.poset:
        text += export_poset_text(poset)
    report.inputs["count"] = len(matchings)
    if args.json:
        report.inputs["matchings"] = [str(m) for m in matchings]
        if args.poset:
            report.inputs["poset"] = export_poset_text(poset)
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args, extra_text=text)


def cmd_intersect(args) -> int:
    t0 = time.time()
    instances = [_load(p) for p in args.instances]
    delta = family_delta(instances)
    report = Report("intersect", inputs={
        "instances": list(args.instances),
        "p": delta.p, "q": delta.q})
    text = ""
    if args.worker_opt or args.firm_opt:
        if delta.p == 0:
            x = build_compound(instances)
            out = worker_optimal_compound(x) if args.worker_opt else firm_optimal_compound(x)
            engine = "compound"
        else:
            research = delta.p > 1
            run = worker_optimal_multiroom if args.worker_opt else firm_optimal_multiroom
            out = run(instances, research=research)
            engine = "multiroom" + (" (research)" if research else "")
        side = "worker-optimal" if args.worker_opt else "firm-optimal"
        report.add(f"{side} common matching via {engine}", "info", str(out))
        if out not in (NO_MATCH, NO_IDEA):
            text = f"{out}\n"
    if args.enumerate or args.poset:
        first = instances[0]
        poset = build_rotation_poset(first)
        rest = instances[1:]
        try:
            comp = compression_from_membership(
                poset, lambda m: all(is_stable(i, m) for i in rest))
        except NotASublattice as exc:
            report.add("intersection is a sublattice of the first lattice",
                       "info", f"no: {exc}")
            m1, m2, op, combined = exc.witness
            report.add_witness("not-a-sublattice", m1=str(m1), m2=str(m2),
                               op=op, combined=str(combined))
        else:
            if args.enumerate:
                matchings = list(comp.iter_matchings())
                report.add("intersection matchings", "info", str(len(matchings)))
                text += "".join(f"{m}\n" for m in matchings)
            if args.poset:
                text += export_poset_text(comp)
                if args.json:
                    report.inputs["poset"] = export_poset_text(comp)
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args, extra_text=text)


def cmd_poset(args) -> int:
    t0 = time.time()
    inst = _load(args.instance)
    poset = build_rotation_poset(inst)
    report = Report("poset", inputs={"instance": args.instance, "n": inst.n,
                                     "rotations": len(poset.rotations)})
    text = export_poset_text(poset)
    if args.json:
        report.inputs["poset"] = text
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args, extra_text=text)


def cmd_lp(args) -> int:
    t0 = time.time()
    instances = [_load(p) for p in args.instances]
    model = build_lp(instances)
    report = Report("lp", inputs={"instances": list(args.instances),
                                  "constraints": model.counts()})
    text = ""
    if args.export:
        text += model.export_text()
    x = solve_feasible(model)
    if x is INFEASIBLE:
        report.add("feasible", "info", "no")
    else:
        report.add("feasible", "info", "yes")
        report.add("integral vertex", "info", "yes" if x.is_integral() else "no")
        rows = "\n".join(" ".join(str(v) for v in row) for row in x.values)
        text += rows + "\n"
        if args.round_theta:
            theta = Fraction(args.round_theta)
            for inst in instances:
                m = theta_round(x, inst, theta)
                report.add(f"rounded under {inst.name or 'instance'}", "info", str(m))
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args, extra_text=text)


def cmd_paper_examples(args) -> int:
    t0 = time.time()
    report = run_casebook()
    report.timings["total_s"] = round(time.time() - t0, 3)
    return _emit(report, args)


def cmd_fuzz(args) -> int:
    try:
        p_str, q_str = args.pq.split(",")
        p, q = int(p_str), int(q_str)
    except ValueError:
        print(f"bad --pq {args.pq!r}; expected '<p>,<q>'", file=sys.stderr)
        return 2
    cfg = FuzzConfig(n=args.n, trials=args.trials, p=p, q=q, seed=args.seed,
                     count=args.count, research=args.research, lp=not args.no_lp)
    try:
        report = run_fuzz(cfg)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    return _emit(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smlat",
        description=(_pkg_doc or "").strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true",
                        help="emit the machine-readable report")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "validate an instance and summarize its lattice")
    sp.add_argument("instance")

    sp = add("enumerate", cmd_enumerate,
             "stream every stable matching of one instance")
    sp.add_argument("instance")
    sp.add_argument("--poset", action="store_true",
                    help="also print the rotation poset")

    sp = add("intersect", cmd_intersect,
             "matchings stable under every given instance")
    sp.add_argument("instances", nargs="+")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--worker-opt", action="store_true")
    group.add_argument("--firm-opt", action="store_true")
    group.add_argument("--enumerate", action="store_true")
    group.add_argument("--poset", action="store_true")

    sp = add("poset", cmd_poset, "print the rotation poset of one instance")
    sp.add_argument("instance")

    sp = add("lp", cmd_lp, "solve the joint stability program exactly")
    sp.add_argument("instances", nargs="+")
    sp.add_argument("--round-theta", metavar="P/Q",
                    help="round the solution at this rational theta")
    sp.add_argument("--export", action="store_true",
                    help="print the constraint listing")

    add("paper-examples", cmd_paper_examples,
        "replay the bundled worked-example suite")

    sp = add("fuzz", cmd_fuzz, "randomized oracle-checked property trials")
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--pq", default="0,2", help="perturbation sizes '<p>,<q>'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=2,
                    help="instances per family")
    sp.add_argument("--research", action="store_true",
                    help="allow p >= 2; log findings instead of failing")
    sp.add_argument("--no-lp", action="store_true",
                    help="skip the LP checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SmlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
