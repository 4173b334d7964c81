"""Command-line front end.

Exit codes: 0 success, 1 when ``compare`` finds a difference (or
``paper-examples`` a mismatch), 2 on invalid input.
"""

import argparse
import json
import sys
from pathlib import Path

from . import showcase
from .axioms import SYSTEMS, check
from .complex import stratum_sanity_check, subject_to
from .deligne import build_deligne, constant_system
from .errors import ValidationError
from .infinity import to_json
from .io import (
    coefficients_from_json, complex_from_json, dumps, read_json, sigma_from_json,
    stratification_from_json,
)
from .linalg import parse_field
from .perversity import extend, parse_perversity
from .sheaf import constant_sheaf, dump, hypercohomology


class Job:
    """Parsed inputs shared by the subcommands."""

    def __init__(self, args, strat_path=None):
        self.args = args
        self.field = parse_field(args.field)
        desc = read_json(args.complex)
        self.complex = complex_from_json(desc)
        self.n = self.complex.dim
        src = read_json(strat_path) if strat_path else desc
        self.strat = stratification_from_json(self.complex, src)
        self.perversity = extend(parse_perversity(args.perversity, self.n), self.n,
                                 fill=getattr(args, "fill_perversity", False))
        self.coeffs = None
        if getattr(args, "coeffs", None):
            self.coeffs = coefficients_from_json(self.complex, self.strat.U(1),
                                                 read_json(args.coeffs), self.field)

    def deligne(self, strat=None):
        return build_deligne(strat or self.strat, self.perversity, self.coeffs, self.field,
                             reduce=self.args.reduce,
                             retain_stages=getattr(self.args, "retain_stages", False))

    def header(self):
        return {"field": self.field.name, "n": self.n,
                "perversity": [to_json(self.perversity(k)) for k in range(1, self.n + 1)],
                "reduce": self.args.reduce}


def _betti(b, n):
    return b.as_list(0, n)


def cmd_check(args):
    job = Job(args, args.strat)
    s = job.strat
    report = {"n": job.n, "simplices": len(job.complex),
              "count_by_dim": job.complex.count_by_dim(),
              "depth_profile": {str(k): v for k, v in s.depth_profile().items()},
              "sigma_size": len(s.sigma), "strata": stratum_sanity_check(s, job.field)}
    report["valid"] = True
    return report, 0


def cmd_ih(args):
    job = Job(args, args.strat)
    build = job.deligne()
    report = job.header()
    report["ih"] = _betti(hypercohomology(build.final), job.n)
    report["steps"] = build.steps
    if args.retain_stages:
        report["stages"] = {str(k): {"support": len(P.carrier),
                                     "sections": _betti(hypercohomology(P), job.n)}
                            for k, P in sorted(build.stages.items())}
    if args.dump_sheaf:
        Path(args.dump_sheaf).write_text(dumps(dump(build.final)))
    return report, 0


def cmd_compare(args):
    if len(args.strat) < 2:
        raise ValidationError("compare needs at least two --strat files")
    first = Job(args, args.strat[0])
    sigma = sigma_from_json(first.complex, read_json(args.sigma))
    jobs = [first] + [Job(args, path) for path in args.strat[1:]]
    for path, job in zip(args.strat, jobs):
        if not subject_to(job.strat, sigma):
            raise ValidationError(f"{path}: stratification is not subject to the given singular set")
    rows = []
    for path, job in zip(args.strat, jobs):
        rows.append({"strat": path, "ih": _betti(hypercohomology(job.deligne().final), job.n)})
    report = first.header()
    report["results"] = rows
    diff = None
    for row in rows[1:]:
        for j, (a, b) in enumerate(zip(rows[0]["ih"], row["ih"])):
            if a != b:
                diff = {"strat": row["strat"], "degree": j, "values": [a, b]}
                break
        if diff:
            break
    report["equal"] = diff is None
    report["first_difference"] = diff
    return report, 0 if diff is None else 1


def cmd_axioms(args):
    job = Job(args, args.strat)
    systems = args.systems or list(SYSTEMS)
    cands = [stratification_from_json(job.complex, read_json(p)) for p in args.candidates or []]
    G = job.coeffs or constant_system(job.complex, job.strat.U(1), 1, job.field)
    sheaves = [("deligne", job.deligne().final)]
    if args.against_constant:
        sheaves.append(("constant", constant_sheaf(job.complex, field=job.field)))
    report = job.header()
    report["reports"] = {}
    for label, S in sheaves:
        report["reports"][label] = [check(sys_, S, job.strat, job.perversity, G, cands or None).to_json()
                                    for sys_ in systems]
    return report, 0


def cmd_paper_examples(args):
    res = showcase.run(parse_field(args.field), reduce=args.reduce, include_slow=not args.quick)
    if not args.timings:
        for e in res["examples"]:
            e.pop("seconds", None)
    return res, 0 if res["all_match"] else 1


# ---------------------------------------------------------------- markdown

def _md_value(v):
    return "`" + json.dumps(v, sort_keys=True, default=to_json) + "`"


def to_markdown(command, report):
    lines = [f"# icsheaf {command}", ""]
    if command == "paper-examples":
        lines += ["| example | expected | computed | match |", "|---|---|---|---|"]
        for e in report["examples"]:
            mark = "yes" if e["match"] else "NO"
            lines.append(f"| {e['name']} | {_md_value(e['expected'])} | {_md_value(e['computed'])} | {mark} |")
        lines += ["", f"all match: {report['all_match']}"]
    elif command == "axioms":
        for label, reps in report["reports"].items():
            lines += [f"## {label}", "", "| system | clause | pass | witness |", "|---|---|---|---|"]
            for r in reps:
                for c in r["clauses"]:
                    lines.append(f"| {r['system']} | {c['id']} | {c['pass']} | {_md_value(c['witness'])} |")
            lines.append("")
    elif command == "compare":
        lines += ["| stratification | IH |", "|---|---|"]
        lines += [f"| {r['strat']} | {r['ih']} |" for r in report["results"]]
        lines += ["", f"equal: {report['equal']}"]
    else:
        for k, v in report.items():
            lines.append(f"- **{k}**: {_md_value(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser():
    parser = argparse.ArgumentParser(prog="icsheaf",
                                     description="Intersection cohomology of stratified simplicial complexes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
    common.add_argument("--reduce", action="store_true", help="trim stalk windows after each stage")
    common.add_argument("--output", choices=("json", "md"), default="json")

    def inputs(p, strat_many=False):
        p.add_argument("complex", help="complex JSON; may carry a 'depth' map")
        if strat_many:
            p.add_argument("--strat", action="append", required=True, help="stratification JSON (repeat)")
        else:
            p.add_argument("--strat", help="stratification JSON (default: depth map in the complex file)")
        p.add_argument("--perversity", default="ultra", help="zero, top, ultra or a JSON array from k=1")
        p.add_argument("--fill-perversity", action="store_true",
                       help="extend a perversity given from k=2 down to k=1")
        p.add_argument("--coeffs", help="local system JSON on X - Sigma")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="validate a complex and stratification")
    p.add_argument("complex")
    p.add_argument("--strat")
    p.set_defaults(func=cmd_check, perversity="zero", coeffs=None)

    p = sub.add_parser("ih", parents=[common], help="intersection cohomology Betti numbers")
    inputs(p)
    p.add_argument("--retain-stages", action="store_true", help="report every intermediate stage")
    p.add_argument("--dump-sheaf", metavar="PATH", help="write the final sheaf as JSON")
    p.set_defaults(func=cmd_ih)

    p = sub.add_parser("compare", parents=[common], help="IH across stratifications with one singular set")
    inputs(p, strat_many=True)
    p.add_argument("--sigma", required=True, help="JSON list of simplices closing to Sigma")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("axioms", parents=[common], help="run axiom checkers on the Deligne sheaf")
    inputs(p)
    p.add_argument("--systems", nargs="+", choices=SYSTEMS, metavar="SYSTEM",
                   help=f"subset of {', '.join(SYSTEMS)} (default all)")
    p.add_argument("--against-constant", action="store_true", help="also check the constant sheaf")
    p.add_argument("--candidates", nargs="+", help="candidate stratifications for AX2'' and AX3''")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("paper-examples", parents=[common], help="run the built-in worked examples")
    p.add_argument("--quick", action="store_true", help="skip the three-dimensional example")
    p.add_argument("--timings", action="store_true", help="include per-example timings")
    p.set_defaults(func=cmd_paper_examples)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except ValidationError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    out = to_markdown(args.command, report) if args.output == "md" else dumps(report)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
