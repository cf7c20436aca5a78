"""Command-line interface.

Exit status: 0 success/PASS, 1 usage or parse error, 2 verification FAIL,
3 infeasible parameters.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import CosetCodeError, InfeasibleParametersError, OracleGapError, ParseError

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INFEASIBLE = 0, 1, 2, 3
FAMILIES = ("8-4-4", "9-6-4", "3k-3", "10-6-4")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(items: dict[str, object]) -> None:
    from .io import format_report

    sys.stdout.write(format_report(items))


def _default_out(family: str, q: int, k: int | None) -> str:
    tag = family if family != "3k-3" else f"3k-3-k{k}"
    return f"{tag}-q{q}.code"


def cmd_construct(args) -> int:
    from . import constructions as C
    from .io import format_blueprint, format_report, write_code
    from .verify import certify

    fam = args.family
    if fam == "8-4-4":
        built = C.build_8_4_4(args.q)
    elif fam == "9-6-4":
        built = C.build_9_6_4(args.q)
    elif fam == "3k-3":
        if args.k is None:
            raise _Usage("--family 3k-3 needs --k")
        built = C.build_family_3km3(args.k, args.q)
    else:
        built = C.build_10_6_4(args.q, external_b=args.b_code, extend=not args.no_extend)
    out = Path(args.out or _default_out(fam, args.q, args.k))
    prov = built.provenance()
    write_code(built.code, out, [f"{k}={v}" for k, v in prov.items()])
    Path(f"{out}.provenance").write_text(format_report(prov))
    if built.blueprint is not None:
        Path(f"{out}.blueprint").write_text(format_blueprint(built.blueprint))
    report: dict[str, object] = {"family": fam, "q": args.q, "size": built.size, "out": str(out)}
    for key in ("coset.lambda", "coset.l", "coset.fbar", "extension.success", "extension.scanned", "b.source"):
        if key in prov:
            report[key] = prov[key]
    status = EXIT_OK
    if args.certify:
        if args.sample:
            sc = C.structural_certificate(built, samples=args.sample, seed=args.seed)
            report.update({
                "certify.mode": "structural+sampled",
                "certify.verdict": "PASS" if sc.passed else "FAIL",
                "certify.cross_pairs": sc.cross_pairs,
                "certify.sampled_pairs": sc.sampled_pairs,
                "certify.sampled_min": sc.sampled_min,
            })
            if sc.violations:
                report["certify.reasons"] = "; ".join(sc.violations)
            ok = sc.passed
        else:
            rep = certify(built.code, built.d, built.size)
            report.update({f"certify.{k}": v for k, v in rep.as_dict().items() if k in
                           ("verdict", "min_distance", "pairs_checked", "mode", "reasons")})
            ok = rep.passed
        status = EXIT_OK if ok else EXIT_FAIL
    _emit(report)
    return status


def cmd_verify(args) -> int:
    from .verify import certify

    rep = certify(args.file, args.distance, args.cardinality, sample=args.sample, seed=args.seed)
    _emit(rep.as_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bound(args) -> int:
    from .constructions import mrd_bound
    from .packing import AqOracle

    aq = AqOracle.from_file(args.aq_table) if args.aq_table else AqOracle.default()
    val = mrd_bound(args.q, args.n, args.k, args.d, aq)
    _emit({"bound": "mrd", "q": args.q, "n": args.n, "k": args.k, "d": args.d, "value": val})
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .errors import BudgetExceededError
    from .io import format_packing, read_code
    from .packing import greedy_decompose, ilp_decompose

    code = read_code(args.file)
    report: dict[str, object] = {"ground": len(code), "d": args.d, "d_ground": args.dprime}
    status = EXIT_OK
    if args.exact:
        if args.l is None:
            raise _Usage("--exact needs --l")
        try:
            res = ilp_decompose(code, args.d, args.dprime, args.l, args.kappa, node_budget=args.node_budget)
        except BudgetExceededError as exc:
            res = exc.incumbent
            report["budget_exhausted"] = "yes"
            status = EXIT_FAIL
        packing = res.packing
        report.update({"method": "exact", "l": args.l, "kappa": res.kappa, "objective": res.objective,
                       "bound": res.bound, "optimal": "yes" if res.optimal else "no",
                       "census": ",".join(map(str, res.census))})
    else:
        packing = greedy_decompose(code, args.d, args.dprime)
        report.update({"method": "greedy", "l": packing.l, "covered": packing.covered,
                       "modes": ",".join(sorted(set(packing.modes)))})
    report["part_sizes"] = ",".join(map(str, sorted(packing.sizes)))
    if args.out:
        Path(args.out).write_text(format_packing(packing))
        report["out"] = args.out
    _emit(report)
    return status


def cmd_lambda(args) -> int:
    from .packing import LambdaProgram, lambda_ilp_solve

    sol = lambda_ilp_solve(LambdaProgram(args.alpha, args.beta, args.abar, args.bbar, args.l))
    _emit({"case": sol.case, "a": ",".join(map(str, sol.a)), "b": ",".join(map(str, sol.b)), "objective": sol.objective})
    return EXIT_OK


def cmd_parallelism(args) -> int:
    from .io import format_packing
    from .packing import parallelism_g42
    from .verify import validate_packing

    packing = parallelism_g42(args.q)
    rep = validate_packing(packing)
    if args.out:
        Path(args.out).write_text(format_packing(packing))
    out = rep.as_dict()
    if args.out:
        out["out"] = args.out
    _emit(out)
    return EXIT_OK if rep.verdict == "PASS" else EXIT_FAIL


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cosetcodes", description="Constant-dimension subspace codes from coset constructions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a named code family")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--k", type=int, help="k for the 3k-3 family")
    c.add_argument("--b-code", help="external (6,M,4;3)_2 code file for the 10-6-4 family")
    c.add_argument("--no-extend", action="store_true", help="skip the 10-6-4 extension pass")
    c.add_argument("--out", help="output code file (default: <family>-q<q>.code)")
    c.add_argument("--certify", action="store_true", help="certify the result (exhaustive unless --sample)")
    c.add_argument("--sample", type=int, help="structural certificate plus this many random pairs")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify a code file")
    v.add_argument("file")
    v.add_argument("--distance", type=int, required=True)
    v.add_argument("--cardinality", type=int)
    v.add_argument("--sample", type=int, help="check this many random pairs instead of all")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="evaluate an upper bound")
    bsub = b.add_subparsers(dest="bound", required=True, parser_class=_Parser)
    m = bsub.add_parser("mrd", help="bound for codes containing a lifted MRD code")
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--aq-table", help="A_q(n,d;k) table file 'q n d k value source'")
    m.set_defaults(func=cmd_bound)

    dcp = sub.add_parser("decompose", help="split a code into disjoint parts of larger distance")
    dcp.add_argument("file")
    dcp.add_argument("--d", type=int, required=True, help="minimum distance inside each part")
    dcp.add_argument("--dprime", type=int, required=True, help="minimum distance of the ground code")
    dcp.add_argument("--exact", action="store_true", help="exact decomposition into exactly --l parts")
    dcp.add_argument("--l", type=int)
    dcp.add_argument("--kappa", type=int)
    dcp.add_argument("--node-budget", type=int, default=20_000_000)
    dcp.add_argument("--out", help="write a packing manifest")
    dcp.set_defaults(func=cmd_decompose)

    lam = sub.add_parser("lambda", help="the Lambda program")
    lsub = lam.add_subparsers(dest="lambda_cmd", required=True, parser_class=_Parser)
    s = lsub.add_parser("solve", help="closed-form optimum")
    for name in ("alpha", "beta", "abar", "bbar", "l"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.set_defaults(func=cmd_lambda)

    par = sub.add_parser("parallelism", help="a parallelism of G_q(4, 2)")
    par.add_argument("--q", type=int, required=True)
    par.add_argument("--out")
    par.set_defaults(func=cmd_parallelism)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"cosetcodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleParametersError, OracleGapError) as exc:
        print(f"cosetcodes: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ParseError, OSError) as exc:
        print(f"cosetcodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CosetCodeError as exc:
        print(f"cosetcodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
