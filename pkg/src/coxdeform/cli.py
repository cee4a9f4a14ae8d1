"""Command-line front end.

Commands: ``check`` (validity, counts, weak orderability, Andreev report),
``realize`` (hyperbolic realization), ``dim`` (full pipeline to the local
deformation dimension), ``cartan`` (matrix conditions, components, normal
form), ``curve esselmann`` (determinant zero-set sampling), and ``stats``
(weak-orderability statistics).  Exit status: 0 success, 1 validation
failure, 2 numerical failure (divergence or an uncertain rank decision
without --force).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from coxdeform import bundled, cartan, lorentz, matchstats, orbifold, polytope, serialize, vinberg
from coxdeform.numerics import RankPolicy

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

VALIDATION_ERRORS = (serialize.SchemaError, polytope.CombinatoricsError,
                     orbifold.OrbifoldError, cartan.CartanError,
                     matchstats.GraphConditionError, vinberg.VinbergError,
                     KeyError, FileNotFoundError, json.JSONDecodeError)
NUMERICAL_ERRORS = (lorentz.ConvergenceError, lorentz.RealizationError)


class NumericalFailure(RuntimeError):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10,
                        help="residual tolerance for solvers (default 1e-10)")
    common.add_argument("--rank-tol", type=float, default=1e-12,
                        help="relative singular-value threshold (default 1e-12)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--force", action="store_true",
                        help="downgrade uncertain rank decisions to warnings")

    ap = argparse.ArgumentParser(prog="coxdeform", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="validate an orbifold and report its invariants")
    p.add_argument("orbifold", help="path to an orbifold JSON or a builtin name")

    p = sub.add_parser("realize", parents=[common],
                       help="compute a hyperbolic realization")
    p.add_argument("orbifold")
    p.add_argument("--seed-name", default=None,
                   help="initial-guess family: simplex, prism, cube, "
                        "doubled_cube, loebell, random")

    p = sub.add_parser("dim", parents=[common],
                       help="realize and measure the local deformation dimension")
    p.add_argument("orbifold")
    p.add_argument("--seed-name", default=None)

    p = sub.add_parser("cartan", parents=[common], help="analyze a Cartan matrix")
    p.add_argument("matrix", help="path to a matrix JSON")
    p.add_argument("--n", type=int, default=None,
                   help="ambient dimension for classification (default: rank - 1)")

    p = sub.add_parser("curve", parents=[common],
                       help="sample a parametrized family's determinant zero set")
    p.add_argument("family", choices=("esselmann",))
    p.add_argument("--box", type=float, nargs=4, default=(0.5, 2.0, 0.5, 2.0),
                   metavar=("X0", "X1", "Y0", "Y1"))
    p.add_argument("--res", type=int, default=101)

    p = sub.add_parser("stats", parents=[common],
                       help="weak-orderability statistics over order assignments")
    p.add_argument("polytope", help="path to a polytope JSON or a builtin name")
    p.add_argument("--d", type=int, required=True, help="order bound")
    p.add_argument("--mode", choices=("exact", "montecarlo"), default="montecarlo")
    p.add_argument("--samples", type=int, default=10000)
    return ap


def load_orbifold_arg(value):
    if value in bundled.BUILTIN_NAMES:
        return bundled.load_builtin(value), value
    with open(value, encoding="utf-8") as fh:
        doc = json.load(fh)
    return serialize.load_orbifold(doc), os.path.basename(value)


def load_polytope_arg(value):
    m = re.fullmatch(r"prism(\d+)", value)
    if m:
        return polytope.prism(int(m.group(1))), value
    m = re.fullmatch(r"loebell(\d+)", value)
    if m:
        return polytope.loebell(int(m.group(1))), value
    if value in polytope.BUILTIN_POLYTOPES:
        return polytope.BUILTIN_POLYTOPES[value](), value
    if value in bundled.BUILTIN_NAMES:
        return bundled.load_builtin(value).base, value
    with open(value, encoding="utf-8") as fh:
        doc = json.load(fh)
    return serialize.load_polytope(doc), os.path.basename(value)


def config_echo(args):
    return {"tol": args.tol, "rank_tol": args.rank_tol, "seed": args.seed,
            "force": args.force}


def cmd_check(args):
    Q, name = load_orbifold_arg(args.orbifold)
    counts = orbifold.counts(Q)
    wo = orbifold.weak_order_combinatorial(Q)
    report = {
        "command": "check",
        "input": name,
        "config": config_echo(args),
        "valid": True,
        "counts": counts,
        "delta": counts.delta,
        "weakly_orderable": bool(wo),
    }
    if wo:
        report["ordering"] = list(wo.order)
        report["qualifying_sets"] = wo.qualifying
    else:
        report["certificate"] = sorted(wo.certificate)
    witness = polytope.is_truncation_polytope(Q.base)
    report["truncation_polytope"] = {"is_truncation": witness.is_truncation,
                                     "history": witness.history,
                                     "method": witness.method}
    if Q.n == 3:
        report["andreev"] = orbifold.andreev_necessary_check(Q)
    return report, EXIT_OK


def _realize(Q, args):
    if Q.f == Q.n + 1:
        return lorentz.realize_simplex(Q), "direct"
    G = lorentz.gram_matrix(Q)
    if not np.isnan(G).any():
        return lorentz.realize_gram(Q), "direct-gram"
    seed_name = getattr(args, "seed_name", None)
    if seed_name == "random":
        rng = np.random.default_rng(args.seed)
        initial = rng.normal(size=(Q.f, Q.n + 1))
    else:
        initial = lorentz.initial_guess(Q, seed_name)
    R = lorentz.solve_hyperbolic_newton(Q, initial, tol=args.tol)
    return R, "newton"


def cmd_realize(args):
    Q, name = load_orbifold_arg(args.orbifold)
    R, method = _realize(Q, args)
    report = {"command": "realize", "input": name, "config": config_echo(args),
              "method": method, "realization": serialize.dump_realization(R)}
    return report, EXIT_OK


def cmd_dim(args):
    Q, name = load_orbifold_arg(args.orbifold)
    policy = RankPolicy(rel_tol=args.rank_tol)
    R, method = _realize(Q, args)
    p = vinberg.hyperbolic_point(R)
    dim_report = vinberg.local_deformation_dimension(Q, p, policy)
    rank_sum = vinberg.check_rank_sum(Q, p, policy)
    ker_psi = lorentz.kernel_dimension(Q, R.normals, policy)
    membership = vinberg.check_U_membership(Q, p)
    report = {
        "command": "dim",
        "input": name,
        "config": config_echo(args),
        "method": method,
        "residual_norm": R.residual_norm,
        "counts": orbifold.counts(Q),
        "rank_phi": dim_report,
        "rank_psi": {"rank": rank_sum.rank_psi.rank,
                     "kernel_dim": ker_psi,
                     "uncertain": rank_sum.rank_psi.uncertain},
        "rank_sum": {"identity_holds": rank_sum.identity_holds,
                     "e2": rank_sum.e2,
                     "weakly_orderable": rank_sum.weakly_orderable,
                     "staircase_rank": rank_sum.staircase_rank},
        "dimension": dim_report.deformation_dim,
        "formula_dimension": dim_report.formula_dim,
        "domain_membership": membership.passed,
    }
    uncertain = dim_report.uncertain or rank_sum.rank_psi.uncertain
    if uncertain and not args.force:
        raise NumericalFailure("rank decision uncertain (re-run with --force to accept)")
    report["rank_uncertain"] = uncertain
    return report, EXIT_OK


def cmd_cartan(args):
    with open(args.matrix, encoding="utf-8") as fh:
        doc = json.load(fh)
    A = serialize.load_cartan(doc)
    policy = RankPolicy(rel_tol=args.rank_tol)
    from coxdeform.numerics import numerical_rank

    rank = numerical_rank(A.entries, policy)
    n = args.n if args.n is not None else rank.rank - 1
    conditions = cartan.check_vinberg_conditions(A)
    components = cartan.decompose_components(A)
    report = {
        "command": "cartan",
        "input": os.path.basename(args.matrix),
        "config": config_echo(args),
        "size": A.f,
        "rank": rank.rank,
        "n": n,
        "conditions_passed": conditions.passed,
        "conditions": conditions,
        "components": components,
        "classification": cartan.classify_group(A, n, policy),
    }
    if len(components) == 1:
        nf = cartan.diagonal_normalize(A)
        report["normal_form"] = {"matrix": nf.matrix.entries,
                                 "cycle_coordinates": nf.cycle_coordinates,
                                 "tree": [list(t) for t in nf.tree]}
    return report, EXIT_OK


def cmd_curve(args):
    family = vinberg.esselmann_family()
    samples = vinberg.family_curve(family, box=tuple(args.box), res=args.res)
    lines = ["x,y,det"]
    for r, y in enumerate(samples.ys):
        for c, x in enumerate(samples.xs):
            lines.append(f"{x:.12g},{y:.12g},{samples.values[r, c]:.12g}")
    csv_text = "\n".join(lines) + "\n"
    contour = serialize.dumps({
        "command": "curve",
        "family": args.family,
        "config": config_echo(args),
        "box": list(args.box),
        "res": args.res,
        "segments": [[list(a), list(b)] for a, b in samples.segments],
    })
    if args.out:
        base = args.out[:-4] if args.out.endswith(".csv") else args.out
        with open(base + ".csv", "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        with open(base + ".json", "w", encoding="utf-8") as fh:
            fh.write(contour)
        return None, EXIT_OK
    sys.stdout.write(csv_text)
    return None, EXIT_OK


def cmd_stats(args):
    P, name = load_polytope_arg(args.polytope)
    report = matchstats.estimate_wo_fraction(
        P, args.d, mode=args.mode, samples=args.samples, seed=args.seed, name=name)
    if args.format == "csv":
        text = "d,fraction,ci_low,ci_high\n" + \
            f"{report.d},{report.fraction:.12g},{report.ci_low:.12g},{report.ci_high:.12g}\n"
        _write_text(args, text)
        return None, EXIT_OK
    out = {"command": "stats", "input": name, "config": config_echo(args),
           "report": report}
    return out, EXIT_OK


def _write_text(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COMMANDS = {"check": cmd_check, "realize": cmd_realize, "dim": cmd_dim,
            "cartan": cmd_cartan, "curve": cmd_curve, "stats": cmd_stats}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report, status = COMMANDS[args.command](args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except VALIDATION_ERRORS as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if report is not None:
        _write_text(args, serialize.dumps(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
