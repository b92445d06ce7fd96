"""Command line interface.

Exit codes: 0 success, 1 input or numerical error, 2 separation violated,
3 residual check failed.
"""
import argparse
import json
import logging
import sys
from dataclasses import asdict

from . import io
from .algebra import residual_norms
from .exceptions import SeparationViolated, SpectraOverlap, SylvesterError
from .gelfand import SolverConfig, certify_separation, solve
from .roth import block_diagonalize, roth_decide

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEPARATION = 2
EXIT_RESIDUAL = 3

CROSSCHECK_TOL = 1e-8

log = logging.getLogger("banach_sylvester")


def _add_solver_flags(p, with_bandwidth=True):
    p.add_argument("--grid", type=int, default=None, help="number of grid points N")
    if with_bandwidth:
        p.add_argument("--bandwidth", type=int, default=None,
                       help="bandwidth W of the reconstructed solution")
    p.add_argument("--refine", type=int, default=0, help="grid refinement levels")
    p.add_argument("--gap-tol", type=float, default=None,
                   help="absolute eigenvalue-gap threshold (default: relative)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="banach-sylvester",
        description="Sylvester equations AX - XB = C over commutative Banach algebras.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-separation", help="certify pointwise spectral separation")
    p.add_argument("problem")
    _add_solver_flags(p, with_bandwidth=False)
    p.add_argument("--csv", default=None, help="write the gap locus as CSV")

    p = sub.add_parser("solve", help="solve AX - XB = C")
    p.add_argument("problem")
    _add_solver_flags(p)
    p.add_argument("--out", default=None, help="result file (default: stdout)")
    p.add_argument("--crosscheck-kron", action="store_true",
                   help="compare 3 random grid points against the Kronecker solver")
    p.add_argument("--max-residual", type=float, default=1e-6)

    p = sub.add_parser("roth", help="block-diagonalize by Roth's removal rule")
    p.add_argument("problem")
    _add_solver_flags(p)
    p.add_argument("--out", default=None, help="certificate file (default: stdout)")
    p.add_argument("--max-residual", type=float, default=1e-6)

    p = sub.add_parser("verify", help="re-check a solution against its problem")
    p.add_argument("problem")
    p.add_argument("solution")
    p.add_argument("--max-residual", type=float, default=1e-6)
    return parser


def _config(args, crosscheck=False):
    return SolverConfig(
        grid_size=args.grid,
        bandwidth=getattr(args, "bandwidth", None),
        refine_levels=args.refine,
        gap_tol=args.gap_tol,
        crosscheck_kron=crosscheck,
    )


def _require(problem, *names):
    missing = [n for n in names if getattr(problem, n) is None]
    if missing:
        raise ValueError(f"problem file lacks matrices {', '.join(missing)}")


def _emit(obj, out):
    if out is None:
        sys.stdout.write(io.dumps(obj))
    else:
        io.write_json(out, obj)


def cmd_check_separation(args):
    problem = io.load_problem(args.problem)
    _require(problem, "A", "B")
    grid = args.grid
    report = certify_separation(problem.A, problem.B, args.refine, grid_size=grid,
                                gap_tol=args.gap_tol)
    if args.csv:
        report.write_csv(args.csv)
    print(f"grid_size: {report.grid_size}")
    print(f"points_checked: {len(report.points)}")
    print(f"global_min_gap: {report.global_min_gap!r}")
    if report.separated:
        print("separated: yes")
        return EXIT_OK
    print("separated: no")
    print(f"violating_points: {list(report.violating_points)}")
    refined = [(p.level, p.phi_index) for p in report.violations if p.level > 0]
    if refined:
        print(f"refined_violations (level, phi_index): {refined}")
    return EXIT_SEPARATION


def cmd_solve(args):
    problem = io.load_problem(args.problem)
    _require(problem, "A", "B", "C")
    config = _config(args, crosscheck=args.crosscheck_kron)
    sol = solve(problem.A, problem.B, problem.C, config)
    _emit(io.solution_to_json(sol, asdict(config)), args.out)
    print(f"residual_sup: {sol.residual_sup!r}  residual_wiener: {sol.residual_wiener!r}  "
          f"tail_mass: {sol.tail_mass!r}", file=sys.stderr)
    if sol.crosscheck_error is not None and sol.crosscheck_error > CROSSCHECK_TOL:
        print(f"Kronecker cross-check disagrees by {sol.crosscheck_error:.3e}", file=sys.stderr)
        return EXIT_RESIDUAL
    if sol.residual_sup > args.max_residual:
        print(f"residual {sol.residual_sup:.3e} exceeds {args.max_residual:.3e}",
              file=sys.stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_roth(args):
    problem = io.load_problem(args.problem)
    config = _config(args)
    if problem.blocks is not None:
        result = block_diagonalize(problem.blocks, config)
        cert, dims = result.cert, problem.blocks.dims
    else:
        _require(problem, "A", "B", "C")
        cert = roth_decide(problem.A, problem.B, problem.C, config)
        dims = (problem.A.rows, problem.B.rows)
    _emit(io.certificate_to_json(cert, asdict(config), dims), args.out)
    print(f"residual: {cert.residual!r}  inverse_residual: {cert.inverse_residual!r}",
          file=sys.stderr)
    if not cert.valid or max(cert.residual, cert.inverse_residual) > args.max_residual:
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_verify(args):
    problem = io.load_problem(args.problem)
    _require(problem, "A", "B", "C")
    x = io.solution_x_from_json(io.read_json(args.solution))
    res_w, res_sup = residual_norms(problem.A, problem.B, problem.C, x)
    print(f"residual_wiener: {res_w!r}")
    print(f"residual_sup: {res_sup!r}")
    if res_sup > args.max_residual:
        print(f"residual {res_sup:.3e} exceeds {args.max_residual:.3e}", file=sys.stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


COMMANDS = {
    "check-separation": cmd_check_separation,
    "solve": cmd_solve,
    "roth": cmd_roth,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except SeparationViolated as exc:
        print(f"separation violated: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(f"violating_points: {list(exc.report.violating_points)}", file=sys.stderr)
        return EXIT_SEPARATION
    except SpectraOverlap as exc:
        print(f"spectra overlap: {exc}", file=sys.stderr)
        return EXIT_SEPARATION
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError,
            SylvesterError) as exc:
        log.debug("input error", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
