import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from quadcurl.config import settings
from quadcurl.crud import write_eigen_study, write_error_series, write_source_study
from quadcurl.domains import domain_registry, get_domain
from quadcurl.logger import get_logger, setup_logging
from quadcurl.schemas.basis import SpectralOrder
from quadcurl.services.assembly import assemble
from quadcurl.services.base import QuadCurlError, SolverError
from quadcurl.services.exact import manufactured_solution
from quadcurl.services.harness import (
    convergence_study,
    eigen_levels_study,
    eigen_study,
    error_norms,
    p_convergence_study,
)
from quadcurl.services.meshing import build_dof_map, mesh_size, read_mesh
from quadcurl.services.solvers import solve_saddle

logger = get_logger("main")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3


def cells_from_h(text: str) -> int:
    """'1/10' or '0.1' -> 10 cells per unit length."""
    try:
        h = Fraction(text).limit_denominator(10**6)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"invalid mesh size '{text}'") from e
    if h <= 0 or (1 / h).denominator != 1:
        raise argparse.ArgumentTypeError(f"h must be 1/n for a positive integer n, got '{text}'")
    return int(1 / h)


def spectral_order(text: str) -> SpectralOrder:
    try:
        return SpectralOrder.parse(text)
    except (QuadCurlError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="CSV output path")
    parser.add_argument(
        "--low-modes",
        choices=["phi", "tilde"],
        default=None,
        help="Low-order function-edge family for orders below 3",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Overrides QUADCURL_LOG_LEVEL",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcurl",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        description="Spectral element solver for the quad-curl problem and eigenproblem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve the manufactured source problem once")
    solve.add_argument("--domain", choices=["square"], default="square")
    solve.add_argument("--mesh", choices=domain_registry.mesh_kinds(), default="uniform")
    solve.add_argument("--mesh-file", default=None, help="Read a quadmesh v1 file instead")
    solve.add_argument("--h", type=cells_from_h, default=10, help="Mesh size 1/n")
    solve.add_argument("--order", type=spectral_order, required=True, help="L,M,N")
    solve.add_argument("--seed", type=int, default=None, help="Perturbation seed")
    solve.add_argument("--quad", type=int, default=None, help="Error quadrature points")
    _add_common(solve)

    eigen = sub.add_parser("eigen", help="Smallest eigenvalues on a uniform mesh")
    eigen.add_argument("--domain", choices=domain_registry.names(), default="square")
    eigen.add_argument("--h", type=cells_from_h, required=True, help="Mesh size 1/n")
    eigen.add_argument("--order", type=spectral_order, required=True, help="N or L,M,N")
    eigen.add_argument("--num", type=int, default=5, help="Number of eigenvalues")
    eigen.add_argument("--shift", type=float, default=None, help="Shift-invert target")
    _add_common(eigen)

    study = sub.add_parser("study", help="h-, p- or eigenvalue convergence study")
    study.add_argument("--kind", choices=["source", "eigen", "pconv"], required=True)
    study.add_argument("--domain", choices=domain_registry.names(), default="square")
    study.add_argument("--mesh", choices=domain_registry.mesh_kinds(), default="uniform")
    study.add_argument("--levels", type=int, required=True)
    study.add_argument("--order", type=spectral_order, required=True, help="L,M,N (pconv: first N)")
    study.add_argument("--seed", type=int, default=None)
    study.add_argument("--n0", type=int, default=None, help="Cells per unit length on the coarsest level")
    study.add_argument("--num", type=int, default=5, help="Eigenvalues per level")
    study.add_argument("--shift", type=float, default=None)
    study.add_argument("--series", default=None, help="Also write sqrt(DOFs)-error pairs here")
    _add_common(study)
    return parser


def run_solve(args: argparse.Namespace) -> None:
    exact = manufactured_solution()
    if args.mesh_file:
        mesh = read_mesh(args.mesh_file)
        h = mesh_size(mesh)
    else:
        mesh = get_domain(args.domain).build(args.h, args.mesh, args.seed)
        h = 1.0 / args.h
    dofmap = build_dof_map(mesh, args.order, low_modes=args.low_modes)
    system = assemble(mesh, dofmap, args.order, f=exact.f)
    solution = solve_saddle(system)
    report = error_norms(mesh, dofmap, args.order, solution.u_coeffs, exact, q=args.quad, h=h)
    path = write_source_study(path=args.out, reports=[report])
    logger.info(f"Wrote {path}")


def run_eigen(args: argparse.Namespace) -> None:
    rows = eigen_study(
        args.domain, args.h, args.order, args.num, shift=args.shift, low_modes=args.low_modes
    )
    path = write_eigen_study(path=args.out, rows=rows)
    logger.info(f"Wrote {path}")


def run_study(args: argparse.Namespace) -> None:
    if args.levels < 1:
        raise ValueError(f"--levels must be positive, got {args.levels}")
    if args.kind == "eigen":
        rows = eigen_levels_study(
            args.domain,
            args.levels,
            args.order,
            args.num,
            n0=args.n0,
            shift=args.shift,
            low_modes=args.low_modes,
        )
        path = write_eigen_study(path=args.out, rows=rows)
        logger.info(f"Wrote {path}")
        return

    if args.kind == "source":
        reports = convergence_study(
            args.domain,
            args.mesh,
            args.levels,
            args.order,
            seed=args.seed,
            n0=args.n0 or 10,
            low_modes=args.low_modes,
        )
    else:
        first = args.order.N
        reports = p_convergence_study(
            args.domain,
            args.mesh,
            args.n0 or 4,
            range(first, first + args.levels),
            seed=args.seed,
            low_modes=args.low_modes,
        )
    path = write_source_study(path=args.out, reports=reports)
    logger.info(f"Wrote {path}")
    if args.series:
        write_error_series(path=args.series, reports=reports)
        logger.info(f"Wrote {args.series}")


COMMANDS = {"solve": run_solve, "eigen": run_eigen, "study": run_study}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_FORMAT, settings.LOG_FILE)

    try:
        COMMANDS[args.command](args)
    except SolverError as e:
        logger.error(f"Solver failure: {e}")
        return EXIT_SOLVER
    except (QuadCurlError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
