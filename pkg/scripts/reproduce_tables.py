"""Run the convergence and eigenvalue studies and write their CSVs.

Usage: python scripts/reproduce_tables.py [results_dir]
"""

import sys
from pathlib import Path

from quadcurl.config import settings
from quadcurl.crud import write_eigen_study, write_error_series, write_source_study
from quadcurl.domains import get_domain
from quadcurl.logger import setup_logging
from quadcurl.schemas.basis import SpectralOrder
from quadcurl.services.harness import (
    convergence_study,
    eigen_levels_study,
    p_convergence_study,
    richardson_extrapolate,
)

SOURCE_ORDERS = ["1,1,1", "2,2,2", "3,3,3", "3,4,3", "3,3,4"]


def main(out_dir: Path) -> None:
    setup_logging(settings.LOG_LEVEL, settings.LOG_FORMAT, settings.LOG_FILE)

    for text in SOURCE_ORDERS:
        order = SpectralOrder.parse(text)
        tag = text.replace(",", "")
        for kind in get_domain("square").mesh_kinds:
            reports = convergence_study("square", kind, 3, order)
            write_source_study(path=out_dir / f"source_{kind}_{tag}.csv", reports=reports)
            write_error_series(path=out_dir / f"series_{kind}_{tag}.csv", reports=reports)

    reports = p_convergence_study("square", "uniform", 4, range(3, 9))
    write_source_study(path=out_dir / "pconv_square.csv", reports=reports)

    for N in (1, 2, 3, 4):
        rows = eigen_levels_study("square", 3, SpectralOrder(L=N, M=N, N=N), 5, n0=5)
        write_eigen_study(path=out_dir / f"eigen_square_{N}.csv", rows=rows)
        first = [row.value for row in rows if row.index == 1]
        print(f"square N={N}: lambda_1 extrapolates to {richardson_extrapolate(first):.6f}")

    rows = eigen_levels_study("lshape", 3, SpectralOrder.parse("4"), 3, n0=4)
    write_eigen_study(path=out_dir / "eigen_lshape_4.csv", rows=rows)
    print(f"Results written to {out_dir}")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "results"))
