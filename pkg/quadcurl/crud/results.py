import csv
import math
from pathlib import Path
from typing import Iterable, List, Optional

from quadcurl.schemas.solution import EigenRow, ErrorReport
from quadcurl.services.base import ResultFileError

SOURCE_HEADER = [
    "h",
    "dofs",
    "l2_err",
    "l2_order",
    "hcurl_err",
    "hcurl_order",
    "hcurl2_err",
    "hcurl2_order",
]
EIGEN_HEADER = ["h", "index", "lambda", "cluster_id"]
SERIES_HEADER = ["sqrt_dofs", "l2_err", "hcurl_err", "hcurl2_err"]


def _num(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.17g}"


def _opt(text: str) -> Optional[float]:
    return float(text) if text else None


def _write(path: str | Path, header: List[str], rows: Iterable[List[str]]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise ResultFileError(f"cannot write {path}: {e}") from e
    return path


def _read(path: str | Path, header: List[str]) -> List[dict]:
    try:
        with Path(path).open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != header:
                raise ResultFileError(f"{path}: expected columns {header}, got {reader.fieldnames}")
            return list(reader)
    except OSError as e:
        raise ResultFileError(f"cannot read {path}: {e}") from e


def write_source_study(*, path: str | Path, reports: List[ErrorReport]) -> Path:
    rows = (
        [
            _num(r.h),
            str(r.dofs),
            _num(r.l2),
            _num(r.order_l2),
            _num(r.hcurl_semi),
            _num(r.order_hcurl),
            _num(r.hcurl2_semi),
            _num(r.order_hcurl2),
        ]
        for r in reports
    )
    return _write(path, SOURCE_HEADER, rows)


def read_source_study(*, path: str | Path) -> List[ErrorReport]:
    return [
        ErrorReport(
            h=float(row["h"]),
            dofs=int(row["dofs"]),
            l2=float(row["l2_err"]),
            order_l2=_opt(row["l2_order"]),
            hcurl_semi=float(row["hcurl_err"]),
            order_hcurl=_opt(row["hcurl_order"]),
            hcurl2_semi=float(row["hcurl2_err"]),
            order_hcurl2=_opt(row["hcurl2_order"]),
        )
        for row in _read(path, SOURCE_HEADER)
    ]


def write_eigen_study(*, path: str | Path, rows: List[EigenRow]) -> Path:
    return _write(
        path,
        EIGEN_HEADER,
        ([_num(r.h), str(r.index), _num(r.value), str(r.cluster_id)] for r in rows),
    )


def read_eigen_study(*, path: str | Path) -> List[EigenRow]:
    return [
        EigenRow(
            h=float(row["h"]),
            index=int(row["index"]),
            value=float(row["lambda"]),
            cluster_id=int(row["cluster_id"]),
        )
        for row in _read(path, EIGEN_HEADER)
    ]


def write_error_series(*, path: str | Path, reports: List[ErrorReport]) -> Path:
    """(sqrt(DOFs), error) pairs for semi-log convergence plots."""
    return _write(
        path,
        SERIES_HEADER,
        (
            [_num(math.sqrt(r.dofs)), _num(r.l2), _num(r.hcurl_semi), _num(r.hcurl2_semi)]
            for r in reports
        ),
    )
