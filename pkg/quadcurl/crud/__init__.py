from quadcurl.crud.results import (
    EIGEN_HEADER,
    SERIES_HEADER,
    SOURCE_HEADER,
    ResultFileError,
    read_eigen_study,
    read_source_study,
    write_eigen_study,
    write_error_series,
    write_source_study,
)

__all__ = [
    "EIGEN_HEADER",
    "SERIES_HEADER",
    "SOURCE_HEADER",
    "ResultFileError",
    "read_eigen_study",
    "read_source_study",
    "write_eigen_study",
    "write_error_series",
    "write_source_study",
]
