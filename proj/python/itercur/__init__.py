"""Rank-adaptive CUR decomposition with a recycled residual sketch."""

from ._itercur import (
    CurFactors,
    MatrixHandle,
    RunTrace,
    __version__,
    adjusted_threshold,
    exp_decay,
    gratton_tail,
    iterative_cur,
    lehmer,
    low_rank,
    low_rank_pd,
    rangefinder_error,
    read_matrix_market,
    singular_values,
    slupp_cur,
    true_relative_error,
    truncated_svd_error,
    write_matrix_market,
)

__all__ = [
    "CurFactors",
    "MatrixHandle",
    "RunTrace",
    "__version__",
    "adjusted_threshold",
    "exp_decay",
    "gratton_tail",
    "iterative_cur",
    "lehmer",
    "low_rank",
    "low_rank_pd",
    "rangefinder_error",
    "read_matrix_market",
    "singular_values",
    "slupp_cur",
    "true_relative_error",
    "truncated_svd_error",
    "write_matrix_market",
]
