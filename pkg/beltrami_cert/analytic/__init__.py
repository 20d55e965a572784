from beltrami_cert.analytic.fnstd import FnStd, fn_add, fn_eval_disk, fn_mul, orbit
from beltrami_cert.analytic.dynamics import (
    GoldenQuadratic,
    PeriodicPoint,
    inverse_branch,
    inverse_branch_chain,
    periodic_point,
)
from beltrami_cert.analytic.linearizers import KoenigsData, SiegelData, koenigs_data, siegel_data

__all__ = [
    "FnStd",
    "fn_add",
    "fn_eval_disk",
    "fn_mul",
    "orbit",
    "GoldenQuadratic",
    "PeriodicPoint",
    "inverse_branch",
    "inverse_branch_chain",
    "periodic_point",
    "KoenigsData",
    "SiegelData",
    "koenigs_data",
    "siegel_data",
]
