"""Fast multi-valuation logarithm formulas built from Ramanujan-type series."""

from .binsplit import eval_log, eval_series, log_sequence
from .errors import (
    CalibrationError,
    ConvergenceError,
    DegenerateArgumentError,
    DomainError,
    FactorizationError,
    InsufficientRankError,
    LogforgeError,
    PrecisionExhaustedError,
    SearchBudgetError,
    SingularMatrixError,
)
from .multival import (
    MultiValuation,
    build_system,
    evaluate_all,
    machin_bits,
    machin_cost,
    single_log,
)
from .numerics import BigReal, ln, ln_basis, machine_eps
from .relation import find_relation, lll_reduce
from .search import (
    SearchConfig,
    SolutionMatrix,
    SolutionPool,
    brute_force,
    calibrate_trap,
    default_bounds,
    monte_carlo,
    select_full_rank,
)
from .series import (
    FlintSeries,
    SeriesParams,
    YCruncherSeries,
    atan_series,
    atanh_series,
    bs_cost,
    coeff_bitsize,
    convergence_rate,
    log_series_flint,
    log_series_params,
    split_exponents,
    to_ycruncher,
)

__version__ = "0.1.0"
