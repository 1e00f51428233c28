"""almsq: almost-square detection, interval coverage scans, and empirical
bound checks for the window counting apparatus."""

__version__ = "0.1.0"

from .core import (
    AlmostSquareParams,
    AnalyticConfig,
    IntervalSpec,
    PrecisionError,
    ScaleError,
    Window,
    choose_parameters,
    in_window,
    interval_length,
    window_of,
)
from .detector import (
    CorollaryWitness,
    Witness,
    certify,
    corollary_certify,
    enumerate_oracle,
    enumerate_range,
)
from .scanner import (
    CoverageReport,
    ScanConfig,
    coverage_scan,
    exceptional_trend,
    gap_stats,
)
from .analytic import (
    DiscrepancyReport,
    chi,
    convexity_ratio,
    dirichlet_n,
    discrepancy,
    main_term,
    phi_count,
    zeta_afe,
    zeta_em,
    zeta_em_bound,
)
from .oracles import (
    BoundReport,
    LemmaGrid,
    MeasureBound,
    default_grid,
    measure_bound,
    mv_mean_value,
    perron_majorant,
    perron_mean_square,
    run_check,
    s1_sum,
    s2_sum,
    second_moment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
