"""Multifractal analysis of 1-D time series.

Wavelet-leader scaling exponents and log-cumulants with block-bootstrap
confidence intervals, automated scale-range selection, surrogate-data
validation, an MFDFA cross-check, and classical diagnostics, plus synthetic
generators (fBm, binomial cascade, binomial counts) for testing.
"""

from .version import __version__
from .series import TimeSeries, SummaryStats, load_series, summarize, write_series
from .generators import (
    CascadeSpec,
    binomial_cascade,
    binomial_counts,
    cascade_leader_zeta,
    cascade_tau,
    derive_seed,
    fbm,
    fgn,
)
from .wavelets import (
    CoefficientPyramid,
    WaveletBasis,
    build_wavelet,
    dwt_forward,
    max_decomposition_level,
)
from .leaders import LeaderPyramid, compute_leaders
from .scaling import (
    QGrid,
    ScaleRangeCandidate,
    ScalingResult,
    SingularitySpectrum,
    StructureFunctions,
    hurst_exponents,
    legendre_spectrum,
    log_cumulants,
    scaling_exponents,
    select_scale_range,
    spectrum_width,
    structure_functions,
    zeta_from_cumulants,
)
from .bootstrap import (
    BootstrapConfig,
    BootstrapDistribution,
    BootstrapResult,
    bootstrap_statistics,
    circular_block_resample,
    cumulant_test,
    default_block_length,
    resample_leaders,
    two_sided_pvalue,
)
from .mfdfa import (
    MfdfaConfig,
    MfdfaResult,
    default_window_sizes,
    mfdfa_analysis,
    mfdfa_exponents,
    mfdfa_fluctuations,
    mfdfa_profile,
)
from .surrogates import (
    IaaftInfo,
    SurrogateComparison,
    SurrogateConfig,
    iaaft_surrogate,
    shuffle_surrogate,
    surrogate_analysis,
)
from .diagnostics import SpectrumFit, acf, pacf, periodogram, power_spectrum_slope
from .pipeline import (
    AnalysisConfig,
    AnalysisReport,
    emit_plot_data,
    parse_generator_spec,
    run_analysis,
    write_report,
)

__all__ = [
    "__version__",
    "TimeSeries",
    "SummaryStats",
    "load_series",
    "summarize",
    "write_series",
    "CascadeSpec",
    "binomial_cascade",
    "binomial_counts",
    "cascade_leader_zeta",
    "cascade_tau",
    "derive_seed",
    "fbm",
    "fgn",
    "CoefficientPyramid",
    "WaveletBasis",
    "build_wavelet",
    "dwt_forward",
    "max_decomposition_level",
    "LeaderPyramid",
    "compute_leaders",
    "QGrid",
    "ScaleRangeCandidate",
    "ScalingResult",
    "SingularitySpectrum",
    "StructureFunctions",
    "hurst_exponents",
    "legendre_spectrum",
    "log_cumulants",
    "scaling_exponents",
    "select_scale_range",
    "spectrum_width",
    "structure_functions",
    "zeta_from_cumulants",
    "BootstrapConfig",
    "BootstrapDistribution",
    "BootstrapResult",
    "bootstrap_statistics",
    "circular_block_resample",
    "cumulant_test",
    "default_block_length",
    "resample_leaders",
    "two_sided_pvalue",
    "MfdfaConfig",
    "MfdfaResult",
    "default_window_sizes",
    "mfdfa_analysis",
    "mfdfa_exponents",
    "mfdfa_fluctuations",
    "mfdfa_profile",
    "IaaftInfo",
    "SurrogateComparison",
    "SurrogateConfig",
    "iaaft_surrogate",
    "shuffle_surrogate",
    "surrogate_analysis",
    "SpectrumFit",
    "acf",
    "pacf",
    "periodogram",
    "power_spectrum_slope",
    "AnalysisConfig",
    "AnalysisReport",
    "emit_plot_data",
    "parse_generator_spec",
    "run_analysis",
    "write_report",
]
