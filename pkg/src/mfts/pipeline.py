"""End-to-end orchestration: load, characterize, analyze, report.

`run_analysis` chains diagnostics, the wavelet transform, leaders, scale
range selection, scaling estimates, bootstrap intervals, and the optional
surrogate and detrended-fluctuation cross-checks, then packages everything
into a report that serializes to deterministic JSON. `emit_plot_data`
writes one CSV per standard figure.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

import numpy as np

from .bootstrap import BootstrapConfig, BootstrapResult, bootstrap_statistics, cumulant_test
from .diagnostics import SpectrumFit, acf, pacf, power_spectrum_slope
from .generators import binomial_cascade, binomial_counts, CascadeSpec, fbm, fgn
from .leaders import LeaderPyramid, compute_leaders
from .mfdfa import MfdfaConfig, MfdfaResult, mfdfa_analysis
from .scaling import (
    QGrid,
    ScalingResult,
    SingularitySpectrum,
    hurst_exponents,
    legendre_spectrum,
    log_cumulants,
    scaling_exponents,
    select_scale_range,
    spectrum_width,
    structure_functions,
)
from .series import TimeSeries, load_series, write_series
from .surrogates import SurrogateComparison, SurrogateConfig, surrogate_analysis
from .version import __version__
from .wavelets import build_wavelet, dwt_forward

__all__ = [
    "AnalysisConfig",
    "AnalysisReport",
    "parse_generator_spec",
    "run_analysis",
    "emit_plot_data",
    "write_report",
]

GENERATOR_KINDS = ("fbm", "fgn", "cascade", "counts")


def parse_generator_spec(spec: str) -> tuple:
    """Split 'kind:key=value,key=value' into a kind and a parameter dict."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"generate: unknown kind {kind!r}, expected one of {GENERATOR_KINDS}")
    params = {}
    if rest.strip():
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"generate: malformed parameter {item!r}, expected key=value")
            params[key.strip()] = value.strip()
    return kind, params


_GENERATOR_PARAMS = {
    "fbm": {"n": int, "hurst": float},
    "fgn": {"n": int, "hurst": float},
    "cascade": {"levels": int, "p": float, "randomize": int},
    "counts": {"n": int, "shots": int, "prob": float},
}
_GENERATOR_REQUIRED = {
    "fbm": ("n", "hurst"),
    "fgn": ("n", "hurst"),
    "cascade": ("levels", "p"),
    "counts": ("n", "shots", "prob"),
}


def _generator_args(kind: str, raw: dict) -> dict:
    """Check and convert the key=value strings for one generator kind."""
    types = _GENERATOR_PARAMS[kind]
    for key in raw:
        if key not in types:
            raise ValueError(f"generate: {kind} does not accept parameter {key!r}")
    for key in _GENERATOR_REQUIRED[kind]:
        if key not in raw:
            raise ValueError(f"generate: {kind} requires {key}=")
    out = {}
    for key, value in raw.items():
        conv = types[key]
        try:
            out[key] = conv(value)
        except ValueError:
            noun = "an integer" if conv is int else "a number"
            raise ValueError(f"generate: {key} must be {noun}, got {value!r}") from None
    return out


def _build_series(config: "AnalysisConfig") -> TimeSeries:
    if config.input_path is not None:
        return load_series(
            config.input_path,
            column=config.column,
            delimiter=config.delimiter,
            has_header=config.has_header,
        )
    kind, raw = parse_generator_spec(config.generate)
    params = _generator_args(kind, raw)
    seed = config.seed
    if kind == "fbm":
        return fbm(params["n"], params["hurst"], seed)
    if kind == "fgn":
        return fgn(params["n"], params["hurst"], seed)
    if kind == "cascade":
        randomize = params.get("randomize", 0) != 0
        spec = CascadeSpec(
            levels=params["levels"],
            p=params["p"],
            randomize=randomize,
            seed=seed if randomize else None,
        )
        return binomial_cascade(spec)
    return binomial_counts(params["n"], params["shots"], params["prob"], seed)


@dataclass(frozen=True)
class AnalysisConfig:
    """Everything a run needs; every field is echoed into the report."""

    input_path: str | None = None
    generate: str | None = None
    column: int = 0
    delimiter: str = ","
    has_header: bool = False
    wavelet: int = 3
    scales: tuple | None = None  # None selects the range automatically
    q_lo: float = -7.0
    q_step: float = 0.5
    q_hi: float = 7.0
    bootstrap_replicates: int = 2000
    ci: tuple = (5.0, 95.0)
    seed: int = 0
    surrogates: tuple = ()
    surrogate_count: int = 2000
    iaaft_max_iter: int = 200
    iaaft_tol: float = 1e-6
    run_mfdfa: bool = False
    acf_max_lag: int = 100

    def __post_init__(self):
        have_input = self.input_path is not None
        have_gen = self.generate is not None
        if have_input == have_gen:
            raise ValueError("input: exactly one of input_path or generate must be given")
        if have_gen:
            kind, raw = parse_generator_spec(self.generate)
            _generator_args(kind, raw)
        if self.wavelet < 1 or self.wavelet > 10:
            raise ValueError(f"wavelet: vanishing moments must be in [1, 10], got {self.wavelet}")
        if self.scales is not None:
            scales = tuple(int(s) for s in self.scales)
            if len(scales) != 2:
                raise ValueError(f"scales: expected (j1, j2), got {self.scales!r}")
            if scales[0] < 2 or scales[1] < scales[0] + 2:
                raise ValueError(
                    f"scales: need j1 >= 2 and j2 >= j1 + 2, got {scales[0]}:{scales[1]}"
                )
            object.__setattr__(self, "scales", scales)
        if self.seed < 0:
            raise ValueError(f"seed: must be non-negative, got {self.seed}")
        if self.acf_max_lag < 1:
            raise ValueError(f"acf_max_lag: must be >= 1, got {self.acf_max_lag}")
        ci = (float(self.ci[0]), float(self.ci[1]))
        object.__setattr__(self, "ci", ci)
        surrogates = tuple(self.surrogates)
        object.__setattr__(self, "surrogates", surrogates)
        # QGrid, BootstrapConfig, SurrogateConfig validate their own fields.
        self.qgrid()
        self.bootstrap_config()
        if surrogates:
            self.surrogate_config()

    def qgrid(self) -> QGrid:
        try:
            return QGrid.from_range(self.q_lo, self.q_step, self.q_hi)
        except ValueError as exc:
            raise ValueError(f"q: {exc}") from None

    def bootstrap_config(self) -> BootstrapConfig:
        try:
            return BootstrapConfig(
                replicates=self.bootstrap_replicates, ci=self.ci, seed=self.seed
            )
        except ValueError as exc:
            raise ValueError(f"bootstrap/ci: {exc}") from None

    def surrogate_config(self) -> SurrogateConfig:
        try:
            return SurrogateConfig(
                methods=self.surrogates,
                count=self.surrogate_count,
                max_iter=self.iaaft_max_iter,
                tol=self.iaaft_tol,
                seed=self.seed,
            )
        except ValueError as exc:
            raise ValueError(f"surrogates: {exc}") from None


@dataclass(frozen=True)
class AnalysisReport:
    """All analysis products of one run plus the config that made them."""

    config: AnalysisConfig
    series: TimeSeries
    qgrid: QGrid
    acf_values: np.ndarray
    pacf_values: np.ndarray
    spectrum_fit: SpectrumFit
    leaders: LeaderPyramid
    scale_range: tuple
    scales_mode: str  # "given" or "auto"
    range_table: tuple  # ScaleRangeCandidate rows when auto, else empty
    scaling: ScalingResult
    hurst: np.ndarray
    cumulants: object
    spectrum: SingularitySpectrum
    bootstrap: BootstrapResult
    cumulant_tests: object  # CumulantTest with per-order arrays
    surrogates: SurrogateComparison | None
    mfdfa: MfdfaResult | None

    def to_dict(self) -> dict:
        cfg = {f.name: getattr(self.config, f.name) for f in fields(self.config)}
        cfg["scales"] = list(self.config.scales) if self.config.scales else "auto"
        cfg["ci"] = list(self.config.ci)
        cfg["surrogates"] = list(self.config.surrogates)
        q = self.qgrid.values.tolist()
        boot = self.bootstrap
        out = {
            "tool": {"name": "mfts", "version": __version__},
            "input": {
                "path": self.config.input_path,
                "generator": self.config.generate,
                "name": self.series.name,
                "n": len(self.series),
                "source": self.series.source,
                "seed": self.config.seed,
            },
            "method": "wlmfa+mfdfa" if self.mfdfa is not None else "wlmfa",
            "config": cfg,
            "diagnostics": {
                "acf": self.acf_values.tolist(),
                "pacf": self.pacf_values.tolist(),
                "max_lag": self.acf_values.size - 1,
                "spectrum_slope": self.spectrum_fit.slope,
                "spectrum_stderr": self.spectrum_fit.stderr,
                "spectrum_r_squared": self.spectrum_fit.r_squared,
                "spectrum_band": list(self.spectrum_fit.band),
                "spectrum_low_quality": self.spectrum_fit.low_quality,
            },
            "wavelet": {
                "vanishing_moments": self.leaders.vanishing_moments,
                "levels": self.leaders.levels,
                "boundary_exclusions": list(self.leaders.boundary_exclusions),
                "first_scale_flagged": list(self.leaders.flagged),
            },
            "scale_range": {
                "mode": self.scales_mode,
                "j1": self.scale_range[0],
                "j2": self.scale_range[1],
                "candidates": [
                    {
                        "j1": c.start,
                        "j2": c.end,
                        "length": c.length,
                        "score": c.score,
                        "valid_cumulants": c.valid_cumulants,
                        "cumulants": [float(v) for v in c.cumulants],
                        "p_values": [float(v) for v in c.p_values],
                    }
                    for c in self.range_table
                ],
            },
            "qgrid": q,
            "scaling": {
                "q": q,
                "zeta": self.scaling.zeta.tolist(),
                "stderr": self.scaling.stderr.tolist(),
                "weighted_rss": self.scaling.weighted_rss.tolist(),
                "hurst": self.hurst.tolist(),
                "counts": [int(c) for c in self.scaling.counts],
            },
            "cumulants": {
                "order": list(range(1, self.cumulants.values.size + 1)),
                "value": self.cumulants.values.tolist(),
                "stderr": self.cumulants.stderr.tolist(),
                "p_value": self.cumulant_tests.p_values.tolist(),
                "significant": [bool(v) for v in self.cumulant_tests.reject],
            },
            "spectrum": {
                "q": q,
                "h": self.spectrum.h_values.tolist(),
                "h_lo": boot.spectrum_h.ci_low.tolist(),
                "h_hi": boot.spectrum_h.ci_high.tolist(),
                "d": self.spectrum.d_values.tolist(),
                "d_lo": boot.spectrum_d.ci_low.tolist(),
                "d_hi": boot.spectrum_d.ci_high.tolist(),
                "valid": [bool(v) for v in self.spectrum.valid],
                "concave": self.spectrum.concave,
                "width": spectrum_width(self.spectrum),
            },
            "bootstrap": {
                "replicates": boot.config.replicates,
                "ci": list(boot.config.ci),
                "seed": boot.config.seed,
                "block_lengths": list(boot.block_lengths),
                "failures": boot.failures,
                "zeta_lo": boot.zeta.ci_low.tolist(),
                "zeta_hi": boot.zeta.ci_high.tolist(),
                "hurst_lo": boot.hurst.ci_low.tolist(),
                "hurst_hi": boot.hurst.ci_high.tolist(),
                "cumulant_lo": boot.cumulants.ci_low.tolist(),
                "cumulant_hi": boot.cumulants.ci_high.tolist(),
            },
        }
        if self.surrogates is not None:
            surr = self.surrogates
            block = {
                "count": surr.config.count,
                "seed": surr.config.seed,
                "width_original": surr.width_original,
                "c2_original": surr.c2_original,
                "methods": {},
            }
            for name, summary in surr.summaries.items():
                entry = {
                    "zeta_median": summary.zeta_median.tolist(),
                    "h_median": summary.h_median.tolist(),
                    "d_median": summary.d_median.tolist(),
                    "width_median": summary.width_median,
                    "failures": summary.failures,
                }
                if name == "iaaft":
                    infos = summary.iaaft_info
                    entry["converged"] = sum(1 for i in infos if i.converged)
                    entry["median_iterations"] = float(
                        np.median([i.iterations for i in infos])
                    )
                    entry["median_spectrum_error"] = float(
                        np.median([i.spectrum_error for i in infos])
                    )
                block["methods"][name] = entry
            out["surrogates"] = block
        else:
            out["surrogates"] = None
        if self.mfdfa is not None:
            m = self.mfdfa
            out["mfdfa"] = {
                "q": m.qgrid.values.tolist(),
                "sizes": [int(s) for s in m.sizes],
                "h": m.h_values.tolist(),
                "zeta": m.zeta.tolist(),
                "c1": m.c1,
                "cumulant_poly": m.cumulant_poly.tolist(),
                "spectrum_h": m.spectrum.h_values.tolist(),
                "spectrum_d": m.spectrum.d_values.tolist(),
            }
        else:
            out["mfdfa"] = None
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def run_analysis(config: AnalysisConfig) -> AnalysisReport:
    """Execute every configured stage and return the assembled report."""
    series = _build_series(config)
    n = len(series)
    max_lag = min(config.acf_max_lag, n - 1)
    acf_values = acf(series, max_lag)
    pacf_values = pacf(series, max_lag)
    spectrum_fit = power_spectrum_slope(series)
    qgrid = config.qgrid()
    basis = build_wavelet(config.wavelet)
    pyramid = dwt_forward(series, basis)
    leaders = compute_leaders(pyramid)
    bconfig = config.bootstrap_config()
    if config.scales is None:
        candidates = select_scale_range(leaders, bootstrap_config=bconfig)
        scale_range = (candidates[0].start, candidates[0].end)
        scales_mode = "auto"
        range_table = tuple(candidates)
    else:
        scale_range = config.scales
        scales_mode = "given"
        range_table = ()
    sf = structure_functions(leaders, qgrid, scale_range)
    scaling = scaling_exponents(sf)
    cumulants = log_cumulants(leaders, scale_range)
    hurst = hurst_exponents(scaling, c1=float(cumulants.values[0]))
    spectrum = legendre_spectrum(qgrid, scaling.zeta)
    boot = bootstrap_statistics(leaders, qgrid, scale_range, bconfig)
    tests = cumulant_test(boot)
    surrogates = None
    if config.surrogates:
        surrogates = surrogate_analysis(
            series,
            config.surrogate_config(),
            qgrid,
            scale_range,
            vanishing_moments=config.wavelet,
        )
    mfdfa_result = None
    if config.run_mfdfa:
        mfdfa_result = mfdfa_analysis(series, MfdfaConfig(qgrid=qgrid))
    return AnalysisReport(
        config=config,
        series=series,
        qgrid=qgrid,
        acf_values=acf_values,
        pacf_values=pacf_values,
        spectrum_fit=spectrum_fit,
        leaders=leaders,
        scale_range=scale_range,
        scales_mode=scales_mode,
        range_table=range_table,
        scaling=scaling,
        hurst=hurst,
        cumulants=cumulants,
        spectrum=spectrum,
        bootstrap=boot,
        cumulant_tests=tests,
        surrogates=surrogates,
        mfdfa=mfdfa_result,
    )


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _hist2d_rows(h_samples: np.ndarray, d_samples: np.ndarray, bins: int = 20):
    counts, h_edges, d_edges = np.histogram2d(h_samples, d_samples, bins=bins)
    h_mid = 0.5 * (h_edges[:-1] + h_edges[1:])
    d_mid = 0.5 * (d_edges[:-1] + d_edges[1:])
    for i, hm in enumerate(h_mid):
        for j, dm in enumerate(d_mid):
            yield hm, dm, int(counts[i, j])


def emit_plot_data(report: AnalysisReport, out_dir: str) -> list:
    """Write the per-figure CSV files; returns the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    q = report.qgrid.values
    boot = report.bootstrap
    written = []

    def emit(name, header, rows):
        path = os.path.join(out_dir, name)
        _write_csv(path, header, rows)
        written.append(path)

    emit(
        "hq.csv",
        "q,h,h_lo,h_hi",
        zip(q, report.hurst, boot.hurst.ci_low, boot.hurst.ci_high),
    )
    emit(
        "zeta.csv",
        "q,zeta,zeta_lo,zeta_hi,stderr",
        zip(q, report.scaling.zeta, boot.zeta.ci_low, boot.zeta.ci_high, report.scaling.stderr),
    )
    emit(
        "spectrum.csv",
        "q,h,h_lo,h_hi,D,D_lo,D_hi",
        zip(
            q,
            report.spectrum.h_values,
            boot.spectrum_h.ci_low,
            boot.spectrum_h.ci_high,
            report.spectrum.d_values,
            boot.spectrum_d.ci_low,
            boot.spectrum_d.ci_high,
        ),
    )
    emit(
        "bootstrap_hist_qneg.csv",
        "h_bin,D_bin,count",
        _hist2d_rows(boot.spectrum_h.samples[:, 0], boot.spectrum_d.samples[:, 0]),
    )
    emit(
        "bootstrap_hist_qpos.csv",
        "h_bin,D_bin,count",
        _hist2d_rows(boot.spectrum_h.samples[:, -1], boot.spectrum_d.samples[:, -1]),
    )
    if report.surrogates is not None:
        surr = report.surrogates
        names = [m for m in ("shuffle", "iaaft") if m in surr.summaries]
        header = "q," + ",".join(f"zeta_median_{m}" for m in names) + ",zeta_base"
        cols = [surr.summaries[m].zeta_median for m in names]
        emit("surrogate_zeta.csv", header, zip(q, *cols, surr.zeta_original))
        header = (
            "q,"
            + ",".join(f"h_median_{m},d_median_{m}" for m in names)
            + ",h_base,d_base"
        )
        cols = []
        for m in names:
            cols.append(surr.summaries[m].h_median)
            cols.append(surr.summaries[m].d_median)
        emit(
            "surrogate_spectrum.csv",
            header,
            zip(q, *cols, surr.h_original, surr.d_original),
        )
    lags = np.arange(report.acf_values.size)
    emit("acf.csv", "lag,acf", zip(lags, report.acf_values))
    emit("pacf.csv", "lag,pacf", zip(lags, report.pacf_values))
    fit = report.spectrum_fit
    log_f = np.log(fit.frequencies)
    emit(
        "fft.csv",
        "log_f,log_power,fit",
        zip(log_f, np.log(fit.power), fit.intercept + fit.slope * log_f),
    )
    return written


def write_report(report: AnalysisReport, out_dir: str) -> str:
    """Write report.json (and series.csv for generated input); returns the JSON path."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "report.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report.to_json())
    if report.config.generate is not None:
        write_series(report.series, os.path.join(out_dir, "series.csv"))
    return path
