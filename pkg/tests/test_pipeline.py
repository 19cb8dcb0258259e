"""Configuration validation and the end-to-end analysis pipeline."""

import dataclasses
import json
import os

import numpy as np
import pytest

import mfts
from mfts import AnalysisConfig, parse_generator_spec, run_analysis


class TestParseGeneratorSpec:
    def test_kind_and_params(self):
        kind, params = parse_generator_spec("fbm:n=1024,hurst=0.7")
        assert kind == "fbm"
        assert params == {"n": "1024", "hurst": "0.7"}

    def test_whitespace_tolerated(self):
        kind, params = parse_generator_spec("fgn: n = 512 , hurst = 0.3")
        assert kind == "fgn"
        assert params == {"n": "512", "hurst": "0.3"}

    def test_bare_kind_gives_empty_params(self):
        assert parse_generator_spec("cascade") == ("cascade", {})

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown kind"):
            parse_generator_spec("wiener:n=64")

    def test_malformed_parameter(self):
        with pytest.raises(ValueError, match="malformed parameter"):
            parse_generator_spec("counts:shots")


class TestAnalysisConfigValidation:
    def test_requires_exactly_one_source(self):
        with pytest.raises(ValueError, match="^input:"):
            AnalysisConfig()
        with pytest.raises(ValueError, match="^input:"):
            AnalysisConfig(input_path="x.csv", generate="fgn:n=64,hurst=0.5")

    def test_generator_params_checked_eagerly(self):
        with pytest.raises(ValueError, match="must be an integer"):
            AnalysisConfig(generate="fbm:n=bogus,hurst=0.7")
        with pytest.raises(ValueError, match="requires hurst="):
            AnalysisConfig(generate="fbm:n=1024")
        with pytest.raises(ValueError, match="unknown kind"):
            AnalysisConfig(generate="nope:n=4")
        with pytest.raises(ValueError, match="does not accept parameter"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5,shots=3")

    def test_wavelet_bounds(self):
        for bad in (0, 11, -2):
            with pytest.raises(ValueError, match="^wavelet:"):
                AnalysisConfig(generate="fgn:n=64,hurst=0.5", wavelet=bad)

    def test_scales_shape_and_order(self):
        with pytest.raises(ValueError, match="^scales:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", scales=(2, 3, 4))
        with pytest.raises(ValueError, match="j1 >= 2"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", scales=(1, 5))
        with pytest.raises(ValueError, match="j1 >= 2"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", scales=(3, 4))
        with pytest.raises(ValueError, match="j1 >= 2"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", scales=(9, 3))

    def test_scales_normalized_to_int_tuple(self):
        config = AnalysisConfig(
            generate="fgn:n=64,hurst=0.5", scales=(np.int64(3), np.int64(9))
        )
        assert config.scales == (3, 9)
        assert all(type(s) is int for s in config.scales)

    def test_seed_and_lag_bounds(self):
        with pytest.raises(ValueError, match="^seed:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", seed=-1)
        with pytest.raises(ValueError, match="^acf_max_lag:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", acf_max_lag=0)

    def test_prefixed_delegate_errors(self):
        with pytest.raises(ValueError, match="^q:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", q_step=-0.5)
        with pytest.raises(ValueError, match="^bootstrap/ci:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", bootstrap_replicates=50)
        with pytest.raises(ValueError, match="^bootstrap/ci:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", ci=(95.0, 5.0))
        with pytest.raises(ValueError, match="^surrogates:"):
            AnalysisConfig(generate="fgn:n=64,hurst=0.5", surrogates=("bogus",))

    def test_frozen(self):
        config = AnalysisConfig(generate="fgn:n=64,hurst=0.5")
        with pytest.raises(dataclasses.FrozenInstanceError):
            config.seed = 5


def small_config(**overrides):
    base = dict(
        generate="fgn:n=2048,hurst=0.7",
        scales=(2, 6),
        bootstrap_replicates=100,
        seed=3,
        acf_max_lag=40,
    )
    base.update(overrides)
    return AnalysisConfig(**base)


@pytest.fixture(scope="module")
def report():
    return run_analysis(
        small_config(surrogates=("shuffle",), surrogate_count=8, run_mfdfa=True)
    )


class TestRunAnalysis:
    def test_series_built_from_generator(self, report):
        assert len(report.series) == 2048
        assert report.series.source == "synthetic"
        direct = mfts.fgn(2048, 0.7, seed=3)
        assert np.array_equal(report.series.values, direct.values)

    def test_given_scale_range(self, report):
        assert report.scales_mode == "given"
        assert report.scale_range == (2, 6)
        assert report.range_table == ()

    def test_diagnostics_match_direct_calls(self, report):
        assert report.acf_values.shape == (41,)
        assert np.array_equal(report.acf_values, mfts.acf(report.series, 40))
        assert np.array_equal(report.pacf_values, mfts.pacf(report.series, 40))
        direct = mfts.power_spectrum_slope(report.series)
        assert report.spectrum_fit.slope == direct.slope

    def test_hurst_at_zero_is_c1(self, report):
        idx = report.qgrid.index_of(0.0)
        assert report.hurst[idx] == report.cumulants.values[0]

    def test_optional_stages_present(self, report):
        assert report.surrogates is not None
        assert set(report.surrogates.summaries) == {"shuffle"}
        assert report.mfdfa is not None

    def test_to_dict_json_round_trip(self, report):
        d = report.to_dict()
        blob = json.dumps(d)  # raises if anything non-serializable slipped in
        assert json.loads(blob) == json.loads(report.to_json())
        assert d["tool"] == {"name": "mfts", "version": mfts.__version__}
        assert d["method"] == "wlmfa+mfdfa"
        assert d["config"]["scales"] == [2, 6]
        assert d["scale_range"] == {
            "mode": "given",
            "j1": 2,
            "j2": 6,
            "candidates": [],
        }
        assert d["input"]["n"] == 2048
        assert len(d["scaling"]["zeta"]) == len(d["qgrid"])
        assert d["surrogates"]["methods"]["shuffle"]["failures"] == 0
        assert d["mfdfa"]["c1"] == report.mfdfa.c1

    def test_auto_scale_range(self):
        report = run_analysis(small_config(scales=None))
        assert report.scales_mode == "auto"
        assert len(report.range_table) >= 3
        top = report.range_table[0]
        assert report.scale_range == (top.start, top.end)
        scores = [c.score for c in report.range_table]
        assert all(a >= b for a, b in zip(scores, scores[1:]))
        assert all(c.end - c.start >= 2 for c in report.range_table)
        assert report.to_dict()["config"]["scales"] == "auto"


class TestDeterminism:
    def test_identical_configs_identical_json(self):
        first = run_analysis(small_config(surrogates=("shuffle",), surrogate_count=8))
        second = run_analysis(small_config(surrogates=("shuffle",), surrogate_count=8))
        assert first.to_json() == second.to_json()

    def test_json_ends_with_newline(self):
        report = run_analysis(small_config())
        blob = report.to_json()
        assert blob.endswith("}\n")
        json.loads(blob)


@pytest.fixture(scope="module")
def emitted(tmp_path_factory):
    report = run_analysis(small_config(surrogates=("shuffle",), surrogate_count=8))
    out = tmp_path_factory.mktemp("artifacts")
    json_path = mfts.write_report(report, str(out))
    csv_paths = mfts.emit_plot_data(report, str(out))
    return report, out, json_path, csv_paths


class TestArtifacts:
    def test_report_json_bytes(self, emitted):
        report, out, json_path, _ = emitted
        assert os.path.basename(json_path) == "report.json"
        with open(json_path, encoding="utf-8") as fh:
            assert fh.read() == report.to_json()

    def test_series_written_for_generated_input(self, emitted):
        report, out, _, _ = emitted
        path = out / "series.csv"
        assert path.exists()
        loaded = mfts.load_series(str(path))
        assert np.array_equal(loaded.values, report.series.values)

    def test_csv_inventory_and_headers(self, emitted):
        report, out, _, csv_paths = emitted
        names = sorted(os.path.basename(p) for p in csv_paths)
        assert names == [
            "acf.csv",
            "bootstrap_hist_qneg.csv",
            "bootstrap_hist_qpos.csv",
            "fft.csv",
            "hq.csv",
            "pacf.csv",
            "spectrum.csv",
            "surrogate_spectrum.csv",
            "surrogate_zeta.csv",
            "zeta.csv",
        ]
        headers = {
            "hq.csv": "q,h,h_lo,h_hi",
            "zeta.csv": "q,zeta,zeta_lo,zeta_hi,stderr",
            "spectrum.csv": "q,h,h_lo,h_hi,D,D_lo,D_hi",
            "surrogate_zeta.csv": "q,zeta_median_shuffle,zeta_base",
            "surrogate_spectrum.csv": "q,h_median_shuffle,d_median_shuffle,h_base,d_base",
            "acf.csv": "lag,acf",
            "pacf.csv": "lag,pacf",
            "fft.csv": "log_f,log_power,fit",
            "bootstrap_hist_qneg.csv": "h_bin,D_bin,count",
            "bootstrap_hist_qpos.csv": "h_bin,D_bin,count",
        }
        for name, header in headers.items():
            with open(out / name, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
            assert lines[0] == header, name
            width = len(header.split(","))
            assert all(len(line.split(",")) == width for line in lines[1:]), name
        with open(out / "hq.csv", encoding="utf-8") as fh:
            assert len(fh.read().splitlines()) == 1 + len(report.qgrid.values)
        with open(out / "acf.csv", encoding="utf-8") as fh:
            assert len(fh.read().splitlines()) == 1 + report.acf_values.size

    def test_no_series_csv_for_file_input(self, tmp_path):
        source = mfts.fgn(2048, 0.6, seed=9)
        src_path = tmp_path / "input.csv"
        mfts.write_series(source, str(src_path))
        report = run_analysis(
            AnalysisConfig(
                input_path=str(src_path),
                scales=(2, 6),
                bootstrap_replicates=100,
                seed=1,
            )
        )
        out = tmp_path / "out"
        mfts.write_report(report, str(out))
        assert (out / "report.json").exists()
        assert not (out / "series.csv").exists()
        assert np.array_equal(report.series.values, source.values)
