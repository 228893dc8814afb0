import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from urnshock import (
    FailureRecord,
    ParseError,
    RngStream,
    RupConfig,
    StateGrid,
    UnknownStateError,
    beta_stacy_posterior,
    beta_stacy_prior,
    estimate_predictive,
    predictive_distribution,
    replay_priors,
    run_systems,
)
from urnshock import cli, io
from urnshock.demo import default_bar_config, run_demo_bar_loading
from urnshock.montecarlo import compare_frequencies


def symmetric(n, s=1.0):
    return RupConfig.uniform(StateGrid.range(n), 1, 1, s)


def test_estimate_predictive_after_one_failure():
    cfg = symmetric(2)
    rep = estimate_predictive(cfg, FailureRecord(cfg.grid, (1,)), 100_000, RngStream(7))
    assert rep.analytic == pytest.approx([1 / 3, 4 / 9, 2 / 9], abs=1e-15)
    assert rep.passed, rep.z_scores
    assert rep.labels == (0.0, 1.0, "tail")


def test_estimate_predictive_prior():
    cfg = symmetric(3)
    rep = estimate_predictive(cfg, FailureRecord(cfg.grid), 20_000, RngStream(8))
    assert rep.analytic.tolist() == [0.5, 0.25, 0.125, 0.125]
    assert rep.passed


def test_estimate_predictive_deterministic_and_worker_independent():
    cfg = symmetric(3)
    rec = FailureRecord(cfg.grid, (0, 2))
    a = estimate_predictive(cfg, rec, 10_000, RngStream(1))
    b = estimate_predictive(cfg, rec, 10_000, RngStream(1))
    c = estimate_predictive(cfg, rec, 10_000, RngStream(1), workers=2)
    assert io.emit(a) == io.emit(b) == io.emit(c)


def test_estimate_predictive_needs_replicates():
    cfg = symmetric(2)
    with pytest.raises(ValueError):
        estimate_predictive(cfg, FailureRecord(cfg.grid), 10, RngStream(1))


def test_report_statistics():
    rep = compare_frequencies([30, 70], [0.3, 0.7], 100)
    assert rep.std_error[0] == pytest.approx(np.sqrt(0.3 * 0.7 / 100))
    assert rep.verdict == "pass"
    rep = compare_frequencies([0, 100], [0.2, 0.8], 100)
    assert rep.z_scores[0] == pytest.approx(-0.2 / np.sqrt(0.16 / 100))
    assert rep.verdict == "fail"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12), st.sampled_from([1.0, 0.3, 0.7, 2.5]))
def test_replay_matches_simulated_urns(seed, k, s):
    cfg = RupConfig(StateGrid.range(5), ((1, 1), (2, 0.5), (1, 3), (0.4, 0.6), (0, 1)), s)
    record, state = run_systems(cfg, k, RngStream(seed))
    assert list(replay_priors(cfg, record).priors) == state.urns


def test_ingest_example(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("id,state\nbar1,1\nbar2,3\n")
    rec = io.ingest(p, StateGrid.range(4))
    assert rec.indices == (1, 3)


@pytest.mark.parametrize(
    "text,line",
    [
        ("id,state\nbar1,1\nbar1,2\n", 3),
        ("id,state\nbar1,x\n", 2),
        ("id,state\nbar1,1,5\n", 2),
        ("id,state\nbar1,1\n,2\n", 3),
        ("just-one-column\n", 1),
        ("id,state\nbar1,-1\n", 2),
    ],
)
def test_ingest_parse_errors(tmp_path, text, line):
    p = tmp_path / "d.csv"
    p.write_text(text)
    with pytest.raises(ParseError) as e:
        io.ingest(p, StateGrid.range(4))
    assert e.value.line == line
    assert e.value.code == "parse-error"


def test_ingest_off_grid(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("system_id,failure_state_index\na,4\n")
    with pytest.raises(UnknownStateError):
        io.ingest(p, StateGrid.range(4))


@given(st.lists(st.integers(0, 5), max_size=30))
def test_record_round_trip(indices):
    g = StateGrid((0.5, 1, 2, 4, 8, 16))
    rec = FailureRecord(g, tuple(indices))
    assert io.parse_record(io.emit(rec, format="csv"), g) == rec
    assert io.from_jsonable(json.loads(io.emit(rec))) == rec


def test_spec_and_distribution_round_trip():
    cfg = RupConfig(StateGrid((1, 2.5, 7)), ((0.3, 0.7), (1.1, 2.2), (0, 1)), 0.3)
    rec = FailureRecord(cfg.grid, (0, 1, 1))
    post = beta_stacy_posterior(beta_stacy_prior(cfg), rec, cfg.s)
    assert io.from_jsonable(json.loads(io.emit(post))) == post
    dist = predictive_distribution(cfg, rec)
    back = io.from_jsonable(json.loads(io.emit(dist)))
    assert np.array_equal(back.pmf, dist.pmf) and back.tail == dist.tail
    assert np.array_equal(back.survival, dist.survival)


def test_emitted_predictive_json_normalized():
    cfg = symmetric(4)
    obj = json.loads(io.emit(predictive_distribution(cfg, FailureRecord(cfg.grid, (1, 2)))))
    assert "tail" in obj
    assert abs(sum(obj["pmf"]) + obj["tail"] - 1) < 1e-12


def test_csv_tables_use_12_digits():
    cfg = symmetric(2)
    text = io.emit(predictive_distribution(cfg, FailureRecord(cfg.grid, (1,))), format="csv")
    assert "0.333333333333" in text and "0.3333333333333" not in text


def test_demo_predictive_shifts_toward_observation():
    cfg = symmetric(6)
    rep = run_demo_bar_loading(cfg, 1, RngStream(4))
    xi = rep["failure_indices"][0]
    assert rep["next_bar_predictive"].pmf[xi] > rep["prior_predictive"].pmf[xi]


def test_demo_reinforcement_strength():
    cfg = symmetric(6)
    rec = FailureRecord(cfg.grid, (2,))
    prior = predictive_distribution(cfg).pmf
    weak = predictive_distribution(RupConfig(cfg.grid, cfg.priors, 1e-9), rec).pmf
    strong = predictive_distribution(RupConfig(cfg.grid, cfg.priors, 100), rec).pmf
    unit = predictive_distribution(cfg, rec).pmf
    assert np.allclose(weak, prior, atol=1e-8)
    assert strong[2] > 0.9 and strong[2] > unit[2]


def test_default_bar_config_terminates():
    cfg = default_bar_config()
    assert cfg.priors[-1].white == 0
    rep = run_demo_bar_loading(cfg, 25, RngStream(0))
    assert len(rep["failure_loads"]) == 25
    assert [c["s"] for c in rep["calibration"]] == [0.1, 1.0, 10.0]
    json.loads(io.emit(rep))


@pytest.fixture
def workdir(tmp_path):
    cfg = {
        "grid": [0, 1, 2, 3],
        "priors": [[1, 1], [1, 1], [1, 1], [0, 1]],
        "s": 1,
        "shocks": {"magnitude": {"law": "exponential", "rate": 1}, "t": 2, "beta": 1, "alpha": [2, 1.5]},
        "ubgesm": {"initial": [8, 1, 1], "s": 2, "p": 1},
    }
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    (tmp_path / "d.csv").write_text("system_id,failure_state_index\na,1\nb,3\n")
    return tmp_path


def test_cli_infer(workdir, capsys):
    assert cli.main(["infer", "--config", str(workdir / "cfg.json"), "--data", str(workdir / "d.csv")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["m"] == 2
    assert abs(sum(out["predictive"]["pmf"]) + out["predictive"]["tail"] - 1) < 1e-12


def test_cli_infer_csv(workdir, capsys):
    assert cli.main(["infer", "--config", str(workdir / "cfg.json"), "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("state,pmf,survival")


def test_cli_input_errors(workdir, capsys):
    assert cli.main(["infer", "--config", str(workdir / "missing.json")]) == 2
    (workdir / "bad.csv").write_text("system_id,failure_state_index\na,9\n")
    assert cli.main(["infer", "--config", str(workdir / "cfg.json"), "--data", str(workdir / "bad.csv")]) == 2
    (workdir / "empty.json").write_text("{}")
    assert cli.main(["infer", "--config", str(workdir / "empty.json")]) == 2
    capsys.readouterr()


def test_cli_validate_pass_and_fail(workdir, monkeypatch, capsys):
    args = ["validate", "--config", str(workdir / "cfg.json"), "--data", str(workdir / "d.csv"), "--replicates", "5000"]
    assert cli.main(args + ["--seed", "3"]) == 0
    # an impossible bound forces a failure verdict
    assert cli.main(args + ["--seed", "3", "--z-bound", "0"]) == 1
    capsys.readouterr()


@pytest.mark.parametrize("model", ["rup", "classical", "generalized", "ubgesm"])
def test_cli_simulate_models(workdir, model, capsys):
    assert cli.main(["simulate", "--config", str(workdir / "cfg.json"), "--model", model, "--replicates", "4", "--seed", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["results"]) == 4


def test_cli_posterior_and_demo(workdir, capsys):
    assert cli.main(["posterior", "--config", str(workdir / "cfg.json"), "--data", str(workdir / "d.csv"), "--samples", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["posterior"]["failure"] == [1, 2, 1, 2]
    assert len(out["sampled_cdfs"]) == 3
    assert cli.main(["demo", "bar-loading", "--bars", "4", "--seed", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bars"] == 4
