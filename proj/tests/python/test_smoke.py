import json
import math
import os
import subprocess

import pytest

import torusfield as tf


def test_shells():
    assert len(tf.enumerate_shell(1)) == 6
    assert len(tf.enumerate_shell(2)) == 12
    assert len(tf.enumerate_shell(7)) == 0
    assert not tf.is_sum_of_three_squares(28)
    assert tf.is_admissible(11) and not tf.is_admissible(4)
    with pytest.raises(ValueError):
        tf.is_sum_of_three_squares(0)


def test_riesz_unit_shell():
    rep = tf.riesz_energy(tf.enumerate_shell(1), 1.0)
    assert rep.value == pytest.approx(3 + 12 * math.sqrt(2), rel=1e-12)
    assert rep.normalized == pytest.approx(rep.value / 36)


def test_curve_and_frenet():
    c = tf.make_curve("planar-circle", [0.25])
    assert c.length == pytest.approx(math.pi / 2)
    f = tf.frenet(c, 0.3)
    assert f.kappa == pytest.approx(4.0)
    assert abs(f.tau) < 1e-9


def test_sine_wave_zero_count():
    seg = tf.make_curve("straight-segment", [0, 0.3, 0.7, 1, 0.3, 0.7])
    z = tf.count_zeros(tf.sine_wave(2), seg, 4, 32)
    assert z["count"] == 4
    assert tf.analytic_zero_count(2, 0.0, 1.0) == 4


def test_kac_rice_zero_jet():
    jet = tf.CovarianceJet(0.0, 0.0, 0.0, 0.0)
    assert tf.k2_correlation(jet, 3) == pytest.approx(tf.k1_density(3) ** 2, rel=1e-14)


def test_wave_eigen_identity():
    w = tf.sample_wave(tf.enumerate_shell(11), 5)
    value, _, hessian = w.jet([0.1, 0.2, 0.3])
    assert hessian.trace() == pytest.approx(-4 * math.pi**2 * 11 * value, rel=1e-9)


def test_run_experiment_records():
    recs = tf.run("energies = 3, 7, 11\n", experiment="shell-census", timestamp="t0")
    assert [r["N_E"] for r in recs[:3]] == [8, 0, 24]
    assert recs[-1]["aggregate"] and recs[-1]["payload"]["admissible_empty"] == 0


def test_unknown_key_rejected():
    with pytest.raises(ValueError):
        tf.run("energies = 3\nbogus = 1\n", experiment="shell-census")


@pytest.mark.skipif("TORUSFIELD_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_expectation(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("energies = 11, 7\ncurve_kind = torus-helix\ncurve_params = 0.25\ntrials = 20\n")
    out = tmp_path / "run.jsonl"
    cli = os.environ["TORUSFIELD_CLI"]
    subprocess.run([cli, "expectation", "--config", str(cfg), "--out", str(out), "--seed", "3"], check=True)
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows[0]["status"] == "rejected" and rows[0]["E"] == 7
    assert rows[1]["trials"] == 20 and rows[1]["seed"] == 3
    header = (tmp_path / "run.csv").read_text().splitlines()[0]
    assert header.startswith("experiment,E,N_E")
