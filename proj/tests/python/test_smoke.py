"""Smoke tests for the Python surface of the separable-phase library.

The compiled module is put on PYTHONPATH by the build; MADELUNG_CONFIG_DIR
points at the repository's configuration documents.
"""

import json
import math
import os
import pathlib

import pytest

import madelung

CONFIG_DIR = pathlib.Path(os.environ["MADELUNG_CONFIG_DIR"])
FREE_SMOKE = CONFIG_DIR / "free_particle_smoke.json"
GUIDE_SMOKE = CONFIG_DIR / "waveguide_n1_smoke.json"


def test_focal_time_constant_for_both_packet_sets():
    assert madelung.free_particle_c2(0.1, 0.5, 0.8) == pytest.approx(2.0, abs=1e-12)
    assert madelung.free_particle_c2(0.1, 0.5, 0.2) == pytest.approx(2.0, abs=1e-12)
    assert madelung.free_particle_c2(0.1, 0.5, 0.8, sign=-1) == pytest.approx(
        -2.0, abs=1e-12
    )


def test_packet_fields_at_start():
    f = madelung.free_particle_fields(1.0, 0.0)
    assert f["A"] == pytest.approx(math.exp(-0.1), abs=1e-12)
    assert f["V_B"] == pytest.approx(0.08, abs=1e-12)


def test_rigid_shift_density_is_a_translated_gaussian():
    f = madelung.waveguide_n1(0.7, 1.3)
    shift = 0.7 - math.sin(1.3)
    assert f["density"] == pytest.approx(math.exp(-2.0 * shift * shift), abs=1e-12)


def test_lattice_flow_closed_form():
    assert madelung.waveguide_flow(2, 2.0, 0.3) == pytest.approx(1.445, abs=1e-12)
    below = madelung.waveguide_flow(2, -1.0, 0.3)
    assert abs(below.imag) > 1e-3  # complex regime below zero


def test_sample_is_consistent():
    s = madelung.sample(str(FREE_SMOKE), 1.5, 2.0)
    assert s["V"] == 0
    want = s["A"] * complex(math.cos(s["S"].real), math.sin(s["S"].real))
    assert abs(s["psi"] - want) < 1e-12


def test_run_writes_artifacts_and_report(tmp_path):
    result = madelung.run(str(FREE_SMOKE), out_dir=str(tmp_path), threads=2)
    assert result["passed"]
    report = json.loads(result["report"])
    assert report["scenario"] == "free_particle"
    assert report["config_hash"] == madelung.config_hash(str(FREE_SMOKE))
    for path in result["artifacts"]:
        assert pathlib.Path(path).is_file()
    assert any("density" in pathlib.Path(p).name for p in result["artifacts"])


def test_runs_byte_reproduce_across_thread_counts(tmp_path):
    one = madelung.run(str(FREE_SMOKE), out_dir=str(tmp_path / "one"), threads=1)
    two = madelung.run(str(FREE_SMOKE), out_dir=str(tmp_path / "two"), threads=3)
    csv_of = lambda res: next(
        p for p in res["artifacts"] if pathlib.Path(p).name.startswith("density")
    )
    diff = madelung.compare_csv(csv_of(one), csv_of(two), 0.0)
    assert diff["passed"] and diff["max_abs"] == 0.0


def test_verify_reports_passing_residuals(tmp_path):
    result = madelung.verify(str(GUIDE_SMOKE), out_dir=str(tmp_path))
    assert result["passed"]
    report = json.loads(result["report"])
    residuals = report["residuals"]
    assert {r["equation"] for r in residuals} == {"schrodinger", "continuity", "qhj"}
    assert all(r["passed"] and r["skipped"] == 0 for r in residuals)


def test_invalid_config_raises_module_error():
    with pytest.raises(madelung.Error):
        madelung.run('{"scenario": "maze"}')


def test_canonical_config_materializes_defaults():
    canonical = json.loads(
        madelung.canonical_config('{"scenario": "free_particle", "params": '
                                  '{"eta": 0.1, "kappa": 0.5, "c1": 0.8}}')
    )
    assert canonical["grid"]["nx"] == 201
    assert canonical["route"] == "closed"
    assert set(madelung.allowed_outputs()) >= set(canonical["outputs"])
