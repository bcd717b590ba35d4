import json
import math

import numpy as np
import pytest

from gaussimag.cli import main
from gaussimag.states import coherent_state


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def coherent_file(tmp_path):
    return write_json(tmp_path / "coherent.json", coherent_state([1j]).to_dict())


@pytest.fixture
def sweep_spec(tmp_path):
    return write_json(
        tmp_path / "sweep.json",
        {
            "family": "coherent",
            "axis": "im_alpha",
            "grid": {"start": -2.0, "stop": 2.0, "count": 9},
            "fixed": {"re_alpha": 0.0},
            "mu": 0.5,
        },
    )


@pytest.fixture
def dynamics_spec(tmp_path):
    return write_json(
        tmp_path / "dynamics.json",
        {
            "family": "sv_dynamics",
            "axis": "t",
            "grid": {"start": 0.0, "stop": 60.0, "count": 61},
            "fixed": {"r": 1.0, "n_th": 1.5, "R": 1.0, "phi": 15.0, "lam": 0.1},
        },
    )


class TestValidate:
    def test_valid_state(self, coherent_file, capsys):
        assert main(["validate", coherent_file]) == 0
        out = capsys.readouterr().out
        assert "valid" in out
        assert "is_real=False" in out

    def test_uncertainty_violation(self, tmp_path, capsys):
        path = write_json(
            tmp_path / "bad.json", {"n": 1, "d": [0.0, 0.0], "cm": [[0.5, 0.0], [0.0, 0.5]]}
        )
        assert main(["validate", path]) == 1
        assert "UncertaintyViolation" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["validate", str(path)]) == 2
        assert "parse error" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == 2

    def test_unrecognized_schema(self, tmp_path):
        path = write_json(tmp_path / "what.json", {"foo": 1})
        assert main(["validate", path]) == 2

    def test_valid_channel(self, tmp_path, capsys):
        path = write_json(
            tmp_path / "chan.json",
            {"n": 1, "T": [[1.0, 0.0], [0.0, 1.0]], "N": [[0.0, 0.0], [0.0, 0.0]], "d0": [0.0, 0.0]},
        )
        assert main(["validate", path]) == 0
        assert "realness=covariant_real" in capsys.readouterr().out

    def test_unphysical_channel(self, tmp_path, capsys):
        path = write_json(
            tmp_path / "chan.json",
            {"n": 1, "T": [[2.0, 0.0], [0.0, 2.0]], "N": [[0.0, 0.0], [0.0, 0.0]], "d0": [0.0, 0.0]},
        )
        assert main(["validate", path]) == 1
        assert "PhysicalityViolation" in capsys.readouterr().err


class TestMeasure:
    def test_json_output(self, coherent_file, capsys):
        assert main(["measure", coherent_file]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["imaginarity"] == 1.0
        assert report["fidelity_imaginarity"] == pytest.approx(1 - math.exp(-2), abs=1e-10)
        assert report["tsallis_imaginarity"] == pytest.approx(1 - math.exp(-4), abs=1e-10)
        assert report["h_term"] == 1
        assert report["fidelity_error"] is None

    def test_csv_output(self, coherent_file, capsys):
        assert main(["measure", coherent_file, "--format", "csv"]) == 0
        header, row = capsys.readouterr().out.strip().splitlines()
        assert header.startswith("imaginarity,fidelity_imaginarity,tsallis_imaginarity")
        assert float(row.split(",")[0]) == 1.0

    def test_custom_mu(self, coherent_file, capsys):
        assert main(["measure", coherent_file, "--mu", "0.25"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["mu"] == 0.25

    def test_invalid_state_exits_one(self, tmp_path):
        path = write_json(
            tmp_path / "bad.json", {"n": 1, "d": [0.0, 0.0], "cm": [[0.5, 0.0], [0.0, 0.5]]}
        )
        assert main(["measure", path]) == 1

    def test_real_squeezed_all_zero(self, tmp_path, capsys):
        from gaussimag.states import displaced_squeezed_thermal

        path = write_json(tmp_path / "sq.json", displaced_squeezed_thermal(0.5, 0.9, 1.5).to_dict())
        assert main(["measure", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert abs(report["imaginarity"]) <= 1e-10
        assert abs(report["fidelity_imaginarity"]) <= 1e-10
        assert abs(report["tsallis_imaginarity"]) <= 1e-10


class TestSweep:
    def test_step_function_of_coherent_family(self, sweep_spec, capsys):
        assert main(["sweep", sweep_spec]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "axis,i_gn,m_f,m_t"
        assert len(lines) == 10
        for line in lines[1:]:
            axis, ign, mf, mt = (float(x) for x in line.split(","))
            assert ign == (0.0 if axis == 0.0 else 1.0)
            assert mf == pytest.approx(1 - math.exp(-2 * axis**2), abs=1e-9)

    def test_output_file_and_byte_stability(self, sweep_spec, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", sweep_spec, "--out", str(out1)]) == 0
        assert main(["sweep", sweep_spec, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_squeezed_strength_axis(self, tmp_path, capsys):
        spec = write_json(
            tmp_path / "sq.json",
            {
                "family": "squeezed",
                "axis": "s",
                "grid": {"start": 0.0, "stop": 10.0, "count": 6},
                "fixed": {},
            },
        )
        assert main(["sweep", spec]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        for line in lines[1:]:
            s, ign, mf, mt = (float(x) for x in line.split(","))
            assert ign == pytest.approx(1 - 1 / (1 + s), abs=1e-9)
            assert mt == pytest.approx(1 - (1 + s) ** -0.5, abs=1e-9)
            if s > 0:
                assert ign > mt > mf > 0

    def test_single_point_grid_rejected(self, tmp_path, capsys):
        spec = write_json(
            tmp_path / "degenerate.json",
            {
                "family": "coherent",
                "axis": "im_alpha",
                "grid": {"start": 0.0, "stop": 0.0, "count": 1},
                "fixed": {},
            },
        )
        assert main(["sweep", spec]) == 1
        assert "count" in capsys.readouterr().err

    def test_unknown_axis_rejected(self, tmp_path):
        spec = write_json(
            tmp_path / "bad_axis.json",
            {
                "family": "coherent",
                "axis": "r",
                "grid": {"start": 0.0, "stop": 1.0, "count": 3},
                "fixed": {},
            },
        )
        assert main(["sweep", spec]) == 1

    def test_malformed_spec_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[[[")
        assert main(["sweep", str(path)]) == 2


class TestDynamics:
    def test_dual_path_columns_agree(self, dynamics_spec, capsys):
        assert main(["dynamics", dynamics_spec]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "t,i_gn,i_gn_closed,h_term"
        assert len(lines) == 62
        values = []
        for line in lines[1:]:
            t, ign, closed, h = line.split(",")
            assert abs(float(ign) - float(closed)) <= 1e-9
            assert h == "0"
            values.append(float(ign))
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def test_coherent_family_floor(self, tmp_path, capsys):
        spec = write_json(
            tmp_path / "coh_dyn.json",
            {
                "family": "coherent_dynamics",
                "axis": "t",
                "grid": {"start": 0.0, "stop": 60.0, "count": 31},
                "fixed": {"im_alpha1": 1.0, "n_th": 1.5, "R": 1.0, "phi": 15.0, "lam": 0.1},
            },
        )
        assert main(["dynamics", spec]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        first = lines[1].split(",")
        assert float(first[1]) == 1.0
        for line in lines[1:]:
            _, ign, closed, h = line.split(",")
            assert float(ign) >= 1.0
            assert h == "1"
            assert abs(float(ign) - float(closed)) <= 1e-9

    def test_indicator_flip_noted_on_stderr(self, tmp_path, capsys):
        # coarse zero threshold: the decaying displacement crosses it in-window
        spec = write_json(
            tmp_path / "flip.json",
            {
                "family": "coherent_dynamics",
                "axis": "t",
                "grid": {"start": 0.0, "stop": 10.0, "count": 21},
                "fixed": {"im_alpha1": 1e-3, "n_th": 0.5, "R": 0.3, "phi": 1.0, "lam": 2.0},
                "zero_tol": 1e-4,
            },
        )
        assert main(["dynamics", spec]) == 0
        captured = capsys.readouterr()
        assert "indicator term flipped" in captured.err
        rows = [line.split(",") for line in captured.out.strip().splitlines()[1:]]
        assert rows[0][3] == "1" and rows[-1][3] == "0"

    def test_sweep_family_rejected(self, sweep_spec):
        assert main(["dynamics", sweep_spec]) == 1

    def test_wrong_axis_rejected(self, tmp_path):
        spec = write_json(
            tmp_path / "bad.json",
            {
                "family": "sv_dynamics",
                "axis": "phi",
                "grid": {"start": 0.0, "stop": 1.0, "count": 3},
                "fixed": {"r": 1.0, "n_th": 1.5, "R": 1.0, "lam": 0.1, "t": 1.0},
            },
        )
        assert main(["dynamics", spec]) == 1

    def test_missing_bath_parameter(self, tmp_path):
        spec = write_json(
            tmp_path / "missing.json",
            {
                "family": "sv_dynamics",
                "axis": "t",
                "grid": {"start": 0.0, "stop": 1.0, "count": 3},
                "fixed": {"r": 1.0, "n_th": 1.5, "R": 1.0},
            },
        )
        assert main(["dynamics", spec]) == 1

    def test_phi_sweep_through_sweep_command(self, tmp_path, capsys):
        spec = write_json(
            tmp_path / "phi.json",
            {
                "family": "sv_dynamics",
                "axis": "phi",
                "grid": {"start": 0.0, "stop": 4 * np.pi, "count": 17},
                "fixed": {"r": 1.0, "n_th": 1.5, "R": 1.0, "lam": 0.1, "t": 2.0},
            },
        )
        assert main(["sweep", spec]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        vals = [float(line.split(",")[1]) for line in lines[1:]]
        assert max(vals) - min(vals) > 1e-3


class TestFuzzCommand:
    def test_passing_suite(self, capsys):
        assert main(["fuzz", "--suite", "williamson", "--count", "50"]) == 0
        out = capsys.readouterr().out
        assert "failures=0" in out

    def test_unknown_suite(self, capsys):
        assert main(["fuzz", "--suite", "bogus"]) == 2

    def test_negative_tolerance_forces_failures(self, capsys):
        assert main(["fuzz", "--suite", "monotonicity", "--count", "20", "--tol", "-1"]) == 1
        out = capsys.readouterr().out
        assert "failures=0" not in out
        assert "FAIL case=0 seed=(0,0)" in out
        assert main(["fuzz", "--suite", "williamson", "--count", "10", "--tol", "-1"]) == 1
        assert "failures=10" in capsys.readouterr().out

    def test_seeded_reproducibility(self, capsys):
        assert main(["fuzz", "--suite", "faithfulness", "--count", "30", "--seed", "5"]) == 0
        first = capsys.readouterr().out
        assert main(["fuzz", "--suite", "faithfulness", "--count", "30", "--seed", "5"]) == 0
        assert capsys.readouterr().out == first


class TestUsageErrors:
    def test_no_command(self):
        assert main([]) == 2

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2
