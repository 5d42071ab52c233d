import csv
import io
import json
import math

import numpy as np
import pytest

from cylwell.cli import main
from cylwell.spectrum import QuantumNumbers, WellGeometry
from cylwell.wavefunction import density_array

import frozen


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_emax(capsys):
    code, out, _ = run(capsys, "spectrum", "--a", "1", "--H", "1", "--emax", "8")
    assert code == 0
    r = rows(out)
    assert len(r) == 1
    assert r[0]["states"] == "(1,0,1,0)" and r[0]["multiplicity"] == "1"
    assert float(r[0]["energy"]) == pytest.approx(frozen.E_GROUND, rel=1e-11)
    assert out.endswith("\n")


def test_spectrum_count_and_order(capsys):
    code, out, _ = run(capsys, "spectrum", "--count", "10")
    assert code == 0
    r = rows(out)
    assert len(r) == 10
    assert r == sorted(r, key=lambda row: float(row["energy"]))
    assert [int(x["index"]) for x in r] == list(range(1, 11))


def test_spectrum_errors(capsys):
    code, _, err = run(capsys, "spectrum", "--emax", "1")
    assert code == 2 and "ground-state" in err
    code, _, err = run(capsys, "spectrum", "--a", "-1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--emax", "10", "--count", "3"])
    assert exc.value.code == 2


def test_spectrum_json_round_trip(capsys):
    _, out, _ = run(capsys, "spectrum", "--count", "6", "--format", "json", "--H", "1.7")
    data = json.loads(out)
    from cylwell.spectrum import lowest_levels

    levels = lowest_levels(WellGeometry(H=1.7), 6)
    for got, lv in zip(data["levels"], levels):
        assert float(f"{got['energy']:.15g}") == float(f"{lv.energy:.15g}")
        assert got["energy"] == lv.energy
        assert [tuple(s) for s in got["states"]] == [s.as_tuple() for s in lv.states]


def test_deterministic_output(capsys):
    _, a, _ = run(capsys, "density", "--nr", "2", "--nphi", "1", "--nz", "1", "--format", "json")
    _, b, _ = run(capsys, "density", "--nr", "2", "--nphi", "1", "--nz", "1", "--format", "json")
    assert a == b


def test_radial_csv(capsys):
    code, out, _ = run(capsys, "radial", "--nr", "1", "--nphi", "0", "--samples", "51")
    assert code == 0
    assert out.splitlines()[0] == "r,R"
    r = rows(out)
    assert len(r) == 51
    assert float(r[0]["R"]) > 0
    assert float(r[0]["R"]) == pytest.approx(frozen.R10_AT_AXIS, rel=1e-11)
    assert float(r[-1]["r"]) == 1.0 and float(r[-1]["R"]) == 0.0


def test_radial_rejects_bad_quantum_numbers(capsys):
    code, _, err = run(capsys, "radial", "--nr", "0", "--nphi", "0")
    assert code == 2 and "n_r" in err


def test_density_axis_zero_for_nphi1(capsys):
    code, out, _ = run(capsys, "density", "--nr", "1", "--nphi", "1", "--nz", "1", "--p", "1",
                       "--r-samples", "21", "--z-samples", "21")
    assert code == 0
    r = rows(out)
    assert len(r) == 21 * 21
    assert all(float(x["density"]) >= 0 for x in r)
    assert all(float(x["density"]) == 0.0 for x in r if float(x["c1"]) == 0.0)


def test_density_ground_max_on_axis(capsys):
    _, out, _ = run(capsys, "density", "--nr", "1", "--nphi", "0", "--nz", "1", "--slice", "axial",
                    "--r-samples", "31", "--phi-samples", "4")
    r = rows(out)
    top = max(r, key=lambda x: float(x["density"]))
    assert float(top["c1"]) == 0.0


def test_density_slice_outside(capsys):
    code, _, err = run(capsys, "density", "--nr", "1", "--nphi", "0", "--nz", "1", "--slice", "axial",
                       "--z0", "2")
    assert code == 2


def test_riemann_sum_of_density_is_one():
    # midpoint Riemann sum at 100^3 cells
    geom = WellGeometry()
    n = 100
    r = (np.arange(n) + 0.5) / n
    z = (np.arange(n) + 0.5) / n
    for state in [QuantumNumbers(1, 0, 1), QuantumNumbers(1, 1, 1, -1), QuantumNumbers(2, 2, 2)]:
        d = density_array(geom, state, r[:, None], z[None, :])
        # the density does not depend on phi, so the phi sum is exact
        total = np.sum(d * r[:, None]) * (1 / n) * (1 / n) * (2 * math.pi)
        assert abs(total - 1) <= 1e-2


def test_verify_fd(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fd", "--grid", "2000")
    assert code == 0
    r = {x["name"]: x for x in rows(out)}
    assert float(r["fd.eigenvalues"]["value"]) <= 1e-4
    assert r["fd.eigenvalues"]["passed"] == "pass"


def test_verify_failure_named(capsys):
    code, out, err = run(capsys, "verify", "--suite", "fd", "--grid", "400", "--tol", "fd=1e-12")
    assert code == 1
    assert "fd.eigenvalues" in err


def test_verify_usage_errors(capsys):
    code, _, _ = run(capsys, "verify", "--tol", "bogus=1")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--tol", "fd")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_verify_default_json(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert {c["name"].split(".")[0] for c in data["checks"]} == {"bessel", "spectrum", "norm", "fd", "ortho"}


def test_output_file_and_env_dir(tmp_path, monkeypatch, capsys):
    target = tmp_path / "a.csv"
    assert main(["radial", "--nr", "1", "--nphi", "0", "--samples", "5", "--output", str(target)]) == 0
    assert target.read_text().startswith("r,R\n")
    monkeypatch.setenv("CYLWELL_OUTPUT_DIR", str(tmp_path / "out"))
    assert main(["spectrum", "--count", "3"]) == 0
    assert (tmp_path / "out" / "spectrum.csv").exists()
    assert main(["spectrum", "--count", "3", "--format", "json", "-o", "s.json"]) == 0
    assert json.loads((tmp_path / "out" / "s.json").read_text())["levels"]
    assert capsys.readouterr().out == ""


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "cylwell", "spectrum", "--emax", "8"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("1,7.82639518202,1,")
