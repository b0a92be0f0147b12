import json
import math
import subprocess
import sys

import pytest

from sector_dirac.cli import main
from sector_dirac.io import parse_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("omega, code", [(1.0, 0), (2.4, 0), (4.0, 2)])
def test_classify_exit_codes(capsys, omega, code):
    assert run(capsys, "classify", "--omega", str(omega))[0] == code


def test_classify_output(capsys):
    code, out, _ = run(capsys, "classify", "--omega-frac", "3", "4")
    assert code == 0
    assert "κ = 0: DeficiencyOne" in out and "κ = 1: SelfAdjoint" in out


def test_missing_omega_is_input_error(capsys):
    code, _, err = run(capsys, "classify")
    assert code == 2 and "omega" in err


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["classify", "--bogus"])
    assert info.value.code == 2


def test_extension_verdicts(capsys):
    _, out, _ = run(capsys, "extension", "--omega-frac", "3", "4", "--gamma-phase", "0")
    assert out.split() == ["C:", "pass", "scaling:", "pass", "H^1/2:", "pass"]
    _, out, _ = run(capsys, "extension", "--omega-frac", "3", "4", "--gamma-phase",
                    str(math.pi / 2))
    assert out.count("fail") == 3


def test_bessel_report(tmp_path, capsys):
    path = tmp_path / "k.json"
    code, _, _ = run(capsys, "bessel", "--nu", "0.5", "--r", "1", "--r", "2",
                     "--output", str(path))
    assert code == 0
    cfg, res = parse_report(path.read_text())
    assert cfg.nu == 0.5 and res["r"] == [1.0, 2.0]
    want = [math.sqrt(math.pi / (2 * r)) * math.exp(-r) for r in (1.0, 2.0)]
    assert all(abs(k / w - 1) < 1e-14 for k, w in zip(res["K"], want))


def test_spectrum_writes_json_and_csv(tmp_path, capsys):
    path = tmp_path / "spectrum.json"
    code, _, _ = run(capsys, "spectrum", "--omega-frac", "1", "3", "--mass", "1",
                     "--n-modes", "4", "--n-r", "200", "--r-max", "10", "--n-eigs", "6",
                     "--output", str(path))
    assert code == 0
    cfg, res = parse_report(path.read_text())
    assert cfg.n_modes == 4 and cfg.mass == 1.0
    csv = (tmp_path / "spectrum.csv").read_text().splitlines()
    assert csv[0] == "index,eigenvalue" and len(csv) == 7
    eigs = sorted(float(line.split(",")[1]) for line in csv[1:])
    assert min(abs(e) for e in eigs) > 0.95


def test_spectrum_is_deterministic(tmp_path, capsys):
    args = ["spectrum", "--omega-frac", "3", "4", "--mass", "1", "--n-modes", "4",
            "--n-r", "800", "--r-max", "10", "--n-eigs", "4"]
    texts = []
    for i in range(2):
        path = tmp_path / f"s{i}.csv"
        assert run(capsys, *args, "--output", str(path), "--format", "csv")[0] == 0
        texts.append(path.read_text())
    assert texts[0] == texts[1]


def test_sweep(tmp_path, capsys):
    path = tmp_path / "sw.json"
    code, out, _ = run(capsys, "spectrum", "--omega-frac", "1", "3", "--mass", "1",
                       "--n-modes", "2", "--n-r", "100", "--r-max", "5", "--n-eigs", "2",
                       "--output", str(path), "--sweep", "mass=0.5,1.5")
    assert code == 0
    masses = [parse_report((tmp_path / f"sw_{i:03d}.json").read_text())[0].mass
              for i in range(2)]
    assert masses == [0.5, 1.5]
    assert run(capsys, "spectrum", "--omega", "1", "--sweep", "colour=1,2")[0] == 2


def test_polygon_command(tmp_path, capsys):
    good = tmp_path / "l.json"
    good.write_text("[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]")
    code, out, _ = run(capsys, "polygon", str(good))
    assert code == 0 and "ExtensionsRequired(1)" in out
    bad = tmp_path / "bad.json"
    bad.write_text("[[0,0],[1,0]")
    code, _, err = run(capsys, "polygon", str(bad))
    assert code == 2 and "bad.json:" in err
    assert run(capsys, "polygon", str(tmp_path / "missing.json"))[0] == 2


def test_weyl_command(capsys):
    from sector_dirac.spectra import weyl_quotient_positive_mass

    code, out, _ = run(capsys, "weyl", "--mass", "1", "--lam", "2", "--n", "4")
    assert code == 0
    assert float(out.split("=")[-1]) == weyl_quotient_positive_mass(4.0, 1.0, 2.0)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sector_dirac", "classify", "--omega", "1.0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "SelfAdjoint" in proc.stdout
