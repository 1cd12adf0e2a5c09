import json
import subprocess
import sys

import numpy as np
import pytest

from stieltjes_pade.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(path, obj):
    path.write_text(json.dumps(obj))
    return path


@pytest.fixture
def files(tmp_path):
    return {
        "zero": write(tmp_path / "zero.json", {"atoms": [], "density": None}),
        "two": write(tmp_path / "two.json", {"atoms": [{"z": 0.25, "lambda": 0.3},
                                                       {"z": 0.75, "lambda": 0.2}]}),
        "one": write(tmp_path / "one.json", {"atoms": [{"z": 0.5, "lambda": 0.5}]}),
        "pair": write(tmp_path / "pair.json", {"atoms": [{"z": 0.25, "lambda": 0.25},
                                                         {"z": 0.75, "lambda": 0.25}]}),
        "lam": write(tmp_path / "lam.json", {"atoms": [{"z": 0.0, "lambda": 0.3}]}),
        "dir": tmp_path,
    }


def parse_csv(text):
    lines = text.strip().splitlines()
    return lines[0].split(","), np.array([[float(v) for v in l.split(",")] for l in lines[1:]])


class TestForward:
    def test_laminate(self, capsys):
        code, out, _ = run(["forward", "--model", "laminate_parallel", "--p", "0.3",
                            "--s", "2,3,4"], capsys)
        header, rows = parse_csv(out)
        assert code == 0 and header == ["re_s", "im_s", "re_F", "im_F"]
        np.testing.assert_allclose(rows[:, 2], [0.15, 0.1, 0.075], rtol=1e-15)

    def test_zero_measure(self, capsys, files):
        code, out, _ = run(["forward", "--measure", files["zero"], "--s", "2,1+1j"], capsys)
        assert code == 0 and not np.any(parse_csv(out)[1][:, 2:])

    def test_checkerboard(self, capsys):
        _, out, _ = run(["forward", "--model", "checkerboard_5050", "--s", "2"], capsys)
        assert parse_csv(out)[1][0, 2] == pytest.approx(1 - np.sqrt(0.5), rel=1e-15)

    def test_cut(self, capsys):
        code, _, err = run(["forward", "--model", "checkerboard_5050", "--s", "2,0.5"], capsys)
        assert code != 0 and "cut" in err

    def test_needs_one_source(self, capsys, files):
        assert run(["forward", "--s", "2"], capsys)[0] == 2

    def test_noisy_output_deterministic(self, capsys):
        argv = ["--seed", "4", "forward", "--model", "checkerboard_5050", "--sweep", "12",
                "--noise", "0.01"]
        assert run(argv, capsys)[1] == run(argv, capsys)[1]


class TestReconstruct:
    def make_data(self, files, capsys, n=12):
        path = files["dir"] / "two.csv"
        run(["forward", "--measure", files["two"], "--sweep", n, "-o", path], capsys)
        return path

    def test_two_atoms(self, capsys, files):
        data = self.make_data(files, capsys)
        out_json = files["dir"] / "r.json"
        code, out, _ = run(["reconstruct", data, "--M", "2", "-o", out_json], capsys)
        assert code == 0 and "mu_0" in out
        result = json.loads(out_json.read_text())
        np.testing.assert_allclose(result["moments"][:5], [0.5, 0.225, 0.13125, 0.0890625,
                                                           0.064453125], rtol=1e-5)

    def test_too_many_poles(self, capsys, files):
        code, _, err = run(["reconstruct", self.make_data(files, capsys), "--M", "7"], capsys)
        assert code == 2 and "p+q+1 ≤ N" in err

    def test_empty_csv(self, capsys, files):
        path = files["dir"] / "empty.csv"
        path.write_text("")
        assert run(["reconstruct", path, "--M", "1"], capsys)[0] == 2

    def test_missing_file(self, capsys, files):
        assert run(["reconstruct", files["dir"] / "nope.csv", "--M", "1"], capsys)[0] == 2

    def test_not_converged(self, capsys, files):
        path = files["dir"] / "cb.csv"
        run(["forward", "--model", "checkerboard_5050", "--sweep", "12", "-o", path], capsys)
        out_json = files["dir"] / "best.json"
        code, _, _ = run(["reconstruct", path, "--M", "3", "--max-iterations", "1",
                          "-o", out_json], capsys)
        assert code == 3
        result = json.loads(out_json.read_text())
        assert result["converged"] is False and result["diagnostics"]

    def test_deterministic_json(self, capsys, files):
        path = files["dir"] / "cb.csv"
        run(["forward", "--model", "checkerboard_5050", "--sweep", "12", "--noise", "0.02",
             "-o", path], capsys)
        outs = []
        for k in range(2):
            target = files["dir"] / f"r{k}.json"
            run(["--seed", "9", "reconstruct", path, "--M", "3", "-o", target], capsys)
            outs.append(target.read_bytes())
        assert outs[0] == outs[1]


class TestEquivalence:
    def test_identical(self, capsys, files):
        code, out, _ = run(["equivalence", files["two"], files["two"], "--N", "6"], capsys)
        rows = [l.split() for l in out.splitlines()[1:]]
        assert code == 0 and all(r[1] == r[2] == "True" for r in rows) and len(rows) == 6

    def test_matched_pair(self, capsys, files):
        _, out, _ = run(["equivalence", files["one"], files["pair"], "--N", "3"], capsys)
        rows = {int(l.split()[0]): l.split()[1:3] for l in out.splitlines()[1:]}
        assert rows[2] == ["True", "True"] and rows[3] == ["False", "False"]

    def test_zero_vs_laminate(self, capsys, files):
        _, out, _ = run(["equivalence", files["zero"], files["lam"], "--N", "1"], capsys)
        assert out.splitlines()[1].split()[1:3] == ["False", "False"]


class TestPadeAndMoments:
    def test_moments(self, capsys, files):
        code, out, _ = run(["moments", "--measure", files["two"], "--count", "3"], capsys)
        values = [float(l.split()[1]) for l in out.splitlines()]
        assert code == 0
        np.testing.assert_allclose(values, [0.5, 0.225, 0.13125], rtol=1e-15)

    def test_pade_two_atoms(self, capsys, files):
        code, out, err = run(["pade", "--measure", files["two"], "--M", "2"], capsys)
        obj = json.loads(out)
        assert code == 0 and obj["accuracy"]["passed"]
        pairs = obj["s_form"]["pairs"]
        np.testing.assert_allclose([p["pole"] for p in pairs], [0.25, 0.75], atol=1e-12)

    def test_pade_G(self, capsys):
        code, out, _ = run(["pade", "--model", "checkerboard_5050", "--M", "3", "--L", "3",
                            "--target", "G"], capsys)
        assert code == 0 and json.loads(out)["target"] == "G"


class TestBenchmark:
    def test_roundtrip_seed_7(self, capsys):
        code, out, _ = run(["--seed", "7", "benchmark", "roundtrip"], capsys)
        assert code == 0 and out.count("PASS") == 4 and "FAIL" not in out

    def test_unknown_suite(self, capsys):
        assert run(["benchmark", "nope"], capsys)[0] == 2

    def test_noise_table(self, capsys):
        code, out, _ = run(["benchmark", "noise"], capsys)
        assert code == 0 and "mu_4" in out and "median" in out


def test_console_script_exit_codes(tmp_path):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    proc = subprocess.run([sys.executable, "-m", "stieltjes_pade.cli", "reconstruct", str(empty),
                           "--M", "1"], capture_output=True, text=True)
    assert proc.returncode == 2 and "empty" in proc.stderr
    proc = subprocess.run([sys.executable, "-m", "stieltjes_pade.cli", "forward", "--model",
                           "laminate_parallel", "--p", "0.3", "--s", "2"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("re_s,im_s,re_F,im_F")
