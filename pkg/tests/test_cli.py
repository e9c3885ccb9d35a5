import json

import pytest

from bcdual.cli import load_config, main, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_picard_solve(capsys):
    code, out, _ = run(capsys, "picard", "solve")
    assert code == 0
    assert out.splitlines()[:3] == ["I_2 = S^2 ^ S<det> ^ P", "48*1+74 = 122 == -22 (mod 144)",
                                    "I_2 ^ V(1) = Sigma^-22 V(1)"]


def test_picard_solve_json(capsys):
    code, out, _ = run(capsys, "picard", "solve", "--json")
    data = json.loads(out)
    assert code == 0 and (data["a"], data["b"], data["v1_shift"]) == (1, 0, 122)


def test_picard_shift_not_suspension(capsys):
    code, out, err = run(capsys, "picard", "shift", "0", "0", "0", "1")
    assert code == 1


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "G24", "--s-max", "2", "--t-range=-10..10")
    assert code == 0 and "PASS" in out


def test_specseq_validate(capsys):
    code, out, _ = run(capsys, "specseq", "validate", "g24", "G24", "--stem-min", "0", "--stem-max", "50")
    assert code == 0 and out.startswith("PASS")


def test_specseq_run_json(capsys):
    code, out, _ = run(capsys, "specseq", "run", "g24", "G24", "--stem-min", "0", "--stem-max", "71", "--json")
    data = json.loads(out)
    assert code == 0
    assert json.dumps(data)  # round-trips


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "4")[0] == 0
    assert run(capsys, "verify", "5")[0] == 1


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "cohomology", "G24", "--t-range=5..1")[0] == 2
    assert run(capsys, "verify", "99")[0] == 2
    assert run(capsys, "specseq", "run", "g24", "G24", "--stem-min", "10", "--stem-max", "0")[0] == 2


def test_config(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[window]\nstem_min = 0\nstem_max = 30\n")
    assert load_config(cfg)["stem_max"] == 30
    code, out, _ = run(capsys, "specseq", "validate", "g24", "G24", "--config", str(cfg))
    assert code == 0
    bad = tmp_path / "bad.toml"
    bad.write_text("colour = 1\n")
    with pytest.raises(UsageError):
        load_config(bad)
    assert run(capsys, "picard", "solve", "--config", str(bad))[0] == 2


def test_chart_output(tmp_path, capsys):
    code, out, _ = run(capsys, "chart", "g24-v1", "--format", "svg", "--output-dir", str(tmp_path))
    assert code == 0
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].read_text().startswith("<svg")
