import json
import random
import shutil

import pytest

from regcalc import cli
from regcalc.idealfile import IdealFileError, parse_ideal_file, render_ideal_file

from conftest import curated_files


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_basic():
    f = parse_ideal_file("ring 32003 x y\nideal x^2, x*y")
    assert f.char_p == 32003 and f.names == ("x", "y") and len(f.generators) == 2


@pytest.mark.parametrize("text, message", [
    ("ideal x^2", "missing ring declaration"),
    ("ring 32003 x y\nideal x^2 + y", "generator 1 not homogeneous"),
    ("ring 32003 x y\nideal x^2, z^2", "generator 2: unknown variable 'z'"),
    ("ring 12 x y\nideal x^2", "characteristic 12 is not prime"),
    ("ring 7 x y\nring 7 x y\nideal x", "duplicate ring declaration"),
])
def test_parse_errors(text, message):
    with pytest.raises(IdealFileError) as e:
        parse_ideal_file(text)
    assert message in str(e.value)


def test_error_positions():
    with pytest.raises(IdealFileError) as e:
        parse_ideal_file("ring 32003 x y\nideal x^2,\n  y^2 + x")
    assert (e.value.line, e.value.column) == (3, 3)


def test_continuation_and_comments():
    f = parse_ideal_file("# twisted cubic\nring 101 a b c d\nideal a*c - b^2,  # first\n  a*d - b*c,\n  b*d - c^2\n")
    assert len(f.generators) == 3 and f.char_p == 101


def test_char_override():
    f = parse_ideal_file("ring 32003 x y\nideal x^2 + 5*y^2", char_override=3)
    assert f.char_p == 3 and str(f.generators[0]) == "x^2 - y^2"


def test_round_trip_corpus():
    files = curated_files()
    assert len(files) >= 30
    for p in files:
        f = parse_ideal_file(p.read_text())
        assert f.ring.num_vars <= 4
        assert parse_ideal_file(render_ideal_file(f)) == f, p.name


def test_report_x2_xy(tmp_path, capsys):
    p = write(tmp_path, "a.ideal", "ring 32003 x y\nideal x^2, x*y\n")
    out = tmp_path / "a.json"
    assert cli.main(["report", str(p), "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1
    inv = rep["invariants"]
    assert (inv["reg"], inv["hdeg"]) == (1, 2)
    assert rep["deficiency"][1]["reg"] == 1
    assert all(c["status"] != "fail" for c in rep["checks"])
    assert "timing" in rep
    text = capsys.readouterr().out
    assert "thm_B4.i=1: 1 <= 2" in text


def test_report_is_deterministic(tmp_path):
    p = write(tmp_path, "a.ideal", "ring 32003 x y z\nideal x^2 + y*z, x*y*z\n")
    reps = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        cli.main(["report", str(p), "--json", str(out), "--seed", "4"])
        rep = json.loads(out.read_text())
        rep.pop("timing")
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]


def test_report_cm_notes(tmp_path, capsys):
    p = write(tmp_path, "ci.ideal", "ring 32003 x y\nideal x^2, y^3\n")
    assert cli.main(["report", str(p)]) == 0
    out = capsys.readouterr().out
    assert "hdeg = deg = 6" in out and "pass EB2b: 0 == 0" in out


def test_report_linear_form_skips(tmp_path, capsys):
    p = write(tmp_path, "lin.ideal", "ring 32003 x y z\nideal x, y^2\n")
    assert cli.main(["report", str(p)]) == 0
    out = capsys.readouterr().out
    assert "skip thm_C1.i=1" in out and "pass dual_reg" in out


def test_report_expect_mismatch(tmp_path):
    p = write(tmp_path, "bad.ideal", "ring 32003 x y\nideal x^2, x*y\nexpect reg 5\n")
    assert cli.main(["report", str(p)]) == 1


def test_report_parse_error_exit_code(tmp_path, capsys):
    p = write(tmp_path, "bad.ideal", "ring 32003 x y\nideal x^2 + y\n")
    assert cli.main(["report", str(p)]) == 2
    assert "generator 1 not homogeneous" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate"])
    assert e.value.code == 2


def test_verify_with_corrupted_file(tmp_path, capsys):
    for p in curated_files()[:3]:
        shutil.copy(p, tmp_path / p.name)
    write(tmp_path, "zz_broken.ideal", "ring 32003 x y\nideal x^2 +* y\n")
    assert cli.main(["verify", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "ERROR zz_broken.ideal" in out
    assert out.count("ok    ") == 3


def test_verify_empty_dir(tmp_path, capsys):
    assert cli.main(["verify", str(tmp_path)]) == 0
    assert "warning" in capsys.readouterr().err


def test_verify_env_default(tmp_path, monkeypatch, capsys):
    shutil.copy(curated_files()[0], tmp_path / "one.ideal")
    monkeypatch.setenv("REGCALC_CORPUS", str(tmp_path))
    assert cli.main(["verify"]) == 0
    assert "1 files" in capsys.readouterr().out


def test_verify_parallel_matches_serial(tmp_path):
    for p in curated_files()[:4]:
        shutil.copy(p, tmp_path / p.name)
    a = cli.verify_corpus(tmp_path, jobs=1)
    b = cli.verify_corpus(tmp_path, jobs=2)
    strip = lambda reps: [json.dumps({k: v for k, v in r.items() if k != "timing"}, sort_keys=True) for r in reps]
    assert strip(a) == strip(b)


def test_search_count_zero():
    res = cli.search(count=0)
    assert res["extremal"] == {} and res["failures"] == []


def test_search_deterministic_and_parallel():
    a = cli.search(n=2, count=12, seed=3, kind="binomial")
    b = cli.search(n=2, count=12, seed=3, kind="binomial", jobs=2)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert not a["failures"]


def test_search_limits_variables(capsys):
    assert cli.main(["search", "--n", "5", "--count", "1", "--out", "-"]) == 2


def test_random_ideal_is_homogeneous():
    rng = random.Random(0)
    for kind in ("monomial", "binomial", "dense"):
        f = cli.random_ideal(rng, 3, 4, 3, kind)
        assert all(g.is_homogeneous() and g.degree >= 2 for g in f.generators)


def test_gin_command(tmp_path, capsys):
    p = write(tmp_path, "xy.ideal", "ring 32003 x y\nideal x*y\n")
    out = tmp_path / "g.json"
    assert cli.main(["gin", str(p), "--order", "grevlex", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["gin"] == ["x^2"] and data["initial_ideal"] == ["x*y"]
    assert data["certificate"]["verified"]


def test_timeout_is_recorded(tmp_path):
    p = write(tmp_path, "big.ideal", "ring 32003 x y z w\nideal x^5 + y^5 + z^5 + w^5, x^4*y + z^4*w, x*y*z*w*x + y^3*z^2\n")
    rep = cli._report_path((str(p), 0, None, 0.001, True))
    assert rep["error"].startswith("timeout")
