import json
import subprocess
import sys

import pytest

from toricforms.cli import JobSpec, main, parse_fan_file, run
from toricforms.errors import FanValidationError, ParseError
from toricforms.examples import BUILTINS

P2_YAML = """\
rank: 2
rays:
  - [1, 0]
  - [0, 1]
  - [-1, -1]
max_cones:
  - [0, 1]
  - [1, 2]
  - [0, 2]
"""


def invoke(capsys, *args):
    with pytest.raises(SystemExit) as exc:
        main(list(args))
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def test_table_p2_trivial(capsys):
    code, out, _ = invoke(capsys, "table", "--fan", "builtin:P2", "--divisor", "0,0,0", "--route", "all")
    assert code == 0
    rows = [line.split()[1:] for line in out.splitlines()[2:]]
    assert rows == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_vanishing_f1(capsys):
    code, out, _ = invoke(capsys, "vanishing", "--fan", "builtin:F1", "--divisor", "1,0,0,0")
    assert code == 0 and out.startswith("PASS") and "i = 1" in out


def test_classify_negative_divisor(capsys):
    code, out, _ = invoke(capsys, "classify", "--fan", "builtin:P2", "--divisor", "-1,0,0")
    assert code == 0
    assert "cartier: True" in out and "semiample: False" in out


def test_exit_codes(capsys):
    code, _, err = invoke(capsys, "table", "--fan", "builtin:P2", "--divisor", "-1,0,0")
    assert code == 2 and "NOT_SEMIAMPLE" in err
    code, _, err = invoke(capsys, "table", "--fan", "builtin:P2", "--divisor", "0,0")
    assert code == 1 and "usage error" in err
    code, _, _ = invoke(capsys, "frobnicate")
    assert code == 1
    code, _, _ = invoke(capsys, "table", "--fan", "builtin:NOPE", "--divisor", "0")
    assert code == 1
    code, _, _ = invoke(capsys, "table", "--fan", "builtin:P2", "--divisor", "x,y")
    assert code == 1


def test_not_complete_is_a_validation_error(tmp_path, capsys):
    path = tmp_path / "two.yaml"
    path.write_text("rank: 2\nrays: [[1,0],[0,1],[-1,-1]]\nmax_cones: [[0,1],[1,2]]\n")
    code, out, _ = invoke(capsys, "validate", "--fan", str(path))
    assert code == 2 and "NOT_COMPLETE" in out
    code, _, err = invoke(capsys, "table", "--fan", str(path), "--divisor", "0,0,0")
    assert code == 2 and "NOT_COMPLETE" in err
    code, _, _ = invoke(capsys, "validate", "--fan", str(path), "--no-complete")
    assert code == 0


def test_route_mismatch_maps_to_exit_3(monkeypatch):
    from toricforms import engine
    real = engine._table_for

    def broken(fan, a, route):
        t = real(fan, a, route)
        if route is engine.Route.DIRECT:
            t[0][0] += 1
        return t

    monkeypatch.setattr(engine, "_table_for", broken)
    status, out = run(JobSpec("table", "builtin:P1", (0, 0)))
    assert status == 3 and "ROUTE_MISMATCH" in out


def test_parse_fan_file(tmp_path):
    good = tmp_path / "p2.yaml"
    good.write_text(P2_YAML)
    fan = parse_fan_file(good)
    assert fan.rays == BUILTINS["P2"].rays
    js = tmp_path / "p2.json"
    js.write_text(json.dumps({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}))
    assert parse_fan_file(js).max_cones == fan.max_cones
    dup = tmp_path / "dup.yaml"
    dup.write_text(P2_YAML.replace("[-1, -1]", "[1, 0]"))
    with pytest.raises(ParseError, match="duplicate ray"):
        parse_fan_file(dup)
    bad = tmp_path / "bad.yaml"
    bad.write_text("rank: 2\nrays: [[2, 4], [0, 1]]\nmax_cones: [[0, 1]]\n")
    with pytest.raises(FanValidationError) as exc:
        parse_fan_file(bad)
    assert exc.value.code == "NONPRIMITIVE_RAY"
    broken = tmp_path / "broken.yaml"
    broken.write_text("rank: 2\nrays: [[1, 0]\n")
    with pytest.raises(ParseError, match="line"):
        parse_fan_file(broken)
    with pytest.raises(ParseError):
        parse_fan_file(tmp_path / "missing.yaml")


@pytest.mark.parametrize("name", list(BUILTINS))
def test_builtins_validate_and_have_diagonal_tables(name):
    fan = BUILTINS[name]
    status, _ = run(JobSpec("validate", f"builtin:{name}"))
    assert status == 0
    status, out = run(JobSpec("table", f"builtin:{name}", (0,) * fan.n_rays, fmt="json"))
    assert status == 0
    entries = json.loads(out)["entries"]
    assert all(v == 0 for k, row in enumerate(entries) for l, v in enumerate(row) if k != l)


def test_example_listing_and_roundtrip(tmp_path):
    status, out = run(JobSpec("example"))
    assert status == 0 and all(name in out for name in BUILTINS)
    status, out = run(JobSpec("example", options={"name": "P3sub"}))
    path = tmp_path / "p3sub.json"
    path.write_text(out)
    fan = parse_fan_file(path)
    assert fan.n_rays >= 8 and fan.rank == 3


def test_other_commands_and_determinism():
    jobs = [
        JobSpec("classify", "builtin:F1", (1, 0, 0, 0), fmt="json"),
        JobSpec("table", "builtin:F1", (1, 0, 0, 0), k=1, l=1),
        JobSpec("ishida", "builtin:P2", options={"star": (0,)}),
        JobSpec("chow", "builtin:P3sub", fmt="json"),
        JobSpec("cocycles", "builtin:P2", (0, 0, 0), k=1, l=1),
        JobSpec("cocycles", "builtin:F1", (1, 0, 0, 0), k=1, l=1, fmt="json"),
        JobSpec("vanishing", "builtin:P3", (1, 0, 0, 0), fmt="json"),
    ]
    for job in jobs:
        s1, o1 = run(job)
        s2, o2 = run(job)
        assert s1 == 0 and (s1, o1) == (s2, o2)
    assert json.loads(run(jobs[0])[1]) == {"cartier": True, "semiample": True, "iitaka_dim": 1}
    assert run(jobs[1])[1] == "h^1(Omega^1(X)) = 2"
    assert "l = 1: dim C = [0, 1], h = [0, 1]" in run(jobs[2])[1]
    assert [r["dim"] for r in json.loads(run(jobs[3])[1])] == [1, 5, 5, 1]
    assert "-> 1 * [- dlog x2 + dlog x3]" in run(jobs[4])[1]
    assert len(json.loads(run(jobs[5])[1])) == 2
    assert json.loads(run(jobs[6])[1])["passed"] is True
    assert run(JobSpec("cocycles", "builtin:P2", (0, 0, 0)))[0] == 1


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "toricforms", "table", "--fan", "builtin:P1", "--divisor", "0,0",
                           "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["entries"] == [[1, 0], [0, 1]]
