import json

import pytest

from goodfilt.cli import build_parser, main

SUBCOMMANDS = ["roots", "char", "dim", "tensor", "ext", "sym", "decompose", "linkage", "alcove", "minimal",
               "subsystems", "branch", "orbits", "sl2", "spin", "certify", "report-subsystem", "report-sl2"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ext_json_exact(capsys):
    code, out, _ = run(capsys, "ext", "2", "E7", "1,0,0,0,0,0,0", "--json")
    assert code == 0
    assert out.strip() == '{"terms":[{"weight":[1,0,0,0,0,0,0],"mult":1},{"weight":[0,0,1,0,0,0,0],"mult":1}]}'


def test_dim(capsys):
    assert run(capsys, "dim", "A1", "0") == (0, "1\n", "")


@pytest.mark.parametrize("argv,code,token", [
    (["dim", "E7", "1,0,x,0,0,0,0"], 2, "'x'"),
    (["dim", "Q7", "1"], 1, "'Q7'"),
    (["dim", "E7", "1,0"], 1, "'1,0'"),
    (["dim", "A2", "--", "-1,0"], 1, "not dominant"),
    (["minimal", "A2", "1,1", "4"], 2, "4"),
    (["nonsense"], 2, ""),
])
def test_errors(capsys, argv, code, token):
    c, _, err = run(capsys, *argv)
    assert c == code
    assert token in err
    if code in (1, 2) and argv[0] != "nonsense":
        assert len(err.strip().splitlines()) == 1


def test_budget_exit_code(capsys):
    c, _, err = run(capsys, "linkage", "G2", "1,1", "0,0", "--method", "scan", "--scan-budget", "1")
    assert c == 3 and "budget" in err


def test_report_subsystem(capsys):
    c, out, _ = run(capsys, "report-subsystem", "E8", "D5xA3")
    assert c == 0
    assert out.splitlines()[0].endswith("condition p >= 7")
    c, out, _ = run(capsys, "report-subsystem", "E8", "D5xA3", "--json")
    data = json.loads(out)
    assert data["condition"] == {"kind": "all_geq", "bound": 7}
    assert len(data["weights"]) == 17  # C and C' share (1,0,0,0,0,0,1,0) and three more


def test_json_is_byte_stable(capsys):
    first = run(capsys, "certify", "F4", "--json")[1]
    second = run(capsys, "certify", "F4", "--json")[1]
    assert first == second


def test_certify_and_replay(capsys, tmp_path):
    f = tmp_path / "e6.json"
    c, out, _ = run(capsys, "certify", "E6", "--out", str(f))
    assert c == 0 and out.splitlines()[-1].endswith("p >= 5.")
    c, out, _ = run(capsys, "certify", "--replay", str(f))
    assert c == 0 and "p >= 5" in out


@pytest.mark.parametrize("argv", [
    ["roots", "G2"], ["char", "G2", "1,0"], ["tensor", "A2", "1,0", "0,1"], ["sym", "2", "B2", "0,1"],
    ["decompose", "A2", "1,1", "0,0:2"], ["linkage", "A1", "0", "2"], ["linkage", "A1", "0", "2", "--prime", "3"],
    ["alcove", "D5", "0,0,0,1,0"], ["minimal", "A3", "1,1,0", "3"], ["subsystems", "G2"],
    ["branch", "G2", "A2", "1,0"], ["orbits", "E7"], ["sl2", "G2", "G2", "1,0"], ["spin", "5"],
    ["report-sl2", "E7", "E7(a4)"],
])
def test_every_subcommand_json(capsys, argv):
    c, out, _ = run(capsys, *argv, "--json")
    assert c == 0
    json.loads(out)


def test_help_texts():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "cmd")
    assert sorted(sub.choices) == sorted(SUBCOMMANDS)
    for name, p in sub.choices.items():
        assert p.description and len(p.description) > 20, name
