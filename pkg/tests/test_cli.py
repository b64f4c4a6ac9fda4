import json

import pytest

from quivmut.cli import main

MARKOV = '{"arrows":[[1,2,2],[1,3,-2],[2,3,2]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_reduce(capsys):
    assert run(capsys, "reduce", "--word", "1,1,2,2") == (0, "[]", "")


def test_mutate_round_trip(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(MARKOV)
    code, out, _ = run(capsys, "mutate", "--quiver", str(f), "--at", "2")
    assert code == 0 and json.loads(out) == {"arrows": [[1, 2, -2], [1, 3, 2], [2, 3, -2]]}
    g = tmp_path / "m2.json"
    g.write_text(out)
    assert run(capsys, "mutate", "--quiver", str(g), "--at", "2")[1] == MARKOV


def test_check_and_encode(capsys):
    assert run(capsys, "check", "--quiver", "markov", "--prop", "mutation-acyclic", "--depth", "6")[1] == "unknown"
    assert run(capsys, "check", "--quiver", "a3-path", "--prop", "acyclic")[1] == "yes"
    assert run(capsys, "encode", "--quiver", '{"arrows":[[1,2,1]]}', "--window", "2")[1] == "[4,1]"
    assert run(capsys, "decode", "--codes", "4,1")[1] == '{"arrows":[[1,2,1]]}'


def test_dot_output(capsys):
    code, out, _ = run(capsys, "mutate", "--quiver", "three-cycle", "--at", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and "3 -> 2" in out


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert run(capsys, "--out", str(target), "reduce", "--word", "1,2,2")[0] == 0
    assert target.read_text().strip() == "[1]"


def test_certify(capsys):
    code, out, _ = run(
        capsys, "certify", "--quiver", "a_infinity", "--desc", "shifted_ray:2", "--mode", "strong", "--window", "1", "--horizon", "30"
    )
    assert code == 0 and json.loads(out)["status"] == {"kind": "oscillation", "steps": [29, 30]}


def test_classify_and_gadget(capsys):
    assert json.loads(run(capsys, "classify-lf", "--desc", "identity_ray")[1])["case"] == "both-dense"
    data = json.loads(run(capsys, "gadget", "--kind", "lf", "--desc", "identity_ray", "--protect", "1", "--segments", "3")[1])
    assert data["anchor_counts"] == [2, 4, 8]


def test_fraisse_and_mutclass(capsys):
    data = json.loads(run(capsys, "fraisse", "steer", "--target", "markov", "--radius", "3", "--seed", "2")[1])
    assert data["final"] == json.loads(MARKOV)
    data = json.loads(run(capsys, "mutclass", "--quiver", "a3-path")[1])
    assert data["members_found"] == 4 and data["frontier_exhausted"]


def test_worked_examples(capsys):
    code, out, _ = run(capsys, "examples", "--paper")
    assert code == 0 and out.endswith("34/34 passed")


def test_errors(capsys):
    code, _, err = run(capsys, "reduce", "--word", "1,x")
    assert code == 1 and err.startswith("error: malformed-input")
    code, _, err = run(capsys, "mutate", "--quiver", '{"arrows":[[1,1,1]]}', "--at", "1")
    assert code == 1 and "loop" in err
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
