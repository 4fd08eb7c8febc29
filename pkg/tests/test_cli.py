import io
import json

import pytest

from chowlimit import cli

S3 = {"type": "perm", "degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]}
C5 = {"type": "perm", "degree": 5, "generators": [[2, 3, 4, 5, 1]]}
GL27 = {"type": "classical", "family": "GL", "n": 2, "q": 7}


def run(monkeypatch, capsys, argv, spec=None):
    if spec is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(spec)))
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(out):
    return json.loads(out)["payload"]


def test_limit_cyclic(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["limit", "-p", "5", "-D", "10", "--json"], C5)
    assert code == 0
    assert payload(out)["dims"] == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_limit_s3_and_warnings(monkeypatch, capsys):
    code, out, err = run(monkeypatch, capsys, ["limit", "-p", "3", "-D", "16", "--json"], S3)
    rep = json.loads(out)
    assert code == 0
    assert rep["payload"]["dims"] == [1 if d % 4 == 0 else 0 for d in range(17)]
    assert rep["payload"]["steenrod_closed"] and rep["payload"]["reduced"]
    assert any("unchecked" in w for w in rep["warnings"])


def test_limit_from_file(tmp_path, monkeypatch, capsys):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(S3))
    code, out, _ = run(monkeypatch, capsys, ["limit", str(path), "-p", "3", "-D", "8"])
    assert code == 0 and "dims" in out


def test_limit_gl2(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["limit", "-p", "3", "-D", "20", "--json"], GL27)
    assert code == 0
    assert payload(out)["dims"][::2] == [k // 2 + 1 for k in range(11)]


def test_json_is_deterministic(monkeypatch, capsys):
    outs = [payload(run(monkeypatch, capsys, ["limit", "-p", "2", "-D", "10", "--json"],
                        {"type": "perm", "degree": 4, "generators": [[2, 1, 3, 4], [2, 3, 4, 1]]})[1])
            for _ in range(2)]
    assert json.dumps(outs[0], sort_keys=True) == json.dumps(outs[1], sort_keys=True)


def test_toral(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["toral", "-p", "3", "--json"], GL27)
    pl = payload(out)
    assert code == 0 and pl["all_toral"]
    assert all(c["witness"] is not None for c in pl["classes"])


def test_toral_needs_classical(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["toral", "-p", "3"], S3)
    assert code == 2 and "classical" in err


def test_double_cosets(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["double-cosets", "-p", "2", "--left", "[[2,1,3]]", "--json"], S3)
    assert code == 0 and payload(out)["count"] == 2


def test_wreath_trivial_inner(monkeypatch, capsys):
    trivial = {"type": "perm", "degree": 1, "generators": []}
    code, out, _ = run(monkeypatch, capsys, ["wreath", "-p", "3", "-D", "12", "--json"], trivial)
    assert code == 0 and payload(out)["dims"] == [1, 0] * 6 + [1]


def test_wreath_nonabelian_inner_warns(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["wreath", "-p", "3", "-D", "8", "--json"], S3)
    assert code == 0 and json.loads(out)["warnings"]


def test_stable_s4(monkeypatch, capsys):
    s4 = {"type": "perm", "degree": 4, "generators": [[2, 1, 3, 4], [2, 3, 4, 1]]}
    code, out, _ = run(monkeypatch, capsys, ["stable", "-p", "2", "-D", "12", "--json"], s4)
    assert code == 0 and payload(out)["dims"][::2] == [1, 1, 2, 3, 3, 4, 5]


def test_stable_unsupported_sylow(monkeypatch, capsys):
    d8 = {"type": "perm", "degree": 8, "generators": [[2, 3, 4, 5, 6, 7, 8, 1], [8, 7, 6, 5, 4, 3, 2, 1]]}
    code, _, _ = run(monkeypatch, capsys, ["stable", "-p", "2", "-D", "4"], d8)
    assert code == 2


def test_invariants(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["invariants", "-p", "3", "-D", "8", "--json"], GL27)
    assert code == 0 and payload(out)["dims"][::2] == [1, 1, 2, 2, 3]
    code, out, _ = run(monkeypatch, capsys, ["invariants", "-p", "3", "-D", "8", "--json"], S3)
    assert payload(out)["dims"][::2] == [1, 0, 1, 0, 1]
    code, out, _ = run(monkeypatch, capsys, ["invariants", "-p", "3", "-D", "4", "--json",
                                             "--matrices", '{"n": 2, "matrices": [[1,0,0,1],[0,1,1,0]]}'])
    assert payload(out)["dims"] == [1, 0, 1, 0, 2]


@pytest.mark.parametrize(
    "argv,spec,code",
    [
        (["limit", "-p", "3"], {"type": "bogus"}, 2),
        (["limit", "-p", "4"], S3, 2),
        (["limit", "-p", "3"], {"type": "perm", "degree": 2, "generators": [[1, 1]]}, 2),
        (["limit", "-p", "3", "--cap", "3"], S3, 3),
        (["limit", "-p", "7"], {"type": "classical", "family": "GL", "n": 2, "q": 49}, 2),
        (["verify", "--suite", "nope"], None, 2),
    ],
)
def test_exit_codes(monkeypatch, capsys, argv, spec, code):
    assert run(monkeypatch, capsys, argv, spec)[0] == code


def test_malformed_json(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("{not json"))
    assert cli.main(["limit", "-p", "2"]) == 2


def test_verify_quick(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["verify", "-D", "8", "--json"])
    pl = payload(out)
    assert code == 0 and pl["all_passed"]
    assert [c["criterion"] for c in pl["criteria"]] == [f"A{i}" for i in range(1, 11)]
