import json
import subprocess
import sys
from pathlib import Path

import pytest

from singzeta.cli import main
from singzeta.serialize import dumps, member_to_json

from conftest import golden_member

MEMBERS = Path(__file__).resolve().parent.parent / "demos" / "members"
G0 = str(MEMBERS / "g0.json")
G1 = str(MEMBERS / "g1.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zeta_of_the_quadric(capsys):
    code, out, _ = run(capsys, "zeta", "z1^2+z2^2+z3^2")
    assert code == 0 and out.strip() == "(1-t^2)^-1"


def test_milnor_reports_both_numbers(capsys):
    code, out, _ = run(capsys, "milnor", "x^2+y^3+z^5", "--json")
    assert code == 0
    assert json.loads(out) == {"newton_number": 8, "mu_from_zeta": 8}
    code, out, _ = run(capsys, "milnor", "x^3+y^4", "--nvars", "2")
    assert code == 0 and "mu from zeta: 6" in out


def test_analyze_lists_faces(capsys):
    code, out, _ = run(capsys, "analyze", "z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5+z3^5", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["classification"] == "degenerate"
    assert data["newton_number"] == 38 and data["zeta"] is None
    bad = [f for f in data["faces"] if f["verdict"] == "degenerate"]
    assert [sorted(f["vertices"]) for f in bad] == [[[2, 0, 2], [2, 2, 0], [4, 0, 0]]]
    code, out, _ = run(capsys, "analyze", "x^2+y^3+z^5")
    assert code == 0 and "classification: nondegenerate" in out and "mu from zeta: 8" in out


def test_degenerate_germ_has_no_zeta(capsys):
    code, _, err = run(capsys, "zeta", "(z1-z2)^2(z1+z2)^2 + z3^4")
    assert code == 1 and "degenerate" in err


def test_golden_pair_family_commands(capsys):
    code, out, _ = run(capsys, "family", "zeta", G0)
    assert code == 0 and "zeta: (1-t^5)^2 (1-t^10)^-5" in out and "mu: 39" in out
    code, out, _ = run(capsys, "family", "zeta", G1, "--json")
    assert code == 0 and json.loads(out)["mu"] == 40
    assert run(capsys, "family", "check", G0)[0] == 0
    code, out, _ = run(capsys, "family", "check", G1)
    assert code == 1 and "sing_disjoint: FAIL" in out and "[1:1:1]" in out


def test_family_compare(capsys):
    code, out, _ = run(capsys, "family", "compare", G0, G1)
    assert code == 0 and "mu: 39 vs 40" in out
    assert run(capsys, "family", "compare", G0, G1, "--expect-equal")[0] == 1
    assert run(capsys, "family", "compare", G0, G0, "--expect-equal")[0] == 0


def test_resgraph(capsys, tmp_path):
    code, out, _ = run(capsys, "resgraph", "build", G0)
    graph = json.loads(out)
    assert code == 0 and graph["version"] == 1 and len(graph["nodes"]) == 9
    path = tmp_path / "g0-graph.json"
    path.write_text(out)
    assert run(capsys, "resgraph", "compare", G0, str(path), "--expect-equal")[0] == 0
    code, out, _ = run(capsys, "resgraph", "compare", G0, G1, "--expect-equal")
    assert code == 1 and out.strip() == "not isomorphic"
    code, out, _ = run(capsys, "resgraph", "build", G1, "--format", "dot", "--phi", "3")
    assert code == 0 and out.startswith("graph dual {")


def test_sigma_star(capsys):
    code, out, _ = run(capsys, "sigma-star", "--check")
    assert code == 0 and out.strip() == "7 cones, all unimodular"
    code, out, _ = run(capsys, "sigma-star", "--json")
    assert len(json.loads(out)["cones"]) == 7


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["zeta", "z1^-1"], "column 4"),
        (["zeta", "z1 + q"], "column 6"),
        (["family", "zeta", "/nonexistent/member.json"], "file not found"),
        (["zeta", "z1^2+z2^2+z3^2+z4^2"], ""),
    ],
)
def test_usage_errors_exit_2(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2 and fragment in err


def test_bad_member_files_exit_2(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    assert run(capsys, "family", "zeta", str(broken))[0] == 2
    wrong_d = tmp_path / "wrong.json"
    data = json.loads(Path(G0).read_text())
    data["d"] = 3
    wrong_d.write_text(json.dumps(data))
    assert run(capsys, "family", "zeta", str(wrong_d))[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_seeded_output_is_reproducible(capsys, monkeypatch):
    argv = ["family", "compare", G0, G1, "--json", "--seed", "11"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    monkeypatch.setenv("SINGZETA_SEED", "11")
    from_env = run(capsys, "family", "compare", G0, G1, "--json")[1]
    assert from_env == first
    monkeypatch.setenv("SINGZETA_SEED", "eleven")
    assert run(capsys, "family", "compare", G0, G1)[0] == 2


def test_member_files_match_the_library():
    assert json.loads(Path(G0).read_text())["h"] == "z2^5 + z3^5"
    text = dumps(member_to_json(golden_member(1)))
    assert json.loads(text)["d"] == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "singzeta.cli", "zeta", "x^2+y^2", "--nvars", "2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "1"
