import json

import pytest

from szczarba.cli import main
from szczarba.presentation import ChainCodec, load

from conftest import PRESETS


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def p(name):
    return PRESETS / f"{name}.json"


def test_check_comultiplicativity_on_sphere(capsys):
    code, out, _ = run(capsys, "check", p("sphere2"), "comultiplicativity", "--dim", 4)
    assert code == 0
    assert out.startswith("PASS comultiplicativity")


def test_check_psi_dgc_on_cover(capsys):
    code, out, _ = run(capsys, "check", p("cover"), "psi-dgc")
    assert code == 0 and "PASS psi-dgc" in out


def test_corrupted_twist_fails_with_witness(capsys):
    code, out, _ = run(capsys, "check", p("delta3-corrupt"), "twisting")
    assert code == 1
    assert out.splitlines()[0].startswith("FAIL")
    assert "witness: x0123" in out


@pytest.mark.parametrize("suite", ["twisting", "bialgebra", "index-sets", "twisted-tensor", "quasi-iso"])
def test_check_other_suites_on_cover(capsys, suite):
    code, out, _ = run(capsys, "check", p("cover"), suite, "--dim", 3)
    assert code == 0, out


def test_check_all_on_trivial_bundle(capsys):
    code, out, _ = run(capsys, "check", p("trivial-bundle"), "all", "--dim", 3)
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.split()[0] in ("PASS", "SKIP") for line in lines)
    assert any(line.startswith("SKIP baues") for line in lines)


def test_eval_t_three_simplex(capsys):
    want = "t(0123) = + σ(0123)σ(1223)σ(2333) - σ(0113)σ(1233)σ(2333)"
    for arg in ("t(x0123)", "t(0123)"):
        code, out, _ = run(capsys, "eval", p("delta3"), arg)
        assert code == 0 and out.strip() == want


def test_eval_sz(capsys):
    code, out, _ = run(capsys, "eval", p("delta3"), "Sz((0),x012)")
    assert code == 0 and out.strip().endswith("σ(012)σ(122)")


def test_eval_delta_is_primitive_on_one_reduced_2_simplex(capsys):
    code, out, _ = run(capsys, "eval", p("delta5-sk1"), "Delta[x012]")
    assert code == 0
    assert out.strip() == "Delta[012] = +1·[1 ⊗ [x012]] +1·[[x012] ⊗ 1]"


def test_eval_json_round_trip(capsys):
    code, out, _ = run(capsys, "eval", p("cover"), "psi(e,g)", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    pres = load(p("cover"))
    codec = ChainCodec(pres)
    ch = codec.decode(doc["chain"])
    assert codec.encode(ch) == doc["chain"]
    from szczarba.szczarba import psi_key

    B = pres.bundle
    assert ch == psi_key(B, B.base.simplex("e"), B.group.element("g"))


def test_eval_is_deterministic(capsys):
    a = run(capsys, "eval", p("delta4"), "t(01234)")
    b = run(capsys, "eval", p("delta4"), "t(01234)")
    assert a == b and a[0] == 0


def test_homology_twisted_cover(capsys):
    code, out, _ = run(capsys, "homology", p("cover"), "--twisted", "--dim", 2, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    for table in doc.values():
        assert [table[str(n)]["rank"] for n in range(2)] == [1, 1]


def test_homology_plain(capsys):
    code, out, _ = run(capsys, "homology", p("sphere2"), "--dim", 3)
    assert code == 0 and "H_2 = Z" in out


def test_ss_cover_f2(capsys):
    code, out, _ = run(capsys, "ss", p("cover"), "--field", "fp:2", "--dim", 3, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["pages"]["1"]) == 4
    assert sorted(tuple(r) for r in doc["pages"]["inf"]) == [(0, 0, 0, 1), (2, -1, 1, 1)]
    assert doc["converges"]


def test_ss_trivial_bundle_kunneth(capsys):
    code, out, _ = run(capsys, "ss", p("trivial-bundle"), "--field", "q", "--dim", 3, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    ranks = {}
    for _, _, n, v in doc["pages"]["inf"]:
        ranks[n] = ranks.get(n, 0) + v
    assert [ranks.get(n, 0) for n in range(3)] == [1, 2, 1]


def test_list_basis(capsys):
    code, out, _ = run(capsys, "list-basis", p("cover"), "--dim", 2)
    assert code == 0
    assert out.splitlines() == ["0: pt", "1: e", "fibre:", "0: 1 g"]


@pytest.mark.parametrize("argv", [
    ["check", "data/cover.json", "nope"],
    ["ss", "data/cover.json", "--field", "fp:4"],
    ["eval", "data/delta3.json", "garbage(("],
    ["homology", "data/sphere2.json", "--twisted"],
    ["check", "missing.json", "all"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    argv = [str(PRESETS.parent / a) if a.startswith("data/") else a for a in argv]
    assert run(capsys, *argv)[0] == 2
