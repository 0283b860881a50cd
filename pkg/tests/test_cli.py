import json
import subprocess
import sys

from conftest import make_rng, random_pp_table
from permpoly.cli import main
from permpoly.fields import field_spec
from permpoly.polyring import Poly, interpolate
from permpoly.sbox import read_sbox


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "permpoly.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def call(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def test_verify_pp_byte_exact():
    code, out, _ = run_cli("verify", "--field", "5", "--poly", "0,0,0,1")
    assert code == 0
    assert out == '{"is_pp": true}\n'


def test_invert_brute_byte_exact():
    code, out, _ = run_cli("invert", "--field", "5", "--poly", "0,0,0,1",
                           "--method", "brute")
    assert code == 0
    assert out == '{"inverse_coeffs": "0,0,0,1"}\n'


def test_verify_non_pp_byte_exact():
    code, out, _ = run_cli("verify", "--field", "5", "--poly", "0,0,1")
    assert code == 1
    assert out == '{"is_pp": false}\n'


def test_reports_are_reproducible():
    first = run_cli("verify", "--field", "7^2:1,0,1", "--poly", "0,0,0,1")
    second = run_cli("verify", "--field", "7^2:1,0,1", "--poly", "0,0,0,1")
    assert first == second


def test_malformed_inputs_exit_2(capsys):
    assert call(capsys, "verify", "--field", "4", "--poly", "0,1")[0] == 2
    assert call(capsys, "verify", "--field", "5", "--poly", "0,9")[0] == 2
    assert call(capsys, "verify", "--field", "5^2:1,0,1", "--poly", "0,1")[0] == 2
    assert call(capsys, "invert", "--field", "5", "--poly", "0,1",
                "--method", "cyclotomic")[0] == 2  # family method needs --params


def test_invert_round_trip_reproduces_reduced_poly(capsys):
    for spec in ("7", "3^2:1,0,1", "5^2:1,1,1"):
        F = field_spec(spec).field
        rng = make_rng(F.size * 3)
        for _ in range(20):
            p = interpolate(random_pp_table(F, rng))
            code, rep = call(capsys, "invert", "--field", spec,
                             "--poly", p.to_text(), "--method", "brute")
            assert code == 0
            code, rep2 = call(capsys, "invert", "--field", spec,
                              "--poly", rep["inverse_coeffs"], "--method", "brute")
            assert code == 0
            assert Poly.from_text(F, rep2["inverse_coeffs"]) == p.reduced()


def test_invert_non_pp(capsys):
    code, rep = call(capsys, "invert", "--field", "5", "--poly", "0,0,1",
                     "--method", "brute")
    assert code == 1 and rep == {"is_pp": False}


def test_family_verbs(tmp_path, capsys):
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"kind": "cyclotomic", "field": "7",
                               "r": 1, "ell": 2, "h_coeffs": [3, 1]}))
    code, rep = call(capsys, "family", "--params", str(cyc))
    assert code == 0
    assert rep["is_pp"] and rep["oracle_verified"]
    assert {c["name"] for c in rep["conditions"]} == {"gcd_rs", "g_permutes_mu"}

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "cyclotomic", "field": "7",
                               "r": 3, "ell": 3, "h_coeffs": [1]}))
    code, rep = call(capsys, "family", "--params", str(bad))
    assert code == 1 and not rep["is_pp"] and rep["inverse_coeffs"] is None

    lin = tmp_path / "lin.json"
    lin.write_text(json.dumps({"kind": "linearized", "field": "5^1:0,1|2:1,1,1",
                               "g_coeffs": [0, 1], "u_ranks": [1], "m_list": [1]}))
    code, rep = call(capsys, "family", "--params", str(lin))
    assert code == 0 and rep["inverse_coeffs"] == "0,0,0,0,0,3"

    code, rep = call(capsys, "cpp", "--params", str(lin))
    assert code == 0 and rep["is_cpp"]

    tra = tmp_path / "tra.json"
    tra.write_text(json.dumps({"kind": "trace", "field": "3^1:0,1|2:1,0,1",
                               "n": 2, "g_coeffs": [0, 1]}))
    code, rep = call(capsys, "family", "--params", str(tra))
    assert code == 0 and rep["inverse_coeffs"] == "0,0,0,2"
    assert rep["notes"] == ["formula_corrected"]


def test_family_twist(tmp_path, capsys):
    doc = {"kind": "twist", "field": "5",
           "f1": [1, 3, 2, 4],     # x^3 on ranks 1..4
           "lam": [1, 1, 1, 1], "lam_bar": [1, 1, 1, 1],
           "g": [[1, 1]], "h": [[1, 2]]}
    path = tmp_path / "twist.json"
    path.write_text(json.dumps(doc))
    code, rep = call(capsys, "family", "--params", str(path))
    assert code == 0 and rep["is_pp"]
    F5 = field_spec("5").field
    expect = [F5.pow(F5.div(a, 2), 3) for a in range(1, 5)]
    assert rep["inverse_table"] == expect

    doc["h"] = [[1, 0]]
    path.write_text(json.dumps(doc))
    code, rep = call(capsys, "family", "--params", str(path))
    assert code == 1
    assert rep["conditions"] == [{"name": "h_nonzero", "holds": False}]


def test_invert_with_explicit_family_method(tmp_path, capsys):
    lin = tmp_path / "lin.json"
    lin.write_text(json.dumps({"kind": "linearized", "field": "5^1:0,1|2:1,1,1",
                               "g_coeffs": [0, 1], "u_ranks": [1], "m_list": [1]}))
    code, rep = call(capsys, "invert", "--params", str(lin), "--method", "linearized")
    assert code == 0 and rep == {"inverse_coeffs": "0,0,0,0,0,3"}
    # kind mismatch between file and method is malformed input
    code, rep = call(capsys, "invert", "--params", str(lin), "--method", "trace")
    assert code == 2
    # conditions fail: exit 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "linearized", "field": "5^1:0,1|2:1,1,1",
                               "g_coeffs": [0, 1], "u_ranks": [0], "m_list": [1]}))
    code, rep = call(capsys, "invert", "--params", str(bad), "--method", "linearized")
    assert code == 1 and rep == {"is_pp": False}


def test_missing_params_file_exits_2(capsys):
    code, rep = call(capsys, "family", "--params", "/nonexistent/params.json")
    assert code == 2 and "error" in rep


def test_unknown_family_kind_exits_2(tmp_path, capsys):
    doc = tmp_path / "odd.json"
    doc.write_text(json.dumps({"kind": "odd", "field": "5"}))
    assert call(capsys, "family", "--params", str(doc))[0] == 2


def test_family_reports_are_byte_identical(tmp_path):
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"kind": "cyclotomic", "field": "7",
                               "r": 1, "ell": 2, "h_coeffs": [3, 1]}))
    first = run_cli("family", "--params", str(cyc))
    second = run_cli("family", "--params", str(cyc))
    assert first == second


def test_field_spec_prime_tower_alias(capsys):
    # "7|2:..." is accepted as shorthand for "7^1:0,1|2:..."
    code, rep = call(capsys, "verify", "--field", "7|2:1,0,1", "--poly", "0,0,0,0,0,0,0,1")
    assert code in (0, 1) and "is_pp" in rep


def test_invert_auto_uses_matching_params(tmp_path, capsys):
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"kind": "cyclotomic", "field": "7",
                               "r": 1, "ell": 2, "h_coeffs": [3, 1]}))
    code, rep = call(capsys, "invert", "--field", "7", "--poly", "0,3,0,0,1",
                     "--method", "auto", "--params", str(cyc))
    assert code == 0 and rep["method"] == "cyclotomic"
    # a non-matching polynomial falls back to brute force
    code, rep = call(capsys, "invert", "--field", "7", "--poly", "0,0,0,0,0,1",
                     "--method", "auto", "--params", str(cyc))
    assert code == 0 and rep["method"] == "brute"


def test_export_sbox_formats(tmp_path, capsys):
    spec = field_spec("5")
    for suffix in (".bin", ".hex"):
        out = tmp_path / f"box{suffix}"
        code, rep = call(capsys, "export-sbox", "--field", "5", "--poly", "0,0,0,1",
                         "--out", str(out))
        assert code == 0 and rep["involution"]
        table = read_sbox(out, spec)
        assert table.values == [0, 1, 3, 2, 4]
        cert = json.loads((tmp_path / f"box{suffix}.json").read_text())
        assert cert == {"field": "5", "poly": "0,0,0,1",
                        "inverse_coeffs": "0,0,0,1", "involution": True}


def test_export_sbox_identity_gf16(tmp_path, capsys):
    out = tmp_path / "id.bin"
    code, _ = call(capsys, "export-sbox", "--field", "2^4:1,1,0,0,1",
                   "--poly", "0,1", "--out", str(out))
    assert code == 0
    assert out.read_bytes() == bytes(range(16))


def test_export_sbox_reimport_matches_tabulate(tmp_path, capsys):
    spec = field_spec("3^2:1,0,1")
    rng = make_rng(9)
    p = interpolate(random_pp_table(spec.field, rng))
    out = tmp_path / "t.hex"
    code, _ = call(capsys, "export-sbox", "--field", "3^2:1,0,1",
                   "--poly", p.to_text(), "--out", str(out))
    assert code == 0
    assert read_sbox(out, spec) == p.tabulate()


def test_export_sbox_refuses_non_pp(tmp_path, capsys):
    out = tmp_path / "no.bin"
    code, rep = call(capsys, "export-sbox", "--field", "5", "--poly", "0,0,1",
                     "--out", str(out))
    assert code == 1 and rep == {"is_pp": False}
    assert not out.exists()
    assert not (tmp_path / "no.bin.json").exists()


def test_identities_verb(capsys):
    code, rep = call(capsys, "identities", "--q", "5", "--d", "2")
    assert code == 0 and rep["all_hold"] and rep["reconstruction"]
    assert len(rep["results"]) == 2 * 2 * 4
    assert all(e["annihilate"] is None for e in rep["results"] if e["j"] == 0)


def test_selftest_verb(capsys):
    code, rep = call(capsys, "selftest")
    assert code == 0
    assert rep["all_ok"]
    assert len(rep["checks"]) == 10


def test_internal_cross_check_failure_exits_3(tmp_path, capsys, monkeypatch):
    # force the closed form to disagree so the exit-3 contract is observable
    import permpoly.cli as cli_mod
    from permpoly.errors import InternalError

    def boom(params):
        raise InternalError("closed form fails to invert at rank 3")

    monkeypatch.setattr(cli_mod, "cyclotomic_inverse", boom)
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"kind": "cyclotomic", "field": "7",
                               "r": 1, "ell": 2, "h_coeffs": [3, 1]}))
    code, rep = call(capsys, "family", "--params", str(cyc))
    assert code == 3
    assert rep["error"] == "internal_cross_check_failed"
    assert "rank 3" in rep["detail"]
