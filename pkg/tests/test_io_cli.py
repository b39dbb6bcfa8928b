import json
import subprocess
import sys
from pathlib import Path

import pytest

from liecoh import io as lio
from liecoh.catalog import catalog, ext_heisenberg3, ext_heisenberg_kernel, heisenberg3
from liecoh.cli import run_command
from liecoh.cochains import Cochain
from liecoh.errors import ParseError, InvariantViolation
from liecoh.linalg import Matrix


# ---------------------------------------------------------------------------
# serialization round trips
# ---------------------------------------------------------------------------

def test_scalar_strings():
    from fractions import Fraction
    assert lio.scalar_to_str(Fraction(3)) == "3"
    assert lio.scalar_to_str(Fraction(-1, 2)) == "-1/2"
    assert lio.scalar_from_str("7/3") == Fraction(7, 3)
    assert lio.scalar_from_str("-4") == Fraction(-4)
    with pytest.raises(ParseError):
        lio.scalar_from_str("1/0")
    with pytest.raises(ParseError):
        lio.scalar_from_str("0.5e3x")


def test_algebra_round_trip_bytes():
    L = heisenberg3()
    text = lio.emit(lio.algebra_to_json(L))
    back = lio.algebra_from_json(json.loads(text))
    assert back == L and back.labels == L.labels
    assert lio.emit(lio.algebra_to_json(back)) == text


def test_algebra_jacobi_violation_reported():
    data = {"dim": 3, "basis": ["a", "b", "c"], "brackets": [
        {"i": 0, "j": 1, "value": {"2": "1"}},
        {"i": 1, "j": 2, "value": {"0": "1"}},
        {"i": 0, "j": 2, "value": {"0": "1"}},
    ]}
    with pytest.raises(InvariantViolation) as exc:
        lio.algebra_from_json(data)
    assert "jacobi at triple (0, 1, 2)" in exc.value.violations


def test_cochain_round_trip():
    g = catalog("abelian2")
    c = Cochain(g, 2, 2, {(0, 1): ("1/2", "-3")})
    text = lio.emit(lio.cochain_to_json(c))
    back = lio.cochain_from_json(json.loads(text), g)
    assert back == c
    assert lio.emit(lio.cochain_to_json(back)) == text


def test_factor_system_round_trip():
    fs = ext_heisenberg_kernel()
    text = lio.emit(lio.factor_system_to_json(fs))
    back = lio.factor_system_from_json(json.loads(text))
    assert back.S == fs.S and back.omega == fs.omega
    assert lio.emit(lio.factor_system_to_json(back)) == text


def test_representation_round_trip():
    from liecoh.liealg import adjoint_rep
    rep = adjoint_rep(heisenberg3())
    text = lio.emit(lio.representation_to_json(rep))
    back = lio.representation_from_json(json.loads(text))
    assert back == rep


def test_workspace_provenance():
    ws = lio.Workspace()
    ws.add("h3", heisenberg3(), source="inline", text="xyz")
    assert ws.names() == ("h3",)
    assert ws.provenance("h3")["source"] == "inline"
    assert len(ws.provenance("h3")["sha256"]) == 64
    with pytest.raises(InvariantViolation):
        ws.add("h3", heisenberg3())


# ---------------------------------------------------------------------------
# the CLI
# ---------------------------------------------------------------------------

def run_cli(args, capsys):
    code = run_command(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_cli_cohomology_catalog(capsys):
    code, report = run_cli(["cohomology", "--algebra", "heisenberg3",
                            "--degree", "2"], capsys)
    assert code == 0
    assert report["dim_cohomology"] == 2


def test_cli_catalog_emit(tmp_path, capsys):
    out = tmp_path / "h3.json"
    code, report = run_cli(["catalog", "heisenberg3", "--emit", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data["dim"] == 3
    code2, _ = run_cli(["cohomology", "--algebra", str(out), "--degree", "2"],
                       capsys)
    assert code2 == 0


def test_cli_unknown_catalog_name(capsys):
    code, report = run_cli(["catalog", "nope"], capsys)
    assert code == 1
    assert report["error"]["kind"] == "UnknownNameError"


def test_cli_split_factor_system_flags(tmp_path, capsys):
    # --n/--g/--S/--omega as separate files, algebras by catalog name
    s_file = tmp_path / "S.json"
    s_file.write_text(lio.emit({"matrices": [[["0"]], [["0"]]]}))
    omega_file = tmp_path / "omega.json"
    omega_file.write_text(lio.emit(
        {"degree": 2, "value_dim": 1, "coeffs": {"0,1": ["1"]}}))
    code, report = run_cli(["extension", "build", "--n", "abelian1",
                            "--g", "abelian2", "--S", str(s_file),
                            "--omega", str(omega_file)], capsys)
    assert code == 0
    assert report["center_dim"] == 1
    code, report = run_cli(["obstruction", "--n", "abelian1", "--g", "abelian2",
                            "--S", str(s_file), "--omega", str(omega_file)],
                           capsys)
    assert code == 0
    assert report["obstruction"]["zero"]


def test_cli_validate_provenance(tmp_path, capsys):
    path = tmp_path / "h3.json"
    path.write_text(lio.emit(lio.algebra_to_json(heisenberg3())))
    code, report = run_cli(["validate", "--algebra", str(path)], capsys)
    assert code == 0
    assert report["report"]["algebra"]["jacobi"]
    assert report["provenance"]["algebra"]["source"] == str(path)
    assert len(report["provenance"]["algebra"]["sha256"]) == 64


def test_representation_catalog_reference():
    data = {"algebra": "heisenberg3", "space_dim": 1,
            "matrices": [[["0"]], [["0"]], [["0"]]]}
    rep = lio.representation_from_json(data)
    assert rep.algebra == heisenberg3()


def test_cli_extension_build_and_check(tmp_path, capsys):
    bundle = tmp_path / "fs.json"
    bundle.write_text(lio.emit(lio.factor_system_to_json(ext_heisenberg3())))
    code, report = run_cli(["extension", "build", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["center_dim"] == 1
    code, report = run_cli(["extension", "check", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["report"]["valid"]


def test_cli_invalid_factor_system_exit_two(tmp_path, capsys):
    data = {
        "n": lio.algebra_to_json(catalog("abelian1")),
        "g": lio.algebra_to_json(catalog("abelian3")),
        "S": [[["1"]], [["0"]], [["0"]]],
        "omega": {"degree": 2, "value_dim": 1, "coeffs": {"1,2": ["1"]}},
    }
    bundle = tmp_path / "bad.json"
    bundle.write_text(lio.emit(data))
    code, report = run_cli(["extension", "build", "--ext", str(bundle)], capsys)
    assert code == 2
    cert = report["error"]["certificate"]
    assert cert["cocycle_failures"] == [[0, 1, 2]]
    # check reports the same certificate without raising
    code, report = run_cli(["extension", "check", "--ext", str(bundle)], capsys)
    assert code == 2
    assert report["report"]["cocycle_failures"] == [[0, 1, 2]]


def test_cli_parse_error_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 1, "brackets": [{"i": 0, "j": 0, "value": {"0": "1/0"}}]}')
    code, report = run_cli(["cohomology", "--algebra", str(bad), "--degree", "1"],
                           capsys)
    assert code == 1
    assert report["error"]["kind"] in ("ParseError", "DimensionMismatchError")


def test_cli_jacobi_violation_exit_one(tmp_path, capsys):
    bad = tmp_path / "nojacobi.json"
    bad.write_text(lio.emit({"dim": 3, "basis": ["a", "b", "c"], "brackets": [
        {"i": 0, "j": 1, "value": {"2": "1"}},
        {"i": 1, "j": 2, "value": {"0": "1"}},
        {"i": 0, "j": 2, "value": {"0": "1"}},
    ]}))
    code, report = run_cli(["validate", "--algebra", str(bad)], capsys)
    assert code == 1
    assert "jacobi at triple (0, 1, 2)" in report["error"]["violations"]


def test_cli_obstruction_and_classify(tmp_path, capsys):
    bundle = tmp_path / "fs.json"
    bundle.write_text(lio.emit(lio.factor_system_to_json(ext_heisenberg_kernel())))
    code, report = run_cli(["obstruction", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["obstruction"]["zero"]
    code, report = run_cli(["extension", "classify", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["translation_dim"] == 1
    code, report = run_cli(["extension", "reduce", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["round_trip_witnessed"]


def test_cli_derivations(tmp_path, capsys):
    bundle = tmp_path / "fs.json"
    bundle.write_text(lio.emit(lio.factor_system_to_json(ext_heisenberg3())))
    code, report = run_cli(["derivations", "--ext", str(bundle)], capsys)
    assert code == 0
    assert report["report"]["total_derivation_dim"] == 6
    assert report["report"]["exact"]


def test_cli_lift_and_automorphism(tmp_path, capsys):
    from liecoh.catalog import ext_filiform4
    fs = ext_filiform4()
    bundle = tmp_path / "fs.json"
    bundle.write_text(lio.emit(lio.factor_system_to_json(fs)))
    pair = tmp_path / "pair.json"
    pair.write_text(lio.emit({
        "h": lio.algebra_to_json(catalog("abelian2")),
        "psi_n": [[["0"]], [["0"]]],
        "psi_g": [
            [["0", "0", "0"], ["0", "0", "0"], ["1", "0", "0"]],
            [["0", "0", "0"], ["0", "0", "0"], ["0", "1", "0"]],
        ],
        "theta": [
            {"degree": 1, "value_dim": 1, "coeffs": {}},
            {"degree": 1, "value_dim": 1, "coeffs": {"2": ["1"]}},
        ],
    }))
    code, report = run_cli(["lift", "--ext", str(bundle), "--pair", str(pair)],
                           capsys)
    assert code == 2
    assert report["lift_exists"] is False

    aut = tmp_path / "aut.json"
    aut.write_text(lio.emit({
        "alpha": [["1"]],
        "beta": [["0", "1", "0"], ["1", "0", "0"], ["0", "0", "-1"]],
    }))
    code, report = run_cli(["automorphism", "--ext", str(bundle),
                            "--pair", str(aut)], capsys)
    assert code == 2
    assert report["lift_exists"] is False
    assert not report["obstruction"]["zero"]


def test_cli_crossed_module(tmp_path, capsys):
    from liecoh.extensions import GKernel, build_quotient_stage
    fs = ext_heisenberg_kernel()
    stage = build_quotient_stage(GKernel.from_factor_system(fs))
    cm_data = {
        "h": lio.algebra_to_json(fs.n),
        "ghat": lio.algebra_to_json(stage.gs),
        "alpha": lio.matrix_to_json(stage.alpha_matrix),
        "action": [lio.matrix_to_json(m) for m in stage.rho.matrices],
    }
    path = tmp_path / "cm.json"
    path.write_text(lio.emit(cm_data))
    code, report = run_cli(["crossed-module", "validate", "--cm", str(path)],
                           capsys)
    assert code == 0
    assert report["report"]["valid"]
    code, report = run_cli(["crossed-module", "class", "--cm", str(path)], capsys)
    assert code == 0
    assert report["routes_agree"] and report["theta_route"]["zero"]


def test_cli_v2_check_deterministic(capsys):
    code, report1 = run_cli(["v2-check", "--samples", "25", "--seed", "3"], capsys)
    assert code == 0
    assert report1["report"]["failures"] == 0
    code, report2 = run_cli(["v2-check", "--samples", "25", "--seed", "3"], capsys)
    assert report1 == report2


def test_cli_reproduce_unknown_bundle(capsys):
    code, report = run_cli(["reproduce", "nothing"], capsys)
    assert code == 1
    assert report["error"]["kind"] == "UnknownBundleError"


def test_cli_byte_determinism(tmp_path):
    env_cmd = [sys.executable, "-m", "liecoh.cli", "cohomology",
               "--algebra", "sl2", "--degree", "3"]
    out1 = subprocess.run(env_cmd, capture_output=True, check=True).stdout
    out2 = subprocess.run(env_cmd, capture_output=True, check=True).stdout
    assert out1 == out2
    data = json.loads(out1)
    assert data["dim_cohomology"] == 1


def test_degree_cap_environment(tmp_path):
    import os
    env = dict(os.environ, LIECOH_DEGREE_CAP="2")
    cmd = [sys.executable, "-m", "liecoh.cli", "cohomology",
           "--algebra", "sl2", "--degree", "3"]
    proc = subprocess.run(cmd, capture_output=True, env=env)
    assert proc.returncode == 1
    report = json.loads(proc.stdout)
    assert report["error"]["kind"] == "DegreeCapExceededError"
