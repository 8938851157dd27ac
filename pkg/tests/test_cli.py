"""End-to-end tests for the ``pptsep`` command line, run in-process via main()."""

import json

import numpy as np
import pytest

from pptsep import (
    TripartiteDims,
    assemble_canonical_state,
    gen_npt_control,
    ghz_vector,
    identity_corner_state,
    load_canonical_form,
    load_ensemble,
    load_state,
    qubit_corner_state,
    save_state,
    verify_ensemble,
)
from pptsep.cli import main


def run(capsys, *argv):
    """Invoke the CLI and return (exit_code, parsed_stdout_json_or_None)."""
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.fixture
def ppt_state_file(tmp_path):
    p = tmp_path / "ppt.json"
    save_state(qubit_corner_state(0.3), p)
    return str(p)

@pytest.fixture
def npt_state_file(tmp_path):
    p = tmp_path / "npt.json"
    save_state(gen_npt_control(TripartiteDims(2, 2, 2), p=0.5, phi=ghz_vector()), p)
    return str(p)


class TestCheckPpt:
    def test_ppt_state_exits_zero(self, capsys, ppt_state_file):
        code, doc = run(capsys, "check-ppt", ppt_state_file)
        assert code == 0
        assert doc["overall_ppt"] is True
        assert [e["mask"] for e in doc["masks"]] == [
            "none", "A", "B", "C", "AB", "AC", "BC", "ABC",
        ]
        assert all(e["pass"] for e in doc["masks"])

    def test_npt_state_exits_one(self, capsys, npt_state_file):
        code, doc = run(capsys, "check-ppt", npt_state_file)
        assert code == 1
        assert doc["overall_ppt"] is False
        by_mask = {e["mask"]: e for e in doc["masks"]}
        assert by_mask["A"]["min_eigenvalue"] == pytest.approx(-0.1875, abs=1e-12)

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, doc = run(capsys, "check-ppt", str(tmp_path / "nope.json"))
        assert code == 2
        assert doc is None  # errors go to stderr, stdout stays empty

    def test_malformed_file_exits_two(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, doc = run(capsys, "check-ppt", str(p))
        assert code == 2
        assert doc is None


class TestDecompose:
    def test_identity_corner_full_run(self, capsys, tmp_path):
        state_path = tmp_path / "state.json"
        out_path = tmp_path / "ensemble.json"
        state = identity_corner_state(TripartiteDims(2, 2, 3))
        save_state(state, state_path)

        code, doc = run(
            capsys, "decompose", str(state_path), "--out", str(out_path)
        )
        assert code == 0
        assert doc["status"] == "ok"
        assert doc["pass"] is True
        assert doc["terms"] == 3
        np.testing.assert_allclose(doc["weights"], [1 / 3] * 3, atol=1e-12)

        # the written EnsembleFile certifies the state on re-load
        ensemble = load_ensemble(out_path)
        residual, ok = verify_ensemble(state, ensemble, tol=1e-8)
        assert ok and residual <= 1e-10

    def test_rank_deficient_state_exits_three_with_typed_error(self, capsys, tmp_path):
        p = tmp_path / "bound.json"
        code, _ = run(capsys, "generate", "--kind", "example-iii", "--out", str(p))
        assert code == 0
        capsys.readouterr()
        code, doc = run(capsys, "decompose", str(p))
        assert code == 3
        assert doc["status"] == "error"
        assert doc["error"] == "RankMismatch"
        assert doc["message"]

    def test_explicit_witness_requires_both_vectors(self, capsys, ppt_state_file):
        code, doc = run(
            capsys, "decompose", ppt_state_file, "--witness", "explicit", "--ea", "1,0"
        )
        assert code == 2
        assert doc is None

    def test_explicit_witness_runs(self, capsys, ppt_state_file):
        # the qubit example is supported on block (0, 0), so that is the
        # product pair with an invertible sandwich
        code, doc = run(
            capsys,
            "decompose",
            ppt_state_file,
            "--witness", "explicit",
            "--ea", "1,0",
            "--fb", "1,0",
        )
        assert code == 0
        assert doc["pass"] is True
        assert sorted(doc["weights"]) == pytest.approx([0.2, 0.8], abs=1e-10)


class TestGenerate:
    def test_same_seed_same_bytes(self, capsys, tmp_path):
        p1, p2 = tmp_path / "s1.json", tmp_path / "s2.json"
        for p in (p1, p2):
            code, _ = run(
                capsys,
                "generate", "--kind", "canonical",
                "--dims", "3", "3", "2", "--seed", "7",
                "--out", str(p),
            )
            assert code == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_canonical_emits_truth_sidecar(self, capsys, tmp_path):
        p = tmp_path / "state.json"
        code, doc = run(
            capsys,
            "generate", "--kind", "canonical", "--dims", "2", "2", "2",
            "--out", str(p),
        )
        assert code == 0
        truth = load_canonical_form(doc["truth"])
        assert truth.dims == TripartiteDims(2, 2, 2)
        state = load_state(p)
        # ground truth reassembles the very state that was written
        rebuilt, _ = assemble_canonical_state(
            truth.dims, list(truth.a_list), list(truth.b_list), truth.f
        )
        np.testing.assert_allclose(state.rho, rebuilt.rho, atol=1e-12)

    def test_example_ii_matches_library_constructor(self, capsys, tmp_path):
        p = tmp_path / "qubit.json"
        code, doc = run(
            capsys, "generate", "--kind", "example-ii", "--a", "0.3", "--out", str(p)
        )
        assert code == 0
        assert doc["dims"] == [2, 2, 2]
        np.testing.assert_array_equal(load_state(p).rho, qubit_corner_state(0.3).rho)

    def test_infeasible_coherence_exits_two(self, capsys, tmp_path):
        code, doc = run(
            capsys,
            "generate", "--kind", "example-ii", "--a", "0.7",
            "--out", str(tmp_path / "x.json"),
        )
        assert code == 2
        assert doc is None

    def test_canonical_without_dims_exits_two(self, capsys, tmp_path):
        code, _ = run(
            capsys, "generate", "--kind", "canonical", "--out", str(tmp_path / "x.json")
        )
        assert code == 2


class TestVerify:
    def _write_pair(self, tmp_path, capsys):
        state_path = tmp_path / "state.json"
        ens_path = tmp_path / "ens.json"
        save_state(qubit_corner_state(0.2), state_path)
        code, _ = run(capsys, "decompose", str(state_path), "--out", str(ens_path))
        assert code == 0
        capsys.readouterr()
        return state_path, ens_path

    def test_good_pair_exits_zero(self, capsys, tmp_path):
        state_path, ens_path = self._write_pair(tmp_path, capsys)
        code, doc = run(capsys, "verify", str(state_path), str(ens_path))
        assert code == 0
        assert doc["pass"] is True
        assert doc["total_weight"] == pytest.approx(1.0, abs=1e-12)

    def test_tampered_weight_exits_one(self, capsys, tmp_path):
        state_path, ens_path = self._write_pair(tmp_path, capsys)
        doc = json.loads(ens_path.read_text())
        doc["terms"][0]["p"] *= 1.5
        ens_path.write_text(json.dumps(doc))
        code, out = run(capsys, "verify", str(state_path), str(ens_path))
        assert code == 1
        assert out["pass"] is False

    def test_dimension_mismatch_exits_two(self, capsys, tmp_path):
        _, ens_path = self._write_pair(tmp_path, capsys)
        other = tmp_path / "other.json"
        save_state(identity_corner_state(TripartiteDims(2, 2, 3)), other)
        code, doc = run(capsys, "verify", str(other), str(ens_path))
        assert code == 2
        assert doc is None


class TestStdoutDiscipline:
    @pytest.mark.parametrize("tolflag", [[], ["--tol", "1e-6"]])
    def test_stdout_is_a_single_json_document(self, capsys, ppt_state_file, tolflag):
        code = main(["check-ppt", ppt_state_file, *tolflag])
        out = capsys.readouterr().out
        assert code == 0
        json.loads(out)  # raises if stdout carries anything besides the document
