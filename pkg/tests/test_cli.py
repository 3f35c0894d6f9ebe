import json

import pytest

from grasspack.certify import certify
from grasspack.cli import frame_from_json_obj, frame_to_json_obj, load_frame, run, save_frame
from grasspack.construct import DifferenceSet, harmonic_etf, regular_simplex, tensor_eitff
from grasspack.linalg import FieldTag, NumericalError


def run_capture(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFrameFileFormat:
    @pytest.mark.parametrize(
        "frame",
        [regular_simplex(4), tensor_eitff(harmonic_etf(DifferenceSet(7, [1, 2, 4])), 2)],
        ids=["real", "complex"],
    )
    def test_round_trip_is_bit_exact(self, frame):
        obj = json.loads(json.dumps(frame_to_json_obj(frame)))
        loaded = frame_from_json_obj(obj)
        assert loaded.field is frame.field
        for a, b in zip(frame.bases, loaded.bases):
            assert a.array.tobytes() == b.array.tobytes()

    def test_save_load_file(self, tmp_path):
        path = str(tmp_path / "frame.json")
        frame = regular_simplex(3)
        save_frame(frame, path)
        loaded = load_frame(path)
        assert loaded == frame

    def test_loader_names_failing_basis(self):
        obj = frame_to_json_obj(regular_simplex(3))
        obj["bases"][1][0][0] = 5.0  # breaks unit norm of basis 2
        with pytest.raises(ValueError, match=r"bases\[2\]"):
            frame_from_json_obj(obj)

    def test_loader_names_shape_problems(self):
        obj = frame_to_json_obj(regular_simplex(3))
        obj["bases"][2][0] = [1.0, 2.0]
        with pytest.raises(ValueError, match=r"bases\[3\]"):
            frame_from_json_obj(obj)
        obj = frame_to_json_obj(regular_simplex(3))
        obj["n"] = 4
        with pytest.raises(ValueError, match="n"):
            frame_from_json_obj(obj)

    def test_loader_checks_entry_shape_for_field(self):
        obj = frame_to_json_obj(harmonic_etf(DifferenceSet(7, [1, 2, 4])))
        obj["field"] = "R"  # complex [re, im] entries now invalid
        with pytest.raises(ValueError, match="numeric"):
            frame_from_json_obj(obj)


class TestBoundsCommand:
    def test_human_output(self, capsys):
        code, out, _ = run_capture(capsys, "bounds", "--n", "3", "--d", "4", "--c", "2")
        assert code == 0
        assert "simplex chordal:   1.5" in out
        assert "simplex gram:      0.5" in out
        assert "eitff spectral:    0.25" in out

    def test_json_output(self, capsys):
        code, out, _ = run_capture(
            capsys, "bounds", "--n", "10", "--d", "3", "--c", "1", "--field", "C", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["orthoplex_gram"] == pytest.approx(1 / 3)
        assert payload["gerzon"] == 9

    def test_invalid_field(self, capsys):
        code, _, err = run_capture(capsys, "bounds", "--n", "3", "--d", "2", "--c", "1", "--field", "Q")
        assert code == 1
        assert "field" in err

    def test_invalid_dimensions(self, capsys):
        code, _, err = run_capture(capsys, "bounds", "--n", "3", "--d", "2", "--c", "5")
        assert code == 1
        assert "c" in err


class TestConstructAndCertify:
    def test_simplex_certify_pipeline(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        code, _, _ = run_capture(capsys, "construct", "simplex", "--n", "3", "-o", path)
        assert code == 0
        code, out, _ = run_capture(capsys, "certify", path, "--format", "json")
        assert code == 0
        cert = json.loads(out)
        assert cert["is_ectff"] is True and cert["is_eitff"] is True
        assert cert["sigma_sq"] == pytest.approx(0.25, abs=1e-12)

    def test_certify_json_has_exactly_certificate_fields(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        run_capture(capsys, "construct", "simplex", "--n", "4", "-o", path)
        code, out, _ = run_capture(capsys, "certify", path, "--format", "json")
        assert code == 0
        cert = certify(load_frame(path))
        assert json.loads(out) == json.loads(json.dumps(cert.as_dict()))

    def test_tensor_pipeline(self, tmp_path, capsys):
        etf = str(tmp_path / "etf.json")
        out_path = str(tmp_path / "tensor.json")
        run_capture(capsys, "construct", "simplex", "--n", "3", "-o", etf)
        code, _, _ = run_capture(capsys, "construct", "tensor", etf, "--c", "2", "-o", out_path)
        assert code == 0
        frame = load_frame(out_path)
        assert (frame.n, frame.d, frame.c) == (3, 4, 2)
        code, out, _ = run_capture(capsys, "certify", out_path, "--format", "json")
        assert json.loads(out)["is_eitff"] is True

    def test_harmonic_and_orthoplex(self, tmp_path, capsys):
        h = str(tmp_path / "h.json")
        code, _, _ = run_capture(
            capsys, "construct", "harmonic", "--modulus", "7", "--set", "1,2,4", "-o", h
        )
        assert code == 0
        frame = load_frame(h)
        assert (frame.n, frame.d, frame.field) == (7, 3, FieldTag.COMPLEX)

        o = str(tmp_path / "o.json")
        code, _, _ = run_capture(capsys, "construct", "orthoplex", "--d", "2", "-o", o)
        assert code == 0
        assert load_frame(o).n == 4

    def test_construct_without_output_prints_frame(self, capsys):
        code, out, _ = run_capture(capsys, "construct", "simplex", "--n", "3")
        assert code == 0
        obj = json.loads(out)
        assert obj["n"] == 3 and obj["field"] == "R"

    def test_certify_rejects_bad_basis_naming_it(self, tmp_path, capsys):
        path = str(tmp_path / "bad.json")
        obj = frame_to_json_obj(regular_simplex(3))
        obj["bases"][1] = [[2.0], [0.0]]  # non-unit column in basis 2
        with open(path, "w") as fh:
            json.dump(obj, fh)
        code, _, err = run_capture(capsys, "certify", path)
        assert code == 1
        assert "bases[2]" in err

    def test_certify_missing_file(self, capsys):
        code, _, err = run_capture(capsys, "certify", "/nonexistent/frame.json")
        assert code == 1
        assert "frame file" in err

    def test_harmonic_bad_set(self, capsys):
        code, _, err = run_capture(
            capsys, "construct", "harmonic", "--modulus", "7", "--set", "1,x"
        )
        assert code == 1
        assert "set" in err


class TestAngles:
    def test_values_match_library(self, tmp_path, capsys):
        import grasspack.metrics as metrics

        path = str(tmp_path / "s.json")
        run_capture(capsys, "construct", "simplex", "--n", "3", "-o", path)
        code, out, _ = run_capture(capsys, "angles", path, "--i", "1", "--j", "2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        f = load_frame(path)
        assert payload["principal_angles"] == pytest.approx(
            list(metrics.principal_angles(f.bases[0], f.bases[1]).thetas)
        )
        assert payload["chordal_distance_sq"] == pytest.approx(0.75)

    def test_one_based_indices_validated(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        run_capture(capsys, "construct", "simplex", "--n", "3", "-o", path)
        code, _, err = run_capture(capsys, "angles", path, "--i", "0", "--j", "2")
        assert code == 1 and "range" in err
        code, _, err = run_capture(capsys, "angles", path, "--i", "2", "--j", "2")
        assert code == 1 and "differ" in err


class TestPackCommand:
    def test_pack_writes_frame_and_summary(self, tmp_path, capsys):
        path = str(tmp_path / "packed.json")
        code, out, _ = run_capture(
            capsys,
            "pack", "--field", "R", "--d", "2", "--c", "1", "--n", "3",
            "--iters", "200", "--restarts", "2", "--seed", "1",
            "-o", path, "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["achieved"] <= 0.26
        assert payload["output"] == path
        frame = load_frame(path)
        assert (frame.n, frame.d, frame.c) == (3, 2, 1)

    def test_pack_spectral_criterion(self, capsys):
        code, out, _ = run_capture(
            capsys,
            "pack", "--field", "C", "--d", "3", "--c", "1", "--n", "4",
            "--criterion", "spectral", "--iters", "150", "--restarts", "2",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["criterion"] == "spectral"
        assert payload["gap"] >= -1e-10
        assert payload["frame"]["n"] == 4

    def test_pack_is_deterministic_cli_level(self, tmp_path, capsys):
        args = [
            "pack", "--field", "R", "--d", "2", "--c", "1", "--n", "3",
            "--iters", "50", "--restarts", "2", "--seed", "9", "--format", "json",
        ]
        _, out1, _ = run_capture(capsys, *args)
        _, out2, _ = run_capture(capsys, *args)
        assert out1 == out2

    def test_numerical_failure_maps_to_exit_2(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise NumericalError("diverged")

        monkeypatch.setattr("grasspack.optimize.pack", boom)
        code, _, err = run_capture(
            capsys, "pack", "--field", "R", "--d", "2", "--c", "1", "--n", "3"
        )
        assert code == 2
        assert "numerical failure" in err


class TestParsing:
    def test_unknown_subcommand(self, capsys):
        code, _, err = run_capture(capsys, "frobnicate")
        assert code == 1
        assert err.strip() != ""

    def test_missing_required_flag(self, capsys):
        code, _, err = run_capture(capsys, "bounds", "--n", "3", "--d", "2")
        assert code == 1

    def test_help_exits_zero(self, capsys):
        code, out, _ = run_capture(capsys, "--help")
        assert code == 0
        assert "grasspack" in out
