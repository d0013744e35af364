import json


from bcsecrecy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


CODE_FLAGS = ["--n1", "4", "--n2", "4", "--ne", "1", "--r1", "2", "--r2", "2"]


class TestEncodeDecode:
    def test_round_trip(self, capsys):
        code, doc = run_json(capsys, "encode", *CODE_FLAGS, "--m1", "10", "--m2", "11")
        assert code == 0 and doc["schema"] == 1
        assert doc["x"] == "0110" and doc["code"]["layout"] == "CaseD"
        code, doc = run_json(capsys, "decode", *CODE_FLAGS, "--y1", doc["x"], "--y2", doc["x"])
        assert code == 0 and doc["m1"] == "10" and doc["m2"] == "11"

    def test_code_file_input(self, capsys, tmp_path):
        path = tmp_path / "code.json"
        path.write_text(json.dumps({"n1": 3, "n2": 2, "ne": 1, "r1": 2, "r2": 1}))
        code, doc = run_json(
            capsys, "encode", "--code", str(path), "--m1", "01", "--m2", "1", "--seed", "7"
        )
        assert code == 0 and len(doc["x"]) == 3

    def test_infeasible_code_exit(self, capsys):
        code = main(["encode", "--n1", "3", "--n2", "2", "--ne", "1",
                     "--r1", "3", "--r2", "1", "--m1", "111", "--m2", "1"])
        assert code == 3


class TestVerify:
    def test_single_tuple_passes(self, capsys):
        code, doc = run_json(capsys, "verify", "--n1", "3", "--n2", "2", "--ne", "1",
                             "--r1", "2", "--r2", "1")
        assert code == 0 and doc["all_ok"] and doc["count"] == 2  # both paddings

    def test_sweep(self, capsys):
        code, doc = run_json(capsys, "verify", "--max-n1", "3", "--pad", "random")
        assert code == 0 and doc["all_ok"] and doc["count"] > 20
        sample = doc["results"][0]
        for key in ("pe1", "pe2", "leak1_zero", "leak2_zero", "joint_bits"):
            assert key in sample

    def test_empty_sweep(self, capsys):
        code, doc = run_json(capsys, "verify")
        assert code == 0 and doc["count"] == 0

    def test_budget_exit_names_offender(self, capsys):
        code = main(["verify", "--n1", "30", "--n2", "0", "--ne", "0",
                     "--r1", "25", "--r2", "0"])
        assert code == 4
        assert "n1=30" in capsys.readouterr().err


class TestRegion:
    def test_halfplane_report(self, capsys, tmp_path):
        dist = {
            "p_u": [0.5, 0.5],
            "p_v1v2_given_u": [[[0.5, 0.0], [0.5, 0.0]], [[0.0, 0.5], [0.0, 0.5]]],
            "p_x_given_v1v2": [[[1.0, 0.0], [1.0, 0.0]], [[0.0, 1.0], [0.0, 1.0]]],
            "channel_deterministic": {"y1": [0, 1], "y2": [0, 1], "z": [0, 0]},
        }
        path = tmp_path / "dist.json"
        path.write_text(json.dumps(dist))
        code, doc = run_json(capsys, "region", "--dist", str(path), "--kind", "marton_individual")
        assert code == 0 and doc["certified"]
        assert {"a": 1, "b": 1, "c": 1.0} in doc["halfplanes"]

    def test_missing_file(self, capsys):
        assert main(["region", "--dist", "/nonexistent.json"]) == 3


class TestFrontier:
    def test_gaussian_preset_writes_files(self, capsys, tmp_path):
        prefix = str(tmp_path / "fig5a")
        code, doc = run_json(capsys, "frontier", "--preset", "fig5a", "--grid", "16",
                             "--out-prefix", prefix, "--svg")
        assert code == 0
        for name in doc["written"]:
            assert (tmp_path / name.split("/")[-1]).exists()
        sweep = (tmp_path / "fig5a_capacity_sweep.csv").read_text()
        assert sweep.splitlines()[0] == "alpha,r1_bound,r2_bound,sum_bound"

    def test_svg_is_well_formed(self, capsys, tmp_path):
        import xml.etree.ElementTree as ET

        prefix = str(tmp_path / "plot")
        assert main(["frontier", "--preset", "fig5c", "--grid", "24",
                     "--out-prefix", prefix, "--svg"]) == 0
        root = ET.parse(tmp_path / "plot.svg").getroot()
        assert root.tag.endswith("svg")
        assert any(child.tag.endswith("polyline") for child in root)

    def test_csv_byte_stable(self, capsys, tmp_path):
        args = ["frontier", "--preset", "fig5d", "--grid", "32",
                "--out-prefix", str(tmp_path / "run")]
        assert main(args) == 0
        first = (tmp_path / "run_inner_sweep.csv").read_bytes()
        assert main(args) == 0
        assert (tmp_path / "run_inner_sweep.csv").read_bytes() == first

    def test_deterministic_preset_polygons(self, capsys, tmp_path):
        prefix = str(tmp_path / "fig2a")
        code, doc = run_json(capsys, "frontier", "--preset", "fig2a", "--out-prefix", prefix)
        assert code == 0
        assert doc["polygons"]["individual"] == [[0, 0], [0, 1], [3, 1], [3, 0]]
        text = (tmp_path / "fig2a_polygons.csv").read_text()
        assert text.splitlines()[0] == "region,r1,r2"

    def test_unknown_preset_is_usage_error(self, capsys):
        assert main(["frontier", "--preset", "fig9z"]) == 2

    def test_explicit_params(self, capsys, tmp_path):
        code, doc = run_json(capsys, "frontier", "--power", "1", "--s1", "1/10",
                             "--s2", "1/3", "--se", "2", "--grid", "8",
                             "--kinds", "inner", "--out-prefix", str(tmp_path / "x"))
        assert code == 0 and doc["kinds"] == ["inner"]


class TestGap:
    def test_preset_report(self, capsys):
        code, doc = run_json(capsys, "gap", "--preset", "fig5c", "--grid", "50")
        assert code == 0
        assert doc["alpha0"] == "5/12"
        assert 0 < doc["max_gap_bits"] <= 0.5
        assert 0 < doc["max_gap_where_binding"] <= 0.5

    def test_binding_gap_vanishes_in_capacity_regime(self, capsys):
        code, doc = run_json(capsys, "gap", "--preset", "fig5a", "--grid", "50")
        assert code == 0 and doc["capacity_condition"]
        assert doc["max_gap_where_binding"] == 0.0

    def test_ordering_violation_exit(self, capsys):
        assert main(["gap", "--power", "1", "--s1", "2", "--s2", "1", "--se", "3"]) == 5


class TestFme:
    def test_projection_report(self, capsys, tmp_path):
        system = tmp_path / "sys.ineq"
        system.write_text("vars: R1 R2 Rr\nR1 + R2 + Rr <= IUY1\nR1 + Rr >= IUZ\n")
        params = tmp_path / "params.json"
        params.write_text(json.dumps({"IUY1": "2", "IUZ": "1/2"}))
        code, doc = run_json(capsys, "fme", "--system", str(system), "--params", str(params))
        assert code == 0 and doc["variables"] == ["R1", "R2"]
        assert {"coeffs": {"R1": 1, "R2": 1}, "rhs": "2"} in doc["halfplanes"]

    def test_bundled_systems_resolve(self, capsys, tmp_path):
        import importlib.resources

        src = importlib.resources.files("bcsecrecy").joinpath("systems/appendix_b.ineq")
        params = tmp_path / "params.json"
        params.write_text(json.dumps({"IUY1": "3", "IUY2": "5/2", "IUZ": "1"}))
        code, doc = run_json(capsys, "fme", "--system", str(src), "--params", str(params))
        assert code == 0
        assert {"coeffs": {"R1": 1}, "rhs": "3/2"} in doc["halfplanes"]


class TestConfig:
    def test_toml_defaults_and_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.toml"
        cfg.write_text('[gap]\npreset = "fig5c"\ngrid = 7\n')
        code, doc = run_json(capsys, "gap", "--config", str(cfg))
        assert code == 0 and doc["grid"] == 7
        code, doc = run_json(capsys, "gap", "--config", str(cfg), "--grid", "9")
        assert code == 0 and doc["grid"] == 9

    def test_missing_config(self, capsys):
        assert main(["gap", "--config", "/nope.toml", "--preset", "fig5a"]) == 2
