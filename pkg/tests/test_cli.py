"""命令行与运行配置集成测试"""
import json

import pytest

from src.cli import load_run_config, parse_run_config
from src.errors import ConfigError
from src.main import main, parse_args
from src.storage import read_csv

ELLIPSE = {"r0": 1.0, "cos": [0.0, 0.15], "sin": [0.0, 0.0]}


def write_config(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def run(tmp_path, command, data, *extra, out="out"):
    config = write_config(tmp_path, data)
    out_dir = tmp_path / out
    code = main([command, "--config", config, "--out", str(out_dir), *extra])
    return code, out_dir


class TestRunConfig:
    """测试运行配置校验"""

    def test_defaults_filled(self):
        config = parse_run_config({"shape": ELLIPSE})
        assert config.refinement == 16
        assert config.k == 10
        assert config.heat.t[0] == 0.02
        assert config.flow.velocity_modes is None
        assert config.flow.stop_tol == 1e-8
        assert config.boundary_shape().cos_coeffs == (0.0, 0.15)

    def test_unknown_field(self):
        with pytest.raises(ConfigError):
            parse_run_config({"shape": ELLIPSE, "refine": 3})

    def test_exactly_one_domain(self):
        rectangle = {"width": 1.0, "height": 1.0, "nx": 4, "ny": 4}
        with pytest.raises(ConfigError):
            parse_run_config({"shape": ELLIPSE, "rectangle": rectangle})
        with pytest.raises(ConfigError):
            parse_run_config({})

    def test_invalid_inline_shape(self):
        with pytest.raises(ConfigError):
            parse_run_config({"shape": {"r0": 1.0, "cos": [0.0]}})

    def test_invalid_eps(self):
        with pytest.raises(ConfigError):
            parse_run_config({"shape": ELLIPSE, "deriv": {"eps": [1e-3, -1e-3]}})

    def test_overrides(self):
        """测试命令行覆盖，None 不覆盖"""
        config = parse_run_config({"shape": ELLIPSE, "refinement": 8}, refinement=None, seed=7)
        assert config.refinement == 8
        assert config.seed == 7

    def test_shape_path_inlined(self, tmp_path):
        """测试区域文件路径按配置目录解析并内联"""
        (tmp_path / "shape.json").write_text(json.dumps(ELLIPSE), encoding="utf-8")
        config = load_run_config(write_config(tmp_path, {"shape": "shape.json"}))
        assert config.resolved()["shape"] == ELLIPSE

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_run_config(path)


class TestParseArgs:
    """测试参数解析"""

    def test_flags(self):
        args = parse_args(["eigs", "--config", "run.json", "--refine", "8", "--seed", "3", "-d"])
        assert args.command == "eigs"
        assert args.refine == 8
        assert args.seed == 3
        assert args.debug
        assert args.out == "out"

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            parse_args(["nothing", "--config", "run.json"])


class TestEigsCommand:
    """测试 eigs 命令"""

    def test_spectrum_csv(self, tmp_path):
        code, out = run(tmp_path, "eigs", {"shape": ELLIPSE, "k": 4}, "--refine", "6")
        assert code == 0
        rows = read_csv(out / "spectrum.csv")
        assert list(rows[0]) == ["index", "eigenvalue", "cluster", "residual"]
        assert [row["index"] for row in rows[:4]] == ["1", "2", "3", "4"]
        assert (out / "config.resolved.json").exists()
        assert (out / "run.log").exists()
        resolved = json.loads((out / "config.resolved.json").read_text(encoding="utf-8"))
        assert resolved["refinement"] == 6

    def test_byte_deterministic(self, tmp_path):
        """测试相同输入输出逐字节相同"""
        data = {"shape": ELLIPSE, "k": 3, "refinement": 6}
        _, a = run(tmp_path, "eigs", data, out="a")
        _, b = run(tmp_path, "eigs", data, out="b")
        assert (a / "spectrum.csv").read_bytes() == (b / "spectrum.csv").read_bytes()

    def test_rectangle_and_mesh_dump(self, tmp_path):
        data = {"rectangle": {"width": 3.0, "height": 2.0, "nx": 6, "ny": 4}, "k": 2, "dump_mesh": True}
        code, out = run(tmp_path, "eig", data)
        assert code == 0
        mesh = json.loads((out / "mesh.json").read_text(encoding="utf-8"))
        assert len(mesh["nodes"]) == 7 * 5

    def test_config_error_exit_code(self, tmp_path):
        code, _ = run(tmp_path, "eigs", {"shape": ELLIPSE, "bogus": 1})
        assert code == 2

    def test_numerical_error_exit_code(self, tmp_path):
        """测试非星形区域返回 1"""
        code, out = run(tmp_path, "eigs", {"shape": {"r0": 0.5, "cos": [0.0, 0.8], "sin": [0.0, 0.0]}})
        assert code == 1
        assert "NonStarShaped" in (out / "error.log").read_text(encoding="utf-8")


class TestAnalysisCommands:
    """测试 deriv / critical / heat / flow 命令"""

    def test_deriv(self, tmp_path):
        data = {"shape": ELLIPSE, "refinement": 6, "quadrature_nodes": 256,
                "deriv": {"k": 1, "eps": [1e-3, 1e-4, 1e-5], "concurrent": False}}
        code, out = run(tmp_path, "deriv", data)
        assert code == 0
        rows = read_csv(out / "fd.csv")
        assert list(rows[0]) == ["eps", "fwd", "bwd", "pred_right", "pred_left"]
        summary = json.loads((out / "deriv_summary.json").read_text(encoding="utf-8"))
        assert summary["k"] == 1
        for key in ("convergence_order", "extrapolated", "mesh_floor", "convergence_order_above_floor"):
            assert set(summary[key]) == {"forward", "backward"}
        assert len(summary["forward_error"]) == 3

    def test_deriv_rejects_rectangle(self, tmp_path):
        data = {"rectangle": {"width": 1.0, "height": 1.0, "nx": 4, "ny": 4}}
        code, _ = run(tmp_path, "deriv", data)
        assert code == 2

    def test_critical(self, tmp_path):
        data = {"shape": {"r0": 1.0, "cos": [0.0], "sin": [0.0]}, "refinement": 6, "k": 3,
                "critical": {"tol": 0.2, "heat_times": [1.0], "scan_modes": 2}}
        code, out = run(tmp_path, "critical", data)
        assert code == 0
        report = json.loads((out / "critical.json").read_text(encoding="utf-8"))
        assert [c.get("cluster", [c.get("k")]) for c in report["clusters"]] == [[1], [2, 3]]
        assert report["heat"][0]["t"] == 1.0
        assert report["curvature"]["constant"] is True
        assert len(report["local_extremum"]) == 3

    def test_critical_rejects_split_cluster(self, tmp_path):
        """测试请求的簇与数值簇划分不一致"""
        data = {"shape": {"r0": 1.0, "cos": [0.0], "sin": [0.0]}, "refinement": 6, "k": 3,
                "critical": {"clusters": [[2]]}}
        code, _ = run(tmp_path, "critical", data)
        assert code == 2

    def test_heat_rectangle(self, tmp_path):
        data = {"rectangle": {"width": 3.0, "height": 3.0, "nx": 8, "ny": 8}, "k": 6,
                "heat": {"t": [0.5, 1.0]}}
        code, out = run(tmp_path, "heat", data)
        assert code == 0
        rows = read_csv(out / "heat.csv")
        assert list(rows[0]) == ["t", "Y_spec", "tail_bound", "Y_asym", "rel_gap"]
        coeffs = json.loads((out / "heat_coeffs.json").read_text(encoding="utf-8"))
        assert coeffs["a3"] == 0.0

    def test_heat_derivative(self, tmp_path):
        data = {"shape": ELLIPSE, "refinement": 6, "k": 4,
                "heat": {"t": [0.5], "velocity": [{"kind": "cos", "mode": 2}]}}
        code, out = run(tmp_path, "heat", data)
        assert code == 0
        assert [row["t"] for row in read_csv(out / "heat_derivative.csv")] == ["0.5"]

    def test_heat_accuracy_not_met(self, tmp_path):
        data = {"shape": ELLIPSE, "refinement": 6, "k": 4, "heat": {"t": [0.01], "accuracy": 1e-9}}
        code, _ = run(tmp_path, "heat", data)
        assert code == 1

    def test_flow(self, tmp_path):
        data = {"shape": ELLIPSE, "refinement": 6, "flow": {"max_steps": 2}}
        code, out = run(tmp_path, "flow", data)
        assert code == 0
        rows = read_csv(out / "flow.csv")
        assert list(rows[0]) == ["step", "lambda_k", "area", "perimeter", "grad_norm", "step_size"]
        assert rows[0]["step"] == "0"
        summary = json.loads((out / "flow_summary.json").read_text(encoding="utf-8"))
        assert summary["stop_reason"] in ("max_steps", "converged", "step_too_small")
        final = json.loads((out / "final_shape.json").read_text(encoding="utf-8"))
        assert set(final) == {"r0", "cos", "sin"}
