import io
import json
import math

import pandas as pd
import pytest

from src.backtest.benchmark import Benchmark
from src.cli.commands import main
from src.cli.pipeline import solve_instance
from src.frontends.instance_frontends import BoxInstance, ExplicitInstance
from src.utils.errors import InstanceError
from src.utils.instance_io import save_instance

P3 = ExplicitInstance(3, (((0, 1), (1, 2), (2, 3)),), g_edges=((0, 1), (1, 2)))
C5 = ExplicitInstance(5, (((0, 1),) * 5,), g_edges=tuple((i, (i + 1) % 5) for i in range(5)))


def _write(tmp_path, name, instance):
    path = tmp_path / name
    save_instance(instance, path)
    return str(path)


def _read(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def test_gen_is_byte_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "rectangles", "5", "--seed", "42", "--coord-max", "100", "--out", str(first)]) == 0
    assert main(["gen", "rectangles", "5", "--seed", "42", "--coord-max", "100", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(_read(first)["rects"]) == 5


def test_gen_empty_instance_to_stdout(capsys):
    assert main(["gen", "chords", "0"]) == 0
    assert capsys.readouterr().out == '{"v":1,"type":"chords","chords":[]}\n'


def test_gen_accepts_negative_seed(capsys):
    assert main(["gen", "chords", "3", "--seed", "-9"]) == 0
    assert capsys.readouterr().out


def test_gen_unknown_type_is_an_input_error():
    assert main(["gen", "polygons", "5"]) == 2


@pytest.mark.parametrize("kind", ["rectangles", "boxes", "chords", "explicit"])
def test_gen_solve_verify_round_trip(tmp_path, kind):
    for seed in range(3):
        instance = tmp_path / f"{kind}-{seed}.json"
        cert = tmp_path / f"{kind}-{seed}.cert.json"
        assert main(["gen", kind, "40", "--seed", str(seed), "--out", str(instance)]) == 0
        assert main(["solve", str(instance), "--out", str(cert)]) == 0
        data = _read(cert)
        assert data["v"] == 1
        assert all(data["checks"].values())
        assert sorted(v for part in data["cover"] for v in part) == list(range(40))
        assert main(["verify", str(instance), str(cert), "--out", str(tmp_path / "report.json")]) == 0


def test_solve_rectangles_bound(tmp_path):
    instance = tmp_path / "rects.json"
    main(["gen", "rectangles", "30", "--seed", "5", "--out", str(instance)])
    assert main(["solve", str(instance), "--out", str(tmp_path / "cert.json")]) == 0
    data = _read(tmp_path / "cert.json")
    assert data["t"] == 2
    assert data["bound"] == pytest.approx(2 * len(data["independent"]) * (math.log2(data["alphas"][0]) + 1))


def test_solve_empty_instance(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text('{"v":1,"type":"rectangles","rects":[]}', encoding="utf-8")
    assert main(["solve", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["cover"] == []
    assert data["bound"] == 0.0


def test_solve_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[", encoding="utf-8")
    assert main(["solve", str(path)]) == 2


def test_solve_supergraph_violation(tmp_path):
    bad = ExplicitInstance(2, (((0, 1), (5, 6)),), g_edges=((0, 1),))
    assert main(["solve", _write(tmp_path, "bad.json", bad)]) == 3


def test_solve_cor1_mode_on_inexact_model(tmp_path):
    assert main(["solve", _write(tmp_path, "p3.json", P3), "--mode", "cor1"]) == 3


def test_solve_cor1_mode_on_boxes(tmp_path):
    boxes = BoxInstance(3, ((0, 1, 0, 1, 0, 1), (2, 3, 2, 3, 2, 3)))
    assert main(["solve", _write(tmp_path, "boxes.json", boxes), "--mode", "cor1"]) == 2


def test_solve_theorem1_with_exact_base(tmp_path, capsys):
    assert main(["solve", _write(tmp_path, "c5.json", C5), "--base", "exact"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["cover"]) == 3
    assert data["phi"] == pytest.approx(1.5)


def test_solve_without_check_has_no_checks(tmp_path, capsys):
    assert main(["solve", _write(tmp_path, "c5.json", C5), "--no-check"]) == 0
    assert "checks" not in json.loads(capsys.readouterr().out)


def test_verify_detects_tampering(tmp_path):
    instance = tmp_path / "rects.json"
    cert = tmp_path / "cert.json"
    main(["gen", "rectangles", "20", "--seed", "1", "--out", str(instance)])
    main(["solve", str(instance), "--out", str(cert)])
    data = _read(cert)
    data["cover"] = data["cover"][1:]
    cert.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", str(instance), str(cert)]) == 1


@pytest.mark.parametrize("instance, alpha, beta", [(P3, 2, 2), (C5, 2, 3)])
def test_oracle_values(tmp_path, capsys, instance, alpha, beta):
    assert main(["oracle", _write(tmp_path, "g.json", instance)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["alpha"], data["beta"]) == (alpha, beta)


def test_oracle_compares_certificate(tmp_path, capsys):
    instance = tmp_path / "rects.json"
    cert = tmp_path / "cert.json"
    main(["gen", "rectangles", "14", "--seed", "8", "--coord-max", "40", "--out", str(instance)])
    main(["solve", str(instance), "--out", str(cert)])
    capsys.readouterr()
    assert main(["oracle", str(instance), "--cert", str(cert), "--phi"]) == 0
    data = json.loads(capsys.readouterr().out)
    alphas = _read(cert)["alphas"]
    assert 1.0 <= data["ratio"] <= 2 * (math.log2(alphas[0]) + 1)
    assert data["phi"] == "1"


def test_oracle_over_cap(tmp_path):
    instance = tmp_path / "big.json"
    main(["gen", "rectangles", "25", "--out", str(instance)])
    assert main(["oracle", str(instance)]) == 4


def test_bench_writes_csv(capsys):
    assert main(["bench", "--sizes", "20", "40", "80", "--seeds", "0", "1", "--repetitions", "1"]) == 0
    table = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert list(table["n"]) == [20, 40, 80]
    assert list(table.columns) == ["type", "n", "median_seconds", "growth", "cover", "independent",
                                   "bound", "depth", "base_calls"]
    assert math.isnan(table["growth"][0])
    assert (table["cover"] <= table["bound"]).all()


def test_benchmark_runs_and_validates():
    bench = Benchmark("chords", [10, 20], [3], repetitions=2)
    table = bench.run()
    assert len(table) == 2
    assert len(bench.runs) == 2
    with pytest.raises(InstanceError):
        Benchmark("chords", [10], [0], repetitions=0)


def test_pipeline_infers_modes():
    assert solve_instance(C5).mode == "theorem1"
    boxes = BoxInstance(3, ((0, 1, 0, 1, 0, 1), (2, 3, 2, 3, 2, 3)))
    assert solve_instance(boxes).mode == "cor2"
