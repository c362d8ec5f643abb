import io
import json
import re
import subprocess
import sys

import numpy as np
import pytest

from pfmedoids.cli import BenchConfig, RunConfig, bench, format_bench, main, run
from pfmedoids.generators import GENERATORS
from pfmedoids.pareto import build_instance
from pfmedoids.plot import emit_plot
from pfmedoids.pointfile import PointFileError, parse_points, read_points, write_points
from pfmedoids.solver import IntervalClustering, objective_of, solve_general

from conftest import AFFINE5, affine, rel_close


@pytest.fixture
def affine_csv(tmp_path):
    path = tmp_path / "affine5.csv"
    path.write_text("x,y\n" + "".join(f"{x},{y}\n" for x, y in AFFINE5))
    return path


def _run(config):
    out, err = io.StringIO(), io.StringIO()
    code = run(config, out, err)
    return code, out.getvalue(), err.getvalue()


def test_json_output(affine_csv):
    code, out, _ = _run(RunConfig(affine_csv, k=2, alpha=2))
    assert code == 0
    doc = json.loads(out)
    assert {"n", "k", "alpha", "algorithm", "total_cost", "clusters"} <= set(doc)
    assert doc["total_cost"] == 6.0 and doc["breaks"] == [2]
    assert [(c["from"], c["to"], c["medoid"]) for c in doc["clusters"]] == [(1, 2, 1), (3, 5, 4)]
    assert doc["points"] == [list(map(float, p)) for p in AFFINE5]


def test_json_partition_reproduces_total(tmp_path):
    rng = np.random.default_rng(1)
    inst = GENERATORS["random"](40, rng)
    path = tmp_path / "r.csv"
    write_points(inst.points, path)
    code, out, _ = _run(RunConfig(path, k=4, alpha=1.0, algorithm="dp"))
    doc = json.loads(out)
    echoed = build_instance(doc["points"], assume_front=True)
    breaks = tuple(c["to"] for c in doc["clusters"][:-1])
    clustering = IntervalClustering(breaks, (), (), 0.0)
    assert rel_close(objective_of(echoed, clustering, 1.0), doc["total_cost"])


@pytest.mark.parametrize("algorithm", ["auto", "dp", "brute-interval", "brute-all", "pam"])
def test_every_algorithm_runs(affine_csv, algorithm):
    code, out, _ = _run(RunConfig(affine_csv, k=2, alpha=2, algorithm=algorithm))
    assert code == 0
    assert json.loads(out)["total_cost"] == 6.0


def test_local_minima_output(affine_csv):
    code, out, _ = _run(RunConfig(affine_csv, k=2, alpha=2, algorithm="local-minima"))
    doc = json.loads(out)
    assert code == 0 and doc["total_cost"] == 6.0
    # split 1 is stable through a distance tie at point 2
    assert [m["split"] for m in doc["local_minima"]] == [1, 2, 3]


def test_csv_output(affine_csv):
    code, out, _ = _run(RunConfig(affine_csv, k=2, alpha=2, output_format="csv"))
    lines = out.strip().splitlines()
    assert lines[0].startswith("cluster,from,to")
    assert lines[1].split(",")[:3] == ["1", "1", "2"]
    assert lines[-1].split(",")[-1] == "6.0"


@pytest.mark.parametrize(
    "kwargs",
    [dict(k=0), dict(alpha=0.0), dict(alpha=-1.0), dict(algorithm="nope"), dict(algorithm="local-minima", k=3),
     dict(workers=-1), dict(output_format="xml")],
)
def test_usage_errors(affine_csv, kwargs):
    code, out, err = _run(RunConfig(affine_csv, **{"k": 2, **kwargs}))
    assert code == 1 and out == "" and "usage" in err


def test_data_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n1,0.5\n2,2\n")
    code, _, err = _run(RunConfig(bad, k=1, assume_front=True))
    assert code == 2 and "not a Pareto front" in err
    # without the flag the dominated point is dropped
    assert _run(RunConfig(bad, k=1))[0] == 0
    garbage = tmp_path / "g.csv"
    garbage.write_text("x,y\n1,2\nthree,4\n")
    assert _run(RunConfig(garbage, k=1))[0] == 2
    empty = tmp_path / "e.csv"
    empty.write_text("x,y\n")
    assert _run(RunConfig(empty, k=1))[0] == 2
    nan = tmp_path / "n.csv"
    nan.write_text("1,nan\n")
    assert _run(RunConfig(nan, k=1))[0] == 2
    assert _run(RunConfig(tmp_path / "missing.csv", k=1))[0] == 2


def test_guard_errors(affine_csv, tmp_path):
    assert _run(RunConfig(affine_csv, k=6))[0] == 3
    big = tmp_path / "big.csv"
    write_points(affine(20).points, big)
    assert _run(RunConfig(big, k=2, algorithm="brute-all"))[0] == 3
    huge = tmp_path / "huge.csv"
    write_points(affine(300).points, huge)
    assert _run(RunConfig(huge, k=6, algorithm="brute-interval"))[0] == 3


def test_parse_points():
    text = "  x , y \n\n1e-3 , 2\n  3,4.5E2\n5 6\n"
    assert parse_points(text) == [(0.001, 2.0), (3.0, 450.0), (5.0, 6.0)]
    assert parse_points("1,2\n3,4\n") == [(1.0, 2.0), (3.0, 4.0)]
    with pytest.raises(PointFileError) as info:
        parse_points("1,2\n3\n")
    assert info.value.line == 2
    with pytest.raises(PointFileError):
        parse_points("1,2\n3,4,5\n")


def test_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    for name, gen in GENERATORS.items():
        inst = gen(25, rng)
        path = tmp_path / f"{name}.csv"
        write_points(inst.points, path)
        assert build_instance(read_points(path), assume_front=True) == inst


def test_stdin(affine_csv):
    text = affine_csv.read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "pfmedoids", "solve", "-", "--k", "2"],
        input=text, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["breaks"] == [2]


def test_main_flags(affine_csv, tmp_path, capsys):
    out = tmp_path / "res.json"
    plot = tmp_path / "res.svg"
    code = main(["solve", str(affine_csv), "--k", "2", "--no-prune", "--workers", "2",
                 "--out", str(out), "--plot", str(plot)])
    assert code == 0
    assert json.loads(out.read_text())["total_cost"] == 6.0
    assert plot.read_text().startswith("<svg")
    assert main(["solve", str(affine_csv)]) == 1  # --k missing
    assert main(["solve", str(affine_csv), "--k", "x"]) == 1
    assert main(["bench", "--algorithms", "nope"]) == 1
    capsys.readouterr()


def _circles(svg, group):
    block = svg.split(f'<g class="{group}">')[1].split("</g>")[0]
    return re.findall(r'fill="(#[0-9a-f]{6})"', block)


def test_plot_structure(tmp_path):
    inst = affine(5)
    res = solve_general(inst, 2, 2)
    path = emit_plot(inst, res, tmp_path / "k2.svg")
    svg = path.read_text()
    assert len(_circles(svg, "points")) == 5
    assert len(set(_circles(svg, "points"))) == 2
    assert len(_circles(svg, "medoids")) == 2
    again = emit_plot(inst, res, tmp_path / "k2b.svg")
    assert again.read_bytes() == path.read_bytes()
    one = emit_plot(inst, solve_general(inst, 1, 2), tmp_path / "k1.svg").read_text()
    assert len(set(_circles(one, "points"))) == 1
    assert len(_circles(one, "medoids")) == 1
    with pytest.raises(OSError):
        emit_plot(inst, res, tmp_path / "missing" / "dir" / "x.svg")


def test_plot_single_point(tmp_path):
    inst = affine(1)
    svg = emit_plot(inst, solve_general(inst, 1, 2), tmp_path / "one.svg").read_text()
    assert "nan" not in svg


def test_bench_rows():
    rows = bench(BenchConfig(sizes=(200, 400), ks=(5,), algorithms=("dp",), repetitions=1))
    assert [r["status"] for r in rows] == ["ok", "ok"]
    assert rows[0]["time_ratio"] == "" and float(rows[1]["time_ratio"]) > 0
    guarded = bench(BenchConfig(sizes=(20,), ks=(2,), algorithms=("brute-all",), repetitions=1))
    assert guarded[0]["status"] == "guarded"
    checked = bench(BenchConfig(sizes=(30,), ks=(3,), algorithms=("dp", "brute-interval"), repetitions=1))
    assert [r["check"] for r in checked] == ["match", "match"]
    text = format_bench(rows)
    assert text.splitlines()[0].startswith("generator,n,k,alpha,algorithm,status")
