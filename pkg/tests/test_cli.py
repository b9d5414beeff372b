# Copyright 2026 The mobile_dcp developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program.  If not, see <http://www.gnu.org/licenses/>.

import json

import pytest

from mobile_dcp import ExitCode, __version__, load_scenario, read_csv
from mobile_dcp.harness.cli import commands, main


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path/"scenario.json"
    code = main(["gen", "--out", str(path), "--clusters", "2", "--nodes-per-cluster", "10", "--controllers", "2",
                 "--steps", "10", "--seed", "5"])
    assert code == ExitCode.OK
    return path


def test_commands_registered():
    assert set(commands) == {"gen", "run", "compare", "plot", "bench"}


def test_version(capsys):
    with pytest.raises(SystemExit) as ex:
        main(["--version"])
    assert ex.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_gen(scenario_file):
    sc = load_scenario(scenario_file)
    assert sc.num_nodes == 20 and sc.num_controllers == 2 and sc.steps == 10 and sc.seed == 5


@pytest.mark.parametrize("algo", ["rcp", "frame", "static"])
def test_run(tmp_path, scenario_file, algo):
    outputs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path/name
        assert main(["run", "--algo", algo, "--scenario", str(scenario_file), "--out", str(out),
                     "--zero-walltime", "--steps", "8"]) == ExitCode.OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    trace = read_csv(tmp_path/"a.csv")
    assert len(trace) == 8
    assert trace.header["algorithm"] == algo
    assert trace.header["scenario"]["steps"] == 8


def test_compare_and_plot(tmp_path, scenario_file, capsys):
    out_dir = tmp_path/"cmp"
    assert main(["compare", "--scenario", str(scenario_file), "--out-dir", str(out_dir), "--u-max", "2"]) == ExitCode.OK
    assert "speedup" in capsys.readouterr().out
    summary = json.loads((out_dir/"summary.json").read_text())
    assert summary["steps"] == 10
    header = json.loads((out_dir/"rcp.meta.json").read_text())
    assert header["config"]["gains"]["u_max"] == 2.0

    traces = [str(out_dir/"rcp.csv"), str(out_dir/"frame.csv")]
    assert main(["plot", "--trace", *traces, "--out", str(tmp_path/"plot.svg"), "--scenario", str(scenario_file)]) == ExitCode.OK
    assert main(["plot", "--trace", *traces, "--out", str(tmp_path/"timing.svg"), "--kind", "timing"]) == ExitCode.OK
    assert (tmp_path/"plot.svg").read_bytes().lstrip().startswith(b"<?xml")
    assert (tmp_path/"timing.svg").exists()


def test_compare_is_deterministic(tmp_path, scenario_file, capsys):
    dirs = [tmp_path/"first", tmp_path/"second"]
    for out_dir in dirs:
        assert main(["compare", "--scenario", str(scenario_file), "--out-dir", str(out_dir), "--zero-walltime"]) == ExitCode.OK
    assert "speedup" not in capsys.readouterr().out
    names = sorted(p.name for p in dirs[0].iterdir())
    assert names == sorted(p.name for p in dirs[1].iterdir())
    assert {"rcp.csv", "frame.csv", "summary.json", "summary.svg", "timing.svg"} <= set(names)
    for name in names:
        assert (dirs[0]/name).read_bytes() == (dirs[1]/name).read_bytes(), name
    assert "speedup" not in json.loads((dirs[0]/"summary.json").read_text())
    assert set(read_csv(dirs[0]/"rcp.csv").column("wall_us")) == {0.0}


def test_invalid_scenario(tmp_path):
    path = tmp_path/"bad.json"
    path.write_text(json.dumps({"dimension": 2}))
    assert main(["run", "--algo", "rcp", "--scenario", str(path), "--out", str(tmp_path/"x.csv")]) == ExitCode.INVALID
    assert main(["run", "--algo", "rcp", "--scenario", str(tmp_path/"missing.json"),
                 "--out", str(tmp_path/"x.csv")]) == ExitCode.INVALID
    assert not (tmp_path/"x.csv").exists()


def test_invalid_override(tmp_path, scenario_file):
    assert main(["run", "--algo", "frame", "--scenario", str(scenario_file), "--out", str(tmp_path/"x.csv"),
                 "--alpha", "1.5"]) == ExitCode.INVALID
    assert main(["gen", "--out", str(tmp_path/"y.json"), "--controllers", "0"]) == ExitCode.INVALID


def test_numerical_failure(tmp_path, scenario_file):
    code = main(["run", "--algo", "rcp", "--scenario", str(scenario_file), "--out", str(tmp_path/"x.csv"),
                 "--k0", "1e300"])
    assert code == ExitCode.NUMERIC
    assert code.description.startswith("Runtime numeric failure")


def test_bench(tmp_path, capsys):
    assert main(["bench", "--out-dir", str(tmp_path), "--sizes", "50", "--controllers", "3",
                 "--rcp-steps", "5", "--frame-steps", "1"]) == ExitCode.OK
    assert "speedup" in capsys.readouterr().out
    assert (tmp_path/"bench.csv").exists() and (tmp_path/"bench.svg").exists()
