import io
import json

import pytest

from linkdensity import build_stream, contact_series, pair_density
from linkdensity.cli import run_cli
from linkdensity.io import read_trace


def run(argv):
    out = io.StringIO()
    code = run_cli(argv, stdout=out)
    return code, out.getvalue()


@pytest.fixture
def periodic_trace(tmp_path):
    path = tmp_path / "periodic.txt"
    code, _ = run(["synth", "periodic", "--param", "u=a", "--param", "v=b", "--param", "period=600",
                   "--param", "phase=100", "--omega", "60000", "--out", str(tmp_path)])
    assert code == 0
    (tmp_path / "trace.txt").rename(path)
    return path


@pytest.fixture
def mixed_trace(tmp_path):
    cfg = tmp_path / "spec.json"
    cfg.write_text(json.dumps([
        {"kind": "star", "params": {"hub": "srv", "leaf_count": 22, "period": 3600.0, "stagger": 60.0},
         "alpha": 0, "omega": 200000},
        {"kind": "clique", "params": {"nodes": ["c1", "c2", "c3", "c4"], "period": 900.0, "stagger": 30.0},
         "alpha": 0, "omega": 200000},
        {"kind": "burst", "params": {"u": "e1", "v": "e2", "start": 5000.0, "length": 60.0, "count": 10},
         "alpha": 0, "omega": 200000},
    ]))
    code, text = run(["synth", "--config", str(cfg)])
    assert code == 0
    path = tmp_path / "mixed.txt"
    path.write_text(text)
    return path


def test_synth_output_parses(periodic_trace):
    events = read_trace(str(periodic_trace)).events
    assert events[0] == (100.0, "a", "b")
    assert len(events) == 100


def test_pair_density_matches_library(periodic_trace):
    code, text = run(["pair-density", str(periodic_trace), "a", "b", "--delta", "300",
                      "--alpha", "0", "--omega", "60000"])
    assert code == 0
    L = build_stream(read_trace(str(periodic_trace)).events, alpha=0, omega=60000)
    assert float(text) == pair_density(contact_series(L, ("a", "b")), 300, 60000)


def test_profile_stream_ends_at_graph_density(tmp_path):
    trace = tmp_path / "t.txt"
    trace.write_text("0 a b\n5 b a\n9 a b\n")
    code, text = run(["profile", str(trace), "--stream", "--grid-ratio", "1.5"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "delta,density"
    assert lines[-1] == "9.0,1.0"


def test_profile_variants(mixed_trace, tmp_path):
    for flag in (["--pair", "srv", "srv-leaf00"], ["--node", "srv"], ["--neighborhood", "c1"]):
        code, text = run(["profile", str(mixed_trace), *flag, "--alpha", "0", "--omega", "200000"])
        assert code == 0, flag
        assert text.startswith("delta,density\n")


def test_char_times_periodic_ccdf(periodic_trace, tmp_path):
    out = tmp_path / "ct"
    code, _ = run(["char-times", str(periodic_trace), "--pairs", "--alpha", "0", "--omega", "60000",
                   "--out", str(out)])
    assert code == 0
    rows = (out / "ccdf_pairs.csv").read_text().strip().splitlines()
    assert rows[0] == "x,count"
    (x0, y0), (x1, y1) = [tuple(map(float, r.split(","))) for r in rows[1:]]
    assert (x0, y0, y1) == (0.0, 1.0, 0.0)
    assert 600 / 1.01 <= x1 <= 600 * 1.01
    assert (out / "char_times_pairs.csv").read_text().startswith("item,tau,variation,grid_index\na|b,")


def test_outputs_independent_of_workers(mixed_trace, tmp_path):
    outs = []
    for w in ("1", "3"):
        d = tmp_path / f"w{w}"
        for cmd in (["char-times", "--nodes"], ["report"], ["clustering"]):
            code, _ = run([cmd[0], str(mixed_trace), *cmd[1:], "--workers", w, "--out", str(d)])
            assert code == 0
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]


def test_report_and_clustering(mixed_trace):
    code, text = run(["report", str(mixed_trace), "--alpha", "0", "--omega", "200000"])
    assert code == 0
    data = json.loads(text)
    roles = {n["node"]: n["role"] for n in data["nodes"]}
    assert roles["srv"] == "star-hub"
    assert {roles[c] for c in ("c1", "c2", "c3", "c4")} == {"dense-group-member"}
    assert roles["e1"] == roles["e2"] == "ephemeral"
    assert data["capture"]["bounds"] == "given"

    code, text = run(["clustering", str(mixed_trace), "--alpha", "0", "--omega", "200000"])
    assert code == 0
    rows = text.strip().splitlines()
    assert rows[0] == "node,degree,tau_cc"
    assert sorted(r.split(",")[0] for r in rows[1:]) == ["c1", "c2", "c3", "c4"]


def test_report_rule_params_are_used(mixed_trace):
    code, text = run(["report", str(mixed_trace), "--star-degree", "50"])
    assert code == 0
    data = json.loads(text)
    assert data["rules"]["star_degree"] == 50
    assert data["summary"]["star-hub"] == 0
    assert data["capture"]["bounds"] == "observed min/max timestamp"


def test_verify_random_fixtures():
    code, text = run(["verify", "--fixtures", "100", "--seed", "7"])
    assert code == 0
    assert "PASS" in text
    worst = float(text.split("max_abs_diff")[1].split()[0])
    assert worst <= 1e-9


def test_verify_on_trace_with_mc(mixed_trace):
    code, text = run(["verify", str(mixed_trace), "--deltas", "2", "--mc-samples", "2000"])
    assert code == 0
    assert "mc_outside_3se" in text


def test_usage_errors():
    assert run([])[0] == 1
    assert run(["profile"])[0] == 1
    assert run(["nonsense"])[0] == 1
    assert run(["profile", "x.txt", "--stream", "--bogus"])[0] == 1
    assert run(["synth"])[0] == 1


def test_data_errors(tmp_path):
    assert run(["profile", str(tmp_path / "missing.txt"), "--stream"])[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 a b\n2 a\n")
    assert run(["profile", str(bad), "--stream"])[0] == 2
    bad.write_text("1 a b\n2 a\n9 a b\n")
    assert run(["profile", str(bad), "--stream", "--lenient"])[0] == 0
    flat = tmp_path / "flat.txt"
    flat.write_text("4 a b\n")
    assert run(["profile", str(flat), "--stream"])[0] == 2  # zero duration
