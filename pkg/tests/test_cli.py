"""Tests for the command-line interface.

Everything runs in-process through cli.main so exit codes and stdout are
observable; one subprocess test checks the installed console script.
"""

import json
import shutil
import subprocess

import pytest

from bottlab import cli


def run_cli(args, **kw):
    return cli.main(list(args), **kw)


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_spectrum_subcommand_passes(tmp_path, capsys):
    code = run_cli(["spectrum", "--levels", "8", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "overall: PASS" in out
    assert (tmp_path / "spectrum.json").exists()
    assert (tmp_path / "spectrum.csv").exists()
    assert (tmp_path / "manifest.json").exists()


def test_invalid_dim_exits_2(tmp_path, capsys):
    code = run_cli(["spectrum", "--dim", "0", "--out", str(tmp_path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "error: dim must be >= 1" in err
    assert not (tmp_path / "spectrum.json").exists()


@pytest.mark.parametrize("args,fragment", [
    (["spectrum", "--levels", "3"], "levels must be >= 4"),
    (["spectrum", "--t-min", "0.5"], "t-min must be >= 1"),
    (["spectrum", "--t-min", "4", "--t-max", "2"], "t-max must exceed t-min"),
    (["spectrum", "--t-points", "1"], "t-points must be >= 2"),
    (["report-all", "--suite", "nonsense"], "unknown suite ids"),
])
def test_config_errors_exit_2(args, fragment, tmp_path, capsys):
    code = run_cli(args + ["--out", str(tmp_path)])
    err = capsys.readouterr().err
    assert code == 2
    assert fragment in err


def test_unreachable_tolerance_exits_1(tmp_path, capsys):
    code = run_cli(["commutators", "--levels", "8", "--tol", "1e-9",
                    "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "overall: FAIL" in out
    # reports are still written for the failing run
    assert (tmp_path / "dirac-commutator.json").exists()


def test_bad_thread_env_exits_2(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BOTTLAB_THREADS", "many")
    code = run_cli(["spectrum", "--levels", "8", "--out", str(tmp_path)])
    assert code == 2
    assert "BOTTLAB_THREADS" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# report contents
# ---------------------------------------------------------------------------

def test_json_report_schema(tmp_path, capsys):
    assert run_cli(["spectrum", "--levels", "8", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert set(doc) == {"schema", "suite", "params", "datapoints",
                        "fit", "pass", "tol", "notes"}
    assert doc["schema"] == "v1"
    assert doc["pass"] is True
    assert doc["params"]["dim"] == 1 and doc["params"]["levels"] == 8
    assert all(set(p) == {"t", "value"} for p in doc["datapoints"])


def test_csv_row_counts(tmp_path, capsys):
    # 9 grid points per curve: 2 generators x 3 symbols for the first
    # suite, 2 x 2 generator pairs for the second
    assert run_cli(["commutators", "--levels", "8", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    dirac = (tmp_path / "dirac-commutator.csv").read_text().splitlines()
    cd = (tmp_path / "cd-commutator.csv").read_text().splitlines()
    assert dirac[0] == "suite,curve,t,value"
    assert len(dirac) == 1 + 9 * 6
    assert len(cd) == 1 + 9 * 4


def test_format_flag_selects_outputs(tmp_path, capsys):
    assert run_cli(["spectrum", "--levels", "8", "--format", "json",
                    "--out", str(tmp_path / "j")]) == 0
    assert run_cli(["spectrum", "--levels", "8", "--format", "csv",
                    "--out", str(tmp_path / "c")]) == 0
    capsys.readouterr()
    assert (tmp_path / "j" / "spectrum.json").exists()
    assert not (tmp_path / "j" / "spectrum.csv").exists()
    assert (tmp_path / "c" / "spectrum.csv").exists()
    assert not (tmp_path / "c" / "spectrum.json").exists()


def test_manifest_records_run(tmp_path, capsys):
    assert run_cli(["report-all", "--suite", "spectrum", "--suite", "clifford-iso",
                    "--levels", "8", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["command"] == "report-all"
    assert man["tool"].startswith("bottlab ")
    assert set(man["suites"]) == {"spectrum", "clifford-iso"}
    assert man["threads"] >= 1
    for sid, paths in man["outputs"].items():
        for path in paths.values():
            with open(path) as fh:
                assert fh.read(1)


def test_summary_table_sorted(tmp_path, capsys):
    assert run_cli(["mehler", "--levels", "12", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = [l.split()[0] for l in out[1:-1] if l.strip()]
    assert rows == sorted(rows)
    assert rows == ["mehler", "s1s2-asymptotics"]


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------

def _snapshot(outdir):
    files = {}
    for p in sorted(outdir.iterdir()):
        if p.name == "manifest.json":
            doc = json.loads(p.read_text())
            doc.pop("timestamp")
            # output paths contain the directory name; normalize
            doc["outputs"] = {
                sid: sorted(kind for kind in paths)
                for sid, paths in doc["outputs"].items()
            }
            files[p.name] = json.dumps(doc, sort_keys=True)
        else:
            files[p.name] = p.read_bytes()
    return files


def test_reports_are_byte_identical_across_runs(tmp_path, capsys, monkeypatch):
    args = ["report-all", "--levels", "8", "--t-points", "5"]
    assert run_cli(args + ["--out", str(tmp_path / "a")]) in (0, 1)
    assert run_cli(args + ["--out", str(tmp_path / "b")]) in (0, 1)
    monkeypatch.setenv("BOTTLAB_THREADS", "1")
    assert run_cli(args + ["--out", str(tmp_path / "c")]) in (0, 1)
    capsys.readouterr()
    a, b, c = (_snapshot(tmp_path / d) for d in "abc")
    assert set(a) == set(b) == set(c)
    assert len(a) == 2 * 11 + 1  # json + csv per suite, plus the manifest
    for name in a:
        assert a[name] == b[name], f"{name} differs between runs"
        assert a[name] == c[name], f"{name} differs with a single worker"


def test_no_timestamps_inside_reports(tmp_path, capsys):
    assert run_cli(["spectrum", "--levels", "8", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    flat = json.dumps(doc).lower()
    assert "time" not in flat and "date" not in flat


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        run_cli(["--version"])
    assert exc.value.code == 0


def test_console_script_installed():
    exe = shutil.which("bottlab")
    assert exe, "console script should be on PATH after installation"
    proc = subprocess.run([exe, "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("bottlab ")
