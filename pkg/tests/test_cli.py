import io
import subprocess
import sys

import pytest

from bconj.cli import main
from bconj.jack import set_default_engine


@pytest.fixture(autouse=True)
def fresh_engine():
    set_default_engine(None)
    yield
    set_default_engine(None)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_jack_outputs():
    assert run("jack", "2", "--basis", "p") == (0, "p[1,1] + a*p[2]\n")
    assert run("jack", "1,1", "--basis", "m", "--alpha", "0") == (0, "2*m[1,1]\n")
    assert run("jack", "-") == (0, "1\n")
    assert run("jack", "2", "--alpha", "1/2") == (0, "2*m[1,1] + 3/2*m[2]\n")


@pytest.mark.parametrize("argv", [
    ["jack", "1,2"],
    ["jack", "x"],
    ["jack", "2", "--basis", "q"],
    ["jack", "2", "--alpha", "one"],
    ["verify", "nothing"],
    ["verify", "jack", "--max-weight", "20"],
    ["htable"],
    ["--max-size", "13", "jack", "1"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_size_beyond_engine_bound(capsys):
    assert run("--max-size", "3", "jack", "2,2")[0] == 2
    assert run("--max-size", "3", "htable", "--n", "4")[0] == 2


def test_verify_suites_pass():
    code, text = run("verify", "jack", "--max-weight", "4")
    assert code == 0 and "suite jack: PASS" in text
    code, text = run("verify", "factorization", "--max-weight", "2", "--samples", "10")
    assert code == 0 and text.startswith("seed 0\n")
    code, text = run("verify", "lattice", "--r", "4", "--samples", "4")
    assert code == 0
    code, text = run("verify", "bconj", "--n", "3")
    assert code == 0 and "conjecture-level findings: 0 (not gating)" in text


def test_verify_is_deterministic_for_a_seed():
    first = run("verify", "lemmas", "--seed", "7", "--samples", "5")
    second = run("verify", "lemmas", "--seed", "7", "--samples", "5")
    assert first == second and first[0] == 0
    assert "seed=7" in first[1]


def test_htable_rows():
    code, text = run("htable", "--n", "2")
    assert code == 0
    assert len(text.strip().splitlines()) == 1 + 9
    code, text = run("htable", "--n", "3", "--degree-only")
    assert len(text.strip().splitlines()) == 1 + 27


def test_htable_json_and_file(tmp_path):
    target = tmp_path / "h.json"
    code, text = run("htable", "--n", "2", "--format", "json", "--out", str(target))
    assert code == 0 and text == ""
    assert '"entries"' in target.read_text()
    assert run("htable", "--n", "1", "--out", str(tmp_path / "missing" / "x.csv"))[0] == 1


def test_cache_commands(tmp_path):
    cache = str(tmp_path / "cache")
    assert run("--cache-dir", cache, "cache", "list") == (0, "")
    code, text = run("--cache-dir", cache, "cache", "warm", "--max-weight", "3")
    assert code == 0 and text.startswith("14 records")
    code, listing = run("--cache-dir", cache, "cache", "list")
    assert "J_p_2_1.json" in listing.split()
    snapshot = {p.name: p.read_bytes() for p in (tmp_path / "cache").iterdir()}
    warm = run("--cache-dir", cache, "jack", "2,1", "--basis", "p")
    cold = run("jack", "2,1", "--basis", "p")
    assert warm == cold
    assert snapshot == {p.name: p.read_bytes() for p in (tmp_path / "cache").iterdir()}
    assert run("--cache-dir", cache, "cache", "clear") == (0, "removed 14 records\n")


def test_cache_needs_directory(monkeypatch):
    monkeypatch.delenv("BCONJ_CACHE_DIR", raising=False)
    assert run("cache", "list")[0] == 2


def test_flag_overrides_environment(tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("BCONJ_CACHE_DIR", str(env_dir))
    run("--cache-dir", str(flag_dir), "jack", "2")
    assert (flag_dir / "J_m_2.json").exists() and not env_dir.exists()
    set_default_engine(None)
    run("jack", "3")
    assert (env_dir / "J_m_3.json").exists()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bconj.cli", "jack", "2", "--basis", "p"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "p[1,1] + a*p[2]\n"
    bad = subprocess.run([sys.executable, "-m", "bconj.cli", "jack", "2,3"], capture_output=True, text=True)
    assert bad.returncode == 2 and "error" in bad.stderr
