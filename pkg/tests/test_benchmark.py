import pathlib
import subprocess
import sys

SCRIPT = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_rank.py"


def test_benchmark_runs():
    out = subprocess.run([sys.executable, str(SCRIPT), "--sizes", "30", "60", "--repeat", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert "speedup" in out and len(out.strip().splitlines()) == 3
