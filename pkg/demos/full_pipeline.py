"""The whole pipeline through the CLI: simulate -> compute -> diff.

Everything the command line writes is a documented format that the
loaders read back, so the pipeline round-trips through plain files.
Uses a temp directory; pass a path argument to keep the artifacts.
"""

import sys
import tempfile
from pathlib import Path

from bendweb.cli import main as bendweb


def run(argv):
    print(f"$ bendweb {' '.join(argv)}")
    code = bendweb(argv)
    assert code == 0, f"exit {code}"
    print()


def main():
    if len(sys.argv) > 1:
        workdir = Path(sys.argv[1])
        workdir.mkdir(parents=True, exist_ok=True)
        ctx = None
    else:
        ctx = tempfile.TemporaryDirectory()
        workdir = Path(ctx.name)

    data = workdir / "data"
    reports = workdir / "reports"

    run(["simulate", "--out", str(data)])
    run([
        "compute", "--manifest", str(data / "manifest.json"),
        "--out", str(reports), "--t1", "t1", "--t2", "t2",
        "--formats", "csv,json,dot,graphml", "--no-timestamp",
    ])

    print("per-site report (first lines):")
    for line in (reports / "metrics.csv").read_text().splitlines()[:5]:
        print(f"  {line}")
    print()

    # a baseline of all zeros: every diff equals the new score
    metrics_lines = (reports / "metrics.csv").read_text().splitlines()
    header = metrics_lines[0].split(",")
    baseline = workdir / "baseline.csv"
    rows = ["domain,metric,value"]
    for line in metrics_lines[1:]:
        cells = line.split(",")
        for metric, cell in zip(header[1:], cells[1:]):
            if cell:
                rows.append(f"{cells[0]},{metric},0")
    baseline.write_text("\n".join(rows) + "\n")

    run([
        "diff", "--manifest", str(data / "manifest.json"),
        "--baseline", str(baseline), "--out", str(workdir / "diff"),
        "--t1", "t1", "--t2", "t2", "--no-timestamp",
    ])

    print("largest movers (mean absolute change vs baseline):")
    for line in (workdir / "diff" / "diff_summary.csv").read_text().splitlines()[:6]:
        print(f"  {line}")

    if ctx is not None:
        ctx.cleanup()
    else:
        print(f"\nartifacts kept under {workdir}")


if __name__ == "__main__":
    main()
