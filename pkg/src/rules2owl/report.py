"""Verification report files: a CSV of per-rule verdicts plus a summary
figure rendered next to it."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

VERDICT_ORDER = ("PASS", "FAIL", "UNTRANSLATABLE", "ERROR")

_VERDICT_COLORS = {
    "PASS": "#2a9d62",
    "FAIL": "#c84b4b",
    "UNTRANSLATABLE": "#d9a441",
    "ERROR": "#777777",
}


@dataclass(frozen=True)
class VerifyRecord:
    rule_text: str
    verdict: str
    max_domain: int
    interpretations: int
    duration_ms: float
    detail: str = ""


def write_verify_report(
    records: list[VerifyRecord], out_dir: str | Path
) -> tuple[Path, Path]:
    """Write ``verify_report.csv`` and ``verify_summary.png`` into out_dir;
    returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "verify_report.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["rule", "verdict", "max_domain", "interpretations", "duration_ms", "detail"]
        )
        for r in records:
            writer.writerow(
                [
                    r.rule_text,
                    r.verdict,
                    r.max_domain,
                    r.interpretations,
                    f"{r.duration_ms:.3f}",
                    r.detail,
                ]
            )
    png_path = out_dir / "verify_summary.png"
    _write_summary_figure(records, png_path)
    return csv_path, png_path


def _write_summary_figure(records: list[VerifyRecord], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = {v: 0 for v in VERDICT_ORDER}
    for r in records:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1

    fig, (ax_counts, ax_time) = plt.subplots(1, 2, figsize=(9, 3.5))
    labels = [v for v in counts if counts[v] or v in VERDICT_ORDER]
    values = [counts[v] for v in labels]
    colors = [_VERDICT_COLORS.get(v, "#555555") for v in labels]
    bars = ax_counts.bar(labels, values, color=colors)
    ax_counts.bar_label(bars)
    ax_counts.set_title(f"verdicts over {len(records)} rule(s)")
    ax_counts.set_ylabel("rules")

    durations = [r.duration_ms for r in records]
    if durations:
        ax_time.hist(durations, bins=min(20, max(5, len(durations) // 3)),
                     color="#4c78a8")
    ax_time.set_title("check duration")
    ax_time.set_xlabel("ms per rule")
    ax_time.set_ylabel("rules")

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
