"""Serialization of reports and brackets: JSON, delimited series, figures.

JSON output is deterministic (sorted keys, fixed float repr) so that
seeded runs are byte-stable modulo the elapsed-time field. Non-finite
floats are encoded as the strings "inf", "-inf", "nan" because the JSON
grammar has no spelling for them.
"""

from __future__ import annotations

import json
import math
import os

from .experiments import ExperimentReport
from . import norms


def sanitize(value):
    """Recursively replace non-finite floats with JSON-safe strings."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if value == math.inf:
            return "inf"
        if value == -math.inf:
            return "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v) for v in value]
    return value


def report_to_json_dict(report: ExperimentReport) -> dict:
    return sanitize(
        {
            "experiment": report.experiment,
            "config": report.config,
            "steps": report.steps,
            "measurements": report.measurements,
            "scalars": report.scalars,
            "tolerances": report.tolerances,
            "verdict": report.verdict,
            "notes": report.notes,
            "elapsed_ms": report.elapsed_ms,
        }
    )


def to_json_str(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _format_value(v: float) -> str:
    return "%.17g" % v


def series_csv(report: ExperimentReport) -> str:
    """All measurement series as step,name,value rows; scalars use step 0."""
    lines = ["step,name,value"]
    for name in sorted(report.measurements):
        for step, value in zip(report.steps[name], report.measurements[name]):
            lines.append(
                f"{_format_value(step)},{name},{_format_value(value)}"
            )
    for name in sorted(report.scalars):
        lines.append(f"0,{name},{_format_value(report.scalars[name])}")
    return "\n".join(lines) + "\n"


def _agg_pyplot():
    # headless backend; imported lazily so library use never requires a GUI
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _loglog_ok(steps, values) -> bool:
    return all(s > 0 for s in steps) and all(v > 0 for v in values)


def render_report_figures(report: ExperimentReport, outdir: str) -> list[str]:
    """One PNG per report with a panel per measurement series.

    Returns the written paths. Series with positive steps and values are
    drawn log-log, the rest on linear axes.
    """
    plt = _agg_pyplot()
    os.makedirs(outdir, exist_ok=True)
    names = sorted(report.measurements)
    if not names:
        return []
    fig, axes = plt.subplots(
        len(names), 1, figsize=(7.0, 2.8 * len(names)), squeeze=False
    )
    for ax, name in zip(axes[:, 0], names):
        steps = report.steps[name]
        values = report.measurements[name]
        if _loglog_ok(steps, values):
            ax.loglog(steps, values, marker="o", markersize=3)
        else:
            ax.plot(steps, values, marker="o", markersize=3)
        ax.set_ylabel(name)
        ax.grid(True, which="both", alpha=0.3)
    axes[-1, 0].set_xlabel("step")
    fig.suptitle(f"{report.experiment} ({report.verdict})")
    fig.tight_layout()
    path = os.path.join(outdir, f"{report.experiment}.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


def render_bracket_figure(bracket: norms.NormBracket, outdir: str) -> list[str]:
    """Bar chart of the lower/upper pair; divergent uppers are annotated."""
    plt = _agg_pyplot()
    os.makedirs(outdir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(4.0, 3.2))
    labels = ["lower", "upper"]
    finite_upper = math.isfinite(bracket.upper)
    values = [bracket.lower, bracket.upper if finite_upper else 0.0]
    bars = ax.bar(labels, values, color=["#4878d0", "#ee854a"])
    if not finite_upper:
        ax.text(
            bars[1].get_x() + bars[1].get_width() / 2.0,
            0.02,
            "diverges",
            ha="center",
            va="bottom",
            rotation=90,
        )
    ax.set_title(f"{bracket.witness_kind} bracket, p={bracket.p}, q={bracket.q}")
    fig.tight_layout()
    path = os.path.join(outdir, "bracket.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]
