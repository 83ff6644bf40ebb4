"""Corpus calibration reporting: per-novel summary table plus figures.

The table mirrors the columns title / emotion1 / emotion2 / octave / tempo /
pos_neg / key / activity / joy_sad so corpus runs can be eyeballed against
published values; figures visualize the density trajectories and the
calibration extremes.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analyzer import OVERALL_EMOTION, EmotionProfile
from .composer import (
    CalibrationConstants,
    Key,
    compute_tempo,
    octave_overall,
    select_key,
)

REPORT_COLUMNS = (
    "title",
    "emotion1",
    "emotion2",
    "octave",
    "tempo",
    "pos_neg",
    "key",
    "activity",
    "joy_sad",
)


@dataclass(frozen=True)
class NovelSummary:
    """One report row: a document's profile plus its derived musical values."""

    title: str
    profile: EmotionProfile
    key: Key
    octave: int
    tempo: int

    @property
    def pos_neg(self) -> str:
        return "Positive" if self.profile.posneg_ratio > 1 else "Negative"


def summarize(title: str, profile: EmotionProfile, cal: CalibrationConstants) -> NovelSummary:
    return NovelSummary(
        title=title,
        profile=profile,
        key=select_key(profile),
        octave=octave_overall(profile, cal),
        tempo=compute_tempo(profile, cal),
    )


def calibration_from_profiles(
    profiles, base: CalibrationConstants | None = None
) -> CalibrationConstants:
    """Calibration whose score ranges are the corpus min/max; tempo and octave
    bounds carry over from ``base``."""
    base = base or CalibrationConstants()
    js = [p.js_score for p in profiles]
    act = [p.activity_score for p in profiles]
    if not js:
        raise ValueError("need at least one profile to calibrate")
    return dataclasses.replace(
        base, js_min=min(js), js_max=max(js), act_min=min(act), act_max=max(act)
    )


def report_rows(summaries) -> list[dict]:
    rows = []
    for s in summaries:
        rows.append(
            {
                "title": s.title,
                "emotion1": s.profile.top_emotions[0].value,
                "emotion2": s.profile.top_emotions[1].value,
                "octave": s.octave,
                "tempo": s.tempo,
                "pos_neg": s.pos_neg,
                "key": s.key.value.title(),
                "activity": s.profile.activity_score,
                "joy_sad": s.profile.js_score,
            }
        )
    return rows


def write_report_tsv(summaries, path) -> None:
    """Tab-separated table; activity/joy_sad rounded the way the published
    table prints them (3 and 4 decimals)."""
    lines = ["\t".join(REPORT_COLUMNS)]
    for row in report_rows(summaries):
        lines.append(
            "\t".join(
                (
                    row["title"],
                    row["emotion1"],
                    row["emotion2"],
                    str(row["octave"]),
                    str(row["tempo"]),
                    row["pos_neg"],
                    row["key"],
                    f"{row['activity']:.3f}",
                    f"{row['joy_sad']:.4f}",
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_report_json(summaries, cal: CalibrationConstants, path) -> None:
    document = {
        "calibration": dataclasses.asdict(cal),
        "novels": report_rows(summaries),
    }
    Path(path).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def write_calibration_json(cal: CalibrationConstants, path) -> None:
    Path(path).write_text(json.dumps(dataclasses.asdict(cal), indent=2) + "\n", encoding="utf-8")


def render_figures(summaries, cal: CalibrationConstants, stem) -> list[Path]:
    """Write the two report figures next to the delimited output.

    ``<stem>.densities.png`` plots each novel's overall emotion density across
    its subsections; ``<stem>.scores.png`` scatters activity against
    joy-minus-sadness with the calibration extremes dashed in.
    """
    stem = Path(stem)
    written = []

    fig, ax = plt.subplots(figsize=(8, 4.5))
    for s in summaries:
        per_sub = sorted(
            (idx, value)
            for (idx, basis), value in s.profile.subsection_density.items()
            if basis == OVERALL_EMOTION
        )
        ax.plot(
            [idx + 1 for idx, _ in per_sub],
            [value for _, value in per_sub],
            marker="o",
            markersize=3,
            linewidth=1.2,
            label=s.title,
        )
    ax.set_xlabel("subsection")
    ax.set_ylabel("overall emotion density")
    ax.set_title("Emotion density across each novel")
    ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    densities_path = stem.with_name(stem.name + ".densities.png")
    fig.savefig(densities_path, dpi=150)
    plt.close(fig)
    written.append(densities_path)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for s in summaries:
        major = s.key is Key.C_MAJOR
        ax.scatter(
            s.profile.activity_score,
            s.profile.js_score,
            c="tab:blue" if major else "tab:red",
            marker="o" if major else "s",
        )
        ax.annotate(s.title, (s.profile.activity_score, s.profile.js_score), fontsize=7, xytext=(3, 3), textcoords="offset points")
    for x in (cal.act_min, cal.act_max):
        ax.axvline(x, linestyle="--", linewidth=0.8, color="gray")
    for y in (cal.js_min, cal.js_max):
        ax.axhline(y, linestyle="--", linewidth=0.8, color="gray")
    ax.set_xlabel("activity score (drives tempo)")
    ax.set_ylabel("joy - sadness density (drives octave)")
    ax.set_title("Corpus scores and calibration extremes")
    fig.tight_layout()
    scores_path = stem.with_name(stem.name + ".scores.png")
    fig.savefig(scores_path, dpi=150)
    plt.close(fig)
    written.append(scores_path)

    return written
