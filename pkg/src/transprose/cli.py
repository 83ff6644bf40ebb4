"""Command-line interface: generate one piece, profile a text, or calibrate
and report over a corpus."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report
from .analyzer import build_profile, partition, tokenize
from .composer import CalibrationConstants, PieceSpec, compose
from .errors import TransProseError
from .lexicon import load_lexicon
from .renderer import emit_midi, emit_tokens

LEXICON_ENV = "TRANSPROSE_LEXICON"

_GUTENBERG_START = re.compile(r"\*\*\*\s*START OF", re.IGNORECASE)
_GUTENBERG_END = re.compile(r"\*\*\*\s*END OF", re.IGNORECASE)


def strip_gutenberg(text: str) -> str:
    """Drop everything up to the ``*** START OF ...`` marker line and from the
    ``*** END OF ...`` marker line on. Text without markers passes through."""
    lines = text.splitlines(keepends=True)
    start = 0
    end = len(lines)
    for i, line in enumerate(lines):
        if _GUTENBERG_START.search(line):
            start = i + 1
            break
    for i in range(start, len(lines)):
        if _GUTENBERG_END.search(lines[i]):
            end = i
            break
    return "".join(lines[start:end])


def read_text(path, strip: bool = False) -> str:
    raw = Path(path).read_text(encoding="utf-8", errors="replace")
    return strip_gutenberg(raw) if strip else raw


@dataclass(frozen=True)
class RunConfig:
    """Everything one generate run needs; at least one emit flag must be set."""

    input_path: str
    lexicon_path: str
    output_stem: str
    calibration: CalibrationConstants = CalibrationConstants()
    sections: int = 4
    subsections: int = 4
    emit_midi: bool = False
    emit_tokens: bool = False
    emit_profile: bool = False
    strip_gutenberg: bool = False

    def __post_init__(self):
        if not (self.emit_midi or self.emit_tokens or self.emit_profile):
            raise ValueError("at least one of emit_midi/emit_tokens/emit_profile must be set")
        if self.sections < 1 or self.subsections < 1:
            raise ValueError("sections and subsections must be >= 1")


def _summary_line(name: str, piece: PieceSpec, profile) -> str:
    octaves = "/".join(str(m.octave) for m in piece.melodies)
    e1, e2 = profile.top_emotions
    return (
        f"{name}: {piece.key.value}, tempo {piece.tempo}, octaves {octaves}, "
        f"top emotions {e1.value}+{e2.value}"
    )


def cmd_generate(config: RunConfig) -> int:
    """Run the full pipeline and write the requested artifacts.

    All outputs are computed before anything is written, so a failing input
    leaves no partial files behind.
    """
    lex = load_lexicon(config.lexicon_path)
    text = tokenize(read_text(config.input_path, config.strip_gutenberg))
    part = partition(text, config.sections, config.subsections)
    profile = build_profile(text, lex, part)
    piece = compose(text, lex, part, profile, config.calibration)

    artifacts: list[tuple[Path, bytes]] = []
    stem = Path(config.output_stem)
    if config.emit_midi:
        artifacts.append((stem.with_name(stem.name + ".mid"), emit_midi(piece)))
    if config.emit_tokens:
        artifacts.append(
            (stem.with_name(stem.name + ".jfugue"), (emit_tokens(piece) + "\n").encode("utf-8"))
        )
    if config.emit_profile:
        payload = json.dumps(profile.to_json_dict(), indent=2) + "\n"
        artifacts.append((stem.with_name(stem.name + ".profile.json"), payload.encode("utf-8")))

    if stem.parent and not stem.parent.exists():
        stem.parent.mkdir(parents=True, exist_ok=True)
    for path, data in artifacts:
        path.write_bytes(data)

    print(_summary_line(stem.name, piece, profile))
    return 0


def cmd_profile(input_path, lexicon_path, out_path, sections: int, subsections: int, strip: bool) -> int:
    lex = load_lexicon(lexicon_path)
    text = tokenize(read_text(input_path, strip))
    part = partition(text, sections, subsections)
    profile = build_profile(text, lex, part)
    payload = json.dumps(profile.to_json_dict(), indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


def cmd_calibrate(inputs, lexicon_path, out_stem, strip: bool, figures: bool) -> int:
    """Profile every input, derive the corpus calibration, and write the
    calibration JSON plus the per-novel report (TSV, JSON, figures).

    Unreadable or too-short inputs are reported and skipped; the run fails
    only when every input fails.
    """
    lex = load_lexicon(lexicon_path)
    profiles = []
    failures = 0
    for path in inputs:
        try:
            text = tokenize(read_text(path, strip))
            part = partition(text)
            profiles.append((Path(path).stem, build_profile(text, lex, part)))
        except (TransProseError, OSError) as exc:
            failures += 1
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
    if not profiles:
        print("error: all corpus files failed", file=sys.stderr)
        return 1

    cal = report.calibration_from_profiles([p for _, p in profiles])
    summaries = [report.summarize(title, profile, cal) for title, profile in profiles]

    stem = Path(out_stem)
    if stem.parent and not stem.parent.exists():
        stem.parent.mkdir(parents=True, exist_ok=True)
    written = [
        stem.with_name(stem.name + ".calibration.json"),
        stem.with_name(stem.name + ".report.tsv"),
        stem.with_name(stem.name + ".report.json"),
    ]
    report.write_calibration_json(cal, written[0])
    report.write_report_tsv(summaries, written[1])
    report.write_report_json(summaries, cal, written[2])
    if figures:
        written.extend(report.render_figures(summaries, cal, stem))

    print(
        f"calibrated {len(summaries)} novels ({failures} skipped): "
        f"js [{cal.js_min:.4f}, {cal.js_max:.4f}], "
        f"activity [{cal.act_min:.4f}, {cal.act_max:.4f}]"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def _add_common_input_args(parser, multi: bool = False):
    parser.add_argument(
        "--lexicon",
        default=os.environ.get(LEXICON_ENV),
        help=f"path to the word-level emotion lexicon (default: ${LEXICON_ENV})",
    )
    parser.add_argument(
        "--strip-gutenberg",
        action="store_true",
        help="strip Project Gutenberg boilerplate via the START/END marker heuristic",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transprose",
        description="Convert a novel's emotion-word densities into a three-voice piano piece.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="analyze one text and write music artifacts")
    gen.add_argument("--input", required=True, help="path to the input text (UTF-8)")
    gen.add_argument("--out", required=True, help="output stem; artifacts get .mid/.jfugue/.profile.json suffixes")
    _add_common_input_args(gen)
    gen.add_argument("--emit-midi", action="store_true", help="write <out>.mid")
    gen.add_argument("--emit-tokens", action="store_true", help="write <out>.jfugue")
    gen.add_argument("--emit-profile", action="store_true", help="write <out>.profile.json")
    gen.add_argument("--sections", type=int, default=4)
    gen.add_argument("--subsections", type=int, default=4, help="subsections per section")
    defaults = CalibrationConstants()
    gen.add_argument("--js-min", type=float, default=defaults.js_min)
    gen.add_argument("--js-max", type=float, default=defaults.js_max)
    gen.add_argument("--act-min", type=float, default=defaults.act_min)
    gen.add_argument("--act-max", type=float, default=defaults.act_max)

    prof = sub.add_parser("profile", help="analyze one text and print/write its profile JSON")
    prof.add_argument("--input", required=True)
    prof.add_argument("--out", help="output file (default: stdout)")
    _add_common_input_args(prof)
    prof.add_argument("--sections", type=int, default=4)
    prof.add_argument("--subsections", type=int, default=4)

    calib = sub.add_parser("calibrate", help="derive calibration constants and a report from a corpus")
    calib.add_argument("inputs", nargs="+", help="two or more text files")
    calib.add_argument("--out", required=True, help="output stem for .calibration.json/.report.tsv/.report.json")
    _add_common_input_args(calib)
    calib.add_argument("--no-figures", action="store_true", help="skip the report figures")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.lexicon:
        parser.error(f"--lexicon is required (or set ${LEXICON_ENV})")

    try:
        if args.command == "generate":
            try:
                config = RunConfig(
                    input_path=args.input,
                    lexicon_path=args.lexicon,
                    output_stem=args.out,
                    calibration=CalibrationConstants(
                        js_min=args.js_min,
                        js_max=args.js_max,
                        act_min=args.act_min,
                        act_max=args.act_max,
                    ),
                    sections=args.sections,
                    subsections=args.subsections,
                    emit_midi=args.emit_midi,
                    emit_tokens=args.emit_tokens,
                    emit_profile=args.emit_profile,
                    strip_gutenberg=args.strip_gutenberg,
                )
            except ValueError as exc:
                parser.error(str(exc))
            return cmd_generate(config)
        if args.command == "profile":
            return cmd_profile(
                args.input, args.lexicon, args.out, args.sections, args.subsections, args.strip_gutenberg
            )
        if args.command == "calibrate":
            if len(args.inputs) < 2:
                parser.error("calibrate needs at least two input files")
            return cmd_calibrate(
                args.inputs, args.lexicon, args.out, args.strip_gutenberg, not args.no_figures
            )
        raise AssertionError(f"unhandled command {args.command}")
    except (TransProseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
