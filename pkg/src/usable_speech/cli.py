"""Command-line interface: detect, mix, evaluate, sweep, rerun.

Exit codes: 0 success, 1 usage/config, 2 I/O, 3 data validation. Every
command writes a JSON manifest next to its primary output recording the
resolved configuration, inputs, outputs, and tool version; `rerun`
re-executes a manifest and reproduces the outputs byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .backend import active_backend
from .classifier import DetectorConfig, classify_signal
from .cochannel import mix_at_tir, label_frames, measure_tir_db
from .errors import ConfigError, DataError, UsableSpeechError
from .evaluation import aggregate, score, threshold_sweep
from .signal_io import downsample_to_8k, read_csv, read_wav, write_csv, write_wav

DECISION_FIELDS = ("index", "voiced", "detected_scale", "usable")
LABEL_FIELDS = ("index", "frame_tir_db", "usable_truth")
REPORT_FIELDS = (
    "category",
    "hit_pct",
    "false_alarm_pct",
    "hits",
    "false_alarms",
    "usable_truth",
    "voiced",
    "total",
)
SWEEP_FIELDS = ("threshold", "hit_pct", "false_alarm_pct")

CONFIG_KEYS = ("frame_ms", "energy_threshold", "amp_fraction", "lag_threshold", "max_scale")


class UsageError(ConfigError):
    """CLI invocation problem (mapped to exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="usable-speech", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--frame-ms", type=float, dest="frame_ms")
        p.add_argument("--energy-threshold", type=float, dest="energy_threshold")
        p.add_argument("--amp-fraction", type=float, dest="amp_fraction")
        p.add_argument("--lag-threshold", type=int, dest="lag_threshold")
        p.add_argument("--max-scale", type=int, dest="max_scale")

    p = sub.add_parser("detect", help="classify frames of a WAV as usable/unusable")
    p.add_argument("input_wav")
    p.add_argument("--out", required=True, help="decisions CSV path")
    p.add_argument("--trace", help="write per-(frame, scale) diagnostics text here")
    add_config_flags(p)

    p = sub.add_parser("mix", help="mix two WAVs at a prescribed overall TIR")
    p.add_argument("target_wav")
    p.add_argument("interferer_wav")
    p.add_argument("--tir-db", type=float, default=0.0)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--category", choices=["male-male", "female-female", "male-female"])
    p.add_argument("--tir-usable-threshold", type=float, default=20.0)
    p.add_argument("--absolute-tir", action="store_true",
                   help="label frames by |TIR| instead of signed TIR")
    add_config_flags(p)

    p = sub.add_parser("evaluate", help="score decisions CSVs against label CSVs")
    p.add_argument("csvs", nargs="+",
                   help="alternating decisions.csv labels.csv pairs")
    p.add_argument("--out", required=True, help="report CSV path")
    p.add_argument("--categories", help="comma list naming each pair's category")

    p = sub.add_parser("sweep", help="hit/FA versus lag threshold for a mixture")
    p.add_argument("target_wav")
    p.add_argument("interferer_wav")
    p.add_argument("--thresholds", required=True,
                   help="ascending comma list of lag thresholds in samples")
    p.add_argument("--tir-db", type=float, default=0.0)
    p.add_argument("--out", required=True, help="sweep CSV path")
    add_config_flags(p)

    p = sub.add_parser("rerun", help="re-execute a command from its manifest")
    p.add_argument("manifest")
    return parser


def _load_config_file(path: str) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def _resolve_config(args) -> DetectorConfig:
    """Precedence: built-in defaults < config file < command-line flags."""
    resolved = {}
    if getattr(args, "config", None):
        raw = _load_config_file(args.config)
        for key, text in raw.items():
            caster = int if key in ("lag_threshold", "max_scale") else float
            try:
                resolved[key] = caster(text)
            except ValueError as exc:
                raise ConfigError(f"config key {key}: {exc}") from None
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
    return DetectorConfig(**resolved)


def _write_manifest(primary_output: str, command: str, argv, config,
                    inputs, outputs, started: float, extra=None) -> str:
    manifest = {
        "command": command,
        "argv": list(argv),
        "config": config,
        "inputs": [str(p) for p in inputs],
        "outputs": [str(p) for p in outputs],
        "tool_version": __version__,
        "kernel_backend": active_backend(),
        "duration_s": round(time.monotonic() - started, 6),
    }
    if extra:
        manifest.update(extra)
    path = str(primary_output) + ".manifest.json"
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def _decision_rows(decisions):
    return [
        {
            "index": d.index,
            "voiced": d.voiced,
            "detected_scale": d.detected_scale,
            "usable": d.usable,
        }
        for d in decisions
    ]


def _label_rows(labels):
    return [
        {
            "index": l.index,
            "frame_tir_db": l.frame_tir_db,
            "usable_truth": l.usable_truth,
        }
        for l in labels
    ]


def _write_trace(path: str, decisions) -> None:
    lines = []
    for d in decisions:
        if not d.voiced:
            lines.append(f"frame {d.index:04d} unvoiced"
                         f" approx_frac {d.approx_energy_fraction:.4f}")
            continue
        for diag in d.diagnostics:
            peaks = ",".join(str(l) for l in diag.peak_lags) or "-"
            spread = "-" if diag.lag_spread is None else str(diag.lag_spread)
            spread_sig = ("-" if diag.lag_spread_signal is None
                          else str(diag.lag_spread_signal))
            lines.append(
                f"frame {d.index:04d} scale {diag.scale}"
                f" approx_frac {diag.approx_energy_fraction:.4f}"
                f" peaks {peaks} spread {spread} spread_sig {spread_sig}"
                f" periodic {'yes' if diag.periodic else 'no'}"
            )
        scale = "-" if d.detected_scale is None else str(d.detected_scale)
        verdict = "usable" if d.usable else "unusable"
        lines.append(f"frame {d.index:04d} decision {verdict} scale {scale}")
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_detect(args, argv) -> int:
    started = time.monotonic()
    config = _resolve_config(args)
    signal = downsample_to_8k(read_wav(args.input_wav))
    decisions = classify_signal(signal, config)
    write_csv(_decision_rows(decisions), args.out, DECISION_FIELDS)
    outputs = [args.out]
    if args.trace:
        _write_trace(args.trace, decisions)
        outputs.append(args.trace)
    _write_manifest(args.out, "detect", argv, vars(config),
                    [args.input_wav], outputs, started)
    usable = sum(d.usable for d in decisions)
    voiced = sum(d.voiced for d in decisions)
    print(f"{len(decisions)} frames: {voiced} voiced, {usable} usable "
          f"-> {args.out}")
    return 0


def _cmd_mix(args, argv) -> int:
    started = time.monotonic()
    config = _resolve_config(args)
    target = downsample_to_8k(read_wav(args.target_wav))
    interferer = downsample_to_8k(read_wav(args.interferer_wav))
    mixture = mix_at_tir(target, interferer, args.tir_db, args.category)
    labels = label_frames(mixture, config, args.tir_usable_threshold,
                          args.absolute_tir)
    prefix = args.out_prefix
    paths = {
        "mixed": f"{prefix}_mixed.wav",
        "target": f"{prefix}_target.wav",
        "interferer": f"{prefix}_interferer.wav",
        "labels": f"{prefix}_labels.csv",
    }
    write_wav(mixture.mixed, paths["mixed"])
    write_wav(mixture.target, paths["target"])
    write_wav(mixture.interferer, paths["interferer"])
    write_csv(_label_rows(labels), paths["labels"], LABEL_FIELDS)
    measured = measure_tir_db(mixture.target, mixture.interferer)
    _write_manifest(
        paths["labels"], "mix", argv, vars(config),
        [args.target_wav, args.interferer_wav], list(paths.values()), started,
        extra={
            "requested_tir_db": args.tir_db,
            "measured_tir_db": measured,
            "category": args.category,
            "tir_usable_threshold": args.tir_usable_threshold,
            "absolute_tir": args.absolute_tir,
        },
    )
    usable = sum(l.usable_truth for l in labels)
    print(f"mixed at {measured:+.6f} dB TIR; {len(labels)} labeled frames,"
          f" {usable} usable -> {prefix}_*")
    return 0


def _parse_decisions_csv(path: str):
    from .classifier import FrameDecision

    decisions = []
    for row in read_csv(path):
        scale = row["detected_scale"]
        decisions.append(
            FrameDecision(
                index=int(row["index"]),
                voiced=row["voiced"] == "true",
                detected_scale=int(scale) if scale else None,
                usable=row["usable"] == "true",
            )
        )
    return decisions


def _parse_labels_csv(path: str):
    from .cochannel import FrameLabel

    return [
        FrameLabel(
            index=int(row["index"]),
            frame_tir_db=float(row["frame_tir_db"]),
            usable_truth=row["usable_truth"] == "true",
        )
        for row in read_csv(path)
    ]


def _report_row(report):
    c = report.counts
    return {
        "category": report.category,
        "hit_pct": report.hit_pct,
        "false_alarm_pct": report.false_alarm_pct,
        "hits": c.hits,
        "false_alarms": c.false_alarms,
        "usable_truth": c.usable_truth_frames,
        "voiced": c.voiced_frames,
        "total": c.total_frames,
    }


def _cmd_evaluate(args, argv) -> int:
    started = time.monotonic()
    if len(args.csvs) % 2 != 0:
        raise UsageError("expected alternating decisions.csv labels.csv pairs")
    pairs = [(args.csvs[i], args.csvs[i + 1]) for i in range(0, len(args.csvs), 2)]
    if args.categories:
        categories = [c.strip() for c in args.categories.split(",")]
        if len(categories) != len(pairs):
            raise UsageError(
                f"--categories names {len(categories)} pairs, got {len(pairs)}"
            )
    else:
        categories = [Path(lab).stem for _, lab in pairs]

    reports = []
    for (dec_path, lab_path), category in zip(pairs, categories):
        decisions = _parse_decisions_csv(dec_path)
        labels = _parse_labels_csv(lab_path)
        if not labels:
            raise DataError(f"{lab_path}: empty label file")
        reports.append(score(decisions, labels, category))

    rows = [_report_row(r) for r in reports]
    overall = None
    if len(reports) > 1:
        overall = aggregate(reports)
        rows.append(_report_row(overall))
    write_csv(rows, args.out, REPORT_FIELDS)
    _write_manifest(args.out, "evaluate", argv, None,
                    [p for pair in pairs for p in pair], [args.out], started)

    print(f"{'category':<16} {'hit%':>8} {'false-alarm%':>13}")
    for report in reports:
        print(f"{report.category:<16} {report.hit_pct:>8.2f}"
              f" {report.false_alarm_pct:>13.2f}")
    if overall is not None:
        print(f"{'average (mean)':<16} {overall.mean_hit_pct:>8.2f}"
              f" {overall.mean_false_alarm_pct:>13.2f}")
        print(f"{'average (pooled)':<16} {overall.hit_pct:>8.2f}"
              f" {overall.false_alarm_pct:>13.2f}")
    return 0


def _cmd_sweep(args, argv) -> int:
    started = time.monotonic()
    config = _resolve_config(args)
    try:
        thresholds = [int(t) for t in args.thresholds.split(",")]
    except ValueError as exc:
        raise UsageError(f"--thresholds: {exc}") from None
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise UsageError("--thresholds must be strictly ascending")
    target = downsample_to_8k(read_wav(args.target_wav))
    interferer = downsample_to_8k(read_wav(args.interferer_wav))
    mixture = mix_at_tir(target, interferer, args.tir_db)
    rows = threshold_sweep(mixture, config, thresholds)
    write_csv(
        [
            {"threshold": t, "hit_pct": h, "false_alarm_pct": f}
            for t, h, f in rows
        ],
        args.out,
        SWEEP_FIELDS,
    )
    _write_manifest(args.out, "sweep", argv, vars(config),
                    [args.target_wav, args.interferer_wav], [args.out], started)
    for t, h, f in rows:
        print(f"threshold {t:3d}: hit {h:6.2f}%  false alarm {f:6.2f}%")
    return 0


def _cmd_rerun(args) -> int:
    manifest = json.loads(Path(args.manifest).read_text())
    argv = manifest.get("argv")
    if not argv or argv[0] == "rerun":
        raise DataError(f"{args.manifest}: manifest has no rerunnable argv")
    return main(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _build_parser().parse_args(argv)
        if args.command == "detect":
            return _cmd_detect(args, argv)
        if args.command == "mix":
            return _cmd_mix(args, argv)
        if args.command == "evaluate":
            return _cmd_evaluate(args, argv)
        if args.command == "sweep":
            return _cmd_sweep(args, argv)
        if args.command == "rerun":
            return _cmd_rerun(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except UsableSpeechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
