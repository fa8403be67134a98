"""Scoring detector decisions against TIR ground truth."""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import DetectorConfig, decision_from_spreads, scan_signal
from .cochannel import Mixture, label_frames
from .errors import DataError

FA_DENOMINATORS = ("unusable", "voiced", "detected")


@dataclass
class EvalCounts:
    """Raw counts behind a report.

    total_frames counts every decision; the remaining counts cover only
    voiced frames that carry a label (unvoiced frames and skipped labels
    are excluded from the accounting).
    """

    total_frames: int = 0
    voiced_frames: int = 0
    usable_truth_frames: int = 0
    detected_usable_frames: int = 0
    hits: int = 0
    false_alarms: int = 0

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(
            self.total_frames + other.total_frames,
            self.voiced_frames + other.voiced_frames,
            self.usable_truth_frames + other.usable_truth_frames,
            self.detected_usable_frames + other.detected_usable_frames,
            self.hits + other.hits,
            self.false_alarms + other.false_alarms,
        )


@dataclass
class EvalReport:
    category: str
    hit_pct: float
    false_alarm_pct: float
    counts: EvalCounts
    # set by aggregate(): unweighted means of the input rows' percentages
    mean_hit_pct: float | None = None
    mean_false_alarm_pct: float | None = None


def _pct(num: int, denom: int) -> float:
    return 100.0 * num / denom if denom else 0.0


def score(decisions, labels, category: str = "all",
          fa_denominator: str = "unusable") -> EvalReport:
    """Hit and false-alarm percentages for one decision/label pairing.

    Decisions and labels align by frame index. Only voiced frames with a
    label participate; a hit is detected-usable on a truth-usable frame, a
    false alarm is detected-usable on a truth-unusable frame. The default
    false-alarm denominator is the voiced truth-unusable count, making the
    rate a proper false-positive rate.
    """
    if fa_denominator not in FA_DENOMINATORS:
        raise DataError(
            f"fa_denominator must be one of {FA_DENOMINATORS}, got {fa_denominator!r}"
        )
    by_index = {}
    for label in labels:
        if label.index in by_index:
            raise DataError(f"duplicate label for frame {label.index}")
        by_index[label.index] = label
    decision_indices = {d.index for d in decisions}
    stray = set(by_index) - decision_indices
    if stray:
        raise DataError(f"labels reference frames with no decision: {sorted(stray)[:5]}")

    counts = EvalCounts(total_frames=len(decisions))
    for decision in decisions:
        label = by_index.get(decision.index)
        if label is None or not decision.voiced:
            continue
        counts.voiced_frames += 1
        if decision.usable:
            counts.detected_usable_frames += 1
        if label.usable_truth:
            counts.usable_truth_frames += 1
            if decision.usable:
                counts.hits += 1
        elif decision.usable:
            counts.false_alarms += 1

    fa_denom = {
        "unusable": counts.voiced_frames - counts.usable_truth_frames,
        "voiced": counts.voiced_frames,
        "detected": counts.detected_usable_frames,
    }[fa_denominator]
    return EvalReport(
        category,
        _pct(counts.hits, counts.usable_truth_frames),
        _pct(counts.false_alarms, fa_denom),
        counts,
    )


def aggregate(reports) -> EvalReport:
    """Pool raw counts across category reports into an overall row.

    hit_pct and false_alarm_pct are recomputed from the pooled counts;
    mean_hit_pct and mean_false_alarm_pct carry the unweighted means of
    the input rows' percentages.
    """
    reports = list(reports)
    if not reports:
        raise DataError("aggregate needs at least one report")
    counts = reports[0].counts
    for report in reports[1:]:
        counts = counts + report.counts
    fa_denom = counts.voiced_frames - counts.usable_truth_frames
    return EvalReport(
        "average",
        _pct(counts.hits, counts.usable_truth_frames),
        _pct(counts.false_alarms, fa_denom),
        counts,
        mean_hit_pct=sum(r.hit_pct for r in reports) / len(reports),
        mean_false_alarm_pct=sum(r.false_alarm_pct for r in reports) / len(reports),
    )


def threshold_sweep(mixture: Mixture, config: DetectorConfig, thresholds,
                    tir_usable_threshold: float = 20.0):
    """Hit/false-alarm percentages per lag threshold, ascending.

    The per-frame band analysis is threshold-independent, so it runs once
    and each threshold only re-derives decisions from the cached spreads.
    """
    thresholds = list(thresholds)
    if not thresholds:
        raise DataError("thresholds must be non-empty")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise DataError("thresholds must be strictly ascending")

    labels = label_frames(mixture, config, tir_usable_threshold)
    scans = scan_signal(mixture.mixed, config)
    label_by_index = {l.index: l for l in labels}

    rows = []
    for threshold in thresholds:
        hits = false_alarms = usable = voiced = 0
        for index, (is_voiced, spreads) in enumerate(scans):
            label = label_by_index.get(index)
            if label is None or not is_voiced:
                continue
            voiced += 1
            detected = decision_from_spreads(spreads, threshold) is not None
            if label.usable_truth:
                usable += 1
                hits += detected
            else:
                false_alarms += detected
        rows.append(
            (threshold, _pct(hits, usable), _pct(false_alarms, voiced - usable))
        )
    return rows
