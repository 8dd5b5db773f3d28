"""Per-scene metric reports and corpus-level aggregation.

Undefined per-scene metrics (e.g. association scores on a scene with no
TPs) are carried as None, written as empty CSV cells, and excluded from
aggregate means with their exclusion count reported; they are never
coerced to 0, which would silently bias subset means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assoc_metrics import association_scores
from .errors import InsufficientData, UndefinedOnEmptyTP
from .frame_metrics import frame_metrics_report
from .matching import match_sequence
from .trackmodel import TrackSet

REPORT_COLUMNS = [
    "scene_id",
    "n_tp",
    "n_fp",
    "n_fn",
    "tsr",
    "tfr",
    "idsw",
    "mota",
    "ospa_mean",
    "mean_loc_error_deg",
    "ass_a",
    "ass_pr",
    "ass_re",
]

# Aggregated metric -> MetricsReport attribute (angles leave in degrees).
AGGREGATE_METRICS = {
    "tsr": "tsr",
    "tfr": "tfr",
    "idsw": "n_idsw",
    "mota": "mota",
    "ospa_mean": "ospa_mean_deg",
    "mean_loc_error_deg": "mean_loc_error_deg",
    "ass_a": "ass_a",
    "ass_pr": "ass_pr",
    "ass_re": "ass_re",
    "tsr_per_track": "tsr_per_track",
    "tfr_per_track": "tfr_per_track",
}


@dataclass(frozen=True)
class MetricsReport:
    """All scalar metric outputs for one scene."""

    scene_id: str
    n_tp: int
    n_fp: int
    n_fn: int
    n_swaps: int
    n_broken: int
    n_idsw: int
    tsr: float
    tfr: float
    tsr_per_track: float | None
    tfr_per_track: float | None
    mota: float | None
    ospa_mean: float | None  # radians
    mean_loc_error: float | None  # radians
    ass_a: float | None
    ass_pr: float | None
    ass_re: float | None
    n_gt_tracks: int
    n_pred_tracks: int
    n_gt_detections: int
    gate: float

    @property
    def ospa_mean_deg(self) -> float | None:
        return None if self.ospa_mean is None else math.degrees(self.ospa_mean)

    @property
    def mean_loc_error_deg(self) -> float | None:
        return None if self.mean_loc_error is None else math.degrees(self.mean_loc_error)


def evaluate_scene(
    scene_id: str,
    gts: TrackSet,
    preds: TrackSet,
    gate: float,
    ospa_cutoff: float = math.radians(30.0),
    ospa_order: float = 1.0,
) -> MetricsReport:
    """Match one scene and compute every frame-level and association metric."""
    ms = match_sequence(preds, gts, gate)
    fm = frame_metrics_report(ms, gts, preds, ospa_cutoff, ospa_order)
    try:
        assoc = association_scores(ms)
        ass_a, ass_pr, ass_re = assoc.ass_a, assoc.ass_pr, assoc.ass_re
    except UndefinedOnEmptyTP:
        ass_a = ass_pr = ass_re = None
    return MetricsReport(
        scene_id=scene_id,
        n_tp=fm.n_tp,
        n_fp=fm.n_fp,
        n_fn=fm.n_fn,
        n_swaps=fm.n_swaps,
        n_broken=fm.n_broken,
        n_idsw=fm.n_idsw,
        tsr=fm.tsr,
        tfr=fm.tfr,
        tsr_per_track=fm.tsr_per_track,
        tfr_per_track=fm.tfr_per_track,
        mota=fm.mota,
        ospa_mean=fm.ospa_mean,
        mean_loc_error=fm.mean_loc_error,
        ass_a=ass_a,
        ass_pr=ass_pr,
        ass_re=ass_re,
        n_gt_tracks=len(gts.entries),
        n_pred_tracks=len(preds.entries),
        n_gt_detections=gts.n_entries(),
        gate=gate,
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def report_csv_rows(reports: list[MetricsReport]) -> str:
    """Per-scene table, sorted by scene id; repr floats round-trip exactly."""
    lines = [",".join(REPORT_COLUMNS)]
    for r in sorted(reports, key=lambda r: r.scene_id):
        lines.append(
            ",".join(
                [
                    r.scene_id,
                    _cell(r.n_tp),
                    _cell(r.n_fp),
                    _cell(r.n_fn),
                    _cell(r.tsr),
                    _cell(r.tfr),
                    _cell(r.n_idsw),
                    _cell(r.mota),
                    _cell(r.ospa_mean_deg),
                    _cell(r.mean_loc_error_deg),
                    _cell(r.ass_a),
                    _cell(r.ass_pr),
                    _cell(r.ass_re),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def bootstrap_aggregate(
    values,
    fraction: float = 0.8,
    replicates: int = 100,
    rng: np.random.Generator | None = None,
) -> tuple[float, float | None]:
    """Mean and std of subsample means.

    Each replicate draws ceil(fraction * n) values without replacement;
    the return is (mean of replicate means, std of replicate means).
    With replicates == 0 the plain mean is returned with std None.

    Raises InsufficientData with fewer than two values.
    """
    vals = np.asarray(list(values), dtype=float)
    if len(vals) < 2:
        raise InsufficientData(f"need >= 2 values, got {len(vals)}")
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must lie in (0, 1]")
    if replicates <= 0:
        return float(vals.mean()), None
    if rng is None:
        rng = np.random.default_rng(0)
    m = math.ceil(fraction * len(vals))
    means = np.empty(replicates)
    for i in range(replicates):
        means[i] = rng.choice(vals, size=m, replace=False).mean()
    return float(means.mean()), float(means.std())


def aggregate_reports(
    reports: list[MetricsReport],
    fraction: float = 0.8,
    replicates: int = 100,
    seed: int = 0,
) -> dict:
    """Aggregate a corpus of per-scene reports into mean/std per metric.

    The bootstrap generator is seeded once and consumed in fixed metric
    order, so the output is deterministic for a given seed.
    """
    rng = np.random.default_rng(seed)
    out: dict[str, dict] = {}
    for metric, attr in AGGREGATE_METRICS.items():
        raw = [getattr(r, attr) for r in reports]
        defined = [float(v) for v in raw if v is not None]
        excluded = len(raw) - len(defined)
        if len(defined) == 0:
            entry = {"mean": None, "std": None}
        elif len(defined) == 1:
            entry = {"mean": defined[0], "std": None}
        else:
            mean, std = bootstrap_aggregate(defined, fraction, replicates, rng)
            entry = {"mean": mean, "std": std}
        entry["n_defined"] = len(defined)
        entry["n_excluded"] = excluded
        out[metric] = entry
    return {
        "n_scenes": len(reports),
        "bootstrap": {"fraction": fraction, "replicates": replicates, "seed": seed},
        "metrics": out,
    }
