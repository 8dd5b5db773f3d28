"""Per-frame optimal one-to-one matching of predictions to ground truths.

Pairs are admissible when their angular distance is within the gate.
Among all admissible matchings the result has maximum cardinality and,
among those, minimum total angular error; this is solved as a linear
assignment over a cost matrix where out-of-gate pairs carry a
prohibitive cost. FP/FN counts are therefore gate-driven, not
cost-driven.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import GridMismatch
from .geometry import Direction, pairwise_angular_distance, unit_vectors
from .trackmodel import FrameGrid, TrackSet, per_frame_entries

# Must dominate any achievable sum of in-gate costs (<= n * pi) so the
# assignment never trades a real match away to avoid a prohibited pair.
_PROHIBITIVE = 1e6


@dataclass(frozen=True)
class FrameAssignment:
    """TP/FP/FN partition of one frame.

    tps holds (pred_id, gt_id, angular_error) triples; fps the unmatched
    prediction ids; fns the unmatched ground-truth ids.
    """

    tps: tuple[tuple[str, str, float], ...]
    fps: tuple[str, ...]
    fns: tuple[str, ...]

    @property
    def n_tp(self) -> int:
        return len(self.tps)


@dataclass(frozen=True)
class MatchSequence:
    grid: FrameGrid
    frames: tuple[FrameAssignment, ...]

    def __post_init__(self):
        if len(self.frames) != self.grid.n_frames:
            raise ValueError("frame count does not match grid")


def match_frame(
    preds: list[tuple[str, Direction]],
    gts: list[tuple[str, Direction]],
    gate: float,
) -> FrameAssignment:
    """Match one frame's predictions to its ground truths.

    Ids must be unique within each list; gate in (0, pi]. Inputs are
    sorted by id before solving, which fixes the tie-break order among
    equal-cost matchings.
    """
    if not 0.0 < gate <= math.pi:
        raise ValueError("gate must lie in (0, pi]")
    if len({p[0] for p in preds}) != len(preds):
        raise ValueError("duplicate prediction ids in frame")
    if len({g[0] for g in gts}) != len(gts):
        raise ValueError("duplicate ground-truth ids in frame")
    if not preds or not gts:
        return FrameAssignment(
            tps=(),
            fps=tuple(sorted(p[0] for p in preds)),
            fns=tuple(sorted(g[0] for g in gts)),
        )
    preds = sorted(preds, key=lambda p: p[0])
    gts = sorted(gts, key=lambda g: g[0])
    dist = pairwise_angular_distance(
        unit_vectors([p[1] for p in preds]), unit_vectors([g[1] for g in gts])
    )
    cost = np.where(dist <= gate, dist, _PROHIBITIVE)
    rows, cols = linear_sum_assignment(cost)
    tps = []
    matched_p, matched_g = set(), set()
    for i, j in zip(rows, cols):
        if dist[i, j] <= gate:
            tps.append((preds[i][0], gts[j][0], float(dist[i, j])))
            matched_p.add(i)
            matched_g.add(j)
    tps.sort(key=lambda t: (t[0], t[1]))
    fps = tuple(preds[i][0] for i in range(len(preds)) if i not in matched_p)
    fns = tuple(gts[j][0] for j in range(len(gts)) if j not in matched_g)
    return FrameAssignment(tps=tuple(tps), fps=fps, fns=fns)


def match_sequence(preds: TrackSet, gts: TrackSet, gate: float) -> MatchSequence:
    """Apply match_frame to the active entries of every frame.

    Raises GridMismatch unless both TrackSets share the same FrameGrid.
    """
    if preds.grid != gts.grid:
        raise GridMismatch(f"prediction grid {preds.grid} != ground-truth grid {gts.grid}")
    pred_frames = per_frame_entries(preds)
    gt_frames = per_frame_entries(gts)
    frames = tuple(
        match_frame(pf, gf, gate) for pf, gf in zip(pred_frames, gt_frames)
    )
    return MatchSequence(grid=gts.grid, frames=frames)
