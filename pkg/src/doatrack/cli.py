"""Command-line orchestration: simulate, track, evaluate, sweep, lint.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3
trend-assertion failure.

Corpus layout on disk: one directory per corpus holding
``manifest.json`` (frame grid plus the generating config echo) and per
scene ``scene_NNNN.gt.csv`` / ``scene_NNNN.obs.csv``; prediction
directories hold ``scene_NNNN.pred.csv`` plus a manifest copy. All
angles in JSON configs and CSV files are degrees.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from .errors import DoatrackError, InvalidConfig
from .geometry import angular_distance
from .reporting import (
    AGGREGATE_METRICS,
    aggregate_reports,
    evaluate_scene,
    report_csv_rows,
)
from .scenesim import ObservationModel, ScenarioConfig, generate_scene, simulate_observations
from .trackers import (
    TrackerConfig,
    merger_tracker,
    oracle_tracker,
    pf_tracker,
    splitter_tracker,
    swapper_tracker,
)
from .trackmodel import (
    FrameGrid,
    read_manifest,
    read_observations,
    read_trackset,
    write_manifest,
    write_observations,
    write_trackset,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_TREND = 3

DEFAULT_GATE_DEG = 20.0
DEFAULT_OSPA_CUTOFF_DEG = 30.0

# Trend directions checked by --assert-trends, per metric: +1 means the
# mean must not decrease as k_max grows, -1 must not increase.
TREND_DIRECTIONS = {"ass_re": -1, "ass_pr": +1, "tsr": +1}


def derive_seed(*key: int) -> int:
    """Deterministic child seed from a master seed and index path."""
    return int(np.random.SeedSequence(list(key)).generate_state(1)[0])


# ---------------------------------------------------------------------------
# JSON <-> config translation (degrees at the boundary)
# ---------------------------------------------------------------------------

_SCENARIO_KEYS = {
    "n_speakers",
    "mode",
    "n_positions",
    "min_separation_deg",
    "duration_s",
    "frame_period_s",
    "segment_len_s",
    "gap_len_s",
    "angular_speed_deg_s",
    "exclude_previous",
    "max_attempts",
}

_OBSERVATION_KEYS = {"angular_noise_sigma_deg", "p_miss", "clutter_rate"}

_TRACKER_KEYS = {
    "type",
    "k_max",
    "max_active",
    "assoc_gate_deg",
    "birth_frames",
    "death_frames",
    "n_particles",
    "process_noise_sigma_deg",
    "likelihood_sigma_deg",
    "seed",
    "k",
    "period_s",
}


def _reject_unknown(doc: dict, allowed: set, what: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise InvalidConfig(f"unknown {what} keys: {sorted(unknown)}")


def scenario_from_json(doc: dict, seed: int = 0) -> ScenarioConfig:
    _reject_unknown(doc, _SCENARIO_KEYS, "scenario")
    if "n_speakers" not in doc:
        raise InvalidConfig("scenario config requires n_speakers")
    kwargs: dict = {"n_speakers": int(doc["n_speakers"]), "seed": seed}
    if "mode" in doc:
        kwargs["mode"] = str(doc["mode"])
    if "n_positions" in doc:
        kwargs["n_positions"] = int(doc["n_positions"])
    if "min_separation_deg" in doc:
        kwargs["min_separation"] = math.radians(float(doc["min_separation_deg"]))
    if "duration_s" in doc:
        kwargs["duration_s"] = float(doc["duration_s"])
    if "frame_period_s" in doc:
        kwargs["frame_period_s"] = float(doc["frame_period_s"])
    if "segment_len_s" in doc:
        kwargs["segment_len_s"] = tuple(float(x) for x in doc["segment_len_s"])
    if "gap_len_s" in doc:
        kwargs["gap_len_s"] = tuple(float(x) for x in doc["gap_len_s"])
    if "angular_speed_deg_s" in doc:
        kwargs["angular_speed"] = math.radians(float(doc["angular_speed_deg_s"]))
    if "exclude_previous" in doc:
        kwargs["exclude_previous"] = bool(doc["exclude_previous"])
    if "max_attempts" in doc:
        kwargs["max_attempts"] = int(doc["max_attempts"])
    return ScenarioConfig(**kwargs)


def scenario_to_json(cfg: ScenarioConfig) -> dict:
    return {
        "n_speakers": cfg.n_speakers,
        "mode": cfg.mode,
        "n_positions": cfg.n_positions,
        "min_separation_deg": math.degrees(cfg.min_separation),
        "duration_s": cfg.duration_s,
        "frame_period_s": cfg.frame_period_s,
        "segment_len_s": list(cfg.segment_len_s),
        "gap_len_s": list(cfg.gap_len_s),
        "angular_speed_deg_s": math.degrees(cfg.angular_speed),
        "exclude_previous": cfg.exclude_previous,
        "max_attempts": cfg.max_attempts,
    }


def observation_from_json(doc: dict, seed: int = 0) -> ObservationModel:
    _reject_unknown(doc, _OBSERVATION_KEYS, "observation")
    kwargs: dict = {"seed": seed}
    if "angular_noise_sigma_deg" in doc:
        kwargs["angular_noise_sigma"] = math.radians(float(doc["angular_noise_sigma_deg"]))
    if "p_miss" in doc:
        kwargs["p_miss"] = float(doc["p_miss"])
    if "clutter_rate" in doc:
        kwargs["clutter_rate"] = float(doc["clutter_rate"])
    return ObservationModel(**kwargs)


def observation_to_json(om: ObservationModel) -> dict:
    return {
        "angular_noise_sigma_deg": math.degrees(om.angular_noise_sigma),
        "p_miss": om.p_miss,
        "clutter_rate": om.clutter_rate,
    }


def tracker_config_from_json(doc: dict, default_max_active: int | None) -> TrackerConfig:
    _reject_unknown(doc, _TRACKER_KEYS, "tracker")
    max_active = doc.get("max_active", default_max_active)
    if max_active is None:
        raise InvalidConfig(
            "tracker config requires max_active (no corpus default available)"
        )
    kwargs: dict = {"max_active": int(max_active)}
    if "k_max" in doc:
        kwargs["k_max"] = None if doc["k_max"] is None else int(doc["k_max"])
    if "assoc_gate_deg" in doc:
        kwargs["assoc_gate"] = math.radians(float(doc["assoc_gate_deg"]))
    if "birth_frames" in doc:
        kwargs["birth_frames"] = int(doc["birth_frames"])
    if "death_frames" in doc:
        kwargs["death_frames"] = int(doc["death_frames"])
    if "n_particles" in doc:
        kwargs["n_particles"] = int(doc["n_particles"])
    if "process_noise_sigma_deg" in doc:
        kwargs["process_noise_sigma"] = math.radians(float(doc["process_noise_sigma_deg"]))
    if "likelihood_sigma_deg" in doc:
        kwargs["likelihood_sigma"] = math.radians(float(doc["likelihood_sigma_deg"]))
    if "seed" in doc:
        kwargs["seed"] = int(doc["seed"])
    return TrackerConfig(**kwargs)


def _load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidConfig(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"malformed JSON in {path}: {exc}") from exc


def _write_json(doc: dict, path: Path) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _map_jobs(worker, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


def _scene_name(index: int) -> str:
    return f"scene_{index:04d}"


def _list_scene_ids(directory: Path, suffix: str) -> list[str]:
    return sorted(p.name[: -len(suffix)] for p in directory.glob(f"scene_*{suffix}"))


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def simulate_corpus(
    scenario_doc: dict,
    observation_doc: dict,
    n_scenes: int,
    master_seed: int,
    out_dir: Path,
) -> FrameGrid:
    """Write a seeded scene corpus; per-scene seeds derive from the master."""
    if n_scenes < 1:
        raise InvalidConfig("n_scenes must be >= 1")
    base = scenario_from_json(scenario_doc)
    om_base = observation_from_json(observation_doc)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = base.grid
    write_manifest(
        grid,
        out_dir / "manifest.json",
        extra={
            "scenario": scenario_to_json(base),
            "observation": observation_to_json(om_base),
            "n_scenes": n_scenes,
            "seed": master_seed,
        },
    )
    for i in range(n_scenes):
        gt = generate_scene(replace(base, seed=derive_seed(master_seed, i, 0)))
        obs = simulate_observations(gt, replace(om_base, seed=derive_seed(master_seed, i, 1)))
        write_trackset(gt, out_dir / f"{_scene_name(i)}.gt.csv")
        write_observations(obs, out_dir / f"{_scene_name(i)}.obs.csv")
    return grid


def cmd_simulate(args) -> int:
    doc = _load_json(args.config)
    master = args.seed if args.seed is not None else int(doc.get("seed", 0))
    simulate_corpus(
        doc.get("scenario", {}),
        doc.get("observation", {}),
        int(doc.get("n_scenes", 1)),
        master,
        Path(args.out),
    )
    print(f"simulate: wrote {int(doc.get('n_scenes', 1))} scenes to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# track
# ---------------------------------------------------------------------------


def _run_tracker_scene(task: tuple) -> tuple[str, str | None]:
    """Worker: produce one prediction CSV. Returns (scene_id, error)."""
    scene_id, scene_index, scenes_dir, out_dir, period, n_frames, doc = task
    grid = FrameGrid(period, n_frames)
    scenes = Path(scenes_dir)
    ttype = doc.get("type", "pf")
    try:
        if ttype in ("oracle", "pf"):
            obs_path = scenes / f"{scene_id}.obs.csv"
            if not obs_path.exists():
                raise FileNotFoundError(f"missing observation file {obs_path}")
            obs = read_observations(obs_path, grid)
            if ttype == "oracle":
                preds = oracle_tracker(obs)
            else:
                cfg = tracker_config_from_json(
                    {k: v for k, v in doc.items() if k not in ("type", "_default_max_active")},
                    default_max_active=doc.get("_default_max_active"),
                )
                cfg = replace(cfg, seed=derive_seed(cfg.seed, scene_index, 2))
                preds = pf_tracker(obs, cfg)
        else:
            gt_path = scenes / f"{scene_id}.gt.csv"
            if not gt_path.exists():
                raise FileNotFoundError(f"missing ground-truth file {gt_path}")
            gt = read_trackset(gt_path, grid)
            if ttype == "splitter":
                preds = splitter_tracker(gt, int(doc["k"]))
            elif ttype == "merger":
                preds = merger_tracker(gt)
            elif ttype == "swapper":
                preds = swapper_tracker(gt, float(doc["period_s"]))
            else:
                raise InvalidConfig(f"unknown tracker type {ttype!r}")
        write_trackset(preds, Path(out_dir) / f"{scene_id}.pred.csv")
        return scene_id, None
    except (DoatrackError, OSError, KeyError, ValueError) as exc:
        return scene_id, f"{type(exc).__name__}: {exc}"


def track_corpus(scenes_dir: Path, tracker_doc: dict, out_dir: Path, jobs: int = 1) -> list[str]:
    """Run a tracker over every scene; returns per-scene failure messages."""
    grid, manifest = read_manifest(scenes_dir / "manifest.json")
    scene_ids = _list_scene_ids(scenes_dir, ".gt.csv")
    if not scene_ids:
        raise InvalidConfig(f"no scenes found in {scenes_dir}")
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = dict(tracker_doc)
    if doc.get("type", "pf") == "pf":
        # Validate once up front; per-scene workers re-derive seeds only.
        default_max_active = manifest.get("scenario", {}).get("n_speakers")
        tracker_config_from_json(
            {k: v for k, v in doc.items() if k != "type"}, default_max_active
        )
        doc["_default_max_active"] = default_max_active
    write_manifest(grid, out_dir / "manifest.json")
    tasks = [
        (sid, i, str(scenes_dir), str(out_dir), grid.frame_period, grid.n_frames, doc)
        for i, sid in enumerate(scene_ids)
    ]
    results = _map_jobs(_run_tracker_scene, tasks, jobs)
    return [f"{sid}: {err}" for sid, err in results if err is not None]


def cmd_track(args) -> int:
    doc = _load_json(args.config)
    failures = track_corpus(Path(args.scenes), doc, Path(args.out), args.jobs)
    for line in failures:
        print(f"track: FAILED {line}", file=sys.stderr)
    if failures:
        return EXIT_DATA
    print(f"track: predictions written to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


def _evaluate_scene_task(task: tuple):
    (scene_id, gt_path, pred_path, gt_period, gt_frames, pred_period, pred_frames,
     gate, cutoff, order) = task
    gt_grid = FrameGrid(gt_period, gt_frames)
    pred_grid = FrameGrid(pred_period, pred_frames)
    try:
        gts = read_trackset(gt_path, gt_grid)
        preds = read_trackset(pred_path, pred_grid)
        report = evaluate_scene(scene_id, gts, preds, gate, cutoff, order)
        return scene_id, report, None
    except DoatrackError as exc:
        return scene_id, None, f"{type(exc).__name__}: {exc}"


def evaluate_corpus(
    gt_dir: Path,
    pred_dir: Path,
    gate: float,
    out_dir: Path | None,
    ospa_cutoff: float = math.radians(DEFAULT_OSPA_CUTOFF_DEG),
    ospa_order: float = 1.0,
    fraction: float = 0.8,
    replicates: int = 100,
    seed: int = 0,
    jobs: int = 1,
):
    """Evaluate a prediction corpus against its ground truths.

    Returns (reports, aggregate, failures); writes per_scene.csv and
    aggregate.json to out_dir when given.
    """
    grid, _ = read_manifest(gt_dir / "manifest.json")
    pred_manifest = pred_dir / "manifest.json"
    pred_grid = read_manifest(pred_manifest)[0] if pred_manifest.exists() else grid
    gt_ids = _list_scene_ids(gt_dir, ".gt.csv")
    pred_ids = _list_scene_ids(pred_dir, ".pred.csv")
    if gt_ids != pred_ids:
        missing = sorted(set(gt_ids) ^ set(pred_ids))
        raise DoatrackError(f"scene sets differ between {gt_dir} and {pred_dir}: {missing}")
    tasks = [
        (
            sid,
            str(gt_dir / f"{sid}.gt.csv"),
            str(pred_dir / f"{sid}.pred.csv"),
            grid.frame_period,
            grid.n_frames,
            pred_grid.frame_period,
            pred_grid.n_frames,
            gate,
            ospa_cutoff,
            ospa_order,
        )
        for sid in gt_ids
    ]
    results = _map_jobs(_evaluate_scene_task, tasks, jobs)
    reports = [r for _sid, r, err in results if err is None]
    failures = [f"{sid}: {err}" for sid, _r, err in results if err is not None]
    aggregate = aggregate_reports(reports, fraction, replicates, seed) if reports else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "per_scene.csv").write_text(report_csv_rows(reports), encoding="utf-8")
        if aggregate is not None:
            _write_json(
                {**aggregate, "gate_deg": math.degrees(gate)},
                out_dir / "aggregate.json",
            )
    return reports, aggregate, failures


def cmd_evaluate(args) -> int:
    reports, _agg, failures = evaluate_corpus(
        Path(args.gt),
        Path(args.pred),
        math.radians(args.gate_deg),
        Path(args.out) if args.out else None,
        ospa_cutoff=math.radians(args.ospa_cutoff_deg),
        ospa_order=args.ospa_order,
        replicates=args.replicates,
        seed=args.seed if args.seed is not None else 0,
        jobs=args.jobs,
    )
    for line in failures:
        print(f"evaluate: FAILED {line}", file=sys.stderr)
    if failures:
        return EXIT_DATA
    print(f"evaluate: {len(reports)} scenes evaluated")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _kmax_label(k) -> str:
    return "inf" if k is None else str(int(k))


def check_trends(
    means: dict[str, list[float | None]],
    stds: dict[str, list[float | None]],
    labels: list[str],
) -> list[str]:
    """Trend violations for one subset across an ordered k_max list.

    Requires strict ordering between the endpoints in the metric's
    direction and tolerates adjacent inversions up to one bootstrap std.
    """
    problems = []
    for metric, direction in TREND_DIRECTIONS.items():
        series = means.get(metric, [])
        if len(series) < 2 or any(v is None for v in series):
            problems.append(f"{metric}: series undefined or too short")
            continue
        first, last = series[0], series[-1]
        if direction * (last - first) <= 0:
            problems.append(
                f"{metric}: endpoints not strictly ordered "
                f"({labels[0]}={first:.4f} vs {labels[-1]}={last:.4f})"
            )
        sd = stds.get(metric, [None] * len(series))
        for i in range(len(series) - 1):
            margin = max(sd[i] or 0.0, sd[i + 1] or 0.0)
            if direction * (series[i + 1] - series[i]) < -margin:
                problems.append(
                    f"{metric}: inversion beyond noise margin between "
                    f"{labels[i]} ({series[i]:.4f}) and {labels[i+1]} ({series[i+1]:.4f})"
                )
    return problems


def run_sweep(doc: dict, out_dir: Path, master_seed: int, jobs: int = 1) -> dict:
    """Simulate per-subset corpora, run the PF tracker per k_max value,
    evaluate, and aggregate into plot-ready tables."""
    subsets = doc.get("subsets")
    k_values = doc.get("k_max_values")
    if not subsets or not isinstance(subsets, list):
        raise InvalidConfig("sweep config requires a non-empty subsets list")
    if not k_values or not isinstance(k_values, list):
        raise InvalidConfig("sweep config requires a non-empty k_max_values list")
    scenario_doc = dict(doc.get("scenario", {}))
    observation_doc = doc.get("observation", {})
    tracker_doc = dict(doc.get("tracker", {}))
    tracker_doc.setdefault("type", "pf")
    if tracker_doc["type"] != "pf":
        raise InvalidConfig("sweep supports only the pf tracker")
    gate = math.radians(float(doc.get("gate_deg", DEFAULT_GATE_DEG)))
    boot = doc.get("bootstrap", {})
    fraction = float(boot.get("fraction", 0.8))
    replicates = int(boot.get("replicates", 100))
    out_dir.mkdir(parents=True, exist_ok=True)
    results: dict[str, dict] = {}
    long_rows = ["subset,k_max,metric,mean,std"]
    for si, sub in enumerate(subsets):
        n_speakers = int(sub["n_speakers"])
        name = str(sub.get("name", f"{n_speakers}spk"))
        n_scenes = int(sub.get("n_scenes", 150))
        scenes_dir = out_dir / name / "scenes"
        sub_scenario = {**scenario_doc, "n_speakers": n_speakers}
        simulate_corpus(
            sub_scenario, observation_doc, n_scenes, derive_seed(master_seed, si, 10), scenes_dir
        )
        results[name] = {}
        for ki, k in enumerate(k_values):
            label = _kmax_label(k)
            cell_dir = out_dir / name / f"kmax_{label}"
            cell_tracker = {**tracker_doc, "k_max": k}
            cell_tracker.setdefault("max_active", n_speakers)
            cell_tracker.setdefault("seed", derive_seed(master_seed, si, ki, 11))
            failures = track_corpus(scenes_dir, cell_tracker, cell_dir / "preds", jobs)
            if failures:
                raise DoatrackError(
                    f"sweep cell {name}/kmax_{label} had failures: {failures[:3]}"
                )
            _reports, aggregate, eval_failures = evaluate_corpus(
                scenes_dir,
                cell_dir / "preds",
                gate,
                cell_dir / "eval",
                fraction=fraction,
                replicates=replicates,
                seed=derive_seed(master_seed, si, ki, 12),
                jobs=jobs,
            )
            if eval_failures:
                raise DoatrackError(
                    f"sweep cell {name}/kmax_{label} evaluation failed: {eval_failures[:3]}"
                )
            results[name][label] = aggregate
            for metric in AGGREGATE_METRICS:
                entry = aggregate["metrics"][metric]
                mean = "" if entry["mean"] is None else repr(entry["mean"])
                std = "" if entry["std"] is None else repr(entry["std"])
                long_rows.append(f"{name},{label},{metric},{mean},{std}")
    (out_dir / "sweep_long.csv").write_text("\n".join(long_rows) + "\n", encoding="utf-8")
    summary = {
        "seed": master_seed,
        "gate_deg": math.degrees(gate),
        "k_max_values": [_kmax_label(k) for k in k_values],
        "subsets": results,
    }
    _write_json(summary, out_dir / "sweep.json")
    return summary


def cmd_sweep(args) -> int:
    doc = _load_json(args.config)
    master = args.seed if args.seed is not None else int(doc.get("seed", 0))
    summary = run_sweep(doc, Path(args.out), master, args.jobs)
    print(f"sweep: results written to {args.out}")
    if not args.assert_trends:
        return EXIT_OK
    labels = summary["k_max_values"]
    all_problems = []
    for name, by_k in summary["subsets"].items():
        means = {
            m: [by_k[lab]["metrics"][m]["mean"] for lab in labels]
            for m in TREND_DIRECTIONS
        }
        stds = {
            m: [by_k[lab]["metrics"][m]["std"] for lab in labels]
            for m in TREND_DIRECTIONS
        }
        for p in check_trends(means, stds, labels):
            all_problems.append(f"{name}: {p}")
    for p in all_problems:
        print(f"sweep: TREND VIOLATION {p}", file=sys.stderr)
    return EXIT_TREND if all_problems else EXIT_OK


# ---------------------------------------------------------------------------
# lint
# ---------------------------------------------------------------------------


def lint_corpus(scenes_dir: Path) -> list[str]:
    """Validate a corpus: parseable files, in-range frames, and for
    jump/static corpora piecewise-constant directions within each
    maximal active run plus candidate-separation on jump tracks."""
    problems = []
    try:
        grid, manifest = read_manifest(scenes_dir / "manifest.json")
    except (DoatrackError, OSError) as exc:
        return [f"manifest: {exc}"]
    scenario = manifest.get("scenario", {})
    mode = scenario.get("mode")
    min_sep = math.radians(float(scenario.get("min_separation_deg", 0.0)))
    scene_ids = _list_scene_ids(scenes_dir, ".gt.csv")
    if not scene_ids:
        problems.append(f"no scenes found in {scenes_dir}")
    for sid in scene_ids:
        try:
            gt = read_trackset(scenes_dir / f"{sid}.gt.csv", grid)
        except DoatrackError as exc:
            problems.append(f"{sid}: {type(exc).__name__}: {exc}")
            continue
        if mode not in ("jump", "static"):
            continue
        for tid, frames in gt.entries.items():
            ordered = sorted(frames)
            runs: list[list[int]] = []
            for f in ordered:
                if runs and f == runs[-1][-1] + 1:
                    runs[-1].append(f)
                else:
                    runs.append([f])
            for run in runs:
                first = frames[run[0]]
                if any(frames[f] != first for f in run[1:]):
                    problems.append(f"{sid}/{tid}: direction varies within an active run")
                    break
            if mode == "jump" and min_sep > 0:
                unique = []
                for run in runs:
                    d = frames[run[0]]
                    if all(d != u for u in unique):
                        unique.append(d)
                for i in range(len(unique)):
                    for j in range(i + 1, len(unique)):
                        # 1e-6 rad absorbs the 6-decimal CSV quantization
                        if angular_distance(unique[i], unique[j]) < min_sep - 1e-6:
                            problems.append(
                                f"{sid}/{tid}: positions closer than the minimum separation"
                            )
    return problems


def cmd_lint(args) -> int:
    problems = lint_corpus(Path(args.scenes))
    for p in problems:
        print(f"lint: {p}", file=sys.stderr)
    if problems:
        return EXIT_DATA
    print("lint: corpus OK")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doatrack",
        description="Simulate DoA tracking scenes, run baseline trackers, and "
        "evaluate identity-assignment metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="generate a seeded scene corpus")
    p_sim.add_argument("--config", required=True, help="scenario/observation JSON")
    p_sim.add_argument("--out", required=True, help="output corpus directory")
    p_sim.add_argument("--seed", type=int, default=None, help="master seed override")
    p_sim.set_defaults(func=cmd_simulate)

    p_trk = sub.add_parser("track", help="run a tracker over a corpus")
    p_trk.add_argument("--config", required=True, help="tracker JSON")
    p_trk.add_argument("--scenes", required=True, help="corpus directory")
    p_trk.add_argument("--out", required=True, help="prediction output directory")
    p_trk.add_argument("--jobs", type=int, default=1)
    p_trk.set_defaults(func=cmd_track)

    p_eval = sub.add_parser("evaluate", help="compute per-scene and aggregate metrics")
    p_eval.add_argument("--gt", required=True, help="ground-truth corpus directory")
    p_eval.add_argument("--pred", required=True, help="prediction directory")
    p_eval.add_argument("--out", default=None, help="report output directory")
    p_eval.add_argument("--gate-deg", type=float, default=DEFAULT_GATE_DEG)
    p_eval.add_argument("--ospa-cutoff-deg", type=float, default=DEFAULT_OSPA_CUTOFF_DEG)
    p_eval.add_argument("--ospa-order", type=float, default=1.0)
    p_eval.add_argument("--replicates", type=int, default=100, help="bootstrap replicates")
    p_eval.add_argument("--seed", type=int, default=None, help="bootstrap seed")
    p_eval.add_argument("--jobs", type=int, default=1)
    p_eval.set_defaults(func=cmd_evaluate)

    p_swp = sub.add_parser("sweep", help="k_max sweep over simulated subsets")
    p_swp.add_argument("--config", required=True, help="sweep spec JSON")
    p_swp.add_argument("--out", required=True)
    p_swp.add_argument("--seed", type=int, default=None, help="master seed override")
    p_swp.add_argument("--jobs", type=int, default=1)
    p_swp.add_argument(
        "--assert-trends",
        action="store_true",
        help="exit 3 unless AssRe/AssPr/TSR move monotonically with k_max",
    )
    p_swp.set_defaults(func=cmd_sweep)

    p_lint = sub.add_parser("lint", help="validate a corpus directory")
    p_lint.add_argument("--scenes", required=True)
    p_lint.set_defaults(func=cmd_lint)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidConfig as exc:
        print(f"doatrack: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DoatrackError, OSError) as exc:
        print(f"doatrack: data error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
