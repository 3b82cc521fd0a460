"""Command-line entry point.

Subcommands: corpus {validate,stats,synth,textstats}; train; sample;
evaluate; ablate; control fit-thresholds; adapter {train,eval}; study
{build,serve,simulate,analyze,correlate}.

Every randomized command requires an explicit --seed, and every command
that writes an output directory drops a run_config.json with the exact
parameters. Exit codes: 0 success, 1 validation/usage failure, 2 runtime
failure; errors emit a structured JSON payload on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import DyadicMotionError, ValidationError

DATA_ROOT_ENV = "DYADICMOTION_DATA_ROOT"


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(
            json.dumps({"error": "usage", "message": message}),
            file=sys.stderr,
        )
        raise SystemExit(1)


def _default_root() -> str:
    return os.environ.get(DATA_ROOT_ENV, ".")


def build_parser() -> CliParser:
    parser = CliParser(prog="dyadicmotion")
    parser.add_argument("--config", help="JSON file with parameter defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    # corpus ---------------------------------------------------------------
    corpus = sub.add_parser("corpus", parents=[], help="corpus tools")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True)

    p = corpus_sub.add_parser("validate", help="split/QA validation report")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--json", dest="json_out")

    p = corpus_sub.add_parser("stats", help="corpus statistics tables")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--json", dest="json_out")

    p = corpus_sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--dyads", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--coupling", type=float, default=0.7)
    p.add_argument("--interactions", type=int, default=4)
    p.add_argument("--min-duration", type=float, default=8.0)
    p.add_argument("--max-duration", type=float, default=16.0)
    p.add_argument("--vocab", type=int, default=64)
    p.add_argument("--dev-fraction", type=float, default=0.125)
    p.add_argument("--test-fraction", type=float, default=0.125)

    p = corpus_sub.add_parser("textstats", help="FRES and MTLD reports")
    p.add_argument("--corpus")
    p.add_argument("--text", nargs="*", default=[])
    p.add_argument("--json", dest="json_out")

    # modeling ---------------------------------------------------------------
    p = sub.add_parser("train", help="train a flow model on a corpus")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--channel", choices=("face", "body", "joint"), default="face")
    p.add_argument("--mode", choices=("monadic", "dyadic", "av"), default="dyadic")
    p.add_argument("--cascade", choices=("joint", "face2body", "body2face"), default="joint")
    p.add_argument("--face-cond", choices=("full", "headrot"), default="full")
    p.add_argument("--steps", type=int, default=1200)
    p.add_argument("--batch", type=int, default=16)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--hidden", type=int, default=64)
    p.add_argument("--ffn", type=int, default=128)
    p.add_argument("--heads", type=int, default=4)
    p.add_argument(
        "--attention",
        choices=("self", "cross", "windowed_self", "windowed_cross"),
        default="self",
    )
    p.add_argument("--window-frames", type=int, default=60)

    p = sub.add_parser("sample", help="generate motion for a corpus split")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--split", default="test")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--cfg", type=float, default=1.5)
    p.add_argument("--max-frames", type=int, default=300)
    p.add_argument("--max-streams", type=int, default=12)

    p = sub.add_parser("evaluate", help="score one or more generation runs")
    p.add_argument("--gen", required=True, nargs="+",
                   help="generation dir(s); several dirs report mean ± std")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--split", default="test")
    p.add_argument("--json", dest="json_out")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("ablate", help="condition/architecture ablation table")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--steps", type=int, default=1200)
    p.add_argument("--sample-steps", type=int, default=50)
    p.add_argument("--max-streams", type=int, default=8)
    p.add_argument("--max-frames", type=int, default=240)
    p.add_argument("--jobs", type=int, default=1)

    # control -----------------------------------------------------------------
    control = sub.add_parser("control", help="controllability tools")
    control_sub = control.add_subparsers(dest="control_command", required=True)
    p = control_sub.add_parser("fit-thresholds", help="fit dynamism bucket thresholds")
    p.add_argument("--corpus", default=_default_root())
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--scheme", choices=("quartile", "quantile"), default="quantile")
    p.add_argument("--signal", choices=("head_rotation",), default="head_rotation")

    # adapter -----------------------------------------------------------------
    adapter = sub.add_parser("adapter", help="LLM-adapter tools")
    adapter_sub = adapter.add_subparsers(dest="adapter_command", required=True)
    p = adapter_sub.add_parser("train", help="train a gesture adapter on the fixture")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rate", type=float, default=2.0)
    p.add_argument("--epochs", type=int, default=320)
    p = adapter_sub.add_parser("eval", help="token-rate sweep (1 and 2 tokens/s)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--rates", default="1,2")
    p.add_argument("--json", dest="json_out")

    # study -------------------------------------------------------------------
    study = sub.add_parser("study", help="human preference study tools")
    study_sub = study.add_subparsers(dest="study_command", required=True)
    p = study_sub.add_parser("build", help="build study items")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, default=61)
    p.add_argument("--systems", default="GT,A,B,C,D")
    p.add_argument("--protocol", choices=("face_dyadic", "body_dyadic"), default="face_dyadic")
    p.add_argument("--ratings-per-item", type=int, default=5)
    p = study_sub.add_parser("serve", help="run the rating service")
    p.add_argument("--study", required=True)
    p.add_argument("--media")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p = study_sub.add_parser("simulate", help="simulate raters for a demo study")
    p.add_argument("--study", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--raters", type=int, default=25)
    p = study_sub.add_parser("analyze", help="aggregate ratings with CIs")
    p.add_argument("--study", required=True)
    p.add_argument("--json", dest="json_out")
    p = study_sub.add_parser("correlate", help="metric-vs-human correlation")
    p.add_argument("--study", required=True)
    p.add_argument("--metrics", required=True, help="JSON [{item_id, system, score}]")
    p.add_argument("--dimension", default="lifelike")
    p.add_argument("--json", dest="json_out")

    return parser


# --------------------------------------------------------------------------


def _cmd_corpus(args) -> int:
    from .corpus import load_manifest

    if args.corpus_command == "synth":
        from .corpus import SyntheticConfig, generate_synthetic_corpus
        from .experiments.reporting import write_run_config

        cfg = SyntheticConfig(
            dyads=args.dyads,
            interactions_per_dyad=args.interactions,
            duration_range_s=(args.min_duration, args.max_duration),
            coupling=args.coupling,
            vocab_size=args.vocab,
            dev_fraction=args.dev_fraction,
            test_fraction=args.test_fraction,
        )
        manifest = generate_synthetic_corpus(cfg, seed=args.seed, out_dir=args.out)
        write_run_config(args.out, "corpus synth", vars(args))
        print(
            f"wrote {len(manifest)} interactions, "
            f"{len(manifest.participant_ids())} participants to {args.out}"
        )
        return 0

    if args.corpus_command == "validate":
        from .corpus import validate_splits
        from .experiments.reporting import format_table, write_json

        manifest = load_manifest(args.corpus)
        report = validate_splits(manifest)
        rows = [
            [v.participant_id, v.part, ",".join(v.splits)] for v in report.violations
        ]
        print(format_table(["participant", "part", "splits"], rows or [["-", "-", "-"]]))
        if report.suspect_durations:
            print(f"suspect durations: {len(report.suspect_durations)} interactions")
        print("PASS" if report.ok else f"FAIL: {len(report.violations)} violations")
        if args.json_out:
            write_json(
                args.json_out,
                {
                    "ok": report.ok,
                    "violations": [vars(v) for v in report.violations],
                    "suspect_durations": report.suspect_durations,
                },
            )
        return 0 if report.ok else 1

    if args.corpus_command == "stats":
        from .corpus import compute_stats
        from .experiments.reporting import format_table, write_json

        manifest = load_manifest(args.corpus)
        stats = compute_stats(manifest)
        headers = ["partition", "hours", "interactions", "sessions", "participants", "prompts"]

        def row(label, r):
            d = r.as_dict()
            return [
                label,
                f"{d['hours']:.2f}",
                str(d["interactions"]),
                str(d["sessions"]),
                str(d["participants"]),
                str(d["prompts"]),
            ]

        rows = [row("overall", stats.overall)]
        rows += [row(part, r) for part, r in sorted(stats.by_part.items())]
        rows += [
            row(f"{part}/{split}", r)
            for (part, split), r in sorted(stats.by_part_split.items())
        ]
        rows += [row(f"rel:{k}", r) for k, r in sorted(stats.by_relationship.items())]
        rows += [row(f"type:{k}", r) for k, r in sorted(stats.by_interaction_type.items())]
        print(format_table(headers, rows))
        if args.json_out:
            write_json(
                args.json_out,
                {
                    "overall": stats.overall.as_dict(),
                    "by_part": {k: v.as_dict() for k, v in stats.by_part.items()},
                    "by_part_split": {
                        f"{p}/{s}": v.as_dict() for (p, s), v in stats.by_part_split.items()
                    },
                    "by_relationship": {
                        k: v.as_dict() for k, v in stats.by_relationship.items()
                    },
                    "by_interaction_type": {
                        k: v.as_dict() for k, v in stats.by_interaction_type.items()
                    },
                },
            )
        return 0

    if args.corpus_command == "textstats":
        from .corpus import text_report
        from .experiments.reporting import format_table, write_json

        reports = {}
        for path in args.text:
            reports[path] = text_report(Path(path).read_text(encoding="utf-8"))
        if args.corpus:
            manifest = load_manifest(args.corpus)
            prompts = " ".join(
                t for r in manifest.records for t in (r.prompt_a, r.prompt_b) if t
            )
            if prompts:
                reports["corpus prompts"] = text_report(prompts)
        if not reports:
            raise ValidationError("textstats needs --text files and/or --corpus")
        rows = [
            [
                name,
                str(r["sentences"]),
                str(r["words"]),
                f"{r['fres']:.2f}",
                f"{r['mtld']:.2f}" if r["mtld"] != float("inf") else "inf",
            ]
            for name, r in reports.items()
        ]
        print(format_table(["text", "sentences", "words", "FRES", "MTLD"], rows))
        if args.json_out:
            write_json(args.json_out, reports)
        return 0
    raise ValidationError(f"unknown corpus command {args.corpus_command!r}")


def _cmd_train(args) -> int:
    from .conditioning.cascade import CascadeSpec
    from .corpus import load_manifest
    from .experiments.ablation import ToyScale, save_system, train_system
    from .experiments.reporting import write_run_config

    manifest = load_manifest(args.corpus)
    mode = {"av": "av_dyadic"}.get(args.mode, args.mode)
    scale = ToyScale(
        window=args.window_frames,
        layers=args.layers,
        hidden_dim=args.hidden,
        ffn_dim=args.ffn,
        heads=args.heads,
        attention=args.attention,
        train_steps=args.steps,
        batch_size=args.batch,
        lr=args.lr,
    )
    cascade = None
    if args.cascade != "joint":
        variant = "head_rotation_only" if args.face_cond == "headrot" else "full_imitator"
        cascade = CascadeSpec(order=args.cascade, face_cond_variant=variant)
    vocab = _corpus_vocab(manifest, args.corpus)
    system = train_system(
        manifest,
        args.corpus,
        mode,
        args.channel,
        scale,
        seed=args.seed,
        vocab=vocab,
        stage_cascade=cascade,
    )
    out_dir = Path(args.out)
    save_system(out_dir / "model.ckpt", system)
    write_run_config(out_dir, "train", vars(args))
    print(f"saved checkpoint to {out_dir / 'model.ckpt'}")
    return 0


def _corpus_vocab(manifest, root) -> int:
    from .corpus.featurefile import read_feature_file

    for rec in manifest.records:
        ref = rec.feature_refs.get("speech_a")
        if ref:
            tokens, _ = read_feature_file(Path(root) / ref)
            return max(64, int(tokens.max()) + 1)
    return 64


def _cmd_sample(args) -> int:
    from .corpus import load_manifest
    from .experiments.ablation import ToyScale, generate_streams, load_system
    from .experiments.data import load_agent_streams
    from .experiments.evaluate import write_generation
    from .experiments.reporting import write_run_config

    manifest = load_manifest(args.corpus)
    system = load_system(args.model)
    streams = load_agent_streams(manifest, args.corpus, channel=system.channel, split=args.split)
    if not streams:
        raise ValidationError(f"no streams in split {args.split!r}")
    scale = ToyScale(
        sample_steps=args.steps,
        cfg_weight=args.cfg,
        max_eval_frames=args.max_frames,
        max_eval_streams=args.max_streams,
    )
    generated = generate_streams(system, streams, scale, seed=args.seed)
    out_dir = Path(args.out)
    for stream, values in zip(streams, generated):
        write_generation(out_dir, stream.interaction_id, stream.side, system.channel, values)
    write_run_config(out_dir, "sample", vars(args))
    print(f"wrote {len(generated)} generated sequences to {out_dir}")
    return 0


def _cmd_evaluate(args) -> int:
    import numpy as np
    import torch

    from .corpus import load_manifest
    from .experiments.evaluate import evaluate_generation
    from .experiments.reporting import format_table, write_json

    torch.set_num_threads(max(1, args.jobs))
    manifest = load_manifest(args.corpus)
    reports = [
        evaluate_generation(gen, manifest, args.corpus, split=args.split)
        for gen in args.gen
    ]

    def cell(values):
        vals = [v for v in values if v is not None]
        if not vals:
            return "n/a"
        if len(vals) == 1:
            return f"{vals[0]:.4f}"
        return f"{np.mean(vals):.4f} ± {np.std(vals, ddof=1):.4f}"

    rows = [
        ["face FFD", cell([r.face_ffd for r in reports])],
        ["body FGD", cell([r.body_fgd for r in reports])],
        ["body diversity", cell([r.body_diversity for r in reports])],
    ]
    for name in reports[0].external:
        values = [r.external[name] for r in reports]
        rows.append([name, "unavailable" if all(v is None for v in values) else cell(values)])
    rows.append(["runs", str(len(reports))])
    rows.append(["sequences", str(reports[0].n_sequences)])
    rows.append(["frames", str(reports[0].n_frames)])
    print(format_table(["metric", "value"], rows))
    if args.json_out:
        write_json(args.json_out, reports[0].as_dict() if len(reports) == 1 else
                   {"runs": [r.as_dict() for r in reports]})
    return 0


def _cmd_ablate(args) -> int:
    import torch

    from .corpus import load_manifest
    from .experiments.ablation import ToyScale, run_condition_ablation
    from .experiments.reporting import format_table, mean_std_cell, write_json, write_run_config

    torch.set_num_threads(max(1, args.jobs))
    manifest = load_manifest(args.corpus)
    scale = ToyScale(
        train_steps=args.steps,
        sample_steps=args.sample_steps,
        max_eval_streams=args.max_streams,
        max_eval_frames=args.max_frames,
    )
    table = run_condition_ablation(
        manifest, args.corpus, seed=args.seed, runs=args.runs, scale=scale
    )
    headers = ["System", "Condition", "FFD", "Sync-C", "Sync-D", "FID", "FGD", "Diversity"]
    rows = [
        [
            r.system,
            r.condition,
            mean_std_cell(r.face_ffd),
            "n/a",
            "n/a",
            "n/a",
            mean_std_cell(r.body_fgd),
            mean_std_cell(r.body_diversity),
        ]
        for r in table.rows
    ]
    text = format_table(headers, rows)
    print(text)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "ablation.txt").write_text(text + "\n", encoding="utf-8")
    write_json(out_dir / "ablation.json", {"rows": [vars(r) for r in table.rows]})
    write_run_config(out_dir, "ablate", vars(args))
    return 0


def _cmd_control(args) -> int:
    from .control import dynamism, fit_thresholds
    from .corpus import load_manifest
    from .experiments.data import load_agent_streams
    from .features.containers import HEAD_ROTATION_SLICE

    manifest = load_manifest(args.corpus)
    streams = load_agent_streams(manifest, args.corpus, channel="face")
    if not streams:
        raise ValidationError("corpus has no face streams")
    import numpy as np

    samples = np.concatenate(
        [dynamism(s.motion[:, HEAD_ROTATION_SLICE]).ravel() for s in streams]
    )
    spec = fit_thresholds(samples, k=args.k, scheme=args.scheme)
    spec.save(args.out)
    print(f"k={spec.k} thresholds={spec.thresholds.tolist()} -> {args.out}")
    return 0


def _cmd_adapter(args) -> int:
    from .experiments.adapterlab import run_gesture_rate_sweep
    from .experiments.reporting import format_table, write_json, write_run_config

    if args.adapter_command == "train":
        rows = run_gesture_rate_sweep(args.seed, rates=(args.rate,), epochs=args.epochs)
        out_dir = Path(args.out)
        write_json(out_dir / "adapter_metrics.json", {"rows": [vars(r) for r in rows]})
        write_run_config(out_dir, "adapter train", vars(args))
        r = rows[0]
        print(
            f"rate {r.rate}: precision {r.precision:.3f} recall {r.recall:.3f} "
            f"F1 {r.f1:.3f} accuracy {r.accuracy:.3f}"
        )
        return 0
    if args.adapter_command == "eval":
        rates = tuple(float(x) for x in args.rates.split(","))
        rows = run_gesture_rate_sweep(args.seed, rates=rates)
        table_rows = [
            [f"{r.rate:g} token/sec", f"{r.precision:.3f}", f"{r.recall:.3f}", f"{r.f1:.3f}"]
            for r in rows
        ]
        print(format_table(["Token rate", "Precision", "Recall", "F1 score"], table_rows))
        if args.json_out:
            write_json(args.json_out, {"rows": [vars(r) for r in rows]})
        return 0
    raise ValidationError(f"unknown adapter command {args.adapter_command!r}")


def _study_paths(study_dir: str | Path) -> tuple[Path, Path, Path]:
    study_dir = Path(study_dir)
    return study_dir / "study.json", study_dir / "items.jsonl", study_dir / "events.jsonl"


def _load_study(study_dir: str | Path):
    from .humaneval import EventLog, Study, StudyItem

    config_path, items_path, events_path = _study_paths(study_dir)
    if not config_path.exists():
        raise ValidationError(f"no study.json under {study_dir}")
    config = json.loads(config_path.read_text(encoding="utf-8"))
    items = [
        StudyItem.from_dict(json.loads(line))
        for line in items_path.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    study = Study(
        study_id=config["study_id"],
        items=items,
        ratings_per_item=config.get("ratings_per_item", 5),
        log=EventLog.open(events_path),
    )
    return study, config


def _cmd_study(args) -> int:
    from .experiments.reporting import format_table, write_json, write_run_config

    if args.study_command == "build":
        from .humaneval import SampleRef, build_items

        systems = [s for s in args.systems.split(",") if s]
        samples = [
            SampleRef(
                sample_id=f"s{i:03d}",
                anchor_media=f"media/s{i:03d}.anchor.mp4",
                candidate_media={sys: f"media/s{i:03d}.{sys}.mp4" for sys in systems},
                vad_segments=[{"channel": "anchor", "start_s": 0.0, "end_s": 10.0}],
            )
            for i in range(args.samples)
        ]
        items = build_items(
            samples,
            systems,
            protocol=args.protocol,
            ratings_per_item=args.ratings_per_item,
            seed=args.seed,
        )
        config_path, items_path, _ = _study_paths(args.out)
        config_path.parent.mkdir(parents=True, exist_ok=True)
        config_path.write_text(
            json.dumps(
                {
                    "study_id": Path(args.out).name,
                    "protocol": args.protocol,
                    "ratings_per_item": args.ratings_per_item,
                    "systems": systems,
                    "samples": args.samples,
                    "seed": args.seed,
                },
                indent=2,
            )
            + "\n",
            encoding="utf-8",
        )
        with items_path.open("w", encoding="utf-8") as fh:
            for item in items:
                fh.write(json.dumps(item.to_dict(), sort_keys=True) + "\n")
        write_run_config(args.out, "study build", vars(args))
        print(f"built {len(items)} items ({args.samples} samples x {len(systems)} systems)")
        return 0

    if args.study_command == "serve":
        import uvicorn

        from .humaneval import create_app

        study, config = _load_study(args.study)
        app = create_app({study.study_id: study}, media_root=args.media)
        print(f"serving study {study.study_id!r} on {args.host}:{args.port}")
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    if args.study_command == "simulate":
        import numpy as np

        from .humaneval import RatingRecord

        study, config = _load_study(args.study)
        rng = np.random.default_rng(args.seed)
        # simulated raters share a latent per-system quality ordering
        quality = {s: rng.normal() for s in config["systems"]}
        for r in range(args.raters):
            rater = f"sim{r:03d}"
            study.register_rater(rater)
            while True:
                item = study.next_item(rater)
                if item is None:
                    break
                gap = quality[item.system_right] - quality[item.system_left]
                for dim in study.protocol.dimension_ids():
                    noisy = gap + rng.normal(0, 0.8)
                    value = int(np.clip(round(noisy), -2, 2))
                    study.record_rating(RatingRecord(item.item_id, rater, dim, value))
        print(f"simulated {args.raters} raters; log at {_study_paths(args.study)[2]}")
        return 0

    if args.study_command == "analyze":
        from .humaneval import aggregate

        study, _ = _load_study(args.study)
        results = aggregate(study)
        rows = [
            [f"{pair[0]} vs {pair[1]}", dim, f"{s.mean:+.3f}", f"{s.ci_halfwidth:.3f}", str(s.n_items)]
            for pair, dims in sorted(results.matchups.items())
            for dim, s in sorted(dims.items())
        ]
        print(format_table(["matchup", "dimension", "mean", "ci95", "items"], rows))
        if args.json_out:
            write_json(args.json_out, results.as_dict())
        return 0

    if args.study_command == "correlate":
        from .humaneval import export_deltas
        from .metrics import correlate

        study, _ = _load_study(args.study)
        entries = json.loads(Path(args.metrics).read_text(encoding="utf-8"))
        scores = {(e["item_id"], e["system"]): float(e["score"]) for e in entries}
        export = export_deltas(study, scores, dimension_id=args.dimension)
        result = correlate(export.human_deltas, export.metric_deltas)
        rows = [
            ["pearson r", f"{result.pearson_r:+.3f}", f"{result.pearson_p:.4f}"],
            ["kendall tau", f"{result.kendall_tau:+.3f}", f"{result.kendall_p:.4f}"],
            ["spearman rho", f"{result.spearman_rho:+.3f}", f"{result.spearman_p:.4f}"],
        ]
        print(format_table(["measure", "value", "p"], rows))
        if export.exclusions:
            print(f"excluded items: {len(export.exclusions)}")
        if args.json_out:
            write_json(
                args.json_out,
                {"correlation": result.as_dict(), "exclusions": export.exclusions},
            )
        return 0
    raise ValidationError(f"unknown study command {args.study_command!r}")


_HANDLERS = {
    "corpus": _cmd_corpus,
    "train": _cmd_train,
    "sample": _cmd_sample,
    "evaluate": _cmd_evaluate,
    "ablate": _cmd_ablate,
    "control": _cmd_control,
    "adapter": _cmd_adapter,
    "study": _cmd_study,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extras = parser.parse_known_args(argv)
    if extras:
        parser.error(f"unrecognized arguments: {' '.join(extras)}")
    try:
        if args.config:
            # --config supplies defaults; explicitly passed flags win
            overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
            known = set(vars(args))
            bad = set(overrides) - known
            if bad:
                raise ValidationError(f"--config keys not recognized: {sorted(bad)}")
            explicit = _explicit_flags(argv if argv is not None else sys.argv[1:])
            for key, value in overrides.items():
                if key not in explicit:
                    setattr(args, key, value)
        return _HANDLERS[args.command](args)
    except ValidationError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    except DyadicMotionError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


def _explicit_flags(argv: list[str]) -> set[str]:
    flags = set()
    for token in argv:
        if token.startswith("--"):
            flags.add(token[2:].split("=")[0].replace("-", "_"))
    return flags


if __name__ == "__main__":
    sys.exit(main())
