"""Command-line entry points: ingest, bursts, annotate, evaluate, sweep."""

from __future__ import annotations

import argparse
import json
import logging
import pickle
import sys
from dataclasses import fields

from .corpus import BurstConfig, load_tweets_jsonl
from .pipeline import (PipelineConfig, evaluate, load_gold, read_annotations,
                       run_annotate, trending_hashtags, write_annotations)
from .wiki import load_snapshot

log = logging.getLogger(__name__)

_CONFIG_FLAGS = {
    "k": int, "w": int, "tau": float, "lam": float, "mu": float,
    "epsilon": float, "shift_range": int, "sample_size": int,
    "expansion_cap": int, "seed": int, "relevance_threshold": int,
}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override it")
    for name, typ in _CONFIG_FLAGS.items():
        flag = "--lambda" if name == "lam" else "--" + name.replace("_", "-")
        parser.add_argument(flag, dest=name, type=typ, default=None)


def _build_config(args) -> PipelineConfig:
    values: dict = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_values = json.load(fh)
        known = ({f.name for f in fields(PipelineConfig)} - {"burst"}) | \
            {f.name for f in fields(BurstConfig)} | {"lambda"}
        for key, val in file_values.items():
            if key not in known:
                raise SystemExit(f"unknown config key: {key}")
            values["lam" if key == "lambda" else key] = val
    for name in _CONFIG_FLAGS:
        val = getattr(args, name, None)
        if val is not None:
            values[name] = val
    burst_values = {k: values.pop(k) for k in list(values)
                    if k in {f.name for f in fields(BurstConfig)} and k != "w"}
    config = PipelineConfig(**values)
    for key, val in burst_values.items():
        setattr(config.burst, key, val)
    return config


def _load_snapshot(args):
    if getattr(args, "snapshot", None):
        with open(args.snapshot, "rb") as fh:
            return pickle.load(fh)
    if getattr(args, "wiki_dir", None):
        return load_snapshot(args.wiki_dir)
    raise SystemExit("one of --wiki-dir or --snapshot is required")


def _load_corpus(args):
    corpus, report = load_tweets_jsonl(args.tweets)
    if report.rejected:
        log.warning("%d malformed tweet records skipped", report.rejected)
    return corpus


def cmd_ingest(args) -> int:
    snapshot = load_snapshot(args.wiki_dir)
    print(f"entities: {snapshot.entity_count}")
    print(f"lexicon surface forms: {len(snapshot.lexicon)}")
    print(f"entities with revisions: {len(snapshot.revisions)}")
    print(f"entities with page views: {len(snapshot.pageviews)}")
    r = snapshot.report
    print(f"dropped: pages={r.dropped_pages} anchors={r.dropped_anchors} "
          f"links={r.dropped_links} revisions={r.dropped_revisions} "
          f"pageviews={r.dropped_pageviews}")
    if args.out:
        with open(args.out, "wb") as fh:
            pickle.dump(snapshot, fh)
        print(f"snapshot written to {args.out}")
    return 0


def cmd_bursts(args) -> int:
    config = _build_config(args)
    corpus = _load_corpus(args)
    for burst in trending_hashtags(corpus, config):
        print(f"#{burst.hashtag}\t{burst.window_start}\t{burst.window_end}\t"
              f"peak={burst.peak_day}\tp={burst.peak_outlier_fraction:.2f}\t"
              f"tweets={len(burst.tweet_ids)}")
    return 0


def cmd_annotate(args) -> int:
    config = _build_config(args)
    corpus = _load_corpus(args)
    snapshot = _load_snapshot(args)
    hashtags = args.hashtag if args.hashtag else None
    annotations = run_annotate(corpus, snapshot, config, hashtags)
    if args.out:
        write_annotations(annotations, args.out)
    else:
        for ann in annotations:
            print(json.dumps(ann.to_json_obj(), sort_keys=True,
                             ensure_ascii=False))
    return 0


def cmd_evaluate(args) -> int:
    config = _build_config(args)
    annotations = read_annotations(args.annotations)
    gold = load_gold(args.gold)
    report = evaluate(annotations, gold, config.relevance_threshold,
                      config.map_cutoff)
    text = json.dumps(report, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_sweep(args) -> int:
    config = _build_config(args)
    corpus = _load_corpus(args)
    snapshot = _load_snapshot(args)
    gold = load_gold(args.gold) if args.gold else None
    hashtags = args.hashtag if args.hashtag else None
    sweep_report = {}
    for w in [int(x) for x in args.sweep_w.split(",")]:
        config.w = w
        config.burst.w = w
        annotations = list(run_annotate(corpus, snapshot, config, hashtags))
        entry: dict = {
            "annotated": sum(1 for a in annotations if a.entities),
            "total": len(annotations),
        }
        if gold is not None:
            entry["metrics"] = evaluate(annotations, gold,
                                        config.relevance_threshold,
                                        config.map_cutoff)["macro"]
        sweep_report[str(w)] = entry
    text = json.dumps(sweep_report, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trendtag",
        description="Annotate trending hashtags with Wikipedia entities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build and summarize snapshot stores")
    p.add_argument("--wiki-dir", required=True)
    p.add_argument("--out", help="write the built snapshot as a pickle")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("bursts", help="list trending hashtags and their windows")
    p.add_argument("--tweets", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_bursts)

    p = sub.add_parser("annotate", help="annotate hashtags end to end")
    p.add_argument("--tweets", required=True)
    p.add_argument("--wiki-dir")
    p.add_argument("--snapshot", help="pickled snapshot from `ingest --out`")
    p.add_argument("--hashtag", action="append",
                   help="explicit hashtag (repeatable); bypasses trending filter")
    p.add_argument("--out", help="write annotations.jsonl here")
    _add_config_flags(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("evaluate", help="score annotations against gold labels")
    p.add_argument("--annotations", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="re-run annotation across burst window sizes")
    p.add_argument("--tweets", required=True)
    p.add_argument("--wiki-dir")
    p.add_argument("--snapshot")
    p.add_argument("--hashtag", action="append")
    p.add_argument("--sweep-w", required=True, help="comma-separated window sizes")
    p.add_argument("--gold")
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
