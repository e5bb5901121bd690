"""End-to-end annotation runs, serialization, and ranking evaluation."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import date
from typing import Iterable, Iterator

import numpy as np

from .corpus import BurstConfig, HashtagBurst, TweetCorpus, detect_bursts, hashtag_series
from .influence import IPLConfig, build_influence_graph, ipl
from .linking import CandidateSet, build_candidates
from .similarity import (context_similarity, mention_similarity,
                         normalize_scores, temporal_similarity)
from .textutil import tokenize
from .wiki import WikiSnapshot, temporal_context, view_series

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    k: int = 15
    w: int = 7
    tau: float = 0.85
    lam: float = 0.9
    mu: float = 0.003
    epsilon: float = 1e-6
    max_iterations: int = 500
    shift_range: int = 3
    sample_size: int = 10_000
    expansion_cap: int = 50
    seed: int = 0
    relevance_threshold: int = 1
    map_cutoff: int = 15
    burst: BurstConfig = field(default_factory=BurstConfig)

    def __post_init__(self):
        self.burst.w = self.w

    def ipl_config(self) -> IPLConfig:
        return IPLConfig(k=self.k, mu=self.mu, epsilon=self.epsilon,
                         max_iterations=self.max_iterations, tau=self.tau)


@dataclass
class RankedEntity:
    title: str
    r: float
    f: float
    f_m: float
    f_c: float
    f_t: float
    provenance: str


@dataclass
class RankedAnnotation:
    hashtag: str
    window_start: date | None
    window_end: date | None
    weights: tuple[float, float, float] | None
    entities: list[RankedEntity]
    reason: str | None = None  # set when the hashtag is unannotatable

    def to_json_obj(self) -> dict:
        obj = {
            "hashtag": self.hashtag,
            "window": None if self.window_start is None else {
                "start": self.window_start.isoformat(),
                "end": self.window_end.isoformat(),
            },
            "weights": None if self.weights is None else {
                "alpha": self.weights[0],
                "beta": self.weights[1],
                "gamma": self.weights[2],
            },
            "entities": [asdict(e) for e in self.entities],
        }
        if self.reason is not None:
            obj["reason"] = self.reason
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RankedAnnotation":
        window = obj.get("window")
        weights = obj.get("weights")
        return cls(
            hashtag=obj["hashtag"],
            window_start=date.fromisoformat(window["start"]) if window else None,
            window_end=date.fromisoformat(window["end"]) if window else None,
            weights=(weights["alpha"], weights["beta"], weights["gamma"])
            if weights else None,
            entities=[RankedEntity(**e) for e in obj.get("entities", [])],
            reason=obj.get("reason"),
        )


def _component_or_uniform(raw: dict[str, float], entities: list[str]) -> np.ndarray:
    """Normalize a raw component over the candidates; an all-zero component
    falls back to uniform so the fused teleport vector stays a distribution."""
    vec = np.array([raw.get(e, 0.0) for e in entities])
    if vec.sum() <= 0:
        return np.full(len(entities), 1.0 / len(entities))
    return normalize_scores(vec)


def similarity_components(burst: HashtagBurst, candidates: CandidateSet,
                          corpus: TweetCorpus, snapshot: WikiSnapshot,
                          config: PipelineConfig):
    """Raw per-entity f_m, f_c, f_t for a burst's candidate set."""
    entities = candidates.entities
    f_m = mention_similarity(candidates, snapshot)
    ts_h = hashtag_series(corpus, burst.hashtag, burst.window_start,
                          burst.window_end)
    f_c: dict[str, float] = {}
    f_t: dict[str, float] = {}
    for e in entities:
        ctx = temporal_context(snapshot, e, burst.window_start, burst.window_end)
        background = snapshot.latest_text.get(e, "")
        f_c[e] = context_similarity(ctx, Counter(tokenize(background)),
                                    candidates.sample_token_counts, config.lam)
        ts_e = view_series(snapshot, e, burst.window_start, burst.window_end)
        if ts_h.values.sum() > 0:
            f_t[e] = temporal_similarity(ts_h.values, ts_e.values,
                                         config.shift_range)
        else:
            f_t[e] = 0.0
    return f_m, f_c, f_t


def annotate_hashtag(corpus: TweetCorpus, snapshot: WikiSnapshot, hashtag: str,
                     config: PipelineConfig | None = None,
                     force: bool = False) -> RankedAnnotation:
    """Full per-hashtag pipeline: burst -> candidates -> similarities -> learner.

    force=True bypasses the trending filters (used for explicit hashtag
    lists). Unannotatable hashtags come back with an empty entity list and
    a reason code.
    """
    config = config or PipelineConfig()
    bursts = detect_bursts(corpus, hashtag, config.burst, force=force)
    if not bursts:
        return RankedAnnotation(hashtag, None, None, None, [],
                                reason="not-trending")
    burst = bursts[0]
    candidates = build_candidates(burst, corpus, snapshot,
                                  config.sample_size, config.expansion_cap,
                                  config.seed)
    if candidates.is_empty():
        return RankedAnnotation(hashtag, burst.window_start, burst.window_end,
                                None, [], reason="no-candidates")
    entities = candidates.entities
    raw_m, raw_c, raw_t = similarity_components(burst, candidates, corpus,
                                                snapshot, config)
    f_m = _component_or_uniform(raw_m, entities)
    f_c = _component_or_uniform(raw_c, entities)
    f_t = _component_or_uniform(raw_t, entities)
    graph = build_influence_graph(entities, snapshot)
    result = ipl(f_m, f_c, f_t, graph, config.ipl_config())
    index = {e: i for i, e in enumerate(graph.nodes)}
    ranked = [
        RankedEntity(
            title=title,
            r=score,
            f=float(result.fused[index[title]]),
            f_m=raw_m.get(title, 0.0),
            f_c=raw_c.get(title, 0.0),
            f_t=raw_t.get(title, 0.0),
            provenance=candidates.provenance[title],
        )
        for title, score in result.ranking
    ]
    return RankedAnnotation(hashtag, burst.window_start, burst.window_end,
                            result.weights, ranked)


def trending_hashtags(corpus: TweetCorpus,
                      config: PipelineConfig | None = None) -> list[HashtagBurst]:
    """Bursts of every hashtag passing the trending filters."""
    config = config or PipelineConfig()
    found = []
    for tag in corpus.hashtags():
        found.extend(detect_bursts(corpus, tag, config.burst))
    return found


def run_annotate(corpus: TweetCorpus, snapshot: WikiSnapshot,
                 config: PipelineConfig | None = None,
                 hashtags: list[str] | None = None) -> Iterator[RankedAnnotation]:
    """Annotate an explicit hashtag list (trending filter bypassed) or every
    trending hashtag. Per-hashtag failures are logged and skipped."""
    config = config or PipelineConfig()
    if hashtags is None:
        targets = [(b.hashtag, False) for b in trending_hashtags(corpus, config)]
    else:
        targets = [(h.lower().lstrip("#"), True) for h in hashtags]
    for tag, force in targets:
        try:
            yield annotate_hashtag(corpus, snapshot, tag, config, force=force)
        except Exception:
            log.exception("annotation failed for #%s; continuing", tag)


def write_annotations(annotations: Iterable[RankedAnnotation], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ann in annotations:
            fh.write(json.dumps(ann.to_json_obj(), sort_keys=True,
                                ensure_ascii=False) + "\n")


def read_annotations(path) -> list[RankedAnnotation]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(RankedAnnotation.from_json_obj(json.loads(line)))
    return out


def load_gold(path) -> dict[tuple[str, str], int]:
    """gold.tsv rows: hashtag <tab> entity_title <tab> grade (0, 1, or 2)."""
    gold: dict[tuple[str, str], int] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            tag, title, grade = line.split("\t")
            grade = int(grade)
            if grade not in (0, 1, 2):
                raise ValueError(f"grade must be 0, 1, or 2: {grade}")
            gold[(tag.lower().lstrip("#"), title)] = grade
    return gold


def average_precision(ranking: list[str], relevant: set[str],
                      cutoff: int) -> float:
    """AP at a rank cutoff, normalized by min(#relevant, cutoff)."""
    if not relevant:
        return 0.0
    hits = 0
    total = 0.0
    for i, title in enumerate(ranking[:cutoff], start=1):
        if title in relevant:
            hits += 1
            total += hits / i
    return total / min(len(relevant), cutoff)


def precision_at(ranking: list[str], relevant: set[str], k: int) -> float:
    return sum(1 for t in ranking[:k] if t in relevant) / k


def evaluate(annotations: Iterable[RankedAnnotation],
             gold: dict[tuple[str, str], int],
             relevance_threshold: int = 1, cutoff: int = 15) -> dict:
    """P@5, P@15, and MAP against graded gold labels.

    Labels are binarized at the relevance threshold; unjudged pairs count
    as non-relevant; hashtags absent from the gold set are excluded and
    reported.
    """
    if relevance_threshold not in (1, 2):
        raise ValueError("relevance_threshold must be 1 or 2")
    judged_tags = {tag for tag, _ in gold}
    per_hashtag: dict[str, dict] = {}
    excluded: list[str] = []
    for ann in annotations:
        if ann.hashtag not in judged_tags:
            excluded.append(ann.hashtag)
            continue
        relevant = {title for (tag, title), grade in gold.items()
                    if tag == ann.hashtag and grade >= relevance_threshold}
        ranking = [e.title for e in ann.entities]
        per_hashtag[ann.hashtag] = {
            "p_at_5": precision_at(ranking, relevant, 5),
            "p_at_15": precision_at(ranking, relevant, 15),
            "ap": average_precision(ranking, relevant, cutoff),
        }
    macro = {
        key: (sum(h[key] for h in per_hashtag.values()) / len(per_hashtag)
              if per_hashtag else 0.0)
        for key in ("p_at_5", "p_at_15", "ap")
    }
    return {
        "hashtags": per_hashtag,
        "macro": {"p_at_5": macro["p_at_5"], "p_at_15": macro["p_at_15"],
                  "map": macro["ap"]},
        "excluded": sorted(excluded),
        "relevance_threshold": relevance_threshold,
        "cutoff": cutoff,
    }
