"""The three entity-hashtag similarity measures.

f_m aggregates link priors over the mentions of the entity, f_c compares
language models of entity contexts and tweet text via KL divergence, and
f_t matches the shapes of the hashtag and page-view time series under
optimal shifting and scaling.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .linking import CandidateSet
from .wiki import WikiSnapshot, link_prior

KL_FLOOR = 1e-10


def normalize_scores(values) -> np.ndarray:
    """Scale a non-negative vector to sum 1; an all-zero vector stays zero."""
    arr = np.asarray(values, dtype=float)
    if np.any(arr < 0):
        raise ValueError("scores must be non-negative")
    total = arr.sum()
    return arr / total if total > 0 else arr


def mention_similarity(candidates: CandidateSet, snapshot: WikiSnapshot,
                       over_entity_anchors: bool = False) -> dict[str, float]:
    """f_m per entity: sum over its mentions of link prior times mention frequency.

    Expansion-only entities have no mentions and score 0.
    """
    scores: dict[str, float] = {}
    for entity in candidates.entities:
        total = 0.0
        for mention, q in candidates.mention_frequencies(entity).items():
            prior = link_prior(snapshot, mention, over_entity_anchors)
            total += prior.get(entity, 0.0) * q
        scores[entity] = total
    return scores


def language_model(counts: Counter) -> dict[str, float]:
    """Maximum-likelihood unigram model; empty source gives an empty model."""
    total = sum(counts.values())
    if total <= 0:
        return {}
    return {w: c / total for w, c in counts.items() if c > 0}


def context_similarity(temporal_counts: Counter, background_counts: Counter,
                       hashtag_counts: Counter, lam: float = 0.9,
                       printed_form: bool = False) -> float:
    """f_c = exp(-KL) between the entity's mixture model and the tweet model.

    The entity model mixes the temporal (revision-diff) and background
    (current article) language models with weight lam. Both distributions
    are renormalized over the common vocabulary; an empty common
    vocabulary yields 0.

    printed_form=True drops the logarithm from the divergence sum (a
    pseudo-divergence variant, exposed for comparison only).
    """
    if not 0 <= lam <= 1:
        raise ValueError("lam must be in [0, 1]")
    p_temporal = language_model(temporal_counts)
    p_background = language_model(background_counts)
    mixture = {}
    for w in set(p_temporal) | set(p_background):
        p = lam * p_temporal.get(w, 0.0) + (1 - lam) * p_background.get(w, 0.0)
        if p > 0:
            mixture[w] = p
    p_hashtag = language_model(hashtag_counts)
    common = set(mixture) & set(p_hashtag)
    if not common:
        return 0.0
    z_e = sum(mixture[w] for w in common)
    z_h = sum(p_hashtag[w] for w in common)
    kl = 0.0
    for w in common:
        pe = mixture[w] / z_e
        ph = max(p_hashtag[w] / z_h, KL_FLOOR)
        ratio = max(pe / ph, KL_FLOOR)
        kl += pe * (ratio if printed_form else math.log(ratio))
    return math.exp(-kl)


@dataclass(frozen=True)
class ShiftScaleMatch:
    shift: int
    scale: float
    distance: float


def shifted(series: np.ndarray, q: int) -> np.ndarray:
    """Series delayed by q positions; out-of-range positions are zero."""
    out = np.zeros_like(series, dtype=float)
    n = len(series)
    if abs(q) >= n:
        return out
    if q >= 0:
        out[q:] = series[:n - q]
    else:
        out[:n + q] = series[-q:]
    return out


def best_shift_scale(ts_h, ts_e, q: int) -> ShiftScaleMatch:
    """Least-squares scale for a fixed shift: argmin over delta of
    ||ts_h - delta * shifted(ts_e, q)|| / ||ts_h||."""
    h = np.asarray(ts_h, dtype=float)
    e = shifted(np.asarray(ts_e, dtype=float), q)
    norm_h = np.linalg.norm(h)
    if norm_h == 0:
        raise ValueError("hashtag series has zero norm")
    denom = float(e @ e)
    delta = float(h @ e) / denom if denom > 0 else 0.0
    distance = float(np.linalg.norm(h - delta * e)) / norm_h
    return ShiftScaleMatch(q, delta, distance)


def temporal_similarity(ts_h, ts_e, shift_range: int = 3) -> float:
    """f_t = exp(-min over shifts of the shift/scale distance); 0 for a flat hashtag."""
    h = np.asarray(ts_h, dtype=float)
    if np.linalg.norm(h) == 0:
        return 0.0
    dist = min(best_shift_scale(h, ts_e, q).distance
               for q in range(-shift_range, shift_range + 1))
    return math.exp(-dist)
