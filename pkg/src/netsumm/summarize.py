"""Extract construction: pick ranked sentences under a budget with optional
anti-redundancy filtering.

AR1 skips a candidate whose tf-idf cosine to any already selected sentence
exceeds L1 = (max - min)/2 of all pairwise similarities in the cluster.
AR2 skips on a gamma-weighted Jaccard of 1..n-gram sets above the l2
threshold. Both comparisons are strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .centrality import HIGHEST, CentralityResult
from .corpus import SummaryBudget
from .errors import EmptySummary, InvalidInput, InvalidParameter
from .preprocess import SentenceRecord
from .tfidf import cosine

AR_METHODS = ("none", "AR1", "AR2")


@dataclass(frozen=True)
class Summary:
    cluster_id: str
    selected: tuple
    text: str
    budget_used: int


@dataclass(frozen=True)
class RedundancyConfig:
    method: str = "none"
    l2: float = 0.1
    n: int = 4
    gamma: tuple = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self):
        if self.method not in AR_METHODS:
            raise InvalidParameter(f"unknown anti-redundancy {self.method!r}")
        if not 0 < self.l2 < 1:
            raise InvalidParameter(f"l2 must be in (0, 1), got {self.l2}")
        if self.n < 1 or len(self.gamma) != self.n:
            raise InvalidParameter("need one gamma weight per n-gram order")
        if any(gk < 0 for gk in self.gamma):
            raise InvalidParameter("gamma weights must be >= 0")


def ar1_threshold(sims: list) -> float:
    """(max - min) / 2 over the pairwise similarity pool."""
    if not sims:
        raise InvalidInput("need similarities from at least 2 sentences")
    return (max(sims) - min(sims)) / 2.0


def _ngrams(tokens, k: int) -> set:
    return {tuple(tokens[i:i + k]) for i in range(len(tokens) - k + 1)}


def ngram_similarity(a: SentenceRecord, b: SentenceRecord,
                     cfg: RedundancyConfig) -> float:
    """Weighted Jaccard agreement of k-gram sets, k = 1..cfg.n."""
    total = 0.0
    for k in range(1, cfg.n + 1):
        ga, gb = _ngrams(a.tokens, k), _ngrams(b.tokens, k)
        union = len(ga | gb)
        if union:
            total += cfg.gamma[k - 1] * len(ga & gb) / union
    return total


def word_count(text: str) -> int:
    return len(text.split())


def resolve_budget(budget: SummaryBudget, sentences: list) -> tuple:
    """Reduce a budget to ("words"|"chars", integer limit).

    A compression rate keeps ceil((1 - rate) * total cluster words).
    """
    if budget.kind == "compression":
        total = sum(word_count(rec.raw_text) for rec in sentences)
        return "words", max(1, math.ceil((1.0 - budget.value) * total))
    return budget.kind, int(budget.value)


def _rank_order(sentences: list, ranking: CentralityResult) -> list:
    by_id = {rec.global_id: rec for rec in sentences}
    sign = -1.0 if ranking.direction == HIGHEST else 1.0

    def key(gid):
        rec = by_id[gid]
        return (sign * ranking.scores[gid], rec.layer_index,
                rec.position_in_doc, gid)

    return sorted(by_id, key=key)


def select(sentences: list, ranking: CentralityResult, budget: SummaryBudget,
           red: RedundancyConfig, vectors: dict | None = None,
           cluster_id: str = "") -> Summary:
    """Greedy selection in rank order under the budget.

    A candidate that overflows the budget is skipped, not terminal: later,
    shorter candidates may still fit. Redundant candidates (per `red`) are
    skipped permanently. Empty-token sentences are never selected. Raises
    EmptySummary when nothing fits.
    """
    if budget.value <= 0:
        raise InvalidParameter("budget must be positive")
    l1 = None
    if red.method == "AR1":
        if vectors is None:
            raise InvalidInput("AR1 needs the cluster's sentence vectors")
        sims = [cosine(vectors[a.global_id], vectors[b.global_id])
                for i, a in enumerate(sentences)
                for b in sentences[i + 1:]]
        l1 = ar1_threshold(sims)

    kind, limit = resolve_budget(budget, sentences)
    by_id = {rec.global_id: rec for rec in sentences}
    chosen = []
    used = 0
    for gid in _rank_order(sentences, ranking):
        rec = by_id[gid]
        if not rec.tokens:
            continue
        if red.method == "AR1":
            if any(cosine(vectors[gid], vectors[s.global_id]) > l1
                   for s in chosen):
                continue
        elif red.method == "AR2":
            if any(ngram_similarity(rec, s, red) > red.l2 for s in chosen):
                continue
        cost = word_count(rec.raw_text) if kind == "words" \
            else len(rec.raw_text) + (1 if chosen else 0)
        if used + cost > limit:
            continue
        chosen.append(rec)
        used += cost
    if not chosen:
        raise EmptySummary(
            f"no sentence fits the {kind} budget of {limit}")
    return Summary(cluster_id,
                   tuple(rec.global_id for rec in chosen),
                   " ".join(rec.raw_text for rec in chosen),
                   used)
