"""tf-idf sentence vectors and cosine similarity.

tf is the within-sentence relative frequency; idf = ln(n_docs / df) + 1
where df counts the distinct documents of the cluster containing the term.
Since df <= n_docs, idf >= 1 and all weights are non-negative.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import DegenerateCluster
from .preprocess import SentenceRecord


@dataclass(frozen=True)
class TfIdfModel:
    vocabulary: dict
    doc_freq: dict
    n_docs: int

    def idf(self, term: str) -> float:
        return math.log(self.n_docs / self.doc_freq[term]) + 1.0


@dataclass(frozen=True)
class SentenceVector:
    sentence_id: int
    weights: dict
    norm: float


def fit(sentences: list, n_docs: int) -> TfIdfModel:
    """Build vocabulary and document frequencies from one cluster."""
    term_docs = {}
    for rec in sentences:
        for token in rec.tokens:
            term_docs.setdefault(token, set()).add(rec.doc_id)
    if not term_docs:
        raise DegenerateCluster("no terms: cannot fit a tf-idf model")
    vocabulary = {term: idx for idx, term in enumerate(sorted(term_docs))}
    doc_freq = {term: len(docs) for term, docs in term_docs.items()}
    return TfIdfModel(vocabulary, doc_freq, n_docs)


def vectorize(sentence: SentenceRecord, model: TfIdfModel) -> SentenceVector:
    """Sparse tf-idf vector; empty-token sentences map to the zero vector."""
    if not sentence.tokens:
        return SentenceVector(sentence.global_id, {}, 0.0)
    counts = Counter(sentence.tokens)
    size = len(sentence.tokens)
    weights = {}
    for term, count in counts.items():
        if term not in model.vocabulary:
            continue
        weights[model.vocabulary[term]] = (count / size) * model.idf(term)
    norm = math.sqrt(sum(w * w for w in weights.values()))
    return SentenceVector(sentence.global_id, weights, norm)


def cosine(a: SentenceVector, b: SentenceVector) -> float:
    """Cosine of two sparse vectors; 0 when either is the zero vector.

    fsum keeps the dot product independent of term order, so the result
    is bitwise symmetric in its arguments.
    """
    if a.norm == 0.0 or b.norm == 0.0:
        return 0.0
    small, big = (a.weights, b.weights) if len(a.weights) <= len(b.weights) \
        else (b.weights, a.weights)
    dot = math.fsum(w * big[idx] for idx, w in small.items() if idx in big)
    if dot == 0.0:
        return 0.0
    return min(1.0, dot / (a.norm * b.norm))
