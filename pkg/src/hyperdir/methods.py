"""Unsupervised hypernymy direction measures and the two baselines.

All decisions are three-valued: a Tie is emitted on exact score equality and
whenever a needed score is undefined, never broken arbitrarily.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .space import CountSpace, SparseVector, WeightedSpace, second_order_entropy


class MethodId(enum.Enum):
    WordLength = "WordLength"
    WordFrequency = "WordFrequency"
    WeedsPrec = "WeedsPrec"
    InvCL = "InvCL"
    SlqsRow = "SlqsRow"
    SlqsSec = "SlqsSec"


class Decision(enum.Enum):
    FirstIsHypernym = "FirstIsHypernym"
    SecondIsHypernym = "SecondIsHypernym"
    Tie = "Tie"

    def mirrored(self) -> "Decision":
        if self is Decision.FirstIsHypernym:
            return Decision.SecondIsHypernym
        if self is Decision.SecondIsHypernym:
            return Decision.FirstIsHypernym
        return Decision.Tie


@dataclass(frozen=True)
class ScoredPair:
    w1: str
    w2: str
    method: MethodId
    score_12: float | None
    score_21: float | None
    decision: Decision
    oov: bool = False


def _shared(x: SparseVector, y: SparseVector):
    _, ix, iy = np.intersect1d(x.ids, y.ids, assume_unique=True, return_indices=True)
    return ix, iy


def weeds_prec(x: SparseVector | None, y: SparseVector | None) -> float | None:
    """Share of x's mass that sits on features y also has; None if x is empty."""
    if x is None or x.nnz == 0:
        return None
    if y is None or y.nnz == 0:
        return 0.0
    ix, _ = _shared(x, y)
    return float(x.values[ix].sum() / x.values.sum())


def cde(x: SparseVector | None, y: SparseVector | None) -> float | None:
    """Pointwise-minimum inclusion of x in y over x's mass; None if x is empty."""
    if x is None or x.nnz == 0:
        return None
    if y is None or y.nnz == 0:
        return 0.0
    ix, iy = _shared(x, y)
    return float(np.minimum(x.values[ix], y.values[iy]).sum() / x.values.sum())


def inv_cl(x: SparseVector | None, y: SparseVector | None) -> float | None:
    """Combines inclusion of x in y with non-inclusion of y in x."""
    fwd = cde(x, y)
    bwd = cde(y, x)
    if fwd is None or bwd is None:
        return None
    return math.sqrt(fwd * (1.0 - bwd))


def _entropy_compare(h1: float | None, h2: float | None) -> tuple[Decision, float | None]:
    """Comparison form of the entropy-quotient rule, total where the quotient is not."""
    if h1 is None or h2 is None:
        return Decision.Tie, None
    score = 1.0 - h1 / h2 if h2 > 0 else None
    if h1 < h2:
        return Decision.SecondIsHypernym, score
    if h1 > h2:
        return Decision.FirstIsHypernym, score
    return Decision.Tie, score


def slqs_row(hx: float | None, hy: float | None) -> tuple[Decision, float | None]:
    """Decide from first-order entropies; lower entropy word is the hyponym."""
    return _entropy_compare(hx, hy)


def slqs_sec(ex: float | None, ey: float | None) -> tuple[Decision, float | None]:
    """Decide from second-order (median top-context) entropies."""
    return _entropy_compare(ex, ey)


def baseline_length(w1: str, w2: str) -> Decision:
    """The longer word (in Unicode characters) is taken to be the hyponym."""
    if len(w1) < len(w2):
        return Decision.FirstIsHypernym
    if len(w1) > len(w2):
        return Decision.SecondIsHypernym
    return Decision.Tie


def baseline_frequency(f1: int, f2: int) -> Decision:
    """The less frequent word is taken to be the hyponym."""
    if f1 > f2:
        return Decision.FirstIsHypernym
    if f1 < f2:
        return Decision.SecondIsHypernym
    return Decision.Tie


def _precision_decision(s12: float | None, s21: float | None) -> Decision:
    # the word with the higher outgoing score is the hyponym
    if s12 is None or s21 is None:
        return Decision.Tie
    if s12 > s21:
        return Decision.SecondIsHypernym
    if s12 < s21:
        return Decision.FirstIsHypernym
    return Decision.Tie


def decide(method: MethodId, w1: str, w2: str, space: CountSpace,
           wspace: WeightedSpace | None = None, k: int = 50) -> ScoredPair:
    """Apply one method to an ordered word pair.

    Out-of-vocabulary lemmas yield a flagged Tie with absent scores for every
    method; excluding such pairs is the evaluation layer's call.
    """
    id1 = space.vocab.id_of(w1)
    id2 = space.vocab.id_of(w2)
    if id1 is None or id2 is None:
        return ScoredPair(w1, w2, method, None, None, Decision.Tie, oov=True)

    if method is MethodId.WordLength:
        s12, s21 = float(len(w1)), float(len(w2))
        return ScoredPair(w1, w2, method, s12, s21, baseline_length(w1, w2))
    if method is MethodId.WordFrequency:
        f1, f2 = int(space.freq[id1]), int(space.freq[id2])
        return ScoredPair(w1, w2, method, float(f1), float(f2),
                          baseline_frequency(f1, f2))
    if method is MethodId.WeedsPrec:
        x, y = space.rows[id1], space.rows[id2]
        s12, s21 = weeds_prec(x, y), weeds_prec(y, x)
        return ScoredPair(w1, w2, method, s12, s21, _precision_decision(s12, s21))
    if method is MethodId.InvCL:
        x, y = space.rows[id1], space.rows[id2]
        s12, s21 = inv_cl(x, y), inv_cl(y, x)
        return ScoredPair(w1, w2, method, s12, s21, _precision_decision(s12, s21))
    if method is MethodId.SlqsRow:
        hx, hy = space.entropy_by_id(id1), space.entropy_by_id(id2)
        decision, s12 = slqs_row(hx, hy)
        _, s21 = slqs_row(hy, hx)
        return ScoredPair(w1, w2, method, s12, s21, decision)
    if method is MethodId.SlqsSec:
        if wspace is None:
            raise ValueError("SlqsSec needs a PLMI-weighted space")
        ex = second_order_entropy(space, wspace, w1, k)
        ey = second_order_entropy(space, wspace, w2, k)
        decision, s12 = slqs_sec(ex, ey)
        _, s21 = slqs_sec(ey, ex)
        return ScoredPair(w1, w2, method, s12, s21, decision)
    raise ValueError(f"unknown method: {method!r}")
