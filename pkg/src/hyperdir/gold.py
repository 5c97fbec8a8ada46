"""Gold hypernymy pair lists: loading, cleaning, compound split, coverage."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from .space import CountSpace

log = logging.getLogger(__name__)

DEFAULT_RELATION_LABELS = frozenset({"hyper", "hypernym", "isa"})


@dataclass(frozen=True)
class GoldPair:
    hyponym: str
    hypernym: str
    source: str = ""
    is_compound: bool = False


@dataclass(frozen=True)
class CoverageReport:
    total: int
    kept: int
    dropped_oov: int
    dropped_empty_row: int


def load_pairs(path, source: str | None = None,
               relation_labels: Iterable[str] = DEFAULT_RELATION_LABELS) -> list[GoldPair]:
    """Read hyponym<TAB>hypernym pairs, with an optional relation-label column.

    When a third column is present, only rows whose label is in
    `relation_labels` (case-insensitively) survive. Rows with fewer than two
    columns are skipped and reported as a single warning.
    """
    path = Path(path)
    if source is None:
        source = path.stem
    labels = {label.lower() for label in relation_labels}
    pairs = []
    skipped = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            fields = line.rstrip("\r\n").split("\t")
            if len(fields) < 2:
                skipped += 1
                continue
            if len(fields) >= 3 and fields[2].strip().lower() not in labels:
                continue
            pairs.append(GoldPair(fields[0].strip(), fields[1].strip(), source))
    if skipped:
        log.warning("%s: skipped %d rows with fewer than two columns", path, skipped)
    return pairs


def clean_pairs(pairs: Iterable[GoldPair]) -> list[GoldPair]:
    """Drop duplicates, autohyponyms, and multiword terms; keep order otherwise."""
    seen: set[tuple[str, str]] = set()
    out = []
    for pair in pairs:
        key = (pair.hyponym, pair.hypernym)
        if key in seen:
            continue
        if pair.hyponym == pair.hypernym:
            continue
        if " " in pair.hyponym or " " in pair.hypernym:
            continue
        seen.add(key)
        out.append(pair)
    return out


def is_compound_pair(hyponym: str, hypernym: str) -> bool:
    """One term a case-insensitive substring of the other."""
    a, b = hyponym.lower(), hypernym.lower()
    return a in b or b in a


def split_compounds(pairs: Iterable[GoldPair]) -> tuple[list[GoldPair], list[GoldPair]]:
    compounds = []
    non_compounds = []
    for pair in pairs:
        if is_compound_pair(pair.hyponym, pair.hypernym):
            compounds.append(replace(pair, is_compound=True))
        else:
            non_compounds.append(replace(pair, is_compound=False))
    return compounds, non_compounds


def filter_coverage(pairs: Iterable[GoldPair],
                    space: CountSpace) -> tuple[list[GoldPair], CoverageReport]:
    """Drop pairs with an out-of-corpus word; keep but count empty-row pairs.

    An empty raw row breaks the vector methods yet leaves the frequency
    baseline intact, so such pairs stay in the output and are only tallied
    separately in the report.
    """
    out = []
    total = kept = dropped_oov = dropped_empty_row = 0
    for pair in pairs:
        total += 1
        if space.freq_of(pair.hyponym) <= 0 or space.freq_of(pair.hypernym) <= 0:
            dropped_oov += 1
            continue
        row_hypo = space.row(pair.hyponym)
        row_hyper = space.row(pair.hypernym)
        if row_hypo is None or row_hypo.nnz == 0 or row_hyper is None or row_hyper.nnz == 0:
            dropped_empty_row += 1
        else:
            kept += 1
        out.append(pair)
    return out, CoverageReport(total, kept, dropped_oov, dropped_empty_row)
