"""Per-method accuracy, SMC overlap, frequency buckets, complementarity, CSV."""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gold import GoldPair
from .methods import Decision, MethodId, decide
from .space import CountSpace, WeightedSpace

log = logging.getLogger(__name__)

CSV_KINDS = ("decisions", "accuracy", "smc_matrix", "buckets", "complementarity")

_DECISIONS_FIXED_COLUMNS = ["hyponym", "hypernym", "source", "is_compound",
                            "freq_hyponym", "freq_hypernym"]


@dataclass(frozen=True)
class TableRow:
    pair: GoldPair
    freq_hyponym: int
    freq_hypernym: int
    decisions: dict[MethodId, Decision]


@dataclass(frozen=True)
class DecisionTable:
    methods: list[MethodId]
    rows: list[TableRow]


@dataclass(frozen=True)
class AccuracyResult:
    method: MethodId
    rows: int
    correct: int
    wrong: int
    ties: int
    accuracy_strict: float | None
    accuracy_half: float | None


@dataclass(frozen=True)
class BucketPartition:
    buckets: list[list[int]]


def evaluate(pairs: Sequence[GoldPair], methods: Sequence[MethodId],
             space: CountSpace, wspace: WeightedSpace | None = None,
             k: int = 50, threads: int = 1) -> DecisionTable:
    """Decide every (hyponym, hypernym) pair with every method.

    A decision is correct when it names the second element, the gold
    hypernym. Rows keep pair order; thread count cannot change the result.
    """
    methods = list(methods)

    def decide_row(pair: GoldPair) -> TableRow:
        decisions = {m: decide(m, pair.hyponym, pair.hypernym, space, wspace, k).decision
                     for m in methods}
        return TableRow(pair, space.freq_of(pair.hyponym),
                        space.freq_of(pair.hypernym), decisions)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(decide_row, pairs))
    else:
        rows = [decide_row(pair) for pair in pairs]
    return DecisionTable(methods, rows)


def _require_method(table: DecisionTable, method: MethodId) -> None:
    if method not in table.methods:
        raise ValueError(f"method {method.value} not in table")


def accuracy(table: DecisionTable, method: MethodId) -> AccuracyResult:
    _require_method(table, method)
    return _accuracy_of(method, [row.decisions[method] for row in table.rows])


def _accuracy_of(method: MethodId, decisions: Sequence[Decision]) -> AccuracyResult:
    rows = len(decisions)
    correct = sum(1 for d in decisions if d is Decision.SecondIsHypernym)
    wrong = sum(1 for d in decisions if d is Decision.FirstIsHypernym)
    ties = rows - correct - wrong
    strict = correct / rows if rows else None
    half = (correct + ties / 2) / rows if rows else None
    return AccuracyResult(method, rows, correct, wrong, ties, strict, half)


def smc(table: DecisionTable, method_a: MethodId, method_b: MethodId) -> float:
    """Simple Matching Coefficient: share of rows with the identical decision."""
    _require_method(table, method_a)
    _require_method(table, method_b)
    if not table.rows:
        raise ValueError("smc is undefined on an empty table")
    matches = sum(1 for row in table.rows
                  if row.decisions[method_a] is row.decisions[method_b])
    return matches / len(table.rows)


def smc_matrix(table: DecisionTable) -> list[list[float]]:
    return [[smc(table, a, b) for b in table.methods] for a in table.methods]


def frequency_buckets(table: DecisionTable, n: int = 10) -> BucketPartition:
    """Split rows into n contiguous buckets of the frequency-difference order.

    Rows are sorted by hypernym minus hyponym frequency, descending, with a
    lexicographic tie-break; when rows do not divide evenly the first
    `rows mod n` buckets take one extra.
    """
    if n < 1:
        raise ValueError(f"bucket count must be >= 1, got {n}")
    rows = table.rows
    if n > len(rows):
        log.warning("more buckets (%d) than rows (%d); some will be empty", n, len(rows))
    order = sorted(range(len(rows)),
                   key=lambda i: (-(rows[i].freq_hypernym - rows[i].freq_hyponym),
                                  rows[i].pair.hyponym, rows[i].pair.hypernym))
    base, extra = divmod(len(rows), n)
    buckets = []
    pos = 0
    for i in range(n):
        size = base + 1 if i < extra else base
        buckets.append(order[pos:pos + size])
        pos += size
    return BucketPartition(buckets)


def bucket_accuracies(table: DecisionTable, partition: BucketPartition,
                      methods: Sequence[MethodId]) -> list[list[AccuracyResult]]:
    """accuracy() restricted to each bucket, in bucket order.

    Empty buckets still produce a result row; its accuracies are absent.
    """
    out = []
    for bucket in partition.buckets:
        out.append([_accuracy_of(m, [table.rows[i].decisions[m] for i in bucket])
                    for m in methods])
    return out


def complementarity(table: DecisionTable, method_a: MethodId,
                    method_b: MethodId) -> float | None:
    """Share of method_a's non-correct rows that method_b got right."""
    _require_method(table, method_a)
    _require_method(table, method_b)
    a_incorrect = [row for row in table.rows
                   if row.decisions[method_a] is not Decision.SecondIsHypernym]
    if not a_incorrect:
        return None
    rescued = sum(1 for row in a_incorrect
                  if row.decisions[method_b] is Decision.SecondIsHypernym)
    return rescued / len(a_incorrect)


def complementarity_pairs(table: DecisionTable) -> list[tuple[MethodId, MethodId, float | None]]:
    return [(a, b, complementarity(table, a, b))
            for a in table.methods for b in table.methods if a is not b]


# ---------------------------------------------------------------------------
# CSV


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def export_csv(results, kind: str, path) -> None:
    """Write one of the result kinds as RFC-4180-style CSV with a header row.

    Expected `results` per kind: decisions -> DecisionTable;
    accuracy -> [AccuracyResult]; smc_matrix -> (methods, matrix);
    buckets -> [(bucket index, AccuracyResult)];
    complementarity -> [(method, method, ratio or None)].
    """
    if kind not in CSV_KINDS:
        raise ValueError(f"unknown csv kind: {kind}")
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        if kind == "decisions":
            table: DecisionTable = results
            writer.writerow(_DECISIONS_FIXED_COLUMNS + [m.value for m in table.methods])
            for row in table.rows:
                writer.writerow([row.pair.hyponym, row.pair.hypernym, row.pair.source,
                                 "true" if row.pair.is_compound else "false",
                                 row.freq_hyponym, row.freq_hypernym]
                                + [row.decisions[m].value for m in table.methods])
        elif kind == "accuracy":
            writer.writerow(["method", "rows", "correct", "wrong", "ties",
                             "accuracy_strict", "accuracy_half"])
            for r in results:
                writer.writerow([r.method.value, r.rows, r.correct, r.wrong, r.ties,
                                 _fmt(r.accuracy_strict), _fmt(r.accuracy_half)])
        elif kind == "smc_matrix":
            methods, matrix = results
            writer.writerow(["method"] + [m.value for m in methods])
            for method, row in zip(methods, matrix):
                writer.writerow([method.value] + [_fmt(v) for v in row])
        elif kind == "buckets":
            writer.writerow(["bucket", "method", "rows", "correct", "wrong", "ties",
                             "accuracy_strict", "accuracy_half"])
            for bucket_index, r in results:
                writer.writerow([bucket_index, r.method.value, r.rows, r.correct,
                                 r.wrong, r.ties, _fmt(r.accuracy_strict),
                                 _fmt(r.accuracy_half)])
        elif kind == "complementarity":
            writer.writerow(["method_a", "method_b", "complementarity"])
            for a, b, ratio in results:
                writer.writerow([a.value, b.value, _fmt(ratio)])


def load_decisions(path) -> DecisionTable:
    """Read back a decisions CSV, enough to re-derive every analysis."""
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or header[:len(_DECISIONS_FIXED_COLUMNS)] != _DECISIONS_FIXED_COLUMNS:
            raise ValueError(f"{path}: not a decisions CSV")
        methods = [MethodId(name) for name in header[len(_DECISIONS_FIXED_COLUMNS):]]
        rows = []
        for record in reader:
            hypo, hyper, source, compound, f_hypo, f_hyper = record[:6]
            decisions = {m: Decision(value) for m, value in zip(methods, record[6:])}
            pair = GoldPair(hypo, hyper, source, compound == "true")
            rows.append(TableRow(pair, int(f_hypo), int(f_hyper), decisions))
    return DecisionTable(methods, rows)
