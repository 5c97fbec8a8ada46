"""Command-line pipeline: build-space, evaluate, and CSV re-derivation commands.

The analysis commands (`smc`, `buckets`, `complement`) work from a persisted
decisions CSV, so the expensive decision table is computed once and the cheap
analytics can be re-run at will.
"""

from __future__ import annotations

import argparse
import configparser
import gzip
import logging
import os
import sys
from pathlib import Path

from . import evaluation, gold
from .ingest import IngestStats, PosConfig, count_cooccurrences, parse_vertical
from .methods import MethodId
from .space import (SpaceCorruptionError, SpaceFormatError, load_space_file,
                    plmi, save_space_file)

log = logging.getLogger(__name__)

DEFAULT_METHODS = [MethodId.WordLength, MethodId.WordFrequency, MethodId.WeedsPrec,
                   MethodId.InvCL, MethodId.SlqsRow, MethodId.SlqsSec]

TAGSETS = {"penn": PosConfig.penn, "stts": PosConfig.stts}


class StageError(Exception):
    def __init__(self, stage: str, message, code: int = 1):
        super().__init__(f"{stage}: {message}")
        self.code = code


def _read_config(path: str | None) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    if path:
        if not Path(path).is_file():
            raise StageError("config", f"no such config file: {path}", code=2)
        parser.read(path, encoding="utf-8")
    return parser


def _split_list(raw: str) -> list[str]:
    return [part.strip() for chunk in raw.splitlines() for part in chunk.split(",")
            if part.strip()]


def _pos_config(cfg: configparser.ConfigParser, tagset: str | None) -> PosConfig:
    section = cfg["corpus"] if cfg.has_section("corpus") else {}
    lowercase = cfg.getboolean("corpus", "lowercase", fallback=False)
    if any(key in section for key in ("noun_prefixes", "verb_prefixes", "adj_prefixes")):
        try:
            return PosConfig(
                frozenset(_split_list(section.get("noun_prefixes", ""))),
                frozenset(_split_list(section.get("verb_prefixes", ""))),
                frozenset(_split_list(section.get("adj_prefixes", ""))),
                lowercase)
        except ValueError as err:
            raise StageError("config", err, code=2)
    name = tagset or section.get("tagset", "penn")
    if name not in TAGSETS:
        raise StageError("config", f"unknown tagset {name!r} (choose from {sorted(TAGSETS)})",
                         code=2)
    return TAGSETS[name](lowercase)


def _parse_methods(raw: str) -> list[MethodId]:
    methods = []
    for name in _split_list(raw):
        try:
            methods.append(MethodId(name))
        except ValueError:
            known = ", ".join(m.value for m in MethodId)
            raise StageError("config", f"unknown method {name!r} (known: {known})", code=2)
    if not methods:
        raise StageError("config", "empty method list", code=2)
    return methods


def _open_corpus(path: Path):
    """Binary stream over a corpus file, transparently gunzipping by magic bytes."""
    with open(path, "rb") as probe:
        magic = probe.read(2)
    if magic == b"\x1f\x8b":
        return gzip.open(path, "rb")
    return open(path, "rb")


def cmd_build_space(args: argparse.Namespace) -> int:
    cfg = _read_config(args.config)
    paths = [Path(p) for p in args.corpus]
    if not paths and cfg.has_option("corpus", "paths"):
        paths = [Path(p) for p in _split_list(cfg.get("corpus", "paths"))]
    if not paths:
        raise StageError("build-space", "no corpus path given", code=2)
    for path in paths:
        if not path.is_file():
            raise StageError("build-space", f"no such corpus file: {path}", code=2)
    space_path = args.space or cfg.get("output", "space", fallback=None)
    if not space_path:
        raise StageError("build-space", "no --space output path given", code=2)
    window = args.window if args.window is not None else cfg.getint("corpus", "window",
                                                                    fallback=10)
    pos_cfg = _pos_config(cfg, args.tagset)

    stats = IngestStats()

    def sentences():
        for path in paths:
            with _open_corpus(path) as stream:
                yield from parse_vertical(stream, stats)

    try:
        space = count_cooccurrences(sentences(), pos_cfg, window=window, stats=stats,
                                    threads=args.threads)
        save_space_file(space, space_path)
    except OSError as err:
        raise StageError("build-space", err)
    print(f"space: sentences={stats.sentences_read} tokens={stats.tokens_read} "
          f"content_tokens={stats.content_tokens} parse_errors={stats.parse_errors} "
          f"vocab={len(space.vocab)} N={int(space.n)} -> {space_path}")
    return 0


def _write_subset_outputs(table, out_dir: Path, dataset: str, subset: str,
                          n_buckets: int) -> None:
    prefix = out_dir / f"{dataset}_{subset}"
    evaluation.export_csv(table, "decisions", f"{prefix}_decisions.csv")
    if table.rows:
        acc = [evaluation.accuracy(table, m) for m in table.methods]
        matrix = (table.methods, evaluation.smc_matrix(table))
        partition = evaluation.frequency_buckets(table, n_buckets)
        per_bucket = evaluation.bucket_accuracies(table, partition, table.methods)
        bucket_rows = [(i, r) for i, results in enumerate(per_bucket, 1) for r in results]
        comp = evaluation.complementarity_pairs(table)
    else:
        acc, matrix, bucket_rows, comp = [], (table.methods, []), [], []
    evaluation.export_csv(acc, "accuracy", f"{prefix}_accuracy.csv")
    evaluation.export_csv(matrix, "smc_matrix", f"{prefix}_smc.csv")
    evaluation.export_csv(bucket_rows, "buckets", f"{prefix}_buckets.csv")
    evaluation.export_csv(comp, "complementarity", f"{prefix}_complementarity.csv")


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _read_config(args.config)
    space_path = args.space or cfg.get("output", "space", fallback=None)
    if not space_path:
        raise StageError("evaluate", "no --space cache given", code=2)
    gold_paths = [Path(p) for p in args.gold]
    if not gold_paths and cfg.has_option("analysis", "gold"):
        gold_paths = [Path(p) for p in _split_list(cfg.get("analysis", "gold"))]
    if not gold_paths:
        raise StageError("evaluate", "no --gold file given", code=2)
    out_dir = Path(args.out or cfg.get("output", "dir", fallback="."))
    k = args.k if args.k is not None else cfg.getint("analysis", "k", fallback=50)
    n_buckets = (args.buckets if args.buckets is not None
                 else cfg.getint("analysis", "buckets", fallback=10))
    if args.methods:
        methods = _parse_methods(args.methods)
    elif cfg.has_option("analysis", "methods"):
        methods = _parse_methods(cfg.get("analysis", "methods"))
    else:
        methods = list(DEFAULT_METHODS)

    try:
        space = load_space_file(space_path)
    except FileNotFoundError:
        raise StageError("load-space", f"no such space cache: {space_path}", code=2)
    except (SpaceFormatError, SpaceCorruptionError, OSError) as err:
        raise StageError("load-space", err)
    wspace = plmi(space) if MethodId.SlqsSec in methods else None

    out_dir.mkdir(parents=True, exist_ok=True)
    for gold_path in gold_paths:
        try:
            pairs = gold.load_pairs(gold_path)
        except OSError as err:
            raise StageError("load-gold", err, code=2)
        pairs = gold.clean_pairs(pairs)
        compounds, non_compounds = gold.split_compounds(pairs)
        dataset = gold_path.stem
        for subset, subset_pairs in (("compound", compounds),
                                     ("noncompound", non_compounds)):
            covered, report = gold.filter_coverage(subset_pairs, space)
            print(f"coverage[{dataset}/{subset}]: total={report.total} "
                  f"kept={report.kept} dropped_oov={report.dropped_oov} "
                  f"dropped_empty_row={report.dropped_empty_row}")
            table = evaluation.evaluate(covered, methods, space, wspace, k=k,
                                        threads=args.threads)
            try:
                _write_subset_outputs(table, out_dir, dataset, subset, n_buckets)
            except OSError as err:
                raise StageError("write-csv", err)
    return 0


def _load_table(path: str):
    try:
        return evaluation.load_decisions(path)
    except FileNotFoundError:
        raise StageError("load-decisions", f"no such decisions CSV: {path}", code=2)
    except (OSError, ValueError, KeyError) as err:
        raise StageError("load-decisions", err)


def cmd_smc(args: argparse.Namespace) -> int:
    table = _load_table(args.decisions)
    matrix = evaluation.smc_matrix(table) if table.rows else []
    evaluation.export_csv((table.methods, matrix), "smc_matrix", args.out)
    return 0


def cmd_buckets(args: argparse.Namespace) -> int:
    table = _load_table(args.decisions)
    if table.rows:
        partition = evaluation.frequency_buckets(table, args.buckets)
        per_bucket = evaluation.bucket_accuracies(table, partition, table.methods)
        rows = [(i, r) for i, results in enumerate(per_bucket, 1) for r in results]
    else:
        rows = []
    evaluation.export_csv(rows, "buckets", args.out)
    return 0


def cmd_complement(args: argparse.Namespace) -> int:
    table = _load_table(args.decisions)
    comp = evaluation.complementarity_pairs(table) if table.rows else []
    evaluation.export_csv(comp, "complementarity", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdir",
        description="Build count spaces and predict hypernymy direction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build-space", help="count a corpus into a space cache")
    p_build.add_argument("corpus", nargs="*", help="vertical corpus files (may be .gz)")
    p_build.add_argument("--config", metavar="PATH")
    p_build.add_argument("--space", metavar="PATH", help="output cache file")
    p_build.add_argument("--window", type=int, metavar="N")
    p_build.add_argument("--tagset", choices=sorted(TAGSETS))
    p_build.add_argument("--threads", type=int, default=1, metavar="N")
    p_build.set_defaults(func=cmd_build_space)

    p_eval = sub.add_parser("evaluate", help="run gold pairs through all analyses")
    p_eval.add_argument("--config", metavar="PATH")
    p_eval.add_argument("--space", metavar="PATH")
    p_eval.add_argument("--gold", action="append", default=[], metavar="PATH")
    p_eval.add_argument("--out", metavar="DIR")
    p_eval.add_argument("--methods", metavar="LIST", help="comma-separated method names")
    p_eval.add_argument("--k", type=int, metavar="N")
    p_eval.add_argument("--buckets", type=int, metavar="N")
    p_eval.add_argument("--threads", type=int, default=1, metavar="N")
    p_eval.set_defaults(func=cmd_evaluate)

    for name, func, extra in (("smc", cmd_smc, False),
                              ("buckets", cmd_buckets, True),
                              ("complement", cmd_complement, False)):
        p = sub.add_parser(name, help=f"re-derive {name} from a decisions CSV")
        p.add_argument("decisions", help="decisions CSV from `evaluate`")
        p.add_argument("--out", required=True, metavar="PATH")
        if extra:
            p.add_argument("--buckets", type=int, default=10, metavar="N")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("HYPERDIR_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StageError as err:
        print(f"hyperdir: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
