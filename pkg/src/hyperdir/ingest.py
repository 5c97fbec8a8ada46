"""Streaming ingestion of vertical (one token per line) POS-tagged corpora.

The vertical format is `surface<TAB>pos<TAB>lemma`, with SGML-ish structural
markers on their own lines. Only `<s>`/`</s>` carry meaning (sentence
boundaries); every other `<...>` line is skipped.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator

from .space import CountSpace

NOUN = "noun"
VERB = "verb"
ADJ = "adj"


@dataclass(frozen=True)
class Token:
    surface: str
    pos: str
    lemma: str


Sentence = list  # list[Token]


@dataclass(frozen=True)
class PosConfig:
    """Tag-prefix sets that define which tokens count as content words."""

    noun_prefixes: frozenset[str]
    verb_prefixes: frozenset[str]
    adj_prefixes: frozenset[str]
    lowercase: bool = False

    def __post_init__(self):
        for name, prefixes in (("noun", self.noun_prefixes),
                               ("verb", self.verb_prefixes),
                               ("adj", self.adj_prefixes)):
            if not prefixes:
                raise ValueError(f"empty {name} prefix set")
        if (self.noun_prefixes & self.verb_prefixes
                or self.noun_prefixes & self.adj_prefixes
                or self.verb_prefixes & self.adj_prefixes):
            raise ValueError("pos prefix sets must be pairwise disjoint")

    @classmethod
    def penn(cls, lowercase: bool = False) -> "PosConfig":
        return cls(frozenset({"N"}), frozenset({"V"}), frozenset({"J"}), lowercase)

    @classmethod
    def stts(cls, lowercase: bool = False) -> "PosConfig":
        return cls(frozenset({"NN", "NE"}), frozenset({"V"}), frozenset({"ADJ"}), lowercase)

    def classify(self, pos: str) -> str | None:
        if any(pos.startswith(p) for p in self.noun_prefixes):
            return NOUN
        if any(pos.startswith(p) for p in self.verb_prefixes):
            return VERB
        if any(pos.startswith(p) for p in self.adj_prefixes):
            return ADJ
        return None


@dataclass
class IngestStats:
    sentences_read: int = 0
    tokens_read: int = 0
    content_tokens: int = 0
    parse_errors: int = 0

    def merge(self, other: "IngestStats") -> None:
        self.sentences_read += other.sentences_read
        self.tokens_read += other.tokens_read
        self.content_tokens += other.content_tokens
        self.parse_errors += other.parse_errors


def _marker_name(line: str) -> str:
    """Tag name of a structural line, with any leading slash dropped."""
    inner = line[1:-1].lstrip("/")
    return inner.split(None, 1)[0] if inner else ""


def parse_vertical(stream, stats: IngestStats | None = None) -> Iterator[list[Token]]:
    """Yield sentences from a vertical-format byte (or text) stream.

    Undecodable bytes are replaced, never fatal. Lines that are not
    structural markers and do not split into exactly three tab-separated
    fields with non-empty pos and lemma are skipped and counted as parse
    errors. A sentence still open at end of input is yielded as-is.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    if isinstance(stream, io.TextIOBase):
        text = stream
    else:
        text = io.TextIOWrapper(stream, encoding="utf-8", errors="replace")
    if stats is None:
        stats = IngestStats()

    tokens: list[Token] = []
    in_sentence = False
    for raw in text:
        line = raw.rstrip("\r\n")
        if line.startswith("<") and line.endswith(">") and len(line) >= 2:
            name = _marker_name(line)
            closing = line.startswith("</")
            if name == "s":
                if closing:
                    if in_sentence or tokens:
                        stats.sentences_read += 1
                        yield tokens
                    tokens = []
                    in_sentence = False
                else:
                    if in_sentence or tokens:
                        stats.sentences_read += 1
                        yield tokens
                    tokens = []
                    in_sentence = True
            continue
        fields = line.split("\t")
        if len(fields) != 3 or not fields[1] or not fields[2]:
            stats.parse_errors += 1
            continue
        tokens.append(Token(fields[0], fields[1], fields[2]))
        stats.tokens_read += 1
    if in_sentence or tokens:
        stats.sentences_read += 1
        yield tokens


def extract_content_tokens(sentence: list[Token], cfg: PosConfig) -> list[tuple[int, str, str]]:
    """(surface position, lemma, pos class) for the content tokens of a sentence."""
    out = []
    for i, token in enumerate(sentence):
        cls = cfg.classify(token.pos)
        if cls is not None:
            lemma = token.lemma.lower() if cfg.lowercase else token.lemma
            out.append((i, lemma, cls))
    return out


def _count_chunk(sentences: Iterable[list[Token]], cfg: PosConfig, window: int):
    cells: dict[tuple[str, str], int] = {}
    freq: dict[str, int] = {}
    content_tokens = 0
    for sentence in sentences:
        content = extract_content_tokens(sentence, cfg)
        content_tokens += len(content)
        for _, lemma, _ in content:
            freq[lemma] = freq.get(lemma, 0) + 1
        for a in range(len(content)):
            pos_a, lemma_a, _ = content[a]
            for b in range(a + 1, len(content)):
                pos_b, lemma_b, _ = content[b]
                if pos_b - pos_a > window:
                    break
                # one unordered pair feeds both ordered cells
                key = (lemma_a, lemma_b)
                cells[key] = cells.get(key, 0) + 1
                key = (lemma_b, lemma_a)
                cells[key] = cells.get(key, 0) + 1
    return cells, freq, content_tokens


def _merge_counts(into, part):
    cells, freq, content = into
    pcells, pfreq, pcontent = part
    for key, v in pcells.items():
        cells[key] = cells.get(key, 0) + v
    for key, v in pfreq.items():
        freq[key] = freq.get(key, 0) + v
    return cells, freq, content + pcontent


def _chunks(iterable, size):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def count_cooccurrences(sentences: Iterable[list[Token]], cfg: PosConfig,
                        window: int = 10, stats: IngestStats | None = None,
                        threads: int = 1, chunk_size: int = 2048) -> CountSpace:
    """Count windowed co-occurrences between content tokens.

    Window distance is measured in surface token positions, so filtered-out
    tokens still keep the words they separate apart. Partial chunk counts
    merge by addition, which makes the result independent of chunking and
    thread count.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if threads > 1:
        total: tuple = ({}, {}, 0)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda c: _count_chunk(c, cfg, window),
                                 _chunks(sentences, chunk_size)):
                total = _merge_counts(total, part)
        cells, freq, content_tokens = total
    else:
        cells, freq, content_tokens = _count_chunk(sentences, cfg, window)
    if stats is not None:
        stats.content_tokens += content_tokens
    return CountSpace.from_counts(cells, freq)
