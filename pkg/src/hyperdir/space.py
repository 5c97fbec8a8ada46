"""Sparse count space, PLMI weighting, entropies, and the binary cache."""

from __future__ import annotations

import statistics
import struct
import threading
from typing import Iterable, Sequence

import numpy as np

MAGIC = b"HDSP"
FORMAT_VERSION = 1


class SpaceFormatError(Exception):
    """Cache bytes do not carry the expected magic or version."""


class SpaceCorruptionError(Exception):
    """Cache bytes end before the advertised payload does."""


class Vocabulary:
    """Bijective lemma <-> dense id map; ids are contiguous from 0."""

    __slots__ = ("lemmas", "_index")

    def __init__(self, lemmas: Sequence[str]):
        self.lemmas = list(lemmas)
        self._index = {lemma: i for i, lemma in enumerate(self.lemmas)}
        if len(self._index) != len(self.lemmas):
            raise ValueError("duplicate lemma in vocabulary")

    def __len__(self) -> int:
        return len(self.lemmas)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.lemmas == other.lemmas

    def id_of(self, lemma: str) -> int | None:
        return self._index.get(lemma)

    def lemma_of(self, wid: int) -> str:
        return self.lemmas[wid]


class SparseVector:
    """Strictly increasing feature ids with positive values; no explicit zeros."""

    __slots__ = ("ids", "values")

    def __init__(self, ids: np.ndarray, values: np.ndarray):
        self.ids = ids
        self.values = values

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "SparseVector":
        items = sorted(pairs)
        ids = np.array([f for f, _ in items], dtype=np.int64)
        values = np.array([v for _, v in items], dtype=np.float64)
        if len(np.unique(ids)) != len(ids):
            raise ValueError("duplicate feature id")
        if np.any(values <= 0):
            raise ValueError("sparse values must be positive")
        return cls(ids, values)

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))

    @property
    def nnz(self) -> int:
        return len(self.ids)

    def __bool__(self) -> bool:
        return len(self.ids) > 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseVector)
                and np.array_equal(self.ids, other.ids)
                and np.array_equal(self.values, other.values))

    def total(self) -> float:
        return float(self.values.sum())


class CountSpace:
    """Raw co-occurrence counts plus lemma frequencies and marginals.

    Corpus-built spaces are square (features are word ids) and symmetric;
    synthetic spaces may have more feature columns than word rows, in which
    case the extra features simply have no row of their own.
    """

    def __init__(self, vocab: Vocabulary, rows: list[SparseVector],
                 freq: np.ndarray, n_features: int | None = None):
        if len(rows) != len(vocab) or len(freq) != len(vocab):
            raise ValueError("rows, freq and vocabulary must align")
        self.vocab = vocab
        self.rows = rows
        self.freq = np.asarray(freq, dtype=np.int64)
        max_fid = max((int(r.ids[-1]) for r in rows if r.nnz), default=-1)
        self.n_features = len(vocab) if n_features is None else n_features
        if max_fid >= self.n_features:
            raise ValueError("feature id beyond feature dimension")
        self.row_sums = np.array([r.values.sum() for r in rows], dtype=np.float64)
        col = np.zeros(self.n_features, dtype=np.float64)
        for r in rows:
            np.add.at(col, r.ids, r.values)
        self.col_sums = col
        self.n = float(self.row_sums.sum())
        self._entropy_cache: dict[int, float | None] = {}
        self._entropy_lock = threading.Lock()

    @classmethod
    def from_counts(cls, cells: dict[tuple[str, str], int],
                    freq: dict[str, int]) -> "CountSpace":
        """Build from pair counters; ids are assigned in sorted lemma order."""
        vocab = Vocabulary(sorted(freq))
        by_row: list[list[tuple[int, int]]] = [[] for _ in range(len(vocab))]
        for (a, b), c in cells.items():
            by_row[vocab.id_of(a)].append((vocab.id_of(b), c))
        rows = [SparseVector.from_pairs(pairs) for pairs in by_row]
        freqs = np.array([freq[w] for w in vocab.lemmas], dtype=np.int64)
        return cls(vocab, rows, freqs)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence[float]],
                   lemmas: Sequence[str] | None = None,
                   freq: Sequence[int] | None = None) -> "CountSpace":
        """Test helper; `lemmas` must already be in id (sorted) order."""
        n_words = len(matrix)
        n_features = len(matrix[0]) if n_words else 0
        if lemmas is None:
            lemmas = [f"w{i:03d}" for i in range(n_words)]
        rows = [SparseVector.from_pairs((f, v) for f, v in enumerate(row) if v > 0)
                for row in matrix]
        if freq is None:
            freq = [max(1, int(sum(row))) for row in matrix]
        return cls(Vocabulary(lemmas), rows, np.asarray(freq, dtype=np.int64),
                   n_features=n_features)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CountSpace)
                and self.vocab == other.vocab
                and self.n_features == other.n_features
                and np.array_equal(self.freq, other.freq)
                and self.rows == other.rows)

    def row(self, lemma: str) -> SparseVector | None:
        wid = self.vocab.id_of(lemma)
        return None if wid is None else self.rows[wid]

    def row_by_id(self, wid: int) -> SparseVector | None:
        if 0 <= wid < len(self.rows):
            return self.rows[wid]
        return None

    def freq_of(self, lemma: str) -> int:
        wid = self.vocab.id_of(lemma)
        return 0 if wid is None else int(self.freq[wid])

    def entropy_by_id(self, wid: int) -> float | None:
        """Memoized first-order entropy of a raw row; None for absent/empty."""
        with self._entropy_lock:
            if wid in self._entropy_cache:
                return self._entropy_cache[wid]
        value = entropy(self.row_by_id(wid))
        with self._entropy_lock:
            self._entropy_cache[wid] = value
        return value


class WeightedSpace:
    """PLMI-weighted rows; mirrors the word ids of its source CountSpace."""

    def __init__(self, vocab: Vocabulary, rows: list[SparseVector], n_features: int):
        self.vocab = vocab
        self.rows = rows
        self.n_features = n_features

    def row(self, lemma: str) -> SparseVector | None:
        wid = self.vocab.id_of(lemma)
        return None if wid is None else self.rows[wid]


def entropy(v: SparseVector | None) -> float | None:
    """Shannon entropy in bits of a vector's value distribution; empty -> None."""
    if v is None or v.nnz == 0:
        return None
    p = v.values / v.values.sum()
    return float(-(p * np.log2(p)).sum())


def plmi(space: CountSpace) -> WeightedSpace:
    """Positive local mutual information: count * log2 of the dependence ratio.

    Entries with weight <= 0 (pointwise dependence <= 1) are dropped, so rows
    may come out empty.
    """
    if space.n <= 0:
        raise ValueError("plmi needs a space with at least one counted pair")
    rows = []
    for wid, row in enumerate(space.rows):
        if row.nnz == 0:
            rows.append(SparseVector.empty())
            continue
        ratio = (row.values * space.n) / (space.row_sums[wid] * space.col_sums[row.ids])
        weights = row.values * np.log2(ratio)
        keep = weights > 0.0
        rows.append(SparseVector(row.ids[keep], weights[keep]))
    return WeightedSpace(space.vocab, rows, space.n_features)


def top_contexts(wspace: WeightedSpace, lemma: str, k: int = 50) -> list[int]:
    """The k features with highest weight; ties resolved by ascending id."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    row = wspace.row(lemma)
    if row is None or row.nnz == 0:
        return []
    order = np.lexsort((row.ids, -row.values))
    return [int(f) for f in row.ids[order[:k]]]


def second_order_entropy(space: CountSpace, wspace: WeightedSpace,
                         lemma: str, k: int = 50) -> float | None:
    """Median first-order entropy of a word's top-k PLMI contexts.

    Contexts whose raw rows are absent or empty are skipped; if nothing
    remains the result is absent.
    """
    entropies = []
    for fid in top_contexts(wspace, lemma, k):
        h = space.entropy_by_id(fid)
        if h is not None:
            entropies.append(h)
    if not entropies:
        return None
    return float(statistics.median(entropies))


# ---------------------------------------------------------------------------
# binary cache
#
# magic "HDSP" | u32 version | u64 n_words | u64 n_cells
# | per lemma: u32 byte length + UTF-8 bytes
# | n_words * u64 frequency
# | (n_words + 1) * u64 row offsets
# | n_cells * (u32 feature id + u64 count)
# All integers little-endian.

_HEADER = struct.Struct("<4sIQQ")
_CELL_DTYPE = np.dtype([("fid", "<u4"), ("count", "<u8")])


def save_space(space: CountSpace) -> bytes:
    """Serialize; load_space(save_space(s)) reproduces s exactly."""
    if space.n_features != len(space.vocab):
        raise ValueError("only square spaces can be cached")
    n_words = len(space.vocab)
    n_cells = sum(r.nnz for r in space.rows)
    out = [_HEADER.pack(MAGIC, FORMAT_VERSION, n_words, n_cells)]
    for lemma in space.vocab.lemmas:
        encoded = lemma.encode("utf-8")
        out.append(struct.pack("<I", len(encoded)))
        out.append(encoded)
    out.append(space.freq.astype("<u8").tobytes())
    offsets = np.zeros(n_words + 1, dtype="<u8")
    if n_words:
        offsets[1:] = np.cumsum([r.nnz for r in space.rows])
    out.append(offsets.tobytes())
    cells = np.empty(n_cells, dtype=_CELL_DTYPE)
    pos = 0
    for row in space.rows:
        counts = row.values
        if not np.all(counts == np.floor(counts)):
            raise ValueError("cache stores integer counts only")
        cells["fid"][pos:pos + row.nnz] = row.ids
        cells["count"][pos:pos + row.nnz] = counts.astype(np.uint64)
        pos += row.nnz
    out.append(cells.tobytes())
    return b"".join(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        end = self.pos + size
        if end > len(self.data):
            raise SpaceCorruptionError(
                f"truncated space cache: needed {end} bytes, have {len(self.data)}")
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk


def load_space(data: bytes) -> CountSpace:
    if len(data) < _HEADER.size:
        raise SpaceFormatError(
            f"not a space cache: {len(data)} bytes is shorter than the header")
    reader = _Reader(data)
    magic, version, n_words, n_cells = _HEADER.unpack(reader.take(_HEADER.size))
    if magic != MAGIC:
        raise SpaceFormatError(f"bad magic: expected {MAGIC!r}, found {magic!r}")
    if version != FORMAT_VERSION:
        raise SpaceFormatError(
            f"unsupported space format version: expected {FORMAT_VERSION}, found {version}")
    lemmas = []
    for _ in range(n_words):
        (length,) = struct.unpack("<I", reader.take(4))
        lemmas.append(reader.take(length).decode("utf-8"))
    freq = np.frombuffer(reader.take(8 * n_words), dtype="<u8").astype(np.int64)
    offsets = np.frombuffer(reader.take(8 * (n_words + 1)), dtype="<u8")
    if n_words and (int(offsets[0]) != 0 or int(offsets[-1]) != n_cells
                    or np.any(np.diff(offsets.astype(np.int64)) < 0)):
        raise SpaceCorruptionError("inconsistent row offsets in space cache")
    cells = np.frombuffer(reader.take(_CELL_DTYPE.itemsize * n_cells), dtype=_CELL_DTYPE)
    if reader.pos != len(data):
        raise SpaceCorruptionError(
            f"trailing garbage in space cache: {len(data) - reader.pos} extra bytes")
    rows = []
    for wid in range(n_words):
        lo, hi = int(offsets[wid]), int(offsets[wid + 1])
        ids = cells["fid"][lo:hi].astype(np.int64)
        if ids.size and np.any(np.diff(ids) <= 0):
            raise SpaceCorruptionError(f"row {wid} feature ids not strictly increasing")
        rows.append(SparseVector(ids, cells["count"][lo:hi].astype(np.float64)))
    return CountSpace(Vocabulary(lemmas), rows, freq)


def save_space_file(space: CountSpace, path) -> None:
    with open(path, "wb") as f:
        f.write(save_space(space))


def load_space_file(path) -> CountSpace:
    with open(path, "rb") as f:
        return load_space(f.read())
