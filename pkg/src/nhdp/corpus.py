"""Bag-of-words corpus handling: loading, pruning, minibatches, held-out splits.

Two on-disk formats are supported:

* raw-text-lines: one document per line; tokens are lowercased, stripped of
  punctuation and split on whitespace.
* term-count-lines: ``doc_id term_id:count term_id:count ...`` with 0-based
  ids against a separately loaded vocabulary (one token per line, line
  number = id).  This is the canonical input format.

A Corpus is immutable once built and safe to share across workers.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field

import numpy as np

from .errors import CorpusFormatError

__all__ = [
    "Vocabulary",
    "BowDocument",
    "Corpus",
    "load_vocabulary",
    "save_vocabulary",
    "load_corpus",
    "save_corpus",
    "prune_vocabulary",
    "sample_minibatch",
    "split_heldout_words",
]

logger = logging.getLogger(__name__)

_PUNC_TABLE = str.maketrans("", "", string.punctuation)


@dataclass(frozen=True)
class Vocabulary:
    """Dense token <-> id mapping; ids run 0..V-1 in ``terms`` order."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    @classmethod
    def from_terms(cls, terms) -> "Vocabulary":
        terms = tuple(terms)
        index = {t: i for i, t in enumerate(terms)}
        if len(index) != len(terms):
            raise CorpusFormatError("vocabulary contains a duplicate term")
        return cls(terms, index)

    @property
    def V(self) -> int:
        return len(self.terms)


class BowDocument:
    """Sparse count vector: distinct term ids with positive counts."""

    __slots__ = ("doc_id", "term_ids", "counts")

    def __init__(self, doc_id: int, term_ids, counts):
        self.doc_id = int(doc_id)
        self.term_ids = np.asarray(term_ids, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)
        if self.term_ids.shape != self.counts.shape:
            raise ValueError("term_ids and counts must align")
        if len(np.unique(self.term_ids)) != len(self.term_ids):
            raise ValueError("duplicate term id in document")
        if np.any(self.counts < 1):
            raise ValueError("counts must be >= 1")

    @property
    def N_d(self) -> int:
        return int(self.counts.sum())

    def tokens(self) -> np.ndarray:
        """Token-level expansion (term id repeated count times)."""
        return np.repeat(self.term_ids, self.counts)

    @classmethod
    def from_tokens(cls, doc_id: int, tokens) -> "BowDocument":
        ids, counts = np.unique(np.asarray(tokens, dtype=np.int64), return_counts=True)
        return cls(doc_id, ids, counts)


class Corpus:
    """Immutable document collection over one vocabulary."""

    def __init__(self, documents, vocabulary: Vocabulary):
        self.documents = list(documents)
        self.vocabulary = vocabulary
        if not self.documents:
            raise CorpusFormatError("empty corpus")
        self._by_id = {}
        for d in self.documents:
            if d.doc_id in self._by_id:
                raise CorpusFormatError(f"duplicate doc_id {d.doc_id}")
            if len(d.term_ids) and d.term_ids.max() >= vocabulary.V:
                raise CorpusFormatError(f"doc {d.doc_id}: term id out of range")
            if d.N_d < 1:
                raise CorpusFormatError(f"doc {d.doc_id} is empty")
            self._by_id[d.doc_id] = d

    @property
    def D(self) -> int:
        return len(self.documents)

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __getitem__(self, pos) -> BowDocument:
        return self.documents[pos]

    def by_id(self, doc_id: int) -> BowDocument:
        return self._by_id[doc_id]

    @property
    def doc_ids(self) -> list[int]:
        return [d.doc_id for d in self.documents]


def tokenize(line: str) -> list[str]:
    """Minimal raw-text tokenizer: lowercase, strip punctuation, split."""
    return line.lower().translate(_PUNC_TABLE).split()


def load_vocabulary(path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        terms = [line.strip() for line in fh if line.strip()]
    if not terms:
        raise CorpusFormatError(f"empty vocabulary file: {path}")
    return Vocabulary.from_terms(terms)


def save_vocabulary(vocab: Vocabulary, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in vocab.terms:
            fh.write(t + "\n")


def load_corpus(path, fmt: str = "term-count-lines",
                vocabulary: Vocabulary | None = None) -> Corpus:
    """Load a corpus in ``raw-text-lines`` or ``term-count-lines`` format.

    Term-count mode needs the vocabulary loaded separately; raw-text mode
    builds one in first-appearance order.  Malformed lines raise
    CorpusFormatError naming the 1-based line number.
    """
    if fmt == "raw-text-lines":
        return _load_raw_text(path)
    if fmt == "term-count-lines":
        if vocabulary is None:
            raise CorpusFormatError("term-count-lines format requires a vocabulary")
        return _load_term_counts(path, vocabulary)
    raise CorpusFormatError(f"unknown corpus format: {fmt!r}")


def _load_raw_text(path) -> Corpus:
    terms: list[str] = []
    index: dict[str, int] = {}
    docs = []
    n_blank = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            toks = tokenize(line)
            if not toks:
                n_blank += 1
                continue
            ids = []
            for t in toks:
                if t not in index:
                    index[t] = len(terms)
                    terms.append(t)
                ids.append(index[t])
            docs.append(BowDocument.from_tokens(len(docs), ids))
    if n_blank:
        logger.info("skipped %d blank line(s) in %s", n_blank, path)
    if not docs:
        raise CorpusFormatError(f"empty corpus: {path}")
    return Corpus(docs, Vocabulary.from_terms(terms))


def _load_term_counts(path, vocabulary: Vocabulary) -> Corpus:
    docs = []
    V = vocabulary.V
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            try:
                doc_id = int(parts[0])
            except ValueError:
                raise CorpusFormatError(f"{path}:{lineno}: bad doc id {parts[0]!r}")
            counts: dict[int, int] = {}
            for item in parts[1:]:
                try:
                    tid_s, cnt_s = item.split(":")
                    tid, cnt = int(tid_s), int(cnt_s)
                except ValueError:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: malformed term:count entry {item!r}")
                if not 0 <= tid < V:
                    raise CorpusFormatError(
                        f"{path}:{lineno}: term id out of range ({tid} >= {V})")
                if cnt < 1:
                    raise CorpusFormatError(f"{path}:{lineno}: count must be >= 1")
                counts[tid] = counts.get(tid, 0) + cnt
            if not counts:
                raise CorpusFormatError(f"{path}:{lineno}: document has no terms")
            tids = np.array(sorted(counts), dtype=np.int64)
            docs.append(BowDocument(doc_id, tids, [counts[t] for t in tids]))
    if not docs:
        raise CorpusFormatError(f"empty corpus: {path}")
    return Corpus(docs, vocabulary)


def save_corpus(corpus: Corpus, path) -> None:
    """Write term-count-lines format."""
    with open(path, "w", encoding="utf-8") as fh:
        for d in corpus:
            entries = " ".join(f"{t}:{c}" for t, c in zip(d.term_ids, d.counts))
            fh.write(f"{d.doc_id} {entries}\n")


def prune_vocabulary(corpus: Corpus, min_count: int = 1,
                     stopwords=None) -> Corpus:
    """Drop stopwords and terms with corpus frequency below ``min_count``.

    The vocabulary is re-densified, documents re-encoded, and documents
    left empty are dropped (with a logged count): zero-length documents
    violate downstream N_d >= 1 requirements.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    stopwords = set(stopwords) if stopwords else set()
    freq = np.zeros(corpus.vocabulary.V, dtype=np.int64)
    for d in corpus:
        freq[d.term_ids] += d.counts
    keep = freq >= min_count
    for t in stopwords:
        tid = corpus.vocabulary.index.get(t)
        if tid is not None:
            keep[tid] = False
    new_id = np.full(corpus.vocabulary.V, -1, dtype=np.int64)
    survivors = np.flatnonzero(keep)
    new_id[survivors] = np.arange(len(survivors))
    vocab = Vocabulary.from_terms(corpus.vocabulary.terms[i] for i in survivors)

    docs, dropped = [], 0
    for d in corpus:
        mask = keep[d.term_ids]
        if not mask.any():
            dropped += 1
            continue
        docs.append(BowDocument(d.doc_id, new_id[d.term_ids[mask]], d.counts[mask]))
    if dropped:
        logger.info("pruning emptied %d document(s); dropped", dropped)
    if not docs:
        raise CorpusFormatError("pruning removed every document")
    return Corpus(docs, vocab)


def sample_minibatch(corpus: Corpus, size: int, rng: np.random.Generator) -> list[int]:
    """Uniform sample of ``size`` distinct doc_ids, deterministic given rng."""
    if not 1 <= size <= corpus.D:
        raise ValueError(f"minibatch size {size} not in [1, {corpus.D}]")
    pos = rng.choice(corpus.D, size=size, replace=False)
    return [corpus.documents[p].doc_id for p in pos]


def split_heldout_words(doc: BowDocument, observed_fraction: float,
                        rng: np.random.Generator) -> tuple[BowDocument, BowDocument]:
    """Token-level partition into (observed, heldout) parts.

    The observed side receives round(observed_fraction * N_d) tokens,
    clamped so both sides keep at least one token; counts are conserved
    exactly.  Requires N_d >= 2.
    """
    if not 0.0 < observed_fraction < 1.0:
        raise ValueError("observed_fraction must lie in (0, 1)")
    n = doc.N_d
    if n < 2:
        raise ValueError(f"doc {doc.doc_id}: need at least 2 tokens to split")
    n_obs = int(np.clip(round(observed_fraction * n), 1, n - 1))
    toks = doc.tokens()
    rng.shuffle(toks)
    observed = BowDocument.from_tokens(doc.doc_id, toks[:n_obs])
    heldout = BowDocument.from_tokens(doc.doc_id, toks[n_obs:])
    return observed, heldout
