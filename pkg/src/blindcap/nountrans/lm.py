"""Count-based n-gram language model with stupid-backoff scoring.

Each caption is padded with ``order - 1`` start markers and one end marker.
Counts are kept only for n-grams that end on a predicted position (a real
token or the end marker), so the total for a context is exactly the sum of
its extensions.

    score(w | ctx) = c(ctx w) / c(ctx)             if c(ctx w) > 0
                   = alpha * score(w | ctx[1:])    otherwise
    score(w)       = (c(w) + 1) / (N + V)
"""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..textcore import Caption

BOS = "<s>"
EOS = "</s>"

Context = Tuple[str, ...]


class NgramLM:
    def __init__(self, order: int, counts: Sequence[Dict[Context, Dict[str, int]]], backoff_factor: float = 0.4):
        if order < 1:
            raise ValueError("order must be >= 1")
        if not 0.0 < backoff_factor <= 1.0:
            raise ValueError("backoff_factor must be in (0, 1]")
        if len(counts) != order:
            raise ValueError("expected %d count tables, got %d" % (order, len(counts)))
        self.order = order
        self.backoff_factor = backoff_factor
        # counts[k][ctx][w] with len(ctx) == k
        self.counts = [{ctx: dict(row) for ctx, row in table.items()} for table in counts]
        self.context_totals = [{ctx: sum(row.values()) for ctx, row in table.items()} for table in self.counts]
        unigrams = self.counts[0].get((), {})
        self.n_tokens = sum(unigrams.values())
        # predictable words, sorted so ties resolve alphabetically
        self.words: List[str] = sorted(set(unigrams) | {EOS})
        self.index = {w: i for i, w in enumerate(self.words)}
        self.vocabulary = frozenset(self.words) | {BOS}
        self._unigram_denominator = self.n_tokens + len(self.vocabulary)
        self._cache: Dict[Context, np.ndarray] = {}

    # scalar scoring, the reference path

    def score(self, word: str, context: Sequence[str] = ()) -> float:
        ctx = tuple(context)[-(self.order - 1):] if self.order > 1 else ()
        factor = 1.0
        while ctx:
            row = self.counts[len(ctx)].get(ctx)
            if row and word in row:
                return factor * row[word] / self.context_totals[len(ctx)][ctx]
            factor *= self.backoff_factor
            ctx = ctx[1:]
        return factor * (self.counts[0].get((), {}).get(word, 0) + 1) / self._unigram_denominator

    def logscore(self, word: str, context: Sequence[str] = ()) -> float:
        return math.log(self.score(word, context))

    # vectorized scoring over ``self.words`` for beam search

    def log_scores(self, context: Sequence[str]) -> np.ndarray:
        ctx = tuple(context)[-(self.order - 1):] if self.order > 1 else ()
        cached = self._cache.get(ctx)
        if cached is None:
            cached = self._compute(ctx)
            self._cache[ctx] = cached
        return cached

    def _compute(self, ctx: Context) -> np.ndarray:
        if not ctx:
            uni = self.counts[0].get((), {})
            counts = np.array([uni.get(w, 0) for w in self.words], dtype=float)
            out = np.log(counts + 1.0) - math.log(self._unigram_denominator)
            out.setflags(write=False)
            return out
        out = self.log_scores(ctx[1:]) + math.log(self.backoff_factor)
        row = self.counts[len(ctx)].get(ctx)
        if row:
            out = out.copy()
            log_total = math.log(self.context_totals[len(ctx)][ctx])
            for w, c in row.items():
                out[self.index[w]] = math.log(c) - log_total
        out.setflags(write=False)
        return out

    def probabilities(self, context: Sequence[str]) -> Dict[str, float]:
        """Normalized top-order distribution for an observed context."""
        ctx = tuple(context)
        row = self.counts[len(ctx)].get(ctx)
        if not row:
            raise KeyError("context %r never observed" % (ctx,))
        total = self.context_totals[len(ctx)][ctx]
        return {w: c / total for w, c in row.items()}

    def to_json(self) -> str:
        doc = {
            "order": self.order,
            "backoff_factor": self.backoff_factor,
            "counts": {
                str(k): {" ".join(ctx): dict(sorted(row.items())) for ctx, row in table.items()}
                for k, table in enumerate(self.counts)
            },
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "NgramLM":
        doc = json.loads(text)
        try:
            order = int(doc["order"])
            counts = []
            for k in range(order):
                table = doc["counts"][str(k)]
                counts.append({tuple(ctx.split(" ")) if ctx else (): row for ctx, row in table.items()})
            return cls(order, counts, float(doc["backoff_factor"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError("not a language model file: %s" % e) from None

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.to_json())

    @classmethod
    def load(cls, path) -> "NgramLM":
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())


def _tokens(c) -> Sequence[str]:
    return c.tokens if isinstance(c, Caption) else c


def train_lm(captions: Iterable, order: int = 3, backoff_factor: float = 0.4) -> NgramLM:
    """Count every k-gram (k <= order) ending on a token or the end marker."""
    if order < 1:
        raise ValueError("order must be >= 1")
    tables = [defaultdict(Counter) for _ in range(order)]
    seen = 0
    for cap in captions:
        toks = list(_tokens(cap))
        for marker in (BOS, EOS):
            if marker in toks:
                raise ValueError("caption contains reserved marker %r" % marker)
        seen += 1
        seq = [BOS] * (order - 1) + toks + [EOS]
        for i in range(order - 1, len(seq)):
            w = seq[i]
            for k in range(order):
                tables[k][tuple(seq[i - k:i])][w] += 1
    if not seen:
        raise ValueError("no training captions")
    counts = [{ctx: dict(row) for ctx, row in sorted(t.items())} for t in tables]
    return NgramLM(order, counts, backoff_factor)
