"""Lexically constrained beam search over an n-gram language model.

A hypothesis is a token prefix plus the multiset of source nouns it has not
emitted yet. Its score is the summed log LM score plus ``coverage_bonus``
for every covered noun. The end marker is only allowed once all nouns are
covered; when the free slots left before ``max_length`` equal the number of
uncovered nouns, only those nouns may be emitted, so every surviving
hypothesis can still satisfy the constraints.

By default the beam is banked: ``beam_width`` hypotheses are kept for each
number of covered nouns, so prefixes that already placed a noun are not
crowded out by fluent noun-free ones. With ``banked=False`` a single beam
of ``beam_width`` hypotheses is kept and only ``coverage_bonus`` pushes
towards coverage; in banked mode the bonus never changes the ranking.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .lm import BOS, EOS, NgramLM


@dataclass(frozen=True)
class GenerationConfig:
    beam_width: int = 8
    max_length: int = 20
    coverage_bonus: float = 1.0
    seed: int = 0
    banked: bool = True

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")
        if self.max_length < 1:
            raise ValueError("max_length must be >= 1")
        if self.coverage_bonus < 0:
            raise ValueError("coverage_bonus must be >= 0")


@dataclass(frozen=True)
class Generation:
    tokens: Tuple[str, ...]
    score: float
    covered: int
    complete: bool  # every source noun emitted

    @property
    def degraded(self) -> bool:
        return not self.complete


@dataclass(frozen=True)
class _Hyp:
    tokens: Tuple[str, ...]
    remaining: Tuple[Tuple[str, int], ...]  # sorted (noun, count) pairs
    logp: float
    covered: int

    def need(self) -> int:
        return sum(c for _, c in self.remaining)


def _rank(score: float, tokens: Tuple[str, ...]):
    # higher score first, then lexicographically smaller token sequence
    return (-score, tokens)


def _better(g: Generation, cur: Optional[Generation]) -> bool:
    # full coverage dominates, then more coverage, then score, then lexicographic order
    if cur is None:
        return True
    a, b = (g.complete, g.covered, g.score), (cur.complete, cur.covered, cur.score)
    if a != b:
        return a > b
    return g.tokens < cur.tokens


def _take(remaining, word):
    out = []
    for w, c in remaining:
        if w == word:
            if c > 1:
                out.append((w, c - 1))
        else:
            out.append((w, c))
    return tuple(out)


def generate(lm: NgramLM, source_nouns: Sequence[str], config: GenerationConfig = GenerationConfig()) -> Generation:
    if config.beam_width < 1:
        raise ValueError("beam_width must be >= 1")
    bonus = config.coverage_bonus
    max_len = config.max_length
    pad = (BOS,) * (lm.order - 1)
    words = lm.words
    eos = lm.index[EOS]

    start = _Hyp((), tuple(sorted(Counter(source_nouns).items())), 0.0, 0)
    beam = [start]
    best: Optional[Generation] = None

    def finish(h: _Hyp, logp: float, tokens: Tuple[str, ...]):
        nonlocal best
        g = Generation(tokens, logp + bonus * h.covered, h.covered, h.need() == 0)
        if _better(g, best):
            best = g

    for _ in range(max_len + 1):
        if not beam:
            break
        # stop once no active hypothesis can beat the best finished one
        if best is not None and best.complete:
            bound = max(h.logp + bonus * (h.covered + h.need()) for h in beam)
            if best.score > bound:
                break
        candidates: List[Tuple[Tuple, _Hyp]] = []
        for h in beam:
            slots = max_len - len(h.tokens)
            need = h.need()
            ctx = pad + h.tokens
            logs = lm.log_scores(ctx)
            if slots == 0:
                # forced stop; the end marker is still scored
                finish(h, h.logp + float(logs[eos]), h.tokens)
                continue
            if need == 0:
                finish(h, h.logp + float(logs[eos]), h.tokens)
            base = h.logp + bonus * h.covered
            ext: List[Tuple[str, float, bool]] = []
            nouns = {w for w, _ in h.remaining}
            for w in sorted(nouns):
                lp = float(logs[lm.index[w]]) if w in lm.index else lm.logscore(w, ctx)
                ext.append((w, lp, True))
            if need < slots:
                # free choice over the vocabulary; keep the beam_width best plus ties
                free = np.array(logs, copy=True)
                free[eos] = -np.inf
                for w in nouns:
                    if w in lm.index:
                        free[lm.index[w]] = -np.inf
                k = min(config.beam_width, len(words))
                if k > 0:
                    kth = np.partition(free, len(free) - k)[len(free) - k]
                    if np.isfinite(kth):
                        for i in np.flatnonzero(free >= kth):
                            ext.append((words[i], float(free[i]), False))
                    else:
                        for i in np.flatnonzero(np.isfinite(free)):
                            ext.append((words[i], float(free[i]), False))
            for w, lp, is_noun in ext:
                tokens = h.tokens + (w,)
                if is_noun:
                    nh = _Hyp(tokens, _take(h.remaining, w), h.logp + lp, h.covered + 1)
                    score = base + lp + bonus
                else:
                    nh = _Hyp(tokens, h.remaining, h.logp + lp, h.covered)
                    score = base + lp
                candidates.append((_rank(score, tokens), nh))
        candidates.sort(key=lambda item: item[0])
        if config.banked:
            kept: Dict[int, int] = {}
            beam = []
            for _, h in candidates:
                if kept.get(h.covered, 0) < config.beam_width:
                    kept[h.covered] = kept.get(h.covered, 0) + 1
                    beam.append(h)
        else:
            beam = [h for _, h in candidates[:config.beam_width]]

    if best is None:
        # max_length reached by nothing finishable; unreachable for max_length >= 1
        raise RuntimeError("beam search produced no hypothesis")
    return best

