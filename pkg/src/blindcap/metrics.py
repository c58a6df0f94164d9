"""Corpus-level clipped n-gram precision and BLEU.

Matched and total n-gram counts are pooled over every candidate in the
corpus before dividing; precisions are kept as exact ``Fraction`` objects
and floats only appear in the brevity penalty and the BLEU composition.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .textcore import Caption, Corpus

Ngram = Tuple[str, ...]
TokenSeq = Union[Caption, Sequence[str]]


def _tokens(caption: TokenSeq) -> Sequence[str]:
    return caption.tokens if isinstance(caption, Caption) else caption


@dataclass(frozen=True)
class NgramCounts:
    order: int
    counts: Mapping[Ngram, int]

    def total(self) -> int:
        return sum(self.counts.values())


def extract_ngrams(caption: TokenSeq, n: int) -> NgramCounts:
    if n < 1:
        raise ValueError("n-gram order must be >= 1, got %r" % n)
    toks = tuple(_tokens(caption))
    return NgramCounts(n, Counter(toks[i:i + n] for i in range(len(toks) - n + 1)))


def clipped_matches(candidate: NgramCounts, references: Sequence[NgramCounts]) -> int:
    """Sum over candidate n-gram types of min(candidate count, max reference count)."""
    if not references:
        raise ValueError("at least one reference is required")
    for ref in references:
        if ref.order != candidate.order:
            raise ValueError("order mismatch: candidate %d, reference %d" % (candidate.order, ref.order))
    matched = 0
    for gram, count in candidate.counts.items():
        best = max(ref.counts.get(gram, 0) for ref in references)
        matched += min(count, best)
    return matched


def closest_ref_length(cand_len: int, ref_lens: Iterable[int]) -> int:
    # ties go to the shorter reference
    return min(ref_lens, key=lambda r: (abs(r - cand_len), r))


@dataclass(frozen=True)
class SentenceStats:
    """Per-sentence tallies; corpus statistics are their elementwise sum."""

    matched: Tuple[int, ...]
    total: Tuple[int, ...]
    cand_len: int
    ref_len: int

    def __add__(self, other: "SentenceStats") -> "SentenceStats":
        return SentenceStats(
            tuple(a + b for a, b in zip(self.matched, other.matched)),
            tuple(a + b for a, b in zip(self.total, other.total)),
            self.cand_len + other.cand_len,
            self.ref_len + other.ref_len,
        )


def sentence_stats(candidate: TokenSeq, references: Sequence[TokenSeq], max_order: int = 4) -> SentenceStats:
    cand = _tokens(candidate)
    refs = [_tokens(r) for r in references]
    if not cand:
        raise ValueError("empty candidate: brevity penalty undefined")
    if not refs:
        raise ValueError("candidate has no references")
    matched, total = [], []
    for n in range(1, max_order + 1):
        c = extract_ngrams(cand, n)
        matched.append(clipped_matches(c, [extract_ngrams(r, n) for r in refs]))
        total.append(c.total())
    return SentenceStats(tuple(matched), tuple(total), len(cand), closest_ref_length(len(cand), map(len, refs)))


@dataclass(frozen=True)
class PrecisionReport:
    max_order: int
    matched: Tuple[int, ...]
    total: Tuple[int, ...]
    candidate_length: int
    effective_reference_length: int

    @classmethod
    def from_stats(cls, stats: SentenceStats) -> "PrecisionReport":
        return cls(len(stats.matched), stats.matched, stats.total, stats.cand_len, stats.ref_len)

    @property
    def precision(self) -> Tuple[Fraction, ...]:
        # an order with no candidate n-grams has no matches either; report 0
        return tuple(Fraction(m, t) if t else Fraction(0) for m, t in zip(self.matched, self.total))

    @property
    def brevity_penalty(self) -> float:
        c, r = self.candidate_length, self.effective_reference_length
        if c > r:
            return 1.0
        return math.exp(1.0 - r / c)

    @property
    def bleu(self) -> Tuple[float, ...]:
        bp = self.brevity_penalty
        out = []
        log_sum = 0.0
        dead = False
        for n, p in enumerate(self.precision, start=1):
            if p == 0:
                dead = True
            if dead:
                out.append(0.0)
                continue
            log_sum += math.log(p.numerator) - math.log(p.denominator)
            out.append(bp * math.exp(log_sum / n))
        return tuple(out)

    def to_dict(self, label: str = "") -> dict:
        return {
            "label": label,
            "p": [float(percent(p)) for p in self.precision],
            "bleu": [float(percent(b)) for b in self.bleu],
            "bp": sig6(self.brevity_penalty),
            "c": self.candidate_length,
            "r": self.effective_reference_length,
            "matched": list(self.matched),
            "total": list(self.total),
        }


def corpus_precision(corpus: Corpus, max_order: int = 4) -> PrecisionReport:
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    acc = None
    for cand, refs in corpus.pairs():
        try:
            s = sentence_stats(cand, refs, max_order)
        except ValueError as e:
            raise ValueError("example %s: %s" % (cand.example_id, e)) from None
        acc = s if acc is None else acc + s
    return PrecisionReport.from_stats(acc)


def percent(value: Union[Fraction, float]) -> Decimal:
    """Value as a percentage rounded half-up to one decimal place."""
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, Fraction):
            d = Decimal(value.numerator * 100) / Decimal(value.denominator)
        else:
            d = Decimal(repr(float(value))) * 100
        return d.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def sig6(x: float) -> float:
    return float("%.6g" % x)


def report_table(reports: Sequence[Tuple[str, PrecisionReport]], orders: int = 4) -> str:
    """Render labelled reports as a fixed-width P-1..P-n table (percent, one decimal)."""
    if not reports:
        raise ValueError("no reports to render")
    header = ["Model"] + ["P-%d" % n for n in range(1, orders + 1)]
    rows = [header]
    for label, rep in reports:
        rows.append([label] + [str(percent(p)) for p in rep.precision[:orders]])
    width = max(len(r[0]) for r in rows)
    lines = []
    for row in rows:
        lines.append(" ".join([row[0].ljust(width)] + [cell.rjust(5) for cell in row[1:]]).rstrip())
    return "\n".join(lines) + "\n"


def table_row(report: PrecisionReport, orders: int = 4) -> str:
    return " ".join(str(percent(p)) for p in report.precision[:orders])


def reports_to_json(reports: Sequence[Tuple[str, PrecisionReport]], header: Mapping = None) -> str:
    doc = {"reports": [rep.to_dict(label) for label, rep in reports]}
    if header is not None:
        doc["config"] = dict(header)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def reports_to_csv(reports: Sequence[Tuple[str, PrecisionReport]]) -> str:
    if not reports:
        return ""
    n = reports[0][1].max_order
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label"] + ["p%d" % k for k in range(1, n + 1)] + ["bleu%d" % k for k in range(1, n + 1)]
               + ["bp", "c", "r"] + ["matched%d" % k for k in range(1, n + 1)]
               + ["total%d" % k for k in range(1, n + 1)])
    for label, rep in reports:
        d = rep.to_dict(label)
        w.writerow([label] + d["p"] + d["bleu"] + [d["bp"], d["c"], d["r"]] + d["matched"] + d["total"])
    return buf.getvalue()


def score_pairs(candidates: Mapping[str, Caption], references: Mapping[str, Sequence[Caption]],
                max_order: int = 4) -> PrecisionReport:
    """Convenience wrapper: validate id coverage and score."""
    missing = sorted(set(candidates) - set(references))
    if missing:
        raise ValueError("no references for ids: %s" % ", ".join(missing))
    return corpus_precision(Corpus.from_maps(candidates, references), max_order)

