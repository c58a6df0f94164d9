"""Per-category score bounds by masking a word category with a reserved token.

Masking the category only in the candidates means none of its tokens can
match any more, which gives the lower bound (the system never gets that
category right). Masking it in candidates and references makes every such
token identical on both sides, which gives the upper bound (the category is
always right). Replacement is token by token, so candidate lengths and the
brevity penalty never change.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .metrics import PrecisionReport, corpus_precision, percent
from .postag.perceptron import TaggedCaption, TaggerModel, tag_many
from .postag.tagset import Category
from .textcore import Caption, Corpus

DEFAULT_MASK = "⟨mask⟩"
METRIC_KINDS = ("P", "BLEU")


class MaskScope(Enum):
    CANDIDATE_ONLY = "candidate_only"
    CANDIDATE_AND_REFERENCES = "candidate_and_references"


@dataclass(frozen=True)
class TaggedCorpus:
    candidates: Mapping[str, TaggedCaption]
    references: Mapping[str, Sequence[TaggedCaption]]

    def __post_init__(self):
        missing = [i for i in self.candidates if not self.references.get(i)]
        if missing:
            raise ValueError("candidates without references: %s" % ", ".join(sorted(missing)))

    def captions(self) -> Iterable[TaggedCaption]:
        for example_id, cand in self.candidates.items():
            yield cand
            yield from self.references[example_id]

    def vocabulary(self) -> set:
        vocab = set()
        for cap in self.captions():
            vocab.update(cap.tokens)
        return vocab

    def untagged(self) -> Corpus:
        return Corpus({k: c.caption for k, c in self.candidates.items()},
                      {k: [r.caption for r in refs] for k, refs in self.references.items()})


def tag_corpus(model: TaggerModel, corpus: Corpus) -> TaggedCorpus:
    """Tag candidates and references with the same model."""
    refs = {}
    for k in corpus.candidates:
        refs[k] = list(tag_many(model, dict(enumerate(corpus.references[k]))).values())
    return TaggedCorpus(tag_many(model, corpus.candidates), refs)


def _check_mask(mask_token: str, vocab) -> None:
    if not mask_token or any(ch.isspace() for ch in mask_token):
        raise ValueError("mask token must be a non-empty string without whitespace")
    if mask_token in vocab:
        raise ValueError("mask token %r occurs in the corpus vocabulary" % mask_token)


def mask_category(tagged: TaggedCaption, category: Category, mask_token: str = DEFAULT_MASK) -> Caption:
    _check_mask(mask_token, tagged.tokens)
    return Caption(tagged.example_id, tuple(
        mask_token if c == category else w for w, c in zip(tagged.tokens, tagged.categories)))


def _check_single_tagger(corpus: TaggedCorpus) -> None:
    ids = {cap.tagger_id for cap in corpus.captions()}
    if len(ids) > 1:
        raise ValueError("candidates and references were tagged by different models: %s"
                         % ", ".join(sorted(str(i) for i in ids)))


def masked_corpus(corpus: TaggedCorpus, category: Category, scope: MaskScope,
                  mask_token: str = DEFAULT_MASK) -> Corpus:
    _check_mask(mask_token, corpus.vocabulary())
    cands = {k: mask_category(c, category, mask_token) for k, c in corpus.candidates.items()}
    if scope is MaskScope.CANDIDATE_ONLY:
        refs = {k: [r.caption for r in rs] for k, rs in corpus.references.items()}
    else:
        refs = {k: [mask_category(r, category, mask_token) for r in rs] for k, rs in corpus.references.items()}
    return Corpus(cands, refs)


def bound_scores(corpus: TaggedCorpus, category: Category, max_order: int = 4,
                 mask_token: str = DEFAULT_MASK) -> Tuple[PrecisionReport, PrecisionReport]:
    """Return ``(lower, upper)`` reports for one category."""
    _check_single_tagger(corpus)
    lower = corpus_precision(masked_corpus(corpus, category, MaskScope.CANDIDATE_ONLY, mask_token), max_order)
    upper = corpus_precision(masked_corpus(corpus, category, MaskScope.CANDIDATE_AND_REFERENCES, mask_token),
                             max_order)
    return lower, upper


@dataclass(frozen=True)
class BoundCell:
    lower: object
    system: object
    upper: object
    warning: Optional[str] = None

    @property
    def improvement(self):
        return self.upper - self.system

    @property
    def loss(self):
        return self.system - self.lower

    def to_dict(self) -> dict:
        d = {
            "lower": float(percent(self.lower)),
            "system": float(percent(self.system)),
            "upper": float(percent(self.upper)),
            "improvement": float(percent(self.improvement)),
            "loss": float(percent(self.loss)),
        }
        if self.warning:
            d["warning"] = self.warning
        return d


def _metric(report: PrecisionReport, kind: str) -> Sequence:
    if kind == "P":
        return report.precision
    if kind == "BLEU":
        return report.bleu
    raise ValueError("unknown metric kind %r" % kind)


@dataclass(frozen=True)
class CategoryBoundsReport:
    max_order: int
    system: PrecisionReport
    bounds: Mapping[Category, Tuple[PrecisionReport, PrecisionReport]]

    @property
    def categories(self) -> List[Category]:
        return list(self.bounds)

    def cell(self, category: Category, order: int, kind: str = "P") -> BoundCell:
        lower, upper = self.bounds[category]
        lo = _metric(lower, kind)[order - 1]
        sy = _metric(self.system, kind)[order - 1]
        up = _metric(upper, kind)[order - 1]
        if lo > sy:
            # cannot happen: masking candidates only removes matches
            raise AssertionError("lower bound above system score for %s, order %d" % (category.value, order))
        warning = None
        if up < sy:
            warning = "upper below system: masked references pool clipped counts"
        return BoundCell(lo, sy, up, warning)

    def cells(self, kind: str = "P"):
        for cat in self.bounds:
            for n in range(1, self.max_order + 1):
                yield cat, n, self.cell(cat, n, kind)

    def warnings(self) -> List[Tuple[Category, int, str]]:
        return [(cat, n, kind) for kind in METRIC_KINDS for cat, n, c in self.cells(kind) if c.warning]

    def to_dict(self) -> dict:
        doc = {"max_order": self.max_order}
        for kind in METRIC_KINDS:
            doc[kind] = {cat.value: {str(n): self.cell(cat, n, kind).to_dict() for n in range(1, self.max_order + 1)}
                         for cat in self.bounds}
        doc["system"] = self.system.to_dict("system")
        return doc

    def to_json(self, header: Mapping = None) -> str:
        doc = self.to_dict()
        if header is not None:
            doc["config"] = dict(header)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["category", "metric", "order", "lower", "system", "upper", "improvement", "loss", "warning"])
        for kind in METRIC_KINDS:
            for cat, n, c in self.cells(kind):
                d = c.to_dict()
                w.writerow([cat.value, kind, n, d["lower"], d["system"], d["upper"],
                            d["improvement"], d["loss"], d.get("warning", "")])
        return buf.getvalue()


def bounds_report(corpus: TaggedCorpus, categories: Iterable[Category], max_order: int = 4,
                  mask_token: str = DEFAULT_MASK) -> CategoryBoundsReport:
    cats = list(dict.fromkeys(categories))
    if not cats:
        raise ValueError("no categories requested")
    _check_single_tagger(corpus)
    system = corpus_precision(corpus.untagged(), max_order)
    bounds: Dict[Category, Tuple[PrecisionReport, PrecisionReport]] = {}
    for cat in cats:
        bounds[cat] = bound_scores(corpus, cat, max_order, mask_token)
    return CategoryBoundsReport(max_order, system, bounds)

