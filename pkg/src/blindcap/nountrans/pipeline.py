"""Blind noun translation: regenerate captions from the nouns of a system's output."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from ..metrics import PrecisionReport, report_table, score_pairs
from ..postag.perceptron import TaggerModel, extract_category, tag
from ..postag.tagset import Category
from ..textcore import Caption
from .beam import Generation, GenerationConfig, generate
from .lm import NgramLM

Generator = Callable[[Sequence[str]], Generation]


@dataclass(frozen=True)
class BlindResult:
    system_report: PrecisionReport
    blind_report: PrecisionReport
    sources: Mapping[str, Tuple[str, ...]]
    generated: Mapping[str, Caption]
    degraded: Tuple[str, ...]  # ids whose generation could not cover every noun

    def table(self, system_label: str = "Image captioning system",
              blind_label: str = "Blind noun translation system") -> str:
        return report_table([(system_label, self.system_report), (blind_label, self.blind_report)],
                            self.system_report.max_order)

    def gaps(self) -> Tuple[float, ...]:
        """System minus blind precision per order, in percentage points."""
        return tuple(100.0 * float(s - b) for s, b in
                     zip(self.system_report.precision, self.blind_report.precision))


def source_nouns(tagged, seed: int) -> Tuple[str, ...]:
    """The caption's nouns in a permutation seeded by ``seed`` and the example id."""
    nouns = extract_category(tagged, Category.NOUN)
    random.Random("%s:%s" % (seed, tagged.example_id)).shuffle(nouns)
    return tuple(nouns)


def blind_pipeline(system_captions: Mapping[str, Caption], references: Mapping[str, Sequence[Caption]],
                   tagger: TaggerModel, lm: Optional[NgramLM] = None,
                   config: GenerationConfig = GenerationConfig(), max_order: int = 4,
                   generator: Optional[Generator] = None) -> BlindResult:
    missing = sorted(set(system_captions) - set(references))
    if missing:
        raise ValueError("system caption ids without references: %s" % ", ".join(missing))
    if generator is None:
        if lm is None:
            raise ValueError("either lm or generator is required")

        def generator(nouns):
            return generate(lm, nouns, config)

    sources: Dict[str, Tuple[str, ...]] = {}
    generated: Dict[str, Caption] = {}
    degraded = []
    for example_id in sorted(system_captions):
        src = source_nouns(tag(tagger, system_captions[example_id]), config.seed)
        g = generator(src)
        sources[example_id] = src
        generated[example_id] = Caption(example_id, g.tokens)
        if not g.complete:
            degraded.append(example_id)
    system_report = score_pairs(system_captions, references, max_order)
    blind_report = score_pairs(generated, references, max_order)
    return BlindResult(system_report, blind_report, sources, generated, tuple(degraded))
