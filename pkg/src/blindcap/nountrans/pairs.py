"""Noun-set to caption training pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..postag.perceptron import TaggedCaption, extract_category
from ..postag.tagset import Category
from ..textcore import Caption, IngestionError


@dataclass(frozen=True)
class NounPair:
    source: Tuple[str, ...]
    target: Caption


def build_pairs(captions: Sequence[TaggedCaption], pairs_per_caption: int = 1, seed: int = 0) -> List[NounPair]:
    """For every caption emit ``pairs_per_caption`` pairs, each with its own shuffle of the nouns."""
    if pairs_per_caption < 1:
        raise ValueError("pairs_per_caption must be >= 1")
    rng = random.Random(seed)
    out = []
    for tagged in captions:
        nouns = extract_category(tagged, Category.NOUN)
        for _ in range(pairs_per_caption):
            src = list(nouns)
            rng.shuffle(src)
            out.append(NounPair(tuple(src), tagged.caption))
    return out


def format_pairs(pairs: Sequence[NounPair]) -> str:
    return "".join("%s\t%s\n" % (" ".join(p.source), p.target.text) for p in pairs)


def write_pairs(path, pairs: Sequence[NounPair]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_pairs(pairs))


def read_pairs(path) -> List[NounPair]:
    out = []
    with open(path, encoding="utf-8", newline="") as f:
        text = f.read()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if "\t" not in line:
            raise IngestionError("%s:%d: expected nouns<TAB>caption" % (path, lineno))
        src, tgt = line.split("\t", 1)
        out.append(NounPair(tuple(src.split()), Caption(str(lineno), tuple(tgt.split()))))
    return out
