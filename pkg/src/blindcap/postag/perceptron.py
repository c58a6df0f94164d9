"""Greedy averaged-perceptron part-of-speech tagger.

Decoding is left to right; each token is scored from local features plus
the two previously predicted tags. Training follows the usual averaged
perceptron recipe: weights are updated on mistakes and the final model
keeps each weight's average over all update steps.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..textcore import Caption
from .tagset import Category, coarse, is_valid_tag

START = ("-START-", "-START2-")
END = ("-END-", "-END2-")

# lexicon admission: frequent and never seen with a second tag
LEXICON_MIN_COUNT = 5


def features(i: int, words: Sequence[str], prev: str, prev2: str) -> List[str]:
    word = words[i]
    low = word.lower()
    prev_word = words[i - 1].lower() if i > 0 else START[0]
    next_word = words[i + 1].lower() if i + 1 < len(words) else END[0]
    feats = [
        "bias",
        "w=" + word,
        "lw=" + low,
        "s1=" + low[-1:],
        "s2=" + low[-2:],
        "s3=" + low[-3:],
        "p1=" + low[:1],
        "t-1=" + prev,
        "t-2,t-1=" + prev2 + "," + prev,
        "w-1=" + prev_word,
        "w+1=" + next_word,
    ]
    if word[:1].isupper():
        feats.append("cap")
    if any(ch.isdigit() for ch in word):
        feats.append("digit")
    return feats


@dataclass(frozen=True)
class TaggedCaption:
    example_id: str
    tokens: Tuple[str, ...]
    tags: Tuple[str, ...]
    tagger_id: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.tokens) != len(self.tags):
            raise ValueError("tokens and tags differ in length")

    def __len__(self):
        return len(self.tokens)

    @property
    def categories(self) -> Tuple[Category, ...]:
        return tuple(coarse(t) for t in self.tags)

    @property
    def caption(self) -> Caption:
        return Caption(self.example_id, self.tokens)


@dataclass
class TaggerModel:
    weights: Dict[str, Dict[str, float]]
    tag_set: Tuple[str, ...]
    lexicon: Dict[str, str]
    metadata: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "weights": self.weights,
            "tag_set": list(self.tag_set),
            "lexicon": self.lexicon,
            "metadata": self.metadata,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TaggerModel":
        doc = json.loads(text)
        try:
            return cls(doc["weights"], tuple(doc["tag_set"]), doc["lexicon"], doc.get("metadata", {}))
        except (KeyError, TypeError) as e:
            raise ValueError("not a tagger model: %s" % e) from None

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.to_json())

    @classmethod
    def load(cls, path) -> "TaggerModel":
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())

    @cached_property
    def model_id(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()[:16]

    def predict(self, feats: Sequence[str]) -> str:
        scores = dict.fromkeys(self.tag_set, 0.0)
        weights = self.weights
        for f in feats:
            row = weights.get(f)
            if row:
                for t, w in row.items():
                    scores[t] += w
        return max(self.tag_set, key=lambda t: (scores[t], t))

    def tag_tokens(self, words: Sequence[str]) -> List[str]:
        prev, prev2 = START
        out = []
        for i, word in enumerate(words):
            t = self.lexicon.get(word)
            if t is None:
                t = self.predict(features(i, words, prev, prev2))
            out.append(t)
            prev2, prev = prev, t
        return out


class _Trainer:
    """Mutable weights with the lazy-averaging bookkeeping."""

    def __init__(self, tag_set):
        self.tag_set = tag_set
        self.weights = defaultdict(dict)
        self.totals = defaultdict(float)
        self.stamps = defaultdict(int)
        self.step = 0

    def predict(self, feats):
        scores = dict.fromkeys(self.tag_set, 0.0)
        for f in feats:
            row = self.weights.get(f)
            if row:
                for t, w in row.items():
                    scores[t] += w
        return max(self.tag_set, key=lambda t: (scores[t], t))

    def _bump(self, f, t, delta):
        key = (f, t)
        w = self.weights[f].get(t, 0.0)
        self.totals[key] += (self.step - self.stamps[key]) * w
        self.stamps[key] = self.step
        self.weights[f][t] = w + delta

    def update(self, truth, guess, feats):
        self.step += 1
        if truth == guess:
            return
        for f in feats:
            self._bump(f, truth, 1.0)
            self._bump(f, guess, -1.0)

    def averaged(self) -> Dict[str, Dict[str, float]]:
        out: Dict[str, Dict[str, float]] = {}
        for f in sorted(self.weights):
            row = {}
            for t in sorted(self.weights[f]):
                key = (f, t)
                total = self.totals[key] + (self.step - self.stamps[key]) * self.weights[f][t]
                avg = total / self.step if self.step else 0.0
                if avg != 0.0:
                    row[t] = avg
            if row:
                out[f] = row
        return out


def build_lexicon(sentences: Sequence[Sequence[Tuple[str, str]]], min_count: int = LEXICON_MIN_COUNT) -> Dict[str, str]:
    seen: Dict[str, Counter] = defaultdict(Counter)
    for sent in sentences:
        for word, t in sent:
            seen[word][t] += 1
    lexicon = {}
    for word, tags in seen.items():
        if len(tags) == 1 and sum(tags.values()) >= min_count:
            lexicon[word] = next(iter(tags))
    return dict(sorted(lexicon.items()))


def train_tagger(sentences: Sequence[Sequence[Tuple[str, str]]], epochs: int = 5, seed: int = 0) -> TaggerModel:
    """Train on ``[(word, tag), ...]`` sentences; identical inputs give identical models."""
    if not sentences or not any(sentences):
        raise ValueError("empty training corpus")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    tags = set()
    for sent in sentences:
        for word, t in sent:
            if not is_valid_tag(t):
                raise ValueError("unknown tag label %r (word %r)" % (t, word))
            tags.add(t)
    tag_set = tuple(sorted(tags))
    lexicon = build_lexicon(sentences)
    trainer = _Trainer(tag_set)
    order = list(range(len(sentences)))
    rng = random.Random(seed)
    for _ in range(epochs):
        rng.shuffle(order)
        for idx in order:
            sent = sentences[idx]
            words = [w for w, _ in sent]
            prev, prev2 = START
            for i, (word, truth) in enumerate(sent):
                guess = lexicon.get(word)
                if guess is None:
                    feats = features(i, words, prev, prev2)
                    guess = trainer.predict(feats)
                    trainer.update(truth, guess, feats)
                prev2, prev = prev, guess
    metadata = {
        "epochs": epochs,
        "seed": seed,
        "training_size": len(sentences),
        "training_tokens": sum(len(s) for s in sentences),
    }
    return TaggerModel(trainer.averaged(), tag_set, lexicon, metadata)


def tag(model: TaggerModel, caption: Caption) -> TaggedCaption:
    tags = model.tag_tokens(caption.tokens) if caption.tokens else []
    return TaggedCaption(caption.example_id, caption.tokens, tags, model.model_id)


def tag_many(model: TaggerModel, captions: Mapping[str, Caption]) -> Dict[str, TaggedCaption]:
    mid = model.model_id
    return {k: TaggedCaption(c.example_id, c.tokens, model.tag_tokens(c.tokens), mid) for k, c in captions.items()}


def extract_category(tagged: TaggedCaption, category: Category) -> List[str]:
    return [w for w, c in zip(tagged.tokens, tagged.categories) if c == category]


def accuracy(model: TaggerModel, sentences: Sequence[Sequence[Tuple[str, str]]]) -> float:
    right = total = 0
    for sent in sentences:
        guess = model.tag_tokens([w for w, _ in sent])
        right += sum(g == t for g, (_, t) in zip(guess, sent))
        total += len(sent)
    return right / total if total else 0.0
