"""Tokenization, the caption/corpus data model and file ingestion.

Tokens are plain ``str`` objects with no whitespace. Three input formats
are supported:

* results JSON: ``[{"image_id": ..., "caption": ...}, ...]`` (one candidate per id)
* annotations JSON: ``{"annotations": [{"image_id": ..., "caption": ...}, ...]}``
* TSV: ``id<TAB>caption`` per line, repeated ids accumulate
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

PUNCTUATION = ".,;:!?\"'()"
_PUNCT_RE = re.compile("([" + re.escape(PUNCTUATION) + "])")

PathLike = Union[str, os.PathLike]


class IngestionError(ValueError):
    """Raised when an input file does not follow its format."""


@dataclass(frozen=True)
class TokenizeConfig:
    lowercase: bool = True
    split_punct: bool = True


DEFAULT_TOKENIZE = TokenizeConfig()


def tokenize(text: str, config: TokenizeConfig = DEFAULT_TOKENIZE) -> List[str]:
    if config.lowercase:
        text = text.lower()
    if config.split_punct:
        text = _PUNCT_RE.sub(r" \1 ", text)
    return text.split()


@dataclass(frozen=True)
class Caption:
    example_id: str
    tokens: Tuple[str, ...]

    def __post_init__(self):
        # accept lists for convenience, store a tuple
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    @classmethod
    def from_text(cls, example_id, text: str, config: TokenizeConfig = DEFAULT_TOKENIZE) -> "Caption":
        return cls(str(example_id), tuple(tokenize(text, config)))


@dataclass(frozen=True)
class Corpus:
    """Candidates paired with their references, keyed by example id."""

    candidates: Mapping[str, Caption]
    references: Mapping[str, Sequence[Caption]] = field(default_factory=dict)

    def __post_init__(self):
        missing = [i for i in self.candidates if not self.references.get(i)]
        if missing:
            raise ValueError("candidates without references: %s" % ", ".join(sorted(missing)))

    def __len__(self):
        return len(self.candidates)

    def ids(self) -> List[str]:
        return list(self.candidates)

    def pairs(self) -> Iterable[Tuple[Caption, Sequence[Caption]]]:
        for example_id, cand in self.candidates.items():
            yield cand, self.references[example_id]

    def vocabulary(self) -> set:
        vocab = set()
        for cand, refs in self.pairs():
            vocab.update(cand.tokens)
            for ref in refs:
                vocab.update(ref.tokens)
        return vocab

    @classmethod
    def from_maps(cls, candidates: Mapping[str, Caption], references: Mapping[str, Sequence[Caption]]) -> "Corpus":
        """Build a corpus restricted to candidate ids; unknown ids raise."""
        return cls(dict(candidates), {i: list(references.get(i, ())) for i in candidates})


def _normalize_id(value, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise IngestionError("%s: image_id must be an integer or string, got %r" % (where, value))
    return str(value)


def _make_caption(example_id: str, text, config: TokenizeConfig, allow_empty: bool, where: str) -> Caption:
    if not isinstance(text, str):
        raise IngestionError("%s: caption must be a string" % where)
    cap = Caption.from_text(example_id, text, config)
    if not cap.tokens and not allow_empty:
        raise IngestionError("%s: empty caption for id %s" % (where, example_id))
    return cap


def _read_json(path: PathLike):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise IngestionError("%s: malformed JSON: %s" % (path, e)) from e


def _records(items, path, allow_empty, config):
    for index, item in enumerate(items):
        where = "%s[%d]" % (path, index)
        if not isinstance(item, dict):
            raise IngestionError("%s: expected an object" % where)
        for key in ("image_id", "caption"):
            if key not in item:
                raise IngestionError("%s: missing field %r" % (where, key))
        example_id = _normalize_id(item["image_id"], where)
        yield example_id, _make_caption(example_id, item["caption"], config, allow_empty, where)


def load_results_json(path: PathLike, config: TokenizeConfig = DEFAULT_TOKENIZE,
                      allow_empty: bool = False) -> Dict[str, Caption]:
    """Load a results file (one generated caption per image id)."""
    data = _read_json(path)
    if not isinstance(data, list):
        raise IngestionError("%s: results file must be a JSON array" % path)
    out: Dict[str, Caption] = {}
    for example_id, cap in _records(data, path, allow_empty, config):
        if example_id in out:
            raise IngestionError("%s: duplicate image_id %s" % (path, example_id))
        out[example_id] = cap
    return out


def load_annotations_json(path: PathLike, config: TokenizeConfig = DEFAULT_TOKENIZE,
                          allow_empty: bool = False) -> Dict[str, List[Caption]]:
    """Load reference captions, grouped by image id in file order."""
    data = _read_json(path)
    if not isinstance(data, dict) or "annotations" not in data:
        raise IngestionError("%s: missing 'annotations' key" % path)
    if not isinstance(data["annotations"], list):
        raise IngestionError("%s: 'annotations' must be an array" % path)
    out: Dict[str, List[Caption]] = {}
    for example_id, cap in _records(data["annotations"], path, allow_empty, config):
        out.setdefault(example_id, []).append(cap)
    return out


def load_tsv(path: PathLike, config: TokenizeConfig = DEFAULT_TOKENIZE,
             allow_empty: bool = False) -> Dict[str, List[Caption]]:
    out: Dict[str, List[Caption]] = {}
    with open(path, encoding="utf-8", newline="") as f:
        text = f.read()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if "\t" not in line:
            raise IngestionError("%s:%d: expected id<TAB>caption" % (path, lineno))
        example_id, caption = line.split("\t", 1)
        where = "%s:%d" % (path, lineno)
        out.setdefault(example_id, []).append(_make_caption(example_id, caption, config, allow_empty, where))
    return out


def single_per_id(grouped: Mapping[str, Sequence[Caption]], source: str = "input") -> Dict[str, Caption]:
    """Collapse a grouped map into one caption per id, rejecting repeats."""
    out = {}
    for example_id, caps in grouped.items():
        if len(caps) != 1:
            raise IngestionError("%s: id %s has %d captions, expected one" % (source, example_id, len(caps)))
        out[example_id] = caps[0]
    return out


def write_tsv(path: PathLike, captions: Mapping[str, Union[Caption, Sequence[Caption]]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_tsv(captions))


def format_tsv(captions: Mapping[str, Union[Caption, Sequence[Caption]]]) -> str:
    lines = []
    for example_id, value in captions.items():
        caps = [value] if isinstance(value, Caption) else value
        for cap in caps:
            lines.append("%s\t%s\n" % (example_id, cap.text))
    return "".join(lines)
