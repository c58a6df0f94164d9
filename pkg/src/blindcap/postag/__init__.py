from .conll import format_conll, parse_conll, read_conll, write_conll
from .perceptron import (
    TaggedCaption,
    TaggerModel,
    accuracy,
    extract_category,
    tag,
    tag_many,
    train_tagger,
)
from .tagset import COARSE_MAP, PENN_TAGS, Category, coarse

__all__ = [
    "COARSE_MAP", "PENN_TAGS", "Category", "TaggedCaption", "TaggerModel",
    "accuracy", "coarse", "extract_category", "format_conll", "parse_conll",
    "read_conll", "tag", "tag_many", "train_tagger", "write_conll",
]
