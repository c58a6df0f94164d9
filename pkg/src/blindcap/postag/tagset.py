"""Penn Treebank tags and their collapse onto coarse word categories."""

from enum import Enum


class Category(str, Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PREP = "PREP"
    DET = "DET"
    PRON = "PRON"
    CONJ = "CONJ"
    NUM = "NUM"
    OTHER = "OTHER"

    @classmethod
    def parse(cls, name: str) -> "Category":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError("unknown category %r; valid: %s" % (name, ", ".join(c.value for c in cls))) from None


PENN_TAGS = (
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
    "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
    "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ",
    "WDT", "WP", "WP$", "WRB",
    ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "#", "$", "HYPH",
)

_COARSE = {
    "NN": Category.NOUN, "NNS": Category.NOUN, "NNP": Category.NOUN, "NNPS": Category.NOUN,
    "VB": Category.VERB, "VBD": Category.VERB, "VBG": Category.VERB,
    "VBN": Category.VERB, "VBP": Category.VERB, "VBZ": Category.VERB,
    "JJ": Category.ADJ, "JJR": Category.ADJ, "JJS": Category.ADJ,
    "RB": Category.ADV, "RBR": Category.ADV, "RBS": Category.ADV,
    # TO is merged into prepositions; infinitival "to" is rare in captions
    "IN": Category.PREP, "TO": Category.PREP,
    "DT": Category.DET, "PDT": Category.DET, "WDT": Category.DET,
    "PRP": Category.PRON, "PRP$": Category.PRON, "WP": Category.PRON, "WP$": Category.PRON,
    "CC": Category.CONJ,
    "CD": Category.NUM,
}

COARSE_MAP = {tag: _COARSE.get(tag, Category.OTHER) for tag in PENN_TAGS}


def is_valid_tag(tag: str) -> bool:
    return tag in COARSE_MAP


def coarse(tag: str) -> Category:
    try:
        return COARSE_MAP[tag]
    except KeyError:
        raise ValueError("unknown tag %r" % tag) from None
