"""Bundled desk-scale data.

``desk_tagged.conll``
    sixty hand-tagged caption-style sentences (Penn tags).
``desk_train.conll``
    500 gold-tagged training captions from a toy scene grammar.
``desk_val_refs.tsv`` / ``desk_val_system.tsv``
    100 validation images with five references each, plus one imperfect
    system caption per image.

``tools/make_desk_corpus.py`` regenerates the last three files.
"""

from importlib import resources

from .postag.conll import parse_conll
from .textcore import load_tsv, single_per_id


def data_path(name):
    return resources.files("blindcap") / "data" / name


def tagged_sentences():
    return parse_conll(data_path("desk_tagged.conll").read_text("utf-8"), "desk_tagged.conll")


def train_sentences():
    return parse_conll(data_path("desk_train.conll").read_text("utf-8"), "desk_train.conll")


def validation():
    """Return ``(system captions by id, references by id)``."""
    with resources.as_file(data_path("desk_val_refs.tsv")) as p:
        refs = load_tsv(p)
    with resources.as_file(data_path("desk_val_system.tsv")) as p:
        system = single_per_id(load_tsv(p), "desk_val_system.tsv")
    return system, refs


def split_tagged():
    """Fixed train / held-out split of the hand-tagged sentences (3:1)."""
    sents = tagged_sentences()
    cut = len(sents) * 3 // 4
    return sents[:cut], sents[cut:]
