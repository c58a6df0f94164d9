from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blindcap import desk
from blindcap.postag import (
    COARSE_MAP,
    PENN_TAGS,
    Category,
    TaggedCaption,
    TaggerModel,
    accuracy,
    coarse,
    extract_category,
    format_conll,
    parse_conll,
    tag,
    train_tagger,
)
from blindcap.postag.perceptron import build_lexicon
from blindcap.textcore import Caption
from oracles import most_frequent_tag_accuracy

ONE = [[("the", "DT"), ("dog", "NN"), ("runs", "VBZ")]]


def test_single_sentence_fit():
    model = train_tagger(ONE, epochs=5, seed=1)
    tagged = tag(model, Caption("x", ("the", "dog", "runs")))
    assert tagged.tags == ("DT", "NN", "VBZ")
    assert tagged.categories == (Category.DET, Category.NOUN, Category.VERB)


def test_training_is_deterministic():
    sents = desk.tagged_sentences()[:20]
    a = train_tagger(sents, epochs=1, seed=3)
    b = train_tagger(sents, epochs=1, seed=3)
    assert a.weights == b.weights
    assert a.to_json() == b.to_json()
    c = train_tagger(sents, epochs=2, seed=4)
    assert c.to_json() != a.to_json()


def test_training_errors():
    with pytest.raises(ValueError, match="empty"):
        train_tagger([], epochs=1)
    with pytest.raises(ValueError, match="'XYZ'"):
        train_tagger([[("dog", "XYZ")]], epochs=1)
    with pytest.raises(ValueError, match="epochs"):
        train_tagger(ONE, epochs=0)


def test_tag_empty_and_lexicon():
    model = TaggerModel({}, ("DT", "NN"), {"the": "DT"})
    assert tag(model, Caption("e", ())).tokens == ()
    t = tag(model, Caption("x", ("the",)))
    assert t.tags == ("DT",) and t.categories == (Category.DET,)


def test_lexicon_admission():
    sents = [[("a", "DT"), ("run", "NN")]] * 5 + [[("run", "VB")], [("rare", "JJ")]]
    lex = build_lexicon(sents)
    assert lex == {"a": "DT"}


def test_model_json_round_trip(tmp_path):
    model = train_tagger(desk.tagged_sentences(), epochs=2, seed=0)
    model.save(tmp_path / "m.json")
    again = TaggerModel.load(tmp_path / "m.json")
    assert again.to_json() == model.to_json()
    assert again.model_id == model.model_id
    words = "a man riding a horse on the beach".split()
    assert again.tag_tokens(words) == model.tag_tokens(words)


def test_averaged_weights_finite():
    model = train_tagger(desk.tagged_sentences(), epochs=3, seed=0)
    assert all(abs(w) < 1e6 for row in model.weights.values() for w in row.values())


def test_extract_category():
    words = "a woman sitting at a table eating a plate of food".split()
    tags = "DT NN VBG IN DT NN VBG DT NN IN NN".split()
    t = TaggedCaption("1", words, tags)
    assert extract_category(t, Category.NOUN) == ["woman", "table", "plate", "food"]
    assert extract_category(t, Category.NUM) == []
    dup = TaggedCaption("2", "a dog and a dog".split(), "DT NN CC DT NN".split())
    assert extract_category(dup, Category.NOUN) == ["dog", "dog"]


def test_coarse_map():
    assert set(COARSE_MAP) == set(PENN_TAGS)
    assert coarse("TO") is Category.PREP
    assert coarse("PRP$") is Category.PRON
    assert coarse(".") is Category.OTHER
    assert coarse("MD") is Category.OTHER
    with pytest.raises(ValueError):
        coarse("nope")
    with pytest.raises(ValueError, match="NOUN, VERB"):
        Category.parse("XYZ")
    assert Category.parse("noun") is Category.NOUN


@given(st.lists(st.sampled_from(PENN_TAGS), max_size=12))
def test_coverage_partition(tags):
    t = TaggedCaption("p", ["w%d" % i for i in range(len(tags))], tags)
    assert sum(len(extract_category(t, c)) for c in Category) == len(t)


def conflict_free(sentences):
    seen = defaultdict(set)
    for s in sentences:
        for w, t in s:
            seen[w].add(t)
    return all(len(v) == 1 for v in seen.values())


def test_fit_conflict_free_corpus():
    sents = desk.tagged_sentences()[:10]
    assert conflict_free(sents)
    model = train_tagger(sents, epochs=5, seed=0)
    assert accuracy(model, sents) == 1.0


def test_held_out_beats_baseline():
    train, held = desk.split_tagged()
    model = train_tagger(train, epochs=5, seed=0)
    assert accuracy(model, held) > most_frequent_tag_accuracy(train, held)


def test_desk_tagger_on_worked_example(desk_tagger):
    t = tag(desk_tagger, Caption.from_text("1", "A woman sitting at a table eating a plate of food"))
    assert sorted(extract_category(t, Category.NOUN)) == sorted(["woman", "table", "plate", "food"])


def test_conll_round_trip():
    sents = [[("a", "DT"), ("dog", "NN")], [("runs", "VBZ")]]
    text = format_conll(sents)
    assert text == "a\tDT\ndog\tNN\n\nruns\tVBZ\n"
    assert parse_conll(text) == sents
    assert parse_conll("") == []
    with pytest.raises(ValueError, match=":2:"):
        parse_conll("a\tDT\nbad line\n")
