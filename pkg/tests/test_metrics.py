import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blindcap.metrics import (
    PrecisionReport,
    clipped_matches,
    corpus_precision,
    extract_ngrams,
    percent,
    report_table,
    reports_to_csv,
    reports_to_json,
    table_row,
)
from blindcap.textcore import Caption, Corpus
from oracles import brute_corpus, random_corpus


def cap(text, i="1"):
    return Caption(i, tuple(text.split()))


def corpus_of(pairs):
    cands = {str(i): Caption(str(i), c) for i, (c, _) in enumerate(pairs)}
    refs = {str(i): [Caption(str(i), r) for r in rs] for i, (_, rs) in enumerate(pairs)}
    return Corpus(cands, refs)


def test_extract_ngrams():
    toks = cap("a dog runs")
    assert extract_ngrams(toks, 1).counts == {("a",): 1, ("dog",): 1, ("runs",): 1}
    assert extract_ngrams(toks, 2).counts == {("a", "dog"): 1, ("dog", "runs"): 1}
    assert extract_ngrams(cap("a dog"), 3).counts == {}
    with pytest.raises(ValueError):
        extract_ngrams(toks, 0)


def test_clipped_matches_cat_fixture():
    cand = cap("the cat the cat on the mat")
    ref = cap("the cat is on the mat")
    # hand count: the min(3,2)=2, cat min(2,1)=1, on 1, mat 1
    assert clipped_matches(extract_ngrams(cand, 1), [extract_ngrams(ref, 1)]) == 5
    # "the cat" clipped to 1, "on the", "the mat"; "cat the", "cat on" unmatched
    assert clipped_matches(extract_ngrams(cand, 2), [extract_ngrams(ref, 2)]) == 3
    assert extract_ngrams(cand, 2).total() == 6
    for n in range(1, 5):
        c = extract_ngrams(ref, n)
        assert clipped_matches(c, [c]) == c.total()


def test_clipped_matches_errors():
    with pytest.raises(ValueError, match="order mismatch"):
        clipped_matches(extract_ngrams(cap("a b"), 1), [extract_ngrams(cap("a b"), 2)])
    with pytest.raises(ValueError):
        clipped_matches(extract_ngrams(cap("a b"), 1), [])


def test_identity_and_disjoint():
    same = corpus_of([("a dog runs on grass".split(), ["a dog runs on grass".split()])])
    rep = corpus_precision(same)
    assert rep.precision == (1, 1, 1, 1)
    assert rep.bleu == (1.0, 1.0, 1.0, 1.0)
    disjoint = corpus_of([("a b c".split(), ["x y z".split(), "u v".split()])])
    rep = corpus_precision(disjoint)
    assert rep.precision[0] == 0
    assert rep.bleu == (0.0, 0.0, 0.0, 0.0)


def test_brevity_penalty_closed_form():
    rep = corpus_precision(corpus_of([("a b c".split(), ["a b c d e f".split()])]), 1)
    assert rep.candidate_length == 3 and rep.effective_reference_length == 6
    assert rep.brevity_penalty == pytest.approx(math.exp(-1), abs=1e-12)
    assert rep.precision[0] == 1
    assert rep.bleu[0] == pytest.approx(0.367879, abs=1e-6)


def test_closest_reference_ties_to_shorter():
    # candidate length 4, refs of length 3 and 5: both at distance 1, pick 3
    rep = corpus_precision(corpus_of([("a b c d".split(), ["a b c d e".split(), "a b c".split()])]), 1)
    assert rep.effective_reference_length == 3
    assert rep.brevity_penalty == 1.0


def test_empty_candidate_rejected():
    corpus = Corpus({"1": Caption("1", ())}, {"1": [cap("a")]})
    with pytest.raises(ValueError, match="empty candidate"):
        corpus_precision(corpus)


def test_bleu_composition():
    rep = PrecisionReport(4, (6, 3, 1, 1), (8, 6, 4, 2), 8, 9)
    bp = math.exp(1 - 9 / 8)
    expected = [bp * math.exp(sum(math.log(p) for p in [6 / 8, 3 / 6, 1 / 4, 1 / 2][:n]) / n) for n in range(1, 5)]
    assert rep.bleu == pytest.approx(expected, rel=1e-12)
    assert PrecisionReport(2, (1, 0), (2, 1), 2, 2).bleu == (0.5, 0.0)


def test_precision_need_not_decrease_with_order():
    # clipping lets a higher order beat a lower one, even in one sentence
    rep = corpus_precision(corpus_of([("w2 w0 w0 w2".split(), ["w0 w2 w0 w0".split()])]))
    assert rep.precision[:2] == (Fraction(3, 4), Fraction(1))


def test_random_oracle_equivalence():
    rng = random.Random(1234)
    for _ in range(300):
        pairs = random_corpus(rng)
        rep = corpus_precision(corpus_of(pairs))
        ref = brute_corpus(pairs, 4)
        assert list(rep.matched) == ref["matched"]
        assert list(rep.total) == ref["total"]
        assert rep.candidate_length == ref["c"] and rep.effective_reference_length == ref["r"]
        assert list(rep.precision) == ref["precision"]
        assert rep.brevity_penalty == pytest.approx(ref["bp"], abs=1e-12)
        assert rep.bleu == pytest.approx(ref["bleu"], abs=1e-12)


corpora = st.integers(0, 2**32 - 1).map(lambda s: random_corpus(random.Random(s)))


@settings(max_examples=150, deadline=None)
@given(corpora, st.randoms(use_true_random=False))
def test_sentence_order_invariance(pairs, rnd):
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    assert corpus_precision(corpus_of(pairs)) == corpus_precision(corpus_of(shuffled))


@settings(max_examples=150, deadline=None)
@given(corpora, st.data())
def test_adding_reference_never_reduces_matches(pairs, data):
    i = data.draw(st.integers(0, len(pairs) - 1))
    extra = data.draw(st.lists(st.sampled_from(["w%d" % k for k in range(10)]), min_size=1, max_size=8))
    more = list(pairs)
    more[i] = (pairs[i][0], pairs[i][1] + [extra])
    a, b = corpus_precision(corpus_of(pairs)), corpus_precision(corpus_of(more))
    assert all(y >= x for x, y in zip(a.matched, b.matched))


@settings(max_examples=150, deadline=None)
@given(corpora, st.data())
def test_deleting_matching_token_never_increases_unigram_matches(pairs, data):
    i = data.draw(st.integers(0, len(pairs) - 1))
    cand, refs = pairs[i]
    ref_vocab = {w for r in refs for w in r}
    positions = [j for j, w in enumerate(cand) if w in ref_vocab]
    if not positions or len(cand) == 1:
        return
    j = data.draw(st.sampled_from(positions))
    damaged = list(pairs)
    damaged[i] = (cand[:j] + cand[j + 1:], refs)
    assert corpus_precision(corpus_of(damaged)).matched[0] <= corpus_precision(corpus_of(pairs)).matched[0]


@settings(max_examples=200, deadline=None)
@given(corpora)
def test_brevity_penalty_property(pairs):
    rep = corpus_precision(corpus_of(pairs))
    assert all(0 <= m <= t for m, t in zip(rep.matched, rep.total))
    if rep.candidate_length >= rep.effective_reference_length:
        assert rep.brevity_penalty == 1.0
    else:
        assert 0 < rep.brevity_penalty < 1.0


def test_percent_rounds_half_up():
    assert str(percent(Fraction(5, 7))) == "71.4"
    assert str(percent(Fraction(1, 16))) == "6.3"
    assert str(percent(Fraction(2, 3))) == "66.7"
    assert str(percent(1.0)) == "100.0"


@pytest.mark.parametrize("values,row", [
    ((Fraction(631, 1000), Fraction(352, 1000), Fraction(177, 1000), Fraction(93, 1000)), "63.1 35.2 17.7 9.3"),
    ((Fraction(619, 1000), Fraction(320, 1000), Fraction(157, 1000), Fraction(82, 1000)), "61.9 32.0 15.7 8.2"),
    ((Fraction(1), Fraction(1), Fraction(1), Fraction(1)), "100.0 100.0 100.0 100.0"),
])
def test_table_rows(values, row):
    rep = PrecisionReport(4, tuple(v.numerator for v in values), tuple(v.denominator for v in values), 10, 10)
    assert table_row(rep) == row
    table = report_table([("Model A", rep)])
    assert table.splitlines()[0].split() == ["Model", "P-1", "P-2", "P-3", "P-4"]
    assert table.splitlines()[1].split()[2:] == row.split()


def test_report_emission():
    rep = corpus_precision(corpus_of([("the cat the cat on the mat".split(), ["the cat is on the mat".split()])]))
    js = reports_to_json([("sys", rep)], {"max_order": 4})
    assert '"p": [\n        71.4,\n        50.0' in js
    assert '"config"' in js
    rows = reports_to_csv([("sys", rep)]).splitlines()
    assert rows[0].startswith("label,p1,p2,p3,p4,bleu1")
    assert rows[1].startswith("sys,71.4,50.0")
    with pytest.raises(ValueError):
        report_table([])
