"""
Clipped n-gram precision by hand and by library
===============================================

A candidate that repeats a reference word cannot get credit for it more
often than the word appears in any single reference.
"""

from blindcap import Corpus, Caption, corpus_precision, report_table
from blindcap.metrics import extract_ngrams, clipped_matches

cand = Caption.from_text("1", "the cat the cat on the mat")
ref = Caption.from_text("1", "the cat is on the mat")

# unigrams: "the" occurs 3 times but only twice in the reference
for n in (1, 2):
    c = extract_ngrams(cand, n)
    print("order %d: %d of %d n-grams match" % (n, clipped_matches(c, [extract_ngrams(ref, n)]), c.total()))

# the corpus score pools counts over all captions before dividing
corpus = Corpus(
    {"1": cand, "2": Caption.from_text("2", "a dog runs in the park")},
    {"1": [ref], "2": [Caption.from_text("2", "a dog is running in a park"),
                       Caption.from_text("2", "the dog runs")]},
)
report = corpus_precision(corpus, max_order=4)
print(report.precision)  # exact fractions
print("brevity penalty %.4f, BLEU-4 %.4f" % (report.brevity_penalty, report.bleu[3]))
print(report_table([("toy system", report)]))
