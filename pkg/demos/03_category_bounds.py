"""
How much does each word category matter?
========================================

Replace one category by a mask token in the candidates only (the system
never gets it right) or in candidates and references (always right). The
two scores bracket the real one.
"""

from blindcap import desk
from blindcap.ablation import bounds_report, tag_corpus
from blindcap.postag import Category, train_tagger
from blindcap.textcore import Corpus

tagger = train_tagger(desk.tagged_sentences() + desk.train_sentences(), epochs=5, seed=0)
system, refs = desk.validation()
tagged = tag_corpus(tagger, Corpus.from_maps(system, refs))

cats = [Category.NOUN, Category.VERB, Category.ADJ, Category.PREP, Category.DET]
report = bounds_report(tagged, cats)

print("%-5s %5s %6s %6s %6s" % ("", "order", "lower", "system", "upper"))
for cat in cats:
    for n in range(1, 5):
        c = report.cell(cat, n)
        print("%-5s %5d %6.1f %6.1f %6.1f" % (cat.value, n, 100 * c.lower, 100 * c.system, 100 * c.upper))

# with several references, two-sided masking can pool clipped counts and
# land below the system score; those cells carry a warning
print(report.warnings())
