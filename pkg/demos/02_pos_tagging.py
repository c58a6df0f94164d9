"""
Training the caption tagger
===========================

The bundled desk corpus has a few dozen hand-tagged captions and a few
hundred generated ones. We hold out a slice, train, and compare with the
most-frequent-tag baseline.
"""

from collections import Counter, defaultdict

from blindcap import desk
from blindcap.postag import Category, accuracy, extract_category, tag, train_tagger
from blindcap.textcore import Caption

train, held = desk.split_tagged()
model = train_tagger(train + desk.train_sentences(), epochs=5, seed=0)

# baseline: each word's most common tag, NN for unknown words
seen = defaultdict(Counter)
for sent in train + desk.train_sentences():
    for w, t in sent:
        seen[w][t] += 1
right = total = 0
for sent in held:
    for w, t in sent:
        right += (seen[w].most_common(1)[0][0] if w in seen else "NN") == t
        total += 1
print("held-out accuracy %.3f, baseline %.3f" % (accuracy(model, held), right / total))

t = tag(model, Caption.from_text("x", "A woman sitting at a table eating a plate of food"))
print(list(zip(t.tokens, t.tags)))
print("nouns:", extract_category(t, Category.NOUN))
print("model id", model.model_id)  # content hash, same seed gives the same id
