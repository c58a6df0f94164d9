"""
Captions from nouns alone
=========================

Keep only the nouns of each system caption, shuffle them, and let an n-gram
language model write a caption around them. If the result scores close to
the system, most of the n-gram credit comes from the language model.
"""

from blindcap import desk
from blindcap.nountrans import GenerationConfig, blind_pipeline, generate, train_lm
from blindcap.postag import train_tagger

tagger = train_tagger(desk.tagged_sentences() + desk.train_sentences(), epochs=5, seed=0)
lm = train_lm([[w for w, _ in s] for s in desk.train_sentences()], order=3)

# one generation by hand
g = generate(lm, ["dog", "frisbee", "park"], GenerationConfig(beam_width=8))
print(" ".join(g.tokens), "complete" if g.complete else "degraded")
# nouns the model rarely saw together still get placed, just not fluently
print(" ".join(generate(lm, ["table", "woman", "plate"]).tokens))

system, refs = desk.validation()
result = blind_pipeline(system, refs, tagger, lm, GenerationConfig(seed=0))
print(result.table())
print("gap per order (points):", ["%.1f" % x for x in result.gaps()])

for k in sorted(system)[:5]:
    print(k, "|", system[k].text, "|", " ".join(result.sources[k]), "->", result.generated[k].text)
