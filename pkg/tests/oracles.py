"""Independent reference computations used by the tests.

Nothing here imports the code under test; counts are found by sliding-window
comparison over plain lists.
"""

import math
import random
from collections import Counter, defaultdict
from fractions import Fraction


def occurrences(tokens, gram):
    n = len(gram)
    return sum(1 for i in range(len(tokens) - n + 1) if list(tokens[i:i + n]) == list(gram))


def brute_matches(cand, refs, n):
    types = []
    for i in range(len(cand) - n + 1):
        g = list(cand[i:i + n])
        if g not in types:
            types.append(g)
    total = 0
    for g in types:
        c = occurrences(cand, g)
        r = max(occurrences(ref, g) for ref in refs)
        total += min(c, r)
    return total


def brute_corpus(pairs, max_order):
    """pairs: list of (candidate tokens, [reference tokens]) -> dict of exact statistics."""
    matched = [0] * max_order
    total = [0] * max_order
    c = r = 0
    for cand, refs in pairs:
        for n in range(1, max_order + 1):
            matched[n - 1] += brute_matches(cand, refs, n)
            total[n - 1] += max(0, len(cand) - n + 1)
        c += len(cand)
        best = None
        for ref in refs:
            d = abs(len(ref) - len(cand))
            if best is None or d < best[0] or (d == best[0] and len(ref) < best[1]):
                best = (d, len(ref))
        r += best[1]
    precision = [Fraction(m, t) if t else Fraction(0) for m, t in zip(matched, total)]
    bp = 1.0 if c > r else math.exp(1 - r / c)
    bleu = []
    for n in range(1, max_order + 1):
        ps = precision[:n]
        if any(p == 0 for p in ps):
            bleu.append(0.0)
        else:
            bleu.append(bp * math.exp(sum(math.log(float(p)) for p in ps) / n))
    return {"matched": matched, "total": total, "c": c, "r": r, "precision": precision, "bp": bp, "bleu": bleu}


def random_corpus(rng: random.Random, vocab=10, max_len=8, max_refs=3, max_sents=5, min_len=1):
    words = ["w%d" % i for i in range(vocab)]
    pairs = []
    for _ in range(rng.randint(1, max_sents)):
        cand = [rng.choice(words) for _ in range(rng.randint(min_len, max_len))]
        refs = [[rng.choice(words) for _ in range(rng.randint(min_len, max_len))]
                for _ in range(rng.randint(1, max_refs))]
        pairs.append((cand, refs))
    return pairs


TAGS_BY_WORD = {
    # word -> Penn tag; a fixed toy lexicon for random tagged corpora
    "a": "DT", "the": "DT", "dog": "NN", "cat": "NN", "man": "NN", "ball": "NN",
    "runs": "VBZ", "sits": "VBZ", "eating": "VBG", "on": "IN", "with": "IN",
    "red": "JJ", "big": "JJ", "quickly": "RB", "and": "CC", "two": "CD",
}


def random_tagged_corpus(rng: random.Random, max_refs=3, max_sents=5, max_len=8):
    """Random (tokens, tags) corpus over a small lexicon with fixed tags."""
    words = sorted(TAGS_BY_WORD)

    def sent():
        toks = [rng.choice(words) for _ in range(rng.randint(1, max_len))]
        return toks, [TAGS_BY_WORD[w] for w in toks]

    return [(sent(), [sent() for _ in range(rng.randint(1, max_refs))]) for _ in range(rng.randint(1, max_sents))]


def lm_score(train, order, alpha, word, context):
    """Stupid-backoff score computed directly from raw padded sequences."""
    seqs = [["<s>"] * (order - 1) + list(t) + ["</s>"] for t in train]
    ctx = list(context)[-(order - 1):] if order > 1 else []
    factor = 1.0
    while ctx:
        k = len(ctx)
        num = den = 0
        for s in seqs:
            for i in range(order - 1, len(s)):
                if s[i - k:i] == ctx:
                    den += 1
                    if s[i] == word:
                        num += 1
        if num:
            return factor * num / den
        factor *= alpha
        ctx = ctx[1:]
    n_tokens = sum(len(s) - (order - 1) for s in seqs)
    vocab = {w for s in seqs for w in s} | {"<s>", "</s>"}
    count = sum(s[order - 1:].count(word) for s in seqs)
    return factor * (count + 1) / (n_tokens + len(vocab))


def most_frequent_tag_accuracy(train, test):
    seen = defaultdict(Counter)
    overall = Counter()
    for s in train:
        for w, t in s:
            seen[w][t] += 1
            overall[t] += 1
    default = overall.most_common(1)[0][0]
    right = total = 0
    for s in test:
        for w, t in s:
            guess = seen[w].most_common(1)[0][0] if w in seen else default
            right += guess == t
            total += 1
    return right / total
