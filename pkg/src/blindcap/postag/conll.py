"""Two-column ``word<TAB>tag`` files with blank lines between sentences."""

from typing import Iterable, List, Sequence, Tuple

TaggedSentence = List[Tuple[str, str]]


def parse_conll(text: str, source: str = "<string>") -> List[TaggedSentence]:
    sentences: List[TaggedSentence] = []
    current: TaggedSentence = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ValueError("%s:%d: expected word<TAB>tag" % (source, lineno))
        current.append((parts[0], parts[1]))
    if current:
        sentences.append(current)
    return sentences


def read_conll(path) -> List[TaggedSentence]:
    with open(path, encoding="utf-8") as f:
        return parse_conll(f.read(), str(path))


def format_conll(sentences: Iterable[Sequence[Tuple[str, str]]]) -> str:
    blocks = []
    for sent in sentences:
        blocks.append("".join("%s\t%s\n" % (w, t) for w, t in sent))
    return "\n".join(blocks)


def write_conll(path, sentences) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_conll(sentences))
