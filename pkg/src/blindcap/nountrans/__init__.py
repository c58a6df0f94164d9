from .beam import Generation, GenerationConfig, generate
from .lm import BOS, EOS, NgramLM, train_lm
from .pairs import NounPair, build_pairs, read_pairs, write_pairs
from .pipeline import BlindResult, blind_pipeline, source_nouns

__all__ = [
    "BOS", "EOS", "BlindResult", "Generation", "GenerationConfig", "NgramLM",
    "NounPair", "blind_pipeline", "build_pairs", "generate", "read_pairs",
    "source_nouns", "train_lm", "write_pairs",
]
