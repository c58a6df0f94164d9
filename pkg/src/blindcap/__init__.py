"""Caption evaluation toolkit: clipped n-gram precision and BLEU, per-category
score bounds by token masking, and blind noun-to-caption generation."""

from .ablation import (
    DEFAULT_MASK,
    CategoryBoundsReport,
    MaskScope,
    TaggedCorpus,
    bound_scores,
    bounds_report,
    mask_category,
    tag_corpus,
)
from .metrics import (
    NgramCounts,
    PrecisionReport,
    clipped_matches,
    corpus_precision,
    extract_ngrams,
    report_table,
)
from .postag import Category, TaggedCaption, TaggerModel, extract_category, tag, train_tagger
from .textcore import (
    Caption,
    Corpus,
    IngestionError,
    TokenizeConfig,
    load_annotations_json,
    load_results_json,
    load_tsv,
    tokenize,
)

__version__ = "0.1.0"
