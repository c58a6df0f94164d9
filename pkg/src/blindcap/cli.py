"""Command line interface.

Exit codes: 0 success, 1 runtime or data error, 2 usage error. Output files
are written atomically, so a failing run never leaves a partial report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Dict, List, Optional, Sequence

from . import desk
from .ablation import DEFAULT_MASK, bounds_report, tag_corpus
from .metrics import reports_to_csv, reports_to_json, score_pairs
from .nountrans import GenerationConfig, NgramLM, blind_pipeline, build_pairs, generate, train_lm
from .nountrans.pairs import format_pairs, read_pairs
from .postag import Category, TaggerModel, format_conll, read_conll, tag, train_tagger
from .textcore import (
    Caption,
    Corpus,
    TokenizeConfig,
    format_tsv,
    load_annotations_json,
    load_results_json,
    load_tsv,
    single_per_id,
    tokenize,
)

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def write_output(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _tok_config(args) -> TokenizeConfig:
    return TokenizeConfig(lowercase=args.lowercase, split_punct=args.split_punct)


def _load_candidates(path: str, config: TokenizeConfig) -> Dict[str, Caption]:
    if path.endswith(".json"):
        return load_results_json(path, config)
    return single_per_id(load_tsv(path, config), path)


def _load_references(path: str, config: TokenizeConfig) -> Dict[str, List[Caption]]:
    if path.endswith(".json"):
        return load_annotations_json(path, config)
    return load_tsv(path, config)


def _resolved(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _with_config_csv(config: dict, body: str) -> str:
    return "# config=%s\n%s" % (json.dumps(config, sort_keys=True), body)


def _category(name: str) -> Category:
    try:
        return Category.parse(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _gen_config(args) -> GenerationConfig:
    return GenerationConfig(beam_width=args.beam, max_length=args.max_length,
                            coverage_bonus=args.coverage_bonus, seed=args.seed,
                            banked=not args.single_beam)


def cmd_tag_train(args) -> int:
    sentences = []
    if args.desk:
        sentences += desk.tagged_sentences() + desk.train_sentences()
    for path in args.train or []:
        sentences += read_conll(path)
    if not sentences:
        raise UsageError("no training data: give --train and/or --desk")
    model = train_tagger(sentences, epochs=args.epochs, seed=args.seed)
    write_output(args.output, model.to_json())
    return EXIT_OK


def cmd_tag(args) -> int:
    model = TaggerModel.load(args.model)
    config = _tok_config(args)
    with open(args.input, encoding="utf-8") as f:
        lines = f.read().splitlines()
    sentences = []
    for line in lines:
        toks = tokenize(line, config)
        if toks:
            sentences.append(list(zip(toks, model.tag_tokens(toks))))
    write_output(args.output, format_conll(sentences))
    return EXIT_OK


def cmd_bleu(args) -> int:
    config = _tok_config(args)
    cands = _load_candidates(args.candidates, config)
    refs = _load_references(args.references, config)
    report = score_pairs(cands, refs, args.max_order)
    pairs = [(args.label, report)]
    if args.format == "csv":
        text = _with_config_csv(_resolved(args), reports_to_csv(pairs))
    else:
        text = reports_to_json(pairs, _resolved(args))
    write_output(args.output, text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    config = _tok_config(args)
    model = TaggerModel.load(args.model)
    cands = _load_candidates(args.candidates, config)
    refs = _load_references(args.references, config)
    missing = sorted(set(cands) - set(refs))
    if missing:
        raise ValueError("no references for ids: %s" % ", ".join(missing))
    categories = args.category or list(Category)
    report = bounds_report(tag_corpus(model, Corpus.from_maps(cands, refs)), categories,
                           args.max_order, args.mask_token)
    for cat, n, kind in report.warnings():
        print("warning: %s-%d %s upper bound below system score" % (kind, n, cat.value), file=sys.stderr)
    resolved = _resolved(args)
    resolved["category"] = [c.value for c in categories]
    if args.format == "csv":
        text = _with_config_csv(resolved, report.to_csv())
    else:
        text = report.to_json(resolved)
    write_output(args.output, text)
    return EXIT_OK


def cmd_nt_pairs(args) -> int:
    config = _tok_config(args)
    model = TaggerModel.load(args.model)
    grouped = load_tsv(args.captions, config)
    captions = [c for caps in grouped.values() for c in caps]
    tagged = [tag(model, c) for c in captions]
    pairs = build_pairs(tagged, args.pairs_per_caption, args.seed)
    write_output(args.output, format_pairs(pairs))
    return EXIT_OK


def _lm_from_args(args) -> NgramLM:
    if getattr(args, "lm", None):
        return NgramLM.load(args.lm)
    captions: List[Caption] = []
    if getattr(args, "pairs", None):
        captions += [p.target for p in read_pairs(args.pairs)]
    if getattr(args, "train_captions", None):
        grouped = load_tsv(args.train_captions, _tok_config(args))
        captions += [c for caps in grouped.values() for c in caps]
    if not captions:
        raise UsageError("no language model: give --lm, --pairs or --train-captions")
    return train_lm(captions, args.lm_order, args.backoff)


def cmd_nt_train(args) -> int:
    write_output(args.output, _lm_from_args(args).to_json())
    return EXIT_OK


def cmd_nt_generate(args) -> int:
    lm = NgramLM.load(args.lm)
    gen = _gen_config(args)
    with open(args.sources, encoding="utf-8") as f:
        lines = f.read().splitlines()
    out = {}
    for lineno, line in enumerate(lines, start=1):
        example_id, _, nouns = line.partition("\t") if "\t" in line else (str(lineno), "", line)
        g = generate(lm, nouns.split(), gen)
        if not g.complete:
            print("warning: %s: not every noun fits in %d tokens" % (example_id, gen.max_length), file=sys.stderr)
        out[example_id] = Caption(example_id, g.tokens)
    write_output(args.output, format_tsv(out))
    return EXIT_OK


def cmd_blind(args) -> int:
    config = _tok_config(args)
    model = TaggerModel.load(args.model)
    system = _load_candidates(args.system, config)
    refs = _load_references(args.references, config)
    lm = _lm_from_args(args)
    result = blind_pipeline(system, refs, model, lm, _gen_config(args), args.max_order)
    rows = [(args.system_label, result.system_report), (args.blind_label, result.blind_report)]
    resolved = _resolved(args)
    if args.format == "csv":
        text = _with_config_csv(resolved, reports_to_csv(rows))
    else:
        doc = json.loads(reports_to_json(rows, resolved))
        doc["table"] = result.table(args.system_label, args.blind_label)
        doc["gap"] = [round(g, 1) for g in result.gaps()]
        doc["degraded"] = list(result.degraded)
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.captions_output:
        write_output(args.captions_output, "".join(
            "%s\t%s\t%s\n" % (k, " ".join(result.sources[k]), c.text) for k, c in result.generated.items()))
    write_output(args.output, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blindcap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tokens=True, fmt=False):
        p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        if tokens:
            p.add_argument("--lowercase", action=argparse.BooleanOptionalAction, default=True)
            p.add_argument("--split-punct", action=argparse.BooleanOptionalAction, default=True)
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    def generator_knobs(p):
        p.add_argument("--beam", type=int, default=8)
        p.add_argument("--max-length", type=int, default=20)
        p.add_argument("--coverage-bonus", type=float, default=1.0)
        p.add_argument("--single-beam", action="store_true", help="one beam instead of one per coverage level")
        p.add_argument("--seed", type=int, default=0)

    def lm_knobs(p):
        p.add_argument("--lm-order", type=int, default=3)
        p.add_argument("--backoff", type=float, default=0.4)

    p = sub.add_parser("tag-train", help="train the part-of-speech tagger")
    p.add_argument("--train", action="append", help="CoNLL word<TAB>tag file (repeatable)")
    p.add_argument("--desk", action="store_true", help="include the bundled desk corpora")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    common(p, tokens=False)
    p.set_defaults(func=cmd_tag_train)

    p = sub.add_parser("tag", help="tag one caption per line")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    common(p)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("bleu", help="corpus clipped precision and BLEU")
    p.add_argument("--candidates", required=True)
    p.add_argument("--references", required=True)
    p.add_argument("--label", default="system")
    p.add_argument("--max-order", type=int, default=4)
    common(p, fmt=True)
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("bounds", help="per-category lower/upper bounds")
    p.add_argument("--candidates", required=True)
    p.add_argument("--references", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--category", action="append", type=_category)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--mask-token", default=DEFAULT_MASK)
    common(p, fmt=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("nt-pairs", help="build permuted noun -> caption pairs")
    p.add_argument("--captions", required=True, help="TSV id<TAB>caption")
    p.add_argument("--model", required=True)
    p.add_argument("--pairs-per-caption", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_nt_pairs)

    p = sub.add_parser("nt-train", help="train the caption language model")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pairs")
    src.add_argument("--train-captions")
    lm_knobs(p)
    common(p)
    p.set_defaults(func=cmd_nt_train)

    p = sub.add_parser("nt-generate", help="generate captions from noun lists")
    p.add_argument("--lm", required=True)
    p.add_argument("--sources", required=True, help="lines of nouns, optionally id<TAB>nouns")
    generator_knobs(p)
    common(p, tokens=False)
    p.set_defaults(func=cmd_nt_generate)

    p = sub.add_parser("blind", help="system vs blind noun translation comparison")
    p.add_argument("--system", required=True)
    p.add_argument("--references", required=True)
    p.add_argument("--model", required=True)
    lm_src = p.add_mutually_exclusive_group(required=True)
    lm_src.add_argument("--lm")
    lm_src.add_argument("--train-captions")
    lm_knobs(p)
    generator_knobs(p)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--system-label", default="Image captioning system")
    p.add_argument("--blind-label", default="Blind noun translation system")
    p.add_argument("--captions-output", help="write id<TAB>nouns<TAB>generated caption here")
    common(p, fmt=True)
    p.set_defaults(func=cmd_blind)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, KeyError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
