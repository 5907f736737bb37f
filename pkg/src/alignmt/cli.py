"""Command-line pipeline: align, evaluate, split, train, translate, score.

    alignmt align           passage JSONL -> sentence-aligned JSONL (+ audit)
    alignmt eval-align      score predicted block files against gold blocks
    alignmt split           split a sentence-aligned corpus into train/dev/test
    alignmt stats           vocabulary size and OOV rate per side
    alignmt train-loglinear fit the log-linear block scorer on gold alignments
    alignmt train           train the character-level translator
    alignmt translate       decode a file of sentences with a checkpoint
    alignmt eval-bleu       corpus BLEU of a hypothesis file vs a reference

Every command that writes a primary output also writes a JSON run manifest
next to it (``<output>.manifest.json``). Outputs are byte-identical across
re-runs with the same inputs, flags and seed; manifests differ only in their
timestamp. Exit codes: 2 I/O trouble, 3 format trouble, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .align_eval import prf1, mean_scores
from .bleu import bleu_corpus
from .corpus import (
    DEFAULT_DELIMITERS,
    PassagePair,
    load_passage_pairs,
    load_sentence_pairs,
    save_sentence_pairs,
    split_dataset,
    split_sentences,
    vocab_stats,
)
from .dp_align import (
    AlignConfig,
    AlignmentBlock,
    AlignmentResult,
    align_dp,
    sentence_pairs_from_result,
)
from .errors import AlignmentError, FormatError, NumericError
from .loglinear import LogLinearModel, align_loglinear, train_loglinear
from .nmt import (
    Seq2SeqConfig,
    load_checkpoint,
    save_checkpoint,
    train,
    translate,
)


@dataclass
class RunManifest:
    command: str
    config: dict
    inputs: list[str]
    outputs: list[str]
    seed: int | None
    version: str
    timestamp: str

    def write(self, primary_output: str) -> None:
        path = Path(str(primary_output) + ".manifest.json")
        path.write_text(
            json.dumps(asdict(self), ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )


def _manifest(args, inputs, outputs) -> RunManifest:
    config = {
        k: v for k, v in sorted(vars(args).items()) if k not in {"func"} and not k.startswith("_")
    }
    return RunManifest(
        command=args.command,
        config=config,
        inputs=[str(p) for p in inputs],
        outputs=[str(p) for p in outputs],
        seed=getattr(args, "seed", None),
        version=__version__,
        timestamp=time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    )


def _load_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"{path}: line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


# ---------------------------------------------------------------------------
# block (audit) files: one JSON object per passage

def write_block_file(path, entries: list[tuple[str, AlignmentResult]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for passage_id, result in entries:
            fh.write(
                json.dumps(
                    {
                        "id": passage_id,
                        "blocks": [
                            {"src": list(b.src_range), "tgt": list(b.tgt_range), "score": b.score}
                            for b in result.blocks
                        ],
                        "total_score": result.total_score,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )


def load_block_file(path) -> dict[str, AlignmentResult]:
    out: dict[str, AlignmentResult] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                blocks = [
                    AlignmentBlock(tuple(b["src"]), tuple(b["tgt"]), b.get("score", 0))
                    for b in obj["blocks"]
                ]
                out[str(obj["id"])] = AlignmentResult(blocks, obj.get("total_score", 0))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise FormatError(f"{path}: line {lineno}: bad block record ({exc})") from exc
    return out


# ---------------------------------------------------------------------------
# commands

def _resplit(pair: PassagePair, delimiters: str) -> PassagePair:
    delims = frozenset(delimiters)
    return PassagePair(
        pair.id,
        split_sentences("".join(pair.src_sentences), delims),
        split_sentences("".join(pair.tgt_sentences), delims),
    )


def cmd_align(args) -> int:
    pairs = load_passage_pairs(args.input)
    if args.delimiters:
        pairs = [_resplit(p, args.delimiters) for p in pairs]
    cfg = AlignConfig(max_group=args.max_group, allow_null_blocks=args.allow_null)
    if args.loglinear_model:
        model = LogLinearModel.load(args.loglinear_model)
        aligner = lambda pair, c: align_loglinear(pair, model, c)
    else:
        aligner = align_dp
    failures: list[str] = []

    def align_one(pair: PassagePair):
        try:
            return pair.id, aligner(pair, cfg)
        except (AlignmentError, ValueError) as exc:
            failures.append(f"{pair.id}: {exc}")
            return pair.id, None

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(align_one, pairs))
    else:
        results = [align_one(p) for p in pairs]

    sentence_pairs = []
    audit_entries = []
    for (passage_id, result), pair in zip(results, pairs):
        if result is None:
            continue
        sentence_pairs.extend(sentence_pairs_from_result(pair, result))
        audit_entries.append((passage_id, result))

    save_sentence_pairs(args.output, sentence_pairs)
    outputs = [args.output]
    if args.audit:
        write_block_file(args.audit, audit_entries)
        outputs.append(args.audit)
    _manifest(args, [args.input], outputs).write(args.output)
    for message in failures:
        print(f"skipped passage {message}", file=sys.stderr)
    print(f"aligned {len(audit_entries)}/{len(pairs)} passages -> {len(sentence_pairs)} sentence pairs")
    return 0


def cmd_eval_align(args) -> int:
    pred = load_block_file(args.pred)
    gold = load_block_file(args.gold)
    missing = sorted(set(gold) - set(pred))
    if missing:
        # an unaligned passage still counts: it scores zero
        print(f"warning: no predictions for {len(missing)} passage(s)", file=sys.stderr)
    empty = AlignmentResult([], 0)
    scores = [prf1(pred.get(pid, empty), gold[pid]) for pid in sorted(gold)]
    mean = mean_scores(scores)
    report = {"passages": len(scores), **mean.as_dict()}
    text = json.dumps(report, sort_keys=True)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        _manifest(args, [args.pred, args.gold], [args.output]).write(args.output)
    return 0


def cmd_split(args) -> int:
    pairs = load_sentence_pairs(args.input)
    try:
        ratios = tuple(float(x) for x in args.ratios.split(","))
    except ValueError as exc:
        raise FormatError(f"bad --ratios {args.ratios!r}: {exc}") from exc
    if len(ratios) != 3:
        raise FormatError("--ratios needs three comma-separated numbers")
    train_split, dev_split, test_split = split_dataset(pairs, ratios, args.seed)
    outputs = []
    for name, subset in (("train", train_split), ("dev", dev_split), ("test", test_split)):
        path = f"{args.out_prefix}.{name}.jsonl"
        save_sentence_pairs(path, subset)
        outputs.append(path)
    _manifest(args, [args.input], outputs).write(outputs[0])
    print(
        f"split {len(pairs)} pairs into "
        f"{len(train_split)}/{len(dev_split)}/{len(test_split)}"
    )
    return 0


def cmd_stats(args) -> int:
    train_pairs = load_sentence_pairs(args.train)
    eval_pairs = load_sentence_pairs(args.eval)
    report = {
        "src": vocab_stats([p.src for p in train_pairs], [p.src for p in eval_pairs]),
        "tgt": vocab_stats([p.tgt for p in train_pairs], [p.tgt for p in eval_pairs]),
    }
    text = json.dumps(report, sort_keys=True)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        _manifest(args, [args.train, args.eval], [args.output]).write(args.output)
    return 0


def cmd_train_loglinear(args) -> int:
    passages = {p.id: p for p in load_passage_pairs(args.passages)}
    blocks = load_block_file(args.blocks)
    missing = sorted(set(blocks) - set(passages))
    if missing:
        raise FormatError(f"block file references unknown passages: {', '.join(missing[:5])}")
    gold = [(passages[pid], blocks[pid]) for pid in sorted(blocks)]
    cfg = AlignConfig(max_group=args.max_group)
    model = train_loglinear(gold, cfg, seed=args.seed)
    model.save(args.output)
    _manifest(args, [args.passages, args.blocks], [args.output]).write(args.output)
    print(f"trained log-linear model on {len(gold)} passages -> {args.output}")
    return 0


def cmd_train(args) -> int:
    pairs = load_sentence_pairs(args.input)
    if args.direction == "c2a":
        pairs = [type(p)(p.tgt, p.src) for p in pairs]
    if args.limit is not None:
        pairs = pairs[: args.limit]
    if not pairs:
        raise FormatError("no training pairs after applying --direction/--limit")
    config = Seq2SeqConfig(
        embed_dim=args.embed_dim,
        hidden_dim=args.hidden_dim,
        attn_window=args.window,
        max_decode_len=args.max_decode_len,
        use_copy=not args.no_copy,
        use_local_attention=not args.global_attention,
    )
    result = train(
        pairs,
        config,
        lr=args.lr,
        batch_size=args.batch,
        epochs=args.epochs,
        seed=args.seed,
        clip=args.clip,
    )
    save_checkpoint(args.output, result.params, result.config, result.vocab)
    log_path = f"{args.output}.log.csv"
    with open(log_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "step", "loss"])
        for row in result.history:
            writer.writerow([row["epoch"], row["step"], f"{row['loss']:.6f}"])
    _manifest(args, [args.input], [args.output, log_path]).write(args.output)
    print(f"trained {args.epochs} epochs on {len(pairs)} pairs; final loss {result.history[-1]['loss']:.4f}")
    return 0


def cmd_translate(args) -> int:
    params, config, vocab = load_checkpoint(args.checkpoint)
    lines = Path(args.input).read_text(encoding="utf-8").splitlines()
    out_lines = []
    for line in lines:
        if not line:
            out_lines.append("")
            continue
        out_lines.append(
            translate(line, params, config, vocab, mode=args.mode, beam_size=args.beam_size)
        )
    Path(args.output).write_text("\n".join(out_lines) + "\n", encoding="utf-8")
    _manifest(args, [args.checkpoint, args.input], [args.output]).write(args.output)
    print(f"translated {len(lines)} lines -> {args.output}")
    return 0


def cmd_eval_bleu(args) -> int:
    hyps = Path(args.hyp).read_text(encoding="utf-8").splitlines()
    refs = Path(args.ref).read_text(encoding="utf-8").splitlines()
    report = bleu_corpus(hyps, refs, tokens=args.tokens)
    if args.signature:
        print(report.signature())
    text = json.dumps(report.as_dict(), sort_keys=True)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        _manifest(args, [args.hyp, args.ref], [args.output]).write(args.output)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alignmt",
        description="Sentence alignment and character-level translation pipeline.",
    )
    parser.add_argument("--config", help="flat key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed_default=0):
        p.add_argument("--seed", type=int, default=seed_default, help="random seed")
        p.add_argument("--threads", type=int, default=1, help="worker threads where supported")

    p = sub.add_parser("align", help="align a passage-aligned corpus into sentence pairs")
    p.add_argument("-i", "--input", required=True, help="passage-aligned JSONL")
    p.add_argument("-o", "--output", required=True, help="sentence-aligned JSONL to write")
    p.add_argument("--max-group", type=int, default=5, help="max sentences per side of a block")
    p.add_argument("--allow-null", action="store_true", help="permit unmatched 1:0/0:1 blocks")
    p.add_argument("--audit", help="also write per-passage block ranges and scores (JSONL)")
    p.add_argument(
        "--delimiters",
        help=f"re-split each side on these clause delimiters (default: keep input; "
        f"standard set is {''.join(sorted(DEFAULT_DELIMITERS))})",
    )
    p.add_argument("--loglinear-model",
                   help="score blocks with a trained log-linear model instead of LCS sums")
    add_common(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("eval-align", help="precision/recall/F1 of predicted vs gold blocks")
    p.add_argument("pred", help="predicted block JSONL (audit format)")
    p.add_argument("gold", help="gold block JSONL (audit format)")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    add_common(p)
    p.set_defaults(func=cmd_eval_align)

    p = sub.add_parser("split", help="split a sentence-aligned corpus into train/dev/test")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--ratios", default="0.8,0.1,0.1", help="train,dev,test fractions summing to 1")
    p.add_argument("--out-prefix", required=True, help="writes <prefix>.{train,dev,test}.jsonl")
    add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("stats", help="vocabulary size and OOV rate per side")
    p.add_argument("--train", required=True, help="training sentence-aligned JSONL")
    p.add_argument("--eval", required=True, help="evaluation sentence-aligned JSONL")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train-loglinear", help="fit the log-linear block scorer on gold data")
    p.add_argument("--passages", required=True, help="passage-aligned JSONL")
    p.add_argument("--blocks", required=True, help="gold block JSONL (audit format)")
    p.add_argument("-o", "--output", required=True, help="model JSON to write")
    p.add_argument("--max-group", type=int, default=5)
    add_common(p)
    p.set_defaults(func=cmd_train_loglinear)

    p = sub.add_parser("train", help="train the character-level translator")
    p.add_argument("-i", "--input", required=True, help="sentence-aligned JSONL")
    p.add_argument("-o", "--output", required=True, help="checkpoint JSON to write")
    p.add_argument("--direction", choices=["a2c", "c2a"], default="a2c",
                   help="a2c: src field is the source; c2a: swap sides")
    p.add_argument("--limit", type=int, help="train on only the first N pairs")
    p.add_argument("--embed-dim", type=int, default=32)
    p.add_argument("--hidden-dim", type=int, default=64)
    p.add_argument("--window", type=int, default=5, help="local attention half-width")
    p.add_argument("--max-decode-len", type=int, default=80)
    p.add_argument("--no-copy", action="store_true", help="disable the copy mechanism")
    p.add_argument("--global-attention", action="store_true", help="disable local attention")
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--batch", type=int, default=8)
    p.add_argument("--epochs", type=int, default=30)
    p.add_argument("--clip", type=float, default=5.0)
    add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("translate", help="decode a file of sentences (one per line)")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("-i", "--input", required=True, help="UTF-8 text, one sentence per line")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--mode", choices=["greedy", "beam"], default="greedy")
    p.add_argument("--beam-size", type=int, default=5)
    add_common(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("eval-bleu", help="corpus BLEU of hypothesis vs reference file")
    p.add_argument("hyp", help="hypothesis text, one sentence per line")
    p.add_argument("ref", help="reference text, one sentence per line")
    p.add_argument("--tokens", choices=["char", "space"], default="char")
    p.add_argument("--signature", action="store_true", help="also print the scoring configuration")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    add_common(p)
    p.set_defaults(func=cmd_eval_bleu)

    return parser


def _apply_config_file(parser, args, argv):
    if not args.config:
        return args
    overrides = _load_config_file(args.config)
    if not overrides:
        return args
    known = vars(args)
    explicit = set()
    for token in argv:
        if token.startswith("--"):
            explicit.add(token[2:].split("=", 1)[0].replace("-", "_"))
    for key, raw in overrides.items():
        if key not in known or key in explicit or key in {"command", "func", "config"}:
            continue
        current = known[key]
        if isinstance(current, bool):
            setattr(args, key, raw.lower() in {"1", "true", "yes", "on"})
        elif isinstance(current, int):
            setattr(args, key, int(raw))
        elif isinstance(current, float):
            setattr(args, key, float(raw))
        else:
            setattr(args, key, raw)
    return args


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config_file(parser, args, argv)
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: cannot open {exc.filename}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except (ValueError, AlignmentError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
