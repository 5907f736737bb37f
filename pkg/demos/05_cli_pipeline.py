"""Drive the whole pipeline through the command-line interface.

Builds a synthetic passage-aligned corpus, then runs: align -> split ->
stats -> train -> translate -> eval-bleu, all as CLI invocations in a
temporary directory. Every command writes a manifest next to its output and
is byte-reproducible given the same seed.

Run:  python demos/05_cli_pipeline.py
"""

import json
import tempfile
from pathlib import Path

from alignmt import cli, synth_corpus
from alignmt.corpus import load_sentence_pairs, save_passage_pairs

work = Path(tempfile.mkdtemp(prefix="alignmt-demo-"))
print(f"working in {work}\n")

corpus = synth_corpus(40, overlap=0.85, merge_rate=0.15, split_rate=0.1, seed=5,
                      units_per_passage=(3, 6), unit_len=(3, 6), alphabet_size=40)
passages = work / "passages.jsonl"
save_passage_pairs(passages, [p for p, _ in corpus])


def run(*argv):
    argv = [str(a) for a in argv]
    print("$ alignmt " + " ".join(argv))
    code = cli.main(argv)
    assert code == 0, f"exit {code}"


aligned = work / "aligned.jsonl"
run("align", "-i", passages, "-o", aligned, "--audit", work / "audit.jsonl")
run("split", "-i", aligned, "--ratios", "0.8,0.1,0.1", "--out-prefix", work / "data", "--seed", 1)
run("stats", "--train", work / "data.train.jsonl", "--eval", work / "data.test.jsonl")

ckpt = work / "model.json"
run("train", "-i", work / "data.train.jsonl", "-o", ckpt,
    "--embed-dim", 16, "--hidden-dim", 24, "--epochs", 60, "--lr", "3e-3", "--seed", 2)

test_pairs = load_sentence_pairs(work / "data.test.jsonl")
(work / "test.src.txt").write_text("\n".join(p.src for p in test_pairs) + "\n", "utf-8")
(work / "test.ref.txt").write_text("\n".join(p.tgt for p in test_pairs) + "\n", "utf-8")
run("translate", "--checkpoint", ckpt, "-i", work / "test.src.txt", "-o", work / "test.hyp.txt")
run("eval-bleu", work / "test.hyp.txt", work / "test.ref.txt", "--signature")

manifest = json.loads((work / "model.json.manifest.json").read_text("utf-8"))
print(f"\nmanifest for the training run: command={manifest['command']!r}, "
      f"seed={manifest['seed']}, version={manifest['version']}")
