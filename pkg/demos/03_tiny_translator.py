"""Train the character-level translator on a small substitution task.

The corpus maps each source character to a fixed target character from a
disjoint code-point block, so the network has to learn the mapping (nothing
can be copied). We train, inspect the loss log, translate held-out
sentences greedily and with beam search, and score them with character
BLEU. Takes a minute or two on one core.

Run:  python demos/03_tiny_translator.py
"""

from alignmt import Seq2SeqConfig, bleu_corpus, train, translate, vocab_stats
from alignmt.toydata import cipher_pairs

train_pairs = cipher_pairs(1500, seed=7)
test_pairs = cipher_pairs(30, seed=999)

stats = vocab_stats([p.src for p in train_pairs], [p.src for p in test_pairs])
print(f"source side: vocab={stats['vocab_size']} chars, "
      f"test OOV rate={stats['oov_rate']:.2%}")

config = Seq2SeqConfig(embed_dim=16, hidden_dim=32, attn_window=4, max_decode_len=24)
result = train(train_pairs, config, lr=3e-3, batch_size=16, epochs=12, seed=0)
for row in result.history[::3]:
    print(f"  epoch {row['epoch']:>2}  step {row['step']:>4}  loss {row['loss']:.3f}")

hyps = [translate(p.src, result.params, result.config, result.vocab) for p in test_pairs]
report = bleu_corpus(hyps, [p.tgt for p in test_pairs])
print(f"\ntest BLEU (greedy): {report.bleu:.2f}   "
      f"precisions={[round(p, 3) for p in report.precisions]}")

print("\nsamples (source -> hypothesis | reference):")
for p, h in list(zip(test_pairs, hyps))[:5]:
    print(f"  {p.src} -> {h} | {p.tgt}")

beamed = translate(test_pairs[0].src, result.params, result.config, result.vocab,
                   mode="beam", beam_size=4)
print(f"\nbeam(4) on the first sentence: {beamed}")
