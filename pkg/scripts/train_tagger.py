#!/usr/bin/env python3
"""Retrain the bundled POS tagger model from the tagged corpus.

Usage: python scripts/train_tagger.py [--iters N] [--seed S]
Writes src/reviewrater/data/tagger/english.tagmodel.
"""

import argparse
from pathlib import Path

from reviewrater.textproc.tagger import PerceptronTagger, read_tagged_corpus

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "reviewrater" / "data" / "tagger"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iters", type=int, default=12)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    sentences = read_tagged_corpus(DATA / "train_corpus.txt")
    tagger = PerceptronTagger()
    tagger.train(sentences, nr_iter=args.iters, seed=args.seed)
    out = DATA / "english.tagmodel"
    tagger.save(out)

    # Self-consistency report: accuracy on the training corpus itself.
    from reviewrater.textproc.tokenizer import Token

    correct = total = 0
    for sent in sentences:
        tokens = [Token(w, 0) for w, _ in sent]
        fine = tagger.tag_fine(tokens)
        for (_, truth), guess in zip(sent, fine):
            total += 1
            correct += truth == guess
    print(f"trained on {len(sentences)} sentences; "
          f"self accuracy {correct}/{total} = {correct / total:.3f}")
    print(f"wrote {out} ({out.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
