"""Cross-domain review rating prediction with aspect phrase embeddings.

The package turns rated review corpora into star-rating predictors. The
pipeline: ingest JSONL reviews, extract (sentiment word, target word)
aspect phrases from opinion segments, build word-embedding features
(plain, aspect-phrase, and polarity-split variants) next to a top-K
unigram baseline, train multinomial logistic regression raters, and score
them with MAE/RMSE under in-domain and cross-domain 10-fold protocols.
"""

__version__ = "0.1.0"
