"""Outcome and unanimity prediction for appellate-court decision records.

The pipeline: ingest decision records, derive outcome/unanimity labels from
decision text by ordered rules, vectorize case descriptions with TF-IDF,
train softmax-regression classifiers by mini-batch SGD, evaluate with
stratified cross-validation, and serve predictions over HTTP.
"""

__version__ = "0.1.0"
