from .entries import Entry, SegmentationStats, Strategy, read_entries_jsonl, write_entries_jsonl
from .classifier import (
    EntryClassifier,
    build_entry_training_set,
    classifier_headword,
    load_entry_classifier,
    predict_entry,
    save_entry_classifier,
    train_entry_classifier,
)
from .features import ngram_featurize
from .levenshtein import levenshtein, relative_levenshtein
from .segment import segment
from .strategies import match_bold, match_index

__all__ = [
    "Entry",
    "EntryClassifier",
    "SegmentationStats",
    "Strategy",
    "build_entry_training_set",
    "classifier_headword",
    "levenshtein",
    "load_entry_classifier",
    "match_bold",
    "match_index",
    "ngram_featurize",
    "predict_entry",
    "read_entries_jsonl",
    "relative_levenshtein",
    "save_entry_classifier",
    "segment",
    "train_entry_classifier",
    "write_entries_jsonl",
]
