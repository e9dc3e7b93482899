"""Single-packet device fingerprinting toolkit.

Thin wrapper over the C++ core: packet dissection, gain-ratio feature
ranking, C4.5-style tree and Decision Table classifiers, and the seeded
80:20 evaluation protocol.
"""

from ._core import (
    DataError,
    Dataset,
    Model,
    Schema,
    canonical_schema,
    evaluate,
    extract_dataset,
    loo_merit,
    make_dataset,
    rank_features,
    read_csv,
    split_dataset,
    train_decision_table,
    train_j48,
    write_csv,
)

__all__ = [
    "DataError",
    "Dataset",
    "Model",
    "Schema",
    "canonical_schema",
    "evaluate",
    "extract_dataset",
    "loo_merit",
    "make_dataset",
    "rank_features",
    "read_csv",
    "split_dataset",
    "train_decision_table",
    "train_j48",
    "write_csv",
]
