"""Exact-arithmetic homotopy transfer and perturbation engine."""

from hptk._core import (
    HptkError,
    cohomology,
    corpus_document,
    corpus_names,
    deform,
    massey,
    transfer,
    validate,
    __version__,
)

__all__ = [
    "HptkError",
    "cohomology",
    "corpus_document",
    "corpus_names",
    "deform",
    "massey",
    "transfer",
    "validate",
    "__version__",
]
