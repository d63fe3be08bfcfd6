"""Input validation helpers shared by the estimator layer."""

from __future__ import annotations

from .taxonomy import SemanticNet
from .textpipe import NounSequence


def check_net(net) -> SemanticNet:
    if not isinstance(net, SemanticNet):
        raise TypeError(f"expected a loaded SemanticNet, got {type(net).__name__}")
    return net


def check_texts(X) -> list[str]:
    if isinstance(X, str):
        raise TypeError("expected a sequence of documents, got a single string")
    X = list(X)
    for i, doc in enumerate(X):
        if not isinstance(doc, str):
            raise TypeError(f"document {i} is {type(doc).__name__}, expected str")
    return X


def check_noun_sequences(X) -> list[NounSequence]:
    X = list(X)
    for i, seq in enumerate(X):
        if not isinstance(seq, NounSequence):
            raise TypeError(
                f"item {i} is {type(seq).__name__}, expected NounSequence "
                "(did you run NounExtractor first?)")
    return X


def check_positive_int(value, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value
