"""Input coercion helpers shared by the estimators and the CLI."""

from __future__ import annotations

from pathlib import Path

from .core.series import LogSeries, Series
from .operators import DOperator, Operator, ThetaOperator


def check_operator(x) -> Operator:
    """Coerce ``x`` to an operator.

    Accepts operator objects, corpus names, paths to ``.op`` files and
    expressions in the operator grammar.
    """
    if isinstance(x, (DOperator, ThetaOperator)):
        return x
    if not isinstance(x, str):
        raise TypeError(f"expected an operator or a string, got {type(x).__name__}")
    from . import corpus
    from .parser import parse_operator

    text = x.strip()
    if text in corpus.names():
        return corpus.load(text)
    if text.endswith(".op") or ("/" in text and Path(text).is_file()):
        path = Path(text)
        if not path.is_file():
            raise FileNotFoundError(text)
        return corpus.parse_op_file(path.read_text(encoding="utf-8"), path.stem).operator
    return parse_operator(text)


def check_operators(X) -> list[Operator]:
    if isinstance(X, (str, DOperator, ThetaOperator)):
        X = [X]
    return [check_operator(x) for x in X]


def check_series(s) -> Series:
    if isinstance(s, Series):
        return s
    if isinstance(s, LogSeries):
        if s.log_degree > 0:
            raise ValueError("expected a power series without logarithms")
        return s.part(0)
    return Series(list(s))


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
