"""Bundled example operators.

Each ``*.op`` file holds ``# name:`` and ``# source:`` header lines followed
by an expression in the parser grammar (continuation lines are joined).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..operators import Operator
from ..parser import parse_operator


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    text: str

    @property
    def operator(self) -> Operator:
        return parse_operator(self.text)


def parse_op_file(content: str, default_name: str = "") -> CorpusEntry:
    meta = {}
    body = []
    for line in content.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            key, _, value = stripped[1:].partition(":")
            meta[key.strip().lower()] = value.strip()
        elif stripped:
            body.append(stripped)
    return CorpusEntry(meta.get("name", default_name), meta.get("source", ""), " ".join(body))


@lru_cache(maxsize=None)
def _entries() -> dict:
    out = {}
    for f in sorted(resources.files(__name__).iterdir(), key=lambda p: p.name):
        if f.name.endswith(".op"):
            e = parse_op_file(f.read_text(encoding="utf-8"), f.name[:-3])
            out[e.name] = e
    return out


def names() -> list[str]:
    return list(_entries())


def entry(name: str) -> CorpusEntry:
    try:
        return _entries()[name]
    except KeyError:
        raise KeyError(f"unknown corpus operator {name!r}; known: {', '.join(names())}") from None


def load(name: str) -> Operator:
    return entry(name).operator
