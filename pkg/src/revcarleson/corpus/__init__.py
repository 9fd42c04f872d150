"""Built-in measures used by the examples and the acceptance suite."""

from __future__ import annotations

import json
from importlib import resources

from ..errors import ParameterError
from ..measures import Measure, load_measure

NAMES = ("lebesgue", "mixed", "comb", "interior_cloud", "half_circle")


def corpus_document(name: str) -> dict:
    if name not in NAMES:
        raise ParameterError(f"unknown corpus measure {name!r}; expected one of {NAMES}")
    text = resources.files(__name__).joinpath(f"{name}.json").read_text()
    return json.loads(text)


def load_corpus(name: str) -> Measure:
    return load_measure(corpus_document(name))


def corpus() -> dict[str, Measure]:
    return {name: load_corpus(name) for name in NAMES}
