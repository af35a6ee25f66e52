"""Built-in family documents, stored as JSON data next to this module."""

from __future__ import annotations

import json
from importlib import resources

from ..family import FamilyCandidate, family_from_dict

BUILTIN = ("bn", "example-k4-d2", "example-k6-d1")


def load_document(name: str) -> dict:
    if name not in BUILTIN:
        raise KeyError(f"unknown built-in family {name!r}; known: {', '.join(BUILTIN)}")
    text = resources.files(__package__).joinpath(f"{name}.json").read_text()
    return json.loads(text)


def load_family(name: str) -> FamilyCandidate:
    return family_from_dict(load_document(name), diagnostic=False)
