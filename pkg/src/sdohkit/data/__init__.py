"""Shipped fixtures: seed ontology, patient records and bundles, evaluation sets."""

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    return Path(str(resources.files(__name__).joinpath(name)))


def read_text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")
