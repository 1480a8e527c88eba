"""Bundled example instances."""

from __future__ import annotations

from importlib import resources


def load_text(name: str) -> str:
    """Contents of a bundled data file, e.g. load_text("golden5.wig")."""
    return (resources.files(__package__) / name).read_text(encoding="utf-8")
