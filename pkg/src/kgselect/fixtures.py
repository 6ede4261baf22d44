"""Access to the bundled cooperating-mobile-robots catalog fixture."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .catalog import Catalog, load_catalog

COBOTS_FILENAME = "cobots.json"


def cobots_path() -> Path:
    """Filesystem path of the bundled catalog (the package ships as plain
    files, so a real path always exists)."""
    return Path(str(resources.files("kgselect") / "data" / COBOTS_FILENAME))


def load_cobots() -> Catalog:
    data = (resources.files("kgselect") / "data" / COBOTS_FILENAME).read_bytes()
    return load_catalog(data, "json")
