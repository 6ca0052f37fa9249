"""Builtin example manifests, stored as manifest text and parsed on load."""

from __future__ import annotations

from importlib import resources

from ..errors import UnknownName
from ..manifest import Manifest, parse_manifest

# builtin name -> (manifest file, action to quotient by or None)
BUILTINS: dict[str, tuple[str, str | None]] = {
    "torus3": ("torus3.ddb", None),
    "iwasawa": ("iwasawa.ddb", None),
    "nakamura": ("nakamura.ddb", None),
    "iwasawa-z3": ("iwasawa.ddb", "sigma"),
    "nakamura-z2": ("nakamura.ddb", "sigma"),
}


def manifest_text(filename: str) -> str:
    return resources.files(__name__).joinpath(filename).read_text(encoding="utf-8")


def load_builtin(name: str) -> tuple[Manifest, str | None]:
    try:
        filename, action = BUILTINS[name]
    except KeyError:
        raise UnknownName(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None
    return parse_manifest(manifest_text(filename)), action
