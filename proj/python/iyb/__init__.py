"""Bijective 1-cocycles of finite groups: constructions, search and certificate verification."""

import json

from ._core import (
    ConstructionError,
    Error,
    Group,
    ParseError,
    ResourceLimit,
    brute_force_count,
    canonical_text,
    class2_odd_certificate,
    hertweck_certificate,
    heuristic_certificate,
    howell_form,
    verify_certificate,
)


def load(text):
    """Parse certificate text into a dict."""
    return json.loads(text)


__all__ = [
    "ConstructionError",
    "Error",
    "Group",
    "ParseError",
    "ResourceLimit",
    "brute_force_count",
    "canonical_text",
    "class2_odd_certificate",
    "hertweck_certificate",
    "heuristic_certificate",
    "howell_form",
    "load",
    "verify_certificate",
]
