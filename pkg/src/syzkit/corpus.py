"""Registry of worked-example fixtures stored as ``syzkit/1`` documents."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from .document import InputDocument, InputError, parse_document
from .gb import PolyMatrix
from .poly import GaussianRational

__all__ = ["Fixture", "FIXTURE_NAMES", "load_fixture", "fixture_text", "all_fixtures"]

FIXTURE_NAMES = (
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8",
    "euler", "euler-scaled-b", "primary-decomp",
    "laplace-times-grad", "wave-times-grad", "ctrl-not-rcr", "separate-convexity",
)


@dataclass
class Fixture:
    name: str
    document: InputDocument
    expected: dict[str, Any]
    provenance: str
    evidence: dict[str, str] = field(default_factory=dict)

    @property
    def matrix(self) -> PolyMatrix:
        return self.document.matrix

    @property
    def ring(self):
        return self.document.ring

    @property
    def points(self) -> list[tuple[list[GaussianRational], dict]]:
        """Designated points paired with their expected rank and relation."""
        return list(zip(self.document.points, self.expected.get("points", [])))

    def poly(self, text: str):
        return self.ring.parse(text)

    def matrix_from(self, rows) -> PolyMatrix:
        return PolyMatrix.from_strings(self.ring, rows)


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return resources.files("syzkit").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load(name: str, order: str | None) -> Fixture:
    doc = parse_document(fixture_text(name), order)
    extra = doc.extra
    return Fixture(name, doc, extra.get("expected", {}), extra.get("provenance", ""), extra.get("evidence", {}))


def load_fixture(name: str, order: str | None = None) -> Fixture:
    return _load(name, order)


def all_fixtures() -> list[Fixture]:
    return [load_fixture(n) for n in FIXTURE_NAMES]
