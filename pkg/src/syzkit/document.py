"""The ``syzkit/1`` input document: a JSON object describing one polynomial matrix.

Fields::

    schema        "syzkit/1" (optional on input, always written)
    variables     ordered list of variable names
    matrix        list of rows, each a list of polynomial strings
    points        optional list of points; a point is a list of coordinates
                  (integers or strings "a", "a/b", "a+b*i") or a string "c1,...,cn"
    seed          optional integer (default 0)
    sampleCount   optional integer (default 200)

Fixture files add ``name``, ``provenance``, ``expected``, ``evidence`` and
``notes``; other keys are rejected.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .gb import PolyMatrix
from .poly import GaussianRational, ParseError, PolynomialError, RingContext, parse_gaussian

__all__ = ["SCHEMA", "InputError", "InputDocument", "parse_document", "parse_point", "load_document"]

SCHEMA = "syzkit/1"
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 200

_CORE_KEYS = ("schema", "variables", "matrix", "points", "seed", "sampleCount")
_FIXTURE_KEYS = ("name", "provenance", "expected", "evidence", "notes")


class InputError(ValueError):
    """Unusable input; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class InputDocument:
    ring: RingContext
    matrix: PolyMatrix
    points: list[list[GaussianRational]] = field(default_factory=list)
    seed: int = DEFAULT_SEED
    sample_count: int = DEFAULT_SAMPLES
    digest: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables


def _locate(text: str, needle: str, start: int = 0) -> tuple[int | None, int | None, int]:
    """Line/column (1-based) of the first JSON string literal equal to ``needle``."""
    lit = json.dumps(needle, ensure_ascii=False)
    idx = text.find(lit, start)
    if idx < 0:
        idx = text.find(json.dumps(needle), start)
    if idx < 0:
        return None, None, start
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col, idx + len(lit)


def parse_point(spec: str | Sequence, n: int | None = None) -> list[GaussianRational]:
    """A point from ``"c1,...,cn"`` or a list of coordinates."""
    if isinstance(spec, str):
        parts = [p for p in spec.split(",")]
    else:
        parts = list(spec)
    coords = []
    for p in parts:
        if isinstance(p, bool) or not isinstance(p, (int, str)):
            raise InputError(f"point coordinate {p!r} must be an integer or a string")
        try:
            coords.append(parse_gaussian(p) if isinstance(p, str) else GaussianRational(p))
        except ParseError as exc:
            raise InputError(f"bad point coordinate {p!r}: {exc.message}") from None
    if n is not None and len(coords) != n:
        raise InputError(f"point {spec!r} has {len(coords)} coordinates, expected {n}")
    return coords


def parse_document(text: str, order: str | None = None) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise InputError("the document must be a JSON object", 1, 1)
    unknown = sorted(set(raw) - set(_CORE_KEYS) - set(_FIXTURE_KEYS))
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(unknown)}")
    schema = raw.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InputError(f"unsupported schema {schema!r}; expected {SCHEMA!r}")
    variables = raw.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError("'variables' must be a list of names")
    try:
        ring = RingContext(tuple(variables), order or "grevlex")
    except (PolynomialError, ValueError) as exc:
        raise InputError(str(exc)) from None

    rows = raw.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("'matrix' must be a nonempty list of rows")
    width = len(rows[0])
    if width == 0:
        raise InputError("matrix rows must not be empty")
    cursor = 0
    entries = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError(f"matrix row {i + 1} has {len(row)} entries, expected {width} (not rectangular)")
        out = []
        for j, cell in enumerate(row):
            if isinstance(cell, int) and not isinstance(cell, bool):
                cell = str(cell)
            if not isinstance(cell, str):
                raise InputError(f"matrix entry ({i + 1},{j + 1}) must be a string")
            line, col, cursor = _locate(text, cell, cursor)
            try:
                out.append(ring.parse(cell))
            except ParseError as exc:
                if line is not None:
                    col = col + 1 + exc.pos
                raise InputError(f"matrix entry ({i + 1},{j + 1}): {exc.message} in {cell!r}", line, col) from None
            except PolynomialError as exc:
                raise InputError(f"matrix entry ({i + 1},{j + 1}): {exc}", line, col) from None
        entries.append(out)
    matrix = PolyMatrix(ring, entries, width)

    points = [parse_point(p, ring.n) for p in raw.get("points", [])]
    seed = raw.get("seed", DEFAULT_SEED)
    samples = raw.get("sampleCount", DEFAULT_SAMPLES)
    for name, val in (("seed", seed), ("sampleCount", samples)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 0:
            raise InputError(f"'{name}' must be a nonnegative integer")
    digest = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
    extra = {k: raw[k] for k in _FIXTURE_KEYS if k in raw}
    return InputDocument(ring, matrix, points, seed, samples, digest, extra)


def load_document(path: str, order: str | None = None) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, order)


def dump_document(matrix: PolyMatrix, points: Sequence[Sequence] = (), seed: int = DEFAULT_SEED,
                  sample_count: int = DEFAULT_SAMPLES, **extra) -> str:
    doc: dict[str, Any] = {"schema": SCHEMA}
    doc.update({k: v for k, v in extra.items() if k in ("name", "provenance")})
    doc["variables"] = list(matrix.ring.variables)
    doc["matrix"] = matrix.to_strings()
    doc["points"] = [[str(GaussianRational.coerce(c)) for c in p] for p in points]
    doc["seed"] = seed
    doc["sampleCount"] = sample_count
    doc.update({k: v for k, v in extra.items() if k in ("expected", "evidence", "notes")})
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
