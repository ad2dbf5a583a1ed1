"""Deterministic ``syzkit/1`` reports for the CLI commands.

Key order is fixed by construction and no wall-clock data is included unless
timing is explicitly requested, so identical input bytes and seed give
byte-identical output.
"""

from __future__ import annotations

import json
import time
from typing import Any, Sequence

from . import __version__
from .classify import classify
from .decompose import DecompositionResult, classify_controllability, decompose
from .document import SCHEMA, InputDocument
from .gb import PolyMatrix, syzygy_matrix
from .poly import GaussianRational, format_poly
from .rank import (
    _fmt_point,
    evaluate_matrix,
    generic_rank,
    pointwise_exactness,
    sample_points,
)

__all__ = ["COMMANDS", "build_report", "render_report"]

COMMANDS = ("syzygy", "classify", "decompose", "verify")


def _matrix(A: PolyMatrix) -> dict:
    return {"shape": [A.nrows, A.ncols], "rows": A.to_strings()}


def _decomposition(res: DecompositionResult) -> dict:
    return {
        "A_c": _matrix(res.A_c),
        "A_u": _matrix(res.A_u),
        "S": _matrix(res.S),
        "conductor": [format_poly(p) for p in res.conductor.polynomials()],
        "exponent": res.exponent,
        "checks": dict(res.checks),
        "valid": res.valid,
    }


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.laps: dict[str, float] = {}
        self._t = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.laps[name] = round(now - self._t, 6)
        self._t = now


def _max_rank_samples(A: PolyMatrix, r: int, count: int, seed: int) -> list[list[GaussianRational]]:
    """``count`` seeded integer points at which A has its generic rank."""
    out = []
    if count <= 0:
        return out
    for p in sample_points(A.ring.n, 20 * count + 20, seed):
        pt = [GaussianRational(v) for v in p]
        if evaluate_matrix(A, pt).rank == r:
            out.append(pt)
            if len(out) == count:
                break
    return out


def build_report(
    command: str,
    doc: InputDocument,
    *,
    source: str = "file",
    points: Sequence[Sequence] | None = None,
    seed: int | None = None,
    sample_count: int | None = None,
    verify_samples: int = 0,
    timing: bool = False,
) -> dict[str, Any]:
    """The report for one command; ``points`` overrides the document's points."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    A = doc.matrix
    seed = doc.seed if seed is None else seed
    sample_count = doc.sample_count if sample_count is None else sample_count
    pts = [[GaussianRational.coerce(c) for c in p] for p in (doc.points if points is None else points)]
    clock = _Timer(timing)

    rep: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "syzkit", "version": __version__},
        "command": command,
        "input": {
            "source": source,
            "digest": doc.digest,
            "variables": list(doc.variables),
            "order": str(doc.ring.order.value),
            "seed": seed,
            "sampleCount": sample_count,
        },
        "matrix": _matrix(A),
    }
    violations: list[str] = []

    S = syzygy_matrix(A)
    clock.lap("syzygy")
    r = generic_rank(A)
    annihilates = S.ncols == 0 or (A @ S).is_zero()
    if not annihilates:
        violations.append("syzygy: A*S is not zero")

    if command == "syzygy":
        ctrl = classify_controllability(A, S, r)
        rep["syzygy"] = {"S": _matrix(S), "annihilates": annihilates, "genericRank": r,
                         "controllability": ctrl.verdict}
    elif command == "classify":
        cls = classify(A, pts, sample_count, seed, S=S)
        clock.lap("classify")
        rep["classification"] = cls.to_dict()
        violations += [f"classification: {k}" for k, ok in cls.consistency.items() if not ok]
        rep["syzygy"] = {"S": _matrix(S), "annihilates": annihilates}
    else:
        res = decompose(A)
        clock.lap("decompose")
        rep["classification"] = {"genericRank": r, "controllability": classify_controllability(A, S, r).verdict}
        rep["decomposition"] = _decomposition(res)
        violations += [f"decomposition: {name}" for name in res.failed]
        if command == "verify":
            extra = _max_rank_samples(A, r, verify_samples, seed)
            rows = []
            for origin, group in (("designated", pts), ("sample", extra)):
                for pt in group:
                    cmp = pointwise_exactness(A, res.S, pt, r)
                    d = cmp.to_dict()
                    d["origin"] = origin
                    ok = cmp.conforms
                    if cmp.rankA == r:
                        ker_u = evaluate_matrix(res.A_u, pt).kernel
                        d["uncontrollableKernelTrivial"] = not ker_u
                        ok = ok and not ker_u
                    d["conforms"] = ok
                    if not ok:
                        violations.append(f"point {','.join(_fmt_point(pt))}")
                    rows.append(d)
            clock.lap("points")
            rep["points"] = rows

    if command != "verify" and pts:
        rows = []
        for pt in pts:
            cmp = pointwise_exactness(A, S, pt, r)
            if not cmp.conforms:
                violations.append(f"point {','.join(_fmt_point(pt))}")
            rows.append(cmp.to_dict())
        rep["points"] = rows
    rep["conformance"] = {"ok": not violations, "violations": violations}
    if timing:
        rep["timing"] = clock.laps
    return rep


def render_report(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
