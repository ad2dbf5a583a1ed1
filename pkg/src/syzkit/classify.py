"""One-call classification of an operator: ranks, ellipticity, constant rank, controllability."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .decompose import ControllabilityVerdict, classify_controllability
from .gb import PolyMatrix, syzygy_matrix
from .rank import (
    FittingData,
    RVerdict,
    Verdict,
    check_R_condition,
    fitting_ideals,
    generic_rank,
    is_C_constant_rank,
    is_C_elliptic,
    is_column_homogeneous,
    is_row_homogeneous,
)

__all__ = ["ClassificationReport", "classify"]

_NOT_APPLICABLE = {"verdict": "notApplicable", "reason": "matrix is not row-homogeneous"}


@dataclass
class ClassificationReport:
    row_homogeneous: bool
    row_degrees: list[int | None]
    column_homogeneous: bool
    generic_rank: int
    fitting: FittingData | None
    c_elliptic: Verdict | None
    c_constant_rank: Verdict | None
    r_elliptic: RVerdict | None
    r_constant_rank: RVerdict | None
    controllability: ControllabilityVerdict
    consistency: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.consistency.values())

    def to_dict(self) -> dict:
        def v(x):
            return x.to_dict() if x is not None else dict(_NOT_APPLICABLE)

        d = {
            "rowHomogeneous": self.row_homogeneous,
            "rowDegrees": self.row_degrees,
            "columnHomogeneous": self.column_homogeneous,
            "homogeneityAmbiguous": self.row_homogeneous != self.column_homogeneous,
            "genericRank": self.generic_rank,
        }
        if self.fitting is not None:
            d["fitting"] = self.fitting.to_dict()
        d["cEllipticity"] = v(self.c_elliptic)
        d["cConstantRank"] = v(self.c_constant_rank)
        d["rEllipticity"] = v(self.r_elliptic)
        d["rConstantRank"] = v(self.r_constant_rank)
        d["controllability"] = self.controllability.to_dict()
        d["consistency"] = dict(self.consistency)
        return d


def classify(
    A: PolyMatrix,
    witnesses: Sequence[Sequence] = (),
    sample_count: int = 200,
    seed: int = 0,
    S: PolyMatrix | None = None,
    with_fitting: bool = True,
) -> ClassificationReport:
    hom, degrees = is_row_homogeneous(A)
    col_hom = is_column_homogeneous(A)
    r = generic_rank(A)
    fitting = fitting_ideals(A) if with_fitting else None
    if S is None:
        S = syzygy_matrix(A)
    ctrl = classify_controllability(A, S, r)
    ce = ccr = re = rcr = None
    if hom:
        ce = is_C_elliptic(A, witnesses, r=r)
        ccr = is_C_constant_rank(A, witnesses, r=r)
        re = check_R_condition(A, "ellipticity", witnesses, sample_count, seed, r=r, c_verdict=ce)
        rcr = check_R_condition(A, "constantRank", witnesses, sample_count, seed, r=r, c_verdict=ccr)
    consistency = {}
    if fitting is not None:
        consistency["fittingRankAgrees"] = fitting.generic_rank == r
    if hom:
        consistency["cEllipticImpliesREllipticCertified"] = not ce.holds or re.status == "certifiedViaC"
        consistency["cConstantRankImpliesRCertified"] = not ccr.holds or rcr.status == "certifiedViaC"
        consistency["cEllipticImpliesFullConstantRank"] = not ce.holds or (ccr.holds and r == A.ncols)
        consistency["rEllipticRefutedWhenConstantRankRefuted"] = not (rcr.status == "refuted" and r == A.ncols) or re.status == "refuted"
    consistency["uncontrollableIffFullColumnRank"] = (ctrl.verdict == "uncontrollable") == (r == A.ncols)
    return ClassificationReport(hom, degrees, col_hom, r, fitting, ce, ccr, re, rcr, ctrl, consistency)
