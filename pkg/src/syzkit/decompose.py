"""Controllable-uncontrollable decomposition and the controllability trichotomy.

The uncontrollable part is built as im A^T + I^m R^k, where I = Ann(M_c / M)
is the conductor of the torsion-free closure M_c back into M = im A^T and m is
the least exponent for which M_c ∩ (M + I^m R^k) = M.  Because the
construction avoids primary decomposition, every result re-proves its own
properties (``DecompositionResult.checks``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .gb import PolyMatrix, SubmoduleGB, column_module, member, row_module, syzygy_matrix
from .modules import (
    Ideal,
    annihilator_quotient,
    ideal_power,
    ideal_product_module,
    intersect_modules,
    is_submodule,
    matrix_of_rows,
    module_equal,
    module_sum,
    tf_closure,
    unit_ideal,
)

__all__ = [
    "DecompositionError",
    "DecompositionResult",
    "ControllabilityVerdict",
    "controllable_part",
    "uncontrollable_part",
    "decompose",
    "classify_controllability",
    "MAX_EXPONENT",
]

log = logging.getLogger(__name__)

MAX_EXPONENT = 64


class DecompositionError(RuntimeError):
    pass


def controllable_part(A: PolyMatrix, S: PolyMatrix | None = None) -> PolyMatrix:
    """A_c: its rows are the reduced GB of the torsion-free closure of im A^T."""
    return matrix_of_rows(tf_closure(A, S))


def _conductor(M: SubmoduleGB, Mc: SubmoduleGB) -> Ideal:
    if module_equal(M, Mc):
        return unit_ideal(M.ring, M.order)
    return annihilator_quotient(Mc, M)


def _uncontrollable(M: SubmoduleGB, Mc: SubmoduleGB, I: Ideal) -> tuple[SubmoduleGB, int]:
    k = M.rank
    if I.is_unit():
        return ideal_product_module(I, k), 0
    for m in range(1, MAX_EXPONENT + 1):
        N = module_sum(M, ideal_product_module(ideal_power(I, m), k))
        if module_equal(intersect_modules(Mc, N), M):
            return N, m
        log.debug("exponent %d does not separate the closure", m)
    raise DecompositionError(f"no exponent m <= {MAX_EXPONENT} satisfies M_c ∩ (M + I^m R^k) = M")


def uncontrollable_part(A: PolyMatrix, S: PolyMatrix | None = None) -> tuple[PolyMatrix, Ideal, int]:
    """(A_u, I, m) with im A_u^T = im A^T + I^m R^k; identity, (1), 0 when A is controllable."""
    M = row_module(A)
    Mc = tf_closure(A, S)
    I = _conductor(M, Mc)
    N, m = _uncontrollable(M, Mc, I)
    return matrix_of_rows(N), I, m


CHECK_NAMES = (
    "syzygiesAnnihilate",
    "closureContainsImage",
    "controllablePartIsClosure",
    "kernelEqualsImageS",
    "controllablePartTorsionFree",
    "uncontrollableQuotientTorsion",
    "intersection",
    "uncontrollableInjective",
)


@dataclass
class DecompositionResult:
    A: PolyMatrix
    A_c: PolyMatrix
    A_u: PolyMatrix
    S: PolyMatrix
    conductor: Ideal
    exponent: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def decompose(A: PolyMatrix) -> DecompositionResult:
    """A_c, A_u, S, conductor and exponent, with every defining property verified.

    Besides bookkeeping checks, ``checks`` holds the five defining properties:
    ``kernelEqualsImageS`` (ker_R A_c = im_R S), ``controllablePartTorsionFree``,
    ``uncontrollableQuotientTorsion``, ``intersection`` (M_c ∩ M_u = M) and
    ``uncontrollableInjective`` (ker_R A_u = 0).
    """
    ring, k = A.ring, A.ncols
    S = syzygy_matrix(A)
    M = row_module(A)
    Mc = tf_closure(A, S)
    I = _conductor(M, Mc)
    N, m = _uncontrollable(M, Mc, I)
    A_c = matrix_of_rows(Mc)
    A_u = matrix_of_rows(N)

    checks: dict[str, bool] = {}
    checks["syzygiesAnnihilate"] = S.ncols == 0 or (A @ S).is_zero()
    checks["closureContainsImage"] = is_submodule(M, Mc)
    checks["controllablePartIsClosure"] = module_equal(row_module(A_c), Mc)
    S_c = syzygy_matrix(A_c)
    checks["kernelEqualsImageS"] = module_equal(column_module(S), column_module(S_c))
    checks["controllablePartTorsionFree"] = module_equal(tf_closure(A_c, S_c), Mc)
    Ik = ideal_product_module(ideal_power(I, m), k)
    checks["uncontrollableQuotientTorsion"] = not I.is_zero() and is_submodule(Ik, N)
    checks["intersection"] = module_equal(intersect_modules(Mc, N), M)
    checks["uncontrollableInjective"] = syzygy_matrix(A_u).ncols == 0
    result = DecompositionResult(A, A_c, A_u, S, I, m, checks)
    if not result.valid:
        log.warning("decomposition checks failed: %s", ", ".join(result.failed))
    return result


@dataclass
class ControllabilityVerdict:
    verdict: str  # controllable | uncontrollable | mixed
    generic_rank: int
    image_is_closed: bool
    syzygy_count: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "genericRank": self.generic_rank,
            "imageEqualsClosure": self.image_is_closed,
            "syzygyCount": self.syzygy_count,
        }


def classify_controllability(A: PolyMatrix, S: PolyMatrix | None = None, r: int | None = None) -> ControllabilityVerdict:
    from .rank import generic_rank

    if S is None:
        S = syzygy_matrix(A)
    if r is None:
        r = generic_rank(A)
    closed = module_equal(row_module(A), tf_closure(A, S))
    if S.ncols == 0:
        verdict = "uncontrollable"
    elif closed:
        verdict = "controllable"
    else:
        verdict = "mixed"
    # the empty syzygy matrix and full column rank must agree
    if (S.ncols == 0) != (r == A.ncols):
        raise AssertionError("syzygy matrix and generic rank disagree on uncontrollability")
    return ControllabilityVerdict(verdict, r, closed, S.ncols)
