"""Generic rank, Fitting ideals and pointwise rank conditions.

Exact decisions (C-ellipticity, C-constant rank) reduce to radical membership
of the variables in an ideal of minors.  The real conditions are only
semi-decided: refuted by an explicit real point, certified through the complex
test, or left inconclusive after sampling.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from . import linalg
from .gb import ModuleElement, ModuleOrder, PolyMatrix, SubmoduleGB, _lm, groebner, member
from .modules import Ideal, ideal
from .poly import GaussianRational, Polynomial, RingContext

__all__ = [
    "NotHomogeneousError",
    "FittingData",
    "Verdict",
    "RVerdict",
    "EvaluatedMatrix",
    "EvalComparison",
    "minors",
    "generic_rank",
    "fitting_ideal",
    "fitting_ideals",
    "radical_membership",
    "radical_exponent",
    "is_row_homogeneous",
    "is_column_homogeneous",
    "is_C_elliptic",
    "is_C_constant_rank",
    "check_R_condition",
    "evaluate_matrix",
    "pointwise_exactness",
    "wave_cone_span",
    "sample_points",
    "SAMPLE_BOUND",
]

SAMPLE_BOUND = 101

# small Gaussian coordinates tried, in this order, when searching for witnesses
_CANDIDATE_VALUES = ("1", "0", "-1", "i", "-i", "2", "-2")


class NotHomogeneousError(ValueError):
    pass


# ---------------------------------------------------------------------------
# minors


def _minors_iter(A: PolyMatrix, j: int):
    """Yield (rows, cols, minor) for every nonzero j x j minor, in lexicographic order."""
    l, k = A.shape
    ring = A.ring
    if j == 0:
        yield (), (), ring.one()
        return
    if j > min(l, k):
        return
    entries = A.rows
    for cols in itertools.combinations(range(k), j):
        masks = [sum(1 << c for c, col in enumerate(cols) if entries[r][col]) for r in range(l)]
        useful = [r for r in range(l) if masks[r]]
        if len(useful) < j:
            continue
        full = (1 << j) - 1
        memo: dict = {}

        def det(rows: tuple, c: int) -> Polynomial:
            if c == j:
                return ring.one()
            mk = (rows, c)
            hit = memo.get(mk)
            if hit is not None:
                return hit
            col = cols[c]
            acc = ring.zero()
            for idx, r in enumerate(rows):
                a = entries[r][col]
                if not a:
                    continue
                sub = det(rows[:idx] + rows[idx + 1:], c + 1)
                if not sub:
                    continue
                term = a * sub
                acc = acc + term if idx % 2 == 0 else acc - term
            memo[mk] = acc
            return acc

        for rows in itertools.combinations(useful, j):
            union = 0
            for r in rows:
                union |= masks[r]
            if union != full:
                continue
            d = det(rows, 0)
            if d:
                yield rows, cols, d


def minors(A: PolyMatrix, j: int) -> list[Polynomial]:
    """All nonzero j x j minors of A (rows and columns in lexicographic order)."""
    return [d for _, _, d in _minors_iter(A, j)]


def _random_point(rng: random.Random, n: int, bound: int = SAMPLE_BOUND) -> list[int]:
    while True:
        p = [rng.randint(-bound, bound) for _ in range(n)]
        if any(p):
            return p


def generic_rank(A: PolyMatrix) -> int:
    """Largest j with a nonzero j x j minor.

    Sizes are tried from min(l, k) downwards and each size stops at its first
    nonzero minor.  Random integer evaluations are used only to choose where to
    start: a full-rank evaluation exhibits a nonzero minor of that size.
    """
    l, k = A.shape
    top = min(l, k)
    if top == 0 or A.is_zero():
        return 0
    rng = random.Random(0x5EED)
    lower = 0
    for _ in range(3):
        values = A.evaluate(_random_point(rng, A.ring.n))
        lower = max(lower, linalg.rank(values, k))
        if lower == top:
            break
    for j in range(top, lower, -1):
        if next(_minors_iter(A, j), None) is not None:
            return j
    # an evaluated rank is a lower bound; confirm with an explicit minor
    if lower and next(_minors_iter(A, lower), None) is None:
        raise AssertionError("evaluation rank exceeds the symbolic rank")
    return lower


# ---------------------------------------------------------------------------
# Fitting ideals


def _dedupe(polys: Iterable[Polynomial]) -> list[Polynomial]:
    seen = {}
    for p in polys:
        q = p.primitive()
        seen.setdefault(q, None)
    return list(seen)


def fitting_ideal(A: PolyMatrix, j: int, order=None) -> Ideal:
    """GB of I_j(A), the ideal of j x j minors (I_0 = (1))."""
    return ideal(A.ring, _dedupe(minors(A, j)), order)


@dataclass
class FittingData:
    """Ideals of minors of A by size, and where the first nonzero one sits.

    ``ideals[j]`` is I_j(A) for j = 1..min(l, k).  With M = R^k / im A^T the
    first nonzero Fitting ideal I(M) is I_r(A), r = generic rank, which is
    Fitt_{k-r}(M) in the presentation-indexed convention.
    """

    ideals: dict[int, Ideal]
    generic_rank: int
    ncols: int

    @property
    def first_nonzero_size(self) -> int:
        return self.generic_rank

    @property
    def fitting_index(self) -> int:
        return self.ncols - self.generic_rank

    @property
    def first_nonzero(self) -> Ideal | None:
        return self.ideals.get(self.generic_rank)

    def to_dict(self) -> dict:
        return {
            "genericRank": self.generic_rank,
            "firstNonzeroMinorSize": self.first_nonzero_size,
            "firstNonzeroFittingIndex": self.fitting_index,
            "minorIdeals": {str(j): [str(p) for p in I.polynomials()] for j, I in sorted(self.ideals.items())},
        }


def fitting_ideals(A: PolyMatrix, order=None) -> FittingData:
    top = min(A.shape)
    ideals = {j: fitting_ideal(A, j, order) for j in range(1, top + 1)}
    r = max((j for j, I in ideals.items() if not I.is_zero()), default=0)
    return FittingData(ideals, r, A.ncols)


# ---------------------------------------------------------------------------
# radical membership


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f ∈ √I iff 1 ∈ I + (1 - t*f) in R[t] (Rabinowitsch)."""
    if I.rank != 1:
        raise ValueError("radical membership needs an ideal")
    if f.ring != I.ring:
        raise ValueError("polynomial and ideal belong to different rings")
    if not f:
        return True
    if I.is_zero():
        return False
    zero = (0,) * f.ring.n
    gens = [{(0, 0) + m[1:]: c for m, c in v.items()} for v in I._vectors]
    rab = {(0, 0) + zero: mpq(1)}
    for e, c in f._terms.items():
        rab[(0, 1) + e] = -c
    basis = groebner(gens + [rab], ModuleOrder(I.order.ring_order, "POT", 1))
    return len(basis) == 1 and basis[0] == {(0, 0) + zero: 1}


def radical_exponent(f: Polynomial, I: Ideal, cap: int = 256) -> int | None:
    """Least N >= 1 with f^N ∈ I, or None if f ∉ √I."""
    if not radical_membership(f, I):
        return None
    p = f
    for N in range(1, cap + 1):
        if member(ModuleElement([p]), I):
            return N
        p = p * f
    raise AssertionError(f"radical member needs an exponent above {cap}")


# ---------------------------------------------------------------------------
# homogeneity


def is_row_homogeneous(A: PolyMatrix) -> tuple[bool, list[int | None]]:
    """Whether each row's nonzero entries are homogeneous of one common degree."""
    ok = True
    degrees: list[int | None] = []
    for row in A.rows:
        degs = set()
        for p in row:
            if not p:
                continue
            if not p.is_homogeneous():
                ok = False
            degs.update(sum(e) for _, e in p.terms)
        if len(degs) > 1:
            ok = False
        # zero rows and mixed-degree rows have no degree
        degrees.append(degs.pop() if len(degs) == 1 else None)
    return ok, degrees


def is_column_homogeneous(A: PolyMatrix) -> bool:
    return is_row_homogeneous(A.transpose())[0] if A.nrows else True


def _require_homogeneous(A: PolyMatrix) -> None:
    ok, _ = is_row_homogeneous(A)
    if not ok:
        raise NotHomogeneousError("the rank conditions need a row-homogeneous matrix")


# ---------------------------------------------------------------------------
# pointwise evaluation


@dataclass
class EvaluatedMatrix:
    values: list[list[GaussianRational]]
    rank: int
    kernel: list[list[GaussianRational]]
    column_space: list[list[GaussianRational]]


def evaluate_matrix(A: PolyMatrix, point: Sequence) -> EvaluatedMatrix:
    values = A.evaluate(point)
    k = A.ncols
    _, pivots = linalg.rref(values, k)
    return EvaluatedMatrix(
        values,
        len(pivots),
        linalg.kernel_basis(values, k),
        [[values[i][c] for i in range(A.nrows)] for c in pivots],
    )


def _point_rank(A: PolyMatrix, point: Sequence) -> int:
    return linalg.rank(A.evaluate(point), A.ncols)


def _fmt_point(point: Sequence) -> list[str]:
    return [str(GaussianRational.coerce(v)) for v in point]


@dataclass
class EvalComparison:
    point: list[GaussianRational]
    rankA: int
    dimKerA: int
    dimImS: int
    relation: str
    genericRank: int
    conforms: bool

    def to_dict(self) -> dict:
        return {
            "point": _fmt_point(self.point),
            "rankA": self.rankA,
            "genericRank": self.genericRank,
            "dimKerA": self.dimKerA,
            "dimImS": self.dimImS,
            "relation": self.relation,
            "conforms": self.conforms,
        }


def pointwise_exactness(A: PolyMatrix, S: PolyMatrix, point: Sequence, r: int | None = None) -> EvalComparison:
    """Compare ker A(ξ) with im S(ξ); equality is expected exactly where rank A(ξ) is maximal."""
    if S.nrows != A.ncols:
        raise ValueError(f"S has {S.nrows} rows, A has {A.ncols} columns")
    if S.ncols and not (A @ S).is_zero():
        raise ValueError("A*S is not identically zero")
    pt = [GaussianRational.coerce(v) for v in point]
    if r is None:
        r = generic_rank(A)
    k = A.ncols
    rank_a = _point_rank(A, pt)
    dim_ker = k - rank_a
    dim_im = linalg.rank(S.evaluate(pt), S.ncols) if S.ncols else 0
    relation = "equal" if dim_im == dim_ker else "strictSuperset"
    conforms = (relation == "equal") == (rank_a == r)
    return EvalComparison(pt, rank_a, dim_ker, dim_im, relation, r, conforms)


def wave_cone_span(S: PolyMatrix) -> list[list[GaussianRational]]:
    """Echelon basis of the span of all S(ξ) columns: the coefficient vectors of S."""
    k = S.nrows
    vectors = []
    for j in range(S.ncols):
        by_mon: dict[tuple, list] = {}
        for i in range(k):
            for c, e in S.rows[i][j].terms:
                by_mon.setdefault(e, [mpq(0)] * k)[i] = c
        vectors.extend(by_mon.values())
    return linalg.span_basis(vectors, k)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    """Exact yes/no decision over C with its certificate."""

    holds: bool
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": "yes" if self.holds else "no", "certificate": self.certificate}


@dataclass
class RVerdict:
    """Three-valued outcome of a real condition."""

    status: str  # refuted | certifiedViaC | inconclusive
    witness: list[GaussianRational] | None = None
    samples: int = 0
    seed: int | None = None

    def to_dict(self) -> dict:
        d: dict = {"status": self.status}
        if self.witness is not None:
            d["witness"] = _fmt_point(self.witness)
        d["samples"] = self.samples
        if self.seed is not None:
            d["seed"] = self.seed
        return d


def _candidate_points(n: int, supplied: Sequence[Sequence] = ()) -> Iterable[list[GaussianRational]]:
    for p in supplied:
        pt = [GaussianRational.coerce(v) for v in p]
        if any(pt):
            yield pt
    values = [GaussianRational.coerce(v) for v in _CANDIDATE_VALUES]
    for p in itertools.product(values, repeat=n):
        if any(p):
            yield list(p)


def _find_point(A: PolyMatrix, below: int, supplied: Sequence[Sequence] = ()) -> list[GaussianRational] | None:
    """A nonzero point where rank A(ξ) < ``below``."""
    for pt in _candidate_points(A.ring.n, supplied):
        if len(pt) == A.ring.n and _point_rank(A, pt) < below:
            return pt
    return None


def _radical_certificate(A: PolyMatrix, I: Ideal) -> tuple[bool, dict]:
    exps = {}
    for name, x in zip(A.ring.variables, A.ring.gens()):
        N = radical_exponent(x, I)
        if N is None:
            return False, {"notInRadical": name}
        exps[name] = N
    return True, {"radicalExponents": exps}


def is_C_elliptic(A: PolyMatrix, witnesses: Sequence[Sequence] = (), r: int | None = None) -> Verdict:
    """ker A(ξ) = 0 for all nonzero complex ξ: k <= l, generic rank k, all x_i ∈ √I_k(A)."""
    _require_homogeneous(A)
    l, k = A.shape
    if r is None:
        r = generic_rank(A)
    if k > l or r < k:
        reason = "moreColumnsThanRows" if k > l else "genericRankBelowColumns"
        pt = _find_point(A, k, witnesses)
        cert: dict = {"reason": reason, "genericRank": r}
        if pt is not None:
            cert["witness"] = _fmt_point(pt)
        return Verdict(False, cert)
    Ik = fitting_ideal(A, k)
    ok, cert = _radical_certificate(A, Ik)
    cert = {"minorSize": k, **cert}
    if not ok:
        pt = _find_point(A, k, witnesses)
        if pt is not None:
            cert["witness"] = _fmt_point(pt)
    return Verdict(ok, cert)


def is_C_constant_rank(A: PolyMatrix, witnesses: Sequence[Sequence] = (), r: int | None = None) -> Verdict:
    """rank A(ξ) = generic rank for all nonzero complex ξ: all x_i ∈ √I_r(A)."""
    _require_homogeneous(A)
    if r is None:
        r = generic_rank(A)
    if r == 0:
        return Verdict(True, {"minorSize": 0, "reason": "zeroMatrix"})
    Ir = fitting_ideal(A, r)
    ok, cert = _radical_certificate(A, Ir)
    cert = {"minorSize": r, **cert}
    if not ok:
        pt = _find_point(A, r, witnesses)
        if pt is not None:
            cert["witness"] = _fmt_point(pt)
    return Verdict(ok, cert)


def sample_points(n: int, count: int, seed: int, bound: int = SAMPLE_BOUND) -> list[list[int]]:
    """Deterministic nonzero integer points in [-bound, bound]^n."""
    rng = random.Random(seed)
    return [_random_point(rng, n, bound) for _ in range(count)]


def check_R_condition(
    A: PolyMatrix,
    kind: str,
    witnesses: Sequence[Sequence] = (),
    sample_count: int = 200,
    seed: int = 0,
    r: int | None = None,
    c_verdict: Verdict | None = None,
) -> RVerdict:
    """Semi-decide real ellipticity (``kind='ellipticity'``) or real constant rank."""
    _require_homogeneous(A)
    if kind not in ("ellipticity", "constantRank"):
        raise ValueError(f"unknown condition {kind!r}")
    if r is None:
        r = generic_rank(A)
    target = A.ncols if kind == "ellipticity" else r

    def fails(pt) -> bool:
        return _point_rank(A, pt) < target

    for w in witnesses:
        pt = [GaussianRational.coerce(v) for v in w]
        if len(pt) != A.ring.n:
            raise ValueError("witness arity does not match the ring")
        if any(pt) and all(v.is_real() for v in pt) and fails(pt):
            return RVerdict("refuted", pt, 0, seed)
    if c_verdict is None:
        c_verdict = is_C_elliptic(A, r=r) if kind == "ellipticity" else is_C_constant_rank(A, r=r)
    if c_verdict.holds:
        return RVerdict("certifiedViaC", None, 0, seed)
    for i, p in enumerate(sample_points(A.ring.n, sample_count, seed)):
        pt = [GaussianRational(v) for v in p]
        if fails(pt):
            return RVerdict("refuted", pt, i + 1, seed)
    return RVerdict("inconclusive", None, sample_count, seed)
