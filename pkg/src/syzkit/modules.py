"""Submodule algebra: intersection, colon, annihilator, saturation, equality, closure."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .gb import (
    GroebnerError,
    ModuleElement,
    ModuleOrder,
    PolyMatrix,
    SubmoduleGB,
    _lm,
    buchberger,
    groebner,
    member,
    row_module,
    syzygy_matrix,
)
from .poly import Polynomial, RingContext

__all__ = [
    "Ideal",
    "ideal",
    "unit_ideal",
    "zero_ideal",
    "intersect_modules",
    "colon_ideal",
    "annihilator_quotient",
    "colon_poly",
    "saturate",
    "module_equal",
    "is_submodule",
    "tf_closure",
    "module_sum",
    "ideal_power",
    "ideal_product_module",
]

# An ideal is a rank-1 submodule.
Ideal = SubmoduleGB


def _elim_order(order: ModuleOrder) -> ModuleOrder:
    return ModuleOrder(order.ring_order, order.kind, order.elim + 1)


def ideal(ring: RingContext, polys: Sequence[Polynomial], order=None) -> Ideal:
    return buchberger([ModuleElement([p], ring) for p in polys], order, ring=ring, rank=1)


def unit_ideal(ring: RingContext, order=None) -> Ideal:
    return ideal(ring, [ring.one()], order)


def zero_ideal(ring: RingContext, order=None) -> Ideal:
    return ideal(ring, [], order)


def _same_space(M: SubmoduleGB, N: SubmoduleGB) -> None:
    if M.ring != N.ring or M.rank != N.rank:
        raise GroebnerError(f"rank or ring mismatch: {M.rank} vs {N.rank}")


def module_sum(M: SubmoduleGB, N: SubmoduleGB) -> SubmoduleGB:
    _same_space(M, N)
    return buchberger(list(M.generators) + list(N.generators), M.order, ring=M.ring, rank=M.rank)


def intersect_modules(M: SubmoduleGB, N: SubmoduleGB) -> SubmoduleGB:
    """M ∩ N via an auxiliary variable t: GB of t*M + (1-t)*N with t eliminated."""
    _same_space(M, N)
    if M.is_zero() or N.is_zero():
        return buchberger([], M.order, ring=M.ring, rank=M.rank)
    if M.is_full():
        return N
    if N.is_full():
        return M
    n = M.ring.n
    gens = []
    for v in M._vectors:
        gens.append({(m[0], 1) + m[1:]: c for m, c in v.items()})
    for v in N._vectors:
        w = {}
        for m, c in v.items():
            w[(m[0], 0) + m[1:]] = c
            w[(m[0], 1) + m[1:]] = -c
        gens.append(w)
    order = _elim_order(M.order)
    basis = groebner(gens, order)
    key = order.key
    out = []
    for b in basis:
        if _lm(b, key)[1] == 0:
            out.append({(m[0],) + m[2:]: c for m, c in b.items()})
    return SubmoduleGB._from_vectors(M.ring, M.rank, M.order, _sorted(out, M.order))


def _sorted(vecs: list[dict], order: ModuleOrder) -> list[dict]:
    key = order.key
    return sorted(vecs, key=lambda v: key(_lm(v, key)), reverse=True)


def colon_ideal(M: SubmoduleGB, v: ModuleElement) -> Ideal:
    """The ideal {r : r*v in M}, from syzygies of [v | generators of M]."""
    if v.ring != M.ring or v.rank != M.rank:
        raise GroebnerError("rank or ring mismatch between vector and module")
    ring, k = M.ring, M.rank
    zero = (0,) * ring.n
    if v.is_zero():
        return unit_ideal(ring, M.order)
    head = v.to_vector()
    head[(k,) + zero] = mpq(1)
    gens = [head] + [dict(g) for g in M._vectors]
    basis = groebner(gens, M.order)
    key = M.order.key
    polys = []
    for b in basis:
        if _lm(b, key)[0] == k:
            polys.append({(0,) + m[1:]: c for m, c in b.items()})
    return SubmoduleGB._from_vectors(ring, 1, M.order, polys)


def is_submodule(N: SubmoduleGB, M: SubmoduleGB) -> bool:
    """N ⊆ M."""
    _same_space(N, M)
    return all(member(g, M) for g in N.generators)


def annihilator_quotient(Mc: SubmoduleGB, M: SubmoduleGB) -> Ideal:
    """Ann(Mc/M) = {r : r*Mc ⊆ M}; requires M ⊆ Mc."""
    _same_space(Mc, M)
    if not is_submodule(M, Mc):
        raise GroebnerError("annihilator_quotient needs M ⊆ Mc")
    result = unit_ideal(M.ring, M.order)
    for v in Mc.generators:
        result = intersect_modules(result, colon_ideal(M, v))
        if result.is_zero():
            break
    return result


def colon_poly(M: SubmoduleGB, g: Polynomial) -> SubmoduleGB:
    """(M : g) = {v : g*v in M}, computed as (M ∩ g*R^k) / g."""
    if not g:
        raise GroebnerError("colon by the zero polynomial")
    ring, k = M.ring, M.rank
    if g.is_constant():
        return M
    gRk = buchberger([ModuleElement([g if i == j else ring.zero() for j in range(k)], ring) for i in range(k)],
                     M.order, ring=ring, rank=k)
    both = intersect_modules(M, gRk)
    quotients = [ModuleElement([p.exact_divide(g) for p in e], ring) for e in both.generators]
    return buchberger(quotients, M.order, ring=ring, rank=k)


def saturate(M: SubmoduleGB, g: Polynomial, cap: int = 1000) -> tuple[SubmoduleGB, int]:
    """(M : g^∞) together with the least m such that (M : g^m) = (M : g^(m+1))."""
    if not g:
        raise GroebnerError("saturation by the zero polynomial")
    current, m = M, 0
    while m < cap:
        nxt = colon_poly(current, g)
        if nxt == current:
            return current, m
        current, m = nxt, m + 1
    raise GroebnerError(f"saturation did not stabilize within {cap} steps")


def module_equal(M: SubmoduleGB, N: SubmoduleGB) -> bool:
    """Equality as submodules; two-way membership and reduced-GB identity must agree."""
    _same_space(M, N)
    by_membership = is_submodule(M, N) and is_submodule(N, M)
    if M.order == N.order:
        by_basis = M.generators == N.generators
        if by_basis != by_membership:
            raise AssertionError("membership and reduced-basis comparisons disagree")
    return by_membership


def tf_closure(A: PolyMatrix, S: PolyMatrix | None = None, order=None) -> SubmoduleGB:
    """Smallest M_c ⊇ im A^T with torsion-free R^k/M_c, computed as ker_R S^T."""
    ring, k = A.ring, A.ncols
    if S is None:
        S = syzygy_matrix(A, order)
    if S.ncols == 0:
        return buchberger([ModuleElement.unit(ring, k, i) for i in range(k)], order, ring=ring, rank=k)
    K = syzygy_matrix(S.transpose(), order)
    if K.ncols == 0:
        return buchberger([], order, ring=ring, rank=k)
    return buchberger(K.columns(), order, ring=ring, rank=k)


def ideal_power(I: Ideal, m: int) -> Ideal:
    ring = I.ring
    if m == 0:
        return unit_ideal(ring, I.order)
    polys = I.polynomials()
    current = list(polys)
    for _ in range(m - 1):
        current = ideal(ring, [a * b for a in current for b in polys], I.order).polynomials()
    return ideal(ring, current, I.order)


def ideal_product_module(I: Ideal, k: int) -> SubmoduleGB:
    """I * R^k."""
    ring = I.ring
    gens = [ModuleElement([p if i == j else ring.zero() for j in range(k)], ring)
            for p in I.polynomials() for i in range(k)]
    return buchberger(gens, I.order, ring=ring, rank=k)


def matrix_of_rows(M: SubmoduleGB) -> PolyMatrix:
    """Matrix whose rows are the generators of M (so that im of its transpose is M)."""
    return PolyMatrix(M.ring, [list(g) for g in M.generators], M.rank)


def image_transpose(A: PolyMatrix, order=None) -> SubmoduleGB:
    return row_module(A, order)
