"""Groebner bases of submodules of R^k, normal forms and syzygies.

The engine works on "vectors": dicts mapping ``(component, e_1, ..., e_n)`` to
``mpq`` coefficients.  ``ModuleElement``/``PolyMatrix``/``SubmoduleGB`` are thin
immutable wrappers used by the rest of the package.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .poly import (
    GaussianRational,
    MonomialOrder,
    Polynomial,
    PolynomialError,
    RingContext,
    evaluate_poly,
    primitive_scale,
)

__all__ = [
    "ModuleOrder",
    "ModuleElement",
    "PolyMatrix",
    "SubmoduleGB",
    "GroebnerError",
    "buchberger",
    "normal_form",
    "member",
    "syzygy_matrix",
    "row_module",
    "column_module",
]


class GroebnerError(ValueError):
    pass


class ModuleOrder:
    """Monomial order on R^k.

    ``kind`` is POT (position first; a lower component index is larger) or TOP.
    The first ``elim`` variables form an elimination block compared before
    anything else; this is how the auxiliary variables of the intersection and
    radical-membership constructions are eliminated.
    """

    __slots__ = ("ring_order", "kind", "elim", "_cache")

    def __init__(self, ring_order: MonomialOrder | str = MonomialOrder.GREVLEX, kind: str = "POT", elim: int = 0):
        self.ring_order = MonomialOrder(ring_order)
        if kind not in ("POT", "TOP"):
            raise GroebnerError(f"unknown module order kind {kind!r}")
        self.kind = kind
        self.elim = elim
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, ModuleOrder) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    @property
    def params(self):
        return (self.ring_order.value, self.kind, self.elim)

    def __repr__(self):
        extra = f", elim={self.elim}" if self.elim else ""
        return f"ModuleOrder({self.ring_order.value!r}, {self.kind!r}{extra})"

    def key(self, mon: tuple):
        k = self._cache.get(mon)
        if k is None:
            c = mon[0]
            e = mon[1 + self.elim:]
            base = self.ring_order.key(e)
            if self.elim:
                block = mon[1:1 + self.elim]
                prefix = (sum(block), block)
            else:
                prefix = ()
            if self.kind == "POT":
                k = (*prefix, -c, base)
            else:
                k = (*prefix, base, -c)
            self._cache[mon] = k
        return k


# ---------------------------------------------------------------------------
# raw vector arithmetic


def _lm(v: dict, key) -> tuple:
    return max(v, key=key)


def _divides(a: tuple, b: tuple) -> bool:
    """Monomial part of ``a`` divides monomial part of ``b`` (same component assumed)."""
    for x, y in zip(a[1:], b[1:]):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))


def _quo(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a[1:], b[1:]))


def _submul(f: dict, g: dict, q: tuple, c) -> None:
    """In place: f -= c * x^q * g."""
    for m, gc in g.items():
        mm = (m[0],) + tuple(x + y for x, y in zip(m[1:], q))
        v = f.get(mm)
        if v is None:
            f[mm] = -c * gc
        else:
            v = v - c * gc
            if v:
                f[mm] = v
            else:
                del f[mm]


def _monic(v: dict, key) -> dict:
    lc = v[_lm(v, key)]
    if lc == 1:
        return v
    inv = 1 / lc
    return {m: c * inv for m, c in v.items()}


class _Reducer:
    """Lookup of reducers by component; only the leading monomials matter."""

    def __init__(self, key):
        self.key = key
        self.by_comp: dict[int, list[tuple[tuple, dict]]] = {}

    def add(self, lm: tuple, poly: dict) -> None:
        self.by_comp.setdefault(lm[0], []).append((lm, poly))

    def remove(self, lm: tuple) -> None:
        lst = self.by_comp[lm[0]]
        for i, (m, _) in enumerate(lst):
            if m == lm:
                del lst[i]
                return

    def find(self, m: tuple):
        for lm, g in self.by_comp.get(m[0], ()):
            if _divides(lm, m):
                return lm, g
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f``; reducers are monic."""
        key = self.key
        f = dict(f)
        rem: dict = {}
        while f:
            m = max(f, key=key)
            c = f[m]
            hit = self.find(m)
            if hit is None:
                rem[m] = c
                del f[m]
                if not full:
                    rem.update(f)
                    break
                continue
            lm, g = hit
            _submul(f, g, _quo(m, lm), c)
        return rem


def groebner(gens: Iterable[dict], order: ModuleOrder, criteria: bool = True) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by leading monomial descending)."""
    key = order.key
    polys: list[dict] = []
    lms: list[tuple] = []
    active: list[int] = []
    reducer = _Reducer(key)
    heap: list = []
    alive: set = set()
    ideal_case: bool | None = None

    gens = [dict(g) for g in gens if g]
    comps = {m[0] for g in gens for m in g}
    ideal_case = len(comps) <= 1

    def push(i: int, j: int, lcm_m: tuple) -> None:
        p = (i, j)
        alive.add(p)
        # normal strategy: the pair with the smallest lcm in the order goes first
        heapq.heappush(heap, (key(lcm_m), i, j))

    def update(h: int) -> None:
        lm_h = lms[h]
        comp = lm_h[0]
        cands = [g for g in active if lms[g][0] == comp]
        if not criteria:
            for g in cands:
                push(g, h, _lcm(lms[g], lm_h))
            active.append(h)
            reducer.add(lm_h, polys[h])
            return
        new = {g: _lcm(lms[g], lm_h) for g in cands}
        # chain criterion on the existing pairs
        dead = []
        for p in alive:
            i, j = p
            if lms[i][0] != comp:
                continue
            L = _lcm(lms[i], lms[j])
            if _divides(lm_h, L) and _lcm(lms[i], lm_h) != L and _lcm(lms[j], lm_h) != L:
                dead.append(p)
        for p in dead:
            alive.discard(p)
        # Gebauer-Moeller on the new pairs
        keep: dict[tuple, list[int]] = {}
        for g, L in new.items():
            strictly = False
            for g2, L2 in new.items():
                if g2 != g and L2 != L and _divides(L2, L):
                    strictly = True
                    break
            if not strictly:
                keep.setdefault(L, []).append(g)
        for L, group in keep.items():
            if ideal_case and any(_lcm(lms[g], lm_h)[1:] == tuple(a + b for a, b in zip(lms[g][1:], lm_h[1:])) for g in group):
                continue
            push(min(group), h, L)
        # drop basis elements made redundant by h
        for g in list(active):
            if lms[g][0] == comp and _divides(lm_h, lms[g]):
                active.remove(g)
                reducer.remove(lms[g])
        active.append(h)
        reducer.add(lm_h, polys[h])

    def add(v: dict) -> None:
        v = _monic(v, key)
        polys.append(v)
        lms.append(_lm(v, key))
        update(len(polys) - 1)

    for g in gens:
        r = reducer.reduce(g)
        if r:
            add(r)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        L = _lcm(lms[i], lms[j])
        s = {}
        _submul(s, polys[i], _quo(L, lms[i]), -1)
        _submul(s, polys[j], _quo(L, lms[j]), 1)
        r = reducer.reduce(s)
        if r:
            add(r)

    return interreduce([polys[i] for i in active], order)


def interreduce(basis: list[dict], order: ModuleOrder) -> list[dict]:
    """Turn a minimal Groebner basis into the reduced one."""
    key = order.key
    basis = [_monic(b, key) for b in basis if b]
    lm_list = [_lm(b, key) for b in basis]
    # minimality
    keep = []
    for i, m in enumerate(lm_list):
        if any(j != i and lm_list[j][0] == m[0] and _divides(lm_list[j], m) and (lm_list[j] != m or j < i)
               for j in range(len(lm_list))):
            continue
        keep.append(i)
    basis = [basis[i] for i in keep]
    lm_list = [lm_list[i] for i in keep]
    out = []
    for i, b in enumerate(basis):
        red = _Reducer(key)
        for j, g in enumerate(basis):
            if j != i:
                red.add(lm_list[j], g)
        lm = lm_list[i]
        tail = dict(b)
        del tail[lm]
        r = red.reduce(tail)
        r[lm] = b[lm]
        out.append(r)
    out.sort(key=lambda v: key(_lm(v, key)), reverse=True)
    return out


def reduce_vector(v: dict, basis: list[dict], order: ModuleOrder) -> dict:
    red = _Reducer(order.key)
    for b in basis:
        red.add(_lm(b, order.key), b)
    return red.reduce(v)


# ---------------------------------------------------------------------------
# public wrappers


class ModuleElement:
    """An element of R^k, stored as a tuple of polynomials."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Polynomial], ring: RingContext | None = None):
        comps = tuple(components)
        if ring is None:
            if not comps:
                raise GroebnerError("cannot infer the ring of an empty vector")
            ring = comps[0].ring
        for p in comps:
            if not isinstance(p, Polynomial):
                raise GroebnerError(f"component {p!r} is not a Polynomial")
            if p.ring != ring:
                raise GroebnerError("vector components belong to different rings")
        if not comps:
            raise GroebnerError("module rank must be at least 1")
        self.ring = ring
        self.components = comps

    @classmethod
    def from_strings(cls, ring: RingContext, texts: Sequence[str]) -> "ModuleElement":
        return cls([ring.parse(t) for t in texts], ring)

    @classmethod
    def unit(cls, ring: RingContext, rank: int, i: int) -> "ModuleElement":
        return cls([ring.one() if j == i else ring.zero() for j in range(rank)], ring)

    @classmethod
    def from_vector(cls, ring: RingContext, rank: int, v: dict) -> "ModuleElement":
        parts: list[dict] = [{} for _ in range(rank)]
        for m, c in v.items():
            parts[m[0]][m[1:]] = c
        return cls([Polynomial._raw(ring, p) for p in parts], ring)

    def to_vector(self) -> dict:
        v = {}
        for i, p in enumerate(self.components):
            for e, c in p._terms.items():
                v[(i,) + e] = c
        return v

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement([a + b for a, b in zip(self, other)], self.ring)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        return ModuleElement([a - b for a, b in zip(self, other)], self.ring)

    def __neg__(self):
        return ModuleElement([-a for a in self], self.ring)

    def __rmul__(self, r):
        if isinstance(r, Polynomial) or isinstance(r, (int, mpq)):
            return ModuleElement([r * a for a in self], self.ring)
        return NotImplemented

    def _check(self, other):
        if other.ring != self.ring or other.rank != self.rank:
            raise GroebnerError("rank or ring mismatch")

    def primitive(self) -> "ModuleElement":
        """Scale to coprime integer coefficients, positive leading coefficient (POT order)."""
        v = self.to_vector()
        if not v:
            return self
        key = ModuleOrder(self.ring.order).key
        terms = sorted(v.items(), key=lambda t: key(t[0]), reverse=True)
        s = primitive_scale([(c, m) for m, c in terms])
        return ModuleElement([p.scale(s) for p in self], self.ring)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.ring == other.ring and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"ModuleElement([{', '.join(str(p) for p in self)}])"


class PolyMatrix:
    """An l x k matrix of polynomials over one ring; either dimension may be 0."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: RingContext, rows: Sequence[Sequence[Polynomial]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise GroebnerError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise GroebnerError("matrix is not rectangular")
            for p in r:
                if not isinstance(p, Polynomial) or p.ring != ring:
                    raise GroebnerError("matrix entries must be polynomials of one ring")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_strings(cls, ring: RingContext, rows: Sequence[Sequence[str]], ncols: int | None = None) -> "PolyMatrix":
        return cls(ring, [[ring.parse(t) for t in r] for r in rows], ncols)

    @classmethod
    def from_columns(cls, ring: RingContext, columns: Sequence[ModuleElement], nrows: int) -> "PolyMatrix":
        cols = list(columns)
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(ring, rows, len(cols))

    @classmethod
    def identity(cls, ring: RingContext, k: int) -> "PolyMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(k)] for i in range(k)], k)

    @classmethod
    def zeros(cls, ring: RingContext, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(ring, [[ring.zero()] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def column(self, j: int) -> ModuleElement:
        return ModuleElement([r[j] for r in self.rows], self.ring)

    def columns(self) -> list[ModuleElement]:
        if self.nrows == 0:
            raise GroebnerError("columns of a matrix without rows are not module elements")
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i: int) -> ModuleElement:
        return ModuleElement(self.rows[i], self.ring)

    def row_elements(self) -> list[ModuleElement]:
        if self.ncols == 0:
            raise GroebnerError("rows of a matrix without columns are not module elements")
        return [self.row(i) for i in range(self.nrows)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.ring != self.ring:
            raise GroebnerError("matrices belong to different rings")
        if self.ncols != other.nrows:
            raise GroebnerError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.ring.zero()
        rows = []
        for r in self.rows:
            out = []
            for j in range(other.ncols):
                acc = zero
                for a, row_b in zip(r, other.rows):
                    b = row_b[j]
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return PolyMatrix(self.ring, rows, other.ncols)

    def is_zero(self) -> bool:
        return all(not p for r in self.rows for p in r)

    def evaluate(self, point: Sequence) -> list[list[GaussianRational]]:
        pt = [GaussianRational.coerce(v) for v in point]
        if len(pt) != self.ring.n:
            raise PolynomialError(f"point has {len(pt)} coordinates, ring has {self.ring.n} variables")
        return [[evaluate_poly(p, pt) for p in r] for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(p) for p in r] for r in self.rows]

    def change_ring(self, ring: RingContext) -> "PolyMatrix":
        return PolyMatrix(ring, [[p.change_ring(ring) for p in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {self.to_strings()})"


@dataclass(frozen=True, eq=False)
class SubmoduleGB:
    """Reduced Groebner basis of a submodule of R^rank.

    ``generators`` are integer-normalized and sorted by leading term,
    descending; the zero module has no generators.
    """

    ring: RingContext
    rank: int
    order: ModuleOrder
    generators: tuple[ModuleElement, ...]
    reduced: bool = True
    _vectors: tuple = ()

    def __eq__(self, other):
        return (
            isinstance(other, SubmoduleGB)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.order == other.order
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.rank, self.generators))

    @classmethod
    def _from_vectors(cls, ring: RingContext, rank: int, order: ModuleOrder, vecs: list[dict]) -> "SubmoduleGB":
        gens = tuple(ModuleElement.from_vector(ring, rank, v).primitive() for v in vecs)
        return cls(ring, rank, order, gens, True, tuple(vecs))

    def is_zero(self) -> bool:
        return not self.generators

    def is_full(self) -> bool:
        """True iff this is all of R^rank."""
        lms = {_lm(v, self.order.key) for v in self._vectors}
        return all((i,) + (0,) * self.ring.n in lms for i in range(self.rank))

    def is_unit(self) -> bool:
        return self.rank == 1 and self.is_full()

    def __len__(self):
        return len(self.generators)

    def leading_monomials(self) -> list[tuple]:
        return [_lm(v, self.order.key) for v in self._vectors]

    def as_matrix(self) -> PolyMatrix:
        """Generators as the columns of a rank x len matrix."""
        return PolyMatrix.from_columns(self.ring, self.generators, self.rank)

    def polynomials(self) -> list[Polynomial]:
        """The generators of an ideal (rank 1) as polynomials."""
        if self.rank != 1:
            raise GroebnerError("polynomials() is only defined for ideals")
        return [g[0] for g in self.generators]

    def contains(self, v: ModuleElement) -> bool:
        return member(v, self)

    def __contains__(self, v):
        if isinstance(v, Polynomial):
            v = ModuleElement([v])
        return member(v, self)

    def __repr__(self):
        gens = ", ".join("(" + "; ".join(str(p) for p in g) + ")" for g in self.generators)
        return f"SubmoduleGB(rank={self.rank}, [{gens}])"


def _as_order(ring: RingContext, order) -> ModuleOrder:
    if order is None:
        return ModuleOrder(ring.order)
    if isinstance(order, ModuleOrder):
        return order
    return ModuleOrder(order)


def buchberger(
    gens: Sequence[ModuleElement],
    order: ModuleOrder | str | None = None,
    *,
    ring: RingContext | None = None,
    rank: int | None = None,
    criteria: bool = True,
) -> SubmoduleGB:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``ring`` and ``rank`` are only needed when ``gens`` is empty (the zero module).
    """
    gens = [g if isinstance(g, ModuleElement) else ModuleElement(g) for g in gens]
    if gens:
        ring = ring or gens[0].ring
        rank = rank or gens[0].rank
        for g in gens:
            if g.ring != ring:
                raise GroebnerError("generators belong to different rings")
            if g.rank != rank:
                raise GroebnerError(f"inconsistent ranks: {g.rank} vs {rank}")
    elif ring is None or rank is None:
        raise GroebnerError("the ring and rank of an empty generator list must be given")
    order = _as_order(ring, order)
    vecs = groebner([g.to_vector() for g in gens], order, criteria=criteria)
    return SubmoduleGB._from_vectors(ring, rank, order, vecs)


def _check_gb(v: ModuleElement, gb: SubmoduleGB) -> None:
    if not gb.reduced:
        raise GroebnerError("normal forms need a reduced Groebner basis")
    if v.ring != gb.ring or v.rank != gb.rank:
        raise GroebnerError("rank or ring mismatch between vector and basis")


def normal_form(v: ModuleElement, gb: SubmoduleGB) -> ModuleElement:
    _check_gb(v, gb)
    r = reduce_vector(v.to_vector(), list(gb._vectors), gb.order)
    return ModuleElement.from_vector(gb.ring, gb.rank, r)


def member(v: ModuleElement, gb: SubmoduleGB) -> bool:
    _check_gb(v, gb)
    return not reduce_vector(v.to_vector(), list(gb._vectors), gb.order)


def row_module(A: PolyMatrix, order=None) -> SubmoduleGB:
    """GB of im_R A^T, the span of the rows of A inside R^k."""
    return buchberger(A.row_elements() if A.nrows else [], order, ring=A.ring, rank=A.ncols)


def column_module(A: PolyMatrix, order=None) -> SubmoduleGB:
    """GB of im_R A, the span of the columns of A inside R^l."""
    return buchberger(A.columns() if A.ncols else [], order, ring=A.ring, rank=A.nrows)


def syzygy_vectors(gens: list[dict], rank: int, order: ModuleOrder, criteria: bool = True) -> list[dict]:
    """Reduced GB of the syzygies of ``gens`` (vectors in R^rank) as vectors in R^len(gens).

    Each generator g_j is augmented to (g_j, e_j) in R^(rank+m).  Under a POT order
    in which the original components dominate, the basis elements whose leading
    term lies in an appended component are exactly a GB of the syzygy module.
    """
    n = None
    aug = []
    for j, g in enumerate(gens):
        v = dict(g)
        if n is None and g:
            n = len(next(iter(g))) - 1
        aug.append(v)
    if n is None:
        # all generators are zero; the caller supplies n through the unit monomials
        raise GroebnerError("syzygy_vectors needs at least one nonzero generator")
    zero = (0,) * n
    for j, v in enumerate(aug):
        v[(rank + j,) + zero] = mpq(1)
    basis = groebner(aug, order, criteria=criteria)
    out = []
    key = order.key
    for b in basis:
        if _lm(b, key)[0] >= rank:
            out.append({(m[0] - rank,) + m[1:]: c for m, c in b.items()})
    return out


def syzygy_matrix(A: PolyMatrix, order=None, criteria: bool = True) -> PolyMatrix:
    """Matrix S (k x k') whose columns generate ker_R A; k' = 0 for the zero module."""
    ring, (l, k) = A.ring, A.shape
    order = _as_order(ring, order)
    if k == 0:
        return PolyMatrix(ring, [], 0)
    if l == 0 or A.is_zero():
        return PolyMatrix.identity(ring, k)
    cols = [c.to_vector() for c in A.columns()]
    vecs = syzygy_vectors(cols, l, order, criteria=criteria)
    gens = [ModuleElement.from_vector(ring, k, v).primitive() for v in vecs]
    return PolyMatrix.from_columns(ring, gens, k)
