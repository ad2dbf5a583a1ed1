import random
import sys

import pytest
import sympy
from hypothesis import strategies as st

from syzkit.gb import PolyMatrix
from syzkit.poly import Polynomial, QQ, RingContext


@pytest.fixture
def R2():
    return RingContext(("x", "y"))


@pytest.fixture
def R3():
    return RingContext(("x", "y", "z"))


def random_poly(rng: random.Random, ring: RingContext, terms=4, deg=3, coeff=5, frac=False) -> Polynomial:
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, deg) for _ in range(ring.n))
        c = QQ(rng.randint(-coeff, coeff), rng.randint(1, 4) if frac else 1)
        out[e] = out.get(e, QQ(0)) + c
    return Polynomial(ring, out)


def random_matrix(rng: random.Random, ring: RingContext, rows: int, cols: int, **kw) -> PolyMatrix:
    return PolyMatrix(ring, [[random_poly(rng, ring, **kw) for _ in range(cols)] for _ in range(rows)], cols)


def polys(ring: RingContext, max_terms=5, max_deg=3, frac=True):
    """Hypothesis strategy for polynomials over ``ring``."""
    coeffs = st.builds(lambda a, b: QQ(a, b), st.integers(-20, 20), st.integers(1, 6)) if frac else st.integers(-9, 9)
    exps = st.tuples(*[st.integers(0, max_deg)] * ring.n)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: Polynomial(ring, {e: QQ(c) for e, c in d.items()})
    )


def to_sympy(p: Polynomial, syms):
    expr = sympy.Integer(0)
    for c, e in p.terms:
        m = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            m *= s**k
        expr += m
    return expr


def sympy_matrix(A: PolyMatrix, syms) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(A[i, j], syms) for j in range(A.ncols)] for i in range(A.nrows)])


def gauss_to_sympy(v):
    return sympy.Rational(int(v.re.numerator), int(v.re.denominator)) + sympy.I * sympy.Rational(int(v.im.numerator), int(v.im.denominator))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
