import random

import pytest
import sympy

from syzkit.gb import PolyMatrix, syzygy_matrix
from syzkit.modules import ideal, is_submodule, module_equal
from syzkit.poly import GaussianRational, RingContext
from syzkit.rank import (
    NotHomogeneousError,
    check_R_condition,
    evaluate_matrix,
    fitting_ideal,
    fitting_ideals,
    generic_rank,
    is_C_constant_rank,
    is_C_elliptic,
    is_row_homogeneous,
    minors,
    pointwise_exactness,
    radical_exponent,
    radical_membership,
    sample_points,
    wave_cone_span,
)

from conftest import random_matrix, random_poly, sympy_matrix

R = RingContext(("x", "y"))
R12 = RingContext(("x1", "x2"))
R123 = RingContext(("x1", "x2", "x3"))
RXYZ = RingContext(("x", "y", "z"))
I_ = GaussianRational(0, 1)

CURL = [["0", "-x3", "x2"], ["x3", "0", "-x1"], ["-x2", "x1", "0"]]
EULER = [["x1", "0", "x2", "x3", "x2"], ["0", "x1", "-x3", "x2", "x3"], ["x2", "x3", "0", "0", "0"]]


def M(ring, rows):
    return PolyMatrix.from_strings(ring, rows)


def test_minors_of_diagonal():
    A = M(R12, [["x1", "0"], ["0", "x2"]])
    assert sorted(map(str, minors(A, 1))) == ["x1", "x2"]
    assert [str(p) for p in minors(A, 2)] == ["x1*x2"]


def test_fitting_of_diagonal():
    F = fitting_ideals(M(R12, [["x1", "0"], ["0", "x2"]]))
    assert module_equal(F.ideals[1], ideal(R12, [R12.parse("x1"), R12.parse("x2")]))
    assert module_equal(F.ideals[2], ideal(R12, [R12.parse("x1*x2")]))
    assert F.generic_rank == 2 and F.fitting_index == 0


def test_generic_rank_examples():
    assert generic_rank(M(R123, EULER)) == 3
    assert generic_rank(PolyMatrix.identity(R, 4)) == 4
    a4 = [["x1^2", "x1*x2", "x2^2"], ["x2^2", "x1*x3", "x3^2"], ["-x1^2-x2^2", "-x1*x2-x1*x3", "-x2^2-x3^2"]]
    assert generic_rank(M(R123, a4)) == 2
    assert generic_rank(PolyMatrix.zeros(R, 2, 2)) == 0


def test_euler_rank_drop_locus():
    A = M(R123, EULER)
    I3 = fitting_ideal(A, 3)
    assert not I3.is_zero()
    for p in I3.polynomials():
        assert p([1, 0, 0]) == 0


def test_curl_fitting():
    F = fitting_ideals(M(R123, CURL))
    assert F.ideals[3].is_zero()
    for x in R123.gens():
        assert radical_membership(x, F.ideals[2])


def test_radical_membership_examples():
    x, y = R.gens()
    assert radical_membership(x, ideal(R, [x * x]))
    assert not radical_membership(x, ideal(R, [y]))
    assert radical_exponent(x, ideal(R, [x**3, y])) == 3
    assert radical_exponent(x + y, ideal(R, [x**2, y**2])) == 3
    assert radical_exponent(x, ideal(R, [y])) is None


@pytest.mark.parametrize("seed", range(15))
def test_radical_membership_vs_power_search(seed):
    rng = random.Random(900 + seed)
    x, y = R.gens()
    gens = [x ** rng.randint(1, 3), y ** rng.randint(1, 3) + random_poly(rng, R, terms=1, deg=1, coeff=2) * x]
    f = random_poly(rng, R, terms=2, deg=2, coeff=3)
    I = ideal(R, gens)
    # the ideal is (x, y)-primary up to units, so f ∈ √I iff f(0, 0) = 0
    expected = f([0, 0]) == 0
    if not I.is_unit():
        assert radical_membership(f, I) == expected


def test_homogeneity():
    a4 = [["x1^2", "x1*x2", "x2^2"], ["x2^2", "x1*x3", "x3^2"], ["-x1^2-x2^2", "-x1*x2-x1*x3", "-x2^2-x3^2"]]
    assert is_row_homogeneous(M(R123, a4)) == (True, [2, 2, 2])
    assert is_row_homogeneous(M(R, [["x+x^2"]]))[0] is False
    assert is_row_homogeneous(M(R, [["x", "y^2"]])) == (False, [None])


def test_verdict_examples():
    a3 = M(R12, [["x1^2+x2^2"]])
    v = is_C_elliptic(a3)
    assert not v.holds and v.certificate["witness"] == ["1", "i"]
    curl = M(R123, CURL)
    assert not is_C_elliptic(curl).holds
    assert is_C_constant_rank(curl).holds
    d = M(R12, [["x1", "0"], ["0", "x2"]])
    v = is_C_constant_rank(d)
    assert not v.holds and v.certificate["witness"] == ["1", "0"]
    for rows in ([["x1"], ["x2"]], [["x1", "x2"], ["-x2", "x1"], ["x1", "0"]]):
        assert is_C_elliptic(M(R12, rows)).holds


def test_verdicts_need_homogeneity():
    with pytest.raises(NotHomogeneousError):
        is_C_elliptic(M(R, [["x+y^2"]]))


def test_real_condition_examples():
    d = M(R12, [["x1", "0"], ["0", "x2"]])
    r = check_R_condition(d, "constantRank", witnesses=[[1, 0]])
    assert r.status == "refuted" and [str(c) for c in r.witness] == ["1", "0"]
    assert check_R_condition(M(R123, CURL), "constantRank").status == "certifiedViaC"
    a4 = [["x1^2", "x1*x2", "x2^2"], ["x2^2", "x1*x3", "x3^2"], ["-x1^2-x2^2", "-x1*x2-x1*x3", "-x2^2-x3^2"]]
    assert check_R_condition(M(R123, a4), "constantRank", sample_count=200).status == "inconclusive"
    a3 = M(R12, [["x1^2+x2^2"]])
    assert check_R_condition(a3, "ellipticity", witnesses=[[1, I_]]).status == "inconclusive"


def test_sampling_is_seeded():
    assert sample_points(3, 10, 4) == sample_points(3, 10, 4)
    assert sample_points(3, 10, 4) != sample_points(3, 10, 5)
    assert all(any(p) and max(map(abs, p)) <= 101 for p in sample_points(2, 200, 0))


def test_evaluate_euler():
    A = M(R123, EULER)
    ev = evaluate_matrix(A, [0, 1, 0])
    assert ev.rank == 3
    assert [[str(c) for c in v] for v in ev.kernel] == [["0", "1", "0", "0", "0"], ["0", "0", "-1", "0", "1"]]
    ev = evaluate_matrix(A, [1, 0, 0])
    assert ev.rank == 2 and len(ev.kernel) == 3
    ev = evaluate_matrix(PolyMatrix.identity(R, 3), [2, I_])
    assert ev.rank == 3 and ev.kernel == []


def test_pointwise_euler():
    A = M(R123, EULER)
    S = syzygy_matrix(A)
    a = pointwise_exactness(A, S, [0, 1, 0])
    assert (a.relation, a.dimKerA, a.dimImS, a.conforms) == ("equal", 2, 2, True)
    b = pointwise_exactness(A, S, [1, 0, 0])
    assert (b.relation, b.dimKerA, b.dimImS, b.conforms) == ("strictSuperset", 3, 0, True)


def test_pointwise_identity_and_bad_s():
    A = PolyMatrix.identity(R, 2)
    c = pointwise_exactness(A, syzygy_matrix(A), [3, 1])
    assert c.relation == "equal" and c.dimKerA == 0
    with pytest.raises(ValueError):
        pointwise_exactness(M(R, [["x", "y"]]), M(R, [["1"], ["1"]]), [1, 1])


def test_wave_cone_span():
    assert wave_cone_span(PolyMatrix.zeros(R, 2, 0)) == []
    assert len(wave_cone_span(M(R, [["y"], ["-x"]]))) == 2
    assert len(wave_cone_span(M(RXYZ, [["x^2"], ["y^2"], ["z^2"]]))) == 3
    assert len(wave_cone_span(M(R, [["x+y"], ["2*x+2*y"]]))) == 1


# ---------------------------------------------------------------------------
# properties


def _unimodular(rng, ring, k):
    """Product of elementary matrices with polynomial multipliers."""
    U = PolyMatrix.identity(ring, k)
    for _ in range(3):
        i, j = rng.sample(range(k), 2)
        E = PolyMatrix.identity(ring, k)
        rows = [list(r) for r in E.rows]
        rows[i][j] = random_poly(rng, ring, terms=2, deg=1, coeff=2)
        U = PolyMatrix(ring, rows, k) @ U
    return U


@pytest.mark.parametrize("seed", range(20))
def test_fitting_invariance_under_unimodular(seed):
    rng = random.Random(1000 + seed)
    A = random_matrix(rng, R, 2, 3, terms=2, deg=2, coeff=3)
    B = _unimodular(rng, R, 2) @ A @ _unimodular(rng, R, 3)
    FA, FB = fitting_ideals(A), fitting_ideals(B)
    assert FA.generic_rank == FB.generic_rank
    for j in FA.ideals:
        assert module_equal(FA.ideals[j], FB.ideals[j])


@pytest.mark.parametrize("seed", range(15))
def test_fitting_chain_and_rank_oracle(seed):
    rng = random.Random(1100 + seed)
    A = random_matrix(rng, R, rng.randint(1, 3), rng.randint(1, 3), terms=2, deg=2, coeff=3)
    F = fitting_ideals(A)
    for j in range(2, min(A.shape) + 1):
        assert is_submodule(F.ideals[j], F.ideals[j - 1])
    r = generic_rank(A)
    assert r == F.generic_rank == sympy_matrix(A, sympy.symbols("x y")).rank(simplify=True)
    # rank at any point never exceeds the generic rank
    for p in sample_points(2, 10, seed):
        assert evaluate_matrix(A, p).rank <= r


def test_homogeneous_rank_is_scale_invariant():
    A = M(R123, EULER)
    for p in sample_points(3, 20, 1):
        t = GaussianRational(-7, 2)
        assert evaluate_matrix(A, p).rank == evaluate_matrix(A, [t * v for v in p]).rank
