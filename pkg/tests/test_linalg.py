from fractions import Fraction

import pytest
import sympy

from gramspec.errors import InvalidInput, NotPsd, NotSelfAdjoint
from gramspec.linalg import Matrix, RowSpace, is_psd, kernel, ldl, psd_witness, rank, rank_and_image, rref
from gramspec.subspaces import span

from .conftest import G, X, Y, form


def M(rows):
    return Matrix.from_rows([[G(int(c.real), int(c.imag)) if isinstance(c, complex) else G(c) for c in r] for r in rows])


def to_sympy(A: Matrix):
    return sympy.Matrix(
        A.rows,
        A.cols,
        [sympy.Rational(str(e.re)) + sympy.I * sympy.Rational(str(e.im)) for e in A.entries],
    )


def rand_matrix(rng, r, c, real=False, lo=-3, hi=3):
    return Matrix.from_rows([[G(rng.randint(lo, hi), 0 if real else rng.randint(lo, hi)) for _ in range(c)] for _ in range(r)])


def test_rref_examples():
    I3 = Matrix.identity(3)
    assert rref(I3) == (I3, 3, (0, 1, 2))
    R, r, piv = rref(M([[1, 2], [2, 4]]))
    assert R == M([[1, 2], [0, 0]]) and r == 1 and piv == (0,)
    R, r, _ = rref(M([[1, 1j], [-1j, 1]]))
    assert R == M([[1, 1j], [0, 0]]) and r == 1


def test_kernel_examples():
    assert kernel(Matrix.identity(3)) == []
    assert kernel(M([[1, -1]])) == [(G(1), G(1))]
    assert kernel(M([[1, 2], [2, 4]])) == [(G(-2), G(1))]


def test_rank_oracle_and_rank_nullity(rng):
    for _ in range(80):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = rand_matrix(rng, r, c, real=rng.random() < 0.5, lo=-1, hi=1)
        assert rank(A) == to_sympy(A).rank()
        ker = kernel(A)
        assert rank(A) + len(ker) == c
        for v in ker:
            assert all(x.is_zero() for x in A.apply(v))


def test_rref_idempotent_and_scale_invariant(rng):
    for _ in range(40):
        A = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        R, r, piv = rref(A)
        assert rref(R) == (R, r, piv)
        rows = A.to_rows()
        k = rng.randrange(len(rows))
        s = G(rng.randint(1, 4), rng.randint(-3, 3))
        rows[k] = [s * e for e in rows[k]]
        assert rref(Matrix.from_rows(rows))[0] == R


def test_psd_examples():
    assert is_psd(Matrix.identity(3), "symmetric")
    assert not is_psd(M([[1, 2], [2, 1]]), "symmetric")
    assert is_psd(M([[0, 0], [0, 1]]), "symmetric")
    assert not is_psd(M([[0, 1], [1, 0]]), "symmetric")
    assert psd_witness(M([[0, 1], [1, 0]]), "symmetric") == 0
    with pytest.raises(NotSelfAdjoint):
        is_psd(M([[1, 2], [3, 1]]), "symmetric")
    with pytest.raises(NotSelfAdjoint):
        is_psd(M([[1, 1j], [1j, 1]]), "hermitian")
    with pytest.raises(NotSelfAdjoint):
        is_psd(M([[1, 1j], [-1j, 1]]), "symmetric")


def test_psd_rank_one_and_perturbation(rng):
    for _ in range(60):
        v = [G(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 5))]
        A = Matrix.outer(v, v)
        assert is_psd(A, "hermitian")
        if len(v) > 1 or all(x.is_zero() for x in v):
            eps = Fraction(1, rng.randint(1, 1000))
            assert not is_psd(A - Matrix.identity(len(v)).scale(eps), "hermitian")


def test_psd_matches_leading_minors(rng):
    # positive definite B B^*: every leading principal minor is positive (sympy oracle)
    for _ in range(200):
        n = rng.randint(1, 4)
        B = rand_matrix(rng, n, n)
        A = B @ B.conj_transpose()
        S = to_sympy(A)
        minors_positive = all(sympy.re(S[:k, :k].det()) > 0 for k in range(1, n + 1))
        if minors_positive:
            assert is_psd(A, "hermitian")
        shifted = A - Matrix.identity(n).scale(Fraction(10**6))
        assert not is_psd(shifted, "hermitian")


def test_ldl_reconstructs(rng):
    for _ in range(40):
        n = rng.randint(1, 4)
        B = rand_matrix(rng, n, rng.randint(1, 3))
        A = B @ B.conj_transpose()
        acc = Matrix.zeros(n, n)
        for d, v in ldl(A, "hermitian"):
            assert d > 0
            acc = acc + Matrix.outer(v, v).scale(d)
        assert acc == A
    with pytest.raises(NotPsd):
        ldl(M([[1, 2], [2, 1]]), "symmetric")


def test_rank_and_image_examples():
    v = [G(1), G(0, 1)]
    U = rank_and_image(Matrix.outer(v, v), 1)
    assert U == span([X + Y * G(0, 1)]) and U.dim == 1
    assert rank_and_image(Matrix.identity(3), 2).dim == 3
    assert rank_and_image(Matrix.diag([1, 0, 1]), 2) == span([X * X, Y * Y])
    with pytest.raises(InvalidInput):
        rank_and_image(Matrix.identity(2), 2)


def test_matrix_json_round_trip(rng):
    A = rand_matrix(rng, 2, 3)
    assert Matrix.from_json(A.to_json()) == A
    assert len(A.to_json()["entries"]) == 6


def test_rowspace_kernel_supports():
    rs = RowSpace(3, real=True)
    rs.add_int([1, 1, 0])
    # kernel of [1 1 0] is spanned by (-1, 1, 0) and (0, 0, 1)
    assert rs.kernel_supports() == [{0, 1}, {2}]
