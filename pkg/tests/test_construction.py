import random
from math import comb

import pytest

from gramspec.construction import (
    ScalarPicker,
    careful_special_basis,
    cofactor_q,
    gaussian_integers,
    hermitian_simplex_face,
    special_basis,
    sub_face_sample_ranks,
    symmetric_simplex_face,
)
from gramspec.errors import ScalarExhaustion, ZeroSubspace
from gramspec.forms import evaluate
from gramspec.linalg import Matrix, rank
from gramspec.subspaces import Subspace, conj_space, product, span

from .conftest import G, X, Y

I = G(0, 1)


def test_candidate_order():
    it = gaussian_integers()
    first = [next(it) for _ in range(9)]
    assert first == [G(0), G(1), G(-1), I, -I, G(1, 1), G(1, -1), G(-1, 1), G(-1, -1)]


def test_special_basis_examples():
    sel = special_basis(span([Y, X]))  # 1 and x after dehomogenizing
    assert sel.lambdas == [G(0), G(1)]
    assert [b.dehomogenize() for b in sel.transformed_basis] == [[G(1)], [G(0), G(1)]]
    sel = special_basis(span([X]))
    assert sel.lambdas == [G(1)]
    with pytest.raises(ZeroSubspace):
        special_basis(Subspace.zero(2))


def _triangular(sel):
    for l, lam in enumerate(sel.lambdas):
        assert not evaluate(sel.transformed_basis[l], lam).is_zero()
        for j in range(l + 1, len(sel.lambdas)):
            assert evaluate(sel.transformed_basis[j], lam).is_zero()


def _only_zero_vanishes(U, points):
    E = Matrix.from_rows([[evaluate(p, c) for p in U.forms()] for c in points])
    return rank(E) == U.dim


def test_special_basis_random(rng):
    from gramspec.sampling import random_subspace

    for _ in range(40):
        d = rng.randint(1, 6)
        U = random_subspace(d, rng.randint(1, d + 1), rng, real=False, box=3)
        sel = special_basis(U)
        _triangular(sel)
        assert _only_zero_vanishes(U, sel.lambdas)
        sel = careful_special_basis(U)
        assert all(not c.is_real() for c in sel.lambdas)
        assert _only_zero_vanishes(U, sel.lambdas)
        assert _only_zero_vanishes(U, [c.conj() for c in sel.lambdas])


def test_careful_examples():
    sel = careful_special_basis(Subspace.full(1))
    a, b = sel.lambdas
    assert not a.is_real() and not b.is_real() and b not in (a, a.conj())
    sel = careful_special_basis(span([X - Y * I]))
    (lam,) = sel.lambdas
    assert lam != I and lam.conj() != I
    assert lam == G(1, 1)  # i is a root, -i a root of the conjugate


def test_picker_exhaustion():
    picker = ScalarPicker(budget=5)
    with pytest.raises(ScalarExhaustion):
        picker.pick(lambda c: False)


def test_cofactor_examples():
    q, gammas = cofactor_q(Subspace.full(2), 3)
    assert q.degree == 3 and len(gammas) == 3
    assert gammas == [I, G(1, 1), G(-1, 1)]
    cert = hermitian_simplex_face(2, "qi")
    U0 = span(cert.forms)
    q, gammas = cofactor_q(product(U0, U0), 6, avoid=cert.f_roots.points)
    assert q.degree == 6
    pts = set(cert.f_roots.points)
    assert all(not c.is_real() and c not in pts and c.conj() not in pts for c in gammas)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("variant", ["plain", "qi"])
def test_hermitian_construction(k, variant):
    c = hermitian_simplex_face(k, variant)
    d = comb(k + 1, 2)
    assert c.degree == d
    assert (c.face.rank, c.face.dimension, c.face.dimension_by_kernel) == (k + 1, k, k)
    assert c.face.polyhedral and c.face.simplex
    assert all(t.rank() == 1 for t in c.generators)
    if variant == "qi":
        U = c.face.face_subspace
        assert product(U, U).dim == comb(k + 2, 2)


def test_hermitian_base_case():
    c = hermitian_simplex_face(1)
    assert str(c.f) == "x^2 + y^2"
    assert (c.face.rank, c.face.dimension) == (2, 1)


def test_recursion_consistency():
    prev = hermitian_simplex_face(2)
    cur = hermitian_simplex_face(3)
    assert cur.trace[-1]["g"] == prev.f.to_json()
    assert cur.f_roots.points[: 2 * prev.degree] == prev.f_roots.points


def test_certificate_roots_and_positivity():
    for c in (hermitian_simplex_face(3), symmetric_simplex_face(1)):
        pts = c.f_roots.points
        assert len(set(pts)) == len(pts) == 2 * c.degree
        assert set(pts) == {p.conj() for p in pts} and not any(p.is_real() for p in pts)
        rng = random.Random(7)
        for _ in range(50):
            v = evaluate(c.f, G(rng.randint(-40, 40)) / rng.randint(1, 9))
            assert v.is_real() and v.re > 0


@pytest.mark.parametrize("k", [1, 2])
def test_symmetric_construction(k):
    c = symmetric_simplex_face(k)
    d = (k + 1) ** 2
    assert c.degree == d
    assert (c.face.rank, c.face.dimension, c.face.dimension_by_kernel) == (2 * (k + 1), k, k)
    assert c.face.simplex
    assert all(t.rank() == 2 for t in c.generators)
    assert comb(k + 3, 2) <= 2 * d - 2 and (k + 1) ** 2 <= d


def test_symmetric_midpoint_even_rank():
    c = symmetric_simplex_face(1)
    from fractions import Fraction
    from gramspec.gram import convex_combination

    mid = convex_combination(c.generators[:2], [Fraction(1, 2), Fraction(1, 2)])
    assert mid.rank() == 4
    assert all(r % 2 == 0 for r in sub_face_sample_ranks(c.generators, 20, random.Random(1)))


def test_random_picker_is_reproducible():
    a = hermitian_simplex_face(3, "qi", ScalarPicker(seed=11), base_root=G(2, 3))
    b = hermitian_simplex_face(3, "qi", ScalarPicker(seed=11), base_root=G(2, 3))
    assert a.to_json() == b.to_json()
    assert a.face.dimension == 3
