import random
from fractions import Fraction
from math import comb

import pytest

from gramspec.errors import DependentInput, InvalidInput, MixedFlavors, MuMismatch, NonRealInput, NotPsd, ZeroSubspace
from gramspec.gram import (
    GramTensor,
    convex_combination,
    diagonal_relations_only,
    face_dimension_formula,
    face_dimension_kernel,
    gram_from_sos,
    mu,
    supporting_face,
)
from gramspec.linalg import Matrix
from gramspec.sampling import random_form, random_subspace
from gramspec.subspaces import Subspace, span

from .conftest import G, X, Y, form

I = G(0, 1)
P = X + Y * I
Q = X - Y * I


def test_mu_examples():
    assert mu(GramTensor("symmetric", 1, Matrix.identity(2))) == form(1, 0, 1)
    v = [G(1), I]
    assert mu(GramTensor("hermitian", 1, Matrix.outer(v, v))) == form(1, 0, 1)
    assert mu(GramTensor("symmetric", 2, Matrix.diag([1, 0, 1]))) == form(1, 0, 0, 0, 1)


def test_tensor_validation():
    with pytest.raises(InvalidInput):
        GramTensor("hermitian", 1, Matrix.from_rows([[G(1), G(2)], [G(3), G(1)]]))
    with pytest.raises(InvalidInput):
        GramTensor("other", 1, Matrix.identity(2))
    with pytest.raises(InvalidInput):
        GramTensor("symmetric", 2, Matrix.identity(2))
    t = gram_from_sos([P], "hermitian")
    assert GramTensor.from_json(t.to_json()) == t


def test_gram_from_sos_examples():
    t = gram_from_sos([P], "hermitian")
    assert t.rank() == 1 and t.mu() == form(1, 0, 1)
    t = gram_from_sos([X, Y], "symmetric")
    assert t.matrix == Matrix.identity(2) and t.mu() == form(1, 0, 1)
    t = gram_from_sos([P, Q], "hermitian")
    assert t.rank() == 2 and t.mu() == form(2, 0, 2)
    with pytest.raises(NonRealInput):
        gram_from_sos([P], "symmetric")


def test_mu_of_sos_is_sum_of_squares(rng):
    for _ in range(100):
        d = rng.randint(0, 5)
        real = rng.random() < 0.5
        ps = [random_form(d, rng, real=real, box=4) for _ in range(rng.randint(1, 4))]
        flavor = "symmetric" if real else "hermitian"
        t = gram_from_sos(ps, flavor)
        expected = ps[0] * ps[0].conj()
        for p in ps[1:]:
            expected = expected + p * p.conj()
        assert mu(t) == expected
        assert t.rank() == span(ps).dim
        assert t.psd()


def test_face_dimension_formula_examples():
    for d in range(1, 6):
        assert face_dimension_formula(Subspace.full(d), "symmetric") == comb(d, 2)
        assert face_dimension_formula(Subspace.full(d), "hermitian") == d * d
    assert face_dimension_formula(Subspace.full(1), "hermitian") == 1
    assert face_dimension_formula(span([X * X, Y * Y]), "symmetric") == 0
    with pytest.raises(ZeroSubspace):
        face_dimension_formula(Subspace.zero(2), "hermitian")
    with pytest.raises(NonRealInput):
        face_dimension_formula(span([P]), "symmetric")


def test_face_dimension_kernel_examples():
    assert face_dimension_kernel(span([P]), "hermitian") == 0
    assert face_dimension_kernel(span([X * X, Y * Y]), "symmetric") == 0
    with pytest.raises(ZeroSubspace):
        face_dimension_kernel(Subspace.zero(1), "symmetric")


@pytest.mark.parametrize("flavor", ["symmetric", "hermitian"])
@pytest.mark.parametrize("d", range(2, 9))
def test_formula_equals_kernel(flavor, d):
    rng = random.Random(f"{flavor}-{d}")
    for _ in range(500):
        U = random_subspace(d, rng.randint(1, d + 1), rng, real=flavor == "symmetric", box=2)
        assert face_dimension_formula(U, flavor) == face_dimension_kernel(U, flavor)


def test_diagonal_relations_examples():
    assert diagonal_relations_only([P, Q], "hermitian") == (1, True)
    assert diagonal_relations_only([X * X, Y * Y], "symmetric") == (0, True)
    assert diagonal_relations_only([X * X, X * Y, Y * Y], "symmetric") == (1, False)
    with pytest.raises(DependentInput):
        diagonal_relations_only([X, X * G(2)], "symmetric")


def test_supporting_face_examples():
    rep = supporting_face([gram_from_sos([P], "hermitian")])
    assert (rep.rank, rep.dimension, rep.simplex) == (1, 0, True)
    rep = supporting_face([gram_from_sos([P], "hermitian"), gram_from_sos([Q], "hermitian")])
    assert (rep.rank, rep.dimension, rep.polyhedral, rep.simplex) == (2, 1, True, True)
    data = rep.to_json()
    assert list(data)[:7] == [
        "flavor", "face_subspace", "rank", "dimension", "dimension_by_kernel", "polyhedral", "simplex",
    ]


def test_supporting_face_errors():
    h = gram_from_sos([P], "hermitian")
    s = gram_from_sos([X, Y], "symmetric")
    with pytest.raises(MixedFlavors):
        supporting_face([h, s])
    with pytest.raises(MuMismatch):
        supporting_face([h, gram_from_sos([X + Y], "hermitian")])
    neg = GramTensor("symmetric", 1, Matrix.diag([1, -1]))
    with pytest.raises(NotPsd):
        supporting_face([neg])


def test_face_dimension_bounds(rng):
    # every face satisfies max(0, N(r) - (2d+1)) <= dim <= upper(r)
    for _ in range(200):
        d = rng.randint(1, 6)
        flavor = rng.choice(["symmetric", "hermitian"])
        U = random_subspace(d, rng.randint(1, d + 1), rng, real=flavor == "symmetric", box=2)
        r, dim = U.dim, face_dimension_formula(U, flavor)
        if flavor == "symmetric":
            assert max(0, comb(r + 1, 2) - (2 * d + 1)) <= dim <= comb(r - 1, 2)
        else:
            assert max(0, r * r - (2 * d + 1)) <= dim <= (r - 1) ** 2


def test_max_rank_min_dim_implies_polyhedral(rng):
    # rank-one generators with independent images and dim = k are flagged polyhedral
    from gramspec.extreme import enumerate_rank_one
    from gramspec.sampling import random_conjugate_roots

    hits = 0
    for _ in range(40):
        roots = random_conjugate_roots(rng.randint(2, 4), rng)
        members = [t for _, t in enumerate_rank_one(roots)]
        chosen = rng.sample(members, rng.randint(2, min(4, len(members))))
        rep = supporting_face(chosen)
        if rep.dimension == len(chosen) - 1 and rep.rank == len(chosen):
            hits += 1
            assert rep.polyhedral and rep.simplex
    assert hits > 0


def test_convex_combination():
    a, b = gram_from_sos([P], "hermitian"), gram_from_sos([Q], "hermitian")
    m = convex_combination([a, b], [Fraction(1, 2), Fraction(1, 2)])
    assert m.rank() == 2 and m.mu() == form(1, 0, 1)
    with pytest.raises(InvalidInput):
        convex_combination([a, b], [1, 1])


def test_gram_from_sos_weight_matches_scale():
    p = form(1, 1j, 2)
    assert gram_from_sos([p], "hermitian", 3) == GramTensor("hermitian", 2, gram_from_sos([p], "hermitian").matrix).scale(3)
    with pytest.raises(InvalidInput):
        gram_from_sos([p], "hermitian", 0)
