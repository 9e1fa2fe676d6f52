import random

import pytest

from gramspec.errors import DegreeMismatch, InvalidInput
from gramspec.forms import BinaryForm
from gramspec.sampling import random_subspace
from gramspec.subspaces import Subspace, conj_product, conj_space, contains, product, span, subspace_sum

from .conftest import G, X, Y, form

I = G(0, 1)


def test_span_examples():
    assert span([X + Y * I, X - Y * I]).dim == 2
    assert span([X * X, X * X * G(2)]).dim == 1
    assert span([], degree=3).dim == 0
    with pytest.raises(DegreeMismatch):
        span([X, X * X])
    with pytest.raises(InvalidInput):
        span([])


def test_canonical_equality():
    a = span([X + Y, X - Y])
    b = span([X, Y * G(3)])
    assert a == b and a.basis == Subspace.full(1).basis


def test_product_examples():
    for d in range(1, 5):
        full = Subspace.full(d)
        assert product(full, full).dim == 2 * d + 1
    U = span([Y * Y, X * Y, X * X])  # 1, x, x^2 padded to degree 2
    assert product(U, U).dim == 5
    U = span([X.pow(3), Y.pow(3)])
    assert product(U, U) == span([X.pow(6), X.pow(3) * Y.pow(3), Y.pow(6)])


def test_conj_space_examples():
    assert conj_space(span([X + Y * I])) == span([X - Y * I])
    R = span([X * X + Y * Y, X * Y])
    assert conj_space(R) == R
    U = span([form(1, 2j, 3), form(0, 1, 1j)])
    assert conj_space(conj_space(U)) == U


def test_contains_examples():
    assert contains(Subspace.full(1), X + Y * I)
    assert not contains(span([Y * Y]), X * X)
    assert contains(span([X * Y]), BinaryForm.zero(2))
    with pytest.raises(DegreeMismatch):
        contains(span([X]), X * X)


def test_json_round_trip():
    U = span([form(1, 2j, 3), form(0, 1, 1j)])
    assert Subspace.from_json(U.to_json()) == U


@pytest.mark.parametrize("d", range(3, 11))
def test_product_lower_bounds_and_codimension(d):
    rng = random.Random(1000 + d)
    for i in range(60):
        real = i % 2 == 0
        U = random_subspace(d, rng.randint(1, d + 1), rng, real=real, box=2)
        W = random_subspace(d, rng.randint(1, d + 1), rng, real=real, box=2)
        n = U.dim
        UU = product(U, U)
        assert UU.dim >= 2 * n - 1
        assert conj_product(U).dim >= 2 * n - 1
        assert UU.codim <= 2 * U.codim
        assert product(U, W) == product(W, U)


def test_sum():
    assert subspace_sum([span([X * X]), span([Y * Y]), span([X * X + Y * Y])]).dim == 2
    with pytest.raises(DegreeMismatch):
        span([X]) + span([X * X])
