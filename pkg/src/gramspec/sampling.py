"""Seeded random inputs: root lists, forms and subspaces."""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import BinaryForm, RootList, linear_factor
from .scalars import GaussianRational
from .subspaces import Subspace, span

__all__ = ["random_conjugate_roots", "random_form", "random_subspace", "structured_subspace"]


def _rand_gr(rng: random.Random, box: int, real: bool) -> GaussianRational:
    re = rng.randint(-box, box)
    im = 0 if real else rng.randint(-box, box)
    return GaussianRational(re, im)


def random_conjugate_roots(d: int, rng: random.Random, box: int = 8) -> RootList:
    """Roots of a random positive form of degree 2d with 2d distinct non-real roots."""
    points: list[GaussianRational] = []
    seen: set[GaussianRational] = set()
    while len(points) < 2 * d:
        a = GaussianRational(Fraction(rng.randint(-box, box), rng.randint(1, 3)), rng.randint(1, box))
        if a in seen:
            continue
        seen.update((a, a.conj()))
        points += [a, a.conj()]
    lead = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    return RootList(GaussianRational(lead), tuple(points))


def random_form(degree: int, rng: random.Random, real: bool = True, box: int = 5) -> BinaryForm:
    """A random nonzero form with Gaussian-integer coefficients in ``[-box, box]``."""
    while True:
        f = BinaryForm(degree, tuple(_rand_gr(rng, box, real) for _ in range(degree + 1)))
        if not f.is_zero():
            return f


def random_subspace(degree: int, dim: int, rng: random.Random, real: bool = True, box: int = 5) -> Subspace:
    """Span of ``dim`` random forms (the dimension may come out smaller)."""
    if dim == 0:
        return Subspace.zero(degree)
    return span([random_form(degree, rng, real, box) for _ in range(dim)])


def structured_subspace(degree: int, dim: int, rng: random.Random, real: bool = True) -> Subspace:
    """``l^(degree-dim+1)`` times the full space of forms of degree ``dim-1``.

    These satisfy ``dim(UU) = 2 dim(U) - 1`` and have the common root of the
    linear form l; l is ``y`` with probability 1/4.
    """
    if rng.random() < 0.25:
        l = BinaryForm(1, (GaussianRational(0), GaussianRational(1)))
    else:
        l = linear_factor(_rand_gr(rng, 6, real) / rng.randint(1, 4))
    m = dim - 1
    cof = l.pow(degree - m)
    return span([cof * BinaryForm.monomial(m, j) for j in range(m + 1)])
