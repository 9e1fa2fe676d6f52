"""Subspaces of degree-d binary forms, held in canonical RREF."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, InvalidInput
from .forms import BinaryForm
from .linalg import Matrix, RowSpace, gaussian_int_row
from .scalars import GaussianRational

__all__ = ["Subspace", "span", "product", "conj_space", "contains", "subspace_sum"]

GInt = tuple[list[int], list[int]]


def gint_conv(a: GInt, b: GInt, conj_b: bool = False) -> GInt:
    """Product of two Gaussian-integer coefficient vectors (forms)."""
    are, aim = a
    bre, bim = b
    if conj_b:
        bim = [-x for x in bim]
    n = len(are) + len(bre) - 1
    re = [0] * n
    im = [0] * n
    for j, (ar, ai) in enumerate(zip(are, aim)):
        if not ar and not ai:
            continue
        for k, (br, bi) in enumerate(zip(bre, bim)):
            re[j + k] += ar * br - ai * bi
            im[j + k] += ar * bi + ai * br
    return re, im


@dataclass(frozen=True)
class Subspace:
    ambient_degree: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_degree + 1:
            raise InvalidInput("basis width must be ambient_degree + 1")

    # -- construction -------------------------------------------------------
    @classmethod
    def from_vectors(cls, degree: int, vectors: Iterable[Sequence[GaussianRational]]) -> Subspace:
        vecs = [list(v) for v in vectors]
        real = all(x.is_real() for v in vecs for x in v)
        rs = RowSpace(degree + 1, real=real)
        for v in vecs:
            rs.add(v)
            if rs.is_full():
                break
        return cls._from_rowspace(degree, rs)

    @classmethod
    def _from_rowspace(cls, degree: int, rs: RowSpace) -> Subspace:
        rows = rs.rref_rows()
        return cls(degree, Matrix(len(rows), degree + 1, tuple(x for r in rows for x in r)))

    @classmethod
    def full(cls, degree: int) -> Subspace:
        return cls(degree, Matrix.identity(degree + 1))

    @classmethod
    def zero(cls, degree: int) -> Subspace:
        return cls(degree, Matrix(0, degree + 1, ()))

    # -- views --------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_degree + 1 - self.dim

    def forms(self) -> list[BinaryForm]:
        """The RREF basis as forms, highest x-power pivot first."""
        return [BinaryForm(self.ambient_degree, self.basis.row(i)) for i in range(self.dim)]

    def ascending_forms(self) -> list[BinaryForm]:
        """RREF basis ordered by increasing degree of the dehomogenization."""
        return self.forms()[::-1]

    def is_real(self) -> bool:
        return self.basis.is_real()

    @cached_property
    def _gint_rows(self) -> list[GInt]:
        return [gaussian_int_row(self.basis.row(i)) for i in range(self.dim)]

    def _rowspace(self) -> RowSpace:
        rs = RowSpace(self.ambient_degree + 1, real=self.is_real())
        for re, im in self._gint_rows:
            rs.add_int(re, im)
        return rs

    def __iter__(self) -> Iterator[BinaryForm]:
        return iter(self.forms())

    def conj(self) -> Subspace:
        return conj_space(self)

    def __contains__(self, f: BinaryForm) -> bool:
        return contains(self, f)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum([self, other])

    def to_json(self) -> dict:
        return {"degree": self.ambient_degree, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Subspace:
        try:
            degree = int(data["degree"])
            m = Matrix.from_json(data["basis"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad subspace encoding: {exc}") from exc
        # re-canonicalize: files need not carry an RREF basis
        return cls.from_vectors(degree, m.to_rows())

    def __repr__(self) -> str:
        inner = ", ".join(str(f) for f in self.forms())
        return f"Subspace(d={self.ambient_degree}, dim={self.dim}, [{inner}])"


def span(forms: Sequence[BinaryForm], degree: int | None = None) -> Subspace:
    forms = list(forms)
    if not forms:
        if degree is None:
            raise InvalidInput("span of no forms needs an explicit degree")
        return Subspace.zero(degree)
    d = forms[0].degree
    if degree is not None and degree != d:
        raise DegreeMismatch(f"expected degree {degree}, got {d}")
    for f in forms:
        if f.degree != d:
            raise DegreeMismatch(f"mixed degrees {d} and {f.degree} in span")
    return Subspace.from_vectors(d, [f.coeffs for f in forms])


def _products(U: Subspace, W: Subspace, conj_w: bool) -> Subspace:
    deg = U.ambient_degree + W.ambient_degree
    real = U.is_real() and W.is_real()
    rs = RowSpace(deg + 1, real=real)
    ur, wr = U._gint_rows, W._gint_rows
    symmetric = U is W or U == W
    for j, a in enumerate(ur):
        for k, b in enumerate(wr):
            if symmetric and not conj_w and k < j:
                continue  # bilinear and commutative: p_j p_k = p_k p_j
            re, im = gint_conv(a, b, conj_b=conj_w)
            rs.add_int(re, None if real else im)
            if rs.is_full():
                return Subspace._from_rowspace(deg, rs)
    return Subspace._from_rowspace(deg, rs)


def product(U: Subspace, W: Subspace) -> Subspace:
    """Span of all products ``p*q`` with ``p`` in U and ``q`` in W."""
    return _products(U, W, conj_w=False)


def conj_product(U: Subspace) -> Subspace:
    """``U * conj(U)``, the span of all ``p * conj(q)``."""
    return _products(U, U, conj_w=True)


def conj_space(U: Subspace) -> Subspace:
    if U.is_real():
        return U
    return Subspace.from_vectors(U.ambient_degree, [[x.conj() for x in U.basis.row(i)] for i in range(U.dim)])


def contains(U: Subspace, f: BinaryForm) -> bool:
    if f.degree != U.ambient_degree:
        raise DegreeMismatch(f"form of degree {f.degree} vs subspace of degree {U.ambient_degree}")
    if f.is_zero():
        return True
    rs = U._rowspace()
    if rs.real and not f.is_real():
        # a real basis spans a conjugation-stable space over Q(i)
        return contains(U, f.real_part()) and contains(U, f.imag_part())
    return not rs.add(list(f.coeffs))


def subspace_sum(spaces: Sequence[Subspace]) -> Subspace:
    spaces = list(spaces)
    if not spaces:
        raise InvalidInput("sum of no subspaces")
    d = spaces[0].ambient_degree
    if any(s.ambient_degree != d for s in spaces):
        raise DegreeMismatch("subspaces live in different degrees")
    return Subspace.from_vectors(d, [s.basis.row(i) for s in spaces for i in range(s.dim)])
