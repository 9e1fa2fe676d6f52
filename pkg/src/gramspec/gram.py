"""Gram tensors, the multiplication map and faces of Gram spectrahedra.

A Gram tensor of a degree-2d form is stored as its (d+1)x(d+1) matrix in the
monomial basis ``x^d, x^(d-1) y, ..., y^d``; ``flavor`` is ``"symmetric"``
(real symmetric matrices, sums of squares) or ``"hermitian"`` (Hermitian
matrices, sums of Hermitian squares ``p * conj(p)``).

Face dimensions are computed twice, by unrelated routes:

* :func:`face_dimension_formula` counts ``dim(U U)`` resp. ``dim(U conj(U))``
  over Q(i) and subtracts it from the dimension of the tensor space;
* :func:`face_dimension_kernel` writes down the real-linear map from
  self-adjoint coordinates on a basis of U to the coefficients of the
  multiplied-out form and takes its kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    DependentInput,
    InvalidInput,
    MixedFlavors,
    MuMismatch,
    NonRealInput,
    NotPsd,
    VerificationError,
    ZeroSubspace,
)
from .forms import BinaryForm
from .linalg import Matrix, RowSpace, gaussian_int_row, ldl, psd_witness, rank_and_image
from .scalars import ZERO, GaussianRational
from .subspaces import Subspace, conj_product, gint_conv, product, span, subspace_sum

__all__ = [
    "FLAVORS",
    "GramTensor",
    "FaceReport",
    "mu",
    "gram_from_sos",
    "face_dimension_formula",
    "face_dimension_kernel",
    "diagonal_relations_only",
    "supporting_face",
]

FLAVORS = ("symmetric", "hermitian")


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise InvalidInput(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


@dataclass(frozen=True)
class GramTensor:
    flavor: str
    degree: int
    matrix: Matrix

    def __post_init__(self):
        _check_flavor(self.flavor)
        n = self.degree + 1
        if self.matrix.rows != n or self.matrix.cols != n:
            raise DegreeMismatch(f"degree-{self.degree} tensor needs a {n}x{n} matrix")
        # psd_witness validates self-adjointness for the flavor
        psd_witness(self.matrix, self.flavor)

    @classmethod
    def _unchecked(cls, flavor: str, degree: int, matrix: Matrix) -> GramTensor:
        # for matrices that are psd by construction
        t = object.__new__(cls)
        object.__setattr__(t, "flavor", flavor)
        object.__setattr__(t, "degree", degree)
        object.__setattr__(t, "matrix", matrix)
        return t

    def psd(self) -> bool:
        return psd_witness(self.matrix, self.flavor) is None

    def image(self) -> Subspace:
        return rank_and_image(self.matrix, self.degree)

    def rank(self) -> int:
        return self.image().dim

    def mu(self) -> BinaryForm:
        return mu(self)

    def pieces(self) -> list[tuple[Fraction, BinaryForm]]:
        """``theta = sum w * (p ⊗ conj(p))`` with rational weights ``w > 0``."""
        return [(w, BinaryForm(self.degree, v)) for w, v in ldl(self.matrix, self.flavor)]

    def __add__(self, other: GramTensor) -> GramTensor:
        if other.flavor != self.flavor:
            raise MixedFlavors("cannot add tensors of different flavors")
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add tensors of different degrees")
        return GramTensor(self.flavor, self.degree, self.matrix + other.matrix)

    def scale(self, s) -> GramTensor:
        s = Fraction(s)
        return GramTensor(self.flavor, self.degree, self.matrix.scale(s))

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "degree": self.degree, "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> GramTensor:
        try:
            return cls(str(data["flavor"]), int(data["degree"]), Matrix.from_json(data["matrix"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad tensor encoding: {exc}") from exc


def convex_combination(thetas: Sequence[GramTensor], weights: Sequence) -> GramTensor:
    ws = [Fraction(w) for w in weights]
    if len(ws) != len(thetas) or any(w < 0 for w in ws) or sum(ws) != 1:
        raise InvalidInput("weights must be non-negative and sum to one")
    acc = None
    for t, w in zip(thetas, ws):
        if not w:
            continue
        term = t.scale(w)
        acc = term if acc is None else acc + term
    return acc


def mu(theta: GramTensor) -> BinaryForm:
    """Multiply out: ``sum_{j,k} A[j,k] m_j m_k`` with ``m_j = x^(d-j) y^j``."""
    d = theta.degree
    A = theta.matrix
    out = [ZERO] * (2 * d + 1)
    for j in range(d + 1):
        for k in range(d + 1):
            a = A[j, k]
            if not a.is_zero():
                out[j + k] = out[j + k] + a
    return BinaryForm(2 * d, tuple(out))


def gram_from_sos(ps: Sequence[BinaryForm], flavor: str, weight=1) -> GramTensor:
    """``weight * sum p ⊗ conj(p)``; psd by construction for ``weight > 0``."""
    _check_flavor(flavor)
    weight = Fraction(weight)
    if weight <= 0:
        raise InvalidInput("weight must be positive")
    ps = list(ps)
    if not ps:
        raise InvalidInput("need at least one form")
    d = ps[0].degree
    if any(p.degree != d for p in ps):
        raise DegreeMismatch("all forms must have the same degree")
    if flavor == "symmetric" and not all(p.is_real() for p in ps):
        raise NonRealInput("symmetric Gram tensors need real forms")
    n = d + 1
    acc = [ZERO] * (n * n)
    for p in ps:
        v = p.coeffs
        for j in range(n):
            if v[j].is_zero():
                continue
            for k in range(j, n):
                if not v[k].is_zero():
                    acc[j * n + k] = acc[j * n + k] + v[j] * v[k].conj()
    for j in range(n):
        for k in range(j):
            acc[j * n + k] = acc[k * n + j].conj()
    m = Matrix(n, n, tuple(acc))
    if weight != 1:
        m = m.scale(weight)
    return GramTensor._unchecked(flavor, d, m)


# ---------------------------------------------------------------------------
# face dimensions


def _require_face_subspace(U: Subspace, flavor: str) -> None:
    _check_flavor(flavor)
    if U.dim == 0:
        raise ZeroSubspace("face dimension of the zero subspace is undefined")
    if flavor == "symmetric" and not U.is_real():
        raise NonRealInput("symmetric faces live in real subspaces")


def face_dimension_formula(U: Subspace, flavor: str) -> int:
    _require_face_subspace(U, flavor)
    r = U.dim
    if flavor == "symmetric":
        return r * (r + 1) // 2 - product(U, U).dim
    return r * r - conj_product(U).dim


def _relation_columns(forms: Sequence[BinaryForm], flavor: str):
    """Real coordinates of self-adjoint tensors on ``forms`` and their images.

    Returns ``(labels, columns, n_offdiag)``: column ``c`` is the (integer
    scaled) coefficient vector of the form obtained by multiplying out the
    tensor with a single unit coordinate ``labels[c]``. Off-diagonal
    coordinates come first, diagonal ones last.
    """
    g = [gaussian_int_row(f.coeffs) for f in forms]
    r = len(g)
    off_labels, off_cols, diag_labels, diag_cols = [], [], [], []
    for j in range(r):
        for k in range(j, r):
            if flavor == "symmetric":
                re, im = gint_conv(g[j], g[k])
                if any(im):
                    raise NonRealInput("symmetric relations need real forms")
                if j == k:
                    diag_labels.append((j, j))
                    diag_cols.append(re)
                else:
                    off_labels.append((j, k))
                    off_cols.append(re)
            else:
                re, im = gint_conv(g[j], g[k], conj_b=True)
                if j == k:
                    diag_labels.append((j, j))
                    diag_cols.append(re)
                else:
                    # A[j,k] = u + i v, A[k,j] = u - i v contributes
                    # u * 2 Re(p_j conj p_k) - v * 2 Im(p_j conj p_k)
                    off_labels.append((j, k, "re"))
                    off_cols.append(re)
                    off_labels.append((j, k, "im"))
                    off_cols.append(im)
    return off_labels + diag_labels, off_cols + diag_cols, len(off_cols)


def _relation_rowspace(forms: Sequence[BinaryForm], flavor: str):
    labels, cols, n_off = _relation_columns(forms, flavor)
    rs = RowSpace(len(cols), real=True)
    if cols:
        for t in range(len(cols[0])):
            rs.add_int([c[t] for c in cols])
            if rs.is_full():
                break
    return rs, labels, n_off


def face_dimension_kernel(U: Subspace, flavor: str) -> int:
    """Real dimension of the self-adjoint tensors on U that multiply out to 0."""
    _require_face_subspace(U, flavor)
    rs, labels, _ = _relation_rowspace(U.forms(), flavor)
    return len(labels) - rs.rank


def diagonal_relations_only(ps: Sequence[BinaryForm], flavor: str) -> tuple[int, bool]:
    """Kernel dimension of the relations among the products of ``ps``, and
    whether every relation involves only the squares ``p_j * conj(p_j)``.
    """
    _check_flavor(flavor)
    ps = list(ps)
    if not ps:
        return 0, True
    if span(ps).dim != len(ps):
        raise DependentInput("forms must be linearly independent")
    if flavor == "symmetric" and not all(p.is_real() for p in ps):
        raise NonRealInput("symmetric relations need real forms")
    rs, labels, n_off = _relation_rowspace(ps, flavor)
    supports = rs.kernel_supports()
    diagonal_only = all(min(sup) >= n_off for sup in supports)
    return len(supports), diagonal_only


# ---------------------------------------------------------------------------
# faces


@dataclass
class FaceReport:
    flavor: str
    face_subspace: Subspace
    rank: int
    dimension: int
    dimension_by_kernel: int
    polyhedral: bool
    simplex: bool
    generators: list[GramTensor] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self, include_generators: bool = True) -> dict:
        out = {
            "flavor": self.flavor,
            "face_subspace": self.face_subspace.to_json(),
            "rank": self.rank,
            "dimension": self.dimension,
            "dimension_by_kernel": self.dimension_by_kernel,
            "polyhedral": self.polyhedral,
            "simplex": self.simplex,
        }
        if include_generators:
            out["generators"] = [g.to_json() for g in self.generators]
        out["notes"] = list(self.notes)
        return out


def face_dimensions(U: Subspace, flavor: str) -> tuple[int, int]:
    """Both face dimensions of U; raises if the two routes disagree."""
    a = face_dimension_formula(U, flavor)
    b = face_dimension_kernel(U, flavor)
    if a != b:
        raise VerificationError(f"face dimension mismatch: formula {a} vs kernel {b}")
    return a, b


def supporting_face(thetas: Sequence[GramTensor]) -> FaceReport:
    """Report on the smallest face containing all of ``thetas``."""
    thetas = list(thetas)
    if not thetas:
        raise InvalidInput("need at least one tensor")
    flavor, degree = thetas[0].flavor, thetas[0].degree
    for t in thetas:
        if t.flavor != flavor:
            raise MixedFlavors("all tensors must share one flavor")
        if t.degree != degree:
            raise DegreeMismatch("all tensors must share one degree")
    f = thetas[0].mu()
    for i, t in enumerate(thetas):
        w = psd_witness(t.matrix, t.flavor)
        if w is not None:
            raise NotPsd(f"tensor {i} is not psd (pivot {w})")
        if t.mu() != f:
            raise MuMismatch(f"tensor {i} represents a different form")

    images = [t.image() for t in thetas]
    U = subspace_sum(images)
    rank = U.dim
    dim_formula, dim_kernel = face_dimensions(U, flavor)
    notes: list[str] = []

    rank_sum = sum(im.dim for im in images)
    if rank_sum == rank:
        basis = [p for t in thetas for _, p in t.pieces()]
        notes.append("generator pieces form a basis of the face subspace")
    else:
        total = thetas[0]
        for t in thetas[1:]:
            total = total + t
        basis = [p for _, p in total.pieces()]
        notes.append("generator pieces dependent; relations checked on a basis from the sum")
    rel_dim, diag_only = diagonal_relations_only(basis, flavor)
    if rel_dim != dim_formula:
        raise VerificationError(f"relation kernel {rel_dim} != face dimension {dim_formula}")
    polyhedral = diag_only
    notes.append(
        "polyhedral: relations involve only squares"
        if polyhedral
        else "polyhedrality not certified (an off-diagonal relation exists)"
    )
    simplex = polyhedral and dim_formula == len(thetas) - 1 and rank == rank_sum
    if simplex:
        notes.append("simplex spanned by the generators")
    return FaceReport(
        flavor=flavor,
        face_subspace=U,
        rank=rank,
        dimension=dim_formula,
        dimension_by_kernel=dim_kernel,
        polyhedral=polyhedral,
        simplex=simplex,
        generators=thetas,
        notes=notes,
    )
