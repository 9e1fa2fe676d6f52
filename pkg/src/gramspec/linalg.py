"""Exact dense linear algebra over Q(i).

Row reduction runs on integer data: every incoming row is scaled to
Gaussian integers and reduced fraction-free (with content removal after each
step), and only the final reduced row-echelon form is divided out into
:class:`GaussianRational` entries. Purely real input takes an ``int``-only
path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, NotPsd, NotSelfAdjoint
from .scalars import ONE, ZERO, GaussianRational, as_gr

__all__ = [
    "Matrix",
    "RowSpace",
    "rref",
    "kernel",
    "rank",
    "is_psd",
    "ldl",
    "psd_witness",
    "rank_and_image",
]


# ---------------------------------------------------------------------------
# integer scaling helpers


def gaussian_int_row(row: Sequence[GaussianRational]) -> tuple[list[int], list[int]]:
    """Scale a row by a positive integer so that all entries are Gaussian integers."""
    den = 1
    for x in row:
        den = math.lcm(den, x.re.denominator, x.im.denominator)
    re = [x.re.numerator * (den // x.re.denominator) for x in row]
    im = [x.im.numerator * (den // x.im.denominator) for x in row]
    return re, im


def int_row(row: Sequence) -> list[int]:
    """Scale a row of rationals to integers."""
    fr = [x.re if isinstance(x, GaussianRational) else Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = math.lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in fr]


class RowSpace:
    """Incremental Gauss-Jordan elimination over Z[i] (or Z).

    Rows are added one at a time; the stored rows always form a reduced
    echelon basis (up to per-row positive scaling) of everything added so far.
    Pivot entries are positive integers.
    """

    def __init__(self, ncols: int, real: bool = False):
        self.ncols = ncols
        self.real = real
        self._rows: dict[int, tuple] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def is_full(self) -> bool:
        return len(self._rows) == self.ncols

    # -- real path ----------------------------------------------------------
    def _add_real(self, v: list[int]) -> bool:
        rows = self._rows
        for c, prow in rows.items():
            a = v[c]
            if a:
                p = prow[c]
                g = math.gcd(p, a)
                m, a = p // g, a // g
                v = [m * x - a * y for x, y in zip(v, prow)]
        g = math.gcd(*v)
        if not g:
            return False
        c = next(i for i, x in enumerate(v) if x)
        if v[c] < 0:
            g = -g
        if g != 1:
            v = [x // g for x in v]
        p = v[c]
        for pc, row in list(rows.items()):
            a = row[c]
            if a:
                g = math.gcd(p, a)
                m, a = p // g, a // g
                new = [m * x - a * y for x, y in zip(row, v)]
                h = math.gcd(*new)
                if h != 1:
                    new = [x // h for x in new]
                if new[pc] < 0:
                    new = [-x for x in new]
                rows[pc] = new
        rows[c] = v
        return True

    # -- gaussian path ------------------------------------------------------
    def _add_gauss(self, vre: list[int], vim: list[int]) -> bool:
        rows = self._rows
        for c, (pre, pim) in rows.items():
            ar, ai = vre[c], vim[c]
            if ar or ai:
                p = pre[c]
                g = math.gcd(p, ar, ai)
                m, ar, ai = p // g, ar // g, ai // g
                vre, vim = (
                    [m * x - ar * y + ai * z for x, y, z in zip(vre, pre, pim)],
                    [m * x - ar * z - ai * y for x, y, z in zip(vim, pre, pim)],
                )
        g = math.gcd(*vre, *vim)
        if not g:
            return False
        if g != 1:
            vre = [x // g for x in vre]
            vim = [x // g for x in vim]
        c = next(i for i in range(self.ncols) if vre[i] or vim[i])
        sr, si = vre[c], -vim[c]  # multiply by conj(pivot) -> real positive pivot
        if si:
            vre, vim = (
                [sr * x - si * y for x, y in zip(vre, vim)],
                [sr * y + si * x for x, y in zip(vre, vim)],
            )
        elif sr < 0:
            vre = [-x for x in vre]
            vim = [-x for x in vim]
        g = math.gcd(*vre, *vim)
        if g != 1:
            vre = [x // g for x in vre]
            vim = [x // g for x in vim]
        p = vre[c]
        for pc, (rre, rim) in list(rows.items()):
            ar, ai = rre[c], rim[c]
            if ar or ai:
                g = math.gcd(p, ar, ai)
                m, ar, ai = p // g, ar // g, ai // g
                nre = [m * x - ar * y + ai * z for x, y, z in zip(rre, vre, vim)]
                nim = [m * x - ar * z - ai * y for x, y, z in zip(rim, vre, vim)]
                h = math.gcd(*nre, *nim)
                if h != 1:
                    nre = [x // h for x in nre]
                    nim = [x // h for x in nim]
                rows[pc] = (nre, nim)
        rows[c] = (vre, vim)
        return True

    # -- public -------------------------------------------------------------
    def add(self, row: Sequence[GaussianRational]) -> bool:
        """Add a row of scalars; return True if the rank increased."""
        if len(row) != self.ncols:
            raise InvalidInput("row length mismatch")
        if self.real:
            return self._add_real(int_row(row))
        return self._add_gauss(*gaussian_int_row(row))

    def add_int(self, re: list[int], im: Optional[list[int]] = None) -> bool:
        """Add a row already scaled to (Gaussian) integers."""
        if self.real:
            if im is not None and any(im):
                raise InvalidInput("complex row added to a real row space")
            return self._add_real(list(re))
        return self._add_gauss(list(re), list(im) if im is not None else [0] * self.ncols)

    def int_rows(self) -> list[tuple[int, list[int], Optional[list[int]]]]:
        """``(pivot, re, im)`` for each stored row, by ascending pivot column."""
        out = []
        for c in sorted(self._rows):
            r = self._rows[c]
            if self.real:
                out.append((c, r, None))
            else:
                out.append((c, r[0], r[1]))
        return out

    def rref_rows(self) -> list[tuple[GaussianRational, ...]]:
        """The nonzero rows of the reduced row-echelon form, pivot 1."""
        out = []
        for c, re, im in self.int_rows():
            p = re[c]
            if im is None:
                out.append(tuple(GaussianRational._raw(Fraction(x, p), Fraction(0)) for x in re))
            else:
                out.append(
                    tuple(GaussianRational._raw(Fraction(x, p), Fraction(y, p)) for x, y in zip(re, im))
                )
        return out

    def kernel_supports(self) -> list[set[int]]:
        """Supports of the canonical kernel basis (one vector per free column)."""
        rows = self.int_rows()
        pivset = {c for c, _, _ in rows}
        out = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            sup = {f}
            for c, re, im in rows:
                if re[f] or (im is not None and im[f]):
                    sup.add(c)
            out.append(sup)
        return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidInput("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInput("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InvalidInput("ragged rows")
        return cls(len(rows), cols, tuple(as_gr(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(n, n, tuple(as_gr(values[i]) if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def outer(cls, u: Sequence, v: Sequence, conjugate: bool = True) -> Matrix:
        """``u v^*`` (or ``u v^T`` with ``conjugate=False``)."""
        u = [as_gr(x) for x in u]
        v = [as_gr(x).conj() if conjugate else as_gr(x) for x in v]
        return cls(len(u), len(v), tuple(a * b for a in u for b in v))

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def conj_transpose(self) -> Matrix:
        return Matrix(
            self.cols, self.rows, tuple(self[i, j].conj() for j in range(self.cols) for i in range(self.rows))
        )

    def is_real(self) -> bool:
        return all(x.is_real() for x in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.conj_transpose()

    def is_real_symmetric(self) -> bool:
        return self.is_square() and self.is_real() and self == self.transpose()

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInput("shape mismatch")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInput("shape mismatch")
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, s) -> Matrix:
        s = as_gr(s)
        return Matrix(self.rows, self.cols, tuple(a * s for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise InvalidInput("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    if not r[k].is_zero():
                        acc = acc + r[k] * other[k, j]
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple[GaussianRational, ...]:
        v = [as_gr(x) for x in v]
        out = []
        for i in range(self.rows):
            acc = ZERO
            for a, b in zip(self.row(i), v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [x.to_json() for x in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> Matrix:
        try:
            return cls(
                int(data["rows"]),
                int(data["cols"]),
                tuple(GaussianRational.from_json(x) for x in data["entries"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad matrix encoding: {exc}") from exc


def _row_space(rows: Iterable[Sequence[GaussianRational]], ncols: int) -> RowSpace:
    rows = [list(r) for r in rows]
    real = all(x.is_real() for r in rows for x in r)
    rs = RowSpace(ncols, real=real)
    for r in rows:
        rs.add(r)
        if rs.is_full():
            break
    return rs


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns."""
    rs = _row_space(M.to_rows(), M.cols)
    nz = rs.rref_rows()
    padded = [list(r) for r in nz] + [[ZERO] * M.cols for _ in range(M.rows - len(nz))]
    return Matrix.from_rows(padded, M.cols), rs.rank, tuple(rs.pivots)


def rank(M: Matrix) -> int:
    return _row_space(M.to_rows(), M.cols).rank


def kernel(M: Matrix) -> list[tuple[GaussianRational, ...]]:
    """Canonical basis of the right null space: one vector per free column,
    with a 1 in that column and zeros in the other free columns."""
    rs = _row_space(M.to_rows(), M.cols)
    R = rs.rref_rows()
    pivots = rs.pivots
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [ZERO] * M.cols
        v[f] = ONE
        for c, row in zip(pivots, R):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# positive semidefiniteness


def _check_self_adjoint(A: Matrix, flavor: str) -> None:
    if flavor == "hermitian":
        if not A.is_hermitian():
            raise NotSelfAdjoint("matrix is not Hermitian")
    elif flavor == "symmetric":
        if not A.is_real_symmetric():
            raise NotSelfAdjoint("matrix is not real symmetric")
    else:
        raise InvalidInput(f"unknown flavor {flavor!r}")


def _ldl(A: Matrix):
    """Pivoted LDL*; returns (pieces, witness) with witness None iff psd."""
    n = A.rows
    work = A.to_rows()
    pieces: list[tuple[Fraction, list[GaussianRational]]] = []
    active = list(range(n))
    while active:
        i = active.pop(0)
        piv = work[i][i].re
        if piv < 0:
            return pieces, i
        if piv == 0:
            if any(not work[i][j].is_zero() for j in active):
                return pieces, i
            continue
        pivgr = GaussianRational(piv)
        vec = [ZERO] * n
        vec[i] = ONE
        for j in active:
            vec[j] = work[j][i] / pivgr
        pieces.append((piv, vec))
        for j in active:
            aji = work[j][i]
            if aji.is_zero():
                continue
            scale = aji / pivgr
            wj = work[j]
            wi = work[i]
            for k in active:
                if not wi[k].is_zero():
                    wj[k] = wj[k] - scale * wi[k]
    return pieces, None


def ldl(A: Matrix, flavor: str = "hermitian") -> list[tuple[Fraction, tuple[GaussianRational, ...]]]:
    """Decompose a psd matrix as ``sum d * v v^*`` with rationals ``d > 0``.

    Raises :class:`NotPsd` (naming the failing pivot index) otherwise.
    """
    _check_self_adjoint(A, flavor)
    pieces, witness = _ldl(A)
    if witness is not None:
        raise NotPsd(f"matrix is not positive semidefinite (pivot {witness})")
    return [(d, tuple(v)) for d, v in pieces]


def psd_witness(A: Matrix, flavor: str = "hermitian") -> Optional[int]:
    """Index of the pivot certifying non-psd-ness, or None when psd."""
    _check_self_adjoint(A, flavor)
    return _ldl(A)[1]


def is_psd(A: Matrix, flavor: str = "hermitian") -> bool:
    return psd_witness(A, flavor) is None


def rank_and_image(A: Matrix, degree: int):
    """Column span of ``A`` as a subspace of degree-``degree`` forms."""
    from .subspaces import Subspace

    if A.rows != degree + 1 or A.cols != degree + 1:
        raise InvalidInput(f"expected a {(degree + 1)}x{(degree + 1)} matrix")
    return Subspace.from_vectors(degree, [A.col(j) for j in range(A.cols)])
