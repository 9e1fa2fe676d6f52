"""Special bases and the recursive constructions of simplex faces.

The Hermitian construction builds, for each k, a positive binary form of
degree ``2d`` with ``d = C(k+1, 2)`` together with k+1 rank-one Gram tensors
spanning a k-dimensional simplex face. One step from k-1 to k multiplies the
previous form g by ``s * conj(s)`` where ``s = prod(x - beta_j y)``; the new
generators are ``s t`` and ``conj(s) p_j`` for the previous generators p_j.

The symmetric construction takes the quadratically independent Hermitian
face for k, multiplies by a cofactor ``q * conj(q)`` and turns each ``q p_j``
into the rank-two tensor ``Re ⊗ Re + Im ⊗ Im``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Iterator, Optional

from .errors import CertificateError, InternalContradiction, ScalarExhaustion, ZeroSubspace
from .extreme import rank_two_from_rank_one
from .forms import BinaryForm, RootList, evaluate, linear_factor
from .gram import (
    FaceReport,
    GramTensor,
    convex_combination,
    diagonal_relations_only,
    gram_from_sos,
    supporting_face,
)
from .linalg import Matrix, RowSpace, gaussian_int_row, rank
from .scalars import I, GaussianRational
from .subspaces import Subspace, conj_product, conj_space, gint_conv, product, span

__all__ = [
    "ScalarPicker",
    "ScalarSelection",
    "ConstructionCertificate",
    "special_basis",
    "careful_special_basis",
    "cofactor_q",
    "hermitian_simplex_face",
    "symmetric_simplex_face",
]

DEFAULT_BUDGET = 20000


def gaussian_integers() -> Iterator[GaussianRational]:
    """0, 1, -1, i, -i, 1+i, 1-i, -1+i, -1-i, 2, -2, 2i, ... by norm shells."""
    n = 0
    while True:
        shell = []
        r = int(n**0.5) + 1
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                if a * a + b * b == n:
                    shell.append((abs(b), -a, -b, a, b))
        for _, _, _, a, b in sorted(shell):
            yield GaussianRational(a, b)
        n += 1


class ScalarPicker:
    """Source of admissible scalars.

    The default mode walks the Gaussian integers in a fixed order and returns
    the first admissible one, so constructions are reproducible bit for bit.
    With ``seed`` set, candidates are drawn uniformly from the box
    ``[-box, box]^2`` instead.
    """

    def __init__(self, seed: Optional[int] = None, box: int = 8, budget: int = DEFAULT_BUDGET):
        self.seed = seed
        self.box = box
        self.budget = budget
        self._rng = random.Random(seed) if seed is not None else None

    @property
    def randomized(self) -> bool:
        return self._rng is not None

    def _candidates(self) -> Iterator[GaussianRational]:
        if self._rng is None:
            yield from gaussian_integers()
        else:
            while True:
                yield GaussianRational(
                    self._rng.randint(-self.box, self.box), self._rng.randint(-self.box, self.box)
                )

    def pick(
        self,
        ok: Callable[[GaussianRational], bool] = lambda c: True,
        nonreal: bool = False,
        avoid: Iterable[GaussianRational] = (),
    ) -> GaussianRational:
        """First candidate passing ``ok`` that is neither equal nor conjugate to ``avoid``."""
        avoid = set(avoid)
        for n, c in enumerate(self._candidates()):
            if n >= self.budget:
                break
            if nonreal and c.is_real():
                continue
            if c in avoid or c.conj() in avoid:
                continue
            if ok(c):
                return c
        raise ScalarExhaustion(f"no admissible scalar within {self.budget} candidates")

    def rng(self) -> random.Random:
        """Generator for auxiliary randomness (weights, samples)."""
        return random.Random(0 if self.seed is None else self.seed + 1)


@dataclass
class ScalarSelection:
    lambdas: list[GaussianRational]
    transformed_basis: list[BinaryForm]

    def to_json(self) -> dict:
        return {
            "lambdas": [c.to_json() for c in self.lambdas],
            "basis": [p.to_json() for p in self.transformed_basis],
        }


def _eliminate(chain: list[BinaryForm], l: int, lam: GaussianRational) -> None:
    """``q_j <- q_l(lam) q_j - q_j(lam) q_l`` for j > l, in place."""
    ql = chain[l]
    a = evaluate(ql, lam)
    for j in range(l + 1, len(chain)):
        b = evaluate(chain[j], lam)
        chain[j] = chain[j].scale(a) - ql.scale(b)


def _vanishing_rank(forms: list[BinaryForm], points: list[GaussianRational]) -> int:
    E = Matrix.from_rows([[evaluate(p, lam) for p in forms] for lam in points])
    return rank(E)


def special_basis(
    U: Subspace,
    picker: Optional[ScalarPicker] = None,
    nonreal: bool = False,
    avoid: Iterable[GaussianRational] = (),
) -> ScalarSelection:
    """Scalars ``lambda_1..lambda_k`` and a basis ``p_1..p_k`` of U with
    ``p_l(lambda_l) != 0`` and ``p_j(lambda_l) = 0`` for ``l < j``.

    No nonzero element of U vanishes at every ``(lambda_l : 1)``.
    """
    if U.dim == 0:
        raise ZeroSubspace("special basis of the zero subspace")
    picker = picker or ScalarPicker()
    avoid = set(avoid)
    chain = U.ascending_forms()
    lambdas: list[GaussianRational] = []
    for l in range(len(chain)):
        ql = chain[l]
        lam = picker.pick(lambda c: not evaluate(ql, c).is_zero(), nonreal=nonreal, avoid=avoid)
        lambdas.append(lam)
        avoid.add(lam)
        _eliminate(chain, l, lam)
    if _vanishing_rank(U.forms(), lambdas) != U.dim:
        raise InternalContradiction("special basis: a nonzero form vanishes at every lambda")
    return ScalarSelection(lambdas, chain)


def careful_special_basis(
    U: Subspace,
    picker: Optional[ScalarPicker] = None,
    nonreal: bool = True,
    avoid: Iterable[GaussianRational] = (),
) -> ScalarSelection:
    """Like :func:`special_basis`, and also no nonzero element of U vanishes
    at every ``(conj(lambda_l) : 1)``.

    ``p(conj(c)) = 0`` iff ``conj(p)(c) = 0``, so the twin chain runs the same
    elimination on a basis of ``conj(U)``.
    """
    if U.dim == 0:
        raise ZeroSubspace("special basis of the zero subspace")
    picker = picker or ScalarPicker()
    avoid = set(avoid)
    chain = U.ascending_forms()
    twin = conj_space(U).ascending_forms()
    lambdas: list[GaussianRational] = []
    for l in range(len(chain)):
        ql, tl = chain[l], twin[l]

        def ok(c, ql=ql, tl=tl):
            return not evaluate(ql, c).is_zero() and not evaluate(tl, c).is_zero()

        lam = picker.pick(ok, nonreal=nonreal, avoid=avoid)
        lambdas.append(lam)
        avoid.add(lam)
        _eliminate(chain, l, lam)
        _eliminate(twin, l, lam)
    basis = U.forms()
    if _vanishing_rank(basis, lambdas) != U.dim:
        raise InternalContradiction("careful basis: a nonzero form vanishes at every lambda")
    if _vanishing_rank(basis, [c.conj() for c in lambdas]) != U.dim:
        raise InternalContradiction("careful basis: a nonzero form vanishes at every conj(lambda)")
    return ScalarSelection(lambdas, chain)


def _divisible_elements_trivial(space: Subspace, q: BinaryForm) -> bool:
    """True iff no nonzero element of ``space`` is a multiple of q.

    Solves ``sum c_i b_i - q h = 0`` for the coefficients c and the cofactor h
    and checks that the solution space is zero. Multiplication by q is
    injective, so a nonzero solution always has ``c != 0``.
    """
    D, e = space.ambient_degree, q.degree
    cols = [gaussian_int_row(b.coeffs) for b in space.forms()]
    if D >= e:
        qi = gaussian_int_row(q.coeffs)
        for t in range(D - e + 1):
            mono = ([1 if j == t else 0 for j in range(D - e + 1)], [0] * (D - e + 1))
            cols.append(gint_conv(qi, mono))
    rs = RowSpace(len(cols))
    for row in range(D + 1):
        rs.add_int([c[0][row] for c in cols], [c[1][row] for c in cols])
    return rs.rank == len(cols)


def cofactor_q(
    forbidden: Subspace,
    e: int,
    avoid: Iterable[GaussianRational] = (),
    picker: Optional[ScalarPicker] = None,
) -> tuple[BinaryForm, list[GaussianRational]]:
    """Monic ``q = prod_{j<=e} (x - gamma_j y)`` dividing no nonzero element of ``conj(forbidden)``.

    The gammas are non-real, pairwise non-conjugate and avoid ``avoid`` and its
    conjugates. Returns ``(q, gammas)``.
    """
    if e < 1:
        raise ValueError("cofactor degree must be positive")
    picker = picker or ScalarPicker()
    avoid = set(avoid)
    target = conj_space(forbidden)
    gammas: list[GaussianRational] = []
    if target.dim and e <= target.ambient_degree:
        if e < target.dim:
            raise ScalarExhaustion(f"cofactor degree {e} below forbidden dimension {target.dim}")
        gammas = special_basis(target, picker, nonreal=True, avoid=avoid).lambdas
        avoid.update(gammas)
    while len(gammas) < e:
        c = picker.pick(nonreal=True, avoid=avoid)
        gammas.append(c)
        avoid.add(c)
    q = BinaryForm.one()
    for c in gammas:
        q = q * linear_factor(c)
    if not _divisible_elements_trivial(target, q):
        raise CertificateError("cofactor divides a nonzero forbidden element")
    return q, gammas


# ---------------------------------------------------------------------------
# certificates


@dataclass
class ConstructionCertificate:
    k: int
    flavor: str
    variant: str
    f_roots: RootList
    f: BinaryForm
    generators: list[GramTensor]
    face: FaceReport
    trace: list[dict] = field(default_factory=list)
    checks: list[str] = field(default_factory=list)
    forms: list[BinaryForm] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.f.degree // 2

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "flavor": self.flavor,
            "variant": self.variant,
            "f": {"roots": self.f_roots.to_json(), "form": self.f.to_json()},
            "generators": [g.to_json() for g in self.generators],
            "report": self.face.to_json(include_generators=False),
            "checks": list(self.checks),
            "trace": self.trace,
        }


class _Checks:
    def __init__(self):
        self.passed: list[str] = []

    def __call__(self, name: str, ok: bool, detail: str = "") -> None:
        if not ok:
            raise CertificateError(f"check failed: {name}" + (f" ({detail})" if detail else ""))
        self.passed.append(name)


_PROBES = (GaussianRational(0), GaussianRational(1), GaussianRational(-1))


def _check_positive_roots(check: _Checks, roots: RootList, f: BinaryForm) -> None:
    pts = roots.points
    check("roots distinct", roots.distinct_roots())
    check("roots non-real", all(not p.is_real() for p in pts))
    check("roots closed under conjugation", set(pts) == {p.conj() for p in pts})
    check("f expands from roots", roots.expand() == f)
    vals = [f.coeffs[0]] + [evaluate(f, c) for c in _PROBES]  # (1:0), (0:1), (1:1), (-1:1)
    check("f positive at probe points", all(v.is_real() and v.re > 0 for v in vals))


def _check_generators(check: _Checks, gens: list[GramTensor], f: BinaryForm, gen_rank: int) -> None:
    check("generators represent f", all(t.mu() == f for t in gens))
    check("generators psd", all(t.psd() for t in gens))
    check(f"generators have rank {gen_rank}", all(t.rank() == gen_rank for t in gens))


def _form_json(p: Optional[BinaryForm]):
    return None if p is None else p.to_json()


def _hermitian_levels(k: int, variant: str, picker: ScalarPicker, base_root: GaussianRational):
    """Yield ``(level, roots, f, forms, trace_record)`` for levels 1..k."""
    a = base_root
    forms = [linear_factor(a.conj()), linear_factor(a)]
    points = [a, a.conj()]
    f = forms[0] * forms[1]
    yield 1, points, f, forms, {"level": 1, "base_root": a.to_json(), "forms": [p.to_json() for p in forms]}
    for level in range(2, k + 1):
        g = f
        U_prev = span(forms)
        select = careful_special_basis if variant == "qi" else special_basis
        sel = select(U_prev, picker, nonreal=True, avoid=points)
        betas = sel.lambdas
        s = BinaryForm.one()
        for b in betas:
            s = s * linear_factor(b)
        t = forms[0]
        sbar = s.conj()
        forms = [s * t] + [sbar * p for p in forms]
        f = s * sbar * g
        for b in betas:
            points = points + [b, b.conj()]
        record = {
            "level": level,
            "g": g.to_json(),
            "U_prime": U_prev.to_json(),
            "betas": [b.to_json() for b in betas],
            "s": s.to_json(),
            "t": t.to_json(),
        }
        yield level, points, f, forms, record


def hermitian_simplex_face(
    k: int,
    variant: str = "plain",
    picker: Optional[ScalarPicker] = None,
    base_root: GaussianRational = I,
) -> ConstructionCertificate:
    """Simplex face of rank k+1 and dimension k in the Hermitian Gram
    spectrahedron of a positive form of degree ``2 C(k+1, 2)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if variant not in ("plain", "qi"):
        raise ValueError(f"unknown variant {variant!r}")
    if base_root.is_real():
        raise ValueError("base root must be non-real")
    picker = picker or ScalarPicker()
    trace = []
    for level, points, f, forms, record in _hermitian_levels(k, variant, picker, base_root):
        trace.append(record)
    d = comb(k + 1, 2)
    roots = RootList(GaussianRational(1), tuple(points))
    gens = [gram_from_sos([p], "hermitian") for p in forms]

    check = _Checks()
    check("degree is C(k+1,2)", f.degree == 2 * d, f"deg f = {f.degree}")
    _check_positive_roots(check, roots, f)
    _check_generators(check, gens, f, 1)
    face = supporting_face(gens)
    check("face rank k+1", face.rank == k + 1, f"rank {face.rank}")
    check("face dimension k (formula)", face.dimension == k, f"dim {face.dimension}")
    check("face dimension k (kernel)", face.dimension_by_kernel == k, f"dim {face.dimension_by_kernel}")
    check("polyhedral", face.polyhedral)
    check("simplex", face.simplex)
    rel_dim, diag_only = diagonal_relations_only(forms, "hermitian")
    check("relations are k squares relations", rel_dim == k and diag_only)
    U = face.face_subspace
    check("dim U conj(U) = 2d+1", conj_product(U).dim == 2 * d + 1)
    if variant == "qi":
        check("dim UU = C(k+2,2)", product(U, U).dim == comb(k + 2, 2))
    return ConstructionCertificate(k, "hermitian", variant, roots, f, gens, face, trace, check.passed, forms)


def symmetric_simplex_face(
    k: int,
    picker: Optional[ScalarPicker] = None,
    base_root: GaussianRational = I,
    samples: int = 20,
) -> ConstructionCertificate:
    """Simplex face of rank ``2(k+1)`` and dimension k in the symmetric Gram
    spectrahedron of a positive form of degree ``2 (k+1)^2``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    picker = picker or ScalarPicker()
    herm = hermitian_simplex_face(k, "qi", picker, base_root)
    g = herm.f
    forms0 = herm.forms
    U0 = span(forms0)
    e = comb(k + 2, 2)
    q, gammas = cofactor_q(product(U0, U0), e, avoid=herm.f_roots.points, picker=picker)
    f = q * q.conj() * g
    points = list(herm.f_roots.points)
    for c in gammas:
        points += [c, c.conj()]
    roots = RootList(GaussianRational(1), tuple(points))
    forms = [q * p for p in forms0]
    gens = [rank_two_from_rank_one(p) for p in forms]
    d = (k + 1) ** 2
    trace = herm.trace + [
        {"level": "cofactor", "q": q.to_json(), "gammas": [c.to_json() for c in gammas]}
    ]

    check = _Checks()
    check("degree is (k+1)^2", f.degree == 2 * d, f"deg f = {f.degree}")
    _check_positive_roots(check, roots, f)
    _check_generators(check, gens, f, 2)
    face = supporting_face(gens)
    check("face rank 2(k+1)", face.rank == 2 * (k + 1), f"rank {face.rank}")
    check("face dimension k (formula)", face.dimension == k, f"dim {face.dimension}")
    check("face dimension k (kernel)", face.dimension_by_kernel == k, f"dim {face.dimension_by_kernel}")
    check("polyhedral", face.polyhedral)
    check("simplex", face.simplex)
    check("dim UU = 2d+1", product(face.face_subspace, face.face_subspace).dim == 2 * d + 1)
    ranks = sub_face_sample_ranks(gens, samples, picker.rng())
    check("sub-face samples have even rank", all(r % 2 == 0 for r in ranks), f"ranks {ranks}")
    return ConstructionCertificate(k, "symmetric", "qi", roots, f, gens, face, trace, check.passed, forms)


def sub_face_sample_ranks(gens: list[GramTensor], samples: int, rng: random.Random) -> list[int]:
    """Ranks of random convex combinations of generators, some weights zero."""
    out = []
    n = len(gens)
    for i in range(samples):
        while True:
            ws = [rng.randint(0, 5) for _ in range(n)]
            if n > 1 and i % 2 == 0:
                ws[rng.randrange(n)] = 0  # force a proper sub-face half the time
            if sum(ws):
                break
        total = sum(ws)
        out.append(convex_combination(gens, [Fraction(w, total) for w in ws]).rank())
    return out
