"""Rank/dimension diagrams, polyhedral dimension bounds, common real roots
and the randomized density experiment.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Union

from .errors import GramSpecError, InternalContradiction, InvalidInput, NonRealInput, PreconditionFailed
from .forms import INF, BinaryForm, _feval, evaluate, gcd_many, isolate_real_root, rational_roots, squarefree_part
from .scalars import GaussianRational
from .subspaces import Subspace, product

__all__ = [
    "DiagramRow",
    "diagram",
    "render_diagram",
    "max_polyhedral_dim",
    "RootCertificate",
    "common_real_root_certificate",
    "real_root_of",
    "DensityReport",
    "sample_seed",
    "density_experiment",
]


@dataclass(frozen=True)
class DiagramRow:
    r: int
    lower: int
    upper: int
    excluded: tuple[int, ...] = ()
    bounds_only: bool = True

    def values(self) -> list[int]:
        return [v for v in range(self.lower, self.upper + 1) if v not in self.excluded]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "lower": self.lower,
            "upper": self.upper,
            "excluded": list(self.excluded),
            "bounds_only": self.bounds_only,
        }


def diagram(d: int, flavor: str) -> list[DiagramRow]:
    """Possible (rank, dimension) ranges of faces, for r = 1..d+1."""
    if d < 1:
        raise InvalidInput("d must be at least 1")
    if flavor not in ("symmetric", "hermitian"):
        raise InvalidInput(f"unknown flavor {flavor!r}")
    rows = []
    for r in range(1, d + 1):
        if flavor == "symmetric":
            lower = max(0, comb(r + 1, 2) - (2 * d + 1))
            upper = comb(r - 1, 2)
        else:
            lower = max(0, r * r - (2 * d + 1))
            upper = (r - 1) ** 2
        excluded: tuple[int, ...] = ()
        # a face of rank d and maximal dimension forces a real root
        if flavor == "symmetric" and r == d and d >= 3:
            excluded = (comb(d - 1, 2),)
        rows.append(DiagramRow(r, lower, upper, excluded))
    top = comb(d, 2) if flavor == "symmetric" else d * d
    rows.append(DiagramRow(d + 1, top, top))
    return rows


def render_diagram(rows: list[DiagramRow], d: int, flavor: str) -> str:
    """Text table: one line per rank, ``#`` marks allowed dimensions, ``x`` excluded ones."""
    width = max(row.upper for row in rows)
    cell = len(str(width)) + 1
    lines = [f"{flavor} Gram spectrahedron faces, d={d} (bounds only)"]
    lines.append("rank | " + "".join(str(v).rjust(cell) for v in range(width + 1)) + " | range")
    for row in reversed(rows):
        marks = []
        for v in range(width + 1):
            if v in row.excluded:
                marks.append("x")
            elif row.lower <= v <= row.upper:
                marks.append("#")
            else:
                marks.append(".")
        rng = f"[{row.lower}, {row.upper}]"
        if row.excluded:
            rng += " excluding " + ", ".join(map(str, row.excluded))
        lines.append(f"{str(row.r).rjust(4)} | " + "".join(m.rjust(cell) for m in marks) + f" | {rng}")
    return "\n".join(lines) + "\n"


def max_polyhedral_dim(d: int, flavor: str) -> int:
    """Largest k allowed for a polyhedral face.

    ``hermitian``: ``C(k+1, 2) <= d``. ``symmetric_generic``:
    ``C(k+3, 2) <= 2d - 2``, which assumes f has no rank-one Gram points and no
    positive-dimensional faces of rank 3.
    """
    if d < 1:
        raise InvalidInput("d must be at least 1")
    if flavor == "hermitian":
        k = 0
        while comb(k + 2, 2) <= d:
            k += 1
        return k
    if flavor == "symmetric_generic":
        k = 0
        while comb(k + 4, 2) <= 2 * d - 2:
            k += 1
        return k
    raise InvalidInput(f"unknown flavor {flavor!r}")


# ---------------------------------------------------------------------------
# common real roots


@dataclass
class RootCertificate:
    """A common real root of a subspace: an exact point or an isolating interval of the gcd."""

    gcd: BinaryForm
    point: Union[GaussianRational, object, None] = None
    interval: Optional[tuple[Fraction, Fraction]] = None

    @property
    def kind(self) -> str:
        return "point" if self.interval is None else "interval"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "gcd": self.gcd.to_json()}
        if self.interval is None:
            out["point"] = "inf" if self.point is INF else self.point.to_json()
        else:
            out["interval"] = [str(self.interval[0]), str(self.interval[1])]
        return out

    def verify(self, U: Subspace) -> bool:
        if self.interval is None:
            return all(evaluate(p, self.point).is_zero() for p in U.forms())
        lo, hi = self.interval
        sq = squarefree_part(self.gcd.dehomogenize())
        return _feval(sq, lo) * _feval(sq, hi) < 0 or _feval(sq, hi) == 0


def real_root_of(g: BinaryForm) -> RootCertificate:
    """A real root of a real form: (1:0), a rational point, or an isolating interval."""
    if not g.is_real():
        raise NonRealInput("expected a real form")
    if g.is_zero():
        raise InvalidInput("the zero form has no isolated roots")
    if g.coeffs[0].is_zero():
        return RootCertificate(g, point=INF)
    poly = g.dehomogenize()
    rats = rational_roots(poly)
    if rats:
        return RootCertificate(g, point=GaussianRational(rats[0]))
    # positive roots first, then the rest of the line
    for window in ((0, None), (None, 0)):
        try:
            lo, hi = isolate_real_root(poly, lo=window[0], hi=window[1])
        except InvalidInput:
            continue
        return RootCertificate(g, interval=(lo, hi))
    raise InternalContradiction(f"gcd {g} has no real root")


def common_real_root_certificate(U: Subspace) -> RootCertificate:
    """Common real root of a real subspace with ``dim U = d >= 3`` and ``dim UU = 2d - 1``."""
    d = U.ambient_degree
    if not U.is_real():
        raise NonRealInput("subspace must be real")
    if U.dim != d or d < 3:
        raise PreconditionFailed(f"need dim U = d >= 3, got dim {U.dim}, d {d}")
    uu = product(U, U).dim
    if uu != 2 * d - 1:
        raise PreconditionFailed(f"need dim UU = {2 * d - 1}, got {uu}")
    forms = U.forms()
    if all(p.coeffs[0].is_zero() for p in forms):
        return RootCertificate(gcd_many(forms), point=INF)
    g = gcd_many(forms)
    if g.degree == 0:
        raise InternalContradiction("basis has no common factor")
    cert = real_root_of(g)
    if not cert.verify(U):
        raise InternalContradiction("root certificate does not verify")
    return cert


# ---------------------------------------------------------------------------
# density experiment


@dataclass
class DensityReport:
    k: int
    flavor: str
    samples: int
    seed: int
    successes: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.successes / self.samples

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "flavor": self.flavor,
            "samples": self.samples,
            "seed": self.seed,
            "successes": self.successes,
            "ratio": self.ratio,
            "failures": self.failures,
        }


def sample_seed(master: int, index: int) -> int:
    """Per-sample seed, independent of execution order."""
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _run_sample(args: tuple[int, str, int, int]) -> Optional[dict]:
    from .construction import ScalarPicker, hermitian_simplex_face, symmetric_simplex_face

    k, flavor, master, index = args
    seed = sample_seed(master, index)
    rng = random.Random(seed)
    while True:
        base = GaussianRational(rng.randint(-6, 6), rng.randint(-6, 6))
        if not base.is_real():
            break
    picker = ScalarPicker(seed=seed)
    try:
        if flavor == "hermitian":
            hermitian_simplex_face(k, "qi", picker, base_root=base)
        else:
            symmetric_simplex_face(k, picker, base_root=base)
    except GramSpecError as exc:
        return {"index": index, "seed": seed, "error": type(exc).__name__, "detail": str(exc)}
    return None


def density_experiment(
    k: int, samples: int, seed: int = 0, flavor: str = "hermitian", workers: int = 1
) -> DensityReport:
    """Rerun the construction with random base data and random scalars."""
    if k < 1:
        raise InvalidInput("k must be at least 1")
    if samples < 1:
        raise InvalidInput("samples must be at least 1")
    if flavor not in ("hermitian", "symmetric"):
        raise InvalidInput(f"unknown flavor {flavor!r}")
    jobs = [(k, flavor, seed, i) for i in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_sample, jobs))
    else:
        results = [_run_sample(j) for j in jobs]
    failures = [r for r in results if r is not None]
    return DensityReport(k, flavor, samples, seed, samples - len(failures), failures)
