"""Rank-one and rank-two extreme points, and faces coming from factorizations."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .errors import AllZero, DegenerateInput, DegreeMismatch, InvalidInput, NonPositiveLead, OutOfRange, RealRoot, RepeatedRoot
from .forms import INF, BinaryForm, RootList, gcd_many, linear_factor
from .gram import FaceReport, GramTensor, gram_from_sos, supporting_face
from .linalg import RowSpace
from .subspaces import span

__all__ = [
    "conjugate_pairs",
    "rank_one_forms",
    "enumerate_rank_one",
    "count_rank_one",
    "gcd_rank_bound",
    "low_rank_selection",
    "rank_two_from_rank_one",
    "face_from_factorization",
]


def conjugate_pairs(f_roots: RootList) -> list:
    """Split the roots of a positive form into pairs ``(a, conj(a))``.

    Pairs are listed in order of first appearance; the first member is the
    root that appears first. Raises unless f has positive real lead, no real
    root and 2d pairwise distinct roots.
    """
    lead = f_roots.lead
    if not lead.is_real() or lead.re <= 0:
        raise NonPositiveLead(f"leading coefficient {lead} is not a positive rational")
    seen = set()
    for p in f_roots.points:
        if p is INF or p.is_real():
            raise RealRoot(f"root {'(1:0)' if p is INF else p} is real")
        if p in seen:
            raise RepeatedRoot(f"root {p} is repeated")
        seen.add(p)
    pairs = []
    used = set()
    for p in f_roots.points:
        if p in used:
            continue
        c = p.conj()
        if c not in seen:
            raise InvalidInput(f"root {p} has no conjugate partner; f is not real")
        pairs.append((p, c))
        used.update((p, c))
    return pairs


def _product_of(points: Sequence) -> BinaryForm:
    out = BinaryForm.one()
    for a in points:
        out = out * linear_factor(a)
    return out


def _selection_products(pairs: Sequence, prefix: BinaryForm) -> Iterator[BinaryForm]:
    """``prefix * prod(pair[b])`` over all bit vectors, in itertools.product order."""
    if not pairs:
        yield prefix
        return
    for root in pairs[0]:
        yield from _selection_products(pairs[1:], prefix * linear_factor(root))


def count_rank_one(f_roots: RootList) -> int:
    return 2 ** len(conjugate_pairs(f_roots))


def rank_one_forms(f_roots: RootList) -> Iterator[BinaryForm]:
    """The monic forms p with ``p * conj(p) = f / lead``, in selector-bit order."""
    return _selection_products(conjugate_pairs(f_roots), BinaryForm.one())


def enumerate_rank_one(f_roots: RootList) -> Iterator[tuple[BinaryForm, GramTensor]]:
    """All ``2^d`` rank-one Hermitian Gram tensors of f.

    Selector bit 0 picks ``a_j``, bit 1 picks ``conj(a_j)``; ``p`` is monic and
    the lead of f sits on the tensor, so ``mu(theta) == f`` exactly.
    """
    lead = f_roots.lead.re
    for p in rank_one_forms(f_roots):
        yield p, gram_from_sos([p], "hermitian", lead)


def gcd_rank_bound(ps: Sequence[BinaryForm]) -> tuple[int, int]:
    """``(d + 1 - deg gcd(ps), dim span(ps))``; the second never exceeds the first."""
    ps = list(ps)
    if not ps or all(p.is_zero() for p in ps):
        raise AllZero("need at least one nonzero form")
    d = ps[0].degree
    if any(p.degree != d for p in ps):
        raise DegreeMismatch("forms must share one degree")
    g = gcd_many([p for p in ps if not p.is_zero()])
    return d + 1 - g.degree, span(ps).dim


def low_rank_selection(f_roots: RootList, s: int) -> list[GramTensor]:
    """``s`` distinct rank-one Gram tensors whose sum has rank at most ``ceil(log2 s) + 1``.

    The first ``e`` conjugate choices are frozen to ``a_j`` (a common factor
    g), where ``2^(d-e-1) < s <= 2^(d-e)``; the remaining choices vary.
    """
    pairs = conjugate_pairs(f_roots)
    d = len(pairs)
    if not 2 <= s <= 2**d:
        raise OutOfRange(f"s must lie in [2, {2 ** d}], got {s}")
    e = next(e for e in range(d) if 2 ** (d - e - 1) < s <= 2 ** (d - e))
    g = _product_of([a for a, _ in pairs[:e]])
    lead = f_roots.lead.re
    out = []
    for p in itertools.islice(_selection_products(pairs[e:], g), s):
        out.append(gram_from_sos([p], "hermitian", lead))
    return out


def rank_two_from_rank_one(p: BinaryForm) -> GramTensor:
    """``Re(p) ⊗ Re(p) + Im(p) ⊗ Im(p)``, a rank-two symmetric tensor of ``p * conj(p)``."""
    re, im = p.real_part(), p.imag_part()
    if re.is_zero() or im.is_zero() or span([re, im]).dim != 2:
        raise DegenerateInput("Re(p) and Im(p) are linearly dependent")
    return gram_from_sos([re, im], "symmetric")


def face_from_factorization(f_roots: RootList, r: int) -> FaceReport:
    """Face of rank r and dimension ``(r-1)^2`` from ``f = g * conj(g) * h``.

    h collects the last ``r-1`` conjugate pairs, g takes one root from each
    remaining pair. The face subspace is ``g * (all forms of degree r-1)``,
    spanned by rank-one tensors ``g b ⊗ conj(g b)`` with ``b * conj(b) = h``.
    """
    pairs = conjugate_pairs(f_roots)
    d = len(pairs)
    if not 1 <= r <= d + 1:
        raise OutOfRange(f"r must lie in [1, {d + 1}], got {r}")
    split = d - (r - 1)
    g = _product_of([a for a, _ in pairs[:split]])
    lead = f_roots.lead.re
    rs = RowSpace(d + 1)
    chosen: list[GramTensor] = []
    for bits in itertools.product((0, 1), repeat=r - 1):
        p = g * _product_of([pair[b] for pair, b in zip(pairs[split:], bits)])
        if rs.add(list(p.coeffs)):
            chosen.append(gram_from_sos([p], "hermitian", lead))
            if rs.rank == r:
                break
    if rs.rank != r:
        raise DegenerateInput("rank-one points of h do not span the full space")
    return supporting_face(chosen)
