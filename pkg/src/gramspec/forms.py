"""Binary forms over Q(i) and real univariate helpers (gcd, Sturm chains).

A binary form of degree ``d`` is stored densely: ``coeffs[j]`` is the
coefficient of ``x^(d-j) * y^j``. Dehomogenizing at ``y = 1`` gives a
univariate polynomial of degree at most ``d``; the missing degree is the
multiplicity of the projective root ``(1:0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    BothZero,
    DegreeMismatch,
    DivisionByZero,
    InvalidInput,
    ZeroPolynomial,
)
from .scalars import ONE, ZERO, GaussianRational, as_gr

__all__ = [
    "INF",
    "BinaryForm",
    "RootList",
    "multiply",
    "conj_form",
    "expand_roots",
    "gcd_forms",
    "evaluate",
    "sturm_real_root_count",
    "squarefree_part",
    "rational_roots",
    "isolate_real_root",
    "linear_factor",
]


class _Infinity:
    """The projective point (1:0)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Point = Union[GaussianRational, _Infinity]


def _as_point(p) -> Point:
    if p is INF or (isinstance(p, str) and p.lower() == "inf"):
        return INF
    return as_gr(p)


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise InvalidInput("degree must be non-negative")
        if len(self.coeffs) != self.degree + 1:
            raise InvalidInput(
                f"degree-{self.degree} form needs {self.degree + 1} coefficients,"
                f" got {len(self.coeffs)}"
            )

    # -- construction -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> BinaryForm:
        cs = tuple(as_gr(c) for c in coeffs)
        if not cs:
            raise InvalidInput("a form needs at least one coefficient")
        return cls(len(cs) - 1, cs)

    @classmethod
    def zero(cls, degree: int) -> BinaryForm:
        return cls(degree, (ZERO,) * (degree + 1))

    @classmethod
    def one(cls) -> BinaryForm:
        return cls(0, (ONE,))

    @classmethod
    def monomial(cls, degree: int, j: int, coeff=1) -> BinaryForm:
        """``coeff * x^(degree-j) * y^j``."""
        cs = [ZERO] * (degree + 1)
        cs[j] = as_gr(coeff)
        return cls(degree, tuple(cs))

    @classmethod
    def from_univariate(cls, ascending: Sequence, degree: Optional[int] = None) -> BinaryForm:
        """Homogenize ``sum a_k x^k`` to a form of the given degree."""
        asc = [as_gr(c) for c in ascending]
        while asc and asc[-1].is_zero():
            asc.pop()
        if degree is None:
            degree = max(len(asc) - 1, 0)
        if len(asc) - 1 > degree:
            raise DegreeMismatch("univariate degree exceeds target form degree")
        cs = [ZERO] * (degree + 1)
        for k, a in enumerate(asc):
            cs[degree - k] = a
        return cls(degree, tuple(cs))

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: BinaryForm) -> BinaryForm:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot subtract degree {other.degree} from {self.degree}")
        return BinaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return multiply(self, other)
        s = as_gr(other, strict=False)
        if s is None:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        s = as_gr(other, strict=False)
        if s is None:
            return NotImplemented
        return self.scale(s)

    def scale(self, s) -> BinaryForm:
        s = as_gr(s)
        return BinaryForm(self.degree, tuple(c * s for c in self.coeffs))

    def conj(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(c.conj() for c in self.coeffs))

    def real_part(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(GaussianRational(c.re) for c in self.coeffs))

    def imag_part(self) -> BinaryForm:
        return BinaryForm(self.degree, tuple(GaussianRational(c.im) for c in self.coeffs))

    def pow(self, n: int) -> BinaryForm:
        out = BinaryForm.one()
        for _ in range(n):
            out = multiply(out, self)
        return out

    # -- univariate view ----------------------------------------------------
    def dehomogenize(self) -> list[GaussianRational]:
        """Ascending coefficients of ``f(x, 1)``, trailing zeros stripped."""
        asc = list(reversed(self.coeffs))
        while asc and asc[-1].is_zero():
            asc.pop()
        return asc

    def infinity_multiplicity(self) -> int:
        """Multiplicity of the root (1:0), i.e. the power of y dividing f."""
        if self.is_zero():
            raise ZeroPolynomial("the zero form has no finite root multiplicities")
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                return j
        raise AssertionError("unreachable")

    def __call__(self, point) -> GaussianRational:
        return evaluate(self, point)

    # -- presentation -------------------------------------------------------
    def __str__(self) -> str:
        terms = []
        d = self.degree
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = []
            if d - j:
                mono.append("x" if d - j == 1 else f"x^{d - j}")
            if j:
                mono.append("y" if j == 1 else f"y^{j}")
            m = "*".join(mono)
            if not m:
                cs = str(c) if c.is_real() or not c.re else f"({c})"
            elif c == ONE:
                cs = ""
            elif c == -ONE:
                cs = "-"
            elif c.is_real() or (not c.re and c.im):
                cs = f"{c}*"
            else:
                cs = f"({c})*"
            terms.append(cs + m)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> BinaryForm:
        try:
            degree = int(data["degree"])
            coeffs = tuple(GaussianRational.from_json(c) for c in data["coeffs"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad form encoding: {exc}") from exc
        return cls(degree, coeffs)


def multiply(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    out = [ZERO] * (f.degree + g.degree + 1)
    for j, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for k, b in enumerate(g.coeffs):
            if not b.is_zero():
                out[j + k] = out[j + k] + a * b
    return BinaryForm(f.degree + g.degree, tuple(out))


def conj_form(f: BinaryForm) -> BinaryForm:
    return f.conj()


def linear_factor(point) -> BinaryForm:
    """``x - b*y`` for the point (b:1), and ``y`` for (1:0)."""
    p = _as_point(point)
    if p is INF:
        return BinaryForm(1, (ZERO, ONE))
    return BinaryForm(1, (ONE, -p))


def evaluate(f: BinaryForm, point) -> GaussianRational:
    """``f(b, 1)`` for the point (b:1), the x^d coefficient for (1:0)."""
    p = _as_point(point)
    if p is INF:
        return f.coeffs[0]
    acc = ZERO
    for c in f.coeffs:  # Horner in x with y = 1, highest power first
        acc = acc * p + c
    return acc


@dataclass(frozen=True)
class RootList:
    """A form given by its leading scale and its projective roots."""

    lead: GaussianRational
    points: tuple

    def __post_init__(self):
        if as_gr(self.lead).is_zero():
            raise InvalidInput("RootList lead must be nonzero")
        object.__setattr__(self, "lead", as_gr(self.lead))
        object.__setattr__(self, "points", tuple(_as_point(p) for p in self.points))

    @property
    def degree(self) -> int:
        return len(self.points)

    def distinct_roots(self) -> bool:
        seen = set()
        for p in self.points:
            key = "inf" if p is INF else p
            if key in seen:
                return False
            seen.add(key)
        return True

    def finite_points(self) -> list[GaussianRational]:
        return [p for p in self.points if p is not INF]

    def expand(self) -> BinaryForm:
        return expand_roots(self)

    def to_json(self) -> dict:
        return {
            "lead": self.lead.to_json(),
            "points": ["inf" if p is INF else p.to_json() for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> RootList:
        try:
            lead = GaussianRational.from_json(data["lead"])
            pts = tuple(
                INF if (isinstance(p, str) and p.lower() == "inf") else GaussianRational.from_json(p)
                for p in data["points"]
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad roots encoding: {exc}") from exc
        return cls(lead, pts)


def expand_roots(r: RootList) -> BinaryForm:
    out = BinaryForm(0, (r.lead,))
    for p in r.points:
        out = multiply(out, linear_factor(p))
    return out


def divide_exact_linear(f: BinaryForm, point) -> Optional[BinaryForm]:
    """Return ``f / linear_factor(point)`` if the division is exact, else None."""
    p = _as_point(point)
    if f.degree == 0:
        return None
    if p is INF:
        if not f.coeffs[0].is_zero():
            return None
        return BinaryForm(f.degree - 1, f.coeffs[1:])
    # synthetic division of f(x, 1) by (x - p), coefficients highest first
    q = []
    acc = ZERO
    for c in f.coeffs[:-1]:
        acc = acc * p + c
        q.append(acc)
    rem = acc * p + f.coeffs[-1]
    if not rem.is_zero():
        return None
    return BinaryForm(f.degree - 1, tuple(q))


def factor_over_points(f: BinaryForm, candidates: Iterable) -> tuple[GaussianRational, list]:
    """Peel off linear factors at the candidate points by trial division.

    Returns ``(remaining scale, points found)``; the scale is meaningful only
    when every root was among the candidates.
    """
    found = []
    cur = f
    for c in dict.fromkeys(_as_point(c) for c in candidates):
        while True:
            q = divide_exact_linear(cur, c)
            if q is None:
                break
            found.append(c)
            cur = q
    if cur.degree != 0:
        raise InvalidInput("form did not split over the candidate points")
    return cur.coeffs[0], found


# ---------------------------------------------------------------------------
# univariate polynomials over Q(i), ascending coefficient lists


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _udivmod(a: Sequence[GaussianRational], b: Sequence[GaussianRational]):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv = b[-1].inverse()
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        coef = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = coef
        for k, bk in enumerate(b):
            a[shift + k] = a[shift + k] - coef * bk
        a.pop()
        _trim(a)
    return q, a


def _ugcd(a: Sequence[GaussianRational], b: Sequence[GaussianRational]) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def gcd_forms(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, normalized so its first nonzero coefficient is 1.

    The forms may have different degrees. The power of ``y`` (the (1:0) root)
    is tracked separately from the Euclidean gcd of the dehomogenizations.
    """
    fz, gz = f.is_zero(), g.is_zero()
    if fz and gz:
        raise BothZero("gcd of two zero forms is undefined")
    if fz or gz:
        h = g if fz else f
        lead = h.coeffs[h.infinity_multiplicity()]
        return BinaryForm(h.degree, tuple(c / lead for c in h.coeffs))
    m = min(f.infinity_multiplicity(), g.infinity_multiplicity())
    u = _ugcd(f.dehomogenize(), g.dehomogenize())
    e = len(u) - 1
    core = BinaryForm.from_univariate(u, e)
    if m:
        core = multiply(core, BinaryForm.monomial(m, m))
    return core


def gcd_many(forms: Iterable[BinaryForm]) -> BinaryForm:
    acc = None
    for f in forms:
        if f.is_zero():
            continue
        acc = f if acc is None else gcd_forms(acc, f)
    if acc is None:
        raise BothZero("gcd of zero forms is undefined")
    return gcd_forms(acc, BinaryForm.zero(acc.degree))


# ---------------------------------------------------------------------------
# real univariate polynomials over Q (ascending Fraction lists)


def _fr(p: Iterable) -> list[Fraction]:
    out = []
    for c in p:
        if isinstance(c, GaussianRational):
            if not c.is_real():
                raise InvalidInput("expected a real polynomial")
            c = c.re
        out.append(Fraction(c))
    return _trim(out)


def _fdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        coef = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = coef
        for k, bk in enumerate(b):
            a[shift + k] -= coef * bk
        a.pop()
        _trim(a)
    return q, a


def _fgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _fdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _deriv(p: list[Fraction]) -> list[Fraction]:
    return _trim([k * c for k, c in enumerate(p)][1:])


def _feval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p: Sequence) -> list[Fraction]:
    """Monic squarefree part ``p / gcd(p, p')`` of a nonzero real polynomial."""
    p = _fr(p)
    if not p:
        raise ZeroPolynomial("zero polynomial has no squarefree part")
    if len(p) == 1:
        return [Fraction(1)]
    g = _fgcd(p, _deriv(p))
    q, r = _fdivmod(p, g)
    assert not r
    return [c / q[-1] for c in q]


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [p, _deriv(p)]
    while chain[-1]:
        _, r = _fdivmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs_at(chain, x) -> list[int]:
    if x == math.inf:
        return [_sign(q[-1]) for q in chain]
    if x == -math.inf:
        return [_sign(q[-1]) * (-1 if (len(q) - 1) % 2 else 1) for q in chain]
    return [_sign(_feval(q, x)) for q in chain]


def _endpoint(v, default):
    if v is None:
        return default
    if isinstance(v, float) and math.isinf(v):
        return v
    return Fraction(v)


def sturm_real_root_count(p: Sequence, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi].

    ``p`` is an ascending coefficient list over Q. ``None`` (or ±inf) stands
    for an infinite endpoint.
    """
    a = _endpoint(lo, -math.inf)
    b = _endpoint(hi, math.inf)
    if not a < b:
        raise InvalidInput("need lo < hi")
    sq = squarefree_part(p)
    if len(sq) == 1:
        return 0
    chain = _sturm_chain(sq)
    return _variations(_signs_at(chain, a)) - _variations(_signs_at(chain, b))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(p: Sequence) -> list[Fraction]:
    """Distinct rational roots of a real polynomial, in increasing order."""
    p = _fr(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    roots = set()
    while len(p) > 1 and p[0] == 0:
        roots.add(Fraction(0))
        p = p[1:]
    if len(p) == 1:
        return sorted(roots)
    if len(p) == 2:
        roots.add(-p[0] / p[1])
        return sorted(roots)
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    for num in _divisors(ints[0]):
        for dd in _divisors(ints[-1]):
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if cand not in roots and _feval(p, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def cauchy_bound(p: Sequence) -> Fraction:
    p = _fr(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_root(
    p: Sequence,
    width: Fraction = Fraction(1, 2**20),
    lo=None,
    hi=None,
) -> tuple[Fraction, Fraction]:
    """Return (lo, hi] of width <= ``width`` containing exactly one real root.

    The leftmost real root inside the optional search window (lo, hi] is
    isolated; the default window is given by the Cauchy bound. Raises
    ``InvalidInput`` if there is no real root in the window.
    """
    sq = squarefree_part(p)
    bound = cauchy_bound(sq) if len(sq) > 1 else Fraction(1)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)
    if sturm_real_root_count(sq, lo, hi) == 0:
        raise InvalidInput("polynomial has no real root in the search window")
    while True:
        n = sturm_real_root_count(sq, lo, hi)
        if n == 1 and hi - lo <= width:
            return lo, hi
        mid = (lo + hi) / 2
        if sturm_real_root_count(sq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
