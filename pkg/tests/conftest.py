import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gramspec.forms import BinaryForm
from gramspec.scalars import GaussianRational

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def G(re=0, im=0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


def form(*coeffs) -> BinaryForm:
    """Form from coefficients of x^d, x^(d-1) y, ..., y^d (ints, Fractions or complex ints)."""
    out = []
    for c in coeffs:
        if isinstance(c, complex):
            out.append(G(int(c.real), int(c.imag)))
        else:
            out.append(G(c))
    return BinaryForm(len(out) - 1, tuple(out))


X = form(1, 0)
Y = form(0, 1)
ONE = BinaryForm.one()


@pytest.fixture
def rng():
    return random.Random(20261015)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
