from fractions import Fraction

import pytest
from hypothesis import strategies as st

from isoparam import _backend, _purekernels
from isoparam.coeff import QSqrt3
from isoparam.polyring import Polynomial

try:
    from isoparam import _kernels as _compiled
except ImportError:  # pragma: no cover - extension not built
    _compiled = None

BACKENDS = [_purekernels] + ([_compiled] if _compiled is not None else [])

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def backend(request, monkeypatch):
    """Route polynomial products through one specific kernel module."""
    mod = request.param
    for name in ("Accumulator", "eval_batch"):
        monkeypatch.setattr(_backend, name, getattr(mod, name))
    return mod


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def coeffs(draw, allow_sqrt3=True):
    a = draw(small_rationals)
    b = draw(small_rationals) if allow_sqrt3 and draw(st.booleans()) else Fraction(0)
    return QSqrt3(a, b)


@st.composite
def polynomials(draw, dim=None, max_degree=4, max_terms=10, homogeneous=None):
    n = dim if dim is not None else draw(st.integers(1, 4))
    count = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(count):
        if homogeneous is not None:
            cuts = sorted(draw(st.lists(st.integers(0, homogeneous), min_size=n - 1, max_size=n - 1)))
            bounds = [0] + cuts + [homogeneous]
            exp = tuple(bounds[i + 1] - bounds[i] for i in range(n))
        else:
            exp = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
            if sum(exp) > max_degree:
                continue
        terms[exp] = draw(coeffs())
    return Polynomial(n, terms)


@st.composite
def polynomial_tuples(draw, size, **kw):
    n = draw(st.integers(1, 4))
    return tuple(draw(polynomials(dim=n, **kw)) for _ in range(size))
