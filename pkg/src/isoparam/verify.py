"""Exact checks of the eiconal equation and the Cartan-Munzner conditions.

Every decision is an exact polynomial identity.  Inputs are either expanded
:class:`~isoparam.polyring.Polynomial` values or :class:`ComposedForm`
values ``P(G, |x|^2)``.  For the latter the chain rule reduces both
identities to identities in Q(sqrt 3)[u, v], using

    |grad G|^2 = p^2 v^(p-1),  <grad G, grad |x|^2> = 2p u,
    |grad |x|^2|^2 = 4 v,       Delta G = c_G v^(p/2 - 1),  Delta |x|^2 = 2n.

This is exact, not a shortcut: a non-radial ``G`` and ``|x|^2`` are
algebraically independent, so an identity in ``x`` holds iff it holds in
``(u, v)``.  When ``G`` itself fails those identities the form is expanded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .coeff import QSqrt3
from .compose import ComposedForm, chebyshev_compose
from .polyring import (
    Polynomial,
    grad_norm_sq,
    homogeneous_degree,
    laplacian,
    norm_sq,
    poly_diff,
    poly_pow,
)

PolyLike = Union[Polynomial, ComposedForm]


@dataclass(frozen=True)
class Witness:
    """One nonzero term of a residual that should have vanished.

    ``variables`` is ``"x"`` for an expanded residual or ``"uv"`` when the
    residual lives in the (G, |x|^2) algebra of a composed form.
    """

    exp: tuple[int, ...]
    coeff: QSqrt3
    variables: str = "x"

    def to_json(self) -> dict:
        return {"exp": list(self.exp), **self.coeff.to_json(), "variables": self.variables}


@dataclass(frozen=True)
class EiconalCheck:
    ok: bool
    degree: int
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Multiplicities:
    m_plus: Fraction | None
    m_minus: Fraction | None
    integral: bool


@dataclass(frozen=True)
class VerificationReport:
    n: int
    degree_m: int
    eiconal_ok: bool
    laplacian_constant_c: QSqrt3 | None
    m_plus: Fraction | None
    m_minus: Fraction | None
    is_cm: bool
    is_radial: bool
    failure_witness: Witness | None = None

    def to_json(self) -> dict:
        c = self.laplacian_constant_c
        return {
            "n": self.n,
            "m": self.degree_m,
            "eiconal": self.eiconal_ok,
            "c": None if c is None else c.to_json(),
            "m_plus": None if self.m_plus is None else str(self.m_plus),
            "m_minus": None if self.m_minus is None else str(self.m_minus),
            "is_cm": self.is_cm,
            "is_radial": self.is_radial,
            "witness": None if self.failure_witness is None else self.failure_witness.to_json(),
        }


def _witness(residual: Polynomial, variables: str = "x") -> Witness | None:
    lead = residual.leading_term()
    return None if lead is None else Witness(lead[0], lead[1], variables)


# ---------------------------------------------------------------------------
# the (u, v) algebra for composed forms

_U = Polynomial(2, {(1, 0): 1})
_V = Polynomial(2, {(0, 1): 1})


def _v_pow(k: int) -> Polynomial:
    return poly_pow(_V, k)


@dataclass(frozen=True)
class _InnerData:
    p: int
    c: QSqrt3


@lru_cache(maxsize=64)
def _inner_data(g: Polynomial) -> _InnerData | None:
    """Degree and Laplacian constant of ``G`` when the chain rule applies."""
    p = homogeneous_degree(g)
    if g.dim < 2 or not check_eiconal(g) or is_radial(g):
        return None
    c = check_laplacian(g)
    if c is None:
        return None
    return _InnerData(p, c)


def _uv_grad_norm_sq(f: ComposedForm, data: _InnerData) -> Polynomial:
    p = data.p
    pu, pv = poly_diff(f.outer, 1), poly_diff(f.outer, 2)
    return (
        (pu * pu) * _v_pow(p - 1).scale(p * p)
        + (_U * pu * pv).scale(4 * p)
        + (_V * pv * pv).scale(4)
    )


def _uv_laplacian(f: ComposedForm, data: _InnerData) -> Polynomial:
    p, n = data.p, f.dim
    pu, pv = poly_diff(f.outer, 1), poly_diff(f.outer, 2)
    puu, puv, pvv = poly_diff(pu, 1), poly_diff(pu, 2), poly_diff(pv, 2)
    out = puu * _v_pow(p - 1).scale(p * p) + (_U * puv).scale(4 * p) + (_V * pvv).scale(4)
    out = out + pv.scale(2 * n)
    if data.c:
        # c != 0 only for even p
        out = out + (pu * _v_pow(p // 2 - 1)).scale(data.c)
    return out


def _resolve(f: PolyLike):
    """``(expanded, None)`` or ``(composed, inner_data)``."""
    if isinstance(f, ComposedForm):
        data = _inner_data(f.inner)
        if data is None:
            return f.expand(), None
        return f, data
    if isinstance(f, Polynomial):
        return f, None
    raise TypeError(f"expected Polynomial or ComposedForm, got {type(f).__name__}")


# ---------------------------------------------------------------------------
# checks


def check_eiconal(f: PolyLike) -> EiconalCheck:
    """``|grad F|^2 == m^2 |x|^(2m-2)`` exactly."""
    f, data = _resolve(f)
    m = f.degree() if data else homogeneous_degree(f, "F")
    if m < 1:
        raise ValueError("eiconal check needs degree >= 1")
    if data:
        residual = _uv_grad_norm_sq(f, data) - _v_pow(m - 1).scale(m * m)
        return EiconalCheck(residual.is_zero(), m, _witness(residual, "uv"))
    residual = grad_norm_sq(f) - poly_pow(norm_sq(f.dim), m - 1).scale(m * m)
    return EiconalCheck(residual.is_zero(), m, _witness(residual))


def check_laplacian(f: PolyLike) -> QSqrt3 | None:
    """The constant ``c`` with ``Delta F == c |x|^(m-2)``, or ``None``.

    For odd ``m`` only ``c = 0`` is possible.
    """
    f, data = _resolve(f)
    m = f.degree() if data else homogeneous_degree(f, "F")
    if data:
        lap, radial_part = _uv_laplacian(f, data), _V
        lead_exp = (0, (m - 2) // 2) if m >= 2 else None
    else:
        lap, radial_part = laplacian(f), norm_sq(f.dim)
        lead_exp = (m - 2,) + (0,) * (f.dim - 1) if m >= 2 else None
    if m % 2 or m < 2:
        return QSqrt3(0) if lap.is_zero() else None
    c = lap.coefficient(lead_exp)
    if lap == poly_pow(radial_part, (m - 2) // 2).scale(c):
        return c
    return None


def multiplicities(n: int, m: int, c: QSqrt3 | int | Fraction) -> Multiplicities:
    """``m_pm = (n-2)/m +- c/m^2``; integral means both lie in {1, 2, 3, ...}."""
    c = QSqrt3.coerce(c)
    if not c.is_rational():
        return Multiplicities(None, None, False)
    base = Fraction(n - 2, m)
    shift = c.a / (m * m)
    mp, mm = base + shift, base - shift
    integral = all(v.denominator == 1 and v >= 1 for v in (mp, mm))
    return Multiplicities(mp, mm, integral)


def is_radial(f: PolyLike) -> bool:
    """``F == +-|x|^m`` exactly (so ``m`` even)."""
    f, data = _resolve(f)
    m = f.degree() if data else homogeneous_degree(f, "F")
    if m % 2:
        return False
    target = _v_pow(m // 2) if data else poly_pow(norm_sq(f.dim), m // 2)
    body = f.outer if data else f
    return body == target or body == -target


def is_cm(f: PolyLike) -> VerificationReport:
    """Full Cartan-Munzner report for ``F``."""
    eik = check_eiconal(f)
    c = check_laplacian(f)
    radial = is_radial(f)
    mp = mm = None
    integral = False
    if c is not None:
        mult = multiplicities(f.dim, eik.degree, c)
        mp, mm, integral = mult.m_plus, mult.m_minus, mult.integral
    return VerificationReport(
        n=f.dim,
        degree_m=eik.degree,
        eiconal_ok=eik.ok,
        laplacian_constant_c=c,
        m_plus=mp,
        m_minus=mm,
        is_cm=eik.ok and c is not None and integral and not radial,
        is_radial=radial,
        failure_witness=eik.witness,
    )


# ---------------------------------------------------------------------------
# compositions


def composition_sign(f: Polynomial, g: Polynomial, k: int) -> int | None:
    """``+1`` or ``-1`` if ``F == +-chebyshev_compose(G, k)``, else ``None``."""
    m = homogeneous_degree(f, "F")
    p = homogeneous_degree(g, "G")
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if m != p * k:
        raise ValueError(f"degree mismatch: deg F = {m} but deg G * k = {p * k}")
    h = chebyshev_compose(g, k, max_degree=max(m, 1))
    if f == h:
        return 1
    if f == -h:
        return -1
    return None


def verify_composition(f: Polynomial, g: Polynomial, k: int) -> bool:
    """``F == +-|x|^m T_k(G |x|^-p)`` as exact polynomials."""
    return composition_sign(f, g, k) is not None


@dataclass(frozen=True)
class Classification:
    label: str
    k: int
    sign: int


def classify_against_catalog(
    f: Polynomial, catalog: Sequence[tuple[Polynomial, str]]
) -> Classification | None:
    """First catalog entry ``G`` with ``F == +-T_k(G)``, radial forms first.

    A radial ``F`` is reported as label ``"radial"`` with ``k = m/2`` (a power
    of ``|x|^2``).  Entries in a different dimension or with a degree not
    dividing ``m`` are skipped.
    """
    m = homogeneous_degree(f, "F")
    if is_radial(f):
        sign = 1 if f == poly_pow(norm_sq(f.dim), m // 2) else -1
        return Classification("radial", m // 2, sign)
    for g, label in catalog:
        if g.dim != f.dim:
            continue
        p = homogeneous_degree(g, label)
        if m % p:
            continue
        sign = composition_sign(f, g, m // p)
        if sign is not None:
            return Classification(label, m // p, sign)
    return None
