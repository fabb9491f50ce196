"""Chebyshev polynomials and the homogenized composition ``|x|^m T_k(G / |x|^p)``.

A composition is first built as a :class:`ComposedForm`: a bivariate
polynomial ``P(u, v)`` to be evaluated at ``u = G(x)``, ``v = |x|^2``.
:meth:`ComposedForm.expand` turns it into an ordinary polynomial in ``x``.
The unexpanded form lets :mod:`isoparam.verify` decide identities for
compositions whose expansion is too large to build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polyring import (
    Polynomial,
    homogeneous_degree,
    norm_sq,
    poly_mul,
    poly_pow,
    zero,
)

MAX_COMPOSE_DEGREE = 24


@dataclass(frozen=True)
class ChebyshevPoly:
    """``T_k`` as an exact coefficient vector, ``coeffs[j]`` multiplying ``t^j``."""

    k: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        parts = [f"{c}*t^{j}" for j, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(parts)) or "0"


def chebyshev(k: int) -> ChebyshevPoly:
    """First-kind Chebyshev polynomial via ``T_k = 2t T_{k-1} - T_{k-2}``."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    prev, cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    if k == 0:
        return ChebyshevPoly(0, tuple(prev))
    for _ in range(k - 1):
        nxt = [Fraction(0)] + [2 * c for c in cur]
        for j, c in enumerate(prev):
            nxt[j] -= c
        prev, cur = cur, nxt
    return ChebyshevPoly(k, tuple(cur))


def _uv(exp_u: int, exp_v: int, c) -> Polynomial:
    return Polynomial(2, {(exp_u, exp_v): c})


@dataclass(frozen=True)
class ComposedForm:
    """``F(x) = outer(inner(x), |x|^2)`` with ``outer`` a polynomial in (u, v)."""

    inner: Polynomial
    outer: Polynomial
    inner_degree: int

    def __post_init__(self):
        if self.outer.dim != 2:
            raise ValueError("outer polynomial must be bivariate in (u, v)")
        weights = {self.inner_degree * a + 2 * b for a, b in self.outer.terms}
        if len(weights) > 1:
            raise ValueError("outer polynomial is not weighted-homogeneous")

    @property
    def dim(self) -> int:
        return self.inner.dim

    def degree(self) -> int:
        if self.outer.is_zero():
            return -1
        a, b = next(iter(self.outer.terms))
        return self.inner_degree * a + 2 * b

    def __neg__(self) -> "ComposedForm":
        return ComposedForm(self.inner, -self.outer, self.inner_degree)

    def expand(self) -> Polynomial:
        """Substitute ``u = G``, ``v = |x|^2``; powers are built incrementally."""
        n = self.inner.dim
        by_u: dict[int, Polynomial] = {}
        for (a, b), c in self.outer.terms.items():
            term = poly_pow(norm_sq(n), b).scale(c)
            by_u[a] = by_u[a] + term if a in by_u else term
        total = zero(n)
        g_pow = None
        top = max(by_u, default=0)
        for a in range(top + 1):
            g_pow = poly_pow(self.inner, 0) if g_pow is None else poly_mul(g_pow, self.inner)
            if a in by_u:
                total = total + poly_mul(g_pow, by_u[a])
        return total


def chebyshev_outer(k: int, p: int) -> Polynomial:
    """``sum_j c_j u^j v^(p(k-j)/2)`` for the coefficients ``c_j`` of ``T_k``."""
    t = chebyshev(k)
    out = zero(2)
    for j, c in enumerate(t.coeffs):
        if not c:
            continue
        w = p * (k - j)
        if w % 2:
            raise ArithmeticError("odd power of |x| in homogenized Chebyshev composition")
        out = out + _uv(j, w // 2, c)
    return out


def chebyshev_composite(g: Polynomial, k: int, max_degree: int = MAX_COMPOSE_DEGREE) -> ComposedForm:
    """Unexpanded ``|x|^(pk) T_k(G |x|^-p)``."""
    p = homogeneous_degree(g, "inner polynomial G")
    if p < 1:
        raise ValueError("G must have degree >= 1")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if p * k > max_degree:
        raise ValueError(f"composed degree {p * k} exceeds cap {max_degree}")
    return ComposedForm(g, chebyshev_outer(k, p), p)


def chebyshev_compose(g: Polynomial, k: int, max_degree: int = MAX_COMPOSE_DEGREE) -> Polynomial:
    """Expanded homogeneous polynomial of degree ``deg(G) * k``."""
    return chebyshev_composite(g, k, max_degree).expand()


def munzner_double(f: Polynomial) -> Polynomial:
    """``2 F^2 - |x|^(2p)`` for ``F`` homogeneous of degree ``p``."""
    p = homogeneous_degree(f, "F")
    return poly_mul(f, f).scale(2) - poly_pow(norm_sq(f.dim), p)


def chebyshev_float(k: int, t: float) -> float:
    """``cos(k arccos t)``; reference values for the recurrence."""
    return math.cos(k * math.acos(t))
