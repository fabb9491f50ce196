"""Constructors for the explicit polynomial families.

All outputs are exact :class:`~isoparam.polyring.Polynomial` values.  Nothing
here decides whether a result is a Cartan-Munzner polynomial; that is the job
of :mod:`isoparam.verify`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .coeff import SQRT3, QSqrt3
from .polyring import (
    ComplexPolynomial,
    Polynomial,
    norm_sq,
    poly_pow,
    sum_of_squares,
    variable,
    zero,
)

# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class SubspaceSpec:
    """Coordinate subspace ``V`` spanned by the last ``s`` of ``n`` axes."""

    n: int
    s: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.s <= self.n:
            raise ValueError(f"need 1 <= s <= n, got n={self.n}, s={self.s}")

    @property
    def v_coords(self) -> range:
        return range(self.n - self.s + 1, self.n + 1)

    @property
    def perp_coords(self) -> range:
        return range(1, self.n - self.s + 1)

    def v_norm_sq(self) -> Polynomial:
        """``|V(x)|^2``."""
        return sum_of_squares(self.n, self.v_coords)

    def perp_norm_sq(self) -> Polynomial:
        """``|V^perp(x)|^2``."""
        return sum_of_squares(self.n, self.perp_coords)


def radial(n: int, m: int) -> Polynomial:
    """``|x|^m`` for even ``m >= 2``."""
    if m < 2 or m % 2:
        raise ValueError(f"|x|^m is a polynomial only for even m >= 2, got m={m}")
    return poly_pow(norm_sq(n), m // 2)


def linear_form(n: int) -> Polynomial:
    """The coordinate ``x_n``, representative of every unit linear form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return variable(n, n)


def quadratic_form(spec: SubspaceSpec) -> Polynomial:
    """``|V(x)|^2 - |V^perp(x)|^2``."""
    if not 1 <= spec.s <= spec.n - 1:
        raise ValueError(f"quadratic form needs 1 <= s <= n-1, got s={spec.s}, n={spec.n}")
    return spec.v_norm_sq() - spec.perp_norm_sq()


def virtue_form(spec: SubspaceSpec, m: int) -> Polynomial:
    """Real part of ``(|V(x)| + i |V^perp(x)|)^m``.

    Expanded as ``sum_k (-1)^k C(m, 2k) |V|^(m-2k) |V^perp|^(2k)``.  When
    ``s == 1`` the modulus ``|V(x)|`` is the signed coordinate ``x_n``, so odd
    ``m`` is allowed; for ``s >= 2`` only even ``m`` yields a polynomial.
    """
    n, s = spec.n, spec.s
    if m < 1:
        raise ValueError("degree must be >= 1")
    if s >= 2 and m % 2:
        raise ValueError(f"odd degree m={m} with dim V={s} >= 2 is not a polynomial")
    perp = spec.perp_norm_sq()
    if s == 1:
        v_pow = lambda j: poly_pow(variable(n, n), j)  # noqa: E731
    else:
        vsq = spec.v_norm_sq()
        v_pow = lambda j: poly_pow(vsq, j // 2)  # noqa: E731
    total = zero(n)
    for k in range(m // 2 + 1):
        term = v_pow(m - 2 * k) * poly_pow(perp, k)
        total = total + term.scale((-1) ** k * comb(m, 2 * k))
    return total


# ---------------------------------------------------------------------------
# division algebras (Cayley-Dickson doubling)


def cd_conj(u: Sequence) -> list:
    return [u[0]] + [-c for c in u[1:]]


def cd_mul(u: Sequence, v: Sequence) -> list:
    """Cayley-Dickson product ``(a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))``.

    Works for component lists of length 1, 2, 4, 8 over any commutative ring
    whose elements support ``+``, ``-`` and ``*``.  Basis order is
    ``1, e1, ..., e_{d-1}``; the doubling gives ``e1 e2 = e3``.
    """
    d = len(u)
    if d != len(v):
        raise ValueError(f"mixed algebra dimensions {d} and {len(v)}")
    if d == 1:
        return [u[0] * v[0]]
    if d not in (2, 4, 8, 16):
        raise ValueError(f"unsupported algebra dimension {d}")
    h = d // 2
    a, b, c, dd = u[:h], u[h:], v[:h], v[h:]
    left = [x - y for x, y in zip(cd_mul(a, c), cd_mul(cd_conj(dd), b))]
    right = [x + y for x, y in zip(cd_mul(dd, a), cd_mul(b, cd_conj(c)))]
    return left + right


@dataclass(frozen=True)
class DivisionAlgebraElement:
    """Element of R, C, H or O with arbitrary ring-valued components."""

    components: tuple

    def __post_init__(self):
        if len(self.components) not in (1, 2, 4, 8):
            raise ValueError(f"dimension must be 1, 2, 4 or 8, got {len(self.components)}")

    @property
    def d(self) -> int:
        return len(self.components)

    def __mul__(self, other: "DivisionAlgebraElement") -> "DivisionAlgebraElement":
        return division_mul(self, other)

    def conj(self) -> "DivisionAlgebraElement":
        return DivisionAlgebraElement(tuple(cd_conj(self.components)))

    def real(self):
        return self.components[0]

    def norm_sq(self):
        total = self.components[0] * self.components[0]
        for c in self.components[1:]:
            total = total + c * c
        return total


def division_mul(u: DivisionAlgebraElement, v: DivisionAlgebraElement) -> DivisionAlgebraElement:
    if u.d != v.d:
        raise ValueError(f"mixed algebra dimensions {u.d} and {v.d}")
    return DivisionAlgebraElement(tuple(cd_mul(u.components, v.components)))


def coordinate_element(n: int, first: int, d: int) -> DivisionAlgebraElement:
    """The element whose components are ``x_first, ..., x_{first+d-1}``."""
    return DivisionAlgebraElement(tuple(variable(n, first + j) for j in range(d)))


def cartan_cubic(d: int) -> Polynomial:
    """Cartan's isoparametric cubic in ``n = 3d + 2`` variables.

    Layout: ``z_k`` occupies ``x_{(k-1)d+1} .. x_{kd}`` for k = 1, 2, 3, then
    ``x_{n-1}``, ``x_n``.
    """
    if d not in (1, 2, 4, 8):
        raise ValueError(f"d must be 1, 2, 4 or 8, got {d}")
    n = 3 * d + 2
    z = [coordinate_element(n, k * d + 1, d) for k in range(3)]
    zsq = [sum_of_squares(n, range(k * d + 1, k * d + d + 1)) for k in range(3)]
    xn, xn1 = variable(n, n), variable(n, n - 1)
    half3 = Fraction(3, 2)
    f = xn * xn * xn
    f = f + (xn * (zsq[0] + zsq[1] - zsq[2].scale(2) - (xn1 * xn1).scale(2))).scale(half3)
    f = f + (xn1 * (zsq[1] - zsq[0])).scale(SQRT3 * half3)
    triple = division_mul(division_mul(z[0], z[1]), z[2]).real()
    return f + triple.scale(3 * SQRT3)


# ---------------------------------------------------------------------------
# Clifford systems


@dataclass(frozen=True)
class CliffordSystem:
    """Symmetric ``A_0..A_s`` on R^(2l) with ``A_i A_j + A_j A_i = 2 delta_ij I``."""

    l: int  # noqa: E741
    s: int
    matrices: tuple

    @property
    def n(self) -> int:
        return 2 * self.l

    def violations(self) -> list[tuple[int, int]]:
        """Index pairs breaking symmetry or the anticommutation relation."""
        bad = []
        ident = np.eye(self.n, dtype=np.int64)
        mats = [np.asarray(a, dtype=np.int64) for a in self.matrices]
        for i, a in enumerate(mats):
            if not np.array_equal(a, a.T) or not np.isin(a, (-1, 0, 1)).all():
                bad.append((i, i))
                continue
            for j in range(i, len(mats)):
                b = mats[j]
                target = 2 * ident if i == j else 0 * ident
                if not np.array_equal(a @ b + b @ a, target):
                    bad.append((i, j))
        return bad

    def is_valid(self) -> bool:
        return not self.violations()


def _left_mult_matrices(d: int) -> list[np.ndarray]:
    """Left multiplication by the imaginary units of the d-dim algebra.

    Each matrix is a skew signed permutation; they pairwise anticommute and
    square to -I.
    """
    basis = np.eye(d, dtype=np.int64)
    mats = []
    for i in range(1, d):
        cols = [cd_mul(list(basis[i]), list(basis[j])) for j in range(d)]
        mats.append(np.array(cols, dtype=np.int64).T)
    return mats


def _complex_structures(count: int) -> list[np.ndarray]:
    """``count`` skew orthogonal anticommuting {-1,0,1} matrices of minimal size."""
    if count == 0:
        return []
    if count == 1:
        return _left_mult_matrices(2)
    if count <= 3:
        return _left_mult_matrices(4)[:count]
    if count <= 7:
        return _left_mult_matrices(8)[:count]
    if count == 8:
        octs = _left_mult_matrices(8)
        z = np.zeros((8, 8), dtype=np.int64)
        out = [np.block([[e, z], [z, -e]]) for e in octs]
        i8 = np.eye(8, dtype=np.int64)
        out.append(np.block([[z, i8], [-i8, z]]))
        return out
    raise ValueError(f"Clifford construction implemented for s <= 9 only (s = {count + 1})")


def clifford_min_dim(s: int) -> int:
    """Minimal ``l`` admitting a Clifford system with ``s + 1`` matrices on R^(2l)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return 1 if s == 1 else _complex_structures(s - 1)[0].shape[0]


def clifford_system(s: int, multiplier: int = 1) -> CliffordSystem:
    """Standard Clifford system with ``s + 1`` matrices on R^(2l).

    ``l = multiplier * clifford_min_dim(s)``; the ``s - 1`` complex structures
    are repeated block-diagonally ``multiplier`` times.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if multiplier < 1:
        raise ValueError("multiplier must be >= 1")
    es = _complex_structures(s - 1)
    base = 1 if not es else es[0].shape[0]
    l = base * multiplier  # noqa: E741
    es = [np.kron(np.eye(multiplier, dtype=np.int64), e) for e in es]
    ident = np.eye(l, dtype=np.int64)
    zero_l = np.zeros((l, l), dtype=np.int64)
    mats = [
        np.block([[ident, zero_l], [zero_l, -ident]]),
        np.block([[zero_l, ident], [ident, zero_l]]),
    ]
    mats += [np.block([[zero_l, e], [e.T, zero_l]]) for e in es]
    return CliffordSystem(l=l, s=s, matrices=tuple(m.astype(np.int64) for m in mats))


def quadratic_of_matrix(a: np.ndarray) -> Polynomial:
    """``x^T A x`` for an integer symmetric matrix."""
    n = a.shape[0]
    terms: dict[tuple[int, ...], int] = {}
    for i in range(n):
        for j in range(n):
            if a[i, j]:
                exp = [0] * n
                exp[i] += 1
                exp[j] += 1
                key = tuple(exp)
                terms[key] = terms.get(key, 0) + int(a[i, j])
    return Polynomial(n, terms)


def fkm_quartic(cs: CliffordSystem) -> Polynomial:
    """``|x|^4 - 2 sum_i (x^T A_i x)^2``."""
    r = norm_sq(cs.n)
    total = r * r
    for a in cs.matrices:
        q = quadratic_of_matrix(a)
        total = total - (q * q).scale(2)
    return total


# ---------------------------------------------------------------------------
# the two exceptional quartics built from 5x5 skew matrices

_SKEW_SLOTS = [(i, j) for i in range(5) for j in range(i + 1, 5)]


def skew_matrix(d: int) -> list[list[ComplexPolynomial]]:
    """The 5x5 skew matrix ``Z`` with ``z_k = x_k`` (d=1) or ``x_k + i x_{10+k}`` (d=2)."""
    if d not in (1, 2):
        raise ValueError(f"d must be 1 or 2, got {d}")
    n = 10 * d
    zero_c = ComplexPolynomial(zero(n))
    z = [[zero_c] * 5 for _ in range(5)]
    for k, (i, j) in enumerate(_SKEW_SLOTS, start=1):
        im = variable(n, 10 + k) if d == 2 else zero(n)
        entry = ComplexPolynomial(variable(n, k), im)
        z[i][j] = entry
        z[j][i] = -entry
    return z


def _matmul(a, b):
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = a[i][0] * b[0][j]
            for t in range(1, size):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _trace(a) -> ComplexPolynomial:
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def ot_traces(d: int) -> tuple[Polynomial, Polynomial]:
    """``(tr(Z Zbar), tr((Z Zbar)^2))``; both are real polynomials."""
    z = skew_matrix(d)
    zbar = [[e.conj() for e in row] for row in z]
    w = _matmul(z, zbar)
    t1 = _trace(w)
    t2 = _trace(_matmul(w, w))
    if t1.im or t2.im:
        raise ArithmeticError("trace of Z Zbar products is not real")
    return t1.re, t2.re


def ot_quartic(d: int) -> Polynomial:
    """``(tr (Z Zbar)^2 - 3/8 (tr Z Zbar)^2) / 2`` as printed, unnormalized."""
    t1, t2 = ot_traces(d)
    return (t2 - (t1 * t1).scale(Fraction(3, 8))).scale(Fraction(1, 2))


def eiconal_scale(f: Polynomial) -> tuple[QSqrt3, QSqrt3] | None:
    """``(lam, mu)`` with ``|grad f|^2 = lam |x|^(2m-2)`` and ``|grad(mu f)|^2 = m^2 |x|^(2m-2)``.

    ``None`` when ``|grad f|^2`` is not a constant multiple of ``|x|^(2m-2)``
    or when ``mu`` would leave Q(sqrt 3).
    """
    from .polyring import grad_norm_sq, homogeneous_degree

    m = homogeneous_degree(f)
    g = grad_norm_sq(f)
    target = poly_pow(norm_sq(f.dim), m - 1)
    lam = g.coefficient((2 * (m - 1),) + (0,) * (f.dim - 1))
    if not lam or g != target.scale(lam):
        return None
    mu = (QSqrt3(m * m) / lam).sqrt()
    if mu is None:
        return None
    return lam, mu


def normalized_ot_quartic(d: int) -> Polynomial:
    """``mu * F_d`` rescaled so that it solves the degree-4 eiconal equation."""
    f = ot_quartic(d)
    scale = eiconal_scale(f)
    if scale is None:
        raise ArithmeticError(f"ot_quartic({d}) admits no exact eiconal rescaling")
    return f.scale(scale[1])
