"""Sparse multivariate polynomials over Q(sqrt 3).

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`~isoparam.coeff.QSqrt3` coefficients.  Products go through the
accumulators in :mod:`isoparam._backend`, which see each monomial as one
integer with a bit field per variable (sized for the product at hand), so
monomial multiplication is plain integer addition.

Coordinates are 1-based in the public functions (``poly_diff(p, 1)`` is
d/dx_1), matching the usual mathematical indexing.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _backend
from .coeff import ONE, ZERO, QSqrt3, Scalar, make_fraction, parse_rational

MAX_EXPONENT = 64


class DimensionError(ValueError):
    """Operands live in different ambient dimensions."""


class DegreeOverflowError(ValueError):
    """An exponent exceeds :data:`MAX_EXPONENT`."""


class _AnyDegree:
    """Sentinel: the zero polynomial is homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "zero"

    def __reduce__(self):
        return (_AnyDegree, ())


ANY_DEGREE = _AnyDegree()


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "_terms", "_packed", "_float", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        clean: dict[tuple[int, ...], QSqrt3] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != dim:
                raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {dim}")
            for e in exp:
                if not isinstance(e, int) or e < 0:
                    raise ValueError(f"exponents must be nonnegative integers: {exp}")
                if e > MAX_EXPONENT:
                    raise DegreeOverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
            c = QSqrt3.coerce(c)
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self.dim = dim
        self._terms = {e: c for e, c in clean.items() if c}
        self._packed = None
        self._float = None
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        # caller guarantees canonical, validated terms
        p = object.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._packed = None
        p._float = None
        p._hash = None
        return p

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple[int, ...], QSqrt3]:
        return dict(self._terms)

    def items(self):
        """Terms in graded-lex order, leading term first."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exp: Sequence[int]) -> QSqrt3:
        return self._terms.get(tuple(exp), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def leading_term(self) -> tuple[tuple[int, ...], QSqrt3] | None:
        if not self._terms:
            return None
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction, QSqrt3)):
            return self == constant(self.dim, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return constant(self.dim, other)

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = QSqrt3.coerce(c)
        if not c:
            return Polynomial._raw(self.dim, {})
        return Polynomial._raw(self.dim, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction, QSqrt3)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        return poly_pow(self, k)

    # -- integer form for the kernels -------------------------------------
    def _packed_form(self):
        """``(exps, exps_array, A, B, D, max_exps)`` with coefficients ``(A + B sqrt3) / D``."""
        if self._packed is None:
            exps = list(self._terms)
            den = 1
            for c in self._terms.values():
                den = math.lcm(den, c.a.denominator, c.b.denominator)
            avals, bvals = [], []
            for e in exps:
                c = self._terms[e]
                avals.append(c.a.numerator * (den // c.a.denominator))
                bvals.append(c.b.numerator * (den // c.b.denominator))
            arr = np.array(exps, dtype=np.int64).reshape(len(exps), self.dim)
            top = tuple(arr.max(axis=0).tolist()) if exps else (0,) * self.dim
            self._packed = (exps, arr, avals, bvals, den, top)
        return self._packed

    # -- presentation -----------------------------------------------------
    def __repr__(self) -> str:
        return f"Polynomial(dim={self.dim}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [{"exp": list(e), **c.to_json()} for e, c in self.items()],
        }

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_json(), **kwargs)

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        try:
            dim = obj["dim"]
            raw_terms = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from None
        if not isinstance(raw_terms, list):
            raise ValueError("'terms' must be a list")
        terms: dict[tuple[int, ...], QSqrt3] = {}
        for t in raw_terms:
            exp = tuple(t["exp"])
            if exp in terms:
                raise ValueError(f"duplicate monomial {list(exp)}")
            c = QSqrt3(parse_rational(t["a"]), parse_rational(t.get("b", "0")))
            if not c:
                raise ValueError(f"zero coefficient stored for {list(exp)}")
            terms[exp] = c
        return cls(dim, terms)

    @classmethod
    def loads(cls, text: str) -> "Polynomial":
        return cls.from_json(json.loads(text))


class ComplexPolynomial:
    """``re + i*im`` with both parts real :class:`Polynomial` in the same dim."""

    __slots__ = ("re", "im")

    def __init__(self, re: Polynomial, im: Polynomial | None = None):
        im = zero(re.dim) if im is None else im
        if re.dim != im.dim:
            raise DimensionError("real and imaginary parts differ in dimension")
        self.re = re
        self.im = im

    @property
    def dim(self) -> int:
        return self.re.dim

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return ComplexPolynomial(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexPolynomial":
        return ComplexPolynomial(-self.re, -self.im)

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexPolynomial(a * c - b * d, a * d + b * c)

    def conj(self) -> "ComplexPolynomial":
        return ComplexPolynomial(self.re, -self.im)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __repr__(self) -> str:
        return f"ComplexPolynomial(re={self.re}, im={self.im})"


# ---------------------------------------------------------------------------
# constructors


def zero(dim: int) -> Polynomial:
    return Polynomial(dim)


def constant(dim: int, c: Scalar) -> Polynomial:
    return Polynomial(dim, {(0,) * dim: c})


def variable(dim: int, i: int) -> Polynomial:
    """The coordinate function ``x_i`` (1-based)."""
    if not 1 <= i <= dim:
        raise IndexError(f"coordinate {i} out of range 1..{dim}")
    exp = [0] * dim
    exp[i - 1] = 1
    return Polynomial(dim, {tuple(exp): 1})


def monomial(dim: int, exp: Sequence[int], c: Scalar = 1) -> Polynomial:
    return Polynomial(dim, {tuple(exp): c})


def sum_of_squares(dim: int, coords: Iterable[int]) -> Polynomial:
    """``sum x_i^2`` over the given 1-based coordinates."""
    terms = {}
    for i in coords:
        exp = [0] * dim
        exp[i - 1] = 2
        terms[tuple(exp)] = ONE
    return Polynomial(dim, terms)


def norm_sq(dim: int) -> Polynomial:
    """``|x|^2``."""
    return sum_of_squares(dim, range(1, dim + 1))


# ---------------------------------------------------------------------------
# ring operations


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


class _Layout:
    """Bit fields wide enough for the exponents of a given product."""

    __slots__ = ("shifts", "masks", "bits")

    def __init__(self, max_exps: Sequence[int]):
        shifts, masks, pos = [], [], 0
        for e in max_exps:
            width = max(1, int(e).bit_length())
            shifts.append(pos)
            masks.append((1 << width) - 1)
            pos += width
        self.shifts, self.masks, self.bits = shifts, masks, pos

    def pack(self, p: Polynomial) -> list[int]:
        exps, arr, *_ = p._packed_form()
        if self.bits <= 62:
            return (arr << np.array(self.shifts, dtype=np.int64)).sum(axis=1).tolist()
        return [sum(e << s for e, s in zip(exp, self.shifts)) for exp in exps]

    def unpack(self, keys: list[int]) -> list[tuple[int, ...]]:
        if self.bits <= 62:
            arr = np.array(keys, dtype=np.int64).reshape(-1, 1)
            fields = (arr >> np.array(self.shifts, dtype=np.int64)) & np.array(self.masks, dtype=np.int64)
            return list(map(tuple, fields.tolist()))
        return [tuple((k >> s) & m for s, m in zip(self.shifts, self.masks)) for k in keys]


_HINT_CAP = 1 << 20


def _sum_of_products(dim: int, jobs: Sequence[tuple[Polynomial, Polynomial, int]]) -> Polynomial:
    """``sum mult * p * q`` over ``(p, q, mult)`` with integer ``mult``.

    Runs on the selected accumulator and falls back to the unbounded
    pure-Python one when the compiled one cannot hold the result.
    """
    jobs = [(p, q, m) for p, q, m in jobs if p._terms and q._terms and m]
    if not jobs:
        return zero(dim)
    top = [0] * dim
    den = 1
    pairs = 0
    for p, q, _ in jobs:
        for i, (a, b) in enumerate(zip(p._packed_form()[5], q._packed_form()[5])):
            top[i] = max(top[i], a + b)
        den = math.lcm(den, p._packed_form()[4] * q._packed_form()[4])
        pairs += len(p) * len(q)
    layout = _Layout(top)
    space = 1
    for e in top:
        space *= e + 1
        if space > _HINT_CAP:
            break
    hint = min(pairs, space, _HINT_CAP)
    keys: dict[int, list[int]] = {}

    def run(acc):
        for p, q, m in jobs:
            for r in (p, q):
                if id(r) not in keys:
                    keys[id(r)] = layout.pack(r)
            _, _, ap, bp, dp, _ = p._packed_form()
            _, _, aq, bq, dq, _ = q._packed_form()
            mult = m * (den // (dp * dq))
            if p is q or p._terms is q._terms:
                acc.square(keys[id(p)], ap, bp, mult)
            elif len(p) >= len(q):
                acc.product(keys[id(p)], ap, bp, keys[id(q)], aq, bq, mult)
            else:
                acc.product(keys[id(q)], aq, bq, keys[id(p)], ap, bp, mult)
        return acc.items()

    try:
        kk, aa, bb = run(_backend.Accumulator(hint))
    except OverflowError:
        kk, aa, bb = run(_backend.FallbackAccumulator(hint))
    make = QSqrt3._make
    terms = {
        exp: make(make_fraction(a, den), make_fraction(b, den))
        for exp, a, b in zip(layout.unpack(kk), aa, bb)
    }
    if terms:
        biggest = max(max(e) for e in terms)
        if biggest > MAX_EXPONENT:
            raise DegreeOverflowError(f"product exponent {biggest} exceeds {MAX_EXPONENT}")
    return Polynomial._raw(dim, terms)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return _sum_of_products(p.dim, [(p, q, 1)])


def poly_square(p: Polynomial) -> Polynomial:
    return poly_mul(p, p)


def poly_pow(p: Polynomial, k: int) -> Polynomial:
    """``p**k`` by repeated squaring; ``p**0`` is the constant 1."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    result = constant(p.dim, 1)
    base = p
    first = True
    while k:
        if k & 1:
            result = base if first else poly_mul(result, base)
            first = False
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


# ---------------------------------------------------------------------------
# calculus


def poly_diff(p: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to ``x_i`` (1-based)."""
    if not 1 <= i <= p.dim:
        raise IndexError(f"coordinate {i} out of range 1..{p.dim}")
    j = i - 1
    out = {}
    for exp, c in p._terms.items():
        e = exp[j]
        if e:
            out[exp[:j] + (e - 1,) + exp[j + 1 :]] = c * e
    return Polynomial._raw(p.dim, out)


def gradient(p: Polynomial) -> list[Polynomial]:
    return [poly_diff(p, i) for i in range(1, p.dim + 1)]


def grad_norm_sq(p: Polynomial) -> Polynomial:
    """``sum_i (dp/dx_i)^2``, accumulated as one sum of squares."""
    return _sum_of_products(p.dim, [(g, g, 1) for g in gradient(p)])


def laplacian(p: Polynomial) -> Polynomial:
    """``sum_i d^2 p / dx_i^2``."""
    out: dict[tuple[int, ...], QSqrt3] = {}
    for exp, c in p._terms.items():
        for j, e in enumerate(exp):
            if e >= 2:
                key = exp[:j] + (e - 2,) + exp[j + 1 :]
                v = c * (e * (e - 1))
                s = out.get(key)
                out[key] = v if s is None else s + v
    return Polynomial._raw(p.dim, {e: c for e, c in out.items() if c})


def euler_operator(p: Polynomial) -> Polynomial:
    """``sum_i x_i dp/dx_i``; equals ``m*p`` for ``p`` homogeneous of degree m."""
    return Polynomial._raw(p.dim, {e: c * sum(e) for e, c in p._terms.items() if sum(e)})


def is_homogeneous(p: Polynomial):
    """Degree ``m`` if every term has total degree ``m``, :data:`ANY_DEGREE`
    for the zero polynomial, ``None`` otherwise."""
    degrees = {sum(e) for e in p._terms}
    if not degrees:
        return ANY_DEGREE
    if len(degrees) == 1:
        return degrees.pop()
    return None


def homogeneous_degree(p: Polynomial, what: str = "polynomial") -> int:
    """Like :func:`is_homogeneous` but raises for non-homogeneous or zero input."""
    m = is_homogeneous(p)
    if m is None:
        raise ValueError(f"{what} is not homogeneous")
    if m is ANY_DEGREE:
        raise ValueError(f"{what} is the zero polynomial")
    return m


# ---------------------------------------------------------------------------
# evaluation


def eval_rational(p: Polynomial, x: Sequence[Scalar]) -> QSqrt3:
    """Exact value at a point with coordinates in Q(sqrt 3)."""
    if len(x) != p.dim:
        raise DimensionError(f"point has {len(x)} coordinates, expected {p.dim}")
    xs = [QSqrt3.coerce(v) for v in x]
    powers: list[list[QSqrt3]] = [[ONE] for _ in xs]
    total = ZERO
    for exp, c in p._terms.items():
        term = c
        for j, e in enumerate(exp):
            if e:
                row = powers[j]
                while len(row) <= e:
                    row.append(row[-1] * xs[j])
                term = term * row[e]
        total = total + term
    return total


class FloatBatch:
    """Several polynomials compiled to float arrays for repeated evaluation."""

    def __init__(self, polys: Sequence[Polynomial]):
        if not polys:
            raise ValueError("empty batch")
        dim = polys[0].dim
        for q in polys:
            if q.dim != dim:
                raise DimensionError("batch mixes dimensions")
        self.dim = dim
        exps, coeffs, offsets = [], [], [0]
        for q in polys:
            for e, c in q._terms.items():
                exps.append(e)
                coeffs.append(float(c))
            offsets.append(len(exps))
        self.exps = np.array(exps, dtype=np.int32).reshape(len(exps), dim)
        self.coeffs = np.array(coeffs, dtype=np.float64)
        self.offsets = np.array(offsets, dtype=np.int64)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise DimensionError(f"point has shape {x.shape}, expected ({self.dim},)")
        if not np.all(np.isfinite(x)):
            raise ValueError("non-finite input")
        return _backend.eval_batch(self.exps, self.coeffs, self.offsets, x)


def eval_float(p: Polynomial, x: Sequence[float]) -> float:
    """Double-precision value; sqrt(3) enters as its nearest double."""
    if p._float is None:
        p._float = FloatBatch([p])
    return float(p._float(x)[0])
