"""Floating-point checks of level-set geometry on the unit sphere.

Level sets ``{F = t} cap S^(n-1)`` are sampled by damped Newton steps along
the spherical gradient.  Principal curvatures come from the shape operator

    S = -P (Hess F - <x, grad F> I) P / |grad_S f|

restricted to the tangent space of the level set (``P`` projects onto the
orthogonal complement of ``x`` and the unit normal).  First and second
derivatives are exact polynomials from :mod:`isoparam.polyring`, compiled
once to float arrays; no finite differences are involved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .polyring import FloatBatch, Polynomial, gradient, homogeneous_degree, poly_diff

log = logging.getLogger(__name__)

NEWTON_TOL = 1e-10
MAX_NEWTON_ITER = 100
SINGULAR_GRAD = 1e-8
CLUSTER_REL_TOL = 1e-6


class ConvergenceError(RuntimeError):
    """Not enough level-set samples within the attempt budget."""


class CensusError(RuntimeError):
    """Curvature clusters are degenerate or disagree between samples."""


@dataclass(frozen=True)
class LevelSample:
    x: np.ndarray
    t: float
    residual: float


class NumericPoly:
    """Float evaluators for ``F``, its gradient and its Hessian."""

    def __init__(self, f: Polynomial):
        self.poly = f
        self.n = f.dim
        self.degree = homogeneous_degree(f, "F")
        grads = gradient(f)
        self._first = FloatBatch([f] + grads)
        self._grads = grads
        self._hess = None

    def value_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        out = self._first(x)
        return float(out[0]), out[1:]

    def hessian(self, x: np.ndarray) -> np.ndarray:
        n = self.n
        if self._hess is None:
            second = [poly_diff(self._grads[i], j + 1) for i in range(n) for j in range(i, n)]
            self._hess = FloatBatch(second)
        flat = self._hess(x)
        h = np.empty((n, n))
        iu = np.triu_indices(n)
        h[iu] = flat
        h.T[iu] = flat
        return h


@lru_cache(maxsize=32)
def numeric(f: Polynomial) -> NumericPoly:
    return NumericPoly(f)


def _newton_project(num: NumericPoly, x: np.ndarray, t: float, tol: float) -> tuple[np.ndarray, float] | None:
    val, grad = num.value_grad(x)
    res = val - t
    for _ in range(MAX_NEWTON_ITER):
        if abs(res) <= 1e-3 * tol:
            break
        g = grad - (x @ grad) * x
        gg = g @ g
        if gg < SINGULAR_GRAD**2:
            return None
        step = -res * g / gg
        alpha = 1.0
        for _ in range(30):
            cand = x + alpha * step
            cand /= np.linalg.norm(cand)
            cval, cgrad = num.value_grad(cand)
            if abs(cval - t) < abs(res):
                break
            alpha *= 0.5
        else:
            break
        x, val, grad, res = cand, cval, cgrad, cval - t
    if abs(res) > tol:
        return None
    return x, abs(res)


def sample_level_set(
    f: Polynomial,
    t: float,
    count: int,
    seed: int,
    tol: float = NEWTON_TOL,
    max_attempts: int | None = None,
) -> list[LevelSample]:
    """``count`` seeded points of ``{F = t}`` on the unit sphere.

    Starts are drawn from a Gaussian and normalized; a start whose Newton
    iteration does not reach ``tol`` is discarded, never repaired.
    """
    if not -1.0 < t < 1.0:
        raise ValueError(f"level must lie in (-1, 1), got {t}")
    if count < 1:
        raise ValueError("count must be positive")
    num = numeric(f)
    rng = np.random.default_rng(seed)
    budget = max_attempts if max_attempts is not None else 20 * count + 20
    samples: list[LevelSample] = []
    for _ in range(budget):
        x0 = rng.standard_normal(num.n)
        x0 /= np.linalg.norm(x0)
        hit = _newton_project(num, x0, t, tol)
        if hit is None:
            continue
        x, res = hit
        samples.append(LevelSample(x, t, res))
        if len(samples) == count:
            return samples
    raise ConvergenceError(f"only {len(samples)} of {count} samples converged on level {t}")


def sample_sphere(f: Polynomial, count: int, seed: int) -> list[LevelSample]:
    """Uniform random unit vectors, each tagged with its own level ``F(x)``."""
    num = numeric(f)
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = rng.standard_normal(num.n)
        x /= np.linalg.norm(x)
        out.append(LevelSample(x, num.value_grad(x)[0], 0.0))
    return out


def transnormal_check(f: Polynomial, samples: list[LevelSample]) -> float:
    """``max | |grad F|^2 - <x, grad F>^2 - m^2 (1 - F^2) |`` over the samples."""
    num = numeric(f)
    m = num.degree
    worst = 0.0
    for s in samples:
        val, grad = num.value_grad(s.x)
        dx = grad @ grad - (s.x @ grad) ** 2 - m * m * (1.0 - val * val)
        worst = max(worst, abs(dx))
    return worst


def principal_curvatures(f: Polynomial, sample: LevelSample) -> np.ndarray:
    """Sorted principal curvatures of the level hypersurface at ``sample.x``."""
    num = numeric(f)
    x = np.asarray(sample.x, dtype=np.float64)
    _, grad = num.value_grad(x)
    radial = x @ grad
    g = grad - radial * x
    gnorm = np.linalg.norm(g)
    if gnorm < SINGULAR_GRAD:
        raise ValueError("spherical gradient vanishes: singular point of the level set")
    xi = g / gnorm
    q, _ = np.linalg.qr(np.column_stack([x, xi]), mode="complete")
    basis = q[:, 2:]
    hess = num.hessian(x) - radial * np.eye(num.n)
    shape = -(basis.T @ hess @ basis) / gnorm
    return np.linalg.eigvalsh((shape + shape.T) / 2)


def cluster_values(values, rel_tol: float = CLUSTER_REL_TOL) -> tuple[list[tuple[float, int]], float, float]:
    """Single-linkage clusters of sorted values.

    Returns ``(clusters, tolerance_used, max_spread)``.  Neighbouring
    clusters closer than ten times the tolerance are a :class:`CensusError`.
    """
    vals = np.sort(np.asarray(values, dtype=np.float64))
    tol = rel_tol * max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    groups: list[list[float]] = []
    for v in vals:
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    for a, b in zip(groups, groups[1:]):
        if b[0] - a[-1] <= 10 * tol:
            raise CensusError(f"clusters at {a[-1]:.6g} and {b[0]:.6g} are not separated")
    spread = max((g[-1] - g[0] for g in groups), default=0.0)
    return [(float(np.mean(g)), len(g)) for g in groups], tol, spread


@dataclass(frozen=True)
class CurvatureCensus:
    distinct_count: int
    clusters: list[tuple[float, int]]
    tolerance_used: float
    level: float
    sample_count: int
    max_spread: float = 0.0
    max_cross_sample: float = 0.0
    per_sample: list = field(default_factory=list, repr=False, compare=False)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.clusters]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "samples": self.sample_count,
            "distinct_count": self.distinct_count,
            "clusters": [{"curvature": v, "multiplicity": m} for v, m in self.clusters],
            "tolerance_used": self.tolerance_used,
            "max_in_cluster_spread": self.max_spread,
            "max_cross_sample_deviation": self.max_cross_sample,
        }


def curvature_census(
    f: Polynomial,
    t: float,
    count: int,
    seed: int,
    rel_tol: float = CLUSTER_REL_TOL,
    report=None,
) -> CurvatureCensus:
    """Principal-curvature clusters agreed on by ``count`` samples of one level.

    With a :class:`~isoparam.verify.VerificationReport` marked CM, also
    requires ``deg F`` clusters whose multiplicities are ``m_plus`` or
    ``m_minus``.
    """
    samples = sample_level_set(f, t, count, seed)
    per_sample = [cluster_values(principal_curvatures(f, s), rel_tol) for s in samples]
    shape = [m for _, m in per_sample[0][0]]
    centers = np.array([[v for v, _ in per_sample[0][0]]])
    for clusters, _, _ in per_sample[1:]:
        if [m for _, m in clusters] != shape:
            raise CensusError(f"cluster structure differs between samples: {shape} vs {[m for _, m in clusters]}")
        centers = np.vstack([centers, [v for v, _ in clusters]])
    tol = max(p[1] for p in per_sample)
    mean = centers.mean(axis=0)
    cross = float(np.max(centers.max(axis=0) - centers.min(axis=0)))
    if cross > tol:
        raise CensusError(f"curvatures vary across samples by {cross:.3g} > {tol:.3g}")
    census = CurvatureCensus(
        distinct_count=len(shape),
        clusters=[(float(v), m) for v, m in zip(mean, shape)],
        tolerance_used=tol,
        level=t,
        sample_count=len(samples),
        max_spread=max(p[2] for p in per_sample),
        max_cross_sample=cross,
        per_sample=[[v for v, _ in p[0]] for p in per_sample],
    )
    if report is not None and report.is_cm:
        allowed = {int(report.m_plus), int(report.m_minus)}
        if census.distinct_count != report.degree_m or not set(shape) <= allowed:
            raise CensusError(
                f"CM polynomial of degree {report.degree_m} with m+- {sorted(allowed)} "
                f"gave clusters {shape}"
            )
    log.debug("census level=%s clusters=%s", t, census.clusters)
    return census
