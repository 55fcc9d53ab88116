"""Sato-Tate and p-adic Plancherel measures on the SL(3) torus quotient:
exact densities, spectrally accurate quadrature, seeded rejection sampling,
and the spectral-side weight and density evaluators.

Angular coordinates are (theta1, theta2) in [0, 2pi) with theta3 implied as
-(theta1 + theta2).  Densities are reported against plain d(theta1) d(theta2),
so every measure here integrates to one over [0, 2pi)^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import is_prime
from .hecke import schur_from_elementary
from .klpoly import WEYL as _PERMS
from .klpoly import QPolynomial, weyl_lengths

TWO_PI = 2.0 * math.pi

SATO_TATE = "sato-tate"
PLANCHEREL = "plancherel"


class EnvelopeError(RuntimeError):
    """A computed density exceeded the rejection envelope (implementation bug)."""


class QuadratureError(RuntimeError):
    """Grid doubling failed to stabilize within the resolution cap."""


class PoleError(ValueError):
    """Spectral density evaluated at a tangent pole."""


@dataclass(frozen=True)
class TorusPoint:
    """Point of the torus; holds scalars or equally-shaped numpy arrays."""

    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "theta1", self.theta1 % TWO_PI)
        object.__setattr__(self, "theta2", self.theta2 % TWO_PI)

    @property
    def theta3(self):
        return (-(self.theta1 + self.theta2)) % TWO_PI


@dataclass(frozen=True)
class MeasureSpec:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (SATO_TATE, PLANCHEREL):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == PLANCHEREL:
            if self.p is None or self.p < 2 or not is_prime(self.p):
                raise ValueError(f"plancherel measure needs a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError("sato-tate takes no prime")

    @classmethod
    def sato_tate(cls) -> "MeasureSpec":
        return cls(SATO_TATE)

    @classmethod
    def plancherel(cls, p: int) -> "MeasureSpec":
        return cls(PLANCHEREL, p)


@dataclass(frozen=True)
class QuadratureGrid:
    """Periodic trapezoid rule on [0, 2pi)^2 with K nodes per axis."""

    resolution: int

    def __post_init__(self):
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.resolution) / self.resolution

    @property
    def cell_weight(self) -> float:
        return (TWO_PI / self.resolution) ** 2

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.nodes, self.nodes, indexing="ij")


def plancherel_constant(p: int) -> float:
    """(1 - p^-2)(1 - p^-3) / (6 (1 - p^-1)^2); equals W(1/p) / |W|."""
    return (1.0 - p ** -2) * (1.0 - p ** -3) / (6.0 * (1.0 - 1.0 / p) ** 2)


def density(spec: MeasureSpec, pt: TorusPoint):
    """Measure density at pt relative to d(theta1) d(theta2).

    Sato-Tate: prod_{l<j} |e^{i t_l} - e^{i t_j}|^2 / (24 pi^2).  Plancherel:
    the constant (1-p^-2)(1-p^-3)/(6(1-p^-1)^2) times prod |(e^{i t_l} -
    p^-1 e^{i t_j})/(e^{i t_l} - e^{i t_j})|^-2, divided by (2 pi)^2 so the
    total mass is one.  Elementwise on arrays.
    """
    z = (np.exp(1j * pt.theta1), np.exp(1j * pt.theta2), np.exp(1j * pt.theta3))
    vandermonde = 1.0
    for i in range(3):
        for j in range(i + 1, 3):
            vandermonde = vandermonde * np.abs(z[i] - z[j]) ** 2
    if spec.kind == SATO_TATE:
        return vandermonde / (24.0 * math.pi ** 2)
    p = spec.p
    denom = 1.0
    for i in range(3):
        for j in range(i + 1, 3):
            denom = denom * np.abs(z[i] - z[j] / p) ** 2
    return plancherel_constant(p) * vandermonde / denom / TWO_PI ** 2


def _evaluate_on_grid(f, grid: QuadratureGrid) -> np.ndarray:
    t1, t2 = grid.mesh()
    pt = TorusPoint(t1, t2)
    try:
        vals = np.asarray(f(pt))
        if vals.shape in ((), t1.shape):
            return np.broadcast_to(vals, t1.shape)
    except (TypeError, ValueError, AttributeError):
        pass
    # scalar-only integrand: evaluate node by node
    out = np.empty(t1.shape, dtype=complex)
    for i in range(t1.shape[0]):
        for j in range(t1.shape[1]):
            out[i, j] = f(TorusPoint(float(t1[i, j]), float(t2[i, j])))
    return out


def integrate(spec: MeasureSpec, f, grid: QuadratureGrid) -> complex:
    """Integral of f against the measure by the periodic trapezoid rule;
    spectrally accurate for smooth integrands."""
    vals = _evaluate_on_grid(f, grid)
    t1, t2 = grid.mesh()
    dens = density(spec, TorusPoint(t1, t2))
    return complex(np.sum(vals * dens) * grid.cell_weight)


def integrate_adaptive(
    spec: MeasureSpec,
    f,
    tol: float = 1e-8,
    start_resolution: int = 64,
    max_resolution: int = 1024,
) -> tuple[complex, int]:
    """Double the grid until two successive values agree within tol.

    Returns (value, resolution); raises QuadratureError past max_resolution.
    """
    k = max(8, start_resolution)
    prev = integrate(spec, f, QuadratureGrid(k))
    while k < max_resolution:
        k *= 2
        cur = integrate(spec, f, QuadratureGrid(k))
        if abs(cur - prev) <= tol:
            return cur, k
        prev = cur
    raise QuadratureError(
        f"quadrature did not stabilize within tol={tol} by resolution {max_resolution}"
    )


def envelope_ratio(spec: MeasureSpec) -> float:
    """Upper bound for density / uniform-density used by rejection sampling.

    Sato-Tate: the sharp value 27/6.  Plancherel: the per-pair bound
    |e^{i a} - e^{i b}|^2 / |e^{i a} - p^-1 e^{i b}|^2 <= 4 / (1 + 1/p)^2
    cubed, times the normalizing constant.
    """
    if spec.kind == SATO_TATE:
        return 27.0 / 6.0
    return plancherel_constant(spec.p) * 64.0 / (1.0 + 1.0 / spec.p) ** 6


def sample_angles(spec: MeasureSpec, count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Rejection-sample `count` points; returns (theta1, theta2) arrays.

    Deterministic for a fixed seed: proposals are drawn in fixed-size batches
    from a PCG64 stream and accepted in order.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    cap = envelope_ratio(spec) / TWO_PI ** 2
    got1: list[np.ndarray] = []
    got2: list[np.ndarray] = []
    total = 0
    batch = 8192
    while total < count:
        t1 = rng.uniform(0.0, TWO_PI, batch)
        t2 = rng.uniform(0.0, TWO_PI, batch)
        u = rng.uniform(0.0, 1.0, batch)
        d = density(spec, TorusPoint(t1, t2))
        worst = float(np.max(d))
        if worst > cap * (1.0 + 1e-9):
            raise EnvelopeError(
                f"density {worst} exceeds envelope bound {cap} for {spec}"
            )
        keep = u * cap <= d
        got1.append(t1[keep])
        got2.append(t2[keep])
        total += int(np.count_nonzero(keep))
    out1 = np.concatenate(got1)[:count]
    out2 = np.concatenate(got2)[:count]
    return out1, out2


def sample(spec: MeasureSpec, count: int, seed: int) -> list[TorusPoint]:
    """I.i.d. draws from the measure; deterministic given seed."""
    t1, t2 = sample_angles(spec, count, seed)
    return [TorusPoint(float(a), float(b)) for a, b in zip(t1, t2)]


def child_seed(seed: int, index: int) -> int:
    """Fixed splitting rule for per-worker seeds: entropy is the pair
    (seed, index), so child streams are reproducible and independent."""
    ss = np.random.SeedSequence((seed, index))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_chunked(
    spec: MeasureSpec, count: int, seed: int, chunks: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw `count` points split across `chunks` child-seeded streams and
    concatenated in chunk order; chunk i may run on worker i, and the result
    is identical to a serial run."""
    if chunks < 1:
        raise ValueError("chunks must be >= 1")
    per = [count // chunks + (1 if i < count % chunks else 0) for i in range(chunks)]
    parts = [
        sample_angles(spec, n, child_seed(seed, i))
        for i, n in enumerate(per)
        if n > 0
    ]
    return (
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
    )


def schur_on_torus(l1: int, l2: int, theta1, theta2):
    """The (l1, l2) Schur basis element at the tempered point with the given
    angles; elementwise on arrays.  e2 = conj(e1) on the unit torus."""
    e1 = (
        np.exp(1j * np.asarray(theta1))
        + np.exp(1j * np.asarray(theta2))
        + np.exp(-1j * (np.asarray(theta1) + np.asarray(theta2)))
    )
    return schur_from_elementary(l1, l2, e1, np.conj(e1))


def weyl_poincare(q=None):
    """Length generating polynomial W(q) of the order-six Weyl group,
    1 + 2q + 2q^2 + q^3, formal (q=None) or evaluated at q."""
    lengths = weyl_lengths()
    coeffs = [0] * (max(lengths) + 1)
    for ell in lengths:
        coeffs[ell] += 1
    poly = QPolynomial(coeffs)
    return poly if q is None else poly(q)


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral parameters (nu1, nu2); nu3 = -nu1 - nu2 is implied."""

    nu1: complex
    nu2: complex

    @property
    def nu3(self) -> complex:
        return -self.nu1 - self.nu2

    def triple(self) -> tuple[complex, complex, complex]:
        return (self.nu1, self.nu2, self.nu3)

    def langlands(self) -> tuple[complex, complex, complex]:
        """(2 nu1 + nu2, nu2 - nu1, -nu1 - 2 nu2); coordinates sum to zero."""
        return (
            2 * self.nu1 + self.nu2,
            self.nu2 - self.nu1,
            -self.nu1 - 2 * self.nu2,
        )


def spectral_norm(nu: SpectralPoint) -> float:
    """Euclidean norm of the Langlands triple."""
    return math.sqrt(sum(abs(a) ** 2 for a in nu.langlands()))


@dataclass(frozen=True)
class WeightParams:
    """Parameters of the spectral localizing weight: window center T*nu0,
    window width T^(1-eta), and pole-clearing degree A."""

    T: float
    nu0: SpectralPoint
    eta: float = 0.05
    A: int = 4

    def __post_init__(self):
        if not self.T > 1:
            raise ValueError("T must exceed 1")
        if not 0 < self.eta < 0.1:
            raise ValueError("eta must lie in (0, 1/10)")
        if self.A < 1:
            raise ValueError("A must be a positive integer")
        for a in (self.nu0.nu1, self.nu0.nu2):
            if abs(a.real) > 1e-12:
                raise ValueError("nu0 must be purely imaginary")


def _psi(x: tuple[complex, complex, complex]) -> complex:
    return cmath.exp(3.0 * (x[0] ** 2 + x[1] ** 2 + x[2] ** 2))


def h_T_eval(nu: SpectralPoint, params: WeightParams):
    """Localizing weight P(nu)^2 (sum_w psi((w.nu - T nu0) / T^(1-eta)))^2.

    The Weyl group permutes the Langlands triple; psi(x) = exp(3 sum x_j^2)
    decays as a Gaussian on the tempered (purely imaginary) locus.  Real and
    non-negative there; returned as float when the imaginary part vanishes.
    """
    poly = 1.0 + 0.0j
    for n in range(params.A + 1):
        pole = (1.0 + 2.0 * n) ** 2 / 9.0
        for v in nu.triple():
            poly *= (v * v - pole) / params.T ** 2
    scale = params.T ** (1.0 - params.eta)
    center = tuple(params.T * a for a in params.nu0.langlands())
    alpha = nu.langlands()
    total = 0.0 + 0.0j
    for sigma, _sign in _PERMS:
        x = tuple((alpha[i] - center[k]) / scale for k, i in enumerate(sigma))
        total += _psi(x)
    val = poly ** 2 * total ** 2
    if abs(val.imag) <= 1e-12 * (1.0 + abs(val.real)):
        return float(val.real)
    return val


def spec_density(nu: SpectralPoint) -> complex:
    """Spectral (Weyl-law) density 3/(256 pi^5) * prod_j (-3 nu_j tan(3 pi
    nu_j / 2)), orientation fixed so the tempered locus (purely imaginary
    nu_j, where tan turns into tanh) gets non-negative values.

    Raises PoleError when some nu_j sits at a tangent pole, i.e. at a real
    odd multiple of 1/3.
    """
    prod = 1.0 + 0.0j
    for v in nu.triple():
        v = complex(v)
        if abs(v.imag) < 1e-12:
            nearest = round(v.real * 3.0 / 2.0 - 0.5)
            if abs(v.real * 3.0 / 2.0 - 0.5 - nearest) < 1e-9:
                raise PoleError(f"nu_j = {v} is a pole of tan(3 pi nu_j / 2)")
        prod *= -3.0 * v * cmath.tan(1.5 * math.pi * v)
    return prod * 3.0 / (256.0 * math.pi ** 5)
