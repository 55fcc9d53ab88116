"""Exact GL(3) Hecke coefficient calculus built from local Satake data.

Local data at a prime is a triple of complex numbers with product one.  The
coefficient A(p^b1, p^b2) is the Schur polynomial of the partition
(b1+b2, b2, 0) evaluated at the triple; global coefficients A(m, n) follow by
multiplicativity across coprime prime powers.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

from .arith import divisors, factorize, is_prime, mobius, primes_upto, spf_sieve

PRODUCT_TOL = 1e-12
UNIT_TOL = 1e-12


class MissingPrimeError(KeyError):
    """Local data for a required prime is absent."""


class IndexBoundsError(IndexError):
    """A requested coefficient index lies outside the table bounds."""


class NonTemperedError(ValueError):
    """Input data violates the |lambda| <= 2 temperedness requirement."""


@dataclass(frozen=True)
class SatakeTriple:
    """Local parameters (alpha1, alpha2, alpha3) with alpha1*alpha2*alpha3 = 1."""

    alpha1: complex
    alpha2: complex
    alpha3: complex
    tempered: bool = True

    def __post_init__(self):
        prod = self.alpha1 * self.alpha2 * self.alpha3
        if abs(prod - 1.0) > PRODUCT_TOL:
            raise ValueError(f"Satake product {prod} is not 1 within {PRODUCT_TOL}")
        if self.tempered:
            for a in (self.alpha1, self.alpha2, self.alpha3):
                if abs(abs(a) - 1.0) > UNIT_TOL:
                    raise ValueError(f"tempered triple has |{a}| != 1")

    @classmethod
    def from_angles(cls, theta1: float, theta2: float) -> "SatakeTriple":
        """Tempered triple (e^{i t1}, e^{i t2}, e^{-i(t1+t2)})."""
        return cls(
            cmath.exp(1j * theta1),
            cmath.exp(1j * theta2),
            cmath.exp(-1j * (theta1 + theta2)),
            tempered=True,
        )

    @property
    def e1(self) -> complex:
        return self.alpha1 + self.alpha2 + self.alpha3

    @property
    def e2(self) -> complex:
        return (
            self.alpha1 * self.alpha2
            + self.alpha1 * self.alpha3
            + self.alpha2 * self.alpha3
        )


@dataclass(frozen=True)
class ExponentPair:
    """Exponents (beta1, beta2) of a local index pair (p^beta1, p^beta2)."""

    beta1: int
    beta2: int

    def __post_init__(self):
        if self.beta1 < 0 or self.beta2 < 0:
            raise ValueError(f"exponents must be non-negative, got {self}")

    @property
    def partition(self) -> tuple[int, int, int]:
        return (self.beta1 + self.beta2, self.beta2, 0)


@dataclass(frozen=True)
class PrimeLocalData:
    p: int
    satake: SatakeTriple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


@dataclass
class GL2FormData:
    """Real Hecke eigenvalues lambda(p) of a degree-two form, per prime."""

    pairs: list[tuple[int, float]]
    ramanujan: bool = True

    def __post_init__(self):
        if self.ramanujan:
            bad = [p for p, lam in self.pairs if abs(lam) > 2.0 + UNIT_TOL]
            if bad:
                raise NonTemperedError(
                    f"|lambda(p)| > 2 at primes {bad} contradicts ramanujan=True"
                )


def schur_from_elementary(l1: int, l2: int, e1, e2):
    """Evaluate the (l1, l2) Schur basis element from e1, e2 (with e3 = 1).

    Uses the two-row Jacobi-Trudi determinant h_a h_b - h_{a+1} h_{b-1} for the
    partition (l1+l2, l2, 0), with the complete homogeneous polynomials built
    by the recurrence h_k = e1 h_{k-1} - e2 h_{k-2} + h_{k-3}.  Stable at
    coincident coordinates and works elementwise on numpy arrays.
    """
    a, b = l1 + l2, l2
    one = e1 * 0 + 1.0  # matches scalar or array shape
    h = [one]
    for _ in range(a + 1):
        k = len(h)
        h_k = e1 * h[k - 1]
        if k >= 2:
            h_k = h_k - e2 * h[k - 2]
        if k >= 3:
            h_k = h_k + h[k - 3]
        h.append(h_k)
    second = h[a + 1] * h[b - 1] if b >= 1 else 0.0
    return h[a] * h[b] - second


def schur_eval(pair: ExponentPair, x: SatakeTriple) -> complex:
    """Schur polynomial of the partition (beta1+beta2, beta2, 0) at x.

    Equals the local coefficient A(p^beta1, p^beta2) when x is the Satake
    triple at p.
    """
    return complex(schur_from_elementary(pair.beta1, pair.beta2, x.e1, x.e2))


def coeff_from_satake(local: PrimeLocalData, max_exp: int) -> dict[tuple[int, int], complex]:
    """Table of local coefficients A(p^a, p^b) for 0 <= a, b <= max_exp."""
    if max_exp < 0:
        raise ValueError("max_exp must be >= 0")
    out: dict[tuple[int, int], complex] = {}
    for a in range(max_exp + 1):
        for b in range(max_exp + 1):
            out[(a, b)] = schur_eval(ExponentPair(a, b), local.satake)
    return out


class CoefficientTable:
    """Coefficients A(m, n) for 1 <= m <= bound_m, 1 <= n <= bound_n.

    Entries are generated from the local data by multiplicativity and cached
    on access; the declared bounds are a hard contract and requests outside
    them raise IndexBoundsError.  The table is logically immutable: reads
    only fill the internal memo (atomic dict updates), so concurrent readers
    are safe.
    """

    def __init__(self, locals_: list[PrimeLocalData], bound_m: int, bound_n: int):
        if bound_m < 1 or bound_n < 1:
            raise ValueError("bounds must be positive")
        self.bound_m = bound_m
        self.bound_n = bound_n
        self.locals = list(locals_)
        self._by_prime = {loc.p: loc for loc in self.locals}
        top = max(bound_m, bound_n)
        missing = [p for p in primes_upto(top) if p not in self._by_prime]
        if missing:
            raise MissingPrimeError(f"no local data for prime {missing[0]}")
        self._spf = spf_sieve(top)
        self.entries: dict[tuple[int, int], complex] = {(1, 1): 1.0 + 0.0j}
        self._local_powers: dict[tuple[int, int, int], complex] = {}

    def _local_value(self, p: int, a: int, b: int) -> complex:
        key = (p, a, b)
        val = self._local_powers.get(key)
        if val is None:
            loc = self._by_prime.get(p)
            if loc is None:
                raise MissingPrimeError(f"no local data for prime {p}")
            val = schur_eval(ExponentPair(a, b), loc.satake)
            self._local_powers[key] = val
        return val

    def value(self, m: int, n: int) -> complex:
        if not (1 <= m <= self.bound_m and 1 <= n <= self.bound_n):
            raise IndexBoundsError(f"index ({m}, {n}) outside bounds "
                                   f"({self.bound_m}, {self.bound_n})")
        got = self.entries.get((m, n))
        if got is not None:
            return got
        exps: dict[int, list[int]] = {}
        for p, e in factorize(m, self._spf):
            exps[p] = [e, 0]
        for p, e in factorize(n, self._spf):
            exps.setdefault(p, [0, 0])[1] = e
        val = 1.0 + 0.0j
        for p, (a, b) in exps.items():
            val *= self._local_value(p, a, b)
        self.entries[(m, n)] = val
        return val

    def materialize(self):
        for m in range(1, self.bound_m + 1):
            for n in range(1, self.bound_n + 1):
                self.value(m, n)

    def export_csv(self, path: str):
        """Write the full rectangle as rows m,n,re,im."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["m", "n", "re", "im"])
            for m in range(1, self.bound_m + 1):
                for n in range(1, self.bound_n + 1):
                    v = self.value(m, n)
                    writer.writerow([m, n, repr(v.real), repr(v.imag)])


def extend_multiplicative(
    locals_: list[PrimeLocalData], bound_m: int, bound_n: int
) -> CoefficientTable:
    """Build the coefficient table generated multiplicatively by the locals."""
    return CoefficientTable(locals_, bound_m, bound_n)


def hecke_residual(table: CoefficientTable, m: int, m1: int, m2: int) -> float:
    """Residual of the Hecke multiplication identity at (m; m1, m2).

    Returns |A(m,1) A(m1,m2) - sum over c1*c2*c3 = m, c1|m1, c2|m2 of
    A(m1*c3/c1, m2*c1/c2)|.  A correctly generated table stays below 1e-8.
    """
    lhs = table.value(m, 1) * table.value(m1, m2)
    acc = 0.0 + 0.0j
    for c1 in divisors(math.gcd(m, m1)):
        rest = m // c1
        for c2 in divisors(math.gcd(rest, m2)):
            c3 = rest // c2
            acc += table.value(m1 * c3 // c1, m2 * c1 // c2)
    return abs(lhs - acc)


def mobius_expand(table: CoefficientTable, m1: int, m2: int) -> complex:
    """Mobius expansion sum_{d | (m1, m2)} mu(d) A(m1/d, 1) A(1, m2/d).

    Must reproduce the table entry A(m1, m2).
    """
    acc = 0.0 + 0.0j
    for d in divisors(math.gcd(m1, m2)):
        mu = mobius(d)
        if mu:
            acc += mu * table.value(m1 // d, 1) * table.value(1, m2 // d)
    return acc


def sym2_lift(g: GL2FormData) -> list[PrimeLocalData]:
    """Symmetric-square local data: lambda(p) = beta + 1/beta on the unit
    circle lifts to the Satake triple (beta^2, 1, beta^-2), so that
    A(p, 1) = lambda(p)^2 - 1 is real.

    Branch at |lambda| = 2: beta = 1 for lambda = 2 and beta = -1 for
    lambda = -2 (the lifted triple is (1, 1, 1) either way).
    """
    bad = [p for p, lam in g.pairs if abs(lam) > 2.0 + UNIT_TOL]
    if bad:
        raise NonTemperedError(f"|lambda(p)| > 2 at primes {bad}; lift needs tempered input")
    out = []
    for p, lam in g.pairs:
        half = min(1.0, max(-1.0, lam / 2.0))
        beta = cmath.exp(1j * math.acos(half))
        b2 = beta * beta
        out.append(PrimeLocalData(p, SatakeTriple(b2, 1.0 + 0.0j, 1.0 / b2)))
    return out
