"""Named verification suites: each returns a list of Check records that the
CLI serializes and the acceptance tests assert on.

Every random quantity is derived from the one incoming seed, so repeated runs
produce identical reports.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import dirichlet as dmod
from . import hecke, klpoly, measures, schuralg, signstats, tau


@dataclass
class Check:
    name: str
    status: str
    value: float
    bound: float

    @classmethod
    def le(cls, name: str, value: float, bound: float) -> "Check":
        return cls(name, "pass" if value <= bound else "fail", float(value), float(bound))

    @classmethod
    def ge(cls, name: str, value: float, bound: float) -> "Check":
        return cls(name, "pass" if value >= bound else "fail", float(value), float(bound))


def all_passed(checks: list[Check]) -> bool:
    return all(c.status == "pass" for c in checks)


def checks_to_json(checks: list[Check]) -> list[dict]:
    return [asdict(c) for c in checks]


def random_tempered_locals(primes: list[int], rng: random.Random) -> list[hecke.PrimeLocalData]:
    out = []
    for p in primes:
        t1 = rng.uniform(0.0, 2.0 * math.pi)
        t2 = rng.uniform(0.0, 2.0 * math.pi)
        out.append(hecke.PrimeLocalData(p, hecke.SatakeTriple.from_angles(t1, t2)))
    return out


def random_selfdual_locals(primes: list[int], rng: random.Random) -> list[hecke.PrimeLocalData]:
    pairs = [(p, rng.uniform(-2.0, 2.0)) for p in primes]
    return hecke.sym2_lift(hecke.GL2FormData(pairs))


def suite_hecke(seed: int = 0, tol: float = 1e-8) -> list[Check]:
    """Hecke relation residuals, Mobius expansion, Hermitian symmetry, and the
    Ramanujan bound on random tempered data."""
    rng = random.Random(seed)
    from .arith import primes_upto

    bound = 2500  # indices m1*c3/c1 reach 50 * 50
    table = hecke.extend_multiplicative(
        random_tempered_locals(primes_upto(bound), rng), bound, bound
    )
    worst = 0.0
    for _ in range(200):
        m = rng.randint(1, 50)
        m1 = rng.randint(1, 50)
        m2 = rng.randint(1, 50)
        worst = max(worst, hecke.hecke_residual(table, m, m1, m2))
    checks = [Check.le("hecke_residual_max_200_triples", worst, tol)]

    worst = 0.0
    for m1 in range(1, 51):
        for m2 in range(1, 51):
            worst = max(worst, abs(hecke.mobius_expand(table, m1, m2) - table.value(m1, m2)))
    checks.append(Check.le("mobius_expand_max_error", worst, tol))

    worst = 0.0
    for m in range(1, 31):
        for n in range(1, 31):
            worst = max(worst, abs(table.value(m, n) - table.value(n, m).conjugate()))
    checks.append(Check.le("hermitian_symmetry_max", worst, 1e-9))

    worst = 0.0
    for loc in table.locals[:100]:
        worst = max(worst, abs(table.value(loc.p, 1)) - 3.0)
    checks.append(Check.le("ramanujan_bound_excess", worst, 1e-10))
    return checks


def suite_schur(seed: int = 0, tol: float = 0.0) -> list[Check]:
    """The square of S_{1,1} in the Schur basis, exactly, plus the degenerate
    dimension identity 64 = 1 + 16 + 27 + 10 + 10."""
    square = (schuralg.E1 * schuralg.E2 - schuralg.E_ONE).pow(2)
    got = schuralg.expand_in_schur(square).as_dict()
    expected = {
        (0, 0): Fraction(1),
        (1, 1): Fraction(2),
        (2, 2): Fraction(1),
        (3, 0): Fraction(1),
        (0, 3): Fraction(1),
    }
    mism = sum(1 for k in set(got) | set(expected) if got.get(k) != expected.get(k))
    checks = [Check.le("s11_square_expansion_mismatches", mism, 0.0)]

    x = hecke.SatakeTriple(1.0 + 0j, 1.0 + 0j, 1.0 + 0j)
    dims = sum(
        float(c) * hecke.schur_eval(hecke.ExponentPair(l1, l2), x).real
        for (l1, l2), c in got.items()
    )
    checks.append(Check.le("degenerate_point_sum_vs_64", abs(dims - 64.0), 1e-9))
    return checks


def suite_kato(seed: int = 0, tol: float = 1e-6) -> list[Check]:
    """Combinatorial moment versus Plancherel quadrature for all l1+l2 <= 5
    and p in {2, 3, 5, 7}, plus the 0.75 anchor at (1, 1, p=2)."""
    worst = 0.0
    for p in (2, 3, 5, 7):
        for l1 in range(6):
            for l2 in range(6 - l1):
                worst = max(worst, klpoly.kato_check(l1, l2, p, tol=tol / 10)["diff"])
    anchor = klpoly.kato_check(1, 1, 2)
    return [
        Check.le("kato_identity_max_diff", worst, tol),
        Check.le("kato_anchor_112_vs_0.75", abs(anchor["lhs"] - 0.75), tol),
    ]


def suite_measures(seed: int = 0, tol: float = 1e-8) -> list[Check]:
    """Total masses, Schur orthonormality, Weyl invariance of the densities,
    and weak convergence of the Plancherel family to Sato-Tate."""
    checks = []
    grid = measures.QuadratureGrid(64)
    one = lambda pt: 1.0
    st = measures.MeasureSpec.sato_tate()
    worst = abs(measures.integrate(st, one, grid) - 1.0)
    for p in (2, 3, 5, 7, 101):
        spec = measures.MeasureSpec.plancherel(p)
        worst = max(worst, abs(measures.integrate(spec, one, grid) - 1.0))
    checks.append(Check.le("measure_mass_max_deviation", worst, tol))

    worst = 0.0
    pairs = [(a, b) for a in range(3) for b in range(3)]
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i:]:
            f = lambda pt, ab=(a, b), cd=(c, d): (
                measures.schur_on_torus(*ab, pt.theta1, pt.theta2)
                * np.conj(measures.schur_on_torus(*cd, pt.theta1, pt.theta2))
            )
            val = measures.integrate(st, f, grid)
            target = 1.0 if (a, b) == (c, d) else 0.0
            worst = max(worst, abs(val - target))
    checks.append(Check.le("schur_orthonormality_max_dev", worst, 1e-7))

    rng = random.Random(seed)
    worst = 0.0
    for _ in range(20):
        t1 = rng.uniform(0.0, 2.0 * math.pi)
        t2 = rng.uniform(0.0, 2.0 * math.pi)
        t3 = -(t1 + t2)
        angles = (t1, t2, t3)
        for spec in (st, measures.MeasureSpec.plancherel(5)):
            base = measures.density(spec, measures.TorusPoint(t1, t2))
            for sigma, _ in klpoly.WEYL:
                perm = measures.density(
                    spec, measures.TorusPoint(angles[sigma[0]], angles[sigma[1]])
                )
                worst = max(worst, abs(perm - base))
    checks.append(Check.le("density_weyl_invariance_max", worst, 1e-12))

    k = 32
    nodes = 2.0 * math.pi * np.arange(k) / k
    g1, g2 = np.meshgrid(nodes, nodes, indexing="ij")
    pt = measures.TorusPoint(g1, g2)
    ref = measures.density(st, pt)
    sups = []
    for p in (2, 11, 101, 1009):
        sups.append(float(np.max(np.abs(measures.density(measures.MeasureSpec.plancherel(p), pt) - ref))))
    monotone = all(sups[i] > sups[i + 1] for i in range(len(sups) - 1))
    checks.append(Check.le("plancherel_to_st_sup_monotone", 0.0 if monotone else 1.0, 0.0))

    worst = 0.0
    for cell in range(9):
        lo, hi = -1.0 + cell, -1.0 + cell + 1.0
        mp, up = schuralg.indicator_mass(1009, (lo, hi))
        ms, us = schuralg.indicator_mass(st, (lo, hi))
        worst = max(worst, abs(mp - ms) - up - us)
    checks.append(Check.le("interval_mass_gap_p1009", worst, 0.02))
    return checks


def suite_bernstein(seed: int = 0, tol: float = 0.0) -> list[Check]:
    """Exact l^1 bound on the expansion coefficients for every power l <= 10,
    plus round trips through the Schur basis."""
    worst = Fraction(0)
    for l in range(11):
        worst = max(worst, schuralg.bernstein_coeffs(l).coefficient_l1_norm())
    checks = [Check.le("bernstein_l1_norm_max", float(worst), 1.0)]

    mism = 0
    for l1 in range(9):
        for l2 in range(9 - l1):
            back = schuralg.expand_in_schur(schuralg.schur_to_epoly(l1, l2)).as_dict()
            if back != {(l1, l2): Fraction(1)}:
                mism += 1
    checks.append(Check.le("schur_roundtrip_mismatches", mism, 0.0))

    anchor = schuralg.bernstein_coeffs(1).as_dict()
    ok = anchor == {(0, 0): Fraction(1, 9), (1, 1): Fraction(1, 9)}
    checks.append(Check.le("bernstein_l1_anchor", 0.0 if ok else 1.0, 0.0))
    return checks


def suite_satotate(seed: int = 0, tol: float = 0.01, n_samples: int = 100_000) -> list[Check]:
    """Sampled A(p,p) interval masses versus quadrature masses on the 9-cell
    partition of [-1, 8] for p in {2, 5}."""
    checks = []
    for i, p in enumerate((2, 5)):
        child = measures.child_seed(seed, i)
        emp = schuralg.sample_app(p, n_samples, child)
        worst = 0.0
        for cell in range(9):
            lo, hi = -1.0 + cell, cell + 0.0
            mass, unc = schuralg.indicator_mass(p, (lo, hi))
            empirical = float(np.mean((emp.samples >= lo) & (emp.samples <= hi)))
            worst = max(worst, abs(empirical - mass) - unc)
        checks.append(Check.le(f"effective_st_9cell_p{p}", worst, tol))
    return checks


def sym2_tau_table(X: int) -> hecke.CoefficientTable:
    """Coefficient table of the symmetric-square lift of the tau form,
    covering A(m, n) for m <= X (diagonal entries available on demand)."""
    return hecke.extend_multiplicative(tau.sym2_tau_locals(X), X, X)


def suite_signs(seed: int = 0, tol: float = 0.0, X: int = 100_000) -> list[Check]:
    """The whole sign-change pipeline on symmetric-square-of-tau data."""
    table = sym2_tau_table(X)
    seq = signstats.sequence_from_table(table, X)
    report = signstats.count_sign_changes(seq)
    checks = [
        Check.ge("sign_changes_count", report.changes, X ** (5.0 / 6.0) / 10.0),
        Check.ge("partial_sum_abs_vs_X^0.9", signstats.partial_sum_abs(table, X), X ** 0.9),
    ]

    scan_X = 10_000
    H = math.ceil(scan_X ** (1.0 / 6.0))
    M = math.ceil(scan_X ** 0.1)
    cfg = signstats.ShortIntervalConfig(scan_X, H, M)
    total = strict = 0
    ordered = True
    for x in range(cfg.X, 2 * cfg.X + 1, max(1, cfg.H // 4)):
        sums = signstats.short_interval_sums(table, cfg, x)
        total += 1
        if sums["S1"] > sums["S2"] + 1e-12:
            ordered = False
        if sums["S1"] < sums["S2"] - 1e-9:
            strict += 1
    checks.append(Check.le("s1_le_s2_everywhere", 0.0 if ordered else 1.0, 0.0))
    checks.append(Check.ge("s1_lt_s2_fraction", strict / total, 0.5))

    scan = signstats.interval_change_scan(table, cfg)
    checks.append(Check.ge("windows_with_change_fraction",
                           scan["with_change"] / scan["total_x"], 0.5))

    for xr in (1_000, 10_000, X):
        ratio = signstats.rankin_selberg_ratio(table, xr)
        checks.append(Check.le(f"rankin_selberg_ratio_X{xr}", abs(math.log10(ratio)), 1.0))

    balance = signstats.sign_balance(table, X)
    checks.append(Check.le("sign_balance_dev", abs(balance["pos_frac"] - 0.5), 0.1))

    nv = signstats.nonvanishing_density(table, X)
    checks.append(Check.le("nonvanishing_ratio_log10", abs(math.log10(nv["ratio"])), math.log10(2.0)))
    return checks


def suite_euler(seed: int = 0, tol: float = 1e-9) -> list[Check]:
    """Local Euler factors versus closed forms and the shifted-ratio identity."""
    rng = random.Random(seed)
    deg = hecke.PrimeLocalData(2, hecke.SatakeTriple(1.0 + 0j, 1.0 + 0j, 1.0 + 0j))
    res = dmod.euler_factor_check(deg, 2.0 + 0.0j, J=60)
    closed_expected = 1.0 / (1.0 - 2.0 ** -2.0) ** 3
    checks = [
        Check.le("euler_degenerate_closed_form",
                 abs(res["series"] - closed_expected), 1e-10),
        Check.le("euler_degenerate_series_vs_closed",
                 abs(res["series"] - res["closed"]), 1e-10),
    ]

    primes = [3, 5, 7, 11, 13][:]
    locs = random_selfdual_locals(primes, rng) + random_tempered_locals([17, 19], rng)
    worst_series = worst_ratio = 0.0
    for loc in locs * 3:
        sigma = rng.choice((1.2, 1.5, 2.0))
        t = rng.uniform(-5.0, 5.0)
        res = dmod.euler_factor_check(loc, complex(sigma, t), J=80)
        worst_series = max(worst_series, abs(res["series"] - res["closed"]))
        worst_ratio = max(worst_ratio, res["ratio_identity_residual"])
    checks.append(Check.le("euler_series_vs_closed_max", worst_series, tol))
    checks.append(Check.le("euler_ratio_identity_max", worst_ratio, tol))
    return checks


def suite_mvt(seed: int = 0, tol: float = 8.0) -> list[Check]:
    """Second-moment calibration over the (N, T) grid plus the window-product
    D-estimate with the frozen constant 4."""
    rng = random.Random(seed)
    sizes = (64, 256, 1024)
    combos = [(n, t) for n in sizes for t in sizes]
    draws_per = 5
    worst = 0.0
    for N, T in combos:
        polys = []
        for _ in range(draws_per):
            coeffs = {n: float(rng.choice((-1.0, 1.0))) for n in range(N, 2 * N + 1)}
            polys.append(dmod.DirichletPolynomial(coeffs))
        for rec in dmod.mvt_ratio_many(polys, float(T)):
            worst = max(worst, rec["ratio"])
    extra = [
        dmod.DirichletPolynomial(
            {n: float(rng.choice((-1.0, 1.0))) for n in range(512, 1025)}
        )
        for _ in range(5)
    ]
    for rec in dmod.mvt_ratio_many(extra, 512.0):
        worst = max(worst, rec["ratio"])
    checks = [Check.le("mvt_ratio_max_50_draws", worst, tol)]

    from .arith import primes_upto

    worst = 0.0
    for M in (100, 1000):
        table = hecke.extend_multiplicative(
            random_tempered_locals(primes_upto(2 * M), rng), 2 * M, 1
        )
        dpoly = dmod.build_MKD(table, 10 * M, M)["D"]
        for sigma in (0.5, 0.75, 1.0):
            for t in (0.0, 1.0, 10.0):
                worst = max(worst, dmod.d_estimate_ratio(dpoly, M, complex(sigma, t)))
    checks.append(Check.le("d_estimate_ratio_max", worst, 4.0))
    return checks


SUITES = {
    "hecke": suite_hecke,
    "schur": suite_schur,
    "kato": suite_kato,
    "measures": suite_measures,
    "bernstein": suite_bernstein,
    "satotate": suite_satotate,
    "signs": suite_signs,
    "euler": suite_euler,
    "mvt": suite_mvt,
}
