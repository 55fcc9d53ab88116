import pytest

from gl3hecke import tau
from oracles import naive_eta_power


def test_first_value_is_one():
    assert tau.ramanujan_tau(1) == [1]


def test_small_values_match_naive_eta_product():
    # tau(2) = -24 and tau(3) = 252 via the direct product expansion
    naive = naive_eta_power(20, 24)
    assert naive[1] == -24
    assert naive[2] == 252
    assert tau.ramanujan_tau(20) == naive


def test_prefix_against_naive_oracle():
    n = 150
    assert tau.ramanujan_tau(n) == naive_eta_power(n, 24)


def test_eta_cubed_sparse_identity():
    n = 300
    assert tau.eta_cubed_coeffs(n) == naive_eta_power(n, 3)


def test_square_trunc_matches_schoolbook():
    coeffs = [3, -2, 0, 7, -5, 11]
    n = 11
    expected = [0] * n
    for i, a in enumerate(coeffs):
        for j, b in enumerate(coeffs):
            if i + j < n:
                expected[i + j] += a * b
    assert tau.square_trunc(coeffs, n) == expected


def test_range_guard():
    with pytest.raises(ValueError):
        tau.ramanujan_tau(0)
    with pytest.raises(ValueError):
        tau.ramanujan_tau(10 ** 6 + 1)


def test_normalized_eigenvalues_are_tempered():
    pairs = tau.tau_prime_eigenvalues(2000)
    assert pairs[0][0] == 2
    assert pairs[0][1] == pytest.approx(-24 / 2 ** 5.5)
    assert all(abs(lam) < 2.0 for _, lam in pairs)


def test_repeat_call_is_consistent():
    assert tau.ramanujan_tau(50) == tau.ramanujan_tau(50)
