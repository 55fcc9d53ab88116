"""Ramanujan tau(n) from the 24th power of the Dedekind eta q-series.

All coefficient arithmetic is exact (Python integers).  Dense truncated
polynomial squaring is done by Kronecker substitution: pack the coefficients
into one big integer, square it, and read the slots back out.  tau(n) is the
coefficient of q^{n-1} in prod_{k>=1} (1 - q^k)^24.
"""

from __future__ import annotations

from functools import lru_cache


def eta_cubed_coeffs(N: int) -> list[int]:
    """Coefficients of prod (1 - q^k)^3 up to q^{N-1}: Jacobi's sparse series
    sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}."""
    out = [0] * N
    j = 0
    while j * (j + 1) // 2 < N:
        out[j * (j + 1) // 2] = (2 * j + 1) * (-1 if j % 2 else 1)
        j += 1
    return out


def _pack(coeffs: list[int], slot: int) -> int:
    pos = bytearray(len(coeffs) * slot)
    neg = bytearray(len(coeffs) * slot)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * slot : i * slot + slot] = c.to_bytes(slot, "little")
        elif c < 0:
            neg[i * slot : i * slot + slot] = (-c).to_bytes(slot, "little")
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def _unpack(m: int, full_len: int, keep: int, slot: int) -> list[int]:
    # Adding 2^(8*slot-1) per slot makes every balanced digit non-negative,
    # so the plain base-2^(8*slot) digits are coefficient + half.
    half = 1 << (8 * slot - 1)
    offset = int.from_bytes((bytes(slot - 1) + b"\x80") * full_len, "little")
    raw = (m + offset).to_bytes(full_len * slot + slot, "little")
    return [
        int.from_bytes(raw[i * slot : i * slot + slot], "little") - half
        for i in range(keep)
    ]


def square_trunc(coeffs: list[int], N: int) -> list[int]:
    """Exact coefficients of the square of the polynomial, truncated to N."""
    peak = max((abs(c) for c in coeffs), default=0)
    if peak == 0:
        return [0] * N
    bound = len(coeffs) * peak * peak
    slot = (bound.bit_length() + 2 + 7) // 8
    packed = _pack(coeffs, slot)
    full_len = 2 * len(coeffs) - 1
    out = _unpack(packed * packed, full_len, min(N, full_len), slot)
    out.extend([0] * (N - len(out)))
    return out


@lru_cache(maxsize=2)
def _eta24_coeffs(N: int) -> tuple[int, ...]:
    f3 = eta_cubed_coeffs(N)
    f6 = square_trunc(f3, N)
    f12 = square_trunc(f6, N)
    f24 = square_trunc(f12, N)
    return tuple(f24)


def ramanujan_tau(N: int) -> list[int]:
    """Exact tau(1), ..., tau(N).  Requires 1 <= N <= 10**6."""
    if not 1 <= N <= 10**6:
        raise ValueError(f"N = {N} outside supported range [1, 10^6]")
    return list(_eta24_coeffs(N))


def tau_prime_eigenvalues(N: int) -> list[tuple[int, float]]:
    """(p, tau(p) / p^{11/2}) for primes p <= N; the normalized values lie in
    (-2, 2) by the proven Ramanujan bound."""
    from .arith import primes_upto

    tau = ramanujan_tau(N)
    return [(p, tau[p - 1] / p ** 5.5) for p in primes_upto(N)]


def sym2_tau_locals(N: int) -> list:
    """Local Satake data of the symmetric-square lift of the tau form,
    for all primes p <= N."""
    from .hecke import GL2FormData, sym2_lift

    return sym2_lift(GL2FormData(tau_prime_eigenvalues(N)))
