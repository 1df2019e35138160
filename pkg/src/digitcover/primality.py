"""Compositeness and primality testing for elimination searches.

Verdicts come in three strengths: ``composite`` always carries a witness that
can be re-checked (an explicit factor, a Miller-Rabin base, or a failed Lucas
congruence), ``probable`` records how many strong-pseudoprime rounds were
passed, and ``proven`` records how primality was established.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

import gmpy2

__all__ = [
    "TRIAL_BOUND",
    "Verdict",
    "is_probable_prime",
    "is_strong_witness",
    "lucas_n_plus_one_prove",
    "lucas_uv",
    "primes_below",
    "small_factor",
]

TRIAL_BOUND = 10_000

# Below this bound the first 13 prime bases decide primality exactly
# (Sorenson & Webster 2015).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_DETERMINISTIC_BASES = 13


@lru_cache(maxsize=16)
def primes_below(n: int) -> tuple[int, ...]:
    """All primes ``< n`` by the sieve of Eratosthenes."""
    if n <= 2:
        return ()
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_SMALL = primes_below(TRIAL_BOUND)
_PRIMORIAL = gmpy2.mpz(prod(_SMALL))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a primality test.

    ``status`` is ``"composite"``, ``"probable"`` or ``"proven"``.
    For composites ``witness_kind`` is ``"factor"``, ``"mr"`` or ``"lucas"`` and
    ``witness`` is the factor, the Miller-Rabin base, or the Lucas ``(P, Q)``.
    For proven primes ``certificate`` names the method. External
    certificates (ECPP) may be attached through ``certificate`` but are
    never produced here.
    """

    status: str
    witness_kind: str | None = None
    witness: int | tuple[int, int] | None = None
    rounds: int = 0
    certificate: str | None = None

    @property
    def is_composite(self) -> bool:
        return self.status == "composite"

    @property
    def maybe_prime(self) -> bool:
        return self.status != "composite"

    def check(self, n: int) -> bool:
        """Re-verify a composite witness against ``n`` independently of the test that made it."""
        if not self.is_composite:
            return False
        if self.witness_kind == "factor":
            f = int(self.witness)
            return 1 < f < n and n % f == 0
        if self.witness_kind == "mr":
            return is_strong_witness(n, int(self.witness))
        if self.witness_kind == "lucas":
            P, Q = self.witness
            D = P * P - 4 * Q
            if gcd(n, 2 * Q * D) != 1 or gmpy2.jacobi(D % n, n) != -1:
                return False
            return lucas_uv(P, Q, n + 1, n)[0] != 0
        return False

    def describe(self) -> str:
        if self.status == "composite":
            return f"composite {self.witness_kind}={_fmt(self.witness)}"
        if self.status == "probable":
            return f"probable-prime rounds={self.rounds}"
        return f"proven-prime {self.certificate}"


def _fmt(w) -> str:
    if isinstance(w, tuple):
        return ",".join(map(str, w))
    return str(w)


def small_factor(n: int, bound: int = TRIAL_BOUND) -> int | None:
    """Smallest prime factor of ``n`` below ``bound`` (and below ``n``), if any."""
    if bound == TRIAL_BOUND:
        g = gmpy2.gcd(_PRIMORIAL, n)
        if g == 1:
            return None
        for p in _SMALL:
            if g % p == 0:
                return p if p < n else None
        return None
    for p in primes_below(bound):
        if p >= n:
            return None
        if n % p == 0:
            return p
    return None


def is_strong_witness(n: int, a: int) -> bool:
    """True if ``a`` proves the odd number ``n > 2`` composite by the strong test."""
    if n < 3 or n % 2 == 0:
        raise ValueError("strong test needs an odd n > 2")
    a %= n
    if a in (0, 1, n - 1):
        return False
    N = gmpy2.mpz(n)
    d = N - 1
    s = gmpy2.bit_scan1(d)
    d >>= s
    x = gmpy2.powmod(a, d, N)
    if x == 1 or x == N - 1:
        return False
    for _ in range(s - 1):
        x = gmpy2.powmod(x, 2, N)
        if x == N - 1:
            return False
    return True


def is_probable_prime(n: int, rounds: int = 20) -> Verdict:
    """Trial division below ``TRIAL_BOUND``, then ``rounds`` strong tests to the first prime bases.

    Numbers below ``TRIAL_BOUND**2`` that survive trial division are prime, and
    so are numbers below the deterministic Miller-Rabin bound that pass 13
    bases; both come back ``proven``.
    """
    if n < 2:
        raise ValueError(f"primality is undefined for {n}")
    if rounds < 1:
        raise ValueError("rounds must be positive")
    if n < TRIAL_BOUND and n in _small_set():
        return Verdict("proven", certificate="trial-division")
    f = small_factor(n)
    if f is not None:
        return Verdict("composite", "factor", f)
    if n < TRIAL_BOUND * TRIAL_BOUND:
        return Verdict("proven", certificate="trial-division")
    bases = _bases(rounds)
    for a in bases:
        if is_strong_witness(n, a):
            return Verdict("composite", "mr", a)
    if n < _MR_DETERMINISTIC_BOUND and rounds >= _MR_DETERMINISTIC_BASES:
        return Verdict("proven", rounds=rounds, certificate="deterministic-mr")
    return Verdict("probable", rounds=rounds)


@lru_cache(maxsize=1)
def _small_set() -> frozenset[int]:
    return frozenset(_SMALL)


def _bases(rounds: int) -> tuple[int, ...]:
    if rounds <= len(_SMALL):
        return _SMALL[:rounds]
    # More rounds than primes below the trial bound: extend the base list.
    bound = TRIAL_BOUND
    while True:
        bound *= 2
        ps = primes_below(bound)
        if len(ps) >= rounds:
            return ps[:rounds]


def lucas_uv(P: int, Q: int, m: int, n: int) -> tuple[int, int]:
    """``(U_m, V_m) mod n`` for the Lucas sequences with parameters ``P, Q`` (``n`` odd)."""
    N = gmpy2.mpz(n)
    P, Q = P % N, Q % N
    D = (P * P - 4 * Q) % N
    inv2 = (N + 1) // 2
    U, V, Qk = gmpy2.mpz(0), gmpy2.mpz(2), gmpy2.mpz(1)  # index 0
    for bit in bin(m)[2:]:
        # double: index j -> 2j
        U, V = U * V % N, (V * V - 2 * Qk) % N
        Qk = Qk * Qk % N
        if bit == "1":
            # increment: index 2j -> 2j+1
            U, V = (P * U + V) * inv2 % N, (D * U + P * V) * inv2 % N
            Qk = Qk * Q % N
    return int(U), int(V)


def _lucas_discriminant(n: int) -> int | None:
    # Selfridge's sequence 5, -7, 9, -11, ...; a square n never yields -1.
    if gmpy2.is_square(n):
        return None
    D = 5
    while gmpy2.jacobi(D % n, n) != -1:
        D = -D - 2 if D > 0 else -D + 2
    return D


def lucas_n_plus_one_prove(n: int, factorization: list[tuple[int, int]] | dict[int, int]) -> Verdict:
    """Prove ``n`` prime from the complete factorization of ``n + 1``.

    Fix a discriminant ``D`` with Jacobi symbol ``(D/n) = -1``. If for every
    prime ``q | n+1`` some Lucas pair ``(P, Q)`` with ``P**2 - 4Q = D`` has
    ``n | U_{n+1}`` and ``gcd(U_{(n+1)/q}, n) = 1``, every prime factor ``r``
    of ``n`` satisfies ``r == (D/r) (mod n+1)``, so ``r > sqrt(n)`` and ``n``
    is prime. Sharing one ``D`` across all ``q`` is what makes the signs agree.

    Returns ``proven`` on success, ``composite`` with a checkable witness when a
    congruence fails, and otherwise the strong-test verdict.
    """
    items = list(factorization.items()) if isinstance(factorization, dict) else list(factorization)
    if n < 2:
        raise ValueError(f"primality is undefined for {n}")
    if prod(q**e for q, e in items) != n + 1:
        raise ValueError(f"factorization does not multiply to n+1 = {n + 1}")
    for q, e in items:
        if e < 1 or is_probable_prime(q, rounds=20).status != "proven":
            raise ValueError(f"factor {q} of n+1 is not a proven prime")
    if n == 2:
        return Verdict("proven", certificate="trial-division")
    f = small_factor(n)
    if f is not None:
        return Verdict("composite", "factor", f)
    D = _lucas_discriminant(n)
    if D is None:
        return Verdict("composite", "factor", isqrt(n))
    # P shares the parity of D, Q = (P^2 - D)/4.
    candidates = [(P, (P * P - D) // 4) for P in range(D % 2, 128, 2)]
    for q, _ in items:
        for P, Q in candidates:
            if Q == 0 or gcd(n, 2 * Q * D) != 1:
                continue
            if lucas_uv(P, Q, n + 1, n)[0] != 0:
                return Verdict("composite", "lucas", (P, Q))
            g = gcd(lucas_uv(P, Q, (n + 1) // q, n)[0], n)
            if g == 1:
                break
            if g != n:
                return Verdict("composite", "factor", g)
        else:
            return is_probable_prime(n, rounds=20)
    return Verdict("proven", certificate="lucas-n+1")
