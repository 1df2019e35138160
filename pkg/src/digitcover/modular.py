"""Periods of primes along ``s_n`` and the seed congruence forcing ``p | s_n``.

Since ``s_{n+r} - s_n = b**n * (k*(b**r - 1) + d*repunit(b, r))``, ``s_n`` is
periodic modulo ``p`` with period ``r`` for every ``k`` and ``d`` exactly when
``b**r == 1`` and ``repunit(b, r) == 0`` modulo ``p``. For ``p`` not dividing
``b - 1`` the second condition follows from the first and the period is the
multiplicative order of ``b``; for ``p | b - 1`` (3 in base ten) it is ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from digitcover.sequence import SequenceSpec

__all__ = [
    "Period",
    "ResidueClass",
    "divides_s_n",
    "hit_class",
    "multiplicative_order",
    "period",
    "repunit_mod",
    "seed_residue_for_divisibility",
]


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The arithmetic progression ``residue (mod modulus)``."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue {self.residue} not reduced modulo {self.modulus}; use ResidueClass.of"
            )

    @classmethod
    def of(cls, residue: int, modulus: int) -> "ResidueClass":
        return cls(residue % modulus, modulus)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus == self.residue

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class Period:
    p: int
    b: int
    r: int


def _factor_small(n: int) -> dict[int, int]:
    # Trial division; only ever applied to p - 1 for moderately sized p.
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def multiplicative_order(a: int, p: int) -> int:
    """Smallest ``r > 0`` with ``a**r == 1 (mod p)`` for a prime ``p``.

    Starts from ``p - 1`` and strips prime factors while the power stays 1.
    """
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if gcd(a, p) != 1:
        raise ValueError(f"{a} is not invertible modulo {p}")
    if p == 2:
        return 1
    r = p - 1
    if pow(a, r, p) != 1:
        raise ValueError(f"{p} is not prime")
    for q, e in _factor_small(r).items():
        for _ in range(e):
            if pow(a, r // q, p) == 1:
                r //= q
            else:
                break
    return r


def repunit_mod(b: int, t: int, m: int) -> int:
    """``repunit(b, t) mod m`` without forming ``b**t``."""
    x = pow(b, t, m * (b - 1))
    return (x - 1) // (b - 1) % m


@lru_cache(maxsize=4096)
def _period(p: int, b: int) -> int:
    step = multiplicative_order(b, p)
    r = step
    while repunit_mod(b, r, p):
        r += step
    return r


def period(p: int, b: int = 10) -> Period:
    """The period of ``p``: smallest ``r`` with ``s_{n+r} == s_n (mod p)`` for all seeds and digits."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if gcd(p, b) != 1:
        raise ValueError(f"{p} shares a factor with base {b}; no period is defined")
    return Period(p, b, _period(p, b))


def seed_residue_for_divisibility(p: int, d: int, n: int | ResidueClass, b: int = 10) -> ResidueClass:
    """Residue ``c`` with ``p | s_n  <=>  k == c (mod p)`` for appended digit ``d``.

    ``n`` may be an integer or a ``ResidueClass`` whose modulus is a multiple of
    the period of ``p``; it is reduced modulo the period before use. When
    ``p`` divides ``b - 1`` every power of ``b`` is 1 modulo ``p`` and the
    repunit collapses to ``n``, giving ``c = -d*n``; otherwise
    ``c = d * (b**-n - 1) / (b - 1)``.
    """
    if gcd(p, b) != 1:
        raise ValueError(f"{p} divides base {b}; no seed congruence exists")
    r = _period(p, b)
    if isinstance(n, ResidueClass):
        if n.modulus % r:
            raise ValueError(f"class {n} is not a union of classes modulo the period {r} of {p}")
        n = n.residue
    n %= r
    if (b - 1) % p == 0:
        c = -d * n
    else:
        c = pow(b - 1, -1, p) * d * (pow(b, -n, p) - 1)
    return ResidueClass.of(c, p)


@lru_cache(maxsize=65536)
def hit_class(p: int, d: int, c: int, b: int = 10) -> tuple[int, ...]:
    """The classes ``n (mod period)`` for which ``k == c (mod p)`` gives ``p | s_n``."""
    r = _period(p, b)
    c %= p
    return tuple(n for n in range(r) if seed_residue_for_divisibility(p, d, n, b).residue == c)


def divides_s_n(p: int, spec: SequenceSpec, n: int) -> bool:
    """True iff ``p`` divides ``s_n``, computed by modular exponentiation."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    b = spec.b
    value = spec.k * pow(b, n, p) + spec.d * repunit_mod(b, n, p)
    return value % p == 0
