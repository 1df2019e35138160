"""Exact construction of the digit-append family ``s_n`` and repunit identities.

``s_n`` is the integer obtained by writing ``n`` copies of the digit ``d``
(base ``b``) after the base-``b`` representation of ``k``::

    s_n = k * b**n + d * (b**n - 1) // (b - 1)

Everything here is exact integer arithmetic; there are no fixed-width paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import gmpy2

__all__ = [
    "SequenceSpec",
    "append_digits",
    "repunit",
    "square_base_repunit_factors",
    "to_base",
]


@dataclass(frozen=True)
class SequenceSpec:
    """The family ``s_n`` generated by seed ``k``, digit ``d`` and base ``b``."""

    k: int
    d: int
    b: int = 10

    def __post_init__(self) -> None:
        if self.b < 2:
            raise ValueError(f"base must be >= 2, got {self.b}")
        if not 0 <= self.d < self.b:
            raise ValueError(f"digit {self.d} out of range for base {self.b}")
        if self.k < 0:
            raise ValueError(f"seed must be nonnegative, got {self.k}")

    @property
    def coprime(self) -> bool:
        """True when ``gcd(k, d) == 1``, the admissibility condition for a seed."""
        return gcd(self.k, self.d) == 1

    def require_coprime(self) -> None:
        if not self.coprime:
            raise ValueError(
                f"seed {self.k} is not coprime to digit {self.d} (gcd {gcd(self.k, self.d)})"
            )

    def term(self, n: int) -> int:
        return append_digits(self, n)

    def terms(self, start: int = 0):
        """Yield ``s_start, s_{start+1}, ...`` using the recurrence ``s_n = b*s_{n-1} + d``."""
        s = append_digits(self, start)
        while True:
            yield s
            s = s * self.b + self.d


def repunit(b: int, t: int) -> int:
    """Return ``(b**t - 1) // (b - 1)``, the base-``b`` number written as ``t`` ones."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if t < 0:
        raise ValueError(f"repunit length must be >= 0, got {t}")
    return (b**t - 1) // (b - 1)


def append_digits(spec: SequenceSpec, n: int) -> int:
    """Return ``s_n`` for ``spec``; ``s_0`` is the seed itself."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    bn = spec.b**n
    return spec.k * bn + spec.d * ((bn - 1) // (spec.b - 1))


def square_base_repunit_factors(m: int, t: int) -> tuple[int, int]:
    """Split the length-``t`` repunit in base ``m**2`` into two nontrivial factors.

    For odd ``m`` and odd ``t``::

        repunit(m**2, t) == (m**t - 1)/(m - 1) * (m**t + 1)/(m + 1)

    Both quotients are integers (odd ``t``) and exceed 1 once ``m, t >= 3``.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 3, got {m}")
    if t < 3 or t % 2 == 0:
        raise ValueError(f"t must be odd and >= 3, got {t}")
    mt = m**t
    return (mt - 1) // (m - 1), (mt + 1) // (m + 1)


def to_base(x: int, b: int = 10) -> str:
    """Render a nonnegative integer in base ``b`` (``2 <= b <= 36``).

    Goes through gmpy2 so that terms with millions of digits render without
    tripping the interpreter's int-to-str digit limit.
    """
    if not 2 <= b <= 36:
        raise ValueError(f"cannot render base {b}")
    if x < 0:
        raise ValueError("negative values are not rendered")
    return gmpy2.mpz(x).digits(b)
