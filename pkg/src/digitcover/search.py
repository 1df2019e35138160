"""Seed verification, minimal-seed elimination, and pandigital seed families.

"Appending any number of digits" always means ``n >= 1``: the seed itself is
never tested, so a prime seed (37 for the digit 1) is admissible.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Callable, Iterable, Iterator

import gmpy2

from digitcover.cover import (
    PANDIGITAL_POOL,
    CoherentSolution,
    CoverCertificate,
    PrimeCover,
    default_pool,
    find_coherent_covers,
    find_cover,
    verify_cover,
)
from digitcover.crt import ProgressionFamily, crt_combine
from digitcover.modular import divides_s_n
from digitcover.primality import (
    _PRIMORIAL,
    _SMALL,
    TRIAL_BOUND,
    Verdict,
    is_probable_prime,
    is_strong_witness,
    lucas_n_plus_one_prove,
)
from digitcover.sequence import SequenceSpec, append_digits

__all__ = [
    "CandidateRecord",
    "DigitCheck",
    "EliminationReport",
    "PandigitalCertificate",
    "PandigitalError",
    "ProbablePrimeFound",
    "ScanWitness",
    "SeedCheckReport",
    "SeedClaim",
    "SeedScan",
    "all_digit_seed_check",
    "eliminate_below",
    "first_prime",
    "pandigital_family",
    "pandigital_solution",
    "pandigital_verify",
    "trivial_factor",
    "verify_seed_bounded",
]

log = logging.getLogger(__name__)

PANDIGITAL_DIGITS = (1, 3, 7, 9)


class ProbablePrimeFound(Exception):
    """A bounded scan met a (probable) prime, so the candidate is not a seed."""

    def __init__(self, spec: SequenceSpec, n: int, verdict: Verdict):
        self.spec = spec
        self.n = n
        self.verdict = verdict
        super().__init__(
            f"s_{n} for k={spec.k}, d={spec.d}, b={spec.b} is {verdict.describe()}"
        )


@dataclass(frozen=True)
class ScanWitness:
    """Why ``s_n`` is composite: a covering prime, a small factor, or a Miller-Rabin base."""

    n: int
    kind: str
    value: int

    def check(self, spec: SequenceSpec) -> bool:
        s = append_digits(spec, self.n)
        if self.kind in ("cover", "factor"):
            return 1 < self.value < s and s % self.value == 0
        if self.kind == "mr":
            return is_strong_witness(s, self.value)
        return False


def _smallest_prime_of(g) -> int:
    for p in _SMALL:
        if g % p == 0:
            return p
    raise AssertionError("gcd with the primorial has no small prime factor")


def _scan(
    spec: SequenceSpec,
    n_max: int,
    rounds: int,
    witnesses: list[ScanWitness] | None = None,
) -> tuple[int, Verdict] | None:
    """First ``n`` in ``1..n_max`` whose term is not proven composite.

    Terms are built by the recurrence; each is screened by one gcd against
    the primorial of the trial-division primes and a base-2 strong test
    before the full ``rounds``-base test.
    """
    b, d = spec.b, spec.d
    s = gmpy2.mpz(spec.k)
    for n in range(1, n_max + 1):
        s = s * b + d
        if s < TRIAL_BOUND:
            v = is_probable_prime(int(s), rounds)
            if v.maybe_prime:
                return n, v
            if witnesses is not None:
                witnesses.append(ScanWitness(n, "factor", int(v.witness)))
            continue
        g = gmpy2.gcd(s, _PRIMORIAL)
        if g != 1:
            if witnesses is not None:
                witnesses.append(ScanWitness(n, "factor", _smallest_prime_of(g)))
            continue
        if is_strong_witness(s, 2):
            if witnesses is not None:
                witnesses.append(ScanWitness(n, "mr", 2))
            continue
        v = is_probable_prime(int(s), rounds)
        if v.maybe_prime:
            return n, v
        if witnesses is not None:
            witnesses.append(ScanWitness(n, v.witness_kind, int(v.witness)))
    return None


def _factor_small_int(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    q = 2
    while q * q <= m:
        while m % q == 0:
            out[q] = out.get(q, 0) + 1
            m //= q
        q += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _strengthen(spec: SequenceSpec, n: int, verdict: Verdict) -> Verdict:
    """Upgrade a probable prime of the form ``(k+1)*b**n - 1`` with the Lucas N+1 proof."""
    if verdict.status != "probable" or spec.d != spec.b - 1 or spec.k + 1 > 10**12:
        return verdict
    fac = _factor_small_int(spec.k + 1)
    for q, e in _factor_small_int(spec.b).items():
        fac[q] = fac.get(q, 0) + e * n
    proved = lucas_n_plus_one_prove(append_digits(spec, n), fac)
    return proved if proved.status == "proven" else verdict


def first_prime(
    spec: SequenceSpec, n_max: int, rounds: int = 20, prove: bool = True
) -> tuple[int, Verdict] | None:
    """Smallest ``n`` in ``1..n_max`` with ``s_n`` (probably) prime, with its verdict."""
    hit = _scan(spec, n_max, rounds)
    if hit is None:
        return None
    n, v = hit
    return n, (_strengthen(spec, n, v) if prove else v)


def trivial_factor(spec: SequenceSpec) -> int:
    """``gcd(b*k, d)``: the largest number dividing every ``s_n`` with ``n >= 1``.

    ``gcd(s_1, s_2, ...) = gcd(s_1, d)`` by the recurrence, and
    ``gcd(b*k + d, d) = gcd(b*k, d)``. When this exceeds 1 every term is
    composite, since ``s_n >= s_1 > d``.
    """
    return gcd(spec.b * spec.k, spec.d)


# --- bounded verification ----------------------------------------------------


@dataclass(frozen=True)
class SeedScan:
    """Compositeness witnesses for ``s_1 .. s_{n_max}``."""

    spec: SequenceSpec
    n_max: int
    witnesses: tuple[ScanWitness, ...]
    cover: PrimeCover | None = None

    def check(self) -> bool:
        return len(self.witnesses) == self.n_max and all(
            w.n == i + 1 and w.check(self.spec) for i, w in enumerate(self.witnesses)
        )

    def witness_primes(self) -> set[int]:
        return {w.value for w in self.witnesses if w.kind in ("cover", "factor")}


def verify_seed_bounded(
    spec: SequenceSpec,
    n_max: int,
    rounds: int = 20,
    pool: Iterable[int] | None = None,
    use_cover: bool = True,
) -> SeedScan:
    """Witness compositeness of every ``s_n`` for ``1 <= n <= n_max``.

    When the pool yields a cover its primes are the witnesses; otherwise each
    term gets its smallest prime factor below the trial bound or a
    Miller-Rabin base. Raises ``ProbablePrimeFound`` at the first term that
    passes the strong test.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if spec.d > 0:
        spec.require_coprime()
    cover = find_cover(spec, pool) if use_cover and spec.d > 0 else None
    if cover is not None:
        ws = tuple(ScanWitness(n, "cover", cover.prime_for(n)) for n in range(1, n_max + 1))
        return SeedScan(spec, n_max, ws, cover)
    witnesses: list[ScanWitness] = []
    hit = _scan(spec, n_max, rounds, witnesses)
    if hit is not None:
        raise ProbablePrimeFound(spec, *hit)
    return SeedScan(spec, n_max, tuple(witnesses))


@dataclass(frozen=True)
class SeedClaim:
    """A seed claim with its evidence: a cover certificate (complete) or a bounded scan."""

    spec: SequenceSpec
    certificate: CoverCertificate | None = None
    scan: SeedScan | None = None

    @property
    def complete(self) -> bool:
        return self.certificate is not None

    def check(self) -> bool:
        if self.certificate is not None:
            return self.certificate.check()
        return self.scan is not None and self.scan.check()


def claim_seed(spec: SequenceSpec, n_max: int = 2000, rounds: int = 20) -> SeedClaim:
    cover = find_cover(spec)
    if cover is not None:
        return SeedClaim(spec, certificate=verify_cover(spec, cover))
    return SeedClaim(spec, scan=verify_seed_bounded(spec, n_max, rounds, use_cover=False))


__all__.append("claim_seed")


# --- elimination -------------------------------------------------------------


@dataclass(frozen=True)
class CandidateRecord:
    """Outcome for one candidate seed.

    ``status`` is ``eliminated`` (``n`` is the smallest index of a prime term,
    ``verdict`` its strength), ``covered`` (``cover`` proves it a seed),
    ``survivor`` (every term up to ``n`` is composite) or ``trivial``
    (``factor`` divides every term).
    """

    k: int
    status: str
    n: int | None = None
    verdict: Verdict | None = None
    cover: PrimeCover | None = None
    factor: int | None = None
    witnesses: tuple[ScanWitness, ...] = field(default=(), compare=False, repr=False)

    def witness_text(self) -> str:
        if self.status == "eliminated":
            v = self.verdict
            if v.status == "probable":
                return f"probable:{v.rounds}"
            return f"proven:{v.certificate}"
        if self.status == "covered":
            return str(self.cover)
        if self.status == "trivial":
            return f"factor:{self.factor}"
        return f"composite:{len(self.witnesses) or self.n}"


@dataclass(frozen=True)
class EliminationReport:
    d: int
    b: int
    k_limit: int
    n_max: int
    rounds: int
    records: tuple[CandidateRecord, ...]

    def by_status(self, status: str) -> list[CandidateRecord]:
        return [r for r in self.records if r.status == status]

    @property
    def survivors(self) -> list[int]:
        return [r.k for r in self.by_status("survivor")]

    @property
    def covered(self) -> list[int]:
        return [r.k for r in self.by_status("covered")]

    @property
    def eliminated(self) -> list[int]:
        return [r.k for r in self.by_status("eliminated")]

    def record(self, k: int) -> CandidateRecord:
        for r in self.records:
            if r.k == k:
                return r
        raise KeyError(k)

    def summary(self) -> dict[str, object]:
        return {
            "candidates": len(self.records),
            "eliminated": len(self.eliminated),
            "covered": len(self.covered),
            "trivial": len(self.by_status("trivial")),
            "survivors": self.survivors,
        }


def _examine(args) -> CandidateRecord:
    k, d, b, n_max, rounds, pool, max_len, keep_witnesses = args
    spec = SequenceSpec(k, d, b)
    f = trivial_factor(spec)
    if f > 1:
        return CandidateRecord(k, "trivial", factor=min(p for p in _factor_small_int(f)))
    cover = find_cover(spec, pool, max_len)
    if cover is not None:
        return CandidateRecord(k, "covered", n=cover.length, cover=cover)
    witnesses: list[ScanWitness] | None = [] if keep_witnesses else None
    hit = _scan(spec, n_max, rounds, witnesses)
    if hit is None:
        return CandidateRecord(k, "survivor", n=n_max, witnesses=tuple(witnesses or ()))
    n, v = hit
    return CandidateRecord(k, "eliminated", n=n, verdict=_strengthen(spec, n, v))


def eliminate_below(
    k_limit: int,
    d: int,
    b: int = 10,
    n_max: int = 2000,
    rounds: int = 20,
    pool: Iterable[int] | None = None,
    max_len: int = 120,
    jobs: int = 1,
    progress: Callable[[int, int], None] | None = None,
    keep_witnesses: bool = True,
) -> EliminationReport:
    """Try to rule out every candidate seed ``0 < k < k_limit`` coprime to ``d``.

    Each candidate is first tested for a cover, then scanned for the smallest
    ``n <= n_max`` giving a prime. Records come back ordered by ``k`` and
    do not depend on ``jobs``.
    """
    if k_limit < 2:
        raise ValueError("k_limit must be >= 2")
    SequenceSpec(0, d, b)  # validates d and b
    pool = default_pool(b) if pool is None else tuple(pool)
    ks = [k for k in range(1, k_limit) if gcd(k, d) == 1]
    tasks = [(k, d, b, n_max, rounds, pool, max_len, keep_witnesses) for k in ks]
    records: list[CandidateRecord] = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for i, rec in enumerate(ex.map(_examine, tasks, chunksize=max(1, len(tasks) // (jobs * 16)))):
                records.append(rec)
                if progress:
                    progress(i + 1, len(tasks))
    else:
        for i, t in enumerate(tasks):
            records.append(_examine(t))
            if progress:
                progress(i + 1, len(tasks))
    return EliminationReport(d, b, k_limit, n_max, rounds, tuple(records))


# --- all digits --------------------------------------------------------------


@dataclass(frozen=True)
class DigitCheck:
    """How compositeness was settled for one digit.

    ``method`` is ``trivial`` (``detail`` = smallest prime of the common
    factor), ``cover``, ``scan`` (bounded to ``n_max``) or ``prime`` (failure:
    ``n`` is the first prime index).
    """

    d: int
    method: str
    factor: int | None = None
    cover: PrimeCover | None = None
    n: int | None = None
    verdict: Verdict | None = None


@dataclass(frozen=True)
class SeedCheckReport:
    k: int
    b: int
    n_max: int
    digits: tuple[DigitCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.method != "prime" for c in self.digits)

    @property
    def failure(self) -> DigitCheck | None:
        for c in self.digits:
            if c.method == "prime":
                return c
        return None

    def digit(self, d: int) -> DigitCheck:
        return self.digits[d]


def all_digit_seed_check(
    k: int,
    n_max: int = 2000,
    b: int = 10,
    rounds: int = 20,
    pool: Iterable[int] | None = None,
    stop_at_failure: bool = True,
) -> SeedCheckReport:
    """Settle, for every digit ``0..b-1``, that appending it never gives a prime.

    A common factor of all terms is used when there is one, then a cover,
    then a bounded scan. The first digit whose scan finds a prime is
    recorded as the failure.
    """
    if k < 1:
        raise ValueError("k must be positive")
    checks: list[DigitCheck] = []
    for d in range(b):
        spec = SequenceSpec(k, d, b)
        f = trivial_factor(spec)
        if f > 1:
            checks.append(DigitCheck(d, "trivial", factor=min(_factor_small_int(f))))
            continue
        cover = find_cover(spec, pool)
        if cover is not None:
            checks.append(DigitCheck(d, "cover", cover=cover))
            continue
        hit = _scan(spec, n_max, rounds)
        if hit is None:
            checks.append(DigitCheck(d, "scan", n=n_max))
            continue
        checks.append(DigitCheck(d, "prime", n=hit[0], verdict=hit[1]))
        if stop_at_failure:
            break
    return SeedCheckReport(k, b, n_max, tuple(checks))


# --- pandigital seeds --------------------------------------------------------


class PandigitalError(ValueError):
    def __init__(self, k: int, digit: int, reason: str):
        self.k = k
        self.digit = digit
        super().__init__(f"k={k} is not a pandigital seed: digit {digit}: {reason}")


@dataclass(frozen=True)
class PandigitalCertificate:
    k: int
    certificates: dict[int, CoverCertificate]
    gcds: dict[int, int]

    def cover(self, d: int) -> PrimeCover:
        return self.certificates[d].cover

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(self.certificates[d].cover.length for d in PANDIGITAL_DIGITS)

    def check(self) -> bool:
        return all(c.check() for c in self.certificates.values())


def pandigital_verify(
    k: int, pool: Iterable[int] | None = None, max_len: int = 120
) -> PandigitalCertificate:
    """Find and verify one cover of ``k`` for each of the digits 1, 3, 7, 9.

    ``gcds`` reports ``gcd(k, m)`` for ``m`` in 2, 3, 5, 7, 10, 21 and 210.
    Raises ``PandigitalError`` naming the first digit without a cover.
    """
    gcds = {m: gcd(k, m) for m in (2, 3, 5, 7, 10, 21, 210)}
    certs = {}
    for d in PANDIGITAL_DIGITS:
        spec = SequenceSpec(k, d)
        if not spec.coprime:
            raise PandigitalError(k, d, f"k shares the factor {gcd(k, d)} with the digit")
        cover = find_cover(spec, pool, max_len)
        if cover is None:
            hit = first_prime(spec, 50, prove=False)
            why = f"s_{hit[0]} is {hit[1].describe()}" if hit else "no cover within the pool"
            raise PandigitalError(k, d, why)
        certs[d] = verify_cover(spec, cover)
    return PandigitalCertificate(k, certs, gcds)


def pandigital_solution(
    pool: Iterable[int] = PANDIGITAL_POOL, max_len: int = 30, objective: str = "canonical"
) -> CoherentSolution:
    sol = find_coherent_covers(PANDIGITAL_DIGITS, pool, max_len, 10, objective)
    if sol is None:
        raise ValueError("no coherent covers for the digits 1, 3, 7, 9 within the pool")
    return sol


def pandigital_family(
    pool: Iterable[int] = PANDIGITAL_POOL, max_len: int = 30, objective: str = "canonical"
) -> ProgressionFamily:
    """Seeds coprime to 2, 3, 5, 7 that are pandigital seeds: coherent covers plus ``k == 1 (mod 10)``."""
    sol = pandigital_solution(pool, max_len, objective)
    return crt_combine(sol.system.with_condition(1, 10))
