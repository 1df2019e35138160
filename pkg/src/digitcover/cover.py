"""Prime covers: verification, search, and coherent covers across digits.

A prime cover ``(p_0, ..., p_{r-1})`` for a family ``s_n`` asserts that
``p_{n mod r}`` divides ``s_n`` for every ``n >= 1``. Because the period of
each ``p_i`` divides ``r``, checking one representative per class suffices.
``s_0 = k`` is never part of the claim; the seed itself may be prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping

from digitcover.crt import CongruenceSystem, IncompatibleCongruences, crt_combine, smallest_member
from digitcover.modular import (
    ResidueClass,
    divides_s_n,
    hit_class,
    period,
    seed_residue_for_divisibility,
)
from digitcover.primality import is_probable_prime, primes_below
from digitcover.sequence import SequenceSpec, append_digits

__all__ = [
    "CoherentSolution",
    "CoverCertificate",
    "CoverError",
    "PANDIGITAL_POOL",
    "PrimeCover",
    "Witness",
    "cover_assignment",
    "cover_conditions",
    "default_pool",
    "find_coherent_covers",
    "find_cover",
    "iter_coherent_solutions",
    "verify_cover",
]

# The thirteen primes behind the published pandigital seed.
PANDIGITAL_POOL = (3, 7, 11, 13, 31, 37, 41, 73, 101, 137, 211, 241, 271)


def default_pool(b: int = 10, bound: int = 300, period_divides: int = 120) -> tuple[int, ...]:
    """Primes below ``bound``, coprime to ``b``, whose period divides ``period_divides``."""
    return tuple(
        p for p in primes_below(bound) if b % p and period_divides % period(p, b).r == 0
    )


class CoverError(ValueError):
    """A proposed cover fails verification.

    ``reason`` is one of ``"period"``, ``"not-divisible"``, ``"degenerate"``
    or ``"not-prime"``; ``index`` is the offending class.
    """

    def __init__(self, reason: str, index: int, message: str):
        self.reason = reason
        self.index = index
        super().__init__(message)


@dataclass(frozen=True)
class PrimeCover:
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if not self.primes:
            raise ValueError("a cover needs at least one prime")

    @property
    def length(self) -> int:
        return len(self.primes)

    def prime_for(self, n: int) -> int:
        return self.primes[n % len(self.primes)]

    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.primes)))

    def __str__(self) -> str:
        return ",".join(map(str, self.primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeCover":
        return cls(tuple(int(t) for t in text.replace("(", "").replace(")", "").split(",") if t.strip()))


@dataclass(frozen=True)
class Witness:
    index: int
    n: int
    prime: int
    quotient: int


@dataclass(frozen=True)
class CoverCertificate:
    """Checkable evidence that ``cover`` covers ``spec``: one witness per class."""

    spec: SequenceSpec
    cover: PrimeCover
    witnesses: tuple[Witness, ...]

    def check(self) -> bool:
        """Re-verify from scratch with exact integers and a brute-force period test."""
        r = self.cover.length
        if len(self.witnesses) != r:
            return False
        for i, w in enumerate(self.witnesses):
            if w.index != i or w.n % r != i or w.n < 1 or w.prime != self.cover.primes[i]:
                return False
            if w.quotient <= 1 or w.quotient * w.prime != append_digits(self.spec, w.n):
                return False
            # s_{n+r} == s_n (mod p) for all k, d  <=>  b^r == 1 and repunit(b, r) == 0 (mod p)
            b = self.spec.b
            if pow(b, r, w.prime) != 1 or (b**r - 1) // (b - 1) % w.prime:
                return False
        return True


def _representative(i: int, r: int) -> int:
    return i if i else r


def verify_cover(spec: SequenceSpec, cover: PrimeCover) -> CoverCertificate:
    """Verify that ``cover`` proves every ``s_n`` (``n >= 1``) composite.

    Raises ``CoverError`` at the first failing class.
    """
    spec.require_coprime()
    if spec.k < 1:
        raise ValueError("cover verification needs a positive seed")
    r = cover.length
    witnesses = []
    for i, p in enumerate(cover.primes):
        if gcd(p, spec.b) != 1:
            raise CoverError("period", i, f"prime {p} at index {i} divides the base {spec.b}")
        if is_probable_prime(p).status != "proven":
            raise CoverError("not-prime", i, f"{p} at index {i} is not a proven prime")
        per = period(p, spec.b).r
        if r % per:
            raise CoverError("period", i, f"period {per} of {p} does not divide cover length {r}")
        n = _representative(i, r)
        if not divides_s_n(p, spec, n):
            raise CoverError("not-divisible", i, f"representative n={n} not divisible by {p}")
        s = append_digits(spec, n)
        if s == p:
            raise CoverError("degenerate", i, f"s_{n} equals its covering prime {p}")
        witnesses.append(Witness(i, n, p, s // p))
    # For n > r, s_n >= b^n > b^r > p because p | b^r - 1.
    return CoverCertificate(spec, cover, tuple(witnesses))


def _hits_for_seed(spec: SequenceSpec, pool: Iterable[int]) -> list[tuple[int, int, frozenset[int]]]:
    """``(prime, period, classes n mod period hit)`` for pool primes that divide some ``s_n``."""
    out = []
    for p in pool:
        if spec.b % p == 0:
            continue
        per = period(p, spec.b).r
        classes = frozenset(hit_class(p, spec.d, spec.k % p, spec.b))
        if classes:
            out.append((p, per, classes))
    return out


def _mask(per: int, classes: Iterable[int], width: int) -> int:
    # Bit n set for every n < width with n mod per in classes.
    unit = 0
    for c in classes:
        unit |= 1 << c
    m, filled = unit, per
    while filled < width:
        m |= m << filled
        filled *= 2
    return m & ((1 << width) - 1)


def _shortest_cover(
    hits: list[tuple[int, int, frozenset[int]]],
    max_len: int,
    allowed=None,
) -> tuple[int, ...] | None:
    """Shortest cover from ``hits``, picking per class the prime of smallest period, then smallest value.

    ``allowed(p, n)`` may veto a prime for the representative ``n`` of a class.
    """
    if not hits:
        return None
    usable = [h for h in hits if h[1] <= max_len]
    if not usable:
        return None
    U = lcm(*(h[1] for h in usable))
    # Any cover has a length dividing lcm(periods used); so a cover exists
    # only if the union of hits is everything modulo U.
    if U <= 1 << 16:
        full = (1 << U) - 1
        union = 0
        for _, per, classes in usable:
            union |= _mask(per, classes, U)
        if union != full:
            return None
        lengths = [r for r in range(1, min(U, max_len) + 1) if U % r == 0]
    else:
        lengths = range(1, max_len + 1)
    ranked = sorted(usable, key=lambda h: (h[1], h[0]))
    for r in lengths:
        cands = [h for h in ranked if r % h[1] == 0]
        if not cands:
            continue
        union = 0
        for _, per, classes in cands:
            union |= _mask(per, classes, r)
        if union != (1 << r) - 1:
            continue
        chosen = []
        for i in range(r):
            n = _representative(i, r)
            for p, per, classes in cands:
                if i % per in classes and (allowed is None or allowed(p, n)):
                    chosen.append(p)
                    break
            else:
                break
        else:
            return tuple(chosen)
    return None


def find_cover(
    spec: SequenceSpec,
    pool: Iterable[int] | None = None,
    max_len: int = 120,
) -> PrimeCover | None:
    """Shortest prime cover for ``spec`` from ``pool``, or ``None``.

    Within the shortest length each class gets the admissible prime with the
    smallest period, ties going to the smaller prime. The result is passed
    through :func:`verify_cover` before it is returned.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    if not spec.coprime or spec.k < 1:
        return None
    pool = default_pool(spec.b) if pool is None else tuple(pool)
    hits = _hits_for_seed(spec, pool)

    def allowed(p: int, n: int) -> bool:
        # Only tiny terms can coincide with their covering prime.
        return append_digits(spec, n) != p if spec.k * spec.b < p + 1 else True

    primes = _shortest_cover(hits, max_len, allowed)
    if primes is None:
        return None
    cover = PrimeCover(primes)
    verify_cover(spec, cover)
    return cover


def cover_assignment(cover: PrimeCover) -> dict[ResidueClass, int]:
    """The classes ``n == i (mod r)`` of a cover mapped to their primes."""
    r = cover.length
    return {ResidueClass(i, r): p for i, p in enumerate(cover.primes)}


def cover_conditions(
    assignment: Mapping[ResidueClass | tuple[int, int], int],
    d: int,
    b: int = 10,
) -> CongruenceSystem:
    """Seed conditions making each assigned prime divide its class of ``n``.

    Keys are ``ResidueClass`` objects or ``(residue, modulus)`` pairs; a key's
    modulus must be a multiple of its prime's period. Raises
    ``IncompatibleCongruences`` when one prime is forced to two residues.
    """
    conds: list[ResidueClass] = []
    for key, p in assignment.items():
        cls = key if isinstance(key, ResidueClass) else ResidueClass.of(*key)
        per = period(p, b).r
        if cls.modulus % per:
            raise ValueError(f"class {cls} is not compatible with the period {per} of {p}")
        conds.append(seed_residue_for_divisibility(p, d, cls, b))
    return CongruenceSystem(tuple(conds))


# --- coherent covers ---------------------------------------------------------


@dataclass(frozen=True)
class CoherentSolution:
    """Per-digit covers whose seed conditions combine into one consistent system."""

    digits: tuple[int, ...]
    base: int
    covers: dict[int, PrimeCover]
    system: CongruenceSystem
    seed: int

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(self.covers[d].length for d in self.digits)

    def family(self):
        return crt_combine(self.system)


@dataclass
class _Tables:
    """Precomputed seed residues ``sr[p][d][n mod period]`` for a pool."""

    digits: tuple[int, ...]
    base: int
    pool: tuple[int, ...]
    per: dict[int, int]
    sr: dict[int, dict[int, tuple[int, ...]]]
    forbidden: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @classmethod
    def build(cls, digits, pool, base) -> "_Tables":
        pool = tuple(p for p in pool if base % p)
        per = {p: period(p, base).r for p in pool}
        sr = {
            p: {d: tuple(seed_residue_for_divisibility(p, d, n, base).residue for n in range(per[p])) for d in digits}
            for p in pool
        }
        # k == 0 (mod p) with p | d would make k share a factor with d.
        forbidden = frozenset((p, 0) for p in pool if any(d % p == 0 for d in digits))
        return cls(tuple(digits), base, pool, per, sr, forbidden)

    def hits(self, p: int, c: int, d: int, n: int) -> bool:
        return self.sr[p][d][n % self.per[p]] == c


def _covered(t: _Tables, asg: dict[int, int], d: int, cells: Iterable[int], W: int) -> bool:
    return all(any(W % t.per[p] == 0 and t.hits(p, c, d, n) for p, c in asg.items()) for n in cells)


def _enumerate(
    t: _Tables,
    cases: list[tuple[int, int, int]],
    widths: list[int],
    asg: dict[int, int],
) -> Iterator[dict[int, int]]:
    """Yield assignments ``prime -> residue`` covering every case.

    A case ``(d, cls, M)`` is the set of ``n == cls (mod M)`` for digit ``d``;
    it is resolved at a width ``W`` (a multiple of ``M``) by covering its
    subclasses modulo ``W`` with primes whose period divides ``W``. A width is
    only accepted when the case is not already covered at a proper divisor,
    which keeps each cover at its natural length.
    """

    def cells(cls: int, M: int, W: int) -> list[int]:
        return list(range(cls, W, M))

    def case(i: int) -> Iterator[dict[int, int]]:
        if i == len(cases):
            yield dict(asg)
            return
        d, cls, M = cases[i]
        ws = [W for W in widths if W % M == 0]
        for W in ws:
            if _covered(t, asg, d, cells(cls, M, W), W):
                yield from case(i + 1)
                return
        for W in ws:
            yield from fill(i, W, cells(cls, M, W))

    def fill(i: int, W: int, cs: list[int]) -> Iterator[dict[int, int]]:
        d, cls, M = cases[i]
        usable = [p for p in t.pool if W % t.per[p] == 0]
        best = None
        for n in cs:
            if any(p in asg and t.hits(p, asg[p], d, n) for p in usable):
                continue
            opts = []
            for p in usable:
                if p in asg:
                    continue
                c = t.sr[p][d][n % t.per[p]]
                if (p, c) not in t.forbidden:
                    opts.append((p, c))
            if not opts:
                return
            if best is None or len(opts) < len(best[1]):
                best = (n, opts)
        if best is None:
            for W2 in widths:
                if W2 < W and W % W2 == 0 and W2 % M == 0 and _covered(t, asg, d, cells(cls, M, W2), W2):
                    return
            yield from case(i + 1)
            return
        for p, c in best[1]:
            asg[p] = c
            yield from fill(i, W, cs)
            del asg[p]

    yield from case(0)


def _precommit(t: _Tables) -> dict[int, int] | None:
    """Zero residues for the period-2 and period-3 primes that divide ``b + 1`` and ``b**2 + b + 1``.

    With ``k == 0 (mod p)`` the prime divides every ``s_n`` with ``n == 0``
    modulo its period, whatever the digit. In base ten these are 11 and 37,
    which leave only ``n == 1, 5 (mod 6)`` open.
    """
    chosen = {}
    for want in (2, 3):
        cands = [
            p
            for p in t.pool
            if t.per[p] == want and (t.base - 1) % p and (p, 0) not in t.forbidden
        ]
        if not cands:
            return None
        chosen[min(cands)] = 0
    return chosen


def _solution(t: _Tables, asg: dict[int, int], max_len: int) -> CoherentSolution | None:
    system = CongruenceSystem(tuple(ResidueClass(c, p) for p, c in sorted(asg.items())))
    family = crt_combine(system)
    digit_lcm = lcm(*t.digits) if t.digits else 1
    try:
        seed = smallest_member(family, coprime_to=digit_lcm)
    except ValueError:
        return None
    covers = {}
    for d in t.digits:
        hits = []
        for p, c in asg.items():
            classes = frozenset(n for n in range(t.per[p]) if t.sr[p][d][n] == c)
            if classes:
                hits.append((p, t.per[p], classes))
        spec = SequenceSpec(seed, d, t.base)
        primes = _shortest_cover(hits, max_len, lambda p, n, spec=spec: append_digits(spec, n) != p)
        if primes is None:
            return None
        covers[d] = PrimeCover(primes)
    return CoherentSolution(t.digits, t.base, covers, system, seed)


def iter_coherent_solutions(
    digits: Iterable[int],
    pool: Iterable[int],
    max_len: int,
    base: int = 10,
    strategy: str = "heuristic",
) -> Iterator[CoherentSolution]:
    """Enumerate coherent solutions (duplicates removed).

    ``strategy="heuristic"`` first commits ``k == 0`` modulo the period-2 and
    period-3 primes and then resolves the classes they leave open, refining
    each into subclasses of up to ``max_len``. ``strategy="general"`` covers
    every digit from scratch; it is complete but far larger, so use it lazily.
    """
    digits = tuple(sorted(set(digits)))
    for d in digits:
        if not 0 < d < base:
            raise ValueError(f"digit {d} out of range for base {base}")
    t = _Tables.build(digits, tuple(pool), base)
    widths = list(range(1, max_len + 1))
    if strategy == "heuristic":
        start = _precommit(t)
        if start is None:
            return
        M = lcm(*(t.per[p] for p in start))
        cases = [
            (d, n, M)
            for d in digits
            for n in range(M)
            if not any(t.hits(p, c, d, n) for p, c in start.items())
        ]
    elif strategy == "general":
        start, cases = {}, [(d, 0, 1) for d in digits]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    seen = set()
    for asg in _enumerate(t, cases, widths, dict(start)):
        key = frozenset(asg.items())
        if key in seen:
            continue
        seen.add(key)
        sol = _solution(t, asg, max_len)
        if sol is not None:
            yield sol


def _zero_residues(sol: CoherentSolution) -> int:
    return sum(1 for c in sol.system if c.residue == 0)


OBJECTIVES = {
    # shortest covers digit by digit, then most k == 0 conditions, then smallest seed
    "canonical": lambda s: (s.lengths, -_zero_residues(s), s.seed),
    "smallest-seed": lambda s: (s.seed, s.lengths),
}


def find_coherent_covers(
    digits: Iterable[int],
    pool: Iterable[int] | None = None,
    max_len: int = 30,
    base: int = 10,
    objective: str = "canonical",
) -> CoherentSolution | None:
    """Best coherent solution over the heuristic search space, else the first general one.

    ``objective`` ranks the enumerated solutions:

    ``"canonical"``
        lexicographically shortest per-digit cover lengths, then the most
        conditions of the form ``k == 0 (mod p)`` (those primes serve every
        digit), then the smallest seed.
    ``"smallest-seed"``
        the smallest seed coprime to every digit.

    If the heuristic space is empty the general backtracking search runs and
    its first solution is returned.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    pool = default_pool(base) if pool is None else tuple(pool)
    key = OBJECTIVES[objective]
    best = min(iter_coherent_solutions(digits, pool, max_len, base), key=key, default=None)
    if best is not None:
        return best
    return next(iter_coherent_solutions(digits, pool, max_len, base, strategy="general"), None)


__all__ += ["IncompatibleCongruences", "CongruenceSystem", "OBJECTIVES"]
