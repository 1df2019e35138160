"""Combine congruence conditions on the seed into one arithmetic progression."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Iterator

from digitcover.modular import ResidueClass

__all__ = [
    "CongruenceSystem",
    "IncompatibleCongruences",
    "ProgressionFamily",
    "crt_combine",
    "smallest_member",
]


class IncompatibleCongruences(ValueError):
    """Two conditions of a system admit no common solution."""

    def __init__(self, first: ResidueClass, second: ResidueClass):
        self.first = first
        self.second = second
        super().__init__(f"k = {first} and k = {second} are incompatible")


@dataclass(frozen=True)
class CongruenceSystem:
    """An ordered collection of conditions ``k == residue (mod modulus)``.

    Repeated identical conditions are merged. Two conditions on the same
    modulus with different residues raise immediately; other conflicts only
    surface in :func:`crt_combine`.
    """

    conditions: tuple[ResidueClass, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        merged: dict[int, ResidueClass] = {}
        for c in self.conditions:
            prev = merged.get(c.modulus)
            if prev is not None and prev != c:
                raise IncompatibleCongruences(prev, c)
            merged[c.modulus] = c
        object.__setattr__(self, "conditions", tuple(merged.values()))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "CongruenceSystem":
        """Build from ``(residue, modulus)`` pairs."""
        return cls(tuple(ResidueClass.of(r, m) for r, m in pairs))

    def __iter__(self) -> Iterator[ResidueClass]:
        return iter(self.conditions)

    def __len__(self) -> int:
        return len(self.conditions)

    def __contains__(self, k: int) -> bool:
        return all(k in c for c in self.conditions)

    def residue_for(self, modulus: int) -> int | None:
        for c in self.conditions:
            if c.modulus == modulus:
                return c.residue
        return None

    def with_condition(self, residue: int, modulus: int) -> "CongruenceSystem":
        return CongruenceSystem(self.conditions + (ResidueClass.of(residue, modulus),))

    def union(self, other: "CongruenceSystem") -> "CongruenceSystem":
        return CongruenceSystem(self.conditions + other.conditions)

    def sorted(self) -> "CongruenceSystem":
        return CongruenceSystem(tuple(sorted(self.conditions, key=lambda c: (c.modulus, c.residue))))


@dataclass(frozen=True)
class ProgressionFamily:
    """The seeds ``residue + j*modulus``; displayed residue first."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise ValueError(f"invalid progression {self.residue} (mod {self.modulus})")

    def __contains__(self, k: int) -> bool:
        return k % self.modulus == self.residue

    def member(self, index: int) -> int:
        """The ``index``-th positive member (0-based)."""
        first = self.residue or self.modulus
        return first + index * self.modulus

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def _merge(a: int, m: int, b: int, n: int) -> tuple[int, int] | None:
    g = gcd(m, n)
    if (b - a) % g:
        return None
    lcm = m // g * n
    # a + m*t == b (mod n)  =>  t == (b-a)/g * (m/g)^-1 (mod n/g)
    t = (b - a) // g * pow(m // g, -1, n // g) % (n // g)
    return (a + m * t) % lcm, lcm


def crt_combine(system: CongruenceSystem | Iterable[ResidueClass]) -> ProgressionFamily:
    """Solve all conditions simultaneously; moduli need not be coprime.

    A system is solvable iff its conditions are pairwise compatible, so on
    failure the first pairwise conflict is reported.
    """
    conds = list(system)
    if not conds:
        raise ValueError("empty congruence system")
    x, m = conds[0].residue, conds[0].modulus
    for j, c in enumerate(conds[1:], start=1):
        merged = _merge(x, m, c.residue, c.modulus)
        if merged is None:
            for earlier in conds[:j]:
                if _merge(earlier.residue, earlier.modulus, c.residue, c.modulus) is None:
                    raise IncompatibleCongruences(earlier, c)
            raise AssertionError("pairwise-compatible system failed to merge")
        x, m = merged
    return ProgressionFamily(x, m)


def smallest_member(
    family: ProgressionFamily,
    coprime_to: int | None = None,
    predicate: Callable[[int], bool] | None = None,
    max_steps: int = 100_000,
) -> int:
    """Smallest positive member, optionally coprime to ``coprime_to`` and passing ``predicate``."""
    k = family.residue or family.modulus
    for _ in range(max_steps):
        if (coprime_to is None or gcd(k, coprime_to) == 1) and (predicate is None or predicate(k)):
            return k
        k += family.modulus
    raise ValueError(f"no member of {family} within {max_steps} steps satisfies the condition")
