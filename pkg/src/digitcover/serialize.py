"""Stable text formats for covers, congruence systems and elimination reports.

Covers and systems are JSON objects with sorted keys and integers written in
full, so big seeds survive a round trip:

    {"base": 10, "digit": 7, "seed": 891, "length": 6,
     "primes": [11, 37, 11, 3, 11, 13],
     "conditions": [{"modulus": 3, "residue": 0}, ...]}

``seed`` is optional. ``conditions`` lists the seed congruences the cover
imposes, sorted by modulus. A congruence system alone is the same object
without ``digit``, ``length`` or ``primes``.

Elimination reports are line oriented, one candidate per line::

    # digitcover elimination v1
    # digit=9 base=10 below=10175 n_max=2000 rounds=20
    1 eliminated 1 proven:trial-division
    10 trivial - factor:2
    4420 survivor 2000 composite:2000
    # summary candidates=... eliminated=... covered=... trivial=... survivors=4420,7018

The witness column is ``proven:<method>`` or ``probable:<rounds>`` for an
eliminated candidate, the comma-joined cover for a covered one, ``factor:<p>``
for a trivial one, and ``composite:<count of witnessed terms>`` for a survivor.
"""

from __future__ import annotations

import json
from typing import Any

from digitcover.cover import (
    CoherentSolution,
    PrimeCover,
    cover_assignment,
    cover_conditions,
)
from digitcover.crt import CongruenceSystem, IncompatibleCongruences, ProgressionFamily
from digitcover.primality import Verdict
from digitcover.search import CandidateRecord, EliminationReport

__all__ = [
    "cover_from_json",
    "cover_to_json",
    "dumps",
    "report_from_text",
    "report_to_text",
    "solution_to_json",
    "system_from_json",
    "system_to_json",
]

REPORT_HEADER = "# digitcover elimination v1"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _conditions(system: CongruenceSystem) -> list[dict[str, int]]:
    return [{"modulus": c.modulus, "residue": c.residue} for c in system.sorted()]


def system_to_json(system: CongruenceSystem, base: int = 10, seed: int | None = None) -> dict:
    out: dict[str, Any] = {"base": base, "conditions": _conditions(system)}
    if seed is not None:
        out["seed"] = seed
    return out


def system_from_json(obj: dict | str) -> CongruenceSystem:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return CongruenceSystem.of((c["residue"], c["modulus"]) for c in obj["conditions"])


def cover_to_json(cover: PrimeCover, digit: int, base: int = 10, seed: int | None = None) -> dict:
    try:
        conds = _conditions(cover_conditions(cover_assignment(cover), digit, base))
    except (IncompatibleCongruences, ValueError):
        conds = []
    out: dict[str, Any] = {
        "base": base,
        "digit": digit,
        "length": cover.length,
        "primes": list(cover.primes),
        "conditions": conds,
    }
    if seed is not None:
        out["seed"] = seed
    return out


def cover_from_json(obj: dict | str) -> tuple[PrimeCover, int, int, int | None]:
    """Returns ``(cover, digit, base, seed)``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    cover = PrimeCover(tuple(obj["primes"]))
    if obj.get("length", cover.length) != cover.length:
        raise ValueError("length field disagrees with the prime list")
    return cover, obj["digit"], obj.get("base", 10), obj.get("seed")


def solution_to_json(sol: CoherentSolution, family: ProgressionFamily | None = None) -> dict:
    out: dict[str, Any] = {
        "base": sol.base,
        "seed": sol.seed,
        "covers": [cover_to_json(sol.covers[d], d, sol.base) for d in sol.digits],
        "conditions": _conditions(sol.system),
    }
    if family is not None:
        out["family"] = {"residue": family.residue, "modulus": family.modulus}
    return out


# --- elimination reports ----------------------------------------------------


def _record_line(r: CandidateRecord) -> str:
    n = "-" if r.n is None else str(r.n)
    return f"{r.k} {r.status} {n} {r.witness_text()}"


def report_to_text(report: EliminationReport) -> str:
    s = report.summary()
    lines = [
        REPORT_HEADER,
        f"# digit={report.d} base={report.b} below={report.k_limit} "
        f"n_max={report.n_max} rounds={report.rounds}",
    ]
    lines.extend(_record_line(r) for r in report.records)
    lines.append(
        f"# summary candidates={s['candidates']} eliminated={s['eliminated']} "
        f"covered={s['covered']} trivial={s['trivial']} "
        f"survivors={','.join(map(str, s['survivors'])) or '-'}"
    )
    return "\n".join(lines) + "\n"


def _parse_fields(line: str) -> dict[str, str]:
    return dict(item.split("=", 1) for item in line[1:].split() if "=" in item)


def _parse_record(line: str) -> CandidateRecord:
    k, status, n, witness = line.split()
    kk = int(k)
    nn = None if n == "-" else int(n)
    if status == "eliminated":
        kind, value = witness.split(":", 1)
        if kind == "probable":
            v = Verdict("probable", rounds=int(value))
        else:
            v = Verdict("proven", certificate=value)
        return CandidateRecord(kk, status, nn, verdict=v)
    if status == "covered":
        return CandidateRecord(kk, status, nn, cover=PrimeCover.parse(witness))
    if status == "trivial":
        return CandidateRecord(kk, status, nn, factor=int(witness.split(":", 1)[1]))
    if status == "survivor":
        return CandidateRecord(kk, status, nn)
    raise ValueError(f"unknown status {status!r}")


def report_from_text(text: str) -> EliminationReport:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != REPORT_HEADER:
        raise ValueError("not an elimination report")
    head = _parse_fields(lines[1])
    records = tuple(_parse_record(ln) for ln in lines[2:] if not ln.startswith("#"))
    report = EliminationReport(
        int(head["digit"]),
        int(head["base"]),
        int(head["below"]),
        int(head["n_max"]),
        int(head["rounds"]),
        records,
    )
    summary = [ln for ln in lines if ln.startswith("# summary")]
    if summary:
        got = _parse_fields(summary[-1])
        want = report.summary()
        if int(got["candidates"]) != want["candidates"]:
            raise ValueError("summary disagrees with the records")
    return report
