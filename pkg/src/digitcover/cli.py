"""Command-line interface.

Results go to stdout: a short line per result in ``human`` format, JSON (or
the elimination report text) in ``machine`` format. Explanations, witness
tables and progress go to stderr. Exit status is 0 on success, 1 when a
verification or claim fails, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from digitcover import serialize
from digitcover.cover import OBJECTIVES, PANDIGITAL_POOL, CoverError, PrimeCover, find_cover, verify_cover
from digitcover.crt import crt_combine
from digitcover.search import (
    PandigitalError,
    ProbablePrimeFound,
    all_digit_seed_check,
    eliminate_below,
    pandigital_solution,
    pandigital_verify,
    verify_seed_bounded,
)
from digitcover.sequence import SequenceSpec, append_digits, to_base

OK, FAIL, USAGE = 0, 1, 2


class _Out:
    def __init__(self, fmt: str):
        self.machine = fmt == "machine"

    def result(self, human: str, machine: object | None = None) -> None:
        if self.machine:
            text = machine if isinstance(machine, str) else serialize.dumps(machine)
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        else:
            print(human)

    def note(self, text: str) -> None:
        print(text, file=sys.stderr)


def _pool(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime pool {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    return p


def _search_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n-max", type=int, default=2000)
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--pool", type=str, default=None, help="comma-separated primes")
    p.add_argument("--max-len", type=int, default=120)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--progress", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, search = _common(), _search_flags()
    parser = argparse.ArgumentParser(prog="digitcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("append", parents=[common], help="print s_n")
    ap.add_argument("k", type=int)
    ap.add_argument("d", type=int)
    ap.add_argument("n", type=int)

    cp = sub.add_parser("cover", help="verify or find a prime cover")
    csub = cp.add_subparsers(dest="action", required=True)
    cv = csub.add_parser("verify", parents=[common])
    cv.add_argument("k", type=int)
    cv.add_argument("d", type=int)
    cv.add_argument("primes")
    cf = csub.add_parser("find", parents=[common, search])
    cf.add_argument("k", type=int)
    cf.add_argument("d", type=int)

    sp = sub.add_parser("seed", help="seed verification and searches")
    ssub = sp.add_subparsers(dest="action", required=True)
    sv = ssub.add_parser("verify", parents=[common, search])
    sv.add_argument("k", type=int)
    sv.add_argument("d", type=int)
    se = ssub.add_parser("eliminate", parents=[common, search])
    se.add_argument("--digit", type=int, required=True)
    se.add_argument("--below", type=int, required=True)
    sa = ssub.add_parser("all-digits", parents=[common, search])
    sa.add_argument("k", type=int)
    spd = ssub.add_parser("pandigital", parents=[common, search])
    spd.add_argument("k", type=int)
    sf = ssub.add_parser("family", parents=[common])
    sf.add_argument("--pool", type=str, default=None)
    sf.add_argument("--max-len", type=int, default=30)
    sf.add_argument("--objective", choices=sorted(OBJECTIVES), default="canonical")
    return parser


def _cmd_append(a, out: _Out) -> int:
    spec = SequenceSpec(a.k, a.d, a.base)
    if a.n < 0:
        raise ValueError("n must be >= 0")
    s = append_digits(spec, a.n)
    out.result(str(s), {"base": a.base, "digit": a.d, "seed": a.k, "n": a.n, "value": s, "rendered": to_base(s, a.base)})
    if a.base != 10 and not out.machine:
        out.note(f"base {a.base}: {to_base(a.k, a.base)} + {to_base(a.d, a.base) * a.n}")
    return OK


def _cmd_cover(a, out: _Out) -> int:
    spec = SequenceSpec(a.k, a.d, a.base)
    if a.action == "find":
        cover = find_cover(spec, _pool(a.pool), a.max_len)
        if cover is None:
            out.result("NONE", {"base": a.base, "digit": a.d, "seed": a.k, "found": False})
            return FAIL
        out.result(str(cover), serialize.cover_to_json(cover, a.d, a.base, a.k))
        return OK
    cover = PrimeCover.parse(a.primes)
    try:
        cert = verify_cover(spec, cover)
    except CoverError as e:
        obj = serialize.cover_to_json(cover, a.d, a.base, a.k)
        obj.update(valid=False, reason=e.reason, index=e.index)
        out.result("FAIL", obj)
        out.note(f"{e}")
        return FAIL
    obj = serialize.cover_to_json(cover, a.d, a.base, a.k)
    obj["valid"] = True
    out.result("OK", obj)
    if not out.machine:
        out.note("index  n  prime")
        for w in cert.witnesses:
            out.note(f"{w.index:>5} {w.n:>2}  {w.prime}")
    return OK


def _progress(enabled: bool):
    if not enabled:
        return None

    def report(done: int, total: int) -> None:
        if done == total or done % 100 == 0:
            print(f"checked {done}/{total}", file=sys.stderr, flush=True)

    return report


def _cmd_seed(a, out: _Out) -> int:
    if a.action == "verify":
        spec = SequenceSpec(a.k, a.d, a.base)
        try:
            scan = verify_seed_bounded(spec, a.n_max, a.rounds, _pool(a.pool))
        except ProbablePrimeFound as e:
            out.result(
                f"PRIME n={e.n} {e.verdict.describe()}",
                {"base": a.base, "digit": a.d, "seed": a.k, "prime_n": e.n, "status": e.verdict.status},
            )
            return FAIL
        if scan.cover is not None:
            out.result(f"SEED cover {scan.cover}", serialize.cover_to_json(scan.cover, a.d, a.base, a.k))
        else:
            out.result(
                f"COMPOSITE to n={a.n_max}",
                {"base": a.base, "digit": a.d, "seed": a.k, "n_max": a.n_max, "composite": True},
            )
        return OK
    if a.action == "eliminate":
        report = eliminate_below(
            a.below, a.digit, a.base, a.n_max, a.rounds, _pool(a.pool), a.max_len,
            jobs=a.jobs, progress=_progress(a.progress), keep_witnesses=False,
        )
        text = serialize.report_to_text(report)
        surv = ", ".join(map(str, report.survivors)) or "none"
        out.result(f"survivors {surv}", text)
        if not out.machine:
            s = report.summary()
            out.note(f"candidates {s['candidates']}, eliminated {s['eliminated']}, covered {s['covered']}, trivial {s['trivial']}")
        return OK
    if a.action == "all-digits":
        rep = all_digit_seed_check(a.k, a.n_max, a.base, a.rounds, _pool(a.pool))
        rows = []
        for c in rep.digits:
            detail = {"trivial": c.factor, "cover": str(c.cover) if c.cover else None, "scan": c.n, "prime": c.n}[c.method]
            rows.append({"digit": c.d, "method": c.method, "detail": detail})
            out.note(f"d={c.d} {c.method} {detail}")
        fail = rep.failure
        human = "PASS" if rep.passed else f"FAIL d={fail.d} n={fail.n}"
        out.result(human, {"base": a.base, "seed": a.k, "n_max": a.n_max, "passed": rep.passed, "digits": rows})
        return OK if rep.passed else FAIL
    if a.action == "pandigital":
        try:
            cert = pandigital_verify(a.k, _pool(a.pool), a.max_len)
        except PandigitalError as e:
            out.result(f"FAIL {e}", {"seed": a.k, "valid": False, "digit": e.digit})
            return FAIL
        lines = [f"{d}: {cert.cover(d)}" for d in sorted(cert.certificates)]
        out.result(
            "\n".join(lines),
            {"seed": a.k, "valid": True, "covers": [serialize.cover_to_json(cert.cover(d), d, 10, a.k) for d in sorted(cert.certificates)]},
        )
        out.note("gcds " + ", ".join(f"gcd(k,{m})={g}" for m, g in cert.gcds.items()))
        return OK
    # family
    pool = _pool(a.pool) or PANDIGITAL_POOL
    sol = pandigital_solution(pool, a.max_len, a.objective)
    fam = crt_combine(sol.system.with_condition(1, 10))
    out.result(f"residue {fam.residue}\nmodulus {fam.modulus}", serialize.solution_to_json(sol, fam))
    if not out.machine:
        out.note(f"smallest seed of the cover system: {sol.seed}")
        for d in sol.digits:
            out.note(f"{d}: {sol.covers[d]}")
    return OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    out = _Out(getattr(a, "format", "human"))
    handler = {"append": _cmd_append, "cover": _cmd_cover, "seed": _cmd_seed}[a.command]
    try:
        return handler(a, out)
    except (ValueError, argparse.ArgumentTypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
