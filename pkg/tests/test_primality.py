import pytest
from hypothesis import given, strategies as st

from digitcover.primality import (
    Verdict,
    is_probable_prime,
    is_strong_witness,
    lucas_n_plus_one_prove,
    lucas_uv,
    primes_below,
    small_factor,
)
from digitcover.search import first_prime
from digitcover.sequence import SequenceSpec, append_digits


@pytest.fixture(scope="module")
def sieve():
    n = 10**6
    flags = bytearray([1]) * n
    flags[0] = flags[1] = 0
    for p in range(2, 1001):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, n, p)))
    return flags


def test_agreement_with_sieve_below_million(sieve):
    for n in range(2, 10**6):
        v = is_probable_prime(n, 20)
        assert v.maybe_prime == bool(sieve[n]), n
        if sieve[n]:
            assert v.status == "proven"
        else:
            assert v.check(n)


def test_examples():
    v = is_probable_prime(8917)
    assert v.is_composite and v.witness_kind == "factor" and v.witness == 37
    assert is_probable_prime(37).status == "proven"
    v = is_probable_prime(371111)
    assert v.witness == 13


def test_strong_pseudoprimes_caught():
    # 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7
    n = 3215031751
    assert not any(is_strong_witness(n, a) for a in (2, 3, 5, 7))
    v = is_probable_prime(n, 20)
    assert v.is_composite and v.check(n)
    # 3825123056546413051 fools bases 2..23 but not the 10th prime, 29,
    # and has no factor below the trial bound.
    m = 3825123056546413051
    assert small_factor(m) is None
    v = is_probable_prime(m, 9)
    assert v.status == "probable"
    v = is_probable_prime(m, 13)
    assert v.is_composite and v.witness_kind == "mr" and v.check(m)


def test_large_known_primes():
    for p in (2**89 - 1, 2**127 - 1, 10**100 + 267):
        v = is_probable_prime(p, 20)
        assert v.status == "probable" and v.rounds == 20
    assert is_probable_prime(2**61 - 1, 13).status == "proven"
    v = is_probable_prime(2**89 + 1, 20)
    assert v.is_composite and v.check(2**89 + 1)


@given(st.integers(2, 10**40), st.integers(2, 10**40))
def test_products_are_composite(a, b):
    n = a * b
    v = is_probable_prime(n, 5)
    assert v.is_composite and v.check(n)


def test_witness_check_rejects_forgeries():
    assert not Verdict("composite", "factor", 7).check(8917)
    assert not Verdict("composite", "mr", 2).check(101)
    assert not Verdict("proven", certificate="x").check(7)


def test_lucas_sequences_small():
    # Fibonacci: P=1, Q=-1
    fib = [0, 1]
    for _ in range(60):
        fib.append(fib[-1] + fib[-2])
    for m in range(60):
        assert lucas_uv(1, -1, m, 10**9 + 7)[0] == fib[m] % (10**9 + 7)


def _factor(n):
    out, q = {}, 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_lucas_examples():
    # 449999 = 11^2 * 3719 and 89999 = 7 * 13 * 23 * 43 are composite
    assert 449999 == 11**2 * 3719 and 89999 == 7 * 13 * 23 * 43
    assert lucas_n_plus_one_prove(449999, {2: 4, 3: 2, 5: 5}).is_composite
    assert lucas_n_plus_one_prove(89999, {2: 4, 3: 2, 5: 4}).is_composite
    assert lucas_n_plus_one_prove(9, {2: 1, 5: 1}).is_composite
    v = lucas_n_plus_one_prove(449, {2: 1, 3: 2, 5: 2})
    assert v.status == "proven"


def test_lucas_never_proves_composites_below_million(sieve):
    for kk in range(1, 10**5 + 1):
        n = 1
        while kk * 10**n - 1 < 10**6:
            N = kk * 10**n - 1
            v = lucas_n_plus_one_prove(N, _factor(N + 1))
            if sieve[N]:
                assert v.status == "proven", N
            else:
                assert v.is_composite and v.check(N), N
            n += 1


def test_lucas_proves_large_digit9_primes():
    proved = 0
    for k in range(1, 300):
        if k % 3 == 0:
            continue
        hit = first_prime(SequenceSpec(k, 9), 120, prove=True)
        if hit is None:
            continue
        n, v = hit
        N = append_digits(SequenceSpec(k, 9), n)
        if N > 10**25:
            assert v.status == "proven" and v.certificate == "lucas-n+1", (k, n)
            proved += 1
    assert proved >= 3


def test_lucas_rejects_bad_factorizations():
    with pytest.raises(ValueError):
        lucas_n_plus_one_prove(449, {2: 1, 3: 2})
    with pytest.raises(ValueError):
        lucas_n_plus_one_prove(449, {2: 1, 9: 1, 5: 2})


def test_primes_below():
    assert primes_below(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert len(primes_below(10**4)) == 1229
