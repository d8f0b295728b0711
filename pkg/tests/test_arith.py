from math import isqrt

from suppscan.arith import (
    factorize,
    is_perfect_square,
    is_prime,
    iter_primes,
    primes_up_to,
    sorted_divisors,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


def test_is_prime_against_trial_division():
    def trial(n):
        if n < 2:
            return False
        return all(n % d for d in range(2, isqrt(n) + 1))

    for n in range(2, 3000):
        assert is_prime(n) == trial(n), n


def test_is_prime_large():
    assert is_prime(10**9 + 7)
    assert not is_prime(10**9 + 8)
    assert is_prime(999983)
    assert not is_prime(999983 * 999979)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10_000)) == 1229


def test_iter_primes_matches_sieve():
    stream = iter_primes(5)
    got = [next(stream) for _ in range(20)]
    assert got == [p for p in primes_up_to(100) if p >= 5][:20]


def test_factorize():
    assert factorize(1) == {}
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(419904) == {2: 6, 3: 8}
    assert factorize(97) == {97: 1}
    for n in range(1, 500):
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_sorted_divisors():
    assert sorted_divisors(1) == [1]
    assert sorted_divisors(12) == [1, 2, 3, 4, 6, 12]
    for n in range(1, 200):
        assert sorted_divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_is_perfect_square():
    squares = {k * k for k in range(50)}
    for n in range(-5, 2000):
        assert is_perfect_square(n) == (n in squares)
