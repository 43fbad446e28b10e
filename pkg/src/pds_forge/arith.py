"""Small exact integer helpers: factorization, primality, square testing.

Everything here works on unbounded Python ints; no floating point is used
anywhere in the package.
"""

from math import isqrt


def factorint(n: int) -> dict[int, int]:
    """Factor n >= 1 by trial division, returning {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorint(n)) == 1


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def prime_support(n: int) -> frozenset[int]:
    """The set of primes dividing n (empty for n = 1)."""
    return frozenset(factorint(n))
