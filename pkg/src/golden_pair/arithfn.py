"""Euler totient and Möbius tables, brute-force oracles and divisor sums."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass, replace
from itertools import repeat
from math import gcd

from .errors import ContractError, ResourceError, TableTooSmallError

logger = logging.getLogger(__name__)

# Index 0 of every table is a placeholder; valid indices start at 1.
_UNUSED = 0


@dataclass(frozen=True)
class ArithFnTable:
    """Sieved phi(n), mu(n) and smallest prime factors for 1 <= n <= limit.

    phi(1) = 1 follows the divisor-sum identity rather than the literal
    "less than n" count, which would give 0.
    """

    limit: int
    totient: tuple[int, ...]
    moebius: tuple[int, ...]
    smallest_prime_factor: tuple[int, ...]

    def require(self, n: int) -> None:
        """Raise unless 1 <= n <= limit."""
        if n < 1:
            raise ContractError(f"index must be >= 1, got {n}")
        if n > self.limit:
            raise TableTooSmallError(required=n, available=self.limit)

    def weight(self, kind: str) -> tuple[int, ...]:
        """The phi or mu column for a series weight name."""
        match kind:
            case "totient":
                return self.totient
            case "moebius":
                return self.moebius
        raise ContractError(f"unknown weight {kind!r}")

    def with_overrides(
        self,
        totient: dict[int, int] | None = None,
        moebius: dict[int, int] | None = None,
    ) -> "ArithFnTable":
        """Copy of the table with individual entries replaced (mutation testing)."""
        phi = list(self.totient)
        mu = list(self.moebius)
        for n, value in (totient or {}).items():
            self.require(n)
            phi[n] = value
        for n, value in (moebius or {}).items():
            self.require(n)
            mu[n] = value
        return replace(self, totient=tuple(phi), moebius=tuple(mu))


def sieve_build(limit: int) -> ArithFnTable:
    """Linear sieve over 1..limit filling spf, phi and mu in one pass.

    Raises:
        ContractError: If limit < 1.
        ResourceError: If the tables cannot be allocated.
    """
    if limit < 1:
        raise ContractError(f"sieve limit must be >= 1, got {limit}")

    try:
        spf = [_UNUSED] * (limit + 1)
        phi = [_UNUSED] * (limit + 1)
        mu = [_UNUSED] * (limit + 1)
    except MemoryError:
        raise ResourceError(
            f"cannot allocate sieve tables for limit {limit} "
            f"(3 x {limit + 1} integer slots)"
        )

    phi[1] = 1
    mu[1] = 1
    primes: list[int] = []

    for i in range(2, limit + 1):
        if spf[i] == _UNUSED:
            spf[i] = i
            phi[i] = i - 1
            mu[i] = -1
            primes.append(i)
        for p in primes:
            ip = i * p
            if p > spf[i] or ip > limit:
                break
            spf[ip] = p
            if p == spf[i]:
                phi[ip] = phi[i] * p
                mu[ip] = 0
            else:
                phi[ip] = phi[i] * (p - 1)
                mu[ip] = -mu[i]

    logger.debug("sieved %d values, %d primes", limit, len(primes))
    return ArithFnTable(
        limit=limit,
        totient=tuple(phi),
        moebius=tuple(mu),
        smallest_prime_factor=tuple(spf),
    )


# Independent oracles

def brute_totient(n: int) -> int:
    """Count m in 1..n with gcd(m, n) = 1; gives phi(1) = 1."""
    if n < 1:
        raise ContractError(f"totient needs n >= 1, got {n}")
    return sum(1 for g in map(gcd, range(1, n + 1), repeat(n)) if g == 1)


def brute_moebius(n: int) -> int:
    """mu(n) by trial division."""
    if n < 1:
        raise ContractError(f"moebius needs n >= 1, got {n}")
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    if n > 1:
        sign = -sign
    return sign


# Divisor sums

def factorize(n: int, table: ArithFnTable) -> list[tuple[int, int]]:
    """Prime factorization of n as (prime, exponent) pairs, via the spf column."""
    table.require(n)
    factors: list[tuple[int, int]] = []
    spf = table.smallest_prime_factor
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return factors


def divisors(n: int, table: ArithFnTable) -> Iterator[int]:
    """All positive divisors of n, in no particular order."""
    result = [1]
    for p, e in factorize(n, table):
        result = [d * p ** k for d in result for k in range(e + 1)]
    yield from result


def divisor_sum_totient(n: int, table: ArithFnTable) -> int:
    """Sum of phi(d) over d | n; equals n."""
    phi = table.totient
    return sum(phi[d] for d in divisors(n, table))


def divisor_sum_moebius(n: int, table: ArithFnTable) -> int:
    """Sum of mu(d) over d | n; 1 when n = 1, else 0."""
    mu = table.moebius
    return sum(mu[d] for d in divisors(n, table))


def totient_via_moebius(n: int, table: ArithFnTable) -> int:
    """n * sum(mu(d)/d for d | n), evaluated as sum(mu(d) * (n // d))."""
    mu = table.moebius
    return sum(mu[d] * (n // d) for d in divisors(n, table))


def dump_rows(table: ArithFnTable) -> Iterator[str]:
    """``n<TAB>phi(n)<TAB>mu(n)`` lines for n = 1..limit."""
    for n in range(1, table.limit + 1):
        yield f"{n}\t{table.totient[n]}\t{table.moebius[n]}"
