"""Exact integer and modular arithmetic primitives.

Prime generation, deterministic primality, quadratic residues and the
cyclic decomposition of (Z/mZ)^x.  Everything here is pure and returns
immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import ConfigurationError, DomainError

# Deterministic Miller-Rabin witness set; correct for every n < 3.3e24,
# in particular below 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_SIEVE_BOUND = 1 << 40
_SEGMENT_THRESHOLD = 10**7
_SEGMENT_SIZE = 1 << 20


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``bound``, strictly increasing."""

    bound: int
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


@dataclass(frozen=True)
class UnitGroup:
    """Cyclic decomposition of (Z/mZ)^x.

    ``generators[i]`` has exact order ``orders[i]`` and the group is the
    internal direct product of the cyclic pieces, so ``prod(orders)``
    equals phi(modulus).
    """

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    def order(self) -> int:
        n = 1
        for k in self.orders:
            n *= k
        return n


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2^64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _simple_sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, bound + 1, i)))
    return [i for i in range(2, bound + 1) if flags[i]]


def sieve_primes(bound: int) -> PrimeTable:
    """Primes up to ``bound``; segmented above 10^7 to bound memory."""
    if not 2 <= bound <= MAX_SIEVE_BOUND:
        raise ConfigurationError(f"sieve bound {bound} outside [2, 2^40]")
    if bound <= _SEGMENT_THRESHOLD:
        return PrimeTable(bound, tuple(_simple_sieve(bound)))
    base = _simple_sieve(isqrt(bound))
    primes = list(base)
    lo = isqrt(bound) + 1
    while lo <= bound:
        hi = min(lo + _SEGMENT_SIZE, bound + 1)
        flags = bytearray([1]) * (hi - lo)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            flags[start - lo :: p] = bytes(len(range(start, hi, p)))
        primes.extend(lo + i for i, f in enumerate(flags) if f)
        lo = hi
    return PrimeTable(bound, tuple(primes))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0; equals Legendre when n is prime."""
    if n <= 0 or n % 2 == 0:
        raise DomainError("jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_symbol(a: int, l: int) -> int:
    """Legendre symbol (a/l): 0 if l | a, +1 for nonzero squares, -1 otherwise."""
    if l == 2 or not is_prime(l):
        raise DomainError(f"{l} is not an odd prime")
    return jacobi(a, l)


def sqrt_mod(a: int, l: int) -> int | None:
    """A square root of a mod prime l, or None when a is a nonresidue.

    Deterministic: the Tonelli-Shanks nonresidue is the smallest one.
    """
    a %= l
    if a == 0:
        return 0
    if l == 2:
        return a
    if pow(a, (l - 1) // 2, l) != 1:
        return None
    if l % 4 == 3:
        return pow(a, (l + 1) // 4, l)
    q, s = l - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (l - 1) // 2, l) != l - 1:
        z += 1
    m, c, t, r = s, pow(z, q, l), pow(a, q, l), pow(a, (q + 1) // 2, l)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % l
            i += 1
        b = pow(c, 1 << (m - i - 1), l)
        m, c, t, r = i, b * b % l, t * b * b % l, r * b % l
    return r


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; intended for n with small factors."""
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                n //= p
                out[p] = out.get(p, 0) + 1
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(m: int) -> int:
    phi = 1
    for p, e in factorize(m).items():
        phi *= p ** (e - 1) * (p - 1)
    return phi


def _primitive_root_mod_prime_power(p: int, e: int) -> int:
    # smallest primitive root mod p, lifted to p^e
    qs = list(factorize(p - 1))
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def unit_group(m: int) -> UnitGroup:
    """Generators and orders of (Z/mZ)^x, one cyclic factor per CRT piece."""
    if m < 2:
        raise DomainError("unit_group needs m >= 2")
    local: list[tuple[int, int, int]] = []  # (prime power q, generator mod q, order)
    for p, e in sorted(factorize(m).items()):
        q = p**e
        if p == 2:
            if e == 2:
                local.append((q, 3, 2))
            elif e >= 3:
                local.append((q, q - 1, 2))
                local.append((q, 5, 1 << (e - 2)))
        else:
            local.append((q, _primitive_root_mod_prime_power(p, e), p ** (e - 1) * (p - 1)))
    gens: list[int] = []
    orders: list[int] = []
    for q, g, order in local:
        rest = m // q
        # CRT: congruent to g mod q and to 1 mod m/q
        x = g if rest == 1 else (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % m
        gens.append(x)
        orders.append(order)
    return UnitGroup(m, tuple(gens), tuple(orders))


def span(generators: tuple[int, ...] | list[int], m: int) -> frozenset[int]:
    """Subgroup of (Z/mZ)^x generated by ``generators`` (closure under products)."""
    for g in generators:
        if gcd(g, m) != 1:
            raise DomainError(f"{g} is not a unit mod {m}")
    members = {1}
    frontier = [1]
    gens = [g % m for g in generators]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % m
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise DomainError(f"{a} is not a unit mod {m}")
    order = 1
    x = a % m
    while x != 1:
        x = x * a % m
        order += 1
    return order


def integer_nth_root(x: int, e: int) -> int:
    """Largest y >= 0 with y**e <= x, by integer binary search (no floats)."""
    if x < 0 or e < 1:
        raise DomainError("integer_nth_root needs x >= 0 and e >= 1")
    if x in (0, 1) or e == 1:
        return x
    hi = 1 << (x.bit_length() // e + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**e <= x:
            lo = mid
        else:
            hi = mid
    return lo
