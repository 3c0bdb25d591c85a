"""Abelian number fields and semidirect group descriptors.

A field K is encoded by its conductor m and the splitting subgroup
H <= (Z/mZ)^x that fixes it, so that an unramified prime l splits
completely in K exactly when l mod m lies in H.  The descriptor couples
K with an odd prime power p^n and a character chi0 from the quotient
group into (Z/p^n Z)^x, which pins down the semidirect product
Gal(K/Q) x| Z/p^n Z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd

from .arith import euler_phi, factorize, is_prime, span, unit_group
from .errors import ConfigurationError, DomainError, RamifiedPrimeError

MAX_MODULUS = 10**6


@dataclass(frozen=True)
class AbelianField:
    modulus: int
    subgroup_generators: tuple[int, ...]
    members: frozenset[int]
    degree: int

    def is_full_cyclotomic(self) -> bool:
        """True when the field is Q(mu_m) itself, i.e. H is trivial."""
        return len(self.members) == 1

    def describe(self) -> str:
        return f"(m={self.modulus}, |H|={len(self.members)}, degree={self.degree})"


def abelian_field(
    modulus: int,
    subgroup: tuple[int, ...] | list[int] = (),
    *,
    require_conductor: bool = True,
) -> AbelianField:
    """Field fixed by the subgroup generated by ``subgroup`` inside (Z/mZ)^x.

    With ``require_conductor`` (the default) the modulus must be the
    conductor: whenever H contains the kernel of reduction to a proper
    divisor of m the same field already has a smaller modulus and the
    input is rejected.  That exactness is what makes "l ramified in K
    iff l | m" true.
    """
    if not 3 <= modulus <= MAX_MODULUS:
        raise ConfigurationError(f"modulus {modulus} outside [3, {MAX_MODULUS}]")
    members = span(tuple(subgroup), modulus)
    degree = euler_phi(modulus) // len(members)
    if require_conductor:
        for q in sorted(factorize(modulus)):
            mq = modulus // q
            # reduction-to-mq kernel: units congruent to 1 mod mq
            kernel = [u for u in range(1, modulus, mq) if gcd(u, modulus) == 1]
            if all(u in members for u in kernel):
                raise ConfigurationError(
                    f"modulus {modulus} is not the conductor (reduces to {mq})"
                )
    gens = tuple(sorted({g % modulus for g in subgroup}))
    return AbelianField(modulus, gens, members, degree)


def splits_completely(field: AbelianField, l: int) -> bool:
    """Whether the unramified prime l splits completely in the field."""
    if field.modulus % l == 0:
        raise RamifiedPrimeError(f"{l} divides the conductor {field.modulus}")
    return l % field.modulus in field.members


def contains_cyclotomic(field: AbelianField, p: int, n: int) -> bool:
    """Whether the field contains the p^n-th cyclotomic field."""
    q = p**n
    if field.modulus % q != 0:
        return False
    return all(h % q == 1 for h in field.members)


def degree_over_mu_p(field: AbelianField, p: int) -> int:
    """Degree of the field over the p-th cyclotomic subfield."""
    if not contains_cyclotomic(field, p, 1):
        raise DomainError(f"field {field.describe()} does not contain mu_{p}")
    return field.degree // (p - 1)


@dataclass(frozen=True)
class SemidirectDescriptor:
    """(p, n, K, chi0) presenting the group Gal(K/Q) x| Z/p^n Z.

    ``chi0_images`` lists the image of each unit-group generator of
    (Z/mZ)^x in (Z/p^n Z)^x, in the order unit_group(m) returns them.
    ``r`` is the unit-group order p^(n-1)(p-1) of the kernel factor.
    """

    p: int
    n: int
    field: AbelianField
    chi0_images: tuple[int, ...]
    r: int
    _chi0_table: dict = dc_field(compare=False, repr=False, default_factory=dict)

    def chi0(self, u: int) -> int:
        """Character value on a unit mod the conductor."""
        try:
            return self._chi0_table[u % self.field.modulus]
        except KeyError:
            raise DomainError(f"{u} is not a unit mod {self.field.modulus}") from None


def semidirect_descriptor(
    p: int,
    n: int,
    field: AbelianField,
    chi0_images: tuple[int, ...] | list[int] | None = None,
) -> SemidirectDescriptor:
    """Validated descriptor; chi0 defaults to the mod-p^n cyclotomic character.

    Well-definedness is checked at construction: each generator image
    must satisfy the generator's order relation and the splitting
    subgroup H must land in the kernel.
    """
    if p == 2 or not is_prime(p):
        raise ConfigurationError(f"p={p} must be an odd prime")
    if n < 1:
        raise ConfigurationError("n must be >= 1")
    m = field.modulus
    q = p**n
    units = unit_group(m)
    if chi0_images is None:
        chi0_images = tuple(g % q for g in units.generators)
    images = tuple(int(v) % q for v in chi0_images)
    if len(images) != len(units.generators):
        raise ConfigurationError(
            f"chi0 needs {len(units.generators)} images, one per unit-group generator"
        )
    for g, v, order in zip(units.generators, images, units.orders):
        if v % p == 0:
            raise ConfigurationError(f"chi0({g})={v} is not a unit mod {q}")
        if pow(v, order, q) != 1:
            raise ConfigurationError(
                f"chi0({g})={v} breaks the order-{order} relation, not a homomorphism"
            )
    table: dict[int, int] = {}
    for exps in itertools.product(*(range(o) for o in units.orders)):
        u = 1
        val = 1
        for g, v, e in zip(units.generators, images, exps):
            u = u * pow(g, e, m) % m
            val = val * pow(v, e, q) % q
        table[u] = val
    for h in field.members:
        if table[h] != 1:
            raise ConfigurationError(
                f"chi0 must kill the splitting subgroup; chi0({h}) = {table[h]}"
            )
    r = p ** (n - 1) * (p - 1)
    return SemidirectDescriptor(p, n, field, images, r, table)


def chi_nontrivial_mod_p(desc: SemidirectDescriptor) -> bool:
    """Whether chi0 composed with reduction (Z/p^n)^x -> (Z/p)^x is nontrivial."""
    return any(v % desc.p != 1 for v in desc.chi0_images)
