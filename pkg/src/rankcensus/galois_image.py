"""Surjectivity certification for the mod-p torsion representation.

Frobenius data (a_l mod p, l mod p) classifies which maximal subgroups of
GL_2(F_p) the image can still lie in; once Borel, both Cartan normalizers
and the exceptional projective images are excluded, the image is all of
GL_2(F_p).  Determinant surjectivity holds automatically over Q (the mod-p
cyclotomic character is surjective) and is not tested.  "Certified" is a
proof; "inconclusive" is never a disproof.

Also hosts the exhaustive SL_2(F_p) trace-count oracle used to anchor the
sieve's density closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith import is_prime, jacobi, sieve_primes
from .curve import NAIVE_THRESHOLD, WeierstrassCurve, frobenius_data, reduction_is_good
from .errors import DomainError

FLAG_BOREL_SPLIT = "excludes_borel_and_split"
FLAG_NONSPLIT = "excludes_nonsplit"
FLAG_EXCEPTIONAL = "excludes_exceptional"
ALL_FLAGS = (FLAG_BOREL_SPLIT, FLAG_NONSPLIT, FLAG_EXCEPTIONAL)

MAX_ORACLE_PRIME = 101


def classify_witness(a: int, d: int, p: int) -> frozenset[str]:
    """Exclusion flags carried by an element of GL_2(F_p) with trace a, det d.

    A nonzero trace with square discriminant a^2-4d rules out the
    nonsplit-Cartan normalizer (whose nonzero-trace elements have
    irreducible or scalar characteristic polynomial); a nonzero trace with
    nonsquare discriminant rules out Borel and the split-Cartan
    normalizer.  u = a^2/d sees the projective order: values outside
    {0,1,2,4} and the roots of u^2-3u+1 only occur for projective order
    > 5, impossible inside A4/S4/A5.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"p={p} must be an odd prime")
    a %= p
    d %= p
    if d == 0:
        raise DomainError("witness must have nonzero determinant")
    flags = set()
    disc = (a * a - 4 * d) % p
    if a != 0 and disc != 0:
        flags.add(FLAG_NONSPLIT if jacobi(disc, p) == 1 else FLAG_BOREL_SPLIT)
    u = a * a * pow(d, -1, p) % p
    if u not in {0, 1 % p, 2 % p, 4 % p} and (u * u - 3 * u + 1) % p != 0:
        flags.add(FLAG_EXCEPTIONAL)
    return frozenset(flags)


@dataclass
class WitnessLedger:
    """Scanned witnesses and the monotone exclusion state they built."""

    p: int
    entries: list[tuple[int, int, int]] = dc_field(default_factory=list)  # (l, a mod p, l mod p)
    flags: dict[str, bool] = dc_field(default_factory=lambda: {f: False for f in ALL_FLAGS})
    first_prime: dict[str, int] = dc_field(default_factory=dict)

    def raise_flag(self, flag: str, l: int) -> None:
        if not self.flags[flag]:
            self.flags[flag] = True
            self.first_prime[flag] = l

    def all_raised(self) -> bool:
        return all(self.flags.values())


@dataclass(frozen=True)
class ImageReport:
    status: str  # "certified" | "inconclusive"
    ledger: WitnessLedger
    bound: int

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _mod3_order_witness(a: int, l: int) -> bool:
    # Mod 3 every (trace, det) pair is realized inside the nonsplit-Cartan
    # normalizer (a 2-group of order 16), so the square-discriminant rule
    # can never fire; witness an element of order divisible by 3 instead,
    # which no 2-group contains.  char poly (x-1)^2 with 9 never dividing
    # #E(F_l) forces a non-semisimple image; char poly (x+1)^2 likewise
    # over F_{l^2}, whose point count is (l+1-a)(l+1+a).
    if l % 3 != 1:
        return False
    am = a % 3
    if am == 2:
        return (l + 1 - a) % 9 != 0
    if am == 1:
        return ((l + 1 - a) * (l + 1 + a)) % 9 != 0
    return False


def certify_surjective(
    curve: WeierstrassCurve,
    p: int,
    bound: int,
    naive_threshold: int = NAIVE_THRESHOLD,
) -> ImageReport:
    """Scan good primes l <= bound (l != p) until every excluder fires.

    Bad primes and p itself are skipped silently.  The scan is monotone
    in the bound: once certified, any larger bound certifies too.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"p={p} must be an odd prime")
    ledger = WitnessLedger(p)
    if p == 3:
        # det-surjective subgroups of GL_2(F_3) cannot have exceptional
        # projective image: the preimage of A4 = PSL_2(F_3) is SL_2(F_3),
        # which has determinant 1.  The excluder is vacuous.
        ledger.flags[FLAG_EXCEPTIONAL] = True
    if bound >= 2:
        for l in sieve_primes(bound).primes:
            if l == p or not reduction_is_good(curve, l):
                continue
            fd = frobenius_data(curve, l, naive_threshold)
            ledger.entries.append((l, fd.a % p, l % p))
            for flag in classify_witness(fd.a, l, p):
                ledger.raise_flag(flag, l)
            if p == 3 and _mod3_order_witness(fd.a, l):
                ledger.raise_flag(FLAG_NONSPLIT, l)
            if ledger.all_raised():
                break
    status = "certified" if ledger.all_raised() else "inconclusive"
    return ImageReport(status, ledger, bound)


# ---------------------------------------------------------------------------
# exhaustive SL_2(F_p) oracle


def _enumerate_sl2_traces(p: int) -> tuple[int, int, int]:
    """One pass over all of SL_2(F_p); returns (trace != 2 count,
    trace = 2 count with upper-left entry 1, trace = 2 count with entry != 1)."""
    if p == 2 or not is_prime(p) or p > MAX_ORACLE_PRIME:
        raise DomainError(f"p={p} outside the exhaustive oracle range (odd prime <= 101)")
    ne2 = eq2_a1 = eq2_rest = 0
    inv = [0] + [pow(a, -1, p) for a in range(1, p)]
    for a in range(1, p):  # a != 0: d is determined by (a, b, c)
        ia = inv[a]
        for b in range(p):
            for c in range(p):
                d = (1 + b * c) * ia % p
                if (a + d) % p != 2:
                    ne2 += 1
                elif a == 1:
                    eq2_a1 += 1
                else:
                    eq2_rest += 1
    for b in range(1, p):  # a = 0: bc = -1 pins c, d is free
        for d in range(p):
            if d != 2:
                ne2 += 1
            else:
                eq2_rest += 1
    return ne2, eq2_a1, eq2_rest


def count_trace_ne2_sl2(p: int) -> int:
    """#{A in SL_2(F_p) : trace A != 2} by exhaustive enumeration."""
    return _enumerate_sl2_traces(p)[0]


def count_trace_eq2_sl2_cases(p: int) -> tuple[int, int]:
    """Trace-2 matrices split by the upper-left entry: (a = 1, a != 1).

    The enumeration must reproduce 2p-1 and (p-1)^2 respectively.
    """
    _, eq2_a1, eq2_rest = _enumerate_sl2_traces(p)
    return eq2_a1, eq2_rest


def sl2_order(p: int) -> int:
    return p * (p * p - 1)


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)
