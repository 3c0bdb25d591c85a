"""Long-Weierstrass curves over Q: covariants, reduction type, Frobenius traces.

a_l = l + 1 - #E(F_l) is computed by exhaustive Legendre-sum counting for
small l and by a baby-step/giant-step group-order search above a
configurable threshold.  The order search never returns an unverified
value: when the candidate order is ambiguous it falls back to exhaustive
enumeration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arith import jacobi, sqrt_mod
from .errors import (
    BadReductionError,
    ConfigurationError,
    DomainError,
    InvariantViolation,
    SingularCurveError,
)

# Exhaustive Legendre-sum counting below this, group-order search above.
NAIVE_THRESHOLD = 1 << 17
# Hard cap for the vectorized counter (memory: one bool per residue).
_NAIVE_LIMIT = 1 << 26
_CHUNK = 1 << 22


@dataclass(frozen=True)
class WeierstrassCurve:
    """Integral model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int

    @property
    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def label(self) -> str:
        return ",".join(str(a) for a in self.a_invariants)


@dataclass(frozen=True)
class FrobeniusData:
    """Point count over F_l (projective, with infinity) and the trace a_l."""

    l: int
    point_count: int
    a: int


def make_curve(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    """Build a curve from its a-invariants; rejects singular models."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurveError(f"discriminant vanishes for ({a1},{a2},{a3},{a4},{a6})")
    return WeierstrassCurve(a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc)


def curve_from_string(text: str) -> WeierstrassCurve:
    """Parse the shared CLI syntax 'a1,a2,a3,a4,a6'."""
    parts = text.split(",")
    if len(parts) != 5:
        raise ConfigurationError(f"curve must be 5 comma-separated integers, got {text!r}")
    try:
        a = [int(s) for s in parts]
    except ValueError as exc:
        raise ConfigurationError(f"bad curve coefficient in {text!r}") from exc
    return make_curve(*a)


def _valuation(n: int, l: int) -> int:
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def reduction_is_good(curve: WeierstrassCurve, l: int) -> bool:
    """Good reduction at l, allowing one u=l rescale for l >= 5.

    For l in {2, 3} a model with l | disc conservatively counts as bad;
    excess exclusions only shrink the sieve, never corrupt it.
    """
    if curve.disc % l != 0:
        return True
    if l < 5:
        return False
    if curve.c4 != 0 and _valuation(curve.c4, l) < 4:
        return False
    return _valuation(curve.disc, l) == 12


def _short_coefficients(curve: WeierstrassCurve, l: int) -> tuple[int, int]:
    # (A, B) with y^2 = x^3 + Ax + B isomorphic to the reduction at odd l >= 5
    c4, c6 = curve.c4, curve.c6
    if curve.disc % l == 0:
        q4 = l**4
        if c4 % q4 or c6 % (q4 * l * l):
            raise InvariantViolation(f"rescale at {l} is not integral")
        c4 //= q4
        c6 //= q4 * l * l
    return (-27 * c4) % l, (-54 * c6) % l


def _count_affine_direct(curve: WeierstrassCurve, l: int) -> int:
    a1, a2, a3, a4, a6 = (a % l for a in curve.a_invariants)
    n = 0
    for x in range(l):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % l
        for y in range(l):
            if (y * y + a1 * x * y + a3 * y - rhs) % l == 0:
                n += 1
    return n


def _count_short_model(A: int, B: int, l: int) -> int:
    # l + 1 + sum_x chi(x^3 + Ax + B), chunked to bound memory
    sq = np.zeros(l, dtype=bool)
    for base in range(1, l, _CHUNK):
        r = np.arange(base, min(base + _CHUNK, l), dtype=np.int64)
        sq[(r * r) % l] = True
    count = l + 1
    for base in range(0, l, _CHUNK):
        x = np.arange(base, min(base + _CHUNK, l), dtype=np.int64)
        rhs = ((x * x % l) * x + A * x + B) % l
        count += 2 * int(np.count_nonzero(sq[rhs])) - int(np.count_nonzero(rhs))
    return count


def _frobenius(l: int, point_count: int) -> FrobeniusData:
    a = l + 1 - point_count
    if a * a > 4 * l:
        raise InvariantViolation(f"Hasse bound violated at {l}: a={a}")
    return FrobeniusData(l, point_count, a)


def count_points(curve: WeierstrassCurve, l: int) -> FrobeniusData:
    """Exhaustive point count over F_l.  The independent small-prime oracle."""
    if not reduction_is_good(curve, l):
        raise BadReductionError(f"bad reduction at {l}")
    if l <= 3:
        return _frobenius(l, _count_affine_direct(curve, l) + 1)
    if l > _NAIVE_LIMIT:
        raise DomainError(f"exhaustive count infeasible at {l}")
    A, B = _short_coefficients(curve, l)
    return _frobenius(l, _count_short_model(A, B, l))


# ---------------------------------------------------------------------------
# group-order search


def _ec_add(P, Q, A: int, l: int):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % l == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, l) % l
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, l) % l
    x3 = (lam * lam - x1 - x2) % l
    return (x3, (lam * (x1 - x3) - y1) % l)


def _ec_neg(P, l: int):
    return None if P is None else (P[0], (-P[1]) % l)


def _ec_mul(P, k: int, A: int, l: int):
    R, Q = None, P
    while k:
        if k & 1:
            R = _ec_add(R, Q, A, l)
        Q = _ec_add(Q, Q, A, l)
        k >>= 1
    return R


def _annihilators(P, A: int, l: int, lo: int, hi: int) -> list[int]:
    # every k in [lo, hi] with k*P = O; the true group order is among them
    width = hi - lo + 1
    m = isqrt(width) + 1
    baby: dict = {}
    R = None
    for j in range(m):
        baby.setdefault(R, []).append(j)
        R = _ec_add(R, P, A, l)
    neg_step = _ec_neg(R, l)  # -m*P
    cur = _ec_neg(_ec_mul(P, lo, A, l), l)  # want j*P = -(lo + i*m)*P
    out = []
    for i in range(width // m + 1):
        for j in baby.get(cur, ()):
            t = i * m + j
            if t < width:
                out.append(lo + t)
        cur = _ec_add(cur, neg_step, A, l)
    return sorted(out)


def _order_candidates(A: int, B: int, l: int, rng: random.Random, rounds: int) -> set[int] | None:
    s = isqrt(4 * l)
    lo, hi = l + 1 - s, l + 1 + s
    cands: set[int] | None = None
    found = attempts = 0
    while found < rounds and attempts < 40:
        attempts += 1
        x = rng.randrange(l)
        y = sqrt_mod((x * x % l * x + A * x + B) % l, l)
        if y is None:
            continue
        found += 1
        anns = set(_annihilators((x, y), A, l, lo, hi))
        cands = anns if cands is None else cands & anns
        if not cands:
            raise InvariantViolation(f"order search lost all candidates at {l}")
        if len(cands) == 1:
            break
    return cands


def _bsgs_point_count(curve: WeierstrassCurve, l: int) -> int | None:
    """Group order by baby-step/giant-step, or None when ambiguous.

    Candidate orders are intersected over several deterministic
    pseudo-random points, then pinched against the quadratic twist
    (orders sum to 2l + 2).  Sampling is seeded from (curve, l) so
    results are reproducible and thread-order independent.
    """
    A, B = _short_coefficients(curve, l)
    rng = random.Random(f"order-search:{curve.label()}:{l}")
    cands = _order_candidates(A, B, l, rng, rounds=8)
    if cands is not None and len(cands) == 1:
        return next(iter(cands))
    c = 2
    while jacobi(c, l) != -1:
        c += 1
    twist = _order_candidates(A * c * c % l, B * c**3 % l, l, rng, rounds=8)
    if cands is not None and twist is not None:
        pinched = {n for n in cands if (2 * l + 2 - n) in twist}
        if len(pinched) == 1:
            return next(iter(pinched))
    return None


def trace_of_frobenius(
    curve: WeierstrassCurve, l: int, naive_threshold: int = NAIVE_THRESHOLD
) -> int:
    """a_l by the cheapest sound strategy for the size of l."""
    return frobenius_data(curve, l, naive_threshold).a


def frobenius_data(
    curve: WeierstrassCurve, l: int, naive_threshold: int = NAIVE_THRESHOLD
) -> FrobeniusData:
    """Point count and trace at a good prime, strategy picked by threshold."""
    if l <= 3 or l < naive_threshold:
        return count_points(curve, l)
    if not reduction_is_good(curve, l):
        raise BadReductionError(f"bad reduction at {l}")
    n = _bsgs_point_count(curve, l)
    if n is not None:
        return _frobenius(l, n)
    return count_points(curve, l)
