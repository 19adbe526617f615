"""Polynomial arithmetic over prime fields and Frobenius cycle types.

The observable extracted from a matrix at a prime p is the multiset of
degrees of the irreducible factors of its characteristic polynomial mod p
(a partition of the degree).  Distinct-degree factorization is enough for
that: we never need the factors themselves, only their degree pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactmat import (
    BadPrime,
    PrimeFieldPolynomial,
    RationalPolynomial,
    poly_gcd,
    reduce_poly_mod_p,
)

# A cycle type is a weakly decreasing tuple of positive parts.
CycleType = tuple[int, ...]


def make_cycle_type(parts) -> CycleType:
    ct = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in ct):
        raise ValueError("cycle type parts must be positive")
    return ct


def repeat_parts(ct: CycleType, e: int) -> CycleType:
    """Each part repeated e times (observable for eigenvalue multiplicity e)."""
    if e == 1:
        return ct
    return make_cycle_type(tuple(p for p in ct for _ in range(e)))


class NotSquarefree:
    """Marker value: the reduction has a repeated factor; skip this prime."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotSquarefree"


NOT_SQUAREFREE = NotSquarefree()


@dataclass(frozen=True)
class FrobeniusSample:
    p: int
    cycle_type: CycleType | None
    status: str  # "good" | "bad_prime" | "not_squarefree"

    def __post_init__(self):
        if (self.status == "good") != (self.cycle_type is not None):
            raise ValueError("cycle_type present iff status is good")


# ---------------------------------------------------------------------------
# low-level F_p[x] helpers; coefficient tuples are degree-indexed and reduced
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pf_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        k = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % p
        _trim(a)
    return a


def _pf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _pf_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _pf_monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a[:]
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pf_deriv(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _pf_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pf_rem(base, mod, p)
    while e:
        if e & 1:
            result = _pf_rem(_pf_mul(result, base, p), mod, p)
        base = _pf_rem(_pf_mul(base, base, p), mod, p)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def squarefree_over_q(f: RationalPolynomial) -> bool:
    """True iff gcd(f, f') is constant, computed exactly over Q."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return poly_gcd(f, f.derivative()).degree <= 0


def distinct_degree_pattern(
    g: PrimeFieldPolynomial,
) -> CycleType | NotSquarefree:
    """Multiset of degrees of the irreducible factors of g over F_p.

    Standard distinct-degree factorization: strip the degree-d part
    gcd(rem, x^(p^d) - x) for d = 1, 2, ...; stop early once the remaining
    cofactor must be irreducible.  Returns NOT_SQUAREFREE when g has a
    repeated factor (those primes are excluded from statistics).
    """
    p = g.p
    f = _pf_monic(list(g.coeffs), p)
    if len(f) - 1 < 1:
        raise ValueError("need degree >= 1")
    if len(_pf_gcd(f, _pf_deriv(f, p), p)) - 1 > 0:
        return NOT_SQUAREFREE
    parts: list[int] = []
    rem = f
    h = _pf_rem([0, 1], rem, p)  # x mod rem
    d = 0
    while len(rem) - 1 > 0:
        d += 1
        if 2 * d > len(rem) - 1:
            parts.append(len(rem) - 1)
            break
        h = _pf_powmod(h, p, rem, p)
        diff = h + [0] * max(0, 2 - len(h))
        diff = diff[:]
        diff[1] = (diff[1] - 1) % p
        g_d = _pf_gcd(rem, _trim(diff), p)
        deg = len(g_d) - 1
        if deg > 0:
            parts.extend([d] * (deg // d))
            quotient = _pf_fulldiv(rem, g_d, p)
            rem = quotient
            h = _pf_rem(h, rem, p)
    return make_cycle_type(parts)


def _pf_fulldiv(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient a / b over F_p (remainder known to vanish)."""
    a = a[:]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    quo = [0] * (len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        k = len(a) - 1 - db
        quo[k] = c
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % p
        _trim(a)
    assert not a, "division was not exact"
    return quo


def frobenius_cycle_type(f: RationalPolynomial, p: int) -> FrobeniusSample:
    """Factorization degree pattern of f mod p, with bad primes flagged."""
    if not f.is_monic():
        raise ValueError("expected a monic polynomial")
    reduced = reduce_poly_mod_p(f, p)
    if isinstance(reduced, BadPrime):
        return FrobeniusSample(p, None, "bad_prime")
    pattern = distinct_degree_pattern(reduced)
    if isinstance(pattern, NotSquarefree):
        return FrobeniusSample(p, None, "not_squarefree")
    return FrobeniusSample(p, pattern, "good")


@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i:: i] = b"\x00" * len(flags[i * i:: i])
    return tuple(i for i in range(limit + 1) if flags[i])


def primes_in_window(lo: int, hi: int) -> tuple[int, ...]:
    """Primes p with lo <= p <= hi, ascending (simple sieve)."""
    if hi < 2:
        return ()
    ps = _sieve(hi)
    from bisect import bisect_left

    return ps[bisect_left(ps, lo):]
