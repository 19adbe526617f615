"""Brute-force verification over small prime fields.

Reduces a scenario's generators mod p, enumerates the finite group they
generate together with coset labels, and classifies every coset element by
the factorization pattern of its characteristic polynomial.  This is the
ground-truth census that the per-class density claims are checked against.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .modpoly import (
    CycleType,
    NOT_SQUAREFREE,
    NotSquarefree,
    PrimeFieldPolynomial,
    _pf_gcd,
    _pf_deriv,
    _pf_monic,
    _pf_mul,
    distinct_degree_pattern,
    repeat_parts,
)

PFMatrix = tuple[tuple[int, ...], ...]


class BadPrimeError(ValueError):
    """The scenario does not reduce cleanly at this prime; skip it."""


class GroupTooLargeError(RuntimeError):
    def __init__(self, p: int, bound: int):
        super().__init__(f"closure at p={p} exceeds bound {bound}")
        self.p = p
        self.bound = bound


def reduce_matrix(mat, p: int) -> PFMatrix:
    """Entrywise reduction mod p; BadPrimeError on denominator collisions."""
    out = []
    for row in mat.rows:
        new = []
        for e in row:
            if e.denominator % p == 0:
                raise BadPrimeError(f"denominator divisible by {p}")
            new.append(e.numerator * pow(e.denominator, -1, p) % p)
        out.append(tuple(new))
    return tuple(out)


def _mat_mul_mod(a: PFMatrix, b: PFMatrix, p: int) -> PFMatrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
        for row in a
    )


def _det_mod(a: PFMatrix, p: int) -> int:
    n = len(a)
    work = [list(row) for row in a]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        inv = pow(work[col][col], -1, p)
        det = det * work[col][col] % p
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] * inv % p
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[col])]
    return det % p


def charpoly_mod_p(a: PFMatrix, p: int) -> PrimeFieldPolynomial:
    """Characteristic polynomial over F_p (requires p > n for the recurrence)."""
    n = len(a)
    if p <= n:
        raise ValueError("charpoly recurrence needs p > matrix dimension")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = a
    c = 0
    for k in range(1, n + 1):
        if k > 1:
            shifted = tuple(
                tuple((m[i][j] + (c if i == j else 0)) % p for j in range(n))
                for i in range(n)
            )
            m = _mat_mul_mod(a, shifted, p)
        trace = sum(m[i][i] for i in range(n)) % p
        c = (-trace * pow(k, -1, p)) % p
        coeffs[n - k] = c
    return PrimeFieldPolynomial(p, tuple(coeffs))


def enumerate_mod_p(scenario, p: int, bound: int = 2_000_000) -> dict[int, list[PFMatrix]]:
    """Closure of the scenario's reduced admissible generators, split by coset.

    Raises BadPrimeError when p is unusable for the scenario (p = 2,
    denominator collisions, a generator that degenerates, or an element
    reached with two different labels) and GroupTooLargeError past bound.
    """
    if p == 2:
        raise BadPrimeError("p = 2 is excluded")
    gens = []
    for mat, label in scenario.admissible().generators:
        reduced = reduce_matrix(mat, p)
        if _det_mod(reduced, p) == 0:
            raise BadPrimeError(f"generator degenerates mod {p}")
        gens.append((reduced, label))
    n = scenario.dimension
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    labels = {ident: 0}
    queue = deque([ident])
    group = scenario.component_group
    while queue:
        cur = queue.popleft()
        cur_label = labels[cur]
        for g, lab in gens:
            nxt = _mat_mul_mod(cur, g, p)
            nxt_label = group.mul(cur_label, lab)
            known = labels.get(nxt)
            if known is None:
                if len(labels) >= bound:
                    raise GroupTooLargeError(p, bound)
                labels[nxt] = nxt_label
                queue.append(nxt)
            elif known != nxt_label:
                raise BadPrimeError(f"label collision mod {p}")
    cosets: dict[int, list[PFMatrix]] = {lab: [] for lab in range(group.order)}
    for mat, lab in labels.items():
        cosets[lab].append(mat)
    return cosets


@dataclass(frozen=True)
class CosetCensus:
    """Cycle-type counts over the regular semisimple part of one coset."""

    p: int
    coset: int
    total: int
    rs_count: int
    type_counts: dict = field(compare=False)

    def density_rs(self, ct: CycleType) -> Fraction:
        if self.rs_count == 0:
            return Fraction(0)
        return Fraction(self.type_counts.get(ct, 0), self.rs_count)

    def density_coset(self, ct: CycleType) -> Fraction:
        return Fraction(self.type_counts.get(ct, 0), self.total)


def _profile_pattern(
    chi: PrimeFieldPolynomial, multiplicity: int
) -> CycleType | NotSquarefree:
    """Pattern of chi viewed as q**multiplicity with q squarefree.

    Returns NOT_SQUAREFREE unless chi has exactly that shape; the element is
    then not (operationally) regular semisimple.
    """
    p = chi.p
    if multiplicity == 1:
        return distinct_degree_pattern(chi)
    f = _pf_monic(list(chi.coeffs), p)
    g = _pf_gcd(f, _pf_deriv(f, p), p)
    if len(g) - 1 <= 0:
        return NOT_SQUAREFREE  # squarefree, but we expected multiplicity > 1
    rad = _pf_exact_div(f, g, p)
    if (len(rad) - 1) * multiplicity != len(f) - 1:
        return NOT_SQUAREFREE
    power = [1]
    for _ in range(multiplicity):
        power = _pf_mul(power, rad, p)
    if power != f:
        return NOT_SQUAREFREE
    base = distinct_degree_pattern(PrimeFieldPolynomial(p, tuple(rad)))
    if isinstance(base, NotSquarefree):
        return NOT_SQUAREFREE
    return repeat_parts(base, multiplicity)


def _pf_exact_div(a: list[int], b: list[int], p: int) -> list[int]:
    from .modpoly import _pf_fulldiv

    return _pf_fulldiv(a, b, p)


def census(elements, p: int, coset: int, multiplicity: int = 1) -> CosetCensus:
    """Classify one coset's elements by characteristic polynomial pattern.

    An element counts as regular semisimple iff its characteristic
    polynomial mod p is q**multiplicity with q squarefree (the operational
    proxy; multiplicity is the coset's generic eigenvalue multiplicity).
    """
    counts: dict[CycleType, int] = {}
    rs = 0
    for m in elements:
        chi = charpoly_mod_p(m, p)
        pattern = _profile_pattern(chi, multiplicity)
        if isinstance(pattern, NotSquarefree):
            continue
        rs += 1
        counts[pattern] = counts.get(pattern, 0) + 1
    ordered = {ct: counts[ct] for ct in sorted(counts, reverse=True)}
    return CosetCensus(p, coset, len(elements), rs, ordered)


def density_report(censuses, target_types: dict[int, tuple[CycleType, ...]]):
    """Per-(p, coset, type) densities plus zero-density flags.

    target_types maps coset label -> the cycle types its predicted group
    attains; a target type with zero census density is flagged.
    Returns (rows, flagged) where each row is a dict and flagged collects
    (p, coset, type) triples that violate positivity.
    """
    if not censuses:
        raise ValueError("no censuses supplied")
    rows = []
    flagged = []
    for c in censuses:
        targets = target_types.get(c.coset, ())
        seen = set(c.type_counts) | set(targets)
        for ct in sorted(seen, reverse=True):
            count = c.type_counts.get(ct, 0)
            is_target = ct in targets
            flag = 1 if (is_target and count == 0) else 0
            if flag:
                flagged.append((c.p, c.coset, ct))
            rows.append(
                {
                    "p": c.p,
                    "coset": c.coset,
                    "status": "ok",
                    "cycle_type": ct,
                    "count": count,
                    "rs_count": c.rs_count,
                    "total": c.total,
                    "density_rs": c.density_rs(ct),
                    "density_coset": c.density_coset(ct),
                    "flagged": flag,
                }
            )
    return rows, flagged
