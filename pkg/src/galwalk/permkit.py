"""Permutation groups at desk scale: full enumeration from generators,
exact cycle-type distributions, and imprimitive product constructions.

Groups here are small enough (order <= ~10^6) that breadth-first closure
beats anything clever, and it yields exact class data for free.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .modpoly import CycleType, make_cycle_type

Permutation = tuple[int, ...]


class GroupTooLarge(RuntimeError):
    """Closure exceeded the element bound; raise the bound to proceed."""


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a after b: (a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def inverse_perm(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def is_permutation(seq) -> bool:
    return sorted(seq) == list(range(len(seq)))


def cycle_type(g: Permutation) -> CycleType:
    """Partition of the degree by orbit sizes."""
    seen = [False] * len(g)
    parts = []
    for start in range(len(g)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = g[x]
            length += 1
        parts.append(length)
    return make_cycle_type(parts)


@dataclass(frozen=True)
class EnumeratedGroup:
    """A fully enumerated permutation group with its cycle-type distribution.

    type_distribution maps each cycle type to its exact frequency
    (#elements of that type / order), a Fraction; frequencies sum to 1.
    """

    degree: int
    elements: tuple[Permutation, ...]
    type_distribution: dict = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def types(self) -> tuple[CycleType, ...]:
        return tuple(self.type_distribution.keys())

    def frequency(self, ct: CycleType) -> Fraction:
        return self.type_distribution.get(ct, Fraction(0))


def _distribution(degree: int, elements) -> dict:
    counts: dict[CycleType, int] = {}
    for g in elements:
        ct = cycle_type(g)
        counts[ct] = counts.get(ct, 0) + 1
    total = len(elements)
    return {
        ct: Fraction(counts[ct], total)
        for ct in sorted(counts.keys(), reverse=True)
    }


def enumerate_group(
    generators, degree: int | None = None, bound: int = 2_000_000
) -> EnumeratedGroup:
    """Breadth-first closure of the generators under composition.

    The empty generator list yields the trivial group (degree must then be
    supplied).  Raises GroupTooLarge if the closure exceeds bound.
    """
    gens = [tuple(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must share one degree")
    if any(not is_permutation(g) for g in gens):
        raise ValueError("generator is not a bijection")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ident = identity_perm(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = compose(cur, g)
            if nxt not in seen:
                if len(seen) >= bound:
                    raise GroupTooLarge(f"group exceeds bound {bound}")
                seen.add(nxt)
                queue.append(nxt)
    elements = tuple(sorted(seen))
    return EnumeratedGroup(degree, elements, _distribution(degree, elements))


def symmetric_group(n: int, bound: int = 2_000_000) -> EnumeratedGroup:
    if n == 1:
        return enumerate_group([], degree=1)
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return enumerate_group(gens, degree=n, bound=bound)


def cyclic_group(n: int) -> EnumeratedGroup:
    """Cyclic group of order n in its regular action on n points."""
    if n == 1:
        return enumerate_group([], degree=1)
    return enumerate_group([tuple(list(range(1, n)) + [0])], degree=n)


def trivial_group(n: int) -> EnumeratedGroup:
    return enumerate_group([], degree=n)


def relabel(group: EnumeratedGroup, perm: Permutation) -> EnumeratedGroup:
    """Conjugate the whole group by a fixed relabeling of the points."""
    inv = inverse_perm(perm)
    elements = tuple(sorted(compose(perm, compose(g, inv)) for g in group.elements))
    return EnumeratedGroup(group.degree, elements, _distribution(group.degree, elements))


def wreath_product(
    base_order: int, top: EnumeratedGroup, bound: int = 2_000_000
) -> EnumeratedGroup:
    """Imprimitive wreath: m blocks of size d = base_order on d*m points.

    The base factor at block j is the d-cycle on that block; the top group
    permutes blocks rigidly.  Point (block j, slot i) is j*d + i.
    """
    d, m = base_order, top.degree
    if d < 1:
        raise ValueError("base_order must be >= 1")
    n = d * m
    expected = (d ** m) * top.order
    if expected > bound:
        raise GroupTooLarge(f"wreath order {expected} exceeds bound {bound}")
    gens = []
    if d > 1:
        for j in range(m):
            g = list(range(n))
            for i in range(d):
                g[j * d + i] = j * d + (i + 1) % d
            gens.append(tuple(g))
    for t in _generating_subset(top):
        g = list(range(n))
        for j in range(m):
            for i in range(d):
                g[j * d + i] = t[j] * d + i
        gens.append(tuple(g))
    result = enumerate_group(gens, degree=n, bound=bound)
    assert result.order == expected, "wreath closure has unexpected order"
    return result


def semidirect_by_action(
    normal: EnumeratedGroup, acting: EnumeratedGroup, bound: int = 2_000_000
) -> EnumeratedGroup:
    """Subgroup generated by both factors inside their common symmetric group.

    The action is conjugation in the ambient degree; each acting element must
    normalize the normal factor, otherwise the declared structure is wrong
    and we refuse.
    """
    if normal.degree != acting.degree:
        raise ValueError("factors must live in a common degree")
    normal_set = set(normal.elements)
    for a in acting.elements:
        a_inv = inverse_perm(a)
        for g in _generating_subset(normal):
            if compose(a, compose(g, a_inv)) not in normal_set:
                raise ValueError("acting factor does not normalize the normal factor")
    gens = list(_generating_subset(normal)) + list(_generating_subset(acting))
    return enumerate_group(gens, degree=normal.degree, bound=bound)


def _closure(gens, degree: int) -> set[Permutation]:
    # Closure under composition alone suffices: a finite set of bijections
    # closed under products is a group.
    ident = identity_perm(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = compose(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _generating_subset(group: EnumeratedGroup) -> tuple[Permutation, ...]:
    """A small generating set extracted greedily from the element list.

    Each accepted generator at least doubles the subgroup, so at most
    log2(order) closure recomputations happen.
    """
    ident = identity_perm(group.degree)
    gens: list[Permutation] = []
    have: set[Permutation] = {ident}
    for g in group.elements:
        if g in have:
            continue
        gens.append(g)
        have = _closure(gens, group.degree)
        if len(have) == group.order:
            break
    return tuple(gens) if gens else (ident,)
