"""Random walks on finitely generated matrix groups with coset labels.

A generator set is made admissible by closing it under inverses and padding
with the identity (the lazy-walk device); steps are then drawn uniformly
from the resulting multiset.  Each sample's randomness comes from its own
splitmix64 stream keyed by (seed, sample index), so batches are
reproducible bit-for-bit regardless of scheduling or worker count.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactmat import RationalMatrix, SingularMatrix, mat_inverse, mat_mul

RNG_ALGORITHM = "splitmix64"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Counter-based 64-bit generator (splitmix64, standard constants)."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & _MASK

    def next_uint64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform draw from range(n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % n


def stream_for(seed: int, index: int) -> SplitMix64:
    """Independent stream for sample `index` of run `seed`."""
    return SplitMix64((seed * _GAMMA + index) & _MASK)


@dataclass(frozen=True)
class ComponentGroup:
    """Finite label group given by its multiplication table; identity is 0."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.table)
        if m == 0 or any(len(row) != m for row in self.table):
            raise ValueError("table must be square and nonempty")
        if any(not (0 <= x < m) for row in self.table for x in row):
            raise ValueError("table entries out of range")
        if any(self.table[0][j] != j or self.table[j][0] != j for j in range(m)):
            raise ValueError("element 0 must be the identity")
        for i in range(m):
            if 0 not in self.table[i]:
                raise ValueError(f"element {i} has no inverse")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if (
                        self.table[self.table[a][b]][c]
                        != self.table[a][self.table[b][c]]
                    ):
                        raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)


def cyclic_component_group(m: int) -> ComponentGroup:
    return ComponentGroup(
        tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
    )


def trivial_component_group() -> ComponentGroup:
    return cyclic_component_group(1)


@dataclass(frozen=True)
class GeneratorSet:
    """Admissible generating multiset: inverse-closed and identity-padded.

    Uniform sampling over `generators` defines the walk step distribution.
    """

    generators: tuple[tuple[RationalMatrix, int], ...]
    component_group: ComponentGroup

    def __post_init__(self):
        if not self.generators:
            raise ValueError("empty generator set")
        dim = self.generators[0][0].n
        if any(g.n != dim for g, _ in self.generators):
            raise ValueError("generators must share one dimension")
        pairs = set(self.generators)
        ident = RationalMatrix.identity(dim)
        if (ident, 0) not in pairs:
            raise ValueError("identity pair missing (set is not admissible)")
        for g, lab in self.generators:
            inv_pair = (mat_inverse(g), self.component_group.inv(lab))
            if inv_pair not in pairs:
                raise ValueError("set is not closed under inverses")

    @property
    def dimension(self) -> int:
        return self.generators[0][0].n

    @property
    def size(self) -> int:
        return len(self.generators)


def make_admissible(raw, component_group: ComponentGroup) -> GeneratorSet:
    """Close the raw (matrix, label) pairs under inverses and add identity.

    Raises on an empty input, a singular generator, or a label outside the
    component group.
    """
    pairs = list(raw)
    if not pairs:
        raise ValueError("empty generating set")
    m = component_group.order
    out: list[tuple[RationalMatrix, int]] = []
    seen = set()

    def push(g: RationalMatrix, lab: int):
        key = (g, lab)
        if key not in seen:
            seen.add(key)
            out.append(key)

    for g, lab in pairs:
        if not (0 <= lab < m):
            raise ValueError(f"label {lab} outside the component group")
        try:
            ginv = mat_inverse(g)
        except SingularMatrix:
            raise ValueError("singular generator") from None
        push(g, lab)
        push(ginv, component_group.inv(lab))
    push(RationalMatrix.identity(pairs[0][0].n), 0)
    return GeneratorSet(tuple(out), component_group)


@dataclass(frozen=True)
class WalkSample:
    """One k-step walk value with its coset label and provenance."""

    element: RationalMatrix
    label: int
    length: int
    seed_path: tuple[int, int]


def draw_word(gens: GeneratorSet, k: int, seed: int, index: int) -> tuple[int, ...]:
    """The k generator indices drawn by sample (seed, index)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = stream_for(seed, index)
    n = gens.size
    return tuple(rng.randbelow(n) for _ in range(k))


def sample_walk(gens: GeneratorSet, k: int, seed: int, index: int) -> WalkSample:
    """Ordered product of k uniform generator draws; deterministic in (seed, index)."""
    word = draw_word(gens, k, seed, index)
    element = RationalMatrix.identity(gens.dimension)
    label = 0
    for i in word:
        g, lab = gens.generators[i]
        element = mat_mul(element, g)
        label = gens.component_group.mul(label, lab)
    return WalkSample(element, label, k, (seed, index))


def batch_sample(gens: GeneratorSet, k: int, count: int, seed: int) -> list[WalkSample]:
    """Samples at indices 0..count-1; order-stable by construction."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return [sample_walk(gens, k, seed, i) for i in range(count)]
