"""Built-in walk scenarios: generator sets with coset labels and the
predicted group bound to each coset.

A scenario owns the embedding conventions (block matrices, the quadratic
ring embedding) and declares, per coset, the generic eigenvalue
multiplicity of its characteristic polynomials and the permutation group
its Frobenius statistics are matched against.  Where two candidate
predictions exist, `predicted` is the one validated by the exact oracles
and `upper` the larger reference group that soundly bounds every sample.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmat import RationalMatrix, mat_inverse
from .picatalog import (
    PredictedGroup,
    pi_restriction_of_scalars,
    pi_sl_n,
    pi_sl_n_doubled,
    pi_sl_n_tau,
    pi_sl_n_tau_reciprocal,
    pi_sl_power_cyclic,
    pi_sl_power_identity,
)
from .permkit import symmetric_group
from .walker import (
    ComponentGroup,
    GeneratorSet,
    cyclic_component_group,
    make_admissible,
    trivial_component_group,
)


@dataclass(frozen=True)
class CosetSpec:
    """Per-coset identification data.

    multiplicity is the generic eigenvalue multiplicity of characteristic
    polynomials on this coset: a sample is regular semisimple iff its
    characteristic polynomial is q**multiplicity with q squarefree.
    predicted = None marks a coset with no predicted group (the
    counterexample scenario reports exact quadratic outcomes instead).
    """

    label: int
    name: str
    predicted: PredictedGroup | None
    upper: PredictedGroup | None = None
    multiplicity: int = 1

    def type_superset(self) -> PredictedGroup | None:
        return self.upper if self.upper is not None else self.predicted


@dataclass(frozen=True)
class Scenario:
    name: str
    dimension: int
    raw_generators: tuple
    component_group: ComponentGroup
    cosets: tuple[CosetSpec, ...]
    description: str

    def __post_init__(self):
        labels = {c.label for c in self.cosets}
        if labels != set(range(self.component_group.order)):
            raise ValueError("every coset label needs a spec")
        for mat, _ in self.raw_generators:
            if mat.n != self.dimension:
                raise ValueError("generator dimension mismatch")
        for c in self.cosets:
            if c.predicted is not None and c.predicted.N != self.dimension:
                raise ValueError("predicted group degree mismatch")

    def admissible(self) -> GeneratorSet:
        return make_admissible(self.raw_generators, self.component_group)

    def coset(self, label: int) -> CosetSpec:
        for c in self.cosets:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def has_predictions(self) -> bool:
        return any(c.predicted is not None for c in self.cosets)


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------

def elementary(n: int, i: int, j: int, v=1) -> RationalMatrix:
    rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    rows[i][j] = Fraction(v)
    return RationalMatrix(rows)


def _sl_generators(n: int) -> list[RationalMatrix]:
    # all unit elementary matrices; the full set mixes noticeably faster
    # than adjacent transvections alone at desk-scale walk lengths
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(elementary(n, i, j))
    return gens


def _block_diag(blocks: list[RationalMatrix]) -> RationalMatrix:
    n = sum(b.n for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.n
    return RationalMatrix(rows)


def dual_pair_embed(a: RationalMatrix) -> RationalMatrix:
    """A |-> diag(A, transpose-inverse of A) in twice the dimension."""
    return _block_diag([a, mat_inverse(a.transpose())])


def swap_blocks_matrix(n: int) -> RationalMatrix:
    """The involution exchanging the two n-blocks of a 2n-space."""
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(1)
    return RationalMatrix(rows)


def factor_embed(a: RationalMatrix, index: int, copies: int) -> RationalMatrix:
    """A in the index-th of `copies` diagonal blocks, identity elsewhere."""
    blocks = [
        a if b == index else RationalMatrix.identity(a.n) for b in range(copies)
    ]
    return _block_diag(blocks)


def block_shift_matrix(n: int, copies: int) -> RationalMatrix:
    """Cyclic shift of `copies` n-blocks: block b moves to block b+1."""
    size = n * copies
    rows = [[Fraction(0)] * size for _ in range(size)]
    for b in range(copies):
        for i in range(n):
            rows[((b + 1) % copies) * n + i][b * n + i] = Fraction(1)
    return RationalMatrix(rows)


def sqrt2_embed(entries) -> RationalMatrix:
    """2x2 matrix over Z[sqrt2] into GL_4(Q); each entry (a, b) means a+b*sqrt2.

    The ring element acts by its regular representation [[a, 2b], [b, a]].
    """
    rows = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            a, b = entries[i][j]
            rows[2 * i][2 * j] = Fraction(a)
            rows[2 * i][2 * j + 1] = Fraction(2 * b)
            rows[2 * i + 1][2 * j] = Fraction(b)
            rows[2 * i + 1][2 * j + 1] = Fraction(a)
    return RationalMatrix(rows)


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------

def _sl_scenario(n: int) -> Scenario:
    raw = tuple((g, 0) for g in _sl_generators(n))
    return Scenario(
        name=f"sl{n}",
        dimension=n,
        raw_generators=raw,
        component_group=trivial_component_group(),
        cosets=(CosetSpec(0, "identity", pi_sl_n(n)),),
        description=f"integer unimodular walks in dimension {n}; "
        f"expected full symmetric group on {n} eigenvalues",
    )


def _sl_tau_scenario(n: int) -> Scenario:
    raw = [(dual_pair_embed(g), 0) for g in _sl_generators(n)]
    raw.append((swap_blocks_matrix(n), 1))
    return Scenario(
        name=f"sltau{n}",
        dimension=2 * n,
        raw_generators=tuple(raw),
        component_group=cyclic_component_group(2),
        cosets=(
            CosetSpec(
                0,
                "identity",
                pi_sl_n_doubled(n),
                multiplicity=2 if n == 2 else 1,
            ),
            CosetSpec(
                1,
                "swap",
                pi_sl_n_tau_reciprocal(n),
                upper=pi_sl_n_tau(n),
            ),
        ),
        description=f"dimension-{n} unimodular walks extended by the "
        "transpose-inverse involution, embedded in twice the dimension; "
        "the two cosets have different predicted groups",
    )


def _sl_power_cyclic_scenario(n: int, d: int) -> Scenario:
    raw = [(factor_embed(g, 0, d), 0) for g in _sl_generators(n)]
    raw.append((block_shift_matrix(n, d), 1))
    cosets = [CosetSpec(0, "identity", pi_sl_power_identity(n, d))]
    shifted = pi_sl_power_cyclic(n, d)
    for j in range(1, d):
        cosets.append(CosetSpec(j, f"shift{j}", shifted))
    return Scenario(
        name=f"slcyc{n}x{d}",
        dimension=n * d,
        raw_generators=tuple(raw),
        component_group=cyclic_component_group(d),
        cosets=tuple(cosets),
        description=f"{d} dimension-{n} factors permuted cyclically; "
        "shifted cosets pick up root-of-unity structure",
    )


def _sqrt2_scenario() -> Scenario:
    z, o = (0, 0), (1, 0)
    s = (0, 1)  # sqrt2
    raw = (
        (sqrt2_embed([[o, o], [z, o]]), 0),
        (sqrt2_embed([[o, z], [o, o]]), 0),
        (sqrt2_embed([[o, s], [z, o]]), 0),
        (sqrt2_embed([[o, z], [s, o]]), 0),
    )
    return Scenario(
        name="res_sqrt2",
        dimension=4,
        raw_generators=raw,
        component_group=trivial_component_group(),
        cosets=(
            CosetSpec(
                0,
                "identity",
                pi_restriction_of_scalars(2, symmetric_group(2)),
            ),
        ),
        description="unimodular walks over the quadratic ring Z[sqrt2], "
        "embedded rationally in dimension 4; characteristic polynomials "
        "split into two conjugate quadratics",
    )


def _diag_antidiag_scenario() -> Scenario:
    a = RationalMatrix.diagonal([2, 3])
    j = RationalMatrix([[0, 1], [1, 0]])
    return Scenario(
        name="diag_antidiag",
        dimension=2,
        raw_generators=((a, 0), (j, 1)),
        component_group=cyclic_component_group(2),
        cosets=(
            CosetSpec(0, "diagonal", None),
            CosetSpec(1, "antidiagonal", None),
        ),
        description="diagonal/antidiagonal walks whose closure has a central "
        "torus: no typical Galois behaviour exists off the identity coset, "
        "so rows report exact quadratic outcomes instead of verdicts",
    )


@lru_cache(maxsize=1)
def builtin_scenarios() -> dict[str, Scenario]:
    """Name -> scenario registry (built once; scenarios are immutable)."""
    scenarios = [
        _sl_scenario(2),
        _sl_scenario(3),
        _sl_scenario(4),
        _sl_tau_scenario(2),
        _sl_tau_scenario(4),
        _sl_power_cyclic_scenario(2, 2),
        _sl_power_cyclic_scenario(2, 3),
        _sqrt2_scenario(),
        _diag_antidiag_scenario(),
    ]
    return {s.name: s for s in scenarios}
