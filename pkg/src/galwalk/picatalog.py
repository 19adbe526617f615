"""Catalog of predicted Galois groups as explicit permutation groups, plus
the integer-lattice computation behind coset Weyl group structure.

Each constructor fixes a concrete action on the eigenvalue slots of one
scenario coset.  The point-labeling conventions are documented per
constructor; their correctness is established by oracle validation in the
test suite (exact quartic classification at degree 4, distribution matching
above), not derived symbolically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import prod

from .permkit import (
    EnumeratedGroup,
    GroupTooLarge,
    _generating_subset,
    enumerate_group,
    symmetric_group,
    wreath_product,
)

@dataclass(frozen=True)
class PredictedGroup:
    """A named permutation group on the N eigenvalue slots of a scenario.

    natural_symmetric is set to n when the group is the full symmetric group
    in its natural action; that enables the S_n transposition/long-cycle
    certificate during identification.
    """

    name: str
    group: EnumeratedGroup
    N: int
    natural_symmetric: int | None = None

    def __post_init__(self):
        if self.N != self.group.degree:
            raise ValueError("N must equal the permutation degree")

# ---------------------------------------------------------------------------
# permutation-group constructors
# ---------------------------------------------------------------------------

def _imprimitive_wreath(
    base: EnumeratedGroup, top: EnumeratedGroup, bound: int
) -> EnumeratedGroup:
    """base wr top: one base copy per top point, top permuting blocks rigidly.

    Point (block b, slot i) has index b*base.degree + i.
    """
    n, d = base.degree, top.degree
    expected = base.order ** d * top.order
    if expected > bound:
        raise GroupTooLarge(f"wreath order {expected} exceeds bound {bound}")
    size = n * d
    gens = []
    for b in range(d):
        for g in _generating_subset(base):
            lift = list(range(size))
            for i in range(n):
                lift[b * n + i] = b * n + g[i]
            gens.append(tuple(lift))
    for t in _generating_subset(top):
        lift = list(range(size))
        for b in range(d):
            for i in range(n):
                lift[b * n + i] = t[b] * n + i
        gens.append(tuple(lift))
    result = enumerate_group(gens, degree=size, bound=bound)
    assert result.order == expected
    return result

def pi_sl_n(n: int) -> PredictedGroup:
    """Full symmetric group on the n eigenvalues (the split connected case)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return PredictedGroup(f"sym{n}", symmetric_group(n), n, natural_symmetric=n)

def pi_sl_n_doubled(n: int) -> PredictedGroup:
    """S_n acting simultaneously on eigenvalues and their inverses.

    Points 0..n-1 are the eigenvalues, points n..2n-1 the inverse set; a
    permutation moves both copies in lockstep, so every cycle appears twice.
    """
    sym = symmetric_group(n)
    gens = []

    for g in _generating_subset(sym):
        gens.append(tuple(list(g) + [n + g[i] for i in range(n)]))
    group = enumerate_group(gens, degree=2 * n)
    assert group.order == sym.order
    return PredictedGroup(f"sym{n}_doubled", group, 2 * n)

def _signed_pair_group(r: int) -> EnumeratedGroup:
    """Signed permutations of r letter pairs (a_j, b_j) on 2r points.

    Generated by the within-pair swaps (a_j b_j) and rigid pair
    permutations; order 2^r * r!.
    """
    size = 2 * r
    gens = []
    for j in range(r):
        g = list(range(size))
        g[2 * j], g[2 * j + 1] = g[2 * j + 1], g[2 * j]
        gens.append(tuple(g))
    for j in range(r - 1):
        g = list(range(size))
        g[2 * j], g[2 * j + 2] = g[2 * j + 2], g[2 * j]
        g[2 * j + 1], g[2 * j + 3] = g[2 * j + 3], g[2 * j + 1]
        gens.append(tuple(g))
    group = enumerate_group(gens, degree=size)
    assert group.order == 2 ** r * _factorial(r)
    return group

def pi_sl_n_tau(n: int, bound: int = 2_000_000) -> PredictedGroup:
    """Sign-flip wreath over r = n/2 letter pairs, acting on 4r points.

    Point (pair j, letter in {a, b}, sign in {+, -}) has index
    4j + 2*letter + sign.  The base flips the sign inside each of the 2r
    letters independently; the top is the signed pair group.  Only even n is
    supported: for odd n the action on the two leftover eigenvalue slots is
    not determined, so we refuse rather than guess.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("only even n is supported")
    r = n // 2
    group = wreath_product(2, _signed_pair_group(r), bound=bound)
    expected = 2 ** (2 * r) * 2 ** r * _factorial(r)
    assert group.order == expected
    return PredictedGroup(f"signflip_wreath_{n}", group, 4 * r)

def pi_sl_n_tau_reciprocal(n: int, bound: int = 2_000_000) -> PredictedGroup:
    """Subgroup of pi_sl_n_tau cut out by the square-root product relations.

    The two letters of a pair carry square roots of an eigenvalue and of its
    inverse, whose product is rational, and the products of square roots
    across different pairs land in the degree-2n field already; so the only
    sign change available is the simultaneous flip of every square root.
    Generators: the within-pair letter swap for each pair, the global
    coupled sign flip, and rigid pair permutations.  Order 2^(r+1) * r!.

    The exact quartic oracle (n = 2) and Frobenius statistics (n = 4)
    validate this as the group sampled Galois groups actually realize; see
    the acceptance suite.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("only even n is supported")
    r = n // 2
    size = 4 * r

    def idx(j, letter, sign):
        return 4 * j + 2 * letter + sign

    gens = []
    flip_all = list(range(size))  # negate every square root at once
    for j in range(r):
        for letter in range(2):
            a, b = idx(j, letter, 0), idx(j, letter, 1)
            flip_all[a], flip_all[b] = flip_all[b], flip_all[a]
    gens.append(tuple(flip_all))
    for j in range(r):
        g = list(range(size))  # letter swap, signs carried along
        for s in range(2):
            g[idx(j, 0, s)], g[idx(j, 1, s)] = g[idx(j, 1, s)], g[idx(j, 0, s)]
        gens.append(tuple(g))
    for j in range(r - 1):
        g = list(range(size))  # rigid pair transposition
        for off in range(4):
            g[4 * j + off], g[4 * (j + 1) + off] = (
                g[4 * (j + 1) + off],
                g[4 * j + off],
            )
        gens.append(tuple(g))
    group = enumerate_group(gens, degree=size, bound=bound)
    assert group.order == 2 ** (r + 1) * _factorial(r)
    return PredictedGroup(f"reciprocal_wreath_{n}", group, size)

def pi_sl_power_identity(n: int, d: int) -> PredictedGroup:
    """Direct product of d symmetric groups, one per factor block.

    Point (block b, slot i) has index n*b + i; block b holds the
    eigenvalues of the b-th factor.
    """
    size = n * d
    gens = []

    sym = symmetric_group(n)
    for b in range(d):
        for g in _generating_subset(sym):
            lift = list(range(size))
            for i in range(n):
                lift[b * n + i] = b * n + g[i]
            gens.append(tuple(lift))
    group = enumerate_group(gens, degree=size)
    assert group.order == _factorial(n) ** d
    return PredictedGroup(f"sym{n}_power{d}", group, size)

def pi_sl_power_cyclic(n: int, d: int, bound: int = 2_000_000) -> PredictedGroup:
    """Coset group for d cyclically permuted factors: rotations with trivial
    total rotation, block permutations, and the multiplicative unit action.

    Points sit in n blocks of size d; block j holds the d-th roots attached
    to one eigenvalue of the cycle product, slot i carrying the i-th root of
    unity twist.  Index of (block j, slot i) is d*j + i.
    The rotation factor is the kernel of the total-rotation sum, matching
    the determinant-one constraint (rank n-1).
    """
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    size = n * d
    gens = []
    for j in range(n - 1):
        g = list(range(size))  # block j rotates +1, reference block -1
        for i in range(d):
            g[d * j + i] = d * j + (i + 1) % d
            g[d * (n - 1) + i] = d * (n - 1) + (i - 1) % d
        gens.append(tuple(g))
    for j in range(n - 1):
        g = list(range(size))  # rigid adjacent block transposition
        for i in range(d):
            g[d * j + i], g[d * (j + 1) + i] = g[d * (j + 1) + i], g[d * j + i]
        gens.append(tuple(g))
    units = [a for a in range(2, d) if _gcd(a, d) == 1]
    for a in units:
        g = list(range(size))  # unit action on every block simultaneously
        for j in range(n):
            for i in range(d):
                g[d * j + i] = d * j + (a * i) % d
        gens.append(tuple(g))
    group = enumerate_group(gens, degree=size, bound=bound)
    phi = 1 + len(units)
    assert group.order == d ** (n - 1) * _factorial(n) * phi
    return PredictedGroup(f"cycshift_{n}x{d}", group, size)

def pi_restriction_of_scalars(
    n: int, gal: EnumeratedGroup, bound: int = 2_000_000
) -> PredictedGroup:
    """S_n wr gal in its imprimitive action on n * gal.degree points.

    gal must be transitive (it is a Galois group acting on the embeddings).
    """
    if not _is_transitive(gal):
        raise ValueError("gal must act transitively")
    group = _imprimitive_wreath(symmetric_group(n), gal, bound)
    return PredictedGroup(
        f"sym{n}_wr_{gal.order}on{gal.degree}", group, n * gal.degree
    )

def _is_transitive(group: EnumeratedGroup) -> bool:
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in group.elements:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return len(orbit) == group.degree

def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out

def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a

# ---------------------------------------------------------------------------
# integer lattices: Smith normal form and coset Weyl structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeAutomorphism:
    """Finite-order automorphism of Z^rank given by an integer matrix.

    The matrix acts on column vectors; determinant must be +1 or -1.
    """

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.matrix)
        if r == 0 or any(len(row) != r for row in self.matrix):
            raise ValueError("matrix must be square and nonempty")
        d = _int_det(self.matrix)
        if d not in (1, -1):
            raise ValueError("matrix must be unimodular")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def order(self, bound: int = 1000) -> int:
        ident = tuple(
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)
        )
        acc = self.matrix
        for k in range(1, bound + 1):
            if acc == ident:
                return k
            acc = _int_mat_mul(acc, self.matrix)
        raise ValueError(f"no finite order up to {bound}")

def _int_mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )

def _int_mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)

def _int_det(a) -> int:
    n = len(a)
    work = [[Fraction(x) for x in row] for row in a]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        out *= p
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / p
                work[r] = [e - f * g for e, g in zip(work[r], work[col])]
    val = out * sign
    assert val.denominator == 1
    return val.numerator

def smith_normal_form(mat) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diagonal, U, V) with U*mat*V diagonal, U and V unimodular.

    Row/column reduction over arbitrary-precision integers; the diagonal is
    nonnegative with each entry dividing the next.  Ranks here never exceed
    a handful, so no care for asymptotics is taken.
    """
    a = [list(row) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def move_smallest_pivot(t) -> bool:
        pivot, best = None, None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best, pivot = abs(a[i][j]), (i, j)
        if pivot is None:
            return False
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        return True

    t = 0
    while t < min(rows, cols):
        if not move_smallest_pivot(t):
            break
        while True:
            # clear the pivot column, swapping in any nonzero remainder
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            # pivot must divide the rest of the submatrix
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is not None:
                add_row(offender, t, 1)
                continue
            break
        t += 1

    k = min(rows, cols)
    for i in range(k):
        if a[i][i] < 0:
            for j in range(cols):
                a[i][j] = -a[i][j]
            for j in range(rows):
                u[i][j] = -u[i][j]
    diag = [a[i][i] for i in range(k)]
    return diag, u, v

def integer_kernel(mat) -> list[tuple[int, ...]]:
    """Basis (as column vectors) of {x in Z^cols : mat @ x = 0}.

    Columns of the SNF right transform whose diagonal entry vanishes; the
    resulting lattice is saturated because V is unimodular.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    diag, _, v = smith_normal_form(mat)
    basis = []
    for j in range(cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append(tuple(v[i][j] for i in range(cols)))
    return basis

def _left_kernel_rows(mat) -> list[list[int]]:
    """Integer rows spanning {y : y @ mat = 0} over Q."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    # solve mat^T y = 0 by Gaussian elimination over Q
    work = [[Fraction(mat[i][j]) for i in range(rows)] for j in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        pivot = next((i for i in range(r, cols) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(cols):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(rows) if c not in pivots]
    out = []
    for f in free:
        y = [Fraction(0)] * rows
        y[f] = Fraction(1)
        for idx, c in enumerate(pivots):
            y[c] = -work[idx][f]
        lcm = 1
        for x in y:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in y])
    return out

@dataclass(frozen=True)
class CosetWeylReport:
    """Structure of the coset Weyl group computed from lattice data."""

    n: int
    fixed_weyl_order: int
    torsion_invariants: tuple[int, ...]
    torsion_order: int
    total_order: int

def identity_lattice_map(n: int) -> LatticeAutomorphism:
    r = n - 1
    return LatticeAutomorphism(
        tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    )

def dual_flip_lattice_map(n: int) -> LatticeAutomorphism:
    """Action of the transpose-inverse coset on the weight lattice of rank n-1.

    In the basis f_1..f_{n-1} (images of the diagonal characters e_1..e_{n-1},
    with e_n = -(f_1+...+f_{n-1})), the map sends e_i to -e_{n+1-i}.
    """
    r = n - 1
    cols = []
    for i in range(r):  # image of f_i is -e_{n-1-i} (0-based target)
        target = n - 1 - i
        if target == r:  # -e_n = f_1 + ... + f_{n-1}
            cols.append([1] * r)
        else:
            col = [0] * r
            col[target] = -1
            cols.append(col)
    return LatticeAutomorphism(
        tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    )

def _perm_weight_matrix(n: int, sigma) -> tuple[tuple[int, ...], ...]:
    """Matrix of e_i -> e_sigma(i) on the rank n-1 weight lattice."""
    r = n - 1
    cols = []
    for i in range(r):
        target = sigma[i]
        if target == r:
            cols.append([-1] * r)
        else:
            col = [0] * r
            col[target] = 1
            cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

def coset_weyl_structure(n: int, tau: LatticeAutomorphism) -> CosetWeylReport:
    """Coset Weyl group size from the weight-lattice action of the coset.

    Two layers are computed and multiplied:
      * the subgroup of the rank n-1 Weyl group (S_n on the weight lattice)
        commuting with tau, by direct enumeration;
      * the finite fixed-point group of tau on the quotient torus, read off
        from the Smith normal form of (tau - 1) restricted to the saturation
        of its image.
    """
    r = n - 1
    if tau.rank != r:
        raise ValueError(f"tau must act on the rank {r} lattice")
    tau.order()  # raises for non-finite-order input
    m = tau.matrix

    fixed = 0
    for sigma in permutations(range(n)):
        pm = _perm_weight_matrix(n, sigma)
        if _int_mat_mul(pm, m) == _int_mat_mul(m, pm):
            fixed += 1

    a = tuple(
        tuple(m[i][j] - int(i == j) for j in range(r)) for i in range(r)
    )
    lk = _left_kernel_rows(a)
    basis = integer_kernel(lk) if lk else [
        tuple(int(i == j) for i in range(r)) for j in range(r)
    ]
    if not basis:
        invariants: tuple[int, ...] = ()
        torsion_order = 1
    else:
        images = [_int_mat_vec(a, b) for b in basis]
        coords = _solve_in_basis(basis, images)
        diag, _, _ = smith_normal_form(coords)
        assert all(d != 0 for d in diag), "restriction is not injective"
        invariants = tuple(d for d in diag if d != 1)
        torsion_order = prod(diag) if diag else 1
    return CosetWeylReport(
        n=n,
        fixed_weyl_order=fixed,
        torsion_invariants=invariants,
        torsion_order=torsion_order,
        total_order=fixed * torsion_order,
    )

def _solve_in_basis(basis, images) -> list[list[int]]:
    """Coordinates of each image vector in the given lattice basis.

    basis: list of s column vectors in Z^r; images: list of s vectors lying
    in their span.  Returns the s x s integer coordinate matrix, column j
    holding the coordinates of images[j].
    """
    r = len(basis[0])
    s = len(basis)
    out = [[0] * s for _ in range(s)]
    for j, img in enumerate(images):
        work = [[Fraction(basis[i][row]) for i in range(s)] + [Fraction(img[row])]
                for row in range(r)]
        # Gaussian elimination on the r x (s+1) augmented system
        piv_rows = []
        rr = 0
        for c in range(s):
            pivot = next((i for i in range(rr, r) if work[i][c] != 0), None)
            if pivot is None:
                continue
            work[rr], work[pivot] = work[pivot], work[rr]
            pv = work[rr][c]
            work[rr] = [x / pv for x in work[rr]]
            for i in range(r):
                if i != rr and work[i][c] != 0:
                    f = work[i][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[rr])]
            piv_rows.append(c)
            rr += 1
        for i in range(rr, r):
            assert work[i][s] == 0, "image not in basis span"
        for idx, c in enumerate(piv_rows):
            val = work[idx][s]
            assert val.denominator == 1, "non-integral coordinate"
            out[c][j] = val.numerator
    return out
