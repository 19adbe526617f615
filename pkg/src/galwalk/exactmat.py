"""Exact rational linear algebra: matrices, characteristic polynomials,
univariate polynomials over Q, and coefficientwise reduction mod p.

Everything here is arbitrary-precision and exact.  Matrices and polynomials
are immutable; all operations are pure functions, safe to share across
workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Rational = Fraction


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Square matrix over Q, stored as a tuple of row tuples of Fraction."""

    __slots__ = ("n", "rows", "integral")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_frac(e) for e in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(
            self, "integral", all(e.denominator == 1 for row in rows for e in row)
        )

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return RationalMatrix(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @staticmethod
    def diagonal(entries: Sequence) -> "RationalMatrix":
        es = [_frac(e) for e in entries]
        zero = Fraction(0)
        return RationalMatrix(
            tuple(
                tuple(es[i] if i == j else zero for j in range(len(es)))
                for i in range(len(es))
            )
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RationalMatrix({[list(map(str, r)) for r in self.rows]})"

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def is_integral(self) -> bool:
        return self.integral


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact matrix product; entries come out in lowest terms (Fraction invariant)."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot multiply {a.n}x{a.n} by {b.n}x{b.n}")
    if a.integral and b.integral:
        # plain integer arithmetic avoids per-operation gcd normalization
        an = [[e.numerator for e in row] for row in a.rows]
        bt = list(zip(*[[e.numerator for e in row] for row in b.rows]))
        return RationalMatrix(
            tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                for row in an
            )
        )
    bt = tuple(zip(*b.rows))
    return RationalMatrix(
        tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
            for row in a.rows
        )
    )


def mat_inverse(a: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrix."""
    n = a.n
    work = [list(row) for row in a.rows]
    inv = [[Fraction(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [e / p for e in work[col]]
        inv[col] = [e / p for e in inv[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [e - f * g for e, g in zip(work[r], work[col])]
                inv[r] = [e - f * g for e, g in zip(inv[r], inv[col])]
    return RationalMatrix(inv)


def det(a: RationalMatrix) -> Fraction:
    """Exact determinant by fraction elimination."""
    n = a.n
    work = [list(row) for row in a.rows]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        result *= p
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col] / p
                work[r] = [e - f * g for e, g in zip(work[r], work[col])]
    return result * sign


class RationalPolynomial:
    """Univariate polynomial over Q.

    Coefficients are degree-indexed (coeffs[i] multiplies T^i) with a nonzero
    leading coefficient; the zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPolynomial(
            tuple(x + y for x, y in zip(a, b)) + a[len(b):]
        )

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + RationalPolynomial(tuple(-c for c in other.coeffs))

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    def scale(self, c) -> "RationalPolynomial":
        c = _frac(c)
        return RationalPolynomial(tuple(x * c for x in self.coeffs))

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def evaluate(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            tuple(i * c for i, c in enumerate(self.coeffs))[1:]
        )

    def shift(self, a) -> "RationalPolynomial":
        """Compose with T -> T + a (exact Horner on polynomial arguments)."""
        a = _frac(a)
        x = RationalPolynomial((a, Fraction(1)))
        acc = RationalPolynomial(())
        for c in reversed(self.coeffs):
            acc = acc * x + RationalPolynomial((c,))
        return acc


def poly_divmod(
    f: RationalPolynomial, g: RationalPolynomial
) -> tuple[RationalPolynomial, RationalPolynomial]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f.coeffs)
    quo = [Fraction(0)] * max(0, len(rem) - len(g.coeffs) + 1)
    glead = g.leading()
    gdeg = g.degree
    while len(rem) - 1 >= gdeg and rem:
        c = rem[-1] / glead
        k = len(rem) - 1 - gdeg
        quo[k] = c
        for i, gc in enumerate(g.coeffs):
            rem[k + i] -= c * gc
        while rem and rem[-1] == 0:
            rem.pop()
    return RationalPolynomial(quo), RationalPolynomial(rem)


def poly_gcd(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over Q (Euclid; degrees here are tiny)."""
    a, b = f, g
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


def poly_pow(f: RationalPolynomial, e: int) -> RationalPolynomial:
    out = RationalPolynomial((1,))
    base = f
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def exact_poly_root(f: RationalPolynomial, e: int) -> RationalPolynomial | None:
    """If monic f = q**e with q monic squarefree, return q; otherwise None.

    Used to recognize characteristic polynomials whose eigenvalues all carry
    the same multiplicity e.
    """
    if e == 1:
        return f
    if f.is_zero() or not f.is_monic() or f.degree % e != 0:
        return None
    rad = radical(f)
    if rad.degree * e != f.degree:
        return None
    if poly_pow(rad, e) == f:
        return rad
    return None


def radical(f: RationalPolynomial) -> RationalPolynomial:
    """Squarefree part f / gcd(f, f'), monic."""
    if f.is_zero():
        return f
    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f.monic()
    q, r = poly_divmod(f, g)
    assert r.is_zero()
    return q.monic()


def resultant(f: RationalPolynomial, g: RationalPolynomial) -> Fraction:
    """Resultant via the Sylvester matrix (exact)."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    return det(RationalMatrix(rows))


def discriminant(f: RationalPolynomial) -> Fraction:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.leading()


def is_rational_square(x: Fraction) -> bool:
    """Exact test: x = (a/b)^2 for some rational a/b."""
    x = _frac(x)
    if x < 0:
        return False
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    return rn * rn == x.numerator and rd * rd == x.denominator


def char_poly(a: RationalMatrix) -> RationalPolynomial:
    """Characteristic polynomial det(T*I - a), monic of degree n.

    Faddeev-LeVerrier recurrence: exact over Q, no pivoting, division only by
    the step index.  Validated against cofactor expansion for n <= 4 in the
    test suite.
    """
    n = a.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = RationalMatrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        if k > 1:
            m = mat_mul(a, RationalMatrix(
                tuple(
                    tuple(m.rows[i][j] + (c if i == j else 0) for j in range(n))
                    for i in range(n)
                )
            ))
        else:
            m = a
        c = -m.trace() / k
        coeffs[n - k] = c
    return RationalPolynomial(coeffs)


def char_poly_cofactor(a: RationalMatrix) -> RationalPolynomial:
    """Slow oracle: expand det(T*I - a) by cofactors over Q[T].  Test use only."""
    n = a.n

    def minor_det(rows_idx, cols_idx):
        if not rows_idx:
            return RationalPolynomial((1,))
        i = rows_idx[0]
        total = RationalPolynomial(())
        for pos, j in enumerate(cols_idx):
            if i == j:
                entry = RationalPolynomial((-a.rows[i][j], Fraction(1)))
            else:
                entry = RationalPolynomial((-a.rows[i][j],))
            if entry.is_zero():
                continue
            sub = minor_det(rows_idx[1:], cols_idx[:pos] + cols_idx[pos + 1:])
            term = entry * sub
            if pos % 2:
                term = term.scale(-1)
            total = total + term
        return total

    idx = tuple(range(n))
    return minor_det(idx, idx)


@dataclass(frozen=True)
class PrimeFieldPolynomial:
    """Polynomial over F_p: reduced residues, degree-indexed, leading nonzero."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and (self.coeffs[-1] % self.p == 0):
            raise ValueError("leading coefficient vanishes mod p")
        if any(not (0 <= c < self.p) for c in self.coeffs):
            raise ValueError("coefficients must be reduced residues")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class BadPrime:
    """Reduction failed at p: a denominator vanishes or the degree drops.

    This is a value, not an error; Frobenius sampling skips such primes.
    """

    p: int
    reason: str


def reduce_poly_mod_p(
    f: RationalPolynomial, p: int
) -> PrimeFieldPolynomial | BadPrime:
    """Coefficientwise reduction of f mod p."""
    if f.is_zero():
        return BadPrime(p, "zero polynomial")
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            return BadPrime(p, "denominator divisible by p")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    if out[-1] % p == 0:
        return BadPrime(p, "leading coefficient vanishes mod p")
    return PrimeFieldPolynomial(p, tuple(out))
