"""Exact arithmetic in the ring of cyclotomic integers Z[zeta_m].

Values are stored in group-algebra form: an integer vector indexed by
exponents of zeta_m = exp(2*pi*i/m).  That representation is closed under
the ring operations and is cheap to accumulate character sums into.
Equality and rationality are decided by reducing modulo the m-th
cyclotomic polynomial; no floating point is involved anywhere on the
verification path.

>>> z = CyclotomicInteger.zeta(4)
>>> z * z == -1
True
>>> sum_of_cube_roots = sum(CyclotomicInteger.zeta(3, k) for k in range(3))
>>> sum_of_cube_roots.is_zero()
True
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import NotRationalError, OrderMismatchError

# Exact rationals: the stdlib Fraction already keeps values reduced with a
# positive denominator, which is all the invariants we need.
ExactRational = Fraction


def _trim(coeffs: list[int]) -> list[int]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


def _divmod_exact(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of integer polynomials; den must be monic."""
    assert den and den[-1] == 1
    num = list(num)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            quo[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return quo, _trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Little-endian integer coefficients of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError("root order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _divmod_exact(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k is the canonical form of x^k modulo Phi_m, for 0 <= k < m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg > 0:
        cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by x, fold the overflow back with x^deg = -(phi[:-1])
        lead = cur[deg - 1] if deg > 0 else 0
        nxt = [0] + cur[: deg - 1]
        if lead:
            for i in range(deg):
                nxt[i] -= lead * phi[i]
        cur = nxt
    return tuple(rows)


class CyclotomicInteger:
    """An element of Z[zeta_m] in group-algebra form.

    ``coeffs[k]`` is the integer multiplicity of zeta_m^k.  Two values are
    equal when their reductions modulo Phi_m agree, so the same element may
    have many internal representations.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        coeffs = tuple(coeffs)
        if m < 1 or len(coeffs) != m:
            raise ValueError("coefficient vector must have length m >= 1")
        self.m = m
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "CyclotomicInteger":
        return cls(m, (0,) * m)

    @classmethod
    def one(cls, m: int) -> "CyclotomicInteger":
        return cls.from_int(m, 1)

    @classmethod
    def from_int(cls, m: int, value: int) -> "CyclotomicInteger":
        c = [0] * m
        c[0] = value
        return cls(m, c)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicInteger":
        """The root of unity zeta_m^k."""
        c = [0] * m
        c[k % m] += 1
        return cls(m, c)

    # -- ring operations ----------------------------------------------

    def _coerce_operand(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            return CyclotomicInteger.from_int(self.m, other)
        if isinstance(other, CyclotomicInteger):
            if other.m != self.m:
                raise OrderMismatchError(
                    f"root orders differ: {self.m} vs {other.m}; coerce explicitly"
                )
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInteger(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInteger(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CyclotomicInteger(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.m, [other * a for a in self.coeffs])
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.m
        out = [0] * m
        sparse_self = [(k, c) for k, c in enumerate(self.coeffs) if c]
        sparse_other = [(k, c) for k, c in enumerate(other.coeffs) if c]
        for i, a in sparse_self:
            for j, b in sparse_other:
                out[(i + j) % m] += a * b
        return CyclotomicInteger(m, out)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicInteger":
        """Complex conjugation, i.e. zeta^k -> zeta^(-k)."""
        m = self.m
        out = [0] * m
        for k, c in enumerate(self.coeffs):
            if c:
                out[(-k) % m] += c
        return CyclotomicInteger(m, out)

    def abs_square(self) -> "CyclotomicInteger":
        """The value times its complex conjugate."""
        return self * self.conjugate()

    def coerce(self, m_new: int) -> "CyclotomicInteger":
        """Lift into Z[zeta_{m_new}] where m | m_new (zeta_m = zeta_{m_new}^(m_new/m))."""
        if m_new % self.m != 0:
            raise OrderMismatchError(f"{self.m} does not divide {m_new}")
        stride = m_new // self.m
        out = [0] * m_new
        for k, c in enumerate(self.coeffs):
            if c:
                out[k * stride] += c
        return CyclotomicInteger(m_new, out)

    # -- canonical form and predicates ----------------------------------

    def canonical(self) -> tuple[int, ...]:
        """Coefficients of the unique representative of degree < deg(Phi_m)."""
        rows = _reduction_rows(self.m)
        deg = len(rows[0])
        out = [0] * deg
        for k, c in enumerate(self.coeffs):
            if c:
                row = rows[k]
                for i in range(deg):
                    out[i] += c * row[i]
        return tuple(out)

    def canonical_reduce(self) -> "CyclotomicInteger":
        """Same value, rewritten with all exponents below deg(Phi_m); idempotent."""
        can = self.canonical()
        out = [0] * self.m
        out[: len(can)] = can
        return CyclotomicInteger(self.m, out)

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def is_rational_integer(self) -> bool:
        can = self.canonical()
        return not any(can[1:])

    def as_rational_integer(self) -> int:
        """The value as a plain integer; raises NotRationalError otherwise."""
        can = self.canonical()
        if any(can[1:]):
            raise NotRationalError(
                f"value is not rational: canonical form {can} over Z[zeta_{self.m}]"
            )
        return can[0] if can else 0

    def approx(self) -> complex:
        """Floating-point evaluation, for display only; never used for checks."""
        return sum(
            c * cmath.exp(2j * cmath.pi * k / self.m)
            for k, c in enumerate(self.coeffs)
            if c
        )

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational_integer() and self.as_rational_integer() == other
        if isinstance(other, CyclotomicInteger):
            if other.m != self.m:
                raise OrderMismatchError(
                    f"root orders differ: {self.m} vs {other.m}; coerce explicitly"
                )
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.canonical()))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.canonical()):
            if not c:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(f"z^{k}")
            else:
                terms.append(f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc[{self.m}]({body})"


class RootAccumulator:
    """Mutable accumulator for sums of roots of unity of a fixed order.

    Character sums add one root of unity per group element; accumulating
    exponent counts in place avoids building an intermediate object per term.
    """

    __slots__ = ("m", "counts")

    def __init__(self, m: int):
        self.m = m
        self.counts = [0] * m

    def add_root(self, exponent: int, multiplicity: int = 1) -> None:
        self.counts[exponent % self.m] += multiplicity

    def value(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.m, self.counts)


def rational_combination(parts: list[tuple[Fraction, CyclotomicInteger]]) -> Fraction:
    """Evaluate sum(scale * value) where every value must be a rational integer.

    Raises NotRationalError if any cyclotomic part fails to reduce to an
    integer; this is how formula bugs surface instead of being rounded away.
    """
    total = Fraction(0)
    for scale, value in parts:
        total += scale * value.as_rational_integer()
    return total
