"""Trace codes over GR(p^2, r) from subgroups of the extension unit group.

A subgroup G = D x (1 + pV) of the units of R_big = GR(p^2, r*s) is given
by a divisor e of Q - 1 (D is generated by the e-th power of the Teichmuller
generator) and an F_p-basis of a subspace Vbar of F_Q.  The code C(G) lists
the relative traces T(beta * x) over the n = |G| group elements, one word
per beta in R_big; Ctilde(G) keeps one coordinate per coset of the subgroup
G meet R^*.

Symbol counts N_beta(a) are computed two independent ways: by direct tally
of the encoded word, and by the exact character-sum formulas whose value is
assembled in Z[zeta_m] and converted to a rational integer at the end.  The
two must agree everywhere; any non-integral intermediate raises instead of
rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import (
    CharacterSystem,
    field_quotient_characters,
    gauss_sum_field,
    ring_quotient_characters,
)
from .cyclotomic import CyclotomicInteger
from .errors import (
    InvalidSubgroupError,
    NegativeCountError,
    PreconditionViolatedError,
)
from .rings import FiniteField, GaloisRing, GaloisRingElement, RingTower


# ---------------------------------------------------------------------------
# F_p-linear algebra on field elements
# ---------------------------------------------------------------------------

def echelon_basis(field: FiniteField, vectors) -> list[int]:
    """Row-reduced F_p-basis of the span of the given field elements.

    Deterministic: pivots are taken in digit order, rows sorted by pivot.
    """
    p = field.p
    rows = []
    for v in vectors:
        digits = list(field.coeffs(v))
        for pivot, prow in rows:
            if digits[pivot]:
                f = digits[pivot]
                digits = [(x - f * y) % p for x, y in zip(digits, prow)]
        nz = next((i for i, x in enumerate(digits) if x), None)
        if nz is None:
            continue
        inv = pow(digits[nz], -1, p)
        digits = [(x * inv) % p for x in digits]
        rows.append((nz, digits))
        rows.sort()
    return [field.from_coeffs(prow) for _, prow in rows]


def span_subspace(field: FiniteField, basis) -> list[int]:
    """All p^d elements spanned by the basis, as a sorted list of codes."""
    span = [0]
    for b in basis:
        multiples = [0]
        acc = 0
        for _ in range(field.p - 1):
            acc = field.add(acc, b)
            multiples.append(acc)
        span = [field.add(x, s) for s in multiples for x in span]
    return sorted(set(span))


def dual_subspace(field: FiniteField, basis) -> list[int]:
    """Echelon basis of the annihilator under the trace pairing.

    A_perp = { x : trace(a * x) = 0 for every a in A }, solved as an F_p
    linear system in the digit coordinates of x.
    """
    p, n = field.p, field.r
    unit_vectors = [field.from_coeffs([int(i == j) for i in range(n)]) for j in range(n)]
    matrix = [
        [field.trace_to_prime(field.mul(a, ej)) for ej in unit_vectors] for a in basis
    ]
    # Gaussian elimination to find the null space
    rows = [list(r) for r in matrix]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis_out = []
    for fcol in free:
        vec = [0] * n
        vec[fcol] = 1
        for prow, pcol in zip(rows[:rank], pivots):
            vec[pcol] = (-prow[fcol]) % p
        basis_out.append(field.from_coeffs(vec))
    return echelon_basis(field, basis_out)


# ---------------------------------------------------------------------------
# subgroup specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupSpec:
    """G = D x (1 + pV): e fixes D, vbar_basis spans Vbar inside F_Q."""

    e: int
    vbar_basis: tuple[int, ...]


def canonical_subspace_basis(
    field: FiniteField, d: int, sprime: int | None, q: int
) -> list[int]:
    """Deterministic choice of a d-dimensional Vbar.

    Without sprime: greedily take the smallest independent field codes.
    With sprime (s = p * sprime): start from the basis forced by the dual
    condition (the annihilator of the subfield of order q^sprime), then
    extend greedily; if d is too small for that condition, refuse.
    """
    start: list[int] = []
    if sprime is not None:
        Qp = q**sprime
        subfield = [x for x in field.elements() if field.pow(x, Qp) == x]
        forced = dual_subspace(field, echelon_basis(field, [x for x in subfield if x]))
        if d < len(forced):
            raise PreconditionViolatedError(
                f"d={d} is below the minimum {len(forced)} forced by the dual-subspace "
                f"hypothesis (annihilator of the order-{Qp} subfield)"
            )
        start = forced
    basis = echelon_basis(field, start)
    spanned = set(span_subspace(field, basis))
    for code in range(1, field.q):
        if len(basis) == d:
            break
        if code not in spanned:
            basis = echelon_basis(field, basis + [code])
            spanned = set(span_subspace(field, basis))
    if len(basis) != d:
        raise InvalidSubgroupError(f"cannot build a {d}-dimensional subspace")
    return basis


# ---------------------------------------------------------------------------
# weight tables and reports
# ---------------------------------------------------------------------------

@dataclass
class WeightTable:
    n: int
    size: int
    hamming: dict[int, int]
    complete: dict[tuple[int, ...], int]
    homogeneous: dict[int, int]
    min_hamming: int
    min_homogeneous: int


@dataclass
class BoundsReport:
    m1: Fraction
    m2: Fraction
    verdict: bool
    d_hamming: Fraction | None
    remark_sufficient: bool


@dataclass
class TableRow:
    beta_class: str
    a_class: str
    predicted: int
    enumerated: int

    @property
    def match(self) -> bool:
        return self.predicted == self.enumerated


@dataclass
class TableReport:
    rows: list[TableRow]
    class_counts: dict[str, tuple[int, int]]  # name -> (predicted, enumerated)
    extras: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def all_match(self) -> bool:
        return (
            all(r.match for r in self.rows)
            and all(p == o for p, o in self.class_counts.values())
            and all(p == o for p, o in self.extras.values())
        )


@dataclass
class TildeCode:
    rep_indices: tuple[int, ...]
    l: int
    n_prime: int


BETA_UNIT_S = "unit_S"
BETA_UNIT_NO_S = "unit_noS"
BETA_P_TEICH = "pTstar"
BETA_ZERO = "zero"
A_UNIT = "unit"
A_P_TEICH = "pTstar"
A_ZERO = "zero"


# ---------------------------------------------------------------------------
# the code context
# ---------------------------------------------------------------------------

class CodeContext:
    """Everything derived from one (R in R_big, G) pair, immutable after build."""

    def __init__(
        self,
        p: int,
        r: int,
        s: int,
        e: int,
        vbar_basis=None,
        d: int | None = None,
        sprime: int | None = None,
        modulus=None,
        allow_large: bool = False,
    ):
        if sprime is not None and s != p * sprime:
            raise InvalidSubgroupError(f"s={s} must equal p*s'={p * sprime}")
        self.p, self.r, self.s = p, r, s
        self.sprime = sprime
        big = GaloisRing(p, r * s, modulus=modulus, allow_large=allow_large)
        self.tower = RingTower(big, r)
        self.big = big
        self.small = self.tower.small
        self.q = self.small.q
        self.Q = big.q
        if e < 1 or (self.Q - 1) % e:
            raise InvalidSubgroupError(f"e={e} does not divide Q-1={self.Q - 1}")
        self.e = e
        self.f = (self.Q - 1) // e
        self.e_prime = math.gcd(e, (self.Q - 1) // (self.q - 1))

        FQ = big.residue_field
        if vbar_basis is None:
            if d is None:
                raise InvalidSubgroupError("either vbar_basis or d must be given")
            vbar_basis = canonical_subspace_basis(FQ, d, sprime, self.q)
        vbar_basis = list(vbar_basis)
        reduced = echelon_basis(FQ, vbar_basis)
        if len(reduced) != len(vbar_basis):
            raise InvalidSubgroupError("vbar basis rows are dependent over F_p")
        self.spec = SubgroupSpec(e, tuple(reduced))
        self.d = len(reduced)
        self.vbar_span = span_subspace(FQ, reduced)
        self.n = self.f * (p**self.d)

        # enumerate G = { xi^(e k) (1 + p v) } in canonical element order
        elements = []
        lift = big.lift_teichmuller
        for k in range(self.f):
            dpart = big.xi_powers[(e * k) % (self.Q - 1)]
            for vcode in self.vbar_span:
                elements.append(dpart * (big.one + lift(vcode) * p))
        if len({x.coeffs for x in elements}) != self.n:
            raise InvalidSubgroupError("group enumeration produced duplicates")
        elements.sort(key=lambda x: x.code)
        self.group_elements = elements
        self._group_codes = {x.coeffs for x in elements}
        for x in elements:  # exhaustive closure check
            for y in elements:
                if (x * y).coeffs not in self._group_codes:
                    raise InvalidSubgroupError("G is not closed under multiplication")

        # dual-subspace data for the closed-form tables
        self.vbar_perp = dual_subspace(FQ, self.spec.vbar_basis)
        self.s_dual: frozenset[int] | None = None
        self.vperp_in_subfield: bool | None = None
        if sprime is not None:
            Qp = self.q**sprime
            in_subfield = lambda x: FQ.pow(x, Qp) == x
            self.vperp_in_subfield = all(in_subfield(x) for x in self.vbar_perp)
            if self.vperp_in_subfield:
                subfield_trace = lambda y: self._subfield_abs_trace(y, r * sprime)
                members = []
                for a in (x for x in FQ.elements() if in_subfield(x)):
                    if all(subfield_trace(FQ.mul(a, x)) == 0 for x in self.vbar_perp):
                        members.append(a)
                self.s_dual = frozenset(members)

        self._system: CharacterSystem | None = None
        self._small_system: CharacterSystem | None = None
        self._caches: dict[str, object] = {}

    def _subfield_abs_trace(self, y: int, degree: int) -> int:
        FQ = self.big.residue_field
        acc, cur = 0, y
        for _ in range(degree):
            acc = FQ.add(acc, cur)
            cur = FQ.pow(cur, self.p)
        assert acc < self.p, "absolute subfield trace left F_p"
        return acc

    # -- character machinery ------------------------------------------------

    @property
    def m(self) -> int:
        return math.lcm(self.p * self.p, self.Q - 1 if self.Q > 2 else 1)

    @property
    def system(self) -> CharacterSystem:
        if self._system is None:
            self._system = CharacterSystem(self.big, self.m)
        return self._system

    @property
    def small_system(self) -> CharacterSystem:
        if self._small_system is None:
            self._small_system = CharacterSystem(self.small, self.m)
        return self._small_system

    def _cache(self, key: str, builder):
        if key not in self._caches:
            self._caches[key] = builder()
        return self._caches[key]

    def _subgroup_generators(self, which: str) -> tuple[list[GaloisRingElement], int]:
        """Generators and exact size for G, G(1+M) and G R*."""
        big, p = self.big, self.p
        FQ = big.residue_field
        gens = [big.xi_powers[self.e % (self.Q - 1)]] if self.Q > 2 else []
        gens += [
            big.one + big.lift_teichmuller(v) * p for v in self.spec.vbar_basis
        ]
        span = list(self.vbar_span)
        if which in ("G1M", "GRstar"):
            # adjoin 1 + pT of the subring: its residues form the subfield F_q
            fq_basis = [self.tower.embed_field(self.small.residue_field.from_coeffs(
                [int(i == j) for i in range(self.r)])) for j in range(self.r)]
            gens += [big.one + big.lift_teichmuller(v) * p for v in fq_basis]
            span = span_subspace(FQ, echelon_basis(FQ, list(self.spec.vbar_basis) + fq_basis))
        if which == "GRstar":
            gens.append(self.tower.embed(self.small.xi))
            tpart = (self.Q - 1) // self.e_prime
        else:  # G or G(1+M): the Teichmuller part is D itself
            tpart = self.f
        return gens, tpart * len(span)

    def chars_mod_G(self):
        return self._cache(
            "chars_G",
            lambda: ring_quotient_characters(self.system, *self._subgroup_generators("G")),
        )

    def chars_mod_G1M(self):
        return self._cache(
            "chars_G1M",
            lambda: ring_quotient_characters(self.system, *self._subgroup_generators("G1M")),
        )

    def chars_mod_GRstar(self):
        return self._cache(
            "chars_GRstar",
            lambda: ring_quotient_characters(self.system, *self._subgroup_generators("GRstar")),
        )

    def field_chars_mod_D(self) -> list[int]:
        return field_quotient_characters(self.Q, self.e)

    def field_chars_mod_eprime(self) -> list[int]:
        return field_quotient_characters(self.Q, self.e_prime)

    def _field_gauss(self, j: int) -> CyclotomicInteger:
        table = self._cache("gq_big", dict)
        if j not in table:
            table[j] = gauss_sum_field(self.big.residue_field, j, self.m)
        return table[j]

    def _field_char_exp(self, j: int, code: int) -> int:
        """Exponent of the j-th big-field character at a nonzero field code."""
        scale = self.m // (self.Q - 1)
        return (j * self.big.residue_field.log[code] % (self.Q - 1)) * scale % self.m

    def _restrict_char(self, chi):
        """Restriction of a big-ring character to the embedded subring."""
        i, b = chi
        b_bar_small = self.tower.field_trace(self.big.reduce_mod_p(b))
        return (i % (self.q - 1) if self.q > 2 else 0,
                self.small.lift_teichmuller(b_bar_small))

    # precomputed (character, Gauss-sum product) tables for the formulas ------

    def _table_I_unit(self):
        def build():
            out = []
            for chi in self.chars_mod_G():
                g_big = self.system.gauss_sum_closed_form(chi, self.big.one)
                g_small = self.small_system.gauss_sum_closed_form(
                    self._restrict_char(chi), self.small.one
                )
                out.append((chi, g_big * g_small.conjugate()))
            return out
        return self._cache("table_I_unit", build)

    def _table_I_pteich(self):
        def build():
            out = []
            for chi in self.chars_mod_G1M():
                g_big = self.system.gauss_sum_closed_form(chi, self.big.one)
                gq = self.small_system.gauss_sum_field_induced(chi[0])
                out.append((chi, self.q * (g_big * gq.conjugate())))
            return out
        return self._cache("table_I_pteich", build)

    def _table_I_zero(self):
        def build():
            return [
                (chi, self.system.gauss_sum_closed_form(chi, self.big.one))
                for chi in self.chars_mod_GRstar()
            ]
        return self._cache("table_I_zero", build)

    def _table_II_unit(self):
        def build():
            out = []
            for j in self.field_chars_mod_D():
                gq = self.small_system.gauss_sum_field_induced(j)
                out.append((j, self.Q * (self._field_gauss(j) * gq.conjugate())))
            return out
        return self._cache("table_II_unit", build)

    def _table_field_eprime(self):
        def build():
            return [(j, self._field_gauss(j)) for j in self.field_chars_mod_eprime()]
        return self._cache("table_field_eprime", build)

    def _table_1_pteich(self):
        def build():
            out = []
            for j in self.field_chars_mod_D():
                gq = self.small_system.gauss_sum_field_induced(j)
                out.append((j, gq.conjugate() * self._field_gauss(j)))
            return out
        return self._cache("table_1_pteich", build)

    # -- encoding and direct counting ----------------------------------------

    def encode(self, beta: GaloisRingElement):
        """The codeword c_beta: relative traces of beta * x over the group."""
        return tuple(self.tower.trace(beta * x) for x in self.group_elements)

    def count_components(self, beta: GaloisRingElement) -> dict[int, int]:
        """Direct tally N_beta(a) for every a in the small ring, by element code."""
        counts = {code: 0 for code in range(self.q * self.q)}
        for symbol in self.encode(beta):
            counts[symbol.code] += 1
        return counts

    def symbol_matrix(self) -> np.ndarray:
        """(Q^2, n) array of small-ring symbol codes, one row per beta code.

        The encoder is Z_{p^2}-linear in the coefficient vector of beta, so
        the whole sweep is a single modular matrix product; a spot check
        against the element-wise encoder guards the construction.
        """
        def build():
            p2, rs, rr = self.p * self.p, self.r * self.s, self.r
            basis = [self.big.element([int(i == j) for i in range(rs)]) for j in range(rs)]
            W = np.zeros((len(self.group_elements), rr, rs), dtype=np.int64)
            for idx, x in enumerate(self.group_elements):
                for j, bj in enumerate(basis):
                    W[idx, :, j] = self.tower.trace(bj * x).coeffs
            codes = np.arange(self.Q * self.Q, dtype=np.int64)
            digits = np.empty((self.Q * self.Q, rs), dtype=np.int64)
            rem = codes.copy()
            for j in range(rs):
                digits[:, j] = rem % p2
                rem //= p2
            symbols = np.einsum("bj,ntj->bnt", digits, W) % p2
            weights = p2 ** np.arange(rr, dtype=np.int64)
            mat = (symbols * weights).sum(axis=2)
            for code in range(0, self.Q * self.Q, max(1, (self.Q * self.Q) // 8)):
                beta = self.big.from_code(code)
                expect = [sym.code for sym in self.encode(beta)]
                assert list(mat[code]) == expect, "fast encoder disagrees with encode()"
            return mat
        return self._cache("symbol_matrix", build)

    # -- symbol classification ------------------------------------------------

    def small_symbol_classes(self) -> np.ndarray:
        """Class of each small-ring code: 0 = zero, 1 = unit, 2 = p * Teichmuller."""
        def build():
            out = np.zeros(self.q * self.q, dtype=np.int64)
            for code in range(self.q * self.q):
                a = self.small.from_code(code)
                if a.is_zero():
                    out[code] = 0
                elif a.is_unit:
                    out[code] = 1
                else:
                    out[code] = 2
            return out
        return self._cache("symbol_classes", build)

    def beta_class(self, beta: GaloisRingElement) -> str:
        if beta.is_zero():
            return BETA_ZERO
        if not beta.is_unit:
            return BETA_P_TEICH
        if self.s_dual is None:
            raise PreconditionViolatedError("S-condition requires the s' tower data")
        _, beta2 = self.big.unit_decompose(beta)
        FQ = self.big.residue_field
        w = FQ.add(self.tower_sprime_trace(self.big.reduce_mod_p(beta2)), 1)
        return BETA_UNIT_S if w in self.s_dual else BETA_UNIT_NO_S

    def tower_sprime_trace(self, y: int) -> int:
        """Relative field trace F_Q -> F_{Q'}, the value kept inside F_Q."""
        FQ = self.big.residue_field
        Qp = self.q**self.sprime
        acc, cur = 0, y
        for _ in range(self.p):
            acc = FQ.add(acc, cur)
            cur = FQ.pow(cur, Qp)
        return acc

    # -- the general component-count formula -----------------------------------

    def _twisted_sum(self, table, exponent_fn) -> CyclotomicInteger:
        total = CyclotomicInteger.zero(self.m)
        for key, weight in table:
            total = total + CyclotomicInteger.zeta(self.m, exponent_fn(key)) * weight
        return total

    def _as_count(self, value: Fraction) -> int:
        if value.denominator != 1 or not (0 <= value <= self.n):
            raise NegativeCountError(
                f"component-count formula produced {value}, outside 0..{self.n}"
            )
        return int(value)

    def theorem31_N(self, beta: GaloisRingElement, a: GaloisRingElement) -> int:
        """N_beta(a) from the exact character-sum formula (never by counting)."""
        n, q, Q = self.n, self.q, self.Q
        if beta.is_zero():
            return n if a.is_zero() else 0
        big, small, tower = self.big, self.small, self.tower
        sys_big = self.system

        if not beta.is_unit:
            _, b = big.teichmuller_decompose(beta)
            b_bar = big.reduce_mod_p(b)
            if a.is_unit:
                return 0
            if a.is_zero():
                total = self._twisted_sum(
                    self._table_field_eprime(),
                    lambda j: -self._field_char_exp(j, b_bar),
                )
                value = Fraction(n, q) + Fraction(n * (q - 1), q * (Q - 1)) * total.as_rational_integer()
                return self._as_count(value)
            _, c = small.teichmuller_decompose(a)
            c_emb = tower.embed_field(small.reduce_mod_p(c))
            total = self._twisted_sum(
                self._table_1_pteich(),
                lambda j: self._field_char_exp(j, c_emb) - self._field_char_exp(j, b_bar),
            )
            value = Fraction(n, q) + Fraction(n, q * (Q - 1)) * total.as_rational_integer()
            return self._as_count(value)

        beta_inv = big.inverse(beta)
        beta1_bar = big.reduce_mod_p(beta)  # residue of the Teichmuller part
        if a.is_unit:
            a_emb = tower.embed(a)
            part_I = self._twisted_sum(
                self._table_I_unit(),
                lambda chi: sys_big.mult_exponent(chi, a_emb * beta_inv),
            )
            a_bar_emb = tower.embed_field(small.reduce_mod_p(a))
            part_II = self._twisted_sum(
                self._table_II_unit(),
                lambda j: self._field_char_exp(j, a_bar_emb) - self._field_char_exp(j, beta1_bar),
            )
        elif a.is_zero():
            part_I = q * (q - 1) * self._twisted_sum(
                self._table_I_zero(),
                lambda chi: -sys_big.mult_exponent(chi, beta),
            )
            part_II = Q * (q - 1) * self._twisted_sum(
                self._table_field_eprime(),
                lambda j: -self._field_char_exp(j, beta1_bar),
            )
        else:
            _, a2 = small.teichmuller_decompose(a)
            a2_emb = tower.embed(a2)
            part_I = self._twisted_sum(
                self._table_I_pteich(),
                lambda chi: sys_big.mult_exponent(chi, a2_emb * beta_inv),
            )
            part_II = Q * (q - 1) * self._twisted_sum(
                self._table_field_eprime(),
                lambda j: -self._field_char_exp(j, beta1_bar),
            )
        combined = (part_I + part_II).as_rational_integer()
        value = Fraction(n, q * q) + Fraction(n, q * q * Q * (Q - 1)) * combined
        return self._as_count(value)

    # -- size / minimum-distance bounds -----------------------------------------

    def bounds_M1_M2(self) -> BoundsReport:
        n, q, Q = self.n, self.q, self.Q
        FQ = self.big.residue_field
        table_ep = self._table_field_eprime()
        m1 = max(
            Fraction(
                self._twisted_sum(table_ep, lambda j, code=b: self._field_char_exp(j, code))
                .as_rational_integer(),
                Q - 1,
            )
            for b in FQ.units()
        )
        table_zero = self._table_I_zero()
        m2 = None
        for beta in self.big.units():
            c1 = self._twisted_sum(
                table_zero, lambda chi: -self.system.mult_exponent(chi, beta)
            )
            beta1_bar = self.big.reduce_mod_p(beta)
            c2 = self._twisted_sum(
                table_ep, lambda j: -self._field_char_exp(j, beta1_bar)
            )
            combined = (q * c1 + Q * c2).as_rational_integer()
            candidate = Fraction(combined, (q + 1) * Q * (Q - 1))
            if m2 is None or candidate > m2:
                m2 = candidate
        verdict = m1 < 1 and m2 < 1
        d_h = None
        if verdict:
            d_h = min(
                Fraction(n * (q - 1), q) * (1 - m1),
                Fraction(n * (q * q - 1), q * q) * (1 - m2),
            )
        remark = ((Q - 1) // self.e_prime) * self.p**self.d > Q and (
            (Q - 1) // self.e_prime
        ) ** 2 > Q
        return BoundsReport(m1, m2, verdict, d_h, remark)

    # -- exhaustive weight tables -------------------------------------------------

    def hamming_distribution(self) -> WeightTable:
        mat = self.symbol_matrix()
        q2 = self.q * self.q
        zero_counts = (mat == 0).sum(axis=1)
        weights = self.n - zero_counts
        hamming: dict[int, int] = {}
        for w, count in enumerate(np.bincount(weights, minlength=self.n + 1)):
            if count:
                hamming[w] = int(count)
        complete: dict[tuple[int, ...], int] = {}
        hom_weights = self.hom_weight_per_beta()
        homogeneous: dict[int, int] = {}
        for w in hom_weights:
            homogeneous[int(w)] = homogeneous.get(int(w), 0) + 1
        for row in mat:
            key = tuple(int(c) for c in np.bincount(row, minlength=q2))
            complete[key] = complete.get(key, 0) + 1
        nonzero_h = [w for w in hamming if w > 0]
        nonzero_hom = sorted({w for w in homogeneous if w > 0})
        return WeightTable(
            n=self.n,
            size=len({tuple(row) for row in mat.tolist()}),
            hamming=hamming,
            complete=complete,
            homogeneous=homogeneous,
            min_hamming=min(nonzero_h) if nonzero_h else 0,
            min_homogeneous=nonzero_hom[0] if nonzero_hom else 0,
        )

    def hom_weight_per_beta(self) -> np.ndarray:
        mat = self.symbol_matrix()
        classes = self.small_symbol_classes()
        weight_of_class = np.array([0, self.q - 1, self.q], dtype=np.int64)
        return weight_of_class[classes[mat]].sum(axis=1)

    # -- closed-form tables ---------------------------------------------------

    def _require_table_hypotheses(self, need_e_one: bool):
        if need_e_one and self.e != 1:
            raise PreconditionViolatedError("hypothesis e = 1 fails")
        if not need_e_one and self.e_prime != 1:
            raise PreconditionViolatedError("hypothesis gcd(e, (Q-1)/(q-1)) = 1 fails")
        if self.sprime is None:
            raise PreconditionViolatedError("hypothesis s = p*s' fails (no s' supplied)")
        if not self.vperp_in_subfield:
            raise PreconditionViolatedError(
                "hypothesis Vbar_perp inside the order-q^s' subfield fails"
            )
        lower = self.r * (self.p - 1) * self.sprime
        if not (self.r * self.s >= self.d >= lower):
            raise PreconditionViolatedError(
                f"hypothesis rs >= d >= r(p-1)s' fails: d={self.d}, bound={lower}"
            )

    def predicted_class_counts(self) -> dict[str, int]:
        Q, pd = self.Q, self.p**self.d
        return {
            BETA_UNIT_S: pd * (Q - 1),
            BETA_UNIT_NO_S: (Q - pd) * (Q - 1),
            BETA_P_TEICH: Q - 1,
            BETA_ZERO: 1,
        }

    def _exact_int(self, value: Fraction) -> int:
        assert value.denominator == 1, f"closed form is not integral: {value}"
        return int(value)

    def table1_predictions(self) -> dict[str, dict[str, int]]:
        """Predicted N_beta(a) per beta class and a class (e = 1 setting)."""
        q, Q, pd = self.q, self.Q, self.p**self.d
        F = Fraction
        return {
            BETA_UNIT_S: {
                A_UNIT: self._exact_int(F(Q * pd, q * q)),
                A_P_TEICH: self._exact_int(F(Q * (pd - q), q * q)),
                A_ZERO: self._exact_int(F(pd * (Q - q * q), q * q) + F(Q * (q - 1), q)),
            },
            BETA_UNIT_NO_S: {
                A_UNIT: self._exact_int(F(Q * pd, q * q)),
                A_P_TEICH: self._exact_int(F(Q * pd, q * q)),
                A_ZERO: self._exact_int(F(pd * (Q - q * q), q * q)),
            },
            BETA_P_TEICH: {
                A_UNIT: 0,
                A_P_TEICH: self._exact_int(F(Q * pd, q)),
                A_ZERO: self._exact_int(F((Q - q) * pd, q)),
            },
            BETA_ZERO: {A_UNIT: 0, A_P_TEICH: 0, A_ZERO: self.n},
        }

    def theorem33_table(self) -> TableReport:
        """Symbol-count table in the e = 1 setting, every cell cross-checked."""
        self._require_table_hypotheses(need_e_one=True)
        predictions = self.table1_predictions()
        mat = self.symbol_matrix()
        classes = self.small_symbol_classes()
        a_class_of_code = {0: A_ZERO, 1: A_UNIT, 2: A_P_TEICH}
        observed_counts = {name: 0 for name in predictions}
        # per (beta class, a class): predicted value, observed value (a mismatch,
        # once seen, stays visible in the report)
        cells: dict[tuple[str, str], tuple[int, int]] = {}
        for code in range(self.Q * self.Q):
            beta = self.big.from_code(code)
            bclass = self.beta_class(beta)
            observed_counts[bclass] += 1
            counts = np.bincount(mat[code], minlength=self.q * self.q)
            for a_code in range(self.q * self.q):
                aclass = a_class_of_code[int(classes[a_code])]
                predicted = predictions[bclass][aclass]
                enumerated = int(counts[a_code])
                key = (bclass, aclass)
                prev = cells.get(key)
                if prev is None or (prev[0] == prev[1] and enumerated != predicted):
                    cells[key] = (predicted, enumerated)
        rows = [
            TableRow(bclass, aclass, pred, enum)
            for (bclass, aclass), (pred, enum) in sorted(cells.items())
        ]
        class_counts = {
            name: (self.predicted_class_counts()[name], observed_counts[name])
            for name in predictions
        }
        table = self.hamming_distribution()
        q, Q, pd = self.q, self.Q, self.p**self.d
        extras = {
            "min_hamming_distance": (self._exact_int(Fraction(Q * pd * (q - 1), q)), table.min_hamming),
            "code_size": (Q * Q, table.size),
        }
        return TableReport(rows=rows, class_counts=class_counts, extras=extras)

    def theorem34_params(self) -> dict[str, tuple[int, int]]:
        """Closed-form (n, d, n~, d~) with enumeration cross-checks."""
        self._require_table_hypotheses(need_e_one=False)
        q, Q, pd, e = self.q, self.Q, self.p**self.d, self.e
        F = Fraction
        n_pred = self._exact_int(F((Q - 1) * pd, e))
        d_pred = self._exact_int(F(pd * Q * (q - 1), e * q))
        nt_pred = self._exact_int(F((Q - 1) * pd, q * (q - 1)))
        dt_pred = self._exact_int(F(pd * Q, q * q))
        table = self.hamming_distribution()
        tilde = self.build_tilde_code()
        return {
            "n": (n_pred, self.n),
            "d": (d_pred, table.min_hamming),
            "n_tilde": (nt_pred, tilde.n_prime),
            "d_tilde": (dt_pred, self.tilde_min_hamming()),
        }

    # -- the coset-punctured code ------------------------------------------------

    def build_tilde_code(self) -> TildeCode:
        """Coset representatives of G meet R^* in G, canonically smallest first."""
        def build():
            fixed = [
                idx
                for idx, x in enumerate(self.group_elements)
                if self.tower.fixed_by_frobenius(x)
            ]
            stab = {self.group_elements[i].coeffs for i in fixed}
            l = len(stab)
            assigned: set[tuple[int, ...]] = set()
            reps: list[int] = []
            for idx, x in enumerate(self.group_elements):
                if x.coeffs in assigned:
                    continue
                reps.append(idx)
                for g_idx in fixed:
                    assigned.add((x * self.group_elements[g_idx]).coeffs)
            assert len(reps) * l == self.n, "cosets do not partition the group"
            return TildeCode(tuple(reps), l, len(reps))
        return self._cache("tilde", build)

    def encode_tilde(self, beta: GaloisRingElement):
        tilde = self.build_tilde_code()
        return tuple(
            self.tower.trace(beta * self.group_elements[i]) for i in tilde.rep_indices
        )

    def tilde_symbol_matrix(self) -> np.ndarray:
        tilde = self.build_tilde_code()
        return self.symbol_matrix()[:, list(tilde.rep_indices)]

    def tilde_min_hamming(self) -> int:
        mat = self.tilde_symbol_matrix()
        weights = (mat != 0).sum(axis=1)
        return int(weights[1:].min()) if mat.shape[0] > 1 else 0

    def __repr__(self):
        return (
            f"CodeContext(p={self.p}, r={self.r}, s={self.s}, e={self.e}, "
            f"d={self.d}, n={self.n})"
        )


def build_code(
    p: int,
    r: int,
    s: int,
    e: int,
    vbar_basis=None,
    d: int | None = None,
    sprime: int | None = None,
    modulus=None,
    allow_large: bool = False,
) -> CodeContext:
    """Construct the full code context; see CodeContext for the fields."""
    return CodeContext(
        p, r, s, e,
        vbar_basis=vbar_basis, d=d, sprime=sprime,
        modulus=modulus, allow_large=allow_large,
    )
