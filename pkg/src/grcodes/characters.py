"""Additive and multiplicative characters of GR(p^2, r), and their Gauss sums.

Additive characters are indexed by a ring element beta:
    lambda_beta(x) = zeta_{p^2} ^ Tr(beta * x)
Multiplicative characters are indexed by (i, b) with 0 <= i < q-1 and b a
Teichmuller element:
    chi(x) = zeta_{q-1}^(i*k) * zeta_p^tr(b_bar * v_bar)   for x = xi^k (1 + p v).

Gauss sums G(chi, lambda) = sum over units of chi(x) lambda(x) are computed
two independent ways: literally by enumeration, and through the closed-form
case table that reduces every nontrivial value to a finite-field Gauss sum.
Cross-validating the two routes on whole rings is one of the package's main
correctness checks.
"""
from __future__ import annotations

import math

from .cyclotomic import CyclotomicInteger, RootAccumulator
from .errors import InvalidSubgroupError, NotAUnitError
from .rings import FiniteField, GaloisRing, GaloisRingElement


def gauss_sum_field(field: FiniteField, i: int, m: int) -> CyclotomicInteger:
    """Gauss sum over F_q of the character sending the generator to zeta_{q-1}^i.

    G_q(omega^i) = sum over x in F_q^* of omega^i(x) * zeta_p^tr(x).
    """
    q, p = field.q, field.p
    if m % p or (q > 2 and m % (q - 1)):
        raise ValueError(f"root order {m} does not hold zeta_{p} and zeta_{q - 1}")
    scale_t = m // (q - 1) if q > 2 else 0
    scale_p = m // p
    acc = RootAccumulator(m)
    for x in field.units():
        e_mult = (i * field.log[x]) * scale_t
        e_add = field.trace_to_prime(x) * scale_p
        acc.add_root(e_mult + e_add)
    return acc.value()


class CharacterSystem:
    """Character evaluation and Gauss sums for one ring, at a fixed root order m.

    m defaults to lcm(p^2, q-1), the smallest order holding every root of
    unity the characters produce.  A larger multiple may be supplied so that
    several rings in a tower share one cyclotomic context.
    """

    def __init__(self, ring: GaloisRing, m: int | None = None):
        self.ring = ring
        q, p = ring.q, ring.p
        default = math.lcm(p * p, q - 1 if q > 2 else 1)
        self.m = default if m is None else m
        if self.m % (p * p) or (q > 2 and self.m % (q - 1)):
            raise ValueError(f"root order {self.m} is incompatible with {ring!r}")
        self._scale_p2 = self.m // (p * p)
        self._scale_p = self.m // p
        self._scale_t = self.m // (q - 1) if q > 2 else 0
        self._unit_data: list[GaloisRingElement] | None = None
        self._unit_log_data: list[tuple[int, int]] | None = None
        self._gq_cache: dict[int, CyclotomicInteger] = {}
        self._add_rows: dict[tuple[int, ...], list[int]] = {}
        self._mult_rows: dict[tuple, list[int]] = {}

    # -- character ids ------------------------------------------------------

    def trivial_mult(self) -> tuple[int, GaloisRingElement]:
        return (0, self.ring.zero)

    def mult_char_is_trivial(self, chi: tuple[int, GaloisRingElement]) -> bool:
        i, b = chi
        order = self.ring.q - 1
        return (order <= 1 or i % order == 0) and b.is_zero()

    def all_mult_chars(self):
        order = max(self.ring.q - 1, 1)
        for i in range(order):
            for b in self.ring.teichmuller_set():
                yield (i, b)

    # -- exponent helpers (exact integers, no cyclotomic objects) ------------

    def additive_exponent(self, beta: GaloisRingElement, x: GaloisRingElement) -> int:
        return (self.ring.trace_to_prime(beta * x) * self._scale_p2) % self.m

    def mult_exponent(self, chi: tuple[int, GaloisRingElement], x: GaloisRingElement) -> int:
        i, b = chi
        ring = self.ring
        if not x.is_unit:
            raise NotAUnitError(f"{x!r} is not a unit")
        t, v = ring.unit_decompose(x)
        e = 0
        if ring.q > 2:
            k = ring.teichmuller_log[t.coeffs]
            e += (i * k % (ring.q - 1)) * self._scale_t
        field = ring.residue_field
        bv = field.mul(ring.reduce_mod_p(b), ring.reduce_mod_p(v))
        e += field.trace_to_prime(bv) * self._scale_p
        return e % self.m

    # -- character evaluation -------------------------------------------------

    def eval_additive(self, beta: GaloisRingElement, x: GaloisRingElement) -> CyclotomicInteger:
        return CyclotomicInteger.zeta(self.m, self.additive_exponent(beta, x))

    def eval_mult(self, chi: tuple[int, GaloisRingElement], x: GaloisRingElement) -> CyclotomicInteger:
        return CyclotomicInteger.zeta(self.m, self.mult_exponent(chi, x))

    def eval_mult_conj(self, chi, x) -> CyclotomicInteger:
        return CyclotomicInteger.zeta(self.m, -self.mult_exponent(chi, x))

    # -- Gauss sums, definitional route ----------------------------------------

    def _units(self):
        if self._unit_data is None:
            self._unit_data = list(self.ring.units())
        return self._unit_data

    def _unit_logs(self):
        # per-unit (Teichmuller log k, residue of the 1+pv part) for x = xi^k(1+pv)
        if self._unit_log_data is None:
            ring = self.ring
            data = []
            for x in self._units():
                t, v = ring.unit_decompose(x)
                data.append((ring.teichmuller_log[t.coeffs], ring.reduce_mod_p(v)))
            self._unit_log_data = data
        return self._unit_log_data

    def _additive_row(self, beta: GaloisRingElement) -> list[int]:
        # exponent of lambda_beta at each unit, in definition order
        row = self._add_rows.get(beta.coeffs)
        if row is None:
            row = [self.additive_exponent(beta, x) for x in self._units()]
            self._add_rows[beta.coeffs] = row
        return row

    def _mult_row(self, chi: tuple[int, GaloisRingElement]) -> list[int]:
        # exponent of chi at each unit, in definition order
        i, b = chi
        key = (i % max(self.ring.q - 1, 1), b.coeffs)
        row = self._mult_rows.get(key)
        if row is None:
            ring, field = self.ring, self.ring.residue_field
            b_bar = ring.reduce_mod_p(b)
            order = ring.q - 1
            row = []
            for k, v_bar in self._unit_logs():
                e = (i * k % order) * self._scale_t if ring.q > 2 else 0
                e += field.trace_to_prime(field.mul(b_bar, v_bar)) * self._scale_p
                row.append(e % self.m)
            self._mult_rows[key] = row
        return row

    def gauss_sum_definition(
        self, chi: tuple[int, GaloisRingElement], beta: GaloisRingElement
    ) -> CyclotomicInteger:
        """G(chi, lambda_beta) summed literally over all q(q-1) units."""
        acc = RootAccumulator(self.m)
        for em, ea in zip(self._mult_row(chi), self._additive_row(beta)):
            acc.add_root(em + ea)
        return acc.value()

    # -- Gauss sums, closed-form route -----------------------------------------

    def gauss_sum_field_induced(self, i: int) -> CyclotomicInteger:
        """Gauss sum on the residue field of the character induced by omega^i."""
        key = i % (self.ring.q - 1) if self.ring.q > 2 else 0
        if key not in self._gq_cache:
            self._gq_cache[key] = gauss_sum_field(self.ring.residue_field, key, self.m)
        return self._gq_cache[key]

    def gauss_sum_principal(self, chi: tuple[int, GaloisRingElement]) -> CyclotomicInteger:
        """G(chi) = G(chi, lambda_1) in closed form.

        Zero when chi is trivial on 1 + pT; otherwise q * omega^i(b') *
        zeta_{p^2}^Tr(b'), where b' = b for p = 2 and b' = -b for odd p.
        """
        i, b = chi
        ring = self.ring
        if self.mult_char_is_trivial(chi):
            return CyclotomicInteger.zero(self.m)
        if b.is_zero():
            return CyclotomicInteger.zero(self.m)
        b_prime = b if ring.p == 2 else -b
        k = ring.teichmuller_log[b_prime.coeffs]
        e = 0
        if ring.q > 2:
            e += (i * k % (ring.q - 1)) * self._scale_t
        e += ring.trace_to_prime(b_prime) * self._scale_p2
        return ring.q * CyclotomicInteger.zeta(self.m, e)

    def gauss_sum_lambda_p(self, chi: tuple[int, GaloisRingElement]) -> CyclotomicInteger:
        """G(chi, lambda_p) in closed form: q * G_q(omega^i) or zero."""
        i, b = chi
        if self.mult_char_is_trivial(chi):
            return CyclotomicInteger.zero(self.m)
        if b.is_zero():
            return self.ring.q * self.gauss_sum_field_induced(i)
        return CyclotomicInteger.zero(self.m)

    def gauss_sum_closed_form(
        self, chi: tuple[int, GaloisRingElement], beta: GaloisRingElement
    ) -> CyclotomicInteger:
        """Full case dispatch for G(chi, lambda_beta); must agree with the definition."""
        ring = self.ring
        q = ring.q
        if self.mult_char_is_trivial(chi):
            if beta.is_zero():
                return CyclotomicInteger.from_int(self.m, q * (q - 1))
            if beta.is_unit:
                return CyclotomicInteger.zero(self.m)
            return CyclotomicInteger.from_int(self.m, -q)
        if beta.is_zero():
            return CyclotomicInteger.zero(self.m)
        if beta.is_unit:
            twist = self.eval_mult_conj(chi, beta)
            return twist * self.gauss_sum_principal(chi)
        # beta = p*y with y in T*: twist by conj(chi(y)) and reduce to lambda_p
        _, y = ring.teichmuller_decompose(beta)
        twist = self.eval_mult_conj(chi, y)
        return twist * self.gauss_sum_lambda_p(chi)


# ---------------------------------------------------------------------------
# characters of quotient groups
# ---------------------------------------------------------------------------

def field_quotient_characters(field_order: int, e: int) -> list[int]:
    """Indices of characters of a cyclic group of size field_order - 1 that are
    trivial on the subgroup generated by the e-th power of the generator."""
    n = field_order - 1
    if n == 0 or n % e:
        raise InvalidSubgroupError(f"{e} does not divide {field_order} - 1")
    step = n // e
    return [j * step for j in range(e)]


def ring_quotient_characters(
    system: CharacterSystem,
    generators: list[GaloisRingElement],
    subgroup_size: int,
) -> list[tuple[int, GaloisRingElement]]:
    """Characters of the unit group trivial on the subgroup the generators span.

    The returned list is deterministic (ordered by (i, Teichmuller code)) and
    its size is verified against the index of the subgroup.
    """
    ring = system.ring
    chars = [
        chi
        for chi in system.all_mult_chars()
        if all(system.mult_exponent(chi, g) == 0 for g in generators)
    ]
    ambient = ring.q * (ring.q - 1)
    if len(chars) * subgroup_size != ambient:
        raise InvalidSubgroupError(
            f"quotient character count {len(chars)} x subgroup size {subgroup_size} "
            f"!= unit group order {ambient}; generators do not span the subgroup"
        )
    return chars
