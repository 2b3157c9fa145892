"""Gauss sums on GR(p^2, r), computed two independent ways.

Every multiplicative character factors as omega^i * phi_b, every additive
character is indexed by a ring element beta, and the Gauss sum
G(chi, lambda_beta) is a cyclotomic integer.  The closed-form case table
reduces every nontrivial value to a finite-field Gauss sum; summing the
definition literally over all units must give the same element of
Z[zeta_m] -- and does, on every pair of every desk-scale ring.

Run:  python demos/02_gauss_sums.py
"""
from grcodes import CharacterSystem, GaloisRing, format_element

ring = GaloisRing(3, 1)  # Z_9
system = CharacterSystem(ring)
print("ring Z_9, cyclotomic order m =", system.m)

# A few individual sums.  chi = (i, b) means omega^i * phi_b with b in T.
samples = [
    ((0, ring.zero), ring.zero),   # trivial/trivial: q(q-1)
    ((0, ring.zero), ring.element([3])),  # trivial chi, beta in the ideal: -q
    ((1, ring.zero), ring.zero),   # nontrivial chi, trivial lambda: 0
    ((0, ring.one), ring.one),     # the generic closed-form case
    ((1, ring.one), ring.element([6])),
]
for chi, beta in samples:
    closed = system.gauss_sum_closed_form(chi, beta)
    definition = system.gauss_sum_definition(chi, beta)
    print(
        f"chi=(i={chi[0]}, b={format_element(chi[1])}), beta={format_element(beta)}:",
        closed.canonical_reduce(),
        "| equal routes:", closed == definition,
        f"| |G| ~ {abs(definition.approx()):.4f}",
    )

# The full cross-validation sweep: q^3 (q-1) pairs, exact equality required.
pairs = bad = 0
for chi in system.all_mult_chars():
    for beta in ring.elements():
        pairs += 1
        if system.gauss_sum_closed_form(chi, beta) != system.gauss_sum_definition(chi, beta):
            bad += 1
print(f"\nsweep over {pairs} (chi, lambda) pairs: {pairs - bad} equal, {bad} differ")

# Magnitudes: for any nontrivial character of F_Q the Gauss sum has |G|^2 = Q,
# an identity that holds exactly in the cyclotomic ring, not just numerically.
from grcodes import FiniteField, gauss_sum_field

F9 = FiniteField(3, 2)
for i in (1, 3, 5):
    g = gauss_sum_field(F9, i, 24)
    print(f"F_9, character {i}: |G|^2 =", g.abs_square().as_rational_integer())
