"""A walking tour of GR(p^2, r): construction, Teichmuller set, Frobenius, traces.

Run:  python demos/01_galois_ring_tour.py
"""
from grcodes import GaloisRing, RingTower, format_element

# GR(4,2) = Z_4[x]/(x^2 + x + 1): the smallest ring where everything is visible.
# The modulus is found automatically: the lexicographically smallest primitive
# polynomial over F_2 is Hensel-lifted until x mod h has order exactly q - 1.
ring = GaloisRing(2, 2)
print("modulus:", list(ring.modulus), " (little-endian, mod 4)")
print("|R| =", ring.q**2, " |M| =", ring.q, " |R*| =", ring.q * (ring.q - 1))

# The Teichmuller set T = {0} u <xi> gives unique coordinates a = a1 + 2*a2.
print("\nTeichmuller set:", [format_element(t) for t in ring.teichmuller_set()])
for code in (7, 10, 13):
    a = ring.from_code(code)
    a1, a2 = ring.teichmuller_decompose(a)
    print(f"  {format_element(a)} = {format_element(a1)} + 2*({format_element(a2)})")

# Units factor as T* x (1 + 2T); the Frobenius acts coordinatewise by p-th powers.
a = ring.element([1, 2])
t, v = ring.unit_decompose(a)
print(f"\nunit {format_element(a)} = {format_element(t)} * (1 + 2*{format_element(v)})")
print("frobenius fixes the prime ring: sigma(3) =", format_element(ring.frobenius(ring.element([3]), 2)))
print("sigma(xi) = xi^2:", ring.frobenius(ring.xi, 2) == ring.xi**2)

# Traces walk down the tower GR(4,4) > GR(4,2) > Z_4, and the whole tower
# commutes with reduction mod p onto F_16 > F_4 > F_2.
tower = RingTower(GaloisRing(2, 4), 2)
big = tower.big
alpha = big.element([1, 2, 0, 3])
print("\ntower:", tower)
print("trace of", format_element(alpha), "to GR(4,2):", format_element(tower.trace(alpha)))
print("absolute trace:", big.trace_to_prime(alpha))
lhs = tower.small.reduce_mod_p(tower.trace(alpha))
rhs = tower.field_trace(big.reduce_mod_p(alpha))
print("reduction diagram commutes here:", lhs == rhs)
