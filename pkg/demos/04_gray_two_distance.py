"""The Gray isometry and the two-distance codes it produces.

An element b0 + p*b1 maps to the evaluation vector of f(x) = b0*x + b1 over
F_q, turning homogeneous weight into Hamming weight.  Images of the trace
codes are (nonlinear) codes over F_q whose nonzero pairwise distances take
exactly two values.

Run:  python demos/04_gray_two_distance.py
"""
from grcodes import (
    GaloisRing,
    build_code,
    first_order_rm_code,
    gray_image_analyze,
    gray_map,
    hom_weight,
)

# On Z_4 the homogeneous weight is the classical Lee weight, and the Gray
# map is the classical one: 0,1,2,3 -> 00, 01, 11, 10.
Z4 = GaloisRing(2, 1)
for code in range(4):
    a = Z4.from_code(code)
    print(f"psi({code}) = {gray_map(a)}   w_hom = {hom_weight(a)}")

# The image of the whole ring is the first-order generalized Reed-Muller code.
R9 = GaloisRing(3, 1)
image = {gray_map(x) for x in R9.elements()}
print("\npsi(Z_9) equals the q^2-word RM code:", image == first_order_rm_code(R9))

# Gray images of a trace code and its coset-punctured companion.  Both are
# measured by full pairwise enumeration, no shortcuts through the isometry.
ctx = build_code(2, 1, 2, e=1, d=2, sprime=1)
for which in ("C", "Ctilde"):
    rep = gray_image_analyze(ctx, which)
    print(
        f"\npsi({which}): length {rep.length}, size {rep.size}, "
        f"distances {sorted(rep.distances)}, min {rep.min_distance}, "
        f"two-distance: {rep.two_distance}"
    )

# A larger ternary image: 729 words of length 702 with distances {432, 486}.
big = build_code(3, 1, 3, e=1, d=2, sprime=1)
rep = gray_image_analyze(big, "C")
print(
    f"\npsi(C) over F_3: length {rep.length}, size {rep.size}, "
    f"distances {sorted(rep.distances)}, two-distance: {rep.two_distance}"
)
