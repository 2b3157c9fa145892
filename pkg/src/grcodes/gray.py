"""Homogeneous weight and the Gray isometry into F_q vectors.

The homogeneous weight on GR(p^2, r) takes q - 1 on units, q on the nonzero
part of p*T, and 0 at zero; it generalizes the Lee weight on Z_4.  The Gray
map sends beta = b0 + p*b1 to the evaluation vector of the affine polynomial
f(x) = b0_bar * x + b1_bar over a fixed enumeration of F_q, which makes
(R^n, w_hom) -> (F_q^{nq}, w_Hamming) an isometry.  Images of the trace
codes are (usually nonlinear) two-distance codes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import (
    A_P_TEICH,
    A_UNIT,
    A_ZERO,
    BETA_P_TEICH,
    BETA_UNIT_NO_S,
    BETA_UNIT_S,
    BETA_ZERO,
    CodeContext,
    TableReport,
    TableRow,
)
from .errors import PreconditionViolatedError
from .rings import GaloisRing, GaloisRingElement


def hom_weight(a: GaloisRingElement) -> int:
    """q - 1 on units, q on nonzero p*T, 0 at zero."""
    if a.is_zero():
        return 0
    return a.ring.q - 1 if a.is_unit else a.ring.q


def hom_weight_vec(symbols) -> int:
    return sum(hom_weight(a) for a in symbols)


def d_hom(ctx: CodeContext) -> int:
    """Minimum homogeneous weight over nonzero codewords (valid by linearity)."""
    weights = ctx.hom_weight_per_beta()
    return int(weights[1:].min()) if len(weights) > 1 else 0


# ---------------------------------------------------------------------------
# closed-form homogeneous weights of trace codewords
# ---------------------------------------------------------------------------

def theorem44_hom_weight(ctx: CodeContext, beta: GaloisRingElement) -> int:
    """Homogeneous weight of c_beta from the exact character-sum formula."""
    n, q, Q = ctx.n, ctx.q, ctx.Q
    if beta.is_zero():
        return 0
    if beta.is_unit:
        total = ctx._twisted_sum(
            ctx._table_I_zero(), lambda chi: -ctx.system.mult_exponent(chi, beta)
        ).as_rational_integer()
        value = (q - 1) * (Fraction(n) - Fraction(n, Q * (Q - 1)) * total)
    else:
        _, b = ctx.big.teichmuller_decompose(beta)
        b_bar = ctx.big.reduce_mod_p(b)
        total = ctx._twisted_sum(
            ctx._table_field_eprime(), lambda j: -ctx._field_char_exp(j, b_bar)
        ).as_rational_integer()
        value = (q - 1) * (Fraction(n) - Fraction(n, Q - 1) * total)
    assert value.denominator == 1, f"homogeneous-weight formula not integral: {value}"
    return int(value)


def theorem45_table(ctx: CodeContext) -> TableReport:
    """Homogeneous weights of C and Ctilde by beta class, cross-checked."""
    ctx._require_table_hypotheses(need_e_one=False)
    q, Q, pd, e = ctx.q, ctx.Q, ctx.p**ctx.d, ctx.e
    F = Fraction

    def exact(v: Fraction) -> int:
        assert v.denominator == 1, f"table value not integral: {v}"
        return int(v)

    predictions = {
        BETA_UNIT_S: (exact(F(Q * (q - 1) * (pd - 1), e)), exact(F(Q * (pd - 1), q))),
        BETA_UNIT_NO_S: (exact(F(Q * (q - 1) * pd, e)), exact(F(Q * pd, q))),
        BETA_P_TEICH: (exact(F(Q * (q - 1) * pd, e)), exact(F(Q * pd, q))),
        BETA_ZERO: (0, 0),
    }
    tilde = ctx.build_tilde_code()
    weights = ctx.hom_weight_per_beta()
    tilde_mat = ctx.tilde_symbol_matrix()
    classes = ctx.small_symbol_classes()
    weight_of_class = np.array([0, q - 1, q], dtype=np.int64)
    tilde_weights = weight_of_class[classes[tilde_mat]].sum(axis=1)

    observed_counts = {name: 0 for name in predictions}
    cells: dict[tuple[str, str], tuple[int, int]] = {}
    for code in range(ctx.Q * ctx.Q):
        beta = ctx.big.from_code(code)
        bclass = ctx.beta_class(beta)
        observed_counts[bclass] += 1
        for col, observed in (("w_hom", int(weights[code])), ("w_hom_tilde", int(tilde_weights[code]))):
            predicted = predictions[bclass][0 if col == "w_hom" else 1]
            key = (bclass, col)
            prev = cells.get(key)
            if prev is None or (prev[0] == prev[1] and observed != predicted):
                cells[key] = (predicted, observed)
    rows = [
        TableRow(bclass, col, pred, obs)
        for (bclass, col), (pred, obs) in sorted(cells.items())
    ]
    class_counts = {
        name: (ctx.predicted_class_counts()[name], observed_counts[name])
        for name in predictions
    }
    return TableReport(rows=rows, class_counts=class_counts)


# ---------------------------------------------------------------------------
# the Gray map itself
# ---------------------------------------------------------------------------

def field_enumeration(ring: GaloisRing) -> list[int]:
    """The fixed order of F_q used for evaluation vectors: 0, then generator powers."""
    field = ring.residue_field
    return [0] + [field.exp[k] for k in range(field.q - 1)]


def gray_map(beta: GaloisRingElement) -> tuple[int, ...]:
    """Evaluation vector of f(x) = b0_bar * x + b1_bar over the fixed F_q order."""
    ring = beta.ring
    field = ring.residue_field
    b0, b1 = ring.teichmuller_decompose(beta)
    c0, c1 = ring.reduce_mod_p(b0), ring.reduce_mod_p(b1)
    return tuple(field.add(field.mul(c0, a), c1) for a in field_enumeration(ring))


def gray_map_vec(symbols) -> tuple[int, ...]:
    out: list[int] = []
    for a in symbols:
        out.extend(gray_map(a))
    return tuple(out)


def first_order_rm_code(ring: GaloisRing) -> set[tuple[int, ...]]:
    """All q^2 evaluation vectors of affine polynomials over F_q."""
    field = ring.residue_field
    order = field_enumeration(ring)
    return {
        tuple(field.add(field.mul(c0, a), c1) for a in order)
        for c0 in field.elements()
        for c1 in field.elements()
    }


# ---------------------------------------------------------------------------
# analysis of Gray images of the trace codes
# ---------------------------------------------------------------------------

@dataclass
class GrayImageReport:
    which: str
    length: int
    size: int
    weights: dict[int, int]
    distances: dict[int, int]
    min_distance: int
    two_distance: bool


def _gray_matrix(ctx: CodeContext, symbol_matrix: np.ndarray) -> np.ndarray:
    """Gray images of all codewords as one (Q^2, n*q) array of F_q codes."""
    table = np.zeros((ctx.q * ctx.q, ctx.q), dtype=np.int64)
    for code in range(ctx.q * ctx.q):
        table[code] = gray_map(ctx.small.from_code(code))
    imgs = table[symbol_matrix]  # (Q^2, n, q)
    return imgs.reshape(symbol_matrix.shape[0], -1)

def gray_image_analyze(
    ctx: CodeContext, which: str = "C", assert_two_distance: bool = False
) -> GrayImageReport:
    """Map a whole trace code through the Gray isometry and measure it.

    Verifies injectivity, tallies Hamming weights, and computes the full
    pairwise distance multiset by enumeration (never via the isometry, so
    the result can serve as an independent check of it).
    """
    if which not in ("C", "Ctilde"):
        raise ValueError("which must be 'C' or 'Ctilde'")
    mat = ctx.symbol_matrix() if which == "C" else ctx.tilde_symbol_matrix()
    gray = _gray_matrix(ctx, mat)
    size = len({tuple(row) for row in gray.tolist()})
    weights_arr = (gray != 0).sum(axis=1)
    weights: dict[int, int] = {}
    for w in weights_arr.tolist():
        weights[int(w)] = weights.get(int(w), 0) + 1
    distances: dict[int, int] = {}
    for i in range(gray.shape[0]):
        if i + 1 < gray.shape[0]:
            diffs = (gray[i + 1:] != gray[i]).sum(axis=1)
            for dist, count in zip(*np.unique(diffs, return_counts=True)):
                distances[int(dist)] = distances.get(int(dist), 0) + int(count)
    nonzero = sorted(d for d in distances if d > 0)
    two_distance = len(nonzero) == 2
    if assert_two_distance and not two_distance:
        raise PreconditionViolatedError(
            f"expected a two-distance code, found distances {nonzero}"
        )
    return GrayImageReport(
        which=which,
        length=gray.shape[1],
        size=size,
        weights=weights,
        distances=distances,
        min_distance=nonzero[0] if nonzero else 0,
        two_distance=two_distance,
    )
