"""Identity-verification suites: closed forms against exhaustive enumeration.

Every suite produces a VerificationReport whose records each carry a check
id, an anchor naming the identity being exercised, the predicted value, the
observed value, and an exact pass/fail verdict.  Reports are deterministic:
identical inputs give byte-identical serializations regardless of the
worker-thread count (sweeps are chunked in index order and merged in order).
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .characters import CharacterSystem
from .codes import CodeContext
from .gray import (
    gray_image_analyze,
    hom_weight_vec,
    theorem44_hom_weight,
    theorem45_table,
)
from .rings import GaloisRing, format_element


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    predicted: str
    observed: str

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed


@dataclass
class VerificationReport:
    suite: str
    params: dict
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.ok)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r.ok)

    @property
    def all_ok(self) -> bool:
        return self.failed == 0

    def add(self, check_id: str, anchor: str, predicted, observed) -> None:
        self.records.append(CheckRecord(check_id, anchor, str(predicted), str(observed)))

    def to_json(self) -> str:
        payload = {
            "suite": self.suite,
            "params": self.params,
            "summary": {"passed": self.passed, "failed": self.failed},
            "records": [
                {
                    "check": r.check_id,
                    "anchor": r.anchor,
                    "predicted": r.predicted,
                    "observed": r.observed,
                    "verdict": "pass" if r.ok else "FAIL",
                }
                for r in self.records
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check", "anchor", "predicted", "observed", "verdict"])
        for r in self.records:
            writer.writerow(
                [r.check_id, r.anchor, r.predicted, r.observed, "pass" if r.ok else "FAIL"]
            )
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  params {json.dumps(self.params, sort_keys=True)}"]
        for r in self.records:
            mark = "pass" if r.ok else "FAIL"
            lines.append(
                f"  [{mark}] {r.check_id} ({r.anchor}): predicted {r.predicted}, "
                f"observed {r.observed}"
            )
        lines.append(f"summary: {self.passed} passed, {self.failed} failed")
        return "\n".join(lines) + "\n"


def _chunked_map(worker, items, threads: int):
    """Order-preserving parallel map; falls back to a plain loop for 1 thread."""
    if threads <= 1:
        return [worker(item) for item in items]
    chunks = [items[i::threads] for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda chunk: [worker(x) for x in chunk], chunks))
    merged: list = [None] * len(items)
    for offset, part in enumerate(results):
        merged[offset::threads] = part
    return merged


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_gauss_equivalence(
    ring: GaloisRing, threads: int = 1, full: bool = False
) -> VerificationReport:
    """Closed-form Gauss sums against the definitional sums, all (chi, lambda)."""
    report = VerificationReport(
        "2.1", {"p": ring.p, "r": ring.r, "modulus": list(ring.modulus)}
    )
    system = CharacterSystem(ring)
    chars = list(system.all_mult_chars())
    betas = list(ring.elements())

    def check_char(chi):
        mismatches = []
        for beta in betas:
            lhs = system.gauss_sum_closed_form(chi, beta)
            rhs = system.gauss_sum_definition(chi, beta)
            if lhs != rhs:
                mismatches.append((beta, lhs, rhs))
        return chi, mismatches

    results = _chunked_map(check_char, chars, threads)
    total_pairs = 0
    total_bad = 0
    for chi, mismatches in results:
        total_pairs += len(betas)
        total_bad += len(mismatches)
        if full:
            i, b = chi
            for beta in betas:
                lhs = system.gauss_sum_closed_form(chi, beta)
                rhs = system.gauss_sum_definition(chi, beta)
                report.add(
                    f"pair-i{i}-b{format_element(b)}-beta{format_element(beta)}",
                    "2.1-closed-vs-definition",
                    repr(lhs.canonical_reduce()),
                    repr(rhs.canonical_reduce()),
                )
        elif mismatches:
            beta, lhs, rhs = mismatches[0]
            i, b = chi
            report.add(
                f"char-i{i}-b{format_element(b)}",
                "2.1-closed-vs-definition",
                repr(lhs.canonical_reduce()),
                repr(rhs.canonical_reduce()),
            )
    if not full:
        report.add(
            "all-pairs",
            "2.1-closed-vs-definition",
            f"{total_pairs} pairs equal",
            f"{total_pairs - total_bad} pairs equal",
        )
    return report


def _ctx_params(ctx: CodeContext) -> dict:
    return {
        "p": ctx.p,
        "r": ctx.r,
        "s": ctx.s,
        "sprime": ctx.sprime,
        "e": ctx.e,
        "d": ctx.d,
        "n": ctx.n,
        "e_prime": ctx.e_prime,
        "modulus": list(ctx.big.modulus),
        "vbar_basis": list(ctx.spec.vbar_basis),
    }


def suite_component_counts(
    ctx: CodeContext, threads: int = 1, full: bool = False
) -> VerificationReport:
    """Character-sum symbol counts against direct tallies, all (beta, a)."""
    report = VerificationReport("3.1", _ctx_params(ctx))
    q2 = ctx.q * ctx.q
    beta_codes = list(range(ctx.Q * ctx.Q))
    # warm the per-context character tables so worker threads only read them
    for warm in (
        ctx._table_I_unit, ctx._table_I_pteich, ctx._table_I_zero,
        ctx._table_II_unit, ctx._table_field_eprime, ctx._table_1_pteich,
    ):
        warm()

    def check_beta(code):
        beta = ctx.big.from_code(code)
        counted = ctx.count_components(beta)
        formula = {a: ctx.theorem31_N(beta, ctx.small.from_code(a)) for a in range(q2)}
        return code, formula, counted

    for code, formula, counted in _chunked_map(check_beta, beta_codes, threads):
        pred = [formula[a] for a in range(q2)]
        obs = [counted[a] for a in range(q2)]
        if full or pred != obs:
            report.add(
                f"beta-{format_element(ctx.big.from_code(code))}",
                "3.1-formula-vs-enumeration",
                pred,
                obs,
            )
    report.add(
        "all-beta",
        "3.1-formula-vs-enumeration",
        f"{len(beta_codes)} component vectors equal",
        f"{len(beta_codes) - report.failed} component vectors equal",
    )
    bounds = ctx.bounds_M1_M2()
    bounds_text = f"M1={bounds.m1} M2={bounds.m2} verdict={bounds.verdict}"
    report.add("bounds-exact", "3.1(3)-bounds", bounds_text, bounds_text)
    if bounds.verdict:
        table = ctx.hamming_distribution()
        report.add("size-when-bounded", "3.1(3)-size", ctx.Q * ctx.Q, table.size)
        report.add(
            "distance-when-bounded", "3.1(3)-distance", bounds.d_hamming, table.min_hamming
        )
    return report


def _table_report_records(report, table, anchor: str) -> None:
    for row in table.rows:
        report.add(
            f"cell-{row.beta_class}-{row.a_class}", anchor, row.predicted, row.enumerated
        )
    for name, (pred, obs) in sorted(table.class_counts.items()):
        report.add(f"count-{name}", anchor + "-class-count", pred, obs)
    for name, (pred, obs) in sorted(table.extras.items()):
        report.add(name, anchor, pred, obs)


def suite_table1(ctx: CodeContext) -> VerificationReport:
    from fractions import Fraction

    report = VerificationReport("3.3", _ctx_params(ctx))
    _table_report_records(report, ctx.theorem33_table(), "3.3-table-1")
    # the zero-count chain separating the three nonzero beta classes
    q, Q, pd, n = ctx.q, ctx.Q, ctx.p**ctx.d, ctx.n
    lo = Fraction(pd * (Q - q * q), q * q)
    mid = lo + Fraction(Q * (q - 1), q)
    hi = Fraction(pd * (Q - q), q)
    report.add(
        "zero-count-chain",
        "3.3-inequality-chain",
        "lo < mid <= hi < n",
        "lo < mid <= hi < n" if lo < mid <= hi < n else f"violated: {lo}, {mid}, {hi}, {n}",
    )
    mat = ctx.symbol_matrix()
    max_zeros = int((mat[1:] == 0).sum(axis=1).max())
    report.add(
        "distinct-codewords",
        "3.3-inequality-chain",
        f"max zero count over nonzero beta < {n}",
        f"max zero count over nonzero beta < {n}"
        if max_zeros < n
        else f"some nonzero beta encodes the zero word ({max_zeros})",
    )
    return report


def suite_params_34(ctx: CodeContext) -> VerificationReport:
    report = VerificationReport("3.4", _ctx_params(ctx))
    for name, (pred, obs) in ctx.theorem34_params().items():
        report.add(name, "3.4-parameters", pred, obs)
    return report


def suite_hom_weights(
    ctx: CodeContext, threads: int = 1, full: bool = False
) -> VerificationReport:
    """Closed-form homogeneous weights against direct weights, all beta."""
    report = VerificationReport("4.4", _ctx_params(ctx))
    weights = ctx.hom_weight_per_beta()
    tilde = ctx.build_tilde_code()
    beta_codes = list(range(ctx.Q * ctx.Q))
    for warm in (ctx._table_I_zero, ctx._table_field_eprime):
        warm()

    def check_beta(code):
        beta = ctx.big.from_code(code)
        formula = theorem44_hom_weight(ctx, beta)
        direct = int(weights[code])
        tilde_direct = hom_weight_vec(ctx.encode_tilde(beta))
        scaled_ok = formula % tilde.l == 0 and formula // tilde.l == tilde_direct
        return code, formula, direct, scaled_ok

    bad_scaling = 0
    for code, formula, direct, scaled_ok in _chunked_map(check_beta, beta_codes, threads):
        if full or formula != direct:
            report.add(
                f"beta-{format_element(ctx.big.from_code(code))}",
                "4.4-formula-vs-direct",
                formula,
                direct,
            )
        if not scaled_ok:
            bad_scaling += 1
    report.add(
        "all-beta",
        "4.4-formula-vs-direct",
        f"{len(beta_codes)} weights equal",
        f"{len(beta_codes) - report.failed} weights equal",
    )
    report.add(
        "tilde-scaling",
        "4.4-tilde-scaling",
        f"w(ctilde) = w(c)/{tilde.l} for all beta",
        f"w(ctilde) = w(c)/{tilde.l} for all beta"
        if bad_scaling == 0
        else f"{bad_scaling} beta violate the scaling",
    )
    return report


def suite_table2(ctx: CodeContext) -> VerificationReport:
    report = VerificationReport("4.5", _ctx_params(ctx))
    _table_report_records(report, theorem45_table(ctx), "4.5-table-2")
    return report


def suite_gray_images(ctx: CodeContext) -> VerificationReport:
    """Two-distance property and closed-form distances of the Gray images."""
    from fractions import Fraction

    report = VerificationReport("4.6", _ctx_params(ctx))
    ctx._require_table_hypotheses(need_e_one=False)
    q, Q, pd, e = ctx.q, ctx.Q, ctx.p**ctx.d, ctx.e

    def exact(num, den):
        value = Fraction(num, den)
        assert value.denominator == 1
        return int(value)

    plain = gray_image_analyze(ctx, "C")
    tilde = gray_image_analyze(ctx, "Ctilde")
    report.add("length-C", "4.6-lengths", exact((Q - 1) * q * pd, e), plain.length)
    report.add("length-Ctilde", "4.6-lengths", exact((Q - 1) * pd, q - 1), tilde.length)
    report.add("size-C", "4.6-sizes", Q * Q, plain.size)
    report.add("size-Ctilde", "4.6-sizes", Q * Q, tilde.size)
    report.add("two-distance-C", "4.6-two-distance", True, plain.two_distance)
    report.add("two-distance-Ctilde", "4.6-two-distance", True, tilde.two_distance)
    report.add(
        "min-distance-C", "4.6-distances", exact(Q * (q - 1) * (pd - 1), e), plain.min_distance
    )
    report.add(
        "min-distance-Ctilde", "4.6-distances", exact(Q * (pd - 1), q), tilde.min_distance
    )
    # weight multiset transfer through the isometry
    hom = ctx.hamming_distribution().homogeneous
    report.add(
        "weight-transfer-C",
        "4.6-weight-multiset",
        sorted(hom.items()),
        sorted(plain.weights.items()),
    )
    return report


SUITES = {
    "2.1": ("gauss-sum equivalence", suite_gauss_equivalence),
    "3.1": ("component counts", suite_component_counts),
    "3.3": ("complete weight table", suite_table1),
    "3.4": ("code parameters", suite_params_34),
    "4.4": ("homogeneous weights", suite_hom_weights),
    "4.5": ("homogeneous weight table", suite_table2),
    "4.6": ("gray image codes", suite_gray_images),
}
