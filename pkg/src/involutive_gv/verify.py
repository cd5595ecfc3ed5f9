"""Verification suites: each check compares two independently computed objects."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .forms import (
    delta,
    delta_half_at_q2,
    infinite_product,
    kkv_product,
    macmahon,
    phi_10_1,
    reduced_kkv,
    theta_rank1,
    theta_rank1_product,
)
from .invariants import (
    InvariantTable,
    SurfaceType,
    hyperelliptic_series,
    ngh_polynomials,
    ngh_table,
    product_side_table,
    table_from_rows,
)
from .laurent import Laurent2, psi
from .lattice import (
    LatticeTag,
    cosets_for,
    kummer_cosets,
    kummer_shifted_cosets,
    nikulin_cosets,
    nikulin_shifted_cosets,
    theta_bruteforce,
    theta_closed_form,
    theta_from_cosets,
    theta_polynomial,
)
from .series import QSeries, dilate
from .worked import (
    EllipticFiberParams,
    LocalCurveParams,
    alternating_sum_matches,
    elliptic_fiber_invariants,
    football_closed_form,
    football_invariants,
    football_log,
    local_curve_coefficient,
    regrouping_holds,
)

SUITES = ("identities", "lattices", "examples", "appendix")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


def compare_series(name: str, a: QSeries, b: QSeries, order=None) -> CheckResult:
    diff = a.first_difference(b, order)
    if diff is None:
        return CheckResult(name, True)
    return CheckResult(name, False, f"first differing coefficient at exponent {diff}: {a[diff]} vs {b[diff]}")


def compare_tables(name: str, got: dict, want: dict) -> CheckResult:
    if got == want:
        return CheckResult(name, True)
    keys = sorted(set(got) | set(want))
    first = next(k for k in keys if got.get(k, 0) != want.get(k, 0))
    return CheckResult(name, False, f"first mismatch at {first}: {got.get(first, 0)} vs {want.get(first, 0)}")


def check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), "" if ok else detail)


# -- identities ------------------------------------------------------------


def _w(sign: int = 1) -> Laurent2:
    return Laurent2.monomial(1, w=sign)


def identity_checks(order: int) -> list[CheckResult]:
    t0, t1 = theta_rank1(0, order), theta_rank1(1, order)
    s0, s1 = t0 * t0, t1 * t1
    quad = (s0 + s1).truncate(order)
    m1 = Laurent2.const(-1)
    one = Laurent2.const(1)
    quad_rhs = infinite_product(order, [(m1, 2, 0, 2), (one, 2, -1, 2), (_w(), 2, -1, 1), (_w(-1), 2, -1, 1)])
    nsh_factored = (s0 * s1 * quad * quad).truncate(order)
    ksh_factored = (s0 * s0 * s1 * s1 * quad * quad * quad * quad).scale(4).truncate(order)
    nsh_product = infinite_product(
        order, [(one, 1, 0, 12), (m1, 1, 0, 8), (_w(), 1, 0, 2), (_w(-1), 1, 0, 2)], prefactor=psi("w"), shift=1
    )
    ksh_product = infinite_product(
        order, [(one, 1, 0, 24), (m1, 1, 0, 16), (_w(), 1, 0, 4), (_w(-1), 1, 0, 4)],
        prefactor=(psi("w") ** 2).scale(4), shift=2,
    )
    theta = {tag: theta_from_cosets(cosets_for(tag), order) for tag in LatticeTag}
    out = [
        compare_series("theta_0 summation vs triple product", t0, theta_rank1_product(0, order)),
        compare_series("theta_1 summation vs triple product", t1, theta_rank1_product(1, order)),
        compare_series("quadratic theta identity", quad, quad_rhs),
        compare_series("Ksh product identity", nsh_factored, nsh_product),
        compare_series("Theta_Nsh factorization", theta[LatticeTag.N_SH], nsh_factored),
        compare_series("Theta_Ksh factorization", theta[LatticeTag.K_SH], ksh_factored),
        compare_series("Theta_Ksh = 4 Theta_Nsh^2", theta[LatticeTag.K_SH], (theta[LatticeTag.N_SH] ** 2).scale(4), order),
        compare_series("Theta_Ksh product form", theta[LatticeTag.K_SH], ksh_product),
        compare_series(
            "Theta_N = theta_0^8 + theta_1^8", theta[LatticeTag.N], theta_polynomial({0: 1, 8: 1}, 8, order)
        ),
        compare_series(
            "Theta_Nsh three-term formula",
            theta[LatticeTag.N_SH],
            theta_polynomial({6: 1, 4: 2, 2: 1}, 8, order),
        ),
        compare_series(
            "Theta_K three-term formula", theta[LatticeTag.K], theta_polynomial({0: 1, 8: 30, 16: 1}, 16, order)
        ),
        compare_series(
            "Theta_Ksh five-term formula",
            theta[LatticeTag.K_SH],
            theta_polynomial({12: 4, 10: 16, 8: 24, 6: 16, 4: 4}, 16, order),
        ),
    ]
    for tag in LatticeTag:
        out.append(compare_series(f"Theta_{tag.value} closed form vs cosets", theta[tag], theta_closed_form(tag, order)))
    out.append(
        compare_series(
            "Delta(q^2)^(1/2) squared", delta_half_at_q2(order) ** 2, dilate(delta(order // 2 + 1), 2), order
        )
    )
    out.append(compare_series("R times its product is 1", reduced_kkv(order) * kkv_product(order + 2), QSeries.one(order)))
    r_at = reduced_kkv(order).map_coeffs(lambda c: c.at_y(-1))
    out.append(compare_series("R(q,-1) = 1/Delta", r_at, delta(order + 2).inverse(), order))
    phi = phi_10_1(order, negate=True)
    out.append(check("phi_10_1(q,-y) y-symmetric", all(c.is_symmetric() for _, c in phi.items())))
    out.append(check("phi_10_1(q,1) vanishes", not any(c.at_y(1) for _, c in phi_10_1(order).items())))
    return out


# -- lattices --------------------------------------------------------------


def _c1(cosets) -> dict[int, int]:
    return dict(Counter(r.c1 for r in cosets))


def lattice_checks(order: int) -> list[CheckResult]:
    ksh = kummer_shifted_cosets()
    out = [
        compare_tables("K c1 multiset", _c1(kummer_cosets()), {0: 1, 8: 30, 16: 1}),
        compare_tables("K+r0 c1 multiset", _c1(ksh[:32]), {4: 4, 8: 24, 12: 4}),
        compare_tables("K+r1 c1 multiset", _c1(ksh[32:]), {6: 16, 10: 16}),
        check("K+r0 and K+r1 disjoint", not set(ksh[:32]) & set(ksh[32:])),
        check("N c1 values", [r.c1 for r in nikulin_cosets()] == [0, 8]),
        check("Nsh c1 values", [r.c1 for r in nikulin_shifted_cosets()] == [2, 6, 4, 4]),
    ]
    for tag in LatticeTag:
        cosets = cosets_for(tag)
        coset_theta = theta_from_cosets(cosets, order)
        out.append(compare_series(f"Theta_{tag.value} cosets vs brute force", coset_theta, theta_bruteforce(cosets, order)))
        out.append(check(f"Theta_{tag.value} w-symmetric", all(c.swap_w() == c for _, c in coset_theta.items())))
    return out


# -- worked examples -------------------------------------------------------

ELLIPTIC_PAIRS = ((2, 6), (0, 0), (-2, -2), (5, 1), (24, -7))


def example_checks(order: int) -> list[CheckResult]:
    y_order = max(order, 4)
    out = []
    bad = []
    for g in range(9):
        for h in range((g + 1) // 2 + 1):
            if not local_curve_coefficient(LocalCurveParams(g, h), y_order).ok:
                bad.append((g, h))
    out.append(check("local curve identity for g <= 8", not bad, f"fails at (g, h) = {bad[:1]}"))
    for e0, e1 in ELLIPTIC_PAIRS:
        want = {k: v for k, v in {(1, 0): -e0, (0, 0): 3 * e0 - e1}.items() if v}
        got = elliptic_fiber_invariants(EllipticFiberParams(e0, e1), y_order)
        out.append(compare_tables(f"elliptic fiber ({e0}, {e1})", got, want))
    out.append(check("psi_w^2 - 3 psi_w regrouping", regrouping_holds()))
    out.append(check("alternating sum is -1/psi_y", alternating_sum_matches(y_order)))
    out.append(compare_series("football log vs closed form", football_log(4, y_order), football_closed_form(4, y_order)))
    out.append(compare_tables("football invariants", football_invariants(4, y_order).entries, {(1, 0, 0): 1}))
    m = macmahon(5, 5)
    mac1 = [sum(c[n].coeff() for _, c in m.items()) for n in range(6)]
    out.append(check("MacMahon M(1,q)", mac1 == [1, 1, 3, 6, 13, 24], f"got {mac1}"))
    return out


# -- reference table -----------------------------------------------------


def load_reference_table() -> InvariantTable:
    text = resources.files("involutive_gv").joinpath("data/reference_aodd.json").read_text()
    data = json.loads(text)
    return table_from_rows(((r["d"], r["g"], r["h"], r["n"]) for r in data["entries"]), SurfaceType.A_ODD)


def polynomial_checks(d_max: int) -> list[CheckResult]:
    bad = []
    for stype in SurfaceType:
        for d, p in ngh_polynomials(stype, d_max).items():
            if not (p.is_symmetric() and p.swap_w() == p and p.is_integer()):
                bad.append((stype.value, d))
    return [check(f"P_d symmetric and integral for d <= {d_max}", not bad, f"fails at {bad[:1]}")]


def reference_checks(order: int = 7) -> list[CheckResult]:
    got = ngh_table(SurfaceType.A_ODD, 7)
    out = [compare_tables("reference table d <= 7", got.entries, load_reference_table().entries)]
    top = [(d, g, h) for (d, g, h) in got.entries if g > d + 1]
    out.append(check("highest genus is d+1", not top, f"entry {top[:1]}"))
    d_max = max(order, 7)
    for stype in (SurfaceType.A_ODD, SurfaceType.NI_ODD):
        out.append(
            compare_tables(
                f"{stype.value} product formula vs theta formula",
                product_side_table(stype, d_max).entries,
                ngh_table(stype, d_max).entries,
            )
        )
    left, right = hyperelliptic_series(d_max)
    out.append(compare_series("hyperelliptic specialization", left, right))
    out.extend(polynomial_checks(d_max))
    return out


REGISTRY: dict[str, Callable[[int], list[CheckResult]]] = {
    "identities": identity_checks,
    "lattices": lattice_checks,
    "examples": example_checks,
    "appendix": reference_checks,
}

DEFAULT_ORDERS = {"identities": 40, "lattices": 20, "examples": 12, "appendix": 10}


def run_suite(name: str, order: int | None = None) -> list[CheckResult]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n not in REGISTRY:
            raise ValueError(f"unknown suite {n!r}")
        out.extend(REGISTRY[n](DEFAULT_ORDERS[n] if order is None else order))
    return out
