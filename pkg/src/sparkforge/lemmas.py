"""Property suites behind the certificate: kappa coefficients, closed forms, DFT minors."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .certifier import (
    CaseBShape,
    block_constant_C,
    case_a_det,
    classify_subset,
    kappa,
    _tables,
)
from .exactfield import CycloElement, cyclo_root_power, reduction_table
from .polyring import MonomialDeterminant, array_to_tpoly, polymatrix_det, vandermonde_det, vandermonde_matrix
from .subsets import enumerate_subsets


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass
class LemmaResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    hypothesis_holds: bool = True
    note: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": len(self.failures),
            "failures": [list(f) if isinstance(f, tuple) else f for f in self.failures[:50]],
            "hypothesis_holds": self.hypothesis_holds,
            "note": self.note,
        }


def _all_subset_dets(n: int):
    xi_exp, t_exp, engine, _ = _tables(n)
    subs = list(enumerate_subsets(2 * n, n))
    return zip(subs, engine.determinants(subs, xi_exp, t_exp))


def kappa_suite(n: int) -> LemmaResult:
    """Coefficient of t**kappa(n, m) is +-C for every mixed subset."""
    checked, failures = 0, []
    for sub, arr in _all_subset_dets(n):
        shape = classify_subset(sub, n)
        if not isinstance(shape, CaseBShape):
            continue
        checked += 1
        k = kappa(n, shape.m)
        coeff = CycloElement._raw(n, [int(x) for x in arr[k]]) if k < arr.shape[0] else CycloElement.zero(n)
        c = block_constant_C(n, shape)
        if not (coeff == c or coeff == -c):
            failures.append(sub)
    return LemmaResult(
        "kappa-coefficient",
        not failures,
        checked,
        failures,
        hypothesis_holds=n % 2 == 1,
        note="coefficient of t^kappa(n,m) equals +-C for every mixed subset",
    )


def degree_suite(n: int) -> LemmaResult:
    """deg det <= n(n-1) for every subset, with equality n(n-1)/2 on the two case (a) subsets."""
    table = np.array(reduction_table(n), dtype=np.int64)
    bound = n * (n - 1)
    checked, failures = 0, []
    for sub, arr in _all_subset_dets(n):
        checked += 1
        rows = np.flatnonzero((arr @ table).any(axis=1))
        deg = int(rows[-1]) if rows.size else None
        case = classify_subset(sub, n)
        if deg is not None and deg > bound:
            failures.append(sub)
        elif isinstance(case, str) and deg != bound // 2:
            failures.append(sub)
    return LemmaResult("degree-bound", not failures, checked, failures, note=f"degree <= {bound}")


def case_a_suite(n: int) -> LemmaResult:
    """Both unmixed subsets: computed determinant equals Vandermonde constant * t**(n(n-1)/2)."""
    xi_exp, t_exp, engine, _ = _tables(n)
    failures = []
    for which, rows in (("rotations", range(n)), ("reflections", range(n, 2 * n))):
        arr = engine([xi_exp[i] for i in rows], [t_exp[i] for i in rows])
        if array_to_tpoly(arr, n) != case_a_det(n, which):
            failures.append(which)
    return LemmaResult("case-a-closed-form", not failures, 2, failures)


def vandermonde_suite(n: int) -> LemmaResult:
    """Product formula against elimination on the explicit power matrix of the n-th roots of unity."""
    failures = []
    node_sets = [[cyclo_root_power(n, k) for k in range(n)]]
    node_sets.append([cyclo_root_power(n, k) + k for k in range(min(n, 5))])
    for nodes in node_sets:
        if polymatrix_det(vandermonde_matrix(nodes)).coeff(0) != vandermonde_det(nodes):
            failures.append([str(a) for a in nodes])
    return LemmaResult("vandermonde", not failures, len(node_sets), failures)


def fourier_minors(n: int) -> tuple[int, list]:
    """Exact test of every square minor (including the empty one) of the unnormalised DFT.

    Returns the number of minors checked and the (rows, cols) pairs that vanish.
    """
    table = np.array(reduction_table(n), dtype=np.int64)
    checked, zeros = 0, []
    for m in range(0, n + 1):
        if m == 0:
            checked += 1
            continue
        engine = MonomialDeterminant(n, m, 0)
        zero_t = [[0] * m for _ in range(n)]
        for cols in combinations(range(n), m):
            xi_rows = [[(r * c) % n for c in cols] for r in range(n)]
            rows_list = list(combinations(range(n), m))
            for rows, arr in zip(rows_list, engine.determinants(rows_list, xi_rows, zero_t)):
                checked += 1
                if not (arr @ table).any():
                    zeros.append((rows, cols))
    assert checked == comb(2 * n, n)
    return checked, zeros


def chebotarev_suite(n: int) -> LemmaResult:
    checked, zeros = fourier_minors(n)
    return LemmaResult(
        "chebotarev-minors",
        not zeros,
        checked,
        [{"rows": list(r), "cols": list(c)} for r, c in zeros],
        hypothesis_holds=is_prime(n),
        note="every minor of the DFT matrix is nonzero (guaranteed for prime n)",
    )


def run_lemmas(n: int) -> list[LemmaResult]:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    return [kappa_suite(n), case_a_suite(n), degree_suite(n), chebotarev_suite(n), vandermonde_suite(n)]
