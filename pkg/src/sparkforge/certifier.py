"""Exact full-spark certification of dihedral orbits of the moment curve.

Every n-row subset of the symbolic 2n x n orbit matrix A(c(t)) is turned into
its exact determinant in Q(xi)[t]. The orbit of c(t) is full spark for
generic t iff none of these C(2n, n) polynomials vanishes identically; at a
rational t = lam the check is exact as well.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence, Union

import numpy as np

from .exactfield import CycloElement, cyclo_root_power, reduction_table
from .grouprep import label_of, orbit_exponents, orbit_matrix_symbolic
from .polyring import MonomialDeterminant, TPoly, array_to_tpoly, polymatrix_det, vandermonde_det
from .subsets import DEFAULT_CHUNK, chunk_ranges, enumerate_subsets, ordered_map, unrank_subset

log = logging.getLogger(__name__)

SubsetIndex = tuple[int, ...]

CASE_A_ROTATIONS = "case-a-rotations"
CASE_A_REFLECTIONS = "case-a-reflections"

ENGINES = ("monomial", "bareiss")


class CertificationError(RuntimeError):
    """Internal inconsistency detected while certifying (a bug, not a refutation)."""


class CertificationInterrupted(Exception):
    """Raised when a run is stopped between chunks; carries a resumable checkpoint."""

    def __init__(self, checkpoint: Checkpoint):
        super().__init__(f"stopped after {checkpoint.offset} subsets")
        self.checkpoint = checkpoint


def _check_subset(sub: Sequence[int], n: int, pool: int | None = None) -> SubsetIndex:
    pool = 2 * n if pool is None else pool
    sub = tuple(int(i) for i in sub)
    if len(sub) != n:
        raise ValueError(f"subset must have {n} indices, got {len(sub)}")
    if any(b <= a for a, b in zip(sub, sub[1:])):
        raise ValueError(f"subset indices must be strictly increasing: {sub}")
    if sub and not (0 <= sub[0] and sub[-1] < pool):
        raise ValueError(f"subset indices must lie in [0, {pool}): {sub}")
    return sub


# ---------------------------------------------------------------------------
# case analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseBShape:
    """Mixed subset: rotations M**l for l in ls and reflections M**j D for j in js."""

    m: int
    s: int
    ls: tuple[int, ...]
    js: tuple[int, ...]

    def __post_init__(self):
        if len(self.ls) != self.m or len(self.js) != self.s:
            raise ValueError("ls/js lengths must equal m/s")
        if len(set(self.ls)) != self.m or len(set(self.js)) != self.s:
            raise ValueError("rotation and reflection powers must be distinct")


def classify_subset(sub: Sequence[int], n: int) -> Union[str, CaseBShape]:
    sub = _check_subset(sub, n)
    ls = tuple(i for i in sub if i < n)
    js = tuple(i - n for i in sub if i >= n)
    if not js:
        return CASE_A_ROTATIONS
    if not ls:
        return CASE_A_REFLECTIONS
    return CaseBShape(len(ls), len(js), ls, js)


def kappa(n: int, m: int) -> int:
    """Exponent of t in the leading-block Laplace term of a mixed subset determinant."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    value = sum(range(1, m)) + sum(range(1, n - m + 1))
    assert 2 * value == 2 * m * m - 2 * m * n - 2 * m + n * n + n
    return value


def block_constant_C(n: int, shape: CaseBShape) -> CycloElement:
    """xi**(m * sum(js)) * prod_{k<l}(xi**j_l - xi**j_k) * prod_{k<j}(xi**l_j - xi**l_k)."""
    m = shape.m
    acc = cyclo_root_power(n, m * sum(shape.js))
    acc = acc * vandermonde_det([cyclo_root_power(n, j) for j in shape.js])
    return acc * vandermonde_det([cyclo_root_power(n, l) for l in shape.ls])


def case_a_det(n: int, which: str) -> TPoly:
    """Closed form for the all-rotation or all-reflection subset.

    Both equal Vandermonde(1, xi, ..., xi**(n-1)) * t**(n(n-1)/2).
    """
    if which not in ("rotations", "reflections", CASE_A_ROTATIONS, CASE_A_REFLECTIONS):
        raise ValueError(f"unknown case-a block {which!r}")
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    const = vandermonde_det([cyclo_root_power(n, k) for k in range(n)])
    return TPoly.monomial(n, const, n * (n - 1) // 2)


# ---------------------------------------------------------------------------
# subset determinants
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _tables(n: int):
    xi_exp, t_exp = orbit_exponents(n)
    engine = MonomialDeterminant(n, n, n * (n - 1))
    table = np.array(reduction_table(n), dtype=np.int64)
    return xi_exp, t_exp, engine, table


def subset_det_array(n: int, sub: Sequence[int]) -> np.ndarray:
    """Integer representative array (degree x xi-power) of the subset determinant."""
    sub = _check_subset(sub, n)
    xi_exp, t_exp, engine, _ = _tables(n)
    return engine([xi_exp[i] for i in sub], [t_exp[i] for i in sub])


def subset_det_symbolic(n: int, sub: Sequence[int], engine: str = "monomial") -> TPoly:
    """Exact determinant of the n x n submatrix of A(c(t)) on rows ``sub``."""
    sub = _check_subset(sub, n)
    if engine == "monomial":
        det = array_to_tpoly(subset_det_array(n, sub), n)
    elif engine == "bareiss":
        det = polymatrix_det(orbit_matrix_symbolic(n).submatrix(sub))
    else:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    case = classify_subset(sub, n)
    if isinstance(case, str) and det != case_a_det(n, case):
        raise CertificationError(f"case (a) determinant disagrees with closed form for {sub}")
    return det


def kappa_coefficient_check(n: int, sub: Sequence[int], det: TPoly | None = None) -> bool:
    """True iff the t**kappa(n, m) coefficient of the subset determinant is +C or -C."""
    shape = classify_subset(sub, n)
    if not isinstance(shape, CaseBShape):
        raise ValueError(f"subset {tuple(sub)} is not a mixed (case b) subset")
    if det is None:
        det = subset_det_symbolic(n, sub)
    coeff = det.coeff(kappa(n, shape.m))
    c = block_constant_C(n, shape)
    return coeff == c or coeff == -c


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


@dataclass
class Checkpoint:
    """Completed prefix of a certification run, in lexicographic subset order."""

    n: int
    lam: Fraction | None
    offset: int = 0
    degrees: list = field(default_factory=list)
    nonzero: list = field(default_factory=list)


@dataclass
class CertificateReport:
    n: int
    total: int
    degrees: list  # symbolic degree per subset, None where identically zero
    nonzero: list  # per-subset verdict (at lam when given)
    lam: Fraction | None = None
    group: str = "dihedral"
    elapsed_ms: float = 0.0
    workers: int = 1

    @property
    def witnesses(self) -> list[SubsetIndex]:
        return [unrank_subset(2 * self.n, self.n, r) for r, ok in enumerate(self.nonzero) if not ok]

    @property
    def certified(self) -> bool:
        return all(self.nonzero)

    def subsets(self):
        return enumerate_subsets(2 * self.n, self.n)

    def to_json(self, meta: bool = True) -> dict:
        hist: dict[str, int] = {}
        for d in self.degrees:
            key = "zero" if d is None else str(d)
            hist[key] = hist.get(key, 0) + 1
        out = {
            "n": self.n,
            "group": self.group,
            "mode": "symbolic" if self.lam is None else "lambda",
            "lambda": None if self.lam is None else f"{self.lam.numerator}/{self.lam.denominator}",
            "total": self.total,
            "certified": self.certified,
            "nonzero_count": sum(self.nonzero),
            "witnesses": [
                {"indices": list(w), "labels": [label_of(self.n, i).to_json() for i in w]}
                for w in self.witnesses
            ],
            "degrees": {
                "bound": self.n * (self.n - 1),
                "max": max((d for d in self.degrees if d is not None), default=None),
                "histogram": dict(sorted(hist.items(), key=lambda kv: (kv[0] == "zero", int(kv[0]) if kv[0] != "zero" else 0))),
                "per_subset": self.degrees,
            },
        }
        if meta:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
            out["workers"] = self.workers
        return out


def _eval_weights(lam: Fraction, width: int) -> list[int]:
    """Integer weights p**d * q**(width-1-d): sum_d w_d c_d = q**(width-1) * p(lam)."""
    p, q = lam.numerator, lam.denominator
    return [p ** d * q ** (width - 1 - d) for d in range(width)]


def _certify_chunk(n: int, lo: int, hi: int, lam_num: int | None, lam_den: int | None, engine: str):
    xi_exp, t_exp, det_engine, table = _tables(n)
    pool = 2 * n
    subs = list(enumerate_subsets(pool, n, lo, hi))
    degrees, nonzero = [], []
    weights = None
    if lam_num is not None:
        weights = np.array(_eval_weights(Fraction(lam_num, lam_den), det_engine.width), dtype=object)
    if engine == "monomial":
        arrays = det_engine.determinants(subs, xi_exp, t_exp)
    else:
        sym = orbit_matrix_symbolic(n)
        arrays = (_tpoly_to_array(polymatrix_det(sym.submatrix(s)), n, det_engine.width) for s in subs)
    for sub, arr in zip(subs, arrays):
        reduced = arr @ table
        rows = np.flatnonzero(reduced.any(axis=1))
        deg = int(rows[-1]) if rows.size else None
        case = classify_subset(sub, n)
        if isinstance(case, str):
            if array_to_tpoly(arr, n) != case_a_det(n, case):
                raise CertificationError(f"case (a) determinant disagrees with closed form for {sub}")
        degrees.append(deg)
        if weights is None:
            nonzero.append(deg is not None)
        else:
            value = weights @ reduced.astype(object)
            nonzero.append(any(v != 0 for v in value))
    return degrees, nonzero


def _tpoly_to_array(p: TPoly, n: int, width: int) -> np.ndarray:
    """Integer array for a TPoly whose coefficients reduce to integer vectors."""
    arr = np.zeros((width, n), dtype=np.int64)
    for d, c in enumerate(p.coeffs):
        r = c.reduced()
        if r.denominator != 1:
            raise CertificationError("non-integral determinant coefficient")
        arr[d] = r.numerators
    return arr


def _run(
    n: int,
    lam: Fraction | None,
    workers: int,
    chunk_size: int,
    engine: str,
    should_stop: Callable[[], bool] | None,
    resume: Checkpoint | None,
) -> CertificateReport:
    if n < 3:
        raise ValueError(f"certification needs n >= 3, got {n}")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    workers = max(1, int(workers))
    total = comb(2 * n, n)
    cp = resume if resume is not None else Checkpoint(n, lam)
    if cp.n != n or cp.lam != lam:
        raise ValueError("checkpoint belongs to a different run")
    started = time.perf_counter()
    ranges = chunk_ranges(total, chunk_size, start=cp.offset)
    lam_args = (None, None) if lam is None else (lam.numerator, lam.denominator)
    jobs = [(n, lo, hi, *lam_args, engine) for lo, hi in ranges]
    log.info("certifying n=%d: %d subsets in %d chunks, %d workers", n, total, len(jobs), workers)
    results = ordered_map(_certify_chunk, jobs, workers=workers, should_stop=should_stop)
    for (lo, hi), (degs, flags) in zip(ranges, results):
        cp.degrees.extend(degs)
        cp.nonzero.extend(flags)
        cp.offset = hi
    if cp.offset < total:
        raise CertificationInterrupted(cp)
    elapsed = (time.perf_counter() - started) * 1000.0
    return CertificateReport(n, total, cp.degrees, cp.nonzero, lam=lam, elapsed_ms=elapsed, workers=workers)


def certify_full_spark_symbolic(
    n: int,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    engine: str = "monomial",
    should_stop: Callable[[], bool] | None = None,
    resume: Checkpoint | None = None,
) -> CertificateReport:
    """Check every C(2n, n) subset determinant of A(c(t)) for identical vanishing."""
    return _run(n, None, workers, chunk_size, engine, should_stop, resume)


def certify_at_lambda(
    n: int,
    lam: Union[Fraction, int, str],
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    engine: str = "monomial",
    should_stop: Callable[[], bool] | None = None,
    resume: Checkpoint | None = None,
) -> CertificateReport:
    """Exactly evaluate every subset determinant at t = lam."""
    return _run(n, Fraction(lam), workers, chunk_size, engine, should_stop, resume)


def subset_labels(n: int, sub: Sequence[int]) -> list:
    return [label_of(n, i) for i in sub]


__all__ = [
    "CASE_A_REFLECTIONS",
    "CASE_A_ROTATIONS",
    "CaseBShape",
    "CertificateReport",
    "CertificationError",
    "CertificationInterrupted",
    "Checkpoint",
    "block_constant_C",
    "case_a_det",
    "certify_at_lambda",
    "certify_full_spark_symbolic",
    "classify_subset",
    "enumerate_subsets",
    "kappa",
    "kappa_coefficient_check",
    "subset_det_array",
    "subset_det_symbolic",
    "subset_labels",
]
