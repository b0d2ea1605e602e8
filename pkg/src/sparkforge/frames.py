"""Numeric frames: construction of w, frame operators, subset reconstruction, spark checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

import numpy as np

from .exactfield import CycloElement, cyclo_root_power
from .grouprep import (
    complex_vector_from_json,
    complex_vector_to_json,
    fourier_matrix,
    orbit_matrix_numeric,
    label_to_json,
)
from .subsets import chunk_ranges, enumerate_subsets, ordered_map

DEFAULT_TOL = 1e-10
DEFAULT_CAP = 10**6


class SparkCapExceeded(ValueError):
    """Too many subsets for numeric enumeration."""


@dataclass(frozen=True)
class FrameEnsemble:
    """m >= n vectors in C^n, stored as the rows of ``vectors``."""

    n: int
    vectors: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[1] != self.n:
            raise ValueError(f"frame vectors must have shape (m, {self.n}), got {v.shape}")
        if v.shape[0] < self.n:
            raise ValueError(f"a frame for C^{self.n} needs at least {self.n} vectors, got {v.shape[0]}")
        object.__setattr__(self, "vectors", v)

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def orbit(cls, z: Sequence[complex], group: str = "dihedral-time") -> FrameEnsemble:
        z = np.asarray(z, dtype=complex)
        orb = orbit_matrix_numeric(len(z), z, group)
        return cls(orb.n, orb.rows, orb.labels)

    def to_json(self) -> dict:
        out = {"n": self.n, "vectors": [complex_vector_to_json(v) for v in self.vectors]}
        if self.labels:
            out["labels"] = [label_to_json(lab) for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> FrameEnsemble:
        vectors = np.array([complex_vector_from_json(v) for v in data["vectors"]])
        n = int(data.get("n", vectors.shape[1]))
        return cls(n, vectors)


# ---------------------------------------------------------------------------
# the vector w
# ---------------------------------------------------------------------------


def construct_w(n: int, lam: Union[float, complex, Fraction, int], method: str = "direct") -> np.ndarray:
    """w[j] = sum_k lam**k exp(-2 pi i k j / n).

    ``method="fourier"`` computes the same vector as sqrt(n) F^-1 (1, lam, ..., lam**(n-1)).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    lam_c = complex(lam)
    powers = lam_c ** np.arange(n)
    if method == "direct":
        k = np.arange(n)
        w = np.empty(n, dtype=complex)
        for j in range(n):
            w[j] = np.sum(powers * np.exp(-2j * np.pi * k * j / n))
        return w
    if method == "fourier":
        finv = fourier_matrix(n, normalized=True).conj().T
        return math.sqrt(n) * (finv @ powers)
    raise ValueError(f"unknown method {method!r}")


def construct_w_exact(n: int, lam: Union[Fraction, int]) -> list[CycloElement]:
    """Exact components of w in Q(xi) for rational lam."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    lam = Fraction(lam)
    out = []
    for j in range(n):
        acc = CycloElement.zero(n)
        p = Fraction(1)
        for k in range(n):
            acc = acc + cyclo_root_power(n, -k * j).scale(p)
            p *= lam
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


def synthesis(frame: FrameEnsemble, c: Sequence[complex]) -> np.ndarray:
    """sum_k c[k] v_k."""
    c = np.asarray(c, dtype=complex)
    if c.shape[0] != frame.size:
        raise ValueError(f"expected {frame.size} coefficients, got {c.shape[0]}")
    return frame.vectors.T @ c


def analysis(frame: FrameEnsemble, v: Sequence[complex]) -> np.ndarray:
    """(<v, v_k>)_k with the inner product conjugate-linear in the second slot."""
    v = np.asarray(v, dtype=complex)
    if v.shape[0] != frame.n:
        raise ValueError(f"expected a vector of length {frame.n}, got {v.shape[0]}")
    return frame.vectors.conj() @ v


def frame_operator(frame: FrameEnsemble) -> np.ndarray:
    return frame.vectors.T @ frame.vectors.conj()


def frame_bounds(frame: FrameEnsemble) -> tuple[float, float]:
    eig = np.linalg.eigvalsh(frame_operator(frame))
    return float(eig[0]), float(eig[-1])


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------


@dataclass
class ReconstructionResult:
    recovered: np.ndarray | None
    kept: tuple[int, ...]
    residual: float
    condition: float  # smallest singular value of the kept vectors
    condition_number: float
    ok: bool

    def to_json(self) -> dict:
        rec = None
        if self.recovered is not None:
            rec = (
                complex_vector_to_json(self.recovered)
                if self.recovered.ndim == 1
                else [complex_vector_to_json(col) for col in self.recovered.T]
            )
        return {
            "ok": self.ok,
            "kept": list(self.kept),
            "recovered": rec,
            "residual": self.residual,
            "condition": self.condition,
            "condition_number": self.condition_number,
        }


def reconstruct_from_subset(
    frame: FrameEnsemble,
    kept: Sequence[int],
    coeffs: Sequence[complex],
    tol: float = DEFAULT_TOL,
) -> ReconstructionResult:
    """Recover v from the coefficients <v, v_k>, k in ``kept``, by solving S_J x = sum c_k v_k.

    ``coeffs`` may be a matrix with one column per vector to recover. If the
    kept vectors are numerically rank deficient (smallest singular value at
    most ``tol`` times the largest singular value of the whole frame) a
    failed result is returned instead of raising.
    """
    kept = tuple(int(k) for k in kept)
    if len(set(kept)) != len(kept) or any(not 0 <= k < frame.size for k in kept):
        raise ValueError(f"kept indices must be distinct and lie in [0, {frame.size})")
    if len(kept) < frame.n:
        raise ValueError(f"need at least {frame.n} kept coefficients, got {len(kept)}")
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape[0] != len(kept):
        raise ValueError(f"expected {len(kept)} coefficients, got {coeffs.shape[0]}")
    vj = frame.vectors[list(kept)]
    sv = np.linalg.svd(vj, compute_uv=False)
    scale = np.linalg.svd(frame.vectors, compute_uv=False)[0]
    smin = float(sv[-1])
    cond = float(sv[0] / smin) if smin > 0 else math.inf
    if smin <= tol * scale:
        return ReconstructionResult(None, kept, math.inf, smin, cond, False)
    s_j = vj.T @ vj.conj()
    rhs = vj.T @ coeffs
    x = np.linalg.solve(s_j, rhs)
    reenc = vj.conj() @ x
    denom = np.linalg.norm(coeffs)
    residual = float(np.linalg.norm(reenc - coeffs) / denom) if denom > 0 else float(np.linalg.norm(reenc))
    return ReconstructionResult(x, kept, residual, smin, cond, True)


# ---------------------------------------------------------------------------
# numeric spark
# ---------------------------------------------------------------------------


@dataclass
class SparkReport:
    full_spark: bool
    total: int
    scale: float  # largest singular value of the whole frame matrix
    tol: float
    min_singular: np.ndarray  # per subset, lexicographic order
    violations: list  # (subset, smallest singular value)

    def to_json(self) -> dict:
        return {
            "full_spark": self.full_spark,
            "total": self.total,
            "scale": self.scale,
            "tol": self.tol,
            "violation_count": len(self.violations),
            "violations": [{"indices": list(s), "min_singular": v} for s, v in self.violations],
            "min_singular_overall": float(self.min_singular.min()) if self.total else None,
        }


def _min_singular_chunk(vectors: np.ndarray, n: int, lo: int, hi: int) -> np.ndarray:
    idx = np.array(list(enumerate_subsets(vectors.shape[0], n, lo, hi)), dtype=np.intp)
    return np.linalg.svd(vectors[idx], compute_uv=False)[:, -1]


def numeric_spark_check(
    frame: FrameEnsemble,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    chunk_size: int = 2048,
) -> SparkReport:
    """Smallest singular value of every n x n submatrix, relative to the whole frame's scale."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    total = comb(frame.size, frame.n)
    if total > cap:
        raise SparkCapExceeded(
            f"{total} subsets exceed the enumeration cap {cap}; use the exact certifier for dihedral orbits"
        )
    scale = float(np.linalg.svd(frame.vectors, compute_uv=False)[0])
    jobs = [(frame.vectors, frame.n, lo, hi) for lo, hi in chunk_ranges(total, chunk_size)]
    parts = list(ordered_map(_min_singular_chunk, jobs, workers=workers))
    mins = np.concatenate(parts) if parts else np.zeros(0)
    bad = np.flatnonzero(mins <= tol * scale)
    violations = []
    if bad.size:
        subs = enumerate_subsets(frame.size, frame.n)
        bad_set = set(bad.tolist())
        violations = [(s, float(mins[r])) for r, s in enumerate(subs) if r in bad_set]
    return SparkReport(not violations, total, scale, tol, mins, violations)


def genericity_experiment(
    n: int, trials: int, seed: int, tol: float = DEFAULT_TOL, group: str = "dihedral-time"
) -> float:
    """Fraction of standard complex Gaussian vectors whose orbit passes the numeric spark check."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    passes = 0
    for _ in range(trials):
        z = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2)
        if numeric_spark_check(FrameEnsemble.orbit(z, group), tol=tol).full_spark:
            passes += 1
    return passes / trials if trials else 0.0
