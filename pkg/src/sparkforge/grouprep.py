"""Dihedral and Heisenberg actions on C^n, the DFT, and orbit matrices.

Two pictures of the dihedral group are used. In the time picture it is
generated by the cyclic shift T and the index reversal D. Conjugating by the
DFT turns T into the diagonal modulation M = diag(xi**j) and leaves D
unchanged, so in the Fourier picture the row of element M**k D**e applied
to z is (xi**(j*k) * z[iota**e(j)])_j.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactfield import CycloElement, cyclo_root_power
from .polyring import PolyMatrix, TPoly


class Kind(str, enum.Enum):
    ROTATION = "rotation"
    REFLECTION = "reflection"


@dataclass(frozen=True, order=True)
class GroupElement:
    """A dihedral element: rotation M**power, or reflection M**power D."""

    kind: Kind
    power: int

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "power": self.power}

    @classmethod
    def from_json(cls, data: dict) -> GroupElement:
        return cls(Kind(data["kind"]), int(data["power"]))

    def __str__(self) -> str:
        return f"{'r' if self.kind is Kind.ROTATION else 's'}{self.power}"


def dihedral_elements(n: int) -> list[GroupElement]:
    """Canonical ordering: rotations 0..n-1, then reflections 0..n-1."""
    return [GroupElement(Kind.ROTATION, k) for k in range(n)] + [
        GroupElement(Kind.REFLECTION, k) for k in range(n)
    ]


def label_of(n: int, index: int) -> GroupElement:
    if not 0 <= index < 2 * n:
        raise ValueError(f"row index {index} outside [0, {2 * n})")
    if index < n:
        return GroupElement(Kind.ROTATION, index)
    return GroupElement(Kind.REFLECTION, index - n)


def iota(n: int, k: int) -> int:
    """Additive inverse of k modulo n."""
    if not 0 <= k < n:
        raise ValueError(f"k must lie in [0, {n}), got {k}")
    return (n - k) % n


def _require_dihedral(n: int) -> None:
    if n < 3:
        raise ValueError(f"dihedral representation needs n >= 3, got {n}")


def shift_matrix(n: int) -> np.ndarray:
    """T with (T v)[j] = v[(j - 1) mod n]."""
    _require_dihedral(n)
    t = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        t[j, (j - 1) % n] = 1
    return t


def reflection_matrix(n: int) -> np.ndarray:
    """D with (D v)[j] = v[(n - j) mod n]."""
    _require_dihedral(n)
    d = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        d[j, (n - j) % n] = 1
    return d


def modulation_matrix(n: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(n) / n))


def fourier_matrix(n: int, normalized: bool = True) -> np.ndarray:
    """Complex DFT matrix with entries exp(2 pi i k j / n), scaled by n**-1/2 if normalized."""
    if n < 2:
        raise ValueError(f"DFT needs n >= 2, got {n}")
    k = np.arange(n)
    f = np.exp(2j * np.pi * np.outer(k, k) / n)
    return f / math.sqrt(n) if normalized else f


def fourier_matrix_exact(n: int) -> list[list[CycloElement]]:
    """Unnormalised DFT over Q(xi): entry (k, j) is xi**(k*j)."""
    if n < 2:
        raise ValueError(f"DFT needs n >= 2, got {n}")
    return [[cyclo_root_power(n, k * j) for j in range(n)] for k in range(n)]


def conjugated_rotation(n: int, k: int) -> list[CycloElement]:
    """Diagonal of M**k = F T**k F^-1, i.e. (1, xi**k, xi**2k, ...)."""
    if not 0 <= k < n:
        raise ValueError(f"k must lie in [0, {n}), got {k}")
    return [cyclo_root_power(n, j * k) for j in range(n)]


# ---------------------------------------------------------------------------
# orbit matrices
# ---------------------------------------------------------------------------

GROUPS = ("dihedral-fourier", "dihedral-time", "heisenberg")


@dataclass(frozen=True)
class OrbitMatrix:
    """Stacked orbit rows with their group labels."""

    n: int
    group: str
    labels: tuple
    rows: np.ndarray

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "rows": [
                {"label": label_to_json(lab), "entries": complex_vector_to_json(r)}
                for lab, r in zip(self.labels, self.rows)
            ],
        }


def label_to_json(label) -> dict:
    if isinstance(label, GroupElement):
        return label.to_json()
    ell, kappa = label
    return {"shift": ell, "modulation": kappa}


def _fourier_row(n: int, z: np.ndarray, g: GroupElement) -> np.ndarray:
    phases = np.exp(2j * np.pi * np.arange(n) * g.power / n)
    if g.kind is Kind.REFLECTION:
        z = z[(-np.arange(n)) % n]
    return phases * z


def _time_row(n: int, z: np.ndarray, g: GroupElement) -> np.ndarray:
    if g.kind is Kind.REFLECTION:
        z = z[(-np.arange(n)) % n]
    return np.roll(z, g.power)


def orbit_matrix_numeric(n: int, z: Sequence[complex], group: str = "dihedral-fourier") -> OrbitMatrix:
    """Orbit of ``z`` as stacked rows.

    dihedral-fourier rows: M**k z, then M**k D z.
    dihedral-time rows:    T**k z, then T**k D z.
    heisenberg rows:       T**l M**kappa z in lexicographic (l, kappa) order.
    """
    z = np.asarray(z, dtype=complex)
    if z.shape != (n,):
        raise ValueError(f"vector has shape {z.shape}, expected ({n},)")
    if group == "heisenberg":
        if n < 1:
            raise ValueError("n must be positive")
        labels, rows = [], []
        mod = np.exp(2j * np.pi * np.arange(n) / n)
        for ell in range(n):
            for kappa in range(n):
                labels.append((ell, kappa))
                rows.append(np.roll(mod ** kappa * z, ell))
        return OrbitMatrix(n, group, tuple(labels), np.array(rows))
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")
    _require_dihedral(n)
    row_fn = _fourier_row if group == "dihedral-fourier" else _time_row
    labels = dihedral_elements(n)
    return OrbitMatrix(n, group, tuple(labels), np.array([row_fn(n, z, g) for g in labels]))


def orbit_exponents(n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Exponent tables of the symbolic orbit matrix A(c(t)).

    Entry (row, j) equals xi**xi_exp[row][j] * t**t_exp[row][j].
    """
    _require_dihedral(n)
    xi_exp, t_exp = [], []
    for g in dihedral_elements(n):
        xi_exp.append([(j * g.power) % n for j in range(n)])
        if g.kind is Kind.ROTATION:
            t_exp.append(list(range(n)))
        else:
            t_exp.append([iota(n, j) for j in range(n)])
    return xi_exp, t_exp


def orbit_matrix_symbolic(n: int) -> PolyMatrix:
    """The 2n x n matrix of the Fourier-picture orbit of the moment curve (1, t, ..., t**(n-1))."""
    xi_exp, t_exp = orbit_exponents(n)
    return PolyMatrix(
        [
            [TPoly.monomial(n, cyclo_root_power(n, a), b) for a, b in zip(xr, tr)]
            for xr, tr in zip(xi_exp, t_exp)
        ],
        n,
    )


# ---------------------------------------------------------------------------
# JSON helpers for complex data
# ---------------------------------------------------------------------------


def complex_vector_to_json(v: Sequence[complex]) -> list[list[float]]:
    return [[float(np.real(x)), float(np.imag(x))] for x in v]


def complex_vector_from_json(data) -> np.ndarray:
    out = []
    for item in data:
        if isinstance(item, (list, tuple)):
            if len(item) != 2:
                raise ValueError(f"complex entries must be [re, im] pairs, got {item!r}")
            out.append(complex(float(item[0]), float(item[1])))
        elif isinstance(item, (int, float)):
            out.append(complex(item))
        else:
            raise ValueError(f"cannot read complex entry {item!r}")
    return np.array(out, dtype=complex)
