"""Polynomials in t over Q(xi_n) and exact determinants of matrices of them."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .exactfield import CycloElement, OrderMismatchError, Scalar, reduction_table


class InexactDivisionError(ArithmeticError):
    """An exact division left a remainder. Signals a logic error, not bad input."""


def _as_cyclo(n: int, c) -> CycloElement:
    if isinstance(c, CycloElement):
        if c.order != n:
            raise OrderMismatchError(f"orders differ: {n} vs {c.order}")
        return c
    return CycloElement.from_scalar(n, c)


class TPoly:
    """Univariate polynomial in t with CycloElement coefficients, lowest degree first.

    Trailing coefficients that vanish in Q(xi_n) are trimmed, so the zero
    polynomial has no coefficients and ``degree`` is ``None`` for it.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Union[CycloElement, Scalar]] = ()):
        cs = [_as_cyclo(order, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.order = order
        self.coeffs: tuple[CycloElement, ...] = tuple(cs)

    @classmethod
    def zero(cls, n: int) -> TPoly:
        return cls(n)

    @classmethod
    def one(cls, n: int) -> TPoly:
        return cls(n, [1])

    @classmethod
    def monomial(cls, n: int, coeff: Union[CycloElement, Scalar], degree: int) -> TPoly:
        zero = CycloElement.zero(n)
        return cls(n, [zero] * degree + [_as_cyclo(n, coeff)])

    @classmethod
    def t(cls, n: int) -> TPoly:
        return cls.monomial(n, 1, 1)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> CycloElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CycloElement.zero(self.order)

    def leading(self) -> CycloElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _coerce(self, other) -> TPoly:
        if isinstance(other, TPoly):
            if other.order != self.order:
                raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction, CycloElement)):
            return TPoly(self.order, [other])
        return NotImplemented

    def __add__(self, other) -> TPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return TPoly(self.order, [x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> TPoly:
        return TPoly(self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> TPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> TPoly:
        return (-self) + other

    def __mul__(self, other) -> TPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TPoly(self.order)
        out: list = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                term = x * y
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        zero = CycloElement.zero(self.order)
        return TPoly(self.order, [zero if c is None else c for c in out])

    __rmul__ = __mul__

    def scale(self, c: Union[CycloElement, Scalar]) -> TPoly:
        c = _as_cyclo(self.order, c)
        return TPoly(self.order, [x * c for x in self.coeffs])

    def shift(self, k: int) -> TPoly:
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return TPoly(self.order, [CycloElement.zero(self.order)] * k + list(self.coeffs))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, CycloElement)):
            other = TPoly(self.order, [other])
        if not isinstance(other, TPoly):
            return NotImplemented
        if other.order != self.order or len(other.coeffs) != len(self.coeffs):
            return False
        return all(x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def reduced(self) -> TPoly:
        return TPoly(self.order, [c.reduced() for c in self.coeffs])

    def divexact(self, other: TPoly) -> TPoly:
        return tpoly_divexact(self, other)

    def __call__(self, value: Union[Scalar, CycloElement]) -> CycloElement:
        return tpoly_eval(self, value)

    def to_json(self) -> dict:
        return {"n": self.order, "degree_coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> TPoly:
        return cls(int(data["n"]), [CycloElement.from_json(c) for c in data["degree_coeffs"]])

    def __repr__(self) -> str:
        return f"TPoly({self.order}, {list(self.coeffs)!r})"

    def __str__(self) -> str:
        terms = [f"({c})*t^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def tpoly_add(p: TPoly, q: TPoly) -> TPoly:
    if p.order != q.order:
        raise OrderMismatchError(f"orders differ: {p.order} vs {q.order}")
    return p + q


def tpoly_mul(p: TPoly, q: TPoly) -> TPoly:
    if p.order != q.order:
        raise OrderMismatchError(f"orders differ: {p.order} vs {q.order}")
    return p * q


def tpoly_scale(p: TPoly, c: CycloElement) -> TPoly:
    return p.scale(c)


def tpoly_divexact(p: TPoly, q: TPoly) -> TPoly:
    """Return p / q, raising :class:`InexactDivisionError` if q does not divide p."""
    if p.order != q.order:
        raise OrderMismatchError(f"orders differ: {p.order} vs {q.order}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    n = p.order
    dq = q.degree
    if p.degree < dq:
        raise InexactDivisionError("divisor has larger degree than dividend")
    lead_inv = q.leading().inverse()
    rem = list(p.coeffs)
    quo = [CycloElement.zero(n)] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        c = (c * lead_inv).reduced()
        quo[k - dq] = c
        for i, qc in enumerate(q.coeffs):
            rem[k - dq + i] = rem[k - dq + i] - c * qc
    if any(not r.is_zero() for r in rem[:dq]):
        raise InexactDivisionError("nonzero remainder in exact polynomial division")
    return TPoly(n, quo)


def tpoly_eval(p: TPoly, value: Union[Scalar, CycloElement]) -> CycloElement:
    """Horner evaluation at an exact rational or cyclotomic value."""
    n = p.order
    acc = CycloElement.zero(n)
    for c in reversed(p.coeffs):
        acc = acc * value + c
    return acc


def tpoly_eval_rational(p: TPoly, lam: Scalar) -> CycloElement:
    return tpoly_eval(p, Fraction(lam))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class PolyMatrix:
    """Rectangular matrix of TPoly entries sharing one field order."""

    __slots__ = ("rows", "cols", "order", "entries")

    def __init__(self, rows: Sequence[Sequence[Union[TPoly, CycloElement, Scalar]]], order: int | None = None):
        rows = [list(r) for r in rows]
        if order is None:
            order = _infer_order(rows)
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows have different lengths")
        self.order = order
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self.entries: tuple[TPoly, ...] = tuple(
            e if isinstance(e, TPoly) and e.order == order else _as_tpoly(order, e) for r in rows for e in r
        )

    def __getitem__(self, ij: tuple[int, int]) -> TPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[TPoly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_lists(self) -> list[list[TPoly]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> PolyMatrix:
        if cols is None:
            cols = range(self.cols)
        return PolyMatrix([[self[i, j] for j in cols] for i in rows], self.order)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        zero = TPoly.zero(self.order)
        out = []
        for i in range(self.rows):
            out.append([sum((self[i, k] * other[k, j] for k in range(self.cols)), zero) for j in range(other.cols)])
        return PolyMatrix(out, self.order)

    def map(self, fn) -> list[list]:
        return [[fn(e) for e in r] for r in self.to_lists()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.order) == (other.rows, other.cols, other.order) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, n={self.order})"


def _as_tpoly(n: int, e) -> TPoly:
    if isinstance(e, TPoly):
        if e.order != n:
            raise OrderMismatchError(f"orders differ: {n} vs {e.order}")
        return e
    return TPoly(n, [e])


def _infer_order(rows: list[list]) -> int:
    for r in rows:
        for e in r:
            if isinstance(e, (TPoly, CycloElement)):
                return e.order
    raise ValueError("cannot infer field order from scalar-only entries; pass order=")


def polymatrix_det(m: PolyMatrix) -> TPoly:
    """Fraction-free Bareiss determinant over Q(xi)[t].

    Pivot rule: the nonzero entry of lowest degree in the current column,
    ties broken by row index.
    """
    if m.rows != m.cols:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    size = m.rows
    n = m.order
    if size == 0:
        return TPoly.one(n)
    a = m.to_lists()
    sign = 1
    prev = TPoly.one(n)
    for k in range(size - 1):
        best = None
        for i in range(k, size):
            d = a[i][k].degree
            if d is not None and (best is None or d < a[best][k].degree):
                best = i
        if best is None:
            return TPoly.zero(n)
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num if k == 0 else tpoly_divexact(num, prev)
        prev = pivot
    det = a[size - 1][size - 1]
    return -det if sign < 0 else det


LAPLACE_MAX_DIM = 6


def polymatrix_det_laplace(m: PolyMatrix) -> TPoly:
    """Generalised Laplace expansion along a fixed block of leading rows.

    For fixed rows r (the first half), det X = sum over column sets s of
    (-1)**(sum(r)+sum(s)) det X[r, s] det X[r^c, s^c], applied recursively.
    Independent of :func:`polymatrix_det`; intended as an oracle.
    """
    if m.rows != m.cols:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows > LAPLACE_MAX_DIM:
        raise ValueError(f"Laplace oracle limited to dimension {LAPLACE_MAX_DIM}, got {m.rows}")
    return _laplace(m.to_lists(), m.order)


def _laplace(a: list[list[TPoly]], n: int) -> TPoly:
    size = len(a)
    if size == 0:
        return TPoly.one(n)
    if size == 1:
        return a[0][0]
    p = size // 2
    fixed = list(range(p))
    rest_rows = list(range(p, size))
    total = TPoly.zero(n)
    for s in itertools.combinations(range(size), p):
        comp = [j for j in range(size) if j not in s]
        minor = _laplace([[a[i][j] for j in s] for i in fixed], n)
        if minor.is_zero():
            continue
        cominor = _laplace([[a[i][j] for j in comp] for i in rest_rows], n)
        term = minor * cominor
        total = total - term if (sum(fixed) + sum(s)) % 2 else total + term
    return total


def vandermonde_det(nodes: Sequence[CycloElement]) -> CycloElement:
    """prod_{j<k} (a_k - a_j), straight from the product formula."""
    if not nodes:
        raise ValueError("need at least one node to fix the field order")
    n = nodes[0].order
    acc = CycloElement.one(n)
    for j in range(len(nodes)):
        for k in range(j + 1, len(nodes)):
            acc = acc * (nodes[k] - nodes[j])
    return acc


def vandermonde_matrix(nodes: Sequence[CycloElement]) -> PolyMatrix:
    """Explicit power matrix with rows (1, a, a**2, ...)."""
    n = nodes[0].order
    size = len(nodes)
    return PolyMatrix([[a ** k for k in range(size)] for a in nodes], n)


# ---------------------------------------------------------------------------
# determinants of monomial matrices
# ---------------------------------------------------------------------------


class MonomialDeterminant:
    """Determinants of size x size matrices whose entries are monomials xi**a * t**b.

    The determinant is expanded row by row over the set of columns already
    used (size * 2**(size-1) monomial shifts instead of size! products). Each
    layer of that recursion is held as one integer array of shape
    (masks, degree + 1, n), so a row costs ``size`` vectorised updates.
    :meth:`determinants` walks row-subsets of a fixed row table and reuses
    the layers of the longest prefix shared with the previous subset, which
    is what makes lexicographic chunks cheap.

    Results are integer arrays ``D`` with ``det = sum D[d, k] xi**k t**d``
    (a representative modulo x**n - 1). Coefficients are bounded by size!,
    so int64 is exact for size <= 20.
    """

    def __init__(self, n: int, size: int, max_degree: int):
        if size > 20:
            raise ValueError("int64 coefficient bound exceeded for size > 20")
        self.n = n
        self.size = size
        self.width = max_degree + 1
        layers: list[list[int]] = [[] for _ in range(size + 1)]
        for mask in range(1 << size):
            layers[bin(mask).count("1")].append(mask)
        pos = [{m: i for i, m in enumerate(ms)} for ms in layers]
        self._layer_sizes = [len(ms) for ms in layers]
        # per (layer, column): source positions, target positions, signs
        self._moves: list[list[tuple[np.ndarray, np.ndarray, np.ndarray]]] = []
        for i in range(size):
            per_col = []
            for c in range(size):
                bit = 1 << c
                src, tgt, sgn = [], [], []
                for m in layers[i]:
                    if m & bit:
                        continue
                    src.append(pos[i][m])
                    tgt.append(pos[i + 1][m | bit])
                    # inversions: used columns to the right of c
                    sgn.append(-1 if bin(m >> (c + 1)).count("1") % 2 else 1)
                per_col.append(
                    (np.array(src, dtype=np.intp), np.array(tgt, dtype=np.intp),
                     np.array(sgn, dtype=np.int64)[:, None, None])
                )
            self._moves.append(per_col)
        self._base = np.zeros((1, self.width, n), dtype=np.int64)
        self._base[0, 0, 0] = 1

    def _step(self, cur: np.ndarray, i: int, xi_row: Sequence[int], t_row: Sequence[int]) -> np.ndarray:
        n, width = self.n, self.width
        nxt = np.zeros((self._layer_sizes[i + 1], width, n), dtype=np.int64)
        for c, (src, tgt, sgn) in enumerate(self._moves[i]):
            g = cur[src]
            a = xi_row[c] % n
            if a:
                g = np.roll(g, a, axis=2)
            b = t_row[c]
            if b >= width:
                continue
            nxt[tgt, b:, :] += sgn * g[:, : width - b, :]
        return nxt

    def __call__(self, xi_exps: Sequence[Sequence[int]], t_exps: Sequence[Sequence[int]]) -> np.ndarray:
        if len(xi_exps) != self.size:
            raise ValueError(f"expected {self.size} rows, got {len(xi_exps)}")
        cur = self._base
        for i in range(self.size):
            cur = self._step(cur, i, xi_exps[i], t_exps[i])
        return cur[0]

    def determinants(self, subsets: Iterable[Sequence[int]], xi_table: Sequence[Sequence[int]],
                     t_table: Sequence[Sequence[int]]):
        """Yield the determinant array for each row-subset of the given row tables."""
        stack = [self._base]
        prev: tuple[int, ...] = ()
        for sub in subsets:
            sub = tuple(sub)
            common = 0
            while common < len(prev) and common < len(sub) and prev[common] == sub[common]:
                common += 1
            common = min(common, self.size - 1)
            del stack[common + 1:]
            for i in range(common, self.size):
                r = sub[i]
                stack.append(self._step(stack[i], i, xi_table[r], t_table[r]))
            prev = sub
            yield stack[self.size][0]


def monomial_det_array(xi_exps: Sequence[Sequence[int]], t_exps: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Determinant of the matrix with entries xi**xi_exps[i][j] * t**t_exps[i][j].

    Returns an integer array of shape (degree bound + 1, n); see
    :class:`MonomialDeterminant`.
    """
    size = len(xi_exps)
    max_deg = sum(max(r) for r in t_exps) if size else 0
    return MonomialDeterminant(n, size, max_deg)(xi_exps, t_exps)


def reduce_array(arr: np.ndarray, n: int) -> np.ndarray:
    """Reduce each row of an (m, n) integer representative array modulo Phi_n."""
    table = np.array(reduction_table(n), dtype=np.int64)
    return arr @ table


def array_to_tpoly(arr: np.ndarray, n: int) -> TPoly:
    return TPoly(n, [CycloElement._raw(n, [int(x) for x in row]) for row in arr])


def monomial_det(xi_exps: Sequence[Sequence[int]], t_exps: Sequence[Sequence[int]], n: int) -> TPoly:
    return array_to_tpoly(monomial_det_array(xi_exps, t_exps, n), n)
