"""Exact rationals and the cyclotomic field Q(xi_n).

Elements of Q(xi_n) are stored as length-n coefficient vectors modulo
x**n - 1, with integer numerators over one shared positive denominator.
Products are cyclic convolutions; equality and zero tests reduce modulo
the n-th cyclotomic polynomial, the only sound canonical form.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

BigRational = Fraction

Scalar = Union[int, Fraction]


class OrderMismatchError(ValueError):
    """Raised when combining elements of cyclotomic fields of different orders."""


# ---------------------------------------------------------------------------
# integer polynomials (lowest degree first)
# ---------------------------------------------------------------------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials; ``den`` must be monic so everything stays integral."""
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [], _trim(rem)
    quo = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            quo[k - dd] = c
            for i in range(dd + 1):
                rem[k - dd + i] -= c * den[i]
    return _trim(quo), _trim(rem[:dd])


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _int_poly_divmod_monic(num, _cyclotomic_coeffs(d))
            assert not rem
    return tuple(num)


class CyclotomicPolynomial:
    """The n-th cyclotomic polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[int, ...]):
        self.order = order
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return list(self.coeffs) == list(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"CyclotomicPolynomial({self.order}, {list(self.coeffs)})"


def cyclotomic_polynomial(n: int) -> CyclotomicPolynomial:
    """Return Phi_n, obtained by dividing x**n - 1 by Phi_d for every proper divisor d."""
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    return CyclotomicPolynomial(n, _cyclotomic_coeffs(n))


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds x**k mod Phi_n, padded to length phi(n); k runs over 0..n-1.

    Reducing a length-n representative modulo Phi_n is then a fixed integer
    matrix product, which the vectorised zero tests in the certifier rely on.
    """
    phi = _cyclotomic_coeffs(n)
    deg = len(phi) - 1
    rows = []
    for k in range(n):
        mono = [0] * k + [1]
        _, rem = _int_poly_divmod_monic(mono, phi)
        rows.append(tuple(rem + [0] * (deg - len(rem))))
    return tuple(rows)


# ---------------------------------------------------------------------------
# rational polynomials over Q, used only for inversion
# ---------------------------------------------------------------------------


def _q_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    lead = b[-1]
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / lead
        if c:
            quo[k - db] = c
            for i in range(db + 1):
                rem[k - db + i] -= c * b[i]
    return _trim(quo), _trim(rem[:db])


def _q_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _q_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _q_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    """Extended Euclid in Q[x]: return u with u*a == 1 (mod modulus)."""
    r0, r1 = list(modulus), list(a)
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while r1:
        q, r = _q_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _q_sub(s0, _q_mul(q, s1))
    # r0 is a nonzero constant because a is coprime to the irreducible modulus
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r0[0]
    return [x / c for x in s0]


# ---------------------------------------------------------------------------
# CycloElement
# ---------------------------------------------------------------------------


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = den
    for x in nums:
        if g == 1:
            break
        g = math.gcd(g, x)
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


class CycloElement:
    """An element sum_k c_k xi**k of Q(xi_n), xi = exp(2 pi i / n).

    Immutable. Arithmetic works modulo x**n - 1; ``==`` and :meth:`is_zero`
    reduce modulo Phi_n.
    """

    __slots__ = ("order", "_nums", "_den", "_canon")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(cs)}")
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in cs]
        self.order = order
        self._nums, self._den = _normalize(nums, den)
        self._canon = None

    @classmethod
    def _raw(cls, order: int, nums: Sequence[int], den: int = 1) -> CycloElement:
        obj = object.__new__(cls)
        obj.order = order
        if den == 1:
            obj._nums, obj._den = tuple(nums), 1
        else:
            obj._nums, obj._den = _normalize(list(nums), den)
        obj._canon = None
        return obj

    @classmethod
    def zero(cls, n: int) -> CycloElement:
        return cls._raw(n, (0,) * n)

    @classmethod
    def one(cls, n: int) -> CycloElement:
        return cls.from_scalar(n, 1)

    @classmethod
    def from_scalar(cls, n: int, c: Scalar) -> CycloElement:
        c = Fraction(c)
        return cls._raw(n, (c.numerator,) + (0,) * (n - 1), c.denominator)

    # -- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> CycloElement:
        if isinstance(other, CycloElement):
            if other.order != self.order:
                raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElement.from_scalar(self.order, other)
        return NotImplemented

    def __add__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return CycloElement._raw(self.order, [a + b for a, b in zip(self._nums, other._nums)], self._den)
        d1, d2 = self._den, other._den
        return CycloElement._raw(
            self.order, [a * d2 + b * d1 for a, b in zip(self._nums, other._nums)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement._raw(self.order, [-a for a in self._nums], self._den)

    def __sub__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloElement:
        return (-self) + other

    def __mul__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = self.order
        out = [0] * n
        b = other._nums
        for i, x in enumerate(self._nums):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % n] += x * y
        return CycloElement._raw(n, out, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int) -> CycloElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElement.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Scalar) -> CycloElement:
        c = Fraction(c)
        return CycloElement._raw(self.order, [x * c.numerator for x in self._nums], self._den * c.denominator)

    # -- reduction, zero test, inverse -------------------------------------

    def _reduced_nums(self) -> tuple[int, ...]:
        # x**k mod Phi_n stays integral since Phi_n is monic
        if self._canon is None:
            table = reduction_table(self.order)
            deg = len(table[0])
            acc = [0] * deg
            for x, row in zip(self._nums, table):
                if x:
                    for i, r in enumerate(row):
                        if r:
                            acc[i] += x * r
            self._canon = tuple(acc)
        return self._canon

    def is_zero(self) -> bool:
        return not any(self._reduced_nums())

    def reduced(self) -> CycloElement:
        """Canonical representative: remainder modulo Phi_n, zero-padded to length n."""
        acc = self._reduced_nums()
        return CycloElement._raw(self.order, acc + (0,) * (self.order - len(acc)), self._den)

    def inverse(self) -> CycloElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        n = self.order
        phi = [Fraction(c) for c in _cyclotomic_coeffs(n)]
        a = _trim([Fraction(x, self._den) for x in self._reduced_nums()])
        inv = _q_inverse_mod(a, phi)
        return CycloElement(n, inv + [Fraction(0)] * (n - len(inv)))

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloElement.from_scalar(self.order, other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        if other.order != self.order:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.order, _normalize(list(self._reduced_nums()), self._den)))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conversion ----------------------------------------------------------

    def to_complex(self) -> complex:
        """Floating-point value; diagnostics only, never used for zero testing."""
        n = self.order
        total = 0j
        for k, x in enumerate(self._nums):
            if x:
                total += x * cmath.exp(2j * math.pi * k / n)
        return total / self._den

    def to_json(self) -> dict:
        return {"n": self.order, "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CycloElement:
        n = int(data["n"])
        return cls(n, [Fraction(int(p), int(q)) for p, q in data["coeffs"]])

    def __repr__(self) -> str:
        return f"CycloElement({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*xi^{k}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------


def _check_orders(a: CycloElement, b: CycloElement) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} vs {b.order}")


def cyclo_add(a: CycloElement, b: CycloElement) -> CycloElement:
    _check_orders(a, b)
    return a + b


def cyclo_neg(a: CycloElement) -> CycloElement:
    return -a


def cyclo_mul(a: CycloElement, b: CycloElement) -> CycloElement:
    _check_orders(a, b)
    return a * b


def cyclo_is_zero(a: CycloElement) -> bool:
    return a.is_zero()


def cyclo_inverse(a: CycloElement) -> CycloElement:
    return a.inverse()


def cyclo_root_power(n: int, e: int) -> CycloElement:
    """xi**(e mod n) as a unit coefficient vector."""
    if n < 2:
        raise ValueError(f"root of unity order must be >= 2, got {n}")
    nums = [0] * n
    nums[e % n] = 1
    return CycloElement._raw(n, nums)


def cyclo_to_complex(a: CycloElement) -> complex:
    return a.to_complex()


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer string into an exact rational."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        q_int = int(q)
        if q_int == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(p), q_int)
    return Fraction(int(text))
