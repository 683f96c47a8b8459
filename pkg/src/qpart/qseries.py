"""Truncated formal power series in q with exact integer coefficients.

A :class:`QSeries` carries an explicit truncation ``order``: coefficients of
``q^0 .. q^order`` are known, everything above is unknown.  Arithmetic between
series of different orders is refused rather than silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

INFINITE = None

DEFAULT_DIVERGENCE_GUARD = 10_000


class QSeriesError(ValueError):
    pass


class OrderMismatchError(QSeriesError):
    pass


class NonUnitError(QSeriesError):
    pass


class DivergenceError(QSeriesError):
    pass


class QSeries:
    """Immutable dense truncated power series."""

    __slots__ = ("_order", "_coeffs")

    def __init__(self, coeffs: Iterable[int], order: Optional[int] = None):
        cs = [int(c) for c in coeffs]
        if order is None:
            if not cs:
                raise QSeriesError("cannot infer order from an empty coefficient list")
            order = len(cs) - 1
        if order < 0:
            raise QSeriesError(f"order must be non-negative, got {order}")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([0] * (order + 1 - len(cs)))
        self._order = order
        self._coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __len__(self):
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __repr__(self):
        return f"QSeries({list(self._coeffs)}, order={self._order})"

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def _check(self, other: "QSeries"):
        if self._order != other._order:
            raise OrderMismatchError(
                f"order mismatch: {self._order} vs {other._order}"
            )

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            self._check(other)
            return other
        if isinstance(other, int):
            return constant(other, self._order)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        return self._coeffs == other._coeffs

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries([a + b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-a for a in self._coeffs], self._order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries([a - b for a, b in zip(self._coeffs, other._coeffs)], self._order)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([a * other for a in self._coeffs], self._order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self._order
        out = [0] * (n + 1)
        b = other._coeffs
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += a * bj
        return QSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * reciprocal(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = one(self._order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def coefficient(self, n: int) -> int:
        return coefficient(self, n)

    def truncate(self, order: int) -> "QSeries":
        """Restrict to a lower order (never extends)."""
        if order > self._order:
            raise OrderMismatchError(
                f"cannot extend a series known to order {self._order} up to {order}"
            )
        return QSeries(self._coeffs[: order + 1], order)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def min_exponent(self) -> Optional[int]:
        """Smallest exponent with a nonzero coefficient, or None if zero to this order."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def agrees_with(self, other: "QSeries", upto: int) -> bool:
        upto_ok = min(self._order, other._order)
        if upto > upto_ok:
            raise OrderMismatchError(
                f"cannot compare to order {upto}; operands known to {self._order} and {other._order}"
            )
        return self._coeffs[: upto + 1] == other._coeffs[: upto + 1]


def zero(order: int) -> QSeries:
    return QSeries([], order)


def one(order: int) -> QSeries:
    if order < 0:
        raise QSeriesError(f"order must be non-negative, got {order}")
    return QSeries([1], order)


def constant(c: int, order: int) -> QSeries:
    return QSeries([c], order)


def monomial(exponent: int, order: int, coeff: int = 1) -> QSeries:
    """``coeff * q^exponent``; vanishes when the exponent is above the order."""
    if exponent < 0:
        raise QSeriesError(f"negative exponent {exponent}")
    if exponent > order:
        return zero(order)
    cs = [0] * (order + 1)
    cs[exponent] = coeff
    return QSeries(cs, order)


def add(x: QSeries, y: QSeries) -> QSeries:
    return x + y


def sub(x: QSeries, y: QSeries) -> QSeries:
    return x - y


def mul(x: QSeries, y: QSeries) -> QSeries:
    return x * y


def coefficient(x: QSeries, n: int) -> int:
    if not 0 <= n <= x.order:
        raise QSeriesError(f"exponent {n} outside 0..{x.order}")
    return x.coeffs[n]


def reciprocal(x: QSeries) -> QSeries:
    c0 = x.coeffs[0]
    if c0 not in (1, -1):
        raise NonUnitError(f"constant term {c0} is not a unit; series is not invertible over Z")
    n = x.order
    a = x.coeffs
    inv = [0] * (n + 1)
    inv[0] = c0  # 1/c0 == c0 for units
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            ai = a[i]
            if ai:
                s += ai * inv[k - i]
        inv[k] = -c0 * s
    return QSeries(inv, n)


@dataclass(frozen=True)
class PochSpec:
    """``(sign * q^offset; q^step)_length``.

    ``sign=+1`` is ``(q^a; q^b)_L = prod (1 - q^(a+kb))`` and ``sign=-1`` is
    ``(-q^a; q^b)_L = prod (1 + q^(a+kb))``.  ``length=None`` means infinite.
    """

    sign: int
    offset: int
    step: int
    length: Optional[int] = INFINITE

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise QSeriesError(f"sign must be +1 or -1, got {self.sign}")
        if self.offset < 0:
            raise QSeriesError(f"offset must be non-negative, got {self.offset}")
        if self.step < 1:
            raise QSeriesError(f"step must be positive, got {self.step}")
        if self.length is not None and self.length < 0:
            raise QSeriesError(f"length must be non-negative, got {self.length}")

    @property
    def infinite(self) -> bool:
        return self.length is None


def _mul_binomial(cs: list, coeff: int, e: int, order: int) -> None:
    """In place: cs *= (1 + coeff*q^e), truncated."""
    if e == 0:
        f = 1 + coeff
        for i in range(order + 1):
            cs[i] *= f
        return
    for i in range(order, e - 1, -1):
        if cs[i - e]:
            cs[i] += coeff * cs[i - e]


def scaled_pochhammer(c: int, offset: int, step: int, length: Optional[int], order: int) -> QSeries:
    """``prod_k (1 - c*q^(offset+k*step))`` for k < length (all k if length is None)."""
    if step < 1:
        raise QSeriesError(f"step must be positive, got {step}")
    cs = [0] * (order + 1)
    cs[0] = 1
    k = 0
    while length is None or k < length:
        e = offset + k * step
        if e > order:
            # exponents only grow; remaining factors are 1 to this order
            break
        _mul_binomial(cs, -c, e, order)
        k += 1
    return QSeries(cs, order)


def pochhammer(spec: PochSpec, order: int) -> QSeries:
    return scaled_pochhammer(spec.sign, spec.offset, spec.step, spec.length, order)


def poch(sign: int, offset: int, step: int, length: Optional[int], order: int) -> QSeries:
    """Shorthand for ``pochhammer(PochSpec(sign, offset, step, length), order)``."""
    return pochhammer(PochSpec(sign, offset, step, length), order)


TermFn = Callable[[int], QSeries]


def sum_of_terms(
    term: TermFn,
    order: int,
    start: int = 0,
    guard: int = DEFAULT_DIVERGENCE_GUARD,
) -> QSeries:
    """Sum ``term(n)`` for n = start, start+1, ... until a term vanishes to ``order``.

    The caller guarantees the leading exponent of ``term(n)`` is nondecreasing
    and eventually exceeds ``order``.  After ``guard`` terms without reaching
    that point a :class:`DivergenceError` is raised.
    """
    total = zero(order)
    n = start
    count = 0
    while True:
        t = term(n)
        if t.order != order:
            raise OrderMismatchError(f"term {n} has order {t.order}, expected {order}")
        if t.is_zero():
            return total
        total = total + t
        n += 1
        count += 1
        if count >= guard:
            raise DivergenceError(
                f"{guard} consecutive terms (from n={start}) did not pass order {order}"
            )


def from_function(f: Callable[[int], int], order: int) -> QSeries:
    return QSeries([f(n) for n in range(order + 1)], order)


def format_coeffs(x: QSeries) -> str:
    return " ".join(str(c) for c in x.coeffs)



def product(factors: Sequence[QSeries], order: int) -> QSeries:
    out = one(order)
    for f in factors:
        out = out * f
    return out
