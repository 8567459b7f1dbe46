"""Truncated power series over the rationals.

A series is known modulo x^(T+1): exactly the coefficients of x^0..x^T are
stored, and nothing is claimed beyond that.  All coefficients are
``fractions.Fraction`` values in canonical reduced form, so every operation
here is exact.  The valuation is always computed from the stored data; a
truncation whose stored coefficients all vanish is a distinguished state
that only promises "order > precision".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InputError, PrecisionError


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InputError(f"not an exact rational: {value!r}")


class TruncatedSeries:
    """Coefficients of a power series modulo x^(precision+1)."""

    __slots__ = ("_c", "_precision")

    def __init__(self, coefficients: Sequence, precision: int | None = None, start: int = 1):
        """Build from the coefficients of x^start, x^(start+1), ...

        ``precision`` defaults to the index of the last supplied
        coefficient; passing it explicitly extends the series with zeros
        only if it matches, otherwise the claim would be unsound and an
        error is raised.
        """
        if start < 0:
            raise InputError("start exponent must be a natural number")
        coeffs = [_frac(c) for c in coefficients]
        top = start + len(coeffs) - 1 if coeffs else start - 1
        if precision is None:
            precision = top
        if precision < top:
            raise InputError("precision below the last supplied coefficient")
        dense = [Fraction(0)] * (precision + 1)
        for offset, c in enumerate(coeffs):
            dense[start + offset] = c
        self._c = tuple(dense)
        self._precision = precision

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls((), precision=precision, start=1)

    @classmethod
    def _from_dense(cls, dense: Sequence[Fraction]) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s._c = tuple(dense)
        s._precision = len(dense) - 1
        return s

    @property
    def precision(self) -> int:
        return self._precision

    @property
    def valuation(self) -> int | None:
        """Least exponent with a nonzero coefficient, or None when every
        stored coefficient vanishes (order > precision)."""
        for n, c in enumerate(self._c):
            if c:
                return n
        return None

    @property
    def is_zero_truncation(self) -> bool:
        return self.valuation is None

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self._precision:
            raise PrecisionError(f"coefficient of x^{n} beyond precision {self._precision}")
        return self._c[n]

    def coefficients(self) -> tuple[Fraction, ...]:
        """Dense coefficients of x^0 .. x^precision."""
        return self._c

    def one_based(self) -> tuple[Fraction, ...]:
        """Coefficients c_1..c_T, for series with no constant term."""
        if self._c and self._c[0]:
            raise InputError("series has a constant term; no 1-based form")
        return self._c[1:]

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self._precision:
            raise PrecisionError("cannot extend a truncation")
        return TruncatedSeries._from_dense(self._c[: precision + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        head = ", ".join(str(c) for c in self._c[: min(len(self._c), 8)])
        return f"TruncatedSeries([{head}{'...' if len(self._c) > 8 else ''}]; T={self._precision})"

    # -- exact arithmetic; the result precision is the weaker of the operands

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._from_dense([-c for c in self._c])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self._precision, other._precision)
        return TruncatedSeries._from_dense(
            [self._c[n] + other._c[n] for n in range(t + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self._precision, other._precision)
        return TruncatedSeries._from_dense(
            [self._c[n] - other._c[n] for n in range(t + 1)]
        )

    def scale(self, factor) -> "TruncatedSeries":
        f = _frac(factor)
        return TruncatedSeries._from_dense([f * c for c in self._c])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        # schoolbook product, truncated; instance sizes never justify FFT
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self._precision, other._precision)
        out = [Fraction(0)] * (t + 1)
        for n, a in enumerate(self._c[: t + 1]):
            if not a:
                continue
            for m, b in enumerate(other._c[: t - n + 1]):
                if b:
                    out[n + m] += a * b
        return TruncatedSeries._from_dense(out)


def series_pow(y: TruncatedSeries, j: int, precision: int) -> TruncatedSeries:
    """j-th power of a series with zero constant term, modulo x^(precision+1).

    The result's coefficient of x^n vanishes for n < j, and at n = j it is
    c_1^j.  For j = 0 the constant series 1 is returned.
    """
    if j < 0:
        raise InputError("exponent must be a natural number")
    if y.precision < precision:
        raise PrecisionError(
            f"series precision {y.precision} below requested {precision}"
        )
    if y.coefficient(0):
        raise InputError("series_pow expects a series with zero constant term")
    one = TruncatedSeries((1,), precision=precision, start=0)
    if j == 0:
        return one
    base = y.truncate(precision)
    acc = one
    remaining = j
    power = base
    while remaining:
        if remaining & 1:
            acc = acc * power
        remaining >>= 1
        if remaining:
            power = power * power
    return acc


def series_div(u: TruncatedSeries, v: TruncatedSeries, precision: int) -> TruncatedSeries:
    """Quotient u/v modulo x^(precision+1), when it is a power series.

    Requires ord(v) finite and ord(u) >= ord(v) (or u the zero truncation).
    Both operands must carry precision + ord(v) coefficients.
    """
    e = v.valuation
    if e is None:
        raise InputError("division by a series with no visible nonzero coefficient")
    if min(u.precision, v.precision) - e < precision:
        raise PrecisionError("insufficient precision for the requested quotient")
    if u.is_zero_truncation:
        return TruncatedSeries.zero(precision)
    if u.valuation < e:
        raise InputError("quotient is not a power series (numerator order too small)")
    un = [u.coefficient(n + e) for n in range(precision + 1)]
    vn = [v.coefficient(n + e) for n in range(precision + 1)]
    lead = vn[0]
    out: list[Fraction] = []
    for n in range(precision + 1):
        acc = un[n]
        for m, w in enumerate(out):
            if w and vn[n - m]:
                acc -= w * vn[n - m]
        out.append(acc / lead)
    return TruncatedSeries._from_dense(out)
