"""Sparse bivariate polynomials over the rationals, and the substitutions
y -> z(x) + x^e * y that drive both implicitization and Hensel-form
reduction.

A polynomial is a finite map (i, j) -> coefficient of x^i y^j with no zero
entries stored.  The x-degree, y-degree and x-order are always derived
from the stored support.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Mapping, Sequence

from .errors import InputError, PrecisionError
from .series import TruncatedSeries, _frac


# -- dense univariate helpers (index = exponent, trailing zeros trimmed)

def _utrim(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _umul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for n, x in enumerate(a):
        if not x:
            continue
        for m, y in enumerate(b):
            if y:
                out[n + m] += x * y
    return _utrim(out)


def uni_order(a: Sequence[Fraction]) -> int | None:
    """Order of a dense univariate polynomial; None for the zero polynomial."""
    for n, c in enumerate(a):
        if c:
            return n
    return None


class BivarPoly:
    """Finite sum of a_{i,j} x^i y^j with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping):
        cleaned = {}
        for key, value in terms.items():
            i, j = key
            if i < 0 or j < 0:
                raise InputError("exponents must be natural numbers")
            c = _frac(value)
            if c:
                cleaned[(int(i), int(j))] = c
        self._terms = cleaned

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self._terms), default=0)

    @property
    def x_order(self) -> int | None:
        """Least x-exponent over all terms, i.e. min_j ord of the x-coefficient
        polynomials; None for the zero polynomial."""
        return min((i for i, _ in self._terms), default=None)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self._terms.items())

    def partial_y(self) -> "BivarPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self._terms.items():
            if j >= 1:
                out[(i, j - 1)] = c * j
        return BivarPoly(out)

    def scale(self, factor) -> "BivarPoly":
        f = _frac(factor)
        return BivarPoly({k: f * c for k, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        if not self._terms:
            return "BivarPoly(0)"
        bits = []
        for (i, j), c in self.sorted_terms():
            mono = "".join(
                (f"x^{i}" if i > 1 else "x" if i == 1 else "",
                 f"y^{j}" if j > 1 else "y" if j == 1 else ""))
            bits.append(f"({c}){mono}" if mono else f"({c})")
        return "BivarPoly(" + " + ".join(bits) + ")"

    def primitive_normalized(self) -> "BivarPoly":
        """Canonical representative of the ray through this polynomial:
        integer coefficients, content 1, positive coefficient on the
        anti-lexicographically greatest support element."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {k: c.numerator * (den // c.denominator) for k, c in self._terms.items()}
        content = 0
        for v in ints.values():
            content = gcd(content, abs(v))
        top = max(self._terms, key=lambda ij: (ij[1], ij[0]))
        sign = 1 if ints[top] > 0 else -1
        return BivarPoly({k: Fraction(sign * v, content) for k, v in ints.items()})


def _poly_powers(z: Sequence[Fraction], top: int) -> list[list[Fraction]]:
    """Dense powers z^0..z^top of the polynomial c_1 x + ... + c_k x^k."""
    dense = _utrim([Fraction(0)] + [_frac(c) for c in z])
    powers = [[Fraction(1)]]
    for _ in range(top):
        powers.append(_umul(powers[-1], dense))
    return powers


def eval_at_poly(P: BivarPoly, z: Sequence) -> list[Fraction]:
    """Exact dense coefficients of P(x, z(x)) for z = c_1 x + ... + c_k x^k."""
    powers = _poly_powers(z, P.y_degree)
    out: list[Fraction] = []
    for (i, j), a in P._terms.items():
        zj = powers[j]
        need = i + len(zj)
        if len(out) < need:
            out.extend([Fraction(0)] * (need - len(out)))
        for m, c in enumerate(zj):
            if c:
                out[i + m] += a * c
    return _utrim(out)


def substitute_tail(P: BivarPoly, z: Sequence, e: int) -> BivarPoly:
    """Exact expansion of P(x, z(x) + x^e * y) as a bivariate polynomial."""
    if e < 1:
        raise InputError("substitution exponent must be at least 1")
    powers = _poly_powers(z, P.y_degree)
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), a in P._terms.items():
        for m in range(j + 1):
            w = a * comb(j, m)
            zp = powers[j - m]
            base = i + e * m
            for t, c in enumerate(zp):
                if c:
                    key = (base + t, m)
                    out[key] = out.get(key, Fraction(0)) + w * c
    return BivarPoly(out)


def substitute_shift(P: BivarPoly, a, e: int = 1) -> BivarPoly:
    """Exact expansion of P(x, a + x^e * y) for a constant a."""
    if e < 1:
        raise InputError("substitution exponent must be at least 1")
    shift = _frac(a)
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), coeff in P._terms.items():
        for m in range(j + 1):
            value = coeff * comb(j, m) * shift ** (j - m)
            if value:
                key = (i + e * m, m)
                out[key] = out.get(key, Fraction(0)) + value
    return BivarPoly(out)


def shift_substitute(P: BivarPoly, z: Sequence, k: int) -> BivarPoly:
    """The k-th shifted polynomial P(x, z_k(x) + x^(k+1) * y).

    ``z`` supplies the coefficients c_1..c_k of the partial sum z_k.  The
    x-order and x-degree of the result are available as ``x_order`` and
    ``x_degree`` on the returned polynomial.
    """
    if len(z) != k:
        raise InputError(f"expected exactly {k} partial-sum coefficients, got {len(z)}")
    return substitute_tail(P, z, k + 1)


def eval_at_series(P: BivarPoly, y: TruncatedSeries, precision: int) -> TruncatedSeries:
    """P(x, y(x)) modulo x^(precision+1).

    The result's valuation is the least exponent with a nonzero computed
    coefficient; when all of them vanish only "order > precision" is
    reported (zero truncation), never exact vanishing.
    """
    if y.precision < precision:
        raise PrecisionError(
            f"series precision {y.precision} below requested {precision}"
        )
    by_j: dict[int, dict[int, Fraction]] = {}
    for (i, j), a in P._terms.items():
        by_j.setdefault(j, {})[i] = a
    acc = [Fraction(0)] * (precision + 1)
    yj = TruncatedSeries((1,), precision=precision, start=0)
    for j in range(0, P.y_degree + 1):
        if j > 0:
            yj = yj * y.truncate(precision)
        xpoly = by_j.get(j)
        if not xpoly:
            continue
        dense = yj.coefficients()
        for i, a in xpoly.items():
            for n in range(0, precision - i + 1):
                if dense[n]:
                    acc[i + n] += a * dense[n]
    return TruncatedSeries._from_dense(acc)
