"""Order sequences, branch separation, and Hensel-form reduction.

For a polynomial P and a candidate root prefix c_1, c_2, ..., the order
i_k of P(x, z_k + x^(k+1) y) is strictly increasing exactly while the
prefix is consistent with a root, and for a simple root there is a least
index k0 past which it increases by exactly one.  From any k > k0 the
substitution y -> z_{k+1} + x^(k+1) (y + c_{k+1}) turns P into
-omega0 x^{i_k} (y - Q_k(x, y)) for a polynomial Q_k defining a reduced
Henselian equation satisfied by the root's tail; its coefficient table is
computed here by an explicit multinomial formula, never by expanding the
substitution, so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bivar import BivarPoly, eval_at_poly, substitute_shift, substitute_tail
from .errors import InputError, NotSimpleRootError, PrecisionError
from .flajolet_soria import ReducedHenselEq, weighted_compositions
from .series import TruncatedSeries, _frac


@dataclass(frozen=True)
class OrderTrace:
    """Recorded orders i_k and what they reveal about the seed.

    ``stable_from`` is the least recorded k whose step to k+1 equals one,
    provided every later recorded step does too; ``failure_at`` is the
    first k whose order did not increase, which rules out every root of P
    extending the seed.
    """

    entries: tuple[tuple[int, int], ...]
    stable_from: int | None
    failure_at: int | None

    def order_at(self, k: int) -> int:
        for kk, ik in self.entries:
            if kk == k:
                return ik
        raise InputError(f"order at k={k} was not recorded")


@dataclass(frozen=True)
class BranchData:
    """Branch-separation index with the order and the nonzero scalar at it."""

    k0: int
    i_k0: int
    omega0: Fraction


@dataclass(frozen=True)
class HenselForm:
    """Either a reduced Henselian equation for the tail past z_{k+1}, or
    the discovery that z_{k+1} is itself an exact polynomial root."""

    k: int
    i_k: int | None = None
    omega0: Fraction | None = None
    eq: ReducedHenselEq | None = None
    polynomial_root: tuple[Fraction, ...] | None = None


def _validate_inputs(P: BivarPoly, c: TruncatedSeries) -> None:
    if P.is_zero:
        raise InputError("polynomial must be nonzero")
    if P.y_degree < 1:
        raise InputError("polynomial must involve y")
    if c.coefficient(0):
        raise InputError("seed series must have zero constant term")
    if c.precision < 1 or not c.coefficient(1):
        raise InputError("seed series must have c_1 != 0")


def order_sequence(P: BivarPoly, c: TruncatedSeries, k_max: int) -> OrderTrace:
    """Orders i_k of the shifted polynomials for k = 0..k_max."""
    _validate_inputs(P, c)
    if k_max < 0:
        raise InputError("k_max must be a natural number")
    if c.precision < k_max:
        raise PrecisionError(f"need {k_max} coefficients, have {c.precision}")
    entries: list[tuple[int, int]] = []
    current = substitute_tail(P, (), 1)
    entries.append((0, current.x_order))
    failure_at = None
    for k in range(1, k_max + 1):
        current = substitute_shift(current, c.coefficient(k))
        i_k = current.x_order
        entries.append((k, i_k))
        if failure_at is None and k >= 2 and i_k <= entries[-2][1]:
            failure_at = k
    stable_from = None
    if failure_at is None:
        orders = [ik for _, ik in entries]
        for k in range(len(orders) - 1):
            if all(orders[t + 1] == orders[t] + 1 for t in range(k, len(orders) - 1)):
                stable_from = k
                break
    return OrderTrace(tuple(entries), stable_from, failure_at)


def branch_data(P: BivarPoly, c: TruncatedSeries, max_scan: int | None = None) -> BranchData:
    """Scan for the least k with i_{k+1} = i_k + 1 and a nonzero linear
    coefficient at the new order.

    The scan is capped by 2*dx*dy + 1; running past that cap without a hit
    disproves the simple-root hypothesis, but only once the seed carries at
    least 2*dx*dy + 3 coefficients is that verdict issued rather than a
    precision error.
    """
    _validate_inputs(P, c)
    bound = 2 * P.x_degree * P.y_degree + 1
    limit = bound if max_scan is None else min(bound, max_scan)
    current = substitute_tail(P, (), 1)
    i_prev = current.x_order
    for k in range(0, limit + 1):
        if k + 1 > c.precision:
            raise PrecisionError(
                f"branch scan needs coefficient c_{k + 1} beyond precision {c.precision}"
            )
        current = substitute_shift(current, c.coefficient(k + 1))
        i_next = current.x_order
        if i_next <= i_prev:
            raise NotSimpleRootError(
                f"order sequence stabilized at k={k + 1}: the seed does not "
                "extend to a root"
            )
        if i_next == i_prev + 1:
            omega0 = current.coefficient(i_next, 1)
            if omega0:
                return BranchData(k0=k, i_k0=i_prev, omega0=omega0)
        i_prev = i_next
    if max_scan is not None and limit == max_scan and max_scan < bound:
        raise InputError(f"no branch separation at k <= {max_scan}")
    if c.precision >= 2 * P.x_degree * P.y_degree + 3:
        raise NotSimpleRootError(
            f"no index k <= {bound} with a unit order step: not a simple root"
        )
    raise PrecisionError(
        f"need {2 * P.x_degree * P.y_degree + 3} coefficients to rule out "
        "branch separation within the bound"
    )


def find_k0(P: BivarPoly, c: TruncatedSeries) -> int:
    """Branch-separation index: least k with i_{k+1} = i_k + 1."""
    return branch_data(P, c).k0


def omega0_closed(P: BivarPoly, c: TruncatedSeries, k0: int, i_k0: int) -> Fraction:
    """The nonzero scalar at the branch point, by the closed multinomial
    sum over the seed monomials of total degree j - 1 in c_1..c_{k0+1}.

    Must agree with the coefficient of x^(i_k0 + 1) y in the shifted
    polynomial at k0 + 1; vanishing contradicts the simple-root hypothesis.
    """
    if c.precision < k0 + 1:
        raise PrecisionError(f"need {k0 + 1} seed coefficients")
    seed = [c.coefficient(n) for n in range(1, k0 + 2)]
    total = Fraction(0)
    for (i, j), a in sorted(P.terms.items()):
        if j < 1:
            continue
        target = i_k0 - k0 - 1 - i
        if target < 0:
            continue
        fj = factorial(j)
        for L in weighted_compositions(k0 + 1, j - 1, target):
            base = fj
            mono = Fraction(1)
            for v, t in enumerate(L):
                base //= factorial(t)
                if t:
                    mono *= seed[v] ** t
            total += a * base * mono
    if not total:
        raise NotSimpleRootError("the branch-point scalar vanishes")
    return total


def coefficient_after_branch(P: BivarPoly, c: TruncatedSeries, k0: int, i_k0: int,
                             omega0) -> Fraction:
    """The uniquely determined coefficient c_{k0+2}, by the closed
    multinomial sum over seed monomials of total degree j in c_1..c_{k0+1},
    scaled by -1/omega0."""
    if c.precision < k0 + 1:
        raise PrecisionError(f"need {k0 + 1} seed coefficients")
    w0 = _frac(omega0)
    if not w0:
        raise InputError("omega0 must be nonzero")
    seed = [c.coefficient(n) for n in range(1, k0 + 2)]
    total = Fraction(0)
    for (i, j), a in sorted(P.terms.items()):
        target = i_k0 + 1 - i
        if target < 0:
            continue
        fj = factorial(j)
        for L in weighted_compositions(k0 + 1, j, target):
            base = fj
            mono = Fraction(1)
            for v, t in enumerate(L):
                base //= factorial(t)
                if t:
                    mono *= seed[v] ** t
            total += a * base * mono
    return -total / w0


def henselize(P: BivarPoly, c: TruncatedSeries, k: int) -> HenselForm:
    """Reduce P at the prefix z_{k+1} to the tail's Henselian equation.

    Requires k strictly past the branch-separation index and k + 1 seed
    coefficients.  When z_{k+1} is an exact root of P that polynomial is
    returned instead of an equation.  Otherwise the table b_{l,m} of
    Q_k(x, y) = sum b_{l,m} x^l y^m is produced from the multinomial
    formula, with l running to (k+1)*dy + dx - i_k and m capped by
    min((l + i_k) / (k+1), dy).
    """
    _validate_inputs(P, c)
    if k < 1:
        raise InputError("k must be at least 1 (and beyond the branch index)")
    if c.precision < k + 1:
        raise PrecisionError(f"need {k + 1} seed coefficients, have {c.precision}")
    z = [c.coefficient(n) for n in range(1, k + 2)]
    if not eval_at_poly(P, z):
        return HenselForm(k=k, polynomial_root=tuple(z))
    bd = branch_data(P, c, max_scan=k - 1)
    shifted = substitute_tail(P, z, k + 1)  # P_k(x, y + c_{k+1})
    i_k = shifted.x_order
    expected = bd.i_k0 + (k - bd.k0)
    if i_k != expected:
        raise NotSimpleRootError(
            f"order at k={k} is {i_k}, expected {expected}: seed leaves the branch"
        )
    if shifted.coefficient(i_k, 0):
        raise NotSimpleRootError(f"c_{k + 1} does not continue the root")
    omega0 = shifted.coefficient(i_k, 1)
    if omega0 != bd.omega0 or any(
        shifted.coefficient(i_k, m) for m in range(2, P.y_degree + 1)
    ):
        raise NotSimpleRootError("shifted polynomial is not in Hensel form")

    dx, dy = P.x_degree, P.y_degree
    support = sorted(P.terms.items())
    terms: dict[tuple[int, int], Fraction] = {}
    lmax = (k + 1) * dy + dx - i_k
    for l in range(1, lmax + 1):
        m_top = min((l + i_k) // (k + 1), dy)
        for m in range(0, m_top + 1):
            acc = Fraction(0)
            for (i, j), a in support:
                if j < m:
                    continue
                target = l + i_k - m * (k + 1) - i
                if target < 0:
                    continue
                fj = factorial(j) // factorial(m)
                for L in weighted_compositions(k + 1, j - m, target):
                    base = fj
                    mono = Fraction(1)
                    for v, t in enumerate(L):
                        base //= factorial(t)
                        if t:
                            mono *= z[v] ** t
                    acc += a * base * mono
            if acc:
                terms[(l, m)] = -acc / omega0
    return HenselForm(k=k, i_k=i_k, omega0=omega0, eq=ReducedHenselEq(terms))
