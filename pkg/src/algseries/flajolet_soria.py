"""The Flajolet-Soria coefficient formula and the fully closed-form
coefficient expression for a simple algebraic root.

Given a reduced Henselian equation y = Q(x, y), the coefficients of its
unique power-series solution are constrained sums of multinomials in the
coefficients of Q.  Composing that formula with the Hensel-form reduction
of a vanishing polynomial P yields, for every tail index, a closed-form
expression in the coefficients of P and an initial part of the root.  The
closed form is implemented literally (outer sum over coefficient
multi-exponents S, inner sum over seed multi-exponents T, innermost
integer weights) and never reuses the Hensel-form coefficients, so the two
routes stay independent evidence of each other.

All enumerations run under a node budget and fail fast once it is
exhausted; the formulas are exponential and must stay interactive.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

from .bivar import BivarPoly
from .errors import InputError
from .series import TruncatedSeries, _frac

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass
class EnumerationBudget:
    """Mutable node counter shared by the enumerations of one request."""

    limit: int = DEFAULT_NODE_BUDGET
    used: int = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            from .errors import BudgetError

            raise BudgetError(f"enumeration exceeded {self.limit} nodes")


def weighted_compositions(length: int, total: int, weight: int) -> Iterator[tuple[int, ...]]:
    """Vectors t of the given length with sum(t) = total and
    sum((v+1) * t[v]) = weight (positions weighted 1..length)."""
    if total < 0 or weight < 0:
        return
    prefix = [0] * length

    def rec(pos: int, rem_total: int, rem_weight: int):
        v = pos + 1
        if pos == length - 1:
            if rem_total * v == rem_weight:
                prefix[pos] = rem_total
                yield tuple(prefix)
                prefix[pos] = 0
            return
        for t in range(rem_total + 1):
            rest = rem_total - t
            w = rem_weight - v * t
            if w < 0:
                break
            if rest == 0:
                if w == 0:
                    prefix[pos] = t
                    yield tuple(prefix)
                    prefix[pos] = 0
                continue
            if not rest * (v + 1) <= w <= rest * length:
                continue
            prefix[pos] = t
            yield from rec(pos + 1, rest, w)
            prefix[pos] = 0

    yield from rec(0, total, weight)


def _all_compositions(length: int, total: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _all_compositions(length - 1, total - head):
            yield (head,) + tail


class ReducedHenselEq:
    """Equation y = Q(x, y) with Q(0,0) = dQ/dy(0,0) = 0.

    ``terms`` maps (l, m) to the coefficient of x^l y^m in Q.  When
    Q(x, 0) vanishes identically the unique solution is y = 0; that input
    is accepted with a warning rather than rejected.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping):
        cleaned: dict[tuple[int, int], Fraction] = {}
        for key, value in terms.items():
            l, m = int(key[0]), int(key[1])
            if l < 0 or m < 0:
                raise InputError("exponents must be natural numbers")
            c = _frac(value)
            if c:
                cleaned[(l, m)] = c
        if (0, 0) in cleaned:
            raise InputError("reduced Henselian equation cannot have a constant term")
        if (0, 1) in cleaned:
            raise InputError("reduced Henselian equation cannot have a bare y term")
        if not any(m == 0 for _, m in cleaned):
            warnings.warn("Q(x, 0) vanishes identically; the solution is y = 0")
        self._terms = cleaned

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._terms))

    @property
    def no_pure_x_powers(self) -> bool:
        """True when no term is free of x, enabling the m <= n outer bound."""
        return all(l >= 1 for l, _ in self._terms)

    def as_poly(self) -> BivarPoly:
        return BivarPoly(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ReducedHenselEq):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self):
        return f"ReducedHenselEq({dict(sorted(self._terms.items()))!r})"


@dataclass(frozen=True)
class CompositionVector:
    """Exponent assignment over the support of an equation, with its size
    and the two weighted norms cached."""

    exponents: tuple[tuple[tuple[int, int], int], ...]
    size: int
    x_weight: int
    y_weight: int


def compositions(Q: ReducedHenselEq, n: int, size_cap: int,
                 budget: EnumerationBudget) -> Iterator[CompositionVector]:
    """Exponent vectors over the support of Q with x-weight exactly n,
    y-weight one less than the size, and size at most size_cap."""
    support = Q.support
    chosen: list[int] = [0] * len(support)

    def rec(idx: int, rem_n: int, size: int, y_weight: int):
        budget.spend()
        if size > size_cap or y_weight > size_cap - 1:
            return
        if idx == len(support):
            if rem_n == 0 and size >= 1 and y_weight == size - 1:
                yield CompositionVector(
                    tuple((support[t], chosen[t]) for t in range(len(support)) if chosen[t]),
                    size, n, y_weight)
            return
        l, _m = support[idx]
        top = rem_n // l if l > 0 else size_cap - size
        for e in range(top + 1):
            chosen[idx] = e
            yield from rec(idx + 1, rem_n - l * e, size + e, y_weight + _m * e)
        chosen[idx] = 0

    yield from rec(0, n, 0, 0)


def fs_coefficient(Q: ReducedHenselEq, n: int, *, apply_support_cap: bool = False,
                   budget: EnumerationBudget | None = None) -> Fraction:
    """Coefficient of x^n in the unique solution of y = Q(x, y).

    Sums (1/m) * m!/prod(k!) * prod(coeff^k) over all exponent vectors k
    with x-weight n and y-weight |k| - 1, the size m = |k| running up to
    2n - 1.  With ``apply_support_cap`` the outer bound tightens to m <= n,
    which is valid exactly when no term of Q is free of x; the flag is
    ignored otherwise.
    """
    if n < 1:
        raise InputError("coefficient index must be at least 1")
    if budget is None:
        budget = EnumerationBudget()
    cap = n if (apply_support_cap and Q.no_pure_x_powers) else 2 * n - 1
    coeffs = Q.terms
    total = Fraction(0)
    for vec in compositions(Q, n, cap, budget):
        num = factorial(vec.size - 1)
        den = 1
        prod = Fraction(1)
        for key, e in vec.exponents:
            den *= factorial(e)
            prod *= coeffs[key] ** e
        total += Fraction(num, den) * prod
    return total


def fs_expand(Q: ReducedHenselEq, precision: int, *,
              budget: EnumerationBudget | None = None) -> TruncatedSeries:
    """Solution of y = Q(x, y) modulo x^(precision+1)."""
    if precision < 1:
        raise InputError("precision must be at least 1")
    if budget is None:
        budget = EnumerationBudget()
    coeffs = [fs_coefficient(Q, n, budget=budget) for n in range(1, precision + 1)]
    return TruncatedSeries(coeffs, precision=precision, start=1)


# -- the closed form for the tail coefficients of a simple root


def _slots(i: int, j: int, k: int, i_k: int) -> list[tuple[int, tuple[int, ...], int]]:
    """Ways a factor a_{i,j} can enter a Hensel-form coefficient.

    Each slot is (m, L, base): a y-exponent m <= j, a spread L of j - m
    over the seed coefficients c_1..c_{k+1}, and the integer multinomial
    j!/(m! * L!).  The slot's x-level l = ||L|| + m(k+1) + i - i_k must be
    at least 1; the upper bound (k+1)*dy + dx - i_k and the per-level cap
    on m hold automatically.
    """
    out = []
    fj = factorial(j)
    for m in range(0, j + 1):
        fm = factorial(m)
        for L in _all_compositions(k + 1, j - m):
            l_weight = sum((v + 1) * t for v, t in enumerate(L))
            if l_weight + m * (k + 1) + i - i_k < 1:
                continue
            base = fj // fm
            for t in L:
                base //= factorial(t)
            out.append((m, L, base))
    return out


def _e_from_slots(items, slot_table, T_S: tuple[int, ...], budget: EnumerationBudget) -> int:
    """Sum of q!/prod(n!) * prod(base^n) over all assignments of the item
    exponents to their slots whose seed spreads add up to exactly T_S."""
    q = sum(s for _, s in items)
    for key, s in items:
        if s and not slot_table[key]:
            return 0
    remaining = list(T_S)
    acc = 0
    fq = factorial(q)

    def place(item_idx: int, denom: int, bases: int):
        nonlocal acc
        if item_idx == len(items):
            if not any(remaining):
                acc += fq // denom * bases
            return
        key, s = items[item_idx]
        slots = slot_table[key]

        def assign(slot_idx: int, left: int, denom2: int, bases2: int):
            budget.spend()
            m, L, base = slots[slot_idx]
            if slot_idx == len(slots) - 1:
                n = left
                for v, t in enumerate(L):
                    if t and remaining[v] < n * t:
                        return
                for v, t in enumerate(L):
                    remaining[v] -= n * t
                place(item_idx + 1, denom2 * factorial(n), bases2 * base ** n)
                for v, t in enumerate(L):
                    remaining[v] += n * t
                return
            top = left
            for v, t in enumerate(L):
                if t:
                    top = min(top, remaining[v] // t)
            for n in range(top + 1):
                for v, t in enumerate(L):
                    remaining[v] -= n * t
                assign(slot_idx + 1, left - n, denom2 * factorial(n), bases2 * base ** n)
                for v, t in enumerate(L):
                    remaining[v] += n * t

        assign(0, s, denom, bases)

    place(0, 1, 1)
    return acc


def e_coefficient(S: Mapping, T_S: Sequence[int], k: int, i_k: int,
                  dx: int, dy: int, *, budget: EnumerationBudget | None = None) -> int:
    """Integer weight of the seed monomial C^T_S inside the A^S term of the
    closed form, for a fixed coefficient multi-exponent S.

    Enumerates the assignments of each exponent s_{i,j} to the admissible
    Hensel-form slots of (i, j) whose spreads sum to T_S; every summand is
    the multinomial q!/prod(n!) times the product of slot multinomials, so
    the result is a natural number (0 for an empty enumeration).
    """
    if budget is None:
        budget = EnumerationBudget()
    items = []
    for key, s in sorted(S.items()):
        i, j = key
        if s < 0 or i < 0 or j < 0 or i > dx or j > dy:
            raise InputError(f"exponent assignment {key}: {s} outside bounds")
        if s:
            items.append(((int(i), int(j)), int(s)))
    slot_table = {key: _slots(key[0], key[1], k, i_k) for key, _ in items}
    return _e_from_slots(items, slot_table, tuple(int(t) for t in T_S), budget)


def closed_form_coefficient(P: BivarPoly, c: Sequence, k: int, i_k: int,
                            omega0, p: int, *,
                            budget: EnumerationBudget | None = None) -> Fraction:
    """Tail coefficient c_{k+1+p} of the simple root of P with initial part
    c_1..c_{k+1}, computed literally from the closed form.

    Outer sum over q = 1..p weighted by (1/q)(-1/omega0)^q; middle sum over
    coefficient multi-exponents S of P with |S| = q and y-weight at least
    q - 1; inner sum over seed multi-exponents T with |T| = yw(S) - q + 1
    and weighted size p + q*i_k - (q-1)(k+1) - xw(S); innermost the integer
    weights of ``e_coefficient``.  Requires k at least one past the
    branch-separation index; ``i_k`` and ``omega0`` are the Hensel-form
    data of the same root.  An empty enumeration contributes 0.
    """
    if p < 1:
        raise InputError("tail index must be at least 1")
    if k < 1:
        raise InputError("k must be at least 1")
    if len(c) < k + 1:
        raise InputError(f"need {k + 1} seed coefficients, got {len(c)}")
    w0 = _frac(omega0)
    if not w0:
        raise InputError("omega0 must be nonzero")
    if budget is None:
        budget = EnumerationBudget()
    seed = tuple(_frac(v) for v in c[: k + 1])
    support = sorted(P.terms.items())
    slot_table: dict[tuple[int, int], list] = {}
    usable: list[tuple[tuple[int, int], Fraction, bool]] = []
    for key, a in support:
        slots = _slots(key[0], key[1], k, i_k)
        budget.spend(len(slots) + 1)
        slot_table[key] = slots
        usable.append((key, a, bool(slots)))

    total = Fraction(0)
    for q in range(1, p + 1):
        p_star = p + q * i_k - (q - 1) * (k + 1)
        if p_star < 0:
            continue
        acc_q = Fraction(0)
        chosen: list[int] = [0] * len(usable)

        def s_rec(idx: int, left: int, s1: int, s2: int):
            nonlocal acc_q
            budget.spend()
            if s1 > p_star:
                return
            if idx == len(usable):
                if left or s2 < q - 1:
                    return
                tot = s2 - q + 1
                wgt = p_star - s1
                if tot == 0:
                    if wgt != 0:
                        return
                elif not tot <= wgt <= (k + 1) * tot:
                    return
                items = [(usable[t][0], chosen[t]) for t in range(len(usable)) if chosen[t]]
                a_power = Fraction(1)
                for t in range(len(usable)):
                    if chosen[t]:
                        a_power *= usable[t][1] ** chosen[t]
                inner = Fraction(0)
                for T in weighted_compositions(k + 1, tot, wgt):
                    budget.spend()
                    e = _e_from_slots(items, slot_table, T, budget)
                    if e:
                        mono = Fraction(1)
                        for v, t in enumerate(T):
                            if t:
                                mono *= seed[v] ** t
                        inner += e * mono
                acc_q += a_power * inner
                return
            key, _a, has_slots = usable[idx]
            i, j = key
            top = left if has_slots else 0
            for e in range(top + 1):
                if s1 + i * e > p_star:
                    break
                chosen[idx] = e
                s_rec(idx + 1, left - e, s1 + i * e, s2 + j * e)
            chosen[idx] = 0

        s_rec(0, q, 0, 0)
        total += Fraction(1, q) * Fraction(-1) ** q / w0 ** q * acc_q
    return total
