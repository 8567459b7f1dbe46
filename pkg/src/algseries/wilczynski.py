"""Algebraicity tests and vanishing-polynomial reconstruction for truncated
power series, through minors of the reduced Wilczynski matrix of a support
shape.

The infinite Wilczynski matrix attached to (F, G) stacks, column by column,
the coefficients of x^i * y0^j for (i, j) in F and the indicator vectors of
the pure powers in G.  Removing the G columns together with the rows they
point at yields the reduced matrix; the series is algebraic relatively to
(F, G) exactly when that matrix drops below full column rank.  A finite slab
of depth 2*dx*dy already decides this under the degree-bound hypothesis, and
its minors furnish the coefficients of a vanishing polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bivar import BivarPoly, eval_at_poly, uni_order
from .errors import InputError, NotAlgebraicError, PrecisionError
from .series import TruncatedSeries, series_pow
from .support import SupportShape, antilex_key

DEFAULT_MINOR_BUDGET = 512


# -- exact linear algebra over the rationals (division-based; the
#    fraction-free cross-check lives in the oracle module)

def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    sign = 1
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for cc in range(col, n):
                    m[r][cc] -= f * m[col][cc]
    return sign * det


def _rank(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = 1 / m[row][col]
        for r in range(row + 1, nrows):
            if m[r][col]:
                f = m[r][col] * inv
                for cc in range(col, ncols):
                    m[r][cc] -= f * m[row][cc]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


@dataclass(frozen=True)
class WilczynskiSlab:
    """Finite depth-N truncation of the reduced Wilczynski matrix.

    ``row_labels`` are the surviving row indices of the unreduced matrix
    (1-based; the rows pointed at by G are skipped).  ``entries[r][c]``
    holds the coefficient of x^(label_r - i) in y0^j for the c-th shape
    column (i, j).  ``powers[j]`` caches the expansion of y0^j.
    """

    shape: SupportShape
    row_labels: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    depth: int
    source_precision: int
    powers: tuple[TruncatedSeries, ...]


@dataclass(frozen=True)
class MinorIndex:
    """Rows (1-based positions among the surviving rows, strictly
    increasing) and columns (a sublist of F) selecting a square submatrix."""

    rows: tuple[int, ...]
    columns: tuple[tuple[int, int], ...]


def build_slab(shape: SupportShape, c: TruncatedSeries, depth: int) -> WilczynskiSlab:
    """First ``depth`` surviving rows of the reduced matrix of ``shape``.

    Requires c_1 != 0 and precision at least depth + |G| so that the
    skipped rows cannot eat into the requested depth.
    """
    if depth < 0:
        raise InputError("depth must be a natural number")
    if c.coefficient(0):
        raise InputError("series must have zero constant term")
    if c.valuation != 1:
        raise InputError("series must have c_1 != 0")
    needed = depth + len(shape.G)
    if c.precision < needed:
        raise PrecisionError(
            f"need {needed} coefficients for a depth-{depth} slab, have {c.precision}"
        )
    removed = {i for i, _ in shape.G}
    labels: list[int] = []
    n = 1
    while len(labels) < depth:
        if n not in removed:
            labels.append(n)
        n += 1
    top_j = shape.max_y
    powers = [series_pow(c, j, c.precision) for j in range(top_j + 1)]
    entries = tuple(
        tuple(powers[j].coefficient(label - i) for (i, j) in shape.F)
        for label in labels
    )
    return WilczynskiSlab(shape, tuple(labels), entries, depth, c.precision, tuple(powers))


def wilczynski_minor(slab: WilczynskiSlab, idx: MinorIndex) -> Fraction:
    """Exact determinant of the selected submatrix; order 0 gives 1."""
    order = len(idx.rows)
    if order != len(idx.columns):
        raise InputError("minor needs as many rows as columns")
    if order == 0:
        return Fraction(1)
    if any(a >= b for a, b in zip(idx.rows, idx.rows[1:])):
        raise InputError("row picks must be strictly increasing")
    keys = [antilex_key(pair) for pair in idx.columns]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        raise InputError("column picks must be strictly increasing anti-lexicographically")
    col_pos = {pair: p for p, pair in enumerate(slab.shape.F)}
    try:
        cols = [col_pos[pair] for pair in idx.columns]
    except KeyError as missing:
        raise InputError(f"column {missing} not in the shape") from None
    if idx.rows[0] < 1 or idx.rows[-1] > len(slab.row_labels):
        raise InputError("row pick outside the slab")
    sub = [[slab.entries[r - 1][cc] for cc in cols] for r in idx.rows]
    return _det(sub)


@dataclass(frozen=True)
class AlgebraicityDecision:
    algebraic: bool
    rank: int
    family_size: int
    depth: int
    # the positive answer is exact only under the hypothesis that the series
    # is algebraic within the stated degree bounds; the negative one is not
    # conditional on anything beyond the supplied coefficients
    conditional: bool


def _validated_slab(shape: SupportShape, c: TruncatedSeries, dx: int, dy: int) -> WilczynskiSlab:
    if dx < 1 or dy < 1:
        raise InputError("degree bounds must be at least 1")
    if not shape.within_bounds(dx, dy):
        raise InputError("shape exceeds the degree bounds")
    return build_slab(shape, c, 2 * dx * dy)


def is_algebraic_rel(shape: SupportShape, c: TruncatedSeries, dx: int, dy: int) -> AlgebraicityDecision:
    """Decide algebraicity relative to (F, G) from a depth-2*dx*dy slab."""
    slab = _validated_slab(shape, c, dx, dy)
    r = _rank([list(row) for row in slab.entries])
    algebraic = r < len(shape.F)
    return AlgebraicityDecision(algebraic, r, len(shape.F), slab.depth, conditional=algebraic)


def certify(P: BivarPoly, c: TruncatedSeries, dx: int, dy: int) -> bool:
    """True iff P(x, z_tau) vanishes modulo x^(tau+1) for tau = 2*dx*dy.

    Under the hypothesis that the series is algebraic with the same degree
    bounds, this certifies P(x, y0) = 0 exactly.
    """
    if dx < 1 or dy < 1:
        raise InputError("degree bounds must be at least 1")
    if P.is_zero:
        raise InputError("the zero polynomial certifies nothing")
    if P.x_degree > dx or P.y_degree > dy:
        raise InputError("polynomial exceeds the stated degree bounds")
    tau = 2 * dx * dy
    if c.precision < tau:
        raise PrecisionError(f"certification depth {tau} exceeds precision {c.precision}")
    z = [c.coefficient(n) for n in range(1, tau + 1)]
    residue = eval_at_poly(P, z)
    order = uni_order(residue)
    return order is None or order > tau


@dataclass(frozen=True)
class ReconstructionResult:
    poly: BivarPoly
    rank: int
    # positive reconstructions are certified at depth 2*dx*dy, which proves
    # vanishing only under the degree-bound algebraicity hypothesis
    conditional: bool = True


def _constant_terms(shape: SupportShape, a_F: dict[tuple[int, int], Fraction],
                    powers: tuple[TruncatedSeries, ...]) -> dict[tuple[int, int], Fraction]:
    """Pure-x coefficients forced by the F-part: a_{k,0} cancels the
    coefficient of x^k in the partial combination."""
    out = dict(a_F)
    for (k, _zero) in shape.G:
        acc = Fraction(0)
        for (i, j), a in a_F.items():
            if i < k:
                acc += a * powers[j].coefficient(k - i)
        if acc:
            out[(k, 0)] = -acc
    return out


def _ordered_row_subsets(depth: int, order: int):
    subsets = list(combinations(range(1, depth + 1), order))
    subsets.sort(key=lambda t: (t[-1], t))
    return subsets


def _try_family(slab: WilczynskiSlab, cols: tuple[int, ...], c: TruncatedSeries,
                dx: int, dy: int, minor_budget: int) -> BivarPoly | None:
    """Reconstruction attempt restricted to the subfamily F' = F[cols]."""
    F = slab.shape.F
    sub = [[row[ci] for ci in cols] for row in slab.entries]
    r = _rank(sub)
    if r == len(cols):
        return None
    candidates_tried = 0
    if r == 0:
        a_F = {F[cols[0]]: Fraction(1)}
        candidate = BivarPoly(_constant_terms(slab.shape, a_F, slab.powers))
        if certify(candidate, c, dx, dy):
            return candidate
    else:
        for rows in _ordered_row_subsets(slab.depth, r):
            if candidates_tried >= minor_budget:
                break
            for excl_pos, excl_ci in enumerate(cols):
                if candidates_tried >= minor_budget:
                    break
                rest = cols[:excl_pos] + cols[excl_pos + 1:]
                for I in combinations(rest, r):
                    candidates_tried += 1
                    matrix = [[sub[k - 1][cols.index(ci)] for ci in I] for k in rows]
                    q = _det(matrix)
                    if not q:
                        if candidates_tried >= minor_budget:
                            break
                        continue
                    # 1-based position of the excluded column inside the
                    # anti-lex ordered subfamily I + {excluded}
                    family = sorted(I + (excl_ci,), key=lambda ci: antilex_key(F[ci]))
                    p0 = family.index(excl_ci) + 1
                    col_vec = [sub[k - 1][cols.index(excl_ci)] for k in rows]
                    a_F = {F[excl_ci]: Fraction(-1) ** p0 * q}
                    cramer_sign = -Fraction(-1) ** p0
                    for t, ci in enumerate(I):
                        replaced = [row[:t] + [col_vec[rr]] + row[t + 1:]
                                    for rr, row in enumerate(matrix)]
                        value = cramer_sign * _det(replaced)
                        if value:
                            a_F[F[ci]] = value
                    candidate = BivarPoly(_constant_terms(slab.shape, a_F, slab.powers))
                    if certify(candidate, c, dx, dy):
                        return candidate
                    if candidates_tried >= minor_budget:
                        break
    # certification failed everywhere at this rank: fall back to proper
    # subfamilies, dropping one column at a time in anti-lex order
    if len(cols) > 1:
        for drop in range(len(cols)):
            result = _try_family(slab, cols[:drop] + cols[drop + 1:], c, dx, dy, minor_budget)
            if result is not None:
                return result
    return None


def reconstruct(shape: SupportShape, c: TruncatedSeries, dx: int, dy: int,
                minor_budget: int = DEFAULT_MINOR_BUDGET) -> ReconstructionResult:
    """Reconstruct a certified vanishing polynomial with support in F + G.

    Computes the rank r of the depth-2*dx*dy slab, turns a nonzero order-r
    minor into coefficients by Cramer's rule (the excluded column receives
    the signed minor itself), forces the pure-x terms, and certifies.  The
    search order over minors is: increasing largest row index, then rows
    lexicographically, then excluded column; at most ``minor_budget`` minors
    are evaluated per subfamily before descending to smaller subfamilies.
    """
    if minor_budget < 1:
        raise InputError("minor budget must be positive")
    slab = _validated_slab(shape, c, dx, dy)
    full_rank = _rank([list(row) for row in slab.entries])
    if full_rank == len(shape.F):
        raise NotAlgebraicError(
            f"not algebraic at bounds ({dx}, {dy}): the depth-{slab.depth} "
            f"slab has full column rank {full_rank}"
        )
    poly = _try_family(slab, tuple(range(len(shape.F))), c, dx, dy, minor_budget)
    if poly is None:
        raise NotAlgebraicError(
            "no candidate certified within the minor budget; series may not "
            "be algebraic at these bounds or precision is too small"
        )
    return ReconstructionResult(poly.primitive_normalized(), full_rank)
