"""Constructors for the families the toolkit ships with.

Covers the maximal-nilindex chain algebras, adapted-basis chain skeletons with
parameter rows, their completion by repeated superidentity rewriting, the
closed formula for odd-odd products of a completed skeleton, and the graded
map normalizing the two-parameter-even-part family (the thm32 constructors).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .algebra import (
    BasisIndex,
    GradedMap,
    SuperAlgebra,
    even_index,
    first_leibniz_violation,
    make_superalgebra,
    odd_index,
)
from .errors import (
    DegenerateFamily,
    DimensionMismatch,
    IndexOutOfRange,
    InconsistentStructure,
    OddDimensionRequired,
    PartitionMismatch,
    ZeroScale,
)
from .linalg import COMPLEX, RATIONAL, Matrix, coerce_scalar


def _unit(dim: int, slot: int) -> tuple:
    vec = [Fraction(0)] * dim
    vec[slot] = Fraction(1)
    return tuple(vec)


def max_nilindex_leibniz(n: int) -> SuperAlgebra:
    """Single even chain [x_i, x_1] = x_{i+1}; nilindex n+1, no odd part."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    entries = [
        (even_index(i), even_index(1), _unit(n, i))
        for i in range(1, n)
    ]
    return make_superalgebra(n, 0, RATIONAL, entries, name=f"max-leibniz(n={n})")


def max_nilindex_super(n: int) -> SuperAlgebra:
    """Chain superalgebra of maximal nilindex with n even and n+1 odd elements.

    On chain positions e_1..e_{2n+1} the products are [e_i, e_1] = e_{i+1} and
    [e_i, e_2] = 2 e_{i+2}.  Grading-consistency of both products forces the
    parities to alternate with e_1 odd, so odd chain positions are the y's and
    even positions the x's.  Nilindex is 2n+2 = n+m+1.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    m = n + 1
    total = 2 * n + 1
    dim = n + m

    def place(position: int) -> BasisIndex:
        if position % 2 == 1:
            return odd_index((position + 1) // 2)
        return even_index(position // 2)

    def flat(idx: BasisIndex) -> int:
        return idx.position - 1 if idx.parity == 0 else n + idx.position - 1

    entries = []
    for p in range(1, total):
        entries.append((place(p), place(1), _unit(dim, flat(place(p + 1)))))
    for p in range(1, total - 1):
        vec = [Fraction(0)] * dim
        vec[flat(place(p + 2))] = Fraction(2)
        entries.append((place(p), place(2), tuple(vec)))
    return make_superalgebra(n, m, RATIONAL, entries, name=f"max-super(n={n})")


@dataclass(frozen=True)
class Skeleton:
    """Generator products of an adapted-basis chain algebra.

    The even part is one chain [x_i, x_1] = x_{i+1}.  The odd part splits into
    chains of sizes ``parts``: [y_j, x_1] = y_{j+1} except at the end of each
    part, where it is zero.  The only other generator products are the
    parameter rows [x_i, y_1] = sum alpha[i][.] y_j (over y_2..y_m) and
    [y_j, y_1] = sum beta[j][.] x_s (over x_2..x_n).  Everything else is
    derived by ``complete_by_superidentity``.
    """

    n: int
    parts: tuple
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"need n >= 1, got {self.n}")
        if not self.parts or any(p < 1 for p in self.parts):
            raise PartitionMismatch(f"parts must be positive, got {self.parts}")
        m = self.m
        if len(self.alpha) != self.n:
            raise DimensionMismatch(f"expected {self.n} alpha rows, got {len(self.alpha)}")
        if len(self.beta) != m:
            raise DimensionMismatch(f"expected {m} beta rows, got {len(self.beta)}")
        alpha = tuple(self._coerce_row(row, m - 1, "alpha", i) for i, row in enumerate(self.alpha))
        beta = tuple(self._coerce_row(row, self.n - 1, "beta", j) for j, row in enumerate(self.beta))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @staticmethod
    def _coerce_row(row: Sequence, length: int, tag: str, at: int) -> tuple:
        if len(row) != length:
            raise DimensionMismatch(
                f"{tag} row {at + 1} has length {len(row)}, expected {length}"
            )
        return tuple(coerce_scalar(v, RATIONAL) for v in row)

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def boundaries(self) -> frozenset:
        """Positions where an odd chain part ends, so [y_j, x_1] = 0 there."""
        ends = []
        acc = 0
        for p in self.parts:
            acc += p
            ends.append(acc)
        return frozenset(ends)

    @property
    def name(self) -> str:
        if len(self.parts) == 1:
            return f"zf(n={self.n},m={self.m})"
        return f"chains(n={self.n},parts={'+'.join(str(p) for p in self.parts)})"


def _zero_rows(count: int, length: int) -> tuple:
    return tuple((Fraction(0),) * length for _ in range(count))


def zf_adapted(
    n: int, m: int, alpha: Optional[Sequence] = None, beta: Optional[Sequence] = None
) -> Skeleton:
    """Adapted-basis skeleton with a single odd chain (the zero-filiform case).

    ``alpha`` is n rows of length m-1, ``beta`` m rows of length n-1; None
    means all zeros.  Raises DimensionMismatch on wrong row counts or lengths.
    """
    if m < 1:
        raise DimensionMismatch(f"need m >= 1, got {m}")
    if alpha is None:
        alpha = _zero_rows(n, m - 1)
    if beta is None:
        beta = _zero_rows(m, max(n - 1, 0))
    return Skeleton(n, (m,), tuple(tuple(r) for r in alpha), tuple(tuple(r) for r in beta))


def csq_model(
    n: int,
    parts: Sequence,
    alpha: Optional[Sequence] = None,
    beta: Optional[Sequence] = None,
) -> Skeleton:
    """Adapted-basis skeleton whose odd part splits into at least two chains.

    ``parts`` lists the chain sizes (m_1, ..., m_k), k >= 2.  Supplied beta
    rows must number sum(parts); a mismatch raises PartitionMismatch.
    """
    parts = tuple(int(p) for p in parts)
    if len(parts) < 2:
        raise PartitionMismatch(f"need at least two parts, got {parts}; use zf_adapted for one")
    if any(p < 1 for p in parts):
        raise PartitionMismatch(f"parts must be positive, got {parts}")
    m = sum(parts)
    if alpha is None:
        alpha = _zero_rows(n, m - 1)
    if beta is None:
        beta = _zero_rows(m, max(n - 1, 0))
    if len(beta) != m:
        raise PartitionMismatch(
            f"parts sum to {m} but {len(beta)} beta rows were supplied"
        )
    return Skeleton(n, parts, tuple(tuple(r) for r in alpha), tuple(tuple(r) for r in beta))


def skeleton_algebra(skeleton: Skeleton) -> SuperAlgebra:
    """The skeleton's explicit products only; derived brackets left zero."""
    return _build_algebra(skeleton, _initial_table(skeleton))


def _initial_table(skeleton: Skeleton) -> dict:
    n, m = skeleton.n, skeleton.m
    dim = n + m
    ends = skeleton.boundaries
    x1, y1 = 0, n
    table = {}

    def put(left: int, right: int, vec: Sequence) -> None:
        if any(vec):
            table[(left, right)] = tuple(vec)

    for i in range(1, n):
        put(i - 1, x1, _unit(dim, i))
    for j in range(1, m):
        if j not in ends:
            put(n + j - 1, x1, _unit(dim, n + j))
    for i in range(1, n + 1):
        vec = [Fraction(0)] * dim
        for j in range(2, m + 1):
            vec[n + j - 1] = skeleton.alpha[i - 1][j - 2]
        put(i - 1, y1, vec)
    for j in range(1, m + 1):
        vec = [Fraction(0)] * dim
        for s in range(2, n + 1):
            vec[s - 1] = skeleton.beta[j - 1][s - 2]
        put(n + j - 1, y1, vec)
    return table


def _build_algebra(skeleton: Skeleton, table: dict) -> SuperAlgebra:
    n = skeleton.n
    entries = []
    for (lf, rf), vec in table.items():
        left = even_index(lf + 1) if lf < n else odd_index(lf - n + 1)
        right = even_index(rf + 1) if rf < n else odd_index(rf - n + 1)
        entries.append((left, right, vec))
    return make_superalgebra(n, skeleton.m, RATIONAL, entries, name=skeleton.name)


def expand_skeleton(skeleton: Skeleton) -> SuperAlgebra:
    """Derive every non-generator bracket of a skeleton, without checking it.

    Brackets with x_{i+1} on the right come from
    [u, x_{i+1}] = [[u, x_i], x_1] - [[u, x_1], x_i], and brackets with
    y_{j+1} on the right (j not at a part end) from
    [u, y_{j+1}] = [[u, y_j], x_1] - [[u, x_1], y_j]; both are superidentity
    instances, applied in increasing right-index order.  Brackets whose right
    element starts a later odd chain part stay zero: no rewriting reaches
    them, and the final identity check in complete_by_superidentity is the
    arbiter of whether that is consistent.
    """
    n, m = skeleton.n, skeleton.m
    dim = n + m
    ends = skeleton.boundaries
    x1 = 0
    table = _initial_table(skeleton)
    get = table.get

    def br(vec: Sequence, right: int):
        acc = None
        for i, c in enumerate(vec):
            if c:
                row = get((i, right))
                if row is not None:
                    if acc is None:
                        acc = [c * v for v in row]
                    else:
                        for k, v in enumerate(row):
                            if v:
                                acc[k] += c * v
        return acc

    def derive(prev: int, new: int) -> None:
        for left in range(dim):
            via_prev = get((left, prev))
            via_gen = get((left, x1))
            t1 = br(via_prev, x1) if via_prev is not None else None
            t2 = br(via_gen, prev) if via_gen is not None else None
            if t1 is None and t2 is None:
                continue
            if t1 is None:
                value = [-v for v in t2]
            elif t2 is None:
                value = t1
            else:
                value = [a - b for a, b in zip(t1, t2)]
            if any(value):
                table[(left, new)] = tuple(value)

    for i in range(1, n):
        derive(i - 1, i)
    for j in range(1, m):
        if j not in ends:
            derive(n + j - 1, n + j)
    return _build_algebra(skeleton, table)


def complete_by_superidentity(skeleton: Skeleton) -> SuperAlgebra:
    """Expand a skeleton and certify the result against the Leibniz identity.

    Returns the completed algebra, or raises InconsistentStructure carrying
    the first violating basis triple (the parameters then do not define a
    superalgebra).  The completed-but-rejected table is attached to the
    exception as ``algebra`` for reporting.
    """
    algebra = expand_skeleton(skeleton)
    violation = first_leibniz_violation(algebra)
    if violation is not None:
        raise InconsistentStructure(
            (violation.x.label, violation.y.label, violation.z.label),
            violation.residual,
            algebra,
        )
    return algebra


def closed_formula_bracket(i: int, j: int, beta: Sequence, n: int, m1: int) -> tuple:
    """Even-part coordinates of [y_i, y_j] in a completed single-chain skeleton.

    Evaluates the closed form

        [y_i, y_j] = sum_{s=0}^{min(i+j-1, m1)-i} (-1)^s C(j-1, s)
                     sum_{t=2}^{n-j+s+1} beta[i+s][t] x_{t+j-s-1}

    where beta[r][t] denotes the coefficient of x_t in [y_r, y_1].  Returns a
    tuple of length n over the x basis.  Requires 1 <= i, j <= m1
    (IndexOutOfRange) and at least m1 beta rows of length n-1
    (DimensionMismatch).
    """
    if not (1 <= i <= m1 and 1 <= j <= m1):
        raise IndexOutOfRange(f"need 1 <= i, j <= {m1}, got i={i}, j={j}")
    if len(beta) < m1:
        raise DimensionMismatch(f"need at least {m1} beta rows, got {len(beta)}")
    rows = [tuple(coerce_scalar(v, RATIONAL) for v in row) for row in beta]
    for r, row in enumerate(rows):
        if len(row) != n - 1:
            raise DimensionMismatch(f"beta row {r + 1} has length {len(row)}, expected {n - 1}")
    out = [Fraction(0)] * n
    for s in range(0, min(i + j - 1, m1) - i + 1):
        c = comb(j - 1, s)
        if c == 0:
            continue
        sign = -c if s % 2 else c
        for t in range(2, n - j + s + 2):
            out[t + j - s - 2] += sign * rows[i + s - 1][t - 2]
    return tuple(out)


def _check_gamma(m: int, gammas: Sequence) -> tuple:
    if m % 2 == 0:
        raise OddDimensionRequired(f"the odd part must have odd dimension, got m={m}")
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    count = (m + 1) // 2
    if len(gammas) != count:
        raise DimensionMismatch(f"expected {count} gamma values for m={m}, got {len(gammas)}")
    return tuple(gammas)


def thm32_family(m: int, gammas: Sequence) -> SuperAlgebra:
    """Two-even-dimensional family with odd-odd products set by gamma values.

    Table: [x_1,x_1] = x_2, [y_i,x_1] = y_{i+1} and [x_1,y_i] = -y_{i+1} for
    i < m, and [y_i,y_j] = (-1)^(j-1) gamma_((i+j)/2) x_2 for even i+j <= m+1.
    Requires odd m >= 3 (OddDimensionRequired) and a nonzero final gamma
    (DegenerateFamily); nilindex is m+2.
    """
    gammas = _check_gamma(m, gammas)
    values = tuple(coerce_scalar(g, RATIONAL) for g in gammas)
    if values[-1] == 0:
        raise DegenerateFamily("the final gamma value must be nonzero")
    n = 2
    dim = n + m
    entries = [(even_index(1), even_index(1), _unit(dim, 1))]
    for i in range(1, m):
        entries.append((odd_index(i), even_index(1), _unit(dim, n + i)))
        vec = [Fraction(0)] * dim
        vec[n + i] = Fraction(-1)
        entries.append((even_index(1), odd_index(i), tuple(vec)))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            total = i + j
            if total % 2 or total > m + 1:
                continue
            g = values[total // 2 - 1]
            if g == 0:
                continue
            vec = [Fraction(0)] * dim
            vec[1] = -g if j % 2 == 0 else g
            entries.append((odd_index(i), odd_index(j), tuple(vec)))
    return make_superalgebra(n, m, RATIONAL, entries, name=f"thm32-family(m={m})")


def thm32_normal(m: int) -> SuperAlgebra:
    """Normal form of the gamma family: [y_i,y_j] = (-1)^(j-1) x_2 iff i+j = m+1."""
    count = max((m + 1) // 2, 1)
    gammas = [Fraction(0)] * (count - 1) + [Fraction(1)]
    return replace(thm32_family(m, gammas), name=f"thm32-normal(m={m})")


def thm32_basis_change(m: int, gammas: Sequence, b1) -> GradedMap:
    """Graded map carrying the gamma family onto its normal form.

    Built over complex floats: the even block scales x_1 by b_1 and x_2 by
    b_1^2; column k of the odd block is b_1^(k-1) sum_s a_(2s-1) y_(2s-2+k),
    with odd coefficients a_1, a_3, ... determined so all odd-odd products of
    the transformed algebra vanish except on the antidiagonal i+j = m+1, where
    they normalize to (-1)^(j-1) x_2.  a_1 is the principal square root of
    1/(b_1^(m-3) gamma_h), h = (m+1)/2.  Raises DegenerateFamily when
    gamma_h = 0 and ZeroScale when b_1 = 0.
    """
    gammas = _check_gamma(m, gammas)
    g = [complex(v) for v in (coerce_scalar(x, COMPLEX) for x in gammas)]
    h = (m + 1) // 2
    if g[h - 1] == 0:
        raise DegenerateFamily("the final gamma value must be nonzero")
    scale = complex(coerce_scalar(b1, COMPLEX))
    if scale == 0:
        raise ZeroScale("b_1 must be nonzero")
    a = {1: cmath.sqrt(1 / (scale ** (m - 3) * g[h - 1]))}
    conv = {2: a[1] * a[1]}
    for top in range(3, h + 2):
        forced = -sum(conv[u] * g[u + h - top - 1] for u in range(2, top)) / g[h - 1]
        conv[top] = forced
        inner = sum(a[2 * s - 1] * a[2 * (top - s) - 1] for s in range(2, top - 1))
        a[2 * top - 3] = (forced - inner) / (2 * a[1])
    even = Matrix.from_rows([[scale, 0], [0, scale * scale]], COMPLEX)
    odd_rows = [[complex(0)] * m for _ in range(m)]
    for col in range(1, m + 1):
        factor = scale ** (col - 1)
        for s in range(1, h + 1):
            row = 2 * s - 2 + col
            if row > m:
                break
            odd_rows[row - 1][col - 1] = factor * a[2 * s - 1]
    return GradedMap(even, Matrix.from_rows(odd_rows, COMPLEX))
