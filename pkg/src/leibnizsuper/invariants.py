"""Nilpotency invariants computed exactly from a bracket table.

Everything here certifies its answer over the rational backend: the descending
central series, nilindex, right annihilator, center, and the characteristic
sequence read from Jordan types of right-multiplication operators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    EVEN,
    ODD,
    SuperAlgebra,
    basis_times_vector,
    vector_times_basis,
)
from .errors import BackendMismatch, EmptySearchSpace, GradingViolation
from .linalg import RATIONAL, Matrix, Subspace, jordan_type, kernel


def _require_rational(algebra: SuperAlgebra, what: str) -> None:
    if algebra.backend != RATIONAL:
        raise BackendMismatch(f"{what} is certified exactly; use the rational backend")


@dataclass(frozen=True)
class SeriesReport:
    """Descending central series L = L^1 >= L^2 >= ... with its dimensions.

    ``nilindex`` is the least s with L^s = 0, or None when the series
    stabilizes above zero; in that case the last chain entry is the
    stabilized subspace.
    """

    chain: tuple
    nilindex: Optional[int]

    @property
    def dims(self) -> tuple:
        return tuple(space.dim for space in self.chain)

    @property
    def is_nilpotent(self) -> bool:
        return self.nilindex is not None

    def __str__(self) -> str:
        arrow = " > ".join(str(d) for d in self.dims)
        tail = f"nilindex {self.nilindex}" if self.nilindex else "not nilpotent"
        return f"{arrow} ({tail})"


def descending_central_series(algebra: SuperAlgebra) -> SeriesReport:
    """Chain L^(k+1) = [L^k, L] computed as exact subspaces."""
    _require_rational(algebra, "the central series")
    dim = algebra.dim
    current = Subspace.full(dim)
    chain = [current]
    while True:
        products = []
        for gen in current.basis:
            for bf in range(dim):
                vec = vector_times_basis(algebra, gen, bf)
                if any(vec):
                    products.append(vec)
        nxt = Subspace.span(products, dim)
        chain.append(nxt)
        if nxt.dim == 0:
            return SeriesReport(tuple(chain), len(chain))
        if nxt.dim == current.dim:
            return SeriesReport(tuple(chain), None)
        current = nxt


def nilindex(algebra: SuperAlgebra) -> Optional[int]:
    """Least s with L^s = 0, or None for a non-nilpotent algebra."""
    return descending_central_series(algebra).nilindex


def right_annihilator(algebra: SuperAlgebra) -> Subspace:
    """Solutions z of [v, z] = 0 for every v, as an exact subspace."""
    _require_rational(algebra, "the right annihilator")
    dim = algebra.dim
    rows = []
    for af in range(dim):
        # row block of the map z -> [e_a, z]; column j is [e_a, e_j]
        block = [algebra.entry_flat(af, j) for j in range(dim)]
        for k in range(dim):
            rows.append(tuple(col[k] if col is not None else Fraction(0) for col in block))
    return kernel(Matrix.from_rows(rows, RATIONAL))


def center(algebra: SuperAlgebra) -> Subspace:
    """Solutions z of [z, v] = 0 = [v, z] for every v."""
    _require_rational(algebra, "the center")
    dim = algebra.dim
    rows = []
    for af in range(dim):
        left_block = [algebra.entry_flat(af, j) for j in range(dim)]
        right_block = [algebra.entry_flat(j, af) for j in range(dim)]
        for k in range(dim):
            rows.append(tuple(c[k] if c is not None else Fraction(0) for c in left_block))
            rows.append(tuple(c[k] if c is not None else Fraction(0) for c in right_block))
    return kernel(Matrix.from_rows(rows, RATIONAL))


def right_mul_matrix(algebra: SuperAlgebra, x: Sequence, part: int) -> Matrix:
    """Matrix of v -> [v, x] restricted to one parity block, for even x.

    ``part`` selects the block (0 for the even part, 1 for the odd part).
    The operator preserves each block exactly because x is even; a component
    leaking across blocks raises GradingViolation.
    """
    _require_rational(algebra, "right multiplication")
    if algebra.vector_parity(x) not in (EVEN, None):
        raise GradingViolation("right multiplication is taken by an even element")
    if part == EVEN:
        offset, size = 0, algebra.n
    elif part == ODD:
        offset, size = algebra.n, algebra.m
    else:
        raise ValueError(f"part must be 0 or 1, got {part}")
    columns = []
    for j in range(size):
        image = basis_times_vector(algebra, offset + j, x)
        outside = [v for k, v in enumerate(image) if v and not offset <= k < offset + size]
        if outside:
            raise GradingViolation("right multiplication leaks across the grading")
        columns.append(image[offset:offset + size])
    data = tuple(tuple(columns[j][i] for j in range(size)) for i in range(size))
    return Matrix(size, size, RATIONAL, data)


@dataclass(frozen=True, order=True)
class CharSequence:
    """Pair of Jordan-type tuples (even part | odd part), each weakly decreasing."""

    even: tuple
    odd: tuple

    def __str__(self) -> str:
        left = ", ".join(str(k) for k in self.even)
        right = ", ".join(str(k) for k in self.odd)
        return f"({left} | {right})"


def char_seq_at(algebra: SuperAlgebra, x: Sequence) -> CharSequence:
    """Jordan types of right multiplication by the even element x on both parts."""
    even_part = jordan_type(right_mul_matrix(algebra, x, EVEN))
    odd_part = jordan_type(right_mul_matrix(algebra, x, ODD))
    return CharSequence(even_part, odd_part)


def even_derived_span(algebra: SuperAlgebra) -> Subspace:
    """Span of brackets of even basis pairs, inside the even part (ambient n)."""
    _require_rational(algebra, "the even derived span")
    vectors = []
    for i in range(algebra.n):
        for j in range(algebra.n):
            value = algebra.entry_flat(i, j)
            if value is not None:
                vectors.append(value[: algebra.n])
    return Subspace.span(vectors, algebra.n)


def characteristic_sequence(
    algebra: SuperAlgebra, samples: int = 50, seed: int = 0
) -> CharSequence:
    """Lexicographically maximal CharSequence over admissible even elements.

    Admissible elements are even vectors outside the span of products of even
    elements.  Candidates are the admissible even basis vectors plus ``samples``
    seeded pseudo-random integer vectors; both maxima are taken independently
    over the same candidate pool.  Raises EmptySearchSpace when no admissible
    element exists and NotNilpotent when a candidate acts non-nilpotently.
    """
    _require_rational(algebra, "the characteristic sequence")
    n = algebra.n
    if n == 0:
        raise EmptySearchSpace("no even part to draw from")
    derived = even_derived_span(algebra)
    if derived.dim == n:
        raise EmptySearchSpace("every even element lies in the span of even products")
    rng = random.Random(seed)
    candidates = []
    for i in range(n):
        coords = [Fraction(0)] * n
        coords[i] = Fraction(1)
        if not derived.contains(coords):
            candidates.append(coords)
    accepted = 0
    attempts = 0
    while accepted < samples and attempts < 50 * max(samples, 1):
        attempts += 1
        coords = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        if not any(coords) or derived.contains(coords):
            continue
        candidates.append(coords)
        accepted += 1
    if not candidates:
        raise EmptySearchSpace("found no even element outside the even derived span")
    best_even: Optional[tuple] = None
    best_odd: Optional[tuple] = None
    pad = (Fraction(0),) * algebra.m
    for coords in candidates:
        seq = char_seq_at(algebra, tuple(coords) + pad)
        if best_even is None or seq.even > best_even:
            best_even = seq.even
        if best_odd is None or seq.odd > best_odd:
            best_odd = seq.odd
    return CharSequence(best_even, best_odd)


def graded_dims(space: Subspace, n: int) -> tuple:
    """Dimensions of the even and odd slices of a graded subspace.

    The subspace must be spanned by homogeneous vectors (true for every space
    produced in this package); each reduced basis row then has all its support
    on one side of the split at n.
    """
    even_count = 0
    odd_count = 0
    for row in space.basis:
        lead = next(k for k, v in enumerate(row) if v)
        if lead < n:
            if any(row[n:]):
                raise GradingViolation("subspace basis row crosses the grading")
            even_count += 1
        else:
            odd_count += 1
    return even_count, odd_count
