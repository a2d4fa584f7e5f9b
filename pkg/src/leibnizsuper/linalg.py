"""Scalar backends and the small linear algebra kit used everywhere else.

Two backends are supported.  ``"rational"`` computes over ``fractions.Fraction``
and every reported rank, kernel or Jordan type is exact.  ``"complex"`` computes
over Python ``complex`` with an absolute tolerance (default ``1e-9``) deciding
which pivots count as zero.  Invariant computations that certify something
(kernels, Jordan types, subspaces) accept only the rational backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    BackendMismatch,
    DimensionMismatch,
    NotNilpotent,
    ParseError,
    SingularMap,
)

RATIONAL = "rational"
COMPLEX = "complex"
BACKENDS = (RATIONAL, COMPLEX)
DEFAULT_TOL = 1e-9

Scalar = Union[Fraction, complex]
Vector = tuple


def check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise BackendMismatch(f"unknown backend {backend!r}; use one of {BACKENDS}")
    return backend


def zero_scalar(backend: str) -> Scalar:
    return Fraction(0) if backend == RATIONAL else complex(0)


def one_scalar(backend: str) -> Scalar:
    return Fraction(1) if backend == RATIONAL else complex(1)


def coerce_scalar(value, backend: str) -> Scalar:
    """Convert ``value`` into the backend's scalar type.

    Rational accepts ints, Fractions and fraction strings like ``"-3/2"``;
    complex additionally accepts floats and complex numbers.  Feeding an
    inexact number to the rational backend raises BackendMismatch.
    """
    check_backend(backend)
    if backend == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal {value!r}: {exc}") from None
        raise BackendMismatch(
            f"rational backend cannot hold {value!r} of type {type(value).__name__}"
        )
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float, Fraction)):
        return complex(value)
    if isinstance(value, str):
        try:
            return complex(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {value!r}: {exc}") from None
    raise BackendMismatch(
        f"complex backend cannot hold {value!r} of type {type(value).__name__}"
    )


def coerce_vector(values: Iterable, backend: str) -> Vector:
    return tuple(coerce_scalar(v, backend) for v in values)


def scalar_is_zero(value: Scalar, backend: str, tol: float = DEFAULT_TOL) -> bool:
    if backend == RATIONAL:
        return value == 0
    return abs(value) <= tol


def vector_is_zero(vec: Sequence, backend: str, tol: float = DEFAULT_TOL) -> bool:
    return all(scalar_is_zero(v, backend, tol) for v in vec)


def format_scalar(value: Scalar, backend: str):
    """JSON encoding: rationals as ``"p/q"`` strings, complex as ``[re, im]``."""
    if backend == RATIONAL:
        return str(value)
    return [value.real, value.imag]


def parse_json_scalar(item, backend: str, where: str) -> Scalar:
    """Decode one scalar from its JSON form, citing ``where`` on failure."""
    if backend == RATIONAL:
        if not isinstance(item, str):
            raise ParseError(f"{where}: rational scalars must be strings, got {item!r}")
        try:
            return Fraction(item)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad rational {item!r}: {exc}") from None
    if (
        not isinstance(item, (list, tuple))
        or len(item) != 2
        or not all(isinstance(p, (int, float)) for p in item)
    ):
        raise ParseError(f"{where}: complex scalars must be [re, im] pairs, got {item!r}")
    return complex(item[0], item[1])


def vec_add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Scalar, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def zero_vector(length: int, backend: str) -> Vector:
    return (zero_scalar(backend),) * length


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over one backend; entries are row tuples."""

    rows: int
    cols: int
    backend: str
    entries: tuple

    def __post_init__(self):
        check_backend(self.backend)
        if len(self.entries) != self.rows:
            raise DimensionMismatch(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch(
                    f"ragged matrix: expected {self.cols} columns, got {len(row)}"
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], backend: str) -> "Matrix":
        data = tuple(coerce_vector(r, backend) for r in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, backend, data)

    @classmethod
    def identity(cls, size: int, backend: str) -> "Matrix":
        one, zero = one_scalar(backend), zero_scalar(backend)
        data = tuple(
            tuple(one if i == j else zero for j in range(size)) for i in range(size)
        )
        return cls(size, size, backend, data)

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: str) -> "Matrix":
        return cls(rows, cols, backend, (zero_vector(cols, backend),) * rows)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        data = tuple(self.column(j) for j in range(self.cols))
        return Matrix(self.cols, self.rows, self.backend, data)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.backend != other.backend:
            raise BackendMismatch("cannot multiply matrices from different backends")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        zero = zero_scalar(self.backend)
        data = []
        for row in self.entries:
            out = []
            for j in range(other.cols):
                acc = zero
                for k, c in enumerate(row):
                    if c:
                        acc += c * other.entries[k][j]
                out.append(acc)
            data.append(tuple(out))
        return Matrix(self.rows, other.cols, self.backend, tuple(data))

    def matvec(self, vec: Sequence) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"matrix has {self.cols} columns, vector has {len(vec)}")
        out = []
        for row in self.entries:
            acc = zero_scalar(self.backend)
            for c, v in zip(row, vec):
                if c and v:
                    acc += c * v
            out.append(acc)
        return tuple(out)

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return all(vector_is_zero(row, self.backend, tol) for row in self.entries)


def _eliminate(rows: list, backend: str, tol: float) -> tuple:
    """Row-reduce in place to reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  Rational pivots are
    the first nonzero entry of a column; complex elimination picks the
    largest-modulus pivot and treats columns with no entry above ``tol`` as
    free.
    """
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= len(rows):
            break
        if backend == RATIONAL:
            pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        else:
            best, best_abs = None, tol
            for i in range(r, len(rows)):
                a = abs(rows[i][col])
                if a > best_abs:
                    best, best_abs = i, a
            pivot_row = best
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col] if backend == COMPLEX else Fraction(1) / rows[r][col]
        rows[r] = [inv * v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    reduced = tuple(tuple(row) for row in rows[:r])
    return reduced, tuple(pivots)


def rref(matrix: Matrix, tol: float = DEFAULT_TOL) -> tuple:
    """Reduced row echelon form of ``matrix``: (nonzero rows, pivot columns)."""
    work = [list(row) for row in matrix.entries]
    return _eliminate(work, matrix.backend, tol)


def rank(matrix: Matrix, tol: float = DEFAULT_TOL) -> int:
    return len(rref(matrix, tol)[1])


def kernel(matrix: Matrix) -> "Subspace":
    """Exact right kernel, returned as a canonical Subspace of dim ``cols``."""
    if matrix.backend != RATIONAL:
        raise BackendMismatch("kernels are computed exactly; use the rational backend")
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(matrix.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * matrix.cols
        vec[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return Subspace.span(basis, matrix.cols)


def invert(matrix: Matrix, tol: float = DEFAULT_TOL) -> Matrix:
    """Inverse of a square matrix; raises SingularMap when rank drops."""
    if matrix.rows != matrix.cols:
        raise DimensionMismatch("only square matrices can be inverted")
    size = matrix.rows
    aug = [
        list(row) + [one_scalar(matrix.backend) if i == j else zero_scalar(matrix.backend)
                     for j in range(size)]
        for i, row in enumerate(matrix.entries)
    ]
    reduced, pivots = _eliminate(aug, matrix.backend, tol)
    if list(pivots) != list(range(size)):
        raise SingularMap(f"matrix of size {size} has rank {len(pivots)}")
    data = tuple(tuple(row[size:]) for row in reduced)
    return Matrix(size, size, matrix.backend, data)


def jordan_type(matrix: Matrix) -> tuple:
    """Jordan block sizes of a nilpotent matrix, largest first.

    Block sizes are read off the exact rank sequence: the number of blocks of
    size at least k equals rank(N^(k-1)) - rank(N^k).  A rank sequence that
    stabilizes above zero means the matrix is not nilpotent (NotNilpotent).
    """
    if matrix.backend != RATIONAL:
        raise BackendMismatch("Jordan types are computed exactly; use the rational backend")
    if matrix.rows != matrix.cols:
        raise DimensionMismatch("Jordan type needs a square matrix")
    dim = matrix.rows
    if dim == 0:
        return ()
    ranks = [dim]
    power = matrix
    while True:
        r = rank(power)
        if r == ranks[-1]:
            raise NotNilpotent(f"rank sequence stabilizes at {r} > 0")
        ranks.append(r)
        if r == 0:
            break
        power = power.mul(matrix)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    top = len(at_least)
    for size in range(top, 0, -1):
        count = at_least[size - 1] - (at_least[size] if size < top else 0)
        sizes.extend([size] * count)
    return tuple(sizes)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient held by its reduced-row-echelon basis.

    The basis is canonical, so two Subspace values are equal exactly when the
    subspaces coincide.  Only the rational backend is supported: subspaces are
    used as certificates.
    """

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        work = []
        for vec in vectors:
            row = [coerce_scalar(v, RATIONAL) for v in vec]
            if len(row) != ambient:
                raise DimensionMismatch(
                    f"spanning vector of length {len(row)} in ambient {ambient}"
                )
            work.append(row)
        reduced, _ = _eliminate(work, RATIONAL, 0.0)
        return cls(ambient, reduced)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span([row for row in Matrix.identity(ambient, RATIONAL).entries], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, vector: Sequence) -> Vector:
        vec = [coerce_scalar(v, RATIONAL) for v in vector]
        if len(vec) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(vec)} in ambient {self.ambient}")
        for row in self.basis:
            lead = next(j for j, v in enumerate(row) if v != 0)
            if vec[lead]:
                factor = vec[lead]
                vec = [a - factor * b for a, b in zip(vec, row)]
        return tuple(vec)

    def contains(self, vector: Sequence) -> bool:
        return all(v == 0 for v in self._reduce(vector))

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return all(self.contains(row) for row in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient)
