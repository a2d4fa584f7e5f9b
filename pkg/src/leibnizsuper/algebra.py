"""Structure-constant model of finite-dimensional Z2-graded algebras.

An algebra is a table of brackets on a homogeneous basis ``x1..xn`` (even part)
and ``y1..ym`` (odd part).  Values are full coordinate vectors over one scalar
backend; absent pairs bracket to zero.  The graded Leibniz identity used
throughout is

    [x, [y, z]] = [[x, y], z] - (-1)^(|y||z|) [[x, z], y]

and the graded Lie conditions add antisymmetry and the graded Jacobi identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BackendMismatch,
    DimensionMismatch,
    DuplicateEntry,
    GradingViolation,
    IndexOutOfRange,
    ParseError,
    SingularMap,
)
from .linalg import (
    COMPLEX,
    DEFAULT_TOL,
    RATIONAL,
    Matrix,
    check_backend,
    coerce_vector,
    format_scalar,
    invert,
    one_scalar,
    parse_json_scalar,
    scalar_is_zero,
    vector_is_zero,
    zero_vector,
)

EVEN = 0
ODD = 1


@dataclass(frozen=True, order=True)
class BasisIndex:
    """Position of a homogeneous basis element: parity 0 names x's, 1 names y's."""

    parity: int
    position: int

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"parity must be 0 or 1, got {self.parity}")
        if self.position < 1:
            raise IndexOutOfRange(f"positions are 1-based, got {self.position}")

    @property
    def label(self) -> str:
        return f"{'x' if self.parity == EVEN else 'y'}{self.position}"

    def __str__(self) -> str:
        return self.label

    @classmethod
    def from_label(cls, text: str) -> "BasisIndex":
        if not isinstance(text, str) or len(text) < 2 or text[0] not in "xy":
            raise ParseError(f"bad basis label {text!r}; expected like 'x1' or 'y2'")
        if not text[1:].isdigit():
            raise ParseError(f"bad basis label {text!r}; expected like 'x1' or 'y2'")
        position = int(text[1:])
        if position < 1:
            raise ParseError(f"bad basis label {text!r}; positions are 1-based")
        return cls(EVEN if text[0] == "x" else ODD, position)


def even_index(position: int) -> BasisIndex:
    return BasisIndex(EVEN, position)


def odd_index(position: int) -> BasisIndex:
    return BasisIndex(ODD, position)


@dataclass(frozen=True)
class SuperAlgebra:
    """Bracket table over a graded basis of n even and m odd elements.

    ``table`` maps ordered pairs of BasisIndex to full coordinate tuples;
    pairs that bracket to zero are omitted.  Instances compare by dimensions,
    backend and table; ``name`` is a display tag only.
    """

    n: int
    m: int
    backend: str
    table: Mapping
    name: Optional[str] = field(default=None, compare=False)

    __hash__ = None

    def __post_init__(self):
        check_backend(self.backend)
        if self.n < 0 or self.m < 0 or self.n + self.m == 0:
            raise DimensionMismatch(f"need n, m >= 0 with n + m >= 1, got ({self.n}, {self.m})")
        flat = {}
        for (left, right), value in self.table.items():
            if len(value) != self.dim:
                raise DimensionMismatch(
                    f"bracket [{left},{right}] value has length {len(value)}, expected {self.dim}"
                )
            flat[(self.flat(left), self.flat(right))] = tuple(value)
        object.__setattr__(self, "_flat", flat)
        object.__setattr__(self, "_zero", zero_vector(self.dim, self.backend))

    @property
    def dim(self) -> int:
        return self.n + self.m

    def basis_indices(self) -> tuple:
        evens = tuple(BasisIndex(EVEN, i) for i in range(1, self.n + 1))
        odds = tuple(BasisIndex(ODD, j) for j in range(1, self.m + 1))
        return evens + odds

    def flat(self, index: BasisIndex) -> int:
        """0-based coordinate slot of a basis index (even block first)."""
        if index.parity == EVEN:
            if index.position > self.n:
                raise IndexOutOfRange(f"{index} exceeds even dimension {self.n}")
            return index.position - 1
        if index.position > self.m:
            raise IndexOutOfRange(f"{index} exceeds odd dimension {self.m}")
        return self.n + index.position - 1

    def index_at(self, flat: int) -> BasisIndex:
        if not 0 <= flat < self.dim:
            raise IndexOutOfRange(f"flat position {flat} outside 0..{self.dim - 1}")
        if flat < self.n:
            return BasisIndex(EVEN, flat + 1)
        return BasisIndex(ODD, flat - self.n + 1)

    def parity_at(self, flat: int) -> int:
        return EVEN if flat < self.n else ODD

    def basis_vector(self, index: BasisIndex) -> tuple:
        vec = list(self._zero)
        vec[self.flat(index)] = one_scalar(self.backend)
        return tuple(vec)

    def entry(self, left: BasisIndex, right: BasisIndex) -> tuple:
        """Bracket of two basis elements as a full coordinate vector."""
        return self._flat.get((self.flat(left), self.flat(right)), self._zero)

    def entry_flat(self, left: int, right: int):
        return self._flat.get((left, right))

    def vector_parity(self, vec: Sequence) -> Optional[int]:
        """Parity of a homogeneous vector, None if zero; ValueError if mixed."""
        has_even = any(vec[:self.n])
        has_odd = any(vec[self.n:])
        if has_even and has_odd:
            raise ValueError("vector is not homogeneous")
        if has_even:
            return EVEN
        if has_odd:
            return ODD
        return None


def make_superalgebra(
    n: int,
    m: int,
    backend: str = RATIONAL,
    entries: Iterable = (),
    name: Optional[str] = None,
    check_graded: bool = True,
) -> SuperAlgebra:
    """Validated constructor from (left, right, value) triples.

    ``left`` and ``right`` may be BasisIndex values or labels like ``"y2"``;
    ``value`` is a full coordinate sequence.  Raises IndexOutOfRange,
    DuplicateEntry, DimensionMismatch, BackendMismatch or GradingViolation.
    Zero values are dropped.
    """
    check_backend(backend)
    dim = n + m
    table = {}
    for left, right, value in entries:
        lidx = BasisIndex.from_label(left) if isinstance(left, str) else left
        ridx = BasisIndex.from_label(right) if isinstance(right, str) else right
        for idx in (lidx, ridx):
            bound = n if idx.parity == EVEN else m
            if idx.position > bound:
                raise IndexOutOfRange(f"{idx} exceeds part dimension {bound}")
        if (lidx, ridx) in table:
            raise DuplicateEntry(f"bracket [{lidx},{ridx}] given twice")
        if len(value) != dim:
            raise DimensionMismatch(
                f"bracket [{lidx},{ridx}] value has length {len(value)}, expected {dim}"
            )
        vec = coerce_vector(value, backend)
        if vector_is_zero(vec, backend, 0.0):
            continue
        table[(lidx, ridx)] = vec
    algebra = SuperAlgebra(n, m, backend, table, name)
    if check_graded:
        issues = check_grading(algebra)
        if issues:
            left, right, target = issues[0]
            raise GradingViolation(
                f"[{left},{right}] has a component on {target}, which has the wrong parity"
            )
    return algebra


def check_grading(algebra: SuperAlgebra) -> tuple:
    """All (left, right, offending index) triples where a value crosses parity."""
    issues = []
    for (left, right), value in sorted(algebra.table.items()):
        expected = (left.parity + right.parity) % 2
        for pos, coeff in enumerate(value):
            if coeff and algebra.parity_at(pos) != expected:
                issues.append((left, right, algebra.index_at(pos)))
    return tuple(issues)


def basis_times_vector(algebra: SuperAlgebra, left_flat: int, vec: Sequence) -> tuple:
    """Bracket of basis slot ``left_flat`` with an arbitrary coordinate vector."""
    acc = None
    for j, c in enumerate(vec):
        if not c:
            continue
        row = algebra.entry_flat(left_flat, j)
        if row is None:
            continue
        if acc is None:
            acc = [c * v for v in row]
        else:
            for k, v in enumerate(row):
                if v:
                    acc[k] += c * v
    return algebra._zero if acc is None else tuple(acc)


def vector_times_basis(algebra: SuperAlgebra, vec: Sequence, right_flat: int) -> tuple:
    """Bracket of an arbitrary coordinate vector with basis slot ``right_flat``."""
    acc = None
    for i, c in enumerate(vec):
        if not c:
            continue
        row = algebra.entry_flat(i, right_flat)
        if row is None:
            continue
        if acc is None:
            acc = [c * v for v in row]
        else:
            for k, v in enumerate(row):
                if v:
                    acc[k] += c * v
    return algebra._zero if acc is None else tuple(acc)


def bilinear_bracket(algebra: SuperAlgebra, u: Sequence, v: Sequence) -> tuple:
    """Bracket of two arbitrary coordinate vectors by bilinear expansion."""
    acc = None
    for i, cu in enumerate(u):
        if not cu:
            continue
        part = basis_times_vector(algebra, i, v)
        if acc is None:
            acc = [cu * w for w in part]
        else:
            for k, w in enumerate(part):
                if w:
                    acc[k] += cu * w
    return algebra._zero if acc is None else tuple(acc)


def bracket(algebra: SuperAlgebra, u: Sequence, v: Sequence) -> tuple:
    """Bracket of two homogeneous vectors given in full coordinates.

    Inputs must be homogeneous (all support in one parity block); use
    bilinear_bracket for unrestricted vectors.
    """
    uc = coerce_vector(u, algebra.backend)
    vc = coerce_vector(v, algebra.backend)
    if len(uc) != algebra.dim or len(vc) != algebra.dim:
        raise DimensionMismatch(f"vectors must have length {algebra.dim}")
    algebra.vector_parity(uc)
    algebra.vector_parity(vc)
    return bilinear_bracket(algebra, uc, vc)


@dataclass(frozen=True)
class IdentityViolation:
    """Basis triple (x, y, z) whose Leibniz residual is nonzero."""

    x: BasisIndex
    y: BasisIndex
    z: BasisIndex
    residual: tuple

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


def leibniz_residual(algebra: SuperAlgebra, xf: int, yf: int, zf: int) -> Optional[tuple]:
    """[x,[y,z]] - [[x,y],z] + (-1)^(|y||z|) [[x,z],y] on basis slots, or None if zero.

    Returns None without allocating when all three contributing table rows are
    absent, which is the common case on sparse tables.
    """
    inner = algebra.entry_flat(yf, zf)
    v_xy = algebra.entry_flat(xf, yf)
    v_xz = algebra.entry_flat(xf, zf)
    if inner is None and v_xy is None and v_xz is None:
        return None
    total = None
    if inner is not None:
        t = basis_times_vector(algebra, xf, inner)
        if any(t):
            total = list(t)
    if v_xy is not None:
        t = vector_times_basis(algebra, v_xy, zf)
        if any(t):
            if total is None:
                total = [-v for v in t]
            else:
                for k, v in enumerate(t):
                    if v:
                        total[k] -= v
    if v_xz is not None:
        t = vector_times_basis(algebra, v_xz, yf)
        if any(t):
            sign = -1 if (algebra.parity_at(yf) and algebra.parity_at(zf)) else 1
            if total is None:
                total = [sign * v for v in t]
            else:
                for k, v in enumerate(t):
                    if v:
                        total[k] += sign * v
    if total is None:
        return None
    return tuple(total)


def iter_leibniz_violations(algebra: SuperAlgebra, tol: float = DEFAULT_TOL):
    dim = algebra.dim
    for xf in range(dim):
        for yf in range(dim):
            for zf in range(dim):
                res = leibniz_residual(algebra, xf, yf, zf)
                if res is None:
                    continue
                if not vector_is_zero(res, algebra.backend, tol):
                    yield IdentityViolation(
                        algebra.index_at(xf), algebra.index_at(yf), algebra.index_at(zf), res
                    )


def check_leibniz_superidentity(algebra: SuperAlgebra, tol: float = DEFAULT_TOL) -> tuple:
    """All violating triples of the graded Leibniz identity (empty means it holds)."""
    return tuple(iter_leibniz_violations(algebra, tol))


def first_leibniz_violation(
    algebra: SuperAlgebra, tol: float = DEFAULT_TOL
) -> Optional[IdentityViolation]:
    return next(iter_leibniz_violations(algebra, tol), None)


@dataclass(frozen=True)
class LieViolation:
    """Failed graded Lie condition: kind is 'antisymmetry' or 'jacobi'."""

    kind: str
    elements: tuple
    residual: tuple

    def __str__(self) -> str:
        inside = ", ".join(str(e) for e in self.elements)
        return f"{self.kind}({inside})"


def check_lie_superidentity(algebra: SuperAlgebra, tol: float = DEFAULT_TOL) -> tuple:
    """Violations of graded antisymmetry and the graded Jacobi identity.

    Antisymmetry residual: [a,b] + (-1)^(|a||b|) [b,a] over basis pairs.
    Jacobi residual over basis triples (x,y,z) with parities (p,q,r):

        (-1)^(p r) [x,[y,z]] + (-1)^(q p) [y,[z,x]] + (-1)^(r q) [z,[x,y]]
    """
    violations = []
    dim = algebra.dim
    zero = algebra._zero
    for af in range(dim):
        for bf in range(af, dim):
            vab = algebra.entry_flat(af, bf)
            vba = algebra.entry_flat(bf, af)
            if vab is None and vba is None:
                continue
            sign = -1 if (algebra.parity_at(af) and algebra.parity_at(bf)) else 1
            lhs = vab if vab is not None else zero
            rhs = vba if vba is not None else zero
            res = tuple(a + sign * b for a, b in zip(lhs, rhs))
            if not vector_is_zero(res, algebra.backend, tol):
                violations.append(
                    LieViolation(
                        "antisymmetry",
                        (algebra.index_at(af), algebra.index_at(bf)),
                        res,
                    )
                )
    for xf in range(dim):
        for yf in range(dim):
            for zf in range(dim):
                p, q, r = algebra.parity_at(xf), algebra.parity_at(yf), algebra.parity_at(zf)
                terms = []
                for (a, b, c, s) in (
                    (xf, yf, zf, p * r),
                    (yf, zf, xf, q * p),
                    (zf, xf, yf, r * q),
                ):
                    inner = algebra.entry_flat(b, c)
                    if inner is None:
                        continue
                    t = basis_times_vector(algebra, a, inner)
                    terms.append((s, t))
                if not terms:
                    continue
                total = list(zero)
                for s, t in terms:
                    for k, v in enumerate(t):
                        if v:
                            total[k] += -v if s else v
                if not vector_is_zero(total, algebra.backend, tol):
                    violations.append(
                        LieViolation(
                            "jacobi",
                            (algebra.index_at(xf), algebra.index_at(yf), algebra.index_at(zf)),
                            tuple(total),
                        )
                    )
    return tuple(violations)


@dataclass(frozen=True)
class GradedMap:
    """Parity-preserving linear map given by its even and odd blocks.

    Columns are images: column k of ``even`` holds the coordinates of the
    image of xk in the x basis, and likewise for ``odd`` and yk.
    """

    even: Matrix
    odd: Matrix

    def __post_init__(self):
        if self.even.backend != self.odd.backend:
            raise BackendMismatch("blocks use different backends")
        if self.even.rows != self.even.cols or self.odd.rows != self.odd.cols:
            raise DimensionMismatch("blocks must be square")

    @property
    def backend(self) -> str:
        return self.even.backend

    @property
    def n(self) -> int:
        return self.even.rows

    @property
    def m(self) -> int:
        return self.odd.rows

    @classmethod
    def from_blocks(cls, even_rows, odd_rows, backend: str) -> "GradedMap":
        return cls(Matrix.from_rows(even_rows, backend), Matrix.from_rows(odd_rows, backend))

    @classmethod
    def identity(cls, n: int, m: int, backend: str) -> "GradedMap":
        return cls(Matrix.identity(n, backend), Matrix.identity(m, backend))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.n + self.m:
            raise DimensionMismatch(f"vector must have length {self.n + self.m}")
        return self.even.matvec(vec[: self.n]) + self.odd.matvec(vec[self.n:])

    def compose(self, other: "GradedMap") -> "GradedMap":
        """Map equal to applying ``other`` first, then this map."""
        return GradedMap(self.even.mul(other.even), self.odd.mul(other.odd))

    def inverse(self, tol: float = DEFAULT_TOL) -> "GradedMap":
        return GradedMap(invert(self.even, tol), invert(self.odd, tol))

    def is_invertible(self, tol: float = DEFAULT_TOL) -> bool:
        try:
            self.inverse(tol)
        except SingularMap:
            return False
        return True


def apply_basis_change(
    algebra: SuperAlgebra, change: GradedMap, tol: float = DEFAULT_TOL
) -> SuperAlgebra:
    """Bracket table in the basis whose k-th vector is the image of the old k-th.

    The new table is c'(u, v) = T^(-1) [T u, T v]; conjugating by an invertible
    graded map yields an isomorphic algebra.  Raises SingularMap when a block
    is not invertible and BackendMismatch when backends differ.
    """
    if change.backend != algebra.backend:
        raise BackendMismatch("basis change and algebra use different backends")
    if change.n != algebra.n or change.m != algebra.m:
        raise DimensionMismatch(
            f"basis change blocks are {change.n}+{change.m}, algebra is {algebra.n}+{algebra.m}"
        )
    inverse = change.inverse(tol)
    images = [change.apply(algebra.basis_vector(idx)) for idx in algebra.basis_indices()]
    entries = []
    indices = algebra.basis_indices()
    for li, left in enumerate(indices):
        for ri, right in enumerate(indices):
            w = bilinear_bracket(algebra, images[li], images[ri])
            if vector_is_zero(w, algebra.backend, 0.0):
                continue
            entries.append((left, right, inverse.apply(w)))
    return make_superalgebra(
        algebra.n, algebra.m, algebra.backend, entries, algebra.name, check_graded=False
    )


def to_complex(algebra: SuperAlgebra) -> SuperAlgebra:
    """The same table with every rational scalar converted to a complex float."""
    if algebra.backend == COMPLEX:
        return algebra
    entries = [
        (left, right, tuple(complex(v) for v in value))
        for (left, right), value in algebra.table.items()
    ]
    return make_superalgebra(
        algebra.n, algebra.m, COMPLEX, entries, algebra.name, check_graded=False
    )


def tables_match(a: SuperAlgebra, b: SuperAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """True when both tables agree entrywise (exactly, or within tol for complex)."""
    if (a.n, a.m) != (b.n, b.m) or a.backend != b.backend:
        return False
    keys = set(a._flat) | set(b._flat)
    zero = a._zero
    for key in keys:
        va = a._flat.get(key, zero)
        vb = b._flat.get(key, zero)
        if not vector_is_zero([p - q for p, q in zip(va, vb)], a.backend, tol):
            return False
    return True


def vector_to_pairs(algebra: SuperAlgebra, vec: Sequence) -> list:
    """Nonzero coordinates as (label, scalar) pairs in basis order."""
    return [
        (algebra.index_at(k).label, v)
        for k, v in enumerate(vec)
        if not scalar_is_zero(v, algebra.backend, 0.0)
    ]


def serialize(algebra: SuperAlgebra, indent: int = 2) -> str:
    """Stable JSON text for an algebra; inverse of ``parse``.

    Rational scalars are fraction strings like "-1/2"; complex scalars are
    [re, im] pairs.  Brackets are sorted by (left, right) so equal algebras
    serialize to identical bytes.
    """
    brackets = []
    for (left, right) in sorted(algebra.table):
        value = algebra.table[(left, right)]
        pairs = [
            [algebra.index_at(k).label, format_scalar(v, algebra.backend)]
            for k, v in enumerate(value)
            if not scalar_is_zero(v, algebra.backend, 0.0)
        ]
        brackets.append({"left": left.label, "right": right.label, "value": pairs})
    doc = {
        "n": algebra.n,
        "m": algebra.m,
        "field": algebra.backend,
        "name": algebra.name,
        "brackets": brackets,
    }
    return json.dumps(doc, indent=indent)


def parse(text: str) -> SuperAlgebra:
    """Decode ``serialize`` output; raises ParseError locating any bad part.

    Grading is not enforced here so that checkers can report violations on
    files built by hand; use check_grading afterwards.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("n", "m", "field", "brackets"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    n, m = doc["n"], doc["m"]
    if not isinstance(n, int) or not isinstance(m, int) or n < 0 or m < 0 or n + m == 0:
        raise ParseError(f"bad dimensions n={n!r}, m={m!r}")
    backend = doc["field"]
    if backend not in (RATIONAL, COMPLEX):
        raise ParseError(f"field must be 'rational' or 'complex', got {backend!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"name must be a string or null, got {name!r}")
    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets must be a list")
    entries = []
    seen = set()
    for k, item in enumerate(doc["brackets"]):
        where = f"brackets[{k}]"
        if not isinstance(item, dict) or not {"left", "right", "value"} <= set(item):
            raise ParseError(f"{where}: expected an object with left, right, value")
        try:
            left = BasisIndex.from_label(item["left"])
            right = BasisIndex.from_label(item["right"])
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}") from None
        for idx in (left, right):
            bound = n if idx.parity == EVEN else m
            if idx.position > bound:
                raise ParseError(f"{where}: label {idx} out of range for n={n}, m={m}")
        if (left, right) in seen:
            raise ParseError(f"{where}: duplicate bracket [{left},{right}]")
        seen.add((left, right))
        if not isinstance(item["value"], list):
            raise ParseError(f"{where}: value must be a list of [label, scalar] pairs")
        vec = list(zero_vector(n + m, backend))
        for t, pair in enumerate(item["value"]):
            spot = f"{where}.value[{t}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"{spot}: expected a [label, scalar] pair")
            try:
                target = BasisIndex.from_label(pair[0])
            except ParseError as exc:
                raise ParseError(f"{spot}: {exc}") from None
            bound = n if target.parity == EVEN else m
            if target.position > bound:
                raise ParseError(f"{spot}: label {target} out of range for n={n}, m={m}")
            slot = target.position - 1 if target.parity == EVEN else n + target.position - 1
            vec[slot] = parse_json_scalar(pair[1], backend, spot)
        entries.append((left, right, tuple(vec)))
    return make_superalgebra(n, m, backend, entries, name, check_graded=False)


def serialize_graded_map(change: GradedMap, indent: int = 2) -> str:
    """Stable JSON text for a graded map; inverse of ``parse_graded_map``."""
    doc = {
        "field": change.backend,
        "even": [[format_scalar(v, change.backend) for v in row] for row in change.even.entries],
        "odd": [[format_scalar(v, change.backend) for v in row] for row in change.odd.entries],
    }
    return json.dumps(doc, indent=indent)


def parse_graded_map(text: str) -> GradedMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("field", "even", "odd"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    backend = doc["field"]
    if backend not in (RATIONAL, COMPLEX):
        raise ParseError(f"field must be 'rational' or 'complex', got {backend!r}")
    blocks = {}
    for part in ("even", "odd"):
        rows = doc[part]
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise ParseError(f"{part} must be a list of rows")
        size = len(rows)
        data = []
        for i, row in enumerate(rows):
            if len(row) != size:
                raise ParseError(f"{part}[{i}]: block must be square, expected {size} entries")
            data.append(
                tuple(parse_json_scalar(v, backend, f"{part}[{i}][{j}]") for j, v in enumerate(row))
            )
        blocks[part] = Matrix(size, size, backend, tuple(data))
    return GradedMap(blocks["even"], blocks["odd"])
