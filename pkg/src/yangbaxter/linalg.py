"""Exact rational matrices, vectors and tensor-index bookkeeping.

Every scalar is a :class:`fractions.Fraction`.  Matrices are immutable; the
storage keeps only nonzero cells, but the public view (``entries``, JSON,
CSV) is always dense.  Column ``j`` of an operator matrix is the image of
basis vector ``j``; tensor bases are ordered lexicographically with the left
factor most significant.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, NotNilpotent, ShapeMismatch, Singular

Scalar = Fraction
Vec = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational scalar: {value!r}") from exc
    # floats are refused: they would smuggle rounding into the system
    raise InputError(f"not a rational scalar: {value!r}")


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- vectors

def vector(values: Iterable) -> Vec:
    if type(values) is tuple and all(type(v) is Fraction for v in values):
        return values
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vec:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(*vs: Vec) -> Vec:
    return tuple(sum(cs, ZERO) for cs in zip(*vs))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, v: Vec) -> Vec:
    c = scalar(c)
    return tuple(c * x for x in v)


def vec_tensor(a: Vec, b: Vec) -> Vec:
    return tuple(x * y for x in a for y in b)


def is_zero_vector(v: Vec) -> bool:
    return not any(v)


def format_vector(v: Vec, names: Sequence[str] | None = None) -> str:
    """Render ``v`` as a linear combination such as ``1/2·e1 + e2``."""
    names = names or [f"e{i + 1}" for i in range(len(v))]
    terms = []
    for c, name in zip(v, names):
        if c == 0:
            continue
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append(f"-{name}")
        else:
            terms.append(f"{format_scalar(c)}·{name}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ---------------------------------------------------------------- matrices

class Mat:
    """Immutable exact matrix; only nonzero cells are stored."""

    __slots__ = ("rows", "cols", "_data", "_by_row", "_by_col", "_hash")

    def __init__(self, rows: int, cols: int, data: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        cells = {}
        for (i, j), v in (data or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeMismatch(f"cell ({i},{j}) outside {rows}x{cols}")
            v = scalar(v)
            if v:
                cells[(i, j)] = v
        self.rows = rows
        self.cols = cols
        self._data = cells
        self._by_row = None
        self._by_col = None
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, cells):
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, cells
        m._by_row = m._by_col = m._hash = None
        return m

    # -- constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence) -> "Mat":
        """Build from columns given as dense sequences or ``{row: value}`` dicts."""
        data = {}
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) or isinstance(col, Mapping) else enumerate(col)
            for i, v in items:
                data[(i, j)] = data.get((i, j), ZERO) + scalar(v)
        return cls(nrows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._raw(rows, cols, {})

    # -- access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self._data)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data.get((i, j), ZERO)

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        d = self._data
        return tuple(tuple(d.get((i, j), ZERO) for j in range(self.cols)) for i in range(self.rows))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        """Nonzero cells in row-major order."""
        for ij in sorted(self._data):
            yield ij, self._data[ij]

    def _rows_index(self) -> dict:
        if self._by_row is None:
            idx: dict[int, dict[int, Fraction]] = {}
            for (i, j), v in self._data.items():
                idx.setdefault(i, {})[j] = v
            self._by_row = idx
        return self._by_row

    def _cols_index(self) -> dict:
        if self._by_col is None:
            idx: dict[int, dict[int, Fraction]] = {}
            for (i, j), v in self._data.items():
                idx.setdefault(j, {})[i] = v
            self._by_col = idx
        return self._by_col

    def column(self, j: int) -> dict[int, Fraction]:
        """Nonzero entries of column ``j`` as ``{row: value}``."""
        return dict(self._cols_index().get(j, {}))

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._rows_index().get(i, {}))

    def column_vector(self, j: int) -> Vec:
        col = self._cols_index().get(j, {})
        return tuple(col.get(i, ZERO) for i in range(self.rows))

    def apply(self, v: Sequence) -> Vec:
        """Dense matrix-vector product."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        out = [ZERO] * self.rows
        cols = self._cols_index()
        for j, x in enumerate(v):
            if x:
                for i, a in cols.get(j, {}).items():
                    out[i] += a * x
        return tuple(out)

    def apply_sparse(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        cols = self._cols_index()
        for j, x in v.items():
            if x:
                for i, a in cols.get(j, {}).items():
                    out[i] = out.get(i, ZERO) + a * x
        return {i: x for i, x in out.items() if x}

    # -- algebra
    def __matmul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        rows_b = other._rows_index()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._data.items():
            for j, b in rows_b.get(k, {}).items():
                key = (i, j)
                acc[key] = acc.get(key, ZERO) + a * b
        return Mat._raw(self.rows, other.cols, {k: v for k, v in acc.items() if v})

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same(other)
        acc = dict(self._data)
        for k, v in other._data.items():
            acc[k] = acc.get(k, ZERO) + v
        return Mat._raw(self.rows, self.cols, {k: v for k, v in acc.items() if v})

    def __neg__(self) -> "Mat":
        return Mat._raw(self.rows, self.cols, {k: -v for k, v in self._data.items()})

    def __sub__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            return NotImplemented
        c = scalar(c)
        if not c:
            return Mat.zeros(self.rows, self.cols)
        return Mat._raw(self.rows, self.cols, {k: c * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Mat":
        return self * (ONE / scalar(c))

    def __pow__(self, k: int) -> "Mat":
        if not self.is_square:
            raise ShapeMismatch("power of a non-square matrix")
        out = Mat.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.cols, self.rows, {(j, i): v for (i, j), v in self._data.items()})

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._data.items())))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.entries)
            return f"Mat({self.rows}x{self.cols}: {body})"
        return f"Mat({self.rows}x{self.cols}, nnz={self.nnz})"

    def pretty(self) -> str:
        cells = [[format_scalar(x) for x in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)

    # -- serialization
    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_scalar(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping, subst: Mapping[str, Fraction] | None = None) -> "Mat":
        """Parse the Mat JSON object; symbolic cells are resolved through ``subst``."""
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"matrix object needs rows/cols/entries: {exc}") from exc
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch(f"entries do not match declared shape {rows}x{cols}")
        data = {}
        for i, r in enumerate(entries):
            for j, cell in enumerate(r):
                if isinstance(cell, str) and subst is not None and cell.strip() in subst:
                    data[(i, j)] = subst[cell.strip()]
                else:
                    try:
                        data[(i, j)] = scalar(cell)
                    except InputError as exc:
                        raise InputError(f"entry ({i},{j}): {exc}") from exc
        return cls(rows, cols, data)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "Mat":
        return cls.from_json_obj(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in self.entries:
            w.writerow(format_scalar(x) for x in r)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Mat":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        return cls.from_rows(rows)


# ---------------------------------------------------------------- tensors

@dataclass(frozen=True)
class TensorShape:
    """Lexicographic flat <-> multi index map for V1 ⊗ ... ⊗ Vk."""

    factor_dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factor_dims", tuple(self.factor_dims))

    @property
    def size(self) -> int:
        return prod(self.factor_dims)

    def flat(self, multi: Sequence[int]) -> int:
        if len(multi) != len(self.factor_dims):
            raise ShapeMismatch("multi-index length differs from factor count")
        out = 0
        for i, d in zip(multi, self.factor_dims):
            if not 0 <= i < d:
                raise IndexError(multi)
            out = out * d + i
        return out

    def multi(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise IndexError(flat)
        out = []
        for d in reversed(self.factor_dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))


def kron(*mats: Mat) -> Mat:
    """Kronecker product, left factor most significant."""
    if not mats:
        return Mat.identity(1)

    def two(a: Mat, b: Mat) -> Mat:
        data = {}
        for (i, j), x in a._data.items():
            for (k, l), y in b._data.items():
                data[(i * b.rows + k, j * b.cols + l)] = x * y
        return Mat._raw(a.rows * b.rows, a.cols * b.cols, data)

    return reduce(two, mats)


def permutation_operator(dims: Sequence[int], order: Sequence[int]) -> Mat:
    """Matrix reordering tensor factors: output factor ``t`` is input factor ``order[t]``."""
    dims = tuple(dims)
    if sorted(order) != list(range(len(dims))):
        raise InputError(f"{order!r} is not a permutation of the factors")
    src = TensorShape(dims)
    dst = TensorShape(tuple(dims[k] for k in order))
    data = {}
    for f in range(src.size):
        m = src.multi(f)
        data[(dst.flat([m[k] for k in order]), f)] = ONE
    return Mat._raw(dst.size, src.size, data)


def swap_operator(n: int) -> Mat:
    """The flip e_i⊗e_j -> e_j⊗e_i on an n-dimensional space."""
    if n < 1:
        raise InputError("swap_operator needs n >= 1")
    return permutation_operator((n, n), (1, 0))


# ---------------------------------------------------------------- exp / inverse

def nilpotency_index(m: Mat) -> int | None:
    """Least k with m^k = 0, or None when m is not nilpotent."""
    if not m.is_square:
        raise ShapeMismatch("nilpotency of a non-square matrix")
    n = m.rows
    if m.is_zero():
        return 1 if n else 0
    power = m
    for k in range(2, n + 1):
        power = power @ m
        if power.is_zero():
            return k
    return None


def exp_nilpotent(m: Mat) -> Mat:
    """exp(m) = Σ m^k/k! for nilpotent ``m``; the series stops at the nilpotency index."""
    idx = nilpotency_index(m)
    if idx is None:
        raise NotNilpotent(f"{m.rows}x{m.cols} operator has m^{m.rows} != 0")
    out = Mat.identity(m.rows)
    term = Mat.identity(m.rows)
    for k in range(1, idx):
        term = (term @ m) / k
        out = out + term
    return out


def _eliminate(m: Mat, augment: bool):
    """Sparse Gauss-Jordan over Q. Returns (rank, inverse-or-None)."""
    n, c = m.rows, m.cols
    rows = [dict(m._rows_index().get(i, {})) for i in range(n)]
    aug = [{i: ONE} for i in range(n)] if augment else None
    pivot_row = 0
    for col in range(c):
        # sparsest usable pivot keeps fill-in low
        best = None
        for r in range(pivot_row, n):
            if rows[r].get(col):
                if best is None or len(rows[r]) < len(rows[best]):
                    best = r
        if best is None:
            continue
        rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
        if augment:
            aug[pivot_row], aug[best] = aug[best], aug[pivot_row]
        p = rows[pivot_row][col]
        prow = {k: v / p for k, v in rows[pivot_row].items()}
        rows[pivot_row] = prow
        if augment:
            paug = {k: v / p for k, v in aug[pivot_row].items()}
            aug[pivot_row] = paug
        for r in range(n):
            if r == pivot_row:
                continue
            f = rows[r].get(col)
            if not f:
                continue
            row = rows[r]
            for k, v in prow.items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if augment:
                arow = aug[r]
                for k, v in paug.items():
                    nv = arow.get(k, ZERO) - f * v
                    if nv:
                        arow[k] = nv
                    else:
                        arow.pop(k, None)
        pivot_row += 1
        if pivot_row == n:
            break
    if not augment:
        return pivot_row, None
    if pivot_row < n or n != c:
        return pivot_row, None
    # after Gauss-Jordan with full rank, row i carries the pivot of column i
    data = {(i, j): v for i, r in enumerate(aug) for j, v in r.items()}
    return pivot_row, Mat._raw(n, n, data)


def invert(m: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    if not m.is_square:
        raise ShapeMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    rank, inv = _eliminate(m, augment=True)
    if inv is None:
        raise Singular(f"matrix has rank {rank} < {m.rows}")
    return inv


def rank(m: Mat) -> int:
    return _eliminate(m, augment=False)[0]


def first_difference(a: Mat, b: Mat) -> tuple[int, int] | None:
    """Row-major first cell where ``a`` and ``b`` differ."""
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape {a.shape} vs {b.shape}")
    keys = set(a._data) | set(b._data)
    diff = [k for k in keys if a._data.get(k, ZERO) != b._data.get(k, ZERO)]
    return min(diff) if diff else None
