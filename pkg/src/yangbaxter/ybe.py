"""Yang-Baxter operators: builders, the braid-equation verifier, equivalences and reference diffs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import (
    CentralWitness,
    LeibnizAlgebra,
    ThreeLeibnizAlgebra,
    central_extension,
    fundamental_leibniz,
    is_central,
)
from .coalgebra import LinearRackStruct, TrilinearRackStruct, is_cocommutative
from .errors import NotCentral, NotCocommutative, ShapeMismatch, Singular
from .linalg import ONE, ZERO, Mat, first_difference, format_scalar, invert, kron
from .report import VerificationReport

BASIS_ORDER = "lexicographic tensor basis, left factor most significant; column j is the image of basis vector j"


@dataclass(frozen=True)
class YbeOperator:
    base_dim: int
    matrix: Mat
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.base_dim
        if self.matrix.shape != (n * n, n * n):
            raise ShapeMismatch(f"operator on V⊗V with dim V = {n} must be {n * n}x{n * n}, got {self.matrix.shape}")


def _op(base_dim: int, data: dict, builder: str, **extra) -> YbeOperator:
    n2 = base_dim * base_dim
    return YbeOperator(base_dim, Mat(n2, n2, data), {"builder": builder, **extra})


def _add(data: dict, key, value) -> None:
    v = data.get(key, ZERO) + value
    if v:
        data[key] = v
    else:
        data.pop(key, None)


# ---------------------------------------------------------------- verification

def verify_ybe(r: Mat, n: int, check_inverse: bool = True) -> VerificationReport:
    """(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R) exactly, plus invertibility."""
    if r.shape != (n * n, n * n):
        raise ShapeMismatch(f"R must be {n * n}x{n * n} for base dimension {n}, got {r.shape}")
    eye = Mat.identity(n)
    r12 = kron(r, eye)
    r23 = kron(eye, r)
    lhs = r12 @ (r23 @ r12)
    rhs = r23 @ (r12 @ r23)
    rep = VerificationReport("Yang-Baxter equation", checked=(n ** 3) ** 2, unit="cells")
    cell = first_difference(lhs, rhs)
    if cell is not None:
        i, j = cell
        rep.fail(cell, f"entry ({i},{j}): left side {format_scalar(lhs[cell])}, right side {format_scalar(rhs[cell])}")
    if check_inverse:
        try:
            invert(r)
            rep.notes.append("invertible")
        except Singular:
            rep.fail(("singular",), "R is not invertible")
    return rep


def verify_operator(op: YbeOperator, check_inverse: bool = True) -> VerificationReport:
    return verify_ybe(op.matrix, op.base_dim, check_inverse)


# ---------------------------------------------------------------- builders

def solution_from_central_leibniz(e: LeibnizAlgebra, one: CentralWitness | None = None) -> YbeOperator:
    """R(x⊗y) = y⊗x + 𝟏⊗[x,y]; 𝟏 defaults to the first basis vector."""
    n = e.dim
    if one is None:
        one = CentralWitness(e.basis(0))
    if not is_central(e, one.element):
        raise NotCentral("the distinguished element is not central")
    unit = {k: c for k, c in enumerate(one.element) if c}
    data: dict = {}
    for i, j in itertools.product(range(n), repeat=2):
        col = i * n + j
        _add(data, (j * n + i, col), ONE)
        for l, c in e._basis_br(i, j).items():
            for k, u in unit.items():
                _add(data, (k * n + l, col), u * c)
    return _op(n, data, "central-leibniz", algebra=e.name)


def solution_from_central_extension(e: LeibnizAlgebra, omega: Mat, check_cocycle: bool = True) -> YbeOperator:
    """The central-Leibniz solution on K⊕E with bracket (ω(x,y), [x,y])."""
    ext, one = central_extension(e, omega, check=check_cocycle)
    op = solution_from_central_leibniz(ext, one)
    return YbeOperator(op.base_dim, op.matrix, {"builder": "central-extension", "algebra": e.name, "cocycle_checked": check_cocycle})


def _require_cocommutative(c) -> None:
    if not is_cocommutative(c):
        raise NotCocommutative("this construction needs a cocommutative coalgebra")


def solution_from_linear_rack(lr: LinearRackStruct) -> YbeOperator:
    """R(u⊗v) = Σ v1⊗(u◁v2)."""
    c = lr.coalg
    _require_cocommutative(c)
    n = c.dim
    data: dict = {}
    for u, v in itertools.product(range(n), repeat=2):
        col = u * n + v
        for (v1, v2), d in c.coproduct(v):
            for w, x in lr.left.basis(u, v2).items():
                _add(data, (v1 * n + w, col), d * x)
    return _op(n, data, "linear-rack")


def linear_rack_inverse(lr: LinearRackStruct) -> Mat:
    """R⁻¹(u⊗v) = Σ (v◁~u2)⊗u1."""
    c = lr.coalg
    _require_cocommutative(c)
    n = c.dim
    data: dict = {}
    for u, v in itertools.product(range(n), repeat=2):
        col = u * n + v
        for (u1, u2), d in c.coproduct(u):
            for w, x in lr.right_inv.basis(v, u2).items():
                _add(data, (w * n + u1, col), d * x)
    return Mat(n * n, n * n, data)


def solution_from_trilinear_rack(tr: TrilinearRackStruct) -> YbeOperator:
    """On C⊗C: R((u⊗v)⊗(m⊗n)) = Σ (m1⊗n1)⊗(T(u,m2,n2)⊗T(v,m3,n3))."""
    c = tr.coalg
    _require_cocommutative(c)
    d = c.dim
    N = d * d
    data: dict = {}
    for u, v, m, n_ in itertools.product(range(d), repeat=4):
        col = (u * d + v) * N + (m * d + n_)
        for (m1, m2, m3), dm in c.coproduct3(m):
            for (n1, n2, n3), dn in c.coproduct3(n_):
                left = tr.T.basis(u, m2, n2)
                if not left:
                    continue
                right = tr.T.basis(v, m3, n3)
                head = (m1 * d + n1) * N
                for a, x in left.items():
                    for b, y in right.items():
                        _add(data, (head + a * d + b, col), dm * dn * x * y)
    return _op(N, data, "trilinear-rack")


def solution_3lei_tensor_square(l: ThreeLeibnizAlgebra) -> YbeOperator:
    """Closed formula on (K⊕L)⊗(K⊕L), base index (p, q) = p*(n+1)+q with 0 = (1,0).

    R(X⊗Y) = Y⊗X + (1⊗1)⊗((0,[x1,y1,y2])⊗(a2,x2) + (a1,x1)⊗(0,[x2,y1,y2]))
    for X = (a1,x1)⊗(a2,x2), Y = (b1,y1)⊗(b2,y2); the bracket terms need
    y1, y2 in L.
    """
    m = l.dim + 1
    N = m * m
    data: dict = {}
    for p, q, s, t in itertools.product(range(m), repeat=4):
        col = (p * m + q) * N + (s * m + t)
        _add(data, ((s * m + t) * N + p * m + q, col), ONE)
        if s == 0 or t == 0:
            continue
        if p:
            for k, c in l._basis_br(p - 1, s - 1, t - 1).items():
                _add(data, ((k + 1) * m + q, col), c)
        if q:
            for k, c in l._basis_br(q - 1, s - 1, t - 1).items():
                _add(data, (p * m + k + 1, col), c)
    return _op(N, data, "3-leibniz-tensor-square", algebra=l.name)


def solution_3lei_fundamental(l: ThreeLeibnizAlgebra) -> YbeOperator:
    """Closed formula on K⊕(L⊗L), index 0 = (1,0), e_a⊗e_b at 1+a*n+b.

    R((a,X)⊗(b,Y)) = (b,Y)⊗(a,X) + (1,0)⊗(0,{X,Y}).
    """
    n = l.dim
    N = 1 + n * n
    data: dict = {}
    for i, j in itertools.product(range(N), repeat=2):
        col = i * N + j
        _add(data, (j * N + i, col), ONE)
        if i == 0 or j == 0:
            continue
        x1, x2 = divmod(i - 1, n)
        y1, y2 = divmod(j - 1, n)
        for k, c in l._basis_br(x1, y1, y2).items():
            _add(data, (1 + k * n + x2, col), c)
        for k, c in l._basis_br(x2, y1, y2).items():
            _add(data, (1 + x1 * n + k, col), c)
    return _op(N, data, "3-leibniz-fundamental", algebra=l.name)


def solution_3lei_fundamental_via_extension(l: ThreeLeibnizAlgebra) -> YbeOperator:
    """Same operator, built as the central-Leibniz solution of the trivially extended fundamental algebra."""
    fund = fundamental_leibniz(l)
    zero = Mat.zeros(fund.dim, fund.dim)
    return solution_from_central_extension(fund, zero)


# ---------------------------------------------------------------- comparisons

def equivalence_check(r1: YbeOperator, r2: YbeOperator, theta: Mat) -> VerificationReport:
    """(θ⊗θ) R1 = R2 (θ⊗θ)."""
    if theta.shape != (r2.base_dim, r1.base_dim):
        raise ShapeMismatch(f"theta must be {r2.base_dim}x{r1.base_dim}, got {theta.shape}")
    tt = kron(theta, theta)
    lhs = tt @ r1.matrix
    rhs = r2.matrix @ tt
    rep = VerificationReport("solution homomorphism", checked=lhs.rows * lhs.cols, unit="cells")
    cell = first_difference(lhs, rhs)
    if cell is not None:
        rep.fail(cell, f"(θ⊗θ)R1 has {format_scalar(lhs[cell])}, R2(θ⊗θ) has {format_scalar(rhs[cell])}")
    return rep


def canonical_theta(dim_e: int, f) -> Mat:
    """θ(a, x) = (a − f(x), x) on K⊕E."""
    n = dim_e + 1
    data = {(i, i): ONE for i in range(n)}
    for i, v in enumerate(f):
        if v:
            data[(0, i + 1)] = -Fraction(v)
    return Mat(n, n, data)


@dataclass(frozen=True)
class CellDiff:
    row: int
    col: int
    computed: Fraction
    reference: Fraction

    def to_json_obj(self) -> dict:
        return {"row": self.row, "col": self.col, "computed": format_scalar(self.computed), "reference": format_scalar(self.reference)}


@dataclass
class DiffReport:
    diffs: list[CellDiff]
    shape: tuple[int, int]
    justifications: dict[int, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.diffs

    @property
    def mismatched_columns(self) -> list[int]:
        return sorted({d.col for d in self.diffs})

    @property
    def matching_columns(self) -> int:
        return self.shape[1] - len(self.mismatched_columns)

    def to_json_obj(self) -> list[dict]:
        return [d.to_json_obj() for d in self.diffs]

    def summary(self) -> str:
        if self.match:
            return "MATCH reference"
        return (
            f"DIFF reference: {len(self.diffs)} cells in column{'s' if len(self.mismatched_columns) != 1 else ''} {', '.join(str(c) for c in self.mismatched_columns)} "
            f"({self.matching_columns} of {self.shape[1]} columns match)"
        )


def compare_to_reference(r: YbeOperator | Mat, reference: Mat) -> DiffReport:
    m = r.matrix if isinstance(r, YbeOperator) else r
    if m.shape != reference.shape:
        raise ShapeMismatch(f"computed {m.shape} vs reference {reference.shape}")
    cells = sorted(set(m._data) | set(reference._data))
    diffs = [CellDiff(i, j, m[i, j], reference[i, j]) for i, j in cells if m[i, j] != reference[i, j]]
    return DiffReport(diffs, m.shape)


def _fundamental_labels(n: int) -> list[str]:
    return ["1"] + [f"f{k}" for k in range(1, n * n + 1)]


def justify_fundamental_diff(l: ThreeLeibnizAlgebra, diff: DiffReport) -> DiffReport:
    """Explain each mismatched column of a K⊕(L⊗L) operator from its defining formula.

    Basis labels: ``1`` is (1,0) and ``fk`` is (0, e_a⊗e_b) with k = 1+a*n+b.
    """
    n = l.dim
    N = 1 + n * n
    names = _fundamental_labels(n)
    for col in diff.mismatched_columns:
        i, j = divmod(col, N)
        swap_row = j * N + i
        parts = [f"column {col} is the image of {names[i]}⊗{names[j]}",
                 f"swap term {names[j]}⊗{names[i]} sits at row {swap_row}"]
        if i and j:
            x1, x2 = divmod(i - 1, n)
            y1, y2 = divmod(j - 1, n)
            br: dict = {}
            for k, c in l._basis_br(x1, y1, y2).items():
                _add(br, 1 + k * n + x2, c)
            for k, c in l._basis_br(x2, y1, y2).items():
                _add(br, 1 + x1 * n + k, c)
            if br:
                terms = " + ".join(f"{format_scalar(c)}·{names[k]}" for k, c in sorted(br.items()))
                rows = ", ".join(str(k) for k in sorted(br))
                parts.append(f"bracket term 1⊗({terms}) sits at row(s) {rows}")
            else:
                parts.append("bracket term vanishes")
        for d in diff.diffs:
            if d.col == col:
                parts.append(f"row {d.row}: formula gives {format_scalar(d.computed)}, printed {format_scalar(d.reference)}")
        diff.justifications[col] = "; ".join(parts)
    return diff


def zero_rows(m: Mat) -> list[int]:
    used = {i for i, _ in m._data}
    return [i for i in range(m.rows) if i not in used]
