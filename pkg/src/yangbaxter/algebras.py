"""Leibniz and 3-Leibniz algebras given by structure constants.

Brackets are stored sparsely as ``{(i, j[, k]): {l: coeff}}`` with 0-based
basis indices.  A bracket is multilinear, so every identity is verified on
basis tuples only.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError, NotACocycle, ShapeMismatch, UnknownVariant
from .linalg import ONE, ZERO, Mat, Vec, format_vector, scalar, vector
from .report import VerificationReport

SVec = dict  # sparse vector {index: Fraction}


def _sparse(v) -> SVec:
    if isinstance(v, dict) or isinstance(v, Mapping):
        return {i: scalar(x) for i, x in v.items() if x}
    return {i: scalar(x) for i, x in enumerate(v) if x}


def _dense(sv: SVec, n: int) -> Vec:
    return tuple(sv.get(i, ZERO) for i in range(n))


def _axpy(acc: SVec, c: Fraction, v: SVec) -> None:
    for i, x in v.items():
        y = acc.get(i, ZERO) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)


def _sub(a: SVec, b: SVec) -> SVec:
    out = dict(a)
    _axpy(out, -ONE, b)
    return out


def _one(*idx: int) -> tuple[int, ...]:
    """Report witnesses with 1-based basis labels."""
    return tuple(i + 1 for i in idx)


def workers() -> int:
    """Worker cap from ``YB_THREADS`` (default 1: serial, fully deterministic)."""
    try:
        return max(1, int(os.environ.get("YB_THREADS", "1")))
    except ValueError:
        return 1


class _Algebra:
    arity = 0
    kind = ""

    def __init__(self, dim: int, table: Mapping[tuple, object] | None = None, name: str = ""):
        if dim < 0:
            raise InputError("dimension must be non-negative")
        clean: dict[tuple, SVec] = {}
        for key, out in (table or {}).items():
            key = tuple(key)
            if len(key) != self.arity or not all(0 <= i < dim for i in key):
                raise InputError(f"bad bracket index {key} for dim {dim}")
            sv = _sparse(out)
            if any(not 0 <= l < dim for l in sv):
                raise InputError(f"bracket output index out of range at {key}")
            if sv:
                clean[key] = sv
        self.dim = dim
        self.table = clean
        self.name = name

    def _br(self, *args: SVec) -> SVec:
        out: SVec = {}
        table = self.table
        for idx in itertools.product(*(a.items() for a in args)):
            key = tuple(i for i, _ in idx)
            val = table.get(key)
            if val is None:
                continue
            c = ONE
            for _, x in idx:
                c *= x
            _axpy(out, c, val)
        return out

    def _basis_br(self, *idx: int) -> SVec:
        return self.table.get(tuple(idx), {})

    def bracket(self, *vecs) -> Vec:
        if len(vecs) != self.arity:
            raise InputError(f"{self.kind} bracket takes {self.arity} arguments")
        for v in vecs:
            if len(v) != self.dim:
                raise ShapeMismatch(f"vector of length {len(v)} in dim-{self.dim} algebra")
        return _dense(self._br(*(_sparse(v) for v in vecs)), self.dim)

    def basis(self, i: int) -> Vec:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    @property
    def c(self):
        """Dense structure constants: ``c[i][j]([k])[l]``."""
        def build(prefix):
            if len(prefix) == self.arity:
                return _dense(self.table.get(tuple(prefix), {}), self.dim)
            return tuple(build(prefix + [i]) for i in range(self.dim))
        return build([])

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((type(self).__name__, self.dim, frozenset((k, frozenset(v.items())) for k, v in self.table.items())))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"{type(self).__name__}{label}(dim={self.dim}, nonzero={len(self.table)})"


class LeibnizAlgebra(_Algebra):
    """Right Leibniz algebra: [[x,y],z] = [[x,z],y] + [x,[y,z]]."""

    arity = 2
    kind = "Leibniz"


class ThreeLeibnizAlgebra(_Algebra):
    """Right 3-Leibniz algebra: right multiplications are derivations of the bracket."""

    arity = 3
    kind = "3-Leibniz"


@dataclass(frozen=True)
class CentralWitness:
    element: Vec


@dataclass(frozen=True)
class Cocycle2:
    base: LeibnizAlgebra
    omega: Mat

    def __post_init__(self):
        report = check_2cocycle(self.base, self.omega)
        if not report.passed:
            raise NotACocycle(f"omega is not a 2-cocycle: {report.first}", report)


# ---------------------------------------------------------------- axioms

def verify_leibniz(alg: LeibnizAlgebra) -> VerificationReport:
    rep = VerificationReport("Leibniz")
    n = alg.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = alg._br(alg._basis_br(i, j), {k: ONE})
        rhs = alg._br(alg._basis_br(i, k), {j: ONE})
        _axpy(rhs, ONE, alg._br({i: ONE}, alg._basis_br(j, k)))
        res = _sub(lhs, rhs)
        rep.checked += 1
        if res:
            rep.fail(_one(i, j, k), f"residual {format_vector(_dense(res, n))}")
    return rep


def _three_leibniz_slice(alg: ThreeLeibnizAlgebra, firsts: Sequence[int]):
    n = alg.dim
    fails = []
    count = 0
    for x1 in firsts:
        for x2, x3, y1, y2 in itertools.product(range(n), repeat=4):
            count += 1
            lhs = alg._br(alg._basis_br(x1, x2, x3), {y1: ONE}, {y2: ONE})
            rhs = alg._br(alg._basis_br(x1, y1, y2), {x2: ONE}, {x3: ONE})
            _axpy(rhs, ONE, alg._br({x1: ONE}, alg._basis_br(x2, y1, y2), {x3: ONE}))
            _axpy(rhs, ONE, alg._br({x1: ONE}, {x2: ONE}, alg._basis_br(x3, y1, y2)))
            res = _sub(lhs, rhs)
            if res:
                fails.append((_one(x1, x2, x3, y1, y2), f"residual {format_vector(_dense(res, n))}"))
    return count, fails


def verify_3_leibniz(alg: ThreeLeibnizAlgebra) -> VerificationReport:
    """Check the fundamental identity on all n^5 basis tuples."""
    rep = VerificationReport("3-Leibniz")
    n = alg.dim
    w = min(workers(), n) if n else 1
    if w > 1:
        chunks = [list(range(n))[i::w] for i in range(w)]
        with ProcessPoolExecutor(max_workers=w) as pool:
            results = list(pool.map(_three_leibniz_slice, [alg] * w, chunks))
    else:
        results = [_three_leibniz_slice(alg, range(n))]
    fails = []
    for count, fs in results:
        rep.checked += count
        fails.extend(fs)
    for witness, detail in sorted(fails):
        rep.fail(witness, detail)
    return rep


def verify(alg) -> VerificationReport:
    if isinstance(alg, ThreeLeibnizAlgebra):
        return verify_3_leibniz(alg)
    if isinstance(alg, LeibnizAlgebra):
        return verify_leibniz(alg)
    raise InputError(f"not an algebra: {alg!r}")


def skew_symmetry_check(alg: ThreeLeibnizAlgebra) -> VerificationReport:
    """Is the ternary bracket skew-symmetric (i.e. a 3-Lie bracket)?"""
    rep = VerificationReport("3-Lie skew-symmetry")
    n = alg.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        base = alg._basis_br(i, j, k)
        for a, b, c in ((j, i, k), (i, k, j), (k, j, i)):
            rep.checked += 1
            s = dict(base)
            _axpy(s, ONE, alg._basis_br(a, b, c))
            if s:
                rep.fail(_one(i, j, k), f"[e{i+1},e{j+1},e{k+1}] + [e{a+1},e{b+1},e{c+1}] = {format_vector(_dense(s, n))}")
    return rep


# ---------------------------------------------------------------- constructions

def fundamental_leibniz(alg: ThreeLeibnizAlgebra) -> LeibnizAlgebra:
    """Leibniz bracket on L⊗L: {x1⊗x2, y1⊗y2} = [x1,y1,y2]⊗x2 + x1⊗[x2,y1,y2]."""
    n = alg.dim
    table = {}
    for x1, x2, y1, y2 in itertools.product(range(n), repeat=4):
        out: SVec = {}
        for l, c in alg._basis_br(x1, y1, y2).items():
            _axpy(out, c, {l * n + x2: ONE})
        for l, c in alg._basis_br(x2, y1, y2).items():
            _axpy(out, c, {x1 * n + l: ONE})
        if out:
            table[(x1 * n + x2, y1 * n + y2)] = out
    return LeibnizAlgebra(n * n, table, name=f"fundamental({alg.name})" if alg.name else "fundamental")


def leibniz_to_3leibniz(alg: LeibnizAlgebra) -> ThreeLeibnizAlgebra:
    """[x,y,z] = [x,[y,z]]."""
    n = alg.dim
    table = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        out = alg._br({i: ONE}, alg._basis_br(j, k))
        if out:
            table[(i, j, k)] = out
    return ThreeLeibnizAlgebra(n, table, name=f"ternary({alg.name})" if alg.name else "")


def is_central(alg, v) -> bool:
    sv = _sparse(v)
    if len(v) != alg.dim:
        raise ShapeMismatch(f"vector of length {len(v)} in dim-{alg.dim} algebra")
    n = alg.dim
    for rest in itertools.product(range(n), repeat=alg.arity - 1):
        others = [{i: ONE} for i in rest]
        for slot in range(alg.arity):
            args = others[:slot] + [sv] + others[slot:]
            if alg._br(*args):
                return False
    return True


def _omega(omega: Mat, x: SVec, y: SVec) -> Fraction:
    total = ZERO
    for i, a in x.items():
        for j, b in y.items():
            total += a * b * omega[i, j]
    return total


def check_2cocycle(alg: LeibnizAlgebra, omega: Mat) -> VerificationReport:
    """ω([x,y],z) − ω([x,z],y) − ω(x,[y,z]) = 0 on all basis triples."""
    n = alg.dim
    if omega.shape != (n, n):
        raise ShapeMismatch(f"omega must be {n}x{n}, got {omega.shape}")
    rep = VerificationReport("2-cocycle")
    for i, j, k in itertools.product(range(n), repeat=3):
        val = (_omega(omega, alg._basis_br(i, j), {k: ONE})
               - _omega(omega, alg._basis_br(i, k), {j: ONE})
               - _omega(omega, {i: ONE}, alg._basis_br(j, k)))
        rep.checked += 1
        if val:
            rep.fail(_one(i, j, k), f"defect {val}")
    return rep


def coboundary(alg: LeibnizAlgebra, f) -> Mat:
    """Degree-one coboundary (∂f)(x, y) = −f([x, y])."""
    f = vector(f)
    if len(f) != alg.dim:
        raise ShapeMismatch("f must have one value per basis vector")
    n = alg.dim
    data = {}
    for (i, j), out in alg.table.items():
        data[(i, j)] = -sum((c * f[l] for l, c in out.items()), ZERO)
    return Mat(n, n, data)


def central_extension(alg: LeibnizAlgebra, omega, check: bool = True):
    """K⊕E with [(a,x),(b,y)] = (ω(x,y), [x,y]); index 0 is the K summand.

    Returns ``(algebra, CentralWitness)``.  With ``check=False`` the bracket is
    built even when ω is not a cocycle (the result is then not Leibniz).
    """
    if isinstance(omega, Cocycle2):
        omega = omega.omega
    n = alg.dim
    if omega.shape != (n, n):
        raise ShapeMismatch(f"omega must be {n}x{n}, got {omega.shape}")
    if check:
        rep = check_2cocycle(alg, omega)
        if not rep.passed:
            raise NotACocycle(f"omega is not a 2-cocycle: {rep.first}", rep)
    table = {}
    for i, j in itertools.product(range(n), repeat=2):
        out = {l + 1: c for l, c in alg._basis_br(i, j).items()}
        if omega[i, j]:
            out[0] = omega[i, j]
        if out:
            table[(i + 1, j + 1)] = out
    ext = LeibnizAlgebra(n + 1, table, name=f"ext({alg.name})" if alg.name else "ext")
    return ext, CentralWitness(ext.basis(0))


def trivial_central_extension_3(alg: ThreeLeibnizAlgebra):
    """K⊕L with [(a,x),(b,y),(c,z)] = (0, [x,y,z]); returns ``(algebra, CentralWitness)``."""
    table = {
        tuple(i + 1 for i in key): {l + 1: c for l, c in out.items()}
        for key, out in alg.table.items()
    }
    ext = ThreeLeibnizAlgebra(alg.dim + 1, table, name=f"ext({alg.name})" if alg.name else "ext")
    return ext, CentralWitness(ext.basis(0))


def ad_right(alg: LeibnizAlgebra, y) -> Mat:
    """Matrix of x ↦ [x, y]."""
    sy = _sparse(y)
    return Mat.from_columns(alg.dim, [alg._br({j: ONE}, sy) for j in range(alg.dim)])


def ad_right3(alg: ThreeLeibnizAlgebra, y, z) -> Mat:
    """Matrix of x ↦ [x, y, z]."""
    sy, sz = _sparse(y), _sparse(z)
    return Mat.from_columns(alg.dim, [alg._br({j: ONE}, sy, sz) for j in range(alg.dim)])


def verify_derivation(alg: ThreeLeibnizAlgebra, d: Mat) -> VerificationReport:
    n = alg.dim
    if d.shape != (n, n):
        raise ShapeMismatch(f"derivation must be {n}x{n}")
    cols = [d.column(i) for i in range(n)]
    rep = VerificationReport("derivation")
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = d.apply_sparse(alg._basis_br(i, j, k))
        rhs = alg._br(cols[i], {j: ONE}, {k: ONE})
        _axpy(rhs, ONE, alg._br({i: ONE}, cols[j], {k: ONE}))
        _axpy(rhs, ONE, alg._br({i: ONE}, {j: ONE}, cols[k]))
        rep.checked += 1
        res = _sub(lhs, rhs)
        if res:
            rep.fail(_one(i, j, k), f"residual {format_vector(_dense(res, n))}")
    return rep


def verify_hom(f: Mat, src, dst) -> VerificationReport:
    """f[x,...] = [f x, ...] on all basis tuples of ``src``."""
    if src.arity != dst.arity:
        raise InputError("source and target brackets have different arity")
    if f.shape != (dst.dim, src.dim):
        raise ShapeMismatch(f"map must be {dst.dim}x{src.dim}, got {f.shape}")
    cols = [f.column(i) for i in range(src.dim)]
    rep = VerificationReport("homomorphism")
    for idx in itertools.product(range(src.dim), repeat=src.arity):
        lhs = f.apply_sparse(src._basis_br(*idx))
        rhs = dst._br(*(cols[i] for i in idx))
        rep.checked += 1
        res = _sub(lhs, rhs)
        if res:
            rep.fail(_one(*idx), f"residual {format_vector(_dense(res, dst.dim))}")
    return rep


def embedding_s(alg: ThreeLeibnizAlgebra) -> Mat:
    """s(a, x⊗y) = a(1,0)⊗(1,0) + (0,x)⊗(0,y), as a (n+1)^2 × (1+n^2) matrix."""
    n = alg.dim
    m = n + 1
    data = {(0, 0): ONE}
    for a, b in itertools.product(range(n), repeat=2):
        data[((a + 1) * m + (b + 1), 1 + a * n + b)] = ONE
    return Mat(m * m, 1 + n * n, data)


# ---------------------------------------------------------------- builders

def abelian(dim: int, arity: int = 2):
    cls = LeibnizAlgebra if arity == 2 else ThreeLeibnizAlgebra
    return cls(dim, {}, name=f"abelian{dim}")


def two_dim_leibniz(variant: int) -> LeibnizAlgebra:
    """The four 2-dimensional Leibniz algebras E1..E4 over the basis e1, e2."""
    tables = {
        1: {},
        2: {(0, 1): {1: 1}, (1, 0): {1: -1}},
        3: {(1, 1): {0: 1}},
        4: {(0, 1): {0: 1}, (1, 1): {0: 1}},
    }
    if variant not in tables:
        raise UnknownVariant(f"2-dimensional Leibniz variant must be 1..4, got {variant!r}")
    return LeibnizAlgebra(2, tables[variant], name=f"E{variant}")


def nilpotent3() -> ThreeLeibnizAlgebra:
    """[e2,e3,e3] = e1, [e3,e3,e3] = e2."""
    return ThreeLeibnizAlgebra(3, {(1, 2, 2): {0: 1}, (2, 2, 2): {1: 1}}, name="nilpotent3")


def final_3leibniz_2d() -> ThreeLeibnizAlgebra:
    """[e1,e1,e2] = e2 = −[e1,e2,e1]."""
    return ThreeLeibnizAlgebra(2, {(0, 0, 1): {1: 1}, (0, 1, 0): {1: -1}}, name="final2d")


def omni_lie_leibniz(dim_v: int) -> LeibnizAlgebra:
    """Omni-Lie algebra gl(V)⊕V with {(A,u),(B,v)} = (−[A,B], Bu).

    Basis: matrix units E_ab at index a*m+b, then V's basis at m^2 + a.
    """
    m = dim_v
    if m < 1:
        raise UnknownVariant("omni-Lie needs dim V >= 1")
    n = m * m + m

    def unit(a, b):
        return a * m + b

    table: dict[tuple[int, int], SVec] = {}
    # −[E_ab, E_cd] = −δ_bc E_ad + δ_da E_cb
    for a, b, c, d in itertools.product(range(m), repeat=4):
        out: SVec = {}
        if b == c:
            _axpy(out, -ONE, {unit(a, d): ONE})
        if d == a:
            _axpy(out, ONE, {unit(c, b): ONE})
        if out:
            table[(unit(a, b), unit(c, d))] = out
    # (0,u) with (B,0): B u;  E_cd e_a = δ_da e_c
    for a, c, d in itertools.product(range(m), repeat=3):
        if d == a:
            table[(m * m + a, unit(c, d))] = {m * m + c: ONE}
    return LeibnizAlgebra(n, table, name=f"omni{dim_v}")


def omni_lie(dim_v: int) -> ThreeLeibnizAlgebra:
    """Ternary omni-Lie bracket [(A,u),(B,v),(C,w)] = ([A,[B,C]], −[B,C]u)."""
    alg = leibniz_to_3leibniz(omni_lie_leibniz(dim_v))
    alg.name = f"omni3_{dim_v}"
    return alg


# e_i e_j for i (row), j (column) in 0..7; entries are signed basis labels
OCTONION_TABLE = (
    "e0 e1 e2 e3 e4 e5 e6 e7",
    "e1 -e0 e4 e7 -e2 e6 -e5 -e3",
    "e2 -e4 -e0 e5 e1 -e3 e7 -e6",
    "e3 -e7 -e5 -e0 e6 e2 -e4 e1",
    "e4 e2 -e1 -e6 -e0 e7 e3 -e5",
    "e5 -e6 e3 -e2 -e7 -e0 e1 e4",
    "e6 e5 -e7 e4 -e3 -e1 -e0 e2",
    "e7 e3 e6 -e1 e5 -e4 -e2 -e0",
)


def octonion_product_table() -> dict[tuple[int, int], SVec]:
    table = {}
    for i, row in enumerate(OCTONION_TABLE):
        for j, cell in enumerate(row.split()):
            sign = -1 if cell.startswith("-") else 1
            table[(i, j)] = {int(cell.lstrip("-")[1:]): Fraction(sign)}
    return table


def octonion_algebra() -> LeibnizAlgebra:
    """The (non-associative) octonion product, carried as a binary table.

    Used only as a multiplication table; it is not a Leibniz algebra.
    """
    return LeibnizAlgebra(8, octonion_product_table(), name="octonion-product")


def octonion_3leibniz() -> ThreeLeibnizAlgebra:
    """[x,y,z] = z(yx) − y(zx) + (xy)z − (xz)y + (yx)z − y(xz) on the octonions."""
    O = octonion_algebra()

    def mul(a: SVec, b: SVec) -> SVec:
        return O._br(a, b)

    table = {}
    for i, j, k in itertools.product(range(8), repeat=3):
        x, y, z = {i: ONE}, {j: ONE}, {k: ONE}
        out: SVec = {}
        _axpy(out, ONE, mul(z, mul(y, x)))
        _axpy(out, -ONE, mul(y, mul(z, x)))
        _axpy(out, ONE, mul(mul(x, y), z))
        _axpy(out, -ONE, mul(mul(x, z), y))
        _axpy(out, ONE, mul(mul(y, x), z))
        _axpy(out, -ONE, mul(y, mul(x, z)))
        if out:
            table[(i, j, k)] = out
    return ThreeLeibnizAlgebra(8, table, name="octonion3")
