"""Finite-dimensional coalgebras with linear and trilinear rack operations.

Every structure is a matrix: Δ is n²×n, ε is 1×n, a binary operation is
n×n², a ternary one n×n³.  Axioms are bilinear (trilinear) identities, so
they are checked on basis tuples, with Sweedler sums expanded from the
columns of Δ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebras import LeibnizAlgebra, ThreeLeibnizAlgebra
from .errors import InputError, NotCocommutative, ShapeMismatch
from .linalg import ONE, ZERO, Mat, first_difference, format_vector, kron, permutation_operator, swap_operator
from .racks import Finite3Rack, FiniteRack, threerack_to_rack
from .report import VerificationReport

SVec = dict


def _axpy(acc: SVec, c: Fraction, v: SVec) -> None:
    for i, x in v.items():
        y = acc.get(i, ZERO) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)


def _dense(sv: SVec, n: int):
    return tuple(sv.get(i, ZERO) for i in range(n))


class MultiOp:
    """A k-linear map C^{⊗k} → C given by an n × n^k matrix, evaluated sparsely."""

    def __init__(self, mat: Mat, n: int, arity: int):
        if mat.shape != (n, n ** arity):
            raise ShapeMismatch(f"{arity}-ary operation must be {n}x{n ** arity}, got {mat.shape}")
        self.n, self.arity = n, arity
        self._cols = [mat.column(j) for j in range(n ** arity)]

    def basis(self, *idx: int) -> SVec:
        flat = 0
        for i in idx:
            flat = flat * self.n + i
        return self._cols[flat]

    def __call__(self, *args: SVec) -> SVec:
        out: SVec = {}
        for combo in itertools.product(*(a.items() for a in args)):
            c = ONE
            flat = 0
            for i, x in combo:
                c *= x
                flat = flat * self.n + i
            col = self._cols[flat]
            if col:
                _axpy(out, c, col)
        return out


class Coalgebra:
    """Coalgebra with Δ (n²×n, column j = Δ(e_j)) and ε (1×n)."""

    def __init__(self, dim: int, delta: Mat, counit: Mat, name: str = ""):
        if delta.shape != (dim * dim, dim):
            raise ShapeMismatch(f"delta must be {dim * dim}x{dim}, got {delta.shape}")
        if counit.shape != (1, dim):
            raise ShapeMismatch(f"counit must be 1x{dim}, got {counit.shape}")
        self.dim, self.delta, self.counit, self.name = dim, delta, counit, name
        n = dim
        self._d2 = [[(divmod(r, n), c) for r, c in sorted(delta.column(j).items())] for j in range(n)]
        self._eps = [counit[0, j] for j in range(n)]
        self._d3 = None

    def coproduct(self, j: int) -> list[tuple[tuple[int, int], Fraction]]:
        return self._d2[j]

    def coproduct3(self, j: int) -> list[tuple[tuple[int, int, int], Fraction]]:
        """(Δ⊗id)Δ(e_j) as ``[((a, b, c), coeff)]``."""
        if self._d3 is None:
            d3 = []
            for k in range(self.dim):
                acc: dict = {}
                for (a, b), c1 in self._d2[k]:
                    for (p, q), c2 in self._d2[a]:
                        key = (p, q, b)
                        acc[key] = acc.get(key, ZERO) + c1 * c2
                d3.append(sorted((key, v) for key, v in acc.items() if v))
            self._d3 = d3
        return self._d3[j]

    def eps(self, j: int) -> Fraction:
        return self._eps[j]

    def eps_vec(self, v: SVec) -> Fraction:
        return sum((self._eps[i] * x for i, x in v.items()), ZERO)

    def __eq__(self, other):
        return isinstance(other, Coalgebra) and (self.dim, self.delta, self.counit) == (other.dim, other.delta, other.counit)

    def __repr__(self):
        return f"Coalgebra({self.name or ''} dim={self.dim})"


def _mat_report(name: str, lhs: Mat, rhs: Mat, unit: str = "cells") -> VerificationReport:
    rep = VerificationReport(name, checked=lhs.rows * lhs.cols, unit=unit)
    cell = first_difference(lhs, rhs)
    if cell is not None:
        rep.fail(cell, f"{lhs[cell]} != {rhs[cell]}")
    return rep


def verify_coalgebra(c: Coalgebra) -> VerificationReport:
    n = c.dim
    eye = Mat.identity(n)
    rep = VerificationReport("coalgebra", unit="cells")
    for sub in (
        _mat_report("coassociativity", kron(c.delta, eye) @ c.delta, kron(eye, c.delta) @ c.delta),
        _mat_report("left counit", kron(c.counit, eye) @ c.delta, eye),
        _mat_report("right counit", kron(eye, c.counit) @ c.delta, eye),
    ):
        rep.checked += sub.checked
        for f in sub.failures:
            rep.fail(f.witness, f"[{sub.name}] {f.detail}")
    return rep


def is_cocommutative(c: Coalgebra) -> bool:
    return swap_operator(c.dim) @ c.delta == c.delta if c.dim else True


def grouplike_coalgebra(n: int) -> Coalgebra:
    """K[X]: Δx = x⊗x, ε(x) = 1."""
    if n < 1:
        raise InputError("grouplike coalgebra needs n >= 1")
    delta = Mat(n * n, n, {(i * n + i, i): ONE for i in range(n)})
    return Coalgebra(n, delta, Mat(1, n, {(0, i): ONE for i in range(n)}), name=f"K[{n}]")


def primitive_coalgebra(dim_e: int) -> Coalgebra:
    """K⊕E with index 0 = 1: Δ1 = 1⊗1, Δx = x⊗1 + 1⊗x, ε(1) = 1, ε(x) = 0."""
    n = dim_e + 1
    data = {(0, 0): ONE}
    for i in range(1, n):
        data[(i * n, i)] = ONE
        data[(i, i)] = ONE
    return Coalgebra(n, Mat(n * n, n, data), Mat(1, n, {(0, 0): ONE}), name=f"K+{dim_e}")


def tensor_coalgebra(c: Coalgebra, d: Coalgebra) -> Coalgebra:
    """Δ(x⊗y) = (x1⊗y1)⊗(x2⊗y2), ε(x⊗y) = ε(x)ε(y)."""
    mid = permutation_operator((c.dim, c.dim, d.dim, d.dim), (0, 2, 1, 3))
    delta = mid @ kron(c.delta, d.delta)
    counit = kron(c.counit, d.counit)
    name = f"({c.name})⊗({d.name})" if c.name or d.name else ""
    return Coalgebra(c.dim * d.dim, delta, counit, name=name)


def coalgebra_morphism_check(f: Mat, src: Coalgebra, dst: Coalgebra) -> VerificationReport:
    """Δ'∘f = (f⊗f)∘Δ and ε'∘f = ε."""
    if f.shape != (dst.dim, src.dim):
        raise ShapeMismatch(f"map must be {dst.dim}x{src.dim}, got {f.shape}")
    a = _mat_report("coproduct", dst.delta @ f, kron(f, f) @ src.delta)
    b = _mat_report("counit", dst.counit @ f, src.counit)
    rep = VerificationReport("coalgebra morphism", unit="cells")
    for sub in (a, b):
        rep.checked += sub.checked
        for fl in sub.failures:
            rep.fail(fl.witness, f"[{sub.name}] {fl.detail}")
    return rep


# ---------------------------------------------------------------- rack structures

@dataclass
class LinearRackStruct:
    coalg: Coalgebra
    op: Mat
    tilde: Mat

    def __post_init__(self):
        n = self.coalg.dim
        self.left = MultiOp(self.op, n, 2)
        self.right_inv = MultiOp(self.tilde, n, 2)


@dataclass
class TrilinearRackStruct:
    coalg: Coalgebra
    t: Mat
    ttilde: Mat

    def __post_init__(self):
        n = self.coalg.dim
        self.T = MultiOp(self.t, n, 3)
        self.Tt = MultiOp(self.ttilde, n, 3)


def _e(i: int) -> SVec:
    return {i: ONE}


def _fmt(sv: SVec, n: int) -> str:
    return format_vector(_dense(sv, n))


def _morphism_report(name: str, c: Coalgebra, op: MultiOp, arity: int) -> VerificationReport:
    """Δ(op(x..)) = Σ op(x1..)⊗op(x2..) and ε(op(x..)) = Π ε(x)."""
    rep = VerificationReport(name)
    n = c.dim
    for idx in itertools.product(range(n), repeat=arity):
        rep.checked += 1
        out = op.basis(*idx)
        lhs: dict = {}
        for i, x in out.items():
            for (a, b), d in c.coproduct(i):
                lhs[(a, b)] = lhs.get((a, b), ZERO) + x * d
        rhs: dict = {}
        for combo in itertools.product(*(c.coproduct(i) for i in idx)):
            coeff = ONE
            for _, d in combo:
                coeff *= d
            left = op(*(_e(ab[0]) for ab, _ in combo))
            if not left:
                continue
            right = op(*(_e(ab[1]) for ab, _ in combo))
            for a, x in left.items():
                for b, y in right.items():
                    rhs[(a, b)] = rhs.get((a, b), ZERO) + coeff * x * y
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            rep.fail(idx, "coproduct not preserved")
        eps_prod = ONE
        for i in idx:
            eps_prod *= c.eps(i)
        if c.eps_vec(out) != eps_prod:
            rep.fail(idx, f"counit not preserved: {c.eps_vec(out)} != {eps_prod}")
    return rep


def _self_distributive_report(name: str, c: Coalgebra, op: MultiOp) -> VerificationReport:
    """(u◁v)◁w = Σ (u◁w1)◁(v◁w2) on basis triples."""
    rep = VerificationReport(name)
    n = c.dim
    for u, v, w in itertools.product(range(n), repeat=3):
        rep.checked += 1
        lhs = op(op.basis(u, v), _e(w))
        rhs: SVec = {}
        for (w1, w2), d in c.coproduct(w):
            _axpy(rhs, d, op(op.basis(u, w1), op.basis(v, w2)))
        if lhs != rhs:
            rep.fail((u, v, w), f"{_fmt(lhs, n)} != {_fmt(rhs, n)}")
    return rep


def verify_linear_rack(lr: LinearRackStruct) -> VerificationReport:
    c = lr.coalg
    n = c.dim
    reps = [
        _morphism_report("op is a coalgebra morphism", c, lr.left, 2),
        _morphism_report("tilde is a coalgebra morphism", c, lr.right_inv, 2),
        _self_distributive_report("self-distributivity", c, lr.left),
        _self_distributive_report("tilde self-distributivity", c, lr.right_inv),
    ]
    inv = VerificationReport("twist inverse")
    for u, v in itertools.product(range(n), repeat=2):
        inv.checked += 1
        target = {u: c.eps(v)} if c.eps(v) else {}
        a: SVec = {}
        b: SVec = {}
        for (v1, v2), d in c.coproduct(v):
            _axpy(a, d, lr.right_inv(lr.left.basis(u, v2), _e(v1)))
            _axpy(b, d, lr.left(lr.right_inv.basis(u, v2), _e(v1)))
        if a != target:
            inv.fail((u, v), f"(u◁v2)◁~v1 = {_fmt(a, n)}, expected {_fmt(target, n)}")
        if b != target:
            inv.fail((u, v), f"(u◁~v2)◁v1 = {_fmt(b, n)}, expected {_fmt(target, n)}")
    reps.append(inv)
    out = VerificationReport("linear rack")
    for r in reps:
        out.checked += r.checked
        for f in r.failures:
            out.fail(f.witness, f"[{r.name}] {f.detail}")
    return out


def verify_trilinear_rack(tr: TrilinearRackStruct) -> VerificationReport:
    c = tr.coalg
    n = c.dim
    reps = [
        _morphism_report("T is a coalgebra morphism", c, tr.T, 3),
        _morphism_report("T~ is a coalgebra morphism", c, tr.Tt, 3),
        _tsd_report("ternary self-distributivity", c, tr.T),
        _tsd_report("T~ ternary self-distributivity", c, tr.Tt),
    ]
    rev = VerificationReport("reversibility")
    for x, y, z in itertools.product(range(n), repeat=3):
        rev.checked += 1
        e = c.eps(y) * c.eps(z)
        target = {x: e} if e else {}
        a: SVec = {}
        b: SVec = {}
        for (y1, y2), dy in c.coproduct(y):
            for (z1, z2), dz in c.coproduct(z):
                _axpy(a, dy * dz, tr.Tt(tr.T.basis(x, y2, z2), _e(z1), _e(y1)))
                _axpy(b, dy * dz, tr.T(tr.Tt.basis(x, y2, z2), _e(z1), _e(y1)))
        if a != target:
            rev.fail((x, y, z), f"T~(T(x,y2,z2),z1,y1) = {_fmt(a, n)}, expected {_fmt(target, n)}")
        if b != target:
            rev.fail((x, y, z), f"T(T~(x,y2,z2),z1,y1) = {_fmt(b, n)}, expected {_fmt(target, n)}")
    reps.append(rev)
    out = VerificationReport("trilinear rack")
    for r in reps:
        out.checked += r.checked
        for f in r.failures:
            out.fail(f.witness, f"[{r.name}] {f.detail}")
    return out


def _tsd_report(name: str, c: Coalgebra, T: MultiOp) -> VerificationReport:
    """T(T(x,y,z),u,v) = Σ T(T(x,u1,v1), T(y,u2,v2), T(z,u3,v3)) on basis 5-tuples."""
    rep = VerificationReport(name)
    n = c.dim
    for x, y, z, u, v in itertools.product(range(n), repeat=5):
        rep.checked += 1
        lhs = T(T.basis(x, y, z), _e(u), _e(v))
        rhs: SVec = {}
        for (u1, u2, u3), du in c.coproduct3(u):
            for (v1, v2, v3), dv in c.coproduct3(v):
                a = T.basis(x, u1, v1)
                if not a:
                    continue
                b = T.basis(y, u2, v2)
                if not b:
                    continue
                cc = T.basis(z, u3, v3)
                if not cc:
                    continue
                _axpy(rhs, du * dv, T(a, b, cc))
        if lhs != rhs:
            rep.fail((x, y, z, u, v), f"{_fmt(lhs, n)} != {_fmt(rhs, n)}")
    return rep


def verify_rack_struct(s) -> VerificationReport:
    if isinstance(s, TrilinearRackStruct):
        return verify_trilinear_rack(s)
    if isinstance(s, LinearRackStruct):
        return verify_linear_rack(s)
    raise InputError(f"not a rack structure: {s!r}")


# ---------------------------------------------------------------- builders

def leibniz_linear_rack(e: LeibnizAlgebra) -> LinearRackStruct:
    """Linear rack on K⊕E: 1◁1 = 1, 1◁x = 0, x◁1 = x, x◁y = [x,y]; ◁~ negates the bracket."""
    n = e.dim + 1
    op = {(0, 0): ONE}
    tl = {(0, 0): ONE}
    for i in range(1, n):
        op[(i, i * n)] = ONE
        tl[(i, i * n)] = ONE
    for (i, j), out in e.table.items():
        for l, c in out.items():
            op[(l + 1, (i + 1) * n + j + 1)] = c
            tl[(l + 1, (i + 1) * n + j + 1)] = -c
    return LinearRackStruct(primitive_coalgebra(e.dim), Mat(n, n * n, op), Mat(n, n * n, tl))


def linearize_rack(r: FiniteRack) -> LinearRackStruct:
    """K[X] with ◁ extended linearly; x ◁~ y is the inverse permutation of ·◁y."""
    n = r.size
    inv = [[0] * n for _ in range(n)]
    for y in range(n):
        col = [r.table[x][y] for x in range(n)]
        if sorted(col) != list(range(n)):
            raise InputError(f"·◁{y} is not a permutation; no inverse operation")
        for x, w in enumerate(col):
            inv[w][y] = x
    op = Mat(n, n * n, {(r.table[x][y], x * n + y): ONE for x in range(n) for y in range(n)})
    tl = Mat(n, n * n, {(inv[x][y], x * n + y): ONE for x in range(n) for y in range(n)})
    return LinearRackStruct(grouplike_coalgebra(n), op, tl)


def linearize_3rack(t: Finite3Rack) -> TrilinearRackStruct:
    """K[X] with T extended linearly; T~(w, a, b) = T(·, b, a)⁻¹(w)."""
    n = t.size
    T = t.table
    tt = {}
    for a, b in itertools.product(range(n), repeat=2):
        col = [T[x][b][a] for x in range(n)]
        if sorted(col) != list(range(n)):
            raise InputError(f"T(·,{b},{a}) is not a permutation; no inverse operation")
        for x, w in enumerate(col):
            tt[(x, (w * n + a) * n + b)] = ONE
    op = Mat(n, n ** 3, {(T[x][y][z], (x * n + y) * n + z): ONE for x, y, z in itertools.product(range(n), repeat=3)})
    return TrilinearRackStruct(grouplike_coalgebra(n), op, Mat(n, n ** 3, tt))


def threeleibniz_trilinear_rack(l: ThreeLeibnizAlgebra) -> TrilinearRackStruct:
    """On K⊕L: T((a,x),(b,y),(c,z)) = (abc, bcx + [x,y,z]); T~ = (abc, bcx − [x,z,y])."""
    n = l.dim + 1

    def flat(i, j, k):
        return (i * n + j) * n + k

    t = {(0, flat(0, 0, 0)): ONE}
    tt = {(0, flat(0, 0, 0)): ONE}
    for i in range(1, n):
        t[(i, flat(i, 0, 0))] = ONE
        tt[(i, flat(i, 0, 0))] = ONE
    for (i, j, k), out in l.table.items():
        for m, c in out.items():
            t[(m + 1, flat(i + 1, j + 1, k + 1))] = c
            # T~((0,x),(0,z'),(0,y')) uses −[x, y', z']: the bracket at (i, j, k) lands at (i, k, j)
            tt[(m + 1, flat(i + 1, k + 1, j + 1))] = -c
    return TrilinearRackStruct(primitive_coalgebra(l.dim), Mat(n, n ** 3, t), Mat(n, n ** 3, tt))


def trilinear_to_linear(tr: TrilinearRackStruct) -> LinearRackStruct:
    """On C⊗C: (u⊗v)◁(m⊗n) = Σ T(u,m1,n1)⊗T(v,m2,n2); ◁~ uses T~(u,n1,m1)⊗T~(v,n2,m2)."""
    c = tr.coalg
    if not is_cocommutative(c):
        raise NotCocommutative("trilinear to linear passage needs a cocommutative coalgebra")
    d = c.dim
    N = d * d
    op: dict = {}
    tl: dict = {}
    for u, v, m, n_ in itertools.product(range(d), repeat=4):
        col = (u * d + v) * N + (m * d + n_)
        for (m1, m2), dm in c.coproduct(m):
            for (n1, n2), dn in c.coproduct(n_):
                for target, f, args in (
                    (op, tr.T, ((u, m1, n1), (v, m2, n2))),
                    (tl, tr.Tt, ((u, n1, m1), (v, n2, m2))),
                ):
                    left = f.basis(*args[0])
                    if not left:
                        continue
                    right = f.basis(*args[1])
                    for a, x in left.items():
                        for b, y in right.items():
                            key = (a * d + b, col)
                            target[key] = target.get(key, ZERO) + dm * dn * x * y
    tc = tensor_coalgebra(c, c)
    return LinearRackStruct(tc, Mat(N, N * N, op), Mat(N, N * N, tl))


def varphi_check(t: Finite3Rack) -> VerificationReport:
    """φ: K[X×X] → K[X]⊗K[X], (x1,x2) ↦ x1⊗x2, is a coalgebra and linear rack morphism."""
    n = t.size
    src = linearize_rack(threerack_to_rack(t))
    dst = trilinear_to_linear(linearize_3rack(t))
    # pair (a,b) is index a*n+b on both sides, so φ is the identity matrix
    phi = Mat.identity(n * n)
    rep = VerificationReport("varphi square", unit="cells")
    for sub in (
        coalgebra_morphism_check(phi, src.coalg, dst.coalg),
        _mat_report("rack morphism", phi @ src.op, dst.op @ kron(phi, phi)),
    ):
        rep.checked += sub.checked
        for f in sub.failures:
            rep.fail(f.witness, f"[{sub.name}] {f.detail}")
    return rep

