"""Finite racks and 3-racks, set-theoretic braid solutions, and exp-racks on nilpotent algebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebras import (
    LeibnizAlgebra,
    ThreeLeibnizAlgebra,
    ad_right,
    ad_right3,
    fundamental_leibniz,
)
from .errors import InputError, NotNilpotent
from .linalg import Mat, Vec, exp_nilpotent, format_vector, vec_tensor, vector
from .report import VerificationReport


def _check_index(v, n, where):
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
        raise InputError(f"table entry {v!r} at {where} is not an element of 0..{n - 1}")


@dataclass(frozen=True)
class FiniteRack:
    """Binary operation table on {0..n-1}: ``table[x][y] = x ◁ y``."""

    size: int
    table: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.table)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise InputError(f"rack table must be {self.size}x{self.size}")
        for x, r in enumerate(rows):
            for y, v in enumerate(r):
                _check_index(v, self.size, (x, y))
        object.__setattr__(self, "table", rows)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def with_entry(self, x: int, y: int, value: int) -> "FiniteRack":
        rows = [list(r) for r in self.table]
        rows[x][y] = value
        return FiniteRack(self.size, rows)


@dataclass(frozen=True)
class Finite3Rack:
    """Ternary operation table: ``table[x][y][z] = T(x, y, z)``."""

    size: int
    table: tuple

    def __post_init__(self):
        n = self.size
        t = tuple(tuple(tuple(c) for c in r) for r in self.table)
        if len(t) != n or any(len(r) != n or any(len(c) != n for c in r) for r in t):
            raise InputError(f"3-rack table must be {n}x{n}x{n}")
        for x, y, z in itertools.product(range(n), repeat=3):
            _check_index(t[x][y][z], n, (x, y, z))
        object.__setattr__(self, "table", t)

    def op(self, x: int, y: int, z: int) -> int:
        return self.table[x][y][z]


# ---------------------------------------------------------------- verification

def verify_finite_rack(r: FiniteRack) -> VerificationReport:
    rep = VerificationReport("rack")
    n, t = r.size, r.table
    for x, y, z in itertools.product(range(n), repeat=3):
        rep.checked += 1
        lhs = t[t[x][y]][z]
        rhs = t[t[x][z]][t[y][z]]
        if lhs != rhs:
            rep.fail((x, y, z), f"(x◁y)◁z = {lhs} but (x◁z)◁(y◁z) = {rhs}")
    for y in range(n):
        col = [t[x][y] for x in range(n)]
        if len(set(col)) != n:
            dup = next(x for x in range(n) if col.index(col[x]) != x)
            rep.fail((col.index(col[dup]), dup, y), f"·◁{y} is not injective")
    return rep


def verify_finite_3rack(t: Finite3Rack) -> VerificationReport:
    rep = VerificationReport("3-rack")
    n, T = t.size, t.table
    for x, y, z, u, v in itertools.product(range(n), repeat=5):
        rep.checked += 1
        lhs = T[T[x][y][z]][u][v]
        rhs = T[T[x][u][v]][T[y][u][v]][T[z][u][v]]
        if lhs != rhs:
            rep.fail((x, y, z, u, v), f"T(T(x,y,z),u,v) = {lhs} but distributed = {rhs}")
    for y, z in itertools.product(range(n), repeat=2):
        col = [T[x][y][z] for x in range(n)]
        if len(set(col)) != n:
            rep.fail((y, z), f"T(·,{y},{z}) is not a bijection")
    return rep


# ---------------------------------------------------------------- constructions

def rack_to_3rack(r: FiniteRack) -> Finite3Rack:
    """T(x, y, z) = x ◁ (y ◁ z)."""
    n, t = r.size, r.table
    return Finite3Rack(n, [[[t[x][t[y][z]] for z in range(n)] for y in range(n)] for x in range(n)])


def pair_index(a: int, b: int, n: int) -> int:
    return a * n + b


def threerack_to_rack(t: Finite3Rack) -> FiniteRack:
    """Rack on X×X: (x1,x2) ◁ (y1,y2) = (T(x1,y1,y2), T(x2,y1,y2)); pair (a,b) has index a*n+b."""
    n, T = t.size, t.table
    table = [[0] * (n * n) for _ in range(n * n)]
    for x1, x2, y1, y2 in itertools.product(range(n), repeat=4):
        table[x1 * n + x2][y1 * n + y2] = T[x1][y1][y2] * n + T[x2][y1][y2]
    return FiniteRack(n * n, table)


@dataclass(frozen=True)
class SetSolution:
    """R(x, y) = (y, x ◁ y) on X×X, as the image of each pair index."""

    size: int
    images: tuple

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return divmod(self.images[x * self.size + y], self.size)


def set_ybe_solution(r: FiniteRack) -> SetSolution:
    n = r.size
    return SetSolution(n, tuple(y * n + r.table[x][y] for x in range(n) for y in range(n)))


def verify_set_solution(s: SetSolution) -> VerificationReport:
    """Braid relation on X³ and bijectivity of R on X×X."""
    rep = VerificationReport("set braid relation")

    def r12(a, b, c):
        return (*s(a, b), c)

    def r23(a, b, c):
        return (a, *s(b, c))

    n = s.size
    for x, y, z in itertools.product(range(n), repeat=3):
        rep.checked += 1
        lhs = r12(*r23(*r12(x, y, z)))
        rhs = r23(*r12(*r23(x, y, z)))
        if lhs != rhs:
            rep.fail((x, y, z), f"{lhs} != {rhs}")
    if len(set(s.images)) != n * n:
        seen = {}
        for k, img in enumerate(s.images):
            if img in seen:
                rep.fail((divmod(seen[img], n), divmod(k, n)), "R is not injective")
                break
            seen[img] = k
    return rep


def rack_mutations(r: FiniteRack, count: int = 20, seed: int = 0) -> list[tuple[tuple[int, int, int], FiniteRack]]:
    """Distinct single-entry changes of ``r`` that break the rack axioms.

    Returns ``[((x, y, new_value), mutated_rack), ...]`` in a seeded order.
    """
    n = r.size
    cells = [(x, y, v) for x in range(n) for y in range(n) for v in range(n) if v != r.table[x][y]]
    random.Random(seed).shuffle(cells)
    out = []
    for x, y, v in cells:
        m = r.with_entry(x, y, v)
        if not verify_finite_rack(m).passed:
            out.append(((x, y, v), m))
            if len(out) == count:
                break
    return out


# ---------------------------------------------------------------- builders

def trivial_rack(n: int) -> FiniteRack:
    return FiniteRack(n, [[x] * n for x in range(n)])


def trivial_3rack(n: int) -> Finite3Rack:
    return Finite3Rack(n, [[[x] * n for _ in range(n)] for x in range(n)])


def dihedral_rack(n: int) -> FiniteRack:
    """x ◁ y = 2y − x mod n."""
    return FiniteRack(n, [[(2 * y - x) % n for y in range(n)] for x in range(n)])


# S3 as permutations of (0, 1, 2), listed in itertools order; product is composition g∘h.
S3 = tuple(itertools.permutations(range(3)))


def _s3_mul(g: tuple, h: tuple) -> tuple:
    return tuple(g[h[i]] for i in range(3))


def _s3_inv(g: tuple) -> tuple:
    inv = [0] * 3
    for i, gi in enumerate(g):
        inv[gi] = i
    return tuple(inv)


def s3_cayley_table() -> tuple[tuple[int, ...], ...]:
    idx = {g: k for k, g in enumerate(S3)}
    return tuple(tuple(idx[_s3_mul(g, h)] for h in S3) for g in S3)


def _group_from_table(mul) -> tuple[Callable, Callable]:
    n = len(mul)
    e = next(a for a in range(n) if all(mul[a][b] == b for b in range(n)))
    inv = [next(b for b in range(n) if mul[a][b] == e) for a in range(n)]
    return (lambda a, b: mul[a][b]), (lambda a: inv[a])


def conjugation_rack(mul=None) -> FiniteRack:
    """x ◁ y = y⁻¹ x y over a group given by its Cayley table (default S3)."""
    mul = mul or s3_cayley_table()
    m, inv = _group_from_table(mul)
    n = len(mul)
    return FiniteRack(n, [[m(m(inv(y), x), y) for y in range(n)] for x in range(n)])


def conjugation_3rack(mul=None) -> Finite3Rack:
    """T(g1, g2, g3) = g3⁻¹ g2⁻¹ g1 g2 g3."""
    mul = mul or s3_cayley_table()
    m, inv = _group_from_table(mul)
    n = len(mul)
    return Finite3Rack(n, [[[m(inv(m(b, c)), m(a, m(b, c))) for c in range(n)] for b in range(n)] for a in range(n)])


def z4_module_3rack() -> Finite3Rack:
    """T(m1, m2, m3) = m1 + 2 m2 + 2 m3 on Z4."""
    return Finite3Rack(4, [[[(a + 2 * b + 2 * c) % 4 for c in range(4)] for b in range(4)] for a in range(4)])


# ---------------------------------------------------------------- exp racks

class ExpRack:
    """x ◁ y = exp(ad^R_y) x, or T(x, y, z) = exp(ad^R_{y,z}) x, on a nilpotent algebra.

    Exponentials are cached per acting element; a non-nilpotent right
    multiplication raises :class:`NotNilpotent`.
    """

    def __init__(self, algebra):
        if not isinstance(algebra, (LeibnizAlgebra, ThreeLeibnizAlgebra)):
            raise InputError("ExpRack needs a Leibniz or 3-Leibniz algebra")
        self.algebra = algebra
        self._cache: dict[tuple, Mat] = {}

    @property
    def arity(self) -> int:
        return self.algebra.arity

    def operator(self, *acting) -> Mat:
        vecs = tuple(vector(a) for a in acting)
        if len(vecs) != self.arity - 1:
            raise InputError(f"expected {self.arity - 1} acting vectors")
        # Fraction.__hash__ is slow; key on integer pairs instead
        key = tuple((x.numerator, x.denominator) for v in vecs for x in v)
        if key not in self._cache:
            ad = ad_right(self.algebra, *vecs) if self.arity == 2 else ad_right3(self.algebra, *vecs)
            try:
                self._cache[key] = exp_nilpotent(ad)
            except NotNilpotent as exc:
                shown = ", ".join(format_vector(v) for v in vecs)
                raise NotNilpotent(f"right multiplication by ({shown}) is not nilpotent") from exc
        return self._cache[key]

    def inverse_operator(self, *acting) -> Mat:
        key = tuple(vector(a) for a in acting)
        ad = ad_right(self.algebra, *key) if self.arity == 2 else ad_right3(self.algebra, *key)
        return exp_nilpotent(-ad)


def kinyon_apply(e: ExpRack, x, y) -> Vec:
    if e.arity != 2:
        raise InputError("kinyon_apply needs a Leibniz algebra")
    return e.operator(y).apply(vector(x))


def exp3_apply(e: ExpRack, x, y, z) -> Vec:
    if e.arity != 3:
        raise InputError("exp3_apply needs a 3-Leibniz algebra")
    return e.operator(y, z).apply(vector(x))


def seeded_vectors(dim: int, count: int, seed: int = 0) -> list[Vec]:
    """Deterministic rational samples with coordinates in {-2..2}."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim)) for _ in range(count)]


def phi_tensor(x1, x2) -> Vec:
    return vec_tensor(vector(x1), vector(x2))


def phi_swapped(x1, x2) -> Vec:
    """A deliberately wrong φ, for negative controls."""
    return vec_tensor(vector(x2), vector(x1))


def phi_diagonal(x1, x2) -> Vec:
    """Another wrong φ: forgets the second factor."""
    return vec_tensor(vector(x1), vector(x1))


def phi_intertwine_check(
    alg: ThreeLeibnizAlgebra,
    samples: Iterable[tuple[Sequence, Sequence, Sequence, Sequence]],
    phi: Callable = phi_tensor,
) -> VerificationReport:
    """φ is a rack morphism L×L → L⊗L and intertwines the two braid solutions.

    Each sample is ``(x1, x2, y1, y2)``.  The left side uses the pair rack of
    the exp 3-rack; the right side uses the Kinyon rack of the fundamental
    Leibniz algebra.
    """
    three = ExpRack(alg)
    two = ExpRack(fundamental_leibniz(alg))
    rep = VerificationReport("phi intertwiner", unit="samples")
    for k, (x1, x2, y1, y2) in enumerate(samples):
        rep.checked += 1
        pair = (exp3_apply(three, x1, y1, y2), exp3_apply(three, x2, y1, y2))
        lhs = phi(*pair)
        rhs = kinyon_apply(two, phi(x1, x2), phi(y1, y2))
        if lhs != rhs:
            rep.fail((k,), f"phi(x◁_T y) = {format_vector(lhs)} but phi(x)◁phi(y) = {format_vector(rhs)}")
            continue
        # (phi×phi) R(x, y) = R(phi x, phi y), with R(a, b) = (b, a◁b)
        left = (phi(y1, y2), lhs)
        right = (phi(y1, y2), rhs)
        if left != right:
            rep.fail((k,), "braid solutions not intertwined")
    return rep
