"""Acceptance criteria 1-7. Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
Timings are the best of a few repeats, to keep scheduler noise out of the bounds.
"""

import subprocess
import sys
import time
from fractions import Fraction

from yangbaxter import algebras as A
from yangbaxter import coalgebra as C
from yangbaxter import racks as R
from yangbaxter import references as ref
from yangbaxter import ybe as Y
from yangbaxter.errors import NotACocycle, NotNilpotent
from yangbaxter.linalg import Mat
from yangbaxter.reproduce import TARGETS


def best_time(fn, repeats=20):
    best, value = None, None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return value, best


def report(number, title, ok, detail, elapsed, bound):
    in_time = elapsed < bound
    status = "PASS" if ok and in_time else "FAIL"
    print(f"{status} criterion {number}: {title} ({detail}; {elapsed * 1000:.2f} ms, bound {bound * 1000:g} ms)")
    return ok and in_time


# ---------------------------------------------------------------- 1

def criterion_1():
    def run():
        ext, one = A.central_extension(A.abelian(1), Mat.from_rows([[1]]))
        op = Y.solution_from_central_leibniz(ext, one)
        return Y.compare_to_reference(op, ref.reference_4x4())
    diff, dt = best_time(run)
    return report(1, "4x4 central-Leibniz matrix", diff.match, diff.summary(), dt, 1e-3)


# ---------------------------------------------------------------- 2

def criterion_2():
    ok_all = True
    for v in range(1, 5):
        values = ref.default_values(v)

        def run():
            op = Y.solution_from_central_extension(A.two_dim_leibniz(v), ref.omega_for(v, values), check_cocycle=False)
            return Y.compare_to_reference(op, ref.reference_9x9(v, values))
        diff, dt = best_time(run)
        shown = ",".join(f"{k}={x}" for k, x in values.items())
        ok_all &= report(2, f"9x9 E{v} with {shown}", diff.match, diff.summary(), dt, 10e-3)
    return ok_all


# ---------------------------------------------------------------- 3

def criterion_3():
    def run():
        l = A.final_3leibniz_2d()
        op = Y.solution_3lei_fundamental(l)
        ybe = Y.verify_operator(op)
        diff = Y.justify_fundamental_diff(l, Y.compare_to_reference(op, ref.reference_25x25()))
        return ybe, diff
    (ybe, diff), dt = best_time(run, repeats=3)
    justified = set(diff.mismatched_columns) <= set(diff.justifications)
    ok = ybe.passed and diff.matching_columns >= 24 and justified
    detail = f"{ybe.summary()}; {diff.summary()}; mismatches justified: {justified}"
    return report(3, "25x25 final 3-Leibniz example", ok, detail, dt, 1.0)


# ---------------------------------------------------------------- 4

def criterion_4():
    l = A.nilpotent3()
    b = l.basis

    def run():
        e = R.ExpRack(l)
        return (R.exp3_apply(e, b(2), b(2), b(2)), R.exp3_apply(e, b(1), b(2), b(2)),
                [R.exp3_apply(e, b(i), b(j), b(k)) == b(i)
                 for i in range(3) for j in range(3) for k in range(3) if (i, j, k) not in {(2, 2, 2), (1, 2, 2)}])
    (t333, t233, rest), dt = best_time(run)
    ok = t333 == (Fraction(1, 2), 1, 1) and t233 == (1, 1, 0) and all(rest)
    return report(4, "exp 3-rack table on the nilpotent example", ok, "three branches exact", dt, 1e-3)


# ---------------------------------------------------------------- 5

def _samples(dim):
    vecs = R.seeded_vectors(dim, 400)
    return [tuple(vecs[4 * i:4 * i + 4]) for i in range(100)]


def criterion_5():
    corpus3 = [A.octonion_3leibniz(), A.nilpotent3(), A.omni_lie(1), A.omni_lie(2), A.final_3leibniz_2d()]
    corpus2 = [A.two_dim_leibniz(v) for v in range(1, 5)] + [A.omni_lie_leibniz(1), A.abelian(3)]
    small3 = corpus3[1:]
    ok_all = True

    def item(title, fn, bound):
        nonlocal ok_all
        t0 = time.perf_counter()
        ok, detail = fn()
        ok_all &= report(5, title, ok, detail, time.perf_counter() - t0, bound)

    def axioms():
        reps = [A.verify_3_leibniz(l) for l in corpus3]
        return all(reps), "; ".join(f"{l.name}: {r.checked}" for l, r in zip(corpus3, reps))
    item("3-Leibniz identity on the corpus (octonions 8^5)", axioms, 30.0)

    def derived():
        a = all(A.verify_leibniz(A.fundamental_leibniz(l)) for l in corpus3)
        b = all(A.verify_3_leibniz(A.leibniz_to_3leibniz(e)) for e in corpus2)
        return a and b, f"{len(corpus3)} fundamental, {len(corpus2)} induced"
    item("fundamental Leibniz and induced 3-Leibniz algebras", derived, 60.0)

    def trilinear():
        reps = [C.verify_trilinear_rack(C.threeleibniz_trilinear_rack(l)) for l in corpus3]
        return all(reps), f"{len(reps)} algebras, TSD + reversibility"
    item("K+L trilinear racks", trilinear, 60.0)

    def tri_to_lin():
        structs = [C.linearize_3rack(t) for t in (R.trivial_3rack(2), R.z4_module_3rack(), R.conjugation_3rack())]
        structs += [C.threeleibniz_trilinear_rack(l) for l in small3]
        ok = True
        for tr in structs:
            lr = C.trilinear_to_linear(tr)
            ok &= C.verify_linear_rack(lr).passed
            ok &= Y.solution_from_trilinear_rack(tr).matrix == Y.solution_from_linear_rack(lr).matrix
        return ok, f"{len(structs)} trilinear racks, R^T = R^lin"
    item("trilinear to linear racks", tri_to_lin, 60.0)

    def set_racks():
        racks = [R.trivial_rack(3), R.dihedral_rack(3), R.dihedral_rack(5), R.conjugation_rack()]
        forward = all(R.verify_set_solution(R.set_ybe_solution(r)) for r in racks)
        muts = R.rack_mutations(R.conjugation_rack(), count=20, seed=0)
        backward = len(muts) == 20 and all(
            not R.verify_finite_rack(m) and not R.verify_set_solution(R.set_ybe_solution(m)) for _, m in muts)
        return forward and backward, f"{len(racks)} racks pass, {len(muts)} mutations fail"
    item("rack tables and set braid solutions", set_racks, 60.0)

    def phi():
        rep = R.phi_intertwine_check(A.nilpotent3(), _samples(3))
        return rep.passed, rep.summary()
    item("phi intertwiner on 100 seeded samples", phi, 60.0)

    def square():
        reps = [C.varphi_check(t) for t in (R.trivial_3rack(2), R.z4_module_3rack(), R.conjugation_3rack())]
        return all(reps), "trivial, Z4-module, S3 conjugation"
    item("linearized 3-rack commuting square", square, 60.0)

    def equivalence():
        e3 = A.two_dim_leibniz(3)
        omega = Mat.from_rows([[0, 1], [0, 0]])
        f = (1, 0)
        r1 = Y.solution_from_central_extension(e3, omega)
        r2 = Y.solution_from_central_extension(e3, omega + A.coboundary(e3, f))
        eq = Y.equivalence_check(r1, r2, Y.canonical_theta(2, f))
        l = A.final_3leibniz_2d()
        s = Y.equivalence_check(Y.solution_3lei_fundamental(l), Y.solution_3lei_tensor_square(l), A.embedding_s(l))
        return eq.passed and s.passed, f"{eq.summary()}; {s.summary()}"
    item("cohomologous extensions and the s-embedding", equivalence, 60.0)
    return ok_all


# ---------------------------------------------------------------- 6

def criterion_6():
    t0 = time.perf_counter()
    found = []
    table = {k: dict(v) for k, v in A.nilpotent3().table.items()}
    table[(0, 2, 2)] = {2: Fraction(1)}
    rep = A.verify_3_leibniz(A.ThreeLeibnizAlgebra(3, table))
    found.append(("corrupted constants", not rep.passed and rep.first.witness is not None, rep.first))
    try:
        A.central_extension(A.two_dim_leibniz(2), Mat.from_rows([[0, 1], [0, 0]]))
        found.append(("non-cocycle", False, "silent pass"))
    except NotACocycle as exc:
        found.append(("non-cocycle", exc.report is not None and exc.report.first is not None, exc.report.first))
    try:
        R.kinyon_apply(R.ExpRack(A.two_dim_leibniz(4)), (1, 0), (0, 1))
        found.append(("non-nilpotent", False, "silent pass"))
    except NotNilpotent as exc:
        found.append(("non-nilpotent", bool(str(exc)), exc))
    ok = all(f[1] for f in found)
    detail = "; ".join(f"{name}: {w}" for name, _, w in found)
    return report(6, "negative controls give typed failures", ok, detail, time.perf_counter() - t0, 60.0)


# ---------------------------------------------------------------- 7

def criterion_7():
    cmd = [sys.executable, "-m", "yangbaxter.cli", "reproduce", "all"]
    t0 = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True)
    dt = time.perf_counter() - t0
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and first.stdout != b""
    ok = first.returncode == 0 and same
    detail = f"{len(TARGETS)} targets, exit {first.returncode}, byte-identical: {same}"
    return report(7, "yb reproduce all", ok, detail, dt, 60.0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def test_criterion_1_4x4():
    assert criterion_1()


def test_criterion_2_9x9_family():
    assert criterion_2()


def test_criterion_3_25x25():
    assert criterion_3()


def test_criterion_4_exp3_table():
    assert criterion_4()


def test_criterion_5_property_suite():
    assert criterion_5()


def test_criterion_6_negative_controls():
    assert criterion_6()


def test_criterion_7_end_to_end():
    assert criterion_7()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
