from fractions import Fraction

import pytest

from yangbaxter import algebras as A
from yangbaxter.errors import NotACocycle, UnknownVariant
from yangbaxter.linalg import Mat

CORPUS_3 = [A.nilpotent3, A.final_3leibniz_2d, lambda: A.omni_lie(1), lambda: A.omni_lie(2)]
CORPUS_2 = [lambda: A.two_dim_leibniz(v) for v in range(1, 5)] + [lambda: A.omni_lie_leibniz(1), lambda: A.abelian(3)]


def test_nilpotent_example_brackets():
    l = A.nilpotent3()
    e1, e2, e3 = (l.basis(i) for i in range(3))
    assert l.bracket(e2, e3, e3) == e1
    assert l.bracket(e3, e3, e3) == e2
    assert l.bracket(e3, e2, e3) == (0, 0, 0)


def test_corpus_passes_axioms():
    for make in CORPUS_3:
        rep = A.verify_3_leibniz(make())
        assert rep.passed, rep.summary()
    for make in CORPUS_2:
        assert A.verify_leibniz(make()).passed


def test_tuple_counts():
    assert A.verify_3_leibniz(A.nilpotent3()).checked == 3 ** 5
    assert A.verify_leibniz(A.two_dim_leibniz(2)).checked == 2 ** 3


def test_derived_algebras_pass():
    for make in CORPUS_3:
        assert A.verify_leibniz(A.fundamental_leibniz(make())).passed
    for make in CORPUS_2:
        assert A.verify_3_leibniz(A.leibniz_to_3leibniz(make())).passed


def test_octonion_is_3leibniz_but_not_skew():
    o = A.octonion_3leibniz()
    rep = A.verify_3_leibniz(o)
    assert rep.passed and rep.checked == 8 ** 5
    skew = A.skew_symmetry_check(o)
    assert not skew.passed
    assert skew.first.witness == (2, 2, 3)


def test_corrupted_constant_gives_witness():
    good = A.nilpotent3()
    table = {k: dict(v) for k, v in good.table.items()}
    table[(0, 2, 2)] = {2: Fraction(1)}  # [e1,e3,e3] = e3 breaks the identity
    bad = A.ThreeLeibnizAlgebra(3, table)
    rep = A.verify_3_leibniz(bad)
    assert not rep.passed
    w = rep.first.witness
    assert len(w) == 5 and all(1 <= i <= 3 for i in w)
    assert rep.summary().startswith("FAIL 3-Leibniz")


def test_corrupted_leibniz_constant():
    table = {(0, 0): {1: Fraction(1)}, (1, 1): {0: Fraction(1)}}
    rep = A.verify_leibniz(A.LeibnizAlgebra(2, table))
    assert not rep.passed and rep.first is not None


def test_unknown_variant():
    with pytest.raises(UnknownVariant):
        A.two_dim_leibniz(5)


def test_cocycle_and_coboundary():
    e3 = A.two_dim_leibniz(3)
    omega = Mat.from_rows([[0, 1], [0, 0]])
    assert A.check_2cocycle(e3, omega).passed
    assert A.check_2cocycle(e3, A.coboundary(e3, (1, 0))).passed
    ext, one = A.central_extension(e3, omega)
    assert ext.dim == 3 and A.verify_leibniz(ext).passed
    assert A.is_central(ext, one.element)


def test_non_cocycle_raises_with_report():
    e2 = A.two_dim_leibniz(2)
    omega = Mat.from_rows([[0, 1], [0, 0]])
    with pytest.raises(NotACocycle) as info:
        A.central_extension(e2, omega)
    rep = info.value.report
    assert rep is not None and not rep.passed and rep.first.witness


def test_embedding_is_homomorphism():
    for make in CORPUS_3[:3]:
        l = make()
        s = A.embedding_s(l)
        src, _ = A.central_extension(A.fundamental_leibniz(l), Mat.zeros(l.dim ** 2, l.dim ** 2))
        dst = A.fundamental_leibniz(A.trivial_central_extension_3(l)[0])
        assert A.verify_hom(s, src, dst).passed


def test_right_multiplications_are_derivations():
    l = A.nilpotent3()
    for j in range(3):
        for k in range(3):
            assert A.verify_derivation(l, A.ad_right3(l, l.basis(j), l.basis(k))).passed
