from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yangbaxter.errors import InputError, NotNilpotent, Singular
from yangbaxter.linalg import (
    Mat,
    TensorShape,
    exp_nilpotent,
    format_scalar,
    format_vector,
    invert,
    kron,
    nilpotency_index,
    permutation_operator,
    rank,
    scalar,
    swap_operator,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def mats(rows, cols):
    return st.lists(st.lists(fractions, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Mat.from_rows)


def strictly_upper(n):
    cells = st.lists(fractions, min_size=n * n, max_size=n * n)
    return cells.map(lambda c: Mat(n, n, {(i, j): c[i * n + j] for i in range(n) for j in range(n) if j > i}))


def test_scalar_accepts_exact_forms_only():
    assert scalar("3/6") == Fraction(1, 2)
    assert scalar(2) == 2
    with pytest.raises(InputError):
        scalar(0.5)
    with pytest.raises(InputError):
        scalar("abc")


def test_format():
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_vector((Fraction(1, 2), 1, 1)) == "1/2·e1 + e2 + e3"
    assert format_vector((0, 0)) == "0"


def test_tensor_basis_left_factor_most_significant():
    s = TensorShape((2, 3))
    assert s.flat((1, 0)) == 3
    assert s.multi(5) == (1, 2)
    a = Mat.from_rows([[1, 2], [3, 4]])
    k = kron(a, Mat.identity(2))
    assert k[2, 0] == 3 and k[0, 2] == 2


def test_swap_and_permutation():
    s = swap_operator(3)
    assert s @ s == Mat.identity(9)
    assert s.column(1) == {3: 1}
    p = permutation_operator((2, 2, 2), (1, 2, 0))
    assert p @ p @ p == Mat.identity(8)


@settings(max_examples=40, deadline=None)
@given(mats(2, 2), mats(2, 3), mats(3, 2), mats(2, 2))
def test_kron_mixed_product(a, b, c, d):
    # (A⊗B)(D⊗C) = AD⊗BC
    assert kron(a, b) @ kron(d, c) == kron(a @ d, b @ c)


@settings(max_examples=40, deadline=None)
@given(strictly_upper(4))
def test_exp_of_nilpotent_is_inverted_by_exp_of_negative(n):
    assert exp_nilpotent(n) @ exp_nilpotent(-n) == Mat.identity(4)
    assert nilpotency_index(n) <= 4


def test_exp_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Mat.from_rows([[0, 1], [1, 0]]))


@settings(max_examples=40, deadline=None)
@given(mats(3, 3))
def test_inverse_or_singular(m):
    if rank(m) == 3:
        assert invert(m) @ m == Mat.identity(3)
    else:
        with pytest.raises(Singular):
            invert(m)


@settings(max_examples=30, deadline=None)
@given(mats(3, 4))
def test_json_and_csv_round_trip(m):
    assert Mat.from_json(m.to_json()) == m
    assert Mat.from_csv(m.to_csv()) == m


def test_symbol_substitution():
    m = Mat.from_json_obj({"rows": 1, "cols": 2, "entries": [["b1", "2"]]}, subst={"b1": Fraction(7)})
    assert m.entries == ((7, 2),)
