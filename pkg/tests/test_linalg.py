import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cido.linalg import Echelon, SliceMatrix, SupportError, quotient_basis, row_reduce, solve_membership
from cido.qpoly import Polynomial, parse_with_names

NAMES = ["x0", "x1"]


def P(text):
    return parse_with_names(text, NAMES)


SLICE2 = [(2, 0), (1, 1), (0, 2)]


def test_row_reduce_examples():
    red, piv = row_reduce(SliceMatrix(((1,), (2,)), ((1, 2), (2, 4))))
    assert piv == [0] and len(red.rows) == 1
    ident = SliceMatrix(((0,), (1,), (2,)), ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    red, piv = row_reduce(ident)
    assert piv == [0, 1, 2] and red.rows == ident.rows
    red, piv = row_reduce(SliceMatrix(((0,), (1,)), ((0, 0), (0, 0))))
    assert piv == [] and red.rows == ()


def test_slice_matrix_rejects_ragged_rows():
    with pytest.raises(ValueError):
        SliceMatrix(((0,), (1,)), ((1, 2, 3),))


matrices = st.integers(1, 4).flatmap(
    lambda w: st.lists(st.lists(st.integers(-3, 3), min_size=w, max_size=w), max_size=4).map(
        lambda rows: SliceMatrix(tuple((j,) for j in range(w)), tuple(tuple(r) for r in rows))
    )
)


@given(matrices)
@settings(max_examples=80)
def test_row_reduce_idempotent_and_rank(m):
    red, piv = row_reduce(m)
    again, piv2 = row_reduce(red)
    assert again == red and piv2 == piv
    assert piv == sorted(piv)
    # rank + non-pivot columns = width
    polys = [Polynomial({(j, 0): c for j, c in enumerate(r) if c}, 2) for r in m.rows]
    cols = [(j, 0) for j in range(len(m.columns))]
    assert len(piv) + len(quotient_basis(cols, polys)) == len(cols)


def test_quotient_basis_examples():
    assert quotient_basis(SLICE2, [P("x0^2 - x1^2")]) == [(1, 1), (0, 2)]
    assert quotient_basis(SLICE2, []) == SLICE2
    assert quotient_basis(SLICE2, [P("x0^2"), P("x0*x1"), P("x1^2 + x0^2")]) == []


def test_quotient_basis_support_violation():
    with pytest.raises(SupportError):
        quotient_basis(SLICE2, [P("x0")])


def test_solve_membership_examples():
    assert solve_membership(P("x0^2"), [P("x0^2")]) == [1]
    assert solve_membership(P("x0^2"), [P("x1^2")]) is None
    assert solve_membership(P("2*x0^2 + x1^2"), [P("x0^2"), P("x0^2 + x1^2")]) == [1, 1]


def test_solve_membership_free_variables_zeroed():
    # the second spanning polynomial repeats the first; it gets coefficient zero
    assert solve_membership(P("3*x0*x1"), [P("x0*x1"), P("2*x0*x1")]) == [3, 0]


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-2, 2), min_size=4, max_size=4))
@settings(max_examples=80)
def test_solve_membership_reconstructs(rows, coeffs):
    spanning = [Polynomial({m: c for m, c in zip(SLICE2, r) if c}, 2) for r in rows]
    target = Polynomial.zero(2)
    for c, p in zip(coeffs, spanning):
        target = target + p.scale(c)
    sol = solve_membership(target, spanning)
    assert sol is not None
    rebuilt = Polynomial.zero(2)
    for c, p in zip(sol, spanning):
        rebuilt = rebuilt + p.scale(c)
    assert rebuilt == target


def test_echelon_tracking_reconstructs():
    ech = Echelon(track=True)
    rows = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    kept = [ech.add(r) for r in rows]
    assert kept == [True, True, False]
    rem, combo = ech.reduce({0: 2, 1: 5, 2: 1})
    assert rem == {}
    total = {}
    for idx, c in combo.items():
        for j, v in rows[idx].items():
            total[j] = total.get(j, 0) + c * v
    assert {j: v for j, v in total.items() if v} == {0: 2, 1: 5, 2: 1}


@given(matrices)
@settings(max_examples=80)
def test_sparse_echelon_matches_dense_pivots(m):
    _, piv = row_reduce(m)
    e = Echelon()
    for row in m.rows:
        e.add({j: c for j, c in enumerate(row) if c})
    assert sorted(e.pivot_columns()) == piv
