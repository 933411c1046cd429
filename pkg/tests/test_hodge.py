import itertools

import pytest

from cido.hodge import (
    betti_from_degrees,
    chern_series,
    euler_characteristic,
    euler_from_degrees,
    primitive_hodge_numbers,
    primitive_middle_dim,
)
from cido.qpoly import RingSpec


def test_euler_examples():
    assert euler_characteristic(RingSpec.from_strings(4, ["x0^5 + x1^5 + x2^5 + x3^5 + x4^5"])) == -200
    assert euler_characteristic(RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])) == 0
    assert euler_from_degrees(3, [2, 2]) == 0


def test_primitive_examples():
    assert betti_from_degrees(4, [5]).primitive_middle == 204
    assert betti_from_degrees(2, [3]).primitive_middle == 2
    assert betti_from_degrees(2, [2]).primitive_middle == 0
    r = betti_from_degrees(3, [4])  # quartic surface
    assert (r.euler, r.middle_betti, r.primitive_middle) == (24, 22, 21)


def test_even_and_odd_middle_relations():
    for n, degs in [(3, [3]), (4, [2, 3]), (5, [3, 3]), (4, [3])]:
        r = betti_from_degrees(n, degs)
        if (n - len(degs)) % 2 == 0:
            assert r.primitive_middle == r.middle_betti - 1
        else:
            assert r.primitive_middle == r.middle_betti


def test_euler_symmetric_in_degrees():
    for degs in ([2, 3], [2, 2, 3], [3, 4]):
        values = {euler_from_degrees(6, list(p)) for p in itertools.permutations(degs)}
        assert len(values) == 1


def test_plane_curve_genus_formula():
    # chi = -d(d-3) for a plane curve of degree d
    for d in range(1, 7):
        assert euler_from_degrees(2, [d]) == -d * (d - 3)


def test_chern_series_truncation():
    assert chern_series(2, [3], 1) == [1, 0]


def test_experimental_hodge_numbers():
    assert primitive_hodge_numbers(4, [5]) == (1, 101, 101, 1)
    assert primitive_hodge_numbers(3, [4]) == (1, 19, 1)
    assert primitive_hodge_numbers(4, [3]) == (0, 5, 5, 0)
    for n, degs in [(4, [5]), (3, [4]), (5, [3, 3]), (4, [2, 3])]:
        assert sum(primitive_hodge_numbers(n, degs)) == betti_from_degrees(n, degs).primitive_middle


def test_report_json():
    spec = RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])
    assert primitive_middle_dim(spec).to_json() == {"euler": 0, "middle_betti": 2, "primitive_middle": 2}
    assert primitive_middle_dim(spec, hodge_slices=True).to_json()["experimental_hodge_slices"] == [1, 1]


@pytest.mark.parametrize("name", ["fermat-cubic", "ci22", "ci23"])
def test_oracle_matches_jacobian_ring(name):
    from cido.acceptance import load_variety

    v = load_variety(name)
    assert v.basis.total_dim == primitive_middle_dim(v.spec).primitive_middle
