import itertools
import random

import pytest

from cido.groebner import (
    DegenerateInputError,
    buchberger,
    certify_smooth_ci,
    ideal_contains,
    normal_form,
    radical_membership,
)
from cido.qpoly import Polynomial, RingSpec, parse_with_names

NAMES = ["x0", "x1", "x2"]


def P(text):
    return parse_with_names(text, NAMES)


def test_buchberger_examples():
    assert list(buchberger([P("x0^2"), P("x1")])) == [P("x0^2"), P("x1")]
    assert set(map(str, buchberger([P("x0"), P("x0 + x1")]))) == {str(P("x0")), str(P("x1"))}
    assert buchberger([P("x0*x1 - 1"), P("x0^2")]).is_unit()


def test_normal_form_examples():
    assert normal_form(P("x0^2"), buchberger([P("x0")])).is_zero()
    assert normal_form(P("x1"), buchberger([P("x0")])) == P("x1")
    assert normal_form(P("x0^2 + x1"), buchberger([P("x0^2 - x1")])) == P("2*x1")


def test_radical_membership_examples():
    assert radical_membership(P("x0"), [P("x0^2")])
    assert not radical_membership(P("x1"), [P("x0^2")])
    assert radical_membership(P("x0 + x1"), [P("x0^2"), P("x1^2")])


def test_buchberger_independent_of_generator_order():
    gens = [P("x0^2 - x1*x2"), P("x1^2 - x0*x2"), P("x0*x1 - x2^2 + x0^2")]
    reference = buchberger(gens).generators
    for perm in itertools.permutations(gens):
        assert buchberger(list(perm)).generators == reference


def test_normal_form_properties():
    rng = random.Random(3)
    gb = buchberger([P("x0^2 - x1*x2"), P("x1^3 - x2")])
    for _ in range(20):
        p = Polynomial({tuple(rng.randint(0, 3) for _ in range(3)): rng.randint(-3, 3) for _ in range(3)}, 3)
        q = Polynomial({tuple(rng.randint(0, 3) for _ in range(3)): rng.randint(-3, 3) for _ in range(3)}, 3)
        nf = normal_form(p, gb)
        assert normal_form(p - nf, gb).is_zero()
        assert normal_form(p.scale(2) + q, gb) == nf.scale(2) + normal_form(q, gb)
        assert ideal_contains(p - nf, gb)


def test_certify_examples():
    assert certify_smooth_ci(RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])).smooth
    cusp = certify_smooth_ci(RingSpec.from_strings(2, ["x0^3 - x1^2*x2"]))
    assert not cusp.smooth and cusp.witness == "x2"
    degenerate = certify_smooth_ci(RingSpec.from_strings(2, ["x0^2", "x0*x1"]))
    assert not degenerate.smooth and degenerate.witness is not None


def test_certify_pair_of_quadrics():
    good = RingSpec.from_strings(3, ["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"])
    assert certify_smooth_ci(good).smooth
    # this pencil has singular points over the complex numbers
    bad = RingSpec.from_strings(3, ["x0^2 + x1^2 + x2^2 + x3^2", "x0*x1 + x2*x3"])
    assert not certify_smooth_ci(bad).smooth


def _grid_singular_point(spec, grid):
    """Brute-force search for a nonzero point where all G vanish and the Jacobian drops rank."""
    nx = spec.n + 1
    xs = list(spec.x_indices)
    for pt in itertools.product(grid, repeat=nx):
        if not any(pt):
            continue
        full = [0] * spec.k + list(pt)
        if any(g.evaluate(full) for g in spec.generators):
            continue
        rows = [[g.derivative(j).evaluate(full) for j in xs] for g in spec.generators]
        if spec.k == 1 and not any(rows[0]):
            return pt
    return None


@pytest.mark.parametrize("poly,smooth", [
    ("x0^3 + x1^3 + x2^3", True),
    ("x0^3 - x1^2*x2", False),
    ("x0^2*x2 - x1^3 - x1^2*x2", False),
    ("x0^2 + x1^2 - x2^2", True),
])
def test_certify_agrees_with_grid_search(poly, smooth):
    spec = RingSpec.from_strings(2, [poly])
    found = _grid_singular_point(spec, range(-2, 3))
    report = certify_smooth_ci(spec)
    assert report.smooth == smooth
    if found is not None:
        # a rational singular point on the grid forces a negative certificate
        assert not report.smooth


def test_degenerate_input():
    spec = RingSpec.from_strings(2, ["x0^2"])
    object.__setattr__(spec, "generators", (Polynomial.zero(spec.N),))
    with pytest.raises(DegenerateInputError):
        certify_smooth_ci(spec)
