"""Distribution representations: values, one-sided limits, preimages."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shockcopula.distfn import (
    Clamp,
    Convex,
    DiracStep,
    Discrete,
    Exponential,
    PiecewiseLinearWithJumps,
    Product,
    SurvivalComplementProduct,
    SurvivalView,
    Switch,
    Uniform,
    from_spec,
    lifetime_max,
    lifetime_min,
    to_spec,
)

LATTICE = [k * 0.5 for k in range(-2, 25)]


def discrete(*pairs):
    return Discrete(tuple(pairs))


# -- parametric shapes -------------------------------------------------------


def test_exponential_matches_closed_form():
    f = Exponential(2.0)
    assert f.value(0.0) == 0.0
    assert f.value(-1.0) == 0.0
    for x in (0.1, 0.5, 1.0, 3.0):
        want = 1.0 - math.exp(-2.0 * x)
        assert abs(f.value(x) - want) < 1e-15, f"F({x}) = {f.value(x)}, want {want}"
        assert f.left_limit(x) == f.value(x) == f.right_limit(x)
    assert f.value(float("inf")) == 1.0
    assert f.jump_points() == ()


def test_exponential_preimage_is_exact_inverse():
    f = Exponential(0.7)
    for u in (1e-9, 0.25, 0.5, 0.99):
        x = f.smallest_preimage(u)
        assert x == f.largest_preimage(u)
        assert abs(f.value(x) - u) < 1e-15


def test_dirac_one_sided_limits():
    f = DiracStep(1.0)
    assert f.value(1.0) == 1.0
    assert f.left_limit(1.0) == 0.0
    assert f.right_limit(1.0) == 1.0
    assert f.value(0.999999) == 0.0
    assert f.jump_points() == (1.0,)
    assert f.smallest_preimage(0.5) == 1.0
    assert f.largest_preimage(0.5) == 1.0


def test_uniform_values_and_preimages():
    f = Uniform(1.0, 3.0)
    assert f.value(0.0) == 0.0
    assert f.value(2.0) == 0.5
    assert f.value(4.0) == 1.0
    assert f.smallest_preimage(0.25) == 1.5
    assert f.largest_preimage(0.25) == 1.5


def test_discrete_merges_duplicates_and_sorts():
    f = discrete((2.0, 0.25), (1.0, 0.5), (2.0, 0.25))
    assert f.points == ((1.0, 0.5), (2.0, 0.5))
    assert f.value(1.0) == 0.5
    assert f.left_limit(2.0) == 0.5
    assert f.value(2.0) == 1.0


def test_discrete_rejects_bad_masses():
    with pytest.raises(ValueError):
        discrete((1.0, 0.0), (2.0, 1.0))
    with pytest.raises(ValueError):
        discrete((1.0, -0.5), (2.0, 1.5))
    with pytest.raises(ValueError):
        discrete((1.0, float("nan")))
    with pytest.raises(ValueError):
        discrete((1.0, 0.5), (2.0, 0.6))
    with pytest.raises(ValueError):
        Discrete(())


def test_discrete_preimages_at_exact_levels():
    f = discrete((1.0, 0.3), (2.0, 0.4), (3.0, 0.3))
    # strictly inside a mass interval
    assert f.smallest_preimage(0.5) == 2.0
    assert f.largest_preimage(0.5) == 2.0
    # exactly at an accumulated level: F is flat at 0.3 on [1, 2), so the
    # smallest solution is the left end of the flat and the largest the right
    assert f.smallest_preimage(0.3) == 1.0
    assert f.largest_preimage(0.3) == 2.0
    assert f.smallest_preimage(0.7) == 2.0
    assert f.largest_preimage(0.7) == 3.0


def test_preimage_rejects_boundary_levels():
    f = discrete((1.0, 1.0))
    for u in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(ValueError):
            f.smallest_preimage(u)
        with pytest.raises(ValueError):
            f.largest_preimage(u)


def test_piecewise_linear_with_jump():
    # ramp to 0.4 on [0,1], jump to 0.7 at x=1 with value pinned left, ramp on
    f = PiecewiseLinearWithJumps(
        breakpoints=(
            (0.0, 0.0, 0.0, 0.0),
            (1.0, 0.4, 0.4, 0.7),
            (2.0, 1.0, 1.0, 1.0),
        )
    )
    assert f.value(0.5) == 0.2
    assert f.left_limit(1.0) == 0.4
    assert f.value(1.0) == 0.4
    assert f.right_limit(1.0) == 0.7
    assert abs(f.value(1.5) - 0.85) < 1e-15
    assert f.jump_points() == (1.0,)
    # level inside the jump maps to the jump coordinate
    assert f.smallest_preimage(0.55) == 1.0
    # level on a ramp interpolates exactly
    assert abs(f.smallest_preimage(0.2) - 0.5) < 1e-12


# -- composites --------------------------------------------------------------


def _enumerate_joint(fa: Discrete, fb: Discrete, combine) -> Discrete:
    masses: dict[float, float] = {}
    for xa, ma in fa.points:
        for xb, mb in fb.points:
            key = combine(xa, xb)
            masses[key] = masses.get(key, 0.0) + ma * mb
    return Discrete(tuple(masses.items()))


def test_product_is_distribution_of_max():
    fa = discrete((1.0, 0.25), (2.5, 0.75))
    fb = discrete((0.5, 0.5), (2.0, 0.3), (4.0, 0.2))
    direct = lifetime_max(fa, fb)
    oracle = _enumerate_joint(fa, fb, max)
    for x in LATTICE:
        assert abs(direct.value(x) - oracle.value(x)) < 1e-15, f"max cdf at {x}"
        assert abs(direct.left_limit(x) - oracle.left_limit(x)) < 1e-15


def test_survival_complement_product_is_distribution_of_min():
    fa = discrete((1.0, 0.25), (2.5, 0.75))
    fb = discrete((0.5, 0.5), (2.0, 0.3), (4.0, 0.2))
    direct = lifetime_min(fa, fb)
    oracle = _enumerate_joint(fa, fb, min)
    for x in LATTICE:
        assert abs(direct.value(x) - oracle.value(x)) < 1e-15, f"min cdf at {x}"
        assert abs(direct.left_limit(x) - oracle.left_limit(x)) < 1e-15


def test_min_lifetime_cdf_is_exactly_one_past_the_shock():
    # regression: a + b - a*b rounds below 1.0 for a = 0.9449769962505403,
    # b = 1.0 unless the combine special-cases the endpoint
    comp = discrete((0.5, 0.9449769962505403), (9.0, 1.0 - 0.9449769962505403))
    shock = DiracStep(1.0)
    g = lifetime_min(comp, shock)
    assert g.value(1.0) == 1.0
    assert g.value(3.5) == 1.0


def test_convex_combination_values():
    f = Convex(0.25, DiracStep(1.0), DiracStep(2.0))
    assert f.value(0.5) == 0.0
    assert f.value(1.0) == 0.25
    assert f.value(1.5) == 0.25
    assert f.value(2.0) == 1.0
    assert f.left_limit(2.0) == 0.25
    assert set(f.jump_points()) >= {1.0, 2.0}


def test_clamp_is_pointwise_median():
    lower = discrete((1.0, 0.4), (3.0, 0.6))
    upper = discrete((0.5, 0.5), (2.0, 0.5))
    base = Uniform(0.0, 4.0)
    f = Clamp(base, lower, upper)
    for x in LATTICE:
        want = min(max(base.value(x), lower.value(x)), upper.value(x))
        assert f.value(x) == want, f"clamped value at {x}"


def test_switch_splices_and_validates():
    before = Uniform(0.0, 2.0)
    after = discrete((0.5, 0.5), (3.0, 0.5))
    f = Switch(1.0, before, after)
    assert f.value(0.5) == 0.25          # the ramp
    assert f.value(1.5) == 0.5           # the step part
    assert f.left_limit(1.0) == before.left_limit(1.0)
    assert f.right_limit(1.0) == after.right_limit(1.0)
    # a splice that drops (0.5 just before, 0.2 just after) is rejected
    with pytest.raises(ValueError):
        Switch(1.0, after, discrete((0.1, 0.2), (5.0, 0.8)))


def test_survival_view_is_an_involution():
    f = discrete((1.0, 0.3), (2.0, 0.7))
    v = SurvivalView(f)
    assert SurvivalView(v) is f
    for x in LATTICE:
        assert v.value(x) == 1.0 - f.value(x)


# -- serialization -----------------------------------------------------------


@pytest.mark.parametrize(
    "dist",
    [
        Exponential(1.5),
        DiracStep(2.0),
        Uniform(0.5, 2.5),
        Discrete(((1.0, 0.25), (4.0, 0.75))),
        PiecewiseLinearWithJumps(
            breakpoints=((0.0, 0.0, 0.0, 0.1), (1.0, 0.6, 0.6, 0.6), (2.0, 1.0, 1.0, 1.0))
        ),
    ],
)
def test_spec_round_trip(dist):
    back = from_spec(to_spec(dist))
    assert back == dist
    for x in LATTICE:
        assert back.value(x) == dist.value(x)


def test_from_spec_rejects_unknown_kind():
    with pytest.raises(ValueError):
        from_spec({"kind": "cauchy", "scale": 1.0})


# -- property tests ----------------------------------------------------------

mass_lists = st.lists(
    st.tuples(
        st.integers(min_value=-5, max_value=20).map(lambda k: k * 0.5),
        st.integers(min_value=1, max_value=9),
    ),
    min_size=1,
    max_size=6,
)


def _normalized(pairs) -> Discrete:
    total = sum(w for _, w in pairs)
    return Discrete(tuple((x, w / total) for x, w in pairs))


@given(mass_lists)
def test_discrete_limits_are_ordered(pairs):
    f = _normalized(pairs)
    for x in [p - 0.25 for p, _ in f.points] + [p for p, _ in f.points]:
        assert f.left_limit(x) <= f.value(x) <= f.right_limit(x)


@given(mass_lists, st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
@settings(max_examples=200)
def test_discrete_smallest_preimage_is_minimal(pairs, u):
    f = _normalized(pairs)
    x0 = f.smallest_preimage(u)
    assert f.left_limit(x0) <= u <= f.right_limit(x0), (
        f"x0={x0} does not bracket u={u}: "
        f"[{f.left_limit(x0)}, {f.right_limit(x0)}]"
    )
    # nothing smaller qualifies: strictly left of x0 the function stays below u
    probe = x0 - 1e-9
    assert f.value(probe) < u or f.right_limit(probe) < u


@given(mass_lists, mass_lists)
@settings(max_examples=100)
def test_composite_lifetimes_match_enumeration(pa, pb):
    fa, fb = _normalized(pa), _normalized(pb)
    for composite, combine in ((lifetime_max(fa, fb), max), (lifetime_min(fa, fb), min)):
        oracle = _enumerate_joint(fa, fb, combine)
        for x, _ in oracle.points:
            assert abs(composite.value(x) - oracle.value(x)) < 1e-12
            assert abs(composite.left_limit(x) - oracle.left_limit(x)) < 1e-12
