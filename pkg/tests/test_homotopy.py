import itertools

import pytest

from secnum.census import census_spaces, census_up_to
from secnum.extnat import ExtNat
from secnum.finspace import (
    CMap,
    compose,
    constant_map,
    discrete_space,
    empty_space,
    enumerate_maps,
    identity_map,
    make_map,
    make_space,
    pseudocircle,
    sierpinski,
    subspace,
    subspace_of_mask,
)
from secnum.homotopy import (
    Fence,
    cat,
    core,
    homotopic,
    homotopy_fence,
    is_contractible,
    is_nullhomotopic_in,
    nullhomotopy_target,
)
from secnum.resources import BudgetExhausted

from oracles import brute_cat, brute_homotopic, brute_nullhomotopic_inclusion


def test_fence_validation():
    s = sierpinski()
    idS = identity_map(s)
    c1 = constant_map(s, s, 1)
    Fence((idS, c1))  # id is pointwise reach-below const1: reach(1, x) holds
    with pytest.raises(ValueError):
        Fence(())
    d = discrete_space(2)
    with pytest.raises(ValueError):
        Fence((constant_map(d, d, 0), constant_map(d, d, 1)))
    with pytest.raises(ValueError):
        Fence((idS, constant_map(d, d, 0)))


def test_homotopic_reflexive_zero_length_fence():
    s = sierpinski()
    f = constant_map(s, s, 0)
    assert homotopic(f, f)
    fence = homotopy_fence(f, f)
    assert fence.length == 0 and fence.steps == (f,)


def test_identity_homotopic_to_constant_on_sierpinski():
    s = sierpinski()
    idS = identity_map(s)
    c1 = constant_map(s, s, 1)
    assert homotopic(idS, c1)
    fence = homotopy_fence(idS, c1)
    assert fence.length == 1
    assert fence.steps[0] == idS and fence.steps[-1] == c1


def test_distinct_constants_on_discrete_not_homotopic():
    d = discrete_space(2)
    assert not homotopic(constant_map(d, d, 0), constant_map(d, d, 1))
    assert homotopy_fence(constant_map(d, d, 0), constant_map(d, d, 1)) is None


def test_homotopic_requires_common_hom_set():
    s = sierpinski()
    d = discrete_space(2)
    with pytest.raises(ValueError):
        homotopic(identity_map(s), identity_map(d))


def test_homotopic_agrees_with_direct_components():
    pairs = [(a, b) for a in census_spaces(2) for b in census_up_to(3)]
    for a, b in pairs:
        maps = list(enumerate_maps(a, b))
        for f, g in itertools.product(maps, repeat=2):
            assert homotopic(f, g) == brute_homotopic(f, g), (a, b, f, g)


def test_homotopic_is_equivalence_on_pseudocircle_self_maps():
    c = pseudocircle()
    maps = list(enumerate_maps(c, c))
    assert len(maps) == 36
    for f in maps:
        assert homotopic(f, f)
    for f, g in itertools.combinations(maps, 2):
        assert homotopic(f, g) == homotopic(g, f)
    # transitivity via the component partition
    labels = {}
    for f in maps:
        for g in maps:
            if homotopic(f, g) and g.assignment in labels:
                labels[f.assignment] = labels[g.assignment]
                break
        else:
            labels[f.assignment] = len(labels)
    for f in maps:
        for g in maps:
            assert homotopic(f, g) == (labels[f.assignment] == labels[g.assignment])


def test_fences_revalidate_everywhere():
    s = sierpinski()
    v = make_space(3, [(1, 0), (2, 0)])
    for source, target in [(s, s), (v, s), (s, v), (v, v)]:
        maps = list(enumerate_maps(source, target))
        for f, g in itertools.product(maps, repeat=2):
            fence = homotopy_fence(f, g)
            assert (fence is not None) == homotopic(f, g)
            if fence is None:
                continue
            assert fence.steps[0] == f and fence.steps[-1] == g
            Fence(tuple(fence.steps))
            for step in fence.steps:
                make_map(step.source, step.target, step.assignment)


def test_core_examples():
    assert core(sierpinski()).space.n == 1
    assert core(pseudocircle()).space.n == 4
    assert core(discrete_space(4)).space.n == 4
    chain = make_space(3, [(2, 1), (1, 0)])
    assert core(chain).space.n == 1
    indiscrete = make_space(3, [(i, j) for i in range(3) for j in range(3)])
    assert core(indiscrete).space.n == 1


def test_core_retraction_data():
    for space in census_up_to(4):
        data = core(space)
        assert compose(data.retraction, data.inclusion).is_identity()
        back = compose(data.inclusion, data.retraction)
        assert homotopic(back, identity_map(space))


def test_is_contractible():
    assert is_contractible(make_space(1, []))
    assert is_contractible(sierpinski())
    assert not is_contractible(pseudocircle())
    assert not is_contractible(discrete_space(2))
    assert not is_contractible(empty_space())


def test_contractibility_cross_check_census():
    for space in census_up_to(4):
        assert is_contractible(space, cross_check=True) in (True, False)


def test_nullhomotopic_inclusions():
    s = sierpinski()
    sub, incl = subspace(s, [0])
    assert is_nullhomotopic_in(incl)
    assert is_nullhomotopic_in(CMap(empty_space(), s, []))
    c = pseudocircle()
    assert not is_nullhomotopic_in(identity_map(c))
    u2, incl2 = subspace_of_mask(c, 0b0111)  # minimal open of point 2
    assert is_nullhomotopic_in(incl2)


def test_nullhomotopic_matches_oracle():
    for space in census_up_to(3):
        from secnum.finspace import iter_open_masks

        for mask in iter_open_masks(space):
            sub, incl = subspace_of_mask(space, mask)
            assert is_nullhomotopic_in(incl) == brute_nullhomotopic_inclusion(space, mask)


def test_nullhomotopy_target():
    s = sierpinski()
    assert nullhomotopy_target(identity_map(s)) in (0, 1)
    c = pseudocircle()
    assert nullhomotopy_target(identity_map(c)) is None
    assert nullhomotopy_target(constant_map(c, c, 2)) == 2


def test_cat_examples():
    assert cat(make_space(1, [])).value == ExtNat(1)
    assert cat(sierpinski()).value == ExtNat(1)
    result = cat(pseudocircle())
    assert result.value == ExtNat(2)
    covered = 0
    for element in result.cover:
        covered |= element.mask
    assert covered == pseudocircle().full_mask
    degenerate = cat(empty_space())
    assert degenerate.value == ExtNat(1) and degenerate.degenerate


def test_cat_against_brute_force():
    for space in census_up_to(3):
        assert cat(space).value == brute_cat(space), space
    assert cat(pseudocircle()).value == brute_cat(pseudocircle())


def test_cat_core_invariance_and_contractibility():
    for space in census_up_to(4):
        assert cat(space).value == cat(core(space).space).value
        if space.n:
            assert (cat(space).value == ExtNat(1)) == is_contractible(space)


def test_cat_disconnected():
    d = discrete_space(3)
    assert cat(d).value == ExtNat(3)


def test_budget_exhaustion_is_loud():
    c = pseudocircle()
    with pytest.raises(BudgetExhausted):
        homotopic(constant_map(c, c, 0), constant_map(c, c, 1), budget=3)
