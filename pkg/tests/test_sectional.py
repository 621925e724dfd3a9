import pytest

from secnum.census import InstanceGenerator, census_up_to
from secnum.extnat import INF, ExtNat
from secnum.finspace import (
    CMap,
    compose,
    configuration_space,
    constant_map,
    discrete_space,
    empty_space,
    enumerate_maps,
    identity_map,
    make_map,
    make_space,
    product,
    pseudocircle,
    pullback,
    sierpinski,
    subspace,
)
from secnum.homotopy import cat, homotopic, is_contractible
from secnum.sectional import (
    MODE_SECTION,
    CertificateError,
    CoverCertificate,
    relative_sec,
    relative_secat,
    relative_tc_bounds,
    sec,
    secat,
    sectionable_opens,
)

from oracles import brute_relative_sec_lift, brute_sec


def _pi21(space):
    conf, projections = configuration_space(space, 2)
    return projections[1]


def test_sectionable_opens_identity():
    s = sierpinski()
    pairs = sectionable_opens(identity_map(s), MODE_SECTION)
    assert [o.mask for o, _ in pairs] == [s.full_mask]


def test_sectionable_opens_empty_source():
    s = sierpinski()
    f = CMap(empty_space(), s, [])
    assert sectionable_opens(f, MODE_SECTION) == []
    assert sec(f).value == INF


def test_sectionable_opens_projection_from_config_space():
    pairs = sectionable_opens(_pi21(sierpinski()), MODE_SECTION)
    assert [o.mask for o, _ in pairs] == [0b01]


def test_sec_examples():
    s = sierpinski()
    assert sec(identity_map(s)).value == ExtNat(1)
    assert sec(_pi21(discrete_space(2))).value == ExtNat(1)
    result = sec(_pi21(s))
    assert result.value == INF
    assert result.uncovered_point == 1
    assert result.certificate is None


def test_secat_le_sec_and_identity():
    s = sierpinski()
    assert secat(identity_map(s)).value == ExtNat(1)
    for space in census_up_to(3):
        f = _pi21(space)
        assert secat(f).value <= sec(f).value


def test_secat_of_constant_equals_cat_of_connected_target():
    point = make_space(1, [])
    c = pseudocircle()
    result = secat(constant_map(point, c, 0))
    assert result.value == ExtNat(2)
    assert result.certificate.verify()
    assert sec(constant_map(point, c, 0)).value == INF


def test_sec_secat_against_brute_force():
    gen = InstanceGenerator("sectional-oracle")
    for _ in range(40):
        source = gen.space(3)
        target = gen.space(3)
        f = gen.cmap(source, target)
        assert sec(f).value == brute_sec(f, "section"), f
        assert secat(f).value == brute_sec(f, "homotopy"), f


def test_random_certificates_all_verify():
    gen = InstanceGenerator("certificates")
    verified = 0
    for _ in range(60):
        source = gen.space(3)
        target = gen.space(3)
        f = gen.cmap(source, target)
        for result in (sec(f), secat(f)):
            if result.certificate is not None:
                assert result.certificate.verify()
                verified += 1
        e, b, x = gen.space(3), gen.space(3), gen.space(3)
        p, g = gen.cmap(e, b), gen.cmap(x, b)
        lifted = relative_sec(p, g, route="lift")
        if lifted.certificate is not None:
            assert lifted.certificate.verify()
            verified += 1
    assert verified > 50


def test_certificates_verify_and_serialize():
    s = sierpinski()
    result = sec(identity_map(s))
    cert = result.certificate
    assert cert.verify()
    blob = cert.to_json_dict()
    assert blob["schema"] == "secnum.cover-certificate/1"
    assert blob["mode"] == "section"
    assert blob["cover"] == [3]
    assert all(check["holds"] for check in blob["checks"])


def test_tampered_certificate_fails():
    s = sierpinski()
    cert = sec(identity_map(s)).certificate
    swapped = CoverCertificate(
        mode=cert.mode,
        base=cert.base,
        cover=cert.cover,
        witnesses=(constant_map(s, s, 1),),
        context=cert.context,
    )
    with pytest.raises(CertificateError):
        swapped.verify()


def test_relative_sec_along_identity_is_sec():
    for space in census_up_to(3):
        if space.n == 0:
            continue
        p = _pi21(space)
        assert relative_sec(p, identity_map(space), route="both").value == sec(p).value


def test_relative_sec_along_open_inclusion_restricts():
    s = sierpinski()
    p = _pi21(s)
    sub, incl = subspace(s, [0])
    restricted = relative_sec(p, incl, route="both")
    # over {0} the fiber (0,1) gives a global lift
    assert restricted.value == ExtNat(1)


def test_relative_sec_routes_agree_with_oracle():
    gen = InstanceGenerator("relative-oracle")
    for _ in range(40):
        e, b, x = gen.space(3), gen.space(3), gen.space(3)
        p, g = gen.cmap(e, b), gen.cmap(x, b)
        expected = brute_relative_sec_lift(p, g)
        assert relative_sec(p, g, route="pullback").value == expected
        assert relative_sec(p, g, route="lift").value == expected


def test_relative_sec_degenerate_empty_base():
    s = sierpinski()
    g = CMap(empty_space(), s, [])
    result = relative_sec(_pi21(s), g, route="both")
    assert result.value == ExtNat(1)
    assert result.degenerate
    assert result.certificate.verify()


def test_relative_secat_bounds():
    gen = InstanceGenerator("relative-secat")
    for _ in range(25):
        e, b, x = gen.space(3), gen.space(3), gen.space(3)
        p, g = gen.cmap(e, b), gen.cmap(x, b)
        assert relative_secat(p, g).value <= relative_sec(p, g, route="pullback").value


def test_relative_constant_g_with_identity_p():
    s = sierpinski()
    point = make_space(1, [])
    g = constant_map(point, s, 1)
    assert relative_sec(identity_map(s), g, route="both").value == ExtNat(1)


def test_lift_certificate_mode_and_verification():
    d = discrete_space(2)
    result = relative_sec(_pi21(d), identity_map(d), route="lift")
    assert result.value == ExtNat(1)
    assert result.certificate.mode == "lift"
    assert result.certificate.verify()


def test_tc_bounds_contractible_exact():
    s = sierpinski()
    bounds = relative_tc_bounds(identity_map(s), identity_map(s))
    assert bounds.exact and bounds.domain_contractible
    assert bounds.lower == bounds.upper == ExtNat(1)
    assert bounds.to_json_dict()["upper"] == 1


def test_tc_bounds_noncontractible_unknown_upper():
    c = pseudocircle()
    bounds = relative_tc_bounds(identity_map(c), identity_map(c))
    assert not bounds.exact and bounds.upper is None
    assert bounds.lower == relative_sec(identity_map(c), identity_map(c)).value
    assert bounds.to_json_dict()["upper"] == "unknown"


def test_commuting_triangle_monotonicity():
    gen = InstanceGenerator("triangle")
    for _ in range(30):
        w, x, y = gen.space(3), gen.space(3), gen.space(3)
        h = gen.cmap(w, x)
        f = gen.cmap(x, y)
        f_prime = compose(f, h)
        assert sec(f_prime).value >= sec(f).value
        assert secat(f_prime).value >= secat(f).value


def test_product_with_identity_preserves_sec():
    s = sierpinski()
    p = _pi21(s)
    z = make_space(2, [(1, 0)])
    zc, _, _ = product(z, p.source)
    zy, _, _ = product(z, p.target)
    crossed = CMap(
        zc, zy,
        [(i // p.source.n) * p.target.n + p(i % p.source.n) for i in range(zc.n)],
    )
    assert sec(crossed).value == sec(p).value == INF
    assert secat(crossed).value == secat(p).value


# --- regressions for the asymmetry of pullbacks ---------------------------


def test_canonical_pullback_can_strictly_drop_secat():
    point = make_space(1, [])
    c = pseudocircle()
    p = constant_map(point, c, 0)
    g = constant_map(point, c, 0)
    _, to_base, _ = pullback(p, g)
    assert secat(p).value == ExtNat(2)
    assert secat(to_base).value == ExtNat(1)
    assert sec(to_base).value <= sec(p).value


def test_canonical_pullback_can_strictly_raise_secat():
    # cone over the circle model: contractible, category 1
    cone = make_space(5, [(2, 0), (2, 1), (3, 0), (3, 1), (0, 4), (1, 4), (2, 4), (3, 4)])
    assert is_contractible(cone)
    circle = pseudocircle()
    include = make_map(circle, cone, [0, 1, 2, 3])
    point = make_space(1, [])
    p = constant_map(point, cone, 0)
    assert secat(p).value == ExtNat(1)
    _, to_base, _ = pullback(p, include)
    assert secat(to_base).value == ExtNat(2)
    # sectional-number monotonicity still holds on the same square
    assert sec(to_base).value <= sec(p).value


def test_relative_secat_not_invariant_under_homotopy_of_g():
    """Known counterexample: homotopy invariance in the g slot needs a
    homotopy lifting property that finite projections generally lack."""
    s = sierpinski()
    point = make_space(1, [])
    p = constant_map(point, s, 0)
    g0 = constant_map(point, s, 0)
    g1 = constant_map(point, s, 1)
    assert homotopic(g0, g1)
    assert relative_secat(p, g0).value == ExtNat(1)
    assert relative_secat(p, g1).value == INF


def test_secat_le_cat_needs_connected_target():
    # pinned counterexample for the unrestricted inequality
    point = make_space(1, [])
    d2 = discrete_space(2)
    f = constant_map(point, d2, 0)
    assert secat(f).value == INF
    assert cat(d2).value == ExtNat(2)
    # and the gated form holds on connected targets
    gen = InstanceGenerator("secat-cat-gate")
    checked = 0
    for _ in range(60):
        x, y = gen.space(3), gen.space(3)
        from secnum.finspace import is_connected

        if not is_connected(y):
            continue
        f = gen.cmap(x, y)
        assert secat(f).value <= cat(y).value
        checked += 1
    assert checked > 10
