"""Exact map verification and pullback anchors for every built-in family."""

import pytest

from picardlab.morphisms import (
    CurveMap,
    Differential,
    ReductionSystem,
    classify_in_basis,
    geometric_coefficients,
    implicit_derivative,
    monomial,
    plane_basis_monomials,
    pullback,
    single_relation,
    verify_image_relations,
)
from picardlab.symbolic import (
    CurveRelation,
    RationalFunction,
    parse_expression,
    parse_polynomial,
    standard_tower,
)

T = standard_tower()


def poly(text):
    return parse_polynomial(T, text)


def rf(text):
    return parse_expression(T, text)


def sextic_source():
    return single_relation(poly("x^6+y^6+1"), "y")


def sextic_omega():
    return Differential(rf("1/y^5"), "x")


SEXTIC_BASIS = plane_basis_monomials(6)


def cubic_target():
    return poly("v^2-u^3+1")


def test_plane_basis_order():
    names = [monomial(T, m).render() for m in SEXTIC_BASIS]
    assert names == ["1", "x", "y", "x^2", "x*y", "y^2",
                     "x^3", "x^2*y", "x*y^2", "y^3"]


def test_sextic_map_f_verifies():
    src = sextic_source()
    f = CurveMap(src, {"u": rf("-x^2"), "v": rf("y^3")}, cubic_target(), "f")
    ok, residual = f.verify()
    assert ok and residual.is_zero()


def test_sextic_map_g_verifies():
    src = sextic_source()
    g = CurveMap(src, {"u": rf("e*y^4/x^2"), "v": rf("(x^3-1/x^3)/2")},
                 cubic_target(), "g")
    ok, _ = g.verify()
    assert ok


def test_sextic_map_h_verifies():
    src = sextic_source()
    h = CurveMap(src, {"u": rf("x^2"), "v": rf("y^2")},
                 poly("u^3+v^3+1"), "h")
    ok, _ = h.verify()
    assert ok


def test_sextic_pullbacks_classify_exactly():
    src = sextic_source()
    omega = sextic_omega()
    du_v = Differential(rf("1/v"), "u")
    zero = T.zero()

    f = CurveMap(src, {"u": rf("-x^2"), "v": rf("y^3")}, cubic_target())
    vec = classify_in_basis(src, omega, SEXTIC_BASIS,
                            pullback(f, du_v, "x", "y"), ("x", "y"))
    expected = [zero] * 10
    expected[8] = T.const(-2)                   # -2 x y^2: index of (1,2)
    assert vec == expected

    g = CurveMap(src, {"u": rf("e*y^4/x^2"), "v": rf("(x^3-1/x^3)/2")},
                 cubic_target())
    vec = classify_in_basis(src, omega, SEXTIC_BASIS,
                            pullback(g, du_v, "x", "y"), ("x", "y"))
    expected = [zero] * 10
    expected[9] = -4 * T.var("e")               # -2^(4/3) y^3
    assert vec == expected

    h = CurveMap(src, {"u": rf("x^2"), "v": rf("y^2")}, poly("u^3+v^3+1"))
    vec = classify_in_basis(src, omega, SEXTIC_BASIS,
                            pullback(h, Differential(rf("1/v^2"), "u"),
                                     "x", "y"), ("x", "y"))
    expected = [zero] * 10
    expected[4] = T.const(2)                    # 2 x y
    assert vec == expected


def test_genus3_printed_map_fails_with_residual():
    src = single_relation(poly("y^2-x^7-x"), "y")
    f = CurveMap(src, {"u": rf("x^2"), "v": rf("x*y")}, poly("v^2-u^3-u"), "f")
    ok, residual = f.verify()
    assert not ok
    assert residual == poly("x^9-x^6+x^3-x^2")
    assert residual.render() == "x^9 - x^6 + x^3 - x^2"


def test_genus3_scaled_map_passes_with_scaled_pullback():
    src = single_relation(poly("y^2-x^7-x"), "y")
    g = CurveMap(src, {"u": rf("lam^2*(x+1/x)"), "v": rf("lam^3*y/x^2")},
                 poly("v^2-u^3-u"), "g")
    ok, _ = g.verify()
    assert ok
    pb = pullback(g, Differential(rf("1/v"), "u"), "x", "y")
    # lam^(-1) (x^2 - 1) dx/y with lam^(-1) = -3 lam^3
    assert src.rf_equal(pb.coeff, rf("-3*lam^3*(x^2-1)/y"))
    basis = [(), (("x", 1),), (("x", 2),)]
    vec = classify_in_basis(src, Differential(rf("1/y"), "x"), basis,
                            pb, ("x", "y"))
    assert vec == [poly("3*lam^3"), T.zero(), poly("-3*lam^3")]


def test_genus2_family_maps_verify_for_symbolic_t():
    src = single_relation(poly("y^2-x^6-t*x^3-1"), "y")
    plus = CurveMap(src, {"u": rf("x+1/x"), "v": rf("y*(x+1)/x^2")},
                    poly("v^2-(u+2)*(u^3-3*u+t)"), "plus")
    minus = CurveMap(src, {"u": rf("x+1/x"), "v": rf("y*(x-1)/x^2")},
                     poly("v^2-(u-2)*(u^3-3*u+t)"), "minus")
    for cmap in (plus, minus):
        ok, residual = cmap.verify()
        assert ok, residual.render()


def test_genus2_family_pullback():
    src = single_relation(poly("y^2-x^6-t*x^3-1"), "y")
    plus = CurveMap(src, {"u": rf("x+1/x"), "v": rf("y*(x+1)/x^2")},
                    poly("v^2-(u+2)*(u^3-3*u+t)"))
    pb = pullback(plus, Differential(rf("1/v"), "u"), "x", "y")
    assert src.rf_equal(pb.coeff, rf("(x-1)/y"))
    basis = [(), (("x", 1),)]
    vec = classify_in_basis(src, Differential(rf("1/y"), "x"), basis,
                            pb, ("x", "y"))
    assert vec == [T.const(-1), T.one()]


def test_octahedral_map_and_pullback_via_solver():
    src = single_relation(poly("y^2-x^5+x"), "y")
    m = CurveMap(src, {"u": rf("(x^2+1)/(x-1)"),
                       "v": rf("y*(x-(1-s2))/(x-1)^2")},
                 poly("v^2-u*(u+1)*(u-2*(1-s2))"), "m")
    ok, residual = m.verify()
    assert ok, residual.render()
    pb = pullback(m, Differential(rf("1/v"), "u"), "x", "y")
    # forces the non-polynomial classification route
    basis = [(), (("x", 1),)]
    vec = classify_in_basis(src, Differential(rf("1/y"), "x"), basis,
                            pb, ("x", "y"))
    assert vec == [poly("-1-s2"), T.one()]


def test_ciani_quotient_map_symbolic_t():
    src = single_relation(poly("x^4+y^4+1+t*(x^2*y^2+y^2+x^2)"), "y")
    m = CurveMap(src, {"u": rf("y"), "v": rf("x^2+t*(y^2+1)/2")},
                 poly("v^2-((t^2/4-1)*(u^4+1)+(t^2/2-t)*u^2)"), "quot")
    ok, residual = m.verify()
    assert ok, residual.render()
    pb = pullback(m, Differential(rf("1/v"), "u"), "x", "y")
    basis = [(), (("x", 1),), (("y", 1),)]
    omega = Differential(rf("1/(4*y^3+2*t*x^2*y+2*t*y)"), "x")
    vec = classify_in_basis(src, omega, basis, pb, ("x", "y"))
    assert vec is not None
    assert any(not c.is_zero() for c in vec)


def test_quotient_canonical_models():
    src = single_relation(poly("x^6+y^6+z^6"), "z")
    cases = [
        (["x^2", "x*y", "y^2", "z^2"],
         ["a*c-b^2", "a^3+c^3+d^3"]),
        (["(x+y)^2", "z*(x+y)", "z^2", "x*y"],
         ["a*c-b^2", "a*(a-3*d)^2+c^3-2*d^3"]),
        (["x^3", "y^3", "z^3", "x*y*z"],
         ["a^2+b^2+c^2", "d^3-a*b*c"]),
        (["x^3+y^3+z^3", "x*y*z", "x^2*y+y^2*z+z^2*x", "x*y^2+y*z^2+z*x^2"],
         ["(a+b)^2+5*b^2-2*c*d"]),
    ]
    for comps, rels in cases:
        components = {v: poly(c) for v, c in zip("abcd", comps)}
        ok, residuals = verify_image_relations(
            src, components, [poly(r) for r in rels])
        assert ok, [r.render() for r in residuals]


def test_product_parameterization_of_diagonal_surfaces():
    for d, scale in ((6, "i"), (4, "s2*(1+i)/2")):
        src = ReductionSystem([
            CurveRelation(poly("x^%d+y^%d+z^%d" % (d, d, d)), "z"),
            CurveRelation(poly("x2^%d+y2^%d+z2^%d" % (d, d, d)), "z2"),
        ])
        comps = {
            "a": poly("x*z2"), "b": poly("y*z2"),
            "c": poly("(%s)*x2*z" % scale), "d": poly("(%s)*y2*z" % scale),
        }
        target = poly("a^%d+b^%d+c^%d+d^%d" % (d, d, d, d))
        ok, residuals = verify_image_relations(src, comps, [target])
        assert ok, [r.render() for r in residuals]
        # dropping the scaling constant destroys the identity
        naive = dict(comps)
        naive["c"] = poly("x2*z")
        naive["d"] = poly("y2*z")
        ok, _ = verify_image_relations(src, naive, [target])
        assert not ok


def test_quadric_tower_projections():
    src = ReductionSystem([
        CurveRelation(poly("u^2-x*y"), "u"),
        CurveRelation(poly("v^2-x^2+y^2"), "v"),
        CurveRelation(poly("w^2-x^2-y^2"), "w"),
    ])
    ok, _ = verify_image_relations(
        src, {"a": poly("u"), "b": poly("v"), "c": poly("w")},
        [poly("4*a^4+b^4-c^4")])
    assert ok
    m = CurveMap(src, {"a": rf("x/y"), "b": rf("u*v*w/y^3")},
                 poly("b^2-a^5+a"), "halves")
    ok, residual = m.verify()
    assert ok, residual.render()


def test_implicit_derivative_on_circle():
    src = single_relation(poly("x^2+y^2-1"), "y")
    slope = implicit_derivative(src, "x", "y")
    assert src.rf_equal(slope, rf("-x/y"))
    with pytest.raises(ValueError):
        implicit_derivative(src, "x", "z")


def test_geometric_coefficients_split():
    p = poly("3*om*x^2*y+2*x^2*y+5*s2+7")
    parts = geometric_coefficients(p, ("x", "y"))
    key = (("x", 2), ("y", 1))
    assert parts[key] == poly("3*om+2")
    assert parts[()] == poly("5*s2+7")


def test_classification_rejects_outside_span():
    src = sextic_source()
    omega = sextic_omega()
    quartic = Differential(rf("x^4/y^5"), "x")   # degree too high for the basis
    assert classify_in_basis(src, omega, SEXTIC_BASIS, quartic,
                             ("x", "y")) is None


def test_map_undefined_denominator_raises():
    src = single_relation(poly("y^2-x^3-1"), "y")
    bad = CurveMap(src, {"u": RationalFunction(poly("x"),
                                               poly("y^2-x^3-1")),
                         "v": rf("y")},
                   poly("v^2-u^3-1"), "bad")
    with pytest.raises(ZeroDivisionError):
        bad.verify()
