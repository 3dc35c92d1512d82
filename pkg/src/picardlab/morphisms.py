"""Maps between curve models: exact verification, pullback, classification.

All computations happen in the fraction field of the source coordinate ring
modulo its defining relations; nothing is ever evaluated numerically.
"""

from .linalg import solve_linear, solve_linear_field
from .symbolic import (
    CurveRelation,
    MPoly,
    RationalFunction,
    constant_poly_divmod,
    tower_invert,
)


class ReductionSystem:
    """Defining relations of a model, each solved for its own main variable.

    ``reduce`` rewrites a polynomial to a canonical representative modulo the
    relations; iteration continues until a fixed point, so the relation order
    does not matter.
    """

    def __init__(self, relations):
        self.relations = list(relations)
        assert self.relations
        mains = [r.main_var for r in self.relations]
        assert len(set(mains)) == len(mains), "duplicate main variables"

    @property
    def tower(self):
        return self.relations[0].tower

    def reduce(self, poly):
        while True:
            nxt = poly
            for rel in self.relations:
                nxt = rel.reduce(nxt)
            if nxt == poly:
                return poly
            poly = nxt

    def is_zero_poly(self, poly):
        return self.reduce(poly).is_zero()

    def is_zero_rf(self, rf):
        if self.is_zero_poly(rf.den):
            raise ZeroDivisionError("denominator vanishes on the curve")
        return self.is_zero_poly(rf.num)

    def rf_equal(self, a, b):
        if self.is_zero_poly(a.den) or self.is_zero_poly(b.den):
            raise ZeroDivisionError("denominator vanishes on the curve")
        return self.is_zero_poly(a.num * b.den - b.num * a.den)


def single_relation(poly, main_var):
    return ReductionSystem([CurveRelation(poly, main_var)])


class Differential:
    """A 1-form written as coeff * d(base_var) on some curve."""

    def __init__(self, coeff, base_var):
        if isinstance(coeff, MPoly):
            coeff = RationalFunction(coeff)
        self.coeff = coeff
        self.base_var = base_var

    def __mul__(self, other):
        return Differential(self.coeff * other, self.base_var)

    __rmul__ = __mul__

    def __repr__(self):
        return "(%r) d%s" % (self.coeff, self.base_var)


class CurveMap:
    """A rational map from a source system onto a target plane relation.

    ``components`` assigns a source rational function to every target
    variable; verification substitutes them into the target relation and
    reduces the numerator modulo the source relations.
    """

    def __init__(self, source, components, target_relation, name=""):
        self.source = source
        self.components = dict(components)
        self.target_relation = target_relation
        self.name = name

    def verify(self):
        """(holds, residual): the reduced numerator is the exact obstruction."""
        image = self.target_relation.substitute(self.components)
        if self.source.is_zero_poly(image.den):
            raise ZeroDivisionError("map undefined along the curve")
        residual = self.source.reduce(image.num)
        return residual.is_zero(), residual


def verify_image_relations(source, components, target_relations):
    """Check polynomial map components against a list of target relations.

    Everything is polynomial here (projective coordinates); returns
    (all_hold, residuals).
    """
    residuals = []
    ok = True
    for rel in target_relations:
        image = rel.substitute_poly(components)
        residual = source.reduce(image)
        residuals.append(residual)
        ok = ok and residual.is_zero()
    return ok, residuals


def implicit_derivative(system, base_var, fiber_var):
    """d(fiber)/d(base) along the unique relation containing the fiber var."""
    for rel in system.relations:
        if rel.main_var == fiber_var:
            f = rel.poly
            return RationalFunction(-f.derivative(base_var), f.derivative(fiber_var))
    raise ValueError("no relation solves for %r" % fiber_var)


def pullback(cmap, diff, base_var, fiber_var):
    """Pull a target differential back through the map.

    The source must be a plane model in (base_var, fiber_var); the chain rule
    uses the implicit derivative of the fiber variable.
    """
    h = diff.coeff.substitute(cmap.components)
    phi = cmap.components[diff.base_var]
    slope = implicit_derivative(cmap.source, base_var, fiber_var)
    dphi = phi.derivative(base_var) + phi.derivative(fiber_var) * slope
    return Differential(h * dphi, base_var)


def monomial(tower, pairs):
    out = tower.one()
    for var, exp in pairs:
        out = out * tower.var(var, exp)
    return out


def geometric_coefficients(poly, geometric_vars):
    """Split each term into geometric monomial times tower-constant part."""
    out = {}
    tower = poly.tower
    for mono, coeff in poly.terms.items():
        geo = tuple((v, e) for v, e in mono if v in geometric_vars)
        rest = tuple((v, e) for v, e in mono if v not in geometric_vars)
        cur = out.get(geo, tower.zero())
        out[geo] = cur + MPoly._make(tower, {rest: coeff})
    return out


def classify_in_basis(system, omega, basis_monomials, diff, geometric_vars):
    """Coordinates of a differential in a monomial basis m_k * omega.

    Returns the list of tower-constant coefficients, or None when the reduced
    form does not lie in the span.  The fast path applies whenever the ratio
    reduces to an honest polynomial; otherwise the coefficients are solved
    for linearly through the reduction.
    """
    assert omega.base_var == diff.base_var
    tower = system.tower
    ratio = diff.coeff / omega.coeff
    num = system.reduce(ratio.num)
    den = system.reduce(ratio.den)
    if den.is_zero():
        raise ZeroDivisionError("denominator vanishes on the curve")
    key_of = {}
    for k, mono in enumerate(basis_monomials):
        key = tuple(sorted((v, e) for v, e in mono if e))
        key_of[key] = k
    if den.constants_only():
        poly = num * tower_invert(den)
        vector = [tower.zero()] * len(basis_monomials)
        for geo, part in geometric_coefficients(poly, geometric_vars).items():
            if part.is_zero():
                continue
            if geo not in key_of:
                return None
            vector[key_of[geo]] = part
        return vector
    # solve num = sum_k c_k * reduce(m_k * den) coefficient-wise
    columns = []
    for mono in basis_monomials:
        m = monomial(tower, mono)
        columns.append(geometric_coefficients(system.reduce(m * den),
                                              geometric_vars))
    target = geometric_coefficients(num, geometric_vars)
    keys = set(target)
    for col in columns:
        keys |= set(col)
    keys = sorted(keys)
    matrix = [[col.get(key, tower.zero()) for col in columns] for key in keys]
    rhs = [target.get(key, tower.zero()) for key in keys]
    if all(e.constants_only() for row in matrix for e in row) and all(
        e.constants_only() for e in rhs
    ):
        return solve_linear(matrix, rhs)
    # entries carry free parameters: solve in the fraction field, then
    # insist every coordinate is an honest polynomial in the parameter
    solution = solve_linear_field(matrix, rhs)
    if solution is None:
        return None
    return [_parameter_quotient(rf) for rf in solution]


def _parameter_quotient(rf):
    """Exact polynomial value of a fraction-field solution coordinate."""
    tower = rf.tower
    num, den = rf.num, rf.den
    if den.constants_only():
        return num * tower_invert(den)
    free = sorted(den.free_variables() | num.free_variables())
    if len(free) != 1:
        raise ValueError(f"cannot scalarize multi-parameter quotient {rf}")
    var = free[0]
    q, r = constant_poly_divmod(
        num.coeffs_in(var), den.coeffs_in(var), tower
    )
    if any(not c.is_zero() for c in r):
        raise ValueError(f"coordinate is not polynomial in {var}: {rf}")
    out = tower.zero()
    for k, c in enumerate(q):
        out = out + c * tower.var(var, k)
    return out


def plane_basis_monomials(degree):
    """Exponent pairs (a, b) with a + b <= degree - 3, in a fixed order."""
    out = []
    for total in range(degree - 2):
        for a in range(total, -1, -1):
            out.append((("x", a), ("y", total - a)))
    return [tuple((v, e) for v, e in mono if e) for mono in out]
