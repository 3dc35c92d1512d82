"""Genus-one invariants, CM trace candidates, and trace feasibility."""

from math import isqrt

from .exact import is_perfect_square, kronecker_symbol
from .symbolic import MPoly, RationalFunction, scalar_div


def weierstrass_j(a1, a2, a3, a4, a6):
    """Exact j-invariant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Coefficients are tower constants; the result is a tower constant, so a
    rational j comes out as an exact rational even when the model is not.
    """
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = (a1 * a1) * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * (a3 * a3) - a4 * a4
    c4 = b2 * b2 - 24 * b4
    delta = -(b2 * b2) * b8 - 8 * (b4 ** 3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6
    return scalar_div(c4 ** 3, delta)


def cubic_model_j(cubic, variable="u"):
    """j of v^2 = monic cubic in the given variable."""
    coeffs = cubic.coeffs_in(variable)
    assert len(coeffs) == 4, "expected a cubic"
    tower = cubic.tower
    one = tower.one()
    assert coeffs[3] == one, "cubic must be monic"
    zero = tower.zero()
    return weierstrass_j(zero, coeffs[2], zero, coeffs[1], coeffs[0])


class BinaryQuartic:
    """Invariants of a*u^4 + b*u^3 + c*u^2 + d*u + e (genus-one model v^2 = q)."""

    def __init__(self, a, b, c, d, e):
        self.coefficients = (a, b, c, d, e)

    @classmethod
    def from_polynomial(cls, quartic, variable="u"):
        coeffs = quartic.coeffs_in(variable)
        assert len(coeffs) <= 5
        coeffs = coeffs + [quartic.tower.zero()] * (5 - len(coeffs))
        e, d, c, b, a = coeffs
        return cls(a, b, c, d, e)

    def invariant_i(self):
        a, b, c, d, e = self.coefficients
        return 12 * a * e - 3 * b * d + c * c

    def invariant_j(self):
        a, b, c, d, e = self.coefficients
        return (72 * a * c * e - 27 * a * d * d - 27 * e * b * b
                + 9 * b * c * d - 2 * c ** 3)

    def j_invariant(self):
        """j = 6912 I^3 / (4 I^3 - J^2), exact; rational function if parametric."""
        i3 = self.invariant_i() ** 3
        jj = self.invariant_j()
        num = 6912 * i3
        den = 4 * i3 - jj * jj
        if num.constants_only() and den.constants_only():
            return RationalFunction(scalar_div(num, den))
        return RationalFunction(num, den)


def j_from_legendre(lam):
    """j of the double cover branched over {0, 1, infinity, lam}."""
    if isinstance(lam, MPoly):
        lam = RationalFunction(lam)
    num = 256 * (lam * lam - lam + 1) ** 3
    den = (lam * lam) * (lam - 1) ** 2
    return num / den


def cm_trace_candidates(disc, p):
    """Possible Frobenius traces at a good prime p for a curve with CM by
    the imaginary quadratic order of the given discriminant.

    Inert or ramified primes force the supersingular trace 0; split primes
    allow exactly the a with a^2 - 4p = disc * b^2.
    """
    assert disc < 0 and disc % 4 in (0, 1)
    assert p > 3
    if kronecker_symbol(disc % p, p) <= 0:
        return {0}
    m = -disc
    out = set()
    for a in range(1, isqrt(4 * p) + 1):
        r = 4 * p - a * a
        if r % m == 0 and is_perfect_square(r // m):
            out.add(a)
            out.add(-a)
    return out


def weil_trace_range(p, k=1):
    """All traces allowed by the Weil bound for genus 1 over F_{p^k}."""
    bound = isqrt(4 * p ** k)
    return set(range(-bound, bound + 1))


def trace_feasibility(target, candidate_sets):
    """Decide whether target = sum of one choice from each candidate set.

    Returns (feasible, witness) where the witness lists one choice per set;
    the search is a subset-sum sweep over the (tiny) reachable range.
    """
    achievable = {0: ()}
    for cand in candidate_sets:
        nxt = {}
        for s, path in sorted(achievable.items()):
            for a in sorted(cand):
                ns = s + a
                if ns not in nxt:
                    nxt[ns] = path + (a,)
        achievable = nxt
        if not achievable:
            return False, None
    if target in achievable:
        return True, list(achievable[target])
    return False, None


def cm_consistency(model, disc, primes):
    """Check counted traces of a genus-one model against CM candidates.

    Returns (ok, evidence); evidence is the offending (p, trace) on failure,
    else the full list of checked pairs.
    """
    checked = []
    for p in primes:
        a = model.count_points(p).trace
        if a not in cm_trace_candidates(disc, p):
            return False, (p, a)
        checked.append((p, a))
    return True, checked
