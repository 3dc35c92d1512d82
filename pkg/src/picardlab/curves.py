"""Curve models with exact point counts over prime fields and small extensions.

Every model knows its genus and how to count rational points; counts are
returned as ``CountRecord`` objects that enforce the Weil bound on
construction, so a miscount in any route fails loudly.
"""

from fractions import Fraction

from .exact import is_prime
from .gf import ExtField
from .symbolic import parse_polynomial


class CountRecord:
    """Point count of a genus-g curve over F_{p^k} together with its trace."""

    def __init__(self, prime, power, npoints, genus):
        q = prime ** power
        self.prime = prime
        self.power = power
        self.npoints = npoints
        self.genus = genus
        self.trace = q + 1 - npoints
        # Weil: |trace| <= 2g sqrt(q), kept exact by squaring.
        assert self.trace * self.trace <= 4 * genus * genus * q, (
            "Weil bound violated: p=%d k=%d N=%d g=%d" % (prime, power, npoints, genus)
        )

    def __repr__(self):
        return "CountRecord(p=%d, k=%d, N=%d, a=%d, g=%d)" % (
            self.prime, self.power, self.npoints, self.trace, self.genus)


def poly_table(poly, variables):
    """Flatten an exact polynomial into [(exponent tuple, Fraction)] rows.

    The polynomial must have plain rational coefficients; tower constants are
    rejected because they have no canonical residue mod p.
    """
    names = list(variables)
    rows = []
    for mono, coeff in poly.terms.items():
        exps = [0] * len(names)
        for var, exp in mono:
            if var not in names:
                raise ValueError("non-rational coefficient or stray symbol %r" % var)
            exps[names.index(var)] = exp
        rows.append((tuple(exps), coeff))
    rows.sort()
    return rows


def _coeff_mod(c, p):
    num, den = c.numerator, c.denominator
    if den % p == 0:
        raise ZeroDivisionError("coefficient %s is not p-integral at %d" % (c, p))
    return num * pow(den, -1, p) % p


def table_mod(rows, p):
    return [(exps, _coeff_mod(c, p)) for exps, c in rows if _coeff_mod(c, p) != 0]


def power_residue_counts(p, n):
    """counts[v] = #{x in F_p : x^n = v}."""
    counts = [0] * p
    for x in range(p):
        counts[pow(x, n, p)] += 1
    return counts


def _univariate_mod(rows, p):
    """Dense low-to-high coefficient list of a one-variable table mod p."""
    deg = max(e[0] for e, _ in rows) if rows else 0
    out = [0] * (deg + 1)
    for exps, c in rows:
        out[exps[0]] = (out[exps[0]] + _coeff_mod(c, p)) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _eval_poly(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


class PlaneModel:
    """Smooth projective plane curve F(x, y, z) = 0 of the given degree."""

    kind = "plane"

    def __init__(self, poly, variables=("x", "y", "z"), diagonal=False):
        self.poly = poly
        self.variables = tuple(variables)
        self.rows = poly_table(poly, self.variables)
        self.degree = max(sum(e) for e, _ in self.rows)
        assert all(sum(e) == self.degree for e, _ in self.rows), "not homogeneous"
        self.diagonal = diagonal

    def genus(self):
        d = self.degree
        return (d - 1) * (d - 2) // 2

    def count_points(self, p):
        assert is_prime(p) and p > 2
        if self.diagonal:
            n = self._count_diagonal(p)
        else:
            n = self._count_scan(p)
        return CountRecord(p, 1, n, self.genus())

    def _count_diagonal(self, p):
        # x^d + y^d + z^d: affine chart z=1 via d-th power residue counts,
        # then the d-th roots of -1 on the line z=0.
        t = power_residue_counts(p, self.degree)
        n = sum(t[v] * t[(-1 - v) % p] for v in range(p))
        return n + t[(p - 1) % p]

    def _count_scan(self, p):
        rows = table_mod(self.rows, p)
        d = self.degree
        powers = [[pow(x, e, p) for e in range(d + 1)] for x in range(p)]
        n = 0
        for x in range(p):
            px = powers[x]
            for y in range(p):
                py = powers[y]
                acc = 0
                for (ex, ey, ez), c in rows:   # chart z = 1
                    acc += c * px[ex] * py[ey]
                if acc % p == 0:
                    n += 1
        # line z = 0: points (x : 1 : 0) and (1 : 0 : 0)
        edge = [(e, c) for e, c in rows if e[2] == 0]
        for x in range(p):
            if sum(c * powers[x][ex] for (ex, ey, ez), c in edge) % p == 0:
                n += 1
        if sum(c for (ex, ey, ez), c in edge if ey == 0) % p == 0:
            n += 1
        return n

    def count_points_ext(self, p, k, cap=60):
        """Count over F_{p^k} by a two-chart scan; guarded by a size cap."""
        assert is_prime(p) and p > 2 and 1 <= k <= 3
        if k == 1:
            return self.count_points(p)
        if p ** k > cap ** 2:
            raise ValueError("extension scan of size %d^%d refused" % (p, k))
        field = ExtField(p, k)
        rows = table_mod(self.rows, p)
        elements = list(field.elements())
        n = 0
        for x in elements:
            for y in elements:
                acc = field.zero()
                for (ex, ey, ez), c in rows:
                    acc = acc + (x ** ex) * (y ** ey) * c
                if acc.is_zero():
                    n += 1
        for x in elements:
            acc = field.zero()
            for (ex, ey, ez), c in rows:
                if ez == 0:
                    acc = acc + (x ** ex) * c
            if acc.is_zero():
                n += 1
        one_zero = sum(c for (ex, ey, ez), c in rows if ey == 0 and ez == 0) % p
        if one_zero == 0:
            n += 1
        return CountRecord(p, k, n, self.genus())


class HyperellipticModel:
    """y^2 = f(x) with f squarefree; degree 3 or 4 doubles as a genus-1 model."""

    kind = "hyperelliptic"

    def __init__(self, f_poly, variable="x"):
        self.f_poly = f_poly
        self.variable = variable
        self.rows = poly_table(f_poly, (variable,))
        self.degree = max(e[0] for e, _ in self.rows)
        assert self.degree >= 3

    def genus(self):
        return (self.degree - 1) // 2

    def _infinity(self, p, counts):
        if self.degree % 2 == 1:
            return 1
        lc = _univariate_mod(self.rows, p)[-1]
        return counts[lc]

    def count_points(self, p):
        assert is_prime(p) and p > 2
        coeffs = _univariate_mod(self.rows, p)
        assert len(coeffs) - 1 == self.degree, "leading coefficient vanishes mod %d" % p
        counts = power_residue_counts(p, 2)
        n = sum(counts[_eval_poly(coeffs, x, p)] for x in range(p))
        n += self._infinity(p, counts)
        return CountRecord(p, 1, n, self.genus())

    def count_points_ext(self, p, k, cap=2300):
        assert is_prime(p) and p > 2 and 1 <= k <= 3
        if k == 1:
            return self.count_points(p)
        if p ** k > cap:
            raise ValueError("extension scan of size %d^%d refused" % (p, k))
        field = ExtField(p, k)
        coeffs = [field(c) for c in _univariate_mod(self.rows, p)]
        n = 0
        for x in field.elements():
            acc = field.zero()
            for c in reversed(coeffs):
                acc = acc * x + c
            n += acc.nth_power_root_count(2)
        if self.degree % 2 == 1:
            n += 1
        else:
            n += coeffs[-1].nth_power_root_count(2)
        return CountRecord(p, k, n, self.genus())


class SuperellipticModel:
    """y^m = f(x) with f squarefree."""

    kind = "superelliptic"

    def __init__(self, m, f_poly, variable="x"):
        self.m = m
        self.f_poly = f_poly
        self.variable = variable
        self.rows = poly_table(f_poly, (variable,))
        self.degree = max(e[0] for e, _ in self.rows)

    def genus(self):
        # branch points: the roots of f, plus infinity when m does not divide deg f
        branch = self.degree + (1 if self.degree % self.m else 0)
        g2 = (self.m - 1) * (branch - 2)
        assert g2 % 2 == 0
        return g2 // 2

    def count_points(self, p):
        assert is_prime(p) and p > 2 and p % self.m != 0
        coeffs = _univariate_mod(self.rows, p)
        assert len(coeffs) - 1 == self.degree, "leading coefficient vanishes mod %d" % p
        counts = power_residue_counts(p, self.m)
        n = sum(counts[_eval_poly(coeffs, x, p)] for x in range(p))
        if self.degree % self.m == 0:
            n += counts[coeffs[-1]]
        else:
            n += 1
        return CountRecord(p, 1, n, self.genus())

    def count_points_ext(self, p, k, cap=2300):
        assert is_prime(p) and p > 2 and 1 <= k <= 3 and p % self.m != 0
        if k == 1:
            return self.count_points(p)
        if p ** k > cap:
            raise ValueError("extension scan of size %d^%d refused" % (p, k))
        field = ExtField(p, k)
        coeffs = [field(c) for c in _univariate_mod(self.rows, p)]
        n = 0
        for x in field.elements():
            acc = field.zero()
            for c in reversed(coeffs):
                acc = acc * x + c
            n += acc.nth_power_root_count(self.m)
        if self.degree % self.m == 0:
            n += coeffs[-1].nth_power_root_count(self.m)
        else:
            n += 1
        return CountRecord(p, k, n, self.genus())


class SpaceModel:
    """Curve in P^n given by relation polynomials plus a counting route.

    The genus comes from the complete-intersection formula when the listed
    relations cut the curve; otherwise it must be supplied explicitly.
    """

    kind = "space"

    def __init__(self, relations, variables, fibration, genus=None, tower=None):
        self.relations = list(relations)
        self.variables = tuple(variables)
        self.fibration = fibration
        self.tower = tower
        if genus is None:
            degrees = []
            for rel in self.relations:
                rows = poly_table(rel, self.variables)
                deg = max(sum(e) for e, _ in rows)
                assert all(sum(e) == deg for e, _ in rows)
                degrees.append(deg)
            n = len(self.variables) - 1
            assert len(degrees) == n - 1, "not a complete intersection; pass genus"
            total = 1
            for d in degrees:
                total *= d
            two_g = total * (sum(degrees) - n - 1) + 2
            assert two_g % 2 == 0
            genus = two_g // 2
        self._genus = genus

    def genus(self):
        return self._genus

    def count_points(self, p):
        assert is_prime(p) and p > 2
        kind = self.fibration["type"]
        if kind == "sqrt_product":
            n = self._count_sqrt_product(p)
        elif kind == "pencil_form":
            n = self._count_pencil_form(p)
        elif kind == "cyclic_shift_orbit_sextic":
            n = self._count_shift_orbit(p)
        else:
            raise ValueError("unknown fibration %r" % kind)
        return CountRecord(p, 1, n, self._genus)

    def count_points_ext(self, p, k, cap=20):
        assert 1 <= k <= 3
        if k == 1:
            return self.count_points(p)
        if p > cap:
            raise ValueError("extension enumeration refused above p=%d" % cap)
        field = ExtField(p, k)
        n = _projective_zero_count(
            [table_mod(poly_table(r, self.variables), p) for r in self.relations],
            field)
        return CountRecord(p, k, n, self._genus)

    def _count_sqrt_product(self, p):
        # The curve is a tower of double covers of P^1: each listed binary
        # form acquires a square root, so a point above (x : y) contributes
        # the product of the square-root counts.
        counts = power_residue_counts(p, 2)
        factor_rows = [table_mod(poly_table(f, self.fibration["base_vars"]), p)
                       for f in self.fibration["factors"]]

        def fiber(x, y):
            total = 1
            for rows in factor_rows:
                v = sum(c * pow(x, ex, p) * pow(y, ey, p) for (ex, ey), c in rows) % p
                total *= counts[v]
                if total == 0:
                    break
            return total

        n = sum(fiber(x, 1) for x in range(p))
        return n + fiber(1, 0)

    def _count_pencil_form(self, p):
        # Ruling of a cone: for each line (s : r) of the ruling, the curve
        # meets it in the projective roots of a binary cubic in (A, B).
        rows = table_mod(poly_table(self.fibration["form"],
                                    tuple(self.fibration["fiber_vars"]) +
                                    tuple(self.fibration["root_vars"])), p)
        deg = max(ea + eb for (_, _, ea, eb), _ in rows)
        t3 = [pow(x, 3, p) for x in range(p)]
        t2 = [pow(x, 2, p) for x in range(p)]

        def roots(coeffs_ab):
            # coeffs_ab[j] multiplies A^(deg-j) B^j; count points of P^1
            n = 1 if coeffs_ab[0] == 0 else 0      # (A : B) = (1 : 0)
            c0, c1, c2, c3 = coeffs_ab[3], coeffs_ab[2], coeffs_ab[1], coeffs_ab[0]
            for a in range(p):
                if (c3 * t3[a] + c2 * t2[a] + c1 * a + c0) % p == 0:
                    n += 1
            return n

        assert deg == 3, "pencil route expects a binary cubic"

        def fiber(s, r):
            coeffs = [0] * (deg + 1)
            for (es, er, ea, eb), c in rows:
                coeffs[eb] = (coeffs[eb] + c * pow(s, es, p) * pow(r, er, p)) % p
            return roots(coeffs)

        n = sum(fiber(s, 1) for s in range(p))
        return n + fiber(1, 0)

    def _count_shift_orbit(self, p):
        # Quotient of the diagonal plane sextic by the coordinate 3-cycle.
        # Orbit counting: 3 N(quotient) = N + N_s + N_{s^2}, where N_s counts
        # points whose Frobenius image is the shifted point.  Writing a = X^6
        # for X in the norm-one circle of F_{p^3}, the two twisted conditions
        # become a + a*frob(a) + 1 = 0 and frob(a) + a*frob(a) + 1 = 0.
        base = PlaneModel(
            parse_polynomial(self.tower, "x^6+y^6+z^6"),
            ("x", "y", "z"), diagonal=True)._count_diagonal(p)
        field = ExtField(p, 3)
        order = p * p + p + 1
        h6 = (field.multiplicative_generator() ** (p - 1)) ** 6
        sixth = 3 if order % 3 == 0 else 1       # X -> X^6 is (gcd(6, order))-to-1
        steps = order // sixth
        frob = field.frobenius_map()
        mul = field.mul_raw
        a = field.one().coeffs
        h6 = h6.coeffs
        n1 = n2 = 0
        for _ in range(steps):
            fa = frob(a)
            t1 = mul(a, fa)
            if (a[0] + t1[0] + 1) % p == 0 and (a[1] + t1[1]) % p == 0 \
                    and (a[2] + t1[2]) % p == 0:
                n1 += 1
            if (fa[0] + t1[0] + 1) % p == 0 and (fa[1] + t1[1]) % p == 0 \
                    and (fa[2] + t1[2]) % p == 0:
                n2 += 1
            a = mul(a, h6)
        total = base + sixth * (n1 + n2)
        assert total % 3 == 0
        return total // 3


class ProductModel:
    """Symbolic-only source (a product of two plane curves); not countable."""

    kind = "product"

    def __init__(self, relations, variables):
        self.relations = list(relations)
        self.variables = tuple(variables)

    def genus(self):
        raise ValueError("product sources carry no curve genus")

    def count_points(self, p):
        raise ValueError("product sources are not counted")


def _projective_zero_count(relation_rows, field):
    """Brute-force count of common projective zeros over a small field."""
    elements = list(field.elements())
    nvars = len(relation_rows[0][0][0]) if relation_rows[0] else 0
    n = 0
    for point in _projective_points(elements, nvars, field):
        ok = True
        for rows in relation_rows:
            acc = field(0)
            for exps, c in rows:
                term = field(c)
                for x, e in zip(point, exps):
                    if e:
                        term = term * (x ** e)
                acc = acc + term
            if not acc.is_zero():
                ok = False
                break
        if ok:
            n += 1
    return n


def _projective_points(elements, nvars, field):
    # representatives: first nonzero coordinate equal to 1
    for lead in range(nvars):
        prefix = [field(0)] * lead + [field(1)]
        yield from _extend(prefix, nvars - lead - 1, elements)


def _extend(prefix, remaining, elements):
    if remaining == 0:
        yield tuple(prefix)
        return
    for x in elements:
        yield from _extend(prefix + [x], remaining - 1, elements)


def brute_plane_count(rows_mod_p, p):
    """Independent O(p^2 d) projective scan used as an oracle in tests."""
    n = 0
    for lead in range(3):
        head = [0] * lead + [1]
        free = 3 - lead - 1
        for tail in _int_tuples(free, p):
            point = head + list(tail)
            acc = 0
            for (ex, ey, ez), c in rows_mod_p:
                acc += c * pow(point[0], ex, p) * pow(point[1], ey, p) \
                    * pow(point[2], ez, p)
            if acc % p == 0:
                n += 1
    return n


def _int_tuples(length, p):
    if length == 0:
        yield ()
        return
    for x in range(p):
        for rest in _int_tuples(length - 1, p):
            yield (x,) + rest
