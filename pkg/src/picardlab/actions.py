"""Finite symmetry groups of a curve and their action on differentials.

A group element is stored as its coordinate formulas (one rational function
per affine variable).  The closure is computed by breadth-first composition
of the generators; every element also carries the matrix of its pullback on
the chosen basis of holomorphic differentials, propagated from the generator
matrices, and the word in the generators that produced it.

Conventions: elements act on points, so ``new = cur o gen`` applies ``gen``
first; pullback is contravariant, hence M(cur o gen) = M(gen) * M(cur) in
the column convention f*(b_k) = sum_i M[i][k] b_i.
"""

from fractions import Fraction

from .linalg import identity_matrix, matrix_mul, matrix_rank
from .morphisms import (
    CurveMap,
    Differential,
    classify_in_basis,
    monomial,
    pullback,
)
from .symbolic import (
    RationalFunction,
    _list_degree,
    constant_poly_divmod,
    tower_invert,
)


def _monic_gcd(a, b, tower):
    a = a[: _list_degree(a) + 1]
    b = b[: _list_degree(b) + 1]
    while _list_degree(b) >= 0:
        _, r = constant_poly_divmod(a, b, tower)
        a, b = b, r[: _list_degree(r) + 1]
    inv = tower_invert(a[_list_degree(a)])
    return [c * inv for c in a]


def _from_coeffs(coeffs, var, tower):
    out = tower.zero()
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            out = out + c * tower.var(var, k)
    return out


def _canonical_formula(rf, base_var, fiber_var):
    """Canonical form of a coordinate formula of a curve symmetry.

    Handles the shape (fiber^e * P(base)) / Q(base) by exact univariate
    cancellation and a monic denominator; anything else is returned as-is
    (monomial denominators are already canonical).
    """
    tower = rf.tower
    num, den = rf.num, rf.den
    if len(den.terms) <= 1:
        return rf
    if den.free_variables() != {base_var}:
        return rf
    buckets = num.coeffs_in(fiber_var)
    nonzero = [k for k, part in enumerate(buckets) if not part.is_zero()]
    if len(nonzero) > 1:
        return rf
    exp = nonzero[0] if nonzero else 0
    part = buckets[exp] if nonzero else tower.zero()
    if part.free_variables() - {base_var}:
        return rf
    a = part.coeffs_in(base_var)
    b = den.coeffs_in(base_var)
    if not all(c.constants_only() for c in a + b):
        return rf
    g = _monic_gcd(a, b, tower)
    if _list_degree(g) > 0:
        a, _ = constant_poly_divmod(a, g, tower)
        b, _ = constant_poly_divmod(b, g, tower)
    inv = tower_invert(b[_list_degree(b)])
    a = [c * inv for c in a]
    b = [c * inv for c in b]
    new_num = _from_coeffs(a, base_var, tower)
    if exp:
        new_num = new_num * tower.var(fiber_var, exp)
    return RationalFunction(new_num, _from_coeffs(b, base_var, tower))


class GroupAction:
    def __init__(
        self,
        system,
        generators,
        omega,
        basis_monomials,
        base_var,
        fiber_var,
        geometric_vars,
        order_bound=1024,
    ):
        self.system = system
        self.omega = omega
        self.basis_monomials = list(basis_monomials)
        self.base_var = base_var
        self.fiber_var = fiber_var
        self.geometric_vars = tuple(geometric_vars)
        self.tower = system.tower
        self.generators = [
            {v: self._canonical(g[v]) for v in self.geometric_vars}
            for g in generators
        ]

        gen_mats = [self._pullback_matrix(g) for g in self.generators]
        identity = {
            v: RationalFunction(self.tower.var(v)) for v in self.geometric_vars
        }
        self.elements = [
            (identity, identity_matrix(self.tower, len(self.basis_monomials)), ())
        ]
        seen = {self._key(identity)}
        idx = 0
        while idx < len(self.elements):
            formulas, mat, word = self.elements[idx]
            idx += 1
            for gi, (gf, gm) in enumerate(zip(self.generators, gen_mats)):
                new_f = {
                    v: self._canonical(formulas[v].substitute(gf))
                    for v in self.geometric_vars
                }
                key = self._key(new_f)
                if key in seen:
                    continue
                seen.add(key)
                if len(self.elements) >= order_bound:
                    raise ValueError("group closure exceeds order bound")
                self.elements.append((new_f, matrix_mul(gm, mat), word + (gi,)))

    def _canonical(self, rf):
        return _canonical_formula(rf, self.base_var, self.fiber_var)

    def _key(self, formulas):
        parts = []
        for v in self.geometric_vars:
            rf = formulas[v]
            parts.append(
                (
                    tuple(sorted(rf.num.terms.items())),
                    tuple(sorted(rf.den.terms.items())),
                )
            )
        return tuple(parts)

    def _pullback_matrix(self, formulas):
        cmap = CurveMap(self.system, formulas, None)
        columns = []
        for mono in self.basis_monomials:
            form = Differential(
                self.omega.coeff * monomial(self.tower, mono),
                self.omega.base_var,
            )
            pulled = pullback(cmap, form, self.base_var, self.fiber_var)
            vec = classify_in_basis(
                self.system,
                self.omega,
                self.basis_monomials,
                pulled,
                self.geometric_vars,
            )
            if vec is None:
                raise ValueError("pullback leaves the span of the basis")
            columns.append(vec)
        n = len(self.basis_monomials)
        return [[columns[k][i] for k in range(n)] for i in range(n)]

    @property
    def order(self):
        return len(self.elements)

    def matrices(self):
        return [mat for _, mat, _ in self.elements]

    def character_norm(self, indices=None):
        """<chi, chi> of the (sub)representation on the given basis indices."""
        if indices is None:
            indices = range(len(self.basis_monomials))
        indices = list(indices)
        tower = self.tower
        total = tower.zero()
        for _, mat, _ in self.elements:
            tr = tower.zero()
            for i in indices:
                tr = tr + mat[i][i]
            total = total + tr * tower.conjugate(tr)
        return total * Fraction(1, len(self.elements))

    def is_block_stable(self, indices):
        """Whether the span of the given basis indices is preserved."""
        inside = set(indices)
        outside = [i for i in range(len(self.basis_monomials)) if i not in inside]
        for _, mat, _ in self.elements:
            for k in inside:
                for i in outside:
                    if not mat[i][k].is_zero():
                        return False
        return True

    def verify_decomposition(self, partition):
        """Check a partition of the basis into irreducible stable blocks.

        Returns (ok, evidence): each block must be preserved by every group
        element and carry a character of norm exactly 1.
        """
        covered = sorted(i for part in partition for i in part)
        if covered != list(range(len(self.basis_monomials))):
            return False, [{"error": "partition does not cover the basis"}]
        one = self.tower.one()
        evidence = []
        ok = True
        for part in partition:
            stable = self.is_block_stable(part)
            norm = self.character_norm(part)
            irreducible = norm == one
            ok = ok and stable and irreducible
            evidence.append(
                {
                    "indices": list(part),
                    "stable": stable,
                    "character_norm": repr(norm),
                    "irreducible": irreducible,
                }
            )
        return ok, evidence

    def apply_matrix(self, mat, vector):
        n = len(vector)
        out = []
        for i in range(n):
            acc = self.tower.zero()
            row = mat[i]
            for k in range(n):
                if not vector[k].is_zero():
                    acc = acc + row[k] * vector[k]
            out.append(acc)
        return out

    def span_certificate(self, indices, vector):
        """Greedy translates of one differential that span a stable block.

        ``vector`` is the basis classification of the differential (support
        must lie inside ``indices``).  Returns (words, rank): the chosen group
        elements and the dimension they span; spanning succeeded when
        rank == len(indices).
        """
        inside = set(indices)
        for i, c in enumerate(vector):
            if i not in inside and not c.is_zero():
                raise ValueError("differential is not supported in the block")
        positions = sorted(inside)
        rows = []
        words = []
        for _, mat, word in self.elements:
            image = self.apply_matrix(mat, vector)
            row = [image[i] for i in positions]
            if matrix_rank(rows + [row]) > len(rows):
                rows.append(row)
                words.append(word)
                if len(rows) == len(positions):
                    break
        return words, len(rows)
