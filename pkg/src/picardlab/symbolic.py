"""Exact symbolic arithmetic over a tower of algebraic constants.

A ConstantTower fixes an ordered list of constant symbols, each with a monic
power relation over the symbols before it (e.g. om^2 = -1 - om) and a
conjugation image (the restriction of complex conjugation).  MPoly is a
multivariate polynomial whose monomials may mix tower constants with free
geometric variables; powers of a constant at or above its relation degree are
rewritten automatically, so equal ring elements have equal term dicts.

RationalFunction pairs two MPolys; equality is by cross-multiplication, which
avoids multivariate gcds.  CurveRelation supports reduction of polynomials
modulo a defining equation that is unit-monic in a distinguished variable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name


def _mono(d: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in d.items() if e))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return _mono(d)


def _mono_exp(m: Monomial, var: str) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


def _mono_without(m: Monomial, var: str, new_exp: int) -> Monomial:
    d = dict(m)
    if new_exp:
        d[var] = new_exp
    else:
        d.pop(var, None)
    return _mono(d)


class ConstantTower:
    """Ordered algebraic constants with power relations and conjugation."""

    def __init__(self, symbols: Iterable[tuple]):
        self.order: list[str] = []
        self.degrees: dict[str, int] = {}
        self.relations: dict[str, dict] = {}
        self.conjugates: dict[str, dict] = {}
        for name, degree, relation, conjugate in symbols:
            if name in self.degrees:
                raise ValueError(f"duplicate constant {name}")
            if degree < 2:
                raise ValueError("relation degree must be >= 2")
            self.order.append(name)
            self.degrees[name] = degree
            self.relations[name] = {
                _mono(dict(m)): Fraction(c) for m, c in relation
            }
            self.conjugates[name] = {
                _mono(dict(m)): Fraction(c) for m, c in conjugate
            }
        self._rank = {name: k for k, name in enumerate(self.order)}

    def is_constant(self, var: str) -> bool:
        return var in self.degrees

    def _first_overflow(self, m: Monomial):
        best = None
        for v, e in m:
            d = self.degrees.get(v)
            if d is not None and e >= d:
                if best is None or self._rank[v] > self._rank[best[0]]:
                    best = (v, e)
        return best

    def poly(self, terms=None) -> "MPoly":
        return MPoly._make(self, dict(terms or {}))

    def const(self, c) -> "MPoly":
        return MPoly._make(self, {(): Fraction(c)})

    def var(self, name: str, exp: int = 1) -> "MPoly":
        return MPoly._make(self, {_mono({name: exp}): Fraction(1)})

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def conjugate(self, p: "MPoly") -> "MPoly":
        """Apply the conjugation to every constant symbol; free variables
        and rational coefficients are fixed."""
        out = self.zero()
        for m, c in p.terms.items():
            piece = self.const(c)
            for v, e in m:
                if v in self.conjugates:
                    piece = piece * MPoly._make(self, dict(self.conjugates[v])) ** e
                else:
                    piece = piece * self.var(v, e)
            out = out + piece
        return out


class MPoly:
    __slots__ = ("tower", "terms")

    def __init__(self, tower: ConstantTower, terms: dict):
        self.tower = tower
        self.terms = terms

    @classmethod
    def _make(cls, tower: ConstantTower, raw: dict) -> "MPoly":
        out: dict = {}
        stack = [(m, Fraction(c)) for m, c in raw.items() if c]
        while stack:
            m, c = stack.pop()
            hit = tower._first_overflow(m)
            if hit is None:
                out[m] = out.get(m, Fraction(0)) + c
                continue
            v, e = hit
            rest = _mono_without(m, v, e - tower.degrees[v])
            for rm, rc in tower.relations[v].items():
                stack.append((_mono_mul(rest, rm), c * rc))
        return cls(tower, {m: c for m, c in out.items() if c})

    # -- ring operations ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            nc = terms.get(m, Fraction(0)) + c
            if nc:
                terms[m] = nc
            else:
                terms.pop(m, None)
        return MPoly(self.tower, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MPoly(self.tower, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        raw: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                raw[m] = raw.get(m, Fraction(0)) + c1 * c2
        return MPoly._make(self.tower, raw)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.tower.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def constants_only(self) -> bool:
        return all(
            self.tower.is_constant(v) for m in self.terms for v, _ in m
        )

    def is_rational_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def rational_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {()}:
            raise ValueError(f"not a rational constant: {self}")
        return self.terms[()]

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def free_variables(self) -> set:
        return {v for v in self.variables() if not self.tower.is_constant(v)}

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        return max(_mono_exp(m, var) for m in self.terms)

    def coeffs_in(self, var: str) -> list:
        """Coefficients [c_0, ..., c_d] of powers of var (MPoly entries)."""
        d = max(0, self.degree_in(var))
        buckets = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            e = _mono_exp(m, var)
            buckets[e][_mono_without(m, var, 0)] = c
        return [MPoly(self.tower, b) for b in buckets]

    def derivative(self, var: str) -> "MPoly":
        raw: dict = {}
        for m, c in self.terms.items():
            e = _mono_exp(m, var)
            if e:
                raw[_mono_without(m, var, e - 1)] = c * e
        return MPoly(self.tower, {m: c for m, c in raw.items() if c})

    def substitute_poly(self, mapping: Mapping[str, "MPoly"]) -> "MPoly":
        out = self.tower.zero()
        for m, c in self.terms.items():
            piece = self.tower.const(c)
            for v, e in m:
                if v in mapping:
                    piece = piece * mapping[v] ** e
                else:
                    piece = piece * self.tower.var(v, e)
            out = out + piece
        return out

    def substitute(self, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        out = RationalFunction(self.tower.zero())
        for m, c in self.terms.items():
            piece = RationalFunction(self.tower.const(c))
            for v, e in m:
                if v in mapping:
                    piece = piece * mapping[v] ** e
                else:
                    piece = piece * RationalFunction(self.tower.var(v, e))
            out = out + piece
        return out

    def __repr__(self):
        return self.render()

    def render(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(),
            key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]),
        )
        out = []
        for m, c in ordered:
            factors = []
            if abs(c) != 1 or not m:
                factors.append(str(abs(c)))
            for v, e in m:
                factors.append(v if e == 1 else f"{v}^{e}")
            body = "*".join(factors)
            if not out:
                out.append(body if c >= 0 else "-" + body)
            else:
                out.append(("+ " if c >= 0 else "- ") + body)
        return " ".join(out)


def tower_invert(a: MPoly) -> MPoly:
    """Inverse of a constants-only element, by extended Euclid up the tower."""
    if a.is_zero():
        raise ZeroDivisionError("tower inverse of 0")
    if not a.constants_only():
        raise ValueError("tower_invert needs a constants-only element")
    tower = a.tower
    present = [s for s in tower.order if any(_mono_exp(m, s) for m in a.terms)]
    if not present:
        return tower.const(1 / a.rational_value())
    s = present[-1]
    d = tower.degrees[s]

    # minimal polynomial of s over the lower subfield, as coefficient list
    rel = MPoly._make(tower, dict(tower.relations[s]))
    mpoly_coeffs = rel.coeffs_in(s)
    minimal = [-c for c in mpoly_coeffs] + [tower.zero()] * (d - len(mpoly_coeffs))
    minimal = minimal[:d] + [tower.one()]

    acoeffs = a.coeffs_in(s)

    r0, r1 = minimal, acoeffs
    t0, t1 = [tower.zero()], [tower.one()]
    while _list_degree(r1) > 0:
        q, r = constant_poly_divmod(r0, r1, tower)
        r0, r1 = r1, r
        qt = _poly_mul_list(q, t1, tower)
        t0, t1 = t1, _poly_sub_list(t0, qt, tower)
    lead = r1[_list_degree(r1)]
    c = tower_invert(lead)
    out = tower.zero()
    for k, tk in enumerate(t1):
        out = out + tk * c * tower.var(s, k)
    return out


def _list_degree(poly: list) -> int:
    for k in range(len(poly) - 1, -1, -1):
        if not poly[k].is_zero():
            return k
    return -1


def constant_poly_divmod(A: list, B: list, tower):
    """Quotient and remainder of dense coefficient lists (low-to-high order).

    The leading coefficient of B must be invertible (constants-only).
    """
    A = list(A)
    db = _list_degree(B)
    binv = tower_invert(B[db])
    q = [tower.zero()] * (len(A))
    while _list_degree(A) >= db:
        da = _list_degree(A)
        f = A[da] * binv
        q[da - db] = f
        for k in range(db + 1):
            A[da - db + k] = A[da - db + k] - f * B[k]
    return q, A


def _poly_mul_list(A: list, B: list, tower) -> list:
    out = [tower.zero()] * (len(A) + len(B))
    for i, ai in enumerate(A):
        if ai.is_zero():
            continue
        for j, bj in enumerate(B):
            out[i + j] = out[i + j] + ai * bj
    return out


def _poly_sub_list(A: list, B: list, tower) -> list:
    n = max(len(A), len(B))
    A = A + [tower.zero()] * (n - len(A))
    B = B + [tower.zero()] * (n - len(B))
    return [a - b for a, b in zip(A, B)]


def scalar_div(a: MPoly, b: MPoly) -> MPoly:
    """a / b for constants-only b."""
    return a * tower_invert(b)


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        tower = num.tower
        if den is None:
            den = tower.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = tower.one()
        else:
            num, den = _cancel_monomials(num, den)
            num, den = _normalize_scalars(num, den)
        self.num = num
        self.den = den

    @property
    def tower(self):
        return self.num.tower

    def is_polynomial(self) -> bool:
        return self.den == self.tower.one()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.tower.const(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.num * o.den - o.num * self.den, self.den * o.den
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        return RationalFunction(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # canonical only in the monomial-denominator regime; adequate for keys
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def substitute(self, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        n = self.num.substitute(mapping)
        d = self.den.substitute(mapping)
        return n / d

    def derivative(self, var: str) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(var) * self.den
            - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def __repr__(self):
        if self.is_polynomial():
            return self.num.render()
        return f"({self.num.render()}) / ({self.den.render()})"


def _cancel_monomials(num: MPoly, den: MPoly):
    common: dict = {}
    first = True
    for poly in (num, den):
        for m in poly.terms:
            md = dict(m)
            if first:
                common = md
                first = False
            else:
                common = {
                    v: min(e, md.get(v, 0)) for v, e in common.items() if v in md
                }
            if not common:
                return num, den
    shift = {v: -e for v, e in common.items()}

    def strip(p: MPoly) -> MPoly:
        return MPoly(
            p.tower,
            {
                _mono_mul(m, _mono(shift)): c
                for m, c in p.terms.items()
            },
        )

    return strip(num), strip(den)


def _normalize_scalars(num: MPoly, den: MPoly):
    tower = den.tower
    geo_parts = {
        tuple((v, e) for v, e in m if not tower.is_constant(v))
        for m in den.terms
    }
    if len(geo_parts) == 1:
        # den = (invertible constant) * (geometric monomial): fold it out
        (geo,) = geo_parts
        unit = MPoly(
            tower,
            {
                tuple((v, e) for v, e in m if tower.is_constant(v)): c
                for m, c in den.terms.items()
            },
        )
        inv = tower_invert(unit)
        return num * inv, MPoly._make(tower, {geo: Fraction(1)})
    lead_m = max(den.terms)
    c = den.terms[lead_m]
    if c != 1:
        inv = Fraction(1) / c
        num = MPoly(num.tower, {m: k * inv for m, k in num.terms.items()})
        den = MPoly(den.tower, {m: k * inv for m, k in den.terms.items()})
    return num, den


class CurveRelation:
    """A defining polynomial, unit-monic in a distinguished variable."""

    def __init__(self, poly: MPoly, main_var: str):
        self.poly = poly
        self.main_var = main_var
        self.degree = poly.degree_in(main_var)
        if self.degree < 1:
            raise ValueError("relation must involve the main variable")
        lead = poly.coeffs_in(main_var)[self.degree]
        if not lead.constants_only():
            raise ValueError("leading coefficient in the main variable must be constant")
        self._lead_inv = tower_invert(lead)
        self._tail = [
            -(c * self._lead_inv) for c in poly.coeffs_in(main_var)[: self.degree]
        ]

    @property
    def tower(self):
        return self.poly.tower

    def reduce(self, p: MPoly) -> MPoly:
        """Remainder of p modulo the relation, in the main variable."""
        y, d = self.main_var, self.degree
        work = dict(p.terms)
        out: dict = {}
        while work:
            m, c = work.popitem()
            e = _mono_exp(m, y)
            if e < d:
                nc = out.get(m, Fraction(0)) + c
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
                continue
            rest = _mono_without(m, y, e - d)
            for k, tail_k in enumerate(self._tail):
                if tail_k.is_zero():
                    continue
                extra = MPoly(self.tower, {rest: c}) * tail_k * self.tower.var(y, k)
                for m2, c2 in extra.terms.items():
                    nc = work.get(m2, Fraction(0)) + c2
                    if nc:
                        work[m2] = nc
                    else:
                        work.pop(m2, None)
        return MPoly(self.tower, out)

    def is_zero_poly(self, p: MPoly) -> bool:
        return self.reduce(p).is_zero()

    def is_zero_rf(self, rf: RationalFunction) -> bool:
        if self.reduce(rf.den).is_zero():
            raise ZeroDivisionError("denominator vanishes on the curve")
        return self.reduce(rf.num).is_zero()

    def rf_equal(self, a: RationalFunction, b: RationalFunction) -> bool:
        return self.is_zero_rf(a - b)


# -- expression parsing ------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.toks: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch in "+-*/^()":
                self.toks.append(ch)
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in expression")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t


def parse_expression(tower: ConstantTower, text: str) -> RationalFunction:
    """Parse +, -, *, /, ^, parentheses, integers and symbol names."""
    tk = _Tokens(text)

    def expr():
        node = term()
        while tk.peek() in ("+", "-"):
            op = tk.take()
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = factor()
        while tk.peek() in ("*", "/"):
            op = tk.take()
            rhs = factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor():
        sign = 1
        while tk.peek() in ("+", "-"):
            if tk.take() == "-":
                sign = -sign
        node = atom()
        if tk.peek() == "^":
            tk.take()
            neg = False
            if tk.peek() == "-":
                tk.take()
                neg = True
            e = tk.take()
            if e is None or not e.isdigit():
                raise ValueError("exponent must be an integer")
            k = int(e)
            node = node ** (-k if neg else k)
        return node * sign if sign < 0 else node

    def atom():
        t = tk.take()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            node = expr()
            if tk.take() != ")":
                raise ValueError("missing closing parenthesis")
            return node
        if t.isdigit():
            return RationalFunction(tower.const(int(t)))
        if t.isidentifier():
            return RationalFunction(tower.var(t))
        raise ValueError(f"unexpected token {t!r}")

    node = expr()
    if tk.peek() is not None:
        raise ValueError(f"trailing input at token {tk.peek()!r}")
    return node


def parse_polynomial(tower: ConstantTower, text: str) -> MPoly:
    """Parse an expression that must be polynomial up to a constant denominator."""
    rf = parse_expression(tower, text)
    if not rf.den.constants_only():
        raise ValueError(f"not a polynomial: {text!r}")
    return rf.num * tower_invert(rf.den)


def standard_tower() -> ConstantTower:
    """The constants used by the built-in catalog.

    om: primitive cube root of unity        om^2 = -1 - om
    i:  square root of -1                   i^2  = -1
    s2: positive square root of 2           s2^2 = 2
    lam: fourth root of -1/3 via            lam^2 = (2*om + 1)/3
    e:  real cube root of 1/4               e^3  = 1/4
    """
    return ConstantTower(
        [
            ("om", 2, [((("om", 1),), -1), ((), -1)], [((("om", 1),), -1), ((), -1)]),
            ("i", 2, [((), -1)], [((("i", 1),), -1)]),
            ("s2", 2, [((), 2)], [((("s2", 1),), 1)]),
            (
                "lam",
                2,
                [((("om", 1),), Fraction(2, 3)), ((), Fraction(1, 3))],
                [((("i", 1), ("lam", 1)), 1)],
            ),
            ("e", 3, [((), Fraction(1, 4))], [((("e", 1),), 1)]),
        ]
    )
