"""Exact multivariate Laurent polynomials over Q and their quotients.

LaurentPoly stores a map {exponent vector: Fraction}; RatFunc keeps a
gcd-reduced numerator/denominator pair.  Both are immutable.  Monomial
order, where it matters (lex-max extraction), is lexicographic on the
declared variable order.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import NotSubtractionFree
from .rationals import rat, rat_str


class LaurentPoly:
    """A Laurent polynomial in named variables with Fraction coefficients.

    Binary operations require both operands to carry the same variable
    tuple (use .align() to embed into a larger context); plain numbers are
    lifted automatically.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        for exp, c in terms.items():
            c = rat(c)
            if c == 0:
                continue
            exp = tuple(exp)
            if len(exp) != nv:
                raise ValueError("exponent vector length mismatch")
            clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c, variables=()):
        variables = tuple(variables)
        c = rat(c)
        if c == 0:
            return LaurentPoly(variables, {})
        return LaurentPoly(variables, {(0,) * len(variables): c})

    @staticmethod
    def var(name, variables):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return LaurentPoly(variables, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(variables, exponents, coeff=1):
        return LaurentPoly(variables, {tuple(exponents): rat(coeff)})

    def align(self, variables):
        """Embed into a larger variable context (must contain ours)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = [variables.index(v) for v in self.variables]
        terms = {}
        for exp, c in self.terms.items():
            e = [0] * len(variables)
            for p, k in zip(pos, exp):
                e[p] = k
            terms[tuple(e)] = c
        return LaurentPoly(variables, terms)

    # -- predicates ---------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self):
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError("variable context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial:
                raise ValueError("negative power of a non-monomial")
            e, c = next(iter(self.terms.items()))
            return LaurentPoly(self.variables, {tuple(k * x for x in e): c ** k})
        out = LaurentPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.variables)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- structure ----------------------------------------------------

    def min_exponents(self):
        """Componentwise minimum exponent over all terms (0-vector if empty)."""
        nv = len(self.variables)
        if not self.terms:
            return (0,) * nv
        mins = [min(e[i] for e in self.terms) for i in range(nv)]
        return tuple(mins)

    def shift(self, offset):
        """Multiply by the monomial with the given exponent vector."""
        return LaurentPoly(
            self.variables,
            {tuple(a + b for a, b in zip(e, offset)): c for e, c in self.terms.items()},
        )

    def lex_max_term(self):
        """(exponent, coefficient) of the lexicographically maximal term."""
        if self.is_zero:
            raise ValueError("zero polynomial has no lex-max term")
        e = max(self.terms)
        return e, self.terms[e]

    def degree_bound(self):
        return max((sum(abs(k) for k in e) for e in self.terms), default=0)

    # -- evaluation / substitution -------------------------------------

    def eval(self, values, one=None):
        """Evaluate with values: dict name -> field element.

        Works over any commutative ring whose elements support + and *
        and integer powers.  `one` supplies the ring's multiplicative
        identity for empty products; defaults to Fraction(1).
        """
        if one is None:
            one = Fraction(1)
        out = None
        for e, c in self.terms.items():
            term = one * c
            for name, k in zip(self.variables, e):
                if k:
                    term = term * values[name] ** k
            out = term if out is None else out + term
        if out is None:
            return one * 0
        return out

    def subs(self, mapping, variables=None):
        """Substitute some variables by LaurentPoly/RatFunc/scalars.

        Unmapped variables map to themselves in the target context
        (default: same variable tuple).
        """
        variables = self.variables if variables is None else tuple(variables)
        vals = {}
        for v in self.variables:
            if v in mapping:
                vals[v] = mapping[v]
            else:
                vals[v] = RatFunc.from_poly(LaurentPoly.var(v, variables))
        lifted = {}
        for k, x in vals.items():
            if isinstance(x, RatFunc):
                lifted[k] = x
            elif isinstance(x, LaurentPoly):
                lifted[k] = RatFunc.from_poly(x.align(variables))
            else:
                lifted[k] = RatFunc.constant(x, variables)
        return self.eval(lifted, one=RatFunc.constant(1, variables))

    # -- display / io -------------------------------------------------

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.variables, e) if k != 0
            )
            if not mono:
                bits.append(rat_str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{rat_str(c)}*{mono}")
        out = " + ".join(bits).replace("+ -", "- ")
        return out

    def to_json(self):
        return {
            "variables": list(self.variables),
            "terms": [
                {"exponents": list(e), "coefficient": rat_str(c)}
                for e, c in sorted(self.terms.items(), reverse=True)
            ],
        }

    @staticmethod
    def from_json(obj):
        return LaurentPoly(
            obj["variables"],
            {tuple(t["exponents"]): Fraction(t["coefficient"]) for t in obj["terms"]},
        )


# ---------------------------------------------------------------------------
# gcd via sympy, with a fast path for monomials


def _to_sympy(p: LaurentPoly, gens):
    shifted = p.shift(tuple(-m for m in p.min_exponents()))
    return sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in shifted.terms.items()},
        *gens,
    )


def _from_sympy(sp, variables):
    terms = {}
    for e, c in sp.as_dict().items():
        q = sympy.Rational(c)
        terms[tuple(int(k) for k in e)] = Fraction(int(q.p), int(q.q))
    return LaurentPoly(variables, terms)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd up to monomial units: both inputs divided exactly by the result."""
    if a.variables != b.variables:
        raise ValueError("variable context mismatch")
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.is_monomial or b.is_monomial:
        return LaurentPoly.monomial(
            a.variables,
            tuple(min(x, y) for x, y in zip(a.min_exponents(), b.min_exponents())),
        )
    gens = [sympy.Symbol(v) for v in a.variables]
    g = sympy.gcd(_to_sympy(a, gens), _to_sympy(b, gens))
    if not isinstance(g, sympy.Poly):
        g = sympy.Poly(g, *gens)
    out = _from_sympy(g, a.variables)
    # carry the common monomial factor as well
    mono = tuple(min(x, y) for x, y in zip(a.min_exponents(), b.min_exponents()))
    return out.shift(mono)


def poly_divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a / b; raises ValueError if not exact."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if b.is_monomial:
        e, c = next(iter(b.terms.items()))
        return LaurentPoly(
            a.variables,
            {tuple(x - y for x, y in zip(ea, e)): ca / c for ea, ca in a.terms.items()},
        )
    if a.is_zero:
        return a
    gens = [sympy.Symbol(v) for v in a.variables]
    sa, sb = _to_sympy(a, gens), _to_sympy(b, gens)
    q, r = sympy.div(sa, sb)
    if not r.is_zero:
        raise ValueError("inexact polynomial division")
    if not isinstance(q, sympy.Poly):
        q = sympy.Poly(q, *gens)
    out = _from_sympy(q, a.variables)
    off = tuple(x - y for x, y in zip(a.min_exponents(), b.min_exponents()))
    return out.shift(off)


# ---------------------------------------------------------------------------


class RatFunc:
    """Quotient of Laurent polynomials, stored gcd-reduced.

    The denominator is normalized to an honest polynomial (min exponent 0
    in every variable) whose lex-max coefficient is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, reduce=True):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.variables != den.variables:
            raise ValueError("variable context mismatch")
        if num.is_zero:
            den = LaurentPoly.constant(1, num.variables)
        elif reduce:
            g = poly_gcd(num, den)
            if not (g.is_monomial and next(iter(g.terms.values())) == 1 and
                    all(k == 0 for k in next(iter(g.terms.keys())))):
                num = poly_divide_exact(num, g)
                den = poly_divide_exact(den, g)
        if not num.is_zero:
            # push the denominator's monomial content into the numerator
            off = den.min_exponents()
            if any(off):
                den = den.shift(tuple(-k for k in off))
                num = num.shift(tuple(-k for k in off))
            _, lc = den.lex_max_term()
            if lc < 0:
                den = -den
                num = -num
            if den.is_monomial:
                c = next(iter(den.terms.values()))
                if c != 1:
                    den = LaurentPoly.constant(1, den.variables)
                    num = LaurentPoly(
                        num.variables, {e: cc / c for e, cc in num.terms.items()}
                    )
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_poly(p: LaurentPoly):
        return RatFunc(p, LaurentPoly.constant(1, p.variables), reduce=False)

    @staticmethod
    def constant(c, variables):
        return RatFunc.from_poly(LaurentPoly.constant(c, variables))

    @staticmethod
    def var(name, variables):
        return RatFunc.from_poly(LaurentPoly.var(name, variables))

    @property
    def variables(self):
        return self.num.variables

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise ValueError("not a (Laurent) polynomial")
        c = self.den.constant_value()
        if c == 1:
            return self.num
        return LaurentPoly(self.num.variables, {e: x / c for e, x in self.num.terms.items()})

    def align(self, variables):
        return RatFunc(self.num.align(variables), self.den.align(variables), reduce=False)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.variables != self.variables:
                raise ValueError("variable context mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc.from_poly(self.num._coerce(other))
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-reduce before multiplying to keep factors small
        a = RatFunc(self.num, other.den)
        b = RatFunc(other.num, self.den)
        return RatFunc(a.num * b.num, a.den * b.den, reduce=False)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out = RatFunc.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation ---------------------------------------------------

    def eval(self, values, one=None):
        num = self.num.eval(values, one=one)
        den = self.den.eval(values, one=one)
        if hasattr(den, "inv"):
            return num * den.inv()
        return num / den

    def subs(self, mapping, variables=None):
        variables = self.variables if variables is None else tuple(variables)
        num = self.num.subs(mapping, variables)
        den = self.den.subs(mapping, variables)
        return num / den

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def to_json(self):
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json()}


def ratfunc_expand_positive(f: RatFunc):
    """Expand f as a positive sum of Laurent monomials.

    Returns a list of (exponent vector, coefficient) pairs with all
    coefficients > 0.  Raises NotSubtractionFree if the reduced
    denominator is not a monomial or any coefficient is negative.
    """
    if isinstance(f, LaurentPoly):
        f = RatFunc.from_poly(f)
    if f.is_zero:
        return []
    if not f.den.is_monomial:
        raise NotSubtractionFree(f"denominator is not a monomial: {f.den!r}")
    de, dc = next(iter(f.den.terms.items()))
    out = []
    for e, c in sorted(f.num.terms.items(), reverse=True):
        coeff = c / dc
        if coeff <= 0:
            raise NotSubtractionFree(f"negative coefficient {coeff} at {e}")
        out.append((tuple(a - b for a, b in zip(e, de)), coeff))
    return out
