"""Truncated Puiseux series: float coefficients, exact rational exponents.

A series lives on the grid (1/M)Z.  Exponents are exact Fractions; the
coefficient of t^(lead + k/M) sits in coeffs[k].  Each series carries an
`upper` bound: coefficients are reliable for every exponent < upper
(upper=None means the series is exact, i.e. a finite sum known in full).
Additions record cancellation by renormalizing the leading exponent; when
cancellation eats through the whole reliable window the operation raises
PrecisionExhausted instead of returning an unreliable answer.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import DivisionByZeroSeries, PrecisionExhausted, ZeroSeries
from .rationals import rat, rat_str

#: relative threshold below which a coefficient is considered cancelled
CANCEL_EPS = 1e-11

#: slots kept when an exact series must be truncated (e.g. inversion)
DEFAULT_SLOTS = 40

#: when True, full cancellation inside a truncated window yields an exact
#: zero instead of raising (used by matrix pipelines whose entries cancel
#: to zero by construction; guarded by downstream consistency checks)
_ZERO_ON_CANCEL = False


class cancellation_to_zero:
    """Context manager: treat fully-cancelled truncated series as zero."""

    def __enter__(self):
        global _ZERO_ON_CANCEL
        self._prev = _ZERO_ON_CANCEL
        _ZERO_ON_CANCEL = True
        return self

    def __exit__(self, *exc):
        global _ZERO_ON_CANCEL
        _ZERO_ON_CANCEL = self._prev
        return False


class PuiseuxSeries:
    __slots__ = ("M", "lead", "coeffs", "upper")

    def __init__(self, M, lead, coeffs, upper=None, _scale=None):
        self.M = int(M)
        self.lead = rat(lead)
        if (self.lead * self.M).denominator != 1:
            raise ValueError("leading exponent not on the grid")
        coeffs = [float(c) for c in coeffs]
        # normalize: drop cancelled leading coefficients
        scale = _scale if _scale is not None else max((abs(c) for c in coeffs), default=0.0)
        tol = CANCEL_EPS * scale
        i = 0
        while i < len(coeffs) and abs(coeffs[i]) <= tol:
            i += 1
        if i == len(coeffs):
            if upper is None or _ZERO_ON_CANCEL:
                coeffs = []
                self.lead = Fraction(0)
                upper = None
            else:
                raise PrecisionExhausted(
                    "cancellation consumed all retained coefficients"
                )
        else:
            self.lead = self.lead + Fraction(i, self.M)
            coeffs = coeffs[i:]
            # also zero-out cancelled interior slots (keeps exact zeros exact)
            coeffs = [0.0 if abs(c) <= tol else c for c in coeffs]
        if upper is not None:
            upper = rat(upper)
            keep = (upper - self.lead) * self.M
            nkeep = -(-keep.numerator // keep.denominator)  # ceil
            if nkeep <= 0:
                raise PrecisionExhausted("empty reliable window")
            coeffs = coeffs[: int(nkeep)]
            if not coeffs:
                raise PrecisionExhausted("empty reliable window")
        else:
            while coeffs and coeffs[-1] == 0.0:
                coeffs.pop()
        self.coeffs = coeffs
        self.upper = upper

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(M=1):
        return PuiseuxSeries(M, 0, [], upper=None)

    @staticmethod
    def constant(c, M=1):
        return PuiseuxSeries(M, 0, [float(c)], upper=None)

    @staticmethod
    def t_power(e, M=None):
        e = rat(e)
        if M is None:
            M = e.denominator
        return PuiseuxSeries(M, e, [1.0], upper=None)

    @staticmethod
    def from_coeff_list(lead, coeffs, M, upper=None):
        return PuiseuxSeries(M, lead, coeffs, upper=upper)

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_exact(self):
        return self.upper is None

    def val(self) -> Fraction:
        if self.is_zero:
            raise ZeroSeries("zero series has no valuation")
        return self.lead

    def leading_coefficient(self) -> float:
        if self.is_zero:
            raise ZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def is_positive(self) -> bool:
        """Membership in K_{>0}: positive leading coefficient."""
        return not self.is_zero and self.coeffs[0] > 0

    def coefficient(self, e) -> float:
        """Coefficient of t^e (0.0 if outside the stored window)."""
        e = rat(e)
        k = (e - self.lead) * self.M
        if k.denominator != 1 or k < 0 or k >= len(self.coeffs):
            return 0.0
        return self.coeffs[int(k)]

    def _window_end(self):
        """First untrusted exponent (None = exact)."""
        return self.upper

    # -- grid helpers -------------------------------------------------

    def regrid(self, M):
        """Re-express on a finer grid (M must be a multiple of self.M)."""
        M = int(M)
        if M == self.M:
            return self
        if M % self.M:
            raise ValueError("grids incompatible")
        r = M // self.M
        coeffs = [0.0] * ((len(self.coeffs) - 1) * r + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            coeffs[k * r] = c
        out = object.__new__(PuiseuxSeries)
        out.M = M
        out.lead = self.lead
        out.coeffs = coeffs
        out.upper = self.upper
        return out

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, (int, float, Fraction)):
            return PuiseuxSeries.constant(float(other), self.M)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        M = lcm(self.M, other.M)
        a, b = self.regrid(M), other.regrid(M)
        uppers = [u for u in (a.upper, b.upper) if u is not None]
        upper = min(uppers) if uppers else None
        lead = min(a.lead, b.lead)
        ends = []
        for s in (a, b):
            ends.append(s.lead + Fraction(len(s.coeffs), M))
        end = max(ends)
        if upper is not None:
            end = min(end, upper)
        n = int((end - lead) * M)
        if n <= 0:
            raise PrecisionExhausted("no overlap of reliable windows")
        coeffs = [0.0] * n
        for s in (a, b):
            off = int((s.lead - lead) * M)
            for k, c in enumerate(s.coeffs):
                if off + k < n:
                    coeffs[off + k] += c
        scale = max(
            max((abs(c) for c in a.coeffs), default=0.0),
            max((abs(c) for c in b.coeffs), default=0.0),
        )
        return PuiseuxSeries(M, lead, coeffs, upper=upper, _scale=scale)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(PuiseuxSeries)
        out.M = self.M
        out.lead = self.lead
        out.coeffs = [-c for c in self.coeffs]
        out.upper = self.upper
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, Fraction)):
            c = float(other)
            if c == 0.0:
                return PuiseuxSeries.zero(self.M)
            out = object.__new__(PuiseuxSeries)
            out.M = self.M
            out.lead = self.lead
            out.coeffs = [c * x for x in self.coeffs]
            out.upper = self.upper
            return out
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PuiseuxSeries.zero(max(self.M, other.M))
        M = lcm(self.M, other.M)
        a, b = self.regrid(M), other.regrid(M)
        lead = a.lead + b.lead
        uppers = []
        if a.upper is not None:
            uppers.append(b.lead + a.upper)
        if b.upper is not None:
            uppers.append(a.lead + b.upper)
        upper = min(uppers) if uppers else None
        if upper is None:
            n = len(a.coeffs) + len(b.coeffs) - 1
        else:
            q = (upper - lead) * M
            n = -(-q.numerator // q.denominator)  # ceil
            if n <= 0:
                raise PrecisionExhausted("empty reliable window in product")
            n = min(n, len(a.coeffs) + len(b.coeffs) - 1)
        coeffs = [0.0] * n
        for i, ca in enumerate(a.coeffs):
            if i >= n:
                break
            if ca == 0.0:
                continue
            top = min(len(b.coeffs), n - i)
            for j in range(top):
                coeffs[i + j] += ca * b.coeffs[j]
        return PuiseuxSeries(M, lead, coeffs, upper=upper)

    __rmul__ = __mul__

    def inv(self, slots=None):
        if self.is_zero:
            raise DivisionByZeroSeries("inverse of the zero series")
        M = self.M
        c0 = self.coeffs[0]
        if len(self.coeffs) == 1 and self.is_exact:
            return PuiseuxSeries(M, -self.lead, [1.0 / c0], upper=None)
        if self.upper is not None:
            q = (self.upper - self.lead) * self.M
            n = -(-q.numerator // q.denominator)
        else:
            n = slots if slots is not None else DEFAULT_SLOTS
        n = max(n, 1)
        # invert 1 + r where self = c0 t^lead (1 + r)
        r = [c / c0 for c in self.coeffs[1:n]]
        inv = [0.0] * n
        inv[0] = 1.0
        for k in range(1, n):
            s = 0.0
            for j, rj in enumerate(r):
                if j + 1 > k:
                    break
                s += rj * inv[k - 1 - j]
            inv[k] = -s
        upper = None if self.upper is None else (-self.lead + (self.upper - self.lead))
        if self.upper is None:
            upper = -self.lead + Fraction(n, M)
        out = PuiseuxSeries(M, -self.lead, [c / c0 for c in inv], upper=upper)
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroSeries("division by the zero series")
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other * self.inv()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out = PuiseuxSeries.constant(1.0, self.M)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- comparison helpers -------------------------------------------

    def max_abs_coefficient(self):
        return max((abs(c) for c in self.coeffs), default=0.0)

    def close_to(self, other, tol=1e-9):
        """Compare coefficientwise on the common reliable window."""
        other = self._coerce(other)
        if self.is_zero and other.is_zero:
            return True
        M = lcm(self.M, other.M)
        a, b = self.regrid(M), other.regrid(M)
        uppers = [u for u in (a.upper, b.upper) if u is not None]
        lo = min((s.lead for s in (a, b) if not s.is_zero))
        hi = max((s.lead + Fraction(len(s.coeffs), M) for s in (a, b) if not s.is_zero))
        if uppers:
            hi = min(hi, min(uppers))
        scale = max(a.max_abs_coefficient(), b.max_abs_coefficient(), 1.0)
        e = lo
        while e < hi:
            if abs(a.coefficient(e) - b.coefficient(e)) > tol * scale:
                return False
            e += Fraction(1, M)
        return True

    # -- display ------------------------------------------------------

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for k, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            e = self.lead + Fraction(k, self.M)
            if e == 0:
                bits.append(f"{c:g}")
            elif c == 1.0:
                bits.append(f"t^({rat_str(e)})")
            else:
                bits.append(f"{c:g} t^({rat_str(e)})")
        s = " + ".join(bits).replace("+ -", "- ")
        if self.upper is not None:
            s += f" + O(t^({rat_str(self.upper)}))"
        return s

    def to_json(self):
        return {
            "grid_denominator": self.M,
            "leading_exponent": rat_str(self.lead),
            "coefficients": list(self.coeffs),
            "truncation_order": len(self.coeffs) - 1 if self.coeffs else 0,
            "exact": self.is_exact,
        }


def series_val(s: PuiseuxSeries) -> Fraction:
    return s.val()
