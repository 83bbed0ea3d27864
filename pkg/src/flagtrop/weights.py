"""Type-A root system combinatorics.

Weights are stored as explicit lifts (weakly decreasing rational tuples);
two lifts differing by a constant vector are the same weight.  Weyl group
elements are permutations of {1..n}, represented as tuples w with
w[k] = w(k+1).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import prod

from .errors import NonIntegralWeight, NotDominant, RankTooLarge
from .rationals import rat, rat_str

MAX_RANK = 8  # largest n for the quiver pipeline
MAX_WORD_RANK = 5  # largest n for exhaustive reduced-word enumeration


class DominantWeight:
    """A dominant weight of GL_n/SL_n given by a lift (l1 >= ... >= ln)."""

    __slots__ = ("n", "lift")

    def __init__(self, lift):
        lift = tuple(rat(x) for x in lift)
        if any(a < b for a, b in zip(lift, lift[1:])):
            raise NotDominant(f"lift {lift} is not weakly decreasing")
        self.n = len(lift)
        self.lift = lift

    # -- lifts ---------------------------------------------------------

    def canonical_lift(self):
        """Shift so the last entry is 0 (display form)."""
        c = self.lift[-1]
        return tuple(x - c for x in self.lift)

    def zero_sum_lift(self):
        """Shift so the entries sum to 0 (the weight-zero computations)."""
        c = sum(self.lift, Fraction(0)) / self.n
        return tuple(x - c for x in self.lift)

    def shifted(self, c):
        c = rat(c)
        return DominantWeight(tuple(x + c for x in self.lift))

    # -- fundamental coefficients --------------------------------------

    def fundamental_coefficients(self):
        """m_i = <lambda, alpha_i^vee> = l_i - l_{i+1}."""
        return tuple(self.lift[i] - self.lift[i + 1] for i in range(self.n - 1))

    @staticmethod
    def from_fundamental(n, coeffs):
        coeffs = [rat(c) for c in coeffs]
        if len(coeffs) != n - 1:
            raise ValueError("need n-1 fundamental coefficients")
        lift = []
        for i in range(n):
            lift.append(sum(coeffs[i:], Fraction(0)))
        return DominantWeight(lift)

    def is_integral(self):
        return all(m.denominator == 1 for m in self.fundamental_coefficients())

    def __eq__(self, other):
        if not isinstance(other, DominantWeight):
            return NotImplemented
        return self.n == other.n and self.zero_sum_lift() == other.zero_sum_lift()

    def __hash__(self):
        return hash((self.n, self.zero_sum_lift()))

    def __repr__(self):
        return "DominantWeight(" + ",".join(rat_str(x) for x in self.lift) + ")"

    def to_json(self):
        return [rat_str(x) for x in self.lift]


def parse_weight(spec: str, n=None) -> DominantWeight:
    """Parse "7,5,0" (lift) or "2w1+5w2" (fundamental coefficients)."""
    spec = spec.strip()
    if "w" in spec:
        if n is None:
            raise ValueError("rank n required for fundamental-coefficient input")
        coeffs = {i: Fraction(0) for i in range(1, n)}
        for term in re.findall(r"[+-]?[^+-]+", spec.replace(" ", "")):
            m = re.fullmatch(r"([+-]?)((?:\d+(?:/\d+)?)?)\*?w(\d+)", term)
            if not m:
                raise ValueError(f"cannot parse weight term {term!r}")
            sign, c, idx = m.group(1), m.group(2), int(m.group(3))
            coeff = Fraction(c) if c else Fraction(1)
            if sign == "-":
                coeff = -coeff
            if idx not in coeffs:
                raise ValueError(f"fundamental weight w{idx} out of range for n={n}")
            coeffs[idx] += coeff
        return DominantWeight.from_fundamental(n, [coeffs[i] for i in range(1, n)])
    lift = [Fraction(x) for x in spec.split(",")]
    if n is not None and len(lift) != n:
        raise ValueError(f"lift has {len(lift)} entries, expected {n}")
    return DominantWeight(lift)


def rho(n) -> DominantWeight:
    return DominantWeight.from_fundamental(n, [1] * (n - 1))


# ---------------------------------------------------------------------------
# Weyl group as permutations


def identity_perm(n):
    return tuple(range(1, n + 1))


def longest_perm(n):
    return tuple(range(n, 0, -1))


def apply_simple_right(w, i):
    """w * s_i (swap values at positions i, i+1)."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def perm_length(w):
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def word_to_perm(n, word):
    w = identity_perm(n)
    for i in word:
        w = apply_simple_right(w, i)
    return w


def is_reduced(n, word):
    return perm_length(word_to_perm(n, word)) == len(word)


def reduced_words(n):
    """All reduced words of the longest element; n <= MAX_WORD_RANK."""
    if n > MAX_WORD_RANK:
        raise RankTooLarge(f"reduced-word enumeration capped at n={MAX_WORD_RANK}")
    w0 = longest_perm(n)
    out = []

    def descend(w, acc):
        if w == identity_perm(n):
            out.append(tuple(reversed(acc)))
            return
        for i in range(1, n):
            # right descent: l(w s_i) < l(w)  <=>  w(i) > w(i+1)
            if w[i - 1] > w[i]:
                descend(apply_simple_right(w, i), acc + [i])

    descend(w0, [])
    return out


def standard_word(n):
    """The word i0 = (1,2,..,n-1, 1,2,..,n-2, ..., 1,2, 1)."""
    out = []
    for k in range(n - 1, 0, -1):
        out.extend(range(1, k + 1))
    return tuple(out)


def positive_subexpression(n, word, v):
    """Positions (0-based) of the positive subexpression for v inside word.

    Right-to-left greedy scan: walk t = N..1 keeping u (initially v); when
    u s_{i_t} < u, circle position t and replace u by u s_{i_t}.
    """
    u = tuple(v)
    circled = []
    for t in range(len(word) - 1, -1, -1):
        i = word[t]
        if u[i - 1] > u[i]:  # l(u s_i) < l(u)
            circled.append(t)
            u = apply_simple_right(u, i)
    if u != identity_perm(n):
        raise ValueError("scan did not terminate at the identity")
    return sorted(circled)


# ---------------------------------------------------------------------------
# Parabolic data


class ParabolicType:
    """A standard parabolic, given by the simple indices inside the Levi."""

    __slots__ = ("n", "I_P")

    def __init__(self, n, I_P):
        self.n = n
        self.I_P = frozenset(I_P)
        if any(i < 1 or i > n - 1 for i in self.I_P):
            raise ValueError("simple index out of range")

    @property
    def I_comp(self):
        return frozenset(range(1, self.n)) - self.I_P

    def levi_blocks(self):
        """Partition of {1..n} into consecutive Levi blocks."""
        blocks, cur = [], [1]
        for k in range(1, self.n):
            if k in self.I_P:
                cur.append(k + 1)
            else:
                blocks.append(cur)
                cur = [k + 1]
        blocks.append(cur)
        return blocks

    def w_P(self):
        """Longest element of the Levi Weyl group, as a permutation."""
        w = []
        for block in self.levi_blocks():
            w.extend(reversed(block))
        return tuple(w)

    def __eq__(self, other):
        return isinstance(other, ParabolicType) and (self.n, self.I_P) == (
            other.n,
            other.I_P,
        )

    def __hash__(self):
        return hash((self.n, self.I_P))

    def __le__(self, other):
        return self.I_P <= other.I_P

    def __repr__(self):
        return f"ParabolicType(n={self.n}, I_P={sorted(self.I_P)})"

    def to_json(self):
        return sorted(self.I_P)


def positive_roots(n):
    """All (i, j) with 1 <= i < j <= n, standing for alpha_ij = e_i - e_j."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def lambda_P(p: ParabolicType) -> DominantWeight:
    """Sum of the positive roots outside the Levi of P."""
    n = p.n
    lift = [Fraction(0)] * n
    for i, j in positive_roots(n):
        # alpha_ij lies in the Levi iff all simple indices i..j-1 are in I_P
        if all(k in p.I_P for k in range(i, j)):
            continue
        lift[i - 1] += 1
        lift[j - 1] -= 1
    return DominantWeight(lift)


# ---------------------------------------------------------------------------
# Numeric oracles


def weyl_dim(w: DominantWeight) -> int:
    """Dimension of the irreducible with highest weight w (Weyl formula)."""
    if not w.is_integral():
        raise NonIntegralWeight(f"{w!r} is not integral")
    l = w.lift
    n = w.n
    num = prod(l[i - 1] - l[j - 1] + j - i for i, j in positive_roots(n))
    den = prod(j - i for i, j in positive_roots(n))
    d = Fraction(num, den)
    assert d.denominator == 1
    return int(d)


def pairing(root_range, coroot_range) -> int:
    """<alpha_i+...+alpha_j, alpha_k^vee+...+alpha_l^vee> by Kronecker deltas."""
    i, j = root_range
    k, l = coroot_range

    def d(a, b):
        return 1 if a == b else 0

    # <alpha_i+..+alpha_j, alpha_k^vee+..+alpha_l^vee>
    #   = <e_i - e_{j+1}, e_k - e_{l+1} (as coweight)> expanded
    return d(i, k) + d(j + 1, l + 1) - d(i, l + 1) - d(j + 1, k)
