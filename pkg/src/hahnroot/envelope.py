"""Lower-envelope geometry of an additive polynomial's valuation lines.

Each index i in the support of P = sum a_i X^(p^i) contributes the line
gamma_i(r) = v(a_i) + p^i * r.  The breakpoints where the pointwise minimum
is attained by more than one line control where root supports can ramify
away from p, where residue fields can grow, and how long a root's support
can be; the bound algorithms here just read those breakpoints off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .hasse import Poly
from .ore import AdditivePolynomial, addpol

INF = math.inf


@dataclass(frozen=True)
class Breakpoint:
    """A value of r (rational, or +infinity) where the argmin has >= 2 lines."""

    r: Fraction | float
    J: frozenset[int]

    @property
    def is_finite(self) -> bool:
        return self.r != INF


def _lines(P: AdditivePolynomial) -> list[tuple[int, int, Fraction]]:
    """(index, slope p^i, intercept v(a_i)) for each supported index."""
    out = []
    for i in sorted(P.coeffs):
        v = P.coeffs[i].valuation()
        out.append((i, P.p**i, Fraction(v)))
    return out


def intersection_points(P: AdditivePolynomial) -> list[Breakpoint]:
    """All r with at least two lines attaining the minimum, sorted ascending.

    Finite breakpoints are the kinks of the lower envelope, found by walking
    it from steep (r -> -inf) to flat; at each kink the argmin set is
    evaluated against every line, so lines merely touching the kink are
    included.  The point at infinity appears exactly when P has >= 2 terms,
    since every line takes the value +infinity there.
    """
    lines = _lines(P)
    points: list[Breakpoint] = []
    if len(lines) < 2:
        return points

    def argmin_at(r: Fraction) -> frozenset[int]:
        values = [(intercept + slope * r, i) for i, slope, intercept in lines]
        low = min(v for v, _ in values)
        return frozenset(i for v, i in values if v == low)

    active = max(lines, key=lambda L: L[1])
    while True:
        candidates = []
        for line in lines:
            if line[1] < active[1]:
                r = Fraction(line[2] - active[2], active[1] - line[1])
                candidates.append((r, line[1], line))
        if not candidates:
            break
        r_next = min(r for r, _, _ in candidates)
        points.append(Breakpoint(r_next, argmin_at(r_next)))
        # continue along the flattest line through the kink
        active = min((c[2] for c in candidates if c[0] == r_next), key=lambda L: L[1])
    points.append(Breakpoint(INF, frozenset(i for i, _, _ in lines)))
    return points


def finite_intersection_points(P: AdditivePolynomial) -> list[Breakpoint]:
    return [b for b in intersection_points(P) if b.is_finite]


def maxram(f: Poly) -> int:
    """A modulus m coprime to p such that every root of f has its support in
    the group (1/(m*p^inf))Z.

    m multiplies, over each prime q != p, the highest power of q dividing a
    denominator among the finite breakpoints of the additive companion of f.
    """
    P = addpol(f)
    p = P.p
    exponents: dict[int, int] = {}
    for b in finite_intersection_points(P):
        d = Fraction(b.r).denominator
        q = 2
        while d > 1:
            if d % q == 0:
                e = 0
                while d % q == 0:
                    d //= q
                    e += 1
                if q != p:
                    exponents[q] = max(exponents.get(q, 0), e)
            q += 1
    m = 1
    for q, e in exponents.items():
        m *= q**e
    return m


def maxexp_base(f: Poly, mode: str = "sharp") -> int:
    """The residue-degree base D whose factorial bounds coefficient fields.

    mode "paper": D = prod_{i=1..n} p^i for n = deg f.
    mode "sharp": D = prod over finite breakpoints s of p^(max J(s)).
    """
    p = f.ctx.p
    if mode == "paper":
        n = f.degree
        return p ** (n * (n + 1) // 2)
    if mode == "sharp":
        P = addpol(f)
        d = 1
        for b in finite_intersection_points(P):
            d *= p ** max(b.J)
        return d
    raise ValueError(f"unknown maxexp mode {mode!r}")


def maxexp(f: Poly, mode: str = "sharp") -> int:
    """A residue-field degree bound: every root of f has coefficients in
    F_{p^m} with m = maxexp(f).  Returned exactly; never used to build fields."""
    return math.factorial(maxexp_base(f, mode))


def order_type_bound(f: Poly) -> tuple[int, str]:
    """(m, "w^m"): the support of any root of f has order type at most
    omega^m, with m the number of intersection points of the companion."""
    P = addpol(f)
    points = intersection_points(P)
    m = len(points)
    lines = len(P.coeffs)
    if lines >= 2:
        cap = (lines - 1) * lines // 2 + 1
        if m > cap:
            raise AssertionError(f"{m} intersection points exceed the {cap} cap")
    return m, f"ω^{m}"
