"""Seeded random polynomial corpora for invariant sweeps."""

from __future__ import annotations

import random

from .ffield import field_ctx
from .hasse import Poly
from .ratfun import RatFun


def random_ratfun(rng: random.Random, p: int, max_deg: int = 2,
                  allow_zero: bool = True) -> RatFun:
    """A random element of F_p(t) with numerator/denominator degree <= max_deg."""
    ctx = field_ctx(p)
    if allow_zero and rng.random() < 0.2:
        return RatFun.zero(ctx)
    num = {e: rng.randrange(p) for e in range(rng.randint(0, max_deg) + 1)}
    if not any(num.values()):
        num[0] = 1 + rng.randrange(p - 1) if p > 2 else 1
    den = {0: 1}
    if rng.random() < 0.5:
        den = {e: rng.randrange(p) for e in range(rng.randint(0, max_deg) + 1)}
        if not any(den.values()):
            den[0] = 1
    return RatFun.from_t_coeffs(ctx, num, den)


def random_poly(rng: random.Random, p: int, max_deg: int = 4) -> Poly:
    """A random f in F_p(t)[X] with 1 <= deg f <= max_deg."""
    n = rng.randint(1, max_deg)
    coeffs = [random_ratfun(rng, p) for _ in range(n)]
    coeffs.append(random_ratfun(rng, p, allow_zero=False))
    return Poly.make(coeffs)


def corpus(seed: int, count: int, ps=(2, 3), max_deg: int = 4) -> list[Poly]:
    """A reproducible corpus of `count` random polynomials."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice(list(ps))
        out.append(random_poly(rng, p, max_deg))
    return out
