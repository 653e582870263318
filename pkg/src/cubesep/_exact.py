"""Exact sign of ``sum_i e_i * log(b_i)`` for positive integers ``b_i`` and integers ``e_i``.

Used to compare quantities like ``x^a`` and ``y^b`` whose exponents are too large
to expand.  Equality is decided on prime exponents; otherwise logarithms are
evaluated with growing decimal precision until the sign is certain.
"""

from __future__ import annotations

from collections import Counter
from decimal import Decimal, localcontext


def _factor(b: int) -> Counter:
    out = Counter()
    p = 2
    while p * p <= b:
        while b % p == 0:
            out[p] += 1
            b //= p
        p += 1
    if b > 1:
        out[b] += 1
    return out


def log_sign(terms) -> int:
    """Sign (-1, 0, 1) of ``sum e * log(b)`` over ``(b, e)`` pairs.

    Bases are factored by trial division, so they should stay small (the
    callers pass vertex counts and degrees).
    """
    terms = [(int(b), int(e)) for b, e in terms if e and b != 1]
    for b, _ in terms:
        if b < 1:
            raise ValueError("bases must be positive integers")
    total = Counter()
    for b, e in terms:
        for p, k in _factor(b).items():
            total[p] += k * e
    if not any(total.values()):
        return 0
    terms = [(p, e) for p, e in total.items() if e]
    scale = sum(abs(e) for _, e in terms)
    prec = 40
    while True:
        with localcontext() as ctx:
            ctx.prec = prec + len(str(scale))
            s = sum(Decimal(e) * Decimal(p).ln() for p, e in terms)
            # each ln is correct to within one unit in the last place
            err = Decimal(scale) * Decimal(10) ** (-prec + 2)
            if abs(s) > err:
                return 1 if s > 0 else -1
        prec *= 2
