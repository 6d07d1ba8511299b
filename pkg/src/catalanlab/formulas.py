"""Closed-form counts and embedded integer sequence prefixes.

All arithmetic is exact (Python integers, math.comb), so overflow cannot
occur silently.  Where two published closed forms describe the same
quantity, both are evaluated and compared.  Sequence prefixes are baked
in so nothing here touches the network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


def _comb(n, k):
    """Binomial coefficient that is 0 outside 0 <= k <= n instead of raising."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan(n):
    """Catalan number c_n = binomial(2n, n-1) / n, defined for n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"catalan(n) needs an integer n >= 1, got {n!r}")
    q, r = divmod(math.comb(2 * n, n - 1), n)
    if r:
        raise ArithmeticError(f"binomial(2*{n}, {n}-1) is not divisible by {n}")
    return q


def t(n):
    """Order of the identity-free part: t_n = c_(n+1) - c_n.

    The difference form and the closed form 3/(n+2) * binomial(2n, n-1)
    are both evaluated and must agree.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"t(n) needs an integer n >= 1, got {n!r}")
    diff = catalan(n + 1) - catalan(n)
    q, r = divmod(3 * math.comb(2 * n, n - 1), n + 2)
    if r or q != diff:
        raise ArithmeticError(f"the two closed forms for t({n}) disagree")
    return diff


def rank_formula(spec):
    """Published rank value for the family, or None where none is stated.

    Ranges follow the statements that are actually backed by proofs:
    the ideal/Rees formulas on the full side for 1 <= p <= n-1, on the
    identity-free side for 1 <= p <= n-2 (ideal) and 1 <= p <= n-1
    (Rees quotient, where p = 1 is the permitted extension).
    """
    n, p = spec.n, spec.p
    kind = spec.kind
    if kind == "icn":
        return 2 * n
    if kind == "qprime":
        return n * n - 3 * n + 4 if n > 1 else None
    if kind in ("k", "ric"):
        if 1 <= p <= n - 1:
            return (n - 1) * _comb(n - 2, p - 1) + _comb(n, p)
        return None
    if kind == "m":
        if 1 <= p <= n - 2:
            return _comb(n, p) + (n - 2) * _comb(n - 3, p - 1)
        return None
    if kind == "rq":
        if 1 <= p <= n - 1:
            return _comb(n, p) + (n - 2) * _comb(n - 3, p - 1)
        return None
    return None


def count_formula(kind, spec, p=None):
    """Published census value for a kind of element, or None when unstated.

    kind is one of "idempotents", "essentials", "requisites", "maximal",
    "generators".  With p=None the total over all heights is returned for
    the cases where a total is stated.  For the Rees families the zero is
    not counted and p, when given, must be the family's height.
    """
    n = spec.n
    fam = spec.kind
    if kind == "idempotents":
        if fam == "icn":
            return 2**n if p is None else _comb(n, p)
        if fam == "qprime":
            return 2 ** (n - 1) if p is None else _comb(n - 1, p)
        if fam == "ric":
            return _comb(n, spec.p if p is None else p)
        if fam == "rq":
            return _comb(n - 1, spec.p if p is None else p)
        return None
    if kind == "essentials":
        if fam == "icn":
            if p is None:
                return (n - 1) * 2 ** (n - 2) if n >= 2 else 0
            return (n - 1) * _comb(n - 2, p - 1)
        if fam == "qprime":
            if p is None:
                return None
            return (n - 2) * _comb(n - 3, p - 1)
        if fam == "ric":
            return (n - 1) * _comb(n - 2, (spec.p if p is None else p) - 1)
        if fam == "rq":
            return (n - 2) * _comb(n - 3, (spec.p if p is None else p) - 1)
        return None
    if kind == "requisites":
        if fam in ("qprime", "rq"):
            if fam == "qprime" and p is None:
                return None
            return _comb(n - 1, (spec.p if p is None else p) - 1)
        return None
    if kind == "maximal":
        if fam == "icn":
            return 2 * n
        if fam == "qprime":
            return n * n - 3 * n + 4 if n > 1 else None
        return None
    if kind == "generators":
        q = spec.p if p is None else p
        if fam == "ric":
            return (n - 1) * _comb(n - 2, q - 1) + _comb(n, q)
        if fam == "rq":
            return _comb(n, q) + (n - 2) * _comb(n - 3, q - 1)
        return None
    raise ValidationError(f"unknown census kind {kind!r}")


@dataclass(frozen=True)
class SequencePrefix:
    """A named integer sequence prefix with its starting offset."""

    name: str
    offset: int
    terms: tuple

    def value(self, n):
        i = n - self.offset
        if not 0 <= i < len(self.terms):
            raise ValidationError(f"{self.name} prefix holds no term for n={n}")
        return self.terms[i]


# Orders of the identity-free families: t_n for n = 1, 2, ...
A000245 = SequencePrefix(
    "A000245", 1, (1, 3, 9, 28, 90, 297, 1001, 3432, 11934, 41990)
)

# n * 2^(n-1); the total essential count at chain size n is the n-1 term.
A001787 = SequencePrefix("A001787", 0, (0, 1, 4, 12, 32, 80, 192, 448, 1024, 2304))

# Pascal's triangle, rows 0..7 flattened.
A007318 = SequencePrefix(
    "A007318",
    0,
    (
        1,
        1, 1,
        1, 2, 1,
        1, 3, 3, 1,
        1, 4, 6, 4, 1,
        1, 5, 10, 10, 5, 1,
        1, 6, 15, 20, 15, 6, 1,
        1, 7, 21, 35, 35, 21, 7, 1,
    ),
)

# Triangle T(r, c) = r * binomial(r-1, c-1), rows 1..6 flattened; the
# essential census at chain size n, height p, is T(n-1, p).
A003506 = SequencePrefix(
    "A003506",
    1,
    (
        1,
        2, 2,
        3, 6, 3,
        4, 12, 12, 4,
        5, 20, 30, 20, 5,
        6, 30, 60, 60, 30, 6,
    ),
)


# Triangle obtained by adding A003506 (padded with a zero at each end of
# the row) to Pascal's triangle: row n, entry p is
# binomial(n, p) + (n-1) * binomial(n-2, p-1), the non-zero generator
# count of the height-p Rees quotient on the full side.  Rows 1..6.
A103450 = SequencePrefix(
    "A103450",
    1,
    (
        1, 1,
        1, 3, 1,
        1, 5, 5, 1,
        1, 7, 12, 7, 1,
        1, 9, 22, 22, 9, 1,
        1, 11, 35, 50, 35, 11, 1,
    ),
)


def pascal_row(r):
    """Row r of the embedded Pascal prefix, as a tuple."""
    if not 0 <= r <= 7:
        raise ValidationError(f"embedded Pascal prefix stops at row 7, asked for {r}")
    start = r * (r + 1) // 2
    return A007318.terms[start : start + r + 1]


def essential_triangle_row(r):
    """Row r (1-based) of the embedded A003506 prefix, as a tuple."""
    if not 1 <= r <= 6:
        raise ValidationError(f"embedded A003506 prefix stops at row 6, asked for {r}")
    start = r * (r - 1) // 2
    return A003506.terms[start : start + r]


def generator_triangle_row(r):
    """Row r (1-based) of the embedded A103450 prefix, as a tuple."""
    if not 1 <= r <= 6:
        raise ValidationError(f"embedded A103450 prefix stops at row 6, asked for {r}")
    start = (r - 1) * (r + 2) // 2
    return A103450.terms[start : start + r + 1]
