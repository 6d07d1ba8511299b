"""Partial injective transformations of the chain {1, ..., n}.

An element is an injective partial map written on the right: x maps to
image_of(x).  Storage is a fixed-length tuple whose slot x-1 holds the
image of x, or None when x is outside the domain.  Everything in the
public interface is 1-based; the 0-based slot arithmetic stays in here.

Elements are immutable and hashable.  Composition is left to right:
x (a * b) = (x a) b.

Text form, used by the CLI and by fixtures:

    <n> ":" [ <x> ">" <a> { "," <x> ">" <a> } ]

Pairs are sorted by x and carry no whitespace.  "3:2>1,3>3" is the map
2 -> 1, 3 -> 3 on the 3-chain; "4:" is the empty map on the 4-chain.
"""

from __future__ import annotations

from .errors import (
    ChainMismatchError,
    InjectivityError,
    ParseError,
    RangeError,
    ValidationError,
)


class PartialInjection:
    """One injective partial self-map of {1, ..., n}."""

    __slots__ = ("n", "img")

    def __init__(self, n, img):
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"chain size must be a positive integer, got {n!r}")
        img = tuple(img)
        if len(img) != n:
            raise ValidationError(f"image table has length {len(img)}, expected {n}")
        seen = [False] * (n + 1)
        for a in img:
            if a is None:
                continue
            if not isinstance(a, int) or not 1 <= a <= n:
                raise RangeError(f"image value {a!r} outside 1..{n}")
            if seen[a]:
                raise InjectivityError(f"image value {a} used twice")
            seen[a] = True
        self.n = n
        self.img = img

    def image_of(self, x):
        """Image of the point x, or None when x is outside the domain."""
        if not 1 <= x <= self.n:
            raise RangeError(f"point {x} outside 1..{self.n}")
        return self.img[x - 1]

    def __eq__(self, other):
        return (
            isinstance(other, PartialInjection)
            and self.n == other.n
            and self.img == other.img
        )

    def __hash__(self):
        return hash((self.n, self.img))

    def __mul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return f"parse_text({canonical_text(self)!r})"


def from_pairs(n, pairs):
    """Build an element from (x, a) pairs; rejects duplicates and bad ranges."""
    img = [None] * n if n >= 1 else []
    if n < 1:
        raise ValidationError(f"chain size must be a positive integer, got {n!r}")
    for x, a in pairs:
        if not isinstance(x, int) or not 1 <= x <= n:
            raise RangeError(f"domain point {x!r} outside 1..{n}")
        if img[x - 1] is not None:
            raise InjectivityError(f"domain point {x} used twice")
        img[x - 1] = a
    return PartialInjection(n, img)


def identity(n):
    return PartialInjection(n, range(1, n + 1))


def empty_map(n):
    return PartialInjection(n, [None] * n)


def partial_identity(n, points):
    """The identity restricted to the given set of points."""
    img = [None] * n
    for x in points:
        if not isinstance(x, int) or not 1 <= x <= n:
            raise RangeError(f"point {x!r} outside 1..{n}")
        img[x - 1] = x
    return PartialInjection(n, img)


def compose(alpha, beta):
    """Left-to-right composite: x -> (x alpha) beta where both sides are defined."""
    if alpha.n != beta.n:
        raise ChainMismatchError(f"cannot compose maps on chains {alpha.n} and {beta.n}")
    bimg = beta.img
    img = [None] * alpha.n
    for i, a in enumerate(alpha.img):
        if a is not None:
            img[i] = bimg[a - 1]
    return PartialInjection(alpha.n, img)


def inverse(alpha):
    """The inverse partial injection: a -> x whenever x -> a."""
    img = [None] * alpha.n
    for i, a in enumerate(alpha.img):
        if a is not None:
            img[a - 1] = i + 1
    return PartialInjection(alpha.n, img)


def domain(alpha):
    return tuple(i + 1 for i, a in enumerate(alpha.img) if a is not None)


def image(alpha):
    return tuple(sorted(a for a in alpha.img if a is not None))


def height(alpha):
    """Size of the image (equivalently, of the domain)."""
    return sum(1 for a in alpha.img if a is not None)


def fixed_points(alpha):
    return tuple(i + 1 for i, a in enumerate(alpha.img) if a == i + 1)


def shift(alpha):
    """Number of domain points the map moves."""
    return sum(1 for i, a in enumerate(alpha.img) if a is not None and a != i + 1)


def is_isotone(alpha):
    """Order preserving: x <= y implies x alpha <= y alpha on the domain."""
    prev = 0
    for a in alpha.img:
        if a is None:
            continue
        if a <= prev:
            return False
        prev = a
    return True


def is_decreasing(alpha):
    """Order decreasing: x alpha <= x for every domain point x."""
    return all(a is None or a <= i + 1 for i, a in enumerate(alpha.img))


def is_idempotent(alpha):
    return compose(alpha, alpha) == alpha


def is_quasi_idempotent(alpha):
    """True when the square is idempotent, i.e. alpha^4 = alpha^2."""
    return is_idempotent(compose(alpha, alpha))


def is_essential(alpha):
    """Exactly one moved point, and it drops by exactly one.

    Meaningful for isotone, order-decreasing inputs, where this matches
    the shift-one quasi-idempotents whose moved point has gap one.
    """
    moved = [(i + 1, a) for i, a in enumerate(alpha.img) if a is not None and a != i + 1]
    if len(moved) != 1:
        return False
    y, a = moved[0]
    return a == y - 1


def is_requisite(alpha):
    """Moved points form a block {2, ..., i} shifted down by one, with every
    fixed point above i.  The fixed part may be empty."""
    moved = [
        (i + 1, a)
        for i, a in enumerate(alpha.img)
        if a is not None and a != i + 1
    ]
    if not moved:
        return False
    xs = [x for x, _ in moved]
    i_top = xs[-1]
    if xs != list(range(2, i_top + 1)):
        return False
    if any(a != x - 1 for x, a in moved):
        return False
    return all(f > i_top for f in fixed_points(alpha))


_KINDS = ("idempotent", "essential", "requisite", "quasi-idempotent-shift-1", "other")


def classify(alpha):
    """Name the structural kind of an isotone, order-decreasing element.

    Kinds are checked in priority order: idempotent, essential, requisite,
    quasi-idempotent-shift-1, other.  An element that is both essential and
    requisite (moved pair 2 -> 1 with a fixed tail) reports as essential.
    """
    if is_idempotent(alpha):
        return "idempotent"
    if is_essential(alpha):
        return "essential"
    if is_requisite(alpha):
        return "requisite"
    if shift(alpha) == 1 and is_quasi_idempotent(alpha):
        return "quasi-idempotent-shift-1"
    return "other"


def canonical_text(alpha):
    pairs = ",".join(
        f"{i + 1}>{a}" for i, a in enumerate(alpha.img) if a is not None
    )
    return f"{alpha.n}:{pairs}"


def parse_text(text):
    """Parse the element text form; raises ParseError with a position."""
    if not isinstance(text, str):
        raise ParseError("element text must be a string")
    pos = 0

    def read_int():
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", start)
        return int(text[start:pos])

    n = read_int()
    if pos >= len(text) or text[pos] != ":":
        raise ParseError("expected ':' after the chain size", pos)
    pos += 1
    pairs = []
    if pos < len(text):
        while True:
            pair_start = pos
            x = read_int()
            if pos >= len(text) or text[pos] != ">":
                raise ParseError("expected '>' inside a pair", pos)
            pos += 1
            a = read_int()
            pairs.append((x, a, pair_start))
            if pos == len(text):
                break
            if text[pos] != ",":
                raise ParseError("expected ',' between pairs", pos)
            pos += 1
    last_x = 0
    for x, a, at in pairs:
        if x <= last_x:
            raise ParseError(
                "pairs must be sorted by strictly increasing domain point", at
            )
        last_x = x
    try:
        return from_pairs(n, [(x, a) for x, a, _ in pairs])
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
