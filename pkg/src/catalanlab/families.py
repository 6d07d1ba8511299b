"""Element families and their multiplication tables.

Seven families over the chain {1, ..., n}:

    icn      all isotone, order-decreasing partial injections
    qprime   the icn elements whose domain omits 1
    syminv   all partial injections (no order constraints)
    k        icn elements of height at most p (an ideal)
    m        qprime elements of height at most p (an ideal)
    ric      Rees quotient of k by the next ideal down: the height-p
             elements plus a zero that absorbs every height drop
    rq       the same construction on the qprime side

Tables index elements by their sorted position (height first, then
canonical text) and expose the product as an index function.  Rees
tables put their zero sentinel at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from . import pinj
from .errors import CapExceededError, ChainMismatchError, FamilySpecError, ValidationError

KIND_ICN = "icn"
KIND_QPRIME = "qprime"
KIND_SYMINV = "syminv"
KIND_K = "k"
KIND_M = "m"
KIND_RIC = "ric"
KIND_RQ = "rq"

KINDS = (KIND_ICN, KIND_QPRIME, KIND_SYMINV, KIND_K, KIND_M, KIND_RIC, KIND_RQ)
KINDS_WITH_P = frozenset((KIND_K, KIND_M, KIND_RIC, KIND_RQ))
REES_KINDS = frozenset((KIND_RIC, KIND_RQ))
QPRIME_SIDE = frozenset((KIND_QPRIME, KIND_M, KIND_RQ))

DEFAULT_ENUM_CAP = 12


@dataclass(frozen=True)
class FamilySpec:
    """A family descriptor: kind, chain size, and height parameter."""

    kind: str
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilySpecError(f"unknown family kind {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise FamilySpecError(f"chain size must be a positive integer, got {self.n!r}")
        if self.kind in KINDS_WITH_P:
            if self.p is None:
                raise FamilySpecError(f"family {self.kind!r} needs a height parameter p")
            top = self.n if self.kind in (KIND_K, KIND_RIC) else self.n - 1
            if not isinstance(self.p, int) or not 1 <= self.p <= top:
                raise FamilySpecError(
                    f"family {self.kind!r} needs 1 <= p <= {top}, got p={self.p!r}"
                )
        elif self.p is not None:
            raise FamilySpecError(f"family {self.kind!r} takes no height parameter")

    @property
    def is_rees(self):
        return self.kind in REES_KINDS

    @property
    def qprime_side(self):
        return self.kind in QPRIME_SIDE

    def label(self):
        n, p = self.n, self.p
        return {
            KIND_ICN: f"IC_{n}",
            KIND_QPRIME: f"Q'_{n}",
            KIND_SYMINV: f"I_{n}",
            KIND_K: f"K({n},{p})",
            KIND_M: f"M({n},{p})",
            KIND_RIC: f"RIC_{n}({p})",
            KIND_RQ: f"RQ'_{n}({p})",
        }[self.kind]


class ReesZero:
    """Distinguished absorbing sentinel of a Rees quotient table.

    Not the empty map: the quotient collapses the whole lower ideal,
    empty map included, into this one marker.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "0"


REES_ZERO = ReesZero()
ZERO_TEXT = "0"


class SemigroupTable:
    """A finite multiplication table over an enumerated element family."""

    def __init__(self, family, elements):
        self.family = family
        self.elements = list(elements)
        self.index_of = {}
        for i, el in enumerate(self.elements):
            if isinstance(el, pinj.PartialInjection):
                self.index_of[el] = i
        self.size = len(self.elements)
        self.zero_index = self._find_zero()
        self.identity_index = self._find_identity()
        self._rows = None

    def __len__(self):
        return self.size

    @property
    def is_rees(self):
        return self.family.is_rees

    def _find_zero(self):
        if self.family.is_rees:
            for i, el in enumerate(self.elements):
                if el is REES_ZERO:
                    return i
            raise ValidationError("Rees table is missing its zero sentinel")
        empty = pinj.empty_map(self.family.n)
        return self.index_of.get(empty)

    def _find_identity(self):
        # A two-sided identity must act as the identity on every domain
        # and image point that occurs, so it can only be the partial
        # identity on the union of all of them.
        points = set()
        for el in self.elements:
            if isinstance(el, pinj.PartialInjection):
                points.update(pinj.domain(el))
                points.update(pinj.image(el))
        if not points and not self.family.is_rees:
            # Only the empty map is present; it is its own identity.
            return self.index_of.get(pinj.empty_map(self.family.n))
        candidate = pinj.partial_identity(self.family.n, points)
        return self.index_of.get(candidate)

    def element(self, i):
        return self.elements[i]

    def text_of(self, i):
        el = self.elements[i]
        if el is REES_ZERO:
            return ZERO_TEXT
        return pinj.canonical_text(el)

    def height_of(self, i):
        """Height of element i, or None for the Rees zero sentinel."""
        el = self.elements[i]
        if el is REES_ZERO:
            return None
        return pinj.height(el)

    def product(self, i, j):
        """Index of the product of elements i and j."""
        z = self.zero_index
        if self.family.is_rees:
            if i == z or j == z:
                return z
            composite = pinj.compose(self.elements[i], self.elements[j])
            if pinj.height(composite) == self.family.p:
                return self.index_of[composite]
            return z
        return self.index_of[pinj.compose(self.elements[i], self.elements[j])]

    def product_rows(self):
        """The full table as a list of rows; built once, then cached."""
        if self._rows is None:
            m = self.size
            self._rows = [[self.product(i, j) for j in range(m)] for i in range(m)]
        return self._rows


def _images_for_domain(dom):
    """Yield image tuples pairing isotonely with dom, never exceeding it."""
    p = len(dom)
    if p == 0:
        yield ()
        return
    choice = [0] * p

    def walk(i, lo):
        if i == p:
            yield tuple(choice)
            return
        for a in range(lo, dom[i] + 1):
            choice[i] = a
            yield from walk(i + 1, a + 1)

    yield from walk(0, 1)


def _isotone_decreasing_maps(n, lowest_point=1, min_height=0, max_height=None):
    """All isotone, order-decreasing partial injections with the given
    domain restriction and height window."""
    if max_height is None:
        max_height = n
    top_size = min(max_height, n - lowest_point + 1)
    for size in range(min_height, top_size + 1):
        for dom in combinations(range(lowest_point, n + 1), size):
            for img in _images_for_domain(dom):
                yield pinj.from_pairs(n, zip(dom, img))


def _all_partial_injections(n):
    for size in range(n + 1):
        for dom in combinations(range(1, n + 1), size):
            for vals in permutations(range(1, n + 1), size):
                yield pinj.from_pairs(n, zip(dom, vals))


def _sorted_elements(maps):
    return sorted(maps, key=lambda a: (pinj.height(a), pinj.canonical_text(a)))


@lru_cache(maxsize=None)
def _build_table(spec):
    n, p = spec.n, spec.p
    kind = spec.kind
    if kind == KIND_ICN:
        maps = _isotone_decreasing_maps(n)
    elif kind == KIND_QPRIME:
        maps = _isotone_decreasing_maps(n, lowest_point=2)
    elif kind == KIND_SYMINV:
        maps = _all_partial_injections(n)
    elif kind == KIND_K:
        maps = _isotone_decreasing_maps(n, max_height=p)
    elif kind == KIND_M:
        maps = _isotone_decreasing_maps(n, lowest_point=2, max_height=p)
    elif kind == KIND_RIC:
        maps = _isotone_decreasing_maps(n, min_height=p, max_height=p)
    elif kind == KIND_RQ:
        maps = _isotone_decreasing_maps(n, lowest_point=2, min_height=p, max_height=p)
    else:  # pragma: no cover
        raise FamilySpecError(f"unknown family kind {kind!r}")
    elements = _sorted_elements(maps)
    if spec.is_rees:
        elements = [REES_ZERO] + elements
    return SemigroupTable(spec, elements)


def enumerate_family(spec, cap=DEFAULT_ENUM_CAP):
    """Materialize the table for a family descriptor.

    Tables are cached per descriptor and must be treated as read-only.
    The cap guards against accidental huge enumerations; raise it
    explicitly when a bigger chain is really wanted.
    """
    if not isinstance(spec, FamilySpec):
        raise FamilySpecError(f"expected a FamilySpec, got {type(spec).__name__}")
    if spec.n > cap:
        raise CapExceededError(
            f"enumeration of {spec.label()} needs n <= {cap}; got n = {spec.n}"
        )
    return _build_table(spec)


def is_member(alpha, spec):
    """Membership of a single element, without enumerating the family."""
    if not isinstance(alpha, pinj.PartialInjection):
        raise ValidationError("membership is defined for PartialInjection values")
    if alpha.n != spec.n:
        raise ChainMismatchError(
            f"element lives on a {alpha.n}-chain, family on a {spec.n}-chain"
        )
    kind = spec.kind
    if kind == KIND_SYMINV:
        return True
    ordered = pinj.is_isotone(alpha) and pinj.is_decreasing(alpha)
    if not ordered:
        return False
    if kind == KIND_ICN:
        return True
    h = pinj.height(alpha)
    no_one = alpha.image_of(1) is None
    if kind == KIND_QPRIME:
        return no_one
    if kind == KIND_K:
        return h <= spec.p
    if kind == KIND_M:
        return no_one and h <= spec.p
    if kind == KIND_RIC:
        return h == spec.p
    if kind == KIND_RQ:
        return no_one and h == spec.p
    raise FamilySpecError(f"unknown family kind {kind!r}")  # pragma: no cover


def rees_product(table, i, j):
    """Product in a Rees quotient table: height drops collapse to zero."""
    if not table.family.is_rees:
        raise ValidationError("rees_product needs a ric or rq table")
    return table.product(i, j)


def table_json(table):
    """Plain dict form of a table: family, sizes, and element texts."""
    spec = table.family
    out = {"family": spec.kind, "n": spec.n}
    if spec.p is not None:
        out["p"] = spec.p
    out["order"] = table.size
    out["elements"] = [table.text_of(i) for i in range(table.size)]
    return out


def product_csv_rows(table):
    """Yield (i, j, k) index triples of the full product table."""
    rows = table.product_rows()
    for i in range(table.size):
        row = rows[i]
        for j in range(table.size):
            yield (i, j, row[j])
