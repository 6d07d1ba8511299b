"""Green's relations and their starred refinements on a finite table.

The starred relations are computed from their defining witnesses, not
from any structural shortcut: a and b are L*-related exactly when the
maps x -> ax and x -> bx induce the same kernel on the table with an
identity formally adjoined (no adjunction when the table already has
one).  Structural characterizations (same image, same domain, same
height) live in the test suite as the independent cross-check.

Partitions index elements by table position; class ids are assigned by
least member, so all outputs are deterministic.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import CapExceededError, ValidationError

_GREEN_NAMES = ("L", "R", "H", "D", "J")
_PAIR_SOURCE_CAP = 1000


class IndexPartition:
    """A partition of table indices with deterministic class ids."""

    __slots__ = ("class_of", "classes")

    def __init__(self, class_of, classes):
        self.class_of = tuple(class_of)
        self.classes = tuple(tuple(c) for c in classes)

    @classmethod
    def from_groups(cls, size, groups):
        classes = sorted((tuple(sorted(g)) for g in groups), key=lambda c: c[0])
        class_of = [None] * size
        for cid, members in enumerate(classes):
            for i in members:
                class_of[i] = cid
        if any(c is None for c in class_of):
            raise ValidationError("groups do not cover every index")
        return cls(class_of, classes)

    @classmethod
    def from_keys(cls, keys):
        buckets = defaultdict(list)
        for i, key in enumerate(keys):
            buckets[key].append(i)
        return cls.from_groups(len(keys), buckets.values())

    @property
    def class_count(self):
        return len(self.classes)

    @property
    def max_class_size(self):
        return max((len(c) for c in self.classes), default=0)

    @property
    def is_identity(self):
        return all(len(c) == 1 for c in self.classes)

    def class_members(self, i):
        return self.classes[self.class_of[i]]

    def same(self, i, j):
        return self.class_of[i] == self.class_of[j]

    def pairs(self):
        """The partition as an explicit set of related index pairs."""
        out = set()
        for members in self.classes:
            for a in members:
                for b in members:
                    out.add((a, b))
        return out

    def __eq__(self, other):
        return isinstance(other, IndexPartition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)


def green(table, which):
    """One of Green's relations L, R, H, D, J as an IndexPartition.

    D is computed as the join of L and R and checked against J, which
    must coincide with it on a finite semigroup.
    """
    if which not in _GREEN_NAMES:
        raise ValidationError(f"unknown Green relation {which!r}")
    rows = table.product_rows()
    m = table.size
    if which == "L":
        return IndexPartition.from_keys([_left_ideal(rows, m, a) for a in range(m)])
    if which == "R":
        return IndexPartition.from_keys([_right_ideal(rows, m, a) for a in range(m)])
    if which == "J":
        return IndexPartition.from_keys([_two_sided_ideal(rows, m, a) for a in range(m)])
    if which == "H":
        lkeys = [_left_ideal(rows, m, a) for a in range(m)]
        rkeys = [_right_ideal(rows, m, a) for a in range(m)]
        return IndexPartition.from_keys(list(zip(lkeys, rkeys)))
    # which == "D"
    left = green(table, "L")
    right = green(table, "R")
    joined = _join(left, right, m)
    if joined != green(table, "J"):
        raise AssertionError("D and J disagree on a finite table; table is corrupt")
    return joined


def _left_ideal(rows, m, a):
    ideal = {rows[s][a] for s in range(m)}
    ideal.add(a)
    return frozenset(ideal)


def _right_ideal(rows, m, a):
    ideal = set(rows[a])
    ideal.add(a)
    return frozenset(ideal)


def _two_sided_ideal(rows, m, a):
    right = set(rows[a])
    right.add(a)
    out = set(right)
    for y in right:
        col = (rows[s][y] for s in range(m))
        out.update(col)
    return frozenset(out)


def _join(p1, p2, m):
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in (p1, p2):
        for members in part.classes:
            first = members[0]
            for other in members[1:]:
                union(first, other)
    groups = defaultdict(list)
    for i in range(m):
        groups[find(i)].append(i)
    return IndexPartition.from_groups(m, groups.values())


def _kernel_key(values):
    """Canonical signature of the kernel induced by a value row."""
    first_seen = {}
    sig = []
    for v in values:
        sig.append(first_seen.setdefault(v, len(first_seen)))
    return tuple(sig)


def starred_L(table):
    """L*: equal kernels of x -> ax with x running over the table plus a
    formally adjoined identity when none is present."""
    rows = table.product_rows()
    m = table.size
    adjoin = table.identity_index is None
    keys = []
    for a in range(m):
        vals = list(rows[a])
        if adjoin:
            vals.append(a)
        keys.append(_kernel_key(vals))
    return IndexPartition.from_keys(keys)


def starred_R(table):
    """R*: the dual of L*, with kernels of x -> xa."""
    rows = table.product_rows()
    m = table.size
    adjoin = table.identity_index is None
    cols = [[rows[x][a] for x in range(m)] for a in range(m)]
    keys = []
    for a in range(m):
        vals = cols[a]
        if adjoin:
            vals = vals + [a]
        keys.append(_kernel_key(vals))
    return IndexPartition.from_keys(keys)


def starred_H(table):
    left = starred_L(table)
    right = starred_R(table)
    keys = list(zip(left.class_of, right.class_of))
    return IndexPartition.from_keys(keys)


def starred_D(table):
    """D*: the join (transitive closure) of L* and R*."""
    return _join(starred_L(table), starred_R(table), table.size)


def star_ideal(table, a, _lstar=None, _rstar=None):
    """The principal *-ideal of a: the least set containing a that is an
    ideal and a union of L*- and R*-classes."""
    rows = table.product_rows()
    m = table.size
    lstar = _lstar if _lstar is not None else starred_L(table)
    rstar = _rstar if _rstar is not None else starred_R(table)
    current = {a}
    frontier = [a]
    while frontier:
        fresh = set()
        for s in frontier:
            fresh.update(rows[s])
            fresh.update(rows[x][s] for x in range(m))
            fresh.update(lstar.class_members(s))
            fresh.update(rstar.class_members(s))
        fresh -= current
        current |= fresh
        frontier = list(fresh)
    return frozenset(current)


def starred_J(table):
    """J*: equality of principal *-ideals.

    Elements joined by D* share their *-ideal, so one saturation per
    D*-class suffices; classes with equal ideals are then merged.
    """
    lstar = starred_L(table)
    rstar = starred_R(table)
    dstar = _join(lstar, rstar, table.size)
    ideal_groups = defaultdict(list)
    for members in dstar.classes:
        ideal = star_ideal(table, members[0], _lstar=lstar, _rstar=rstar)
        ideal_groups[ideal].extend(members)
    return IndexPartition.from_groups(table.size, ideal_groups.values())


def starred(table, which):
    """Dispatch helper mirroring green(): which is Ls, Rs, Hs, Ds or Js."""
    fn = {
        "Ls": starred_L,
        "Rs": starred_R,
        "Hs": starred_H,
        "Ds": starred_D,
        "Js": starred_J,
    }.get(which)
    if fn is None:
        raise ValidationError(f"unknown starred relation {which!r}")
    return fn(table)


def relation_pairs(rel):
    """Normalize a relation (IndexPartition or pair set) to a pair set."""
    if isinstance(rel, IndexPartition):
        return rel.pairs()
    return set(rel)


def relation_compose(r1, r2):
    """Relational composition: (x, z) whenever (x, y) in r1 and (y, z) in r2."""
    p1 = relation_pairs(r1)
    p2 = relation_pairs(r2)
    sources = {x for x, _ in p1} | {y for _, y in p1} | {x for x, _ in p2} | {
        y for _, y in p2
    }
    if len(sources) > _PAIR_SOURCE_CAP:
        raise CapExceededError(
            f"relation composition is capped at {_PAIR_SOURCE_CAP} elements"
        )
    by_first = defaultdict(set)
    for y, z in p2:
        by_first[y].add(z)
    out = set()
    for x, y in p1:
        for z in by_first.get(y, ()):
            out.add((x, z))
    return out


def relations_equal(r1, r2):
    return relation_pairs(r1) == relation_pairs(r2)
