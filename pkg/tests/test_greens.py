"""Green's relations, plain and starred, against definitional brute oracles.

The library computes L* through kernel signatures; the oracle here goes
back to the definition: a and b are L*-related when ax = ay and bx = by
hold for exactly the same pairs x, y over the table with an identity
adjoined if the table lacks one.  Same idea, transposed, for R*.
"""

from itertools import combinations

import pytest

from catalanlab import families, greens, pinj
from catalanlab.errors import CapExceededError, ValidationError
from catalanlab.families import REES_ZERO, FamilySpec
from catalanlab.greens import IndexPartition

PLAIN_SPECS = [
    FamilySpec("icn", 3),
    FamilySpec("icn", 4),
    FamilySpec("qprime", 4),
    FamilySpec("k", 4, 2),
    FamilySpec("m", 4, 2),
    FamilySpec("ric", 4, 2),
    FamilySpec("rq", 4, 2),
    FamilySpec("rq", 4, 1),
    FamilySpec("rq", 5, 2),
    FamilySpec("rq", 5, 3),
]


def oracle_agreement_pairs(table, a, transpose):
    """All (x, y) with ax = ay (or xa = ya when transposed), over S^1."""
    rows = table.product_rows()
    m = table.size
    if transpose:
        vals = [rows[x][a] for x in range(m)]
    else:
        vals = list(rows[a])
    if table.identity_index is None:
        vals.append(a)
    agree = set()
    for x in range(len(vals)):
        for y in range(x + 1, len(vals)):
            if vals[x] == vals[y]:
                agree.add((x, y))
    return frozenset(agree)


def oracle_starred(table, transpose):
    keys = [oracle_agreement_pairs(table, a, transpose) for a in range(table.size)]
    return IndexPartition.from_keys(keys)


def partition_by(table, key_fn):
    keys = []
    for i in range(table.size):
        el = table.element(i)
        if el is REES_ZERO:
            keys.append(("zero",))
        else:
            keys.append(("el", key_fn(el)))
    return IndexPartition.from_keys(keys)


def transitive_closure_join(p1, p2, size):
    # plain BFS on the union of the two relations, no union-find
    neighbors = [set() for _ in range(size)]
    for part in (p1, p2):
        for members in part.classes:
            for a in members:
                neighbors[a].update(members)
    seen = [False] * size
    groups = []
    for start in range(size):
        if seen[start]:
            continue
        block = set()
        frontier = [start]
        while frontier:
            x = frontier.pop()
            if x in block:
                continue
            block.add(x)
            frontier.extend(n for n in neighbors[x] if n not in block)
        for x in block:
            seen[x] = True
        groups.append(block)
    return IndexPartition.from_groups(size, groups)


# ---------------------------------------------------------------- partitions


def test_index_partition_basics():
    part = IndexPartition.from_groups(5, [(3, 1), (0,), (2, 4)])
    assert part.classes == ((0,), (1, 3), (2, 4))
    assert part.class_of == (0, 1, 2, 1, 2)
    assert part.class_count == 3
    assert part.max_class_size == 2
    assert not part.is_identity
    assert part.class_members(3) == (1, 3)
    assert part.same(1, 3)
    assert not part.same(0, 1)
    assert (1, 3) in part.pairs() and (3, 1) in part.pairs()
    assert (0, 0) in part.pairs()


def test_index_partition_from_keys_and_equality():
    part = IndexPartition.from_keys(["a", "b", "a", "c"])
    assert part.classes == ((0, 2), (1,), (3,))
    assert part == IndexPartition.from_groups(4, [(0, 2), (1,), (3,)])
    assert hash(part) == hash(IndexPartition.from_groups(4, [(0, 2), (1,), (3,)]))
    ident = IndexPartition.from_keys(range(3))
    assert ident.is_identity


def test_index_partition_rejects_non_cover():
    with pytest.raises(ValidationError):
        IndexPartition.from_groups(3, [(0, 1)])


# ------------------------------------------------------------ plain relations


def test_plain_relations_are_trivial_on_ordered_families():
    for spec in PLAIN_SPECS:
        table = families.enumerate_family(spec)
        for which in ("L", "R", "H", "D", "J"):
            assert greens.green(table, which).is_identity, (spec, which)


def test_plain_relations_on_unrestricted_injections():
    # the classic characterization: L by image, R by domain, D = J by height
    for n in (2, 3):
        table = families.enumerate_family(FamilySpec("syminv", n))
        by_image = partition_by(table, lambda a: pinj.image(a))
        by_domain = partition_by(table, lambda a: pinj.domain(a))
        by_height = partition_by(table, lambda a: pinj.height(a))
        assert greens.green(table, "L") == by_image
        assert greens.green(table, "R") == by_domain
        assert greens.green(table, "D") == by_height
        assert greens.green(table, "J") == by_height
        h = greens.green(table, "H")
        want_h = IndexPartition.from_keys(
            list(zip(by_image.class_of, by_domain.class_of))
        )
        assert h == want_h
        assert not greens.green(table, "L").is_identity


def test_green_rejects_unknown_relation():
    table = families.enumerate_family(FamilySpec("icn", 2))
    with pytest.raises(ValidationError):
        greens.green(table, "X")
    with pytest.raises(ValidationError):
        greens.starred(table, "L")


# ---------------------------------------------------------- starred relations


def test_starred_L_and_R_match_definitional_oracle():
    for spec in PLAIN_SPECS + [FamilySpec("syminv", 3)]:
        table = families.enumerate_family(spec)
        assert greens.starred_L(table) == oracle_starred(table, transpose=False), spec
        assert greens.starred_R(table) == oracle_starred(table, transpose=True), spec


def test_starred_H_is_the_meet():
    for spec in (FamilySpec("icn", 3), FamilySpec("rq", 4, 2)):
        table = families.enumerate_family(spec)
        left = greens.starred_L(table)
        right = greens.starred_R(table)
        want = IndexPartition.from_keys(list(zip(left.class_of, right.class_of)))
        assert greens.starred_H(table) == want


def test_starred_D_is_the_join():
    for spec in (FamilySpec("icn", 3), FamilySpec("qprime", 4), FamilySpec("rq", 4, 2)):
        table = families.enumerate_family(spec)
        want = transitive_closure_join(
            greens.starred_L(table), greens.starred_R(table), table.size
        )
        assert greens.starred_D(table) == want


def test_starred_dispatch_matches_direct_calls():
    table = families.enumerate_family(FamilySpec("qprime", 3))
    assert greens.starred(table, "Ls") == greens.starred_L(table)
    assert greens.starred(table, "Rs") == greens.starred_R(table)
    assert greens.starred(table, "Hs") == greens.starred_H(table)
    assert greens.starred(table, "Ds") == greens.starred_D(table)
    assert greens.starred(table, "Js") == greens.starred_J(table)


def test_starred_characterizations_away_from_collapsed_quotients():
    specs = [
        FamilySpec("icn", 4),
        FamilySpec("qprime", 4),
        FamilySpec("k", 4, 2),
        FamilySpec("m", 4, 2),
        FamilySpec("ric", 4, 2),
        FamilySpec("ric", 4, 3),
        FamilySpec("rq", 4, 1),
    ]
    for spec in specs:
        table = families.enumerate_family(spec)
        assert greens.starred_L(table) == partition_by(table, pinj.image), spec
        assert greens.starred_R(table) == partition_by(table, pinj.domain), spec
        assert greens.starred_H(table).is_identity, spec
        by_height = partition_by(table, pinj.height)
        assert greens.starred_D(table) == by_height, spec
        assert greens.starred_J(table) == by_height, spec


def test_starred_L_merges_image_one_elements_in_collapsed_quotients():
    # In RQ'_n(p) with p >= 2 an element whose image contains 1 sends
    # every non-identity x to zero: the only way to consume the point at
    # 1 would be a factor with 1 in its domain, and no such factor exists.
    # All those elements therefore share one kernel, whatever their image.
    for n, p in ((3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)):
        table = families.enumerate_family(FamilySpec("rq", n, p))

        def true_key(el):
            img = pinj.image(el)
            return "ones" if 1 in img else img

        want = partition_by(table, true_key)
        got = greens.starred_L(table)
        assert got == want, (n, p)
        if p >= 2:
            assert got != partition_by(table, pinj.image), (n, p)
        # R* is untouched by the collapse
        assert greens.starred_R(table) == partition_by(table, pinj.domain)
        by_height = partition_by(table, pinj.height)
        assert greens.starred_D(table) == by_height
        assert greens.starred_J(table) == by_height


def test_collapsed_quotient_smallest_case_pinned_by_hand():
    # RQ'_3(2) has four elements; products of the two height-2 movers
    # with anything non-identity drop below height 2, so their kernels
    # coincide even though their images differ.
    table = families.enumerate_family(FamilySpec("rq", 3, 2))
    texts = [table.text_of(i) for i in range(table.size)]
    assert texts == ["0", "3:2>1,3>2", "3:2>1,3>3", "3:2>2,3>3"]
    lstar = greens.starred_L(table)
    assert lstar.classes == ((0,), (1, 2), (3,))
    hstar = greens.starred_H(table)
    assert hstar.classes == ((0,), (1, 2), (3,))
    assert not hstar.is_identity
    rstar = greens.starred_R(table)
    assert rstar.is_identity is False
    assert rstar.classes == ((0,), (1, 2, 3))


def test_starred_class_counts_on_collapsed_quotients():
    # non-zero R*-classes: one per domain; L*-classes: one per image not
    # containing 1, plus a single merged class for the rest; zero alone.
    from math import comb

    for n, p in ((4, 2), (4, 3), (5, 2), (5, 3), (5, 4)):
        table = families.enumerate_family(FamilySpec("rq", n, p))
        assert greens.starred_R(table).class_count == comb(n - 1, p) + 1
        want_l = comb(n, p) - comb(n - 1, p - 1) + 2
        assert greens.starred_L(table).class_count == want_l


def test_zero_is_always_a_singleton_starred_class():
    for spec in (FamilySpec("ric", 4, 2), FamilySpec("rq", 4, 2)):
        table = families.enumerate_family(spec)
        z = table.zero_index
        for which in ("Ls", "Rs", "Hs", "Ds", "Js"):
            assert greens.starred(table, which).class_members(z) == (z,)


def test_starred_D_composition_identities():
    for spec in PLAIN_SPECS:
        table = families.enumerate_family(spec)
        l = greens.starred_L(table)
        r = greens.starred_R(table)
        d = greens.starred_D(table).pairs()
        rlr = greens.relation_compose(greens.relation_compose(r, l), r)
        lrl = greens.relation_compose(greens.relation_compose(l, r), l)
        assert d == rlr, spec
        assert d == lrl, spec


def test_starred_composition_need_not_commute():
    # smallest witnesses on both sides: two one-point identities whose
    # L*- and R*-classes meet in opposite orders
    icn = families.enumerate_family(FamilySpec("icn", 2))
    a = icn.index_of[pinj.from_pairs(2, [(1, 1)])]
    b = icn.index_of[pinj.from_pairs(2, [(2, 2)])]
    lr = greens.relation_compose(greens.starred_L(icn), greens.starred_R(icn))
    rl = greens.relation_compose(greens.starred_R(icn), greens.starred_L(icn))
    assert (a, b) in lr and (a, b) not in rl

    q = families.enumerate_family(FamilySpec("qprime", 3))
    a = q.index_of[pinj.from_pairs(3, [(2, 2)])]
    b = q.index_of[pinj.from_pairs(3, [(3, 3)])]
    lr = greens.relation_compose(greens.starred_L(q), greens.starred_R(q))
    rl = greens.relation_compose(greens.starred_R(q), greens.starred_L(q))
    assert (a, b) in lr and (a, b) not in rl


def test_star_ideal_contains_products_and_starred_classes():
    table = families.enumerate_family(FamilySpec("qprime", 3))
    rows = table.product_rows()
    lstar = greens.starred_L(table)
    rstar = greens.starred_R(table)
    for a in range(table.size):
        ideal = greens.star_ideal(table, a)
        assert a in ideal
        for s in ideal:
            assert set(rows[s]) <= ideal
            assert {rows[x][s] for x in range(table.size)} <= ideal
            assert set(lstar.class_members(s)) <= ideal
            assert set(rstar.class_members(s)) <= ideal


# ------------------------------------------------------- relation arithmetic


def test_relation_compose_by_hand():
    r1 = {(0, 1), (1, 2)}
    r2 = {(1, 5), (2, 6)}
    assert greens.relation_compose(r1, r2) == {(0, 5), (1, 6)}
    assert greens.relation_compose(r2, r1) == set()


def test_relation_pairs_and_equality():
    part = IndexPartition.from_groups(3, [(0, 1), (2,)])
    raw = {(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)}
    assert greens.relation_pairs(part) == raw
    assert greens.relations_equal(part, raw)
    assert not greens.relations_equal(part, {(0, 0)})


def test_relation_compose_cap():
    huge = {(i, i) for i in range(1001)}
    with pytest.raises(CapExceededError):
        greens.relation_compose(huge, huge)
