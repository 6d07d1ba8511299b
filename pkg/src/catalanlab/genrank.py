"""Generating sets, ranks, constructive factorizations, and maximal
subsemigroups.

The rank computation rests on one fact about these tables: call an
element indecomposable when it is not a product of two elements both
different from it.  Any generating set must contain every indecomposable
(a shortest product expression for a missing one would exhibit two
smaller factors), and on a J-trivial table the indecomposables generate,
so they form the unique minimum generating set.  Both halves are checked
computationally, never assumed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import families, formulas, greens, pinj
from .errors import ContractError, UnsupportedTableError, ValidationError


def closure(table, generators):
    """Indices of the subsemigroup generated by the given indices."""
    rows = table.product_rows()
    seen = [False] * table.size
    start = []
    for g in generators:
        if not 0 <= g < table.size:
            raise ValidationError(f"generator index {g} out of range")
        if not seen[g]:
            seen[g] = True
            start.append(g)
    queue = deque(start)
    acc = []
    while queue:
        x = queue.popleft()
        row_x = rows[x]
        for y in acc:
            for z in (row_x[y], rows[y][x]):
                if not seen[z]:
                    seen[z] = True
                    queue.append(z)
        z = row_x[x]
        if not seen[z]:
            seen[z] = True
            queue.append(z)
        acc.append(x)
    return frozenset(i for i in range(table.size) if seen[i])


def indecomposables(table, strict_distinct_factors=False):
    """Elements that are not products of two others.

    Default variant: a is decomposable when a = b c with b != a and
    c != a (b = c allowed).  The strict variant additionally requires
    b != c; pass strict_distinct_factors=True for it.
    """
    rows = table.product_rows()
    m = table.size
    decomposable = [False] * m
    for i in range(m):
        row = rows[i]
        for j in range(m):
            k = row[j]
            if k != i and k != j and (not strict_distinct_factors or i != j):
                decomposable[k] = True
    return frozenset(i for i in range(m) if not decomposable[i])


def is_jtrivial(table):
    return greens.green(table, "J").is_identity


def element_kind(element, qprime_side):
    """Census kind of one element, family aware.

    On the identity-free side the overlap between essential and requisite
    (moved pair 2 -> 1 plus a fixed tail) counts as requisite, matching
    the census formulas; elsewhere the plain classification is used.
    """
    if not isinstance(element, pinj.PartialInjection):
        return "other"
    kind = pinj.classify(element)
    if qprime_side and kind == "essential" and pinj.is_requisite(element):
        return "requisite"
    return kind


def kind_census(table):
    """Per-kind, per-height counts of the table's real elements."""
    qp = table.family.qprime_side
    out = {}
    for i in range(table.size):
        el = table.element(i)
        if not isinstance(el, pinj.PartialInjection):
            continue
        kind = element_kind(el, qp)
        h = pinj.height(el)
        out.setdefault(kind, {})
        out[kind][h] = out[kind].get(h, 0) + 1
    return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}


@dataclass
class GeneratorReport:
    family: str
    rank: int
    generators: dict
    formula: int | None = None
    agrees: bool | None = None
    jtrivial: bool = True
    greedy: bool = False

    def as_dict(self):
        out = {
            "family": self.family,
            "rank": self.rank,
            "generators": self.generators,
            "jtrivial": self.jtrivial,
        }
        if self.formula is not None:
            out["formula"] = self.formula
            out["agrees"] = self.agrees
        if self.greedy:
            out["greedy"] = True
        return out


def _group_generators(table, gens):
    spec = table.family
    groups = {"idempotents": [], "essentials": [], "requisites": [], "other": []}
    identity_text = None
    for g in sorted(gens):
        el = table.element(g)
        text = table.text_of(g)
        if g == table.identity_index and isinstance(el, pinj.PartialInjection) \
                and pinj.height(el) == spec.n:
            identity_text = text
            continue
        kind = element_kind(el, spec.qprime_side)
        if kind == "idempotent":
            groups["idempotents"].append(text)
        elif kind == "essential":
            groups["essentials"].append(text)
        elif kind == "requisite":
            groups["requisites"].append(text)
        else:
            groups["other"].append(text)
    out = {k: v for k, v in groups.items() if v}
    if identity_text is not None:
        out["identity"] = identity_text
    return out


def _greedy_minimize(table):
    everything = frozenset(range(table.size))
    gens = list(range(table.size))
    for x in sorted(gens, reverse=True):
        trial = [g for g in gens if g != x]
        if closure(table, trial) == everything:
            gens = trial
    return frozenset(gens)


def minimal_generating_set(table):
    """Minimum generating set and rank.

    On a J-trivial table this is exact: the indecomposables, verified to
    generate.  Otherwise a greedy pass runs and the report carries the
    greedy flag, since greedy results need not reach the true rank.
    """
    everything = frozenset(range(table.size))
    jt = is_jtrivial(table)
    if jt:
        gens = indecomposables(table)
        if closure(table, gens) != everything:
            raise AssertionError(
                "indecomposables fail to generate a J-trivial table; table is corrupt"
            )
        greedy = False
    else:
        gens = _greedy_minimize(table)
        greedy = True
    spec = getattr(table, "family", None)
    formula = formulas.rank_formula(spec) if isinstance(spec, families.FamilySpec) else None
    return GeneratorReport(
        family=_label(table),
        rank=len(gens),
        generators=_group_generators(table, gens),
        formula=formula,
        agrees=None if formula is None else (formula == len(gens)),
        jtrivial=jt,
        greedy=greedy,
    )


def _label(table):
    fam = getattr(table, "family", None)
    if fam is None:
        return getattr(table, "label", "table")
    return fam.label()


def no_smaller_generating_set(table, max_size=60):
    """Certificate that dropping any single minimum generator loses
    elements.  Exhaustive over the indecomposables, which every
    generating set must contain; guarded by a table-size cap."""
    if table.size > max_size:
        raise ValidationError(
            f"certificate capped at {max_size} elements, table has {table.size}"
        )
    if not is_jtrivial(table):
        raise UnsupportedTableError("certificate needs a J-trivial table")
    everything = frozenset(range(table.size))
    gens = sorted(indecomposables(table))
    for g in gens:
        rest = [x for x in gens if x != g]
        if closure(table, rest) == everything:
            return False
    return True


@dataclass
class RankCheck:
    family: str
    computed: int
    formula: int | None
    agrees: bool | None

    def as_dict(self):
        return {
            "family": self.family,
            "computed": self.computed,
            "formula": self.formula,
            "agrees": self.agrees,
        }


def rank_check(spec, cap=families.DEFAULT_ENUM_CAP):
    """Computed rank next to the published value; reports, never asserts."""
    table = families.enumerate_family(spec, cap=cap)
    report = minimal_generating_set(table)
    return RankCheck(
        family=spec.label(),
        computed=report.rank,
        formula=report.formula,
        agrees=report.agrees,
    )


def _require_icn_member(alpha):
    if not (pinj.is_isotone(alpha) and pinj.is_decreasing(alpha)):
        raise ContractError(
            "factorizations are defined for isotone, order-decreasing elements"
        )


def factor_idempotent_quasi_chain(alpha):
    """Write alpha of height p as a product of p height-p factors, the
    i-th fixing everything settled so far and moving only x_i to a_i.

    Each factor is idempotent (when x_i = a_i) or a shift-one
    quasi-idempotent.  The empty map factors as the empty product.
    """
    _require_icn_member(alpha)
    n = alpha.n
    dom = pinj.domain(alpha)
    img = tuple(alpha.image_of(x) for x in dom)
    p = len(dom)
    out = []
    for i in range(p):
        pairs = [(img[j], img[j]) for j in range(i)]
        pairs.append((dom[i], img[i]))
        pairs.extend((dom[j], dom[j]) for j in range(i + 1, p))
        out.append(pinj.from_pairs(n, pairs))
    return out


def expand_quasi_to_essentials(eps):
    """Write a shift-one quasi-idempotent as a product of essentials.

    The moved point y with image y - s walks down one step at a time;
    the factors fix the fixed part throughout and compose in the order
    returned (largest step first).
    """
    _require_icn_member(eps)
    if pinj.shift(eps) != 1 or not pinj.is_quasi_idempotent(eps):
        raise ContractError("expected a quasi-idempotent with exactly one moved point")
    (y, a), = (
        (x, eps.image_of(x)) for x in pinj.domain(eps) if eps.image_of(x) != x
    )
    fixed = pinj.fixed_points(eps)
    n = eps.n
    out = []
    for j in range(y - a, 0, -1):
        pairs = [(f, f) for f in fixed]
        pairs.append((a + j, a + j - 1))
        out.append(pinj.from_pairs(n, pairs))
    return out


def essential_factorization(alpha, qprime_side=False):
    """Height-preserving factorization into idempotents and essentials.

    Runs the chain split with every quasi factor expanded.  On the
    identity-free side an element whose image contains 1 is first split
    off a requisite tail factor, which keeps every factor's domain away
    from 1; the requisite is returned last, unexpanded.
    """
    if qprime_side and alpha.image_of(1) is not None:
        raise ContractError("element is outside the identity-free family")
    tail = []
    if qprime_side and 1 in pinj.image(alpha):
        alpha, requisite = factor_requisite(alpha)
        tail = [requisite]
    out = []
    for step in factor_idempotent_quasi_chain(alpha):
        if pinj.is_idempotent(step):
            out.append(step)
        else:
            out.extend(expand_quasi_to_essentials(step))
    return out + tail


def factor_requisite(alpha):
    """Split alpha (image containing 1, domain omitting 1) as beta
    followed by a requisite with the same image.

    The requisite's moved block ends just below the least point missing
    from the image; beta pushes the low part of the domain up by one so
    the block can pull it back down.
    """
    _require_icn_member(alpha)
    if alpha.image_of(1) is not None:
        raise ContractError("expected an element whose domain omits 1")
    img = pinj.image(alpha)
    if 1 not in img:
        raise ContractError("expected an element whose image contains 1")
    n = alpha.n
    imgset = set(img)
    i = 1
    while i + 1 in imgset:
        i += 1
    i += 1  # least point not in the image; the moved block is {2, ..., i}
    tail = [a for a in img if a > i]
    req_pairs = [(j, j - 1) for j in range(2, i + 1)] + [(a, a) for a in tail]
    requisite = pinj.from_pairs(n, req_pairs)
    dom = pinj.domain(alpha)
    beta_pairs = []
    for j, x in enumerate(dom):
        target = alpha.image_of(x)
        beta_pairs.append((x, j + 2) if target < i else (x, target))
    beta = pinj.from_pairs(n, beta_pairs)
    if pinj.compose(beta, requisite) != alpha:
        raise AssertionError("requisite split failed to recompose")
    return beta, requisite


def _two_smallest_outside(n, used):
    free = [x for x in range(1, n + 1) if x not in used]
    if len(free) < 2:
        raise ContractError("no room left on the chain for the lift")
    return free[0], free[1]


def _smallest_outside(n, used):
    free = [x for x in range(1, n + 1) if x not in used]
    if not free:
        raise ContractError("no room left on the chain for the lift")
    return free[0]


def lift_height(alpha, kind):
    """Write alpha as a product of two elements one height higher.

    kind is "icn" (alpha idempotent or essential, height at most n-2) or
    "qprime" (alpha idempotent, essential or requisite with the census
    priority, height at most n-3; all constructed points avoid 1).
    """
    if kind not in (families.KIND_ICN, families.KIND_QPRIME):
        raise ContractError("lift_height supports the icn and qprime families")
    _require_icn_member(alpha)
    n = alpha.n
    p = pinj.height(alpha)
    qp = kind == families.KIND_QPRIME
    if qp and alpha.image_of(1) is not None:
        raise ContractError("element is outside the identity-free family")
    bound = n - 3 if qp else n - 2
    if p > bound:
        raise ContractError(f"lift needs height at most {bound}, got {p}")
    ekind = element_kind(alpha, qp)
    allowed = ("idempotent", "essential", "requisite") if qp else ("idempotent", "essential")
    if ekind not in allowed:
        raise ContractError(f"no lift for elements of kind {ekind!r} in this family")
    dom = pinj.domain(alpha)
    img = pinj.image(alpha)
    reserved = {1} if qp else set()
    if ekind == "idempotent":
        c, d = _two_smallest_outside(n, set(dom) | reserved)
        left = pinj.partial_identity(n, dom + (c,))
        right = pinj.partial_identity(n, dom + (d,))
    elif ekind == "essential":
        (y,) = (x for x in dom if alpha.image_of(x) != x)
        d = _smallest_outside(n, set(dom) | set(img) | reserved)
        left_pairs = [(x, alpha.image_of(x)) for x in dom] + [(d, d)]
        left = pinj.from_pairs(n, left_pairs)
        right = pinj.partial_identity(n, dom + (y - 1,))
    else:
        d, c = _two_smallest_outside(n, set(dom) | set(img) | reserved)
        left = pinj.partial_identity(n, dom + (d,))
        right_pairs = [(x, alpha.image_of(x)) for x in dom] + [(c, c)]
        right = pinj.from_pairs(n, right_pairs)
    if pinj.compose(left, right) != alpha:
        raise AssertionError("height lift failed to recompose")
    for part in (left, right):
        if pinj.height(part) != p + 1:
            raise AssertionError("height lift produced a factor of wrong height")
    return left, right


def maximal_subsemigroups(table):
    """All maximal subsemigroups of a J-trivial table.

    They are exactly the complements of single minimum generators: any
    proper subsemigroup misses some indecomposable (else it would
    generate everything), so it sits inside one of these; and each
    complement is closed because its removed element is indecomposable.
    Closedness is re-verified by scanning the product table, and on
    small tables the candidate set is cross-checked exhaustively against
    every single-element removal.
    """
    if not is_jtrivial(table):
        raise UnsupportedTableError("maximal subsemigroup search needs a J-trivial table")
    everything = frozenset(range(table.size))
    gens = indecomposables(table)
    if closure(table, gens) != everything:
        raise AssertionError("indecomposables fail to generate; table is corrupt")
    rows = table.product_rows()
    m = table.size
    results = []
    for g in sorted(gens):
        closed = True
        for i in range(m):
            if i == g:
                continue
            row = rows[i]
            for j in range(m):
                if j != g and row[j] == g:
                    closed = False
                    break
            if not closed:
                break
        results.append((g, closed))
    if m <= 200:
        candidates = {g for g, ok in results if ok}
        for x in range(m):
            complement_closed = not any(
                rows[i][j] == x
                for i in range(m)
                if i != x
                for j in range(m)
                if j != x
            )
            if complement_closed != (x in candidates):
                raise AssertionError(
                    "single-removal cross-check disagrees with the generator set"
                )
    return results
