"""Right modules, pointed bimodules and the simplicial objects built from them.

Contents:

* :class:`RightModule` over a table operad, with ``∘_i`` action tables;
* :class:`SimplicialGradedSet` and :func:`check_simplicial`, which tests the
  simplicial identities elementwise (plus augmentation and extra degeneracy
  when present);
* :func:`hochschild`, the two-sided bar construction ``H_n(P) = P^{∘(n+2)}``;
* the enveloping operad of a free pointed bimodule as a three-fold coproduct,
  with a congruence-closure oracle for ``E H_n(P)``;
* the object ``J`` resolving a free operad, its ``π₀`` and component census;
* endomorphism operads ``E_Q(M)`` of right modules.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

from .coproduct import Coproduct, FreeFactor
from .equivariant import equivariant_maps
from .errors import OperadError, SchemaError, TruncationExceeded
from .free import TRIVIAL, LabeledTree, corolla, enumerate_labeled, free_operad_graded, graft
from .graded import (CIRC_UNIT, CircElement, GradedSet, circ_compose, circ_power, dot_power,
                     weak_compositions,
                     element_from_json, element_to_json, graded_from_json, graded_to_json)
from .report import Report
from .table import OperadMap, TableOperad, insert_all, verify_hom


# -- right modules ----------------------------------------------------------

class RightModule:
    """A graded set ``M`` with a right action of ``Q`` given by ``∘_i`` tables.

    ``action[(m, i, b)]`` is ``m ∘_i b`` for ``m`` of level ``n ≥ 1``,
    ``1 ≤ i ≤ n`` and ``b`` in ``Q`` whenever the result level is ``≤ L``.
    """

    def __init__(self, carrier: GradedSet, operad: TableOperad, action: dict, name: str = "M"):
        self.carrier = carrier
        self.operad = operad
        self.action = action
        self.name = name

    def __repr__(self):
        return f"RightModule({self.name} over {self.operad.name}, sizes={self.carrier.counts()})"

    @property
    def bound(self) -> int:
        return self.carrier.level_bound

    def level(self, m) -> int:
        return self.carrier.level_of(m)

    def act(self, m, i: int, b):
        n, j = self.level(m), self.operad.level(b)
        if not 1 <= i <= n:
            raise OperadError(f"slot {i} out of range for level {n}")
        if n + j - 1 > self.bound:
            raise TruncationExceeded(n + j - 1, self.bound)
        return self.action[(m, i, b)]

    def full_act(self, m, bs: Sequence):
        """``m(b_1, ..., b_n)``; raises when the result is above the truncation."""
        bs = tuple(bs)
        if len(bs) != self.level(m):
            raise OperadError(f"{m!r} has level {self.level(m)} but {len(bs)} inputs were given")
        levels = [self.operad.level(b) for b in bs]
        if sum(levels) > self.bound:
            raise TruncationExceeded(sum(levels), self.bound)
        return insert_all(m, bs, levels, self.operad.identity, self.act)


def module_from_function(carrier: GradedSet, Q: TableOperad, act: Callable,
                         name: str = "M") -> RightModule:
    L = carrier.level_bound
    table = {}
    for n in range(1, L + 1):
        for j in range(0, L - n + 2):
            for m in carrier[n]:
                for b in Q[j]:
                    for i in range(1, n + 1):
                        table[(m, i, b)] = act(m, i, b)
    return RightModule(carrier, Q, table, name)


def module_from_operad(Q: TableOperad) -> RightModule:
    """``Q`` as a right module over itself."""
    return RightModule(Q.carrier, Q, dict(Q.compositions), Q.name)


def verify_module(M: RightModule) -> Report:
    """Totality, unit and both associativity laws of the right action."""
    Q, L = M.operad, M.bound
    rep = Report(f"right module {M.name}")
    for n in range(1, L + 1):
        for j in range(0, L - n + 2):
            for m in M.carrier[n]:
                for b in Q[j]:
                    for i in range(1, n + 1):
                        r = M.action.get((m, i, b))
                        rep.check(r is not None and r in M.carrier and M.level(r) == n + j - 1,
                                  "totality", m, i, b)
    if rep.failures:
        return rep
    for m in M.carrier:
        for i in range(1, M.level(m) + 1):
            rep.check(M.action[(m, i, Q.identity)] == m, "unit", m, i)
    for m in M.carrier:
        n = M.level(m)
        for b in Q.carrier:
            j = Q.level(b)
            if n == 0 or n + j - 1 > L:
                continue
            for i in range(1, n + 1):
                mb = M.action[(m, i, b)]
                for c in Q.carrier:
                    k = Q.level(c)
                    if n + j + k - 2 > L:
                        continue
                    for s in range(1, j + 1):
                        rep.check(M.action[(mb, i + s - 1, c)]
                                  == M.action[(m, i, Q.compositions[(b, s, c)])],
                                  "nested", m, i, b, s, c)
                    if n + k - 1 > L:
                        continue
                    for t in range(i + 1, n + 1):
                        rep.check(M.action[(mb, t + j - 1, c)]
                                  == M.action[(M.action[(m, t, c)], i, b)],
                                  "parallel", m, i, b, t, c)
    return rep


def module_to_json(M: RightModule) -> dict:
    return {
        "schema": "operadkit.module/1",
        "name": M.name,
        "carrier": graded_to_json(M.carrier),
        "action": [[element_to_json(m), i, element_to_json(b), element_to_json(r)]
                   for (m, i, b), r in M.action.items()],
    }


def module_from_json(obj: dict, Q: TableOperad) -> RightModule:
    try:
        carrier = graded_from_json(obj["carrier"])
        action = {(element_from_json(m), int(i), element_from_json(b)): element_from_json(r)
                  for m, i, b, r in obj["action"]}
        return RightModule(carrier, Q, action, obj.get("name", "M"))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad module JSON: {exc}") from exc


# -- simplicial graded sets -------------------------------------------------

class SimplicialGradedSet:
    """Degrees ``0..top``, each a :class:`GradedSet`, with faces and degeneracies.

    Subclasses implement :meth:`face` and :meth:`degeneracy`; either may return
    ``None`` when the result would leave the truncation.  ``augmentation`` and
    ``extra_degeneracy`` are optional.
    """

    name = "S"
    augmented_to: GradedSet | None = None
    has_extra_degeneracy = False

    def __init__(self, degrees: Sequence[GradedSet]):
        self.degrees = list(degrees)

    @property
    def top(self) -> int:
        return len(self.degrees) - 1

    def face(self, n: int, i: int, x):
        raise NotImplementedError

    def degeneracy(self, n: int, i: int, x):
        raise NotImplementedError

    def augmentation(self, x):
        raise NotImplementedError

    def extra_degeneracy(self, n: int, x):
        """``s_{-1}`` from degree ``n`` to ``n+1``; degree ``-1`` is the augmentation target."""
        raise NotImplementedError


def check_simplicial(S: SimplicialGradedSet, top: int | None = None) -> Report:
    """Elementwise simplicial identities over every degree up to ``top``.

    An identity is checked on degree ``n`` only when every degree it passes
    through is at most ``top``.  Instances where some side leaves the
    truncation are counted as skipped.
    """
    top = S.top if top is None else min(top, S.top)
    rep = Report(f"simplicial identities {S.name}")
    d, s = S.face, S.degeneracy

    def eq(lhs, rhs, *instance):
        if lhs is None or rhs is None:
            rep.skipped += 1
        else:
            rep.check(lhs == rhs, *instance)

    def then(f, x):
        return None if x is None else f(x)

    for n in range(top + 1):
        for x in S.degrees[n]:
            lvl = S.degrees[n].level_of(x)
            for i in range(n + 1):
                if n >= 1:
                    y = d(n, i, x)
                    if y is not None:
                        rep.check(y in S.degrees[n - 1] and S.degrees[n - 1].level_of(y) == lvl,
                                  "face level", n, i, x)
                if n + 1 <= top:
                    y = s(n, i, x)
                    rep.check(y is not None and y in S.degrees[n + 1]
                              and S.degrees[n + 1].level_of(y) == lvl, "degeneracy level", n, i, x)
            # d_i d_j = d_{j-1} d_i for i < j
            if n >= 2:
                for j in range(n + 1):
                    dj = d(n, j, x)
                    for i in range(j):
                        eq(then(lambda y: d(n - 1, i, y), dj),
                           then(lambda y: d(n - 1, j - 1, y), d(n, i, x)), "d_i d_j", n, i, j, x)
            if n + 1 <= top:
                for j in range(n + 1):
                    sj = s(n, j, x)
                    eq(d(n + 1, j, sj), x, "d_j s_j", n, j, x)
                    eq(d(n + 1, j + 1, sj), x, "d_j+1 s_j", n, j, x)
                    for i in range(n + 2):
                        if i < j:
                            eq(d(n + 1, i, sj), then(lambda y: s(n - 1, j - 1, y), d(n, i, x)),
                               "d_i s_j", n, i, j, x)
                        elif i > j + 1:
                            eq(d(n + 1, i, sj), then(lambda y: s(n - 1, j, y), d(n, i - 1, x)),
                               "d_i s_j", n, i, j, x)
            if n + 2 <= top:
                for j in range(n + 1):
                    for i in range(j + 1):
                        eq(s(n + 1, i, s(n, j, x)), s(n + 1, j + 1, s(n, i, x)),
                           "s_i s_j", n, i, j, x)
    if S.augmented_to is not None and top >= 1:
        for x in S.degrees[1]:
            eq(then(S.augmentation, d(1, 0, x)), then(S.augmentation, d(1, 1, x)),
               "augmentation", x)
    if S.has_extra_degeneracy:
        _check_extra(S, top, rep, eq, then)
    return rep


def _check_extra(S, top, rep, eq, then):
    d, s, e = S.face, S.degeneracy, S.extra_degeneracy
    if S.augmented_to is not None:
        for p in S.augmented_to:
            x = e(-1, p)
            eq(S.augmentation(x), p, "contraction", p)
    for n in range(top):
        for x in S.degrees[n]:
            ex = e(n, x)
            eq(d(n + 1, 0, ex), x, "d_0 s_-1", n, x)
            if n == 0 and S.augmented_to is not None:
                eq(d(1, 1, ex), then(lambda y: e(-1, y), S.augmentation(x)), "d_1 s_-1", n, x)
            for i in range(n + 1):
                if n >= 1:
                    eq(d(n + 1, i + 1, ex), then(lambda y: e(n - 1, y), d(n, i, x)),
                       "d_i+1 s_-1", n, i, x)
                if n + 2 <= top:
                    eq(s(n + 1, i + 1, ex), e(n + 1, s(n, i, x)), "s_i+1 s_-1", n, i, x)
            if n + 2 <= top:
                eq(s(n + 1, 0, ex), e(n + 1, ex), "s_0 s_-1", n, x)


def coequalizer_classes(edges_from: Sequence, d0: Callable, d1: Callable,
                        vertices: Sequence) -> tuple[list[list], int]:
    """Classes of ``vertices`` under ``d0(z) ~ d1(z)``; returns ``(classes, skipped)``."""
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    skipped = 0
    for z in edges_from:
        a, b = d0(z), d1(z)
        if a is None or b is None or a not in parent or b not in parent:
            skipped += 1
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values()), skipped


# -- the ∘-Hochschild resolution --------------------------------------------

def circ_level(P: TableOperad, x, m: int) -> int:
    """Level of an element of ``P^{∘m}`` (right nested)."""
    if m == 1:
        return P.level(x)
    return sum(circ_level(P, y, m - 1) for y in x.inners)


def nested_identity(P: TableOperad, m: int):
    """The element ``(1; 1; ...; 1)`` of ``P^{∘m}``; the unit point for ``m = 0``."""
    if m == 0:
        return CIRC_UNIT[1][0]
    x = P.identity
    for _ in range(m - 1):
        x = CircElement(P.identity, (x,))
    return x


def combine(P: TableOperad, x, j: int, m: int):
    """Multiply factors ``j`` and ``j+1`` (1-based) of ``x ∈ P^{∘m}``."""
    p, inners = x
    if j == 1:
        if m == 2:
            return P.full_compose(p, inners)
        heads = [y.outer for y in inners]
        tails = tuple(z for y in inners for z in y.inners)
        return CircElement(P.full_compose(p, heads), tails)
    return CircElement(p, tuple(combine(P, y, j - 1, m - 1) for y in inners))


def insert_unit(P: TableOperad, x, j: int):
    """Insert a factor of identities after factor ``j`` (``j = 0`` puts it in front)."""
    if j == 0:
        return CircElement(P.identity, (x,))
    p, inners = x
    return CircElement(p, tuple(insert_unit(P, y, j - 1) for y in inners))


def multiply_all(P: TableOperad, x, m: int):
    if m == 1:
        return x
    p, inners = x
    return P.full_compose(p, [multiply_all(P, y, m - 1) for y in inners])


def circ_left_action(P: TableOperad, p, xs: Sequence):
    """``p·(x_1..x_k)`` for ``x_i ∈ P^{∘m}``, ``m ≥ 2``: acts on the outer factor."""
    heads = [x.outer for x in xs]
    tails = tuple(z for x in xs for z in x.inners)
    return CircElement(P.full_compose(p, heads), tails)


def circ_right_action(P: TableOperad, x, qs: Sequence, m: int):
    """``x·(q_1..q_l)`` for ``x ∈ P^{∘m}``: acts on the innermost factor."""
    if m == 1:
        return P.full_compose(x, qs)
    out, pos = [], 0
    for y in x.inners:
        k = circ_level(P, y, m - 1)
        out.append(circ_right_action(P, y, qs[pos:pos + k], m - 1))
        pos += k
    return CircElement(x.outer, tuple(out))


def _partial(fn, *args):
    try:
        return fn(*args)
    except TruncationExceeded:
        return None


class Hochschild(SimplicialGradedSet):
    """``H_n(P) = P^{∘(n+2)}`` with faces multiplying adjacent factors.

    ``d_i`` multiplies factors ``i+1`` and ``i+2``, ``s_i`` inserts identities
    between them, ``s_{-1}`` inserts identities in front and the augmentation
    multiplies everything.  Faces whose composite lies above the operad's
    truncation return ``None``.
    """

    has_extra_degeneracy = True

    def __init__(self, P: TableOperad, top: int, L: int | None = None):
        self.P = P
        self.L = P.bound if L is None else min(L, P.bound)
        self.name = f"H({P.name})"
        self.augmented_to = P.carrier.truncate(self.L)
        super().__init__([circ_power(P.carrier, n + 2, self.L) for n in range(top + 1)])

    def face(self, n, i, x):
        return _partial(combine, self.P, x, i + 1, n + 2)

    def degeneracy(self, n, i, x):
        return insert_unit(self.P, x, i + 1)

    def augmentation(self, x):
        return _partial(multiply_all, self.P, x, 2)

    def extra_degeneracy(self, n, x):
        return insert_unit(self.P, x, 0)

    def basepoint(self, n: int):
        return nested_identity(self.P, n + 2)

    def left_action(self, p, xs):
        return circ_left_action(self.P, p, xs)

    def right_action(self, x, qs, n: int):
        return circ_right_action(self.P, x, qs, n + 2)


def hochschild(P: TableOperad, n_max: int, L: int | None = None) -> Hochschild:
    """Degrees ``0..n_max+1`` so that every identity starting in degree ``≤ n_max`` is checkable."""
    return Hochschild(P, n_max + 1, L)


def hochschild_pi0(H: Hochschild) -> Report:
    """The coequalizer of ``d_0, d_1 : H_1 → H_0`` is ``P`` via the augmentation."""
    rep = Report(f"pi0 {H.name}")
    classes, skipped = coequalizer_classes(H.degrees[1], lambda z: H.face(1, 0, z),
                                           lambda z: H.face(1, 1, z), list(H.degrees[0]))
    rep.skipped += skipped
    images = []
    for cls in classes:
        vals = {H.augmentation(v) for v in cls}
        rep.check(len(vals) == 1 and None not in vals, "augmentation not constant", cls[0])
        images.extend(vals)
    rep.check(len(images) == len(set(images)), "two classes with one image")
    rep.check(set(images) == set(H.augmented_to), "image is not all of P")
    rep.data["classes_by_level"] = [sum(1 for c in classes if H.degrees[0].level_of(c[0]) == n)
                                    for n in range(H.L + 1)]
    return rep


def check_bimodule(H: Hochschild, n: int) -> Report:
    """Unit, associativity and commutation of the two actions on ``H_n`` within the truncation."""
    P, X = H.P, H.degrees[n]
    rep = Report(f"bimodule {H.name}_{n}")
    ident = P.identity
    star = H.basepoint(n)
    rep.check(X.level_of(star) == 1, "basepoint level", star)
    for x in X:
        k = X.level_of(x)
        rep.check(H.left_action(ident, [x]) == x, "left unit", x)
        rep.check(H.right_action(x, [ident] * k, n) == x, "right unit", x)
        for qs in _tuples(P, k, H.L):
            xq = _partial(H.right_action, x, qs, n)
            if xq is None:
                rep.skipped += 1
                continue
            for p in P.carrier:
                if P.level(p) != 1:
                    continue
                lhs = _partial(H.right_action, H.left_action(p, [x]), qs, n)
                rep.check(lhs == H.left_action(p, [xq]), "commute", p, x, qs)
    return rep


def _tuples(P: TableOperad, k: int, L: int):
    for js in itertools.product(range(L + 1), repeat=k):
        if sum(js) <= L:
            yield from itertools.product(*(P[j] for j in js))


# -- enveloping operads -----------------------------------------------------

def envelope_free(P: TableOperad, Z: GradedSet, Q: TableOperad, basepoint: Hashable = None,
                  colors: Sequence[str] = ("L", "Z", "R")) -> Coproduct:
    """The enveloping operad of the free pointed ``(P, Q)``-bimodule on ``Z`` as ``P ⊔ Φ(Z) ⊔ Q``.

    With a ``basepoint`` the middle factor is the pointed free operad.
    """
    return Coproduct([P, FreeFactor(Z, basepoint, "Z"), Q], list(colors))


def hochschild_envelope(P: TableOperad, n: int) -> Coproduct:
    """``E H_n(P) ≅ P ⊔ Φ′(P^{∘n}) ⊔ P``."""
    Z = circ_power(P.carrier, n, P.bound) if n else CIRC_UNIT
    return envelope_free(P, Z, P, nested_identity(P, n))


def split_last(P: TableOperad, y, m: int):
    """Write ``y ∈ P^{∘m}`` as ``(top ∈ P^{∘(m-1)}; bottoms)``."""
    if m == 1:
        return CIRC_UNIT[1][0], (y,)
    if m == 2:
        return y.outer, y.inners
    parts = [split_last(P, v, m - 1) for v in y.inners]
    return CircElement(y.outer, tuple(t for t, _ in parts)), tuple(b for _, bs in parts for b in bs)


class EnvelopeOracle:
    """``E H_n(P)`` by congruence closure on words over ``P``, ``H_n(P)`` and ``P``.

    Words carry labels ``("L", p)``, ``("X", x)`` and ``("R", q)``.  Besides the
    merges and identity splices of the two outer factors, a word is identified
    with the result of letting a ``P``-node act on ``X``-children (bare leaves
    count as the basepoint), of letting ``R``-children act on an ``X``-node
    (bare leaves count as identities), and of splicing the basepoint.
    """

    def __init__(self, P: TableOperad, n: int):
        self.P, self.n = P, n
        self.H = Hochschild(P, n)
        self.X = self.H.degrees[n]
        self.star = self.H.basepoint(n)
        levels = []
        for k in range(P.bound + 1):
            levels.append([("L", p) for p in P[k]] + [("X", x) for x in self.X[k]]
                          + [("R", q) for q in P[k]])
        self.labels = GradedSet.from_levels(levels)
        self.skipped = 0

    def words(self, level: int, max_beta: int) -> list[LabeledTree]:
        return enumerate_labeled(self.labels, level, max_beta, self.labels.level_bound)

    def steps(self, t: LabeledTree):
        if t.label is None:
            return
        color, v = t.label
        kids = t.children
        P = self.P
        if (color in "LR" and v == P.identity) or (color == "X" and v == self.star):
            yield kids[0]
        if color in "LR":
            for i, k in enumerate(kids):
                if k.label is not None and k.label[0] == color:
                    r = _partial(P.partial_compose, v, i + 1, k.label[1])
                    if r is None:
                        self.skipped += 1
                        continue
                    yield LabeledTree((color, r), kids[:i] + k.children + kids[i + 1:])
        if color == "L" and all(k.label is None or k.label[0] == "X" for k in kids):
            xs = [self.star if k.label is None else k.label[1] for k in kids]
            r = _partial(self.H.left_action, v, xs)
            if r is None:
                self.skipped += 1
            else:
                grand = tuple(g for k in kids for g in (k.children if k.label else (TRIVIAL,)))
                yield LabeledTree(("X", r), grand)
        if color == "X" and kids and all(k.label is None or k.label[0] == "R" for k in kids):
            qs = [P.identity if k.label is None else k.label[1] for k in kids]
            r = _partial(self.H.right_action, v, qs, self.n)
            if r is None:
                self.skipped += 1
            else:
                grand = tuple(g for k in kids for g in (k.children if k.label else (TRIVIAL,)))
                yield LabeledTree(("X", r), grand)
        for i, k in enumerate(kids):
            for s in self.steps(k):
                yield LabeledTree(t.label, kids[:i] + (s,) + kids[i + 1:])

    def classes(self, level: int, max_beta: int) -> list[list[LabeledTree]]:
        words = self.words(level, max_beta)
        parent = {w: w for w in words}

        def find(x):
            while parent[x] is not x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for w in words:
            for s in self.steps(w):
                ra, rb = find(w), find(s)
                if ra is not rb:
                    parent[ra] = rb
        groups: dict = {}
        for w in words:
            groups.setdefault(find(w), []).append(w)
        return list(groups.values())

    def to_formula(self, cp: Coproduct, w: LabeledTree) -> LabeledTree:
        """Send a word to the normal form of its image in ``P ⊔ Φ′(P^{∘n}) ⊔ P``."""
        return cp.normalize(self._image(w))

    def _image(self, w: LabeledTree) -> LabeledTree:
        if w.label is None:
            return w
        color, v = w.label
        kids = [self._image(k) for k in w.children]
        if color != "X":
            return LabeledTree(w.label, kids)
        p, inners = v
        blocks, pos = [], 0
        for y in inners:
            z, qs = split_last(self.P, y, self.n + 1)
            rs = []
            for q in qs:
                k = self.P.level(q)
                rs.append(LabeledTree(("R", q), kids[pos:pos + k]))
                pos += k
            blocks.append(LabeledTree(("Z", z), rs))
        return LabeledTree(("L", p), blocks)


def compare_envelope(P: TableOperad, n: int, level: int, max_beta: int, slack: int = 2) -> Report:
    """Compare ``E H_n(P)`` computed by congruence closure with the coproduct formula.

    The oracle closes words with up to ``max_beta + slack`` nodes.  Checked:
    the comparison map is constant on classes and injective on them, and the
    classes containing a word with at most ``max_beta`` nodes correspond to the
    normal forms with at most ``max_beta`` nodes.
    """
    rep = Report(f"envelope E H_{n}({P.name}) level {level}")
    oracle = EnvelopeOracle(P, n)
    cp = hochschild_envelope(P, n)
    classes = oracle.classes(level, max_beta + slack)
    image_of = []
    for cls in classes:
        imgs = {oracle.to_formula(cp, w) for w in cls}
        rep.check(len(imgs) == 1, "map not constant on class", cls[0])
        image_of.append(next(iter(imgs)))
    rep.check(len(set(image_of)) == len(image_of), "map not injective")
    small = [img for cls, img in zip(classes, image_of) if min(w.branches for w in cls) <= max_beta]
    nfs = cp.normal_forms(level, max_beta)
    rep.check(set(nfs) <= set(image_of), "normal form outside the image")
    rep.data.update({
        "oracle_classes": len(small),
        "normal_forms": len(nfs),
        "match": len(small) == len(nfs),
    })
    rep.check(len(small) == len(nfs), "census mismatch", len(small), len(nfs))
    rep.skipped += oracle.skipped
    return rep


# -- the J object -----------------------------------------------------------

PLUS = "+"


class JObject(SimplicialGradedSet):
    """``J_k = P ∘ (X^{∪k})_+ ∘ P`` for the free operad ``P`` on ``X``.

    An element is ``(p_0; (y_1; q-block), ...)`` where each ``y`` is either
    ``+`` (level 1, one ``q``) or a copy ``(x, c)`` of a generator with
    ``1 ≤ c ≤ k``.  Trees ``p_0`` and ``q`` have at most ``max_branch`` nodes.
    """

    def __init__(self, X: GradedSet, k_max: int, L: int, max_branch: int):
        self.X, self.L, self.max_branch = X, L, max_branch
        self.name = "J"
        self.P = free_operad_graded(X, L, max_branch)
        degrees = []
        for k in range(k_max + 1):
            ylevels = [[] for _ in range(X.level_bound + 1)]
            if len(ylevels) < 2:
                ylevels.append([])
            ylevels[1].append(PLUS)
            for c in range(1, k + 1):
                for j in range(X.level_bound + 1):
                    ylevels[j].extend((x, c) for x in X[j])
            Y = GradedSet.from_levels(ylevels)
            degrees.append(circ_compose(self.P, circ_compose(Y, self.P, L), L))
        super().__init__(degrees)

    def _level(self, y) -> int:
        return 1 if y == PLUS else self.X.level_of(y[0])

    def _remap(self, z, new_k: int, shift: Callable):
        """Move every copy index through ``shift``; absorb copies sent to 0 or ``new_k + 1``."""
        p0, blocks = z
        left, new_blocks = [], []
        for y, qs in blocks:
            if y == PLUS:
                left.append(TRIVIAL)
                new_blocks.append(CircElement(PLUS, qs))
                continue
            x, c = y
            t = shift(c)
            if t == 0:
                lvl = self.X.level_of(x)
                left.append(corolla(x, lvl))
                new_blocks.extend(CircElement(PLUS, (q,)) for q in qs)
            elif t == new_k + 1:
                left.append(TRIVIAL)
                new_blocks.append(CircElement(PLUS, (graft(corolla(x, len(qs)), qs),)))
            else:
                left.append(TRIVIAL)
                new_blocks.append(CircElement((x, t), qs))
        return CircElement(graft(p0, left), tuple(new_blocks))

    def face(self, n, i, z):
        return self._bounded(n - 1, self._remap(z, n - 1, lambda t: t if t <= i else t - 1))

    def degeneracy(self, n, i, z):
        return self._bounded(n + 1, self._remap(z, n + 1, lambda t: t if t <= i else t + 1))

    def _bounded(self, k: int, z):
        # results with too many nodes in p_0 fall outside the enumerated degree
        if k < len(self.degrees) and z not in self.degrees[k]:
            return None
        return z

    def multiply(self, z) -> LabeledTree:
        p0, blocks = z
        parts = []
        for y, qs in blocks:
            if y == PLUS:
                parts.append(qs[0])
            else:
                parts.append(graft(corolla(y[0], len(qs)), qs))
        return graft(p0, parts)


def j_object(X: GradedSet, k_max: int, L: int, max_branch: int) -> JObject:
    return JObject(X, k_max, L, max_branch)


def pi0_j(J: JObject) -> Report:
    """``π₀J`` as the coequalizer of ``d_0, d_1 : J_1 → J_0``, compared with ``P``.

    Classes whose multiplied value has more than ``max_branch`` nodes may be
    cut by the bound and are only counted.
    """
    rep = Report("pi0 J")
    classes, skipped = coequalizer_classes(J.degrees[1], lambda z: J.face(1, 0, z),
                                           lambda z: J.face(1, 1, z), list(J.degrees[0]))
    rep.skipped += skipped
    counts = [0] * (J.L + 1)
    seen = set()
    for cls in classes:
        vals = {J.multiply(v) for v in cls}
        rep.check(len(vals) == 1, "multiplication not constant on a class", cls[0])
        val = next(iter(vals))
        if val.branches > J.max_branch:
            rep.skipped += 1
            continue
        rep.check(val not in seen, "two classes over one element", val)
        seen.add(val)
        counts[val.level] += 1
    for n in range(J.L + 1):
        expected = {t for t in J.P[n] if t.branches <= J.max_branch}
        rep.check(expected == {t for t in seen if t.level == n}, "bijection with P fails", n)
    rep.data["classes_by_level"] = counts
    rep.data["P_by_level"] = [len(J.P[n]) for n in range(J.L + 1)]
    return rep


def component_census(J: JObject) -> Report:
    """Sizes of the components ``C(l)_k`` and connectedness of ``C(l)`` at degree 0.

    ``|C(e)_k| = 1`` and ``|C(l)_k| = Π|C(l_i)_k| + k + 1`` for ``l = x(l_1..l_m)``.
    """
    rep = Report("J components")
    sizes = []
    for k, Jk in enumerate(J.degrees):
        count: dict = {}
        for z in Jk:
            l = J.multiply(z)
            count[l] = count.get(l, 0) + 1
        sizes.append(count)
        for n in range(J.L + 1):
            for l in J.P[n]:
                if l.branches > J.max_branch:
                    continue
                if l.label is None:
                    expected = 1
                else:
                    expected = k + 1
                    prod = 1
                    for c in l.children:
                        prod *= _component_size(c, k)
                    expected += prod
                rep.check(count.get(l, 0) == expected, "component size", k, l,
                          count.get(l, 0), expected)
    classes, _ = coequalizer_classes(J.degrees[1], lambda z: J.face(1, 0, z),
                                     lambda z: J.face(1, 1, z), list(J.degrees[0]))
    per_value: dict = {}
    for cls in classes:
        l = J.multiply(cls[0])
        per_value[l] = per_value.get(l, 0) + 1
    for l, c in per_value.items():
        if l.branches <= J.max_branch:
            rep.check(c == 1, "component not connected", l, c)
    rep.data["components_checked"] = sum(1 for l in per_value if l.branches <= J.max_branch)
    return rep


def _component_size(l: LabeledTree, k: int) -> int:
    if l.label is None:
        return 1
    prod = 1
    for c in l.children:
        prod *= _component_size(c, k)
    return prod + k + 1


# -- endomorphism operads of right modules ----------------------------------

def _dot_moves(M: RightModule, domain: GradedSet, L: int) -> dict:
    """Moves of ``M^{⊙n}`` under the full right action: each factor acts on its block."""
    Q = M.operad
    moves = {}
    for t in domain:
        levels = [M.level(m) for m in t]
        out = []
        for bs in _tuples(Q, sum(levels), L):
            parts, pos = [], 0
            for m, k in zip(t, levels):
                r = _partial(M.full_act, m, bs[pos:pos + k])
                if r is None:
                    break
                parts.append(r)
                pos += k
            else:
                out.append((bs, tuple(parts)))
        moves[t] = out
    return moves


class EndomorphismOperad:
    """``E_Q(M)(n)``: equivariant maps ``M^{⊙n} → M``, composed by substitution.

    ``maps[n]`` lists the maps as dicts on ``M^{⊙n}``; ``operad`` is the
    tabulated :class:`TableOperad` with element ids ``"E<n>.<k>"``.
    """

    def __init__(self, M: RightModule, n_max: int, cap: int = 200_000):
        self.M = M
        L = M.bound
        self.n_max = n_max
        self.domains = [dot_power(M.carrier, n, L) for n in range(n_max + 1)]
        self.maps = []
        Q = M.operad
        for n in range(n_max + 1):
            dom = self.domains[n]
            elems = list(dom)
            moves = _dot_moves(M, dom, L)
            found = equivariant_maps(
                elems, dom.level_of, moves, lambda k: M.carrier[k],
                lambda m, bs: _partial(M.full_act, m, bs), cap)
            found.sort(key=lambda phi: tuple(repr(phi[x]) for x in elems))
            self.maps.append(found)
        self.ids = {}
        levels = []
        for n, found in enumerate(self.maps):
            row = []
            for k, phi in enumerate(found):
                ident = f"E{n}.{k}"
                row.append(ident)
                self.ids[ident] = phi
            levels.append(row)
        self._lookup = {(n, self._key(n, phi)): f"E{n}.{k}"
                        for n, found in enumerate(self.maps) for k, phi in enumerate(found)}
        carrier = GradedSet.from_levels(levels)
        identity = self._lookup.get((1, self._key(1, {(m,): m for m in M.carrier})))
        if identity is None:
            raise OperadError("the identity map is not equivariant")
        comp = {}
        for a_n in range(1, n_max + 1):
            for a in levels[a_n]:
                for b_n in range(0, n_max - a_n + 2):
                    for b in levels[b_n]:
                        for i in range(1, a_n + 1):
                            comp[(a, i, b)] = self._substitute(a, i, b)
        self.operad = TableOperad(carrier, identity, comp, f"E_{Q.name}({M.name})")

    def _key(self, n: int, phi: dict) -> tuple:
        return tuple(phi[x] for x in self.domains[n])

    def _substitute(self, a, i: int, b):
        n, m = self.operad_level(a), self.operad_level(b)
        phi, psi = self.ids[a], self.ids[b]
        out = {}
        for t in self.domains[n + m - 1]:
            inner = psi[tuple(t[i - 1:i - 1 + m])]
            out[t] = phi[t[:i - 1] + (inner,) + t[i - 1 + m:]]
        return self._lookup[(n + m - 1, self._key(n + m - 1, out))]

    def operad_level(self, ident: str) -> int:
        return int(ident[1:].split(".")[0])

    def evaluate_at_generator(self, ident: str):
        n = self.operad_level(ident)
        phi = self.ids[ident]
        return phi[(self.M.operad.identity,) * n] if n else phi[()]


def end_module_operad(Q: TableOperad, M: RightModule, n_max: int, cap: int = 200_000) -> EndomorphismOperad:
    if n_max > M.bound:
        raise OperadError("n_max must not exceed the truncation level")
    return EndomorphismOperad(M, n_max, cap)


def check_end_self(Q: TableOperad, n_max: int, cap: int = 200_000) -> Report:
    """``Q ≅ E_Q(Q)``: evaluation at the generator is a bijection and ``q ↦ q(-)`` is an operad map."""
    rep = Report(f"E_Q(Q) for {Q.name}")
    E = end_module_operad(Q, module_from_operad(Q), n_max, cap)
    rep.data["sizes"] = [len(E.maps[n]) for n in range(n_max + 1)]
    rep.data["Q_sizes"] = [len(Q[n]) for n in range(n_max + 1)]
    inverse = {}
    for n in range(n_max + 1):
        values = [E.evaluate_at_generator(e) for e in E.operad[n]]
        rep.check(sorted(map(repr, values)) == sorted(map(repr, Q[n])), "evaluation not bijective", n)
        for e, v in zip(E.operad[n], values):
            inverse[v] = e
    # q acts on tuples by composition; it must be the element with ev = q
    for n in range(n_max + 1):
        for q in Q[n]:
            e = inverse.get(q)
            if e is None:
                continue
            phi = E.ids[e]
            for t in E.domains[n]:
                r = _partial(Q.full_compose, q, t)
                rep.check(r == phi[t], "left multiplication", q, t)
    sub = _truncated(Q, n_max)
    hom = OperadMap(sub, E.operad, {q: inverse[q] for q in sub.carrier if q in inverse})
    rep.merge(verify_hom(hom))
    rep.data["endomorphism_operad"] = E.operad.name
    return rep


def _truncated(Q: TableOperad, n: int) -> TableOperad:
    if n >= Q.bound:
        return Q
    carrier = Q.carrier.truncate(n)
    comp = {(a, i, b): c for (a, i, b), c in Q.compositions.items()
            if c in carrier and a in carrier and b in carrier}
    return TableOperad(carrier, Q.identity, comp, Q.name, Q.aliases)


def iter_circ_power(P: TableOperad, m: int, n: int):
    """Stream the level-``n`` elements of ``P^{∘m}`` without storing them."""
    if m == 1:
        yield from P[n]
        return
    for i in range(P.bound + 1):
        if not P[i]:
            continue
        for js in weak_compositions(n, i, P.bound):
            pools = [tuple(iter_circ_power(P, m - 1, j)) for j in js]
            for p in P[i]:
                for ys in itertools.product(*pools):
                    yield CircElement(p, ys)


def check_augmented_faces(P: TableOperad) -> Report:
    """``ε d_0 = ε d_1`` on every element of ``H_1(P) = P∘P∘P`` up to the operad's bound.

    An element is ``(p; (q_1; r-block), ...)``.  When the outer product
    ``p(q_1, ...)`` lies above the bound the whole family sharing ``p`` and the
    ``q`` levels is counted as skipped without being enumerated.
    """
    rep = Report(f"augmented faces H_1({P.name})")
    L = P.bound
    size = [len(P[j]) for j in range(L + 1)]

    def tuples_at(k: int, n: int):
        for js in weak_compositions(n, k, L):
            yield from itertools.product(*(P[j] for j in js))

    def count_at(k: int, n: int) -> int:
        total = 0
        for js in weak_compositions(n, k, L):
            c = 1
            for j in js:
                c *= size[j]
            total += c
        return total

    for i in range(L + 1):
        for js in itertools.product(range(L + 1), repeat=i):
            heads_count = 1
            for j in js:
                heads_count *= size[j]
            K = sum(js)
            if K > L:
                rep.skipped += size[i] * heads_count * sum(count_at(K, n) for n in range(L + 1))
                continue
            for p in P[i]:
                for qs in itertools.product(*(P[j] for j in js)):
                    outer = P.full_compose(p, qs)
                    for n in range(L + 1):
                        for rs in tuples_at(K, n):
                            blocks, pos = [], 0
                            for q, j in zip(qs, js):
                                blocks.append(rs[pos:pos + j])
                                pos += j
                            lhs = P.full_compose(outer, rs)
                            try:
                                rhs = P.full_compose(p, [P.full_compose(q, b) for q, b in zip(qs, blocks)])
                            except TruncationExceeded:
                                rep.skipped += 1
                                continue
                            rep.check(lhs == rhs, "eps d_0 != eps d_1", p, qs, rs)
    return rep
