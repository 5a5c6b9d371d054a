"""Finite graded sets and the two monoidal products on them.

A graded set is a finite family of finite sets indexed by levels ``0..L``.
Elements are arbitrary hashable values; composite elements produced by the
products are :class:`CircElement` and :class:`DotElement` tuples, so element
identity is structural and stable across runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, NamedTuple


class CircElement(NamedTuple):
    """An element ``(x; y_1, ..., y_i)`` of a composition product."""

    outer: Any
    inners: tuple


class DotElement(NamedTuple):
    """An element ``(x, y)`` of a graded cartesian product."""

    left: Any
    right: Any


@dataclass(frozen=True)
class GradedSet:
    levels: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        levels = tuple(tuple(lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        index = {}
        for n, lv in enumerate(levels):
            for x in lv:
                if x in index:
                    raise ValueError(f"duplicate element {x!r} in graded set")
                index[x] = n
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_levels(cls, levels: Iterable[Iterable[Hashable]]) -> "GradedSet":
        return cls(tuple(tuple(lv) for lv in levels))

    @classmethod
    def empty(cls, bound: int) -> "GradedSet":
        return cls(tuple(() for _ in range(bound + 1)))

    @property
    def level_bound(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> tuple:
        if 0 <= n < len(self.levels):
            return self.levels[n]
        return ()

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self) -> Iterator:
        for lv in self.levels:
            yield from lv

    def __len__(self) -> int:
        return len(self._index)

    def level_of(self, x) -> int:
        return self._index[x]

    def counts(self) -> tuple:
        return tuple(len(lv) for lv in self.levels)

    def truncate(self, bound: int) -> "GradedSet":
        return GradedSet(tuple(self[n] for n in range(bound + 1)))

    def union(self, other: "GradedSet") -> "GradedSet":
        """Levelwise union; the two sets must not share elements."""
        bound = max(self.level_bound, other.level_bound)
        return GradedSet(tuple(self[n] + other[n] for n in range(bound + 1)))

    def is_empty(self) -> bool:
        return not self._index


def point_at(level: int, name: Hashable = "*", bound: int | None = None) -> GradedSet:
    """The graded set with a single point at ``level``."""
    bound = level if bound is None else bound
    return GradedSet(tuple((name,) if n == level else () for n in range(bound + 1)))


#: unit for the composition product: one point at level 1
CIRC_UNIT = point_at(1, "1o")
#: unit for the graded cartesian product: one point at level 0
DOT_UNIT = point_at(0, "1d")


def weak_compositions(total: int, parts: int, max_part: int | None = None) -> Iterator[tuple]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``, lexicographic."""
    if max_part is None:
        max_part = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total > parts * max_part:
        return
    for first in range(min(total, max_part) + 1):
        for rest in weak_compositions(total - first, parts - 1, max_part):
            yield (first,) + rest


def circ_compose(X: GradedSet, Y: GradedSet, L: int) -> GradedSet:
    """The composition product truncated at level ``L``.

    Level ``n`` holds every ``(x; y_1..y_i)`` with ``x`` in ``X(i)`` and the
    levels of the ``y``'s summing to ``n``.  Inner level 0 is allowed.
    """
    levels = []
    for n in range(L + 1):
        out = []
        for i in range(X.level_bound + 1):
            if not X[i]:
                continue
            shapes = [js for js in weak_compositions(n, i, Y.level_bound)
                      if all(Y[j] for j in js)]
            for x in X[i]:
                for js in shapes:
                    for ys in itertools.product(*(Y[j] for j in js)):
                        out.append(CircElement(x, ys))
        levels.append(out)
    return GradedSet.from_levels(levels)


def dot_compose(X: GradedSet, Y: GradedSet, L: int) -> GradedSet:
    """The graded cartesian product truncated at level ``L``."""
    levels = []
    for n in range(L + 1):
        out = []
        for i in range(n + 1):
            for x in X[i]:
                for y in Y[n - i]:
                    out.append(DotElement(x, y))
        levels.append(out)
    return GradedSet.from_levels(levels)


def circ_power(X: GradedSet, k: int, L: int) -> GradedSet:
    """``X^{∘k}``, nested to the right: ``X ∘ (X ∘ (...))``; ``k = 0`` is the unit."""
    if k == 0:
        return CIRC_UNIT.truncate(L) if L >= 1 else GradedSet.empty(L)
    result = X.truncate(L)
    for _ in range(k - 1):
        result = circ_compose(X, result, L)
    return result


def dot_power(X: GradedSet, k: int, L: int) -> GradedSet:
    """``X^{⊙k}`` with elements flattened to ``k``-tuples."""
    levels = [[] for _ in range(L + 1)]
    for n in range(L + 1):
        for js in weak_compositions(n, k):
            if all(X[j] for j in js):
                levels[n].extend(itertools.product(*(X[j] for j in js)))
    if k == 0:
        levels[0] = [()]
    return GradedSet.from_levels(levels)


@dataclass(frozen=True)
class GradedMap:
    source: GradedSet
    target: GradedSet
    assignment: dict

    def __call__(self, x):
        return self.assignment[x]

    def __post_init__(self):
        for x, y in self.assignment.items():
            if self.source.level_of(x) != self.target.level_of(y):
                raise ValueError(f"map is not level preserving at {x!r}")

    def is_total(self) -> bool:
        return all(x in self.assignment for x in self.source)

    def then(self, other: "GradedMap") -> "GradedMap":
        return GradedMap(self.source, other.target,
                         {x: other(y) for x, y in self.assignment.items()})

    def is_identity(self) -> bool:
        return all(self.assignment.get(x) == x for x in self.source)


def identity_map(X: GradedSet) -> GradedMap:
    return GradedMap(X, X, {x: x for x in X})


def distribute(X: GradedSet, Y: GradedSet, Z: GradedSet, L: int):
    """The isomorphism ``(X⊙Y)∘Z ≅ (X∘Z)⊙(Y∘Z)`` truncated at ``L``.

    Returns ``(forward, backward)``.  The outer ``⊙`` factor is formed up to
    ``X.level_bound + Y.level_bound`` so that inner level-0 factors do not
    lose elements of the left-hand side.
    """
    XY = dot_compose(X, Y, X.level_bound + Y.level_bound)
    lhs = circ_compose(XY, Z, L)
    rhs = dot_compose(circ_compose(X, Z, L), circ_compose(Y, Z, L), L)

    forward = {}
    for elem in lhs:
        (x, y), zs = elem
        i = X.level_of(x)
        forward[elem] = DotElement(CircElement(x, zs[:i]), CircElement(y, zs[i:]))
    backward = {}
    for elem in rhs:
        (x, zx), (y, zy) = elem
        backward[elem] = CircElement(DotElement(x, y), zx + zy)
    return GradedMap(lhs, rhs, forward), GradedMap(rhs, lhs, backward)


def random_graded_set(rng: random.Random, bound: int, max_per_level: int = 2,
                      prefix: str = "x") -> GradedSet:
    levels = []
    for n in range(bound + 1):
        k = rng.randint(0, max_per_level)
        levels.append([f"{prefix}{n}.{j}" for j in range(k)])
    return GradedSet.from_levels(levels)


def element_to_json(x):
    if isinstance(x, CircElement):
        return ["o", element_to_json(x.outer), [element_to_json(y) for y in x.inners]]
    if isinstance(x, DotElement):
        return ["d", element_to_json(x.left), element_to_json(x.right)]
    if isinstance(x, tuple):
        return ["t", [element_to_json(y) for y in x]]
    return x


def element_from_json(obj):
    if isinstance(obj, list):
        tag = obj[0]
        if tag == "o":
            return CircElement(element_from_json(obj[1]),
                               tuple(element_from_json(y) for y in obj[2]))
        if tag == "d":
            return DotElement(element_from_json(obj[1]), element_from_json(obj[2]))
        if tag == "t":
            return tuple(element_from_json(y) for y in obj[1])
        raise ValueError(f"unknown element tag {tag!r}")
    return obj


def graded_to_json(X: GradedSet) -> dict:
    return {"level_bound": X.level_bound,
            "levels": [[element_to_json(x) for x in lv] for lv in X.levels]}


def graded_from_json(obj: dict) -> GradedSet:
    levels = [[element_from_json(x) for x in lv] for lv in obj["levels"]]
    bound = obj.get("level_bound", len(levels) - 1)
    levels += [[] for _ in range(bound + 1 - len(levels))]
    return GradedSet.from_levels(levels[: bound + 1])


def reassociate_circ(elem: CircElement, X: GradedSet, Y: GradedSet) -> CircElement:
    """Send ``((x; y..); z..)`` in ``(X∘Y)∘Z`` to ``(x; (y_k; z-block_k)..)``."""
    (x, ys), zs = elem
    out, pos = [], 0
    for y in ys:
        j = Y.level_of(y)
        out.append(CircElement(y, zs[pos:pos + j]))
        pos += j
    return CircElement(x, tuple(out))


def unassociate_circ(elem: CircElement) -> CircElement:
    """Inverse of :func:`reassociate_circ`."""
    x, blocks = elem
    ys = tuple(b.outer for b in blocks)
    zs = tuple(z for b in blocks for z in b.inners)
    return CircElement(CircElement(x, ys), zs)

