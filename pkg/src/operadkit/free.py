"""Labeled trees and the free operad they form.

A labeling of a tree by a graded set ``X`` puts an element of ``X(n)`` on
every node of arity ``n``.  The labeled trees, graded by leaf count, are the
free operad on ``X``; composition is grafting.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .errors import OperadError
from .graded import GradedSet
from .trees import Tree, _product, _splits


class LabeledTree:
    """Either the trivial labeling (``label is None``) or ``(x; l_1..l_n)``.

    The arity of a node is the length of its child tuple; callers that build
    trees by hand are responsible for matching it to the label's level (see
    :func:`check_labeling`).
    """

    __slots__ = ("label", "children", "level", "branches", "height", "_hash")

    def __init__(self, label=None, children: Sequence["LabeledTree"] = ()):
        self.label = label
        self.children = tuple(children)
        if label is None:
            if self.children:
                raise ValueError("the trivial labeling has no children")
            self.level, self.branches, self.height = 1, 0, 0
        else:
            self.level = sum(c.level for c in self.children)
            self.branches = 1 + sum(c.branches for c in self.children)
            self.height = 1 + max((c.height for c in self.children), default=0)
        self._hash = hash((label, self.children))

    @property
    def is_trivial(self) -> bool:
        return self.label is None

    @property
    def arity(self) -> int:
        return len(self.children)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LabeledTree):
            return NotImplemented
        return (self._hash == other._hash and self.label == other.label
                and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.label is None:
            return "e"
        if not self.children:
            return f"{_fmt(self.label)}()"
        return f"{_fmt(self.label)}({','.join(map(repr, self.children))})"

    def shape(self) -> Tree:
        if self.label is None:
            return Tree(None)
        return Tree(tuple(c.shape() for c in self.children))

    def labels(self) -> set:
        """The set of labels occurring in the tree."""
        out = set()
        stack = [self]
        while stack:
            t = stack.pop()
            if t.label is not None:
                out.add(t.label)
                stack.extend(t.children)
        return out

    def label_multiset(self) -> Counter:
        out = Counter()
        stack = [self]
        while stack:
            t = stack.pop()
            if t.label is not None:
                out[t.label] += 1
                stack.extend(t.children)
        return out

    def nodes(self):
        """Yield ``(path, subtree)`` for every labeled node, preorder."""
        stack = [((), self)]
        while stack:
            path, t = stack.pop()
            if t.label is None:
                continue
            yield path, t
            for i in range(len(t.children) - 1, -1, -1):
                stack.append((path + (i,), t.children[i]))

    def sort_key(self) -> tuple:
        return (self.branches, self.level, _preorder_key(self))


def _fmt(label) -> str:
    if isinstance(label, tuple) and len(label) == 2:
        return f"{label[1]}_{label[0]}"
    return str(label)


def _preorder_key(t: LabeledTree) -> tuple:
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.label is None:
            out.append((-1, ""))
        else:
            out.append((len(s.children), repr(s.label)))
            stack.extend(reversed(s.children))
    return tuple(out)


TRIVIAL = LabeledTree()


def corolla(x, level: int) -> LabeledTree:
    """``⟨x⟩``: a single node labeled ``x`` with ``level`` bare leaves."""
    return LabeledTree(x, (TRIVIAL,) * level)


def check_labeling(t: LabeledTree, X: GradedSet) -> None:
    for _, s in t.nodes():
        if s.label not in X or X.level_of(s.label) != s.arity:
            raise OperadError(f"label {s.label!r} does not match node arity {s.arity}")


def graft(a: LabeledTree, bs: Sequence[LabeledTree]) -> LabeledTree:
    """Free-operad composition ``a(b_1, ..., b_m)``."""
    bs = tuple(bs)
    if len(bs) != a.level:
        raise OperadError(f"graft expects {a.level} inputs, got {len(bs)}")
    return _graft(a, bs)


def _graft(a: LabeledTree, bs: tuple) -> LabeledTree:
    if a.label is None:
        return bs[0]
    kids, pos = [], 0
    for child in a.children:
        k = child.level
        kids.append(_graft(child, bs[pos:pos + k]))
        pos += k
    return LabeledTree(a.label, kids)


def graft_at(a: LabeledTree, slot: int, b: LabeledTree) -> LabeledTree:
    """Partial composition ``a ∘_slot b`` (slots are 1-based)."""
    bs = [TRIVIAL] * a.level
    bs[slot - 1] = b
    return _graft(a, tuple(bs))


def relabel(t: LabeledTree, fn: Callable) -> LabeledTree:
    if t.label is None:
        return t
    return LabeledTree(fn(t.label), [relabel(c, fn) for c in t.children])


def enumerate_labeled(X: GradedSet, level: int, max_branch: int | None = None,
                      max_arity: int | None = None) -> list[LabeledTree]:
    """All labeled trees of the given level within the bounds, canonically ordered.

    ``max_branch=None`` is only accepted when ``X`` has no elements at levels
    0 or 1; then the branch count is bounded by the level.
    """
    if max_branch is None:
        if X[0] or X[1]:
            raise OperadError("an explicit branch bound is needed when X(0) or X(1) is nonempty")
        max_branch = max(level - 1, 0)
    if max_arity is None:
        max_arity = X.level_bound
    table = _labeled_table(X, max_arity)
    out = [t for b in range(max_branch + 1) for t in table(b, level)]
    out.sort(key=LabeledTree.sort_key)
    return out


free_operad_level = enumerate_labeled


def _labeled_table(X: GradedSet, max_arity: int):
    arities = [n for n in range(min(max_arity, X.level_bound) + 1) if X[n]]

    @lru_cache(maxsize=None)
    def exact(b: int, lam: int) -> tuple:
        if b == 0:
            return (TRIVIAL,) if lam == 1 else ()
        out = []
        for n in arities:
            for split in _splits(b - 1, lam, n):
                pools = [exact(cb, cl) for cb, cl in split]
                if any(not p for p in pools):
                    continue
                kid_tuples = list(_product(pools))
                for x in X[n]:
                    for kids in kid_tuples:
                        out.append(LabeledTree(x, kids))
        return tuple(out)

    return exact


def free_operad_graded(X: GradedSet, bound: int, max_branch: int | None = None,
                       max_arity: int | None = None) -> GradedSet:
    """The truncation of the free operad as a graded set of labeled trees."""
    return GradedSet.from_levels(
        enumerate_labeled(X, n, max_branch, max_arity) for n in range(bound + 1))


def pointed_normalize(t: LabeledTree, basepoint: Hashable) -> LabeledTree:
    """Splice out every node labeled ``basepoint`` (a level-1 label)."""
    if t.label is None:
        return t
    if t.label == basepoint:
        return pointed_normalize(t.children[0], basepoint)
    return LabeledTree(t.label, [pointed_normalize(c, basepoint) for c in t.children])


def operad_law_failures(trees: Iterable[LabeledTree], max_branch: int | None = None) -> list:
    """Check unit and associativity laws of grafting over the given elements.

    Associativity is checked in the nested form
    ``(a ∘_i b) ∘_{i+j-1} c == a ∘_i (b ∘_j c)`` and the parallel form, for
    every triple whose composite has at most ``max_branch`` nodes.
    Returns a list of failing instances (empty on success).
    """
    trees = list(trees)
    cap = max_branch if max_branch is not None else float("inf")
    failures = []
    for a in trees:
        if graft(TRIVIAL, [a]) != a:
            failures.append(("left unit", a))
        if graft(a, [TRIVIAL] * a.level) != a:
            failures.append(("right unit", a))
    for a in trees:
        for b in trees:
            if a.branches + b.branches > cap:
                continue
            for i in range(1, a.level + 1):
                ab = graft_at(a, i, b)
                if ab.branches != a.branches + b.branches or ab.level != a.level + b.level - 1:
                    failures.append(("additivity", a, i, b))
                for c in trees:
                    if ab.branches + c.branches > cap:
                        continue
                    for j in range(1, b.level + 1):
                        lhs = graft_at(ab, i + j - 1, c)
                        rhs = graft_at(a, i, graft_at(b, j, c))
                        if lhs != rhs:
                            failures.append(("nested", a, i, b, j, c))
                    for k in range(i + 1, a.level + 1):
                        lhs = graft_at(ab, k + b.level - 1, c)
                        rhs = graft_at(graft_at(a, k, c), i, b)
                        if lhs != rhs:
                            failures.append(("parallel", a, i, b, k, c))
    return failures


def labeled_to_dot(t: LabeledTree, name: str = "word") -> str:
    """Graphviz source for a labeled tree; edges point from child to parent."""
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    counter = 0

    def visit(s: LabeledTree) -> str:
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        if s.label is None:
            lines.append(f"  {ident} [shape=point];")
        else:
            text = _fmt(s.label).replace('"', '\\"')
            lines.append(f"  {ident} [label=\"{text}\"];")
            for c in s.children:
                lines.append(f"  {visit(c)} -> {ident};")
        return ident

    visit(t)
    lines.append("}")
    return "\n".join(lines)
