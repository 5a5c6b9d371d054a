"""Planar rooted trees.

A tree is either the trivial tree ``e`` (a bare leaf) or a node
``(n; t_1, ..., t_n)``.  Nodes with ``n = 0`` are allowed so that free
operads on graded sets with elements at level 0 exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Tree:
    children: tuple | None = None
    height: int = field(init=False, compare=False)
    leaves: int = field(init=False, compare=False)
    branches: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.children is None:
            h, lam, b = 0, 1, 0
        else:
            kids = tuple(self.children)
            object.__setattr__(self, "children", kids)
            h = 1 + max((c.height for c in kids), default=0)
            lam = sum(c.leaves for c in kids)
            b = 1 + sum(c.branches for c in kids)
        object.__setattr__(self, "height", h)
        object.__setattr__(self, "leaves", lam)
        object.__setattr__(self, "branches", b)

    @property
    def is_trivial(self) -> bool:
        return self.children is None

    @property
    def arity(self) -> int:
        return 0 if self.children is None else len(self.children)

    def preorder(self) -> tuple:
        """Arity sequence in preorder, with ``-1`` marking a bare leaf."""
        if self.children is None:
            return (-1,)
        out = [len(self.children)]
        for c in self.children:
            out.extend(c.preorder())
        return tuple(out)

    def sort_key(self) -> tuple:
        return (self.branches, self.leaves, self.preorder())

    def __repr__(self) -> str:
        if self.children is None:
            return "e"
        return f"({len(self.children)};{','.join(map(repr, self.children))})"


E = Tree(None)


def node(*children: Tree) -> Tree:
    return Tree(tuple(children))


def corolla_shape(n: int) -> Tree:
    return Tree((E,) * n)


def tree_invariants(t: Tree) -> tuple[int, int, int]:
    """Return ``(height, leaf count, branch count)``."""
    return t.height, t.leaves, t.branches


def parse_tree(text: str) -> Tree:
    """Parse the notation produced by ``repr``: ``e`` or ``(n;t1,...,tn)``."""
    text = text.replace(" ", "")
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if text.startswith("e", pos):
            pos += 1
            return E
        if text[pos] != "(":
            raise ValueError(f"bad tree syntax at {pos}: {text!r}")
        pos += 1
        start = pos
        while text[pos].isdigit():
            pos += 1
        n = int(text[start:pos])
        if text[pos] != ";":
            raise ValueError(f"expected ';' at {pos}")
        pos += 1
        kids = []
        for k in range(n):
            kids.append(parse())
            if k < n - 1:
                if text[pos] != ",":
                    raise ValueError(f"expected ',' at {pos}")
                pos += 1
        if text[pos] != ")":
            raise ValueError(f"expected ')' at {pos}")
        pos += 1
        return Tree(tuple(kids))

    t = parse()
    if pos != len(text):
        raise ValueError(f"trailing input in {text!r}")
    return t


def _splits(total_b: int, total_l: int, parts: int) -> Iterator[tuple]:
    """Ways to split ``(branches, leaves)`` budgets over ``parts`` children."""
    if parts == 0:
        if total_b == 0 and total_l == 0:
            yield ()
        return
    for b in range(total_b + 1):
        for lam in range(total_l + 1):
            for rest in _splits(total_b - b, total_l - lam, parts - 1):
                yield ((b, lam),) + rest


def enumerate_trees(max_leaf: int, max_branch: int, max_arity: int,
                    allow_nullary: bool = False,
                    arities: Iterable[int] | None = None) -> list[Tree]:
    """All trees with ``λ ≤ max_leaf``, ``β ≤ max_branch`` and node arities allowed.

    ``arities`` restricts node arities to an explicit set (still capped by
    ``max_arity``); nullary nodes need ``allow_nullary`` either way.
    """
    allowed = set(range(max_arity + 1)) if arities is None else {a for a in arities if a <= max_arity}
    if not allow_nullary:
        allowed.discard(0)
    allowed = tuple(sorted(allowed))

    @lru_cache(maxsize=None)
    def exact(b: int, lam: int) -> tuple:
        if b == 0:
            return (E,) if lam == 1 else ()
        out = []
        for n in allowed:
            for split in _splits(b - 1, lam, n):
                pools = [exact(cb, cl) for cb, cl in split]
                if any(not p for p in pools):
                    continue
                for kids in _product(pools):
                    out.append(Tree(kids))
        return tuple(out)

    trees = [t for b in range(max_branch + 1) for lam in range(max_leaf + 1) for t in exact(b, lam)]
    trees.sort(key=Tree.sort_key)
    return trees


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _product(pools[1:]):
            yield (head,) + rest


def tree_to_json(t: Tree):
    """Nested arrays: ``null`` for ``e``, otherwise the list of children."""
    if t.children is None:
        return None
    return [tree_to_json(c) for c in t.children]


def tree_from_json(obj) -> Tree:
    if obj is None:
        return E
    return Tree(tuple(tree_from_json(c) for c in obj))


def tree_to_dot(t: Tree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle, label=\"\"];"]
    counter = 0

    def visit(s: Tree) -> str:
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        if s.children is None:
            lines.append(f"  {ident} [shape=point];")
        else:
            lines.append(f"  {ident} [label=\"{len(s.children)}\"];")
            for c in s.children:
                lines.append(f"  {visit(c)} -> {ident};")
        return ident

    visit(t)
    lines.append("}")
    return "\n".join(lines)
