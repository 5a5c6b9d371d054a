"""Coproducts of operads by rewriting labeled trees to normal form.

An element of ``P ⊔ Q`` is represented by a labeled tree whose labels are
pairs ``(color, x)``.  Two rewrite steps generate the identifications:

* splice: a node labeled by an identity (or by the basepoint of a pointed
  free factor) is removed and its single child promoted;
* merge: a node and a child of the same mergeable color are replaced by one
  node labeled with their partial composite.

Each step removes one node, so rewriting terminates.  Normal forms are the
trees with no identity labels in which no node has a child of the same
mergeable color.  :meth:`Coproduct.congruence_classes` rebuilds the
identification independently by union-find over a bounded word set.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import OperadError, SchemaError, TruncationExceeded
from .free import TRIVIAL, LabeledTree, corolla, enumerate_labeled, graft, graft_at
from .graded import GradedSet
from .report import Report
from .table import TableOperad


@dataclass(frozen=True)
class FreeFactor:
    """The free operad on ``gens``; with a ``basepoint`` it is the pointed free operad.

    The basepoint is a level-1 generator identified with the identity.
    """

    gens: GradedSet
    basepoint: Hashable | None = None
    name: str = "F"

    @property
    def bound(self) -> int:
        return self.gens.level_bound

    def level(self, x) -> int:
        return self.gens.level_of(x)

    def __getitem__(self, n):
        return self.gens[n]


Factor = TableOperad | FreeFactor


class Coproduct:
    """The coproduct of a sequence of table operads and free factors."""

    def __init__(self, factors: Sequence[Factor], colors: Sequence[str] | None = None):
        if colors is None:
            colors = [f.name for f in factors]
            if len(set(colors)) != len(colors):
                colors = [chr(ord("P") + k) for k in range(len(factors))]
        if len(set(colors)) != len(colors):
            raise OperadError("colors must be distinct")
        self.factors = dict(zip(colors, factors))
        self.colors = tuple(colors)
        bound = max(f.bound for f in factors)
        levels = []
        for n in range(bound + 1):
            levels.append([(c, x) for c in self.colors for x in self.factors[c][n]])
        self.labels = GradedSet.from_levels(levels)
        self._identity_labels = set()
        for c, f in self.factors.items():
            if isinstance(f, TableOperad):
                self._identity_labels.add((c, f.identity))
            elif f.basepoint is not None:
                self._identity_labels.add((c, f.basepoint))

    def __repr__(self):
        return " ⊔ ".join(f"{c}:{getattr(f, 'name', c)}" for c, f in self.factors.items())

    # -- predicates ---------------------------------------------------------

    def mergeable(self, color) -> bool:
        return isinstance(self.factors[color], TableOperad)

    def is_identity_label(self, label) -> bool:
        return label in self._identity_labels

    def label_level(self, label) -> int:
        return self.labels.level_of(label)

    def color(self, t: LabeledTree):
        return None if t.label is None else t.label[0]

    def displays_adjacent_colors(self, t: LabeledTree) -> bool:
        """Some node has a (non-trivial) child of the same mergeable color."""
        for _, s in t.nodes():
            c = s.label[0]
            if self.mergeable(c) and any(k.label is not None and k.label[0] == c
                                         for k in s.children):
                return True
        return False

    def is_unital(self, t: LabeledTree) -> bool:
        return any(self.is_identity_label(s.label) for _, s in t.nodes())

    def is_collapsible(self, t: LabeledTree) -> bool:
        return self.displays_adjacent_colors(t) or self.is_unital(t)

    def is_normal(self, t: LabeledTree) -> bool:
        return not self.is_collapsible(t)

    # -- rewriting ----------------------------------------------------------

    def _merge(self, label, i: int, child: LabeledTree, kids: tuple):
        color = label[0]
        op = self.factors[color]
        new = op.partial_compose(label[1], i + 1, child.label[1])
        return (color, new), kids[:i] + child.children + kids[i + 1:]

    def normalize(self, w: LabeledTree, strategy: str = "innermost",
                  rng: random.Random | None = None) -> LabeledTree:
        """Rewrite ``w`` to its normal form.

        ``strategy="random"`` applies single steps at uniformly chosen sites;
        it exists to test that the result does not depend on the order.
        """
        if strategy == "innermost":
            return self._norm(w)
        if strategy == "random":
            rng = rng or random.Random(0)
            while True:
                steps = list(self.single_steps(w))
                if not steps:
                    if self.is_normal(w):
                        return w
                    # only merges above the truncation remain on this path
                    raise TruncationExceeded(self.label_bound_hit(w), self.labels.level_bound)
                w = rng.choice(steps)
        raise ValueError(f"unknown strategy {strategy!r}")

    def _norm(self, t: LabeledTree) -> LabeledTree:
        if t.label is None:
            return t
        return self._fix(t.label, tuple(self._norm(c) for c in t.children))

    def _fix(self, label, kids: tuple) -> LabeledTree:
        while True:
            if label in self._identity_labels:
                return kids[0]
            color = label[0]
            if not self.mergeable(color):
                return LabeledTree(label, kids)
            # lowest-level children first, so composites stay as small as possible
            sites = [(self.label_level(k.label), -i) for i, k in enumerate(kids)
                     if k.label is not None and k.label[0] == color]
            if not sites:
                return LabeledTree(label, kids)
            i = -min(sites)[1]
            label, kids = self._merge(label, i, kids[i], kids)

    def single_steps(self, t: LabeledTree, strict: bool = False) -> Iterator[LabeledTree]:
        """Every tree obtained from ``t`` by one splice or one merge.

        Merges whose composite lies above the truncation are skipped, or
        raise when ``strict`` is set.
        """
        if t.label is None:
            return
        label, kids = t.label, t.children
        if label in self._identity_labels:
            yield kids[0]
        color = label[0]
        if self.mergeable(color):
            for i, k in enumerate(kids):
                if k.label is not None and k.label[0] == color:
                    try:
                        new_label, new_kids = self._merge(label, i, k, kids)
                    except TruncationExceeded:
                        if strict:
                            raise
                        continue
                    yield LabeledTree(new_label, new_kids)
        for i, k in enumerate(kids):
            for s in self.single_steps(k, strict):
                yield LabeledTree(label, kids[:i] + (s,) + kids[i + 1:])

    def label_bound_hit(self, t: LabeledTree) -> int:
        """Level of the largest composite label among the blocked merges of ``t``."""
        worst = 0
        for _, s in t.nodes():
            for k in s.children:
                if k.label is not None and k.label[0] == s.label[0] and self.mergeable(s.label[0]):
                    worst = max(worst, self.label_level(s.label) + self.label_level(k.label) - 1)
        return worst

    def truncated_sites(self, t: LabeledTree) -> int:
        """Number of merge sites in ``t`` whose composite lies above the truncation."""
        count = 0
        for _, s in t.nodes():
            color = s.label[0]
            if not self.mergeable(color):
                continue
            op = self.factors[color]
            n = op.level(s.label[1])
            for k in s.children:
                if k.label is not None and k.label[0] == color:
                    if n + op.level(k.label[1]) - 1 > op.bound:
                        count += 1
        return count

    # -- operad structure ---------------------------------------------------

    def embed(self, color, x) -> LabeledTree:
        label = (color, x)
        return self.normalize(corolla(label, self.label_level(label)))

    def compose(self, u: LabeledTree, vs: Sequence[LabeledTree]) -> LabeledTree:
        return self.normalize(graft(u, vs))

    def compose_at(self, u: LabeledTree, i: int, v: LabeledTree) -> LabeledTree:
        return self.normalize(graft_at(u, i, v))

    def words(self, level: int, max_beta: int) -> list[LabeledTree]:
        return enumerate_labeled(self.labels, level, max_beta, self.labels.level_bound)

    def normal_forms(self, level: int, max_beta: int) -> list[LabeledTree]:
        return [w for w in self.words(level, max_beta) if self.is_normal(w)]

    # -- census and oracle --------------------------------------------------

    def census(self, level: int, max_beta: int) -> dict:
        """Counts of all words ``T_k``, collapsible words ``C_k`` and images ``F_k``.

        ``F_k`` is the number of coproduct elements represented by some word
        with at most ``k`` nodes, computed by normalizing every such word.
        """
        words = self.words(level, max_beta)
        T = [0] * (max_beta + 1)
        C = [0] * (max_beta + 1)
        images = [set() for _ in range(max_beta + 1)]
        normal_count = [0] * (max_beta + 1)
        for w in words:
            k = w.branches
            T[k] += 1
            if self.is_collapsible(w):
                C[k] += 1
            else:
                normal_count[k] += 1
            images[k].add(self.normalize(w))
        F, seen = [], set()
        for k in range(max_beta + 1):
            seen |= images[k]
            F.append(len(seen))
        recursion = [F[k] == F[k - 1] + T[k] - C[k] for k in range(1, max_beta + 1)]
        nf_cumulative = [sum(normal_count[: k + 1]) for k in range(max_beta + 1)]
        return {
            "level": level,
            "max_beta": max_beta,
            "T": T,
            "C": C,
            "F": F,
            "normal_forms_by_beta": normal_count,
            "recursion": recursion,
            "recursion_holds": all(recursion),
            "F_matches_normal_forms": F == nf_cumulative,
        }

    def congruence_classes(self, level: int, max_beta: int) -> tuple[list[list], int]:
        """Union-find closure of single rewrite steps over all bounded words.

        Returns ``(classes, skipped)``, where ``skipped`` counts merge steps
        lost to truncation.
        """
        words = self.words(level, max_beta)
        parent = {w: w for w in words}

        def find(x):
            while parent[x] is not x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        skipped = 0
        for w in words:
            for s in self.single_steps(w):
                ra, rb = find(w), find(s)
                if ra is not rb:
                    parent[ra] = rb
            skipped += self.truncated_sites(w)
        groups: dict = {}
        for w in words:
            groups.setdefault(find(w), []).append(w)
        return list(groups.values()), skipped

    def eval_universal(self, maps: Mapping, R: TableOperad, w: LabeledTree):
        """Evaluate ``w`` in ``R`` through one map per color.

        ``maps[color]`` is an :class:`OperadMap`, a dict or a callable.
        """
        if w.label is None:
            return R.identity
        color, x = w.label
        f = maps[color]
        head = f(x) if callable(f) else f[x]
        return R.full_compose(head, [self.eval_universal(maps, R, c) for c in w.children])


def chain(labels: Sequence) -> LabeledTree:
    """A linear word ``l_1·l_2·…·l_k`` of level-1 labels, root first."""
    t = TRIVIAL
    for lab in reversed(list(labels)):
        t = LabeledTree(lab, (t,))
    return t


def word_string(t: LabeledTree) -> str:
    """Render a linear word as ``a_P·a_Q``; other trees use ``repr``."""
    parts = []
    s = t
    while s.label is not None and len(s.children) == 1:
        parts.append(f"{s.label[1]}_{s.label[0]}")
        s = s.children[0]
    if s.label is None:
        return "·".join(parts) if parts else "1"
    return repr(t)


# -- checks -----------------------------------------------------------------

def check_uniqueness(cp: Coproduct, level: int, max_beta: int) -> Report:
    """Every congruence class has exactly one normal form, reached by ``normalize``."""
    rep = Report(f"normal-form uniqueness {cp!r} level {level} beta<={max_beta}")
    classes, skipped = cp.congruence_classes(level, max_beta)
    rep.skipped = skipped
    for cls in classes:
        nfs = [w for w in cls if cp.is_normal(w)]
        if not rep.check(len(nfs) == 1, "class normal forms", len(nfs), cls[0]):
            continue
        nf = nfs[0]
        for w in cls:
            rep.check(cp.normalize(w) == nf, "normalize", w, nf)
    rep.data["classes"] = len(classes)
    return rep


def check_confluence(cp: Coproduct, words: Iterable[LabeledTree], seed: int = 0,
                     strategies: int = 3) -> Report:
    """Random rewrite orders reach the innermost normal form.

    A random path can get stuck with only truncated merges left; such runs are
    counted as skipped.
    """
    rep = Report(f"rewrite-order independence {cp!r}")
    rng = random.Random(seed)
    for w in words:
        nf = cp.normalize(w)
        for _ in range(strategies):
            try:
                rep.check(cp.normalize(w, "random", rng) == nf, w)
            except TruncationExceeded:
                rep.skipped += 1
    return rep


def check_coproduct_operad(cp: Coproduct, level_max: int, max_beta: int) -> Report:
    """Unit and associativity laws of normal-form composition within bounds.

    Instances whose normalization needs a label above the truncation are skipped.
    """
    rep = Report(f"coproduct operad laws {cp!r}")
    elems = [w for n in range(level_max + 1) for w in cp.normal_forms(n, max_beta)]

    def agree(lhs, rhs, *context):
        try:
            rep.check(lhs() == rhs(), *context)
        except TruncationExceeded:
            rep.skipped += 1

    for a in elems:
        rep.check(cp.compose(TRIVIAL, [a]) == a, "left unit", a)
        rep.check(cp.compose(a, [TRIVIAL] * a.level) == a, "right unit", a)
    for a in elems:
        for b in elems:
            if a.branches + b.branches > max_beta:
                continue
            for i in range(1, a.level + 1):
                for c in elems:
                    if a.branches + b.branches + c.branches > max_beta:
                        continue
                    for j in range(1, b.level + 1):
                        agree(lambda: cp.compose_at(cp.compose_at(a, i, b), i + j - 1, c),
                              lambda: cp.compose_at(a, i, cp.compose_at(b, j, c)),
                              "nested", a, i, b, j, c)
                    for k in range(i + 1, a.level + 1):
                        agree(lambda: cp.compose_at(cp.compose_at(a, i, b), k + b.level - 1, c),
                              lambda: cp.compose_at(cp.compose_at(a, k, c), i, b),
                              "parallel", a, i, b, k, c)
    return rep


def check_embeddings(cp: Coproduct) -> Report:
    """Each table factor embeds as a homomorphism; non-identity images are distinct."""
    rep = Report(f"embeddings into {cp!r}")
    seen = {}
    for color, op in cp.factors.items():
        if not isinstance(op, TableOperad):
            continue
        rep.check(cp.embed(color, op.identity) == TRIVIAL, "identity", color)
        for (a, i, b), c in op.compositions.items():
            lhs = cp.embed(color, c)
            rhs = cp.compose_at(cp.embed(color, a), i, cp.embed(color, b))
            rep.check(lhs == rhs, "hom", color, a, i, b)
        for x in op.carrier:
            if x == op.identity:
                continue
            img = cp.embed(color, x)
            rep.check(img not in seen, "injective", (color, x), seen.get(img))
            seen[img] = (color, x)
    return rep


def check_universal(cp: Coproduct, maps: Mapping, R: TableOperad, words: Iterable[LabeledTree]) -> Report:
    """``eval(normalize(w)) == eval(w)`` for every given word."""
    rep = Report(f"universal evaluation into {R.name}")
    for w in words:
        try:
            lhs = cp.eval_universal(maps, R, w)
            rhs = cp.eval_universal(maps, R, cp.normalize(w))
        except TruncationExceeded:
            rep.skipped += 1
            continue
        rep.check(lhs == rhs, w)
    return rep


def random_word(cp: Coproduct, rng: random.Random, level: int, max_beta: int) -> LabeledTree:
    words = cp.words(level, max_beta)
    return rng.choice(words)


_WORD_TOKEN = re.compile(r"\s*([()·*,]|[^()·*,\s]+)")


def parse_word(cp: Coproduct, text: str) -> LabeledTree:
    """Parse ``a_P·b_Q`` chains and ``x_P(e, y_Q)`` trees into a word of ``cp``.

    A label is ``name_color``; names may be aliases of the factor.  ``e`` is
    the bare leaf, and a label written without arguments gets bare leaves.
    """
    tokens = [m.group(1) for m in _WORD_TOKEN.finditer(text)]
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise SchemaError(f"cannot tokenize word {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise SchemaError(f"expected {expected or 'a term'} at token {pos} of {text!r}")
        pos += 1
        return tok

    def label_of(tok):
        name, sep, color = tok.rpartition("_")
        if not sep or color not in cp.factors:
            raise SchemaError(f"label {tok!r} needs a color suffix from {list(cp.factors)}")
        factor = cp.factors[color]
        if isinstance(factor, TableOperad):
            try:
                name = factor.resolve(name)
            except KeyError as exc:
                raise SchemaError(str(exc)) from None
        elif name not in factor.gens:
            raise SchemaError(f"{name!r} is not a generator of {color}")
        return (color, name)

    def chain():
        atoms = [atom()]
        while peek() in ("·", "*"):
            take()
            atoms.append(atom())
        t = atoms[-1]
        for a in reversed(atoms[:-1]):
            if a.level != 1 or any(c.label is not None for c in a.children):
                raise SchemaError("only level-1 labels can be chained with '·'")
            t = LabeledTree(a.label, (t,))
        return t

    def atom():
        tok = take()
        if tok == "e":
            return TRIVIAL
        if tok in "()·*,":
            raise SchemaError(f"unexpected {tok!r} in {text!r}")
        label = label_of(tok)
        level = cp.label_level(label)
        if peek() == "(":
            take("(")
            kids = []
            if peek() != ")":
                kids.append(chain())
                while peek() == ",":
                    take()
                    kids.append(chain())
            take(")")
            if len(kids) != level:
                raise SchemaError(f"{tok} has level {level} but {len(kids)} arguments")
            return LabeledTree(label, kids)
        return corolla(label, level)

    t = chain()
    if pos != len(tokens):
        raise SchemaError(f"trailing input in {text!r}")
    return t
