"""Finite truncated operads given by tables of partial compositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .errors import OperadError, SchemaError, TruncationExceeded
from .graded import GradedSet, element_from_json, element_to_json, graded_from_json, graded_to_json
from .report import Report


class TableOperad:
    """An operad truncated at level ``L``, stored as ``∘_i`` tables.

    ``compositions`` maps ``(a, i, b)`` to ``a ∘_i b`` for every ``a`` of level
    ``n ≥ 1``, slot ``1 ≤ i ≤ n`` and ``b`` of level ``m`` with ``n+m-1 ≤ L``.
    """

    def __init__(self, carrier: GradedSet, identity: Hashable, compositions: dict,
                 name: str = "P", aliases: dict | None = None):
        self.carrier = carrier
        self.identity = identity
        self.compositions = compositions
        self.name = name
        self.aliases = dict(aliases or {})
        if identity not in carrier or carrier.level_of(identity) != 1:
            raise OperadError(f"identity {identity!r} must be an element of level 1")

    def __repr__(self):
        return f"TableOperad({self.name}, L={self.bound}, sizes={self.carrier.counts()})"

    @property
    def bound(self) -> int:
        return self.carrier.level_bound

    def __getitem__(self, n: int) -> tuple:
        return self.carrier[n]

    def __contains__(self, x) -> bool:
        return x in self.carrier

    def level(self, x) -> int:
        return self.carrier.level_of(x)

    def resolve(self, name) -> Hashable:
        """Look up an element by id or alias."""
        if name in self.carrier:
            return name
        if name in self.aliases:
            return self.aliases[name]
        raise KeyError(f"{name!r} is not an element or alias of {self.name}")

    def partial_compose(self, a, i: int, b):
        n, m = self.level(a), self.level(b)
        if not 1 <= i <= n:
            raise OperadError(f"slot {i} out of range for level {n}")
        if n + m - 1 > self.bound:
            raise TruncationExceeded(n + m - 1, self.bound)
        try:
            return self.compositions[(a, i, b)]
        except KeyError:
            raise OperadError(f"composition table has no entry for {(a, i, b)!r}") from None

    def full_compose(self, a, bs: Sequence):
        """``a(b_1, ..., b_n)`` via partial compositions (see :func:`insert_all`)."""
        bs = tuple(bs)
        n = self.level(a)
        if len(bs) != n:
            raise OperadError(f"{a!r} has level {n} but {len(bs)} inputs were given")
        levels = [self.level(b) for b in bs]
        if sum(levels) > self.bound:
            raise TruncationExceeded(sum(levels), self.bound)
        return insert_all(a, bs, levels, self.identity, self.partial_compose)

    def is_reduced(self) -> bool:
        return len(self[0]) == 1 and len(self[1]) == 1

    def level_one_part(self, name: str | None = None) -> "TableOperad":
        """The suboperad concentrated at level 1 (a monoid), truncated at 1."""
        carrier = GradedSet(((), self[1]))
        comp = {(a, 1, b): self.compositions[(a, 1, b)] for a in self[1] for b in self[1]}
        aliases = {k: v for k, v in self.aliases.items() if v in carrier}
        return TableOperad(carrier, self.identity, comp, name or f"{self.name}_1", aliases)


def insert_all(a, bs: Sequence, levels: Sequence[int], identity, partial: Callable):
    """Insert every ``b_k`` into ``a`` with the partial composition ``partial``.

    Level-0 inputs go first and higher levels last, each group right to left,
    so intermediate composites never exceed ``max(level(a), level(result))``.
    Identity inputs are skipped.
    """
    n = len(bs)
    order = sorted(range(n), key=lambda k: (min(levels[k], 2), -k))
    widths = [1] * n
    cur = a
    for k in order:
        b = bs[k]
        if b == identity:
            continue
        cur = partial(cur, 1 + sum(widths[:k]), b)
        widths[k] = levels[k]
    return cur


def operad_from_function(carrier: GradedSet, identity, compose: Callable, name: str = "P",
                         aliases: dict | None = None) -> TableOperad:
    """Tabulate ``compose(a, i, b)`` over every composable triple within the bound."""
    L = carrier.level_bound
    table = {}
    for n in range(1, L + 1):
        for m in range(0, L - n + 2):
            for a in carrier[n]:
                for b in carrier[m]:
                    for i in range(1, n + 1):
                        table[(a, i, b)] = compose(a, i, b)
    return TableOperad(carrier, identity, table, name, aliases)


def associative_operad(L: int) -> TableOperad:
    """One point ``a{n}`` at every level ``0..L``; all compositions are forced."""
    if L < 1:
        raise OperadError("the associative operad needs L >= 1")
    carrier = GradedSet(tuple((f"a{n}",) for n in range(L + 1)))

    def compose(a, i, b):
        return f"a{int(a[1:]) + int(b[1:]) - 1}"

    aliases = {"eps": "a0", "id": "a1", "mu": "a2"} if L >= 2 else {"eps": "a0", "id": "a1"}
    return operad_from_function(carrier, "a1", compose, "A", aliases)


class FunctionCodec:
    """Encode functions ``S^n -> S`` as stable string ids ``"n:v,v,..."``.

    Output values are listed for the inputs of ``S^n`` in lexicographic order
    of indices into ``S``.
    """

    def __init__(self, S: Sequence):
        self.S = tuple(S)
        self.index = {s: k for k, s in enumerate(self.S)}

    def encode(self, n: int, outputs: Sequence[int]) -> str:
        return f"{n}:" + ",".join(str(v) for v in outputs)

    def decode(self, ident: str) -> tuple[int, tuple]:
        head, _, tail = ident.partition(":")
        vals = tuple(int(v) for v in tail.split(",")) if tail else ()
        return int(head), vals

    def inputs(self, n: int):
        return itertools.product(range(len(self.S)), repeat=n)

    def from_callable(self, n: int, fn: Callable) -> str:
        """Id of the function ``x -> fn(*x)`` given on elements of ``S``."""
        outs = [self.index[fn(*(self.S[k] for k in xs))] for xs in self.inputs(n)]
        return self.encode(n, outs)

    def evaluate(self, ident: str, args: Sequence[int]) -> int:
        n, vals = self.decode(ident)
        k = 0
        size = len(self.S)
        for a in args:
            k = k * size + a
        return vals[k]


def endomorphism_set_operad(S: Sequence, L: int) -> TableOperad:
    """``End(S)``: level ``n`` is every function ``S^n -> S``; ``∘_i`` substitutes."""
    if not S:
        raise OperadError("End(S) needs a nonempty set")
    codec = FunctionCodec(S)
    size = len(codec.S)
    levels = []
    for n in range(L + 1):
        levels.append([codec.encode(n, outs)
                       for outs in itertools.product(range(size), repeat=size ** n)])
    carrier = GradedSet.from_levels(levels)
    identity = codec.encode(1, range(size))

    compose = _substitution(codec)
    aliases = {"id": identity}
    for k, s in enumerate(codec.S):
        aliases[str(s)] = codec.encode(0, [k])
        aliases[f"const{s}"] = codec.encode(0, [k])
    if L >= 2:
        try:
            order = sorted(codec.S)
            rank = {s: r for r, s in enumerate(order)}
            aliases["max"] = codec.from_callable(2, lambda x, y: max(x, y, key=rank.get))
            aliases["min"] = codec.from_callable(2, lambda x, y: min(x, y, key=rank.get))
        except TypeError:
            pass
        aliases["left"] = codec.from_callable(2, lambda x, y: x)
        aliases["right"] = codec.from_callable(2, lambda x, y: y)
    if size == 2 and L >= 1:
        aliases["not"] = codec.encode(1, [1, 0])
    op = operad_from_function(carrier, identity, compose, f"End({','.join(map(str, S))})", aliases)
    op.codec = codec
    return op


def _substitution(codec: FunctionCodec) -> Callable:
    def compose(a, i, b):
        n, _ = codec.decode(a)
        m, _ = codec.decode(b)
        outs = []
        for xs in codec.inputs(n + m - 1):
            inner = codec.evaluate(b, xs[i - 1:i - 1 + m])
            outs.append(codec.evaluate(a, xs[:i - 1] + (inner,) + xs[i - 1 + m:]))
        return codec.encode(n + m - 1, outs)
    return compose


def endomorphism_suboperad(S: Sequence, L: int, generators: dict) -> TableOperad:
    """The suboperad of ``End(S)`` generated by the constants and named functions.

    ``generators`` maps a name to ``(n, fn)`` with ``fn`` a function of ``n``
    arguments on ``S``.  The closure under ``∘_i`` is taken within level ``L``.
    """
    codec = FunctionCodec(S)
    compose = _substitution(codec)
    identity = codec.encode(1, range(len(codec.S)))
    aliases = {"id": identity}
    for k, s in enumerate(codec.S):
        aliases[str(s)] = aliases[f"const{s}"] = codec.encode(0, [k])
    for name, (n, fn) in generators.items():
        if n > L:
            raise OperadError(f"generator {name!r} has level {n} above {L}")
        aliases[name] = codec.from_callable(n, fn)
    elems = set(aliases.values())
    frontier = set(elems)
    while frontier:
        new = set()
        for a in elems:
            na = codec.decode(a)[0]
            for b in elems:
                if a not in frontier and b not in frontier:
                    continue
                nb = codec.decode(b)[0]
                if na == 0 or na + nb - 1 > L:
                    continue
                for i in range(1, na + 1):
                    c = compose(a, i, b)
                    if c not in elems:
                        new.add(c)
        elems |= new
        frontier = new
    levels = [[] for _ in range(L + 1)]
    for e in sorted(elems, key=lambda e: (codec.decode(e)[0], e)):
        levels[codec.decode(e)[0]].append(e)
    carrier = GradedSet.from_levels(levels)
    op = operad_from_function(carrier, identity, compose,
                              f"End({','.join(map(str, S))})", aliases)
    op.codec = codec
    return op


def monoid_operad(elements: Sequence, multiply: Callable, identity, name: str = "M") -> TableOperad:
    """A classic monoid as an operad concentrated at level 1.

    ``a ∘_1 b`` is ``multiply(a, b)``; a word ``a·b`` corresponds to the chain
    whose root is ``a``.
    """
    carrier = GradedSet(((), tuple(elements)))
    comp = {(a, 1, b): multiply(a, b) for a in elements for b in elements}
    return TableOperad(carrier, identity, comp, name)


def idempotent_monoid(name: str = "M") -> TableOperad:
    """``{1, a}`` with ``a·a = a``."""
    return monoid_operad(["1", "a"], lambda x, y: "a" if "a" in (x, y) else "1", "1", name)


def cyclic2_monoid(name: str = "M") -> TableOperad:
    """``{1, a}`` with ``a·a = 1``."""
    return monoid_operad(["1", "a"], lambda x, y: "a" if (x == "a") != (y == "a") else "1", "1", name)


# -- verification -----------------------------------------------------------

def verify_operad(P: TableOperad) -> Report:
    """Check table totality, unit laws and both associativity laws within ``L``."""
    rep = Report(f"operad axioms {P.name}")
    L = P.bound
    ident = P.identity
    comp = P.compositions
    lvl = P.carrier.level_of
    by_level = [P[n] for n in range(L + 1)]

    for n in range(1, L + 1):
        for m in range(0, L - n + 2):
            for a in by_level[n]:
                for b in by_level[m]:
                    for i in range(1, n + 1):
                        c = comp.get((a, i, b))
                        if c is None or c not in P.carrier or lvl(c) != n + m - 1:
                            rep.fail("table", a, i, b, c)
    if rep.failures:
        return rep

    for n in range(L + 1):
        for a in by_level[n]:
            for i in range(1, n + 1):
                rep.check(comp[(a, i, ident)] == a, "right unit", a, i)
            rep.check(comp[(ident, 1, a)] == a, "left unit", a)

    for n in range(1, L + 1):
        for m in range(0, L - n + 2):
            for p in range(0, L + 1):
                if m >= 1 and m + p - 1 <= L and n + m + p - 2 <= L:
                    for a in by_level[n]:
                        for i in range(1, n + 1):
                            for b in by_level[m]:
                                ab = comp[(a, i, b)]
                                for j in range(1, m + 1):
                                    for c in by_level[p]:
                                        lhs = comp[(ab, i + j - 1, c)]
                                        rhs = comp[(a, i, comp[(b, j, c)])]
                                        rep.check(lhs == rhs, "nested", a, i, b, j, c)
                # parallel: (a ∘_i b) ∘_{k+m-1} c == (a ∘_k c) ∘_i b for i < k
                if n >= 2 and n + m + p - 2 <= L and n + p - 1 <= L:
                    for a in by_level[n]:
                        for b in by_level[m]:
                            for c in by_level[p]:
                                for i in range(1, n + 1):
                                    ab = comp[(a, i, b)]
                                    for k in range(i + 1, n + 1):
                                        lhs = comp[(ab, k + m - 1, c)]
                                        rhs = comp[(comp[(a, k, c)], i, b)]
                                        rep.check(lhs == rhs, "parallel", a, i, b, k, c)
    return rep


@dataclass
class OperadMap:
    source: TableOperad
    target: TableOperad
    assignment: dict

    def __call__(self, x):
        return self.assignment[x]

    def then(self, other: "OperadMap") -> "OperadMap":
        return OperadMap(self.source, other.target,
                         {x: other(y) for x, y in self.assignment.items()})


def identity_hom(P: TableOperad) -> OperadMap:
    return OperadMap(P, P, {x: x for x in P.carrier})


def verify_hom(f: OperadMap) -> Report:
    """Check that ``f`` is level preserving and preserves identity and every ``∘_i``."""
    P, Q = f.source, f.target
    rep = Report(f"homomorphism {P.name}->{Q.name}")
    for x in P.carrier:
        y = f.assignment.get(x)
        if y is None or y not in Q.carrier or Q.level(y) != P.level(x):
            rep.fail("level", x, y)
    if rep.failures:
        return rep
    rep.check(f(P.identity) == Q.identity, "identity", P.identity)
    for (a, i, b), c in P.compositions.items():
        if Q.level(f(a)) + Q.level(f(b)) - 1 > Q.bound:
            rep.skipped += 1
            continue
        rep.check(Q.partial_compose(f(a), i, f(b)) == f(c), "composition", a, i, b)
    return rep


@dataclass
class Multiplication:
    host: TableOperad
    eps: Hashable
    mu: Hashable

    @classmethod
    def named(cls, host: TableOperad, eps, mu) -> "Multiplication":
        return cls(host, host.resolve(eps), host.resolve(mu))


def check_multiplication(m: Multiplication) -> Report:
    """Associativity of ``μ`` and the two unit laws for ``ε``."""
    O = m.host
    rep = Report(f"multiplication on {O.name}")
    if O.level(m.eps) != 0 or O.level(m.mu) != 2:
        rep.fail("levels", m.eps, m.mu)
        return rep
    if O.bound >= 3:
        rep.check(O.partial_compose(m.mu, 1, m.mu) == O.partial_compose(m.mu, 2, m.mu),
                  "associativity", m.mu)
    else:
        rep.skipped += 1
    rep.check(O.partial_compose(m.mu, 1, m.eps) == O.identity, "left unit", m.mu, m.eps)
    rep.check(O.partial_compose(m.mu, 2, m.eps) == O.identity, "right unit", m.mu, m.eps)
    return rep


def power_of_mu(m: Multiplication, n: int):
    """``μ^{(n-1)}``, left bracketed; ``ε`` for 0 and the identity for 1."""
    O = m.host
    if n == 0:
        return m.eps
    cur = O.identity
    for _ in range(n - 1):
        cur = O.partial_compose(cur, 1, m.mu) if cur != O.identity else m.mu
    return cur


def induced_hom(m: Multiplication, A: TableOperad | None = None) -> OperadMap:
    """The operad map ``A -> host`` determined by ``(ε, μ)``."""
    L = m.host.bound
    A = A or associative_operad(L)
    return OperadMap(A, m.host, {A[n][0]: power_of_mu(m, n) for n in range(A.bound + 1)})


def corrupt(P: TableOperad, key: tuple, value) -> TableOperad:
    """A copy of ``P`` with one table entry replaced (for fault injection)."""
    comp = dict(P.compositions)
    comp[key] = value
    return TableOperad(P.carrier, P.identity, comp, P.name + "*", P.aliases)


# -- JSON -------------------------------------------------------------------

def operad_to_json(P: TableOperad) -> dict:
    return {
        "schema": "operadkit.operad/1",
        "name": P.name,
        "carrier": graded_to_json(P.carrier),
        "identity": element_to_json(P.identity),
        "aliases": {k: element_to_json(v) for k, v in sorted(P.aliases.items())},
        "compositions": [[element_to_json(a), i, element_to_json(b), element_to_json(c)]
                         for (a, i, b), c in P.compositions.items()],
    }


def operad_from_json(obj: dict) -> TableOperad:
    try:
        carrier = graded_from_json(obj["carrier"])
        identity = element_from_json(obj["identity"])
        comp = {}
        for a, i, b, c in obj["compositions"]:
            comp[(element_from_json(a), int(i), element_from_json(b))] = element_from_json(c)
        aliases = {k: element_from_json(v) for k, v in obj.get("aliases", {}).items()}
        return TableOperad(carrier, identity, comp, obj.get("name", "P"), aliases)
    except (KeyError, TypeError, ValueError, OperadError) as exc:
        raise SchemaError(f"bad operad JSON: {exc}") from exc
