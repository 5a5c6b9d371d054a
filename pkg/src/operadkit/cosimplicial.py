"""The cosimplicial object of a multiplicative operad and its Hochschild comparison.

Given ``ε ∈ O(0)`` and an associative ``μ ∈ O(2)`` with unit ``ε``, degree
``n`` is ``O(n)`` with

* ``d^0 f = μ(1, f)``, ``d^{n+1} f = μ(f, 1)`` and ``d^i f = f ∘_i μ`` for ``1 ≤ i ≤ n``;
* ``s_j f = f ∘_{j+1} ε`` for ``0 ≤ j ≤ n-1``.

The same operators arise by mapping the ``⊙``-Hochschild resolution of the
associative operad into ``O``; :func:`compare_hochschild` checks that they agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bimodules import SimplicialGradedSet, check_simplicial
from .equivariant import equivariant_maps
from .errors import OperadError, TruncationExceeded
from .graded import GradedSet, weak_compositions
from .report import Report
from .table import Multiplication, OperadMap, check_multiplication, power_of_mu


@dataclass
class CosimplicialObject:
    """Levels ``O(0..N)`` with coface tables ``(n, i) -> {f: d^i f}`` and codegeneracy tables."""

    levels: list
    cofaces: dict = field(default_factory=dict)
    codegeneracies: dict = field(default_factory=dict)
    name: str = "O"

    @property
    def N(self) -> int:
        return len(self.levels) - 1


def build_cosimplicial(m: Multiplication, N: int) -> CosimplicialObject:
    """Operators between degrees ``0..N``; needs ``N ≤ L``."""
    O = m.host
    if N > O.bound:
        raise TruncationExceeded(N, O.bound, "cosimplicial degree")
    ident = O.identity
    c = CosimplicialObject([tuple(O[n]) for n in range(N + 1)], name=O.name)
    for n in range(N + 1):
        if n < N:
            for i in range(n + 2):
                table = {}
                for f in O[n]:
                    if i == 0:
                        table[f] = O.full_compose(m.mu, [ident, f])
                    elif i == n + 1:
                        table[f] = O.full_compose(m.mu, [f, ident])
                    else:
                        table[f] = O.partial_compose(f, i, m.mu)
                c.cofaces[(n, i)] = table
        for j in range(n):
            c.codegeneracies[(n, j)] = {f: O.partial_compose(f, j + 1, m.eps) for f in O[n]}
    return c


def check_cosimplicial(c: CosimplicialObject, N: int | None = None) -> Report:
    """Every cosimplicial identity on every element, up to degree ``N``."""
    N = c.N if N is None else min(N, c.N)
    rep = Report(f"cosimplicial identities {c.name}")
    d, s = c.cofaces, c.codegeneracies
    for n in range(N + 1):
        for f in c.levels[n]:
            # d^j d^i = d^i d^{j-1}, i < j, from degree n to n+2
            if n + 2 <= N:
                for j in range(n + 3):
                    for i in range(j):
                        rep.check(d[(n + 1, j)][d[(n, i)][f]] == d[(n + 1, i)][d[(n, j - 1)][f]],
                                  "d^j d^i", n, i, j, f)
            # s^j d^i, from degree n to n+1 and back
            if n + 1 <= N:
                for i in range(n + 2):
                    for j in range(n + 1):
                        lhs = s[(n + 1, j)][d[(n, i)][f]]
                        if i < j:
                            rhs = d[(n - 1, i)][s[(n, j - 1)][f]]
                        elif i in (j, j + 1):
                            rhs = f
                        else:
                            rhs = d[(n - 1, i - 1)][s[(n, j)][f]]
                        rep.check(lhs == rhs, "s^j d^i", n, i, j, f)
            # s^j s^i = s^i s^{j+1}, i ≤ j, from degree n to n-2
            if n >= 2:
                for j in range(n - 1):
                    for i in range(j + 1):
                        rep.check(s[(n - 1, j)][s[(n, i)][f]] == s[(n - 1, i)][s[(n, j + 1)][f]],
                                  "s^j s^i", n, i, j, f)
    return rep


def discrete_limit(c: CosimplicialObject) -> list:
    """``{x ∈ O(0) : d^0 x = d^1 x}``, the limit of a cosimplicial set."""
    if c.N < 1:
        raise OperadError("the limit needs degrees 0 and 1")
    return [x for x in c.levels[0] if c.cofaces[(0, 0)][x] == c.cofaces[(0, 1)][x]]


def check_naturality(F: OperadMap, m: Multiplication, m2: Multiplication, N: int) -> Report:
    """An operad map sending ``(ε, μ)`` to ``(ε′, μ′)`` commutes with every operator."""
    rep = Report(f"naturality {F.source.name}->{F.target.name}")
    rep.check(F(m.eps) == m2.eps and F(m.mu) == m2.mu, "multiplication not preserved")
    c, c2 = build_cosimplicial(m, N), build_cosimplicial(m2, N)
    for key, table in c.cofaces.items():
        for f, g in table.items():
            rep.check(F(g) == c2.cofaces[key][F(f)], "coface", key, f)
    for key, table in c.codegeneracies.items():
        for f, g in table.items():
            rep.check(F(g) == c2.codegeneracies[key][F(f)], "codegeneracy", key, f)
    return rep


# -- the ⊙-Hochschild resolution of the associative operad -----------------

class DotHochschildA(SimplicialGradedSet):
    """``H_n = A^{⊙(n+2)}``; an element is a composition ``(j_0, ..., j_{n+1})``.

    Faces add adjacent parts, degeneracies insert a zero part; the extra
    degeneracy inserts a zero in front and the augmentation adds all parts.
    """

    has_extra_degeneracy = True

    def __init__(self, L: int, top: int):
        self.L = L
        self.name = "H(A, ⊙)"
        self.augmented_to = GradedSet(tuple((n,) for n in range(L + 1)))
        degrees = []
        for n in range(top + 1):
            degrees.append(GradedSet(tuple(tuple(weak_compositions(k, n + 2))
                                           for k in range(L + 1))))
        super().__init__(degrees)

    def face(self, n, i, x):
        return x[:i] + (x[i] + x[i + 1],) + x[i + 2:]

    def degeneracy(self, n, i, x):
        return x[:i + 1] + (0,) + x[i + 1:]

    def extra_degeneracy(self, n, x):
        return (0, x) if n < 0 else (0,) + x

    def augmentation(self, x):
        return sum(x)

    @staticmethod
    def generator(n: int) -> tuple:
        """The free generator ``*_n = (0, 1, ..., 1, 0)`` of ``H_n``."""
        return (0,) + (1,) * n + (0,)

    def moves(self, n: int) -> dict:
        """Operations of the bimodule structure: full right action and the two outer actions."""
        out = {}
        for x in self.degrees[n]:
            k = sum(x)
            ops = []
            for rs in _bounded_tuples(k, self.L):
                ops.append((("circ", rs), _act_right(x, rs)))
            for r in range(self.L - k + 1):
                if r:
                    ops.append((("left", r), (x[0] + r,) + x[1:]))
                    ops.append((("right", r), x[:-1] + (x[-1] + r,)))
            out[x] = ops
        return out


def _bounded_tuples(k: int, L: int):
    for rs in itertools.product(range(L + 1), repeat=k):
        if sum(rs) <= L:
            yield rs


def _act_right(x: tuple, rs: tuple) -> tuple:
    out, pos = [], 0
    for j in x:
        out.append(sum(rs[pos:pos + j]))
        pos += j
    return tuple(out)


def _omega(m: Multiplication, r: int):
    return power_of_mu(m, r)


def _target_act(m: Multiplication):
    O = m.host

    def act(f, op):
        kind, arg = op
        try:
            if kind == "circ":
                return O.full_compose(f, [_omega(m, r) for r in arg])
            if kind == "left":
                return O.full_compose(m.mu, [_omega(m, arg), f])
            return O.full_compose(m.mu, [f, _omega(m, arg)])
        except TruncationExceeded:
            return None

    return act


def represented_map(m: Multiplication, f, x: tuple):
    """The bimodule map determined by ``f ∈ O(n)``, evaluated at ``x ∈ H_n``.

    ``(j_0, j_1..j_n, j_{n+1}) ↦ ω(j_0) · f(ω(j_1), ..., ω(j_n)) · ω(j_{n+1})``
    where ``ω(r)`` is the ``r``-fold product.
    """
    O = m.host
    mid = O.full_compose(f, [_omega(m, j) for j in x[1:-1]])
    right = O.full_compose(m.mu, [mid, _omega(m, x[-1])])
    return O.full_compose(m.mu, [_omega(m, x[0]), right])


def compare_hochschild(m: Multiplication, N: int, cap: int = 200_000) -> Report:
    """Transport the simplicial operators of ``H(A)`` to ``O`` and compare with ``O^•``.

    Also checks that ``H_n`` is free on ``*_n`` (as right module and as
    bimodule): the equivariant maps ``H_n → O`` are counted by a brute-force
    solver and must number ``|O(n)|``, each determined by its value on ``*_n``.
    """
    O = m.host
    rep = Report(f"Hochschild comparison {O.name}")
    rep.merge(check_multiplication(m))
    L = O.bound
    H = DotHochschildA(L, N + 1)
    rep.merge(check_simplicial(H))
    c = build_cosimplicial(m, N)

    counts = []
    for n in range(N + 1):
        # (*_n)∘A ≅ A^⊙n with outer parts zero: acting on *_n by (r_1..r_n) gives (0, r.., 0)
        gen = H.generator(n)
        for rs in _bounded_tuples(n, L):
            rep.check(_act_right(gen, rs) == (0,) + rs + (0,), "free right module", n, rs)

        elems = list(H.degrees[n])
        maps = equivariant_maps(elems, H.degrees[n].level_of, H.moves(n),
                                lambda k: O[k], _target_act(m), cap)
        counts.append(len(maps))
        rep.check(len(maps) == len(O[n]), "bimodule map count", n, len(maps), len(O[n]))
        for phi in maps:
            f = phi[gen]
            rep.check(all(phi[x] == represented_map(m, f, x) for x in elems
                          if sum(x) <= L), "map not determined by generator", n, f)

    for n in range(N):
        gen = H.generator(n + 1)
        for i in range(n + 2):
            x = H.face(n + 1, i, gen)
            for f in O[n]:
                rep.check(represented_map(m, f, x) == c.cofaces[(n, i)][f], "coface", n, i, f)
    for n in range(1, N + 1):
        gen = H.generator(n - 1)
        for j in range(n):
            x = H.degeneracy(n - 1, j, gen)
            for f in O[n]:
                rep.check(represented_map(m, f, x) == c.codegeneracies[(n, j)][f],
                          "codegeneracy", n, j, f)
    rep.data["bimodule_maps"] = counts
    rep.data["O_sizes"] = [len(O[n]) for n in range(N + 1)]
    return rep


def cosimplicial_to_json(c: CosimplicialObject) -> dict:
    return {
        "schema": "operadkit.cosimplicial/1",
        "name": c.name,
        "levels": [list(lv) for lv in c.levels],
        "cofaces": [[n, i, [[f, g] for f, g in t.items()]] for (n, i), t in sorted(c.cofaces.items())],
        "codegeneracies": [[n, j, [[f, g] for f, g in t.items()]]
                           for (n, j), t in sorted(c.codegeneracies.items())],
    }
