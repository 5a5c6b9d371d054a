"""Independent brute-force oracles used by the tests.

None of these call into the package's algorithms; they recompute counts and
values from first principles (direct formulas, truth tables, plain recursion).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def circ_counts(x_counts, y_counts, L):
    """Levelwise sizes of X∘Y by summing over outer arity and inner level tuples."""
    out = []
    for n in range(L + 1):
        total = 0
        for i, xi in enumerate(x_counts):
            if not xi:
                continue
            for js in itertools.product(range(len(y_counts)), repeat=i):
                if sum(js) == n:
                    prod = xi
                    for j in js:
                        prod *= y_counts[j]
                    total += prod
        out.append(total)
    return out


def dot_counts(x_counts, y_counts, L):
    return [sum(x_counts[i] * y_counts[n - i] for i in range(n + 1)
                if i < len(x_counts) and n - i < len(y_counts)) for n in range(L + 1)]


@lru_cache(maxsize=None)
def labeled_tree_count(arity_counts: tuple, level: int, branches: int) -> int:
    """Number of labeled trees with the given level and exact node count.

    ``arity_counts[a]`` is the number of generators of arity ``a``.
    """
    if branches == 0:
        return 1 if level == 1 else 0
    total = 0
    for a, g in enumerate(arity_counts):
        if not g:
            continue
        total += g * _forests(arity_counts, a, level, branches - 1)
    return total


@lru_cache(maxsize=None)
def _forests(arity_counts: tuple, k: int, level: int, branches: int) -> int:
    if k == 0:
        return 1 if level == 0 and branches == 0 else 0
    total = 0
    for l in range(level + 1):
        for b in range(branches + 1):
            first = labeled_tree_count(arity_counts, l, b)
            if first:
                total += first * _forests(arity_counts, k - 1, level - l, branches - b)
    return total


def alternating_words(nonidentity_p: int, nonidentity_q: int, length: int) -> int:
    """Reduced words in the free product of two monoids: letters alternate factors."""
    if length == 0:
        return 1
    a, b = nonidentity_p, nonidentity_q
    half, odd = divmod(length, 2)
    if odd:
        return a ** (half + 1) * b ** half + b ** (half + 1) * a ** half
    return 2 * a ** half * b ** half


def truth_table(fn, n: int, S=(0, 1)) -> tuple:
    return tuple(fn(*xs) for xs in itertools.product(S, repeat=n))


def function_id(fn, n: int, S=(0, 1)) -> str:
    """Id in the ``"n:v,v,..."`` format, computed from a Python function on ``S``."""
    index = {s: k for k, s in enumerate(S)}
    return f"{n}:" + ",".join(str(index[v]) for v in truth_table(fn, n, S))


def coface_formula(mu, f, n: int, i: int):
    """``d^i f`` as a Python function, straight from the displayed formulas."""
    def g(*xs):
        if i == 0:
            return mu(xs[0], f(*xs[1:]))
        if i == n + 1:
            return mu(f(*xs[:n]), xs[n])
        return f(*xs[:i - 1], mu(xs[i - 1], xs[i]), *xs[i + 1:])
    return g


def codegeneracy_formula(eps, f, j: int):
    def g(*xs):
        return f(*xs[:j], eps, *xs[j:])
    return g


def center(elements, mul) -> list:
    return [c for c in elements if all(mul(c, x) == mul(x, c) for x in elements)]


def compositions(total: int, parts: int):
    """Weak compositions by stars and bars count."""
    return comb(total + parts - 1, parts - 1) if parts else int(total == 0)
