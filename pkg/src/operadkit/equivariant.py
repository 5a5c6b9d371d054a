"""Brute-force enumeration of structure-preserving maps between finite modules.

A structure is described by its elements, a level function and a set of
operations: ``moves(x)`` lists pairs ``(op, y)`` meaning ``y = x·op`` in the
source, and ``target_act(t, op)`` applies the same operation in the target.
A map ``φ`` is equivariant when ``φ(x·op) = φ(x)·op`` for every move.

The solver picks a small generating set greedily, tries every level-preserving
assignment of the generators, propagates along moves and keeps the
assignments that are consistent.  It knows nothing about free generators, so
it serves as an independent count of module maps.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Callable, Iterable, Sequence

from .errors import BlowupError


def generating_set(elements: Sequence, moves: dict) -> list:
    """Greedy cover of ``elements`` by forward closure under ``moves``."""
    reach = {}
    for x in elements:
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for _, z in moves.get(y, ()):
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        reach[x] = seen
    uncovered = set(elements)
    gens = []
    order = {x: k for k, x in enumerate(elements)}
    while uncovered:
        best = max(uncovered, key=lambda x: (len(reach[x] & uncovered), -order[x]))
        gens.append(best)
        uncovered -= reach[best]
    gens.sort(key=order.get)
    return gens


def equivariant_maps(elements: Sequence, level: Callable, moves: dict,
                     target_by_level: Callable[[int], Sequence],
                     target_act: Callable, cap: int = 200_000) -> list[dict]:
    """All maps ``φ`` from the source elements to the target commuting with every move.

    ``moves`` maps each source element to a list of ``(op, y)``.  Raises
    :class:`BlowupError` when the number of generator assignments exceeds ``cap``.
    """
    gens = generating_set(elements, moves)
    pools = [tuple(target_by_level(level(g))) for g in gens]
    total = 1
    for p in pools:
        total *= len(p)
    if total > cap:
        raise BlowupError(f"{total} generator assignments exceed cap {cap}")

    found = []
    for choice in itertools.product(*pools):
        phi = dict(zip(gens, choice))
        if _propagate(phi, gens, moves, target_act) and _consistent(phi, elements, moves, target_act):
            found.append(phi)
    return found


def _propagate(phi: dict, gens: Iterable, moves: dict, target_act: Callable) -> bool:
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        tx = phi[x]
        for op, y in moves.get(x, ()):
            ty = target_act(tx, op)
            if ty is None:
                return False
            old = phi.get(y)
            if old is None:
                phi[y] = ty
                queue.append(y)
            elif old != ty:
                return False
    return True


def _consistent(phi: dict, elements: Sequence, moves: dict, target_act: Callable) -> bool:
    for x in elements:
        if x not in phi:
            return False
        for op, y in moves.get(x, ()):
            if target_act(phi[x], op) != phi[y]:
                return False
    return True
