"""The acceptance suite: eleven exhaustive checks with time limits.

Each criterion returns a :class:`Report`; :func:`run_criterion` times it and
records whether it met its limit.  Used by ``operadkit selftest`` and by the
test suite.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .bimodules import (check_augmented_faces, check_end_self, check_simplicial, component_census,
                        compare_envelope, hochschild, hochschild_pi0, j_object, pi0_j)
from .coproduct import Coproduct, check_uniqueness
from .cosimplicial import (build_cosimplicial, check_cosimplicial, compare_hochschild,
                           discrete_limit)
from .free import enumerate_labeled, operad_law_failures
from .graded import GradedSet, distribute, random_graded_set
from .report import Report
from .table import (Multiplication, associative_operad, endomorphism_set_operad,
                    endomorphism_suboperad, idempotent_monoid)


def left_zero_monoid_multiplication() -> Multiplication:
    """``{e, a, b}`` with ``e`` a unit and ``a·x = a``, ``b·x = b``, inside ``End({e,a,b})``."""
    O = endomorphism_suboperad(["e", "a", "b"], 2, {"mu": (2, lambda x, y: y if x == "e" else x)})
    return Multiplication.named(O, "e", "mu")


def generator_sets(max_gens: int = 2, max_arity: int = 3):
    """Every graded set with ``1..max_gens`` generators of arity ``≤ max_arity``."""
    for k in range(1, max_gens + 1):
        for arities in itertools.combinations_with_replacement(range(max_arity + 1), k):
            levels = [[] for _ in range(max_arity + 1)]
            for idx, a in enumerate(arities):
                levels[a].append(f"x{idx}")
            yield arities, GradedSet.from_levels(levels)


def free_laws(max_beta: int = 3) -> Report:
    rep = Report("free operad laws")
    for arities, X in generator_sets():
        top = max_beta * X.level_bound if X.level_bound else 1
        trees = [t for n in range(top + 1) for t in enumerate_labeled(X, n, max_beta, 3)]
        failures = operad_law_failures(trees, max_beta)
        rep.check(not failures, "laws", arities, failures[:1])
        rep.data[f"arities {arities}"] = len(trees)
    return rep


def catalan() -> Report:
    rep = Report("Catalan counts")
    X = GradedSet(((), (), ("m",)))
    counts = [len(enumerate_labeled(X, n)) for n in range(1, 6)]
    rep.check(counts == [1, 1, 2, 5, 14], "counts", counts)
    rep.data["counts"] = counts
    return rep


def uniqueness() -> Report:
    rep = Report("normal-form uniqueness")
    M = idempotent_monoid()
    E1 = endomorphism_set_operad([0, 1], 1).level_one_part()
    for P in (M, E1):
        sub = check_uniqueness(Coproduct([P, P], ["P", "Q"]), 1, 3)
        rep.merge(sub)
        rep.data[P.name] = sub.data["classes"]
    return rep


def pushout_census() -> Report:
    rep = Report("pushout census")
    M = idempotent_monoid()
    E1 = endomorphism_set_operad([0, 1], 1).level_one_part()
    for P in (M, E1):
        c = Coproduct([P, P], ["P", "Q"]).census(1, 3)
        rep.check(c["recursion_holds"], "recursion", P.name, c)
        rep.check(c["F_matches_normal_forms"], "normal forms", P.name, c)
        rep.data[P.name] = {k: c[k] for k in ("T", "C", "F")}
    c = rep.data[M.name]
    instance = (c["T"][2], c["C"][2], c["F"][1], c["F"][2])
    rep.check(instance == (16, 14, 3, 5), "hand-derived instance", instance)
    return rep


def identity_suites() -> Report:
    rep = Report("simplicial and cosimplicial identities")
    for P in (associative_operad(1), endomorphism_set_operad([0, 1], 1)):
        H = hochschild(P, 3)
        rep.merge(check_simplicial(H))
        rep.merge(hochschild_pi0(H))
    rep.merge(check_simplicial(hochschild(associative_operad(2), 1)))
    rep.merge(check_augmented_faces(endomorphism_set_operad([0, 1], 2)))
    for m in (Multiplication.named(associative_operad(3), "eps", "mu"),
              Multiplication.named(endomorphism_set_operad([0, 1], 3), "0", "max")):
        rep.merge(check_cosimplicial(build_cosimplicial(m, 3)))
    return rep


def comparison() -> Report:
    rep = Report("Hochschild comparison")
    for m in (Multiplication.named(associative_operad(3), "eps", "mu"),
              Multiplication.named(endomorphism_set_operad([0, 1], 3), "0", "max")):
        sub = compare_hochschild(m, 2)
        rep.merge(sub)
        rep.data[m.host.name] = sub.data["bimodule_maps"]
    return rep


def envelope() -> Report:
    rep = Report("envelope formula")
    A = associative_operad(1)
    for n in (0, 1):
        for level in (0, 1):
            sub = compare_envelope(A, n, level, 2)
            rep.merge(sub)
            rep.data[f"n={n} level={level}"] = [sub.data["oracle_classes"], sub.data["normal_forms"]]
    return rep


def pi0_catalan() -> Report:
    rep = Report("pi0 J")
    J = j_object(GradedSet(((), (), ("m",))), 2, 4, 3)
    sub = pi0_j(J)
    rep.merge(sub)
    counts = sub.data["classes_by_level"][1:]
    rep.check(counts == [1, 1, 2, 5], "Catalan", counts)
    rep.merge(component_census(J))
    rep.data["classes_by_level"] = counts
    return rep


def end_self() -> Report:
    rep = Report("E_Q(Q) = Q")
    for Q in (associative_operad(2), endomorphism_set_operad([0, 1], 2)):
        sub = check_end_self(Q, 2)
        rep.merge(sub)
        rep.data[Q.name] = sub.data["sizes"]
    return rep


def distributive(trials: int = 50, seed: int = 0) -> Report:
    rep = Report("distributive round trip")
    rng = random.Random(seed)
    for t in range(trials):
        X, Y, Z = (random_graded_set(rng, 3, 2, p) for p in "xyz")
        fwd, bwd = distribute(X, Y, Z, 3)
        rep.check(fwd.then(bwd).is_identity() and bwd.then(fwd).is_identity(), "round trip", t)
    return rep


def limits() -> Report:
    rep = Report("discrete limits")
    cases = [("A", Multiplication.named(associative_operad(2), "eps", "mu"), 1),
             ("End(0,1) max", Multiplication.named(endomorphism_set_operad([0, 1], 2), "0", "max"), 2),
             ("left-zero", left_zero_monoid_multiplication(), 1)]
    for name, m, expected in cases:
        lim = discrete_limit(build_cosimplicial(m, 1))
        rep.check(len(lim) == expected, name, lim)
        rep.data[name] = lim
    return rep


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float
    run: Callable[[], Report]


CRITERIA = [
    Criterion(1, "free-operad laws", 10, free_laws),
    Criterion(2, "Catalan counts", 1, catalan),
    Criterion(3, "normal-form uniqueness", 60, uniqueness),
    Criterion(4, "pushout census", 30, pushout_census),
    Criterion(5, "simplicial/cosimplicial identities", 30, identity_suites),
    Criterion(6, "Hochschild comparison", 60, comparison),
    Criterion(7, "envelope formula", 60, envelope),
    Criterion(8, "pi0 J and components", 60, pi0_catalan),
    Criterion(9, "E_Q(Q) = Q", 60, end_self),
    Criterion(10, "distributive round trip", 10, distributive),
    Criterion(11, "discrete limits", 1, limits),
]


@dataclass
class Outcome:
    criterion: Criterion
    report: Report
    seconds: float

    @property
    def passed(self) -> bool:
        return self.report.ok and self.seconds < self.criterion.limit

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.criterion.number:2d}. {self.criterion.title}: "
                f"{self.report.checked} checked, {self.report.skipped} skipped, "
                f"{len(self.report.failures)} failures, "
                f"{self.seconds:.2f}s (limit {self.criterion.limit:g}s)")

    def to_json(self) -> dict:
        # timing is left out so that reports are byte-identical across runs
        return {"criterion": self.criterion.number, "title": self.criterion.title,
                "report": self.report.to_json(), "within_limit": self.seconds < self.criterion.limit}


def run_criterion(c: Criterion) -> Outcome:
    start = time.perf_counter()
    rep = c.run()
    return Outcome(c, rep, time.perf_counter() - start)


def run_all(numbers=None) -> list[Outcome]:
    return [run_criterion(c) for c in CRITERIA if numbers is None or c.number in numbers]
