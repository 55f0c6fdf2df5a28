"""Brute-force and LP oracles for the efficiency, decomposability, leximin and
strategyproofness notions.

These are deliberately simple and exhaustive so they can be trusted as
independent checks on the mechanisms; the price is that they only scale to
small instances.  Enumeration limits are explicit and exceeding one raises
``CapacityError`` instead of silently truncating.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import networkx as nx

from .analysis import (Verdict, cumulative, is_sd_envy_free, lexi_dominates,
                       sd_dominates)
from .assignment import (ONE, ZERO, DiscreteAssignment, FractionalAssignment,
                         is_doubly_stochastic, validate)
from .errors import CapacityError, ConsistencyError, PreconditionError
from .lp import OPTIMAL, LinearProgram, solve_lp
from .mechanisms import lexips, mps
from .model import (Instance, LexicographicPreference, LinearPreference,
                    Profile, linear)

DISCRETE_CAP = 576          # (n!)^p: admits n <= 4 with p = 2 and n <= 3 with p = 3
LINEAR_MISREPORT_CAP = 24   # |D|!: admits n = p = 2
LEXI_MISREPORT_CAP = 100_000
LEXIMIN_MAX_AGENTS = 3
LEXIMIN_MAX_TYPES = 2


# ---------------------------------------------------------------- LP helpers

class _AssignmentLP:
    """LP whose first n*|D| variables are the shares q_{j,x}."""

    def __init__(self, instance: Instance, extra_vars: int = 0, agents=None):
        self.inst = instance
        self.agents = list(range(instance.num_agents)) if agents is None else list(agents)
        self.m = len(instance.bundles)
        self.nq = len(self.agents) * self.m
        self.lp = LinearProgram(self.nq + extra_vars)
        self.slot = {j: a for a, j in enumerate(self.agents)}

    def var(self, j, x) -> int:
        return self.slot[j] * self.m + self.inst.bundle_index[x]

    def feasibility(self, supply=None):
        """Unit rows; item totals equal ``supply`` (default 1 each)."""
        inst = self.inst
        for j in self.agents:
            self.lp.add({self.var(j, x): 1 for x in inst.bundles}, "==", 1)
        for o in inst.all_items:
            coeffs = {self.var(j, x): 1 for j in self.agents for x in inst.bundles if o in x}
            self.lp.add(coeffs, "==", ONE if supply is None else supply[o])

    def ucs_coeffs(self, j, pref: LinearPreference, x) -> dict:
        return {self.var(j, y): 1 for y in pref.ranking[: pref.rank[x] + 1]}

    def extract(self, point) -> list:
        return [{x: point[self.var(j, x)] for x in self.inst.bundles} for j in self.agents]


def _sd_improvement(P: FractionalAssignment, profile: Profile, agents) -> Optional[list]:
    """Rows for ``agents`` that weakly sd-dominate theirs in P with some change,
    others frozen; None if there is no such improvement."""
    inst = P.instance
    agents = list(agents)
    supply = {o: ONE for o in inst.all_items}
    for k in range(inst.num_agents):
        if k not in agents:
            for x, v in P.row(k).items():
                for o in x:
                    supply[o] -= v
    A = _AssignmentLP(inst, agents=agents)
    A.feasibility(supply)
    objective = {}
    for j in agents:
        q = profile.linear[j]
        for x, c in zip(q.ranking, cumulative(P.row(j), q)):
            A.lp.add(A.ucs_coeffs(j, q, x), ">=", c)
        # sum over all prefixes of cumulative shares: bundle at rank r counts |D| - r times
        for r, x in enumerate(q.ranking):
            objective[A.var(j, x)] = len(q.ranking) - r
    A.lp.maximize(objective)
    res = solve_lp(A.lp)
    if res.status != OPTIMAL:
        raise ConsistencyError(f"improvement LP returned {res.status}")
    base = sum(((len(profile.linear[j].ranking) - r) * P.row(j)[x]
                for j in agents for r, x in enumerate(profile.linear[j].ranking)), ZERO)
    if res.value == base:
        return None
    return A.extract(res.point)


# ------------------------------------------------------------ efficiency

def is_sd_efficient(P: FractionalAssignment, profile: Profile) -> Verdict:
    """Witness on failure: an assignment that sd-dominates P and differs from it."""
    rows = _sd_improvement(P, profile, range(P.instance.num_agents))
    if rows is None:
        return Verdict(True)
    return Verdict(False, FractionalAssignment.from_shares(P.instance, rows))


def is_sd_weak_efficient(P: FractionalAssignment, profile: Profile) -> Verdict:
    """No two agents can trade between themselves to a mutual sd-improvement.

    Witness on failure: ``(pair, Q)`` with Q the improved assignment.
    """
    n = P.instance.num_agents
    for pair in itertools.combinations(range(n), 2):
        rows = _sd_improvement(P, profile, pair)
        if rows is not None:
            full = [dict(P.row(k)) for k in range(n)]
            for j, r in zip(pair, rows):
                full[j] = r
            return Verdict(False, (pair, FractionalAssignment.from_shares(P.instance, full)))
    return Verdict(True)


def is_sd_weak_envy_free(P: FractionalAssignment, profile: Profile) -> Verdict:
    """Nobody's row sd-dominates another agent's different row under the latter's
    preference.  Witness: ``(envious, envied)``."""
    n = P.instance.num_agents
    for j, q in enumerate(profile.linear):
        for k in range(n):
            if k != j and P.row(k) != P.row(j) and sd_dominates(P.row(k), P.row(j), q):
                return Verdict(False, (j, k))
    return Verdict(True)


def _lexi_improvement(P, profile, pivots) -> Optional[list]:
    """``pivots[j]`` is None (row frozen) or the bundle where agent j must gain."""
    inst = P.instance
    n = inst.num_agents
    A = _AssignmentLP(inst, extra_vars=1)
    s = A.nq
    A.feasibility()
    for j in range(n):
        row = P.row(j)
        x = pivots[j]
        if x is None:
            for y in inst.bundles:
                A.lp.bound(A.var(j, y), row[y], row[y])
            continue
        q = profile.linear[j]
        for y in q.ranking[: q.rank[x]]:
            A.lp.add({A.var(j, y): 1}, ">=", row[y])
        A.lp.add({A.var(j, x): 1, s: -1}, ">=", row[x])
    A.lp.bound(s, 0, 1)
    A.lp.maximize({s: 1})
    res = solve_lp(A.lp)
    if res.status != OPTIMAL or res.value == 0:
        return None
    return A.extract(res.point)


def is_lexi_efficient(P: FractionalAssignment, profile: Profile) -> Verdict:
    """No Q != P in which every agent's row is equal to its row in P or strictly
    lexi-better.  Witness on failure: such a Q.

    Any sd-improvement is also a lexi-improvement, so that LP runs first.
    Otherwise every choice of improving agents and pivot bundles is tried,
    fewest improving agents first.
    """
    sd = is_sd_efficient(P, profile)
    if not sd:
        return Verdict(False, sd.witness)
    inst = P.instance
    n = inst.num_agents
    options = []
    for j, q in enumerate(profile.linear):
        cum = cumulative(P.row(j), q)
        options.append([x for x, c in zip(q.ranking, cum) if c < 1])
    for size in range(1, n + 1):
        for group in itertools.combinations(range(n), size):
            for choice in itertools.product(*(options[j] for j in group)):
                pivots = [None] * n
                for j, x in zip(group, choice):
                    pivots[j] = x
                rows = _lexi_improvement(P, profile, pivots)
                if rows is not None:
                    Q = FractionalAssignment.from_shares(inst, rows)
                    return Verdict(False, Q)
    return Verdict(True)


def lexi_improves(Q: FractionalAssignment, P: FractionalAssignment, profile: Profile) -> bool:
    """Relaxed assignment-level relation: each row equal or strictly lexi-better,
    and at least one strictly better."""
    strict = False
    for j, q in enumerate(profile.linear):
        if Q.row(j) == P.row(j):
            continue
        if not lexi_dominates(Q.row(j), P.row(j), q):
            return False
        strict = True
    return strict


# ------------------------------------------------------- decompositions

@dataclass(frozen=True)
class Decomposition:
    terms: tuple  # (weight, DiscreteAssignment), canonical order, weights > 0

    def recompose(self, instance: Instance) -> FractionalAssignment:
        acc = [dict.fromkeys(instance.bundles, ZERO) for _ in range(instance.num_agents)]
        for w, A in self.terms:
            for j, x in enumerate(A.bundles):
                acc[j][x] += w
        return FractionalAssignment.from_shares(instance, acc)

    def total_weight(self) -> Fraction:
        return sum((w for w, _ in self.terms), ZERO)


@dataclass(frozen=True)
class PermutationDecomposition:
    """Convex combination of permutation matrices; ``perm[j]`` is agent j's column."""
    terms: tuple

    def recompose(self, n: int) -> tuple:
        M = [[ZERO] * n for _ in range(n)]
        for w, perm in self.terms:
            for j, c in enumerate(perm):
                M[j][c] += w
        return tuple(tuple(r) for r in M)


def discrete_assignments(instance: Instance, cap: int = DISCRETE_CAP):
    """Every discrete assignment, one permutation per type in lexicographic
    order, combined type-major."""
    n, p = instance.num_agents, instance.num_types
    count = math.factorial(n) ** p
    if count > cap:
        raise CapacityError(
            f"{count} discrete assignments exceed the enumeration cap of {cap} (n={n}, p={p})")
    perms = list(itertools.permutations(range(n)))
    for combo in itertools.product(perms, repeat=p):
        yield DiscreteAssignment.from_permutations(instance, combo)


def is_decomposable(P: FractionalAssignment, instance: Instance | None = None,
                    cap: int = DISCRETE_CAP) -> Optional[Decomposition]:
    """A vertex solution of  sum_k a_k A_k = P, a >= 0, sum a = 1,  or None."""
    inst = instance or P.instance
    # a discrete assignment using a zero entry of P must get weight 0
    cands = [A for A in discrete_assignments(inst, cap)
             if all(P.share(j, x) > 0 for j, x in enumerate(A.bundles))]
    if not cands:
        return None
    lp = LinearProgram(len(cands))
    lp.add({k: 1 for k in range(len(cands))}, "==", 1)
    for j in range(inst.num_agents):
        for x in inst.bundles:
            coeffs = {k: 1 for k, A in enumerate(cands) if A.bundles[j] == x}
            if coeffs:
                lp.add(coeffs, "==", P.share(j, x))
            elif P.share(j, x) != 0:
                return None
    res = solve_lp(lp)
    if res.status != OPTIMAL:
        return None
    terms = tuple((w, A) for w, A in zip(res.point, cands) if w > 0)
    dec = Decomposition(terms)
    if dec.total_weight() != 1 or dec.recompose(inst) != P:
        raise ConsistencyError("decomposition does not recompose exactly")
    return dec


def birkhoff_decompose(M: Sequence[Sequence]) -> PermutationDecomposition:
    """Peel perfect matchings off the positive entries of a doubly stochastic matrix."""
    M = [[Fraction(v) for v in r] for r in M]
    n = len(M)
    if not is_doubly_stochastic(M):
        raise PreconditionError("matrix is not doubly stochastic")
    terms = []
    remaining = ONE
    while remaining > 0:
        G = nx.Graph()
        rows = [("r", j) for j in range(n)]
        G.add_nodes_from(rows)
        G.add_nodes_from(("c", k) for k in range(n))
        G.add_edges_from((("r", j), ("c", k)) for j in range(n) for k in range(n) if M[j][k] > 0)
        match = nx.bipartite.hopcroft_karp_matching(G, top_nodes=rows)
        if any(r not in match for r in rows):
            raise ConsistencyError("no perfect matching on the positive entries")
        perm = tuple(match[("r", j)][1] for j in range(n))
        w = min(M[j][perm[j]] for j in range(n))
        for j in range(n):
            M[j][perm[j]] -= w
        remaining -= w
        terms.append((w, perm))
    merged = {}
    for w, perm in terms:
        merged[perm] = merged.get(perm, ZERO) + w
    return PermutationDecomposition(tuple((merged[k], k) for k in sorted(merged)))


def product_decomposition(instance: Instance, per_type: Sequence[PermutationDecomposition]) -> Decomposition:
    """Independent product of one permutation lottery per type."""
    terms = []
    for combo in itertools.product(*(d.terms for d in per_type)):
        w = ONE
        for wi, _ in combo:
            w *= wi
        terms.append((w, DiscreteAssignment.from_permutations(instance, [perm for _, perm in combo])))
    return Decomposition(tuple(terms))


# ------------------------------------------------------------ leximin

def leximin_optimal_assignment(instance: Instance, profile: Profile,
                               max_agents: int = LEXIMIN_MAX_AGENTS,
                               max_types: int = LEXIMIN_MAX_TYPES) -> FractionalAssignment:
    """Leximin-optimal assignment over cumulative shares, by iterated maximin LPs.

    Each stage maximizes the smallest unfixed cumulative share t; a component
    is then fixed at t when its own maximum (others kept at >= t) is exactly t.
    """
    n, p = instance.num_agents, instance.num_types
    if n > max_agents or p > max_types:
        raise CapacityError(f"leximin oracle capped at n <= {max_agents}, p <= {max_types}")
    comps = [(j, x) for j, q in enumerate(profile.linear) for x in q.ranking]
    fixed = {}

    def build(t_value=None):
        A = _AssignmentLP(instance, extra_vars=1)
        t = A.nq
        A.feasibility()
        for (j, x) in comps:
            c = A.ucs_coeffs(j, profile.linear[j], x)
            if (j, x) in fixed:
                A.lp.add(c, "==", fixed[(j, x)])
            elif t_value is None:
                c = dict(c)
                c[t] = -1
                A.lp.add(c, ">=", 0)
            else:
                A.lp.add(c, ">=", t_value)
        A.lp.bound(t, 0, 1)
        return A, t

    def u(A, point, j, x):
        q = profile.linear[j]
        return sum((point[A.var(j, y)] for y in q.ranking[: q.rank[x] + 1]), ZERO)

    while len(fixed) < len(comps):
        A, t = build()
        A.lp.maximize({t: 1})
        res = solve_lp(A.lp)
        if res.status != OPTIMAL:
            raise ConsistencyError(f"maximin stage returned {res.status}")
        level = res.value
        tight = [c for c in comps if c not in fixed and u(A, res.point, *c) == level]
        newly = []
        for c in tight:
            B, _ = build(level)
            B.lp.maximize(B.ucs_coeffs(c[0], profile.linear[c[0]], c[1]))
            r2 = solve_lp(B.lp)
            if r2.status == OPTIMAL and r2.value == level:
                newly.append(c)
        if not newly:
            raise ConsistencyError("leximin stage fixed no component")
        for c in newly:
            fixed[c] = level
    rows = []
    for j, q in enumerate(profile.linear):
        prev, row = ZERO, {}
        for x in q.ranking:
            row[x] = fixed[(j, x)] - prev
            prev = fixed[(j, x)]
        rows.append(row)
    P = FractionalAssignment.from_shares(instance, rows)
    if validate(P):
        raise ConsistencyError("leximin cumulative vector does not describe a valid assignment")
    return P


# ------------------------------------------------------ strategyproofness

MISREPORT_CLASSES = ("all-linear", "lexicographic", "lexicographic-fixed-importance")
MECHANISMS: dict = {"mps": mps, "lexips": lexips}


@dataclass(frozen=True)
class AuditViolation:
    agent: int
    misreport: object
    truthful: dict
    manipulated: dict
    truthful_cumulative: tuple
    manipulated_cumulative: tuple
    manipulated_assignment: FractionalAssignment = field(repr=False)


@dataclass(frozen=True)
class AuditReport:
    mechanism: str
    profile: Profile
    agents: tuple
    misreport_class: str
    checked: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def misreports(instance: Instance, truthful, misreport_class: str, cap: int | None = None):
    """Every preference in the class, in a fixed enumeration order."""
    n, p = instance.num_agents, instance.num_types
    if misreport_class == "all-linear":
        cap = LINEAR_MISREPORT_CAP if cap is None else cap
        count = math.factorial(len(instance.bundles))
        if count > cap:
            raise CapacityError(f"{count} linear misreports exceed the cap of {cap}")
        for r in itertools.permutations(instance.bundles):
            yield linear(instance, r)
        return
    cap = LEXI_MISREPORT_CAP if cap is None else cap
    if misreport_class == "lexicographic":
        importances = list(itertools.permutations(range(p)))
    elif misreport_class == "lexicographic-fixed-importance":
        if truthful is None:
            raise PreconditionError("fixed-importance misreports need a lexicographic truthful preference")
        importances = [truthful.importance]
    else:
        raise PreconditionError(f"unknown misreport class {misreport_class!r}")
    count = len(importances) * math.factorial(n) ** p
    if count > cap:
        raise CapacityError(f"{count} lexicographic misreports exceed the cap of {cap}")
    per_type = [list(itertools.permutations(d)) for d in instance.items]
    for imp in importances:
        for orders in itertools.product(*per_type):
            yield LexicographicPreference(imp, orders)


def audit_strategyproofness(mechanism: str | Callable, instance: Instance, profile: Profile,
                            agent: int | None = None, misreport_class: str = "all-linear",
                            cap: int | None = None) -> AuditReport:
    """Look for misreports whose outcome sd-dominates the truthful one and differs."""
    name = mechanism if isinstance(mechanism, str) else getattr(mechanism, "__name__", "custom")
    run = MECHANISMS[mechanism] if isinstance(mechanism, str) else mechanism
    if name == "lexips" and misreport_class == "all-linear":
        raise PreconditionError("lexips only accepts lexicographic reports")
    if misreport_class not in MISREPORT_CLASSES:
        raise PreconditionError(f"unknown misreport class {misreport_class!r}")
    agents = tuple(range(instance.num_agents)) if agent is None else (agent,)
    truth = run(instance, profile)
    violations, checked = [], 0
    for j in agents:
        pref = profile.linear[j]
        for lie in misreports(instance, profile.lexicographic_form(j), misreport_class, cap):
            checked += 1
            Q = run(instance, profile.replace(j, lie))
            if Q.row(j) != truth.row(j) and sd_dominates(Q.row(j), truth.row(j), pref):
                violations.append(AuditViolation(
                    j, lie, truth.row(j), Q.row(j),
                    tuple(cumulative(truth.row(j), pref)), tuple(cumulative(Q.row(j), pref)), Q))
    return AuditReport(name, profile, agents, misreport_class, checked, tuple(violations))


# ------------------------------------------------- impossibility instance

@dataclass(frozen=True)
class GridPoint:
    v: Fraction
    Q: FractionalAssignment
    checks: tuple  # (label, bool)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


@dataclass(frozen=True)
class ImpossibilityReport:
    P: FractionalAssignment
    points: tuple

    @property
    def passed(self) -> bool:
        return all(pt.passed for pt in self.points)

    @property
    def failures(self) -> list:
        return [pt for pt in self.points if not pt.passed]


def impossibility_profile() -> Profile:
    inst = Instance(("F", "B"), (("1_F", "2_F"), ("1_B", "2_B")))
    r1 = [("1_F", "1_B"), ("1_F", "2_B"), ("2_F", "2_B"), ("2_F", "1_B")]
    r2 = [("1_F", "2_B"), ("2_F", "1_B"), ("1_F", "1_B"), ("2_F", "2_B")]
    return Profile(inst, (linear(inst, r1), linear(inst, r2)))


def verify_impossibility_instance(grid_denominator: int) -> ImpossibilityReport:
    """Check the envy-free decomposable family v = z, w = y, v + w = 1/2 on a grid.

    Every member must be sd-envy-free and decomposable, yet sd-dominated by
    the (envy-free, undecomposable) assignment P that halves 1_F1_B/2_F2_B and
    1_F2_B/2_F1_B, so no member is sd-efficient.
    """
    if grid_denominator < 2:
        raise PreconditionError("grid denominator must be at least 2")
    profile = impossibility_profile()
    inst = profile.instance
    half = Fraction(1, 2)
    P = FractionalAssignment(inst, ((half, 0, 0, half), (0, half, half, 0)))
    points = []
    k = 0
    while Fraction(k, grid_denominator) <= half:
        v = Fraction(k, grid_denominator)
        w = half - v
        Q = FractionalAssignment(inst, ((v, w, w, v), (v, w, w, v)))
        checks = (
            ("Q is a valid assignment", not validate(Q)),
            ("Q is sd-envy-free", bool(is_sd_envy_free(Q, profile))),
            ("Q is decomposable", is_decomposable(Q) is not None),
            ("P sd-dominates Q", all(sd_dominates(P.row(j), Q.row(j), q)
                                     for j, q in enumerate(profile.linear))),
            ("P differs from Q", P != Q),
        )
        points.append(GridPoint(v, Q, checks))
        k += 1
    return ImpossibilityReport(P, tuple(points))
