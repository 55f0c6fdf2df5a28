"""Dominance relations, fairness checks and generalized-cycle detection.

Allocation rows are ``{bundle: share}`` mappings (missing bundles count as 0),
which is what ``FractionalAssignment.row`` returns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping

from .assignment import ZERO, FractionalAssignment
from .errors import ShapeError
from .model import Bundle, LinearPreference, Profile


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


def cumulative(row: Mapping, pref: LinearPreference) -> list:
    """Cumulative shares along the ranking: entry k sums the top k+1 bundles."""
    acc, out = ZERO, []
    for x in pref.ranking:
        acc += row.get(x, ZERO)
        out.append(acc)
    return out


def sd_dominates(p: Mapping, q: Mapping, pref: LinearPreference) -> bool:
    """Weak stochastic dominance of row p over row q."""
    return all(a >= b for a, b in zip(cumulative(p, pref), cumulative(q, pref)))


def sd_dominates_assignment(P: FractionalAssignment, Q: FractionalAssignment, profile: Profile) -> bool:
    return all(sd_dominates(P.row(j), Q.row(j), q) for j, q in enumerate(profile.linear))


def lexi_dominates(p: Mapping, q: Mapping, pref: LinearPreference) -> bool:
    """Strict: p beats q at the first bundle (in ranking order) where they differ."""
    for x in pref.ranking:
        a, b = p.get(x, ZERO), q.get(x, ZERO)
        if a != b:
            return a > b
    return False


@dataclass(frozen=True, order=True)
class ImprovableTuple:
    better: Bundle
    worse: Bundle
    witness_agent: int = field(compare=False)

    @property
    def pair(self):
        return (self.better, self.worse)


def improvable_tuples(P: FractionalAssignment, profile: Profile) -> list:
    """All (x, x_hat, j) with x ranked above x_hat by j and p_{j,x_hat} > 0.

    Ordered by agent, then by the rank of x_hat, then by the rank of x.  A
    bundle pair reachable through several agents is reported once per agent.
    """
    out = []
    for j, q in enumerate(profile.linear):
        row = P.row(j)
        for r, worse in enumerate(q.ranking):
            if row[worse] > 0:
                out.extend(ImprovableTuple(better, worse, j) for better in q.ranking[:r])
    return out


def is_generalized_cycle(tuples) -> bool:
    """Every item on some left side also appears on some right side."""
    tuples = list(tuples)
    if not tuples:
        return False
    right = {o for t in tuples for o in t.worse}
    return all(o in right for t in tuples for o in t.better)


@dataclass(frozen=True)
class PeelingTrace:
    rounds: tuple            # B^1 .. B^S, each a tuple of items
    residual_items: tuple    # M^S
    residual_bundles: tuple  # bundles built only from residual items

    @property
    def complete(self) -> bool:
        return not self.residual_items


def _bundles_within(instance, items) -> tuple:
    return tuple(x for x in instance.bundles if all(o in items for o in x))


def peel(P: FractionalAssignment, profile: Profile) -> PeelingTrace:
    """Repeatedly strip items that are not on the worse side of any improvable
    tuple among the bundles still available."""
    inst = P.instance
    tuples = improvable_tuples(P, profile)
    remaining = set(inst.all_items)
    rounds = []
    while remaining:
        alive = [t for t in tuples
                 if all(o in remaining for o in t.better) and all(o in remaining for o in t.worse)]
        blocked = {o for t in alive for o in t.worse}
        B = tuple(o for o in inst.all_items if o in remaining and o not in blocked)
        if not B:
            break
        rounds.append(B)
        remaining -= set(B)
    residual = tuple(o for o in inst.all_items if o in remaining)
    return PeelingTrace(tuple(rounds), residual, _bundles_within(inst, remaining))


def has_generalized_cycle(P: FractionalAssignment, profile: Profile):
    """None when peeling completes, else the improvable tuples living on the
    stalled residual bundles (checked against the cycle condition)."""
    trace = peel(P, profile)
    if trace.complete:
        return None
    left = set(trace.residual_items)
    witness = tuple(t for t in improvable_tuples(P, profile)
                    if all(o in left for o in t.better) and all(o in left for o in t.worse))
    if not is_generalized_cycle(witness):
        raise AssertionError("stalled peel produced a set that is not a generalized cycle")
    return witness


def minimal_generalized_cycles(P: FractionalAssignment, profile: Profile, limit: int = 16) -> list:
    """Inclusion-minimal generalized cycles, found by brute force over subsets
    of the distinct improvable bundle pairs (at most ``limit`` pairs)."""
    pairs = sorted({t.pair for t in improvable_tuples(P, profile)})
    if len(pairs) > limit:
        raise ValueError(f"{len(pairs)} improvable pairs exceed the brute-force limit {limit}")
    found = []
    for size in range(1, len(pairs) + 1):
        for combo in combinations(pairs, size):
            if any(set(c) <= set(combo) for c in found):
                continue
            if is_generalized_cycle(ImprovableTuple(a, b, -1) for a, b in combo):
                found.append(combo)
    return found


def is_sd_envy_free(P: FractionalAssignment, profile: Profile) -> Verdict:
    """Witness on failure: the first (envious agent, envied agent) pair."""
    n = P.instance.num_agents
    for j, q in enumerate(profile.linear):
        for k in range(n):
            if k != j and not sd_dominates(P.row(j), P.row(k), q):
                return Verdict(False, (j, k))
    return Verdict(True)


def cumulative_shares(P: FractionalAssignment, profile: Profile) -> list:
    """u[j][x]: agent j's total share of bundles the agent ranks at or above x."""
    out = []
    for j, q in enumerate(profile.linear):
        out.append(dict(zip(q.ranking, cumulative(P.row(j), q))))
    return out


def is_itemwise_ordinal_fair(P: FractionalAssignment, profile: Profile) -> Verdict:
    """Witness on failure: every (agent, bundle) that has no qualifying item."""
    inst = P.instance
    u = cumulative_shares(P, profile)
    # for each item, the largest cumulative share among positive holders of bundles containing it
    top = {o: None for o in inst.all_items}
    for k in range(inst.num_agents):
        for x, v in P.row(k).items():
            if v > 0:
                for o in x:
                    if top[o] is None or u[k][x] > top[o]:
                        top[o] = u[k][x]
    bad = []
    for j in range(inst.num_agents):
        for x, v in P.row(j).items():
            if v > 0 and not any(top[o] <= u[j][x] for o in x):
                bad.append((j, x))
    return Verdict(not bad, bad or None)


@dataclass(frozen=True)
class LeximinVector:
    entries: tuple  # (agent, bundle, u_{j,x}) in agent order, then ranking order
    sorted: tuple

    def values(self) -> tuple:
        return self.sorted


def leximin_vector(P: FractionalAssignment, profile: Profile) -> LeximinVector:
    entries = []
    for j, q in enumerate(profile.linear):
        entries.extend((j, x, v) for x, v in zip(q.ranking, cumulative(P.row(j), q)))
    return LeximinVector(tuple(entries), tuple(sorted(e[2] for e in entries)))


def leximin_compare(u, v) -> int:
    """1 if u is leximin-preferred to v, 0 if the sorted vectors agree, -1 otherwise."""
    a = u.sorted if isinstance(u, LeximinVector) else tuple(sorted(Fraction(x) for x in u))
    b = v.sorted if isinstance(v, LeximinVector) else tuple(sorted(Fraction(x) for x in v))
    if len(a) != len(b):
        raise ShapeError(f"cannot compare vectors of length {len(a)} and {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    return 0
