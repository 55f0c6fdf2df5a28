"""Probabilistic-serial style mechanisms.

* ``ps_single_type``: unit-rate eating over one type's items.
* ``lexips``: one PS phase per importance level, composed by taking products.
* ``mps``: agents eat whole bundles at unit rate.
* ``eating``: bundle eating with arbitrary piecewise-constant speeds.
* ``speeds_from_assignment``: recovers speeds that make ``eating`` reproduce
  a given assignment without generalized cycles.

All event times are computed exactly with ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .assignment import ONE, ZERO, FractionalAssignment, product_compose
from .errors import (ConsistencyError, NotRepresentableError, PreconditionError,
                     StarvationError)
from .model import Instance, Profile


def ps_single_type(items: Sequence[str], supplies: Mapping[str, Fraction],
                   prefs: Mapping, horizon=ONE):
    """Run PS on one type for ``horizon`` units of time.

    ``prefs`` maps an agent key to that agent's order over ``items``.
    Returns ``(shares, remaining)`` where ``shares[agent][item]`` is what the
    agent ate and ``remaining`` the updated supplies.

    >>> shares, left = ps_single_type(["1", "2"], {"1": 1, "2": 1}, {"a": ["1", "2"], "b": ["1", "2"]})
    >>> shares["a"], left["1"]
    ({'1': Fraction(1, 2), '2': Fraction(1, 2)}, Fraction(0, 1))
    """
    supply = {o: Fraction(supplies[o]) for o in items}
    shares = {a: {o: ZERO for o in items} for a in prefs}
    horizon = Fraction(horizon)
    t = ZERO
    while t < horizon and prefs:
        tops = {}
        for a, order in prefs.items():
            top = next((o for o in order if supply[o] > 0), None)
            if top is None:
                raise StarvationError(f"agent {a} has nothing left to eat at time {t}")
            tops[a] = top
        con = {}
        for o in tops.values():
            con[o] = con.get(o, 0) + 1
        step = min([supply[o] / c for o, c in con.items()] + [horizon - t])
        for a, o in tops.items():
            shares[a][o] += step
        for o, c in con.items():
            supply[o] -= step * c
        t += step
    return shares, supply


def lexips_marginals(instance: Instance, profile: Profile) -> tuple:
    """Per-type n x n matrices eaten by the phase-per-type procedure."""
    lex = [profile.lexicographic_form(j) for j in range(instance.num_agents)]
    bad = [instance.agents[j] for j, q in enumerate(lex) if q is None]
    if bad:
        raise PreconditionError(f"agents {bad} do not have lexicographic preferences")
    n, p = instance.num_agents, instance.num_types
    supply = {o: ONE for o in instance.all_items}
    eaten = [[[ZERO] * n for _ in range(n)] for _ in range(p)]
    for k in range(p):
        # Phases for different types touch disjoint items and disjoint agents,
        # so running them in type order is only for determinism.
        for i in range(p):
            cohort = {j: lex[j].orders[i] for j in range(n) if lex[j].importance[k] == i}
            if not cohort:
                continue
            shares, left = ps_single_type(instance.items[i], supply, cohort, ONE)
            supply.update(left)
            col = {o: c for c, o in enumerate(instance.items[i])}
            for j, got in shares.items():
                for o, v in got.items():
                    eaten[i][j][col[o]] += v
    return tuple(tuple(tuple(r) for r in m) for m in eaten)


def lexips(instance: Instance, profile: Profile) -> FractionalAssignment:
    return product_compose(instance, lexips_marginals(instance, profile))


@dataclass(frozen=True)
class SpeedFunction:
    """Piecewise-constant rate: ``rates[m]`` applies on [breakpoints[m], breakpoints[m+1])."""
    breakpoints: tuple
    rates: tuple

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        rates = tuple(Fraction(r) for r in self.rates)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "rates", rates)
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise PreconditionError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")
        if len(rates) != len(bps) - 1:
            raise PreconditionError("need one rate per segment")
        if any(r < 0 for r in rates):
            raise PreconditionError("rates must be nonnegative")

    def integral(self) -> Fraction:
        return sum((r * (b - a) for r, a, b in zip(self.rates, self.breakpoints, self.breakpoints[1:])), ZERO)

    def segment(self, t: Fraction) -> int:
        for m in range(len(self.rates)):
            if t < self.breakpoints[m + 1]:
                return m
        return len(self.rates) - 1

    def rate_at(self, t: Fraction) -> Fraction:
        return self.rates[self.segment(t)]

    def next_breakpoint(self, t: Fraction) -> Fraction:
        return self.breakpoints[self.segment(t) + 1]


@dataclass(frozen=True)
class EatingSchedule:
    speeds: tuple

    def __post_init__(self):
        object.__setattr__(self, "speeds", tuple(self.speeds))

    @classmethod
    def constant(cls, n: int) -> "EatingSchedule":
        return cls(tuple(SpeedFunction((0, 1), (1,)) for _ in range(n)))

    def check(self, n: int) -> "EatingSchedule":
        if len(self.speeds) != n:
            raise PreconditionError(f"schedule has {len(self.speeds)} speed functions for {n} agents")
        for j, f in enumerate(self.speeds):
            if f.integral() != 1:
                raise PreconditionError(f"speed function of agent {j} integrates to {f.integral()}, not 1")
        return self


@dataclass(frozen=True)
class Round:
    start: Fraction
    end: Fraction
    tops: tuple  # bundle each agent was eating
    rates: tuple
    exhausted: tuple  # items whose supply hit 0 at ``end``


@dataclass(frozen=True)
class EatingRun:
    assignment: FractionalAssignment
    rounds: tuple


def run_eating(instance: Instance, profile: Profile, schedule: EatingSchedule) -> EatingRun:
    schedule.check(instance.num_agents)
    n = instance.num_agents
    supply = {o: ONE for o in instance.all_items}
    shares = [dict.fromkeys(instance.bundles, ZERO) for _ in range(n)]
    rankings = [q.ranking for q in profile.linear]
    # availability only shrinks, so each agent's pointer only moves forward
    pointer = [0] * n
    t = ZERO
    rounds = []
    while any(v > 0 for v in supply.values()):
        if t >= 1:
            raise ConsistencyError(f"supplies left at time 1: {supply}")
        tops = []
        for j in range(n):
            r = rankings[j]
            k = pointer[j]
            while k < len(r) and any(supply[o] == 0 for o in r[k]):
                k += 1
            if k == len(r):
                raise ConsistencyError(f"agent {j} has no available bundle at time {t}")
            pointer[j] = k
            tops.append(r[k])
        rates = [f.rate_at(t) for f in schedule.speeds]
        horizon = min(f.next_breakpoint(t) for f in schedule.speeds)
        load = {}
        for j, x in enumerate(tops):
            if rates[j]:
                for o in x:
                    load[o] = load.get(o, ZERO) + rates[j]
        step = min([supply[o] / c for o, c in load.items()] + [horizon - t])
        for j, x in enumerate(tops):
            shares[j][x] += rates[j] * step
        for o, c in load.items():
            supply[o] -= c * step
        gone = tuple(o for o in load if supply[o] == 0)
        rounds.append(Round(t, t + step, tuple(tops), tuple(rates), gone))
        t += step
    for j in range(n):
        if sum(shares[j].values(), ZERO) != 1:
            raise ConsistencyError(f"agent {j} did not spend its whole speed integral")
    P = FractionalAssignment.from_shares(instance, shares)
    return EatingRun(P, tuple(rounds))


def eating(instance: Instance, profile: Profile, schedule: EatingSchedule) -> FractionalAssignment:
    return run_eating(instance, profile, schedule).assignment


def mps_run(instance: Instance, profile: Profile) -> EatingRun:
    return run_eating(instance, profile, EatingSchedule.constant(instance.num_agents))


def mps(instance: Instance, profile: Profile) -> FractionalAssignment:
    return mps_run(instance, profile).assignment


def speeds_from_assignment(P: FractionalAssignment, profile: Profile) -> EatingSchedule:
    """Speeds under which ``eating`` reproduces P.

    The items are peeled off in rounds (see ``analysis.peel``); with S
    rounds, agent j eats during [(s-1)/S, s/S] at rate S * p_{j,x} when x is
    its favourite bundle among those still built from unpeeled items and x
    contains an item removed in round s.
    """
    from .analysis import peel

    trace = peel(P, profile)
    if not trace.complete:
        raise NotRepresentableError("the assignment admits a generalized cycle")
    inst = P.instance
    S = len(trace.rounds)
    remaining = set(inst.all_items)
    rates = [[] for _ in range(inst.num_agents)]
    for B in trace.rounds:
        for j, q in enumerate(profile.linear):
            x = next(x for x in q.ranking if all(o in remaining for o in x))
            rates[j].append(S * P.share(j, x) if any(o in B for o in x) else ZERO)
        remaining -= set(B)
    bps = tuple(Fraction(s, S) for s in range(S + 1))
    return EatingSchedule(tuple(SpeedFunction(bps, tuple(r)) for r in rates))
