"""Seeded random instances, profiles and assignments for property checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .assignment import ZERO, FractionalAssignment
from .model import Instance, LexicographicPreference, LinearPreference, Profile


def random_instance(rng: random.Random, max_agents: int = 3, max_types: int = 3,
                    min_agents: int = 1, min_types: int = 1, types: int | None = None) -> Instance:
    n = rng.randint(min_agents, max_agents)
    p = types if types is not None else rng.randint(min_types, max_types)
    names = "FBTHCD"[:p]
    return Instance(tuple(names), tuple(tuple(f"{k}_{t}" for k in range(1, n + 1)) for t in names))


def random_linear(rng: random.Random, instance: Instance) -> LinearPreference:
    r = list(instance.bundles)
    rng.shuffle(r)
    return LinearPreference(tuple(r))


def random_lexicographic(rng: random.Random, instance: Instance) -> LexicographicPreference:
    imp = list(range(instance.num_types))
    rng.shuffle(imp)
    orders = []
    for d in instance.items:
        d = list(d)
        rng.shuffle(d)
        orders.append(tuple(d))
    return LexicographicPreference(tuple(imp), tuple(orders))


def random_profile(rng: random.Random, instance: Instance, kind: str = "linear") -> Profile:
    make = random_lexicographic if kind == "lexicographic" else random_linear
    return Profile(instance, tuple(make(rng, instance) for _ in range(instance.num_agents)))


def random_row(rng: random.Random, size: int, denominator: int = 12) -> list:
    cuts = sorted(rng.randint(0, denominator) for _ in range(size - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    return [Fraction(v, denominator) for v in parts]


def random_discrete_mixture(rng: random.Random, instance: Instance, terms: int = 3,
                            denominator: int = 12) -> FractionalAssignment:
    """Random valid assignment: a random lottery over random discrete assignments."""
    n = instance.num_agents
    weights = [w for w in random_row(rng, terms, denominator)]
    acc = [dict.fromkeys(instance.bundles, ZERO) for _ in range(n)]
    for w in weights:
        perms = []
        for _ in instance.items:
            perm = list(range(n))
            rng.shuffle(perm)
            perms.append(perm)
        for j in range(n):
            x = tuple(instance.items[i][perms[i][j]] for i in range(instance.num_types))
            acc[j][x] += w
    return FractionalAssignment.from_shares(instance, acc)


def perturb(rng: random.Random, P: FractionalAssignment, denominator: int = 24) -> FractionalAssignment:
    """Mix P with a random discrete lottery; the result is valid and usually differs."""
    other = random_discrete_mixture(rng, P.instance, terms=rng.randint(1, 3))
    lam = Fraction(rng.randint(1, denominator), denominator)
    rows = [[(1 - lam) * a + lam * b for a, b in zip(r, s)] for r, s in zip(P.matrix, other.matrix)]
    return P.with_rows(rows)
