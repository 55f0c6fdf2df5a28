"""Instances, bundles and preferences for multi-type resource allocation.

An instance has ``n`` agents and ``p`` item types, and each type holds exactly
``n`` items with one unit of supply each.  A bundle picks one item of every
type, so there are ``n ** p`` bundles.  They are always listed in the same
canonical order (type-major, items in declaration order), which fixes the
column order of every assignment matrix.

>>> inst = Instance(types=("F", "B"), items=(("1_F", "2_F"), ("1_B", "2_B")))
>>> [bundle_name(x) for x in enumerate_bundles(inst)]
['1_F1_B', '1_F2_B', '2_F1_B', '2_F2_B']
>>> pref = lexicographic(inst, ["F", "B"], {"F": ["1_F", "2_F"], "B": ["2_B", "1_B"]})
>>> [bundle_name(x) for x in expand_lexicographic(pref, inst).ranking]
['1_F2_B', '1_F1_B', '2_F2_B', '2_F1_B']
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence, Union

from .errors import (DomainError, DuplicateItemError, IncompleteRankingError,
                     MalformedPreferenceError, NonSquareError, UnknownItemError)

Bundle = tuple  # one item identifier per type, ordered by type index


def bundle_name(x: Bundle) -> str:
    return "".join(x)


@dataclass(frozen=True)
class Instance:
    types: tuple
    items: tuple
    agents: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "items", tuple(tuple(d) for d in self.items))
        if len(self.types) == 0 or len(self.types) != len(self.items):
            raise NonSquareError("need one item list per type and at least one type")
        n = len(self.items[0])
        if not self.agents:
            object.__setattr__(self, "agents", tuple(str(j + 1) for j in range(n)))
        object.__setattr__(self, "agents", tuple(self.agents))
        if n == 0 or len(self.agents) != n:
            raise NonSquareError(f"{len(self.agents)} agents but type {self.types[0]} has {n} items")
        for t, d in zip(self.types, self.items):
            if len(d) != n:
                raise NonSquareError(f"type {t} has {len(d)} items, expected {n}")
        if len(set(self.types)) != len(self.types):
            raise DuplicateItemError("duplicate type name")
        seen = set()
        for d in self.items:
            for o in d:
                if o in seen:
                    raise DuplicateItemError(f"item {o} listed twice")
                seen.add(o)

    @property
    def num_agents(self) -> int:
        return len(self.agents)

    @property
    def num_types(self) -> int:
        return len(self.types)

    @cached_property
    def bundles(self) -> tuple:
        return tuple(itertools.product(*self.items))

    @cached_property
    def bundle_index(self) -> dict:
        return {x: k for k, x in enumerate(self.bundles)}

    @cached_property
    def type_of(self) -> dict:
        return {o: i for i, d in enumerate(self.items) for o in d}

    @cached_property
    def all_items(self) -> tuple:
        return tuple(o for d in self.items for o in d)

    def type_index(self, name: str) -> int:
        try:
            return self.types.index(name)
        except ValueError:
            raise DomainError(f"unknown type {name!r}") from None

    def check_bundle(self, x: Bundle) -> Bundle:
        x = tuple(x)
        if x not in self.bundle_index:
            raise DomainError(f"{x!r} is not a bundle of this instance")
        return x


def enumerate_bundles(instance: Instance) -> list:
    return list(instance.bundles)


@dataclass(frozen=True)
class LinearPreference:
    """Strict order over bundles, most preferred first."""
    ranking: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(tuple(x) for x in self.ranking))

    @cached_property
    def rank(self) -> dict:
        return {x: r for r, x in enumerate(self.ranking)}

    def prefers(self, x: Bundle, y: Bundle) -> bool:
        return self.rank[x] < self.rank[y]

    def check(self, instance: Instance) -> "LinearPreference":
        for x in self.ranking:
            if len(x) != instance.num_types:
                raise MalformedPreferenceError(f"bundle {x!r} has wrong arity")
            for o in x:
                if o not in instance.type_of:
                    raise UnknownItemError(f"unknown item {o!r}")
            if [instance.type_of[o] for o in x] != list(range(instance.num_types)):
                raise MalformedPreferenceError(f"bundle {x!r} does not list one item per type in type order")
        if len(set(self.ranking)) != len(self.ranking):
            raise IncompleteRankingError("ranking lists a bundle twice")
        if len(self.ranking) != len(instance.bundles):
            raise IncompleteRankingError(
                f"ranking has {len(self.ranking)} bundles, expected {len(instance.bundles)}")
        return self


@dataclass(frozen=True)
class LexicographicPreference:
    """Importance order over type indices plus one item order per type.

    ``orders[i]`` ranks the items of type ``i`` (by type index, not by
    importance position).
    """
    importance: tuple
    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "importance", tuple(self.importance))
        object.__setattr__(self, "orders", tuple(tuple(o) for o in self.orders))

    def check(self, instance: Instance) -> "LexicographicPreference":
        p = instance.num_types
        if sorted(self.importance) != list(range(p)):
            raise MalformedPreferenceError("importance order must be a permutation of the types")
        if len(self.orders) != p:
            raise MalformedPreferenceError("need one item order per type")
        for i, order in enumerate(self.orders):
            for o in order:
                if o not in instance.type_of:
                    raise UnknownItemError(f"unknown item {o!r}")
            if sorted(order) != sorted(instance.items[i]) or len(order) != len(instance.items[i]):
                raise IncompleteRankingError(
                    f"order for type {instance.types[i]} is not a permutation of its items")
        return self

    def describe(self, instance: Instance) -> str:
        imp = ">".join(instance.types[i] for i in self.importance)
        per = "; ".join(f"{instance.types[i]}: {'>'.join(self.orders[i])}" for i in range(len(self.orders)))
        return f"{imp} | {per}"


Preference = Union[LinearPreference, LexicographicPreference]


def lexicographic(instance: Instance, importance: Sequence[str], orders: Mapping[str, Sequence[str]]
                  ) -> LexicographicPreference:
    """Build a lexicographic preference from type names."""
    imp = tuple(instance.type_index(t) for t in importance)
    missing = [t for t in instance.types if t not in orders]
    if missing:
        raise MalformedPreferenceError(f"no item order for type(s) {missing}")
    per = tuple(tuple(orders[t]) for t in instance.types)
    return LexicographicPreference(imp, per).check(instance)


def linear(instance: Instance, ranking: Sequence[Sequence[str]]) -> LinearPreference:
    return LinearPreference(tuple(tuple(x) for x in ranking)).check(instance)


def expand_lexicographic(pref: LexicographicPreference, instance: Instance) -> LinearPreference:
    pref.check(instance)
    pos = [{o: r for r, o in enumerate(order)} for order in pref.orders]

    def key(x):
        return tuple(pos[i][x[i]] for i in pref.importance)

    return LinearPreference(tuple(sorted(instance.bundles, key=key)))


def recognize_lexicographic(pref: LinearPreference, instance: Instance):
    """Return the lexicographic representation of ``pref`` or None.

    Per-type orders are read off from the order in which items of that type
    first show up along the ranking; each candidate importance order is then
    expanded and compared against the input.
    """
    pref.check(instance)
    p = instance.num_types
    orders = []
    for i in range(p):
        seen = []
        for x in pref.ranking:
            if x[i] not in seen:
                seen.append(x[i])
        orders.append(tuple(seen))
    for importance in itertools.permutations(range(p)):
        cand = LexicographicPreference(importance, tuple(orders))
        if expand_lexicographic(cand, instance).ranking == pref.ranking:
            return cand
    return None


def upper_contour_set(pref: LinearPreference, x: Bundle) -> frozenset:
    if x not in pref.rank:
        raise DomainError(f"{x!r} is not ranked by this preference")
    return frozenset(pref.ranking[: pref.rank[x] + 1])


@dataclass(frozen=True)
class Profile:
    instance: Instance
    prefs: tuple
    linear: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        prefs = tuple(self.prefs)
        object.__setattr__(self, "prefs", prefs)
        if len(prefs) != self.instance.num_agents:
            raise MalformedPreferenceError(
                f"{len(prefs)} preferences for {self.instance.num_agents} agents")
        lin = []
        for q in prefs:
            if isinstance(q, LexicographicPreference):
                lin.append(expand_lexicographic(q, self.instance))
            elif isinstance(q, LinearPreference):
                lin.append(q.check(self.instance))
            else:
                raise MalformedPreferenceError(f"unsupported preference {q!r}")
        object.__setattr__(self, "linear", tuple(lin))

    @property
    def all_lexicographic(self) -> bool:
        return all(isinstance(q, LexicographicPreference) for q in self.prefs)

    def __len__(self):
        return len(self.prefs)

    def lexicographic_form(self, j: int):
        """Agent ``j``'s preference as a LexicographicPreference, or None."""
        q = self.prefs[j]
        if isinstance(q, LexicographicPreference):
            return q
        return recognize_lexicographic(q, self.instance)

    def replace(self, j: int, pref: Preference) -> "Profile":
        prefs = list(self.prefs)
        prefs[j] = pref
        return Profile(self.instance, tuple(prefs))
