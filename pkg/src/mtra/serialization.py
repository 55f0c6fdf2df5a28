"""JSON formats for instances, assignments and speed schedules.

Rationals are written as "num/den" strings so files round-trip exactly.
Parse failures raise ``MTRAError`` subclasses whose message names the field.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .assignment import FractionalAssignment, format_fraction
from .errors import (DuplicateItemError, IncompleteRankingError,
                     MalformedPreferenceError, MTRAError, NonSquareError,
                     UnknownItemError)
from .mechanisms import EatingSchedule, SpeedFunction
from .model import (Instance, LexicographicPreference, LinearPreference,
                    Profile)


class MalformedJSONError(MTRAError):
    code = "malformed-json"


class InvalidAssignmentError(MTRAError):
    code = "invalid-assignment"

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


def _load(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJSONError(f"{what}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _require(obj, key, kind, path):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedJSONError(f"{path}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise MalformedJSONError(f"{path}.{key}: expected {kind.__name__}")
    return val


def parse_instance(text: str):
    """Parse an instance document into ``(Instance, Profile)``."""
    doc = _load(text, "instance")
    types = _require(doc, "types", list, "$")
    agents = _require(doc, "agents", list, "$")
    names, items = [], []
    for i, t in enumerate(types):
        names.append(_require(t, "name", str, f"$.types[{i}]"))
        its = _require(t, "items", list, f"$.types[{i}]")
        if not all(isinstance(o, str) for o in its):
            raise MalformedJSONError(f"$.types[{i}].items: item identifiers must be strings")
        items.append(tuple(its))
    agent_names = [_require(a, "name", str, f"$.agents[{j}]") for j, a in enumerate(agents)]
    for i, d in enumerate(items):
        if len(d) != len(agents):
            raise NonSquareError(
                f"$.types[{i}].items: type {names[i]} has {len(d)} items but there are {len(agents)} agents")
    try:
        inst = Instance(tuple(names), tuple(items), tuple(agent_names))
    except DuplicateItemError as e:
        raise DuplicateItemError(f"$.types: {e}") from None
    prefs = []
    for j, a in enumerate(agents):
        path = f"$.agents[{j}].preference"
        spec = _require(a, "preference", dict, f"$.agents[{j}]")
        kind = spec.get("kind")
        try:
            if kind == "linear":
                prefs.append(_parse_linear(inst, _require(spec, "ranking", list, path), path))
            elif kind == "lexicographic":
                prefs.append(_parse_lexicographic(inst, spec, path))
            else:
                raise MalformedPreferenceError(f"{path}.kind: expected 'linear' or 'lexicographic'")
        except MalformedJSONError:
            raise
        except MTRAError as e:
            msg = str(e)
            raise type(e)(msg if msg.startswith(path) else f"{path}: {msg}") from None
    return inst, Profile(inst, tuple(prefs))


def _parse_linear(inst: Instance, ranking, path) -> LinearPreference:
    out = []
    for r, entry in enumerate(ranking):
        if not isinstance(entry, list) or not all(isinstance(o, str) for o in entry):
            raise MalformedJSONError(f"{path}.ranking[{r}]: a bundle is a list of item identifiers")
        for o in entry:
            if o not in inst.type_of:
                raise UnknownItemError(f"{path}.ranking[{r}]: unknown item {o!r}")
        by_type = sorted(entry, key=lambda o: inst.type_of[o])
        if [inst.type_of[o] for o in by_type] != list(range(inst.num_types)):
            raise MalformedPreferenceError(f"{path}.ranking[{r}]: need exactly one item of each type")
        out.append(tuple(by_type))
    if len(set(out)) != len(out):
        raise IncompleteRankingError(f"{path}.ranking: a bundle is listed twice")
    if len(out) != len(inst.bundles):
        raise IncompleteRankingError(
            f"{path}.ranking: {len(out)} bundles ranked, expected all {len(inst.bundles)}")
    return LinearPreference(tuple(out))


def _parse_lexicographic(inst: Instance, spec, path) -> LexicographicPreference:
    importance = _require(spec, "importance", list, path)
    orders = _require(spec, "orders", dict, path)
    for t in importance:
        if t not in inst.types:
            raise MalformedPreferenceError(f"{path}.importance: unknown type {t!r}")
    if sorted(importance) != sorted(inst.types):
        raise IncompleteRankingError(f"{path}.importance: must list every type exactly once")
    per = []
    for i, t in enumerate(inst.types):
        if t not in orders or not isinstance(orders[t], list):
            raise IncompleteRankingError(f"{path}.orders: no item order for type {t!r}")
        for o in orders[t]:
            if o not in inst.type_of:
                raise UnknownItemError(f"{path}.orders.{t}: unknown item {o!r}")
            if inst.type_of[o] != i:
                raise MalformedPreferenceError(f"{path}.orders.{t}: item {o!r} belongs to another type")
        if sorted(orders[t]) != sorted(inst.items[i]):
            raise IncompleteRankingError(f"{path}.orders.{t}: must rank every item of the type exactly once")
        per.append(tuple(orders[t]))
    return LexicographicPreference(tuple(inst.types.index(t) for t in importance), tuple(per)).check(inst)


def preference_to_json(instance: Instance, pref) -> dict:
    if isinstance(pref, LexicographicPreference):
        return {"kind": "lexicographic",
                "importance": [instance.types[i] for i in pref.importance],
                "orders": {t: list(pref.orders[i]) for i, t in enumerate(instance.types)}}
    return {"kind": "linear", "ranking": [list(x) for x in pref.ranking]}


def instance_to_json(profile: Profile) -> dict:
    inst = profile.instance
    return {"types": [{"name": t, "items": list(d)} for t, d in zip(inst.types, inst.items)],
            "agents": [{"name": a, "preference": preference_to_json(inst, q)}
                       for a, q in zip(inst.agents, profile.prefs)]}


def _fraction(v, path) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise InvalidAssignmentError(f"{path}: expected a 'num/den' string")
    try:
        return Fraction(v.strip()) if isinstance(v, str) else Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise InvalidAssignmentError(f"{path}: cannot read {v!r} as a rational") from None


def matrix_from_json(instance: Instance, doc, path="$") -> FractionalAssignment:
    rows = doc.get("matrix") if isinstance(doc, dict) else None
    if not isinstance(rows, list):
        raise InvalidAssignmentError(f"{path}: expected an object with a 'matrix' field")
    m = len(instance.bundles)
    if len(rows) != instance.num_agents or any(not isinstance(r, list) or len(r) != m for r in rows):
        raise InvalidAssignmentError(
            f"{path}.matrix: expected {instance.num_agents} rows of {m} entries (one per bundle)")
    return FractionalAssignment(instance, tuple(
        tuple(_fraction(v, f"{path}.matrix[{j}][{k}]") for k, v in enumerate(r)) for j, r in enumerate(rows)))


def parse_assignment(instance: Instance, text: str) -> FractionalAssignment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidAssignmentError(f"assignment: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return matrix_from_json(instance, doc)


def assignment_to_json(P: FractionalAssignment) -> dict:
    inst = P.instance
    return {"agents": list(inst.agents),
            "bundles": ["".join(x) for x in inst.bundles],
            "matrix": [[format_fraction(v) for v in r] for r in P.matrix]}


def parse_speeds(instance: Instance, text: str) -> EatingSchedule:
    doc = _load(text, "speeds")
    entries = _require(doc, "speeds", list, "$")
    if len(entries) != instance.num_agents:
        raise MalformedJSONError(f"$.speeds: expected {instance.num_agents} entries, got {len(entries)}")
    funcs = []
    for j, e in enumerate(entries):
        bps = _require(e, "breakpoints", list, f"$.speeds[{j}]")
        rates = _require(e, "rates", list, f"$.speeds[{j}]")
        try:
            funcs.append(SpeedFunction(tuple(Fraction(str(b)) for b in bps), tuple(Fraction(str(r)) for r in rates)))
        except (ValueError, ZeroDivisionError):
            raise MalformedJSONError(f"$.speeds[{j}]: breakpoints and rates must be 'num/den' strings") from None
    return EatingSchedule(tuple(funcs))


def speeds_to_json(schedule: EatingSchedule) -> dict:
    return {"speeds": [{"breakpoints": [format_fraction(b) for b in f.breakpoints],
                        "rates": [format_fraction(r) for r in f.rates]} for f in schedule.speeds]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
