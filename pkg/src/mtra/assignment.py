"""Fractional and discrete assignments with exact rational entries.

Rows are agents, columns are bundles in the instance's canonical order.
Entries are ``fractions.Fraction`` throughout; nothing here ever touches a
float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DomainError, ShapeError
from .model import Bundle, Instance

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'num/den' string")
    return Fraction(v)


@dataclass(frozen=True)
class FractionalAssignment:
    instance: Instance
    matrix: tuple

    def __post_init__(self):
        inst = self.instance
        rows = tuple(tuple(as_fraction(v) for v in row) for row in self.matrix)
        if len(rows) != inst.num_agents or any(len(r) != len(inst.bundles) for r in rows):
            raise ShapeError(
                f"expected a {inst.num_agents} x {len(inst.bundles)} matrix")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_shares(cls, instance: Instance, shares: Sequence[dict]) -> "FractionalAssignment":
        """Build from one ``{bundle: share}`` dict per agent; missing bundles are 0."""
        for d in shares:
            for x in d:
                instance.check_bundle(x)
        return cls(instance, tuple(tuple(d.get(x, ZERO) for x in instance.bundles) for d in shares))

    @classmethod
    def zeros(cls, instance: Instance) -> "FractionalAssignment":
        return cls(instance, ((ZERO,) * len(instance.bundles),) * instance.num_agents)

    @cached_property
    def rows(self) -> tuple:
        """Per-agent ``{bundle: share}`` dicts (all bundles present)."""
        return tuple(dict(zip(self.instance.bundles, r)) for r in self.matrix)

    def row(self, j: int) -> dict:
        return self.rows[j]

    def share(self, j: int, x: Bundle) -> Fraction:
        return self.matrix[j][self.instance.bundle_index[x]]

    def support(self, j: int) -> list:
        return [x for x, v in self.rows[j].items() if v]

    def with_rows(self, rows: Sequence[Sequence]) -> "FractionalAssignment":
        return FractionalAssignment(self.instance, tuple(tuple(r) for r in rows))

    def __str__(self):
        return format_matrix(self)


@dataclass(frozen=True)
class Violation:
    kind: str  # "row" or "item" or "negative"
    where: str
    deficit: Fraction  # 1 - actual sum (for negative entries: the entry itself)


def validate(P: FractionalAssignment, instance: Instance | None = None) -> list:
    """List every violated constraint; an empty list means P is valid."""
    inst = instance or P.instance
    if instance is not None and (len(P.matrix) != inst.num_agents
                                 or any(len(r) != len(inst.bundles) for r in P.matrix)):
        raise ShapeError("assignment dimensions do not match the instance")
    out = []
    for j, row in enumerate(P.matrix):
        for x, v in zip(inst.bundles, row):
            if v < 0:
                out.append(Violation("negative", f"agent {inst.agents[j]} bundle {''.join(x)}", v))
    for j, row in enumerate(P.matrix):
        s = sum(row, ZERO)
        if s != 1:
            out.append(Violation("row", f"agent {inst.agents[j]}", ONE - s))
    totals = item_totals(P)
    for o in inst.all_items:
        if totals[o] != 1:
            out.append(Violation("item", f"item {o}", ONE - totals[o]))
    return out


def is_valid(P: FractionalAssignment) -> bool:
    return not validate(P)


def item_totals(P: FractionalAssignment) -> dict:
    inst = P.instance
    totals = {o: ZERO for o in inst.all_items}
    for row in P.matrix:
        for x, v in zip(inst.bundles, row):
            if v:
                for o in x:
                    totals[o] += v
    return totals


def type_marginal(P: FractionalAssignment, i: int) -> tuple:
    """n x n matrix: entry (j, o) is agent j's total share of bundles containing o."""
    inst = P.instance
    col = {o: k for k, o in enumerate(inst.items[i])}
    out = []
    for row in P.matrix:
        acc = [ZERO] * inst.num_agents
        for x, v in zip(inst.bundles, row):
            acc[col[x[i]]] += v
        out.append(tuple(acc))
    return tuple(out)


def is_doubly_stochastic(M: Sequence[Sequence]) -> bool:
    n = len(M)
    if any(len(r) != n for r in M):
        return False
    if any(v < 0 for r in M for v in r):
        return False
    return all(sum(r, ZERO) == 1 for r in M) and all(
        sum((M[j][k] for j in range(n)), ZERO) == 1 for k in range(n))


def product_compose(instance: Instance, marginals: Sequence[Sequence[Sequence]]) -> FractionalAssignment:
    """p_{j,x} = product over types of the agent's share of x's item of that type."""
    if len(marginals) != instance.num_types:
        raise ShapeError("need one marginal matrix per type")
    cols = [{o: k for k, o in enumerate(d)} for d in instance.items]
    rows = []
    for j in range(instance.num_agents):
        row = []
        for x in instance.bundles:
            v = ONE
            for i, o in enumerate(x):
                v *= as_fraction(marginals[i][j][cols[i][o]])
                if not v:
                    break
            row.append(v)
        rows.append(tuple(row))
    return FractionalAssignment(instance, tuple(rows))


@dataclass(frozen=True)
class DiscreteAssignment:
    """Agent j receives ``bundles[j]`` in full."""
    instance: Instance
    bundles: tuple

    def __post_init__(self):
        inst = self.instance
        bs = tuple(inst.check_bundle(x) for x in self.bundles)
        object.__setattr__(self, "bundles", bs)
        if len(bs) != inst.num_agents:
            raise ShapeError("need one bundle per agent")
        used = [o for x in bs for o in x]
        if len(set(used)) != len(used):
            raise DomainError("an item is assigned twice")

    @classmethod
    def from_permutations(cls, instance: Instance, perms: Sequence[Sequence[int]]) -> "DiscreteAssignment":
        """``perms[i][j]`` is the index (within type i) of the item agent j gets."""
        return cls(instance, tuple(
            tuple(instance.items[i][perms[i][j]] for i in range(instance.num_types))
            for j in range(instance.num_agents)))

    def to_fractional(self) -> FractionalAssignment:
        return FractionalAssignment.from_shares(self.instance, [{x: ONE} for x in self.bundles])

    def matrix(self) -> tuple:
        return self.to_fractional().matrix


def format_fraction(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a 'num/den' string, got {s!r}")
    return Fraction(s.strip())


def format_matrix(P: FractionalAssignment, skip_zero_columns: bool = False) -> str:
    inst = P.instance
    cols = list(range(len(inst.bundles)))
    if skip_zero_columns:
        cols = [k for k in cols if any(r[k] for r in P.matrix)]
    head = ["agent"] + ["".join(inst.bundles[k]) for k in cols]
    body = [[inst.agents[j]] + [format_fraction(P.matrix[j][k]) if P.matrix[j][k] else "0" for k in cols]
            for j in range(inst.num_agents)]
    widths = [max(len(r[c]) for r in [head] + body) for c in range(len(head))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [head] + body)
