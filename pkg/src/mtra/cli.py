"""Command line front end.

    mtra [--format text|json] [--instance SRC] [--seed N] [--cap N] COMMAND ...

SRC is a path to an instance JSON file, ``-`` for stdin, or ``fixture:ID`` for
one of the built-in worked examples.  Without ``--instance``, ``--seed N``
draws a random instance with lexicographic preferences.

Exit status: 0 when the reported property holds (or the command simply ran),
1 when it fails, and 2 or more for usage and input errors.  Each input error
code has its own status, listed in ``EXIT_CODES``.
"""
from __future__ import annotations

import argparse
import random
import sys

from . import analysis as an
from . import oracles as orc
from .assignment import format_fraction, format_matrix, type_marginal, validate
from .errors import MTRAError
from .fixtures import ALIASES, FIXTURES, run_fixture
from .generators import random_instance, random_profile
from .mechanisms import eating, lexips, mps
from .model import bundle_name
from .serialization import (InvalidAssignmentError, assignment_to_json, dumps,
                            instance_to_json, parse_assignment, parse_instance,
                            parse_speeds, preference_to_json)

EXIT_CODES = {
    "usage": 2,
    "precondition": 2,
    "invalid-assignment": 3,
    "malformed-json": 4,
    "unknown-item": 5,
    "non-square": 6,
    "incomplete-ranking": 7,
    "duplicate-item": 8,
    "malformed-preference": 9,
    "capacity": 10,
    "not-representable": 11,
    "starvation": 12,
    "domain": 13,
    "shape": 13,
    "internal-consistency": 70,
    "error": 2,
}

PROPERTIES = ("sd-efficient", "lexi-efficient", "sd-envyfree", "sd-weak-efficient",
              "sd-weak-envyfree", "iof", "no-generalized-cycle", "decomposable")


class UsageError(MTRAError):
    code = "usage"


# ------------------------------------------------------------ input

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def load_instance(args):
    src = args.instance
    if src is None:
        if args.seed is None:
            raise UsageError("give --instance PATH, --instance fixture:ID or --seed N")
        rng = random.Random(args.seed)
        inst = random_instance(rng, max_agents=3, max_types=2, min_agents=2, min_types=2)
        return inst, random_profile(rng, inst, "lexicographic")
    if src.startswith("fixture:"):
        fid = src[len("fixture:"):]
        fid = ALIASES.get(fid, fid)
        if fid not in FIXTURES:
            raise UsageError(f"unknown fixture {fid!r}; known: {', '.join(FIXTURES)}")
        fx = FIXTURES[fid]
        return fx.instance, fx.profile()
    return parse_instance(_read(src))


def load_assignment(inst, path):
    P = parse_assignment(inst, _read(path))
    bad = validate(P)
    if bad:
        raise InvalidAssignmentError(f"{path}: not a valid assignment", bad)
    return P


def _agent_index(inst, name):
    if name is None:
        return None
    if name in inst.agents:
        return inst.agents.index(name)
    raise UsageError(f"unknown agent {name!r}; agents are {', '.join(inst.agents)}")


# ------------------------------------------------------------ rendering

def _row(row) -> dict:
    return {bundle_name(x): format_fraction(v) for x, v in row.items() if v}


def _decomposition(inst, dec) -> list:
    return [{"weight": format_fraction(w), "bundles": [bundle_name(x) for x in A.bundles]}
            for w, A in dec.terms]


def _tuples(inst, tuples) -> list:
    return [{"better": bundle_name(t.better), "worse": bundle_name(t.worse),
             "agent": inst.agents[t.witness_agent] if t.witness_agent >= 0 else None}
            for t in tuples]


class Report:
    """A JSON-ready document plus its text projection and exit status."""

    def __init__(self, doc: dict, text: list, status: int = 0):
        self.doc = doc
        self.text = text
        self.status = status

    def render(self, fmt: str) -> str:
        return dumps(self.doc) if fmt == "json" else "\n".join(self.text)


def _matrix_text(P) -> list:
    return format_matrix(P).splitlines()


# ------------------------------------------------------------ commands

def cmd_solve(args) -> Report:
    inst, profile = load_instance(args)
    if args.mechanism == "eating":
        if not args.speeds:
            raise UsageError("--mechanism eating needs --speeds FILE")
        P = eating(inst, profile, parse_speeds(inst, _read(args.speeds)))
    elif args.speeds:
        raise UsageError("--speeds only applies to --mechanism eating")
    elif args.mechanism == "lexips":
        P = lexips(inst, profile)
    else:
        P = mps(inst, profile)
    doc = {"command": "solve", "mechanism": args.mechanism, "assignment": assignment_to_json(P)}
    return Report(doc, [f"{args.mechanism} assignment:", *_matrix_text(P)])


def _check(prop, P, profile, cap):
    """(holds, witness document, witness text lines)."""
    inst = P.instance
    agents = inst.agents
    if prop == "sd-efficient" or prop == "lexi-efficient":
        v = (orc.is_sd_efficient if prop == "sd-efficient" else orc.is_lexi_efficient)(P, profile)
        if v:
            return True, None, []
        return False, {"dominating": assignment_to_json(v.witness)}, \
            ["improved by:", *_matrix_text(v.witness)]
    if prop == "sd-weak-efficient":
        v = orc.is_sd_weak_efficient(P, profile)
        if v:
            return True, None, []
        pair, Q = v.witness
        names = [agents[j] for j in pair]
        return False, {"agents": names, "dominating": assignment_to_json(Q)}, \
            [f"agents {names[0]} and {names[1]} can trade to:", *_matrix_text(Q)]
    if prop in ("sd-envyfree", "sd-weak-envyfree"):
        v = (an.is_sd_envy_free if prop == "sd-envyfree" else orc.is_sd_weak_envy_free)(P, profile)
        if v:
            return True, None, []
        j, k = v.witness
        return False, {"envious": agents[j], "envied": agents[k]}, \
            [f"agent {agents[j]} envies agent {agents[k]}"]
    if prop == "iof":
        v = an.is_itemwise_ordinal_fair(P, profile)
        if v:
            return True, None, []
        bad = [{"agent": agents[j], "bundle": bundle_name(x)} for j, x in v.witness]
        return False, {"unfair": bad}, [f"agent {b['agent']} on {b['bundle']}" for b in bad]
    if prop == "no-generalized-cycle":
        cyc = an.has_generalized_cycle(P, profile)
        trace = an.peel(P, profile)
        rounds = [list(r) for r in trace.rounds]
        if cyc is None:
            return True, {"rounds": rounds}, [f"peeling rounds: {rounds}"]
        doc = {"rounds": rounds, "residual_items": list(trace.residual_items),
               "cycle": _tuples(inst, cyc)}
        try:
            doc["minimal_cycles"] = [[{"better": bundle_name(a), "worse": bundle_name(b)} for a, b in c]
                                     for c in an.minimal_generalized_cycles(P, profile)]
        except ValueError:
            pass
        return False, doc, [f"generalized cycle on items {list(trace.residual_items)}:",
                            *(f"  ({t['better']}, {t['worse']}) via agent {t['agent']}" for t in doc["cycle"])]
    if prop == "decomposable":
        dec = orc.is_decomposable(P, cap=cap or orc.DISCRETE_CAP)
        if dec is None:
            return False, None, ["no convex combination of discrete assignments gives P"]
        terms = _decomposition(inst, dec)
        return True, {"decomposition": terms}, \
            [f"{t['weight']} x {' '.join(t['bundles'])}" for t in terms]
    raise UsageError(f"unknown property {prop!r}")


def cmd_check(args) -> Report:
    inst, profile = load_instance(args)
    P = load_assignment(inst, args.assignment)
    holds, witness, lines = _check(args.property, P, profile, args.cap)
    doc = {"command": "check", "property": args.property, "holds": holds, "witness": witness}
    return Report(doc, [f"{args.property}: {'true' if holds else 'false'}", *lines], 0 if holds else 1)


def cmd_audit(args) -> Report:
    inst, profile = load_instance(args)
    klass = args.misreport_class or ("all-linear" if args.mechanism == "mps" else "lexicographic")
    agent = _agent_index(inst, args.agent)
    rep = orc.audit_strategyproofness(args.mechanism, inst, profile, agent, klass, args.cap)
    viol = []
    text = [f"{rep.mechanism} audit, class {klass}: {rep.checked} misreports checked, "
            f"{len(rep.violations)} violations"]
    for v in rep.violations:
        viol.append({
            "agent": inst.agents[v.agent],
            "misreport": preference_to_json(inst, v.misreport),
            "truthful": _row(v.truthful),
            "manipulated": _row(v.manipulated),
            "truthful_cumulative": [format_fraction(c) for c in v.truthful_cumulative],
            "manipulated_cumulative": [format_fraction(c) for c in v.manipulated_cumulative],
            "assignment": assignment_to_json(v.manipulated_assignment),
        })
        lie = v.misreport
        desc = (" > ".join(bundle_name(x) for x in lie.ranking) if hasattr(lie, "ranking")
                else lie.describe(inst))
        text += [f"agent {inst.agents[v.agent]} reports {desc}:", *_matrix_text(v.manipulated_assignment)]
    doc = {"command": "audit", "mechanism": rep.mechanism, "class": klass,
           "agents": [inst.agents[j] for j in rep.agents], "checked": rep.checked,
           "violations": viol}
    return Report(doc, text, 0 if rep.ok else 1)


def cmd_decompose(args) -> Report:
    inst, _ = load_instance(args)
    P = load_assignment(inst, args.assignment)
    doc = {"command": "decompose", "method": args.method}
    if args.method == "lp":
        dec = orc.is_decomposable(P, cap=args.cap or orc.DISCRETE_CAP)
        if dec is None:
            doc.update(decomposable=False, decomposition=None)
            return Report(doc, ["not decomposable"], 1)
    else:
        per_type = [orc.birkhoff_decompose(type_marginal(P, i)) for i in range(inst.num_types)]
        doc["per_type"] = [[{"weight": format_fraction(w), "permutation": list(perm)} for w, perm in d.terms]
                           for d in per_type]
        dec = orc.product_decomposition(inst, per_type)
        if dec.recompose(inst) != P:
            doc.update(decomposable=None, decomposition=None)
            return Report(doc, ["P is not the product of its per-type marginals"], 1)
    terms = _decomposition(inst, dec)
    doc.update(decomposable=True, decomposition=terms)
    return Report(doc, [f"{t['weight']} x {' '.join(t['bundles'])}" for t in terms])


def cmd_leximin(args) -> Report:
    inst, profile = load_instance(args)
    if args.assignment:
        P = load_assignment(inst, args.assignment)
    else:
        P = orc.leximin_optimal_assignment(inst, profile)
    vec = an.leximin_vector(P, profile)
    doc = {"command": "leximin", "assignment": assignment_to_json(P),
           "sorted": [format_fraction(v) for v in vec.sorted],
           "entries": [{"agent": inst.agents[j], "bundle": bundle_name(x), "value": format_fraction(v)}
                       for j, x, v in vec.entries]}
    text = ([] if args.assignment else ["leximin-optimal assignment:", *_matrix_text(P)])
    text.append("sorted vector: (" + ", ".join(format_fraction(v) for v in vec.sorted) + ")")
    if args.against:
        Q = (orc.leximin_optimal_assignment(inst, profile) if args.against == "optimal"
             else load_assignment(inst, args.against))
        other = an.leximin_vector(Q, profile)
        c = an.leximin_compare(vec, other)
        doc["against"] = {"sorted": [format_fraction(v) for v in other.sorted], "compare": c}
        text.append("against: (" + ", ".join(format_fraction(v) for v in other.sorted) + ")")
        text.append({1: "better", 0: "equal", -1: "worse"}[c])
    return Report(doc, text)


def cmd_paper(args) -> Report:
    ids = list(FIXTURES) if args.fixture == "all" else [args.fixture]
    results, text, ok = [], [], True
    for fid in ids:
        try:
            checks = run_fixture(fid)
        except KeyError:
            raise UsageError(f"unknown fixture {fid!r}; known: all, {', '.join(FIXTURES)}") from None
        for c in checks:
            ok &= c.passed
            results.append({"fixture": fid, "check": c.label, "passed": c.passed, "detail": c.detail})
            text.append(f"{'PASS' if c.passed else 'FAIL'} [{fid}] {c.label}"
                        + (f" ({c.detail})" if c.detail else ""))
    passed = sum(r["passed"] for r in results)
    text.append(f"{passed}/{len(results)} checks passed")
    return Report({"command": "paper", "fixtures": ids, "checks": results, "passed": ok}, text, 0 if ok else 1)


def cmd_dump(args) -> Report:
    _, profile = load_instance(args)
    doc = instance_to_json(profile)
    return Report(doc, dumps(doc).splitlines())


# ------------------------------------------------------------ parser

def _globals(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--instance", metavar="SRC", default=d(None),
                        help="instance file, '-' for stdin, or fixture:ID")
    parser.add_argument("--seed", type=int, default=d(None), help="draw a random instance")
    parser.add_argument("--cap", type=int, default=d(None), help="override oracle enumeration caps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mtra", description="Exact multi-type resource allocation toolkit.")
    _globals(ap, False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _globals(p, True)
        p.set_defaults(func=func)
        return p

    p = add("solve", cmd_solve, "run a mechanism")
    p.add_argument("--mechanism", choices=("mps", "lexips", "eating"), required=True)
    p.add_argument("--speeds", metavar="FILE")

    p = add("check", cmd_check, "test a property of an assignment")
    p.add_argument("--property", choices=PROPERTIES, required=True)
    p.add_argument("--assignment", metavar="FILE", required=True)

    p = add("audit", cmd_audit, "search for profitable misreports")
    p.add_argument("--mechanism", choices=tuple(orc.MECHANISMS), required=True)
    p.add_argument("--agent", help="agent name (default: every agent)")
    p.add_argument("--class", dest="misreport_class", choices=orc.MISREPORT_CLASSES)

    p = add("decompose", cmd_decompose, "write an assignment as a lottery over discrete ones")
    p.add_argument("--assignment", metavar="FILE", required=True)
    p.add_argument("--method", choices=("lp", "product"), default="lp")

    p = add("leximin", cmd_leximin, "leximin vectors, comparison and the optimal assignment")
    p.add_argument("--assignment", metavar="FILE")
    p.add_argument("--against", metavar="FILE", help="assignment file, or 'optimal'")

    p = add("paper", cmd_paper, "replay a worked example")
    p.add_argument("--fixture", required=True, help="fixture id or 'all'")

    add("dump", cmd_dump, "print the loaded instance as JSON")
    return ap


def _error(args_format, e: MTRAError, out, err) -> int:
    code = getattr(e, "code", "error")
    status = EXIT_CODES.get(code, 2)
    doc = {"error": {"code": code, "message": str(e)}}
    lines = [f"mtra: {code}: {e}"]
    viol = getattr(e, "violations", None)
    if viol:
        doc["error"]["violations"] = [{"kind": v.kind, "where": v.where, "deficit": format_fraction(v.deficit)}
                                      for v in viol]
        lines += [f"  {v.kind} constraint violated at {v.where}: deficit {format_fraction(v.deficit)}"
                  for v in viol]
    if args_format == "json":
        print(dumps(doc), file=out)
    print("\n".join(lines), file=err)
    return status


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except MTRAError as e:
        return _error(args.format, e, out, err)
    print(report.render(args.format), file=out)
    return report.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
