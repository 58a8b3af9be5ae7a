"""Command-line front end.

Exit codes: 0 success, 1 domain error (error class name on stderr),
2 malformed input file or arguments.
"""

from __future__ import annotations

import argparse
import sys

from cogmath import counting, knowledge, logic, markov, order
from cogmath.errors import CogmathError, ScenarioFormatError
from cogmath.scenario import Scenario, load


def _need(value, section):
    if value is None or value == ():
        raise ScenarioFormatError(f"file has no '{section}' section")
    return value


def observed_facts(s: Scenario) -> list[logic.Fact]:
    """What can be read off the objects themselves: char(x, name) for every
    characteristic x carries, and member(x, S) true when x carries S's
    defining characteristics and false otherwise."""
    facts = []
    for x in s.objects:
        facts.extend(logic.Fact(logic.char(x.id, c.name), True) for c in x.characteristics)
        species = knowledge.classify(x, list(s.templates))
        for t in s.templates:
            facts.append(logic.Fact(logic.member(x.id, t.species_id), t.species_id == species))
    return facts


def cmd_classify(args, out):
    s = load(args.file)
    objects = list(_need(s.objects, "objects"))
    templates = list(_need(s.templates, "templates"))
    part = knowledge.partition(objects, templates)
    for species, members in part.blocks.items():
        out.append(f"block\t{species}\t{','.join(sorted(members))}")
    out.append(f"unclassified\t{','.join(sorted(part.unclassified))}")
    for t in templates:
        rep = knowledge.verify_equivalence(objects, t)
        status = "pass" if rep.passed else "fail"
        out.append(f"equivalence\t{t.species_id}\t{status}\tmembers={len(rep.members)}")
        for ce in rep.counterexamples:
            out.append(f"counterexample\t{t.species_id}\t{' '.join(ce)}")


def cmd_infer(args, out):
    s = load(args.file)
    store = logic.FactStore()
    # explicit facts first so a clash with an observation names the concept
    for f in list(s.facts) + observed_facts(s):
        store.add(f)
    rules = logic.derive_rules(store, s.templates, objects=[o.id for o in s.objects]) | set(s.rules)
    try:
        queries = list(s.queries) + [logic.parse_concept(q) for q in args.query or ()]
    except ValueError as exc:
        raise ScenarioFormatError(str(exc)) from None
    if not queries:
        raise ScenarioFormatError("nothing to infer: add a 'queries' section or --query")
    closure = logic.forward_chain(store, rules)
    for r in sorted(rules, key=str):
        if all(closure.truth(a) for a in r.antecedents):
            out.append(f"fired\t{r}")
    for q in queries:
        out.append(f"query\t{q}\t{logic.infer(q, closure, ())}")


def cmd_scenario(args, out):
    s = load(args.file)
    trace = logic.run_scenario(s.bundle())
    out.extend(trace.lines())


def cmd_peano(args, out):
    s = load(args.file)
    rel = _need(s.order, "order")
    report = order.peano_verify(rel)
    out.extend(report.lines())
    if report.passed:
        names = order.name_elements(rel).names
        out.append("names\t" + " ".join(f"{e}={k}" for e, k in names.items()))


def cmd_count(args, out):
    threshold = args.leap_threshold
    if args.file:
        s = load(args.file)
        curriculum = _need(s.curriculum, "curriculum")
        if threshold is None:
            threshold = s.leap_threshold
    else:
        curriculum = counting.Curriculum.standard(args.vocab)
    if threshold is None:
        threshold = 3
    try:
        learner = counting.Learner(curriculum, threshold, args.schedule, args.seed)
    except ValueError as exc:
        raise ScenarioFormatError(str(exc)) from None
    for event in counting.run_until_leap(learner):
        out.append(event.line())
    out.append(f"leap\t{learner.knower_level}")
    for n in range(1, learner.vocabulary + 1):
        out.append(f"query\t{n}\t{counting.query(learner, counting.FiniteSet(n))}")


def cmd_markov(args, out):
    s = load(args.file, tol=args.row_tolerance)
    c = _need(s.chain, "matrix")
    if args.action == "classes":
        cs = markov.communicating_classes(c)
        report = markov.MindsetReport(cs, markov.classify_recurrence(cs), None, None)
        out.extend(line for line in report.lines() if not line.startswith("failure"))
    elif args.action == "stationary":
        report = markov.mindset_report(c, args.tolerance)
        out.extend(report.lines())
        if report.mindset is None:
            name, _, message = report.failure.partition(": ")
            raise _ReportedFailure(name, message)
    else:
        occ = markov.simulate(c, args.steps, args.seed)
        for state, v in zip(c.states, occ):
            out.append(f"occupancy\t{state}\t{v:.6f}")


class _ReportedFailure(CogmathError):
    def __init__(self, name, message):
        self.name = name
        super().__init__(message)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cogmath", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="partition objects into species")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("infer", help="forward-chain facts and rules, answer queries")
    c.add_argument("file")
    c.add_argument("--query", action="append", help="extra query, e.g. 'dangerous(tiger1)'")
    c.set_defaults(func=cmd_infer)

    c = sub.add_parser("scenario", help="run the predator/prey derivation")
    c.add_argument("file")
    c.set_defaults(func=cmd_scenario)

    c = sub.add_parser("peano", help="check Peano's axioms on an order")
    c.add_argument("file")
    c.set_defaults(func=cmd_peano)

    c = sub.add_parser("count", help="simulate number-word acquisition")
    c.add_argument("file", nargs="?")
    c.add_argument("--vocab", type=int, default=10)
    c.add_argument("--leap-threshold", type=int, default=None)
    c.add_argument("--schedule", choices=counting.SCHEDULES, default="deterministic")
    c.add_argument("--seed", type=int, default=None)
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("markov", help="association chain analysis")
    c.add_argument("action", choices=("classes", "stationary", "simulate"))
    c.add_argument("file")
    c.add_argument("--steps", type=int, default=10**6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tolerance", type=float, default=markov.RESIDUAL_TOL)
    c.add_argument("--row-tolerance", type=float, default=markov.ROW_TOL)
    c.set_defaults(func=cmd_markov)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    try:
        args.func(args, out)
    except ScenarioFormatError as exc:
        _flush(out, stdout)
        print(f"ScenarioFormatError: {exc}", file=stderr)
        return 2
    except CogmathError as exc:
        _flush(out, stdout)
        name = getattr(exc, "name", type(exc).__name__)
        print(f"{name}: {exc}", file=stderr)
        return 1
    _flush(out, stdout)
    return 0


def _flush(lines, stream):
    for line in lines:
        print(line, file=stream)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
