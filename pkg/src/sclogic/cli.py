"""Command-line front end: ``sclogic <command> ...``.

Exit codes: 0 success or true, 1 a semantic "no" (not equivalent, a law
with counterexamples, a model that does not verify), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import equivalence as eqv
from . import models, statics, syntax, trees
from .laws import axiom_set, catalog, equation, law, laws_in, set_names


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def print_help(self, file=None):
        # surface --help text as ordinary output of run()
        raise _HelpExit(0, self.format_help())


class _HelpExit(Exception):
    def __init__(self, status, message):
        self.status, self.message = status, message


ATOM_NAMES = "abcdefghijklmnopqrstuvwxyz"


def _semantics(name: str, order: Optional[str]):
    if name == "static" and not order:
        raise UsageError("--semantics static requires --order")
    return eqv.parse_semantics(name, order)


def _term(text: str) -> syntax.Term:
    return syntax.parse(text)


def cmd_parse(a, out):
    t = _term(a.expr)
    out.append(syntax.to_structured(t) if a.format == "structured" else syntax.to_sexpr(t))
    return 0


def cmd_tree(a, out):
    sem = _semantics(a.semantics, a.order)
    x = sem.tree(_term(a.expr))
    out.append(trees.render_tree(x, a.render))
    if a.table:
        if not isinstance(sem, eqv.Static):
            raise UsageError("--table needs --semantics static")
        out.append(statics.format_truth_table(statics.truth_table(x, sem.sigma), sem.sigma))
    return 0


def cmd_eq(a, out):
    sem = _semantics(a.semantics, a.order)
    p, q = _term(a.p), _term(a.q)
    if eqv.decide_eq(sem, p, q):
        out.append("EQUIVALENT")
        return 0
    out.append("NOT EQUIVALENT")
    out.append(f"  {syntax.render(p)}: {trees.to_structured(sem.tree(p))}")
    out.append(f"  {syntax.render(q)}: {trees.to_structured(sem.tree(q))}")
    return 1


def cmd_translate(a, out):
    t = _term(a.expr)
    out.append(syntax.render(syntax.to_cond(t) if a.to == "cp" else syntax.to_scl(t)))
    return 0


def cmd_dual(a, out):
    out.append(syntax.render(syntax.dual(_term(a.expr))))
    return 0


def _budget(atoms: int, depth: int, constants: bool = True) -> eqv.EnumerationBudget:
    if not 1 <= atoms <= len(ATOM_NAMES):
        raise UsageError("--atoms must be between 1 and 26")
    if depth < 0:
        raise UsageError("--depth must be nonnegative")
    return eqv.EnumerationBudget(tuple(ATOM_NAMES[:atoms]), depth, constants)


def cmd_laws(a, out):
    budget = _budget(a.atoms, a.depth)
    if a.law:
        chosen = [law(n) for n in a.law]
    elif a.set:
        chosen, seen = [], set()
        for s in a.set:
            for e in laws_in(s):
                if e.name not in seen:
                    seen.add(e.name)
                    chosen.append(e)
    else:
        chosen = catalog()
    sem = None
    if a.semantics:
        sem = eqv.parse_semantics(a.semantics, a.order or budget.atoms)
    failed = 0
    for e in chosen:
        s = sem or eqv.designated_semantics(e, budget)
        rep = eqv.validate_law(s, e, budget, seed=a.seed)
        out.append(rep.summary())
        if not rep.holds:
            failed += 1
            for cx in rep.counterexamples[: a.show]:
                out.append(f"    {cx}: {trees.to_structured(cx.lhs_tree)} vs "
                           f"{trees.to_structured(cx.rhs_tree)}")
    out.append(f"{len(chosen) - failed}/{len(chosen)} laws hold")
    return 1 if failed else 0


def cmd_models(a, out):
    if a.action == "list":
        for n in models.BUILTIN:
            fx = models.builtin_fixture(n)
            out.append(f"builtin:{n}\t{fx.axioms.name} without ({fx.dropped})\trefutes {fx.refuting}")
        return 0
    if a.action == "verify":
        if not a.source:
            raise UsageError("models verify needs a SOURCE (file or builtin:NAME)")
        try:
            text = models.load_source(a.source)
        except (OSError, KeyError) as exc:
            raise UsageError(str(exc)) from None
        fx = models.fixture_from_text(text, a.axioms, a.drop, a.refute)
        rep = models.verify_independence(fx)
        out.extend(rep.lines())
        return 0 if rep.ok else 1
    # search
    if not a.axioms or not a.drop:
        raise UsageError("models search needs --axioms and --drop")
    if not 2 <= a.k <= models.MAX_SEARCH_SIZE:
        raise UsageError(f"--k must be between 2 and {models.MAX_SEARCH_SIZE}")
    aset = axiom_set(a.axioms)
    dropped = a.drop
    if "=" in dropped:
        dropped = equation(dropped, name=dropped)
    m = models.search_model(aset, dropped, a.k, a.atom_count)
    if m is None:
        out.append("no model found")
        return 1
    target = dropped if not isinstance(dropped, str) else aset.get(dropped)
    out.append(models.format_model(m).rstrip())
    out.append(f"refutes {models.refuting_instance(m, target)}")
    return 0


def cmd_count(a, out):
    if a.n < 0:
        raise UsageError("--n must be nonnegative")
    f = eqv.count_memorizing if a.kind == "memorizing" else eqv.count_static
    out.append(str(f(a.n)))
    return 0


def cmd_enumerate(a, out):
    atoms = statics.as_ordering(a.atoms).atoms
    if not atoms:
        raise UsageError("--atoms must list at least one atom")
    budget = eqv.EnumerationBudget(atoms, a.depth, not a.no_constants)
    sem = _semantics(a.semantics, a.order) if a.semantics else None
    if sem is not None and a.distinct and a.count:
        out.append(str(eqv.census_distinct_trees(sem, budget)))
        return 0
    if eqv.pool_size(budget) > 1_000_000:
        raise UsageError("pool too large to list; lower --depth or --atoms")
    if sem is None:
        if a.distinct:
            raise UsageError("--distinct needs --semantics")
        if a.count:
            out.append(str(eqv.pool_size(budget)))
        else:
            out.extend(syntax.render(t) for t in eqv.enumerate_terms(budget))
        return 0
    seen = {}
    rows = []
    for t in eqv.enumerate_terms(budget):
        x = sem.tree(t)
        if a.distinct:
            if x in seen:
                continue
            seen[x] = t
        rows.append(f"{syntax.render(t)}\t{trees.to_structured(x)}")
    out.append(str(len(rows))) if a.count else out.extend(rows)
    return 0


def cmd_witness(a, out):
    budget = _budget(a.atoms, a.depth)
    if a.full_and:
        sem = _semantics(a.to, a.order)
        w = eqv.find_full_and_witness(sem, budget)
        if w is None:
            out.append("no witness in budget")
            return 1
        p, q = w
        full = syntax.expand_full_and(p, q)
        out.append(f"P = {syntax.render(p)}, Q = {syntax.render(q)}")
        out.append(f"  {syntax.render(full)}: {trees.to_structured(sem.tree(full))}")
        conj = syntax.SeqAnd(p, q)
        out.append(f"  {syntax.render(conj)}: {trees.to_structured(sem.tree(conj))}")
        return 0
    finer = _semantics(a.from_, a.order)
    coarser = _semantics(a.to, a.order)
    w = eqv.find_separating_witness(finer, coarser, budget)
    if w is None:
        out.append("no witness in budget")
        return 1
    p, q = w
    out.append(f"{syntax.render(p)}  vs  {syntax.render(q)}")
    out.append(f"  {a.from_}: {trees.to_structured(finer.tree(p))} / {trees.to_structured(finer.tree(q))}")
    out.append(f"  {a.to}: {trees.to_structured(coarser.tree(p))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sclogic", description="Short-circuit logic toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sems = ["free", "mem", "static"]

    s = sub.add_parser("parse", help="parse and show a term's structure")
    s.add_argument("expr")
    s.add_argument("--format", choices=["sexpr", "structured"], default="sexpr")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("tree", help="evaluation tree of a closed term")
    s.add_argument("expr")
    s.add_argument("--semantics", choices=sems, default="free")
    s.add_argument("--order")
    s.add_argument("--render", choices=["ascii", "dot", "structured"], default="structured")
    s.add_argument("--table", action="store_true", help="also print the truth table (static)")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("eq", help="decide equivalence of two closed terms")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--semantics", choices=sems, default="free")
    s.add_argument("--order")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("translate", help="translate between the two signatures")
    s.add_argument("expr")
    s.add_argument("--to", choices=["cp", "scl"], required=True)
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("dual", help="dual of a sequential term")
    s.add_argument("expr")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("laws", help="validate the law catalog")
    s.add_argument("--set", action="append", choices=set_names(), metavar="NAME")
    s.add_argument("--law", action="append", metavar="NAME")
    s.add_argument("--semantics", choices=sems)
    s.add_argument("--order")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--atoms", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--show", type=int, default=3, help="counterexamples shown per failing law")
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("models", help="finite models: list, verify, search")
    s.add_argument("action", choices=["list", "verify", "search"])
    s.add_argument("source", nargs="?")
    s.add_argument("--axioms")
    s.add_argument("--drop")
    s.add_argument("--refute")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--atom-count", type=int, choices=[0, 1], default=1)
    s.set_defaults(func=cmd_models)

    s = sub.add_parser("count", help="number of memorizing or static trees")
    s.add_argument("--kind", choices=["memorizing", "static"], required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("enumerate", help="list pool terms, optionally with trees")
    s.add_argument("--atoms", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--semantics", choices=sems)
    s.add_argument("--order")
    s.add_argument("--distinct", action="store_true")
    s.add_argument("--no-constants", action="store_true")
    s.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("witness", help="pair separating two semantics")
    s.add_argument("--from", dest="from_", choices=["free", "mem"], default="free")
    s.add_argument("--to", choices=["mem", "static"], default="mem")
    s.add_argument("--order")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--atoms", type=int, default=2)
    s.add_argument("--full-and", action="store_true",
                   help="instead: P and Q where full and short-circuit conjunction differ")
    s.set_defaults(func=cmd_witness)
    return p


def run(argv) -> tuple:
    """Run one command; returns ``(exit_code, text)``."""
    out = []
    try:
        a = build_parser().parse_args(list(argv))
        code = a.func(a, out)
    except _HelpExit as h:
        return h.status, h.message
    except UsageError as exc:
        return 2, str(exc)
    except (syntax.ParseError, syntax.SignatureError, trees.OpenTermError,
            statics.OrderingError, models.ModelError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return 2, f"error: {msg}"
    return code, "\n".join(out)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
