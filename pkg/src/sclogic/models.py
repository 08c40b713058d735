"""Finite interpretations of the sequential signature and independence checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Optional, Union

from .laws import AxiomSet, Equation, axiom_set, equation
from .syntax import (F, T, Atom, Const, Not, SeqAnd, SeqOr, Term, Var, atoms_of,
                     substitute)


class ModelError(ValueError):
    """Malformed model text, or a term the model cannot interpret."""


@dataclass(frozen=True)
class FiniteModel:
    size: int
    neg: tuple
    conj: tuple
    disj: tuple
    true: int = 1
    false: int = 0
    atoms: tuple = ()   # (name, element) pairs

    def __post_init__(self):
        k = self.size
        if k < 1:
            raise ModelError("domain must be nonempty")
        object.__setattr__(self, "neg", tuple(self.neg))
        object.__setattr__(self, "conj", tuple(tuple(r) for r in self.conj))
        object.__setattr__(self, "disj", tuple(tuple(r) for r in self.disj))
        atoms = self.atoms.items() if isinstance(self.atoms, dict) else self.atoms
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))
        if len(self.neg) != k:
            raise ModelError(f"neg table needs {k} entries")
        for name, tab in (("and", self.conj), ("or", self.disj)):
            if len(tab) != k or any(len(r) != k for r in tab):
                raise ModelError(f"{name} table must be {k}x{k}")
        cells = list(self.neg) + [v for r in self.conj + self.disj for v in r]
        cells += [self.true, self.false] + [e for _, e in self.atoms]
        if any(not 0 <= v < k for v in cells):
            raise ModelError(f"table entry out of range 0..{k - 1}")

    @property
    def atom_map(self) -> dict:
        return dict(self.atoms)


def boolean_model(atoms: Optional[dict] = None) -> FiniteModel:
    """The two-element classical model."""
    return FiniteModel(2, (1, 0), ((0, 0), (0, 1)), ((0, 1), (1, 1)), 1, 0, atoms or {})


def eval_in_model(m: FiniteModel, t: Term, binding: Optional[dict] = None) -> int:
    binding = binding or {}
    atoms = m.atom_map

    def ev(t):
        if isinstance(t, Const):
            return m.true if t.value else m.false
        if isinstance(t, Atom):
            if t.name not in atoms:
                raise ModelError(f"atom {t.name} has no value in the model")
            return atoms[t.name]
        if isinstance(t, Var):
            if t.name not in binding:
                raise ModelError(f"variable ${t.name} is unbound")
            return binding[t.name]
        if isinstance(t, Not):
            return m.neg[ev(t.arg)]
        if isinstance(t, SeqAnd):
            return m.conj[ev(t.left)][ev(t.right)]
        if isinstance(t, SeqOr):
            return m.disj[ev(t.left)][ev(t.right)]
        raise ModelError("finite models interpret only !, && and ||")

    return ev(t)


def _assignments(k: int, names):
    for values in product(range(k), repeat=len(names)):
        yield dict(zip(names, values))


def failing_assignments(m: FiniteModel, eq: Equation) -> list:
    return [b for b in _assignments(m.size, eq.variables)
            if eval_in_model(m, eq.lhs, b) != eval_in_model(m, eq.rhs, b)]


def check_equation(m: FiniteModel, eq: Equation) -> bool:
    """True iff both sides agree under every assignment of the variables."""
    names = eq.variables
    return all(eval_in_model(m, eq.lhs, b) == eval_in_model(m, eq.rhs, b)
               for b in _assignments(m.size, names))


# ---------------------------------------------------------------------------
# text format


def parse_model(text: str) -> tuple:
    """Parse model text; returns ``(model, meta)`` where meta holds other keys."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    size = None
    neg = conj = disj = None
    consts = {}
    atoms = {}
    meta = {}
    i = 0

    def ints(s, where):
        try:
            return [int(v) for v in s.split()]
        except ValueError:
            raise ModelError(f"{where}: expected integers, got {s!r}") from None

    def rows(where):
        nonlocal i
        if size is None:
            raise ModelError(f"'domain' must come before '{where}'")
        out = []
        for _ in range(size):
            if i >= len(lines):
                raise ModelError(f"{where}: expected {size} rows")
            out.append(ints(lines[i], where))
            i += 1
        return out

    while i < len(lines):
        ln = lines[i]
        i += 1
        head, _, rest = ln.partition(" ")
        if head == "domain":
            size = ints(rest, "domain")[0]
        elif head == "neg:":
            neg = ints(rest, "neg")
        elif ln == "and:":
            conj = rows("and")
        elif ln == "or:":
            disj = rows("or")
        elif head.startswith(("T=", "F=")):
            for part in ln.split():
                key, _, val = part.partition("=")
                if key not in ("T", "F"):
                    raise ModelError(f"bad constant line {ln!r}")
                consts[key] = ints(val, key)[0]
        elif head == "atom":
            for part in rest.split():
                key, _, val = part.partition("=")
                atoms[key] = ints(val, f"atom {key}")[0]
        elif head in ("name", "axioms", "drop", "refute"):
            meta[head] = rest.strip()
        else:
            raise ModelError(f"unrecognised line {ln!r}")
    if size is None or neg is None or conj is None or disj is None:
        raise ModelError("model needs domain, neg:, and: and or:")
    m = FiniteModel(size, neg, conj, disj, consts.get("T", 1), consts.get("F", 0), atoms)
    return m, meta


def format_model(m: FiniteModel) -> str:
    out = [f"domain {m.size}", f"T={m.true} F={m.false}"]
    if m.atoms:
        out.append("atom " + " ".join(f"{a}={e}" for a, e in m.atoms))
    out.append("neg: " + " ".join(map(str, m.neg)))
    out.append("and:")
    out += [" ".join(map(str, r)) for r in m.conj]
    out.append("or:")
    out += [" ".join(map(str, r)) for r in m.disj]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# independence fixtures


@dataclass(frozen=True)
class IndependenceFixture:
    name: str
    model: FiniteModel
    axioms: AxiomSet
    dropped: str
    refuting: Equation

    def __post_init__(self):
        self.axioms.get(self.dropped)


BUILTIN = ("neg", "or", "tand", "abs", "mem", "comm")


def fixture_from_text(text: str, axioms: Optional[str] = None, drop: Optional[str] = None,
                      refute: Optional[str] = None) -> IndependenceFixture:
    """Build a fixture; explicit arguments override the file's own header."""
    m, meta = parse_model(text)
    set_name = axioms or meta.get("axioms")
    dropped = drop or meta.get("drop")
    eqn = refute or meta.get("refute")
    missing = [k for k, v in (("axioms", set_name), ("drop", dropped), ("refute", eqn)) if not v]
    if missing:
        raise ModelError(f"fixture needs {', '.join(missing)}")
    return IndependenceFixture(meta.get("name", dropped), m, axiom_set(set_name),
                               axiom_set(set_name).get(dropped).name,
                               equation(eqn, name="refuting instance"))


@lru_cache(maxsize=None)
def _builtin_text(name: str) -> str:
    key = name.lower()
    if key not in BUILTIN:
        raise KeyError(f"no builtin model {name!r}; known: {', '.join(BUILTIN)}")
    return resources.files("sclogic").joinpath(f"data/models/{key}.model").read_text()


def builtin_fixture(name: str) -> IndependenceFixture:
    return fixture_from_text(_builtin_text(name))


def builtin_fixtures() -> list:
    return [builtin_fixture(n) for n in BUILTIN]


def load_source(source: str) -> str:
    """Model text from ``builtin:NAME`` or a file path."""
    if source.startswith("builtin:"):
        return _builtin_text(source[len("builtin:"):])
    return Path(source).read_text()


@dataclass
class IndependenceReport:
    fixture: IndependenceFixture
    failures: dict = field(default_factory=dict)     # axiom name -> failing assignments
    refuted: bool = False
    values: tuple = ()                               # lhs and rhs values of the refutation

    @property
    def ok(self) -> bool:
        return not self.failures and self.refuted

    def lines(self) -> list:
        fx = self.fixture
        out = [f"model {fx.name}: {fx.axioms.name} without ({fx.dropped}), domain {fx.model.size}"]
        for ax in fx.axioms:
            if ax.name == fx.dropped:
                continue
            bad = self.failures.get(ax.name)
            if bad:
                out.append(f"  FAIL {ax.name}: violated at {_fmt_binding(bad[0])}"
                           f" ({len(bad)} assignments)")
            else:
                out.append(f"  ok   {ax.name}: {ax}")
        l, r = self.values
        mark = "ok  " if self.refuted else "FAIL"
        out.append(f"  {mark} refutes {fx.refuting}: {l} vs {r}")
        out.append("PASS" if self.ok else "FAIL")
        return out


def _fmt_binding(b: dict) -> str:
    return ", ".join(f"${k}={v}" for k, v in b.items()) or "(closed)"


def verify_independence(fx: IndependenceFixture) -> IndependenceReport:
    rep = IndependenceReport(fx)
    for ax in fx.axioms:
        if ax.name == fx.dropped:
            continue
        bad = failing_assignments(fx.model, ax)
        if bad:
            rep.failures[ax.name] = bad
    names = fx.refuting.variables
    bad = failing_assignments(fx.model, fx.refuting)
    rep.refuted = bool(bad)
    b = bad[0] if bad else {n: 0 for n in names}
    rep.values = (eval_in_model(fx.model, fx.refuting.lhs, b),
                  eval_in_model(fx.model, fx.refuting.rhs, b))
    return rep


# ---------------------------------------------------------------------------
# model search

MAX_SEARCH_SIZE = 3


def generated_terms(m: FiniteModel) -> dict:
    """A shortest closed term for every element reachable from T, F and the atoms."""
    found = {}
    frontier = [(m.true, T), (m.false, F)] + [(e, Atom(a)) for a, e in m.atoms]
    for e, t in frontier:
        found.setdefault(e, t)
    while True:
        new = {}
        items = list(found.items())
        for e, t in items:
            new.setdefault(m.neg[e], Not(t))
        for (e1, t1), (e2, t2) in product(items, repeat=2):
            new.setdefault(m.conj[e1][e2], SeqAnd(t1, t2))
            new.setdefault(m.disj[e1][e2], SeqOr(t1, t2))
        grown = False
        for e, t in new.items():
            if e not in found:
                found[e] = t
                grown = True
        if not grown:
            return found


def refuting_instance(m: FiniteModel, eq: Equation) -> Optional[Equation]:
    """A closed instance of ``eq`` false in ``m``, using only nameable elements."""
    names = eq.variables
    terms = generated_terms(m)
    elems = sorted(terms)
    for values in product(elems, repeat=len(names)):
        b = dict(zip(names, values))
        if eval_in_model(m, eq.lhs, b) != eval_in_model(m, eq.rhs, b):
            theta = {n: terms[v] for n, v in b.items()}
            lhs, rhs = substitute(eq.lhs, theta), substitute(eq.rhs, theta)
            return Equation(f"{eq.name} instance", lhs, rhs, eq.semantics)
    return None


def _partial_eval(t, tabs, env):
    neg, conj, disj, consts = tabs
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, (Const, Atom)):
        return consts[t]
    if isinstance(t, Not):
        x = _partial_eval(t.arg, tabs, env)
        return -1 if x < 0 else neg[x]
    x = _partial_eval(t.left, tabs, env)
    if x < 0:
        return -1
    y = _partial_eval(t.right, tabs, env)
    if y < 0:
        return -1
    return (conj if isinstance(t, SeqAnd) else disj)[x][y]


def search_model(axioms: Union[AxiomSet, str], dropped: Union[str, Equation], k: int = 2,
                 atom_count: int = 0) -> Optional[FiniteModel]:
    """Backtracking search for a model of ``axioms`` minus ``dropped`` refuting it.

    ``F`` is 0 and ``T`` is 1. The refutation must be a closed instance, so
    only elements generated from the constants and atoms count. ``dropped``
    may also be an equation outside the set, in which case every axiom is kept.
    Cells are filled in the order neg, and, or, atoms, and a branch is cut
    as soon as some fully determined axiom instance fails.
    """
    if isinstance(axioms, str):
        axioms = axiom_set(axioms)
    if not 2 <= k <= MAX_SEARCH_SIZE:
        raise ValueError(f"domain size must be between 2 and {MAX_SEARCH_SIZE}")
    if atom_count not in (0, 1):
        raise ValueError("at most one atom is supported")
    if isinstance(dropped, Equation):
        target, keep = dropped, list(axioms)
    else:
        target = axioms.get(dropped)
        keep = [a for a in axioms if a.name != target.name]
    for ax in keep + [target]:
        if atoms_of(ax.lhs) | atoms_of(ax.rhs):
            raise ValueError("search handles only axioms without atoms")

    atom_names = ["a"][:atom_count]
    neg = [-1] * k
    conj = [[-1] * k for _ in range(k)]
    disj = [[-1] * k for _ in range(k)]
    atom_vals = [-1] * atom_count
    consts = {T: 1, F: 0}
    tabs = (neg, conj, disj, consts)
    instances = [(ax, b) for ax in keep for b in _assignments(k, ax.variables)]

    cells = [("n", i) for i in range(k)]
    cells += [("a", i, j) for i in range(k) for j in range(k)]
    cells += [("o", i, j) for i in range(k) for j in range(k)]
    cells += [("t", i) for i in range(atom_count)]

    def set_cell(c, v):
        if c[0] == "n":
            neg[c[1]] = v
        elif c[0] == "a":
            conj[c[1]][c[2]] = v
        elif c[0] == "o":
            disj[c[1]][c[2]] = v
        else:
            atom_vals[c[1]] = v

    def consistent(live):
        still = []
        for ax, b in live:
            l = _partial_eval(ax.lhs, tabs, b)
            if l < 0:
                still.append((ax, b))
                continue
            r = _partial_eval(ax.rhs, tabs, b)
            if r < 0:
                still.append((ax, b))
            elif l != r:
                return None
        return still

    def finish():
        m = FiniteModel(k, neg, conj, disj, 1, 0, dict(zip(atom_names, atom_vals)))
        return m if refuting_instance(m, target) is not None else None

    def go(idx, live):
        if idx == len(cells):
            return finish()
        for v in range(k):
            set_cell(cells[idx], v)
            nxt = consistent(live)
            if nxt is not None:
                found = go(idx + 1, nxt)
                if found is not None:
                    return found
        set_cell(cells[idx], -1)
        return None

    return go(0, instances)

