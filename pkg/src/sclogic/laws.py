"""Named equations, axiom systems and the shipped law catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

from .syntax import Term, Var, parse, render, subterms


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: Term
    rhs: Term
    semantics: str = "free"
    source: str = ""
    sets: tuple = ()

    @property
    def variables(self) -> list:
        """Variable names in order of first occurrence, left to right."""
        seen = []
        for side in (self.lhs, self.rhs):
            for v in _vars_in_order(side):
                if v not in seen:
                    seen.append(v)
        return seen

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"


def _vars_in_order(t: Term):
    for s in subterms(t):
        if isinstance(s, Var):
            yield s.name


def equation(text: str, name: str = "", semantics: str = "free", source: str = "") -> Equation:
    """Build an equation from ``"lhs = rhs"`` text."""
    lhs, sep, rhs = text.partition("=")
    if not sep or "=" in rhs:
        raise ValueError(f"expected exactly one '=' in {text!r}")
    return Equation(name or text.strip(), parse(lhs), parse(rhs), semantics, source)


@dataclass(frozen=True)
class AxiomSet:
    name: str
    axioms: tuple = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.axioms)

    def __len__(self):
        return len(self.axioms)

    def names(self) -> list:
        return [a.name for a in self.axioms]

    def get(self, name: str) -> Equation:
        for a in self.axioms:
            if a.name.lower() == name.lower():
                return a
        raise KeyError(f"{name!r} is not an axiom of {self.name}")

    def without(self, name: str) -> "AxiomSet":
        self.get(name)
        return AxiomSet(f"{self.name} - {name}",
                        tuple(a for a in self.axioms if a.name.lower() != name.lower()))


def parse_catalog(text: str) -> list:
    laws = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise ValueError(f"catalog line {lineno}: expected 6 tab-separated fields")
        name, lhs, rhs, sem, sets, source = cols
        if sem not in ("free", "mem", "static"):
            raise ValueError(f"catalog line {lineno}: unknown semantics {sem!r}")
        laws.append(Equation(name, parse(lhs), parse(rhs), sem, source,
                             tuple(s for s in sets.split(",") if s)))
    return laws


@lru_cache(maxsize=None)
def _load() -> tuple:
    text = resources.files("sclogic").joinpath("data/laws.tsv").read_text()
    return tuple(parse_catalog(text))


def catalog() -> list:
    """Every shipped law, in file order."""
    return list(_load())


def law(name: str) -> Equation:
    for e in _load():
        if e.name.lower() == name.lower():
            return e
    raise KeyError(f"no law named {name!r}")


# Axiom systems in the order their axioms are listed.
_SET_ORDER = {
    "EqFSCL": ["F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10"],
    "EqMSCL": ["Neg", "Or", "Tand", "Abs", "Mem"],
    "EqSSCL": ["Neg", "Or", "Tand", "Abs", "Mem", "Comm"],
    "EqMSCL-alt1": ["Neg", "Or", "Tand", "Abs", "M1", "M3"],
    "EqMSCL-alt2": ["Neg", "Or", "Tand", "Abs", "M1", "M3c"],
    "CP": ["CP1", "CP2", "CP3", "CP4"],
    "CPmem": ["CP1", "CP2", "CP3", "CP4", "CPmem"],
    "CPs": ["CP1", "CP2", "CP3", "CP4", "CPmem", "CPs"],
    "CP-alt": ["CP1", "CP2", "CP3s", "CP4"],
}


def set_names() -> list:
    return list(_SET_ORDER) + ["derived"]


def axiom_set(name: str) -> AxiomSet:
    """Look up an axiom system by name (case-insensitive), e.g. ``eqsscl``."""
    for key, members in _SET_ORDER.items():
        if key.lower() == name.lower():
            return AxiomSet(key, tuple(law(m) for m in members))
    if name.lower() == "derived":
        return AxiomSet("derived", tuple(e for e in _load() if "derived" in e.sets))
    raise KeyError(f"unknown axiom set {name!r}; known: {', '.join(set_names())}")


def laws_in(set_name: Optional[str] = None) -> list:
    if set_name is None:
        return catalog()
    return list(axiom_set(set_name))
