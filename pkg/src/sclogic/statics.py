"""Static (commutative) evaluation over a fixed atom ordering."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Union

from .syntax import (F, T, Atom, Cond, Not, SeqAnd, SeqOr, Term, as_term, atoms_of,
                     is_closed, require_cp, require_scl, to_cond)
from .trees import LEAF_F, LEAF_T, EvalTree, Leaf, Node, OpenTermError, mse


@dataclass(frozen=True)
class AtomOrdering:
    """A duplicate-free sequence of atoms; the empty ordering is allowed."""

    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError(f"atom ordering has duplicates: {''.join(self.atoms)}")
        for a in self.atoms:
            if not re.fullmatch(r"[a-z][a-z0-9_]*", a):
                raise ValueError(f"not an atom name: {a!r}")

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __str__(self):
        if all(len(a) == 1 for a in self.atoms):
            return "".join(self.atoms)
        return ",".join(self.atoms)


OrderLike = Union[AtomOrdering, str, Iterable[str]]


def as_ordering(sigma: OrderLike) -> AtomOrdering:
    """``"ab"`` means atoms a then b; use commas for longer names (``"p1,p2"``)."""
    if isinstance(sigma, AtomOrdering):
        return sigma
    if isinstance(sigma, str):
        if "," in sigma:
            return AtomOrdering(tuple(s.strip() for s in sigma.split(",") if s.strip()))
        return AtomOrdering(tuple(sigma))
    return AtomOrdering(tuple(sigma))


class OrderingError(ValueError):
    """A term mentions an atom that the ordering does not list."""


def build_E(sigma: OrderLike) -> Term:
    """E_eps = F, E_{a rho} = E_rho <| a |> E_rho."""
    e = F
    for a in reversed(as_ordering(sigma).atoms):
        e = Cond(e, Atom(a), e)
    return e


def build_D(sigma: OrderLike) -> Term:
    """D_eps = F, D_{a rho} = (a && !a) || D_rho."""
    d = F
    for a in reversed(as_ordering(sigma).atoms):
        d = SeqOr(SeqAnd(Atom(a), Not(Atom(a))), d)
    return d


def _check(sigma: AtomOrdering, p: Term):
    if not is_closed(p):
        raise OpenTermError("static evaluation needs a closed term")
    missing = atoms_of(p) - set(sigma.atoms)
    if missing:
        raise OrderingError(
            f"atoms {', '.join(sorted(missing))} are not in the ordering {sigma}")


def static_tree(sigma: OrderLike, p: Term) -> EvalTree:
    """``mse(T <| E_sigma |> p)`` with no signature restriction on ``p``.

    Terms mixing both signatures are evaluated through the conditional
    clause of ``se``; :func:`sse_cond` and :func:`sse` add the pure
    signature checks.
    """
    sigma = as_ordering(sigma)
    p = as_term(p)
    _check(sigma, p)
    return mse(Cond(T, build_E(sigma), p))


def sse_cond(sigma: OrderLike, p: Term) -> EvalTree:
    """Static evaluation tree of a closed conditional term."""
    p = as_term(p)
    require_cp(p, "sse_cond")
    return static_tree(sigma, p)


def sse(sigma: OrderLike, p: Term) -> EvalTree:
    """Static evaluation tree of a closed sequential term, via ``to_cond``."""
    p = as_term(p)
    require_scl(p, "sse")
    sigma = as_ordering(sigma)
    _check(sigma, p)
    return sse_cond(sigma, to_cond(p))


def sse_alt(sigma: OrderLike, p: Term) -> EvalTree:
    """The same trees built as ``mse(D_sigma || p)``."""
    p = as_term(p)
    require_scl(p, "sse_alt")
    sigma = as_ordering(sigma)
    _check(sigma, p)
    return mse(SeqOr(build_D(sigma), p))


def is_leveled(x: EvalTree, sigma: OrderLike) -> bool:
    """Perfect tree whose level ``i`` tests ``sigma[i]``."""
    atoms = as_ordering(sigma).atoms

    def ok(t, i):
        if i == len(atoms):
            return isinstance(t, Leaf)
        return not isinstance(t, Leaf) and t.atom == atoms[i] and ok(t.left, i + 1) and ok(t.right, i + 1)

    return ok(x, 0)


def truth_table(x: EvalTree, sigma: OrderLike) -> list:
    """Rows ``(assignment, value)``; first atom varies slowest, T before F."""
    sigma = as_ordering(sigma)
    if not is_leveled(x, sigma):
        raise OrderingError(f"tree is not a perfect tree leveled by {sigma}")
    rows = []
    for assignment in product((True, False), repeat=len(sigma)):
        t = x
        for v in assignment:
            t = t.left if v else t.right
        rows.append((assignment, t is LEAF_T))
    return rows


def format_truth_table(rows: list, sigma: OrderLike, label: str = "P") -> str:
    sigma = as_ordering(sigma)
    widths = [max(1, len(a)) for a in sigma.atoms]
    tf = lambda v: "T" if v else "F"
    head = " ".join(a.ljust(w) for a, w in zip(sigma.atoms, widths))
    lines = [f"{head} | {label}".strip()]
    for assignment, value in rows:
        cells = " ".join(tf(v).ljust(w) for v, w in zip(assignment, widths))
        lines.append(f"{cells} | {tf(value)}".strip())
    return "\n".join(lines)


def perfect_tree(sigma: OrderLike, leaves: Iterable[bool]) -> EvalTree:
    """Perfect tree over ``sigma`` with the given leaf values, left to right."""
    atoms = as_ordering(sigma).atoms
    vals = list(leaves)
    if len(vals) != 2 ** len(atoms):
        raise ValueError("need 2^|sigma| leaf values")

    def build(i, lo, hi):
        if i == len(atoms):
            return LEAF_T if vals[lo] else LEAF_F
        mid = (lo + hi) // 2
        return Node(atoms[i], build(i + 1, lo, mid), build(i + 1, mid, hi))

    return build(0, 0, len(vals))
