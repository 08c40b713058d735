"""Evaluation trees and the free and memorizing evaluation functions.

A tree is either one of the two leaves ``LEAF_T`` / ``LEAF_F`` or a
``Node(atom, left, right)``. The left subtree is followed when the atom
yields true, so ``se(a)`` is ``Node("a", LEAF_T, LEAF_F)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Union

from .syntax import Atom, Cond, Const, Not, SeqAnd, SeqOr, Term, Var, as_term


class Leaf:
    """One of the two tree leaves. There are exactly two instances."""

    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value

    def __repr__(self):
        return "LEAF_T" if self.value else "LEAF_F"

    def __reduce__(self):
        return (_leaf, (self.value,))


LEAF_T = Leaf(True)
LEAF_F = Leaf(False)


def _leaf(value):
    return LEAF_T if value else LEAF_F


class Node(NamedTuple):
    atom: str
    left: "EvalTree"
    right: "EvalTree"


EvalTree = Union[Leaf, Node]


class OpenTermError(ValueError):
    """Evaluation was asked for a term that still contains variables."""


def replace_leaves(x: EvalTree, on_true: EvalTree, on_false: EvalTree) -> EvalTree:
    """``x[T -> on_true, F -> on_false]``."""
    if x is LEAF_T:
        return on_true
    if x is LEAF_F:
        return on_false
    return Node(x.atom, replace_leaves(x.left, on_true, on_false),
                replace_leaves(x.right, on_true, on_false))


def se(p: Term) -> EvalTree:
    """Short-circuit evaluation tree of a closed term (any signature)."""
    p = as_term(p)
    if isinstance(p, Const):
        return LEAF_T if p.value else LEAF_F
    if isinstance(p, Atom):
        return Node(p.name, LEAF_T, LEAF_F)
    if isinstance(p, Not):
        return replace_leaves(se(p.arg), LEAF_F, LEAF_T)
    if isinstance(p, SeqAnd):
        return replace_leaves(se(p.left), se(p.right), LEAF_F)
    if isinstance(p, SeqOr):
        return replace_leaves(se(p.left), LEAF_T, se(p.right))
    if isinstance(p, Cond):
        return replace_leaves(se(p.cond), se(p.then_), se(p.else_))
    if isinstance(p, Var):
        raise OpenTermError(f"cannot evaluate open term: variable ${p.name}")
    raise TypeError(f"not a term: {p!r}")


def left_reduce(a: str, x: EvalTree) -> EvalTree:
    """L_a: below an ``a`` test that came out true, keep only left branches of ``a``."""
    if isinstance(x, Leaf):
        return x
    if x.atom == a:
        return left_reduce(a, x.left)
    return Node(x.atom, left_reduce(a, x.left), left_reduce(a, x.right))


def right_reduce(a: str, x: EvalTree) -> EvalTree:
    """R_a, the mirror image of :func:`left_reduce`."""
    if isinstance(x, Leaf):
        return x
    if x.atom == a:
        return right_reduce(a, x.right)
    return Node(x.atom, right_reduce(a, x.left), right_reduce(a, x.right))


@lru_cache(maxsize=1 << 16)
def memorize(x: EvalTree) -> EvalTree:
    """The map m: prune every repeated test of an atom along a path."""
    if isinstance(x, Leaf):
        return x
    return Node(x.atom, memorize(left_reduce(x.atom, x.left)),
                memorize(right_reduce(x.atom, x.right)))


def mse(p: Term) -> EvalTree:
    """Memorizing evaluation tree, ``memorize(se(p))``."""
    return memorize(se(p))


def is_decision_tree(x: EvalTree, _seen: frozenset = frozenset()) -> bool:
    """True iff no atom occurs twice on any root-to-leaf path."""
    if isinstance(x, Leaf):
        return True
    if x.atom in _seen:
        return False
    seen = _seen | {x.atom}
    return is_decision_tree(x.left, seen) and is_decision_tree(x.right, seen)


def tree_dual(x: EvalTree) -> EvalTree:
    """Swap the leaves and mirror every node."""
    if x is LEAF_T:
        return LEAF_F
    if x is LEAF_F:
        return LEAF_T
    return Node(x.atom, tree_dual(x.right), tree_dual(x.left))


def tree_atoms(x: EvalTree) -> set:
    if isinstance(x, Leaf):
        return set()
    return {x.atom} | tree_atoms(x.left) | tree_atoms(x.right)


def tree_size(x: EvalTree) -> int:
    """Number of internal nodes."""
    if isinstance(x, Leaf):
        return 0
    return 1 + tree_size(x.left) + tree_size(x.right)


def tree_depth(x: EvalTree) -> int:
    if isinstance(x, Leaf):
        return 0
    return 1 + max(tree_depth(x.left), tree_depth(x.right))


# ---------------------------------------------------------------------------
# rendering


def to_structured(x: EvalTree) -> str:
    """Leaves are ``T``/``F``; a node is ``(left <a> right)``."""
    if x is LEAF_T:
        return "T"
    if x is LEAF_F:
        return "F"
    return f"({to_structured(x.left)} <{x.atom}> {to_structured(x.right)})"


def parse_tree(text: str) -> EvalTree:
    """Inverse of :func:`to_structured`."""
    pos = 0

    def fail(msg):
        raise ValueError(f"{msg} at position {pos} in tree text")

    def expect(s):
        nonlocal pos
        if not text.startswith(s, pos):
            fail(f"expected {s!r}")
        pos += len(s)

    def read():
        nonlocal pos
        if text.startswith("T", pos):
            pos += 1
            return LEAF_T
        if text.startswith("F", pos):
            pos += 1
            return LEAF_F
        expect("(")
        left = read()
        expect(" <")
        end = text.find("> ", pos)
        if end <= pos:
            fail("expected atom label")
        atom = text[pos:end]
        pos = end + 2
        right = read()
        expect(")")
        return Node(atom, left, right)

    x = read()
    if pos != len(text):
        fail("trailing text")
    return x


def _ascii_block(x: EvalTree):
    """Lines of a top-down drawing plus the column of the root label."""
    if isinstance(x, Leaf):
        s = "T" if x.value else "F"
        return [s], 0
    left, lc = _ascii_block(x.left)
    right, rc = _ascii_block(x.right)
    lw = max(len(s) for s in left)
    gap = 3
    # the two child roots sit at columns lc and lw + gap + rc
    rroot = lw + gap + rc
    # make room so the slashes meet under the label
    mid = (lc + rroot) // 2
    if (rroot - lc) % 2:
        rroot += 1
        gap += 1
        mid = (lc + rroot) // 2
    body = []
    for i in range(max(len(left), len(right))):
        ls = left[i] if i < len(left) else ""
        rs = right[i] if i < len(right) else ""
        body.append((ls.ljust(lw + gap) + rs).rstrip())
    # connector rows from the label down to the child roots
    rows = []
    span = (rroot - lc) // 2
    for k in range(1, span):
        row = [" "] * (rroot + 1)
        row[mid - k] = "/"
        row[mid + k] = "\\"
        rows.append("".join(row).rstrip())
    label = x.atom
    start = max(0, mid - len(label) // 2)
    head = (" " * start + label).rstrip()
    return [head] + rows + body, mid


def to_ascii(x: EvalTree) -> str:
    """Top-down picture; left branches (atom true) are drawn to the left."""
    lines, _ = _ascii_block(x)
    return "\n".join(lines)


def to_dot(x: EvalTree, name: str = "tree") -> str:
    """Graphviz text. Solid edges are true branches, dashed edges false ones."""
    out = [f"digraph {name} {{"]
    counter = 0

    def walk(t):
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        if isinstance(t, Leaf):
            out.append(f'  {ident} [label="{"T" if t.value else "F"}", shape=box];')
            return ident
        out.append(f'  {ident} [label="{t.atom}", shape=circle];')
        lid = walk(t.left)
        out.append(f"  {ident} -> {lid} [style=solid];")
        rid = walk(t.right)
        out.append(f"  {ident} -> {rid} [style=dashed];")
        return ident

    walk(x)
    out.append("}")
    return "\n".join(out)


def render_tree(x: EvalTree, style: str = "structured") -> str:
    if style == "structured":
        return to_structured(x)
    if style == "ascii":
        return to_ascii(x)
    if style == "dot":
        return to_dot(x)
    raise ValueError(f"unknown tree style {style!r}")
