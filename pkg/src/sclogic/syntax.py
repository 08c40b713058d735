"""Terms over the sequential and conditional signatures.

Concrete syntax::

    T  F          constants
    a  b_2        atoms (lowercase identifiers)
    $x            variables
    !p            negation
    p && q        left-sequential conjunction
    p || q        left-sequential disjunction
    p <| q |> r   conditional, "if q then p else r"

Negation binds tightest, then ``&&``, then ``||``. Both binary
connectives associate to the left. The conditional has the lowest
precedence and does not associate, so nested conditionals need
parentheses.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union


class Term:
    """Base class of all term nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Const(Term):
    value: bool

    def __repr__(self):
        return "T" if self.value else "F"


T = Const(True)
F = Const(False)


@dataclass(frozen=True, slots=True)
class Atom(Term):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class Not(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class SeqAnd(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class SeqOr(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Cond(Term):
    """``then_ <| cond |> else_``"""

    then_: Term
    cond: Term
    else_: Term


class ParseError(ValueError):
    """Raised on malformed input; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class SignatureError(ValueError):
    """A term uses a connective outside the signature an operation expects."""


# ---------------------------------------------------------------------------
# traversal helpers


def children(t: Term) -> tuple:
    if isinstance(t, Not):
        return (t.arg,)
    if isinstance(t, (SeqAnd, SeqOr)):
        return (t.left, t.right)
    if isinstance(t, Cond):
        return (t.then_, t.cond, t.else_)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    """All subterm occurrences, preorder."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        stack.extend(reversed(children(s)))


def atoms_of(t: Term) -> set:
    return {s.name for s in subterms(t) if isinstance(s, Atom)}


def variables_of(t: Term) -> set:
    return {s.name for s in subterms(t) if isinstance(s, Var)}


def depth(t: Term) -> int:
    """Connective nesting depth; constants, atoms and variables have depth 0."""
    ch = children(t)
    return 1 + max(depth(c) for c in ch) if ch else 0


def is_closed(t: Term) -> bool:
    return not any(isinstance(s, Var) for s in subterms(t))


def is_scl(t: Term) -> bool:
    """No conditional anywhere in ``t``."""
    return not any(isinstance(s, Cond) for s in subterms(t))


def is_cp(t: Term) -> bool:
    """Only constants, atoms, variables and conditionals."""
    return not any(isinstance(s, (Not, SeqAnd, SeqOr)) for s in subterms(t))


def require_scl(t: Term, what: str = "operation") -> None:
    if not is_scl(t):
        raise SignatureError(f"{what} is defined on sequential terms only; got a conditional")


def require_cp(t: Term, what: str = "operation") -> None:
    if not is_cp(t):
        raise SignatureError(f"{what} is defined on conditional terms only; got !, && or ||")


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<op>&&|\|\||<\||\|>|!|\(|\))"
    r"|(?P<var>\$[a-z][a-z0-9_]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<bad>\S))"
)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            break  # only trailing whitespace left
        start = m.start(m.lastgroup)
        tok = m.group(m.lastgroup)
        kind = m.lastgroup
        if kind == "bad":
            if tok == "$":
                raise ParseError("'$' must be followed by a lowercase identifier", start)
            raise ParseError(f"unexpected character {tok!r}", start)
        if kind == "ident":
            if tok in ("T", "F"):
                kind = "const"
            elif not re.fullmatch(r"[a-z][a-z0-9_]*", tok):
                raise ParseError(
                    f"bad identifier {tok!r}: atoms are lowercase, variables start with '$'",
                    start,
                )
            else:
                kind = "atom"
        out.append((kind, tok, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, tok, pos = self.take()
        if tok != op or kind != "op":
            found = "end of input" if kind == "end" else repr(tok)
            raise ParseError(f"expected {op!r}, found {found}", pos)

    def term(self):
        then_ = self.disj()
        if self.peek()[1] == "<|":
            self.take()
            cond = self.disj()
            self.expect("|>")
            else_ = self.disj()
            if self.peek()[1] == "<|":
                raise ParseError("conditionals do not associate; add parentheses", self.peek()[2])
            return Cond(then_, cond, else_)
        return then_

    def disj(self):
        t = self.conj()
        while self.peek()[1] == "||":
            self.take()
            t = SeqOr(t, self.conj())
        return t

    def conj(self):
        t = self.unary()
        while self.peek()[1] == "&&":
            self.take()
            t = SeqAnd(t, self.unary())
        return t

    def unary(self):
        if self.peek()[1] == "!":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self):
        kind, tok, pos = self.take()
        if kind == "const":
            return T if tok == "T" else F
        if kind == "atom":
            return Atom(tok)
        if kind == "var":
            return Var(tok[1:])
        if tok == "(" and kind == "op":
            t = self.term()
            self.expect(")")
            return t
        found = "end of input" if kind == "end" else repr(tok)
        raise ParseError(f"expected a term, found {found}", pos)


def parse(text: str) -> Term:
    """Parse concrete syntax into a Term.

    >>> parse("!b && a")
    SeqAnd(left=Not(arg=Atom('b')), right=Atom('a'))
    """
    p = _Parser(text)
    t = p.term()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {tok!r}", pos)
    return t


# ---------------------------------------------------------------------------
# printing


def _wrap(t: Term, kinds) -> str:
    s = render(t)
    return f"({s})" if isinstance(t, kinds) else s


def render(t: Term) -> str:
    """Print ``t`` so that ``parse(render(t)) == t``.

    Nested binary connectives are always parenthesised, even where
    left-associativity would allow dropping them, so grouping stays
    visible: ``(a && b) && c``.
    """
    if isinstance(t, Const):
        return "T" if t.value else "F"
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Var):
        return "$" + t.name
    if isinstance(t, Not):
        return "!" + _wrap(t.arg, (SeqAnd, SeqOr, Cond))
    if isinstance(t, (SeqAnd, SeqOr)):
        op = " && " if isinstance(t, SeqAnd) else " || "
        kinds = (SeqAnd, SeqOr, Cond)
        return _wrap(t.left, kinds) + op + _wrap(t.right, kinds)
    if isinstance(t, Cond):
        return f"{_wrap(t.then_, Cond)} <| {_wrap(t.cond, Cond)} |> {_wrap(t.else_, Cond)}"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# structured export
#
# sexpr:       T | F | (atom a) | (var x) | (not P) | (and P Q) | (or P Q)
#              | (cond THEN IF ELSE)
# structured:  JSON, {"tag": ..., "children": [...]} with "name" on atoms
#              and variables.

_TAGS = {Not: "not", SeqAnd: "and", SeqOr: "or", Cond: "cond"}
_CTORS = {v: k for k, v in _TAGS.items()}


def to_sexpr(t: Term) -> str:
    if isinstance(t, Const):
        return render(t)
    if isinstance(t, Atom):
        return f"(atom {t.name})"
    if isinstance(t, Var):
        return f"(var {t.name})"
    return "(" + " ".join([_TAGS[type(t)]] + [to_sexpr(c) for c in children(t)]) + ")"


def from_sexpr(text: str) -> Term:
    toks = re.findall(r"\(|\)|[^\s()]+", text)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of s-expression")
        tok = toks[pos]
        pos += 1
        if tok in ("T", "F"):
            return T if tok == "T" else F
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r}")
        head = toks[pos]
        pos += 1
        if head in ("atom", "var"):
            name = toks[pos]
            pos += 1
            node = Atom(name) if head == "atom" else Var(name)
        elif head in _CTORS:
            args = []
            while toks[pos] != ")":
                args.append(read())
            node = _CTORS[head](*args)
        else:
            raise ValueError(f"unknown tag {head!r}")
        if toks[pos] != ")":
            raise ValueError("expected ')'")
        pos += 1
        return node

    t = read()
    if pos != len(toks):
        raise ValueError("trailing input after s-expression")
    return t


def to_record(t: Term) -> dict:
    if isinstance(t, Const):
        return {"tag": render(t)}
    if isinstance(t, (Atom, Var)):
        return {"tag": "atom" if isinstance(t, Atom) else "var", "name": t.name}
    return {"tag": _TAGS[type(t)], "children": [to_record(c) for c in children(t)]}


def from_record(rec: dict) -> Term:
    tag = rec["tag"]
    if tag == "T":
        return T
    if tag == "F":
        return F
    if tag == "atom":
        return Atom(rec["name"])
    if tag == "var":
        return Var(rec["name"])
    return _CTORS[tag](*(from_record(c) for c in rec["children"]))


def to_structured(t: Term) -> str:
    return json.dumps(to_record(t), separators=(",", ":"))


def from_structured(text: str) -> Term:
    return from_record(json.loads(text))


# ---------------------------------------------------------------------------
# duality and translations


def dual(t: Term) -> Term:
    """Swap T/F and &&/||; atoms, variables and negation are kept."""
    require_scl(t, "dual")
    return _dual(t)


def _dual(t):
    if isinstance(t, Const):
        return F if t.value else T
    if isinstance(t, Not):
        return Not(_dual(t.arg))
    if isinstance(t, SeqAnd):
        return SeqOr(_dual(t.left), _dual(t.right))
    if isinstance(t, SeqOr):
        return SeqAnd(_dual(t.left), _dual(t.right))
    return t


def to_cond(t: Term) -> Term:
    """Translate a sequential term into the conditional signature (the map f)."""
    require_scl(t, "to_cond")
    return _f(t)


def _f(t):
    if isinstance(t, Not):
        return Cond(F, _f(t.arg), T)
    if isinstance(t, SeqAnd):
        return Cond(_f(t.right), _f(t.left), F)
    if isinstance(t, SeqOr):
        return Cond(T, _f(t.left), _f(t.right))
    return t


def to_scl(t: Term) -> Term:
    """Translate a conditional term into the sequential signature (the map g)."""
    require_cp(t, "to_scl")
    return _g(t)


def _g(t):
    if isinstance(t, Cond):
        c = _g(t.cond)
        return SeqOr(SeqAnd(c, _g(t.then_)), SeqAnd(Not(c), _g(t.else_)))
    return t


def expand_full_and(left: Term, right: Term) -> Term:
    """Full-evaluation conjunction: ``(left || (right && F)) && right``."""
    require_scl(left, "expand_full_and")
    require_scl(right, "expand_full_and")
    return SeqAnd(SeqOr(left, SeqAnd(right, F)), right)


class UnboundVariable(KeyError):
    pass


def substitute(t: Term, binding: Mapping[str, Term]) -> Term:
    """Replace every variable by its (closed) image in ``binding``."""
    for name, b in binding.items():
        if not is_closed(b):
            raise ValueError(f"binding for ${name} is not closed")
    return _subst(t, binding)


def _subst(t, binding):
    if isinstance(t, Var):
        try:
            return binding[t.name]
        except KeyError:
            raise UnboundVariable(f"unbound variable ${t.name}") from None
    if isinstance(t, Not):
        return Not(_subst(t.arg, binding))
    if isinstance(t, SeqAnd):
        return SeqAnd(_subst(t.left, binding), _subst(t.right, binding))
    if isinstance(t, SeqOr):
        return SeqOr(_subst(t.left, binding), _subst(t.right, binding))
    if isinstance(t, Cond):
        return Cond(_subst(t.then_, binding), _subst(t.cond, binding), _subst(t.else_, binding))
    return t


TermLike = Union[Term, str]


def as_term(t: TermLike) -> Term:
    """Accept either a Term or its concrete syntax."""
    return parse(t) if isinstance(t, str) else t
