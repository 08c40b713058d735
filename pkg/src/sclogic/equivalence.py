"""Congruence deciders, term pools, law validation and tree counting.

Law validation works on equivalence classes rather than on raw terms.
Every pool term is mapped to the class of its evaluation tree under the
chosen semantics; the operations are then computed on class
representatives through

    NEG(X) = N(X[F, T])   AND(X, Y) = N(X[Y, F])   OR(X, Y) = N(X[T, Y])
    COND(X, Y, Z) = N(Y[X, Z])

where ``N`` is the normalizer of the semantics (identity, ``memorize``,
or memorize-below-a-perfect-tree for the static case). These agree with
evaluating the substituted term directly because ``N`` commutes with leaf
replacement; the test suite checks this against literal substitution.
"""

from __future__ import annotations

from collections.abc import Sequence
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Union

import numpy as np

from .laws import Equation, law
from .statics import AtomOrdering, OrderLike, OrderingError, as_ordering, sse, sse_cond, static_tree
from .syntax import (F, T, Atom, Cond, Const, Not, SeqAnd, SeqOr, SignatureError, Term, Var,
                     as_term, atoms_of, is_closed, is_cp, is_scl, render)
from .trees import (LEAF_F, LEAF_T, EvalTree, Leaf, Node, OpenTermError, memorize, mse,
                    replace_leaves, se, tree_atoms)

# ---------------------------------------------------------------------------
# semantics


@dataclass(frozen=True)
class Free:
    name = "free"

    def tree(self, p: Term) -> EvalTree:
        return se(p)

    def tree_any(self, p: Term) -> EvalTree:
        return se(p)

    def normalize(self, x: EvalTree) -> EvalTree:
        return x

    def __str__(self):
        return "free"


@dataclass(frozen=True)
class Memorizing:
    name = "mem"

    def tree(self, p: Term) -> EvalTree:
        return mse(p)

    tree_any = tree

    def normalize(self, x: EvalTree) -> EvalTree:
        return memorize(x)

    def __str__(self):
        return "mem"


@dataclass(frozen=True)
class Static:
    sigma: AtomOrdering = AtomOrdering(("a", "b"))
    name = "static"

    def __post_init__(self):
        object.__setattr__(self, "sigma", as_ordering(self.sigma))

    def tree(self, p: Term) -> EvalTree:
        """``sse`` or ``sse_cond`` depending on the signature of ``p``."""
        p = as_term(p)
        if is_scl(p):
            return sse(self.sigma, p)
        if is_cp(p):
            return sse_cond(self.sigma, p)
        raise SignatureError("static equivalence needs an SCL-pure or CP-pure term")

    def tree_any(self, p: Term) -> EvalTree:
        return static_tree(self.sigma, p)

    def normalize(self, x: EvalTree) -> EvalTree:
        missing = tree_atoms(x) - set(self.sigma.atoms)
        if missing:
            raise OrderingError(
                f"atoms {', '.join(sorted(missing))} are not in the ordering {self.sigma}")
        return memorize(_graft(self.sigma.atoms, x))

    def __str__(self):
        return f"static {self.sigma}"


Semantics = Union[Free, Memorizing, Static]

FREE = Free()
MEMORIZING = Memorizing()


def _graft(atoms, x):
    # perfect tree over atoms with every leaf replaced by x
    for a in reversed(atoms):
        x = Node(a, x, x)
    return x


def parse_semantics(name: str, order: Optional[OrderLike] = None) -> Semantics:
    """``free``, ``mem``/``memorizing`` or ``static`` (which needs ``order``)."""
    key = name.strip().lower()
    if key == "free":
        return FREE
    if key in ("mem", "memorizing"):
        return MEMORIZING
    if key == "static":
        if order is None:
            raise ValueError("static semantics needs an atom ordering")
        return Static(as_ordering(order))
    raise ValueError(f"unknown semantics {name!r} (free, mem, static)")


def decide_eq(sem: Semantics, p, q) -> bool:
    """True iff ``p`` and ``q`` have the same evaluation tree under ``sem``."""
    p, q = as_term(p), as_term(q)
    for x in (p, q):
        if not is_closed(x):
            raise OpenTermError("congruences are defined on closed terms only")
    return sem.tree(p) == sem.tree(q)


# ---------------------------------------------------------------------------
# term pools


@dataclass(frozen=True)
class EnumerationBudget:
    atoms: tuple = ("a", "b")
    max_depth: int = 2
    include_constants: bool = True

    def __post_init__(self):
        atoms = as_ordering(self.atoms).atoms
        if not atoms:
            raise ValueError("a budget needs at least one atom")
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        object.__setattr__(self, "atoms", atoms)

    def with_depth(self, d: int) -> "EnumerationBudget":
        return EnumerationBudget(self.atoms, d, self.include_constants)


DEFAULT_BUDGET = EnumerationBudget()


@lru_cache(maxsize=32)
def _layers(budget: EnumerationBudget) -> tuple:
    base = ([T, F] if budget.include_constants else []) + [Atom(a) for a in budget.atoms]
    layers = [base]
    upto = list(base)
    for d in range(1, budget.max_depth + 1):
        prev = layers[-1]
        marked = [(t, i >= len(upto) - len(prev)) for i, t in enumerate(upto)]
        layer = [Not(t) for t in prev]
        for ctor in (SeqAnd, SeqOr):
            for s, s_new in marked:
                for t, t_new in marked:
                    if s_new or t_new:
                        layer.append(ctor(s, t))
        layers.append(layer)
        upto.extend(layer)
    return tuple(tuple(x) for x in layers)


def enumerate_terms(budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Term]:
    """All closed SCL-pure terms of depth at most ``budget.max_depth``.

    Order: by depth; within a depth ``!`` before ``&&`` before ``||``;
    children ordered by their own position in the sequence.
    """
    for layer in _layers(budget):
        yield from layer


def pool_size(budget: EnumerationBudget) -> int:
    return sum(len(x) for x in _layers(budget))


# ---------------------------------------------------------------------------
# class algebra


class _Algebra:
    """Interned normal-form trees for one semantics, with memoized operations."""

    def __init__(self, sem: Semantics):
        self.sem = sem
        self.trees = []
        self.index = {}
        self._ops = {}
        self.t = self.intern(LEAF_T)
        self.f = self.intern(LEAF_F)
        self._tables = None

    def intern(self, x: EvalTree) -> int:
        return self._raw(self.sem.normalize(x))

    def _raw(self, x):
        # x is already a normal form
        i = self.index.get(x)
        if i is None:
            i = len(self.trees)
            self.trees.append(x)
            self.index[x] = i
        return i

    def atom(self, name: str) -> int:
        return self.intern(Node(name, LEAF_T, LEAF_F))

    def _op(self, key, build):
        r = self._ops.get(key)
        if r is None:
            r = self._raw(self.sem.normalize(build()))
            self._ops[key] = r
        return r

    def neg(self, i: int) -> int:
        x = self.trees[i]
        return self._op(("!", i), lambda: replace_leaves(x, LEAF_F, LEAF_T))

    def conj(self, i: int, j: int) -> int:
        x, y = self.trees[i], self.trees[j]
        return self._op(("&", i, j), lambda: replace_leaves(x, y, LEAF_F))

    def disj(self, i: int, j: int) -> int:
        x, y = self.trees[i], self.trees[j]
        return self._op(("|", i, j), lambda: replace_leaves(x, LEAF_T, y))

    def cond(self, i: int, j: int, k: int) -> int:
        x, y, z = self.trees[i], self.trees[j], self.trees[k]
        return self._op(("?", i, j, k), lambda: replace_leaves(y, x, z))

    def closure_bound(self) -> int:
        """Upper bound on the number of classes reachable from the interned ones."""
        if isinstance(self.sem, Static):
            return count_static(len(self.sem.sigma))
        if isinstance(self.sem, Memorizing):
            atoms = set()
            for x in self.trees:
                atoms |= tree_atoms(x)
            return count_memorizing(len(atoms)) if len(atoms) <= 3 else 1 << 62
        return 1 << 62

    def tables(self, with_cond: bool = False):
        """Closed operation tables over every reachable class, or None if too large."""
        limit = TABLE_LIMIT_COND if with_cond else TABLE_LIMIT
        if self.closure_bound() > limit:
            return None
        t = self._tables
        if t is not None and len(t[0]) == len(self.trees) and (t[3] is not None or not with_cond):
            return t
        while True:
            n = len(self.trees)
            for i in range(n):
                self.neg(i)
                for j in range(n):
                    self.conj(i, j)
                    self.disj(i, j)
                    if with_cond:
                        for k in range(n):
                            self.cond(i, j, k)
            if len(self.trees) == n:
                break
        r = range(n)
        neg = np.array([self.neg(i) for i in r], dtype=np.int32)
        conj = np.array([[self.conj(i, j) for j in r] for i in r], dtype=np.int32)
        disj = np.array([[self.disj(i, j) for j in r] for i in r], dtype=np.int32)
        cond = None
        if with_cond:
            cond = np.array([[[self.cond(i, j, k) for k in r] for j in r] for i in r],
                            dtype=np.int32)
        self._tables = (neg, conj, disj, cond)
        return self._tables


# Finite class algebras up to these sizes get full numpy tables.
TABLE_LIMIT = 300
TABLE_LIMIT_COND = 100


_ALGEBRAS: dict = {}


def _algebra(sem: Semantics) -> _Algebra:
    alg = _ALGEBRAS.get(sem)
    if alg is None:
        alg = _ALGEBRAS[sem] = _Algebra(sem)
    return alg


def class_of(sem: Semantics, p: Term) -> int:
    """Class index of a closed term (mixed signatures allowed)."""
    return _algebra(sem).intern(sem.tree_any(as_term(p)))


def class_tree(sem: Semantics, i: int) -> EvalTree:
    return _algebra(sem).trees[i]


@dataclass
class _Pool:
    terms: list
    ids: np.ndarray          # class index of each term
    classes: list            # distinct class indices, order of first appearance
    members: list            # pool terms of each class, in pool order
    weight: np.ndarray       # len(members[c])


@lru_cache(maxsize=64)
def _pool(sem: Semantics, budget: EnumerationBudget) -> _Pool:
    if isinstance(sem, Static):
        extra = set(budget.atoms) - set(sem.sigma.atoms)
        if extra:
            raise OrderingError(
                f"budget atoms {', '.join(sorted(extra))} are not in the ordering {sem.sigma}")
    alg = _algebra(sem)
    terms = list(enumerate_terms(budget))
    ids = np.fromiter((alg.intern(sem.tree_any(p)) for p in terms), dtype=np.int64, count=len(terms))
    classes, members, pos = [], [], {}
    for p, c in zip(terms, ids.tolist()):
        k = pos.get(c)
        if k is None:
            pos[c] = k = len(classes)
            classes.append(c)
            members.append([])
        members[k].append(p)
    weight = np.array([len(m) for m in members], dtype=np.int64)
    return _Pool(terms, ids, classes, members, weight)


def _apply_lazy(fn, *arrays):
    b = np.broadcast_arrays(*[np.asarray(a) for a in arrays])
    shape = b[0].shape
    flat = np.stack([a.ravel() for a in b], axis=1)
    uniq, inv = np.unique(flat, axis=0, return_inverse=True)
    vals = np.fromiter((fn(*row) for row in uniq.tolist()), dtype=np.int64, count=len(uniq))
    return vals[inv.reshape(-1)].reshape(shape)


class _Evaluator:
    """Evaluates a term on arrays of class indices bound to its variables."""

    def __init__(self, sem: Semantics, eq: Equation):
        self.alg = _algebra(sem)
        for a in sorted(atoms_of(eq.lhs) | atoms_of(eq.rhs)):
            self.alg.atom(a)
        self.tabs = self.alg.tables(_has_cond(eq))

    def __call__(self, t: Term, env: dict):
        alg, tabs = self.alg, self.tabs
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Const):
            return np.int64(alg.t if t.value else alg.f)
        if isinstance(t, Atom):
            return np.int64(alg.atom(t.name))
        if isinstance(t, Not):
            x = self(t.arg, env)
            return tabs[0][x] if tabs else _apply_lazy(alg.neg, x)
        if isinstance(t, SeqAnd):
            x, y = self(t.left, env), self(t.right, env)
            return tabs[1][x, y] if tabs else _apply_lazy(alg.conj, x, y)
        if isinstance(t, SeqOr):
            x, y = self(t.left, env), self(t.right, env)
            return tabs[2][x, y] if tabs else _apply_lazy(alg.disj, x, y)
        if isinstance(t, Cond):
            x, y, z = self(t.then_, env), self(t.cond, env), self(t.else_, env)
            return tabs[3][x, y, z] if tabs else _apply_lazy(alg.cond, x, y, z)
        raise TypeError(f"not a term: {t!r}")


def _has_cond(eq: Equation) -> bool:
    return not (is_scl(eq.lhs) and is_scl(eq.rhs))


# ---------------------------------------------------------------------------
# symbolic check for the free semantics


def open_tree(t: Term) -> EvalTree:
    """``se`` with each variable ``$x`` treated as an atom labelled ``$x``."""
    if isinstance(t, Var):
        return Node("$" + t.name, LEAF_T, LEAF_F)
    if isinstance(t, (Const, Atom)):
        return se(t)
    if isinstance(t, Not):
        return replace_leaves(open_tree(t.arg), LEAF_F, LEAF_T)
    if isinstance(t, SeqAnd):
        return replace_leaves(open_tree(t.left), open_tree(t.right), LEAF_F)
    if isinstance(t, SeqOr):
        return replace_leaves(open_tree(t.left), LEAF_T, open_tree(t.right))
    if isinstance(t, Cond):
        return replace_leaves(open_tree(t.cond), open_tree(t.then_), open_tree(t.else_))
    raise TypeError(f"not a term: {t!r}")


def instantiate(x: EvalTree, trees: dict) -> EvalTree:
    """Replace every ``$x`` node of an open tree by the tree bound to ``x``."""
    if isinstance(x, Leaf):
        return x
    left, right = instantiate(x.left, trees), instantiate(x.right, trees)
    if x.atom.startswith("$"):
        return replace_leaves(trees[x.atom[1:]], left, right)
    return Node(x.atom, left, right)


# ---------------------------------------------------------------------------
# law validation


@dataclass(frozen=True)
class Counterexample:
    """A failing binding, standing for every pool binding in the same classes."""

    binding: dict
    lhs_tree: EvalTree
    rhs_tree: EvalTree
    members: tuple = ()

    @property
    def instances(self) -> int:
        return math.prod(len(m) for m in self.members) if self.members else 1

    def bindings(self) -> Iterator[dict]:
        """Every concrete pool binding equivalent to this one."""
        if not self.members:
            yield dict(self.binding)
            return
        names = list(self.binding)
        for combo in product(*self.members):
            yield dict(zip(names, combo))

    def __str__(self):
        return ", ".join(f"${k} := {render(v)}" for k, v in self.binding.items())


# Above this many class tuples without finite tables, laws are checked
# symbolically (free semantics) or by sampling.
EXHAUSTIVE_LIMIT = 2_000_000
_CHUNK = 4_000_000


@dataclass
class LawReport:
    law: Equation
    semantics: str
    method: str
    pool: int = 0                 # size of the exhaustively covered pool
    instances: int = 0            # closed instances covered
    samples: int = 0              # extra random instances evaluated
    exhaustive: bool = True
    failing_instances: int = 0
    _found: list = field(default_factory=list, repr=False)
    _expand: object = field(default=None, repr=False)

    @property
    def holds(self) -> bool:
        return self.failing_instances == 0

    @property
    def counterexamples(self) -> Sequence:
        """Failing bindings in enumeration order, one per class tuple.

        Entries are built on access, so indexing the first one stays cheap
        even when millions of class tuples fail.
        """
        if self._expand is not None:
            self._found = _Counterexamples(self._expand, self._found)
            self._expand = None
        return self._found

    def summary(self) -> str:
        status = "ok" if self.holds else "FAIL"
        extra = f", {self.samples} samples" if self.samples else ""
        line = (f"{status:4} {self.law.name:10} [{self.semantics}] {self.method}: "
                f"{self.instances} instances{extra}")
        if not self.holds:
            first = self.counterexamples[0]
            line += f"; {self.failing_instances} failing, e.g. {first}"
        return line


def _grid(k, i, n):
    shape = [1] * k
    shape[i] = n
    return shape


def _check_classes(ev, eq, names, pools, cls_arrays):
    """Evaluate both sides over the product of class lists; yield failing tuples."""
    k = len(names)
    sizes = [len(c) for c in cls_arrays]
    rest = math.prod(sizes[1:])
    step = max(1, _CHUNK // max(1, rest))
    for start in range(0, sizes[0], step):
        env = {}
        for i, name in enumerate(names):
            arr = cls_arrays[i][start:start + step] if i == 0 else cls_arrays[i]
            env[name] = arr.reshape(_grid(k, i, len(arr)))
        lhs = np.broadcast_to(ev(eq.lhs, env), [min(step, sizes[0] - start)] + sizes[1:])
        rhs = np.broadcast_to(ev(eq.rhs, env), lhs.shape)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            bad[:, 0] += start
            yield bad


def validate_law(sem: Semantics, eq: Equation, budget: EnumerationBudget = DEFAULT_BUDGET,
                 *, seed: int = 0, samples: int = 10_000, large_arity: int = 5) -> LawReport:
    """Check ``eq`` on closed substitution instances drawn from the term pool.

    Laws with ``large_arity`` or more variables are checked exhaustively on
    the depth-1 pool plus ``samples`` seeded random depth-``max_depth``
    bindings.
    """
    names = eq.variables
    alg = _algebra(sem)
    if not names:
        l, r = alg.intern(sem.tree_any(eq.lhs)), alg.intern(sem.tree_any(eq.rhs))
        rep = LawReport(eq, str(sem), "closed", pool=1, instances=1)
        if l != r:
            rep.failing_instances = 1
            rep._found = [Counterexample({}, alg.trees[l], alg.trees[r])]
        return rep

    k = len(names)
    big = k >= large_arity
    ex_budget = budget.with_depth(min(budget.max_depth, 1)) if big else budget
    pool = _pool(sem, ex_budget)
    sampling_pool = _pool(sem, budget)
    ncls = len(pool.classes)
    ev = _Evaluator(sem, eq)
    report = LawReport(eq, str(sem), "classes", pool=len(pool.terms),
                       instances=len(pool.terms) ** k)

    if ev.tabs is not None or ncls ** k <= EXHAUSTIVE_LIMIT:
        cls = np.array(pool.classes, dtype=np.int64)
        found = list(_check_classes(ev, eq, names, pool, [cls] * k))
        bad = np.concatenate(found) if found else np.empty((0, k), dtype=np.int64)
        if len(bad):
            report.failing_instances = int(np.prod(pool.weight[bad], axis=1).sum())
            report._expand = (sem, eq, names, pool, bad)
    elif isinstance(sem, Free) and open_tree(eq.lhs) == open_tree(eq.rhs):
        # too many class tuples; equal open trees settle every instance
        report.method = "symbolic"
    else:
        report.method = "sampled"
        report.exhaustive = False
        report.instances = 0

    if big or report.method in ("symbolic", "sampled"):
        s_pool = sampling_pool
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, len(s_pool.terms), size=(samples, k))
        env = {n: s_pool.ids[idx[:, i]] for i, n in enumerate(names)}
        lhs = np.broadcast_to(ev(eq.lhs, env), (samples,))
        rhs = np.broadcast_to(ev(eq.rhs, env), (samples,))
        report.samples = samples
        if report.method == "classes":
            report.method = "classes+sampled"
        elif report.method == "symbolic":
            report.method = "symbolic+sampled"
        for row in np.flatnonzero(lhs != rhs).tolist():
            binding = {n: s_pool.terms[idx[row, i]] for i, n in enumerate(names)}
            report._found.append(Counterexample(binding, alg.trees[lhs[row]], alg.trees[rhs[row]]))
            report.failing_instances += 1
    return report


def _expand(sem, eq, names, pool, bad):
    alg = _algebra(sem)
    ev = _Evaluator(sem, eq)
    cls = np.array(pool.classes, dtype=np.int64)
    env = {n: cls[bad[:, i]] for i, n in enumerate(names)}
    lhs = np.broadcast_to(ev(eq.lhs, env), (len(bad),))
    rhs = np.broadcast_to(ev(eq.rhs, env), (len(bad),))
    out = []
    for row, (l, r) in zip(bad.tolist(), zip(lhs.tolist(), rhs.tolist())):
        members = tuple(pool.members[c] for c in row)
        binding = {n: m[0] for n, m in zip(names, members)}
        out.append(Counterexample(binding, alg.trees[l], alg.trees[r], members))
    return out


class _Counterexamples(Sequence):
    """Class-tuple counterexamples expanded in blocks, then any sampled ones."""

    _BLOCK = 256

    def __init__(self, args, extra):
        self._args = args
        self._bad = args[-1]
        self._blocks = {}
        self._extra = list(extra)

    def __len__(self):
        return len(self._bad) + len(self._extra)

    def _row(self, i):
        b, off = divmod(i, self._BLOCK)
        if b not in self._blocks:
            sem, eq, names, pool, bad = self._args
            chunk = bad[b * self._BLOCK:(b + 1) * self._BLOCK]
            self._blocks[b] = _expand(sem, eq, names, pool, chunk)
        return self._blocks[b][off]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        n = len(self._bad)
        return self._row(i) if i < n else self._extra[i - n]

    def __eq__(self, other):
        return list(self) == list(other) if isinstance(other, (list, Sequence)) else NotImplemented

    def __repr__(self):
        return f"<{len(self)} counterexamples>"


def designated_semantics(eq: Equation, budget: EnumerationBudget = DEFAULT_BUDGET) -> Semantics:
    """The semantics a catalog law is meant to hold in; static uses the budget atoms."""
    return parse_semantics(eq.semantics, budget.atoms)


def validate_laws(laws, budget: EnumerationBudget = DEFAULT_BUDGET, *, seed: int = 0,
                  semantics: Optional[Semantics] = None) -> list:
    return [validate_law(semantics or designated_semantics(e, budget), e, budget, seed=seed)
            for e in laws]


# ---------------------------------------------------------------------------
# census and counting


def census_distinct_trees(sem: Semantics, budget: EnumerationBudget = DEFAULT_BUDGET,
                          method: str = "closure") -> int:
    """Number of distinct trees ``sem`` assigns to the pool terms.

    ``closure`` grows the set of classes depth by depth, which is exact and
    reaches depths whose raw pools are too large to list; ``enumerate``
    evaluates every pool term.
    """
    if method == "enumerate":
        return len(_pool(sem, budget).classes)
    if method != "closure":
        raise ValueError(f"unknown census method {method!r}")
    alg = _algebra(sem)
    base = budget.with_depth(0)
    level = set(_pool(sem, base).classes)
    for _ in range(budget.max_depth):
        cur = sorted(level)
        nxt = set(cur)
        nxt.update(alg.neg(i) for i in cur)
        for i in cur:
            for j in cur:
                nxt.add(alg.conj(i, j))
                nxt.add(alg.disj(i, j))
        if nxt == level:
            break
        level = nxt
    return len(level)


def count_memorizing(n: int) -> int:
    """T_0 = 2, T_n = n * T_{n-1}^2 + 2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = 2
    for i in range(1, n + 1):
        t = i * t * t + 2
    return t


def count_static(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 2 ** (2 ** n)


MAX_DECISION_ATOMS = 3


def enumerate_decision_trees(atoms) -> list:
    """Every decision tree over ``atoms`` (at most three of them)."""
    atoms = tuple(as_ordering(atoms).atoms) if not isinstance(atoms, tuple) else atoms
    if len(set(atoms)) != len(atoms):
        raise ValueError("duplicate atoms")
    if len(atoms) > MAX_DECISION_ATOMS:
        raise ValueError(f"at most {MAX_DECISION_ATOMS} atoms (got {len(atoms)})")

    @lru_cache(maxsize=None)
    def over(avail: frozenset) -> tuple:
        out = [LEAF_T, LEAF_F]
        for a in atoms:
            if a in avail:
                sub = over(avail - {a})
                out.extend(Node(a, l, r) for l in sub for r in sub)
        return tuple(out)

    return list(over(frozenset(atoms)))


# ---------------------------------------------------------------------------
# hierarchy


def find_separating_witness(sem_a: Semantics, sem_b: Semantics,
                            budget: EnumerationBudget = DEFAULT_BUDGET) -> Optional[tuple]:
    """First pool pair ``(P, Q)`` equal under ``sem_b`` but not under ``sem_a``.

    Pairs are ordered by the position of ``Q``, then of ``P`` (``P`` comes
    first in the pool).
    """
    pa, pb = _pool(sem_a, budget), _pool(sem_b, budget)
    seen = {}   # b-class -> {a-class: first index}
    for j, (ca, cb) in enumerate(zip(pa.ids.tolist(), pb.ids.tolist())):
        byb = seen.setdefault(cb, {})
        others = [i for c, i in byb.items() if c != ca]
        if others:
            return pa.terms[min(others)], pa.terms[j]
        byb.setdefault(ca, j)
    return None


@dataclass
class HierarchyReport:
    pairs: int
    free_not_mem: int
    mem_not_static: int

    @property
    def ok(self) -> bool:
        return self.free_not_mem == 0 and self.mem_not_static == 0


def check_hierarchy(budget: EnumerationBudget = DEFAULT_BUDGET,
                    sigma: Optional[OrderLike] = None) -> HierarchyReport:
    """Count pool pairs breaking free => memorizing => static."""
    st = Static(as_ordering(sigma if sigma is not None else budget.atoms))
    ids = [_pool(s, budget).ids for s in (FREE, MEMORIZING, st)]
    bad_fm = bad_ms = 0
    n = len(ids[0])
    step = 1024
    for lo in range(0, n, step):
        eqs = [x[lo:lo + step, None] == x[None, :] for x in ids]
        bad_fm += int((eqs[0] & ~eqs[1]).sum())
        bad_ms += int((eqs[1] & ~eqs[2]).sum())
    return HierarchyReport(n * n, bad_fm, bad_ms)


def find_full_and_witness(sem: Semantics = MEMORIZING,
                          budget: EnumerationBudget = DEFAULT_BUDGET) -> Optional[tuple]:
    """First pool pair where ``P &&* Q`` and ``P && Q`` get different trees."""
    rep = validate_law(sem, law("FullAnd"), budget)
    if rep.holds:
        return None
    cx = rep.counterexamples[0]
    return cx.binding["x"], cx.binding["y"]
