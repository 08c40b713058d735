from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sclogic.equivalence import (DEFAULT_BUDGET, FREE, MEMORIZING, EnumerationBudget, Static,
                                 census_distinct_trees, check_hierarchy, class_of, class_tree,
                                 count_memorizing, count_static, decide_eq,
                                 enumerate_decision_trees, enumerate_terms,
                                 find_full_and_witness, find_separating_witness, instantiate,
                                 open_tree, parse_semantics, pool_size, validate_law)
from sclogic.laws import equation, law
from sclogic.statics import OrderingError
from sclogic.syntax import (F, T, Atom, Not, SeqAnd, SeqOr, SignatureError, depth,
                            expand_full_and, parse, render, substitute)
from sclogic.trees import LEAF_F, LEAF_T, Node, OpenTermError, is_decision_tree, replace_leaves, se
from strategies import mixed_terms, scl_terms

STATIC_AB = Static("ab")
ALL = [FREE, MEMORIZING, STATIC_AB]


def test_decide_eq_examples():
    assert decide_eq(FREE, parse("a && F"), parse("!a && F"))
    assert not decide_eq(MEMORIZING, parse("F && a"), parse("a && F"))
    assert decide_eq(STATIC_AB, parse("a && b"), parse("b && a"))
    assert decide_eq(MEMORIZING, "a && a", "a")
    assert not decide_eq(FREE, "a && a", "a")


def test_decide_eq_conditional_terms():
    assert decide_eq(MEMORIZING, "a <| b |> (c <| b |> a)", "a <| b |> a")
    assert decide_eq(STATIC_AB, "a <| b |> F", "b <| a |> F")


def test_decide_eq_errors():
    with pytest.raises(OpenTermError):
        decide_eq(FREE, "$x", "a")
    with pytest.raises(OrderingError):
        decide_eq(Static("a"), "a && b", "b && a")
    with pytest.raises(SignatureError):
        decide_eq(STATIC_AB, "a && (b <| a |> F)", "a")


def test_parse_semantics():
    assert parse_semantics("free") == FREE
    assert parse_semantics("Memorizing") == MEMORIZING
    assert parse_semantics("static", "ba") == Static("ba")
    with pytest.raises(ValueError):
        parse_semantics("static")
    with pytest.raises(ValueError):
        parse_semantics("classical")


# -- term pools --------------------------------------------------------------


def _naive_pool(atoms, d, constants=True):
    """Every term of depth <= d, as a set, straight from the grammar."""
    base = {Atom(a) for a in atoms} | ({T, F} if constants else set())
    pool = set(base)
    for _ in range(d):
        pool = pool | {Not(t) for t in pool} | {c(s, t) for c in (SeqAnd, SeqOr)
                                                for s in pool for t in pool}
    return pool


def test_pool_examples():
    assert list(enumerate_terms(EnumerationBudget("a", 0))) == [T, F, Atom("a")]
    assert len(list(enumerate_terms(EnumerationBudget("a", 1)))) == 24
    assert list(enumerate_terms(EnumerationBudget("ab", 0, False))) == [Atom("a"), Atom("b")]


@pytest.mark.parametrize("atoms, d, constants, size", [
    ("a", 1, True, 24), ("ab", 1, True, 40), ("ab", 2, True, 3244), ("ab", 2, False, 302),
    ("abc", 1, True, 60),
])
def test_pool_sizes_match_grammar(atoms, d, constants, size):
    b = EnumerationBudget(atoms, d, constants)
    terms = list(enumerate_terms(b))
    assert len(terms) == size == pool_size(b)
    assert len(set(terms)) == len(terms)
    assert set(terms) == _naive_pool(atoms, d, constants)


def test_pool_order():
    terms = list(enumerate_terms(EnumerationBudget("ab", 2)))
    assert [render(t) for t in terms[:8]] == ["T", "F", "a", "b", "!T", "!F", "!a", "!b"]
    assert render(terms[8]) == "T && T"
    depths = [depth(t) for t in terms]
    assert depths == sorted(depths)
    assert terms == list(enumerate_terms(EnumerationBudget("ab", 2)))


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumerationBudget((), 1)
    with pytest.raises(ValueError):
        EnumerationBudget("a", -1)


# -- class engine versus literal substitution -------------------------------


def _literal(sem, eq, budget):
    """Count failing instances by substituting and evaluating every binding."""
    terms = list(enumerate_terms(budget))
    names = eq.variables
    bad = []
    for combo in product(terms, repeat=len(names)):
        theta = dict(zip(names, combo))
        if sem.tree_any(substitute(eq.lhs, theta)) != sem.tree_any(substitute(eq.rhs, theta)):
            bad.append(combo)
    return bad


SMALL = EnumerationBudget("ab", 1)
CROSS_LAWS = [
    "$x && $y = $y && $x",
    "$x && ($x || $y) = $x",
    "$x && $x = $x",
    "!$x || $y = $y || !$x",
    "($x && F) || $y = ($x || T) && $y",
    "$x <| $y |> F = $y && $x",
    "$x <| $y |> ($x <| $y |> F) = $x <| $y |> F",
    "F && a = a && F",
]


@pytest.mark.parametrize("text", CROSS_LAWS)
@pytest.mark.parametrize("sem", ALL, ids=str)
def test_class_engine_matches_literal_substitution(sem, text):
    eq = equation(text)
    rep = validate_law(sem, eq, SMALL)
    bad = _literal(sem, eq, SMALL)
    assert rep.failing_instances == len(bad)
    expanded = [tuple(b.values()) for cx in rep.counterexamples for b in cx.bindings()]
    assert sorted(map(repr, expanded)) == sorted(map(repr, bad))


def test_three_variable_cross_check():
    eq = equation("($x || $y) && $z = ($x && $z) || ($y && $z)")
    b = EnumerationBudget("a", 1)
    for sem in (FREE, MEMORIZING, Static("a")):
        assert validate_law(sem, eq, b).failing_instances == len(_literal(sem, eq, b))


@settings(max_examples=60, deadline=None)
@given(mixed_terms(atoms=("a", "b")), mixed_terms(atoms=("a", "b")),
       mixed_terms(atoms=("a", "b")), st.sampled_from(ALL))
def test_normalizer_commutes_with_leaf_replacement(p, q, r, sem):
    x, y, z = se(p), se(q), se(r)
    direct = sem.normalize(replace_leaves(x, y, z))
    staged = sem.normalize(replace_leaves(sem.normalize(x), sem.normalize(y), sem.normalize(z)))
    assert direct == staged


@given(mixed_terms(atoms=("a", "b"), variables=("x", "y")),
       scl_terms(atoms=("a", "b")), mixed_terms(atoms=("a", "b")))
def test_substitution_lemma_for_open_trees(t, p, q):
    theta = {"x": p, "y": q}
    assert se(substitute(t, theta)) == instantiate(open_tree(t), {"x": se(p), "y": se(q)})


@given(scl_terms(atoms=("a", "b")), scl_terms(atoms=("a", "b")))
def test_class_of_agrees_with_tree(p, q):
    for sem in ALL:
        assert (class_of(sem, p) == class_of(sem, q)) == decide_eq(sem, p, q)
        assert class_tree(sem, class_of(sem, p)) == sem.tree(p)


# -- validate_law ------------------------------------------------------------


def test_validate_law_examples():
    rep = validate_law(MEMORIZING, law("Mem"), DEFAULT_BUDGET.with_depth(1))
    assert rep.holds and rep.instances == 40 ** 3 and rep.counterexamples == []
    rep = validate_law(FREE, law("Comm"))
    assert not rep.holds
    first = rep.counterexamples[0]
    assert {k: render(v) for k, v in first.binding.items()} == {"x": "F", "y": "a"}
    assert first.lhs_tree is LEAF_F and first.rhs_tree == Node("a", LEAF_F, LEAF_F)
    assert validate_law(FREE, law("F4")).holds
    assert validate_law(FREE, law("F4"), EnumerationBudget("abc", 1)).holds


def test_counterexamples_are_sorted_and_expand():
    rep = validate_law(MEMORIZING, law("Comm"), SMALL)
    order = {t: i for i, t in enumerate(enumerate_terms(SMALL))}
    keys = [tuple(order[v] for v in cx.binding.values()) for cx in rep.counterexamples]
    assert keys == sorted(keys)
    assert sum(cx.instances for cx in rep.counterexamples) == rep.failing_instances
    cx = rep.counterexamples[0]
    for b in cx.bindings():
        assert not decide_eq(MEMORIZING, substitute(law("Comm").lhs, b),
                             substitute(law("Comm").rhs, b))


def test_closed_laws():
    assert validate_law(FREE, law("F1")).method == "closed"
    rep = validate_law(FREE, equation("a && a = a"))
    assert not rep.holds and rep.counterexamples[0].binding == {}


def test_symbolic_route_for_large_free_laws():
    rep = validate_law(FREE, law("F7"))
    assert rep.holds and rep.method == "symbolic+sampled" and rep.samples == 10_000
    wrong = equation("($x && $y) && $z = $z && ($y && $x)")
    rep = validate_law(FREE, wrong)
    assert not rep.holds and not rep.exhaustive and rep.method == "sampled"
    cx = rep.counterexamples[0]
    assert not decide_eq(FREE, substitute(wrong.lhs, cx.binding), substitute(wrong.rhs, cx.binding))


def test_large_arity_laws_are_sampled_on_top():
    rep = validate_law(MEMORIZING, law("CPmem"))
    assert rep.holds and rep.method == "classes+sampled"
    assert rep.instances == 40 ** 6 and rep.samples == 10_000


def test_sampling_is_seeded():
    wrong = equation("($x && $y) && $z = $z && ($y && $x)")
    a = validate_law(FREE, wrong, seed=3).counterexamples
    b = validate_law(FREE, wrong, seed=3).counterexamples
    assert [cx.binding for cx in a] == [cx.binding for cx in b]


def test_static_budget_must_fit_the_ordering():
    with pytest.raises(OrderingError):
        validate_law(Static("a"), law("Comm"), DEFAULT_BUDGET)


# -- counting ------------------------------------------------------------------


def test_counts():
    assert [count_memorizing(n) for n in range(5)] == [2, 6, 74, 16430, 4 * 16430 ** 2 + 2]
    assert [count_static(n) for n in range(4)] == [2, 4, 16, 256]
    assert count_static(6) == 2 ** 64


def test_decision_tree_enumeration():
    assert enumerate_decision_trees(()) == [LEAF_T, LEAF_F]
    one = enumerate_decision_trees(("a",))
    assert len(one) == 6
    assert set(one[2:]) == {Node("a", l, r) for l in (LEAF_T, LEAF_F) for r in (LEAF_T, LEAF_F)}
    for n, atoms in enumerate(["", "a", "ab", "abc"]):
        trees = enumerate_decision_trees(tuple(atoms))
        assert len(trees) == len(set(trees)) == count_memorizing(n)
        assert all(is_decision_tree(x) for x in trees)
    with pytest.raises(ValueError):
        enumerate_decision_trees(("a", "b", "c", "d"))


def test_census():
    assert census_distinct_trees(MEMORIZING, EnumerationBudget("a", 2)) == 6
    assert census_distinct_trees(MEMORIZING, EnumerationBudget("a", 0)) == 3
    assert census_distinct_trees(Static("a"), EnumerationBudget("a", 3)) == 4
    assert census_distinct_trees(Static("ab"), EnumerationBudget("ab", 3)) == 16
    assert census_distinct_trees(MEMORIZING, EnumerationBudget("ab", 3)) == 74


@pytest.mark.parametrize("sem", ALL, ids=str)
@pytest.mark.parametrize("d", [0, 1, 2])
def test_census_closure_matches_enumeration(sem, d):
    b = EnumerationBudget("ab", d)
    assert census_distinct_trees(sem, b) == census_distinct_trees(sem, b, method="enumerate")


def test_census_grows_with_budget():
    counts = [census_distinct_trees(FREE, EnumerationBudget("ab", d)) for d in range(3)]
    assert counts == sorted(counts) and counts[-1] == 410
    mem = [census_distinct_trees(MEMORIZING, EnumerationBudget("ab", d)) for d in range(4)]
    assert mem == sorted(mem) and mem[-1] <= count_memorizing(2)


def test_mse_image_is_within_decision_trees():
    allowed = set(enumerate_decision_trees(("a", "b")))
    for t in enumerate_terms(EnumerationBudget("ab", 2)):
        assert MEMORIZING.tree(t) in allowed


# -- hierarchy -----------------------------------------------------------------


def test_separating_witnesses():
    p, q = find_separating_witness(FREE, MEMORIZING)
    assert (render(p), render(q)) == ("a", "a && a")
    p, q = find_separating_witness(MEMORIZING, Static("a"), EnumerationBudget("a", 2))
    assert (render(p), render(q)) == ("F", "a && F")
    assert find_separating_witness(FREE, FREE) is None
    for fine, coarse in [(FREE, MEMORIZING), (MEMORIZING, STATIC_AB), (FREE, STATIC_AB)]:
        p, q = find_separating_witness(fine, coarse)
        assert decide_eq(coarse, p, q) and not decide_eq(fine, p, q)


def test_hierarchy_on_depth_one_pool():
    rep = check_hierarchy(SMALL)
    assert rep.ok and rep.pairs == 1600


@given(scl_terms(atoms=("a", "b")), scl_terms(atoms=("a", "b")))
def test_hierarchy_property(p, q):
    if decide_eq(FREE, p, q):
        assert decide_eq(MEMORIZING, p, q)
    if decide_eq(MEMORIZING, p, q):
        assert decide_eq(STATIC_AB, p, q)
        assert decide_eq(Static("ba"), p, q)


def test_full_and_witness():
    p, q = find_full_and_witness(MEMORIZING)
    assert (render(p), render(q)) == ("F", "a")
    assert not decide_eq(MEMORIZING, expand_full_and(p, q), SeqAnd(p, q))
    assert find_full_and_witness(STATIC_AB) is None
