import pickle

import pytest
from hypothesis import given, strategies as st

from sclogic.syntax import Var, dual, parse
from sclogic.trees import (LEAF_F, LEAF_T, Node, OpenTermError, is_decision_tree, left_reduce,
                           memorize, mse, parse_tree, render_tree, replace_leaves, right_reduce,
                           se, to_ascii, to_dot, to_structured, tree_dual, tree_size)
from sclogic.equivalence import enumerate_decision_trees
from strategies import Replies, mixed_terms, run, scl_terms, walk

Ta = Node("a", LEAF_T, LEAF_F)

trees_ = st.recursive(
    st.sampled_from([LEAF_T, LEAF_F]),
    lambda s: st.builds(Node, st.sampled_from("abc"), s, s),
    max_leaves=16)


def n(a, l, r):
    return Node(a, l, r)


def test_leaves_are_singletons():
    assert pickle.loads(pickle.dumps(LEAF_T)) is LEAF_T
    assert pickle.loads(pickle.dumps(n("a", LEAF_F, LEAF_T))).right is LEAF_T


def test_replace_leaves():
    assert replace_leaves(LEAF_T, Ta, LEAF_F) == Ta
    assert replace_leaves(LEAF_F, Ta, LEAF_T) is LEAF_T
    x = n("b", LEAF_T, LEAF_F)
    assert replace_leaves(x, Ta, LEAF_T) == n("b", Ta, LEAF_T)


@given(trees_, trees_, trees_, trees_, trees_)
def test_replace_leaves_composes(x, y1, z1, y2, z2):
    lhs = replace_leaves(replace_leaves(x, y1, z1), y2, z2)
    rhs = replace_leaves(x, replace_leaves(y1, y2, z2), replace_leaves(z1, y2, z2))
    assert lhs == rhs


def test_se_golden():
    picture = n("b", LEAF_F, n("a", LEAF_T, LEAF_F))
    assert se(parse("!b && a")) == picture
    assert se(parse("!(b || !a)")) == picture
    assert se(parse("a")) == Ta
    assert se(parse("T")) is LEAF_T
    assert se(parse("a && (b && a)")) == n("a", n("b", Ta, LEAF_F), LEAF_F)


def test_se_conditional_clause():
    # the same tree as the sequential comparison x && y = y <| x |> F
    assert se(parse("b <| a |> F")) == se(parse("a && b"))
    assert se(parse("F <| a |> T")) == se(parse("!a"))


def test_se_rejects_open_terms():
    with pytest.raises(OpenTermError):
        se(Var("x"))
    with pytest.raises(OpenTermError):
        mse(parse("a && $x"))


@given(mixed_terms(), st.lists(st.booleans(), min_size=1, max_size=8))
def test_se_matches_short_circuit_interpreter(t, answers):
    ask = Replies(answers)
    value = run(t, ask)
    assert walk(se(t), answers) == (value, ask.asked)


@given(mixed_terms(), st.lists(st.booleans(), min_size=1, max_size=8))
def test_mse_matches_memorizing_interpreter(t, answers):
    ask = Replies(answers, memo=True)
    value = run(t, ask)
    assert walk(mse(t), answers, memo=True) == (value, ask.asked)


def test_reductions():
    x = n("a", n("a", LEAF_T, LEAF_F), n("b", n("a", LEAF_F, LEAF_T), LEAF_T))
    assert left_reduce("a", x) == LEAF_T
    assert right_reduce("a", x) == n("b", LEAF_T, LEAF_T)
    assert left_reduce("b", n("b", Ta, LEAF_F)) == Ta
    assert left_reduce("c", Ta) == Ta


@given(trees_, st.sampled_from("abc"), st.sampled_from("abc"))
def test_reductions_commute(x, a, b):
    if a != b:
        assert left_reduce(a, right_reduce(b, x)) == right_reduce(b, left_reduce(a, x))
    assert left_reduce(a, left_reduce(a, x)) == left_reduce(a, x)


def test_memorize_golden():
    assert mse(parse("a && (b && a)")) == n("a", n("b", LEAF_T, LEAF_F), LEAF_F)
    assert mse(parse("a && a")) == Ta
    assert memorize(LEAF_F) is LEAF_F


@given(trees_)
def test_memorize_idempotent_and_yields_decision_trees(x):
    m = memorize(x)
    assert memorize(m) == m
    assert is_decision_tree(m)
    assert tree_size(m) <= tree_size(x)


@given(scl_terms(atoms=("a", "b")))
def test_mse_image_is_a_decision_tree(t):
    assert is_decision_tree(mse(t))
    assert mse(t) in set(enumerate_decision_trees(("a", "b")))


def test_is_decision_tree():
    assert is_decision_tree(LEAF_T)
    assert is_decision_tree(n("a", n("b", LEAF_T, LEAF_F), n("b", LEAF_F, LEAF_T)))
    assert not is_decision_tree(n("a", n("a", LEAF_T, LEAF_F), LEAF_F))
    assert not is_decision_tree(n("a", LEAF_T, n("b", LEAF_T, n("a", LEAF_T, LEAF_F))))


def test_tree_dual():
    assert tree_dual(Ta) == Ta
    assert tree_dual(LEAF_T) is LEAF_F
    assert tree_dual(n("a", LEAF_T, Ta)) == n("a", Ta, LEAF_F)


@given(scl_terms())
def test_tree_dual_matches_term_dual(t):
    assert se(dual(t)) == tree_dual(se(t))
    assert tree_dual(tree_dual(se(t))) == se(t)


def test_structured_rendering():
    picture = se(parse("!b && a"))
    assert to_structured(picture) == "(F <b> (T <a> F))"
    assert render_tree(LEAF_T) == "T"
    assert parse_tree("(F <b> (T <a> F))") == picture


@given(trees_)
def test_structured_round_trip(x):
    assert parse_tree(to_structured(x)) == x


def test_ascii_rendering():
    assert to_ascii(se(parse("!b && a"))) == "\n".join([
        "   b",
        "  / \\",
        " /   \\",
        "F     a",
        "     / \\",
        "    T   F",
    ])


def test_dot_rendering():
    dot = to_dot(se(parse("!b && a")))
    assert dot.startswith("digraph tree {")
    assert dot.count("style=solid") == 2 and dot.count("style=dashed") == 2
    assert 'label="b"' in dot and dot.rstrip().endswith("}")
    with pytest.raises(ValueError):
        render_tree(Ta, "svg")
