"""Short-circuit logic: evaluation trees, congruences, law catalog and models."""

from .equivalence import (DEFAULT_BUDGET, FREE, MEMORIZING, EnumerationBudget, Free, Memorizing,
                          Static, census_distinct_trees, check_hierarchy, count_memorizing,
                          count_static, decide_eq, enumerate_decision_trees, enumerate_terms,
                          find_full_and_witness, find_separating_witness, parse_semantics,
                          validate_law)
from .laws import AxiomSet, Equation, axiom_set, catalog, equation, law
from .models import (FiniteModel, IndependenceFixture, builtin_fixture, check_equation,
                     eval_in_model, search_model, verify_independence)
from .statics import (AtomOrdering, build_D, build_E, sse, sse_alt, sse_cond, static_tree,
                      truth_table)
from .syntax import (Atom, Cond, Const, F, Not, SeqAnd, SeqOr, T, Term, Var, dual,
                     expand_full_and, parse, render, substitute, to_cond, to_scl)
from .trees import (LEAF_F, LEAF_T, EvalTree, Node, is_decision_tree, left_reduce, memorize,
                    mse, render_tree, replace_leaves, right_reduce, se, tree_dual)

__version__ = "0.1.0"
