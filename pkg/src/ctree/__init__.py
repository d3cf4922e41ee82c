"""Computation trees, problem schemes and prefix classes over finite structures."""
from .logic import (EXISTS, FORALL, And, App, Eq, Exists, Forall, Imp, Lit, LogicError, Not, Or,
                    Pred, PrenexSentence, Signature, SignatureError, Symbol, Var, free_vars,
                    to_dnf, to_nnf, to_prenex)
from .prefix import (P, P1, P2, P3, P_EAE, P_EXISTS, PrefixLanguage, inclusion_witness,
                     is_subword_closed, prefix_member, prefix_subset)
from .schemes import (EqVars, ExprSequence, FuncExpr, PredVars, ProblemScheme, TreeScheme,
                      kappa, normalize_variables, path_enumerate, problem_tree,
                      scheme_from_literals, special_representation, term_sequence)
from .semantics import (Bounded, Explicit, ExplosionError, FiniteStructure,
                        check_realizable_unique, enumerate_structures, evaluate_problem,
                        evaluate_tree, model_check, solves_on)
from .satisfiability import Sat, UnsatUpTo, sat_check, sat_conjunction, theory_member
from .solvability import FailsWith, Solves, sat_via_solvability, solves_relative
from .optimize import (ComplexityMeasure, enumerate_trees, k_psi, optimize, psi_problem,
                       psi_scheme, psi_word, sat_via_optimizer)
from .classify import (ClassDescription, Decidable, ReductionClass, Unknown, classify,
                       explain)

__version__ = "0.1.0"
