"""Term workbench for the vanilla lambda-calculus, the value substitution calculus and friends."""
from .alpha import alpha_eq, barendregt, canonical_key
from .formulas import Atom, Imp, Meta, TypeCtx
from .rewriting import (
    CALCULI,
    AllPathsTerminate,
    CapExceeded,
    CycleFound,
    Redex,
    RuleId,
    Status,
    Trace,
    is_cut_free,
    normal_status,
    normalize,
    redexes,
    reduction_graph,
    step_at,
)
from .structeq import bisim_probe, equiv_bounded, root_moves, weak_positions
from .subst import fresh, rename, subst_nd, subst_value
from .syntax import parse_context, parse_formula, parse_term, pretty
from .terms import (
    App,
    Cut,
    ESub,
    Lam,
    Sel,
    Subtr,
    Var,
    free_vars,
    is_value,
    plug,
    size,
    split,
)
from .translate import (
    nd_to_sc,
    sc_to_nd,
    simulate_cut_in_vsc,
    simulate_vsc_in_vanilla,
    strip_renaming_cuts,
    translate_ctx,
)
from .typecheck import check_nd, check_sc, infer, subject_reduction_probe

__version__ = "0.1.0"
