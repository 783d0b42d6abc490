"""Translations between natural terms and vanilla terms, and simulation checkers.

``nd_to_sc`` turns an application ``t s`` into
``let a = t' in let b = a @ s' in b`` with ``a`` and ``b`` fresh;
``sc_to_nd`` turns a subtraction ``let x = y @ s in t`` into the explicit
substitution ``let x = y s' in t'``.  Everything else is mapped
homomorphically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .alpha import alpha_eq
from .errors import ResidualCut, SimulationFailure
from .rewriting import (
    Redex,
    RuleId,
    Status,
    Step,
    Trace,
    matches,
    normalize,
    redexes,
    step_at,
)
from .terms import (
    App,
    Cut,
    CutFrame,
    ESub,
    ESubFrame,
    Hole,
    Lam,
    Position,
    Sel,
    Subtr,
    SubtrFrame,
    Term,
    Var,
    all_vars,
    count_nodes,
    format_position,
    is_valid_position,
    require_calculus,
    subterm_at,
)

NAT_TO_VAN = "nd-to-sc"
VAN_TO_NAT = "sc-to-nd"

_DIRECTIONS = {
    "nd-to-sc": NAT_TO_VAN, "natural-to-vanilla": NAT_TO_VAN, "vsc-to-vanilla": NAT_TO_VAN,
    "sc-to-nd": VAN_TO_NAT, "vanilla-to-natural": VAN_TO_NAT, "vanilla-to-vsc": VAN_TO_NAT,
}


def _direction(d: str) -> str:
    try:
        return _DIRECTIONS[d]
    except KeyError:
        raise ValueError(f"unknown direction {d!r}") from None


class _Names:
    """Reserved names ``a``, ``a1``, ... and ``b``, ``b1``, ... skipping used variables."""

    def __init__(self, used):
        self.used = set(used)
        self.next = {"a": 0, "b": 0}

    def take(self, name: str) -> Var:
        k = self.next[name]
        while Var(name, k) in self.used:
            k += 1
        self.next[name] = k + 1
        return Var(name, k)


def nd_to_sc(t: Term) -> Term:
    require_calculus(t, "natural")
    return _nd(t, _Names(all_vars(t)))


def _nd(t, names):
    if isinstance(t, (Var, Hole)):
        return t
    if isinstance(t, Lam):
        return Lam(t.binder, _nd(t.body, names))
    if isinstance(t, App):
        a, b = names.take("a"), names.take("b")
        fun = _nd(t.fun, names)
        arg = _nd(t.arg, names)
        return Cut(fun, a, Subtr(a, arg, b, b))
    if isinstance(t, ESub):
        content = _nd(t.content, names)
        return Cut(content, t.binder, _nd(t.body, names))
    raise TypeError(f"not a natural term: {t!r}")


def sc_to_nd(t: Term) -> Term:
    require_calculus(t, "vanilla")
    return _sc(t)


def _sc(t):
    if isinstance(t, (Var, Hole)):
        return t
    if isinstance(t, Lam):
        return Lam(t.binder, _sc(t.body))
    if isinstance(t, Cut):
        return ESub(_sc(t.content), t.binder, _sc(t.body))
    if isinstance(t, Subtr):
        return ESub(App(t.head, _sc(t.content)), t.binder, _sc(t.body))
    raise TypeError(f"not a vanilla term: {t!r}")


def translate(direction: str, t: Term) -> Term:
    return nd_to_sc(t) if _direction(direction) == NAT_TO_VAN else sc_to_nd(t)


# ---------------------------------------------------------------------------
# Contexts and positions


def translate_position(direction: str, pos: Sequence[Sel]) -> Position:
    d = _direction(direction)
    out: List[Sel] = []
    for sel in pos:
        if d == NAT_TO_VAN:
            if sel is Sel.AppFun:
                out.append(Sel.CutContent)
            elif sel is Sel.AppArg:
                out += [Sel.CutBody, Sel.SubtrContent]
            else:
                out.append(sel)
        else:
            if sel is Sel.SubtrContent:
                out += [Sel.CutContent, Sel.AppArg]
            elif sel is Sel.SubtrBody:
                out.append(Sel.CutBody)
            else:
                out.append(sel)
    return tuple(out)


def translate_ctx(direction: str, ctx):
    """Translate a left context (frames), a position, or a context given as a term with a hole."""
    d = _direction(direction)
    if isinstance(ctx, Term):
        return nd_to_sc(ctx) if d == NAT_TO_VAN else sc_to_nd(ctx)
    ctx = tuple(ctx)
    if all(isinstance(s, Sel) for s in ctx):
        return translate_position(d, ctx)
    if d == NAT_TO_VAN:
        # Translate the frames together so fresh names are drawn once.
        used = set()
        for f in ctx:
            used |= all_vars(f.content) | {f.binder}
        names = _Names(used)
        return tuple(CutFrame(_nd(f.content, names), f.binder) for f in ctx)
    out = []
    for f in ctx:
        if isinstance(f, SubtrFrame):
            out.append(ESubFrame(App(f.head, _sc(f.content)), f.binder))
        else:
            out.append(ESubFrame(_sc(f.content), f.binder))
    return tuple(out)


# ---------------------------------------------------------------------------
# Simulations


@dataclass(frozen=True)
class SimReport:
    calculus: str
    redex: Redex
    target: Trace
    matched: bool
    shape: str

    def to_json(self) -> dict:
        return {
            "source": {"calculus": self.calculus, "rule": self.redex.rule.value,
                       "path": [s.value for s in self.redex.at]},
            "target": self.target.to_json(),
            "shape": self.shape,
            "matched": self.matched,
        }

    def to_text(self) -> str:
        head = (f"{self.calculus} step {self.redex} simulated by {self.shape}: "
                f"{'matched' if self.matched else 'NOT matched'}")
        return head + "\n" + self.target.to_text()


def _fire(trace: Trace, cur: Term, r: Redex) -> Term:
    if not is_valid_position(cur, r.at) or isinstance(subterm_at(cur, r.at), Var) \
            or not matches(r.rule, subterm_at(cur, r.at), r.at):
        raise SimulationFailure(f"expected a {r.rule.value} redex at {format_position(r.at)}",
                                reached=cur)
    cur = step_at(cur, r)
    trace.steps.append(Step(r, cur))
    return cur


def simulate_cut_in_vsc(t: Term, r: Redex) -> SimReport:
    """Replay a cut-elimination step of ``t`` on its natural image: one vs, then dB steps."""
    if r.rule not in (RuleId.CutElim, RuleId.RenCut):
        raise ValueError("expected a cut-elimination redex")
    goal = sc_to_nd(step_at(t, r))
    cur = sc_to_nd(t)
    trace = Trace(cur)
    at = translate_position(VAN_TO_NAT, r.at)
    cur = _fire(trace, cur, Redex(RuleId.VsSub, at))
    # Each subtraction whose head received an abstraction left one dB redex behind.
    bound = count_nodes(t, Subtr)
    k = 0
    while not alpha_eq(cur, goal):
        below = [q for q in redexes(cur, {RuleId.DbAtDistance}) if q.at[:len(at)] == at]
        if not below or k >= bound:
            raise SimulationFailure(f"dB steps after vs at {format_position(at)} do not reach "
                                    f"the image of the reduct", goal, cur)
        cur = _fire(trace, cur, below[0])
        k += 1
    trace.status = Status.Normal if not redexes(cur, "vsc") else Status.Reducible
    return SimReport("vanilla", r, trace, True, f"vs;dB*{k}")


def simulate_vsc_in_vanilla(t: Term, r: Redex) -> SimReport:
    """Replay a dB or vs step of ``t`` on its vanilla image: two cuts for dB, one for vs."""
    if r.rule not in (RuleId.DbAtDistance, RuleId.VsSub):
        raise ValueError("expected a dB or vs redex")
    goal = nd_to_sc(step_at(t, r))
    cur = nd_to_sc(t)
    trace = Trace(cur)
    at = translate_position(NAT_TO_VAN, r.at)
    cur = _fire(trace, cur, Redex(RuleId.CutElim, at))
    if r.rule is RuleId.DbAtDistance:
        # The abstraction sits under the frames of L; after the principal step
        # the leftover cut let b = (let x = s in u) in b is under the same frames.
        depth = _left_depth(subterm_at(t, r.at).fun)
        cur = _fire(trace, cur, Redex(RuleId.CutElim, at + (Sel.CutBody,) * depth))
        shape = "cut;cut"
    else:
        shape = "cut"
    if not alpha_eq(cur, goal):
        raise SimulationFailure("vanilla steps do not reach the image of the reduct", goal, cur)
    trace.status = Status.Normal if not redexes(cur, "vanilla") else Status.Reducible
    return SimReport("vsc", r, trace, True, shape)


def _left_depth(t: Term) -> int:
    n = 0
    while isinstance(t, ESub):
        n += 1
        t = t.body
    return n


# ---------------------------------------------------------------------------
# Renaming cuts


def strip_renaming_cuts(t: Term, fuel: Optional[int] = None):
    """Eliminate renaming cuts; return the cut-free result and the number of steps.

    Each renaming step shrinks the term, so ``size(t)`` steps always suffice.
    """
    trace = normalize(t, {RuleId.RenCut}, "lo", t.size if fuel is None else fuel)
    out, k = trace.final, len(trace.steps)
    if count_nodes(out, Cut):
        raise ResidualCut(out, k)
    return out, k


def reaches_by_db(t: Term, goal: Term, max_steps: int) -> Optional[int]:
    """Number of leftmost-outermost dB steps from ``t`` to ``goal`` (up to alpha), or None."""
    for k in range(max_steps + 1):
        if alpha_eq(t, goal):
            return k
        rs = redexes(t, {RuleId.DbAtDistance})
        if not rs:
            return None
        t = step_at(t, rs[0])
    return None
