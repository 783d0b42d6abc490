"""Redexes, single steps, strategies and exhaustive reduction graphs.

Every rule is matched at the root of a subterm and closed under contexts
by enumerating positions.  The rules at a distance (``dB``, ``vs`` and
cut elimination) decompose their subterm into a left context and a value
when they match and again when they fire.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .alpha import canonical_key
from .errors import CalculusMismatch, StaleRedex
from .subst import fresh, rename, subst_nd, subst_value
from .terms import (
    App,
    Cut,
    ESub,
    Lam,
    Position,
    Sel,
    Subtr,
    Term,
    Var,
    VANILLA_NODES,
    all_vars,
    calculus_of,
    count_nodes,
    format_position,
    is_value,
    peel,
    plug,
    positions,
    replace_at,
    split_natural,
    subterm_at,
)


class RuleId(enum.Enum):
    DbAtDistance = "dB"
    SSub = "s"
    VsSub = "vs"
    BetaVWeak = "bv-weak"
    BetaVStrong = "bv-strong"
    CutElim = "cut"
    RenCut = "ren-cut"

    @property
    def calculus(self) -> str:
        return "vanilla" if self in (RuleId.CutElim, RuleId.RenCut) else "natural"

    def __str__(self):
        return self.value


_ORDER = {r: i for i, r in enumerate(RuleId)}

CALCULI: Dict[str, frozenset] = {
    "sc": frozenset({RuleId.DbAtDistance, RuleId.SSub}),
    "vsc": frozenset({RuleId.DbAtDistance, RuleId.VsSub}),
    "plotkin-weak": frozenset({RuleId.BetaVWeak}),
    "plotkin-strong": frozenset({RuleId.BetaVStrong}),
    "vanilla": frozenset({RuleId.CutElim}),
    "renaming": frozenset({RuleId.RenCut}),
}


def rule_set(rules) -> frozenset:
    """Accept a calculus name, a rule, or an iterable of rules or rule names."""
    if isinstance(rules, str):
        if rules in CALCULI:
            return CALCULI[rules]
        return frozenset({RuleId(rules)})
    if isinstance(rules, RuleId):
        return frozenset({rules})
    return frozenset(r if isinstance(r, RuleId) else RuleId(r) for r in rules)


@dataclass(frozen=True)
class Redex:
    rule: RuleId
    at: Position

    def __str__(self):
        return f"{self.rule.value} @ {format_position(self.at)}"


class Status(enum.Enum):
    Normal = "Normal"
    FuelExhausted = "FuelExhausted"
    Reducible = "Reducible"

    def __str__(self):
        return self.value


# ---------------------------------------------------------------------------
# Root matching


def _is_weak(pos: Sequence[Sel]) -> bool:
    return Sel.LamBody not in pos


def matches(rule: RuleId, t: Term, pos: Position = ()) -> bool:
    """Does the root of ``t`` (sitting at ``pos``) match ``rule``?"""
    if rule is RuleId.DbAtDistance:
        return isinstance(t, App) and isinstance(split_natural(t.fun)[1], Lam)
    if rule is RuleId.SSub:
        return isinstance(t, ESub)
    if rule is RuleId.VsSub:
        return isinstance(t, ESub) and is_value(split_natural(t.content)[1])
    if rule in (RuleId.BetaVStrong, RuleId.BetaVWeak):
        ok = isinstance(t, App) and isinstance(t.fun, Lam) and is_value(t.arg)
        return ok and (rule is RuleId.BetaVStrong or _is_weak(pos))
    if rule is RuleId.CutElim:
        return isinstance(t, Cut)
    if rule is RuleId.RenCut:
        return isinstance(t, Cut) and isinstance(peel(t.content, VANILLA_NODES)[1], Var)
    raise ValueError(f"unknown rule {rule!r}")


def _check_calculus(t: Term, rules: Iterable[RuleId]) -> None:
    found = calculus_of(t)
    for r in rules:
        if found != "both" and found != r.calculus:
            raise CalculusMismatch(f"rule {r.value} needs a {r.calculus} term, got a {found} one")


def redexes(t: Term, rules) -> List[Redex]:
    """All redexes of ``t`` in leftmost-outermost order (rules in declaration order per position)."""
    rules = sorted(rule_set(rules), key=_ORDER.__getitem__)
    _check_calculus(t, rules)
    out = []
    for pos, u in positions(t):
        if isinstance(u, Var):
            continue
        for r in rules:
            if matches(r, u, pos):
                out.append(Redex(r, pos))
    return out


# ---------------------------------------------------------------------------
# Firing


def _peel_n(t: Term, n: int):
    frames, _ = peel(t, (Cut, Subtr, ESub))
    frames = frames[:n]
    for _ in range(n):
        t = t.body
    return list(frames), t


def freshen_frames(frames, inner: Term, avoid) -> Tuple[list, Term]:
    """Rename the binders of a left context so that none lies in ``avoid``.

    The renaming is applied to the later frames and to ``inner``, which is
    what the binders scope over.
    """
    frames = list(frames)
    avoid = frozenset(avoid)
    if not any(f.binder in avoid for f in frames):
        return frames, inner
    taken = set(avoid) | all_vars(plug(frames, inner))
    for i, f in enumerate(frames):
        if f.binder not in avoid:
            continue
        nb = fresh(f.binder, taken)
        taken.add(nb)
        rest = rename(plug(frames[i + 1:], inner), f.binder, nb)
        frames[i + 1:], inner = _peel_n(rest, len(frames) - i - 1)
        frames[i] = replace(f, binder=nb)
    return frames, inner


def root_step(rule: RuleId, t: Term) -> Term:
    if rule is RuleId.DbAtDistance:
        frames, lam = split_natural(t.fun)
        frames, lam = freshen_frames(frames, lam, t.arg.fv)
        return plug(frames, ESub(t.arg, lam.binder, lam.body))
    if rule is RuleId.SSub:
        return subst_nd(t.body, t.binder, t.content)
    if rule is RuleId.VsSub:
        frames, v = split_natural(t.content)
        frames, v = freshen_frames(frames, v, t.body.fv - {t.binder})
        return plug(frames, subst_nd(t.body, t.binder, v))
    if rule in (RuleId.BetaVStrong, RuleId.BetaVWeak):
        return subst_nd(t.fun.body, t.fun.binder, t.arg)
    if rule in (RuleId.CutElim, RuleId.RenCut):
        return cut_root(t)
    raise ValueError(f"unknown rule {rule!r}")


def cut_root(t: Cut) -> Term:
    """Root cut elimination: ``let x = L<v> in u`` becomes ``L<{v/x}u>``."""
    frames, v = peel(t.content, VANILLA_NODES)
    frames, v = freshen_frames(frames, v, t.body.fv - {t.binder})
    return plug(frames, subst_value(v, t.binder, t.body))


def step_at(t: Term, r: Redex) -> Term:
    try:
        u = subterm_at(t, r.at)
    except KeyError:
        raise StaleRedex(f"no subterm at {format_position(r.at)}") from None
    if isinstance(u, Var) or not matches(r.rule, u, r.at):
        raise StaleRedex(f"{r} does not match {u}")
    return replace_at(t, r.at, root_step(r.rule, u))


# ---------------------------------------------------------------------------
# Traces and strategies


@dataclass(frozen=True)
class Step:
    redex: Redex
    result: Term


@dataclass
class Trace:
    initial: Term
    steps: List[Step] = field(default_factory=list)
    status: Status = Status.Normal

    @property
    def final(self) -> Term:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def rules(self) -> List[str]:
        return [s.redex.rule.value for s in self.steps]

    def __len__(self):
        return len(self.steps)

    def to_text(self) -> str:
        lines = [str(self.initial)]
        for s in self.steps:
            lines.append(f"  -> [{s.redex.rule.value} {format_position(s.redex.at)}] {s.result}")
        lines.append(f"status: {self.status.value} after {len(self.steps)} step(s)")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "initial": str(self.initial),
            "steps": [
                {"rule": s.redex.rule.value,
                 "path": [sel.value for sel in s.redex.at],
                 "result": str(s.result)}
                for s in self.steps
            ],
            "status": self.status.value,
        }


def choose(rs: List[Redex], strategy: str) -> Redex:
    if strategy == "lo":
        return rs[0]
    if strategy == "ri":
        return rs[-1]
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize(t: Term, rules, strategy: str = "lo", fuel: int = 1000) -> Trace:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    rules = rule_set(rules)
    trace = Trace(t)
    cur = t
    while True:
        rs = redexes(cur, rules)
        if not rs:
            trace.status = Status.Normal
            return trace
        if len(trace.steps) >= fuel:
            trace.status = Status.FuelExhausted
            return trace
        r = choose(rs, strategy)
        cur = step_at(cur, r)
        trace.steps.append(Step(r, cur))


def normal_status(t: Term, rules) -> Status:
    return Status.Reducible if redexes(t, rules) else Status.Normal


def is_normal(t: Term, rules) -> bool:
    return not redexes(t, rules)


def is_cut_free(t: Term) -> bool:
    return count_nodes(t, Cut) == 0


def reducts(t: Term, rules) -> List[Tuple[Redex, Term]]:
    return [(r, step_at(t, r)) for r in redexes(t, rules)]


# ---------------------------------------------------------------------------
# Reduction graphs


@dataclass(frozen=True)
class AllPathsTerminate:
    max_len: int
    nodes: int

    def __str__(self):
        return f"AllPathsTerminate(max path {self.max_len}, {self.nodes} nodes)"


@dataclass(frozen=True)
class CapExceeded:
    cap: int

    def __str__(self):
        return f"CapExceeded(more than {self.cap} nodes)"


@dataclass(frozen=True)
class CycleFound:
    nodes: int
    witness: Optional[Term] = None

    def __str__(self):
        return f"CycleFound({self.nodes} nodes, through {self.witness})"


def reduction_graph(t: Term, rules, node_cap: int = 10_000):
    """Explore every reduct of ``t`` modulo alpha.

    Reports termination with the longest path, a cycle, or that the node
    cap was exceeded before the graph was fully explored.
    """
    if node_cap < 1:
        raise ValueError("node_cap must be at least 1")
    rules = rule_set(rules)
    k0 = canonical_key(t)
    terms = {k0: t}
    edges: Dict[str, List[str]] = {}
    frontier = [k0]
    while frontier:
        nxt = []
        for k in frontier:
            succ = []
            for r in redexes(terms[k], rules):
                u = step_at(terms[k], r)
                ku = canonical_key(u)
                succ.append(ku)
                if ku not in terms:
                    terms[ku] = u
                    if len(terms) > node_cap:
                        return CapExceeded(node_cap)
                    nxt.append(ku)
            edges[k] = succ
        frontier = nxt
    return _longest(k0, edges, terms)


def _longest(root, edges, terms):
    # Iterative DFS: colour 1 = on stack, 2 = done.
    colour: Dict[str, int] = {}
    depth: Dict[str, int] = {}
    stack = [(root, 0)]
    while stack:
        k, i = stack.pop()
        if i == 0:
            colour[k] = 1
        succ = edges[k]
        if i < len(succ):
            stack.append((k, i + 1))
            s = succ[i]
            c = colour.get(s)
            if c == 1:
                return CycleFound(len(terms), terms[s])
            if c is None:
                stack.append((s, 0))
            continue
        colour[k] = 2
        depth[k] = 1 + max((depth[s] for s in succ), default=-1)
    return AllPathsTerminate(depth[root], len(terms))
