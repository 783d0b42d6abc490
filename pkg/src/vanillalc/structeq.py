"""Structural equivalence on vanilla terms.

A root move slides a cut or a subtraction across a weak context, that is a
context whose hole is not under an abstraction::

    let x = s in W<t>        ~  W<let x = s in t>
    let x = y @ s in W<t>    ~  W<let x = y @ s in t>

provided ``x`` is not free in ``W`` and ``W`` captures none of the free
variables of ``s`` (nor the head ``y``).  Equivalence is the closure of
moves under contexts, symmetry and transitivity; here it is only searched
for, breadth-first and up to a move budget.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .alpha import alpha_eq, barendregt, canonical_key
from .errors import DiagramFailure
from .rewriting import Redex, RuleId, redexes, step_at
from .terms import (
    Cut,
    Position,
    Sel,
    Subtr,
    Term,
    context_at,
    count_nodes,
    positions,
    replace_at,
    subterm_at,
)

_CUT = {RuleId.CutElim}


def is_weak(pos) -> bool:
    return Sel.LamBody not in pos


def weak_positions(t: Term) -> List[Position]:
    """Hole positions of all weak contexts of ``t``."""
    out = []
    stack = [((), t)]
    while stack:
        pos, u = stack.pop()
        out.append(pos)
        for sel, c in reversed(u.children()):
            if sel is not Sel.LamBody:
                stack.append((pos + (sel,), c))
    return out


def captured(t: Term, pos) -> set:
    """dom(W) for the weak context of ``t`` with hole at ``pos``."""
    dom = set()
    u = t
    for sel in pos:
        if sel in (Sel.CutBody, Sel.SubtrBody, Sel.LamBody):
            dom.add(u.binder)
        u = subterm_at(u, (sel,))
    return dom


def _with_body(frame: Term, body: Term) -> Term:
    if isinstance(frame, Cut):
        return Cut(frame.content, frame.binder, body)
    return Subtr(frame.head, frame.content, frame.binder, body)


def _blocked(frame: Term, ctx_fv, dom) -> bool:
    x = frame.binder
    if x in ctx_fv or x in dom:
        return True
    used = frame.content.fv | ({frame.head} if isinstance(frame, Subtr) else set())
    return bool(used & dom)


def _root_moves(u: Term):
    if isinstance(u, (Cut, Subtr)):
        # Push the frame down into its body.
        body = u.body
        for q in weak_positions(body):
            if not q:
                continue
            if _blocked(u, context_at(body, q).fv, captured(body, q)):
                continue
            yield replace_at(body, q, _with_body(u, subterm_at(body, q)))
    # Pull a frame out of a weak context.
    for q in weak_positions(u):
        if not q:
            continue
        inner = subterm_at(u, q)
        if not isinstance(inner, (Cut, Subtr)):
            continue
        ctx = context_at(u, q)
        if _blocked(inner, ctx.fv, captured(u, q)):
            continue
        yield _with_body(inner, replace_at(u, q, inner.body))


def root_moves(t: Term) -> List[Term]:
    """Every term one move away from ``t``, at any position, deduplicated up to alpha."""
    t0 = barendregt(t)
    seen = {canonical_key(t)}
    out = []
    for p, u in positions(t0):
        for m in _root_moves(u):
            new = replace_at(t0, p, m)
            k = canonical_key(new)
            if k not in seen:
                seen.add(k)
                out.append(new)
    return out


@dataclass(frozen=True)
class Equivalent:
    path: Tuple[Term, ...]

    def __bool__(self):
        return True

    def __str__(self):
        return f"Equivalent in {len(self.path)} move(s)"


@dataclass(frozen=True)
class NotFound:
    explored: int
    budget: int

    def __bool__(self):
        return False

    def __str__(self):
        return f"NotFound within {self.budget} move(s) ({self.explored} terms explored; inconclusive)"


def _invariants(t: Term):
    return (t.size, t.fv, count_nodes(t, Cut), count_nodes(t, Subtr))


def equiv_bounded(t: Term, u: Term, move_budget: int = 6):
    """Breadth-first search for a path of root moves from ``t`` to ``u``."""
    if move_budget < 0:
        raise ValueError("move_budget must be non-negative")
    goal = canonical_key(u)
    k0 = canonical_key(t)
    if k0 == goal:
        return Equivalent(())
    if _invariants(t) != _invariants(u):
        return NotFound(1, move_budget)
    parent = {k0: None}
    terms = {k0: t}
    queue = deque([(k0, 0)])
    while queue:
        k, d = queue.popleft()
        if d >= move_budget:
            continue
        for m in root_moves(terms[k]):
            km = canonical_key(m)
            if km in parent:
                continue
            parent[km] = k
            terms[km] = m
            if km == goal:
                path = []
                while km != k0:
                    path.append(terms[km])
                    km = parent[km]
                return Equivalent(tuple(reversed(path)))
            queue.append((km, d + 1))
    return NotFound(len(parent), move_budget)


def equivalence_class(t: Term, limit: int = 10_000) -> dict:
    """Canonical key to representative for everything reachable by moves (up to ``limit``)."""
    k0 = canonical_key(t)
    terms = {k0: t}
    queue = deque([t])
    while queue and len(terms) < limit:
        for m in root_moves(queue.popleft()):
            km = canonical_key(m)
            if km not in terms:
                terms[km] = m
                queue.append(m)
    return terms


# ---------------------------------------------------------------------------
# Bisimulation


@dataclass(frozen=True)
class Diagram:
    side: str
    redex: Redex
    reduct: Term
    answer: Optional[Redex]
    answer_reduct: Optional[Term]

    @property
    def closed(self) -> bool:
        return self.answer is not None

    def __str__(self):
        if not self.closed:
            return f"[{self.side}] {self.redex} -> {self.reduct}: no matching step"
        return f"[{self.side}] {self.redex} matched by {self.answer}: {self.reduct} == {self.answer_reduct}"


@dataclass
class BisimReport:
    ok: bool
    diagrams: List[Diagram] = field(default_factory=list)

    @property
    def failure(self) -> Optional[Diagram]:
        return next((d for d in self.diagrams if not d.closed), None)


def _answer(u: Term, t1: Term, budget: int):
    for r in redexes(u, _CUT):
        u1 = step_at(u, r)
        if alpha_eq(t1, u1) or equiv_bounded(t1, u1, budget):
            return r, u1
    return None, None


def bisim_probe(t: Term, u: Term, move_budget: int = 6, strict: bool = False) -> BisimReport:
    """Close every one-step cut-elimination diagram between ``t`` and ``u``, in both directions."""
    report = BisimReport(True)
    for side, a, b in (("left", t, u), ("right", u, t)):
        for r in redexes(a, _CUT):
            a1 = step_at(a, r)
            ans, b1 = _answer(b, a1, move_budget)
            d = Diagram(side, r, a1, ans, b1)
            report.diagrams.append(d)
            if not d.closed:
                report.ok = False
                if strict:
                    raise DiagramFailure(str(d))
                return report
    return report


def postponement_probe(t: Term, sequence, move_budget: int = 6) -> bool:
    """Check that a mixed run can be reorganized as cut steps first, then moves.

    ``sequence`` lists the terms of a run starting after ``t``, each tagged
    ``"cut"`` or ``"move"``; the claim is that some pure run of the same
    number of cut steps reaches a term equivalent to the endpoint.
    """
    k = sum(1 for kind, _ in sequence if kind == "cut")
    end = sequence[-1][1] if sequence else t
    layer = {canonical_key(t): t}
    for _ in range(k):
        nxt = {}
        for v in layer.values():
            for r in redexes(v, _CUT):
                w = step_at(v, r)
                nxt.setdefault(canonical_key(w), w)
        layer = nxt
    return any(alpha_eq(v, end) or equiv_bounded(v, end, move_budget) for v in layer.values())
