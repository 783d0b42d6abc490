"""Type checking and inference for natural deduction and the vanilla sequent system.

Both checkers share one bidirectional engine over first-order unification.
Types flow down from the expected formula where possible (abstractions
read their domain from it) and are synthesized otherwise (cut contents,
function positions).  Placeholders that survive unification become fresh
atoms ``T1``, ``T2``, ... so every returned derivation is ground.

Subtractions are checked in the primed left-implication style: the head's
implication is read off the context, the content is checked at its domain
and the body with the binder at its codomain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import (
    HeadNotImplication,
    InvalidDerivation,
    NotAFunction,
    OccursCheck,
    TypingError,
    UnboundVariable,
    UnificationClash,
)
from .formulas import Atom, Imp, Meta, TypeCtx, atoms, is_ground
from .subst import fresh, rename
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
    all_vars,
    format_position,
    require_calculus,
)

RULES = ("ax", "imp_r", "app", "cut", "imp_l")


@dataclass(frozen=True)
class Derivation:
    rule: str
    ctx: TypeCtx
    term: Term
    formula: object
    children: Tuple["Derivation", ...] = ()

    def conclusion(self) -> str:
        return f"{self.ctx} |- {self.term} : {self.formula}".lstrip()

    def to_text(self) -> str:
        lines: List[str] = []
        self._text(0, lines)
        return "\n".join(lines)

    def _text(self, depth, lines):
        lines.append(f"{'  ' * depth}{self.rule}: {self.conclusion()}")
        for c in self.children:
            c._text(depth + 1, lines)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "conclusion": {
                "ctx": {str(x): str(f) for x, f in self.ctx.items()},
                "term": str(self.term),
                "formula": str(self.formula),
            },
            "children": [c.to_json() for c in self.children],
        }

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def rules_used(self) -> set:
        return {d.rule for d in self.nodes()}


# ---------------------------------------------------------------------------
# Unification


class _Fail(Exception):
    def __init__(self, occurs=False):
        self.occurs = occurs


class _Unifier:
    def __init__(self):
        self.sub: Dict[Meta, object] = {}
        self.count = 0

    def meta(self) -> Meta:
        self.count += 1
        return Meta(f"_{self.count}")

    def walk(self, f):
        while isinstance(f, Meta) and f in self.sub:
            f = self.sub[f]
        return f

    def resolve(self, f):
        f = self.walk(f)
        if isinstance(f, Imp):
            return Imp(self.resolve(f.left), self.resolve(f.right))
        return f

    def _occurs(self, m, f) -> bool:
        f = self.walk(f)
        if f == m:
            return True
        if isinstance(f, Imp):
            return self._occurs(m, f.left) or self._occurs(m, f.right)
        return False

    def _unify(self, a, b):
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, Meta):
            if self._occurs(a, b):
                raise _Fail(occurs=True)
            self.sub[a] = b
        elif isinstance(b, Meta):
            self._unify(b, a)
        elif isinstance(a, Imp) and isinstance(b, Imp):
            self._unify(a.left, b.left)
            self._unify(a.right, b.right)
        else:
            raise _Fail()

    def unify(self, expected, found, pos):
        if expected is None:
            return
        try:
            self._unify(expected, found)
        except _Fail as exc:
            e, f = self.resolve(expected), self.resolve(found)
            if exc.occurs:
                raise OccursCheck(e, f, pos) from None
            raise UnificationClash(e, f, pos) from None

    def as_imp(self, f, pos, on_atom):
        f = self.walk(f)
        if isinstance(f, Imp):
            return f.left, f.right
        if isinstance(f, Atom):
            raise on_atom(self.resolve(f))
        dom, cod = self.meta(), self.meta()
        self.unify(f, Imp(dom, cod), pos)
        return dom, cod


# ---------------------------------------------------------------------------
# The engine


@dataclass
class _Node:
    rule: str
    ctx: TypeCtx
    term: Term
    formula: object
    children: list = field(default_factory=list)


class _Engine:
    def __init__(self, calculus: str, avoid):
        self.calculus = calculus
        self.u = _Unifier()
        self.avoid = set(avoid)

    def binder(self, ctx: TypeCtx, x: Var, body: Term):
        """Keep binders out of dom(ctx) by renaming rather than shadowing."""
        if x not in ctx:
            return x, body
        nx = fresh(x, self.avoid | set(ctx))
        self.avoid.add(nx)
        return nx, rename(body, x, nx)

    def go(self, ctx: TypeCtx, t: Term, pos: Position, expected) -> _Node:
        u = self.u
        if isinstance(t, Var):
            if t not in ctx:
                raise UnboundVariable(t, pos)
            u.unify(expected, ctx[t], pos)
            return _Node("ax", ctx, t, ctx[t])
        if isinstance(t, Lam):
            want = u.walk(expected) if expected is not None else None
            if isinstance(want, Imp):
                dom, cod = want.left, want.right
            else:
                dom, cod = u.meta(), u.meta()
                u.unify(expected, Imp(dom, cod), pos)
            x, body = self.binder(ctx, t.binder, t.body)
            inner = ctx.extend(x, dom)
            c = self.go(inner, body, pos + (Sel.LamBody,), cod)
            return _Node("imp_r", ctx, Lam(x, c.term), Imp(dom, cod), [c])
        if isinstance(t, App):
            f = self.go(ctx, t.fun, pos + (Sel.AppFun,), None)
            fpos = pos + (Sel.AppFun,)
            dom, cod = u.as_imp(f.formula, fpos, lambda a: NotAFunction(a, fpos))
            a = self.go(ctx, t.arg, pos + (Sel.AppArg,), dom)
            u.unify(expected, cod, pos)
            return _Node("app", ctx, App(f.term, a.term), cod, [f, a])
        if isinstance(t, (ESub, Cut)):
            c = self.go(ctx, t.content, pos + (Sel.CutContent,), None)
            x, body = self.binder(ctx, t.binder, t.body)
            b = self.go(ctx.extend(x, c.formula), body, pos + (Sel.CutBody,), expected)
            return _Node("cut", ctx, type(t)(c.term, x, b.term), b.formula, [c, b])
        if isinstance(t, Subtr):
            if t.head not in ctx:
                raise UnboundVariable(t.head, pos)
            dom, cod = u.as_imp(ctx[t.head], pos,
                                lambda a: HeadNotImplication(t.head, a, pos))
            c = self.go(ctx, t.content, pos + (Sel.SubtrContent,), dom)
            x, body = self.binder(ctx, t.binder, t.body)
            b = self.go(ctx.extend(x, cod), body, pos + (Sel.SubtrBody,), expected)
            return _Node("imp_l", ctx, Subtr(t.head, c.term, x, b.term), b.formula, [c, b])
        raise TypingError(f"cannot type {type(t).__name__} at {format_position(pos)}")

    def grounding(self, formulas, used_atoms):
        """Map every leftover placeholder to a fresh atom, in order of first appearance."""
        table: Dict[Meta, Atom] = {}
        n = 0
        for f in formulas:
            for m in _metas_in_order(self.u.resolve(f)):
                if m not in table:
                    n += 1
                    while f"T{n}" in used_atoms:
                        n += 1
                    table[m] = Atom(f"T{n}")
        return table

    def finish(self, node: _Node, table) -> Derivation:
        def ground(f):
            return _replace(self.u.resolve(f), table)

        def build(n: _Node) -> Derivation:
            return Derivation(n.rule, n.ctx.map(ground), n.term, ground(n.formula),
                              tuple(build(c) for c in n.children))

        return build(node)


def _metas_in_order(f):
    if isinstance(f, Meta):
        yield f
    elif isinstance(f, Imp):
        yield from _metas_in_order(f.left)
        yield from _metas_in_order(f.right)


def _replace(f, table):
    if isinstance(f, Meta):
        return table.get(f, f)
    if isinstance(f, Imp):
        return Imp(_replace(f.left, table), _replace(f.right, table))
    return f


def _all_formulas(node: _Node):
    yield node.formula
    for f in node.ctx.values():
        yield f
    for c in node.children:
        yield from _all_formulas(c)


def _used_atoms(ctx, a=None) -> set:
    out = set()
    for f in ctx.values():
        out |= atoms(f)
    if a is not None:
        out |= atoms(a)
    return out


def _run(calculus, ctx, t, a):
    require_calculus(t, calculus)
    ctx = ctx if isinstance(ctx, TypeCtx) else TypeCtx(ctx)
    eng = _Engine(calculus, all_vars(t) | set(ctx))
    root = eng.go(ctx, t, (), a)
    table = eng.grounding([root.formula, *_all_formulas(root)], _used_atoms(ctx, a))
    return eng, root, table


def check_nd(ctx, t: Term, a) -> Derivation:
    """A natural-deduction derivation of ``ctx |- t : a`` (cut types ESubs)."""
    eng, root, table = _run("natural", ctx, t, a)
    return eng.finish(root, table)


def check_sc(ctx, t: Term, a) -> Derivation:
    """A vanilla sequent derivation of ``ctx |- t : a``."""
    eng, root, table = _run("vanilla", ctx, t, a)
    return eng.finish(root, table)


def check(calculus: str, ctx, t: Term, a) -> Derivation:
    return check_nd(ctx, t, a) if calculus == "natural" else check_sc(ctx, t, a)


def infer(calculus: str, ctx, t: Term):
    """Principal type of ``t`` plus the solution for the context's placeholders.

    Returns ``(formula, subst)`` with ``subst`` mapping each placeholder of
    ``ctx`` to a formula.  Unconstrained placeholders become fresh atoms.
    """
    formula, subst, _ = infer_derivation(calculus, ctx, t)
    return formula, subst


def infer_derivation(calculus: str, ctx, t: Term):
    ctx = ctx if isinstance(ctx, TypeCtx) else TypeCtx(ctx)
    eng, root, _ = _run(calculus, ctx, t, None)
    placeholders = []
    for f in ctx.values():
        for m in _metas_in_order(f):
            if m not in placeholders:
                placeholders.append(m)
    table = eng.grounding([root.formula, *placeholders, *_all_formulas(root)],
                          _used_atoms(ctx))
    ground = lambda f: _replace(eng.u.resolve(f), table)  # noqa: E731
    subst = {m.name: ground(m) for m in placeholders}
    return ground(root.formula), subst, eng.finish(root, table)


def instantiate_ctx(ctx: TypeCtx, subst: dict) -> TypeCtx:
    """Replace placeholders by their solutions."""
    table = {Meta(k): v for k, v in subst.items()}
    return ctx.map(lambda f: _replace(f, table))


# ---------------------------------------------------------------------------
# Validation


def validate(d: Derivation, calculus: Optional[str] = None) -> None:
    """Re-check every node of ``d`` against its rule schema; raise on the first bad node."""
    for n in d.nodes():
        _validate_node(n, calculus)


def _bad(n, why):
    raise InvalidDerivation(f"{n.rule} node for {n.term}: {why}", n)


def _validate_node(n: Derivation, calculus):
    if n.rule not in RULES:
        _bad(n, "unknown rule")
    if not is_ground(n.formula) or any(not is_ground(f) for f in n.ctx.values()):
        _bad(n, "formulas must be ground")
    t, kids = n.term, n.children

    def premise(i, ctx, term, formula):
        c = kids[i]
        if c.ctx != ctx:
            _bad(n, f"premise {i + 1} has context {c.ctx}, expected {ctx}")
        if c.term != term:
            _bad(n, f"premise {i + 1} is about {c.term}, expected {term}")
        if formula is not None and c.formula != formula:
            _bad(n, f"premise {i + 1} has formula {c.formula}, expected {formula}")

    if n.rule == "ax":
        if not isinstance(t, Var) or kids:
            _bad(n, "axiom must be a leaf on a variable")
        if n.ctx.get(t) != n.formula:
            _bad(n, "variable type does not match the context")
    elif n.rule == "imp_r":
        if not isinstance(t, Lam) or len(kids) != 1 or not isinstance(n.formula, Imp):
            _bad(n, "shape")
        if t.binder in n.ctx:
            _bad(n, "binder already in the context")
        premise(0, n.ctx.extend(t.binder, n.formula.left), t.body, n.formula.right)
    elif n.rule == "app":
        if calculus == "vanilla" or not isinstance(t, App) or len(kids) != 2:
            _bad(n, "shape")
        premise(1, n.ctx, t.arg, None)
        premise(0, n.ctx, t.fun, Imp(kids[1].formula, n.formula))
    elif n.rule == "cut":
        want = Cut if calculus == "vanilla" else ESub if calculus == "natural" else (Cut, ESub)
        if not isinstance(t, want) or len(kids) != 2:
            _bad(n, "shape")
        if t.binder in n.ctx:
            _bad(n, "binder already in the context")
        premise(0, n.ctx, t.content, None)
        premise(1, n.ctx.extend(t.binder, kids[0].formula), t.body, n.formula)
    elif n.rule == "imp_l":
        if calculus == "natural" or not isinstance(t, Subtr) or len(kids) != 2:
            _bad(n, "shape")
        h = n.ctx.get(t.head)
        if not isinstance(h, Imp):
            _bad(n, "head is not an implication in the context")
        if t.binder in n.ctx:
            _bad(n, "binder already in the context")
        premise(0, n.ctx, t.content, h.left)
        premise(1, n.ctx.extend(t.binder, h.right), t.body, n.formula)


def is_typable(calculus: str, ctx, t: Term, a) -> bool:
    try:
        check(calculus, ctx, t, a)
    except TypingError:
        return False
    return True


# ---------------------------------------------------------------------------
# Subject reduction


@dataclass(frozen=True)
class ProbeReport:
    ok: bool
    reducts: int
    failure: Optional[tuple] = None

    def describe(self) -> str:
        if self.ok:
            return f"OK: {self.reducts} reduct(s) retype"
        redex, reduct, err = self.failure
        return f"FAIL at {redex}: {reduct} does not retype ({err})"


def subject_reduction_probe(ctx, t: Term, a) -> ProbeReport:
    """Re-check every one-step cut-elimination reduct of ``t`` against ``ctx`` and ``a``."""
    from .rewriting import RuleId, redexes, step_at

    check_sc(ctx, t, a)
    rs = redexes(t, {RuleId.CutElim})
    for r in rs:
        u = step_at(t, r)
        try:
            d = check_sc(ctx, u, a)
            validate(d, "vanilla")
        except TypingError as exc:
            return ProbeReport(False, len(rs), (r, u, exc))
    return ProbeReport(True, len(rs))

