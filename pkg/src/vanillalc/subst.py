"""Freshening, renaming and the two meta-level substitutions."""
from __future__ import annotations

from typing import Iterable

from .errors import NotAValue
from .terms import App, Cut, ESub, Hole, Lam, Subtr, Term, Var, is_value


def fresh(v: Var, avoid: Iterable[Var]) -> Var:
    """A variable named like ``v`` outside ``avoid``.

    The tag is one more than the largest tag of that name in ``avoid``, which
    keeps freshening deterministic without any global counter.
    """
    top = v.tag
    for w in avoid:
        if w.name == v.name and w.tag > top:
            top = w.tag
    return Var(v.name, top + 1)


def rename(t: Term, old: Var, new: Var) -> Term:
    """Capture-avoiding renaming of the free occurrences of ``old`` (heads included)."""
    if old == new or old not in t.fv:
        return t
    return _subst(t, old, new, new.fv)


def subst_nd(t: Term, x: Var, s: Term) -> Term:
    """Capture-avoiding substitution ``t{s/x}`` on natural terms."""
    if x not in t.fv:
        return t
    return _subst(t, x, s, s.fv)


def subst_value(v: Term, x: Var, t: Term) -> Term:
    """Meta-level substitution ``{v/x}t`` of a value on vanilla terms.

    Subtractions headed by ``x`` are handled by the value: a variable is
    simply put in head position, while an abstraction ``\\y. r`` turns
    ``let z = x @ s in u`` into ``let z = (let y = s' in r) in u'``.
    """
    if not is_value(v):
        raise NotAValue()
    if x not in t.fv:
        return t
    return _subst(t, x, v, v.fv)


def _under(binder: Var, body: Term, x: Var, s: Term, fvs: frozenset):
    if binder == x or x not in body.fv:
        return binder, body
    # Rename a binder that would capture a free variable of the substituted term.
    if binder in fvs:
        nb = fresh(binder, fvs | body.fv | {x})
        binder, body = nb, rename(body, binder, nb)
    return binder, _subst(body, x, s, fvs)


def _subst(t: Term, x: Var, s: Term, fvs: frozenset) -> Term:
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return s
    if isinstance(t, Lam):
        return Lam(*_under(t.binder, t.body, x, s, fvs))
    if isinstance(t, App):
        return App(_subst(t.fun, x, s, fvs), _subst(t.arg, x, s, fvs))
    if isinstance(t, (ESub, Cut)):
        content = _subst(t.content, x, s, fvs)
        return type(t)(content, *_under(t.binder, t.body, x, s, fvs))
    if isinstance(t, Subtr):
        content = _subst(t.content, x, s, fvs)
        b, body = _under(t.binder, t.body, x, s, fvs)
        if t.head != x:
            return Subtr(t.head, content, b, body)
        if isinstance(s, Var):
            return Subtr(s, content, b, body)
        if isinstance(s, Lam):
            return Cut(Cut(content, s.binder, s.body), b, body)
        raise NotAValue("only a value can replace a subtraction head")
    if isinstance(t, Hole):
        return t
    raise TypeError(f"not a term: {t!r}")
