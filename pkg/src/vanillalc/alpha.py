"""Alpha-equivalence via canonical binder renumbering."""
from __future__ import annotations

from .terms import App, Cut, ESub, Hole, Lam, Subtr, Term, Var, all_vars


def canonical_key(t: Term) -> str:
    """A string equal for two terms iff they are alpha-equivalent.

    Binders are numbered in pre-order; a bound occurrence is written as the
    number of its binder and a free one by its name and tag.
    """
    out: list = []
    _key(t, {}, [0], out)
    return "".join(out)


def _occ(v: Var, env: dict) -> str:
    n = env.get(v)
    return f"#{n}" if n is not None else f"{v.name}'{v.tag}"


def _key(t, env, counter, out):
    while True:
        if isinstance(t, Var):
            out.append(_occ(t, env))
            out.append(" ")
            return
        if isinstance(t, Lam):
            out.append("L")
            n = counter[0]
            counter[0] += 1
            old = env.get(t.binder)
            env[t.binder] = n
            _key(t.body, env, counter, out)
            _restore(env, t.binder, old)
            return
        if isinstance(t, App):
            out.append("A")
            _key(t.fun, env, counter, out)
            t = t.arg
            continue
        if isinstance(t, (ESub, Cut, Subtr)):
            out.append("E" if isinstance(t, ESub) else "C" if isinstance(t, Cut) else "S")
            if isinstance(t, Subtr):
                out.append(_occ(t.head, env))
                out.append(" ")
            _key(t.content, env, counter, out)
            n = counter[0]
            counter[0] += 1
            old = env.get(t.binder)
            env[t.binder] = n
            _key(t.body, env, counter, out)
            _restore(env, t.binder, old)
            return
        if isinstance(t, Hole):
            out.append("H")
            return
        raise TypeError(f"not a term: {t!r}")


def _restore(env, v, old):
    if old is None:
        del env[v]
    else:
        env[v] = old


def alpha_eq(t: Term, u: Term) -> bool:
    if t is u:
        return True
    return canonical_key(t) == canonical_key(u)


def barendregt(t: Term) -> Term:
    """An alpha-variant whose binders are pairwise distinct and distinct from free variables.

    Binders keep their names; only tags change.  Deterministic.
    """
    used = set(all_vars(t))
    taken = set(t.fv)
    return _bar(t, {}, used, taken)


def _pick(v, used, taken):
    if v not in taken:
        taken.add(v)
        return v
    top = max((w.tag for w in used if w.name == v.name), default=v.tag)
    nv = Var(v.name, top + 1)
    used.add(nv)
    taken.add(nv)
    return nv


def _bar(t, env, used, taken):
    if isinstance(t, Var):
        return env.get(t, t)
    if isinstance(t, Hole):
        return t
    if isinstance(t, App):
        return App(_bar(t.fun, env, used, taken), _bar(t.arg, env, used, taken))
    if isinstance(t, Lam):
        b = _pick(t.binder, used, taken)
        return Lam(b, _bar(t.body, {**env, t.binder: b}, used, taken))
    content = _bar(t.content, env, used, taken)
    b = _pick(t.binder, used, taken)
    body = _bar(t.body, {**env, t.binder: b}, used, taken)
    if isinstance(t, Subtr):
        return Subtr(env.get(t.head, t.head), content, b, body)
    return type(t)(content, b, body)
