"""Seeded generators and brute-force oracles for the property suites."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from .errors import GenerationExhausted, NotAValue
from .formulas import Atom, Imp, TypeCtx
from .syntax import parse_context, parse_formula, parse_term
from .terms import (
    App,
    Cut,
    ESub,
    Lam,
    Sel,
    Subtr,
    Term,
    Var,
    all_vars,
    is_value,
    positions,
)
from .typecheck import check

BINDER_NAMES = "xyzwuvcde"
FREE_NAMES = "fghkmnpqr"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 10
    atom_universe: Tuple[str, ...] = ("X", "Y")
    variable_pool: int = 3

    def header(self) -> str:
        atoms = ",".join(self.atom_universe)
        return (f"# seed={self.seed} max_size={self.max_size} "
                f"atoms={atoms} pool={self.variable_pool}")


def _rng(cfg: GenConfig) -> random.Random:
    return random.Random(cfg.seed)


# ---------------------------------------------------------------------------
# Well-typed terms


def _formula(rng, atoms, depth):
    if depth == 0 or rng.random() < 0.55:
        return Atom(rng.choice(atoms))
    return Imp(_formula(rng, atoms, depth - 1), _formula(rng, atoms, depth - 1))


def _subformulas(f, out):
    out.append(f)
    if isinstance(f, Imp):
        _subformulas(f.left, out)
        _subformulas(f.right, out)
    return out


class _TypedGen:
    def __init__(self, calculus, cfg, rng):
        self.calculus = calculus
        self.cfg = cfg
        self.rng = rng
        self.atoms = list(cfg.atom_universe) or ["X"]
        self.binders = 0
        self.work = 0

    def binder(self) -> Var:
        k = self.binders
        self.binders += 1
        n = len(BINDER_NAMES)
        return Var(BINDER_NAMES[k % n], k // n)

    def cut_formula(self, ctx):
        if ctx and self.rng.random() < 0.6:
            pool = []
            for f in ctx.values():
                _subformulas(f, pool)
            return self.rng.choice(pool)
        return _formula(self.rng, self.atoms, 1)

    def gen(self, ctx: TypeCtx, a, budget: int) -> Optional[Term]:
        self.work += 1
        if self.work > 4000 or budget < 1:
            return None
        rng = self.rng
        options = []
        if budget >= 3:
            options += ["cut", "app" if self.calculus == "natural" else "imp_l"] * 2
        if budget >= 2 and isinstance(a, Imp):
            options += ["imp_r"] * 2
        rng.shuffle(options)
        # Variables are the fallback, or an occasional early leaf.
        if budget < 3 or rng.random() < 0.15:
            options.insert(0, "ax")
        else:
            options.append("ax")
        for rule in options:
            t = getattr(self, "_" + rule)(ctx, a, budget)
            if t is not None:
                return t
        return None

    def _ax(self, ctx, a, budget):
        xs = [x for x, f in ctx.items() if f == a]
        return self.rng.choice(xs) if xs else None

    def _imp_r(self, ctx, a, budget):
        x = self.binder()
        body = self.gen(ctx.extend(x, a.left), a.right, budget - 1)
        return None if body is None else Lam(x, body)

    @staticmethod
    def _split(budget):
        rest = budget - 1
        return rest - rest // 2, rest // 2

    def _cut(self, ctx, a, budget):
        c = self.cut_formula(ctx)
        b1, b2 = self._split(budget)
        content = self.gen(ctx, c, b1)
        if content is None:
            return None
        x = self.binder()
        body = self.gen(ctx.extend(x, c), a, b2)
        if body is None:
            return None
        return (Cut if self.calculus == "vanilla" else ESub)(content, x, body)

    def _app(self, ctx, a, budget):
        c = self.cut_formula(ctx)
        b1, b2 = self._split(budget)
        fun = self.gen(ctx, Imp(c, a), b1)
        if fun is None:
            return None
        arg = self.gen(ctx, c, b2)
        return None if arg is None else App(fun, arg)

    def _imp_l(self, ctx, a, budget):
        heads = [y for y, f in ctx.items() if isinstance(f, Imp)]
        if not heads:
            return None
        y = self.rng.choice(heads)
        imp = ctx[y]
        b1, b2 = self._split(budget)
        content = self.gen(ctx, imp.left, b1)
        if content is None:
            return None
        x = self.binder()
        body = self.gen(ctx.extend(x, imp.right), a, b2)
        return None if body is None else Subtr(y, content, x, body)


def _random_ctx(rng, cfg, atoms):
    n = max(1, cfg.variable_pool)
    ctx = TypeCtx()
    for i in range(n):
        x = Var(FREE_NAMES[i % len(FREE_NAMES)], i // len(FREE_NAMES))
        f = Atom(rng.choice(atoms)) if i == 0 else _formula(rng, atoms, 2)
        ctx = ctx.extend(x, f)
    return ctx


def gen_typed(calculus: str, cfg: GenConfig) -> Iterator[Tuple[TypeCtx, Term, object]]:
    """An endless stream of ``(ctx, term, formula)`` triples accepted by the checker."""
    if cfg.max_size < 1:
        raise GenerationExhausted("max_size must be at least 1")
    if calculus not in ("natural", "vanilla"):
        raise ValueError(f"unknown calculus {calculus!r}")
    rng = _rng(cfg)
    atoms = list(cfg.atom_universe) or ["X"]
    while True:
        yield _one_typed(calculus, cfg, rng, atoms)


def _one_typed(calculus, cfg, rng, atoms):
    for _ in range(1000):
        ctx = _random_ctx(rng, cfg, atoms)
        if cfg.max_size == 1:
            x = rng.choice([x for x, f in ctx.items() if isinstance(f, Atom)])
            return ctx, x, ctx[x]
        budget = cfg.max_size if rng.random() < 0.5 else rng.randint(1, cfg.max_size)
        pool = list(ctx.values())
        a = rng.choice(pool) if rng.random() < 0.3 else _formula(rng, atoms, 2)
        g = _TypedGen(calculus, cfg, rng)
        t = g.gen(ctx, a, budget)
        if t is None:
            continue
        check(calculus, ctx, t, a)
        return ctx, t, a
    raise GenerationExhausted("no term fits the size budget")


# ---------------------------------------------------------------------------
# Untyped terms


def _gen_untyped(rng, calculus, size, names, cut_free=False):
    """A random term of exactly ``size`` constructors over ``names``."""
    v = lambda: rng.choice(names)  # noqa: E731
    if size <= 1:
        return v()
    if size == 2:
        return Lam(v(), v())
    kinds = ["lam"]
    if calculus == "natural":
        kinds += ["app", "esub"]
    else:
        kinds += ["subtr"] if cut_free else ["cut", "subtr"]
    kind = rng.choice(kinds)
    if kind == "lam":
        return Lam(v(), _gen_untyped(rng, calculus, size - 1, names, cut_free))
    left = rng.randint(1, size - 2)
    s = _gen_untyped(rng, calculus, left, names, cut_free)
    t = _gen_untyped(rng, calculus, size - 1 - left, names, cut_free)
    if kind == "app":
        return App(s, t)
    if kind == "esub":
        return ESub(s, v(), t)
    if kind == "cut":
        return Cut(s, v(), t)
    return Subtr(v(), s, v(), t)


def _pool(cfg: GenConfig, prefix=BINDER_NAMES) -> List[Var]:
    return [Var(prefix[i % len(prefix)], i // len(prefix)) for i in range(max(1, cfg.variable_pool))]


def gen_cut_free(cfg: GenConfig) -> Iterator[Term]:
    """Endless stream of vanilla terms built from variables, abstractions and subtractions."""
    if cfg.max_size < 1:
        raise GenerationExhausted("max_size must be at least 1")
    rng = _rng(cfg)
    names = _pool(cfg)
    while True:
        yield _gen_untyped(rng, "vanilla", rng.randint(1, cfg.max_size), names, cut_free=True)


def gen_term(calculus: str, cfg: GenConfig) -> Iterator[Term]:
    """Endless stream of untyped terms; the small name pool makes shadowing and capture common."""
    rng = _rng(cfg)
    names = _pool(cfg)
    while True:
        yield _gen_untyped(rng, calculus, rng.randint(1, cfg.max_size), names)


def gen_value(calculus: str, rng: random.Random, max_size: int, names) -> Term:
    size = rng.randint(1, max_size)
    if size == 1:
        return rng.choice(names)
    return Lam(rng.choice(names), _gen_untyped(rng, calculus, size - 1, names))


def gen_subst_instances(calculus: str, cfg: GenConfig) -> Iterator[Tuple[Term, Var, Term]]:
    """Endless stream of ``(v, x, t)`` with ``v`` a value and ``x`` usually free in ``t``."""
    rng = _rng(cfg)
    names = _pool(cfg)
    while True:
        t = _gen_untyped(rng, calculus, rng.randint(1, cfg.max_size), names)
        fv = sorted(t.fv)
        x = rng.choice(fv) if fv and rng.random() < 0.9 else rng.choice(names)
        v = gen_value(calculus, rng, max(1, cfg.max_size // 2), names)
        yield v, x, t


# ---------------------------------------------------------------------------
# Oracles


def oracle_subst(calculus: str, t: Term, x: Var, s: Term) -> Term:
    """Substitution by global renaming followed by literal clause application.

    All binders of ``t`` are first renamed apart from every variable in
    sight, after which no clause needs a capture check.
    """
    if calculus == "vanilla" and not is_value(s):
        raise NotAValue()
    avoid = all_vars(t) | all_vars(s) | {x}
    top = max((v.tag for v in avoid), default=0)
    counter = [top]
    t = _apart(t, {}, counter)
    return _literal(calculus, t, x, s)


def _apart(t, env, counter):
    if isinstance(t, Var):
        return env.get(t, t)
    if isinstance(t, Lam):
        counter[0] += 1
        b = Var(t.binder.name, counter[0])
        return Lam(b, _apart(t.body, {**env, t.binder: b}, counter))
    if isinstance(t, App):
        return App(_apart(t.fun, env, counter), _apart(t.arg, env, counter))
    content = _apart(t.content, env, counter)
    counter[0] += 1
    b = Var(t.binder.name, counter[0])
    body = _apart(t.body, {**env, t.binder: b}, counter)
    if isinstance(t, Subtr):
        return Subtr(env.get(t.head, t.head), content, b, body)
    return type(t)(content, b, body)


def _literal(calculus, t, x, s):
    if isinstance(t, Var):
        return s if t == x else t
    if isinstance(t, Lam):
        return Lam(t.binder, _literal(calculus, t.body, x, s))
    if isinstance(t, App):
        return App(_literal(calculus, t.fun, x, s), _literal(calculus, t.arg, x, s))
    content = _literal(calculus, t.content, x, s)
    body = _literal(calculus, t.body, x, s)
    if isinstance(t, Subtr):
        if t.head != x:
            return Subtr(t.head, content, t.binder, body)
        if isinstance(s, Var):
            return Subtr(s, content, t.binder, body)
        return Cut(Cut(content, s.binder, s.body), t.binder, body)
    return type(t)(content, t.binder, body)


def enumerate_terms(calculus: str, max_size: int, names) -> Iterator[Term]:
    """Every term with at most ``max_size`` constructors over the given variables."""
    names = list(names)
    table = {}
    for n in range(1, max_size + 1):
        out = []
        if n == 1:
            out = list(names)
        else:
            out += [Lam(x, b) for x in names for b in table[n - 1]]
            for left in range(1, n - 1):
                for s in table[left]:
                    for t in table[n - 1 - left]:
                        if calculus == "natural":
                            out.append(App(s, t))
                            out += [ESub(s, x, t) for x in names]
                        else:
                            out += [Cut(s, x, t) for x in names]
                            out += [Subtr(h, s, x, t) for h in names for x in names]
        table[n] = out
        yield from out


def brute_force_splits(t: Term) -> list:
    """All positions whose context is a left context (a path of let-bodies) and whose subterm is a value."""
    left = (Sel.CutBody, Sel.SubtrBody)
    return [p for p, u in positions(t) if all(s in left for s in p) and is_value(u)]


# ---------------------------------------------------------------------------
# Corpus files


def serialize_typed(items, cfg: GenConfig) -> str:
    lines = [cfg.header()]
    for ctx, t, a in items:
        lines.append(f"{ctx} |- {t} : {a}")
    return "\n".join(lines) + "\n"


def serialize_terms(items, cfg: GenConfig) -> str:
    return "\n".join([cfg.header(), *map(str, items)]) + "\n"


def read_typed(text: str, calculus: str):
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        ctx, rest = line.split("|-", 1)
        term, formula = rest.rsplit(":", 1)
        out.append((parse_context(ctx), parse_term(term, calculus), parse_formula(formula)))
    return out


def read_terms(text: str, calculus: str) -> List[Term]:
    return [parse_term(line, calculus) for line in text.splitlines()
            if line.strip() and not line.startswith("#")]
