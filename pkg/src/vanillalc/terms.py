"""Abstract syntax shared by the natural and the vanilla calculus.

Natural terms are built from ``Var``, ``Lam``, ``App`` and ``ESub``; vanilla
terms from ``Var``, ``Lam``, ``Cut`` and ``Subtr``.  ``Var`` and ``Lam`` are
shared, so a term made only of variables and abstractions belongs to both
calculi.  ``Hole`` is the context hole used when contexts are represented as
terms.

Nodes are immutable and compare structurally (not up to alpha); see
:mod:`vanillalc.alpha` for alpha-equivalence.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .errors import CalculusMismatch


class Term:
    __slots__ = ("_fv", "_size", "_hash")

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _init(self):
        object.__setattr__(self, "_fv", None)
        object.__setattr__(self, "_size", None)
        object.__setattr__(self, "_hash", None)

    @property
    def fv(self) -> frozenset:
        fv = self._fv
        if fv is None:
            fv = self._free_vars()
            object.__setattr__(self, "_fv", fv)
        return fv

    @property
    def size(self) -> int:
        n = self._size
        if n is None:
            n = 1 + sum(c.size for _, c in self.children())
            object.__setattr__(self, "_size", n)
        return n

    def children(self) -> Tuple[Tuple["Sel", "Term"], ...]:
        return ()

    def _fields(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Term) else False
        return self._fields() == other._fields()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((type(self).__name__,) + self._fields())
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        from .syntax import pretty

        return pretty(self)

    def __repr__(self):
        return f"{type(self).__name__}<{self}>"


_TAGGED = re.compile(r"^(.*[^0-9])([1-9][0-9]*)$")


class Var(Term):
    """A variable: a name plus a freshening tag (0 for user-written names)."""

    __slots__ = ("name", "tag")

    def __init__(self, name: str, tag: int = 0):
        self._init()
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "tag", tag)

    @classmethod
    def of(cls, ident: str) -> "Var":
        """Read an identifier, splitting a trailing tag (``y1`` is ``y`` tag 1)."""
        m = _TAGGED.match(ident)
        if m:
            return cls(m.group(1), int(m.group(2)))
        return cls(ident)

    def _fields(self):
        return (self.name, self.tag)

    def _free_vars(self):
        return frozenset((self,))

    @property
    def size(self):
        return 1

    def __lt__(self, other):
        if not isinstance(other, Var):
            return NotImplemented
        return (self.name, self.tag) < (other.name, other.tag)

    def __le__(self, other):
        if not isinstance(other, Var):
            return NotImplemented
        return (self.name, self.tag) <= (other.name, other.tag)

    def __str__(self):
        return f"{self.name}{self.tag}" if self.tag else self.name


class Hole(Term):
    __slots__ = ()

    def __init__(self):
        self._init()

    def _fields(self):
        return ()

    def _free_vars(self):
        return frozenset()

    @property
    def size(self):
        return 0


HOLE = Hole()


class Lam(Term):
    __slots__ = ("binder", "body")

    def __init__(self, binder: Var, body: Term):
        self._init()
        object.__setattr__(self, "binder", binder)
        object.__setattr__(self, "body", body)

    def _fields(self):
        return (self.binder, self.body)

    def _free_vars(self):
        return self.body.fv - {self.binder}

    def children(self):
        return ((Sel.LamBody, self.body),)


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        self._init()
        object.__setattr__(self, "fun", fun)
        object.__setattr__(self, "arg", arg)

    def _fields(self):
        return (self.fun, self.arg)

    def _free_vars(self):
        return self.fun.fv | self.arg.fv

    def children(self):
        return ((Sel.AppFun, self.fun), (Sel.AppArg, self.arg))


class ESub(Term):
    """Explicit substitution ``let binder = content in body`` (natural)."""

    __slots__ = ("content", "binder", "body")

    def __init__(self, content: Term, binder: Var, body: Term):
        self._init()
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "binder", binder)
        object.__setattr__(self, "body", body)

    def _fields(self):
        return (self.content, self.binder, self.body)

    def _free_vars(self):
        return self.content.fv | (self.body.fv - {self.binder})

    def children(self):
        return ((Sel.CutContent, self.content), (Sel.CutBody, self.body))


class Cut(Term):
    """Cut ``let binder = content in body`` (vanilla)."""

    __slots__ = ("content", "binder", "body")

    def __init__(self, content: Term, binder: Var, body: Term):
        self._init()
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "binder", binder)
        object.__setattr__(self, "body", body)

    def _fields(self):
        return (self.content, self.binder, self.body)

    def _free_vars(self):
        return self.content.fv | (self.body.fv - {self.binder})

    def children(self):
        return ((Sel.CutContent, self.content), (Sel.CutBody, self.body))


class Subtr(Term):
    """Subtraction ``let binder = head @ content in body`` (vanilla).

    ``head`` is a free (left) occurrence; ``binder`` scopes over ``body`` only.
    """

    __slots__ = ("head", "content", "binder", "body")

    def __init__(self, head: Var, content: Term, binder: Var, body: Term):
        self._init()
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "binder", binder)
        object.__setattr__(self, "body", body)

    def _fields(self):
        return (self.head, self.content, self.binder, self.body)

    def _free_vars(self):
        return (self.content.fv | {self.head}) | (self.body.fv - {self.binder})

    def children(self):
        return ((Sel.SubtrContent, self.content), (Sel.SubtrBody, self.body))


NATURAL_NODES = (App, ESub)
VANILLA_NODES = (Cut, Subtr)


class Sel(enum.Enum):
    """Child selectors; a position is a path of selectors from the root."""

    LamBody = "LamBody"
    AppFun = "AppFun"
    AppArg = "AppArg"
    CutContent = "CutContent"
    CutBody = "CutBody"
    SubtrContent = "SubtrContent"
    SubtrBody = "SubtrBody"


Position = Tuple[Sel, ...]
ROOT: Position = ()


def format_position(pos: Sequence[Sel]) -> str:
    return "/" + "/".join(s.value for s in pos)


def parse_position(text: str) -> Position:
    parts = [p for p in text.strip().split("/") if p]
    return tuple(Sel(p) for p in parts)


# ---------------------------------------------------------------------------
# Basic queries


def free_vars(t: Term) -> frozenset:
    return t.fv


def size(t: Term) -> int:
    """Number of constructors; a subtraction head is not a separate node."""
    return t.size


def is_value(t: Term) -> bool:
    return isinstance(t, (Var, Lam))


def all_vars(t: Term) -> set:
    """Every variable occurring in ``t``: free, bound, binders and heads."""
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u)
            continue
        binder = getattr(u, "binder", None)
        if binder is not None:
            out.add(binder)
        if isinstance(u, Subtr):
            out.add(u.head)
        stack.extend(c for _, c in u.children())
    return out


def calculus_of(t: Term) -> str:
    """'natural', 'vanilla' or 'both' (only variables and abstractions)."""
    nat = van = False
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, NATURAL_NODES):
            nat = True
        elif isinstance(u, VANILLA_NODES):
            van = True
        stack.extend(c for _, c in u.children())
    if nat and van:
        raise CalculusMismatch("term mixes natural and vanilla constructors")
    return "natural" if nat else "vanilla" if van else "both"


def require_calculus(t: Term, calculus: str) -> None:
    found = calculus_of(t)
    if found != "both" and found != calculus:
        raise CalculusMismatch(f"expected a {calculus} term, got a {found} one")


def count_nodes(t: Term, kinds) -> int:
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, kinds):
            n += 1
        stack.extend(c for _, c in u.children())
    return n


# ---------------------------------------------------------------------------
# Positions


def child(t: Term, sel: Sel) -> Term:
    for s, c in t.children():
        if s is sel:
            return c
    raise KeyError(f"{sel.value} is not a child of {type(t).__name__}")


def subterm_at(t: Term, pos: Sequence[Sel]) -> Term:
    for sel in pos:
        t = child(t, sel)
    return t


def with_child(t: Term, sel: Sel, new: Term) -> Term:
    if isinstance(t, Lam) and sel is Sel.LamBody:
        return Lam(t.binder, new)
    if isinstance(t, App):
        if sel is Sel.AppFun:
            return App(new, t.arg)
        if sel is Sel.AppArg:
            return App(t.fun, new)
    if isinstance(t, (ESub, Cut)):
        if sel is Sel.CutContent:
            return type(t)(new, t.binder, t.body)
        if sel is Sel.CutBody:
            return type(t)(t.content, t.binder, new)
    if isinstance(t, Subtr):
        if sel is Sel.SubtrContent:
            return Subtr(t.head, new, t.binder, t.body)
        if sel is Sel.SubtrBody:
            return Subtr(t.head, t.content, t.binder, new)
    raise KeyError(f"{sel.value} is not a child of {type(t).__name__}")


def replace_at(t: Term, pos: Sequence[Sel], new: Term) -> Term:
    if not pos:
        return new
    sel = pos[0]
    return with_child(t, sel, replace_at(child(t, sel), pos[1:], new))


def is_valid_position(t: Term, pos: Sequence[Sel]) -> bool:
    try:
        subterm_at(t, pos)
    except KeyError:
        return False
    return True


def positions(t: Term) -> Iterator[Tuple[Position, Term]]:
    """All (position, subterm) pairs in leftmost-outermost order.

    Pre-order; the function comes before the argument and the content of a
    let-form before its body, following the printed syntax.
    """
    stack = [((), t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        kids = u.children()
        for sel, c in reversed(kids):
            stack.append((pos + (sel,), c))


def context_at(t: Term, pos: Sequence[Sel]) -> Term:
    """The general context obtained by carving out the subterm at ``pos``."""
    return replace_at(t, pos, HOLE)


def hole_position(c: Term) -> Position:
    for pos, u in positions(c):
        if isinstance(u, Hole):
            return pos
    raise ValueError("context has no hole")


def plug_context(c: Term, t: Term) -> Term:
    """Capturing plugging of ``t`` into a context given as a term with a hole."""
    return replace_at(c, hole_position(c), t)


# ---------------------------------------------------------------------------
# Left contexts and splitting


@dataclass(frozen=True)
class CutFrame:
    content: Term
    binder: Var


@dataclass(frozen=True)
class SubtrFrame:
    head: Var
    content: Term
    binder: Var


@dataclass(frozen=True)
class ESubFrame:
    content: Term
    binder: Var


Frame = Union[CutFrame, SubtrFrame, ESubFrame]
LeftCtx = Tuple[Frame, ...]


def wrap(frame: Frame, t: Term) -> Term:
    if isinstance(frame, CutFrame):
        return Cut(frame.content, frame.binder, t)
    if isinstance(frame, SubtrFrame):
        return Subtr(frame.head, frame.content, frame.binder, t)
    return ESub(frame.content, frame.binder, t)


def plug(ctx: Sequence[Frame], t: Term) -> Term:
    """Wrap ``t`` under the frames of ``ctx``; capture is intended."""
    for frame in reversed(ctx):
        t = wrap(frame, t)
    return t


def peel(t: Term, kinds) -> Tuple[LeftCtx, Term]:
    frames = []
    while isinstance(t, kinds):
        if isinstance(t, Cut):
            frames.append(CutFrame(t.content, t.binder))
        elif isinstance(t, Subtr):
            frames.append(SubtrFrame(t.head, t.content, t.binder))
        else:
            frames.append(ESubFrame(t.content, t.binder))
        t = t.body
    return tuple(frames), t


def split(t: Term) -> Tuple[LeftCtx, Term]:
    """The unique decomposition of a vanilla term as a left context around a value."""
    frames, v = peel(t, VANILLA_NODES)
    if not is_value(v):
        raise CalculusMismatch(f"{type(v).__name__} is not a vanilla constructor")
    return frames, v


def split_natural(t: Term) -> Tuple[LeftCtx, Term]:
    """Peel the substitution context off a natural term; the rest may be any term."""
    return peel(t, ESub)


def frame_binders(ctx: Sequence[Frame]) -> list:
    return [f.binder for f in ctx]


def left_path(ctx: Sequence[Frame]) -> Position:
    """Position of the hole of a left context, relative to its root."""
    return tuple(Sel.SubtrBody if isinstance(f, SubtrFrame) else Sel.CutBody for f in ctx)
