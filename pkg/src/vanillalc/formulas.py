"""Simple-type formulas and typing contexts."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ContractionConflict
from .terms import Var


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        left = f"({self.left})" if isinstance(self.left, Imp) else str(self.left)
        return f"{left} -> {self.right}"


@dataclass(frozen=True)
class Meta:
    """A unification placeholder; written ``?name`` in concrete syntax."""

    name: str

    def __str__(self):
        return self.name if self.name.startswith("?") else f"?{self.name}"


Formula = Union[Atom, Imp, Meta]


def atoms(f) -> set:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Imp):
        return atoms(f.left) | atoms(f.right)
    return set()


def metas(f) -> set:
    if isinstance(f, Meta):
        return {f}
    if isinstance(f, Imp):
        return metas(f.left) | metas(f.right)
    return set()


def is_ground(f) -> bool:
    return not metas(f)


def formula_size(f) -> int:
    if isinstance(f, Imp):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1


class TypeCtx(Mapping):
    """An immutable finite map from variables to formulas.

    Binding a variable twice is only allowed at the same formula; anything
    else raises :class:`ContractionConflict`.
    """

    __slots__ = ("_map",)

    def __init__(self, items=()):
        m = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for x, f in pairs:
            if isinstance(x, str):
                x = Var.of(x)
            if x in m and m[x] != f:
                raise ContractionConflict(x, m[x], f)
            m[x] = f
        self._map = m

    def __getitem__(self, x):
        return self._map[x]

    def __iter__(self) -> Iterator[Var]:
        return iter(sorted(self._map))

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, TypeCtx):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def extend(self, x: Var, f) -> "TypeCtx":
        old = self._map.get(x)
        if old is not None:
            if old != f:
                raise ContractionConflict(x, old, f)
            return self
        new = TypeCtx()
        new._map = {**self._map, x: f}
        return new

    def union(self, other: "TypeCtx") -> "TypeCtx":
        out = self
        for x, f in other.items():
            out = out.extend(x, f)
        return out

    def restrict(self, xs) -> "TypeCtx":
        return TypeCtx((x, f) for x, f in self._map.items() if x in xs)

    def map(self, fn) -> "TypeCtx":
        new = TypeCtx()
        new._map = {x: fn(f) for x, f in self._map.items()}
        return new

    def __str__(self):
        return ", ".join(f"{x}:{self[x]}" for x in self)

    def __repr__(self):
        return f"TypeCtx({self})"
