"""Finite sample sets and their cartesian products.

A ``Domain`` is a named, ordered set of string labels. A ``ProductDomain``
is an ordered list of factor spaces whose elements are tuples. Products
formed with ``tensor_space`` are flattened one level, so ``(X*Y)*Z`` and
``X*(Y*Z)`` both become the three-factor ``X*Y*Z``; each top-level factor
is called a *wire*. A product with a single wire collapses to that wire.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterator, Sequence, Union

from .errors import DomainMismatch, IndexOutOfRange, UnknownElement


@dataclass(frozen=True)
class Domain:
    name: str
    elements: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elems = tuple(self.elements)
        if not elems:
            raise ValueError(f"domain {self.name!r} must have at least one element")
        if len(set(elems)) != len(elems):
            raise ValueError(f"domain {self.name!r} has duplicate element labels")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elems)})

    @property
    def factors(self) -> tuple:
        return (self,)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, elem) -> bool:
        try:
            return elem in self._index
        except TypeError:
            return False

    def index(self, elem) -> int:
        try:
            return self._index[elem]
        except (KeyError, TypeError):
            raise UnknownElement(f"{elem!r} is not an element of domain {self.name}") from None

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ProductDomain:
    factors: tuple
    _elements: tuple = field(init=False, repr=False, compare=False, hash=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "_elements", None)
        object.__setattr__(self, "_index", None)

    @property
    def name(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"({f.name})" if isinstance(f, ProductDomain) else f.name
                        for f in self.factors)

    @property
    def size(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.size
        return n

    def __len__(self):
        return self.size

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            elems = [()]
            for f in self.factors:
                elems = [t + (e,) for t in elems for e in f.elements]
            object.__setattr__(self, "_elements", tuple(elems))
        return self._elements

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, elem) -> bool:
        if not isinstance(elem, tuple) or len(elem) != len(self.factors):
            return False
        return all(e in f for e, f in zip(elem, self.factors))

    def index(self, elem) -> int:
        if elem not in self:
            raise UnknownElement(f"{elem!r} is not an element of {self.name}")
        if self._index is None:
            object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})
        return self._index[elem]

    def __str__(self):
        return self.name


Space = Union[Domain, ProductDomain]

UNIT = ProductDomain(())
BOOL = Domain("2", ("t", "f"))


def wires(space: Space) -> tuple:
    """Top-level factors of ``space``; a plain domain is a single wire."""
    return space.factors


def to_wires(space: Space, elem) -> tuple:
    return elem if isinstance(space, ProductDomain) else (elem,)


def from_wires(space: Space, values: Sequence) -> Hashable:
    return tuple(values) if isinstance(space, ProductDomain) else values[0]


def space_of(ws: Sequence[Space]) -> Space:
    """Space with the given wires: one wire collapses to itself."""
    ws = tuple(ws)
    if len(ws) == 1:
        return ws[0]
    return ProductDomain(ws)


def tensor_space(*spaces: Space) -> Space:
    ws = []
    for s in spaces:
        ws.extend(wires(s))
    return space_of(ws)


def split_element(spaces: Sequence[Space], elem_wires: tuple) -> list:
    """Cut a flat wire tuple into one element per space."""
    out = []
    pos = 0
    for s in spaces:
        n = len(wires(s))
        out.append(from_wires(s, elem_wires[pos:pos + n]))
        pos += n
    return out


def check_index(space: Space, i: int) -> None:
    n = len(wires(space))
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i} out of range 1..{n} for {space.name}")


def require_same(a: Space, b: Space, what: str = "domains") -> None:
    if a != b:
        raise DomainMismatch(f"{what} differ: {a.name} vs {b.name}")
