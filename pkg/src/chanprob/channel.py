"""Channels: stochastic tables with state and predicate transformation.

A ``Channel`` from ``dom`` to ``cod`` holds one ``Dist`` over ``cod`` per
element of ``dom``. ``c >> state`` pushes a state forward, ``c << pred``
pulls a predicate back, ``d @ c`` composes (``c`` first).

Circuits of channels can also be kept symbolic as a ``ChannelExpr``
(``Box``, ``Seq``, ``Par``) and pushed stage by stage without building the
full composite table.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .core import ONE, ZERO, Dist, Predicate, dist_new, point, product_state
from .domain import (
    BOOL,
    UNIT,
    Space,
    check_index,
    from_wires,
    require_same,
    split_element,
    tensor_space,
    to_wires,
    wires,
)
from .errors import DomainMismatch, TypeMismatch, UnknownElement


class Channel:
    """Immutable dense channel ``dom -> cod``."""

    __slots__ = ("dom", "cod", "rows")

    def __init__(self, dom: Space, cod: Space, rows: Sequence[Dist]):
        rows = tuple(rows)
        if len(rows) != dom.size:
            raise ValueError(f"channel from {dom.name} needs {dom.size} rows, got {len(rows)}")
        for r in rows:
            if r.domain != cod:
                raise DomainMismatch(f"row over {r.domain.name}, expected {cod.name}")
        self.dom = dom
        self.cod = cod
        self.rows = rows

    def row(self, elem) -> Dist:
        return self.rows[self.dom.index(elem)]

    __call__ = row

    def items(self):
        return zip(self.dom.elements, self.rows)

    def __rshift__(self, state: Dist) -> Dist:
        return push(self, state)

    def __lshift__(self, pred: Predicate) -> Predicate:
        return pull(self, pred)

    def __matmul__(self, other: "Channel") -> "Channel":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Channel):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.rows == other.rows

    def __hash__(self):
        return hash((self.dom, self.cod, self.rows))

    def __repr__(self):
        body = "; ".join(f"{a!r} -> {r.exact()}" for a, r in self.items())
        return f"Channel({self.dom.name} -> {self.cod.name}: {body})"


def channel(dom: Space, cod: Space, table: Union[Mapping, Callable]) -> Channel:
    """Build a channel from ``{dom element: Dist or {cod element: weight}}``
    or from a function returning either."""
    rows = []
    for a in dom.elements:
        r = table(a) if callable(table) else table[a]
        if not isinstance(r, Dist):
            r = dist_new(cod, r)
        rows.append(r)
    return Channel(dom, cod, rows)


def _accumulate(acc: dict, dist: Dist, weight: Fraction) -> None:
    for b, v in dist._w.items():
        acc[b] = acc.get(b, ZERO) + weight * v


def push(c: Channel, state: Dist) -> Dist:
    """State transformation ``c >> state``."""
    require_same(c.dom, state.domain, "channel domain and state domain")
    acc: dict = {}
    idx = c.dom.index
    for a, w in state._w.items():
        _accumulate(acc, c.rows[idx(a)], w)
    return Dist(c.cod, {b: v for b, v in acc.items() if v})


def pull(c: Channel, q: Predicate) -> Predicate:
    """Predicate transformation ``c << q``."""
    require_same(c.cod, q.domain, "channel codomain and predicate domain")
    idx = q.domain.index
    vals = q.values
    return Predicate(c.dom, [sum((v * vals[idx(b)] for b, v in r._w.items()), ZERO)
                             for r in c.rows])


def compose(d: Channel, c: Channel) -> Channel:
    """``d`` after ``c``: row ``a`` is ``d >> c(a)``."""
    require_same(c.cod, d.dom, "inner codomain and outer domain")
    return Channel(c.dom, d.cod, [push(d, r) for r in c.rows])


def parallel(*chs: Channel) -> Channel:
    """Parallel product; domains and codomains are concatenated wire-wise."""
    dom = tensor_space(*(c.dom for c in chs))
    cod = tensor_space(*(c.cod for c in chs))
    doms = [c.dom for c in chs]
    rows = []
    for a in dom.elements:
        parts = split_element(doms, to_wires(dom, a))
        rows.append(product_state(*(c.row(x) for c, x in zip(chs, parts))))
    return Channel(dom, cod, rows)


# -- structural and deterministic channels -----------------------------------------

def deterministic(dom: Space, cod: Space, fn: Union[Mapping, Callable]) -> Channel:
    """Lift a function ``dom -> cod`` to a channel with point-mass rows."""
    rows = []
    for a in dom.elements:
        b = fn(a) if callable(fn) else fn[a]
        if b not in cod:
            raise UnknownElement(f"{b!r} (image of {a!r}) is not in {cod.name}")
        rows.append(Dist(cod, {b: ONE}))
    return Channel(dom, cod, rows)


def identity(domain: Space) -> Channel:
    return deterministic(domain, domain, lambda a: a)


def copy(domain: Space) -> Channel:
    cod = tensor_space(domain, domain)
    return deterministic(domain, cod, lambda a: from_wires(cod, to_wires(domain, a) * 2))


def discard(domain: Space) -> Channel:
    return deterministic(domain, UNIT, lambda a: ())


def proj(product: Space, i: int) -> Channel:
    """Projection onto factor ``i`` (1-based)."""
    check_index(product, i)
    cod = wires(product)[i - 1]
    return deterministic(product, cod, lambda a: to_wires(product, a)[i - 1])


def swap(d1: Space, d2: Space) -> Channel:
    dom = tensor_space(d1, d2)
    cod = tensor_space(d2, d1)

    def flip(a):
        x, y = split_element([d1, d2], to_wires(dom, a))
        return from_wires(cod, to_wires(d2, y) + to_wires(d1, x))

    return deterministic(dom, cod, flip)


def from_predicate(p: Predicate) -> Channel:
    """The channel ``a -> p(a)|t> + (1 - p(a))|f>`` into the two-element domain."""
    return Channel(p.domain, BOOL, [Dist(BOOL, {k: v for k, v in (("t", x), ("f", 1 - x)) if v})
                                    for x in p.values])


def to_predicate(h: Channel) -> Predicate:
    if h.cod != BOOL:
        raise DomainMismatch(f"expected a channel into {BOOL.name}, got {h.cod.name}")
    return Predicate(h.dom, [r["t"] for r in h.rows])


def state_as_channel(state: Dist) -> Channel:
    return Channel(UNIT, state.domain, [state])


def pair(c1: Channel, c2: Channel) -> Channel:
    """``(c1 (x) c2) . copy``: feed one input to both channels."""
    require_same(c1.dom, c2.dom)
    return compose(parallel(c1, c2), copy(c1.dom))


# -- symbolic circuits ---------------------------------------------------------------

class ChannelExpr:
    dom: Space
    cod: Space

    def row(self, elem) -> Dist:
        raise NotImplementedError

    def push(self, state: Dist) -> Dist:
        require_same(self.dom, state.domain, "expression domain and state domain")
        acc: dict = {}
        for a, w in state._w.items():
            _accumulate(acc, self.row(a), w)
        return Dist(self.cod, {b: v for b, v in acc.items() if v})

    def pull(self, pred: Predicate) -> Predicate:
        return pull(self.evaluate(), pred)

    def evaluate(self) -> Channel:
        return Channel(self.dom, self.cod, [self.row(a) for a in self.dom.elements])

    def __rshift__(self, state: Dist) -> Dist:
        return self.push(state)


class Box(ChannelExpr):
    """Leaf of a circuit: a concrete channel plus a display label."""

    def __init__(self, ch: Channel, label: str = "c", kind: str = "atomic"):
        self.channel = ch
        self.label = label
        self.kind = kind
        self.dom = ch.dom
        self.cod = ch.cod

    def row(self, elem) -> Dist:
        return self.channel.row(elem)

    def push(self, state: Dist) -> Dist:
        return push(self.channel, state)

    def pull(self, pred: Predicate) -> Predicate:
        return pull(self.channel, pred)

    def evaluate(self) -> Channel:
        return self.channel

    def __repr__(self):
        return self.label


class Seq(ChannelExpr):
    """Sequential circuit; ``stages`` are applied first to last."""

    def __init__(self, *stages: ChannelExpr):
        if not stages:
            raise ValueError("empty sequence")
        for i in range(1, len(stages)):
            prev, nxt = stages[i - 1], stages[i]
            if prev.cod != nxt.dom:
                raise TypeMismatch(
                    f"seq[{i - 1}] -> seq[{i}]",
                    f"output {prev.cod.name} does not match input {nxt.dom.name}")
        self.stages = stages
        self.dom = stages[0].dom
        self.cod = stages[-1].cod

    def row(self, elem) -> Dist:
        return self.push(point(self.dom, elem))

    def push(self, state: Dist) -> Dist:
        require_same(self.dom, state.domain, "expression domain and state domain")
        for s in self.stages:
            state = s.push(state)
        return state

    def pull(self, pred: Predicate) -> Predicate:
        for s in reversed(self.stages):
            pred = s.pull(pred)
        return pred

    def evaluate(self) -> Channel:
        ch = self.stages[0].evaluate()
        for s in self.stages[1:]:
            ch = compose(s.evaluate(), ch)
        return ch

    def __repr__(self):
        return " ; ".join(repr(s) for s in self.stages)


class Par(ChannelExpr):
    """Parallel circuit; wires of the parts are laid side by side."""

    def __init__(self, *parts: ChannelExpr):
        if not parts:
            raise ValueError("empty parallel composition")
        self.parts = parts
        self.dom = tensor_space(*(p.dom for p in parts))
        self.cod = tensor_space(*(p.cod for p in parts))
        self._doms = [p.dom for p in parts]

    def row(self, elem) -> Dist:
        xs = split_element(self._doms, to_wires(self.dom, elem))
        return product_state(*(p.row(x) for p, x in zip(self.parts, xs)))

    def evaluate(self) -> Channel:
        return parallel(*(p.evaluate() for p in self.parts))

    def __repr__(self):
        return "(" + " (x) ".join(repr(p) for p in self.parts) + ")"


def Id(domain: Space) -> Box:
    return Box(identity(domain), "id", "identity")


def Copy(domain: Space) -> Box:
    return Box(copy(domain), "copy", "copy")


def Discard(domain: Space) -> Box:
    return Box(discard(domain), "discard", "discard")


def Proj(product: Space, i: int) -> Box:
    return Box(proj(product, i), f"proj{i}", "projection")


def Swap(d1: Space, d2: Space) -> Box:
    return Box(swap(d1, d2), "swap", "swap")


def evaluate(expr: ChannelExpr) -> Channel:
    """Flatten a circuit into a single channel table."""
    return expr.evaluate()
