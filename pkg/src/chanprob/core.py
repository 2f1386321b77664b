"""Exact finite states (distributions) and fuzzy predicates.

All weights are ``fractions.Fraction``. A ``Dist`` keeps only its support;
a ``Predicate`` stores one value per domain element, in domain order.
"""

from __future__ import annotations

from decimal import Decimal, localcontext, ROUND_HALF_EVEN
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Union

from .domain import (
    Domain,
    ProductDomain,
    Space,
    check_index,
    require_same,
    space_of,
    tensor_space,
    to_wires,
    wires,
)
from .errors import (
    DomainMismatch,
    EmptyKeepSet,
    OutOfRange,
    SumNotOne,
    UnknownElement,
    ZeroValidity,
)

RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rat(x) -> Fraction:
    """Exact rational from an int, Fraction, Decimal or a string like "0.3" or "1/3".

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ValueError(f"not a rational number: {x!r}") from None
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _unit_interval(r: Fraction, what: str = "value") -> Fraction:
    if r < 0 or r > 1:
        raise OutOfRange(f"{what} {r} is outside [0, 1]")
    return r


def format_rat(r: Fraction, digits: int = 4) -> str:
    """Fixed-point rendering of ``r`` rounded half-even to ``digits`` places."""
    with localcontext() as ctx:
        ctx.prec = max(28, digits + 30)
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(r.numerator) / Decimal(r.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits)))


def _label(elem) -> str:
    if isinstance(elem, tuple):
        return ",".join(_label(e) for e in elem)
    return str(elem)


class Dist:
    """A finite probability distribution (a *state*) on ``domain``.

    Construct with :func:`dist_new`, :func:`uniform`, :func:`point` or the
    operations below. Instances are immutable.
    """

    __slots__ = ("domain", "_w", "_hash")

    def __init__(self, domain: Space, weights: Mapping):
        # Unchecked; public constructors validate before getting here.
        self.domain = domain
        self._w = dict(weights)
        self._hash = None

    def __getitem__(self, elem) -> Fraction:
        w = self._w.get(elem)
        if w is not None:
            return w
        if elem not in self.domain:
            raise UnknownElement(f"{elem!r} is not in {self.domain.name}")
        return ZERO

    def __call__(self, elem) -> Fraction:
        return self[elem]

    def support(self) -> list:
        return [e for e, _ in self.items()]

    def items(self) -> list:
        """(element, weight) pairs of the support, in domain order."""
        if len(self._w) == 1:
            return list(self._w.items())
        idx = self.domain.index
        return sorted(self._w.items(), key=lambda kv: idx(kv[0]))

    def __len__(self):
        return len(self._w)

    def __eq__(self, other):
        if not isinstance(other, Dist):
            return NotImplemented
        return self.domain == other.domain and self._w == other._w

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, frozenset(self._w.items())))
        return self._hash

    def ket(self, digits: int = 4) -> str:
        return " + ".join(f"{format_rat(w, digits)}|{_label(e)}>" for e, w in self.items())

    def exact(self) -> str:
        return " + ".join(f"{w}|{_label(e)}>" for e, w in self.items())

    def __str__(self):
        return self.ket()

    def __repr__(self):
        return f"Dist({self.domain.name}: {self.exact()})"


class Predicate:
    """A fuzzy predicate: a value in [0, 1] for every element of ``domain``."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: Space, values: Iterable):
        self.domain = domain
        self.values = tuple(values)
        if len(self.values) != domain.size:
            raise ValueError(f"predicate on {domain.name} needs {domain.size} values")

    def __call__(self, elem) -> Fraction:
        return self.values[self.domain.index(elem)]

    def items(self) -> list:
        return list(zip(self.domain.elements, self.values))

    def __and__(self, other: "Predicate") -> "Predicate":
        return pred_conj(self, other)

    def __invert__(self) -> "Predicate":
        return pred_ortho(self)

    def __eq__(self, other):
        if not isinstance(other, Predicate):
            return NotImplemented
        return self.domain == other.domain and self.values == other.values

    def __hash__(self):
        return hash((self.domain, self.values))

    def __repr__(self):
        body = ", ".join(f"{_label(e)}: {v}" for e, v in self.items())
        return f"Predicate({self.domain.name}: {body})"


# -- states -----------------------------------------------------------------

def dist_new(domain: Space, entries) -> Dist:
    """Build a state from ``(element, weight)`` pairs or an element->weight mapping."""
    pairs = entries.items() if isinstance(entries, Mapping) else entries
    w = {}
    total = ZERO
    for elem, r in pairs:
        if elem not in domain:
            raise UnknownElement(f"{elem!r} is not an element of {domain.name}")
        if elem in w:
            raise ValueError(f"duplicate entry for {elem!r}")
        r = _unit_interval(parse_rat(r), f"weight of {elem!r}")
        w[elem] = r
        total += r
    if total != 1:
        raise SumNotOne(f"weights sum to {total}, not 1")
    return Dist(domain, {e: r for e, r in w.items() if r})


def uniform(domain: Space) -> Dist:
    r = Fraction(1, domain.size)
    return Dist(domain, {e: r for e in domain.elements})


def point(domain: Space, elem) -> Dist:
    if elem not in domain:
        raise UnknownElement(f"{elem!r} is not an element of {domain.name}")
    return Dist(domain, {elem: ONE})


def product_state(*states: Dist) -> Dist:
    """Parallel product of states; factors are concatenated wire-wise."""
    space = tensor_space(*(s.domain for s in states))
    acc = {(): ONE}
    for s in states:
        acc = {t + to_wires(s.domain, e): v * w
               for t, v in acc.items() for e, w in s._w.items()}
    if sum(len(wires(s.domain)) for s in states) == 1:
        acc = {t[0]: v for t, v in acc.items()}
    return Dist(space, acc)


def _keep_indices(domain: Space, keep) -> tuple:
    keep = sorted(set(keep))
    if not keep:
        raise EmptyKeepSet("marginal needs at least one factor to keep")
    for i in keep:
        check_index(domain, i)
    return tuple(i - 1 for i in keep)


def marginal(state: Dist, keep) -> Dist:
    """Sum out every factor not in ``keep`` (1-based indices, order preserved)."""
    idx = _keep_indices(state.domain, keep)
    ws = wires(state.domain)
    space = space_of([ws[i] for i in idx])
    single = len(idx) == 1
    out: dict = {}
    for e, w in state._w.items():
        t = to_wires(state.domain, e)
        k = t[idx[0]] if single else tuple(t[i] for i in idx)
        out[k] = out.get(k, ZERO) + w
    return Dist(space, out)


def convex_sum(terms) -> Dist:
    terms = [(parse_rat(r), s) for r, s in terms]
    if not terms:
        raise ValueError("convex sum of no states")
    domain = terms[0][1].domain
    total = ZERO
    out: dict = {}
    for r, s in terms:
        require_same(domain, s.domain)
        _unit_interval(r, "mixture weight")
        total += r
        if r:
            for e, w in s._w.items():
                out[e] = out.get(e, ZERO) + r * w
    if total != 1:
        raise SumNotOne(f"mixture weights sum to {total}, not 1")
    return Dist(domain, {e: w for e, w in out.items() if w})


def validity(state: Dist, pred: Predicate) -> Fraction:
    """Expected value of ``pred`` in ``state``."""
    require_same(state.domain, pred.domain)
    idx = pred.domain.index
    vals = pred.values
    return sum((w * vals[idx(e)] for e, w in state._w.items()), ZERO)


def condition(state: Dist, pred: Predicate) -> Dist:
    """Update ``state`` with evidence ``pred`` and renormalise."""
    require_same(state.domain, pred.domain)
    idx = pred.domain.index
    vals = pred.values
    scaled = {}
    for e, w in state._w.items():
        v = vals[idx(e)]
        if v:
            scaled[e] = w * v
    total = sum(scaled.values(), ZERO)
    if total == 0:
        raise ZeroValidity("evidence has validity 0 in this state")
    return Dist(state.domain, {e: w / total for e, w in scaled.items()})


# -- predicates ---------------------------------------------------------------

def predicate(domain: Space, values: Union[Mapping, Callable, Iterable], default=0) -> Predicate:
    """Build a predicate from a mapping (missing elements get ``default``),
    a function of the element, or a dense sequence in domain order."""
    if isinstance(values, Mapping):
        for k in values:
            if k not in domain:
                raise UnknownElement(f"{k!r} is not an element of {domain.name}")
        raw = [values.get(e, default) for e in domain.elements]
    elif callable(values):
        raw = [values(e) for e in domain.elements]
    else:
        raw = list(values)
    vals = [_unit_interval(parse_rat(v), "predicate value") for v in raw]
    return Predicate(domain, vals)


def truth(domain: Space) -> Predicate:
    return Predicate(domain, [ONE] * domain.size)


def falsity(domain: Space) -> Predicate:
    return Predicate(domain, [ZERO] * domain.size)


def indicator(domain: Space, subset) -> Predicate:
    subset = set(subset)
    for e in subset:
        if e not in domain:
            raise UnknownElement(f"{e!r} is not an element of {domain.name}")
    return Predicate(domain, [ONE if e in subset else ZERO for e in domain.elements])


def point_pred(domain: Space, elem) -> Predicate:
    return indicator(domain, [elem])


def pred_conj(p: Predicate, q: Predicate) -> Predicate:
    require_same(p.domain, q.domain)
    return Predicate(p.domain, [a * b for a, b in zip(p.values, q.values)])


def pred_scale(r: RatLike, p: Predicate) -> Predicate:
    r = _unit_interval(parse_rat(r), "scalar")
    return Predicate(p.domain, [r * v for v in p.values])


def pred_ortho(p: Predicate) -> Predicate:
    return Predicate(p.domain, [1 - v for v in p.values])


def pred_product(*preds: Predicate) -> Predicate:
    space = tensor_space(*(p.domain for p in preds))
    vals = [ONE]
    for p in preds:
        vals = [a * b for a in vals for b in p.values]
    return Predicate(space, vals)


def weaken(p: Predicate, target: ProductDomain, at: int) -> Predicate:
    """Extend ``p`` to ``target`` with truth on every factor except ``at`` (1-based)."""
    check_index(target, at)
    ws = wires(target)
    if ws[at - 1] != p.domain:
        raise DomainMismatch(f"factor {at} of {target.name} is not {p.domain.name}")
    if not isinstance(target, ProductDomain):
        return p
    look = dict(zip(p.domain.elements, p.values))
    return Predicate(target, [look[t[at - 1]] for t in target.elements])


def is_sharp(p: Predicate) -> bool:
    return all(v == 0 or v == 1 for v in p.values)


__all__ = [
    "Dist", "Predicate", "Domain", "ProductDomain", "parse_rat", "format_rat",
    "dist_new", "uniform", "point", "product_state", "marginal", "convex_sum",
    "validity", "condition", "predicate", "truth", "falsity", "indicator",
    "point_pred", "pred_conj", "pred_scale", "pred_ortho", "pred_product",
    "weaken", "is_sharp",
]
