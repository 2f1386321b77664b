"""Disintegration of joint states into a base state plus a channel.

Joints handled here have exactly two top-level factors ``X*Y``; either
factor may itself be a product. Use :func:`regroup` to bring an n-ary
joint into that shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import Channel
from .core import ZERO, Dist, marginal, uniform
from .domain import ProductDomain, check_index, space_of, to_wires, wires
from .errors import DomainMismatch, EmptyGroup, IndexOverlap


@dataclass(frozen=True)
class Disintegration:
    base: Dist
    channel: Channel
    flagged_rows: frozenset = frozenset()


def _two_factors(joint: Dist) -> tuple:
    ws = wires(joint.domain)
    if len(ws) != 2:
        raise DomainMismatch(f"expected a two-factor joint, got {joint.domain.name}")
    return ws


def integrate(state: Dist, c: Channel) -> Dist:
    """Joint ``(x, y) -> state(x) * c(x)(y)`` on ``dom * cod`` (two factors)."""
    if c.dom != state.domain:
        raise DomainMismatch(f"channel domain {c.dom.name} vs state domain {state.domain.name}")
    space = ProductDomain((state.domain, c.cod))
    out = {}
    for x, w in state._w.items():
        for y, v in c.row(x)._w.items():
            out[(x, y)] = w * v
    return Dist(space, out)


def disintegrate(joint: Dist) -> Disintegration:
    """Extract the channel ``x -> joint(x, -) / M1(joint)(x)``.

    Rows for ``x`` outside the support of the first marginal are set to the
    uniform distribution and reported in ``flagged_rows``.
    """
    X, Y = _two_factors(joint)
    base = marginal(joint, [1])
    grouped: dict = {}
    for (x, y), w in joint._w.items():
        grouped.setdefault(x, {})[y] = w
    rows = []
    flagged = []
    for x in X.elements:
        m = base._w.get(x)
        if m is None:
            rows.append(uniform(Y))
            flagged.append(x)
        else:
            rows.append(Dist(Y, {y: w / m for y, w in grouped[x].items()}))
    return Disintegration(base, Channel(X, Y, rows), frozenset(flagged))


def regroup(joint: Dist, given, target) -> Dist:
    """Relabel an n-ary joint as ``given-group * target-group``.

    Factors in neither group are summed out. A group with one index keeps
    that factor as is; larger groups become a product factor.
    """
    given, target = list(given), list(target)
    if not given or not target:
        raise EmptyGroup("both groups must be nonempty")
    overlap = set(given) & set(target)
    if overlap:
        raise IndexOverlap(f"indices {sorted(overlap)} appear in both groups")
    if len(set(given)) != len(given) or len(set(target)) != len(target):
        raise IndexOverlap("repeated index within a group")
    for i in given + target:
        check_index(joint.domain, i)
    ws = wires(joint.domain)
    G = space_of([ws[i - 1] for i in given])
    T = space_of([ws[i - 1] for i in target])
    space = ProductDomain((G, T))
    g_single = len(given) == 1
    t_single = len(target) == 1
    out: dict = {}
    for e, w in joint._w.items():
        t = to_wires(joint.domain, e)
        g = t[given[0] - 1] if g_single else tuple(t[i - 1] for i in given)
        h = t[target[0] - 1] if t_single else tuple(t[i - 1] for i in target)
        out[(g, h)] = out.get((g, h), ZERO) + w
    return Dist(space, out)


def _is_product(joint: Dist) -> bool:
    m1 = marginal(joint, [1])
    m2 = marginal(joint, [2])
    for x, a in m1._w.items():
        for y, b in m2._w.items():
            if joint._w.get((x, y), ZERO) != a * b:
                return False
    # Off the product of supports both sides are zero.
    return all(x in m1._w and y in m2._w for x, y in joint._w)


def is_entwined(joint: Dist) -> bool:
    """True iff the two-factor ``joint`` differs from the product of its marginals."""
    _two_factors(joint)
    return not _is_product(joint)


def cond_independent(joint: Dist, x=(1,), y=(2,), z=(3,)) -> bool:
    """Are factor groups ``x`` and ``y`` independent given ``z``?

    Extracts ``c: Z -> X*Y`` by disintegration and checks that every row on
    the support of the ``z`` marginal is the product of its own marginals.
    """
    x, y = list(x), list(y)
    split = regroup(joint, z, x + y)
    d = disintegrate(split)
    XY = d.channel.cod
    nx = len(x)
    for zz in d.base.support():
        row = d.channel.row(zz)
        inner = _split_pair(row, XY, nx)
        if not _is_product(inner):
            return False
    return True


def _split_pair(row: Dist, space, nx: int) -> Dist:
    """View a distribution on ``X*Y`` (flattened) as a two-factor joint."""
    ws = wires(space)
    A = space_of(ws[:nx])
    B = space_of(ws[nx:])
    a_single = nx == 1
    b_single = len(ws) - nx == 1
    out = {}
    for e, w in row._w.items():
        t = to_wires(space, e)
        a = t[0] if a_single else t[:nx]
        b = t[nx] if b_single else t[nx:]
        out[(a, b)] = w
    return Dist(ProductDomain((A, B)), out)


def entwined_by_criterion(joint: Dist) -> bool:
    """2x2 shortcut: entwined iff ``r1*r4 != r2*r3`` (weights in domain order)."""
    X, Y = _two_factors(joint)
    if X.size != 2 or Y.size != 2:
        raise DomainMismatch("criterion only applies to 2x2 joints")
    r = [joint[e] for e in joint.domain.elements]
    return r[0] * r[3] != r[1] * r[2]


__all__ = ["Disintegration", "integrate", "disintegrate", "regroup", "is_entwined",
           "cond_independent", "entwined_by_criterion"]
