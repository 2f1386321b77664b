"""Algebraic laws of states, predicates and channels, as runnable checks.

Every law is a function ``law(rng, max_size) -> None`` that draws a random
instance and raises ``LawViolation`` if exact equality fails. ``run_laws``
repeats each one and collects the results; the CLI ``check`` command and the
test suite both go through it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .channel import (
    Channel,
    compose,
    copy,
    discard,
    identity,
    parallel,
    proj,
    pull,
    push,
    swap,
)
from .core import (
    Dist,
    condition,
    marginal,
    point,
    point_pred,
    pred_conj,
    pred_product,
    pred_scale,
    product_state,
    truth,
    validity,
    weaken,
)
from .domain import Domain, ProductDomain
from .errors import ProbError, ZeroValidity
from .factorize import disintegrate, entwined_by_criterion, integrate, is_entwined
from .network import BayesNet, crossover_infer, transformer_infer
from .randgen import (
    rand_channel,
    rand_deterministic,
    rand_dist,
    rand_domain,
    rand_evidence,
    rand_network,
    rand_predicate,
    rand_targets,
)


class LawViolation(AssertionError):
    pass


def _same(what: str, a, b) -> None:
    if a != b:
        raise LawViolation(f"{what}: {a!r} != {b!r}")


def _doms(rng: random.Random, n: int, max_size: int) -> List[Domain]:
    return [rand_domain(rng, "ABCDEFGH"[i], max_size) for i in range(n)]


# -- channels -------------------------------------------------------------------------

def law_duality(rng, max_size=5):
    A, B = _doms(rng, 2, max_size)
    w, c, q = rand_dist(rng, A), rand_channel(rng, A, B), rand_predicate(rng, B)
    _same("(c >> w) |= q vs w |= (c << q)", validity(push(c, w), q), validity(w, pull(c, q)))


def law_functoriality(rng, max_size=5):
    A, B, C = _doms(rng, 3, max_size)
    c, d = rand_channel(rng, A, B), rand_channel(rng, B, C)
    w, q = rand_dist(rng, A), rand_predicate(rng, C)
    dc = compose(d, c)
    _same("(d . c) >> w", push(dc, w), push(d, push(c, w)))
    _same("(d . c) << q", pull(dc, q), pull(c, pull(d, q)))
    _same("id >> w", push(identity(A), w), w)
    _same("id << q", pull(identity(C), q), q)
    _same("c . id", compose(c, identity(A)), c)
    _same("id . c", compose(identity(B), c), c)
    D = rand_domain(rng, "E", max_size)
    e = rand_channel(rng, C, D)
    _same("associativity", compose(e, dc), compose(compose(e, d), c))


def law_interchange(rng, max_size=4):
    A1, A2, B1, B2, C1, C2 = _doms(rng, 6, max_size)
    c1, c2 = rand_channel(rng, A1, B1), rand_channel(rng, A2, B2)
    d1, d2 = rand_channel(rng, B1, C1), rand_channel(rng, B2, C2)
    _same("(d1 x d2) . (c1 x c2)", compose(parallel(d1, d2), parallel(c1, c2)),
          parallel(compose(d1, c1), compose(d2, c2)))
    w1, w2 = rand_dist(rng, A1), rand_dist(rng, A2)
    _same("(c1 x c2) >> (w1 x w2)", push(parallel(c1, c2), product_state(w1, w2)),
          product_state(push(c1, w1), push(c2, w2)))
    q1, q2 = rand_predicate(rng, B1), rand_predicate(rng, B2)
    _same("(c1 x c2) << (q1 x q2)", pull(parallel(c1, c2), pred_product(q1, q2)),
          pred_product(pull(c1, q1), pull(c2, q2)))


def law_causality(rng, max_size=5):
    A, B = _doms(rng, 2, max_size)
    c = rand_channel(rng, A, B)
    _same("c << truth", pull(c, truth(B)), truth(A))
    _same("discard . c", compose(discard(B), c), discard(A))


# -- conditioning ---------------------------------------------------------------------

def _nonzero(w: Dist, p) -> bool:
    return validity(w, p) != 0


def law_conditioning(rng, max_size=5):
    A, B = _doms(rng, 2, max_size)
    w = rand_dist(rng, A)
    p, q = rand_predicate(rng, A), rand_predicate(rng, A)
    _same("w | truth", condition(w, truth(A)), w)
    if _nonzero(w, pred_conj(p, q)):
        _same("w | (p & q)", condition(w, pred_conj(p, q)), condition(condition(w, p), q))
    if _nonzero(w, p):
        r = Fraction(rng.randint(1, 6), 6)
        _same("w | (r * p)", condition(w, pred_scale(r, p)), condition(w, p))
    x = rng.choice(A.elements)
    if w[x]:
        _same("w | 1{x}", condition(w, point_pred(A, x)), point(A, x))
    s, t = rand_dist(rng, A), rand_dist(rng, B)
    p1, p2 = rand_predicate(rng, A), rand_predicate(rng, B)
    if _nonzero(s, p1) and _nonzero(t, p2):
        _same("(s x t) | (p1 x p2)", condition(product_state(s, t), pred_product(p1, p2)),
              product_state(condition(s, p1), condition(t, p2)))
    st = product_state(s, t)
    if _nonzero(s, p1):
        _same("M1((s x t) | W1(p1))", marginal(condition(st, weaken(p1, st.domain, 1)), [1]),
              condition(s, p1))
    if _nonzero(t, p2):
        _same("M2((s x t) | W2(p2))", marginal(condition(st, weaken(p2, st.domain, 2)), [2]),
              condition(t, p2))


def law_product_rule(rng, max_size=5):
    (A,) = _doms(rng, 1, max_size)
    w = rand_dist(rng, A)
    p, q = rand_predicate(rng, A), rand_predicate(rng, A)
    vp = validity(w, p)
    if vp == 0:
        return
    _same("product rule", validity(condition(w, p), q), validity(w, pred_conj(p, q)) / vp)
    vq = validity(w, q)
    if vq:
        _same("Bayes' rule", validity(condition(w, p), q),
              validity(condition(w, q), p) * vq / vp)


# -- structural channels ----------------------------------------------------------------

def law_comonoid(rng, max_size=5):
    (A,) = _doms(rng, 1, max_size)
    cp, idA = copy(A), identity(A)
    _same("(discard x id) . copy", compose(parallel(discard(A), idA), cp), idA)
    _same("(id x discard) . copy", compose(parallel(idA, discard(A)), cp), idA)
    _same("coassociativity", compose(parallel(cp, idA), cp), compose(parallel(idA, cp), cp))
    _same("commutativity", compose(swap(A, A), cp), cp)
    p, q = rand_predicate(rng, A), rand_predicate(rng, A)
    _same("copy << (p x q)", pull(cp, pred_product(p, q)), pred_conj(p, q))


def law_projection(rng, max_size=4):
    A, B, C, D = _doms(rng, 4, max_size)
    f, h = rand_channel(rng, A, C), rand_channel(rng, B, D)
    fh = parallel(f, h)
    _same("pi1 . (f x h)", compose(proj(fh.cod, 1), fh), compose(f, proj(fh.dom, 1)))
    _same("pi2 . (f x h)", compose(proj(fh.cod, 2), fh), compose(h, proj(fh.dom, 2)))
    s = rand_dist(rng, ProductDomain((A, B)))
    _same("pi1 >> s", push(proj(s.domain, 1), s), marginal(s, [1]))
    q = rand_predicate(rng, A)
    _same("pi1 << q", pull(proj(s.domain, 1), q), weaken(q, s.domain, 1))


def law_copy_natural(rng, max_size=5):
    A, B = _doms(rng, 2, max_size)
    f = rand_deterministic(rng, A, B)
    _same("copy . f", compose(copy(B), f), compose(parallel(f, f), copy(A)))


def copy_counterexample() -> Dict[str, Channel]:
    """A fair coin does not commute with copying: ``copy . f != (f x f) . copy``."""
    one = Domain("1", ("*",))
    coin = Domain("coin", ("H", "T"))
    f = Channel(one, coin, [Dist(coin, {"H": Fraction(1, 2), "T": Fraction(1, 2)})])
    return {"copy_after": compose(copy(coin), f), "parallel_after": compose(parallel(f, f), copy(one))}


def law_copy_counterexample(rng, max_size=5):
    ce = copy_counterexample()
    if ce["copy_after"] == ce["parallel_after"]:
        raise LawViolation("non-deterministic coin unexpectedly commutes with copy")


# -- factorisation ------------------------------------------------------------------------

def law_disintegration(rng, max_size=5):
    A, B = _doms(rng, 2, max_size)
    joint = rand_dist(rng, ProductDomain((A, B)), zero_prob=0.4)
    d = disintegrate(joint)
    _same("integrate . disintegrate", integrate(d.base, d.channel), joint)


def law_entwined_criterion(rng, max_size=2):
    A = Domain("A", ("a0", "a1"))
    B = Domain("B", ("b0", "b1"))
    joint = rand_dist(rng, ProductDomain((A, B)), zero_prob=0.3)
    _same("entwined vs r1 r4 != r2 r3", is_entwined(joint), entwined_by_criterion(joint))


def law_inference(rng, max_size=4):
    net = rand_network(rng, 6, max_size)
    ev = rand_evidence(rng, net)
    targets = rand_targets(rng, net)
    try:
        a = crossover_infer(net, ev, targets)
    except ZeroValidity:
        a = None
    try:
        b = transformer_infer(net, ev, targets)
    except ZeroValidity:
        b = None
    if a is None or b is None:
        _same("both engines reject zero-validity evidence", a is None, b is None)
        return
    _same("crossover vs transformer", a.dist, b.dist)
    _same("evidence validity", a.validity, b.validity)


LAWS: Dict[str, Callable] = {
    "duality": law_duality,
    "functoriality": law_functoriality,
    "interchange": law_interchange,
    "causality": law_causality,
    "conditioning": law_conditioning,
    "product-and-bayes": law_product_rule,
    "copy-discard": law_comonoid,
    "projection": law_projection,
    "copy-naturality": law_copy_natural,
    "copy-counterexample": law_copy_counterexample,
    "disintegration": law_disintegration,
    "entwinedness": law_entwined_criterion,
    "inference": law_inference,
}


@dataclass
class LawReport:
    name: str
    runs: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_law(name: str, samples: int, seed: int = 0, max_size: Optional[int] = None) -> LawReport:
    law = LAWS[name]
    rng = random.Random(f"{seed}:{name}")
    rep = LawReport(name)
    for _ in range(samples):
        try:
            if max_size is None:
                law(rng)
            else:
                law(rng, max_size)
        except (LawViolation, ProbError) as e:
            rep.failures.append(str(e))
        rep.runs += 1
    return rep


def run_laws(samples: int = 100, seed: int = 0, names=None) -> List[LawReport]:
    return [run_law(n, samples, seed) for n in (names or LAWS)]


def network_laws(net: BayesNet, samples: int, seed: int = 0) -> List[LawReport]:
    """Duality and causality for each CPT of ``net`` on random states and predicates."""
    rng = random.Random(f"{seed}:{net.name}")
    out = []
    for name in net.names:
        c = net.cpt(name)
        rep = LawReport(f"cpt {name}")
        for _ in range(samples):
            w = rand_dist(rng, c.dom)
            q = rand_predicate(rng, c.cod)
            try:
                _same("duality", validity(push(c, w), q), validity(w, pull(c, q)))
                _same("c << truth", pull(c, truth(c.cod)), truth(c.dom))
            except LawViolation as e:
                rep.failures.append(str(e))
            rep.runs += 1
        try:
            _same("discard . c", compose(discard(c.cod), c), discard(c.dom))
        except LawViolation as e:
            rep.failures.append(str(e))
        out.append(rep)
    return out


__all__ = ["LAWS", "LawReport", "LawViolation", "run_law", "run_laws", "network_laws",
           "copy_counterexample"]
