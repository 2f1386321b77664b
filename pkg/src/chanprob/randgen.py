"""Seeded generators for random domains, states, channels and networks.

Weights use small denominators so exact arithmetic stays cheap, and some
entries are forced to zero so that degenerate cases (empty rows, zero
validity) actually occur.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional

from .channel import Channel
from .core import Dist, Predicate, point_pred
from .domain import Domain, Space, tensor_space
from .network import BayesNet, Node


def rand_domain(rng: random.Random, name: str, max_size: int = 4, min_size: int = 1) -> Domain:
    n = rng.randint(min_size, max_size)
    return Domain(name, tuple(f"{name.lower()}{i}" for i in range(n)))


def rand_weights(rng: random.Random, n: int, zero_prob: float = 0.2, max_den: int = 12) -> List[Fraction]:
    """``n`` nonnegative rationals summing to 1, some possibly zero."""
    raw = [0 if rng.random() < zero_prob else rng.randint(1, max_den) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def rand_dist(rng: random.Random, space: Space, zero_prob: float = 0.2) -> Dist:
    ws = rand_weights(rng, space.size, zero_prob)
    return Dist(space, {e: w for e, w in zip(space.elements, ws) if w})


def rand_predicate(rng: random.Random, space: Space, sharp: bool = False) -> Predicate:
    if sharp:
        return Predicate(space, [Fraction(rng.randint(0, 1)) for _ in range(space.size)])
    return Predicate(space, [Fraction(rng.randint(0, 6), 6) for _ in range(space.size)])


def rand_channel(rng: random.Random, dom: Space, cod: Space, zero_prob: float = 0.2) -> Channel:
    return Channel(dom, cod, [rand_dist(rng, cod, zero_prob) for _ in dom.elements])


def rand_deterministic(rng: random.Random, dom: Space, cod: Space) -> Channel:
    return Channel(dom, cod, [Dist(cod, {rng.choice(cod.elements): Fraction(1)})
                              for _ in dom.elements])


def rand_network(rng: random.Random, max_nodes: int = 6, max_size: int = 4,
                 max_parents: int = 3) -> BayesNet:
    """Random net in declaration order; parents are drawn from earlier nodes."""
    n = rng.randint(1, max_nodes)
    nodes: List[Node] = []
    for i in range(n):
        name = f"V{i}"
        dom = rand_domain(rng, f"D{i}", max_size, min_size=2)
        earlier = [m.name for m in nodes]
        k = rng.randint(0, min(max_parents, len(earlier)))
        parents = rng.sample(earlier, k)
        pdom = tensor_space(*(nodes[int(p[1:])].domain for p in parents))
        cpt = rand_channel(rng, pdom, dom)
        nodes.append(Node.from_channel(name, dom, parents, cpt))
    return BayesNet(nodes, name="random")


def rand_chain(rng: random.Random, n: int, size: int = 3) -> BayesNet:
    nodes: List[Node] = []
    for i in range(n):
        dom = Domain(f"C{i}", tuple(f"c{i}_{j}" for j in range(size)))
        parents = [nodes[-1].name] if nodes else []
        pdom = nodes[-1].domain if nodes else tensor_space()
        nodes.append(Node.from_channel(f"N{i}", dom, parents, rand_channel(rng, pdom, dom, 0.0)))
    return BayesNet(nodes, name="chain")


def rand_evidence(rng: random.Random, net: BayesNet, max_nodes: int = 3,
                  point_prob: float = 0.4) -> Dict[str, Predicate]:
    """Mixed point / fuzzy evidence on up to ``max_nodes`` distinct nodes."""
    k = rng.randint(0, min(max_nodes, len(net.nodes)))
    out = {}
    for name in rng.sample(net.names, k):
        dom = net[name].domain
        if rng.random() < point_prob:
            out[name] = point_pred(dom, rng.choice(dom.elements))
        else:
            out[name] = rand_predicate(rng, dom)
    return out


def rand_targets(rng: random.Random, net: BayesNet, max_targets: int = 2) -> List[str]:
    k = rng.randint(1, min(max_targets, len(net.nodes)))
    return rng.sample(net.names, k)


def make_rng(seed: Optional[int]) -> random.Random:
    return random.Random(seed)
