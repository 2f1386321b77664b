"""Bayesian networks assembled from channels, and exact inference on them.

Two engines answer the same query:

* ``crossover_infer`` builds the full joint state, conditions it on the
  weakened evidence and takes a marginal.
* ``transformer_infer`` walks the nodes in declaration order, keeping only
  a small joint over the "frontier" of live variables. Each node is pushed
  through its CPT, its evidence is applied straight away, and variables that
  are no longer needed are summed out in the same pass.

Both work in exact arithmetic and must give identical results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from .channel import Box, Channel, Id, Par, Seq, deterministic
from .core import (
    ONE,
    ZERO,
    Dist,
    Predicate,
    condition,
    marginal,
    parse_rat,
    point_pred,
    pred_conj,
    truth,
    validity,
    weaken,
)
from .domain import UNIT, Domain, ProductDomain, from_wires, space_of, tensor_space
from .errors import (
    DomainMismatch,
    InvalidNetwork,
    MethodMismatch,
    UnknownNode,
    ZeroValidity,
)


@dataclass(frozen=True, eq=False)
class Node:
    """A network node. ``table`` maps each parent-label tuple (in ``parents``
    order; ``()`` for a root) to ``{label: probability}``."""

    name: str
    domain: Domain
    parents: tuple = ()
    table: Mapping = field(default_factory=dict)

    @classmethod
    def from_channel(cls, name: str, domain: Domain, parents: Sequence[str], cpt: Channel) -> "Node":
        table = {}
        for a, row in cpt.items():
            key = a if isinstance(cpt.dom, ProductDomain) else (a,)
            table[key] = dict(row.items())
        return cls(name, domain, tuple(parents), table)


@dataclass(frozen=True)
class NetError:
    kind: str
    node: str
    message: str

    def __str__(self):
        return f"{self.kind} [{self.node}]: {self.message}"


class BayesNet:
    """Ordered collection of nodes. Immutable once built."""

    def __init__(self, nodes: Iterable[Node], name: str = "bn"):
        self.nodes = tuple(nodes)
        self.name = name
        self._by_name = {n.name: n for n in self.nodes}
        self._cpts: Dict[str, Channel] = {}

    def __getitem__(self, name: str) -> Node:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownNode(f"no node named {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._by_name

    @property
    def names(self) -> List[str]:
        return [n.name for n in self.nodes]

    def position(self, name: str) -> int:
        self[name]
        return self.names.index(name)

    def children(self, name: str) -> List[str]:
        return [n.name for n in self.nodes if name in n.parents]

    def parent_space(self, node: Node):
        return space_of([self[p].domain for p in node.parents])

    def cpt(self, name: str) -> Channel:
        ch = self._cpts.get(name)
        if ch is None:
            node = self[name]
            dom = self.parent_space(node)
            rows = []
            for key in _parent_tuples(self, node):
                entries = node.table[key]
                rows.append(Dist(node.domain, {x: parse_rat(v) for x, v in entries.items()
                                               if parse_rat(v)}))
            ch = Channel(dom, node.domain, rows)
            self._cpts[name] = ch
        return ch

    def __repr__(self):
        return f"BayesNet({', '.join(self.names)})"


def _parent_tuples(net: BayesNet, node: Node) -> list:
    tuples = [()]
    for p in node.parents:
        tuples = [t + (x,) for t in tuples for x in net[p].domain.elements]
    return tuples


# -- validation -----------------------------------------------------------------

def validate(net: BayesNet) -> List[NetError]:
    """Return every structural problem found; an empty list means the net is usable."""
    errors: List[NetError] = []
    seen = set()
    for n in net.nodes:
        if n.name in seen:
            errors.append(NetError("DuplicateName", n.name, "node declared more than once"))
        seen.add(n.name)

    names = [n.name for n in net.nodes]
    declared = {}
    for i, n in enumerate(net.nodes):
        declared.setdefault(n.name, i)
    parent_ok = True
    for i, n in enumerate(net.nodes):
        if len(set(n.parents)) != len(n.parents):
            errors.append(NetError("DuplicateParent", n.name, "parent listed twice"))
            parent_ok = False
        for p in n.parents:
            if p not in declared:
                errors.append(NetError("UnknownParent", n.name, f"parent {p!r} is not declared"))
                parent_ok = False

    cyclic = _cyclic_nodes(net) if parent_ok else set()
    for n in net.nodes:
        if n.name in cyclic:
            errors.append(NetError("Cycle", n.name, "node lies on a directed cycle"))
    if parent_ok and not cyclic:
        for i, n in enumerate(net.nodes):
            for p in n.parents:
                if declared[p] >= i:
                    errors.append(NetError("OrderViolation", n.name,
                                           f"parent {p!r} is declared after its child"))
    if not parent_ok or cyclic or len(seen) != len(names):
        return errors

    for n in net.nodes:
        expected = _parent_tuples(net, n)
        keys = set(n.table)
        for t in expected:
            if t not in keys:
                errors.append(NetError("CptShapeMismatch", n.name, f"missing row for {_fmt(t)}"))
        for t in keys - set(expected):
            errors.append(NetError("CptShapeMismatch", n.name, f"unexpected row {_fmt(t)}"))
        for t in expected:
            if t not in keys:
                continue
            total = ZERO
            for label, v in n.table[t].items():
                if label not in n.domain:
                    errors.append(NetError("CptShapeMismatch", n.name,
                                           f"row {_fmt(t)}: {label!r} not in domain {n.domain.name}"))
                    continue
                v = parse_rat(v)
                if v < 0 or v > 1:
                    errors.append(NetError("OutOfRange", n.name, f"row {_fmt(t)}: {label} = {v}"))
                total += v
            if total != 1:
                errors.append(NetError("RowSumNotOne", n.name,
                                       f"row {_fmt(t)} sums to {total}"))
    return errors


def _fmt(t: tuple) -> str:
    return "(" + ", ".join(map(str, t)) + ")"


def _cyclic_nodes(net: BayesNet) -> set:
    parents = {n.name: n.parents for n in net.nodes}
    state: Dict[str, int] = {}
    on_cycle = set()

    def visit(v, stack):
        state[v] = 1
        stack.append(v)
        for p in parents.get(v, ()):
            if state.get(p) == 1:
                on_cycle.update(stack[stack.index(p):])
            elif p not in state:
                visit(p, stack)
        stack.pop()
        state[v] = 2

    for v in parents:
        if v not in state:
            visit(v, [])
    return on_cycle


def check(net: BayesNet) -> BayesNet:
    errors = validate(net)
    if errors:
        raise InvalidNetwork(errors)
    return net


# -- joint state ------------------------------------------------------------------

def _extend(frontier: dict, parent_pos: Sequence[int], cpt: Channel, keep_pos: Sequence[int],
            keep_new: bool, ev: Optional[dict] = None) -> dict:
    """Push every frontier tuple through ``cpt`` (fed from ``parent_pos``),
    optionally weight by evidence ``ev``, and keep only ``keep_pos`` (plus the
    new variable when ``keep_new``)."""
    out: dict = {}
    dom = cpt.dom
    cache: dict = {}
    for t, w in frontier.items():
        key = tuple(t[i] for i in parent_pos)
        row = cache.get(key)
        if row is None:
            row = cpt.row(from_wires(dom, key))._w
            cache[key] = row
        base = tuple(t[i] for i in keep_pos)
        for x, v in row.items():
            if ev is not None:
                e = ev[x]
                if not e:
                    continue
                v = v * e
            k = base + (x,) if keep_new else base
            out[k] = out.get(k, ZERO) + w * v
    return out


def _as_dist(net: BayesNet, names: Sequence[str], table: dict) -> Dist:
    space = space_of([net[n].domain for n in names])
    if len(names) == 1:
        return Dist(space, {k[0]: v for k, v in table.items() if v})
    return Dist(space, {k: v for k, v in table.items() if v})


def compile_joint(net: BayesNet) -> Dist:
    """Joint state over all nodes, in declaration order."""
    check(net)
    frontier = {(): ONE}
    names: List[str] = []
    for n in net.nodes:
        pos = [names.index(p) for p in n.parents]
        frontier = _extend(frontier, pos, net.cpt(n.name), range(len(names)), True)
        names.append(n.name)
    return _as_dist(net, names, frontier)


def joint_circuit(net: BayesNet) -> Seq:
    """The joint as an explicit circuit of copy-routing and CPT boxes.

    Each stage copies the parents of the next node out of the current wires
    and runs them through its CPT, so every node stays externally visible.
    Push ``point(UNIT, ())`` through the result to get the joint.
    """
    check(net)
    wires_: List[Domain] = []
    names: List[str] = []
    stages = []
    for n in net.nodes:
        pos = [names.index(p) for p in n.parents]
        dom = space_of(wires_) if wires_ else UNIT
        cpt = net.cpt(n.name)
        routed = tensor_space(dom, cpt.dom)

        def route(a, dom=dom, pos=pos, routed=routed):
            t = a if isinstance(dom, ProductDomain) else (a,)
            return from_wires(routed, t + tuple(t[i] for i in pos))

        parts = [Id(w) for w in wires_] + [Box(cpt, f"c_{n.name}")]
        stages.append(Seq(Box(deterministic(dom, routed, route), "route", "copy"), Par(*parts)))
        wires_.append(n.domain)
        names.append(n.name)
    return Seq(*stages)


# -- queries --------------------------------------------------------------------

@dataclass
class QueryResult:
    dist: Dist
    method: str
    validity: Fraction
    timings: Dict[str, float] = field(default_factory=dict)
    max_frontier_arity: Optional[int] = None


def _bind(net: BayesNet, evidence: Mapping[str, Predicate]) -> Dict[str, Predicate]:
    out = {}
    for name, p in evidence.items():
        node = net[name]
        if p.domain != node.domain:
            raise DomainMismatch(f"evidence on {name} is over {p.domain.name}, "
                                 f"node domain is {node.domain.name}")
        out[name] = p
    return out


def _targets(net: BayesNet, targets: Iterable[str]) -> List[str]:
    targets = [targets] if isinstance(targets, str) else list(targets)
    if not targets:
        raise ValueError("at least one target node is required")
    for t in targets:
        net[t]
    return [n for n in net.names if n in set(targets)]


def evidence_predicate(net: BayesNet, joint_space, evidence: Mapping[str, Predicate]) -> Predicate:
    """Conjunction of all evidence, each weakened to the full joint."""
    p = truth(joint_space)
    for name, q in evidence.items():
        p = pred_conj(p, weaken(q, joint_space, net.position(name) + 1))
    return p


def crossover_infer(net: BayesNet, evidence: Mapping[str, Predicate],
                    targets: Iterable[str]) -> QueryResult:
    targets = _targets(net, targets)
    evidence = _bind(net, evidence)
    t0 = time.perf_counter()
    joint = compile_joint(net)
    pred = evidence_predicate(net, joint.domain, evidence)
    v = validity(joint, pred)
    if v == 0:
        raise ZeroValidity("evidence is inconsistent with the network (validity 0)")
    post = condition(joint, pred)
    keep = [net.position(t) + 1 for t in targets]
    if len(keep) == len(net.nodes):
        dist = post
    else:
        dist = marginal(post, keep)
    return QueryResult(dist, "crossover", v, {"crossover": time.perf_counter() - t0})


def transformer_infer(net: BayesNet, evidence: Mapping[str, Predicate],
                      targets: Iterable[str]) -> QueryResult:
    targets = _targets(net, targets)
    evidence = _bind(net, evidence)
    check(net)
    t0 = time.perf_counter()
    target_set = set(targets)
    index = {n: i for i, n in enumerate(net.names)}
    last_child = {n: max((index[c] for c in net.children(n)), default=-1) for n in net.names}

    frontier = {(): ONE}
    names: List[str] = []
    total_validity = ONE
    max_arity = 0
    for k, node in enumerate(net.nodes):
        pos = [names.index(p) for p in node.parents]
        keep_pos = [i for i, m in enumerate(names) if m in target_set or last_child[m] > k]
        keep_new = node.name in target_set or last_child[node.name] > k
        ev = None
        if node.name in evidence:
            q = evidence[node.name]
            ev = dict(zip(q.domain.elements, q.values))
        frontier = _extend(frontier, pos, net.cpt(node.name), keep_pos, keep_new, ev)
        names = [names[i] for i in keep_pos] + ([node.name] if keep_new else [])
        max_arity = max(max_arity, len(names))
        if ev is not None:
            mass = sum(frontier.values(), ZERO)
            if mass == 0:
                raise ZeroValidity(f"evidence on {node.name} has validity 0")
            total_validity *= mass
            frontier = {t: w / mass for t, w in frontier.items() if w}

    order = [names.index(t) for t in targets]
    final: dict = {}
    for t, w in frontier.items():
        key = tuple(t[i] for i in order)
        final[key] = final.get(key, ZERO) + w
    dist = _as_dist(net, targets, final)
    return QueryResult(dist, "transformer", total_validity,
                       {"transformer": time.perf_counter() - t0}, max_arity)


def infer(net: BayesNet, evidence: Mapping[str, Predicate], targets: Iterable[str],
          method: str = "both") -> QueryResult:
    if method == "crossover":
        return crossover_infer(net, evidence, targets)
    if method == "transformer":
        return transformer_infer(net, evidence, targets)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = crossover_infer(net, evidence, targets)
    b = transformer_infer(net, evidence, targets)
    if a.dist != b.dist or a.validity != b.validity:
        raise MethodMismatch(f"crossover {a.dist.exact()} != transformer {b.dist.exact()}")
    return QueryResult(a.dist, "both", a.validity, {**a.timings, **b.timings},
                       b.max_frontier_arity)


def mixture_query(net: BayesNet, node: str, mixture: Dist, probe, target: str) -> Fraction:
    """Weigh point-evidence answers by a *state* over ``node``.

    This treats soft evidence as a distribution and is kept for comparison
    with the predicate-based answer; the two generally differ.
    """
    if mixture.domain != net[node].domain:
        raise DomainMismatch(f"mixture is over {mixture.domain.name}, node {node} "
                             f"is over {net[node].domain.name}")
    total = ZERO
    for x, w in mixture.items():
        res = crossover_infer(net, {node: point_pred(net[node].domain, x)}, [target])
        total += w * res.dist[probe]
    return total


def to_dot(net: BayesNet) -> str:
    check(net)
    lines = [f'digraph "{net.name}" {{']
    for n in net.nodes:
        lines.append(f'  "{n.name}";')
    for n in net.nodes:
        for p in n.parents:
            lines.append(f'  "{p}" -> "{n.name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
