import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from chanprob import (
    ProductDomain,
    compile_joint,
    condition,
    crossover_infer,
    format_network,
    marginal,
    parse_network,
    point,
    point_pred,
    pred_conj,
    pred_product,
    pred_scale,
    product_state,
    pull,
    push,
    read_dist,
    transformer_infer,
    validity,
    write_dist,
    ZeroValidity,
)
from chanprob.laws import LAWS, run_law
from chanprob.randgen import rand_evidence, rand_network, rand_targets
from conftest import channels, dists, domains, predicates

seeds = st.integers(0, 2**32 - 1)


@given(st.data())
def test_dist_invariants(data):
    A = data.draw(domains("A"))
    B = data.draw(domains("B"))
    s = data.draw(dists(ProductDomain((A, B))))
    assert sum(w for _, w in s.items()) == 1
    assert all(w > 0 for _, w in s.items())
    m = marginal(s, [2])
    assert sum(w for _, w in m.items()) == 1


@given(st.data())
def test_product_marginals_recover_factors(data):
    A, B = data.draw(domains("A")), data.draw(domains("B"))
    s, t = data.draw(dists(A)), data.draw(dists(B))
    p = product_state(s, t)
    assert marginal(p, [1]) == s and marginal(p, [2]) == t


@settings(max_examples=200)
@given(st.data())
def test_transformation_duality(data):
    A, B = data.draw(domains("A", 5)), data.draw(domains("B", 5))
    w, c, q = data.draw(dists(A)), data.draw(channels(A, B)), data.draw(predicates(B))
    assert validity(push(c, w), q) == validity(w, pull(c, q))


@given(st.data(), st.fractions(0, 1))
def test_validity_is_bilinear(data, r):
    A, B = data.draw(domains("A", 5)), data.draw(domains("B", 5))
    w, p = data.draw(dists(A)), data.draw(predicates(A))
    t, q = data.draw(dists(B)), data.draw(predicates(B))
    assert validity(w, pred_scale(r, p)) == r * validity(w, p)
    assert validity(w, ~p) == 1 - validity(w, p)
    assert validity(product_state(w, t), pred_product(p, q)) == validity(w, p) * validity(t, q)


@given(st.data())
def test_conditioning_sequentially(data):
    A = data.draw(domains("A", 5))
    w, p, q = data.draw(dists(A)), data.draw(predicates(A)), data.draw(predicates(A))
    assume(validity(w, pred_conj(p, q)) != 0)
    assert condition(w, pred_conj(p, q)) == condition(condition(w, p), q)


@given(st.data())
def test_json_round_trip(data):
    A, B = data.draw(domains("A")), data.draw(domains("B"))
    s = data.draw(dists(ProductDomain((A, B))))
    text = write_dist(s)
    assert read_dist(text) == s
    assert write_dist(read_dist(text)) == text


@given(seeds)
def test_network_text_round_trip(seed):
    net = rand_network(random.Random(seed))
    again = parse_network(format_network(net))
    assert compile_joint(again) == compile_joint(net)


def _query(seed):
    rng = random.Random(seed)
    net = rand_network(rng)
    return net, rand_evidence(rng, net), rand_targets(rng, net), rng


def _both(net, ev, targets):
    try:
        return crossover_infer(net, ev, targets).dist, transformer_infer(net, ev, targets).dist
    except ZeroValidity:
        return None


@given(seeds)
def test_engines_agree(seed):
    net, ev, targets, _ = _query(seed)
    try:
        a = crossover_infer(net, ev, targets)
    except ZeroValidity:
        with pytest.raises(ZeroValidity):
            transformer_infer(net, ev, targets)
        return
    b = transformer_infer(net, ev, targets)
    assert a.dist == b.dist and a.validity == b.validity


@given(seeds)
def test_evidence_order_irrelevant(seed):
    net, ev, targets, rng = _query(seed)
    items = list(ev.items())
    rng.shuffle(items)
    assert _both(net, ev, targets) == _both(net, dict(items), targets)


@given(seeds)
def test_no_evidence_is_plain_marginal(seed):
    net, _, targets, _ = _query(seed)
    keep = [net.position(t) + 1 for t in targets]
    expected = marginal(compile_joint(net), keep)
    assert crossover_infer(net, {}, targets).dist == expected
    assert transformer_infer(net, {}, targets).dist == expected


@given(seeds)
def test_point_evidence_on_target(seed):
    net, _, _, rng = _query(seed)
    v = rng.choice(net.nodes)
    x = rng.choice(v.domain.elements)
    prior = transformer_infer(net, {}, [v.name]).dist
    assume(prior[x] != 0)
    ev = {v.name: point_pred(v.domain, x)}
    assert transformer_infer(net, ev, [v.name]).dist == point(v.domain, x)
    assert crossover_infer(net, ev, [v.name]).dist == point(v.domain, x)


@given(seeds, st.fractions(Fraction(1, 10), 1))
def test_scaling_evidence(seed, r):
    net, ev, targets, _ = _query(seed)
    scaled = {k: pred_scale(r, p) for k, p in ev.items()}
    assert _both(net, ev, targets) == _both(net, scaled, targets)


@pytest.mark.parametrize("name", sorted(LAWS))
def test_law_suite(name):
    rep = run_law(name, samples=100, seed=2024)
    assert rep.runs == 100
    assert rep.ok, rep.failures[:3]
