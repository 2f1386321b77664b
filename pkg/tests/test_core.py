from fractions import Fraction

import pytest

from chanprob import (
    Domain,
    DomainMismatch,
    EmptyKeepSet,
    IndexOutOfRange,
    OutOfRange,
    ProductDomain,
    SumNotOne,
    UNIT,
    UnknownElement,
    ZeroValidity,
    condition,
    convex_sum,
    dist_new,
    format_rat,
    indicator,
    is_sharp,
    marginal,
    parse_rat,
    point,
    point_pred,
    pred_conj,
    pred_ortho,
    pred_product,
    pred_scale,
    predicate,
    product_state,
    truth,
    uniform,
    validity,
    weaken,
)

ABC = Domain("ABC", ("a", "b", "c"))
AB = Domain("AB", ("a", "b"))
N3 = Domain("N", ("1", "2", "3"))


def test_dist_new_accepts_exact_weights():
    d = dist_new(ABC, {"a": "1/3", "b": "1/2", "c": "1/6"})
    assert d["a"] == Fraction(1, 3)
    assert d.support() == ["a", "b", "c"]


def test_dist_new_drops_zero_entries():
    d = dist_new(AB, [("a", 1), ("b", 0)])
    assert d == point(AB, "a")
    assert len(d) == 1
    assert d["b"] == 0


@pytest.mark.parametrize("entries, exc", [
    ({"a": "1/2", "b": "1/3"}, SumNotOne),
    ({"a": "3/2", "b": "-1/2"}, OutOfRange),
    ({"a": 1, "z": 0}, UnknownElement),
])
def test_dist_new_rejects(entries, exc):
    with pytest.raises(exc):
        dist_new(AB, entries)


def test_dist_new_rejects_duplicates():
    with pytest.raises(ValueError):
        dist_new(AB, [("a", "1/2"), ("a", "1/2")])


def test_unknown_lookup_raises():
    with pytest.raises(UnknownElement):
        uniform(AB)["z"]


def test_uniform_and_point():
    pips = Domain("pips", tuple("123456"))
    assert all(w == Fraction(1, 6) for _, w in uniform(pips).items())
    assert uniform(UNIT).items() == [((), 1)]
    with pytest.raises(UnknownElement):
        point(AB, "z")


def test_product_state_matches_worked_example():
    s1 = dist_new(AB, {"a": "1/3", "b": "2/3"})
    s2 = dist_new(N3, {"1": "1/8", "2": "5/8", "3": "1/4"})
    prod = product_state(s1, s2)
    expected = {("a", "1"): "1/24", ("a", "2"): "5/24", ("a", "3"): "1/12",
                ("b", "1"): "1/12", ("b", "2"): "5/12", ("b", "3"): "1/6"}
    assert prod == dist_new(ProductDomain((AB, N3)), expected)
    assert marginal(prod, [1]) == s1
    assert marginal(prod, [2]) == s2


def test_product_flattens_nested_products():
    s = product_state(product_state(uniform(AB), uniform(N3)), uniform(ABC))
    assert len(s.domain.factors) == 3
    assert marginal(s, [1, 3]).domain == ProductDomain((AB, ABC))


def test_marginal_errors():
    s = product_state(uniform(AB), uniform(N3))
    with pytest.raises(EmptyKeepSet):
        marginal(s, [])
    with pytest.raises(IndexOutOfRange):
        marginal(s, [3])


def test_convex_sum():
    m = convex_sum([("1/4", point(AB, "a")), ("3/4", uniform(AB))])
    assert m["a"] == Fraction(5, 8)
    with pytest.raises(SumNotOne):
        convex_sum([("1/2", point(AB, "a"))])


def test_validity_and_condition():
    w = dist_new(ABC, {"a": "1/3", "b": "1/2", "c": "1/6"})
    p = predicate(ABC, {"a": "1/2", "c": 1})
    assert validity(w, p) == Fraction(1, 3)
    post = condition(w, p)
    assert post == dist_new(ABC, {"a": "1/2", "c": "1/2"})
    with pytest.raises(ZeroValidity):
        condition(w, predicate(ABC, {}))


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        validity(uniform(AB), truth(ABC))


def test_predicate_connectives():
    p = predicate(AB, ["1/4", 1])
    q = predicate(AB, ["1/2", "1/2"])
    assert pred_conj(p, q).values == (Fraction(1, 8), Fraction(1, 2))
    assert (~p).values == (Fraction(3, 4), 0)
    assert pred_ortho(pred_ortho(p)) == p
    assert pred_scale("1/2", p).values == (Fraction(1, 8), Fraction(1, 2))
    assert pred_product(p, q)(("b", "a")) == Fraction(1, 2)
    with pytest.raises(OutOfRange):
        predicate(AB, [2, 0])
    with pytest.raises(UnknownElement):
        predicate(AB, {"z": 1})


def test_sharpness():
    assert is_sharp(indicator(ABC, {"a", "c"}))
    assert is_sharp(point_pred(ABC, "b"))
    assert not is_sharp(predicate(AB, ["1/2", 1]))
    p = indicator(ABC, {"a"})
    assert p & p == p


def test_weaken_puts_truth_elsewhere():
    space = ProductDomain((AB, N3))
    q = point_pred(N3, "2")
    w = weaken(q, space, 2)
    assert w(("a", "2")) == 1 and w(("b", "1")) == 0
    with pytest.raises(DomainMismatch):
        weaken(q, space, 1)


@pytest.mark.parametrize("text, expected", [
    ("0.000001", Fraction(1, 1000000)),
    ("1/3", Fraction(1, 3)),
    (" 0.25 ", Fraction(1, 4)),
])
def test_parse_rat(text, expected):
    assert parse_rat(text) == expected


def test_parse_rat_float_uses_shortest_repr():
    assert parse_rat(0.1) == Fraction(1, 10)
    with pytest.raises(TypeError):
        parse_rat(True)


@pytest.mark.parametrize("r, digits, out", [
    (Fraction(7776, 15625), 4, "0.4977"),
    (Fraction(7776, 15625), 3, "0.498"),
    (Fraction(1, 8), 2, "0.12"),
    (Fraction(3, 8), 2, "0.38"),
    (Fraction(1), 4, "1.0000"),
])
def test_format_rat_rounds_half_even(r, digits, out):
    assert format_rat(r, digits) == out


def test_ket_rendering():
    d = dist_new(AB, {"a": "1/3", "b": "2/3"})
    assert d.ket(2) == "0.33|a> + 0.67|b>"
    assert d.exact() == "1/3|a> + 2/3|b>"
