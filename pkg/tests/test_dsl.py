from fractions import Fraction

import pytest

from chanprob import (
    Evidence,
    OutOfRange,
    ParseError,
    UnknownElement,
    bind_evidence,
    format_network,
    parse_evidence,
    parse_network,
    validate,
)
from chanprob.dsl import parse_source, tokenize

HEAD = "domain D { d0 d1 }\ndomain I { i0 i1 }\n"


def diag_kinds(text):
    with pytest.raises(ParseError) as err:
        parse_network(text)
    return [d.kind for d in err.value.diagnostics], err.value.diagnostics


def test_root_node():
    net = parse_network(HEAD + "node X : D { 0.5: d0, 0.5: d1 }\n")
    assert net.names == ["X"]
    assert net["X"].table == {(): {"d0": Fraction(1, 2), "d1": Fraction(1, 2)}}


def test_exact_decimals_and_fractions():
    net = parse_network(HEAD + "node X : D { 0.000001: d0, 999999/1000000: d1 }")
    assert net["X"].table[()]["d0"] == Fraction(1, 1000000)
    assert validate(net) == []


def test_zero_entries_may_be_omitted():
    net = parse_network(HEAD + "node X : D { 1: d0 }")
    assert validate(net) == []


def test_student_file_round_trips(student):
    again = parse_network(format_network(student))
    assert again.names == student.names
    for n in student.names:
        assert again.cpt(n) == student.cpt(n)


def test_missing_row_names_the_tuple():
    text = HEAD + """
node X : D { 0.6: d0, 0.4: d1 }
node Y : I { 0.7: i0, 0.3: i1 }
node Z : D <- X, Y {
  (d0, i0) -> 1: d0
  (d0, i1) -> 1: d0
  (d1, i0) -> 1: d1
}
"""
    kinds, diags = diag_kinds(text)
    assert kinds == ["MissingRow"]
    assert "(d1, i1)" in diags[0].message
    assert diags[0].span.line == 6


def test_all_row_errors_reported_in_one_pass():
    text = HEAD + """node X : D { 1: d0 }
node Z : D <- X {
  (d0) -> 1: d0
  (d0) -> 1: d1
  (dx) -> 1: d1
  (d1) -> 1: dz
}
"""
    kinds, diags = diag_kinds(text)
    assert kinds == ["DuplicateRow", "UnknownLabel", "UnknownLabel"]
    assert [d.span.line for d in diags] == [6, 7, 8]


def test_syntax_error_has_span_and_recovers():
    text = HEAD + "node X : D { 0.5 d0 }\nnode Y : Q { 1: q }\n"
    kinds, diags = diag_kinds(text)
    assert kinds == ["SyntaxError", "UnknownDomain"]
    assert (diags[0].span.line, diags[0].span.column) == (3, 18)


def test_unknown_parent_left_to_validation():
    net = parse_network(HEAD + "node Z : D <- W { (d0) -> 1: d0\n (d1) -> 1: d1 }")
    assert [e.kind for e in validate(net)] == ["UnknownParent"]


def test_cycle_left_to_validation():
    text = HEAD + """node A : D <- B { (d0) -> 1: d0
 (d1) -> 1: d1 }
node B : D <- A { (d0) -> 1: d0
 (d1) -> 1: d1 }"""
    assert {e.kind for e in validate(parse_network(text))} == {"Cycle"}


def test_duplicate_domain_and_label():
    kinds, _ = diag_kinds("domain D { a b }\ndomain D { c }\ndomain E { x x }\n")
    assert kinds == ["DuplicateDomain", "DuplicateLabel"]


def test_comments_and_determinism():
    text = "# header\n" + HEAD + "node X : D { 1: d0 } # trailing\n"
    assert parse_source(text) == parse_source(text)
    assert [t.kind for t in tokenize("a <- b")][:3] == ["word", "op", "word"]


@pytest.mark.parametrize("text, node, values, sharp", [
    ("Grade=g3", "Grade", {"g3": 1}, True),
    ("Alarm~{a:0.7, na:0.3}", "Alarm", {"a": Fraction(7, 10), "na": Fraction(3, 10)}, False),
    ("Alarm~{a:1, na:1}", "Alarm", {"a": 1, "na": 1}, False),
    ("X~{x: 1/3}", "X", {"x": Fraction(1, 3)}, False),
])
def test_parse_evidence(text, node, values, sharp):
    ev = parse_evidence(text)
    assert ev == Evidence(node, values, sharp)


@pytest.mark.parametrize("text, exc", [
    ("Alarm~{a:1.5}", OutOfRange),
    ("Alarm", ParseError),
    ("Alarm=a extra", ParseError),
    ("Alarm~{a:0.5, a:0.5}", ParseError),
])
def test_parse_evidence_errors(text, exc):
    with pytest.raises(exc):
        parse_evidence(text)


def test_bind_evidence(burglar):
    preds = bind_evidence(burglar, ["Alarm~{a:0.7, na:0.3}", "Alarm~{a:1/2, na:1}"])
    assert preds["Alarm"].values == (Fraction(7, 20), Fraction(3, 10))
    with pytest.raises(UnknownElement):
        bind_evidence(burglar, ["Alarm=zz"])
