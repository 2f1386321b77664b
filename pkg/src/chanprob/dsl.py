"""The ``.bn`` network format and CLI evidence expressions.

Example::

    # Difficulty and Intelligence feed Grade
    domain D { d0 d1 }
    domain I { i0 i1 }
    domain G { g1 g2 g3 }
    node Difficulty : D { 0.6: d0, 0.4: d1 }
    node Intelligence : I { 0.7: i0, 0.3: i1 }
    node Grade : G <- Difficulty, Intelligence {
      (d0, i0) -> 0.3: g1, 0.4: g2, 0.3: g3
      (d0, i1) -> 0.9: g1, 0.08: g2, 0.02: g3
      (d1, i0) -> 0.05: g1, 0.25: g2, 0.7: g3
      (d1, i1) -> 0.5: g1, 0.3: g2, 0.2: g3
    }

Numbers are decimals or ``a/b`` fractions and are read exactly. Rows may
leave out zero-probability labels, but every parent tuple needs exactly one
row. Row sums are checked later by :func:`chanprob.network.validate`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .core import Predicate, predicate, pred_conj
from .domain import Domain
from .errors import OutOfRange, ProbError, UnknownElement
from .network import BayesNet, Node


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    span: SourceSpan

    def __str__(self):
        return f"{self.span}: {self.kind}: {self.message}"


class ParseError(ProbError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


# -- tokens -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<op><-|->|[{}(),:=~/])
  | (?P<word>[A-Za-z0-9_][A-Za-z0-9_.']*)
  | (?P<bad>.)
""", re.VERBOSE)

_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")
_DECIMAL = re.compile(r"(\d+(\.\d*)?|\.\d+)\Z")
_INT = re.compile(r"\d+\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "word", "eof", "bad"
    text: str
    span: SourceSpan
    first_on_line: bool = False


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, col = 1, 1
    fresh = True
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col, fresh = line + 1, 1, True
            continue
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, s, SourceSpan(line, col, len(s)), fresh))
            fresh = False
        col += len(s)
    tokens.append(Token("eof", "", SourceSpan(line, col, 0), True))
    return tokens


# -- syntax tree ----------------------------------------------------------------

@dataclass
class DomainDecl:
    name: str
    elements: List[str]
    span: SourceSpan


@dataclass
class RowDecl:
    key: Optional[Tuple[str, ...]]
    entries: List[Tuple[Fraction, str, SourceSpan]]
    span: SourceSpan


@dataclass
class NodeDecl:
    name: str
    domain: str
    parents: List[str]
    rows: List[RowDecl]
    span: SourceSpan


@dataclass
class NetworkSource:
    domains: List[DomainDecl] = field(default_factory=list)
    nodes: List[NodeDecl] = field(default_factory=list)


class _Syntax(Exception):
    def __init__(self, token: Token, message: str):
        self.diag = Diagnostic("SyntaxError", message, token.span)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Syntax(self.tok, f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def name(self, what: str = "name") -> Token:
        t = self.tok
        if t.kind != "word" or not _NAME.match(t.text):
            raise _Syntax(t, f"expected {what}, found {t.text or 'end of input'!r}")
        return self.advance()

    def number(self) -> Fraction:
        t = self.tok
        if t.kind != "word" or not _DECIMAL.match(t.text):
            raise _Syntax(t, f"expected a number, found {t.text or 'end of input'!r}")
        self.advance()
        if self.at("/"):
            if not _INT.match(t.text):
                raise _Syntax(t, "fraction numerator must be an integer")
            self.advance()
            d = self.tok
            if d.kind != "word" or not _INT.match(d.text):
                raise _Syntax(d, "fraction denominator must be an integer")
            self.advance()
            if int(d.text) == 0:
                raise _Syntax(d, "zero denominator")
            return Fraction(int(t.text), int(d.text))
        return Fraction(t.text)

    def sync(self) -> None:
        """Skip to the next top-level declaration."""
        self.advance()
        while self.tok.kind != "eof":
            if self.tok.first_on_line and self.tok.text in ("domain", "node"):
                return
            self.advance()

    # grammar

    def file(self, diags: List[Diagnostic]) -> NetworkSource:
        src = NetworkSource()
        while self.tok.kind != "eof":
            start = self.i
            try:
                if self.tok.kind == "word" and self.tok.text == "domain":
                    src.domains.append(self.domain_decl())
                elif self.tok.kind == "word" and self.tok.text == "node":
                    src.nodes.append(self.node_decl())
                else:
                    raise _Syntax(self.tok, f"expected 'domain' or 'node', found {self.tok.text!r}")
            except _Syntax as e:
                diags.append(e.diag)
                self.i = start
                self.sync()
        return src

    def domain_decl(self) -> DomainDecl:
        kw = self.advance()
        name = self.name("domain name").text
        self.expect("{")
        elems = [self.name("element label").text]
        while not self.at("}"):
            elems.append(self.name("element label or '}'").text)
        self.expect("}")
        return DomainDecl(name, elems, kw.span)

    def node_decl(self) -> NodeDecl:
        kw = self.advance()
        name = self.name("node name").text
        self.expect(":")
        dom = self.name("domain name").text
        parents = []
        if self.at("<-"):
            self.advance()
            parents.append(self.name("parent name").text)
            while self.at(","):
                self.advance()
                parents.append(self.name("parent name").text)
        self.expect("{")
        rows = [self.row()]
        while not self.at("}"):
            rows.append(self.row())
        self.expect("}")
        return NodeDecl(name, dom, parents, rows, kw.span)

    def row(self) -> RowDecl:
        start = self.tok.span
        key = None
        if self.at("("):
            self.advance()
            key = [self.name("parent label").text]
            while self.at(","):
                self.advance()
                key.append(self.name("parent label").text)
            self.expect(")")
            self.expect("->")
            key = tuple(key)
        entries = [self.entry()]
        while self.at(","):
            self.advance()
            entries.append(self.entry())
        return RowDecl(key, entries, start)

    def entry(self) -> Tuple[Fraction, str, SourceSpan]:
        p = self.number()
        self.expect(":")
        t = self.name("element label")
        return p, t.text, t.span


def parse_source(text: str) -> Tuple[NetworkSource, List[Diagnostic]]:
    diags: List[Diagnostic] = []
    src = _Parser(text).file(diags)
    return src, diags


def parse_network(text: str, name: str = "bn") -> BayesNet:
    """Parse ``.bn`` text into a network; raise ``ParseError`` listing every problem."""
    src, diags = parse_source(text)
    domains: Dict[str, Domain] = {}
    for d in src.domains:
        if d.name in domains:
            diags.append(Diagnostic("DuplicateDomain", f"domain {d.name} declared twice", d.span))
            continue
        if len(set(d.elements)) != len(d.elements):
            diags.append(Diagnostic("DuplicateLabel", f"domain {d.name} repeats a label", d.span))
            continue
        domains[d.name] = Domain(d.name, tuple(d.elements))

    node_domains: Dict[str, Domain] = {}
    for nd in src.nodes:
        if nd.domain not in domains:
            diags.append(Diagnostic("UnknownDomain", f"node {nd.name}: no domain {nd.domain!r}",
                                    nd.span))
        elif nd.name not in node_domains:
            node_domains[nd.name] = domains[nd.domain]

    nodes = []
    for nd in src.nodes:
        dom = domains.get(nd.domain)
        if dom is None:
            continue
        table = _node_table(nd, dom, node_domains, diags)
        nodes.append(Node(nd.name, dom, tuple(nd.parents), table))
    if diags:
        diags.sort(key=lambda d: (d.span.line, d.span.column))
        raise ParseError(diags)
    return BayesNet(nodes, name)


def _node_table(nd: NodeDecl, dom: Domain, node_domains: Mapping[str, Domain],
                diags: List[Diagnostic]) -> dict:
    pdoms = [node_domains.get(p) for p in nd.parents]
    resolvable = all(d is not None for d in pdoms)
    table: dict = {}
    for row in nd.rows:
        key = row.key if row.key is not None else ()
        if not nd.parents and row.key is not None:
            diags.append(Diagnostic("BadRow", f"root node {nd.name} takes a single row "
                                    "without a parent tuple", row.span))
            continue
        if nd.parents and row.key is None:
            diags.append(Diagnostic("BadRow", f"node {nd.name}: row needs a parent tuple",
                                    row.span))
            continue
        if len(key) != len(nd.parents):
            diags.append(Diagnostic("BadRow", f"node {nd.name}: tuple {_tup(key)} has "
                                    f"{len(key)} labels, expected {len(nd.parents)}", row.span))
            continue
        if resolvable:
            bad = [f"{lab!r} (not in {d.name})" for lab, d in zip(key, pdoms) if lab not in d]
            if bad:
                diags.append(Diagnostic("UnknownLabel", f"node {nd.name}: parent label "
                                        + ", ".join(bad), row.span))
                continue
        if key in table:
            diags.append(Diagnostic("DuplicateRow", f"node {nd.name}: duplicate row for "
                                    f"{_tup(key)}", row.span))
            continue
        entries = {}
        for p, lab, span in row.entries:
            if lab not in dom:
                diags.append(Diagnostic("UnknownLabel", f"node {nd.name}: {lab!r} is not in "
                                        f"domain {dom.name}", span))
            elif lab in entries:
                diags.append(Diagnostic("DuplicateLabel", f"node {nd.name}: {lab!r} listed "
                                        "twice in one row", span))
            else:
                entries[lab] = p
        table[key] = entries
    if resolvable:
        expected = [()]
        for d in pdoms:
            expected = [t + (x,) for t in expected for x in d.elements]
        for t in expected:
            if t not in table and not _row_failed(nd, t):
                diags.append(Diagnostic("MissingRow", f"node {nd.name}: no row for {_tup(t)}",
                                        nd.span))
    return table


def _row_failed(nd: NodeDecl, key: tuple) -> bool:
    # A tuple that was present but rejected above is already reported.
    return any(r.key == key for r in nd.rows)


def _tup(t: tuple) -> str:
    return "(" + ", ".join(t) + ")"


def format_network(net: BayesNet) -> str:
    """Render a network back to ``.bn`` text (exact fractions)."""
    lines = []
    seen = set()
    for n in net.nodes:
        if n.domain.name not in seen:
            seen.add(n.domain.name)
            lines.append(f"domain {n.domain.name} {{ {' '.join(map(str, n.domain.elements))} }}")
    for n in net.nodes:
        head = f"node {n.name} : {n.domain.name}"
        if n.parents:
            head += " <- " + ", ".join(n.parents)
        lines.append(head + " {")
        for key, row in n.table.items():
            body = ", ".join(f"{Fraction(v)}: {lab}" for lab, v in row.items())
            lines.append(f"  ({', '.join(map(str, key))}) -> {body}" if key else f"  {body}")
        lines.append("}")
    return "\n".join(lines) + "\n"


# -- evidence ---------------------------------------------------------------------

@dataclass(frozen=True)
class Evidence:
    """Unbound evidence: ``values`` maps labels to [0, 1]; unlisted labels are 0."""

    node: str
    values: Mapping[str, Fraction]
    sharp: bool

    def to_predicate(self, domain: Domain) -> Predicate:
        for lab in self.values:
            if lab not in domain:
                raise UnknownElement(f"evidence on {self.node}: {lab!r} is not in {domain.name}")
        return predicate(domain, dict(self.values))


def parse_evidence(text: str) -> Evidence:
    """Parse ``Node=label`` (point evidence) or ``Node~{a:0.7, b:0.3}`` (fuzzy)."""
    p = _Parser(text)
    try:
        node = p.name("node name").text
        if p.at("="):
            p.advance()
            lab = p.name("element label").text
            ev = Evidence(node, {lab: Fraction(1)}, True)
        elif p.at("~"):
            p.advance()
            p.expect("{")
            values: Dict[str, Fraction] = {}
            while True:
                lab_tok = p.name("element label")
                p.expect(":")
                v = p.number()
                if v > 1:
                    raise OutOfRange(f"evidence value {v} for {lab_tok.text} is above 1")
                if lab_tok.text in values:
                    raise _Syntax(lab_tok, f"label {lab_tok.text!r} given twice")
                values[lab_tok.text] = v
                if p.at(","):
                    p.advance()
                    continue
                break
            p.expect("}")
            ev = Evidence(node, values, False)
        else:
            raise _Syntax(p.tok, "expected '=' or '~' after node name")
        if p.tok.kind != "eof":
            raise _Syntax(p.tok, f"unexpected {p.tok.text!r} after evidence")
        return ev
    except _Syntax as e:
        raise ParseError([e.diag]) from None


def bind_evidence(net: BayesNet, items) -> Dict[str, Predicate]:
    """Turn parsed evidence into predicates; repeated nodes are conjoined."""
    out: Dict[str, Predicate] = {}
    for ev in items:
        if isinstance(ev, str):
            ev = parse_evidence(ev)
        q = ev.to_predicate(net[ev.node].domain)
        out[ev.node] = pred_conj(out[ev.node], q) if ev.node in out else q
    return out
