"""Text format for knowledge-structure models and queries (`.kmodel` files).

A file declares a vocabulary, a Boolean state law, per-agent observation
lists and a sequence of queries::

    -- comments run to the end of the line
    VARS p, q
    LAW (p -> q)
    OBS alice: p
    OBS bob: q
    VALID? (p -> q)
    WHERE? K bob ~p
    TRUE? {p q} K alice p

Formulas: ``Top``, ``Bot``, variables, ``~f``, ``(f & g)``, ``(f | g)``,
``(f -> g)``, ``K agent f``, ``Kw agent f`` (knows whether), ``[! f] g``
(public announcement) and ``[?! f] g`` (announce whether).  Binary
connectives always take parentheses.  Variables resolve to diagram levels in
declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .dd import And, Atom, DdManager, Not, Top, Vocabulary
from .epistemic import (
    Announce,
    InvalidSceneError,
    KnowledgeStructure,
    Knows,
    Scene,
    announce_whether,
    knows_whether,
)

KEYWORDS = {"VARS", "LAW", "OBS", "VALID?", "WHERE?", "TRUE?", "Top", "Bot", "K", "Kw"}


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"""
    (?P<comment>--[^\n]*)
  | (?P<ws>\s+)
  | (?P<word>VALID\?|WHERE\?|TRUE\?|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>\[\?!|\[!|->|[](){},:~&|])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup not in ("ws", "comment"):
            tokens.append(Token(lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    return tokens


@dataclass
class Query:
    kind: str  # "VALID?", "WHERE?" or "TRUE?"
    formula: object
    text: str
    state: Optional[frozenset[int]] = None


@dataclass
class ModelFile:
    vocab: Vocabulary
    law: object
    obs: dict[str, tuple[int, ...]]
    queries: list[Query] = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, message: str):
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("", 1, 1)
            raise ParseError(
                f"{message}, got end of input", last.line, last.column + len(last.text)
            )
        raise ParseError(f"{message}, got {tok.text!r}", tok.line, tok.column)

    def _next(self, expected: Optional[str] = None) -> Token:
        tok = self._peek()
        if tok is None or (expected is not None and tok.text != expected):
            self._error(f"expected {expected!r}" if expected else "expected a token")
        self.pos += 1
        return tok

    def _ident(self, what: str) -> Token:
        tok = self._peek()
        if tok is None or not tok.text[0].isalpha() and tok.text[0] != "_":
            self._error(f"expected {what}")
        if tok.text in KEYWORDS:
            self._error(f"expected {what}, {tok.text!r} is reserved")
        self.pos += 1
        return tok

    def _ident_list(self, what: str) -> list[Token]:
        items = [self._ident(what)]
        while self._peek() is not None and self._peek().text == ",":
            self._next(",")
            items.append(self._ident(what))
        return items

    # -- grammar -------------------------------------------------------------

    def model(self) -> ModelFile:
        self._next("VARS")
        names = self._ident_list("a variable name")
        seen: dict[str, Token] = {}
        for tok in names:
            if tok.text in seen:
                raise ParseError(
                    f"variable {tok.text!r} declared twice", tok.line, tok.column
                )
            seen[tok.text] = tok
        vocab = Vocabulary(tok.text for tok in names)
        self._next("LAW")
        law = self.formula(vocab, agents=None)
        _require_boolean(law)
        obs: dict[str, tuple[int, ...]] = {}
        while self._peek() is not None and self._peek().text == "OBS":
            self._next("OBS")
            agent = self._ident("an agent name")
            if agent.text in obs:
                raise ParseError(
                    f"agent {agent.text!r} declared twice", agent.line, agent.column
                )
            self._next(":")
            vars_ = self._ident_list("a variable name")
            obs[agent.text] = tuple(
                self._resolve_var(vocab, tok) for tok in vars_
            )
        queries: list[Query] = []
        while self._peek() is not None:
            queries.append(self.query(vocab, obs))
        return ModelFile(vocab=vocab, law=law, obs=obs, queries=queries)

    def query(self, vocab: Vocabulary, obs) -> Query:
        tok = self._peek()
        if tok.text in ("VALID?", "WHERE?"):
            self._next()
            start = self.pos
            f = self.formula(vocab, obs)
            return Query(tok.text, f, self._span(start))
        if tok.text == "TRUE?":
            self._next()
            self._next("{")
            members = []
            while self._peek() is not None and self._peek().text != "}":
                if self._peek().text == ",":
                    self._next(",")
                    continue
                members.append(self._ident("a variable name"))
            self._next("}")
            state = frozenset(self._resolve_var(vocab, t) for t in members)
            start = self.pos
            f = self.formula(vocab, obs)
            return Query("TRUE?", f, self._span(start), state=state)
        self._error("expected VALID?, WHERE? or TRUE?")

    def _span(self, start: int) -> str:
        return " ".join(t.text for t in self.tokens[start : self.pos])

    def _resolve_var(self, vocab: Vocabulary, tok: Token) -> int:
        if tok.text not in vocab:
            raise ParseError(
                f"undeclared identifier {tok.text!r}", tok.line, tok.column
            )
        return vocab.index(tok.text)

    def _agent(self, obs, tok: Token) -> str:
        if obs is not None and tok.text not in obs:
            raise ParseError(
                f"undeclared agent {tok.text!r}", tok.line, tok.column
            )
        return tok.text

    def formula(self, vocab: Vocabulary, agents) -> object:
        tok = self._peek()
        if tok is None:
            self._error("expected a formula")
        if tok.text == "Top":
            self._next()
            return Top()
        if tok.text == "Bot":
            self._next()
            return Not(Top())
        if tok.text == "~":
            self._next()
            return Not(self.formula(vocab, agents))
        if tok.text == "(":
            self._next()
            left = self.formula(vocab, agents)
            op = self._peek()
            if op is None or op.text not in ("&", "|", "->"):
                self._error("expected '&', '|' or '->'")
            self._next()
            right = self.formula(vocab, agents)
            self._next(")")
            if op.text == "&":
                return And(left, right)
            if op.text == "|":
                return Not(And(Not(left), Not(right)))
            return Not(And(left, Not(right)))
        if tok.text == "K":
            self._next()
            agent = self._agent(agents, self._ident("an agent name"))
            return Knows(agent, self.formula(vocab, agents))
        if tok.text == "Kw":
            self._next()
            agent = self._agent(agents, self._ident("an agent name"))
            return knows_whether(agent, self.formula(vocab, agents))
        if tok.text == "[!":
            self._next()
            psi = self.formula(vocab, agents)
            self._next("]")
            return Announce(psi, self.formula(vocab, agents))
        if tok.text == "[?!":
            self._next()
            psi = self.formula(vocab, agents)
            self._next("]")
            return announce_whether(psi, self.formula(vocab, agents))
        if tok.text[0].isalpha() or tok.text[0] == "_":
            if tok.text in KEYWORDS:
                self._error("expected a formula")
            self._next()
            return Atom(self._resolve_var(vocab, tok))
        self._error("expected a formula")


def _require_boolean(formula) -> None:
    if isinstance(formula, (Top, Atom)):
        return
    if isinstance(formula, Not):
        _require_boolean(formula.sub)
        return
    if isinstance(formula, And):
        _require_boolean(formula.left)
        _require_boolean(formula.right)
        return
    raise ParseError("the state law must be a Boolean formula", 1, 1)


def parse_model(text: str) -> ModelFile:
    parser = _Parser(text)
    return parser.model()


def parse_formula(text: str, vocab: Vocabulary, agents=None) -> object:
    """Parse a single formula against a vocabulary and optional agent set."""
    parser = _Parser(text)
    f = parser.formula(vocab, agents)
    if parser._peek() is not None:
        parser._error("unexpected trailing input")
    return f


def format_formula(formula, vocab: Vocabulary) -> str:
    """Render a formula in the file syntax; inverse of parsing up to spaces."""
    if isinstance(formula, Top):
        return "Top"
    if isinstance(formula, Atom):
        return vocab.names[formula.var]
    if isinstance(formula, Not):
        if isinstance(formula.sub, Top):
            return "Bot"
        inner = formula.sub
        # re-sugar the Or / Implies encodings for readability
        if isinstance(inner, And):
            left, right = inner.left, inner.right
            if isinstance(left, Not) and isinstance(right, Not):
                return (
                    f"({format_formula(left.sub, vocab)} | "
                    f"{format_formula(right.sub, vocab)})"
                )
            if isinstance(right, Not):
                return (
                    f"({format_formula(left, vocab)} -> "
                    f"{format_formula(right.sub, vocab)})"
                )
        return f"~{format_formula(formula.sub, vocab)}"
    if isinstance(formula, And):
        return (
            f"({format_formula(formula.left, vocab)} & "
            f"{format_formula(formula.right, vocab)})"
        )
    if isinstance(formula, Knows):
        return f"K {formula.agent} {format_formula(formula.sub, vocab)}"
    if isinstance(formula, Announce):
        return (
            f"[! {format_formula(formula.announced, vocab)}] "
            f"{format_formula(formula.sub, vocab)}"
        )
    raise TypeError(type(formula).__name__)


def format_state(state: frozenset[int], vocab: Vocabulary) -> str:
    return "{" + ",".join(n for i, n in enumerate(vocab.names) if i in state) + "}"


@dataclass
class QueryResult:
    kind: str
    text: str
    truth: Optional[bool] = None
    states: Optional[list[frozenset[int]]] = None


@dataclass
class Report:
    results: list[QueryResult]
    lines: list[str]

    def render(self) -> str:
        return "\n".join(self.lines)


def check_file(
    mf: ModelFile,
    rule: str = "BDD",
    node_cap: Optional[int] = None,
) -> Report:
    """Evaluate every query of a model file under one diagram variant."""
    from .bench import make_manager

    manager = make_manager(rule, mf.vocab, node_cap=node_cap)
    structure = KnowledgeStructure(
        manager, manager.from_formula(mf.law), mf.obs
    )
    results: list[QueryResult] = []
    lines: list[str] = []
    for q in mf.queries:
        if q.kind == "VALID?":
            holds = (
                manager.apply(
                    "and", structure.theta, manager.negate(structure.translate(q.formula))
                )
                == manager.zero
            )
            results.append(QueryResult(q.kind, q.text, truth=holds))
            lines.append(f"VALID? {q.text}: {'true' if holds else 'false'}")
        elif q.kind == "WHERE?":
            sat = manager.apply(
                "and", structure.theta, structure.translate(q.formula)
            )
            found = manager.states(sat)
            results.append(QueryResult(q.kind, q.text, states=found))
            shown = " ".join(format_state(s, mf.vocab) for s in found) or "none"
            lines.append(f"WHERE? {q.text}: {shown}")
        else:
            scene = Scene(structure, q.state)
            truth = bool(scene.eval(q.formula))
            results.append(QueryResult(q.kind, q.text, truth=truth))
            lines.append(
                f"TRUE? {format_state(q.state, mf.vocab)} {q.text}: "
                f"{'true' if truth else 'false'}"
            )
    return Report(results=results, lines=lines)
