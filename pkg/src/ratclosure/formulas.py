"""Propositional syntax: formula ASTs, a parser, a pretty-printer, and worlds.

The concrete grammar (EBNF, whitespace insignificant, ``#`` starts a line
comment)::

    formula := iff
    iff     := imp ("<->" imp)*          # left-associative
    imp     := or ("->" imp)?            # right-associative
    or      := and ("|" and)*            # left-associative
    and     := not ("&" not)*            # left-associative
    not     := "!" not | atom
    atom    := ident | "true" | "false" | "(" formula ")"

Identifiers match ``[a-zA-Z_][a-zA-Z0-9_]*`` and must not be the keywords
``true``/``false``.  Conditional assertions (``<formula> |~ <formula>``) share
this lexer; the ``|~`` token is only legal at the top level of an assertion.

Worlds enumerate deterministically: the first signature variable is the most
significant position and ``true`` sorts before ``false``, so enumeration
starts at the all-true world.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Syntax error carrying the byte offset and the expected-token set."""

    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        super().__init__(f"{message} at offset {offset} (expected {sorted(expected)})")
        self.offset = offset
        self.expected = expected


class UnknownVariableError(KeyError):
    """A formula was evaluated against a world that lacks one of its variables."""


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Formula:
    """Base class of all formula nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = TrueConst()
FALSE = FalseConst()


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-fold conjunction; the empty conjunction is ``true``."""
    result: Formula | None = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TRUE if result is None else result


def disjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-fold disjunction; the empty disjunction is ``false``."""
    result: Formula | None = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return FALSE if result is None else result


def free_vars(formula: Formula) -> frozenset[str]:
    """The exact set of variable names occurring in ``formula``."""
    return frozenset(variables_in_order(formula))


def variables_in_order(*formulas: Formula) -> list[str]:
    """Variable names in first-occurrence order across the given formulas."""
    seen: dict[str, None] = {}
    stack = list(reversed(formulas))
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node.name, None)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or, Implies, Iff)):
            stack.append(node.right)
            stack.append(node.left)
    return list(seen)


# ---------------------------------------------------------------------------
# Signatures and worlds
# ---------------------------------------------------------------------------

_IDENT_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")
_KEYWORDS = ("true", "false")


@dataclass(frozen=True)
class Signature:
    """An ordered, duplicate-free list of variable names.

    The order is stable and determines world enumeration order, so two
    signatures with the same names in different orders are distinct values.
    """

    variables: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set()
        for name in self.variables:
            if not _IDENT_RE.match(name) or name in _KEYWORDS:
                raise ValueError(f"invalid variable name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name: {name!r}")
            seen.add(name)

    def __len__(self) -> int:
        return len(self.variables)

    def __contains__(self, name: str) -> bool:
        return name in self.variables

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def extended(self, names: Iterable[str]) -> "Signature":
        """A signature with any unseen names appended, preserving order."""
        extra: dict[str, None] = {}
        for n in names:
            if n not in self.variables:
                extra.setdefault(n, None)
        if not extra:
            return self
        return Signature(self.variables + tuple(extra))

    def world_count(self) -> int:
        return 1 << len(self.variables)

    def world_at(self, position: int) -> "World":
        """The world at ``position`` in enumeration order.

        Position 0 is the all-true world; variable ``j`` is true iff bit
        ``len - 1 - j`` of the position is clear, so the first variable is the
        most significant and true sorts before false.
        """
        k = len(self.variables)
        if not 0 <= position < (1 << k):
            raise IndexError(position)
        values = tuple(((position >> (k - 1 - j)) & 1) == 0 for j in range(k))
        return World(self, values)

    def worlds(self) -> Iterator["World"]:
        """All worlds over this signature, in enumeration order."""
        for position in range(self.world_count()):
            yield self.world_at(position)


@dataclass(frozen=True)
class World:
    """A total truth assignment to one signature's variables."""

    signature: Signature
    values: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.signature):
            raise ValueError("world does not cover its signature exactly")

    def value(self, name: str) -> bool:
        return self.values[self.signature.index(name)]

    def position(self) -> int:
        """This world's index in the enumeration order of its signature."""
        pos = 0
        for v in self.values:
            pos = (pos << 1) | (0 if v else 1)
        return pos

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(self.signature.variables, self.values))

    def __str__(self) -> str:
        return " ".join(
            f"{name}={1 if v else 0}"
            for name, v in zip(self.signature.variables, self.values)
        )


def evaluate(world: World, formula: Formula) -> bool:
    """Classical truth-table evaluation of ``formula`` in ``world``.

    Raises :class:`UnknownVariableError` if the formula mentions a variable
    outside the world's signature.
    """
    if isinstance(formula, Var):
        return world.value(formula.name)
    if isinstance(formula, TrueConst):
        return True
    if isinstance(formula, FalseConst):
        return False
    if isinstance(formula, Not):
        return not evaluate(world, formula.operand)
    if isinstance(formula, And):
        return evaluate(world, formula.left) and evaluate(world, formula.right)
    if isinstance(formula, Or):
        return evaluate(world, formula.left) or evaluate(world, formula.right)
    if isinstance(formula, Implies):
        return (not evaluate(world, formula.left)) or evaluate(world, formula.right)
    if isinstance(formula, Iff):
        return evaluate(world, formula.left) == evaluate(world, formula.right)
    raise TypeError(f"not a formula node: {formula!r}")


# ---------------------------------------------------------------------------
# Pretty-printer
# ---------------------------------------------------------------------------

_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}
_BINARY_TOKEN = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_ATOM_PRECEDENCE = 6


def _prec(node: Formula) -> int:
    return _PRECEDENCE.get(type(node), _ATOM_PRECEDENCE)


def format_formula(formula: Formula) -> str:
    """Render with minimal parentheses; ``parse_formula`` inverts it exactly."""
    if isinstance(formula, Var):
        return formula.name
    if isinstance(formula, TrueConst):
        return "true"
    if isinstance(formula, FalseConst):
        return "false"
    if isinstance(formula, Not):
        inner = format_formula(formula.operand)
        if _prec(formula.operand) < _PRECEDENCE[Not]:
            inner = f"({inner})"
        return f"!{inner}"
    if isinstance(formula, (And, Or, Implies, Iff)):
        p = _prec(formula)
        left = format_formula(formula.left)
        right = format_formula(formula.right)
        if isinstance(formula, Implies):
            # right-associative: parenthesise a left child of equal precedence
            if _prec(formula.left) <= p:
                left = f"({left})"
            if _prec(formula.right) < p:
                right = f"({right})"
        else:
            if _prec(formula.left) < p:
                left = f"({left})"
            if _prec(formula.right) <= p:
                right = f"({right})"
        return f"{left} {_BINARY_TOKEN[type(formula)]} {right}"
    raise TypeError(f"not a formula node: {formula!r}")


# ---------------------------------------------------------------------------
# Lexer and parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<condbar>\|~)
      | (?P<iff><->)
      | (?P<implies>->)
      | (?P<or>\|)
      | (?P<and>&)
      | (?P<not>!)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<ident>[a-zA-Z_][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", pos, frozenset({"token"})
            )
        kind = m.lastgroup or ""
        if kind not in ("ws", "comment"):
            word = m.group()
            if kind == "ident" and word in _KEYWORDS:
                kind = word
            tokens.append(_Token(kind, word, pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(frozenset({kind}))
        return self.advance()

    def fail(self, expected: frozenset[str]) -> None:
        tok = self.peek()
        shown = tok.text if tok.text else "end of input"
        raise ParseError(f"unexpected {shown!r}", tok.offset, expected)

    def parse_formula(self) -> Formula:
        node = self.parse_imp()
        while self.peek().kind == "iff":
            self.advance()
            node = Iff(node, self.parse_imp())
        return node

    def parse_imp(self) -> Formula:
        node = self.parse_or()
        if self.peek().kind == "implies":
            self.advance()
            return Implies(node, self.parse_imp())
        return node

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek().kind == "or":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_not()
        while self.peek().kind == "and":
            self.advance()
            node = And(node, self.parse_not())
        return node

    def parse_not(self) -> Formula:
        if self.peek().kind == "not":
            self.advance()
            return Not(self.parse_not())
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "true":
            self.advance()
            return TRUE
        if tok.kind == "false":
            self.advance()
            return FALSE
        if tok.kind == "lparen":
            self.advance()
            node = self.parse_formula()
            self.expect("rparen")
            return node
        self.fail(frozenset({"ident", "true", "false", "lparen", "not"}))
        raise AssertionError("unreachable")


def parse_formula(text: str) -> Formula:
    """Parse one formula; ``parse_formula(format_formula(f))`` equals ``f``."""
    parser = _Parser(text)
    node = parser.parse_formula()
    parser.expect("eof")
    return node


def parse_conditional(text: str) -> tuple[Formula, Formula]:
    """Parse ``<formula> |~ <formula>`` into an (antecedent, consequent) pair."""
    parser = _Parser(text)
    antecedent = parser.parse_formula()
    parser.expect("condbar")
    consequent = parser.parse_formula()
    parser.expect("eof")
    return antecedent, consequent
