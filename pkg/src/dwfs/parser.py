"""Text format for disjunctive programs and for emitted model states.

Grammar:
    program := rule*
    rule    := head ( ":-" body )? "."
    head    := atom ( "|" atom )*
    body    := literal ( "," literal )*
    literal := atom | "not" atom
    atom    := [a-zA-Z_][a-zA-Z0-9_]*

Whitespace is insignificant and "%" starts a line comment. Duplicate head
atoms, duplicate body literals, and duplicate rules are silently merged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ModelState, Program, Rule


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


def _tokenize(text: str):
    """Yield (kind, value, span) with kind in {ident, punct, eof}."""
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = SourceSpan(line, col)
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            yield "ident", text[i:j], span
            col += j - i
            i = j
            continue
        if ch in "|,.":
            yield "punct", ch, span
            i += 1
            col += 1
            continue
        if ch == ":" and i + 1 < n and text[i + 1] == "-":
            yield "punct", ":-", span
            i += 2
            col += 2
            continue
        raise ParseError(f"unexpected character {ch!r}", span)
    yield "eof", "", SourceSpan(line, col)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0
        self.names: list[str] = []
        self.ids: dict[str, int] = {}

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def intern(self, name: str) -> int:
        if name not in self.ids:
            self.ids[name] = len(self.names)
            self.names.append(name)
        return self.ids[name]

    def expect_atom(self, context: str) -> int:
        kind, value, span = self.next()
        if kind != "ident":
            raise ParseError(f"expected an atom {context}, found {value or 'end of input'!r}", span)
        if value == "not":
            raise ParseError(f"'not' is not allowed {context}", span)
        return self.intern(value)

    def parse_rule(self) -> Rule:
        head = {self.expect_atom("in a rule head")}
        while self.peek()[:2] == ("punct", "|"):
            self.next()
            head.add(self.expect_atom("in a rule head"))
        pos_body: set[int] = set()
        neg_body: set[int] = set()
        kind, value, span = self.next()
        if (kind, value) == ("punct", ":-"):
            while True:
                k, v, sp = self.peek()
                if k == "ident" and v == "not":
                    self.next()
                    neg_body.add(self.expect_atom("after 'not'"))
                elif k == "ident":
                    self.next()
                    pos_body.add(self.intern(v))
                else:
                    raise ParseError(f"expected a body literal, found {v or 'end of input'!r}", sp)
                k, v, sp = self.next()
                if (k, v) == ("punct", ","):
                    continue
                if (k, v) == ("punct", "."):
                    break
                raise ParseError(f"expected ',' or '.', found {v or 'end of input'!r}", sp)
        elif (kind, value) != ("punct", "."):
            raise ParseError(f"expected ':-' or '.', found {value or 'end of input'!r}", span)
        return Rule(frozenset(head), frozenset(pos_body), frozenset(neg_body))

    def parse_program(self) -> Program:
        rules = set()
        while self.peek()[0] != "eof":
            rules.add(self.parse_rule())
        return Program(rules, self.names)


def parse_program(text: str) -> Program:
    """Parse program text; atoms are interned in first-occurrence order."""
    return _Parser(text).parse_program()


def render_rule(r: Rule, names) -> str:
    head = " | ".join(sorted(names[a] for a in r.head))
    body = sorted(names[b] for b in r.pos_body)
    body += ["not " + n for n in sorted(names[c] for c in r.neg_body)]
    if body:
        return f"{head} :- {', '.join(body)}."
    return f"{head}."


def _rule_name_key(r: Rule, names):
    return (
        tuple(sorted(names[a] for a in r.head)),
        tuple(sorted(names[a] for a in r.pos_body)),
        tuple(sorted(names[a] for a in r.neg_body)),
    )


def render_program(p: Program) -> str:
    """Deterministic, name-ordered text that re-parses to an equal Program."""
    names = p.atom_names
    lines = [render_rule(r, names) for r in sorted(p.rules, key=lambda r: _rule_name_key(r, names))]
    return "\n".join(lines) + ("\n" if lines else "")


def render_state(s: ModelState, names) -> str:
    """Canonical core as text: one disjunction or 'not a' line each, sorted."""
    pos_lines = sorted(tuple(sorted(names[a] for a in d)) for d in s.pos)
    lines = [" | ".join(t) for t in pos_lines]
    lines += ["not " + n for n in sorted(names[a] for a in s.false_atoms)]
    return "\n".join(lines) + ("\n" if lines else "")


def state_json(s: ModelState, names) -> dict:
    """Machine-readable state document.

    Undefined atoms are those neither unit-true nor false; atoms appearing
    only inside non-unit true disjunctions count as undefined.
    """
    unit_true = s.unit_true_atoms()
    undefined = set(range(len(names))) - unit_true - s.false_atoms
    return {
        "true_disjunctions": sorted(sorted(names[a] for a in d) for d in s.pos),
        "false_atoms": sorted(names[a] for a in s.false_atoms),
        "undefined_atoms": sorted(names[a] for a in undefined),
    }
