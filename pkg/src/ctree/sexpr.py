"""A small s-expression reader that keeps source locations.

Atoms are plain identifiers/numbers (``x0``, ``f``, ``<=``, ``12``) or
double-quoted strings.  Every node remembers the line and column it started
on so that callers can report precise errors.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


@dataclass(frozen=True)
class Sym:
    name: str
    quoted: bool = False
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __repr__(self):
        return f'"{self.name}"' if self.quoted else self.name


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __iter__(self):
        return iter(self.items)

    def __repr__(self):
        return "(" + " ".join(map(repr, self.items)) + ")"

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Sym) and not self.items[0].quoted:
            return self.items[0].name
        return None


_DELIMS = set("()\"; \t\r\n")


def tokenize(text: str):
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
        elif c.isspace():
            col, i = col + 1, i + 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, c, line, col
            col, i = col + 1, i + 1
        elif c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError("unterminated string", line, col)
                j += 1
            if j >= n:
                raise ParseError("unterminated string", line, col)
            yield "str", text[i + 1:j], line, col
            col += j + 1 - i
            i = j + 1
        else:
            j = i
            while j < n and text[j] not in _DELIMS:
                j += 1
            yield "atom", text[i:j], line, col
            col += j - i
            i = j


def parse_all(text: str) -> list:
    """Parse every top-level expression in ``text``."""
    stack: list[tuple[list, int, int]] = []
    out: list = []
    for kind, value, line, col in tokenize(text):
        if kind == "(":
            stack.append(([], line, col))
            continue
        if kind == ")":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
        else:
            node = Sym(value, kind == "str", line, col)
        if stack:
            stack[-1][0].append(node)
        else:
            out.append(node)
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unbalanced '('", l0, c0)
    return out


def parse(text: str):
    """Parse exactly one expression."""
    nodes = parse_all(text)
    if len(nodes) != 1:
        line = nodes[1].line if len(nodes) > 1 else 0
        col = nodes[1].col if len(nodes) > 1 else 0
        raise ParseError(f"expected one expression, found {len(nodes)}", line, col)
    return nodes[0]


def dumps(node) -> str:
    if isinstance(node, Sym):
        return f'"{node.name}"' if node.quoted else node.name
    if isinstance(node, SList):
        return "(" + " ".join(dumps(x) for x in node.items) + ")"
    if isinstance(node, (list, tuple)):
        return "(" + " ".join(dumps(x) for x in node) + ")"
    return str(node)
