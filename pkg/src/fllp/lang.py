"""Surface syntax for graded logic programs.

A program is a sequence of statements over atoms built from lowercase
constants and uppercase variables:

    use algebra "vmpl.alg".          % optional, must come first
    st_hd(ann) : more true.          % graded fact
    gd_em(X) <-l and_g(#very(st_hd(X)), ho(X)) : very more true.

Rule arrows pick the conjunction grading the rule itself: ``<-g`` for the
minimum reading, ``<-l`` for the compensating one.  Bodies nest ``and_g``,
``and_l``, ``or`` (two or more parts each) and ``#hedge(...)`` around
atoms.  Grades are spelled as truth literals and must not be the bottom
constant, which would make the statement vacuous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Union

from .algebra import (
    DEFAULT_ALGEBRA_CONFIG,
    TruthDomain,
    TruthValue,
    load_algebra_config,
)
from .connectives import GODEL, LUKA
from .inverse import InverseMappingTable, build_inverse_table

RESERVED_PREDICATES = ("and_g", "and_l", "or")


class ParseError(ValueError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Var, Const]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Conj:
    kind: str  # GODEL or LUKA
    parts: tuple["Body", ...]


@dataclass(frozen=True)
class Disj:
    parts: tuple["Body", ...]


@dataclass(frozen=True)
class HedgeApp:
    hedge: str
    body: "Body"


Body = Union[Atom, Conj, Disj, HedgeApp]


@dataclass(frozen=True)
class Fact:
    atom: Atom
    tv: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Rule:
    head: Atom
    kind: str
    body: Body
    tv: int
    line: int = field(default=0, compare=False)


Statement = Union[Fact, Rule]


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...]
    algebra_path: str | None = None
    source: str = field(default="<string>", compare=False)

    @property
    def facts(self) -> tuple[Fact, ...]:
        return tuple(s for s in self.statements if isinstance(s, Fact))

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(s for s in self.statements if isinstance(s, Rule))

    def predicates(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for atom in self.atoms():
            out.setdefault(atom.pred, len(atom.args))
        return out

    def constants(self) -> tuple[str, ...]:
        names = {
            a.name for atom in self.atoms() for a in atom.args if isinstance(a, Const)
        }
        return tuple(sorted(names))

    def atoms(self) -> Iterator[Atom]:
        for st in self.statements:
            if isinstance(st, Fact):
                yield st.atom
            else:
                yield st.head
                yield from atoms_of(st.body)


def atoms_of(body: Body) -> Iterator[Atom]:
    if isinstance(body, Atom):
        yield body
    elif isinstance(body, HedgeApp):
        yield from atoms_of(body.body)
    else:
        for part in body.parts:
            yield from atoms_of(part)


def free_vars(node: Body | Atom) -> tuple[str, ...]:
    """Variable names in first-occurrence order."""
    seen: dict[str, None] = {}
    for atom in atoms_of(node):
        for arg in atom.args:
            if isinstance(arg, Var):
                seen.setdefault(arg.name)
    return tuple(seen)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>%[^\n]*)
    | (?P<arrow><-[gl])
    | (?P<query>\?-)
    | (?P<string>"[^"\n]*")
    | (?P<var>[A-Z][A-Za-z0-9_]*)
    | (?P<ident>[a-z][a-z0-9_]*)
    | (?P<punct>[(),:.\#])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int


def _tokenize(text: str, errors: list[str]) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            errors.append(f"line {line}: unexpected character {text[pos]!r}")
            pos += 1
            continue
        kind = m.lastgroup or ""
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line))
        line += chunk.count("\n")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], domain: TruthDomain, errors: list[str]):
        self.tokens = tokens
        self.domain = domain
        self.errors = errors
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _fail(self, wanted: str) -> None:
        tok = self.peek()
        found = f"{tok.text!r}" if tok else "end of input"
        line = tok.line if tok else self.tokens[-1].line if self.tokens else 1
        raise _Bail(f"line {line}: expected {wanted}, found {found}")

    def expect(self, kind: str, text: str | None = None, wanted: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            self._fail(wanted or text or kind)
        return self.advance()

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def sync_to_dot(self) -> None:
        while not self.at_end():
            if self.advance().text == ".":
                return

    # statements ----------------------------------------------------------

    def statement(self) -> Statement | None:
        start = self.peek().line
        try:
            atom = self.atom(head=True)
            nxt = self.peek()
            if nxt is not None and nxt.kind == "arrow":
                kind = GODEL if self.advance().text == "<-g" else LUKA
                body = self.body()
                self.expect("punct", ":")
                tv = self.grade()
                self.expect("punct", ".")
                return Rule(atom, kind, body, tv, line=start)
            self.expect("punct", ":")
            tv = self.grade()
            self.expect("punct", ".")
            return Fact(atom, tv, line=start)
        except _Bail as exc:
            self.errors.append(str(exc))
            self.sync_to_dot()
            return None

    def atom(self, head: bool = False) -> Atom:
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            self._fail("a predicate name")
        if head and tok.text in RESERVED_PREDICATES:
            raise _Bail(
                f"line {tok.line}: {tok.text!r} is a connective, not a predicate"
            )
        name = self.advance().text
        args: list[Term] = []
        nxt = self.peek()
        if nxt is not None and nxt.text == "(":
            self.advance()
            args.append(self.term())
            while self.peek() is not None and self.peek().text == ",":
                self.advance()
                args.append(self.term())
            self.expect("punct", ")")
        return Atom(name, tuple(args))

    def term(self) -> Term:
        tok = self.peek()
        if tok is None or tok.kind not in ("ident", "var"):
            self._fail("a constant or variable")
        self.advance()
        return Var(tok.text) if tok.kind == "var" else Const(tok.text)

    def body(self) -> Body:
        tok = self.peek()
        if tok is None:
            self._fail("a body")
        if tok.text == "#":
            self.advance()
            hedge = self.expect("ident", wanted="a hedge name").text
            if not self.domain.algebra.has_hedge(hedge):
                raise _Bail(f"line {tok.line}: unknown hedge {hedge!r}")
            self.expect("punct", "(")
            inner = self.body()
            self.expect("punct", ")")
            return HedgeApp(hedge, inner)
        if tok.kind == "ident" and tok.text in RESERVED_PREDICATES:
            self.advance()
            self.expect("punct", "(")
            parts = [self.body()]
            while self.peek() is not None and self.peek().text == ",":
                self.advance()
                parts.append(self.body())
            self.expect("punct", ")")
            if len(parts) < 2:
                raise _Bail(f"line {tok.line}: {tok.text!r} needs at least two parts")
            if tok.text == "or":
                return Disj(tuple(parts))
            return Conj(GODEL if tok.text == "and_g" else LUKA, tuple(parts))
        return self.atom()

    def grade(self) -> int:
        words: list[str] = []
        first = self.peek()
        while self.peek() is not None and self.peek().kind == "ident":
            words.append(self.advance().text)
        if not words:
            self._fail("a truth literal")
        line = first.line
        try:
            idx = self.domain.parse_literal(" ".join(words))
        except ValueError as exc:
            raise _Bail(f"line {line}: {exc}") from None
        if idx == 0:
            raise _Bail(
                f"line {line}: grade {' '.join(words)!r} would make the statement vacuous"
            )
        return idx


class _Bail(Exception):
    pass


def algebra_directive(text: str) -> str | None:
    """Path from a leading ``use algebra "..."`` statement, if present."""
    errors: list[str] = []
    toks = _tokenize(text, errors)
    if (
        len(toks) >= 4
        and toks[0].text == "use"
        and toks[1].text == "algebra"
        and toks[2].kind == "string"
        and toks[3].text == "."
    ):
        return toks[2].text[1:-1]
    return None


def parse_program(text: str, domain: TruthDomain, source: str = "<string>") -> Program:
    errors: list[str] = []
    tokens = _tokenize(text, errors)
    parser = _Parser(tokens, domain, errors)

    algebra_path: str | None = None
    if (
        parser.peek() is not None
        and parser.peek().text == "use"
        and parser.peek(1) is not None
        and parser.peek(1).text == "algebra"
    ):
        parser.advance()
        parser.advance()
        try:
            algebra_path = parser.expect("string", wanted="a quoted path").text[1:-1]
            parser.expect("punct", ".")
        except _Bail as exc:
            errors.append(str(exc))
            parser.sync_to_dot()

    statements: list[Statement] = []
    while not parser.at_end():
        tok = parser.peek()
        if tok.text == "use" and parser.peek(1) is not None and parser.peek(1).text == "algebra":
            errors.append(f"line {tok.line}: algebra directive must precede all statements")
            parser.sync_to_dot()
            continue
        st = parser.statement()
        if st is not None:
            statements.append(st)
    if errors:
        raise ParseError(errors)
    return Program(tuple(statements), algebra_path, source)


def parse_query(text: str, domain: TruthDomain) -> Body:
    """A query is a body with an optional ``?-`` prefix and trailing dot."""
    errors: list[str] = []
    tokens = _tokenize(text, errors)
    if errors:
        raise ParseError(errors)
    parser = _Parser(tokens, domain, errors)
    if parser.peek() is not None and parser.peek().kind == "query":
        parser.advance()
    try:
        body = parser.body()
        if parser.peek() is not None and parser.peek().text == ".":
            parser.advance()
        if not parser.at_end():
            parser._fail("end of query")
    except _Bail as exc:
        raise ParseError([str(exc)]) from None
    return body


# ---------------------------------------------------------------------------
# validation

def _canonical(st: Statement) -> tuple:
    """Statement shape with variables renamed by first occurrence."""
    names: dict[str, str] = {}

    def term(t: Term):
        if isinstance(t, Const):
            return ("c", t.name)
        return ("v", names.setdefault(t.name, f"V{len(names)}"))

    def node(b: Body) -> tuple:
        if isinstance(b, Atom):
            return ("atom", b.pred, tuple(term(a) for a in b.args))
        if isinstance(b, HedgeApp):
            return ("hedge", b.hedge, node(b.body))
        if isinstance(b, Conj):
            return ("conj", b.kind, tuple(node(p) for p in b.parts))
        return ("disj", tuple(node(p) for p in b.parts))

    if isinstance(st, Fact):
        return ("fact", node(st.atom))
    return ("rule", node(st.head), st.kind, node(st.body))


def validate_program(
    program: Program, domain: TruthDomain, safe: bool = False
) -> list[str]:
    problems: list[str] = []

    arities: dict[str, tuple[int, int]] = {}
    for st in program.statements:
        for atom in [st.atom] if isinstance(st, Fact) else [st.head, *atoms_of(st.body)]:
            prev = arities.setdefault(atom.pred, (len(atom.args), st.line))
            if prev[0] != len(atom.args):
                problems.append(
                    f"line {st.line}: {atom.pred!r} used with arity {len(atom.args)}, "
                    f"but line {prev[1]} uses arity {prev[0]}"
                )

    grades: dict[tuple, tuple[int, int]] = {}
    for st in program.statements:
        key = _canonical(st)
        prev = grades.setdefault(key, (st.tv, st.line))
        if prev[0] != st.tv:
            problems.append(
                f"line {st.line}: statement repeats line {prev[1]} with grade "
                f"{domain.literal(st.tv)!r} instead of {domain.literal(prev[0])!r}"
            )

    if safe:
        for st in program.statements:
            if isinstance(st, Fact):
                loose = free_vars(st.atom)
                if loose:
                    problems.append(
                        f"line {st.line}: fact is not ground, "
                        f"variable(s) {', '.join(loose)}"
                    )
                continue
            body_vars = set(free_vars(st.body))
            loose = tuple(v for v in free_vars(st.head) if v not in body_vars)
            if loose:
                problems.append(
                    f"line {st.line}: rule is not range restricted, "
                    f"variable(s) {', '.join(loose)} occur only in the head"
                )
    return problems


# ---------------------------------------------------------------------------
# printing

def format_atom(atom: Atom) -> str:
    if not atom.args:
        return atom.pred
    return f"{atom.pred}({','.join(str(a) for a in atom.args)})"


def format_body(body: Body) -> str:
    if isinstance(body, Atom):
        return format_atom(body)
    if isinstance(body, HedgeApp):
        return f"#{body.hedge}({format_body(body.body)})"
    if isinstance(body, Conj):
        name = "and_g" if body.kind == GODEL else "and_l"
        return f"{name}({','.join(format_body(p) for p in body.parts)})"
    return f"or({','.join(format_body(p) for p in body.parts)})"


def format_value(domain: TruthDomain, value: int | TruthValue) -> str:
    idx = value if isinstance(value, int) else domain.index_of(value)
    return f"{domain.literal(idx)} (v{idx})"


def pretty_print(program: Program, domain: TruthDomain) -> str:
    lines: list[str] = []
    if program.algebra_path is not None:
        lines.append(f'use algebra "{program.algebra_path}".')
    for st in program.statements:
        if isinstance(st, Fact):
            lines.append(f"{format_atom(st.atom)} : {domain.literal(st.tv)}.")
        else:
            arrow = "<-g" if st.kind == GODEL else "<-l"
            lines.append(
                f"{format_atom(st.head)} {arrow} {format_body(st.body)} "
                f": {domain.literal(st.tv)}."
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# loading

def load_program(
    path: str | Path,
    algebra_file: str | Path | None = None,
    default_config: str | None = None,
) -> tuple[Program, InverseMappingTable]:
    """Read a program file and the algebra it runs on.

    An explicit ``algebra_file`` wins over the program's own directive,
    which is resolved relative to the program's location; without either,
    ``default_config`` (falling back to the built-in algebra) applies.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")

    config: str
    if algebra_file is not None:
        config = Path(algebra_file).read_text(encoding="utf-8")
    else:
        directive = algebra_directive(text)
        if directive is not None:
            config = (path.parent / directive).read_text(encoding="utf-8")
        else:
            config = default_config if default_config is not None else DEFAULT_ALGEBRA_CONFIG

    algebra, domain, overrides = load_algebra_config(config)
    table = build_inverse_table(domain, overrides)
    program = parse_program(text, domain, source=str(path))
    return program, table
