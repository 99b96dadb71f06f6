"""Top-down resolution for graded logic programs.

A query is turned into a goal word: a tree of connectives over atoms that
is rewritten step by step.  Each step picks the leftmost unresolved atom
and either replaces it with a matching fact's grade, unfolds it through a
matching rule (wrapping the rule body in the rule's own conjunction with
the rule grade), or grades it bottom when nothing in the program matches.
Hedge connectives wait until their argument is a plain value and then go
through the inverse mapping.  When no atoms remain the word collapses to a
single value, yielding a computed answer together with the bindings of the
query variables.

Threshold mode pushes a lower bound down the goal tree.  Every connective
is monotone, so a bound on a node induces a least useful value for each
child; branches that cannot reach their bound are cut.  Bounds do not
cross disjunctions (a weak branch may be compensated by a stronger one),
so pruned search returns exactly the answers of unpruned search that pass
the threshold, in the same order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .connectives import GODEL, t_norm
from .inverse import InverseMappingTable
from .lang import (
    Atom,
    Body,
    Conj,
    Const,
    Disj,
    Fact,
    HedgeApp,
    Program,
    Rule,
    Statement,
    Term,
    Var,
    format_atom,
    format_value,
    free_vars,
)


class BranchCut(Exception):
    """No value below this point can satisfy the active bound."""


@dataclass(frozen=True)
class WAtom:
    atom: Atom
    bound: int | None
    in_disj: bool = False  # some ancestor is a disjunction


@dataclass(frozen=True)
class WValue:
    value: int


@dataclass(frozen=True)
class WConj:
    kind: str
    parts: tuple["Word", ...]


@dataclass(frozen=True)
class WDisj:
    parts: tuple["Word", ...]


@dataclass(frozen=True)
class WHedge:
    hedge: str
    child: "Word"


@dataclass(frozen=True)
class WTNorm:
    kind: str
    child: "Word"
    grade: int


Word = Union[WAtom, WValue, WConj, WDisj, WHedge, WTNorm]


@dataclass(frozen=True)
class SolveOptions:
    depth: int | None = 64
    threshold: int | None = None
    best: bool = False
    exhaustive: bool = False
    trace: bool = False


@dataclass(frozen=True)
class ComputedAnswer:
    value: int
    bindings: tuple[tuple[str, Term], ...]
    length: int = 0

    def __eq__(self, other) -> bool:  # length is bookkeeping, not identity
        if not isinstance(other, ComputedAnswer):
            return NotImplemented
        return self.value == other.value and self.bindings == other.bindings

    def __hash__(self) -> int:
        return hash((self.value, self.bindings))


@dataclass(frozen=True)
class SolveResult:
    answers: tuple[ComputedAnswer, ...]
    depth_exhausted: bool = False
    trace: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# bounds

def next_threshold(
    table: InverseMappingTable, bound: int | None, context: tuple
) -> int | None:
    """Least value a child must reach for its parent to reach ``bound``.

    ``None`` means the child is unconstrained.  Raises :class:`BranchCut`
    when no child value can do it.  Contexts: ``("rule", kind, grade)``,
    ``("conjg",)``, ``("conjl", arity, all_below_top)``, ``("disj",)`` and
    ``("hedge", name)``.
    """
    if bound is None:
        return None
    n = table.domain.n
    tag = context[0]
    if tag == "rule":
        _, kind, grade = context
        if grade < bound:
            raise BranchCut
        return bound if kind == GODEL else n + bound - grade
    if tag == "conjg":
        return bound
    if tag == "conjl":
        _, arity, below_top = context
        if not below_top:
            return bound
        # No atom can reach the top value, so the other parts contribute
        # at most n-1 each and this part must make up the difference.
        b = bound + (arity - 1)
        if b > n - 1:
            raise BranchCut
        return b
    if tag == "disj":
        return None
    if tag == "hedge":
        col = table.columns[context[1]]
        for v, img in enumerate(col):
            if img >= bound:
                return v
        raise BranchCut
    raise ValueError(f"unknown bound context: {context!r}")


def _all_below_top(program: Program, table: InverseMappingTable) -> bool:
    """True when no atom can ever be graded with the top value."""
    n = table.domain.n
    if any(f.tv == n for f in program.facts):
        return False
    return all(
        col[v] < n for col in table.columns.values() for v in range(n)
    )


def _word(
    body: Body, bound: int | None, table, below_top: bool, in_disj: bool = False
) -> Word:
    if isinstance(body, Atom):
        return WAtom(body, bound, in_disj)
    if isinstance(body, HedgeApp):
        b = next_threshold(table, bound, ("hedge", body.hedge))
        return WHedge(body.hedge, _word(body.body, b, table, below_top, in_disj))
    if isinstance(body, Conj):
        if body.kind == GODEL:
            b = next_threshold(table, bound, ("conjg",))
        else:
            b = next_threshold(table, bound, ("conjl", len(body.parts), below_top))
        parts = tuple(_word(p, b, table, below_top, in_disj) for p in body.parts)
        return WConj(body.kind, parts)
    return WDisj(tuple(_word(p, None, table, below_top, True) for p in body.parts))


# ---------------------------------------------------------------------------
# substitutions (terms are flat, so no occurs check is needed)

def walk(t: Term, subst: dict[str, Term]) -> Term:
    while isinstance(t, Var) and t.name in subst:
        t = subst[t.name]
    return t


def subst_atom(atom: Atom, subst: dict[str, Term]) -> Atom:
    if not atom.args:
        return atom
    return Atom(atom.pred, tuple(walk(a, subst) for a in atom.args))


def unify(a: Atom, b: Atom, subst: dict[str, Term]) -> dict[str, Term] | None:
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    s = dict(subst)
    for x, y in zip(a.args, b.args):
        x, y = walk(x, s), walk(y, s)
        if x == y:
            continue
        if isinstance(x, Var):
            s[x.name] = y
        elif isinstance(y, Var):
            s[y.name] = x
        else:
            return None
    return s


def _rename_term(t: Term, tag: str) -> Term:
    return Var(f"{t.name}~{tag}") if isinstance(t, Var) else t


def _rename_atom(atom: Atom, tag: str) -> Atom:
    return Atom(atom.pred, tuple(_rename_term(a, tag) for a in atom.args))


def _rename_body(body: Body, tag: str) -> Body:
    if isinstance(body, Atom):
        return _rename_atom(body, tag)
    if isinstance(body, HedgeApp):
        return HedgeApp(body.hedge, _rename_body(body.body, tag))
    if isinstance(body, Conj):
        return Conj(body.kind, tuple(_rename_body(p, tag) for p in body.parts))
    return Disj(tuple(_rename_body(p, tag) for p in body.parts))


# ---------------------------------------------------------------------------
# word traversal

def _leftmost(word: Word) -> WAtom | None:
    if isinstance(word, WAtom):
        return word
    if isinstance(word, WValue):
        return None
    if isinstance(word, (WConj, WDisj)):
        for p in word.parts:
            found = _leftmost(p)
            if found is not None:
                return found
        return None
    return _leftmost(word.child)


def _replace_leftmost(word: Word, new: Word) -> tuple[Word, bool]:
    if isinstance(word, WAtom):
        return new, True
    if isinstance(word, WValue):
        return word, False
    if isinstance(word, (WConj, WDisj)):
        parts = list(word.parts)
        for i, p in enumerate(parts):
            repl, done = _replace_leftmost(p, new)
            if done:
                parts[i] = repl
                if isinstance(word, WConj):
                    return WConj(word.kind, tuple(parts)), True
                return WDisj(tuple(parts)), True
        return word, False
    repl, done = _replace_leftmost(word.child, new)
    if not done:
        return word, False
    if isinstance(word, WHedge):
        return WHedge(word.hedge, repl), True
    return WTNorm(word.kind, repl, word.grade), True


def _eval(word: Word, table: InverseMappingTable) -> int:
    n = table.domain.n
    if isinstance(word, WValue):
        return word.value
    if isinstance(word, WConj):
        acc = _eval(word.parts[0], table)
        for p in word.parts[1:]:
            acc = t_norm(word.kind, acc, _eval(p, table), n)
        return acc
    if isinstance(word, WDisj):
        return max(_eval(p, table) for p in word.parts)
    if isinstance(word, WHedge):
        return table.apply(word.hedge, _eval(word.child, table))
    if isinstance(word, WTNorm):
        return t_norm(word.kind, _eval(word.child, table), word.grade, n)
    raise ValueError("cannot evaluate a word that still contains atoms")


def format_word(word: Word, subst: dict[str, Term] | None = None) -> str:
    s = subst or {}
    if isinstance(word, WAtom):
        return format_atom(subst_atom(word.atom, s))
    if isinstance(word, WValue):
        return f"v{word.value}"
    if isinstance(word, WConj):
        name = "and_g" if word.kind == GODEL else "and_l"
        return f"{name}({','.join(format_word(p, s) for p in word.parts)})"
    if isinstance(word, WDisj):
        return f"or({','.join(format_word(p, s) for p in word.parts)})"
    if isinstance(word, WHedge):
        return f"#{word.hedge}({format_word(word.child, s)})"
    name = "c_g" if word.kind == GODEL else "c_l"
    return f"{name}({format_word(word.child, s)},v{word.grade})"


# ---------------------------------------------------------------------------
# search

def solve(
    program: Program,
    table: InverseMappingTable,
    query: Body,
    options: SolveOptions | None = None,
) -> SolveResult:
    opts = options or SolveOptions()
    below_top = _all_below_top(program, table)
    trace: list[str] = []
    qvars = free_vars(query)

    try:
        goal = _word(query, opts.threshold, table, below_top)
    except BranchCut:
        return SolveResult((), False, ())
    if opts.trace:
        trace.append(f"goal {format_word(goal)}")

    by_pred: dict[str, list[tuple[int, Statement]]] = {}
    for pos, st in enumerate(program.statements):
        head = st.atom if isinstance(st, Fact) else st.head
        by_pred.setdefault(head.pred, []).append((pos, st))

    fresh = itertools.count(1)
    answers: list[ComputedAnswer] = []
    exhausted = False
    stack: list[tuple[Word, dict[str, Term], int, str | None]] = [(goal, {}, 0, None)]

    while stack:
        word, subst, depth, note = stack.pop()
        if note is not None and opts.trace:
            trace.append(note)
        sel = _leftmost(word)
        if sel is None:
            value = _eval(word, table)
            bindings = tuple((v, walk(Var(v), subst)) for v in qvars)
            answers.append(ComputedAnswer(value, bindings, depth))
            if opts.trace:
                trace.append(f"[{depth}] computed v{value}")
            continue

        atom = subst_atom(sel.atom, subst)
        unifiable = False
        branches: list[tuple[tuple, Word, dict[str, Term]]] = []
        for pos, st in by_pred.get(atom.pred, ()):
            tag = str(next(fresh))
            if isinstance(st, Fact):
                s2 = unify(atom, _rename_atom(st.atom, tag), subst)
                if s2 is None:
                    continue
                unifiable = True
                if sel.bound is not None and st.tv < sel.bound:
                    continue
                replacement: Word = WValue(st.tv)
                key = (-st.tv, 0, 0, pos)
            else:
                s2 = unify(atom, _rename_atom(st.head, tag), subst)
                if s2 is None:
                    continue
                unifiable = True
                try:
                    b = next_threshold(table, sel.bound, ("rule", st.kind, st.tv))
                    child = _word(
                        _rename_body(st.body, tag), b, table, below_top, sel.in_disj
                    )
                except BranchCut:
                    continue
                replacement = WTNorm(st.kind, child, st.tv)
                key = (-st.tv, 1, 0 if st.kind == GODEL else 1, pos)
            if opts.exhaustive:
                key = (pos,)
            branches.append((key, replacement, s2))

        if not unifiable:
            if sel.bound is not None and sel.bound > 0:
                if opts.trace:
                    trace.append(f"[{depth}] cut {format_atom(atom)} (nothing matches)")
                continue
            if opts.trace:
                trace.append(f"[{depth}] {format_atom(atom)} graded bottom")
            word2, _ = _replace_leftmost(word, WValue(0))
            stack.append((word2, subst, depth, None))
            continue
        if not branches:
            if opts.trace:
                trace.append(f"[{depth}] cut {format_atom(atom)} (below bound)")
            continue
        if opts.depth is not None and depth >= opts.depth:
            exhausted = True
            if opts.trace:
                trace.append(f"[{depth}] depth limit at {format_atom(atom)}")
            branches = []

        # An open atom inside a disjunction may also be taken at bottom.  That
        # releases its variables, so a sibling disjunct can still bind them to
        # something the facts for this atom would have ruled out.  Anywhere
        # else a bottom grade annihilates the whole branch and is never worth
        # a detour.
        if sel.in_disj and any(isinstance(a, Var) for a in atom.args):
            word2, _ = _replace_leftmost(word, WValue(0))
            note0 = None
            if opts.trace:
                note0 = f"[{depth}] {format_atom(atom)} graded bottom (open choice)"
            stack.append((word2, subst, depth, note0))
        elif not branches:
            continue

        branches.sort(key=lambda b: b[0])
        for key, replacement, s2 in reversed(branches):
            word2, _ = _replace_leftmost(word, replacement)
            note = None
            if opts.trace:
                note = f"[{depth}] {format_atom(atom)} -> {format_word(replacement, s2)}"
            stack.append((word2, s2, depth + 1, note))

    if opts.threshold is not None:
        answers = [a for a in answers if a.value >= opts.threshold]
    if opts.best:
        best: dict[tuple, ComputedAnswer] = {}
        for a in answers:
            prev = best.get(a.bindings)
            if prev is None or a.value > prev.value:
                best[a.bindings] = a
        answers = sorted(best.values(), key=lambda a: -a.value)
    return SolveResult(tuple(answers), exhausted, tuple(trace))


def format_answer(domain, answer: ComputedAnswer) -> str:
    parts = []
    for name, term in answer.bindings:
        shown = term.name if isinstance(term, Const) else "_"
        parts.append(f"{name}={shown}")
    shown = f" {', '.join(parts)}" if parts else ""
    return f"answer:{shown} ; tv={format_value(domain, answer.value)}"
