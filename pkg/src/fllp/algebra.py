"""Linear symmetric hedge algebras and their finite linguistic truth domains.

A hedge algebra describes how modifier words such as "very" or "probably"
act on two opposite primary terms ("false" < "true").  Modifiers split into
a strengthening class and a weakening class, each linearly ranked, and a
positivity matrix records whether one modifier amplifies or dampens the
effect of another.  Everything else is derived from that description: the
sign of a modified term, the total order on all bounded modifier strings,
and the enumerated truth domain the rest of the package computes with.

All values are immutable and the operations are pure, so algebras and
domains can be shared freely across threads.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

LT, EQ, GT = -1, 0, 1

BOTTOM_NAME = "absfalse"
MIDDLE_NAME = "middle"
TOP_NAME = "abstrue"
RESERVED_NAMES = frozenset({BOTTOM_NAME, MIDDLE_NAME, TOP_NAME})


class AlgebraError(ValueError):
    """Invalid algebra description or operation; carries every violation found."""

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class TruthValue:
    """A linguistic truth value: 0, W, 1, or a hedge string over a primary.

    ``hedges`` is stored outermost first, so ``("very", "little")`` over the
    positive primary reads "very little true".
    """

    kind: str  # "bottom" | "middle" | "top" | "term"
    positive: bool = True
    hedges: tuple[str, ...] = ()

    @property
    def is_term(self) -> bool:
        return self.kind == "term"


BOTTOM = TruthValue("bottom")
MIDDLE = TruthValue("middle")
TOP = TruthValue("top")


def term(hedges: Iterable[str], positive: bool) -> TruthValue:
    return TruthValue("term", positive, tuple(hedges))


@dataclass(frozen=True)
class HedgeDecl:
    name: str
    positive_class: bool  # True: strengthening class, False: weakening class
    rank: int  # higher rank modifies more strongly within its class


@dataclass(frozen=True)
class HedgeAlgebraSpec:
    """Raw, unvalidated description of an algebra.

    ``positivity`` maps an ordered pair ``(modifier, target)`` to True when
    the modifier is positive (amplifying) with respect to the target.  It
    must classify every ordered pair of declared hedges.
    """

    negative_primary: str
    positive_primary: str
    hedges: tuple[HedgeDecl, ...]
    positivity: Mapping[tuple[str, str], bool]
    limit: int


# Comparison bands: 0 and 1 are extremes, W separates the two term sides.
_BAND = {"bottom": 0, "middle": 2, "top": 4}


class HedgeAlgebra:
    """Validated algebra with the derived extended order on hedges.

    The extended order places weakening hedges below the identity (stronger
    ones lower) and strengthening hedges above it (stronger ones higher).
    It is exposed through :meth:`e_index`, where the identity is 0.
    """

    def __init__(self, spec: HedgeAlgebraSpec):
        self.spec = spec
        self.limit = spec.limit
        self.negative_primary = spec.negative_primary
        self.positive_primary = spec.positive_primary
        self._class = {d.name: d.positive_class for d in spec.hedges}
        self._positivity = dict(spec.positivity)
        plus = sorted((d for d in spec.hedges if d.positive_class), key=lambda d: d.rank)
        minus = sorted((d for d in spec.hedges if not d.positive_class), key=lambda d: d.rank)
        # plus_hedges[i] has extended index i+1, minus_hedges[i] has -(i+1)
        self.plus_hedges = tuple(d.name for d in plus)
        self.minus_hedges = tuple(d.name for d in minus)
        self._e_index = {name: i + 1 for i, name in enumerate(self.plus_hedges)}
        self._e_index.update({name: -(i + 1) for i, name in enumerate(self.minus_hedges)})
        self.hedge_names = frozenset(self._e_index)
        # Greatest hedge under the extended order, used to probe chain direction.
        if self.plus_hedges:
            self._top_hedge = self.plus_hedges[-1]
        elif self.minus_hedges:
            self._top_hedge = self.minus_hedges[0]
        else:
            self._top_hedge = None

    # -- lookups ---------------------------------------------------------

    def has_hedge(self, name: str) -> bool:
        return name in self._e_index

    def e_index(self, name: str | None) -> int:
        """Extended-order index of a hedge; None stands for the identity."""
        if name is None:
            return 0
        try:
            return self._e_index[name]
        except KeyError:
            raise AlgebraError([f"undeclared hedge: {name!r}"]) from None

    def hedge_by_e_index(self, idx: int) -> str | None:
        if idx == 0:
            return None
        if idx > 0:
            if idx <= len(self.plus_hedges):
                return self.plus_hedges[idx - 1]
        elif -idx <= len(self.minus_hedges):
            return self.minus_hedges[-idx - 1]
        raise AlgebraError([f"no hedge with extended index {idx}"])

    def extended_order(self) -> tuple[str, ...]:
        """All hedges, ascending by the extended order (identity omitted)."""
        return tuple(reversed(self.minus_hedges)) + self.plus_hedges

    def hedge_class(self, name: str) -> bool:
        self.e_index(name)
        return self._class[name]

    def positive_wrt(self, modifier: str, target: str) -> bool:
        try:
            return self._positivity[(modifier, target)]
        except KeyError:
            raise AlgebraError(
                [f"positivity of {modifier!r} w.r.t. {target!r} is not declared"]
            ) from None

    def _check_value(self, v: TruthValue) -> None:
        for h in v.hedges:
            if h not in self._e_index:
                raise AlgebraError([f"undeclared hedge: {h!r}"])

    # -- operations ------------------------------------------------------

    def sign(self, v: TruthValue) -> int:
        """Whether the term sits above (+1) or below (-1) its parent term.

        Strengthening hedges keep the sign of the primary they reach;
        weakening hedges flip it once.  Deeper hedges flip again whenever
        they are negative with respect to the hedge they modify.  The three
        constants have sign 0.
        """
        if not v.is_term:
            return 0
        self._check_value(v)
        s = 1 if v.positive else -1
        inner: str | None = None
        for h in reversed(v.hedges):  # innermost application first
            if inner is None:
                if not self._class[h]:
                    s = -s
            elif not self.positive_wrt(h, inner):
                s = -s
            inner = h
        return s

    def _chain_direction(self, z: TruthValue) -> int:
        """+1 when hedge chains over ``z`` ascend with the extended order."""
        ref = self._top_hedge
        if ref is None:
            return 1
        s = self.sign(term((ref,) + z.hedges, z.positive))
        return s if self._class[ref] else -s

    def compare(self, x: TruthValue, y: TruthValue) -> int:
        """Total order on the truth domain; returns LT, EQ or GT.

        Both values must belong to this algebra.  Terms over the same
        primary are compared at the first hedge position (innermost first)
        where they differ: the shared prefix fixes a chain of sibling terms
        whose direction decides whether the extended hedge order is read
        forwards or backwards.
        """
        self._check_value(x)
        self._check_value(y)
        bx = _BAND.get(x.kind, 3 if x.positive else 1)
        by = _BAND.get(y.kind, 3 if y.positive else 1)
        if bx != by:
            return LT if bx < by else GT
        if x.kind != "term":
            return EQ
        xs = x.hedges[::-1]  # innermost first
        ys = y.hedges[::-1]
        j = 0
        while j < len(xs) and j < len(ys) and xs[j] == ys[j]:
            j += 1
        if j == len(xs) == len(ys):
            return EQ
        h = xs[j] if j < len(xs) else None
        k = ys[j] if j < len(ys) else None
        z = term(reversed(xs[:j]), x.positive)
        direction = self._chain_direction(z)
        eh, ek = self.e_index(h), self.e_index(k)
        c = (eh > ek) - (eh < ek)
        return c if direction > 0 else -c

    def negate(self, v: TruthValue) -> TruthValue:
        if v.kind == "bottom":
            return TOP
        if v.kind == "top":
            return BOTTOM
        if v.kind == "middle":
            return MIDDLE
        self._check_value(v)
        return TruthValue("term", not v.positive, v.hedges)

    def apply_hedge(self, h: str, v: TruthValue, strict: bool = False) -> TruthValue:
        """Prepend ``h`` as the new outermost hedge.

        The constants are fixed points.  A term already at the length limit
        is returned unchanged, unless ``strict`` is set, in which case the
        over-long application is an error.
        """
        if not self.has_hedge(h):
            raise AlgebraError([f"undeclared hedge: {h!r}"])
        if not v.is_term:
            return v
        self._check_value(v)
        if len(v.hedges) >= self.limit:
            if strict:
                raise AlgebraError(
                    [f"applying {h!r} exceeds the hedge-string limit {self.limit}"]
                )
            return v
        return TruthValue("term", v.positive, (h,) + v.hedges)


def build_algebra(spec: HedgeAlgebraSpec) -> HedgeAlgebra:
    """Validate a spec and derive the algebra.

    All violations are collected and reported together so a config file can
    be fixed in one pass.
    """
    problems: list[str] = []
    if spec.limit < 0:
        problems.append(f"limit must be >= 0, got {spec.limit}")
    prim = (spec.negative_primary, spec.positive_primary)
    for p in prim:
        if not p:
            problems.append("primary names must be non-empty")
        elif p in RESERVED_NAMES:
            problems.append(f"primary name {p!r} is reserved")
    if prim[0] == prim[1]:
        problems.append(f"primaries must differ, both are {prim[0]!r}")

    seen: set[str] = set()
    ranks: dict[tuple[bool, int], str] = {}
    for d in spec.hedges:
        if d.name in seen:
            problems.append(f"duplicate hedge name {d.name!r}")
        seen.add(d.name)
        if d.name in prim or d.name in RESERVED_NAMES:
            problems.append(f"hedge name {d.name!r} collides with a primary or reserved word")
        if d.rank < 1:
            problems.append(f"hedge {d.name!r} must have rank >= 1, got {d.rank}")
        key = (d.positive_class, d.rank)
        if key in ranks:
            cls = "+" if d.positive_class else "-"
            problems.append(
                f"hedges {ranks[key]!r} and {d.name!r} share rank {d.rank} in class {cls}"
            )
        ranks[key] = d.name

    for (a, b) in spec.positivity:
        for name in (a, b):
            if name not in seen:
                problems.append(f"positivity entry mentions undeclared hedge {name!r}")
    for a in seen:
        for b in seen:
            if (a, b) not in spec.positivity:
                problems.append(f"positivity of {a!r} w.r.t. {b!r} is not declared")

    if problems:
        raise AlgebraError(sorted(set(problems)))
    return HedgeAlgebra(spec)


def enumerate_domain(algebra: HedgeAlgebra) -> TruthDomain:
    """All hedge strings up to the length limit over both primaries, plus
    the three constants, sorted ascending.  Deterministic for a given spec."""
    values = [BOTTOM, MIDDLE, TOP]
    names = algebra.extended_order()
    for positive in (False, True):
        for k in range(algebra.limit + 1):
            for combo in itertools.product(names, repeat=k):
                values.append(term(combo, positive))
    values.sort(key=functools.cmp_to_key(algebra.compare))
    return TruthDomain(algebra, values)


class TruthDomain:
    """The fully enumerated, ascending truth domain of an algebra.

    Supplies index access in both directions and the textual literal form
    ("very more true", "absfalse", ...) used by program files.
    """

    def __init__(self, algebra: HedgeAlgebra, values: Iterable[TruthValue]):
        self.algebra = algebra
        self.values = tuple(values)
        self._index = {v: i for i, v in enumerate(self.values)}
        self.n = len(self.values) - 1
        self.middle_index = self._index[MIDDLE]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[TruthValue]:
        return iter(self.values)

    def __getitem__(self, i: int) -> TruthValue:
        return self.values[i]

    def index_of(self, v: TruthValue) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise ValueError(f"value not in domain: {self.literal_of_value(v)}") from None

    # Boundary indices used by the inverse-mapping clamps.
    @property
    def least_positive_term(self) -> int:
        return self.middle_index + 1

    @property
    def greatest_positive_term(self) -> int:
        return self.n - 1

    @property
    def least_negative_term(self) -> int:
        return 1

    @property
    def greatest_negative_term(self) -> int:
        return self.middle_index - 1

    def literal(self, i: int) -> str:
        return self.literal_of_value(self.values[i])

    def literal_of_value(self, v: TruthValue) -> str:
        if v.kind == "bottom":
            return BOTTOM_NAME
        if v.kind == "middle":
            return MIDDLE_NAME
        if v.kind == "top":
            return TOP_NAME
        alg = self.algebra
        primary = alg.positive_primary if v.positive else alg.negative_primary
        return " ".join(v.hedges + (primary,))

    def parse_literal(self, text: str) -> int:
        """Resolve a truth literal to its domain index.

        A literal is either one of the three constant names or hedge words
        followed by a primary name.  Unknown words and strings longer than
        the limit are rejected.
        """
        words = text.split()
        if not words:
            raise ValueError("empty truth literal")
        if len(words) == 1 and words[0] in RESERVED_NAMES:
            return {BOTTOM_NAME: 0, MIDDLE_NAME: self.middle_index, TOP_NAME: self.n}[words[0]]
        alg = self.algebra
        *hedges, primary = words
        if primary == alg.positive_primary:
            positive = True
        elif primary == alg.negative_primary:
            positive = False
        else:
            raise ValueError(f"truth literal must end in a primary name, got {text!r}")
        for h in hedges:
            if not alg.has_hedge(h):
                raise ValueError(f"unknown hedge {h!r} in truth literal {text!r}")
        return self.index_of(term(hedges, positive))


# -- algebra config files -------------------------------------------------
#
# Line-oriented text, one declaration per line, % starts a comment:
#   primary: <negative>, <positive>
#   hedge: <name> class=<+|-> rank=<int>
#   positive: <modifier> -> <target>, <target>, ...
#   negative: <modifier> -> <target>, ...
#   limit: <int>
#   inverse: <hedge> <truth literal> -> <truth literal>     (optional override)


@dataclass(frozen=True)
class InverseOverride:
    hedge: str
    source: str  # truth literal
    target: str
    line: int


def parse_algebra_config(text: str) -> tuple[HedgeAlgebraSpec, tuple[InverseOverride, ...]]:
    problems: list[str] = []
    primaries: tuple[str, str] | None = None
    hedges: list[HedgeDecl] = []
    positivity: dict[tuple[str, str], bool] = {}
    pos_lines: dict[tuple[str, str], int] = {}
    limit: int | None = None
    overrides: list[InverseOverride] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if not sep:
            problems.append(f"line {lineno}: expected '<key>: ...', got {raw.strip()!r}")
            continue
        if key == "primary":
            names = [p.strip() for p in rest.split(",")]
            if len(names) != 2 or not all(names):
                problems.append(f"line {lineno}: expected 'primary: <negative>, <positive>'")
            elif primaries is not None:
                problems.append(f"line {lineno}: duplicate primary declaration")
            else:
                primaries = (names[0], names[1])
        elif key == "hedge":
            parts = rest.split()
            opts = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
            if len(parts) < 3 or set(opts) != {"class", "rank"} or opts["class"] not in "+-":
                problems.append(
                    f"line {lineno}: expected 'hedge: <name> class=<+|-> rank=<int>'"
                )
                continue
            try:
                rank = int(opts["rank"])
            except ValueError:
                problems.append(f"line {lineno}: rank must be an integer")
                continue
            hedges.append(HedgeDecl(parts[0], opts["class"] == "+", rank))
        elif key in ("positive", "negative"):
            head, arrow, targets = rest.partition("->")
            if not arrow:
                problems.append(f"line {lineno}: expected '{key}: <hedge> -> <list>'")
                continue
            modifier = head.strip()
            flag = key == "positive"
            for target in (t.strip() for t in targets.split(",")):
                if not target:
                    problems.append(f"line {lineno}: empty target in {key} list")
                    continue
                pair = (modifier, target)
                if pair in positivity and positivity[pair] != flag:
                    problems.append(
                        f"line {lineno}: {modifier!r} w.r.t. {target!r} already declared "
                        f"{'positive' if positivity[pair] else 'negative'} "
                        f"on line {pos_lines[pair]}"
                    )
                positivity[pair] = flag
                pos_lines.setdefault(pair, lineno)
        elif key == "limit":
            try:
                limit = int(rest)
            except ValueError:
                problems.append(f"line {lineno}: limit must be an integer")
        elif key == "inverse":
            parts = rest.split(None, 1)
            src, arrow, dst = (parts[1] if len(parts) > 1 else "").partition("->")
            if len(parts) < 2 or not arrow:
                problems.append(
                    f"line {lineno}: expected 'inverse: <hedge> <literal> -> <literal>'"
                )
                continue
            overrides.append(InverseOverride(parts[0], src.strip(), dst.strip(), lineno))
        else:
            problems.append(f"line {lineno}: unknown declaration {key!r}")

    if primaries is None:
        problems.append("missing 'primary:' declaration")
    if limit is None:
        problems.append("missing 'limit:' declaration")
    if problems:
        raise AlgebraError(problems)
    assert primaries is not None and limit is not None
    spec = HedgeAlgebraSpec(primaries[0], primaries[1], tuple(hedges), positivity, limit)
    return spec, tuple(overrides)


def load_algebra_config(text: str):
    """Parse, validate and enumerate in one go.

    Returns ``(algebra, domain, overrides)``; the overrides still carry raw
    literals and are resolved by the inverse-table builder.
    """
    spec, overrides = parse_algebra_config(text)
    algebra = build_algebra(spec)
    return algebra, enumerate_domain(algebra), overrides


# Default algebra: two strengthening and two weakening hedges over
# false < true, hedge strings capped at two words.
DEFAULT_ALGEBRA_CONFIG = """\
% Default linguistic truth algebra over false < true.
% "very" and "more" strengthen a term, "probably" and "little" weaken it.
primary: false, true
hedge: very class=+ rank=2
hedge: more class=+ rank=1
hedge: probably class=- rank=1
hedge: little class=- rank=2
positive: very -> very, more, little
negative: very -> probably
positive: more -> very, more, little
negative: more -> probably
positive: probably -> probably
negative: probably -> very, more, little
positive: little -> probably
negative: little -> very, more, little
limit: 2
"""
