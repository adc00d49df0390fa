"""Formula trees for SDL, SCL and SUL, a CTL tree, parsers, printer and NNF.

Strategic operators carry an explicit ``dual`` flag, so negation normal form
never needs to keep a negation above a strategic node.  The surface sugar
``F``, ``G``, ``dia`` and ``box`` is expanded while parsing.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FlavorError, FormulaSyntaxError

__all__ = [
    "Flavor",
    "ANGEL",
    "DEMON",
    "Top",
    "Bottom",
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Next",
    "Until",
    "Release",
    "StratD",
    "StratA",
    "StratU",
    "Quantified",
    "Formula",
    "CtlFormula",
    "TOP",
    "BOTTOM",
    "finally_",
    "globally",
    "box",
    "dia",
    "parse_formula",
    "parse_ctl",
    "to_text",
    "to_nnf",
    "is_nnf",
    "formula_size",
    "flavor_of",
    "atoms_of",
    "atom_occurrences",
    "budgets_of",
    "next_depth",
    "is_path",
    "is_strategic",
    "is_next_fragment",
    "subformulas",
]

ANGEL = "a"
DEMON = "d"


class Flavor(str, enum.Enum):
    SDL = "sdl"
    SCL = "scl"
    SUL = "sul"

    @classmethod
    def parse(cls, value: "Flavor | str") -> "Flavor":
        if isinstance(value, Flavor):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise FlavorError(f"unknown flavor {value!r} (expected sdl, scl or sul)") from None


# -- state and path nodes --------------------------------------------------


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Next:
    arg: "Formula"


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Release:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class StratD:
    """``<d:n> path`` (or ``[d:n] path`` when ``dual``)."""

    budget: int
    path: "Formula"
    dual: bool = False


@dataclass(frozen=True)
class StratA:
    """``<a:n> path`` (or ``[a:n] path`` when ``dual``)."""

    budget: int
    path: "Formula"
    dual: bool = False


@dataclass(frozen=True)
class StratU:
    """Coalition operator of the update logic.

    ``coalition`` is a subset of ``{"a", "d"}``; the budgets are stored per
    agent, independently of how the surface syntax orders them.
    """

    coalition: frozenset[str]
    angel_budget: int
    demon_budget: int
    path: "Formula"
    dual: bool = False


@dataclass(frozen=True)
class Quantified:
    """A CTL path-quantified operator: ``quant`` in A/E, ``op`` in X/U/R/F/G."""

    quant: str
    op: str
    left: "CtlFormula"
    right: "CtlFormula | None" = None


Formula = Union[Top, Bottom, Atom, Not, And, Or, Implies, Iff, Next, Until, Release, StratD, StratA, StratU]
CtlFormula = Union[Top, Bottom, Atom, Not, And, Or, Implies, Iff, Quantified]

TOP = Top()
BOTTOM = Bottom()

_BINARY = (And, Or, Implies, Iff, Until, Release)
_STRAT = (StratD, StratA, StratU)


def finally_(f: Formula) -> Until:
    return Until(TOP, f)


def globally(f: Formula) -> Release:
    return Release(BOTTOM, f)


def box(f: Formula, flavor: Flavor | str) -> Formula:
    """The budget-0 universal next of ``flavor``."""
    flavor = Flavor.parse(flavor)
    if flavor is Flavor.SDL:
        return StratD(0, Next(f))
    if flavor is Flavor.SCL:
        return StratA(0, Next(f))
    return StratU(frozenset({ANGEL, DEMON}), 0, 0, Next(f))


def dia(f: Formula, flavor: Flavor | str) -> Formula:
    """The dual of :func:`box`."""
    b = box(f, flavor)
    return _flip(b)


def _flip(s):
    if isinstance(s, StratU):
        return StratU(s.coalition, s.angel_budget, s.demon_budget, s.path, not s.dual)
    return type(s)(s.budget, s.path, not s.dual)


def _with_path(s, path):
    if isinstance(s, StratU):
        return StratU(s.coalition, s.angel_budget, s.demon_budget, path, s.dual)
    return type(s)(s.budget, path, s.dual)


# -- traversal helpers -----------------------------------------------------


def _children(f) -> tuple:
    if isinstance(f, (Not, Next)):
        return (f.arg,)
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, _STRAT):
        return (f.path,)
    if isinstance(f, Quantified):
        return (f.left,) if f.right is None else (f.left, f.right)
    return ()


def subformulas(f) -> Iterator:
    """Pre-order traversal of every node."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(_children(g)))


def atom_occurrences(f) -> list[str]:
    return [g.name for g in subformulas(f) if isinstance(g, Atom)]


def atoms_of(f) -> frozenset[str]:
    return frozenset(atom_occurrences(f))


def budgets_of(f) -> list[tuple[str, int, int]]:
    """Every strategic node's (kind, angel/own budget, demon budget) in pre-order."""
    out = []
    for g in subformulas(f):
        if isinstance(g, StratD):
            out.append(("d", g.budget, g.budget))
        elif isinstance(g, StratA):
            out.append(("a", g.budget, g.budget))
        elif isinstance(g, StratU):
            out.append(("u", g.angel_budget, g.demon_budget))
    return out


def is_path(f) -> bool:
    if isinstance(f, (Next, Until, Release)):
        return True
    return isinstance(f, Not) and is_path(f.arg)


def is_strategic(f) -> bool:
    return isinstance(f, _STRAT)


def next_depth(f) -> int:
    """Maximal nesting of ``X`` operators."""
    if isinstance(f, Next):
        return 1 + next_depth(f.arg)
    return max((next_depth(c) for c in _children(f)), default=0)


def is_next_fragment(f) -> bool:
    """True when every strategic node wraps a (possibly negated) ``X``."""
    for g in subformulas(f):
        if isinstance(g, _STRAT):
            p = g.path
            while isinstance(p, Not):
                p = p.arg
            if not isinstance(p, Next):
                return False
        if isinstance(g, (Until, Release)):
            return False
    return True


def flavor_of(f) -> Flavor | None:
    """The logic a formula belongs to, or ``None`` when it has no strategic node."""
    kinds = set()
    for g in subformulas(f):
        if isinstance(g, StratD):
            kinds.add(Flavor.SDL)
        elif isinstance(g, StratA):
            kinds.add(Flavor.SCL)
        elif isinstance(g, StratU):
            kinds.add(Flavor.SUL)
    if len(kinds) > 1:
        names = ", ".join(sorted(k.value for k in kinds))
        raise FlavorError(f"formula mixes operators of several logics ({names})")
    return next(iter(kinds), None)


def _bits(n: int) -> int:
    return max(1, n.bit_length())


def formula_size(f) -> int:
    """Number of symbols, with every budget counted by its binary length."""
    size = 0
    for g in subformulas(f):
        if isinstance(g, (StratD, StratA)):
            size += 1 + _bits(g.budget)
        elif isinstance(g, StratU):
            size += 1 + len(g.coalition) + _bits(g.angel_budget) + _bits(g.demon_budget)
        else:
            size += 1
    return size


# -- negation normal form --------------------------------------------------


def to_nnf(f: Formula) -> Formula:
    """Push negations to atoms, expand ``->``/``<->`` and dualize strategic nodes.

    Bare path formulas are accepted too, e.g. ``!(p U q)`` becomes
    ``(!p) R (!q)``.
    """
    return _nnf(f, False)


def _nnf(f, neg: bool):
    if isinstance(f, Top):
        return BOTTOM if neg else TOP
    if isinstance(f, Bottom):
        return TOP if neg else BOTTOM
    if isinstance(f, Atom):
        return Not(f) if neg else f
    if isinstance(f, Not):
        return _nnf(f.arg, not neg)
    if isinstance(f, And):
        cls = Or if neg else And
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Or):
        cls = And if neg else Or
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Implies):
        if neg:
            return And(_nnf(f.left, False), _nnf(f.right, True))
        return Or(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if neg:
            return Or(And(_nnf(a, False), _nnf(b, True)), And(_nnf(a, True), _nnf(b, False)))
        return Or(And(_nnf(a, False), _nnf(b, False)), And(_nnf(a, True), _nnf(b, True)))
    if isinstance(f, Next):
        return Next(_nnf(f.arg, neg))
    if isinstance(f, Until):
        cls = Release if neg else Until
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Release):
        cls = Until if neg else Release
        return cls(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, _STRAT):
        s = _flip(f) if neg else f
        return _with_path(s, _nnf(f.path, neg))
    if isinstance(f, Quantified):
        raise TypeError("to_nnf expects a strategic formula, not a CTL tree")
    raise TypeError(f"not a formula: {f!r}")


def is_nnf(f) -> bool:
    for g in subformulas(f):
        if isinstance(g, (Implies, Iff)):
            return False
        if isinstance(g, Not) and not isinstance(g.arg, Atom):
            return False
    return True


# -- lexer -----------------------------------------------------------------

_RESERVED = {"X", "U", "R", "F", "G", "true", "false", "dia", "box"}
_CTL_RESERVED = {"A", "E", "AX", "EX", "AF", "EF", "AG", "EG"}
_NAT = re.compile(r"\d+\Z")
_U64 = 2**64 - 1


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    data: tuple = ()


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<coal><<[^<>]*>>|\[\[[^\[\]]*\]\])
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<single><\s*[A-Za-z_][A-Za-z0-9_]*\s*:[^<>]*>|\[\s*[A-Za-z_][A-Za-z0-9_]*\s*:[^\[\]]*\])
  | (?P<punct>[!&|()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _natural(text: str, pos: int) -> int:
    text = text.strip()
    if not _NAT.match(text):
        raise FormulaSyntaxError(f"budget {text!r} is not a natural number", pos)
    value = int(text)
    if value > _U64:
        raise FormulaSyntaxError(f"budget {value} does not fit in 64 bits", pos)
    return value


def _lex(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        s = m.group()
        if kind == "coal":
            dual = s.startswith("[[")
            inner = s[2:-2]
            if "|" not in inner:
                raise FormulaSyntaxError("coalition operator needs '|n,m' budgets", i)
            agents_txt, budgets_txt = inner.split("|", 1)
            agents = [a.strip() for a in agents_txt.split(",") if a.strip()]
            if agents_txt.strip() and len(agents) != len(agents_txt.split(",")):
                raise FormulaSyntaxError("malformed coalition", i)
            for a in agents:
                if a not in (ANGEL, DEMON):
                    raise FormulaSyntaxError(
                        f"unknown agent {a!r} in coalition (use a, d, or nothing for the empty coalition)", i
                    )
            if len(set(agents)) != len(agents):
                raise FormulaSyntaxError("agent listed twice in coalition", i)
            parts = budgets_txt.split(",")
            if len(parts) != 2:
                raise FormulaSyntaxError("coalition operator needs exactly two budgets", i)
            first, second = (_natural(p, i) for p in parts)
            coalition = frozenset(agents)
            if coalition == {DEMON}:
                angel, demon = second, first
            else:
                angel, demon = first, second
            toks.append(_Tok("strat", s, i, ("u", dual, coalition, angel, demon)))
        elif kind == "single":
            dual = s.startswith("[")
            agent, budget = s[1:-1].split(":", 1)
            agent = agent.strip()
            if agent not in (ANGEL, DEMON):
                raise FormulaSyntaxError(f"unknown agent {agent!r} (expected a or d)", i)
            toks.append(_Tok("strat", s, i, (agent, dual, _natural(budget, i))))
        elif kind != "ws":
            toks.append(_Tok(kind if kind in ("ident",) else s, s, i))
        i = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, flavor: Flavor, ctl: bool, allow_path: bool):
        self.toks = _lex(text)
        self.i = 0
        self.flavor = flavor
        self.ctl = ctl
        self.allow_path = allow_path

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        t = self.cur
        if kind is not None and t.kind != kind and t.text != kind:
            want = kind if kind != "eof" else "end of input"
            got = t.text or "end of input"
            raise FormulaSyntaxError(f"expected {want!r}, got {got!r}", t.pos)
        self.i += 1
        return t

    def parse(self):
        f = self.iff()
        self.take("eof")
        return f

    def iff(self):
        f = self.imp()
        while self.cur.kind == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.or_()
        if self.cur.kind == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def or_(self):
        f = self.and_()
        while self.cur.kind == "|":
            self.take()
            f = Or(f, self.and_())
        return f

    def and_(self):
        f = self.ur()
        while self.cur.kind == "&":
            self.take()
            f = And(f, self.ur())
        return f

    def ur(self):
        f = self.unary()
        if not self.ctl and self.cur.kind == "ident" and self.cur.text in ("U", "R"):
            op = self.take().text
            g = self.ur()
            return Until(f, g) if op == "U" else Release(f, g)
        return f

    def unary(self):
        t = self.cur
        if t.kind == "!":
            self.take()
            return Not(self.unary())
        if t.kind == "strat":
            if self.ctl:
                raise FormulaSyntaxError("strategic operators are not CTL", t.pos)
            self.take()
            return self.strat(t, self.ur())
        if t.kind == "ident":
            if self.ctl and t.text in _CTL_RESERVED:
                return self.ctl_op()
            if not self.ctl and t.text in ("X", "F", "G"):
                self.take()
                arg = self.unary()
                if t.text == "X":
                    return Next(arg)
                return finally_(arg) if t.text == "F" else globally(arg)
            if t.text in ("dia", "box"):
                self.take()
                arg = self.unary()
                if self.ctl:
                    q = "A" if t.text == "box" else "E"
                    return Quantified(q, "X", arg)
                return box(arg, self.flavor) if t.text == "box" else dia(arg, self.flavor)
        return self.primary()

    def strat(self, t: _Tok, path):
        d = t.data
        if d[0] == "u":
            _, dual, coalition, angel, demon = d
            return StratU(coalition, angel, demon, path, dual)
        agent, dual, budget = d
        cls = StratD if agent == DEMON else StratA
        return cls(budget, path, dual)

    def ctl_op(self):
        t = self.take()
        if t.text in ("A", "E"):
            self.take("(")
            left = self.iff()
            op_tok = self.cur
            if not (op_tok.kind == "ident" and op_tok.text in ("U", "R")):
                raise FormulaSyntaxError("expected U or R inside A(...)/E(...)", op_tok.pos)
            self.take()
            right = self.iff()
            self.take(")")
            return Quantified(t.text, op_tok.text, left, right)
        return Quantified(t.text[0], t.text[1], self.unary())

    def primary(self):
        t = self.cur
        if t.kind == "(":
            self.take()
            f = self.iff()
            self.take(")")
            return f
        if t.kind == "ident":
            if t.text == "true":
                self.take()
                return TOP
            if t.text == "false":
                self.take()
                return BOTTOM
            if t.text in _RESERVED or (self.ctl and t.text in _CTL_RESERVED):
                raise FormulaSyntaxError(f"unexpected keyword {t.text!r}", t.pos)
            self.take()
            return Atom(t.text)
        got = t.text or "end of input"
        raise FormulaSyntaxError(f"unexpected {got!r}", t.pos)


def _infer_flavor_from_tokens(toks: list[_Tok]) -> set[Flavor]:
    kinds = set()
    for t in toks:
        if t.kind == "strat":
            kinds.add({"u": Flavor.SUL, DEMON: Flavor.SDL, ANGEL: Flavor.SCL}[t.data[0]])
    return kinds


def _check_shape(f, allow_path: bool) -> None:
    """Path constructs may only occur directly under strategic nodes."""

    def state(g):
        if isinstance(g, (Top, Bottom, Atom)):
            return
        if isinstance(g, Not):
            if is_path(g.arg):
                raise FormulaSyntaxError("path formula used where a state formula is expected")
            state(g.arg)
        elif isinstance(g, (And, Or, Implies, Iff)):
            state(g.left)
            state(g.right)
        elif isinstance(g, _STRAT):
            path(g.path)
        elif isinstance(g, (Next, Until, Release)):
            raise FormulaSyntaxError("path operator outside a strategic context")

    def path(g):
        if isinstance(g, Not):
            path(g.arg)
        elif isinstance(g, Next):
            state(g.arg)
        elif isinstance(g, (Until, Release)):
            state(g.left)
            state(g.right)
        else:
            raise FormulaSyntaxError("a strategic operator must be followed by X, U, R, F or G")

    if allow_path and is_path(f):
        path(f)
    else:
        state(f)


def parse_formula(text: str, flavor: Flavor | str | None = None, allow_path: bool = False) -> Formula:
    """Parse a state formula.

    ``flavor`` decides what ``box``/``dia`` expand to when the formula has no
    strategic operator of its own; it defaults to SDL.  With ``allow_path`` a
    bare path formula such as ``!(p U q)`` is accepted as well.
    """
    toks = _lex(text)
    kinds = _infer_flavor_from_tokens(toks)
    if len(kinds) > 1:
        names = ", ".join(sorted(k.value for k in kinds))
        raise FlavorError(f"formula mixes operators of several logics ({names})")
    if kinds:
        inferred = next(iter(kinds))
        if flavor is not None and Flavor.parse(flavor) is not inferred:
            raise FlavorError(f"formula is {inferred.value} but {Flavor.parse(flavor).value} was requested")
        flavor = inferred
    flavor = Flavor.parse(flavor) if flavor is not None else Flavor.SDL
    p = _Parser(text, flavor, ctl=False, allow_path=allow_path)
    f = p.parse()
    _check_shape(f, allow_path)
    return f


def parse_ctl(text: str) -> CtlFormula:
    """Parse CTL: ``AX``, ``EX``, ``AF``, ``EF``, ``AG``, ``EG``, ``A(φ U ψ)``, ``E(φ R ψ)``..."""
    return _Parser(text, Flavor.SDL, ctl=True, allow_path=False).parse()


# -- printer ---------------------------------------------------------------

_LEVEL = {Iff: 1, Implies: 2, Or: 3, And: 4, Until: 5, Release: 5}
_ATOMIC = (Top, Bottom, Atom)


def _level(f) -> int:
    return _LEVEL.get(type(f), 6 if not isinstance(f, _ATOMIC) else 7)


def _strat_prefix(f) -> str:
    if isinstance(f, StratD):
        return f"[d:{f.budget}]" if f.dual else f"<d:{f.budget}>"
    if isinstance(f, StratA):
        return f"[a:{f.budget}]" if f.dual else f"<a:{f.budget}>"
    agents = ",".join(sorted(f.coalition))
    if f.coalition == {DEMON}:
        budgets = f"{f.demon_budget},{f.angel_budget}"
    else:
        budgets = f"{f.angel_budget},{f.demon_budget}"
    inner = f"{agents}|{budgets}"
    return f"[[{inner}]]" if f.dual else f"<<{inner}>>"


def to_text(f) -> str:
    """Pretty-print with minimal parentheses; the output re-parses to ``f``."""
    return _show(f)


def _wrap(f, min_level: int) -> str:
    s = _show(f)
    return f"({s})" if _level(f) < min_level else s


def _operand_ur(f) -> str:
    s = _show(f)
    return s if isinstance(f, _ATOMIC) else f"({s})"


def _show(f) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, 6)
    if isinstance(f, Next):
        return "X " + _wrap(f.arg, 6)
    if isinstance(f, Iff):
        return f"{_wrap(f.left, 1)} <-> {_wrap(f.right, 2)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, 3)} -> {_wrap(f.right, 2)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, 3)} | {_wrap(f.right, 4)}"
    if isinstance(f, And):
        return f"{_wrap(f.left, 4)} & {_wrap(f.right, 5)}"
    if isinstance(f, (Until, Release)):
        op = "U" if isinstance(f, Until) else "R"
        return f"{_operand_ur(f.left)} {op} {_operand_ur(f.right)}"
    if isinstance(f, _STRAT):
        p = f.path
        body = f"({_show(p)})" if isinstance(p, (Until, Release)) else _wrap(p, 6)
        return f"{_strat_prefix(f)} {body}"
    if isinstance(f, Quantified):
        if f.op in ("U", "R"):
            return f"{f.quant}({_show(f.left)} {f.op} {_show(f.right)})"
        return f"{f.quant}{f.op} " + _wrap(f.left, 6)
    raise TypeError(f"not a formula: {f!r}")
