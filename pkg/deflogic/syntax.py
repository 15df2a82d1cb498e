"""
Concrete syntax for formulas, default theories and two-level QBFs.

Formulas::

    !a   a & b   a | b   a -> b   a <-> b   true   false   ( ... )

with precedence ``!`` > ``&`` > ``|`` > ``->`` > ``<->``; ``->`` and ``<->``
associate to the right, and a chain of ``&`` (or ``|``) at one level is a
single n-ary node.

Theory files are line oriented, ``#`` starts a comment::

    vars a b c              # optional, declares the alphabet
    w a -> b                # background formula, any number
    d1: a : b / c           # default prec : just / cons
    d2: : !a / !a           # empty prec / just mean true

QBFs::

    free z . exists x . forall y . z -> (x | y)

``vars`` and ``w`` at the start of a theory line, and ``free``, ``exists``
and ``forall`` in front of a QBF matrix, are keywords; elsewhere they are
ordinary atom names.
"""
import dataclasses
import functools
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from lark import Lark
from lark import Token
from lark import Transformer
from lark.exceptions import UnexpectedCharacters
from lark.exceptions import UnexpectedInput
from lark.exceptions import UnexpectedToken
from lark.lexer import PatternStr

from .exc import DuplicateVariable
from .exc import InconsistentBackground
from .exc import ParseError
from .exc import UndeclaredAtom
from .formula import FALSE
from .formula import TRUE
from .formula import And
from .formula import Atom
from .formula import Const
from .formula import Formula
from .formula import Iff
from .formula import Implies
from .formula import Not
from .formula import Or
from .formula import is_consistent
from .qbf import Qbf2
from .semantics import Default
from .semantics import DefaultTheory
from .semantics import infer_vars

FORMULA_GRAMMAR = r"""
    ?formula: iff
    ?iff: implies ("<->" implies)*
    ?implies: disj ("->" disj)*
    ?disj: conj ("|" conj)*
    ?conj: unary ("&" unary)*
    ?unary: primary
          | neg
    neg: "!" unary
    ?primary: atom
            | "(" formula ")"
    atom: NAME

    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    COMMENT: /#[^\r\n]*/
    %ignore COMMENT
"""

EXPRESSION_GRAMMAR = (
    FORMULA_GRAMMAR
    + r"""
    qbf: [free] [exists] [forall] formula
    free: FREE NAME* "."
    exists: EXISTS NAME* "."
    forall: FORALL NAME* "."

    FREE: "free"
    EXISTS: "exists"
    FORALL: "forall"

    %import common.WS
    %ignore WS
"""
)

THEORY_GRAMMAR = (
    FORMULA_GRAMMAR
    + r"""
    theory: (_line? _NL)*
    _line: vars
         | background
         | default
    vars: VARS NAME*
    background: W formula
    default: NAME ":" [formula] ":" [formula] "/" formula

    VARS: "vars"
    W: "w"
    _NL: /\r?\n/

    %import common.WS_INLINE
    %ignore WS_INLINE
"""
)


@functools.lru_cache(None)
def _expression_parser() -> Lark:
    return Lark(
        EXPRESSION_GRAMMAR,
        start=["formula", "qbf"],
        parser="lalr",
        maybe_placeholders=True,
    )


@functools.lru_cache(None)
def _theory_parser() -> Lark:
    return Lark(
        THEORY_GRAMMAR, start="theory", parser="lalr", maybe_placeholders=True
    )


def _describe(parser: Lark, terminal: str) -> str:
    if terminal == "$END":
        return "end of input"
    if terminal == "_NL":
        return "end of line"
    if terminal == "NAME":
        return "a name"
    try:
        pattern = parser.get_terminal(terminal).pattern
    except KeyError:
        return terminal
    return repr(pattern.value) if isinstance(pattern, PatternStr) else terminal


def _syntax_error(
    parser: Lark, e: UnexpectedInput, path: Optional[str] = None
) -> ParseError:
    if isinstance(e, UnexpectedCharacters):
        msg = f"unexpected character {e.char!r}"
    elif isinstance(e, UnexpectedToken):
        token = e.token
        if token.type in ("$END", "_NL"):
            msg = f"unexpected {_describe(parser, token.type)}"
        else:
            msg = f"unexpected {str(token)!r}"
        expected = sorted({_describe(parser, name) for name in e.expected})
        if expected:
            msg += ", expected " + " or ".join(expected)
    else:
        msg = "unexpected end of input"
    return ParseError(msg, e.line, e.column, path)


def _parse(parser: Lark, text: str, start: str, path: Optional[str] = None):
    try:
        return parser.parse(text, start=start)
    except UnexpectedInput as e:
        raise _syntax_error(parser, e, path) from None


class FormulaBuilder(Transformer):
    """Parse tree to Formula; remembers where every atom first occurs"""

    def __init__(self):
        super().__init__()
        self.locations: Dict[str, Tuple[int, int]] = dict()

    def atom(self, children):
        (token,) = children
        if token == "true":
            return TRUE
        if token == "false":
            return FALSE
        self.locations.setdefault(str(token), (token.line, token.column))
        return Atom(str(token))

    def neg(self, children):
        return Not(children[0])

    def conj(self, children):
        return And(tuple(children))

    def disj(self, children):
        return Or(tuple(children))

    def implies(self, children):
        *left, right = children
        for arg in reversed(left):
            right = Implies(arg, right)
        return right

    def iff(self, children):
        *left, right = children
        for arg in reversed(left):
            right = Iff(arg, right)
        return right


def parse_formula(text: str) -> Formula:
    tree = _parse(_expression_parser(), text, "formula")
    return FormulaBuilder().transform(tree)


# precedence of the node kinds, loosest first
PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6, Const: 6}


def _wrap(f: Formula, parenthesize: bool) -> str:
    text = render_formula(f)
    return f"({text})" if parenthesize else text


def render_formula(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, PRECEDENCE[type(f.arg)] < 5)
    if isinstance(f, And):
        return " & ".join(_wrap(a, PRECEDENCE[type(a)] <= 4) for a in f.args)
    if isinstance(f, Or):
        return " | ".join(_wrap(a, PRECEDENCE[type(a)] <= 3) for a in f.args)
    if isinstance(f, Implies):
        left = _wrap(f.left, PRECEDENCE[type(f.left)] <= 2)
        right = _wrap(f.right, PRECEDENCE[type(f.right)] < 2)
        return f"{left} -> {right}"
    left = _wrap(f.left, PRECEDENCE[type(f.left)] <= 1)
    return f"{left} <-> {render_formula(f.right)}"


# Theory files


@dataclasses.dataclass
class TheoryDocument:
    text: str
    theory: DefaultTheory
    # "vars", "w<i>" (1-based) and default labels -> (line, column)
    locations: Dict[str, Tuple[int, int]]
    path: Optional[str] = None


class TheoryBuilder(FormulaBuilder):
    """Parse tree to a list of (kind, keyword or label token, payload) lines"""

    def vars(self, children):
        keyword, *names = children
        return "vars", keyword, names

    def background(self, children):
        keyword, formula = children
        return "w", keyword, formula

    def default(self, children):
        label, prec, just, cons = children
        prec = TRUE if prec is None else prec
        just = TRUE if just is None else just
        return "default", label, Default(prec, just, cons, str(label))

    def theory(self, children):
        return children


def _where(token: Token) -> Tuple[int, int]:
    return token.line, token.column


def parse_theory(text: str, path: Optional[str] = None) -> TheoryDocument:
    source = text if text.endswith("\n") else text + "\n"
    builder = TheoryBuilder()
    lines = builder.transform(_parse(_theory_parser(), source, "theory", path))

    declared = None
    background: List[Formula] = []
    defaults: List[Default] = []
    locations: Dict[str, Tuple[int, int]] = dict()
    for kind, token, payload in lines:
        if kind == "vars":
            if declared is not None:
                raise ParseError("vars declared twice", *_where(token), path)
            declared = []
            for name in payload:
                if name in ("true", "false"):
                    raise ParseError(
                        f"invalid variable {str(name)!r}", *_where(name), path
                    )
                declared.append(str(name))
            locations["vars"] = _where(token)
        elif kind == "w":
            background.append(payload)
            locations[f"w{len(background)}"] = _where(token)
            if not is_consistent(background):
                raise InconsistentBackground(*_where(token), path)
        else:
            if payload.label in (d.label for d in defaults):
                raise ParseError(
                    f"duplicate default label {payload.label!r}", *_where(token), path
                )
            locations[payload.label] = _where(token)
            defaults.append(payload)

    if declared is not None:
        for name, (lineno, column) in builder.locations.items():
            if name not in declared:
                raise UndeclaredAtom(name, lineno, column, path)
    theory = DefaultTheory(tuple(defaults), tuple(background), declared)
    return TheoryDocument(text, theory, locations, path)


def render_default(d: Default) -> str:
    prec = "" if d.prec == TRUE else " " + render_formula(d.prec)
    just = "" if d.just == TRUE else " " + render_formula(d.just)
    return f"{d.label}:{prec} :{just} / {render_formula(d.cons)}"


def render_theory(theory: DefaultTheory) -> str:
    lines = []
    if theory.vars != infer_vars(theory.defaults, theory.background):
        lines.append(" ".join(["vars", *theory.vars]))
    lines.extend(f"w {render_formula(w)}" for w in theory.background)
    lines.extend(render_default(d) for d in theory.defaults)
    return "".join(line + "\n" for line in lines)


# QBFs

QBF_BLOCKS = ("free", "exists", "forall")


class QbfBuilder(FormulaBuilder):
    def free(self, children):
        return children[1:]

    exists = free
    forall = free

    def qbf(self, children):
        *blocks, matrix = children
        return [block or [] for block in blocks], matrix


def parse_qbf(text: str) -> Qbf2:
    builder = QbfBuilder()
    blocks, matrix = builder.transform(_parse(_expression_parser(), text, "qbf"))

    bound: Dict[str, Token] = dict()
    for block in blocks:
        for var in block:
            if var in ("true", "false") or var in QBF_BLOCKS:
                raise ParseError(f"invalid variable {str(var)!r}", *_where(var))
            if var in bound:
                raise DuplicateVariable(str(var), *_where(var))
            bound[str(var)] = var
    for name, (lineno, column) in builder.locations.items():
        if name not in bound:
            raise UndeclaredAtom(name, lineno, column)
    z_vars, x_vars, y_vars = ([str(var) for var in block] for block in blocks)
    return Qbf2(x_vars, y_vars, matrix, z_vars)


def render_qbf(q: Qbf2) -> str:
    parts = []
    if q.z_vars:
        parts.append(" ".join(["free", *q.z_vars]) + " .")
    parts.append(" ".join(["exists", *q.x_vars]) + " .")
    parts.append(" ".join(["forall", *q.y_vars]) + " .")
    parts.append(render_formula(q.matrix))
    return " ".join(parts)
