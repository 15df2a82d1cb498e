"""
Propositional formulas over named atoms.

Formulas are immutable, hashable, and compared structurally.  Semantic
questions (consistency, entailment, equivalence) are answered by the
decision procedure in ``deflogic.sat``; the wrappers at the bottom of this
module are the public entry points.

Atom sets are passed around as sets of atom names (plain strings).
"""
import dataclasses
import functools
import re
from typing import Dict
from typing import FrozenSet
from typing import Iterable
from typing import Mapping
from typing import Sequence
from typing import Tuple

from .exc import RenamingCollision

ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
RESERVED = frozenset(["true", "false"])


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)

    def __str__(self):
        from .syntax import render_formula

        return render_formula(self)

    def children(self) -> Tuple["Formula", ...]:
        return ()


@dataclasses.dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


@dataclasses.dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        assert ATOM_RE.fullmatch(self.name), f"invalid atom name {self.name!r}"
        assert self.name not in RESERVED, f"{self.name!r} is a reserved word"

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclasses.dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclasses.dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        assert len(self.args) >= 2, "And needs at least two operands"

    def children(self):
        return self.args


@dataclasses.dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        assert len(self.args) >= 2, "Or needs at least two operands"

    def children(self):
        return self.args


@dataclasses.dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclasses.dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


def atoms_of(*names: str) -> Tuple[Atom, ...]:
    return tuple(Atom(n) for n in names)


def conj(*args: Formula) -> Formula:
    """n-ary conjunction; true for no operands, the operand itself for one"""
    if len(args) == 1 and not isinstance(args[0], Formula):
        args = tuple(args[0])
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(args)


def disj(*args: Formula) -> Formula:
    if len(args) == 1 and not isinstance(args[0], Formula):
        args = tuple(args[0])
    if not args:
        return FALSE
    if len(args) == 1:
        return args[0]
    return Or(args)


def _rebuild(f: Formula, args: Sequence[Formula]) -> Formula:
    if isinstance(f, Not):
        return Not(args[0])
    if isinstance(f, And):
        return And(tuple(args))
    if isinstance(f, Or):
        return Or(tuple(args))
    if isinstance(f, Implies):
        return Implies(args[0], args[1])
    if isinstance(f, Iff):
        return Iff(args[0], args[1])
    raise AssertionError(f"unexpected node {f!r}")


@functools.lru_cache(None)
def ordered_atoms(f: Formula) -> Tuple[str, ...]:
    """Atom names in order of first occurrence (left to right)"""
    if isinstance(f, Atom):
        return (f.name,)
    seen = dict()
    for child in f.children():
        for name in ordered_atoms(child):
            seen.setdefault(name, None)
    return tuple(seen)


def atoms(f: Formula) -> FrozenSet[str]:
    return frozenset(ordered_atoms(f))


def atoms_of_set(formulas: Iterable[Formula]) -> FrozenSet[str]:
    result = set()
    for f in formulas:
        result.update(ordered_atoms(f))
    return frozenset(result)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in f.children())


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return bool(assignment[f.name])
    if isinstance(f, Not):
        return not evaluate(f.arg, assignment)
    if isinstance(f, And):
        return all(evaluate(a, assignment) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, assignment) for a in f.args)
    if isinstance(f, Implies):
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    if isinstance(f, Iff):
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    raise AssertionError(f"unexpected node {f!r}")


def rename(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Simultaneous renaming of atoms; names missing from mapping are kept"""
    if isinstance(f, Const):
        return f
    if isinstance(f, Atom):
        target = mapping.get(f.name)
        return f if target is None else Atom(target)
    return _rebuild(f, [rename(c, mapping) for c in f.children()])


def alphabet_mapping(names: Iterable[str], tag: str) -> Dict[str, str]:
    return {name: name + tag for name in names}


def substitute_alphabet(f: Formula, alphabet: Iterable[str], tag: str) -> Formula:
    """f[X/X_tag]: rename every atom of X occurring in f by appending tag"""
    alphabet = frozenset(alphabet)
    present = atoms(f)
    mapping = alphabet_mapping(alphabet & present, tag)
    outside = present - alphabet
    for source, target in sorted(mapping.items()):
        if target in outside:
            raise RenamingCollision(source, target)
    return rename(f, mapping)


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Replace atoms by formulas (no constant folding)"""
    if isinstance(f, Const):
        return f
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    return _rebuild(f, [substitute(c, mapping) for c in f.children()])


def simplify(f: Formula) -> Formula:
    """Constant folding only; formulas without constants are returned as is"""
    if isinstance(f, (Const, Atom)):
        return f
    if isinstance(f, Not):
        arg = simplify(f.arg)
        if isinstance(arg, Const):
            return FALSE if arg.value else TRUE
        return f if arg is f.arg else Not(arg)
    if isinstance(f, (And, Or)):
        absorbing = FALSE if isinstance(f, And) else TRUE
        args = []
        for a in f.args:
            a = simplify(a)
            if a == absorbing:
                return absorbing
            if isinstance(a, Const):
                continue
            args.append(a)
        if isinstance(f, And):
            return conj(*args)
        return disj(*args)
    left = simplify(f.left)
    right = simplify(f.right)
    if isinstance(f, Implies):
        if left == FALSE or right == TRUE:
            return TRUE
        if left == TRUE:
            return right
        if right == FALSE:
            return simplify(Not(left))
        return Implies(left, right)
    # Iff
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(left.value == right.value)
    if isinstance(left, Const):
        left, right = right, left
    if isinstance(right, Const):
        return left if right.value else simplify(Not(left))
    return Iff(left, right)


def restrict(f: Formula, name: str, value: bool) -> Formula:
    return simplify(substitute(f, {name: Const(value)}))


def restrict_all(f: Formula, assignment: Mapping[str, bool]) -> Formula:
    return simplify(substitute(f, {k: Const(v) for k, v in assignment.items()}))


def forget(f: Formula, names: Iterable[str]) -> Formula:
    """Existentially eliminate names from f by Shannon expansion"""
    result = f
    for name in sorted(frozenset(names) & atoms(f)):
        if name not in atoms(result):
            continue
        positive = restrict(result, name, True)
        negative = restrict(result, name, False)
        if positive == negative:
            result = positive
        else:
            result = simplify(Or((positive, negative)))
    return result


def to_sympy(f: Formula):
    import sympy
    from sympy.logic import boolalg

    if isinstance(f, Const):
        return sympy.true if f.value else sympy.false
    if isinstance(f, Atom):
        return sympy.Symbol(f.name)
    if isinstance(f, Not):
        return boolalg.Not(to_sympy(f.arg))
    if isinstance(f, And):
        return boolalg.And(*[to_sympy(a) for a in f.args])
    if isinstance(f, Or):
        return boolalg.Or(*[to_sympy(a) for a in f.args])
    if isinstance(f, Implies):
        return boolalg.Implies(to_sympy(f.left), to_sympy(f.right))
    return boolalg.Equivalent(to_sympy(f.left), to_sympy(f.right))


# Decision API.  The SAT backend imports this module, hence the local imports.


def is_consistent(formulas: Iterable[Formula]) -> bool:
    from .sat import check_consistent

    return check_consistent(formulas)


def entails(formulas: Iterable[Formula], goal: Formula) -> bool:
    return not is_consistent([*formulas, Not(goal)])


def equivalent(f: Formula, g: Formula) -> bool:
    if f == g:
        return True
    return entails([f], g) and entails([g], f)


def var_equivalent(f: Formula, g: Formula, alphabet: Iterable[str]) -> bool:
    """f and g have the same consequences over alphabet"""
    from .sat import project_models

    projection = sorted(frozenset(alphabet) & (atoms(f) | atoms(g)))
    return project_models([f], projection) == project_models([g], projection)
