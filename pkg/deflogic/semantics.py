"""
Default theories, processes, and the four operational semantics.

A process is a duplicate-free sequence of default indices.  Each semantics
selects the processes that are successful and closed:

    ============  ==============  ============================
    semantics     success         closure
    ============  ==============  ============================
    reiter        local           inapplicability (local)
    justified     local           maximality
    rational      global          inapplicability (global)
    constrained   global          maximality
    ============  ==============  ============================

Success and closure only depend on the set of defaults in a process, while
the process property depends on their order.  Extensions are therefore
computed from one witness per set of defaults, namely the lexicographically
smallest process made of that set.
"""
import dataclasses
import enum
import logging
from typing import FrozenSet
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from . import config
from .exc import AlphabetError
from .exc import ContractViolation
from .exc import EnumerationBoundExceeded
from .exc import InconsistentBackground
from .exc import MalformedProcess
from .exc import contract
from .formula import Formula
from .formula import conj
from .formula import entails
from .formula import equivalent
from .formula import is_consistent
from .formula import ordered_atoms
from .utils import counters

log = logging.getLogger(__name__)


class Semantics(enum.Enum):
    REITER = "reiter"
    JUSTIFIED = "justified"
    RATIONAL = "rational"
    CONSTRAINED = "constrained"

    @property
    def global_success(self):
        return self in (Semantics.RATIONAL, Semantics.CONSTRAINED)

    @property
    def maximality(self):
        return self in (Semantics.JUSTIFIED, Semantics.CONSTRAINED)

    @classmethod
    def parse(cls, name: Union[str, "Semantics"]):
        if isinstance(name, Semantics):
            return name
        return cls(name.lower())

    def __str__(self):
        return self.value


ALL_SEMANTICS = tuple(Semantics)


@dataclasses.dataclass(frozen=True)
class Default:
    prec: Formula
    just: Formula
    cons: Formula
    label: Optional[str] = None

    def relabel(self, label):
        return dataclasses.replace(self, label=label)

    def formulas(self):
        return (self.prec, self.just, self.cons)

    def __str__(self):
        from .syntax import render_default

        return render_default(self)


def infer_vars(defaults: Iterable[Default], background: Iterable[Formula]):
    """Atoms in order of first occurrence: background first, then defaults"""
    seen = dict()
    for f in background:
        for name in ordered_atoms(f):
            seen.setdefault(name, None)
    for d in defaults:
        for f in d.formulas():
            for name in ordered_atoms(f):
                seen.setdefault(name, None)
    return tuple(seen)


@dataclasses.dataclass(frozen=True)
class DefaultTheory:
    """
    A default theory <D, W>.

    The order of ``defaults`` is the canonical default ordering.  ``vars``
    is the declared alphabet; it defaults to the occurring atoms.  Defaults
    without a label are named d1, d2, ... after their position.
    """

    defaults: Tuple[Default, ...] = ()
    background: Tuple[Formula, ...] = ()
    vars: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        defaults = tuple(
            d if d.label is not None else d.relabel(f"d{i + 1}")
            for i, d in enumerate(self.defaults)
        )
        labels = [d.label for d in defaults]
        if len(set(labels)) != len(labels):
            raise ContractViolation(f"duplicate default labels in {labels}")
        object.__setattr__(self, "defaults", defaults)
        object.__setattr__(self, "background", tuple(self.background))

        inferred = infer_vars(defaults, self.background)
        if self.vars is None:
            object.__setattr__(self, "vars", inferred)
        else:
            declared = tuple(dict.fromkeys(self.vars))
            extra = set(inferred) - set(declared)
            if extra:
                raise AlphabetError("default theory", extra)
            object.__setattr__(self, "vars", declared)

        if not is_consistent(self.background):
            raise InconsistentBackground()

    @property
    def w(self) -> Formula:
        return conj(*self.background)

    @property
    def labels(self):
        return tuple(d.label for d in self.defaults)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __str__(self):
        from .syntax import render_theory

        return render_theory(self)


@dataclasses.dataclass(frozen=True)
class Process:
    seq: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def extend(self, index: int) -> "Process":
        return Process(self.seq + (index,))

    def members(self) -> FrozenSet[int]:
        return frozenset(self.seq)

    def labels(self, theory: DefaultTheory) -> List[str]:
        return [theory.defaults[i].label for i in self.seq]


ProcessLike = Union[Process, Sequence[int]]


def _seq(process: ProcessLike) -> Tuple[int, ...]:
    if isinstance(process, Process):
        return process.seq
    return tuple(process)


@dataclasses.dataclass(frozen=True)
class Extension:
    """Cn(W ∪ cons(Π)), carried by its finite generator"""

    generator: Tuple[Formula, ...]
    witness: Process

    @property
    def formula(self) -> Formula:
        return conj(*_distinct(self.generator))


@dataclasses.dataclass(frozen=True)
class DoubleExtension:
    justs: Tuple[Formula, ...]
    generator: Tuple[Formula, ...]
    witness: Process

    @property
    def formula(self) -> Formula:
        return conj(*self.generator)

    def same_as(self, other: "DoubleExtension") -> bool:
        return frozenset(self.justs) == frozenset(other.justs) and equivalent(
            self.formula, other.formula
        )


def _check_indices(theory: DefaultTheory, seq: Tuple[int, ...]):
    for i in seq:
        if not isinstance(i, int) or not 0 <= i < len(theory.defaults):
            raise MalformedProcess(seq, f"index {i!r} out of range")


def cons_of(theory: DefaultTheory, seq: Iterable[int]) -> List[Formula]:
    return [theory.defaults[i].cons for i in seq]


def just_of(theory: DefaultTheory, seq: Iterable[int]) -> List[Formula]:
    return [theory.defaults[i].just for i in seq]


def generator(theory: DefaultTheory, process: ProcessLike) -> Tuple[Formula, ...]:
    """W ∪ cons(Π) in background-then-process order"""
    return (*theory.background, *cons_of(theory, _seq(process)))


def _distinct(formulas: Iterable[Formula]) -> Tuple[Formula, ...]:
    return tuple(dict.fromkeys(formulas))


def _is_process(theory, seq):
    if len(set(seq)) != len(seq):
        return False
    for k, i in enumerate(seq):
        if not entails(generator(theory, seq[:k]), theory.defaults[i].prec):
            return False
    return is_consistent(generator(theory, seq))


def _successful(theory, seq, sem: Semantics):
    base = generator(theory, seq)
    if sem.global_success:
        return is_consistent([*base, *just_of(theory, seq)])
    return all(is_consistent([*base, j]) for j in _distinct(just_of(theory, seq)))


def _applicable(theory, seq, index, sem: Semantics):
    d = theory.defaults[index]
    base = generator(theory, seq)
    if not entails(base, d.prec):
        return False
    if sem.maximality:
        extended = seq + (index,)
        return is_consistent([*base, d.cons]) and _successful(theory, extended, sem)
    if sem.global_success:
        return is_consistent([*base, *just_of(theory, seq), d.just])
    return is_consistent([*base, d.just])


def _closed(theory, seq, sem: Semantics):
    used = set(seq)
    return not any(
        _applicable(theory, seq, i, sem)
        for i in range(len(theory.defaults))
        if i not in used
    )


def is_process(theory: DefaultTheory, process: ProcessLike) -> bool:
    seq = _seq(process)
    _check_indices(theory, seq)
    return _is_process(theory, seq)


def _require_process(theory, seq):
    _check_indices(theory, seq)
    contract(_is_process(theory, seq), f"{list(seq)} is not a process")


def is_successful(
    theory: DefaultTheory, process: ProcessLike, sem: Union[str, Semantics]
) -> bool:
    seq = _seq(process)
    _require_process(theory, seq)
    return _successful(theory, seq, Semantics.parse(sem))


def is_applicable(
    theory: DefaultTheory,
    process: ProcessLike,
    default: Union[int, Default],
    sem: Union[str, Semantics],
) -> bool:
    seq = _seq(process)
    _check_indices(theory, seq)
    index = default if isinstance(default, int) else theory.defaults.index(default)
    _check_indices(theory, (index,))
    contract(index not in seq, f"default {index} already occurs in {list(seq)}")
    return _applicable(theory, seq, index, Semantics.parse(sem))


def is_closed(
    theory: DefaultTheory, process: ProcessLike, sem: Union[str, Semantics]
) -> bool:
    seq = _seq(process)
    _require_process(theory, seq)
    return _closed(theory, seq, Semantics.parse(sem))


def is_selected(
    theory: DefaultTheory, process: ProcessLike, sem: Union[str, Semantics]
) -> bool:
    seq = _seq(process)
    _check_indices(theory, seq)
    sem = Semantics.parse(sem)
    return (
        _is_process(theory, seq)
        and _successful(theory, seq, sem)
        and _closed(theory, seq, sem)
    )


def check_bound(theory: DefaultTheory):
    if len(theory.defaults) > config.max_defaults:
        raise EnumerationBoundExceeded(len(theory.defaults))


def _children(theory, seq, used):
    base = generator(theory, seq)
    for i, d in enumerate(theory.defaults):
        if i in used:
            continue
        if entails(base, d.prec) and is_consistent([*base, d.cons]):
            yield i


def selected_processes(
    theory: DefaultTheory, sem: Union[str, Semantics], prune: Optional[bool] = None
) -> List[Process]:
    """All selected processes in lexicographic order"""
    check_bound(theory)
    sem = Semantics.parse(sem)
    if prune is None:
        prune = config.prune_processes
    result = []

    def visit(seq):
        counters["enumerate"]["process_nodes"] += 1
        successful = _successful(theory, seq, sem)
        if successful and _closed(theory, seq, sem):
            result.append(Process(seq))
        if prune and not successful:
            return
        for i in _children(theory, seq, set(seq)):
            visit(seq + (i,))

    visit(())
    log.debug("%s: %d selected processes", sem, len(result))
    return result


def selected_witnesses(
    theory: DefaultTheory, sem: Union[str, Semantics]
) -> List[Process]:
    """
    One selected process per selected set of defaults: the smallest one in
    lexicographic order.  Results are in lexicographic order.
    """
    check_bound(theory)
    sem = Semantics.parse(sem)
    result = []
    visited = {frozenset()}

    def visit(seq, members):
        counters["enumerate"]["set_nodes"] += 1
        successful = _successful(theory, seq, sem)
        if successful and _closed(theory, seq, sem):
            result.append(Process(seq))
        if not successful:
            return
        for i in _children(theory, seq, members):
            key = members | {i}
            if key in visited:
                continue
            visited.add(key)
            visit(seq + (i,), key)

    visit((), frozenset())
    log.debug("%s: %d selected sets of defaults", sem, len(result))
    return result


def extensions(theory: DefaultTheory, sem: Union[str, Semantics]) -> List[Extension]:
    result: List[Extension] = []
    seen_cons = set()
    for process in selected_witnesses(theory, sem):
        gen = generator(theory, process)
        cons_key = frozenset(cons_of(theory, process))
        if cons_key in seen_cons:
            continue
        seen_cons.add(cons_key)
        formula = conj(*gen)
        if any(equivalent(formula, e.formula) for e in result):
            continue
        result.append(Extension(gen, process))
    counters["enumerate"]["extensions"] += len(result)
    return result


def double_extensions(
    theory: DefaultTheory, sem: Union[str, Semantics]
) -> List[DoubleExtension]:
    result: List[DoubleExtension] = []
    for process in selected_witnesses(theory, sem):
        candidate = DoubleExtension(
            _distinct(just_of(theory, process)), generator(theory, process), process
        )
        if any(candidate.same_as(e) for e in result):
            continue
        result.append(candidate)
    return result


def skeptical_entails(
    theory: DefaultTheory, sem: Union[str, Semantics], goal: Formula
) -> bool:
    """goal holds in every extension (vacuously true without extensions)"""
    return all(entails(e.generator, goal) for e in extensions(theory, sem))


def credulous_entails(
    theory: DefaultTheory, sem: Union[str, Semantics], goal: Formula
) -> bool:
    """goal holds in some extension"""
    return any(entails(e.generator, goal) for e in extensions(theory, sem))


def make_theory(defaults=(), background=(), vars=None) -> DefaultTheory:
    """DefaultTheory from (prec, just, cons[, label]) tuples or Defaults"""
    converted = []
    for d in defaults:
        if not isinstance(d, Default):
            d = Default(*d)
        converted.append(d)
    return DefaultTheory(tuple(converted), tuple(background), vars)

