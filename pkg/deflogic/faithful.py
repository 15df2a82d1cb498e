"""
Faithfulness checks between theories, strongest extensions, and extension
counting through minimal processes.
"""
import dataclasses
import functools
import logging
from typing import Iterable
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple
from typing import Union

from .exc import AlphabetError
from .formula import conj
from .formula import entails
from .formula import equivalent
from .sat import project_models
from .semantics import DefaultTheory
from .semantics import Extension
from .semantics import Process
from .semantics import Semantics
from .semantics import cons_of
from .semantics import extensions
from .semantics import generator
from .semantics import selected_witnesses
from .utils import counters

log = logging.getLogger(__name__)


@functools.total_ordering
@dataclasses.dataclass(frozen=True)
class ProcessOrder:
    """Shorter processes first, then lexicographic on default indices"""

    process: Process

    def key(self):
        seq = tuple(self.process)
        return (len(seq), seq)

    def __lt__(self, other: "ProcessOrder"):
        return self.key() < other.key()


@dataclasses.dataclass
class FaithfulReport:
    faithful: bool
    bijective: bool
    matching: List[Tuple[int, List[int]]]
    reverse_matching: List[Tuple[int, List[int]]]
    unmatched_source: List[int]
    unmatched_target: List[int]
    alphabet: Tuple[str, ...] = ()

    def to_json(self):
        return {
            "faithful": self.faithful,
            "bijective": self.bijective,
            "alphabet": list(self.alphabet),
            "matching": [[i, list(js)] for i, js in self.matching],
            "reverse_matching": [[j, list(is_)] for j, is_ in self.reverse_matching],
            "unmatched_source": list(self.unmatched_source),
            "unmatched_target": list(self.unmatched_target),
        }


class ExtensionCount(NamedTuple):
    count: int
    geq_k: bool


def strongest_extensions(
    theory: DefaultTheory, sem: Union[str, Semantics]
) -> List[Extension]:
    """Extensions not entailed by any other (non-equivalent) extension"""
    exts = extensions(theory, sem)
    result = []
    for e in exts:
        dominated = any(
            other is not e
            and entails(other.generator, e.formula)
            and not equivalent(other.formula, e.formula)
            for other in exts
        )
        if not dominated:
            result.append(e)
    return result


def _theory_of(value) -> Optional[DefaultTheory]:
    # accepts a DefaultTheory or a TranslationResult (None stands for bottom)
    if value is None or isinstance(value, DefaultTheory):
        return value
    return value.theory


def _extensions_of(value, sem) -> List[Extension]:
    theory = _theory_of(value)
    if theory is None:
        return []
    return extensions(theory, sem)


def _signature(ext: Extension, alphabet: Tuple[str, ...]):
    # the projected models over the alphabet; equal signatures are exactly
    # var-equivalence over that alphabet
    return project_models(ext.generator, alphabet)


def check_faithful(
    src,
    src_sem: Union[str, Semantics],
    tgt,
    tgt_sem: Union[str, Semantics],
    alphabet: Optional[Iterable[str]] = None,
) -> FaithfulReport:
    source_theory = _theory_of(src)
    assert source_theory is not None, "source of a faithfulness check must exist"
    if alphabet is None:
        alphabet = source_theory.vars
    alphabet = tuple(dict.fromkeys(alphabet))
    extra = set(alphabet) - set(source_theory.vars)
    if extra:
        raise AlphabetError("faithfulness alphabet", extra)

    source = _extensions_of(source_theory, src_sem)
    target = _extensions_of(tgt, tgt_sem)
    projection = tuple(sorted(alphabet))
    source_sigs = [_signature(e, projection) for e in source]
    target_sigs = [_signature(e, projection) for e in target]
    counters["faithful"]["pairs"] += len(source) * len(target)

    matching = [
        (i, [j for j, t in enumerate(target_sigs) if t == s])
        for i, s in enumerate(source_sigs)
    ]
    reverse = [
        (j, [i for i, s in enumerate(source_sigs) if s == t])
        for j, t in enumerate(target_sigs)
    ]
    unmatched_source = [i for i, js in matching if not js]
    unmatched_target = [j for j, is_ in reverse if not is_]
    faithful = not unmatched_source and not unmatched_target
    bijective = (
        faithful
        and all(len(js) == 1 for _, js in matching)
        and all(len(is_) == 1 for _, is_ in reverse)
    )
    log.debug(
        "%s -> %s: %d vs %d extensions, faithful=%s bijective=%s",
        src_sem,
        tgt_sem,
        len(source),
        len(target),
        faithful,
        bijective,
    )
    return FaithfulReport(
        faithful,
        bijective,
        matching,
        reverse,
        unmatched_source,
        unmatched_target,
        alphabet,
    )


def minimal_processes(
    theory: DefaultTheory, sem: Union[str, Semantics]
) -> List[Process]:
    """
    Selected processes that no smaller selected process (in ProcessOrder)
    matches with an equivalent extension.
    """
    kept: List[Process] = []
    kept_formulas = []
    kept_cons = set()
    # processes that are not witnesses share a set with a smaller witness
    for process in sorted(selected_witnesses(theory, sem), key=ProcessOrder):
        cons_key = frozenset(cons_of(theory, process))
        if cons_key in kept_cons:
            continue
        formula = conj(*generator(theory, process))
        if any(equivalent(formula, f) for f in kept_formulas):
            continue
        kept.append(process)
        kept_formulas.append(formula)
        kept_cons.add(cons_key)
    return kept


def count_extensions(
    theory: DefaultTheory, sem: Union[str, Semantics], k: int = 1
) -> ExtensionCount:
    count = len(minimal_processes(theory, sem))
    counters["faithful"]["counted"] += count
    return ExtensionCount(count, count >= k)
