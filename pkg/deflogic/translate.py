"""
Theory-to-theory translations and QBF-driven theory generators.

Every translation returns a TranslationResult carrying the translated
theory together with the fresh atoms it introduced.  A result whose
``theory`` is None is the bottom theory, which has no extension.

Fresh control atoms are named ``__a``, ``__b``, ``__z<i>`` and ``__k<i>``;
alphabet copies append ``__p`` (primed alphabet) or ``__c<i>`` (i-th copy).
A numeric suffix is added whenever a name is already taken.
"""
import dataclasses
import itertools
import logging
from typing import Callable
from typing import Dict
from typing import Iterable
from typing import Optional
from typing import Tuple

from . import config
from .exc import AlphabetError
from .exc import ContractViolation
from .exc import NotStrongestExtension
from .exc import UnsupportedConstruction
from .faithful import strongest_extensions
from .formula import FALSE
from .formula import TRUE
from .formula import And
from .formula import Atom
from .formula import Formula
from .formula import Iff
from .formula import Implies
from .formula import Not
from .formula import atoms
from .formula import conj
from .formula import equivalent
from .formula import substitute_alphabet
from .qbf import Qbf2
from .semantics import Default
from .semantics import DefaultTheory
from .semantics import Semantics
from .semantics import extensions
from .utils import counters

log = logging.getLogger(__name__)


class FreshAllocator:
    """Hands out atom names and alphabet tags that avoid all taken names"""

    def __init__(self, taken: Iterable[str] = ()):
        self.taken = set(taken)

    def name(self, stem: str) -> str:
        base = config.fresh_prefix + stem
        candidate = base
        for n in itertools.count(1):
            if candidate not in self.taken:
                break
            candidate = f"{base}_{n}"
        self.taken.add(candidate)
        return candidate

    def tag(self, alphabet: Iterable[str], tag: str) -> str:
        """Suffix that turns every name of alphabet into an unused name"""
        alphabet = tuple(alphabet)
        candidate = tag
        for n in itertools.count(1):
            targets = [x + candidate for x in alphabet]
            if not any(t in self.taken for t in targets):
                break
            candidate = f"{tag}_{n}"
        self.taken.update(targets)
        return candidate


@dataclasses.dataclass(frozen=True)
class FreshVars:
    a: Optional[str] = None
    b: Optional[str] = None
    z: Tuple[str, ...] = ()
    k: Tuple[str, ...] = ()
    # tag of the primed alphabet X'
    primed: Optional[str] = None
    # tags of the indexed alphabets X_1 .. X_m
    copies: Tuple[str, ...] = ()
    alphabet: Tuple[str, ...] = ()

    def primed_map(self) -> Dict[str, str]:
        if self.primed is None:
            return {}
        return {x: x + self.primed for x in self.alphabet}

    def copy_maps(self):
        return [{x: x + tag for x in self.alphabet} for tag in self.copies]

    def atoms(self) -> Tuple[str, ...]:
        names = [n for n in (self.a, self.b) if n is not None]
        names.extend(self.z)
        names.extend(self.k)
        names.extend(self.primed_map().values())
        for mapping in self.copy_maps():
            names.extend(mapping.values())
        return tuple(names)

    def to_json(self):
        return {
            "a": self.a,
            "b": self.b,
            "z": list(self.z),
            "k": list(self.k),
            "primed": self.primed_map(),
            "copies": self.copy_maps(),
        }


@dataclasses.dataclass(frozen=True)
class TranslationResult:
    theory: Optional[DefaultTheory]
    fresh: FreshVars
    source_vars: Tuple[str, ...]
    route: str = ""

    @property
    def is_bottom(self):
        return self.theory is None

    @classmethod
    def bottom(cls, source: DefaultTheory, route: str = ""):
        return cls(None, FreshVars(alphabet=source.vars), source.vars, route)


@dataclasses.dataclass(frozen=True)
class Route:
    name: str
    fn: Callable
    # None means the route keeps whatever semantics it is used with
    source: Optional[Semantics]
    target: Optional[Semantics]
    needs_extension: bool = False


ROUTES: Dict[str, Route] = dict()


def register_route(name, source=None, target=None, needs_extension=False):
    def register(fn):
        ROUTES[name] = Route(name, fn, source, target, needs_extension)
        return fn

    return register


def _unique_label(label: str, taken: set) -> str:
    candidate = label
    for n in itertools.count(1):
        if candidate not in taken:
            break
        candidate = f"{label}_{n}"
    taken.add(candidate)
    return candidate


@register_route("cr", Semantics.CONSTRAINED, Semantics.RATIONAL)
def t_cr(theory: DefaultTheory) -> TranslationResult:
    """Make every default seminormal: a:b/c becomes a:b&c/c"""
    defaults = tuple(
        Default(d.prec, And((d.just, d.cons)), d.cons, d.label)
        for d in theory.defaults
    )
    counters["translate"]["cr"] += 1
    return TranslationResult(
        DefaultTheory(defaults, theory.background, theory.vars),
        FreshVars(alphabet=theory.vars),
        theory.vars,
        "cr",
    )


@register_route("jc", Semantics.JUSTIFIED, Semantics.CONSTRAINED)
def t_jc(theory: DefaultTheory) -> TranslationResult:
    """
    Give each justification its own copy of the alphabet, so that joint
    consistency of justifications reduces to separate consistency.
    """
    alphabet = theory.vars
    alloc = FreshAllocator(alphabet)
    tags = tuple(
        alloc.tag(alphabet, f"{config.copy_tag}{i + 1}")
        for i in range(len(theory.defaults))
    )

    def copies(f):
        return [substitute_alphabet(f, alphabet, tag) for tag in tags]

    defaults = tuple(
        Default(
            d.prec,
            substitute_alphabet(d.just, alphabet, tags[i]),
            conj(d.cons, *copies(d.cons)),
            d.label,
        )
        for i, d in enumerate(theory.defaults)
    )
    background = list(theory.background)
    for tag in tags:
        background.extend(
            substitute_alphabet(w, alphabet, tag) for w in theory.background
        )
    fresh = FreshVars(copies=tags, alphabet=alphabet)
    counters["translate"]["jc"] += 1
    return TranslationResult(
        DefaultTheory(defaults, background, (*alphabet, *fresh.atoms())),
        fresh,
        alphabet,
        "jc",
    )


def _check_known_extension(
    theory: DefaultTheory, known: Formula, sem: Semantics, verify: Optional[bool]
):
    extra = atoms(known) - set(theory.vars)
    if extra:
        raise AlphabetError("strongest extension", extra)
    if verify is None:
        verify = config.verify_strongest
    if not verify:
        return
    if not any(equivalent(known, e.formula) for e in strongest_extensions(theory, sem)):
        if any(equivalent(known, e.formula) for e in extensions(theory, sem)):
            reason = f"another {sem} extension entails it"
        else:
            reason = f"it is not equivalent to any {sem} extension"
        raise NotStrongestExtension(known, reason)


def _guard_precs(theory, a, z):
    return conj(
        *(
            Implies(Implies(a, d.prec), z_i)
            for d, z_i in zip(theory.defaults, z)
        )
    )


@register_route("rc", Semantics.RATIONAL, Semantics.CONSTRAINED, needs_extension=True)
def t_rc(
    theory: DefaultTheory,
    known: Optional[Formula] = None,
    no_extension: bool = False,
    verify: Optional[bool] = None,
) -> TranslationResult:
    """
    Rational to constrained, given a strongest rational extension ``known``.

    Consequences of the simulated process are conditioned to a and its
    justifications to b; both also appear, over the primed alphabet, among
    the justifications.  Default g closes a successful simulation and makes
    it unconditional, default s produces the known extension otherwise.
    """
    if no_extension:
        return TranslationResult.bottom(theory, "rc")
    if known is None:
        raise ContractViolation("t_rc needs a strongest rational extension")
    _check_known_extension(theory, known, Semantics.RATIONAL, verify)

    alphabet = theory.vars
    alloc = FreshAllocator(alphabet)
    primed = alloc.tag(alphabet, config.primed_tag)
    a = alloc.name("a")
    b = alloc.name("b")
    z = tuple(alloc.name(f"z{i + 1}") for i in range(len(theory.defaults)))
    A, B = Atom(a), Atom(b)
    Z = [Atom(n) for n in z]

    def prime(f):
        return substitute_alphabet(f, alphabet, primed)

    defaults = []
    for d, z_i in zip(theory.defaults, Z):
        defaults.append(
            Default(
                Implies(A, d.prec),
                And((prime(d.just), prime(d.cons))),
                And((z_i, Implies(A, d.cons), Implies(B, d.just))),
                f"e_{d.label}",
            )
        )
        defaults.append(
            Default(
                And((Implies(A, d.prec), Implies(And((A, B)), Not(d.just)))),
                TRUE,
                z_i,
                f"n_{d.label}",
            )
        )
    defaults.append(
        Default(
            _guard_precs(theory, A, Z),
            And((A, Not(known))),
            conj(A, Not(B), *Z),
            "g",
        )
    )
    defaults.append(Default(TRUE, TRUE, conj(Not(A), Not(B), known, *Z), "s"))

    background = ()
    if theory.background:
        background = (Implies(A, theory.w), prime(theory.w))
    fresh = FreshVars(a=a, b=b, z=z, primed=primed, alphabet=alphabet)
    counters["translate"]["rc"] += 1
    return TranslationResult(
        DefaultTheory(tuple(defaults), background, (*alphabet, *fresh.atoms())),
        fresh,
        alphabet,
        "rc",
    )


@register_route("rj", Semantics.REITER, Semantics.JUSTIFIED, needs_extension=True)
def t_rj(
    theory: DefaultTheory,
    known: Optional[Formula] = None,
    no_extension: bool = False,
    verify: Optional[bool] = None,
) -> TranslationResult:
    """
    Reiter to justified, given a strongest Reiter extension ``known``.

    Simulated defaults may be applied even when their justification is
    violated; default g then cannot be applied because X == X' turns the
    primed justifications into the original ones, and the known extension
    is produced by default s instead.
    """
    if no_extension:
        return TranslationResult.bottom(theory, "rj")
    if known is None:
        raise ContractViolation("t_rj needs a strongest Reiter extension")
    _check_known_extension(theory, known, Semantics.REITER, verify)

    alphabet = theory.vars
    alloc = FreshAllocator(alphabet)
    primed = alloc.tag(alphabet, config.primed_tag)
    a = alloc.name("a")
    z = tuple(alloc.name(f"z{i + 1}") for i in range(len(theory.defaults)))
    A = Atom(a)
    Z = [Atom(n) for n in z]

    def prime(f):
        return substitute_alphabet(f, alphabet, primed)

    defaults = []
    for d, z_i in zip(theory.defaults, Z):
        defaults.append(
            Default(
                Implies(A, d.prec),
                prime(d.just),
                And((z_i, Implies(A, d.cons))),
                f"e_{d.label}",
            )
        )
        defaults.append(
            Default(
                And((Implies(A, d.prec), Implies(A, Not(d.just)))),
                TRUE,
                z_i,
                f"n_{d.label}",
            )
        )
    same_alphabet = [Iff(Atom(x), Atom(x + primed)) for x in alphabet]
    defaults.append(
        Default(
            _guard_precs(theory, A, Z),
            Not(known),
            conj(A, *same_alphabet, *Z),
            "g",
        )
    )
    defaults.append(Default(TRUE, TRUE, conj(Not(A), known, *Z), "s"))

    background = ()
    if theory.background:
        background = (Implies(A, theory.w),)
    fresh = FreshVars(a=a, z=z, primed=primed, alphabet=alphabet)
    counters["translate"]["rj"] += 1
    return TranslationResult(
        DefaultTheory(tuple(defaults), background, (*alphabet, *fresh.atoms())),
        fresh,
        alphabet,
        "rj",
    )


@register_route("add-ext")
def add_known_extension(theory: DefaultTheory) -> TranslationResult:
    """Add the extension Cn(a) and guard the original defaults with !a"""
    alloc = FreshAllocator(theory.vars)
    a = alloc.name("a")
    A = Atom(a)
    labels = set(theory.labels)
    defaults = [
        Default(TRUE, A, A, _unique_label("known", labels)),
        Default(TRUE, Not(A), Not(A), _unique_label("unknown", labels)),
    ]
    defaults.extend(
        Default(And((Not(A), d.prec)), d.just, d.cons, d.label)
        for d in theory.defaults
    )
    fresh = FreshVars(a=a, alphabet=theory.vars)
    counters["translate"]["add-ext"] += 1
    return TranslationResult(
        DefaultTheory(tuple(defaults), theory.background, (*theory.vars, a)),
        fresh,
        theory.vars,
        "add-ext",
    )


def combine_with_selector(first: DefaultTheory, second: DefaultTheory):
    """
    A theory whose extensions are b & E1 for the extensions E1 of first and
    !b & E2 for the extensions E2 of second.
    """
    if first.background or second.background:
        raise UnsupportedConstruction(
            "combine_with_selector only accepts theories with an empty background"
        )
    alphabet = tuple(dict.fromkeys((*first.vars, *second.vars)))
    alloc = FreshAllocator(alphabet)
    b = alloc.name("b")
    B = Atom(b)
    defaults = [
        Default(TRUE, B, B, "select_first"),
        Default(TRUE, Not(B), Not(B), "select_second"),
    ]
    defaults.extend(
        Default(And((B, d.prec)), d.just, d.cons, f"t1_{d.label}")
        for d in first.defaults
    )
    defaults.extend(
        Default(And((Not(B), d.prec)), d.just, d.cons, f"t2_{d.label}")
        for d in second.defaults
    )
    fresh = FreshVars(b=b, alphabet=alphabet)
    counters["translate"]["combine"] += 1
    return TranslationResult(
        DefaultTheory(tuple(defaults), (), (*alphabet, b)), fresh, alphabet, "combine"
    )


def translate(
    route: str,
    theory: DefaultTheory,
    known: Optional[Formula] = None,
    no_extension: bool = False,
    verify: Optional[bool] = None,
) -> TranslationResult:
    entry = ROUTES[route]
    log.debug("translating %d defaults along %s", len(theory.defaults), route)
    if entry.needs_extension:
        return entry.fn(theory, known, no_extension=no_extension, verify=verify)
    return entry.fn(theory)


# Generators


@dataclasses.dataclass(frozen=True)
class Generator:
    name: str
    fn: Callable
    # semantics under which the expected extension count holds
    semantics: Tuple[Semantics, ...]
    expected: Callable
    # human readable derivation of the expected count
    note: Callable


GENERATORS: Dict[str, Generator] = dict()


def register_generator(name, semantics, expected, note):
    def register(fn):
        GENERATORS[name] = Generator(name, fn, tuple(semantics), expected, note)
        return fn

    return register


def expected_extensions(construction: str, q: Qbf2) -> int:
    return GENERATORS[construction].expected(q)


def _require_no_free(q: Qbf2, construction: str):
    if q.z_vars:
        raise ContractViolation(
            f"{construction} needs a QBF without free variables, got {list(q.z_vars)}"
        )


def _choice_defaults(q: Qbf2, a: Atom, guard: Formula):
    defaults = []
    for x in q.x_vars:
        X = Atom(x)
        defaults.append(Default(guard, X, Implies(a, X), f"pos_{x}"))
        defaults.append(Default(guard, Not(X), Implies(a, Not(X)), f"neg_{x}"))
    return defaults


@register_generator(
    "sigma2",
    [Semantics.RATIONAL],
    lambda q: int(q.is_valid()),
    lambda q: f"expect {int(q.is_valid())} rational extensions",
)
def gen_sigma2_rational(q: Qbf2) -> DefaultTheory:
    """One rational extension if exists X forall Y . F is valid, none otherwise"""
    _require_no_free(q, "sigma2")
    alloc = FreshAllocator(q.all_vars)
    a = alloc.name("a")
    z = [alloc.name(f"z{i + 1}") for i in range(len(q.x_vars))]
    A = Atom(a)
    Z = [Atom(n) for n in z]
    defaults = []
    for x, z_i in zip(q.x_vars, Z):
        X = Atom(x)
        defaults.append(
            Default(TRUE, And((X, z_i)), And((z_i, Implies(A, X))), f"pos_{x}")
        )
        defaults.append(
            Default(
                TRUE, And((Not(X), z_i)), And((z_i, Implies(A, Not(X)))), f"neg_{x}"
            )
        )
    defaults.append(Default(conj(*Z, Implies(A, q.matrix)), TRUE, Not(A), "close"))
    # applicable but never applied: it blocks every process that does not derive !a
    defaults.append(Default(conj(*Z), A, FALSE, "fail"))
    return DefaultTheory(tuple(defaults), (), (*q.all_vars, a, *z))


@register_generator(
    "one-or-two",
    [Semantics.RATIONAL, Semantics.CONSTRAINED],
    lambda q: 1 + int(q.is_valid()),
    lambda q: f"expect 1 + {int(q.is_valid())} = {1 + int(q.is_valid())} extensions",
)
def gen_one_or_two(q: Qbf2) -> DefaultTheory:
    """
    Extensions !a & !b, plus !a & b when exists X forall Y . F is valid
    (rational and constrained).
    """
    _require_no_free(q, "one-or-two")
    alloc = FreshAllocator(q.all_vars)
    a = alloc.name("a")
    b = alloc.name("b")
    A, B = Atom(a), Atom(b)
    defaults = _choice_defaults(q, A, TRUE)
    valid = And((Not(A), B))
    base = And((Not(A), Not(B)))
    defaults.append(Default(Implies(A, q.matrix), valid, valid, "valid"))
    defaults.append(Default(TRUE, base, base, "base"))
    return DefaultTheory(tuple(defaults), (), (*q.all_vars, a, b))


@register_generator(
    "assignment",
    [Semantics.RATIONAL, Semantics.CONSTRAINED],
    lambda q: 2 ** len(q.z_vars) + q.count_valid_assignments(),
    lambda q: (
        f"expect 2^{len(q.z_vars)} + {q.count_valid_assignments()} = "
        f"{2 ** len(q.z_vars) + q.count_valid_assignments()} extensions"
    ),
)
def gen_assignment(q: Qbf2) -> DefaultTheory:
    """
    For every assignment w of the free variables Z, w & !a & !b is an
    extension, and w & !a & b is one exactly when exists X forall Y . F|w
    is valid (rational and constrained).
    """
    alloc = FreshAllocator(q.all_vars)
    a = alloc.name("a")
    b = alloc.name("b")
    k = [alloc.name(f"k{i + 1}") for i in range(len(q.z_vars))]
    A, B = Atom(a), Atom(b)
    K = [Atom(n) for n in k]
    defaults = []
    for z, k_i in zip(q.z_vars, K):
        Z = Atom(z)
        chosen = And((Z, k_i))
        defaults.append(Default(TRUE, chosen, chosen, f"pos_{z}"))
        chosen = And((Not(Z), k_i))
        defaults.append(Default(TRUE, chosen, chosen, f"neg_{z}"))
    defaults.extend(_choice_defaults(q, A, conj(*K)))
    valid = And((Not(A), B))
    base = And((Not(A), Not(B)))
    defaults.append(Default(conj(*K, Implies(A, q.matrix)), valid, valid, "valid"))
    defaults.append(Default(conj(*K), base, base, "base"))
    return DefaultTheory(tuple(defaults), (), (*q.all_vars, a, b, *k))
