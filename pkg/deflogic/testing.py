import contextlib
import itertools
import os
import unittest
from unittest.mock import patch

import deflogic

from . import config
from .formula import TRUE
from .formula import And
from .formula import Atom
from .formula import Formula
from .formula import Iff
from .formula import Implies
from .formula import Not
from .formula import Or
from .formula import atoms_of_set
from .formula import equivalent
from .formula import evaluate
from .formula import is_consistent
from .formula import to_sympy
from .qbf import Qbf2
from .semantics import Default
from .semantics import DefaultTheory
from .syntax import parse_formula
from .syntax import parse_theory
from .utils import counters

FIXTURES = os.path.join(config.base_dir, "tests", "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def theory(text: str) -> DefaultTheory:
    """Parse a theory written inline in a test"""
    return parse_theory(text).theory


def formulas(*texts):
    return [parse_formula(t) for t in texts]


def sympy_consistent(fs) -> bool:
    """Independent oracle for the SAT backend"""
    from sympy.logic import boolalg
    from sympy.logic.inference import satisfiable

    return bool(satisfiable(boolalg.And(*[to_sympy(f) for f in fs])))


def sympy_entails(fs, goal) -> bool:
    return not sympy_consistent([*fs, Not(goal)])


def truth_table_models(fs, names=None):
    """Models of fs by enumeration, projected onto names as sets of true atoms"""
    fs = list(fs)
    if names is None:
        names = sorted(atoms_of_set(fs))
    names = tuple(names)
    domain = sorted(atoms_of_set(fs) | set(names))
    result = set()
    for values in itertools.product((False, True), repeat=len(domain)):
        omega = dict(zip(domain, values))
        if all(evaluate(f, omega) for f in fs):
            result.add(frozenset(n for n in names if omega[n]))
    return result


class TestCase(unittest.TestCase):
    @classmethod
    def tearDownClass(cls):
        cls._exit_stack.close()

    @classmethod
    def setUpClass(cls):
        cls._exit_stack = contextlib.ExitStack()
        cls._exit_stack.enter_context(patch.object(config, "debug", True))
        cls._exit_stack.enter_context(patch.object(config, "max_defaults", 12))
        cls._exit_stack.enter_context(patch.object(config, "verify_strongest", True))

    def setUp(self):
        deflogic.reset()

    def tearDown(self):
        for k, v in counters.items():
            print(k, v.most_common())
        deflogic.reset()

    def assertEquivalent(self, f, g):
        if isinstance(f, str):
            f = parse_formula(f)
        if isinstance(g, str):
            g = parse_formula(g)
        self.assertTrue(equivalent(f, g), f"{f} is not equivalent to {g}")

    def assertExtensions(self, found, expected):
        """found extensions are, up to equivalence and order, the expected formulas"""
        expected = [parse_formula(e) if isinstance(e, str) else e for e in expected]
        self.assertEqual(len(found), len(expected), [str(e.formula) for e in found])
        for e in expected:
            self.assertTrue(
                any(equivalent(e, f.formula) for f in found),
                f"{e} missing from {[str(f.formula) for f in found]}",
            )


# Random families, all driven by a caller supplied random.Random

ATOM_NAMES = ("a", "b", "c", "d", "e")


def random_formula(rng, names, depth=3) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        leaf = Atom(rng.choice(names))
        return Not(leaf) if rng.random() < 0.3 else leaf
    kind = rng.choice(("not", "and", "or", "implies", "iff"))
    if kind == "not":
        return Not(random_formula(rng, names, depth - 1))
    left = random_formula(rng, names, depth - 1)
    right = random_formula(rng, names, depth - 1)
    if kind == "and":
        return And((left, right))
    if kind == "or":
        return Or((left, right))
    if kind == "implies":
        return Implies(left, right)
    return Iff(left, right)


def random_theory(
    rng, max_atoms=4, max_defaults=4, depth=3, background=0.25
) -> DefaultTheory:
    """Random theory over at most max_atoms atoms with a consistent background"""
    names = ATOM_NAMES[: rng.randint(1, max_atoms)]
    defaults = []
    for _ in range(rng.randint(1, max_defaults)):
        prec = TRUE if rng.random() < 0.4 else random_formula(rng, names, depth)
        just = TRUE if rng.random() < 0.1 else random_formula(rng, names, depth)
        cons = random_formula(rng, names, depth)
        defaults.append(Default(prec, just, cons))
    w = ()
    if rng.random() < background:
        candidate = random_formula(rng, names, depth - 1)
        if is_consistent([candidate]):
            w = (candidate,)
    return DefaultTheory(tuple(defaults), w, names)


def random_theories(rng, count, **kwargs):
    return [random_theory(rng, **kwargs) for _ in range(count)]


def random_qbf(rng, nx, ny, nz=0, depth=3) -> Qbf2:
    z = tuple(f"z{i + 1}" for i in range(nz))
    x = tuple(f"x{i + 1}" for i in range(nx))
    y = tuple(f"y{i + 1}" for i in range(ny))
    names = (*z, *x, *y)
    matrix = random_formula(rng, names, depth) if names else TRUE
    return Qbf2(x, y, matrix, z)


def same_extensions(found, expected) -> bool:
    """Equal as sets of formulas modulo logical equivalence"""
    found = [getattr(e, "formula", e) for e in found]
    expected = [getattr(e, "formula", e) for e in expected]
    if len(found) != len(expected):
        return False
    return all(any(equivalent(f, g) for g in expected) for f in found) and all(
        any(equivalent(f, g) for f in found) for g in expected
    )
