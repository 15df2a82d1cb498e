#!/usr/bin/env pytest
import itertools
import random

import deflogic.testing
from deflogic.exc import AlphabetError
from deflogic.faithful import ProcessOrder
from deflogic.faithful import check_faithful
from deflogic.faithful import count_extensions
from deflogic.faithful import minimal_processes
from deflogic.faithful import strongest_extensions
from deflogic.formula import atoms_of
from deflogic.formula import entails
from deflogic.formula import equivalent
from deflogic.semantics import ALL_SEMANTICS
from deflogic.semantics import Process
from deflogic.semantics import Semantics
from deflogic.semantics import extensions
from deflogic.semantics import make_theory
from deflogic.syntax import parse_qbf
from deflogic.testing import fixture
from deflogic.testing import random_theories
from deflogic.testing import theory
from deflogic.translate import GENERATORS
from deflogic.translate import TranslationResult
from deflogic.translate import gen_assignment

REITER = Semantics.REITER
JUSTIFIED = Semantics.JUSTIFIED
RATIONAL = Semantics.RATIONAL
CONSTRAINED = Semantics.CONSTRAINED

(p,) = atoms_of("p")


def load(name):
    with open(fixture(name)) as fd:
        return theory(fd.read())


class ProcessOrderTests(deflogic.testing.TestCase):
    def test_shorter_first(self):
        self.assertLess(ProcessOrder(Process((3,))), ProcessOrder(Process((0, 1))))
        self.assertLess(ProcessOrder(Process(())), ProcessOrder(Process((0,))))

    def test_lexicographic(self):
        self.assertLess(ProcessOrder(Process((0, 2))), ProcessOrder(Process((1, 0))))
        processes = [Process(s) for s in [(1, 0), (2,), (0, 1), ()]]
        self.assertEqual(
            [q.seq for q in sorted(processes, key=ProcessOrder)],
            [(), (2,), (0, 1), (1, 0)],
        )


class FaithfulTests(deflogic.testing.TestCase):
    def test_pair_against_translation(self):
        report = check_faithful(
            load("pair.dt"), CONSTRAINED, load("pair_translated.dt"), REITER, ["a", "b"]
        )
        self.assertTrue(report.faithful)
        self.assertFalse(report.bijective)
        self.assertEqual(report.matching, [(0, [0, 1])])
        self.assertEqual(report.reverse_matching, [(0, [0]), (1, [0])])
        self.assertEqual(report.unmatched_source, [])

    def test_to_json(self):
        report = check_faithful(
            load("pair.dt"), CONSTRAINED, load("pair_translated.dt"), REITER, ["b", "a"]
        )
        self.assertEqual(
            report.to_json(),
            {
                "faithful": True,
                "bijective": False,
                "alphabet": ["b", "a"],
                "matching": [[0, [0, 1]]],
                "reverse_matching": [[0, [0]], [1, [0]]],
                "unmatched_source": [],
                "unmatched_target": [],
            },
        )

    def test_identity_is_bijective(self):
        for t in random_theories(random.Random(0), 15, max_atoms=3, max_defaults=3):
            for sem in ALL_SEMANTICS:
                report = check_faithful(t, sem, t, sem)
                self.assertTrue(report.bijective, str(t))
                self.assertEqual(report.alphabet, t.vars)

    def test_unmatched(self):
        report = check_faithful(load("noext.dt"), CONSTRAINED, load("noext.dt"), REITER)
        self.assertFalse(report.faithful)
        self.assertFalse(report.bijective)
        self.assertEqual(report.unmatched_source, [0])
        self.assertEqual(report.unmatched_target, [])

    def test_bottom_target(self):
        source = load("noext.dt")
        bottom = TranslationResult.bottom(source, "rj")
        report = check_faithful(source, REITER, bottom, CONSTRAINED)
        self.assertTrue(report.bijective)
        report = check_faithful(load("pair.dt"), REITER, None, CONSTRAINED)
        self.assertFalse(report.faithful)
        self.assertEqual(report.unmatched_source, [0])

    def test_symmetry(self):
        rng = random.Random(1)
        theories = random_theories(rng, 20, max_atoms=2, max_defaults=2)
        for s, t in zip(theories, theories[1:]):
            if s.vars != t.vars:
                continue
            for sem in (REITER, CONSTRAINED):
                forward = check_faithful(s, sem, t, sem)
                backward = check_faithful(t, sem, s, sem)
                self.assertEqual(forward.faithful, backward.faithful)
                self.assertEqual(forward.bijective, backward.bijective)

    def test_bijective_implies_faithful(self):
        rng = random.Random(2)
        theories = random_theories(rng, 20, max_atoms=2, max_defaults=2)
        for s, t in itertools.combinations(theories, 2):
            if not set(s.vars) <= set(t.vars):
                continue
            report = check_faithful(s, RATIONAL, t, RATIONAL)
            if report.bijective:
                self.assertTrue(report.faithful)

    def test_alphabet_outside_source(self):
        with self.assertRaises(AlphabetError):
            check_faithful(load("pair.dt"), REITER, load("pair.dt"), REITER, ["a", "z"])


class StrongestTests(deflogic.testing.TestCase):
    def test_reiter_all_strongest(self):
        for t in random_theories(random.Random(3), 20, max_atoms=3, max_defaults=3):
            self.assertEqual(
                len(strongest_extensions(t, REITER)), len(extensions(t, REITER))
            )

    def test_antichain(self):
        for t in random_theories(random.Random(4), 20, max_atoms=3, max_defaults=3):
            for sem in ALL_SEMANTICS:
                strongest = strongest_extensions(t, sem)
                if extensions(t, sem):
                    self.assertTrue(strongest)
                for e1, e2 in itertools.permutations(strongest, 2):
                    self.assertFalse(
                        entails(e1.generator, e2.formula)
                        and not equivalent(e1.formula, e2.formula)
                    )

    def test_nested(self):
        t = theory("d1: : p / q\nd2: : !p / q & r\n")
        self.assertExtensions(strongest_extensions(t, CONSTRAINED), ["q & r"])


class CountTests(deflogic.testing.TestCase):
    def test_noext(self):
        result = count_extensions(load("noext.dt"), REITER)
        self.assertEqual(result.count, 0)
        self.assertFalse(result.geq_k)
        self.assertEqual(count_extensions(load("noext.dt"), JUSTIFIED).count, 1)

    def test_no_defaults(self):
        for sem in ALL_SEMANTICS:
            result = count_extensions(make_theory([], [p]), sem)
            self.assertEqual(result, (1, True))

    def test_geq(self):
        t = load("pair.dt")
        self.assertEqual(count_extensions(t, CONSTRAINED, 1), (1, True))
        self.assertEqual(count_extensions(t, CONSTRAINED, 2), (1, False))
        self.assertTrue(count_extensions(load("noext.dt"), REITER, 0).geq_k)

    def test_minimal_processes(self):
        t = load("pair.dt")
        self.assertEqual(minimal_processes(t, CONSTRAINED), [Process((0,))])
        self.assertEqual(minimal_processes(t, REITER), [Process((0, 1))])

    def test_assignment(self):
        with open(fixture("assignment.qbf")) as fd:
            q = parse_qbf(fd.read())
        t = gen_assignment(q)
        for sem in GENERATORS["assignment"].semantics:
            self.assertEqual(count_extensions(t, sem).count, 4)

    def test_count_matches_extensions(self):
        for t in random_theories(random.Random(5), 25, max_atoms=3, max_defaults=3):
            for sem in ALL_SEMANTICS:
                self.assertEqual(
                    count_extensions(t, sem).count, len(extensions(t, sem)), str(t)
                )
