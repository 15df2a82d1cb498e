#!/usr/bin/env pytest
import random

import deflogic.testing
from deflogic.exc import DuplicateVariable
from deflogic.exc import InconsistentBackground
from deflogic.exc import ParseError
from deflogic.exc import UndeclaredAtom
from deflogic.formula import FALSE
from deflogic.formula import TRUE
from deflogic.formula import And
from deflogic.formula import Iff
from deflogic.formula import Implies
from deflogic.formula import Not
from deflogic.formula import Or
from deflogic.formula import atoms_of
from deflogic.qbf import Qbf2
from deflogic.semantics import Default
from deflogic.semantics import make_theory
from deflogic.syntax import parse_formula
from deflogic.syntax import parse_qbf
from deflogic.syntax import parse_theory
from deflogic.syntax import render_formula
from deflogic.syntax import render_qbf
from deflogic.syntax import render_theory
from deflogic.testing import fixture
from deflogic.testing import random_formula
from deflogic.testing import random_theories
from deflogic.translate import t_rc

a, b, c, p, q, r, s = atoms_of("a", "b", "c", "p", "q", "r", "s")


class FormulaSyntaxTests(deflogic.testing.TestCase):
    def test_precedence(self):
        self.assertEqual(parse_formula("a & !b -> c"), Implies(And((a, Not(b))), c))
        self.assertEqual(parse_formula("a | b & c"), Or((a, And((b, c)))))
        self.assertEqual(parse_formula("a -> b <-> c"), Iff(Implies(a, b), c))
        self.assertEqual(parse_formula("!(a | b)"), Not(Or((a, b))))

    def test_right_associative(self):
        self.assertEqual(parse_formula("a -> b -> c"), Implies(a, Implies(b, c)))
        self.assertEqual(parse_formula("a <-> b <-> c"), Iff(a, Iff(b, c)))

    def test_nary(self):
        self.assertEqual(parse_formula("a & b & c"), And((a, b, c)))
        self.assertEqual(parse_formula("a | b | c"), Or((a, b, c)))

    def test_constants(self):
        self.assertEqual(parse_formula("true"), TRUE)
        self.assertEqual(parse_formula("!false"), Not(FALSE))

    def test_primed_atoms(self):
        self.assertEqual(parse_formula("a' & __b1").args[0].name, "a'")

    def test_whitespace_and_comments(self):
        self.assertEqual(parse_formula("a &\n  (b | c)  # note"), And((a, Or((b, c)))))
        self.assertEqual(parse_formula("a<->!b"), Iff(a, Not(b)))

    def test_keywords_are_atoms_inside_formulas(self):
        w, exists = atoms_of("w", "exists")
        self.assertEqual(parse_formula("w & exists"), And((w, exists)))
        self.assertEqual(parse_formula("trueish"), atoms_of("trueish")[0])

    def test_errors(self):
        with self.assertRaisesRegex(ParseError, "^1:3: unexpected character '\\$'"):
            parse_formula("a $ b")
        with self.assertRaisesRegex(ParseError, "^1:3: unexpected end of input"):
            parse_formula("a &")
        with self.assertRaisesRegex(ParseError, "^1:3: unexpected 'b'"):
            parse_formula("a b")
        with self.assertRaisesRegex(ParseError, "expected .*'\\)'"):
            parse_formula("(a | b")

    def test_render(self):
        self.assertEqual(render_formula(parse_formula("a & !b -> c")), "a & !b -> c")
        self.assertEqual(render_formula(And((a, Or((b, c))))), "a & (b | c)")
        self.assertEqual(render_formula(Implies(Implies(a, b), c)), "(a -> b) -> c")
        self.assertEqual(render_formula(Iff(Iff(a, b), c)), "(a <-> b) <-> c")
        self.assertEqual(render_formula(Not(And((a, b)))), "!(a & b)")
        self.assertEqual(render_formula(And((TRUE, Not(FALSE)))), "true & !false")

    def test_render_parses_back(self):
        rng = random.Random(0)
        for _ in range(100):
            f = random_formula(rng, ("a", "b", "c"), 4)
            self.assertEqual(parse_formula(render_formula(f)), f)


class TheorySyntaxTests(deflogic.testing.TestCase):
    def test_default(self):
        doc = parse_theory("d: : a / !a\n")
        self.assertEqual(doc.theory.defaults, (Default(TRUE, a, Not(a), "d"),))
        self.assertEqual(doc.theory.background, ())

    def test_background(self):
        doc = parse_theory("w p & q\nd1: p : r / s\n")
        self.assertEqual(doc.theory.background, (And((p, q)),))
        self.assertEqual(doc.theory.defaults, (Default(p, r, s, "d1"),))
        self.assertEqual(doc.theory.vars, ("p", "q", "r", "s"))
        self.assertEqual(doc.locations, {"w1": (1, 1), "d1": (2, 1)})

    def test_comments_and_blank_lines(self):
        doc = parse_theory("# header\n\n  d1: : a / b   # trailing\n")
        self.assertEqual(doc.theory.defaults, (Default(TRUE, a, b, "d1"),))
        self.assertEqual(doc.locations["d1"], (3, 3))

    def test_empty_just(self):
        doc = parse_theory("d1: a : / b\n")
        self.assertEqual(doc.theory.defaults[0], Default(a, TRUE, b, "d1"))

    def test_vars(self):
        doc = parse_theory("vars a b c\nd1: : a / b\n")
        self.assertEqual(doc.theory.vars, ("a", "b", "c"))
        self.assertEqual(render_theory(doc.theory), "vars a b c\nd1: : a / b\n")

    def test_undeclared_atom(self):
        with self.assertRaises(UndeclaredAtom) as cm:
            parse_theory("vars a b\nd1: : a / c\n", "t.dt")
        self.assertEqual(cm.exception.atom, "c")
        self.assertEqual((cm.exception.line, cm.exception.column), (2, 11))
        self.assertTrue(str(cm.exception).startswith("t.dt:2:11: "))

    def test_inconsistent_background(self):
        with self.assertRaises(InconsistentBackground) as cm:
            parse_theory("w p\nw !p\n")
        self.assertEqual(cm.exception.line, 2)

    def test_errors(self):
        cases = [
            ("d1: : a / a\nd1: : b / b\n", "duplicate default label 'd1'"),
            ("x a\n", "^1:3: unexpected 'a', expected ':'"),
            ("d1: : a /\n", "^1:10: unexpected end of line"),
            ("d1: : a\n", "^1:8: unexpected end of line, expected .*'/'"),
            ("1d: : a / a\n", "^1:1: unexpected character '1'"),
            ("vars a\nvars b\n", "^2:1: vars declared twice"),
            ("vars a true\n", "^1:8: invalid variable 'true'"),
            ("w\n", "^1:2: unexpected end of line"),
            ("d1: : a & / a\n", "^1:11: unexpected '/'"),
            ("w: : a / a\n", "unexpected ':'"),
        ]
        for text, message in cases:
            with self.assertRaisesRegex(ParseError, message):
                parse_theory(text)

    def test_error_location(self):
        with self.assertRaises(ParseError) as cm:
            parse_theory("d1: : a / b\nd2: : a & / b\n")
        self.assertEqual((cm.exception.line, cm.exception.column), (2, 11))

    def test_render(self):
        t = parse_theory("d1: : a / b\nd2: : !a / b\n").theory
        self.assertEqual(render_theory(t), "d1: : a / b\nd2: : !a / b\n")
        self.assertEqual(render_theory(make_theory([], [p])), "w p\n")
        self.assertEqual(render_theory(make_theory([])), "")

    def test_render_parses_back(self):
        theories = random_theories(random.Random(1), 20)
        theories.append(t_rc(parse_theory("d1: : p / q\n").theory, q).theory)
        for t in theories:
            self.assertEqual(parse_theory(render_theory(t)).theory, t)


class QbfSyntaxTests(deflogic.testing.TestCase):
    def test_blocks(self):
        q = parse_qbf("exists x . forall y . x | y")
        self.assertEqual((q.z_vars, q.x_vars, q.y_vars), ((), ("x",), ("y",)))
        self.assertEqual(render_qbf(q), "exists x . forall y . x | y")

    def test_fixture(self):
        with open(fixture("assignment.qbf")) as fd:
            q = parse_qbf(fd.read())
        self.assertEqual(q.z_vars, ("z",))
        self.assertEqual(render_qbf(q), "free z . exists x . forall y . z -> x | y")
        self.assertEqual(parse_qbf(render_qbf(q)), q)

    def test_empty_blocks(self):
        q = parse_qbf("exists x1 x2 . x1 & x2")
        self.assertEqual(q.y_vars, ())
        self.assertEqual(parse_qbf(render_qbf(q)), q)

    def test_multiline_with_comments(self):
        q = parse_qbf("# two blocks\nexists x .\nforall y .  # matrix next\nx | !y\n")
        self.assertEqual((q.x_vars, q.y_vars), (("x",), ("y",)))

    def test_errors(self):
        with self.assertRaises(DuplicateVariable) as cm:
            parse_qbf("exists x . forall x . x")
        self.assertEqual((cm.exception.line, cm.exception.column), (1, 19))
        with self.assertRaises(UndeclaredAtom):
            parse_qbf("exists x . forall y . x | w")
        with self.assertRaisesRegex(ParseError, "^1:10: unexpected '\\('"):
            parse_qbf("exists x ( x )")
        with self.assertRaisesRegex(ParseError, "invalid variable 'forall'"):
            parse_qbf("exists x forall y . x")

    def test_duplicate_without_source_has_no_location(self):
        with self.assertRaises(DuplicateVariable) as cm:
            Qbf2(("x",), ("x",), TRUE)
        self.assertIsNone(cm.exception.line)
        self.assertEqual(
            str(cm.exception), "variable 'x' is bound by more than one block"
        )
