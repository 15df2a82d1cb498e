#!/usr/bin/env pytest
import contextlib
import io
import json
import os
import tempfile

import deflogic.testing
from deflogic.cli import EXIT_BOUND
from deflogic.cli import EXIT_CONTRACT
from deflogic.cli import EXIT_FAILED
from deflogic.cli import EXIT_OK
from deflogic.cli import EXIT_USAGE
from deflogic.cli import main
from deflogic.syntax import parse_theory
from deflogic.testing import fixture

NOEXT = fixture("noext.dt")
PAIR = fixture("pair.dt")
PAIR_TRANSLATED = fixture("pair_translated.dt")
ASSIGNMENT = fixture("assignment.qbf")


class CliTests(deflogic.testing.TestCase):
    def setUp(self):
        super().setUp()
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()
        super().tearDown()

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            status = main(list(argv))
        return status, stdout.getvalue(), stderr.getvalue()

    def run_json(self, *argv, expected=EXIT_OK):
        status, out, err = self.run_cli(*argv, "--json")
        self.assertEqual(status, expected, err)
        return json.loads(out)

    def write(self, name, text):
        path = os.path.join(self.tmpdir.name, name)
        with open(path, "w") as fd:
            fd.write(text)
        return path

    def test_extensions(self):
        status, out, _ = self.run_cli("extensions", NOEXT, "--sem", "reiter")
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(out.startswith("0 reiter extensions"))

        status, out, _ = self.run_cli("extensions", PAIR, "--sem", "constrained")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("1 constrained extensions", out)
        self.assertIn("Witness", out)

    def test_extensions_json(self):
        data = self.run_json("extensions", PAIR, "--sem", "reiter")
        self.assertEqual(data["semantics"], "reiter")
        self.assertEqual(
            data["extensions"], [{"formula": "b", "witness": ["d1", "d2"]}]
        )
        self.assertEqual(data["inputs"][0]["path"], PAIR)
        self.assertEqual(len(data["inputs"][0]["sha256"]), 64)
        self.assertIsNone(data["timing_ms"])
        self.assertNotIn("report", data)

    def test_double_extensions(self):
        data = self.run_json("extensions", PAIR, "--sem", "constrained", "--double")
        doubles = data["double_extensions"]
        self.assertEqual(sorted(d["justs"] for d in doubles), [["!a"], ["a"]])
        self.assertNotIn("extensions", data)

    def test_json_is_deterministic(self):
        argv = (
            "verify",
            PAIR,
            PAIR_TRANSLATED,
            "--src-sem",
            "constrained",
            "--tgt-sem",
            "reiter",
            "--json",
        )
        first = self.run_cli(*argv)
        second = self.run_cli(*argv)
        self.assertEqual(first, second)

    def test_timing(self):
        data = self.run_json("--timing", "count", PAIR, "--sem", "reiter")
        self.assertGreaterEqual(data["timing_ms"], 0.0)

    def test_invalid_utf8_is_a_parse_error(self):
        path = os.path.join(self.tmpdir.name, "bad.dt")
        with open(path, "wb") as fd:
            fd.write(b"d1: : a / b\nw \xff\xfe\n")
        status, out, err = self.run_cli("extensions", path, "--sem", "reiter")
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn(f"{path}:2:3: invalid UTF-8 at byte offset 14", err)

    def test_verbose_prints_counters(self):
        status, _, err = self.run_cli("--verbose", "count", PAIR, "--sem", "reiter")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("Category", err)
        self.assertIn("queries", err)
        self.assertIn("counted", err)

    def test_verify(self):
        argv = (
            "verify",
            PAIR,
            PAIR_TRANSLATED,
            "--src-sem",
            "constrained",
            "--tgt-sem",
            "reiter",
            "--vars",
            "a,b",
        )
        status, out, _ = self.run_cli(*argv)
        self.assertEqual(status, EXIT_OK)
        self.assertIn("faithful: True  bijective: False", out)
        status, _, _ = self.run_cli(*argv, "--bijective")
        self.assertEqual(status, EXIT_FAILED)

    def test_verify_json(self):
        data = self.run_json(
            "verify", PAIR, PAIR_TRANSLATED, "--src-sem", "constrained",
            "--tgt-sem", "reiter",
        )
        self.assertEqual(data["report"]["alphabet"], ["a", "b"])
        self.assertEqual(data["report"]["matching"], [[0, [0, 1]]])
        self.assertEqual(
            data["semantics"], {"source": "constrained", "target": "reiter"}
        )

    def test_verify_unfaithful(self):
        status, _, _ = self.run_cli(
            "verify", NOEXT, NOEXT, "--src-sem", "justified", "--tgt-sem", "reiter"
        )
        self.assertEqual(status, EXIT_FAILED)

    def test_verify_bad_alphabet(self):
        status, _, err = self.run_cli(
            "verify", PAIR, PAIR, "--src-sem", "reiter", "--tgt-sem", "reiter",
            "--vars", "a,zz",
        )
        self.assertEqual(status, EXIT_CONTRACT)
        self.assertIn("zz", err)

    def test_translate(self):
        out_path = os.path.join(self.tmpdir.name, "out.dt")
        status, _, _ = self.run_cli(
            "translate",
            PAIR,
            "--route",
            "rj",
            "--strongest-ext",
            "b",
            "--out",
            out_path,
        )
        self.assertEqual(status, EXIT_OK)
        with open(out_path) as fd:
            translated = parse_theory(fd.read()).theory
        self.assertEqual(len(translated.defaults), 6)
        self.assertIn("g", translated.labels)
        self.assertIn("s", translated.labels)

    def test_translate_prints_theory(self):
        status, out, _ = self.run_cli("translate", PAIR, "--route", "cr")
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(out.startswith("d1: : a & b / b\nd2: : !a & b / b\n"))

    def test_translate_json(self):
        data = self.run_json("translate", PAIR, "--route", "rc", "--auto-strongest")
        translation = data["translation"]
        self.assertFalse(translation["bottom"])
        self.assertEqual(translation["strongest_extension"], "b")
        self.assertEqual(translation["fresh"]["a"], "__a")
        self.assertEqual(translation["fresh"]["b"], "__b")
        self.assertEqual(
            data["semantics"], {"source": "rational", "target": "constrained"}
        )

    def test_translate_bottom(self):
        data = self.run_json("translate", NOEXT, "--route", "rj", "--auto-strongest")
        self.assertTrue(data["translation"]["bottom"])
        self.assertIsNone(data["translation"]["theory"])
        status, out, _ = self.run_cli(
            "translate", NOEXT, "--route", "rc", "--no-extension"
        )
        self.assertEqual(status, EXIT_OK)
        self.assertIn("bottom", out)

    def test_translate_needs_extension(self):
        status, _, err = self.run_cli("translate", PAIR, "--route", "rc")
        self.assertEqual(status, EXIT_CONTRACT)
        self.assertIn("--strongest-ext", err)

    def test_translate_not_strongest(self):
        argv = ("translate", PAIR, "--route", "rc", "--strongest-ext", "a")
        status, _, err = self.run_cli(*argv)
        self.assertEqual(status, EXIT_CONTRACT)
        self.assertIn("not a strongest extension", err)
        status, _, _ = self.run_cli("--no-verify", *argv)
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(deflogic.config.verify_strongest)
        status, _, _ = self.run_cli(*argv)
        self.assertEqual(status, EXIT_CONTRACT)

    def test_gen(self):
        status, out, _ = self.run_cli(
            "gen", "--construction", "assignment", "--qbf", ASSIGNMENT
        )
        self.assertEqual(status, EXIT_OK)
        self.assertIn("note: expect 2^1 + 2 = 4 extensions", out)

    def test_gen_inline(self):
        out_path = os.path.join(self.tmpdir.name, "gen.dt")
        data = self.run_json(
            "gen", "--construction", "one-or-two",
            "--qbf", "exists x . forall y . x | y", "--out", out_path,
        )
        self.assertEqual(data["generated"]["expected_extensions"], 2)
        self.assertIsNone(data["inputs"][0]["path"])
        status, out, _ = self.run_cli("count", out_path, "--sem", "rational")
        self.assertEqual(status, EXIT_OK)
        self.assertTrue(out.startswith("2 rational extensions"))

    def test_gen_unknown_construction(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main(["gen", "--construction", "nope", "--qbf", "exists x . x"])
        self.assertEqual(cm.exception.code, EXIT_USAGE)

    def test_count(self):
        data = self.run_json("count", PAIR_TRANSLATED, "--sem", "reiter")
        self.assertEqual(data["count"], {"count": 2, "geq": None, "geq_holds": None})
        status, out, _ = self.run_cli(
            "count", PAIR, "--sem", "constrained", "--geq", "5"
        )
        self.assertEqual(status, EXIT_FAILED)
        self.assertIn("at least 5: False", out)

    def test_parse_error(self):
        path = self.write("bad.dt", "d1: : a & / b\n")
        status, _, err = self.run_cli("extensions", path, "--sem", "reiter")
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn(f"{path}:1:", err)

    def test_missing_file(self):
        missing = os.path.join(self.tmpdir.name, "missing.dt")
        status, _, _ = self.run_cli("extensions", missing, "--sem", "reiter")
        self.assertEqual(status, EXIT_USAGE)

    def test_bound(self):
        status, _, err = self.run_cli(
            "--max-defaults", "1", "extensions", PAIR, "--sem", "reiter"
        )
        self.assertEqual(status, EXIT_BOUND)
        self.assertIn("--max-defaults", err)
        self.assertEqual(deflogic.config.max_defaults, 12)
