#!/usr/bin/env python
"""
Random-family checks of the translations, generators and counting.

    ./benchmarks/acceptance.py                 # every suite
    ./benchmarks/acceptance.py --only jc -n 50 # one suite, 50 instances
"""
import argparse
import csv
import io
import itertools
import logging
import os
import random
import sys
from unittest.mock import patch

import tabulate

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import deflogic  # noqa: E402
from deflogic import config  # noqa: E402
from deflogic.faithful import check_faithful  # noqa: E402
from deflogic.faithful import count_extensions  # noqa: E402
from deflogic.faithful import strongest_extensions  # noqa: E402
from deflogic.formula import Atom  # noqa: E402
from deflogic.formula import And  # noqa: E402
from deflogic.formula import Implies  # noqa: E402
from deflogic.formula import Not  # noqa: E402
from deflogic.formula import atoms  # noqa: E402
from deflogic.formula import conj  # noqa: E402
from deflogic.formula import entails  # noqa: E402
from deflogic.formula import forget  # noqa: E402
from deflogic.formula import is_consistent  # noqa: E402
from deflogic.formula import var_equivalent  # noqa: E402
from deflogic.semantics import ALL_SEMANTICS  # noqa: E402
from deflogic.semantics import Semantics  # noqa: E402
from deflogic.semantics import extensions  # noqa: E402
from deflogic.semantics import is_process  # noqa: E402
from deflogic.semantics import is_successful  # noqa: E402
from deflogic.semantics import selected_processes  # noqa: E402
from deflogic.testing import random_formula  # noqa: E402
from deflogic.testing import random_qbf  # noqa: E402
from deflogic.testing import random_theories  # noqa: E402
from deflogic.testing import same_extensions  # noqa: E402
from deflogic.testing import truth_table_models  # noqa: E402
from deflogic.translate import GENERATORS  # noqa: E402
from deflogic.translate import add_known_extension  # noqa: E402
from deflogic.translate import t_cr  # noqa: E402
from deflogic.translate import t_jc  # noqa: E402
from deflogic.translate import t_rc  # noqa: E402
from deflogic.translate import t_rj  # noqa: E402
from deflogic.utils import set_log_level  # noqa: E402
from deflogic.utils import timed  # noqa: E402

log = logging.getLogger("deflogic.acceptance")

SUITES = dict()


def suite(name, default_count):
    def register(fn):
        SUITES[name] = (fn, default_count)
        return fn

    return register


def output_csv(filename, headers, row):
    assert filename
    existed = os.path.exists(filename)
    output = csv.writer(
        io.TextIOWrapper(
            open(filename, "ab", buffering=0),
            "utf-8",
            write_through=True,
        ),
        lineterminator="\n",
    )
    if not existed:
        output.writerow(headers)
    output.writerow([(f"{x:.4f}" if isinstance(x, float) else x) for x in row])


class Tally:
    def __init__(self):
        self.checked = 0
        self.failures = []

    def check(self, ok, what):
        self.checked += 1
        if not ok:
            self.failures.append(what)
            log.warning("counterexample: %s", what)


@suite("cr", 200)
def check_cr(rng, count, tally):
    for theory in random_theories(rng, count):
        target = t_cr(theory).theory
        tally.check(
            same_extensions(
                extensions(theory, Semantics.CONSTRAINED),
                extensions(target, Semantics.RATIONAL),
            ),
            str(theory),
        )


@suite("jc", 200)
def check_jc(rng, count, tally):
    for theory in random_theories(rng, count):
        report = check_faithful(
            theory,
            Semantics.JUSTIFIED,
            t_jc(theory),
            Semantics.CONSTRAINED,
            theory.vars,
        )
        tally.check(report.bijective, str(theory))


def _theories_with_extensions(rng, count, sem):
    found = []
    while len(found) < count:
        theory = random_theories(rng, 1, max_defaults=3)[0]
        if extensions(theory, sem):
            found.append(theory)
    return found


def _check_known_extension_route(tally, theory, sem, result, known, tgt_sem):
    report = check_faithful(theory, sem, result, tgt_sem, theory.vars)
    s_index = result.theory.index("s")
    produced_by_s = [
        e
        for e in extensions(result.theory, tgt_sem)
        if var_equivalent(e.formula, known, theory.vars)
        and s_index in e.witness.members()
    ]
    tally.check(
        report.bijective and len(produced_by_s) == 1,
        f"{theory} with E = {known}",
    )


@suite("rc", 100)
def check_rc(rng, count, tally):
    for theory in _theories_with_extensions(rng, count, Semantics.RATIONAL):
        for e in strongest_extensions(theory, Semantics.RATIONAL):
            result = t_rc(theory, e.formula)
            _check_known_extension_route(
                tally, theory, Semantics.RATIONAL, result, e.formula,
                Semantics.CONSTRAINED,
            )


@suite("rj", 100)
def check_rj(rng, count, tally):
    for theory in _theories_with_extensions(rng, count, Semantics.REITER):
        for e in strongest_extensions(theory, Semantics.REITER):
            result = t_rj(theory, e.formula)
            _check_known_extension_route(
                tally, theory, Semantics.REITER, result, e.formula,
                Semantics.JUSTIFIED,
            )
            composed = t_jc(result.theory)
            report = check_faithful(
                theory, Semantics.REITER, composed, Semantics.CONSTRAINED, theory.vars
            )
            tally.check(report.bijective, f"t_jc(t_rj({theory}, {e.formula}))")


@suite("add-ext", 200)
def check_add_ext(rng, count, tally):
    for theory in random_theories(rng, count):
        result = add_known_extension(theory)
        a = Atom(result.fresh.a)
        for sem in ALL_SEMANTICS:
            expected = [conj(*theory.background, a)]
            expected.extend(
                And((e.formula, Not(a))) for e in extensions(theory, sem)
            )
            tally.check(
                same_extensions(extensions(result.theory, sem), expected),
                f"{sem}: {theory}",
            )


@suite("generators", 50)
def check_generators(rng, count, tally):
    shapes = list(itertools.product(range(3), range(3), range(3)))
    for i in range(count):
        nx, ny, nz = shapes[i % len(shapes)]
        q = random_qbf(rng, nx, ny, nz)
        for generator in GENERATORS.values():
            instance = q
            if generator.name != "assignment" and q.z_vars:
                instance = q.restrict(
                    {z: rng.random() < 0.5 for z in q.z_vars}
                )
            theory = generator.fn(instance)
            expected = generator.expected(instance)
            for sem in generator.semantics:
                found = len(extensions(theory, sem))
                tally.check(
                    found == expected,
                    f"{generator.name}/{sem}: {instance} gave {found}, "
                    f"expected {expected}",
                )


@suite("counting", 200)
def check_counting(rng, count, tally):
    for theory in random_theories(rng, count):
        for sem in ALL_SEMANTICS:
            counted = count_extensions(theory, sem).count
            tally.check(
                counted == len(extensions(theory, sem)), f"{sem}: {theory}"
            )


def _processes(theory):
    indices = range(len(theory.defaults))
    for r in range(len(theory.defaults) + 1):
        for seq in itertools.permutations(indices, r):
            if is_process(theory, seq):
                yield seq


def _formula_triples(rng, count, names=("x1", "x2", "x3")):
    for _ in range(count):
        yield tuple(random_formula(rng, names, 2) for _ in range(3))


@suite("invariants", 200)
def check_invariants(rng, count, tally):
    for theory in random_theories(rng, count):
        reiter = extensions(theory, Semantics.REITER)
        for e1, e2 in itertools.permutations(reiter, 2):
            tally.check(
                not entails(e1.generator, e2.formula),
                f"reiter containment: {theory}",
            )
        for sem in (Semantics.JUSTIFIED, Semantics.CONSTRAINED):
            tally.check(bool(extensions(theory, sem)), f"{sem} empty: {theory}")
            unpruned = selected_processes(theory, sem, prune=False)
            tally.check(
                selected_processes(theory, sem, prune=True) == unpruned,
                f"{sem} pruning: {theory}",
            )
            for seq in _processes(theory):
                if not is_successful(theory, seq, sem):
                    continue
                tally.check(
                    any(p.seq[: len(seq)] == seq for p in unpruned),
                    f"{sem} fail-safety {seq}: {theory}",
                )

    a, b = Atom("a"), Atom("b")
    for A, B, C in _formula_triples(rng, max(count, 500)):
        tally.check(
            entails([A], C) == entails([Implies(a, A), Implies(b, B)], Implies(a, C)),
            f"conditioned: {A}, {B}, {C}",
        )
        tally.check(
            entails([A, B], C)
            == entails([Implies(a, A), Implies(b, B)], Implies(And((a, b)), C)),
            f"d-conditioned: {A}, {B}, {C}",
        )
        K = random_formula(rng, ("k1", "k2"), 2)
        if is_consistent([K]):
            tally.check(
                entails([A], C) == entails([K, A], C), f"noshare: {K}, {A}, {C}"
            )

    names = ("v1", "v2", "v3", "v4", "v5")
    for _ in range(count):
        f = random_formula(rng, names, 3)
        occurring = sorted(atoms(f))
        for r in range(len(occurring) + 1):
            for forgotten in itertools.combinations(occurring, r):
                rest = [n for n in occurring if n not in forgotten]
                tally.check(
                    truth_table_models([f], rest)
                    == truth_table_models([forget(f, forgotten)], rest),
                    f"forget {forgotten} from {f}",
                )


def parse_args(args=None):
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument(
        "--only", action="append", choices=sorted(SUITES), help="suites to run"
    )
    parser.add_argument(
        "--count", "-n", type=int, help="instances per suite (default per suite)"
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", help="append one CSV row per suite here")
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="enable verbose debug printouts"
    )
    return parser.parse_args(args)


def main(args=None):
    args = parse_args(args)
    set_log_level(logging.DEBUG if args.verbose else logging.WARNING)
    rows = []
    failed = False
    with patch.object(config, "max_defaults", 12):
        for name in args.only or sorted(SUITES):
            fn, default_count = SUITES[name]
            deflogic.reset()
            tally = Tally()
            with timed() as timer:
                fn(random.Random(args.seed), args.count or default_count, tally)
            seconds = timer.elapsed_ms / 1000.0
            rows.append([name, tally.checked, len(tally.failures), seconds])
            failed = failed or bool(tally.failures)
            if args.output:
                output_csv(
                    args.output,
                    ("suite", "seed", "checked", "counterexamples", "seconds"),
                    [name, args.seed, tally.checked, len(tally.failures), seconds],
                )
    print(
        tabulate.tabulate(
            rows,
            headers=["Suite", "Checked", "Counterexamples", "Seconds"],
            floatfmt=".2f",
        )
    )
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
