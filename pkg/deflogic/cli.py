"""
Command line front end.

Exit codes: 0 success, 1 the requested property does not hold, 2 parse,
usage or I/O error, 3 enumeration bound exceeded, 4 contract violation.
"""
import argparse
import dataclasses
import json
import logging
import os
import sys
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from unittest.mock import patch

import tabulate

from . import config
from .exc import AlphabetError
from .exc import ContractViolation
from .exc import DefaultLogicError
from .exc import EnumerationBoundExceeded
from .exc import MalformedProcess
from .exc import ParseError
from .exc import RenamingCollision
from .faithful import check_faithful
from .faithful import count_extensions
from .faithful import strongest_extensions
from .semantics import Semantics
from .semantics import double_extensions
from .semantics import extensions
from .syntax import parse_formula
from .syntax import parse_qbf
from .syntax import parse_theory
from .syntax import render_formula
from .syntax import render_theory
from .translate import GENERATORS
from .translate import ROUTES
from .translate import translate
from .utils import counters_report
from .utils import file_digest
from .utils import set_log_level
from .utils import sha256_digest
from .utils import timed

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND = 3
EXIT_CONTRACT = 4

SEMANTICS = [s.value for s in Semantics]


@dataclasses.dataclass
class RunReport:
    command: List[str]
    inputs: List[Dict[str, Any]] = dataclasses.field(default_factory=list)
    semantics: Optional[Any] = None
    extensions: Optional[List[Dict[str, Any]]] = None
    double_extensions: Optional[List[Dict[str, Any]]] = None
    report: Optional[Dict[str, Any]] = None
    count: Optional[Dict[str, Any]] = None
    translation: Optional[Dict[str, Any]] = None
    generated: Optional[Dict[str, Any]] = None
    timing_ms: Optional[float] = None

    def to_json(self):
        result = {
            "command": self.command,
            "inputs": self.inputs,
            "semantics": self.semantics,
        }
        for key in (
            "extensions",
            "double_extensions",
            "report",
            "count",
            "translation",
            "generated",
        ):
            value = getattr(self, key)
            if value is not None:
                result[key] = value
        result["timing_ms"] = self.timing_ms
        return result

    def dumps(self):
        return json.dumps(self.to_json(), indent=2) + "\n"


def _read(path):
    with open(path, "rb") as fd:
        data = fd.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - data.rfind(b"\n", 0, e.start)
        raise ParseError(
            f"invalid UTF-8 at byte offset {e.start}", line, column, path
        ) from None


def _load_theory(path, report: RunReport):
    text = _read(path)
    report.inputs.append({"path": path, "sha256": file_digest(path)})
    return parse_theory(text, path).theory


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fd:
        fd.write(text)


def _labels(theory, process):
    return process.labels(theory)


def cmd_extensions(args, report: RunReport):
    theory = _load_theory(args.theory, report)
    sem = Semantics.parse(args.sem)
    report.semantics = sem.value
    rows = []
    if args.double:
        found = double_extensions(theory, sem)
        report.double_extensions = [
            {
                "justs": [render_formula(j) for j in e.justs],
                "formula": render_formula(e.formula),
                "witness": _labels(theory, e.witness),
            }
            for e in found
        ]
        for i, e in enumerate(found):
            justs = ", ".join(render_formula(j) for j in e.justs)
            witness = " ".join(_labels(theory, e.witness))
            rows.append([i, "{" + justs + "}", render_formula(e.formula), witness])
        headers = ["#", "Justifications", "Extension", "Witness"]
    else:
        found = extensions(theory, sem)
        report.extensions = [
            {
                "formula": render_formula(e.formula),
                "witness": _labels(theory, e.witness),
            }
            for e in found
        ]
        rows = [
            [i, render_formula(e.formula), " ".join(_labels(theory, e.witness))]
            for i, e in enumerate(found)
        ]
        headers = ["#", "Extension", "Witness"]
    if not args.json:
        kind = "double extensions" if args.double else "extensions"
        print(f"{len(found)} {sem} {kind}")
        if rows:
            print(tabulate.tabulate(rows, headers=headers))
    return EXIT_OK


def cmd_translate(args, report: RunReport):
    theory = _load_theory(args.theory, report)
    route = ROUTES[args.route]
    report.semantics = {
        "source": route.source.value if route.source else None,
        "target": route.target.value if route.target else None,
    }
    known = None
    no_extension = args.no_extension
    if route.needs_extension and not no_extension:
        if args.strongest_ext is not None:
            known = parse_formula(args.strongest_ext)
        elif args.auto_strongest:
            candidates = strongest_extensions(theory, route.source)
            if candidates:
                known = candidates[0].formula
            else:
                no_extension = True
        else:
            raise ContractViolation(
                f"route {route.name} needs --strongest-ext or --auto-strongest"
            )

    result = translate(route.name, theory, known, no_extension=no_extension)
    translation = {
        "route": route.name,
        "bottom": result.is_bottom,
        "strongest_extension": render_formula(known) if known is not None else None,
        "fresh": result.fresh.to_json(),
        "theory": None,
        "out": args.out,
    }
    if not result.is_bottom:
        text = render_theory(result.theory)
        translation["theory"] = text
        if args.out:
            _write(args.out, text)
    elif args.out:
        log.warning("translation is bottom, %s not written", args.out)
    report.translation = translation

    if not args.json:
        if result.is_bottom:
            print(f"bottom: the source has no {route.source} extension")
        else:
            if not args.out:
                sys.stdout.write(translation["theory"])
            fresh = [[name] for name in result.fresh.atoms()]
            print(tabulate.tabulate(fresh, headers=["Fresh atom"]))
    return EXIT_OK


def _parse_vars(value, theory):
    if value is None or value == "auto":
        return theory.vars
    return [v for v in value.replace(",", " ").split() if v]


def cmd_verify(args, report: RunReport):
    source = _load_theory(args.source, report)
    target = _load_theory(args.target, report)
    src_sem = Semantics.parse(args.src_sem)
    tgt_sem = Semantics.parse(args.tgt_sem)
    report.semantics = {"source": src_sem.value, "target": tgt_sem.value}
    result = check_faithful(
        source, src_sem, target, tgt_sem, _parse_vars(args.vars, source)
    )
    report.report = result.to_json()
    holds = result.bijective if args.bijective else result.faithful
    if not args.json:
        rows = [[i, ", ".join(map(str, js)) or "-"] for i, js in result.matching]
        print(tabulate.tabulate(rows, headers=["Source", "Matching targets"]))
        print(f"faithful: {result.faithful}  bijective: {result.bijective}")
    return EXIT_OK if holds else EXIT_FAILED


def cmd_gen(args, report: RunReport):
    if os.path.exists(args.qbf):
        text = _read(args.qbf)
        report.inputs.append({"path": args.qbf, "sha256": file_digest(args.qbf)})
    else:
        text = args.qbf
        report.inputs.append(
            {"path": None, "sha256": sha256_digest(text.encode("utf-8"))}
        )
    q = parse_qbf(text)
    generator = GENERATORS[args.construction]
    theory = generator.fn(q)
    rendered = render_theory(theory)
    if args.out:
        _write(args.out, rendered)
    report.semantics = [s.value for s in generator.semantics]
    report.generated = {
        "construction": generator.name,
        "expected_extensions": generator.expected(q),
        "note": generator.note(q),
        "theory": rendered,
        "out": args.out,
    }
    if not args.json:
        if not args.out:
            sys.stdout.write(rendered)
        print(f"note: {generator.note(q)}")
    return EXIT_OK


def cmd_count(args, report: RunReport):
    theory = _load_theory(args.theory, report)
    sem = Semantics.parse(args.sem)
    report.semantics = sem.value
    k = args.geq if args.geq is not None else 1
    result = count_extensions(theory, sem, k)
    report.count = {
        "count": result.count,
        "geq": args.geq,
        "geq_holds": result.geq_k if args.geq is not None else None,
    }
    if not args.json:
        print(f"{result.count} {sem} extensions")
        if args.geq is not None:
            print(f"at least {args.geq}: {result.geq_k}")
    if args.geq is not None and not result.geq_k:
        return EXIT_FAILED
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deflogic",
        description="Processes, extensions and translations of default theories",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    parser.add_argument(
        "--max-defaults",
        type=int,
        help=f"enumeration bound (default {config.max_defaults})",
    )
    parser.add_argument(
        "--no-verify",
        action="store_true",
        help="do not check that a given extension is a strongest one",
    )
    parser.add_argument(
        "--timing", action="store_true", help="report wall time in the JSON output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extensions", help="list extensions of a theory")
    p.add_argument("theory")
    p.add_argument("--sem", choices=SEMANTICS, required=True)
    p.add_argument("--double", action="store_true", help="list double extensions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("translate", help="translate a theory")
    p.add_argument("theory")
    p.add_argument("--route", choices=sorted(ROUTES), required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--strongest-ext", help="a strongest extension, as a formula")
    group.add_argument(
        "--auto-strongest",
        action="store_true",
        help="enumerate the extensions and use the first strongest one",
    )
    group.add_argument(
        "--no-extension",
        action="store_true",
        help="the source has no extension; the result is bottom",
    )
    p.add_argument("--out", help="write the translated theory here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("verify", help="check faithfulness of a translation")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--src-sem", choices=SEMANTICS, required=True)
    p.add_argument("--tgt-sem", choices=SEMANTICS, required=True)
    p.add_argument(
        "--vars", default="auto", help="comma separated alphabet, or auto"
    )
    p.add_argument("--bijective", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a theory from a QBF")
    p.add_argument("--construction", choices=sorted(GENERATORS), required=True)
    p.add_argument("--qbf", required=True, help="QBF text or a file containing it")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("count", help="count extensions via minimal processes")
    p.add_argument("theory")
    p.add_argument("--sem", choices=SEMANTICS, required=True)
    p.add_argument("--geq", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    set_log_level(logging.DEBUG if (args.verbose or config.debug) else logging.WARNING)

    overrides = {
        "max_defaults": config.max_defaults
        if args.max_defaults is None
        else args.max_defaults,
        "verify_strongest": config.verify_strongest and not args.no_verify,
    }

    report = RunReport(command=argv)
    try:
        with patch.multiple(config, **overrides), timed() as timer:
            status = args.func(args, report)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBoundExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (
        ContractViolation,
        AlphabetError,
        RenamingCollision,
        MalformedProcess,
        DefaultLogicError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONTRACT

    if args.timing:
        report.timing_ms = timer.elapsed_ms
    if getattr(args, "json", False):
        sys.stdout.write(report.dumps())
    if args.verbose:
        sys.stderr.write(counters_report())
    return status
