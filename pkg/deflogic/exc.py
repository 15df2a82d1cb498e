import dataclasses
import textwrap

from . import config
from .utils import counters


class DefaultLogicError(RuntimeError):
    pass


class ParseError(DefaultLogicError):
    def __init__(self, msg, line=None, column=None, path=None):
        self.msg = msg
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        if line is not None:
            where += f"{line}:{column}:"
        super().__init__(f"{where} {msg}" if where else msg)


class UndeclaredAtom(ParseError):
    def __init__(self, atom, line=None, column=None, path=None):
        self.atom = atom
        super().__init__(
            f"atom {atom!r} is not declared", line, column, path
        )


class DuplicateVariable(ParseError):
    def __init__(self, atom, line=None, column=None, path=None):
        self.atom = atom
        super().__init__(
            f"variable {atom!r} is bound by more than one block", line, column, path
        )


class InconsistentBackground(ParseError):
    def __init__(self, line=None, column=None, path=None):
        super().__init__("background theory W is inconsistent", line, column, path)


class RenamingCollision(DefaultLogicError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(
            f"renaming {source!r} to {target!r} collides with an existing atom"
        )


class AlphabetError(DefaultLogicError):
    def __init__(self, what, extra):
        self.extra = sorted(extra)
        super().__init__(
            f"{what} mentions atoms outside the theory alphabet: "
            + ", ".join(self.extra)
        )


@dataclasses.dataclass
class MalformedProcess(DefaultLogicError):
    seq: tuple
    reason: str

    def __str__(self):
        return f"malformed process {list(self.seq)}: {self.reason}"


class EnumerationBoundExceeded(DefaultLogicError):
    def __init__(self, num_defaults, bound=None):
        self.num_defaults = num_defaults
        self.bound = config.max_defaults if bound is None else bound
        counters["enumerate"]["bound_exceeded"] += 1
        super().__init__(
            textwrap.dedent(
                f"""\
                theory has {num_defaults} defaults, enumeration is limited to {self.bound}

                Raise the limit with --max-defaults or by setting:
                    deflogic.config.max_defaults = {num_defaults}"""
            )
        )


class ContractViolation(DefaultLogicError):
    pass


class UnsupportedConstruction(ContractViolation):
    pass


class NotStrongestExtension(ContractViolation):
    def __init__(self, formula, reason):
        self.formula = formula
        self.reason = reason
        super().__init__(f"{formula} is not a strongest extension: {reason}")


def contract(cond: bool, msg: str):
    if not cond:
        if config.debug:
            print("Contract violation:", msg)
        counters["contract"][msg] += 1
        raise ContractViolation(msg)
