"""
Two-level quantified boolean formulas ``free Z . exists X . forall Y . F``.

These are only inputs to the theory generators; validity is decided by
brute force over the (small) quantifier blocks.
"""
import dataclasses
import itertools
from typing import Dict
from typing import Iterator
from typing import List
from typing import Mapping
from typing import Tuple

from .exc import AlphabetError
from .exc import DuplicateVariable
from .formula import Formula
from .formula import atoms
from .formula import evaluate
from .formula import restrict_all


def assignments(names) -> Iterator[Dict[str, bool]]:
    """All truth assignments over names, false before true"""
    names = tuple(names)
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


@dataclasses.dataclass(frozen=True)
class Qbf2:
    x_vars: Tuple[str, ...]
    y_vars: Tuple[str, ...]
    matrix: Formula
    z_vars: Tuple[str, ...] = ()

    def __post_init__(self):
        for field in ("x_vars", "y_vars", "z_vars"):
            object.__setattr__(self, field, tuple(getattr(self, field)))
        seen = set()
        for name in (*self.z_vars, *self.x_vars, *self.y_vars):
            if name in seen:
                raise DuplicateVariable(name)
            seen.add(name)
        extra = atoms(self.matrix) - seen
        if extra:
            raise AlphabetError("QBF matrix", extra)

    @property
    def all_vars(self):
        return (*self.z_vars, *self.x_vars, *self.y_vars)

    def is_valid(self, omega_z: Mapping[str, bool] = None) -> bool:
        """exists X forall Y . F, with Z fixed by omega_z"""
        omega_z = dict(omega_z or {})
        missing = set(self.z_vars) - set(omega_z)
        assert not missing, f"free variables left unassigned: {sorted(missing)}"
        for omega_x in assignments(self.x_vars):
            if all(
                evaluate(self.matrix, {**omega_z, **omega_x, **omega_y})
                for omega_y in assignments(self.y_vars)
            ):
                return True
        return False

    def restrict(self, omega_z: Mapping[str, bool]) -> "Qbf2":
        """F|omega_Z: replace free variables by their truth values"""
        return Qbf2(
            self.x_vars,
            self.y_vars,
            restrict_all(self.matrix, {z: omega_z[z] for z in self.z_vars}),
        )

    def valid_assignments(self) -> List[Dict[str, bool]]:
        return [omega for omega in assignments(self.z_vars) if self.is_valid(omega)]

    def count_valid_assignments(self) -> int:
        return len(self.valid_assignments())

    def __str__(self):
        from .syntax import render_qbf

        return render_qbf(self)
