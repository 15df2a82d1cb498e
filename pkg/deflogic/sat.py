"""
Decision backend: Tseitin-style CNF encoding and a CDCL solver.

Every formula node gets a definition atom whose clauses state full
equivalence with the node, so structurally equal subformulas share one
atom.  Top-level conjunctions, literals, and clauses are asserted
directly without definition atoms.  Definition atoms never leave this
module: callers only see answers and models over their own atom names.
"""
import collections
import logging
from typing import Dict
from typing import FrozenSet
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence

from . import config
from .formula import And
from .formula import Atom
from .formula import Const
from .formula import Formula
from .formula import Iff
from .formula import Implies
from .formula import Not
from .formula import Or
from .utils import counters

log = logging.getLogger(__name__)


class CNF:
    """Clauses over integer variables, built from formulas"""

    def __init__(self):
        self.clauses: List[List[int]] = []
        self.num_vars = 0
        self.atom_vars: Dict[str, int] = dict()
        self.definitions: Dict[Formula, int] = dict()
        self.true_var = None
        self.unsat = False

    def new_var(self):
        self.num_vars += 1
        return self.num_vars

    def atom_var(self, name: str):
        if name not in self.atom_vars:
            self.atom_vars[name] = self.new_var()
        return self.atom_vars[name]

    def add_clause(self, lits: Sequence[int]):
        if not lits:
            self.unsat = True
        self.clauses.append(list(lits))

    def literal(self, f: Formula) -> int:
        """A literal equivalent to f, defining new variables as needed"""
        if isinstance(f, Atom):
            return self.atom_var(f.name)
        if isinstance(f, Not):
            return -self.literal(f.arg)
        if isinstance(f, Const):
            if self.true_var is None:
                self.true_var = self.new_var()
                self.add_clause([self.true_var])
            return self.true_var if f.value else -self.true_var
        if f in self.definitions:
            return self.definitions[f]

        v = self.new_var()
        if isinstance(f, And):
            lits = [self.literal(a) for a in f.args]
            for lit in lits:
                self.add_clause([-v, lit])
            self.add_clause([v] + [-lit for lit in lits])
        elif isinstance(f, Or):
            lits = [self.literal(a) for a in f.args]
            for lit in lits:
                self.add_clause([v, -lit])
            self.add_clause([-v] + lits)
        elif isinstance(f, Implies):
            left = self.literal(f.left)
            right = self.literal(f.right)
            self.add_clause([-v, -left, right])
            self.add_clause([v, left])
            self.add_clause([v, -right])
        elif isinstance(f, Iff):
            left = self.literal(f.left)
            right = self.literal(f.right)
            self.add_clause([-v, -left, right])
            self.add_clause([-v, left, -right])
            self.add_clause([v, left, right])
            self.add_clause([v, -left, -right])
        else:
            raise AssertionError(f"unexpected node {f!r}")
        self.definitions[f] = v
        return v

    def require(self, f: Formula):
        """Assert f at the top level"""
        if isinstance(f, Const):
            if not f.value:
                self.add_clause([])
        elif isinstance(f, And):
            for a in f.args:
                self.require(a)
        elif isinstance(f, Or):
            self.add_clause([self.literal(a) for a in f.args])
        elif isinstance(f, Implies):
            self.add_clause([-self.literal(f.left), self.literal(f.right)])
        elif isinstance(f, Not):
            self.forbid(f.arg)
        else:
            self.add_clause([self.literal(f)])

    def forbid(self, f: Formula):
        """Assert the negation of f at the top level"""
        if isinstance(f, Const):
            if f.value:
                self.add_clause([])
        elif isinstance(f, Not):
            self.require(f.arg)
        elif isinstance(f, Or):
            for a in f.args:
                self.forbid(a)
        elif isinstance(f, And):
            self.add_clause([-self.literal(a) for a in f.args])
        elif isinstance(f, Implies):
            self.require(f.left)
            self.forbid(f.right)
        else:
            self.add_clause([-self.literal(f)])


class Solver:
    """
    CDCL with two watched literals, first-UIP clause learning and
    non-chronological backjumping.

    Clause literals 0 and 1 are the watched ones.  A clause is only
    inspected when one of its watches becomes false.  Decisions go to the
    most active unassigned variable of decision_vars; under the
    full-equivalence encoding the definition variables then follow by
    propagation, and any left over are decided last.
    """

    def __init__(
        self,
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        decision_vars: Iterable[int] = (),
    ):
        self.num_vars = num_vars
        self.value = [0] * (num_vars + 1)
        self.level = [0] * (num_vars + 1)
        self.reason: List[Optional[int]] = [None] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.bump = 1.0
        self.trail: List[int] = []
        # trail position where each decision level starts
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.clauses: List[List[int]] = []
        self.watches = collections.defaultdict(list)
        self.units: List[int] = []
        self.trivially_unsat = False
        self.decision_vars = sorted(set(decision_vars))
        for clause in clauses:
            self._add(clause)

    def _add(self, clause: Sequence[int]):
        lits = list(dict.fromkeys(clause))
        if any(-lit in lits for lit in lits):
            return
        if not lits:
            self.trivially_unsat = True
        elif len(lits) == 1:
            self.units.append(lits[0])
        else:
            self._watch(lits)

    def _watch(self, lits: List[int]) -> int:
        index = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(index)
        self.watches[lits[1]].append(index)
        return index

    def lit_value(self, lit: int):
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _assign(self, lit: int, reason: Optional[int] = None):
        var = abs(lit)
        self.value[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    def _backjump(self, level: int):
        position = self.trail_lim[level]
        for lit in self.trail[position:]:
            self.value[abs(lit)] = 0
        del self.trail[position:]
        del self.trail_lim[level:]
        self.qhead = min(self.qhead, position)

    def _propagate(self) -> Optional[int]:
        """Unit propagation; the index of a falsified clause, if any"""
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watchers = self.watches[false_lit]
            keep = []
            conflict = None
            for index in watchers:
                if conflict is not None:
                    keep.append(index)
                    continue
                clause = self.clauses[index]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                other = clause[0]
                if self.lit_value(other) == 1:
                    keep.append(index)
                    continue
                for k in range(2, len(clause)):
                    if self.lit_value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[clause[1]].append(index)
                        break
                else:
                    keep.append(index)
                    if self.lit_value(other) == -1:
                        conflict = index
                    else:
                        counters["sat"]["propagations"] += 1
                        self._assign(other, index)
            self.watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    def _bump_activity(self, var: int):
        self.activity[var] += self.bump
        if self.activity[var] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.bump *= 1e-100

    def _analyze(self, conflict: int) -> List[int]:
        """First-UIP learned clause, asserting literal first"""
        current = len(self.trail_lim)
        seen = set()
        learned = []
        pending = 0
        position = len(self.trail) - 1
        clause = self.clauses[conflict]
        while True:
            for lit in clause:
                var = abs(lit)
                if var in seen or self.level[var] == 0:
                    continue
                seen.add(var)
                self._bump_activity(var)
                if self.level[var] == current:
                    pending += 1
                else:
                    learned.append(lit)
            while abs(self.trail[position]) not in seen:
                position -= 1
            uip = self.trail[position]
            position -= 1
            pending -= 1
            if pending == 0:
                break
            clause = self.clauses[self.reason[abs(uip)]]
        self.bump /= 0.95
        return [-uip, *learned]

    def _learn(self, learned: List[int]):
        if len(learned) == 1:
            self._backjump(0)
            self._assign(learned[0])
            return
        # second watch at the backjump level
        deepest = max(
            range(1, len(learned)), key=lambda i: self.level[abs(learned[i])]
        )
        learned[1], learned[deepest] = learned[deepest], learned[1]
        self._backjump(self.level[abs(learned[1])])
        counters["sat"]["learned"] += 1
        self._assign(learned[0], self._watch(learned))

    def _pick(self) -> Optional[int]:
        best = None
        for var in self.decision_vars:
            if self.value[var] == 0 and (
                best is None or self.activity[var] > self.activity[best]
            ):
                best = var
        if best is not None:
            return best
        for var in range(1, self.num_vars + 1):
            if self.value[var] == 0:
                return var
        return None

    def solve(self) -> Optional[Dict[int, bool]]:
        """A satisfying assignment over all variables, or None"""
        if self.trivially_unsat:
            return None
        for lit in self.units:
            current = self.lit_value(lit)
            if current == -1:
                return None
            if current == 0:
                self._assign(lit)
        while True:
            conflict = self._propagate()
            if conflict is not None:
                counters["sat"]["conflicts"] += 1
                if not self.trail_lim:
                    return None
                self._learn(self._analyze(conflict))
                continue
            var = self._pick()
            if var is None:
                return {v: self.value[v] == 1 for v in range(1, self.num_vars + 1)}
            counters["sat"]["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._assign(-var)


def encode(formulas: Iterable[Formula]) -> CNF:
    cnf = CNF()
    for f in formulas:
        cnf.require(f)
    return cnf


def solve(formulas: Iterable[Formula]) -> Optional[Dict[str, bool]]:
    """A model of the formula set over its atoms, or None if unsatisfiable"""
    cnf = encode(formulas)
    if cnf.unsat:
        return None
    counters["sat"]["solver_calls"] += 1
    model = Solver(cnf.num_vars, cnf.clauses, cnf.atom_vars.values()).solve()
    if model is None:
        return None
    return {name: model[var] for name, var in cnf.atom_vars.items()}


_consistency_cache: Dict[FrozenSet[Formula], bool] = dict()


def check_consistent(formulas: Iterable[Formula]) -> bool:
    key = frozenset(formulas)
    counters["sat"]["queries"] += 1
    if key in _consistency_cache:
        counters["sat"]["cache_hits"] += 1
        return _consistency_cache[key]
    result = solve(sorted(key, key=repr)) is not None
    if config.trace:
        log.debug("consistent=%s for %s", result, ", ".join(map(str, key)))
    if len(_consistency_cache) >= config.sat_cache_size:
        _consistency_cache.clear()
    _consistency_cache[key] = result
    return result


def project_models(
    formulas: Iterable[Formula], names: Sequence[str]
) -> FrozenSet[FrozenSet[str]]:
    """
    Models of the formula set projected onto names, each given as the set
    of names assigned true.  Names absent from the formulas are free.
    """
    cnf = encode(formulas)
    if cnf.unsat:
        return frozenset()
    projection = [(name, cnf.atom_var(name)) for name in names]
    blocking: List[List[int]] = []
    found = set()
    while True:
        counters["sat"]["solver_calls"] += 1
        clauses = [*cnf.clauses, *blocking]
        model = Solver(cnf.num_vars, clauses, cnf.atom_vars.values()).solve()
        if model is None:
            break
        found.add(frozenset(name for name, var in projection if model[var]))
        if not projection:
            break
        blocking.append([-var if model[var] else var for _, var in projection])
    counters["sat"]["projected_models"] += len(found)
    return frozenset(found)


def reset():
    _consistency_cache.clear()
