from . import formula
from . import sat
from .faithful import check_faithful
from .faithful import count_extensions
from .faithful import strongest_extensions
from .semantics import Default
from .semantics import DefaultTheory
from .semantics import Process
from .semantics import Semantics
from .semantics import double_extensions
from .semantics import extensions
from .semantics import is_applicable
from .semantics import is_closed
from .semantics import is_process
from .semantics import is_selected
from .semantics import is_successful
from .semantics import make_theory
from .semantics import selected_processes
from .syntax import parse_formula
from .syntax import parse_qbf
from .syntax import parse_theory
from .syntax import render_formula
from .syntax import render_theory
from .translate import add_known_extension
from .translate import combine_with_selector
from .translate import gen_assignment
from .translate import gen_one_or_two
from .translate import gen_sigma2_rational
from .translate import t_cr
from .translate import t_jc
from .translate import t_rc
from .translate import t_rj
from .utils import counters

__all__ = [
    "Default",
    "DefaultTheory",
    "Process",
    "Semantics",
    "add_known_extension",
    "check_faithful",
    "combine_with_selector",
    "count_extensions",
    "double_extensions",
    "extensions",
    "gen_assignment",
    "gen_one_or_two",
    "gen_sigma2_rational",
    "is_applicable",
    "is_closed",
    "is_process",
    "is_selected",
    "is_successful",
    "list_routes",
    "make_theory",
    "parse_formula",
    "parse_qbf",
    "parse_theory",
    "render_formula",
    "render_theory",
    "reset",
    "selected_processes",
    "strongest_extensions",
    "t_cr",
    "t_jc",
    "t_rc",
    "t_rj",
]


def reset():
    """Clear solver caches and counters"""
    sat.reset()
    formula.ordered_atoms.cache_clear()
    counters.clear()


def list_routes():
    """Names accepted by ``deflogic translate --route``"""
    from .translate import ROUTES

    return sorted(ROUTES.keys())
