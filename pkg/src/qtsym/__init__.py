"""Exact symmetric functions over Q(q, t, u, v) with plethystic operators.

The main entry points are re-exported here; see the submodules for detail.
"""

from .coeffring import M, QtRational, ZLaurent, parse_qt, q, t, u, v
from .dsl import ParseError, format_operator, parse_operator, parse_symfunc
from .macdonald import (
    HtCache,
    apply_delta_F,
    apply_nabla,
    apply_pi,
    apply_theta,
    from_Ht_basis,
    macdonald_Ht,
    to_Ht_basis,
)
from .operators import apply, conjugate_by_P, d_k, d_series
from .plethysm import Alphabet, WindowError, plethysm
from .symfunc import SymFunc, e, h, m, p, s
from .verify import compare_operators, list_suites, run_suite

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "HtCache", "M", "ParseError", "QtRational", "SymFunc", "WindowError", "ZLaurent",
    "apply", "apply_delta_F", "apply_nabla", "apply_pi", "apply_theta", "compare_operators",
    "conjugate_by_P", "d_k", "d_series", "e", "format_operator", "from_Ht_basis", "h",
    "list_suites", "m", "macdonald_Ht", "p", "parse_operator", "parse_qt", "parse_symfunc",
    "plethysm", "q", "run_suite", "s", "t", "to_Ht_basis", "u", "v",
]
