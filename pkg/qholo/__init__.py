"""
Colored HOMFLY polynomials of braid closures through MOY webs, and the
q-holonomic recursions they satisfy in the color.
"""

from qholo.errors import QHoloError
from qholo.holonomy import (
    RecursionAnsatz,
    SequenceTable,
    build_table,
    conjecture_report,
    guess_recursion,
    search_recursion,
    specialization_suite,
    verify_recursion,
)
from qholo.ladder import Ladder, Reducer, evaluate, reduce_step
from qholo.link import ColorSpec, ColoredBraid, colored_homfly, parse_braid, renormalize
from qholo.poly import LaurentPoly, RationalFn, interpolate_in_a, q_binomial, quantum_integer, specialize
from qholo.qweyl import OreOperator, SequenceView, content_free, op_apply, op_multiply, op_specialize, right_gcd
from qholo.skein import skein_homfly
from qholo.web import Web, WebCombination, validate_web

__all__ = [
    "QHoloError",
    "RecursionAnsatz",
    "SequenceTable",
    "build_table",
    "conjecture_report",
    "guess_recursion",
    "search_recursion",
    "specialization_suite",
    "verify_recursion",
    "Ladder",
    "Reducer",
    "evaluate",
    "reduce_step",
    "ColorSpec",
    "ColoredBraid",
    "colored_homfly",
    "parse_braid",
    "renormalize",
    "LaurentPoly",
    "RationalFn",
    "interpolate_in_a",
    "q_binomial",
    "quantum_integer",
    "specialize",
    "OreOperator",
    "SequenceView",
    "content_free",
    "op_apply",
    "op_multiply",
    "op_specialize",
    "right_gcd",
    "skein_homfly",
    "Web",
    "WebCombination",
    "validate_web",
]
