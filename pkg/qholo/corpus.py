"""
Seeded corpora for the check suites and tests: random polynomials,
operators, sequences, closed ladders, and a table of braid closures.
"""

from typing import List, Optional, Sequence

import numpy as np

from qholo.ladder import Ladder
from qholo.link import ColoredBraid
from qholo.poly import LaurentPoly
from qholo.qweyl import OreOperator, SequenceView

# (name, strands, word); all colors 1
KNOWN_BRAIDS = [
    ("unknot", 1, ()),
    ("unknot-curl", 2, (1,)),
    ("unknot-negative-curl", 2, (-1,)),
    ("unlink-2", 2, ()),
    ("hopf", 2, (1, 1)),
    ("hopf-negative", 2, (-1, -1)),
    ("3_1", 2, (1, 1, 1)),
    ("3_1-mirror", 2, (-1, -1, -1)),
    ("4_1", 3, (1, -2, 1, -2)),
    ("T(2,4)", 2, (1, 1, 1, 1)),
    ("5_1", 2, (1, 1, 1, 1, 1)),
    ("5_2", 3, (1, 1, 1, 2, -1, 2)),
    ("whitehead", 3, (1, 1, -2, 1, -2)),
    ("T(2,6)", 2, (1, 1, 1, 1, 1, 1)),
    ("6_1", 4, (1, 1, 2, -1, -3, 2, -3)),
    ("6_2", 3, (1, 1, 1, -2, 1, -2)),
    ("6_3", 3, (1, 1, -2, 1, -2, -2)),
    ("borromean", 3, (1, -2, 1, -2, 1, -2)),
    ("granny", 3, (1, 1, 1, 2, 2, 2)),
    ("square", 3, (1, 1, 1, -2, -2, -2)),
    ("7_1", 2, (1, 1, 1, 1, 1, 1, 1)),
    ("8_19", 3, (1, 2, 1, 2, 1, 2, 1, 2)),
]


def known_braid(name: str, colors: Optional[Sequence[int]] = None) -> ColoredBraid:
    for entry_name, strands, word in KNOWN_BRAIDS:
        if entry_name == name:
            return ColoredBraid(strands, tuple(word), tuple(colors or [1] * strands), entry_name)
    raise KeyError(f"Unknown braid '{name}'")


def random_braid(rng: np.random.Generator, max_strands: int = 3, max_crossings: int = 6) -> ColoredBraid:
    strands = int(rng.integers(2, max_strands + 1))
    length = int(rng.integers(1, max_crossings + 1))
    word = []
    for _ in range(length):
        g = int(rng.integers(1, strands))
        word.append(g if rng.random() < 0.5 else -g)
    return ColoredBraid(strands, tuple(word), (1,) * strands, f"random-{strands}-{'.'.join(map(str, word))}")


def braid_corpus(
    max_crossings: int = 8, seed: int = 0, random_count: int = 6
) -> List[ColoredBraid]:
    """Known knots and links plus seeded random words, all colors 1"""
    corpus = [
        ColoredBraid(strands, tuple(word), (1,) * strands, name)
        for name, strands, word in KNOWN_BRAIDS
        if len(word) <= max_crossings
    ]
    rng = np.random.default_rng(seed)
    for _ in range(random_count):
        corpus.append(random_braid(rng, 3, min(max_crossings, 6)))
    return corpus


def random_laurent(
    rng: np.random.Generator,
    terms: int = 3,
    a_range: Sequence[int] = (-2, 2),
    q_range: Sequence[int] = (-2, 2),
    m_range: Sequence[int] = (0, 2),
    coef_bound: int = 3,
) -> LaurentPoly:
    out = {}
    for _ in range(terms):
        e = (
            int(rng.integers(a_range[0], a_range[1] + 1)),
            int(rng.integers(q_range[0], q_range[1] + 1)),
            int(rng.integers(m_range[0], m_range[1] + 1)),
        )
        c = int(rng.integers(-coef_bound, coef_bound + 1))
        out[e] = out.get(e, 0) + c
    return LaurentPoly(out)


def random_operator(rng: np.random.Generator, max_order: int = 2, algebra: str = "Wt") -> OreOperator:
    order = int(rng.integers(0, max_order + 1))
    a_range = (-1, 1) if algebra == "Wt" else (0, 0)
    q_range = (0, 0) if algebra == "ZML" else (-1, 1)
    coeffs = [random_laurent(rng, 2, a_range, q_range, (0, 2)) for _ in range(order + 1)]
    while coeffs and coeffs[-1].is_zero():
        coeffs[-1] = LaurentPoly.monomial(int(rng.integers(1, 3)))
    return OreOperator(coeffs, algebra)


def random_sequence(rng: np.random.Generator, n_max: int) -> SequenceView:
    return SequenceView.of(
        [random_laurent(rng, 2, (-1, 1), (-2, 2), (0, 0)) for _ in range(n_max + 1)]
    )


def random_ladder(
    rng: np.random.Generator,
    max_strands: int = 3,
    max_color: int = 3,
    max_rungs: int = 4,
) -> Ladder:
    """
    Closed ladder: a random admissible half word followed by its undoing,
    then a random cyclic rotation of the whole word.
    """
    strands = int(rng.integers(2, max_strands + 1))
    colors = tuple(int(c) for c in rng.integers(0, max_color + 1, size=strands))
    half = max(1, max_rungs // 2)
    word = []
    current = list(colors)
    for _ in range(int(rng.integers(1, half + 1))):
        i = int(rng.integers(0, strands - 1))
        kind = "E" if rng.random() < 0.5 else "F"
        source = current[i + 1] if kind == "E" else current[i]
        if source == 0:
            continue
        r = int(rng.integers(1, source + 1))
        word.append((i, kind, r))
        if kind == "E":
            current[i] += r
            current[i + 1] -= r
        else:
            current[i] -= r
            current[i + 1] += r
    undo = [(i, "F" if kind == "E" else "E", r) for i, kind, r in reversed(word)]
    full = word + undo
    if full:
        shift = int(rng.integers(0, len(full)))
        bottom = list(colors)
        for rung in full[:shift]:
            i, kind, r = rung
            bottom[i] += r if kind == "E" else -r
            bottom[i + 1] -= r if kind == "E" else -r
        colors = tuple(bottom)
        full = full[shift:] + full[:shift]
    return Ladder(colors, tuple(full))
