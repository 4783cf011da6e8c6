"""
Closed ladder webs and the evaluation engine.

A ladder is a row of upward strands with colors k_0..k_{s-1} and a word of
rungs read bottom to top. The rung (i, "E", r) moves r units of color from
strand i+1 to strand i, (i, "F", r) moves r units from strand i to strand
i+1. The closure glues the top of every strand to its bottom, so a ladder
is only well formed when the word returns to the starting colors.

Evaluation normal-orders the word (all E rungs below all F rungs) with the
local relations

    X^(a) X^(b)            = [a+b choose a] X^(a+b)
    E^(a) F^(b) 1_l        = sum_t [a-b+l choose t] F^(b-t) E^(a-t) 1_l
    E_i F_j = F_j E_i      (i != j)
    X_i X_j = X_j X_i      (|i-j| >= 2)

drops words that pass through a negative color, removes untouched strands
as circles and rotates the E block through the closure. The sum of j*k_j
strictly drops on every rotation, which bounds the recursion.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from qholo.errors import FlowError, StepLimitError, StuckWebError, WebError
from qholo.moy import web_value
from qholo.poly import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFn,
    a_to_q_power,
    circle_value,
    circle_value_at,
    q_binomial,
    q_binomial_general,
)
from qholo.web import Edge, Expansion, Web, WebCombination, reduce_web_step, web_expansion
from utils.config import get_config_int

Rung = Tuple[int, str, int]
Word = Tuple[Rung, ...]

DEFAULT_STEP_LIMIT = 10**6

_PRIORITY = {"merge": 0, "switch": 1, "swap": 1, "sort": 2}


def _act(colors: List[int], rung: Rung) -> None:
    i, kind, r = rung
    if kind == "E":
        colors[i] += r
        colors[i + 1] -= r
    else:
        colors[i] -= r
        colors[i + 1] += r


def weight_after(colors: Sequence[int], word: Sequence[Rung]) -> Tuple[int, ...]:
    current = list(colors)
    for rung in word:
        _act(current, rung)
    return tuple(current)


def _describe_raw(colors: Sequence[int], word: Sequence[Rung]) -> str:
    body = " ".join(f"{kind}{i}^({r})" for i, kind, r in word)
    return f"{list(colors)}[{body}]"


def is_admissible(colors: Sequence[int], word: Sequence[Rung]) -> bool:
    """False when some intermediate color is negative (the word is zero)"""
    current = list(colors)
    if min(current, default=0) < 0:
        return False
    for rung in word:
        _act(current, rung)
        if current[rung[0]] < 0 or current[rung[0] + 1] < 0:
            return False
    return True


@dataclass(frozen=True)
class Ladder:
    colors: Tuple[int, ...]
    rungs: Word = field(default=())

    def __post_init__(self):
        colors = tuple(int(k) for k in self.colors)
        rungs = []
        for rung in self.rungs:
            i, kind, r = int(rung[0]), str(rung[1]), int(rung[2])
            if kind not in ("E", "F"):
                raise WebError(f"Unknown rung kind '{kind}'")
            if not 0 <= i < len(colors) - 1:
                raise WebError(f"Rung index {i} out of range for {len(colors)} strands")
            if r < 0:
                raise WebError(f"Rung amount {r} is negative")
            if r:
                rungs.append((i, kind, r))
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "rungs", tuple(rungs))
        if weight_after(colors, rungs) != colors:
            raise FlowError(f"Ladder {self.describe()} does not close up")

    @property
    def degree(self) -> int:
        return sum(r for _, _, r in self.rungs)

    def describe(self) -> str:
        return _describe_raw(self.colors, self.rungs)

    def to_web(self) -> Web:
        """Closed combinatorial map of the ladder, color-0 edges deleted"""
        if not is_admissible(self.colors, self.rungs):
            raise FlowError(f"Ladder {self.describe()} passes through a negative color")
        weights = [tuple(self.colors)]
        for rung in self.rungs:
            weights.append(weight_after(weights[-1], (rung,)))

        next_dart = iter(range(10**9))
        vertices: List[List[int]] = []
        edges: List[Edge] = []
        # per strand: (step, south dart, north dart) in bottom-to-top order
        attachments: Dict[int, List[Tuple[int, int, int]]] = {j: [] for j in range(len(self.colors))}
        for step, (i, kind, r) in enumerate(self.rungs):
            left = [next(next_dart) for _ in range(3)]  # east, north, south
            right = [next(next_dart) for _ in range(3)]  # north, west, south
            vertices.append(left)
            vertices.append(right)
            if kind == "E":
                edges.append(Edge(right[1], left[0], r))
            else:
                edges.append(Edge(left[0], right[1], r))
            attachments[i].append((step, left[2], left[1]))
            attachments[i + 1].append((step, right[2], right[0]))

        loops = []
        for j, points in attachments.items():
            if not points:
                loops.append(self.colors[j])
                continue
            for t, (step, _, north) in enumerate(points):
                if t + 1 < len(points):
                    south = points[t + 1][1]
                    color = weights[step + 1][j]
                else:
                    south = points[0][1]
                    color = self.colors[j]
                edges.append(Edge(north, south, color))
        return Web.build(vertices, edges, loops)

    def canonical_code(self) -> str:
        return self.to_web().canonical_code()


def _moves(word: Word) -> List[Tuple[str, int]]:
    out = []
    for p in range(len(word) - 1):
        i, x, _ = word[p]
        j, y, _ = word[p + 1]
        if x == y and i == j:
            out.append(("merge", p))
        elif x == "F" and y == "E":
            out.append(("switch" if i == j else "swap", p))
        elif x == y and abs(i - j) >= 2 and i > j:
            out.append(("sort", p))
    return out


def _rewrite(colors: Tuple[int, ...], word: Word, move: Tuple[str, int]) -> List[Tuple[Word, LaurentPoly]]:
    kind, p = move
    head, tail = word[:p], word[p + 2:]
    (i, x, r), (j, y, s) = word[p], word[p + 1]
    if kind == "merge":
        return [(head + ((i, x, r + s),) + tail, q_binomial(r + s, r))]
    if kind in ("swap", "sort"):
        return [(head + (word[p + 1], word[p]) + tail, ONE)]
    # F^(b) acts first, then E^(a)
    b, a = r, s
    before = weight_after(colors, head)
    lam = before[i] - before[i + 1]
    out = []
    for t in range(min(a, b) + 1):
        coef = q_binomial_general(a - b + lam, t)
        if coef.is_zero():
            continue
        middle = tuple(
            rung for rung in ((i, "E", a - t), (i, "F", b - t)) if rung[2]
        )
        out.append((head + middle + tail, coef))
    return out


def _add_into(target: Expansion, key, value: LaurentPoly) -> None:
    total = target.get(key, ZERO) + value
    if total.is_zero():
        target.pop(key, None)
    else:
        target[key] = total


class Reducer:
    """
    Memoized ladder evaluator.

    Without a seed the reduction order is fixed (merges, then E/F
    exchanges, then index sorting, leftmost first). With a seed every
    rewrite picks a random applicable move, which is what the confluence
    check compares against.
    """

    def __init__(self, seed: Optional[int] = None, step_limit: Optional[int] = None):
        self.seed = seed
        self._rng = np.random.default_rng(seed) if seed is not None else None
        self.step_limit = (
            step_limit
            if step_limit is not None
            else get_config_int("step_limit", default=DEFAULT_STEP_LIMIT)
        )
        self._memo: Dict[Tuple[Tuple[int, ...], Word], Expansion] = {}
        self._steps = 0
        self._trace: deque = deque(maxlen=8)

    def expand(self, ladder: Ladder) -> Expansion:
        """Circle expansion {sorted circle colors: coefficient in Z[q^±]}"""
        self._steps = 0
        self._trace.clear()
        return dict(self._value(ladder.colors, ladder.rungs))

    def _tick(self, colors: Tuple[int, ...], word: Word) -> None:
        self._steps += 1
        self._trace.append((colors, word))
        if self._steps > self.step_limit:
            trace = [_describe_raw(c, w) for c, w in self._trace]
            raise StepLimitError(f"Reduction exceeded {self.step_limit} steps", trace=trace)

    def _choose(self, moves: List[Tuple[str, int]]) -> Tuple[str, int]:
        if self._rng is None:
            return min(moves, key=lambda m: (_PRIORITY[m[0]], m[1]))
        return moves[int(self._rng.integers(len(moves)))]

    def normal_order(self, colors: Tuple[int, ...], word: Word) -> Dict[Word, LaurentPoly]:
        pending: Dict[Word, LaurentPoly] = {word: ONE}
        done: Dict[Word, LaurentPoly] = {}
        while pending:
            w, c = pending.popitem()
            if c.is_zero() or not is_admissible(colors, w):
                continue
            self._tick(colors, w)
            moves = _moves(w)
            if not moves:
                _add_into(done, w, c)
                continue
            for w2, c2 in _rewrite(colors, w, self._choose(moves)):
                pending[w2] = pending.get(w2, ZERO) + c * c2
        return done

    def _value(self, colors: Tuple[int, ...], word: Word) -> Expansion:
        key = (colors, word)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result: Expansion = {}
        for w, c in self.normal_order(colors, word).items():
            for circles, c2 in self._closed(colors, w).items():
                _add_into(result, circles, c * c2)
        self._memo[key] = result
        return result

    def _closed(self, colors: Tuple[int, ...], word: Word) -> Expansion:
        if not word:
            return {tuple(sorted(k for k in colors if k)): ONE}
        touched = sorted({i for i, _, _ in word} | {i + 1 for i, _, _ in word})
        circles = tuple(colors[j] for j in range(len(colors)) if j not in touched and colors[j])
        if len(touched) < len(colors):
            index = {old: new for new, old in enumerate(touched)}
            colors = tuple(colors[j] for j in touched)
            word = tuple((index[i], x, r) for i, x, r in word)
        split = next((p for p, rung in enumerate(word) if rung[1] == "F"), len(word))
        if split == 0 or split == len(word):
            raise StuckWebError(
                f"Normal-form word {_describe_raw(colors, word)} cannot close up"
            )
        e_block, f_block = word[:split], word[split:]
        sub = self._value(weight_after(colors, e_block), f_block + e_block)
        if not circles:
            return sub
        return {tuple(sorted(k + circles)): c for k, c in sub.items()}


@lru_cache(maxsize=1)
def default_reducer() -> Reducer:
    return Reducer()


def expansion_value(expansion: Expansion, n: Optional[int] = None) -> Union[RationalFn, LaurentPoly]:
    """
    Map a circle expansion to the symbolic value (n is None) or to the
    value at a = q^n.
    """
    if n is None:
        total = RationalFn(ZERO)
        for circles, coef in expansion.items():
            term = RationalFn(coef)
            for k in circles:
                term = term * circle_value(k)
            total = total + term
        return total
    total_n = ZERO
    for circles, coef in expansion.items():
        term = coef
        for k in circles:
            term = term * circle_value_at(k, n)
            if term.is_zero():
                break
        total_n = total_n + term
    return total_n


def combination_expansion(combination: WebCombination, reducer: Optional[Reducer] = None) -> Expansion:
    """Sum of coefficient times circle expansion over a combination of ladders"""
    reducer = reducer or default_reducer()
    total: Expansion = {}
    for coef, item in combination:
        sub = reducer.expand(item) if isinstance(item, Ladder) else web_expansion(item, reducer.step_limit)
        for circles, c in sub.items():
            _add_into(total, circles, coef * c)
    return total


def evaluate(
    w: Union[Ladder, Web, WebCombination],
    n: Optional[int] = None,
    reducer: Optional[Reducer] = None,
) -> Union[RationalFn, LaurentPoly]:
    """
    Evaluate a closed web symbolically (n is None) or at a = q^n.

    Ladders go through the full engine, map-level webs through digon
    removal followed by the state sum over edge labellings.
    """
    reducer = reducer or default_reducer()
    if isinstance(w, Ladder):
        return expansion_value(reducer.expand(w), n)
    if isinstance(w, Web):
        return web_value(w, n, reducer.step_limit)
    total = RationalFn(ZERO) if n is None else ZERO
    for coef, item in w:
        value = evaluate(item, n, reducer)
        if isinstance(coef, RationalFn) and n is not None:
            total = total + (coef.substitute(a_to_q_power(n)) * value).to_laurent()
        else:
            total = total + coef * value
    return total


def reduce_step(w: Union[Ladder, Web]) -> WebCombination:
    """
    Apply one local relation and return the equivalent combination.

    Order of preference: truncation, circle removal, digon merge, square
    switch or exchange, trace rotation.
    """
    if isinstance(w, Web):
        return reduce_web_step(w)
    out = WebCombination()
    if not is_admissible(w.colors, w.rungs):
        return out
    touched = {i for i, _, _ in w.rungs} | {i + 1 for i, _, _ in w.rungs}
    for j, k in enumerate(w.colors):
        if j not in touched:
            rest_colors = w.colors[:j] + w.colors[j + 1:]
            rest_rungs = tuple((i - 1 if i > j else i, x, r) for i, x, r in w.rungs)
            coef = circle_value(k) if k else RationalFn(ONE)
            rest = Ladder(rest_colors, rest_rungs)
            out.add(coef, rest)
            return out
    moves = _moves(w.rungs)
    if moves:
        move = min(moves, key=lambda m: (_PRIORITY[m[0]], m[1]))
        for word, coef in _rewrite(w.colors, w.rungs, move):
            if is_admissible(w.colors, word):
                target = Ladder(w.colors, word)
                out.add(RationalFn(coef), target)
        return out
    if not w.rungs:
        raise StuckWebError("Nothing left to reduce", canonical="empty")
    split = next(p for p, rung in enumerate(w.rungs) if rung[1] == "F")
    e_block, f_block = w.rungs[:split], w.rungs[split:]
    rotated = Ladder(weight_after(w.colors, e_block), f_block + e_block)
    out.add(RationalFn(ONE), rotated)
    return out
