"""
Invariant suites behind `cli.py check`. Every suite is deterministic for a
given seed and returns a SuiteResult listing the failing cases.
"""

import sys
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List

import numpy as np

from qholo.corpus import (
    braid_corpus,
    known_braid,
    random_ladder,
    random_operator,
    random_sequence,
)
from qholo.holonomy import RecursionAnsatz, build_table, guess_recursion, verify_recursion
from qholo.ladder import Reducer, evaluate, is_admissible
from qholo.moy import state_sum
from qholo.link import ColorSpec, ColoredBraid, colored_homfly, framing_factor, resolve_crossings
from qholo.poly import A, Q, RationalFn, a_to_q_power
from qholo.qweyl import content_free, op_apply, op_specialize
from qholo.skein import Z, skein_homfly


@dataclass
class CheckOptions:
    trials: int = 100
    seed: int = 0
    max_crossings: int = 8


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, label: str) -> None:
        self.trials += 1
        if not ok:
            self.failures.append(label)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "failures": self.failures,
        }


def _same(x, y) -> bool:
    return (RationalFn.coerce(x) - RationalFn.coerce(y)).is_zero()


def check_skein(opts: CheckOptions) -> SuiteResult:
    """Engine values against the Hecke-algebra oracle on the braid corpus"""
    result = SuiteResult("skein")
    for b in braid_corpus(opts.max_crossings, opts.seed):
        result.record(_same(colored_homfly(b), skein_homfly(b)), b.name)
    return result


def check_triple(opts: CheckOptions) -> SuiteResult:
    """X(L+) - X(L-) = (q - q^-1) X(L0) at every crossing of the corpus"""
    result = SuiteResult("triple")
    for b in braid_corpus(opts.max_crossings, opts.seed):
        for p, g in enumerate(b.word):
            word = list(b.word)
            plus = word[:p] + [abs(g)] + word[p + 1:]
            minus = word[:p] + [-abs(g)] + word[p + 1:]
            zero = word[:p] + word[p + 1:]
            x_plus, x_minus, x_zero = (
                colored_homfly(ColoredBraid(b.strands, tuple(w), (1,) * b.strands))
                for w in (plus, minus, zero)
            )
            result.record(_same(x_plus - x_minus, RationalFn(Z) * x_zero), f"{b.name}@{p}")
    return result


def check_confluence(opts: CheckOptions) -> SuiteResult:
    """Two randomized reduction orders and the fixed order agree on random ladders"""
    result = SuiteResult("confluence")
    rng = np.random.default_rng(opts.seed)
    fixed = Reducer()
    for t in range(opts.trials):
        ladder = random_ladder(rng)
        first = Reducer(seed=opts.seed + 2 * t)
        second = Reducer(seed=opts.seed + 2 * t + 1)
        values = [evaluate(ladder, reducer=r) for r in (fixed, first, second)]
        result.record(
            _same(values[0], values[1]) and _same(values[0], values[2]),
            ladder.describe(),
        )
    return result


def check_coherence(opts: CheckOptions, Ns=(2, 3, 4)) -> SuiteResult:
    """
    Symbolic values at a = q^N match the sl(N) evaluation, which is
    positive, and the state sum of the ladder's map agrees at each N.
    """
    result = SuiteResult("coherence")
    rng = np.random.default_rng(opts.seed)
    for _ in range(max(opts.trials // 2, 1)):
        ladder = random_ladder(rng)
        symbolic = evaluate(ladder)
        web = ladder.to_web() if is_admissible(ladder.colors, ladder.rungs) else None
        for N in Ns:
            at_n = evaluate(ladder, N)
            ok = _same(symbolic.substitute(a_to_q_power(N)), at_n)
            ok = ok and all(c >= 0 for _, c in at_n.items())
            if web is not None:
                ok = ok and state_sum(web, N) == at_n
            result.record(ok, f"{ladder.describe()} N={N}")
    return result


def check_lattice(opts: CheckOptions) -> SuiteResult:
    """Rank of the coloring lattice equals the number of bounded faces"""
    result = SuiteResult("lattice")
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.trials):
        web = random_ladder(rng).to_web()
        result.record(len(web.coloring_basis()) == web.bounded_face_count(), repr(web))
    for b in braid_corpus(min(opts.max_crossings, 4), opts.seed, random_count=0):
        for _, ladder in resolve_crossings(b):
            web = ladder.to_web()
            result.record(len(web.coloring_basis()) == web.bounded_face_count(), f"{b.name}: {ladder.describe()}")
    return result


def check_reidemeister(opts: CheckOptions, max_color: int = 2) -> SuiteResult:
    """Braid relations and curls act as expected for colors up to max_color"""
    result = SuiteResult("reidemeister")
    colors = range(1, max_color + 1)
    for i in colors:
        for j in colors:
            straight = colored_homfly(ColoredBraid(2, (), (i, j)))
            for word in ((1, -1), (-1, 1)):
                value = colored_homfly(ColoredBraid(2, word, (i, j)))
                result.record(_same(value, straight), f"{list(word)} colors ({i},{j})")
            left = colored_homfly(ColoredBraid(3, (1, 2, 1), (i, j, i)))
            right = colored_homfly(ColoredBraid(3, (2, 1, 2), (i, j, i)))
            result.record(_same(left, right), f"[1,2,1]=[2,1,2] colors ({i},{j},{i})")
    result.record(_same(framing_factor(1), A), "positive curl on color 1")
    result.record(_same(framing_factor(1, positive=False), A ** -1), "negative curl on color 1")
    return result


def _bar(value: RationalFn) -> RationalFn:
    return value.substitute({"a": A ** -1, "q": Q ** -1})


def check_duality(opts: CheckOptions, max_n: int = 3) -> SuiteResult:
    """
    Mirrored braids give the a, q -> a^-1, q^-1 image of the column value;
    rows follow columns under q -> q^-1, with the color-1 symmetry it forces.
    """
    result = SuiteResult("duality")
    for name in ("3_1", "4_1"):
        b = known_braid(name)
        mirrored = replace(b, word=tuple(-g for g in b.word), name=f"{name} mirror")
        for n in range(1, max_n + 1):
            column = RationalFn.coerce(colored_homfly(b, ColorSpec.columns(n)))
            mirror_column = RationalFn.coerce(colored_homfly(mirrored, ColorSpec.columns(n)))
            result.record(_same(mirror_column, _bar(column)), f"{name} mirror n={n}")
            row = RationalFn.coerce(colored_homfly(b, ColorSpec.rows(n)))
            sign = -1 if n % 2 else 1
            result.record(_same(row, column.mirror_q() * sign), f"{name} n={n}")
            if n == 1:
                result.record(_same(column, -column.mirror_q()), f"{name} color 1 symmetry")
    return result


def check_algebra(opts: CheckOptions) -> SuiteResult:
    """Associativity, compatibility with the action on sequences, content_free idempotence"""
    result = SuiteResult("algebra")
    rng = np.random.default_rng(opts.seed)
    for t in range(max(opts.trials // 2, 1)):
        P, R, S = (random_operator(rng) for _ in range(3))
        result.record((P * R) * S == P * (R * S), f"associativity #{t}")
        f = random_sequence(rng, 6)
        lhs = op_apply(P * R, f)
        rhs = op_apply(P, op_apply(R, f))
        result.record(
            len(lhs) == len(rhs) and all(_same(x, y) for x, y in zip(lhs.values, rhs.values)),
            f"action #{t}",
        )
        once = content_free(P)
        result.record(content_free(once) == once, f"content_free #{t}")
    return result


def check_diagram(opts: CheckOptions, Ns=(2, 3, 4)) -> SuiteResult:
    """The specialization maps commute and respect multiplication"""
    result = SuiteResult("diagram")
    rng = np.random.default_rng(opts.seed)
    for t in range(opts.trials):
        P = random_operator(rng)
        R = random_operator(rng)
        both = op_specialize(P, {"a": 1, "q": 1})
        for N in Ns:
            to_w = {"a": Q ** N}
            P_N = op_specialize(P, to_w)
            result.record(op_specialize(P_N, {"q": 1}) == both, f"commute #{t} N={N}")
            result.record(
                op_specialize(P * R, to_w) == P_N * op_specialize(R, to_w),
                f"multiplicative #{t} N={N}",
            )
        result.record(
            op_specialize(P * R, {"a": 1, "q": 1}) == both * op_specialize(R, {"a": 1, "q": 1}),
            f"multiplicative #{t} q=1",
        )
    return result


def check_unknot(opts: CheckOptions, n_max: int = 8) -> SuiteResult:
    """The colored unknot is annihilated by a first-order operator, also at a = q^2"""
    result = SuiteResult("unknot")
    table = build_table(known_braid("unknot"), n_max=n_max, name="unknot")
    operator = guess_recursion(table, RecursionAnsatz(1, 2, 2, 2))
    result.record(operator is not None and operator.order == 1, "first-order recursion found")
    if operator is None:
        return result
    result.record(verify_recursion(operator, table).passed, f"annihilates n <= {n_max}")
    to_sl2 = {"a": Q ** 2}
    residual = op_apply(op_specialize(operator, to_sl2), table.specialize(to_sl2))
    result.record(residual.is_zero(), "a -> q^2 specialization annihilates the sl(2) table")
    return result


SUITES: Dict[str, Callable[[CheckOptions], SuiteResult]] = {
    "skein": check_skein,
    "triple": check_triple,
    "confluence": check_confluence,
    "coherence": check_coherence,
    "lattice": check_lattice,
    "reidemeister": check_reidemeister,
    "duality": check_duality,
    "algebra": check_algebra,
    "diagram": check_diagram,
    "unknot": check_unknot,
}


def run_suites(names: List[str], opts: CheckOptions) -> List[SuiteResult]:
    """Run the named suites ("all" expands to every suite) and log a line per suite"""
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"Unknown suites {unknown}; available: {', '.join(SUITES)}, all")
    print(f"Running {', '.join(names)} with seed {opts.seed}", file=sys.stderr)
    results = []
    for name in names:
        r = SUITES[name](opts)
        mark = "✅" if r.passed else "⭕"
        print(f"{mark} {name}: {r.trials - len(r.failures)}/{r.trials} passed", file=sys.stderr)
        for failure in r.failures[:5]:
            print(f"    failed: {failure}", file=sys.stderr)
        results.append(r)
    return results
