"""
Colored sequence tables and the q-holonomic recursions they satisfy.

Recursions are found by ansatz fitting: the unknown coefficients of
a_j(a, q, M) = sum c_{j,m,x,y} a^x q^y M^m turn every index n into a
polynomial identity in (a, q), each monomial of which is one exact linear
equation. Indices are added one at a time, each restricting the kernel
found so far (over QQ with sympy, cleared to integers). A kernel is only
trusted once the trailing indices stop cutting it down.
"""

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, lcm
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from qholo.errors import AnsatzError, APolyFileError, InsufficientDataError, QHoloError
from qholo.link import ColorSpec, ColoredBraid, colored_homfly, renormalize
from qholo.poly import ONE, LaurentPoly, Q, RationalFn, divide_exact, poly_gcd
from qholo.qweyl import (
    OreOperator,
    SequenceView,
    content_free,
    op_apply,
    op_specialize,
    right_gcd,
)


@dataclass(frozen=True)
class SequenceTable:
    """Values X(n) for n = 0..n_max of a link with one component colored n"""

    name: str
    axis: int
    values: Tuple[RationalFn, ...]
    shape: str = "column"
    framing: str = "zero"
    fixed: Tuple[int, ...] = ()

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def view(self) -> SequenceView:
        return SequenceView(self.values)

    def truncated(self, n_max: int) -> "SequenceTable":
        return SequenceTable(self.name, self.axis, self.values[: n_max + 1], self.shape, self.framing, self.fixed)

    def specialize(self, bindings) -> SequenceView:
        return self.view().specialize(bindings)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "axis": self.axis,
            "shape": self.shape,
            "framing": self.framing,
            "fixed": list(self.fixed),
            "values": [v.to_dict() for v in self.values],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SequenceTable":
        return cls(
            data.get("name", ""),
            int(data.get("axis", 0)),
            tuple(RationalFn.from_dict(v) for v in data["values"]),
            data.get("shape", "column"),
            data.get("framing", "zero"),
            tuple(data.get("fixed", [])),
        )


@dataclass(frozen=True)
class RecursionAnsatz:
    """Order d and exponent bounds 0..bound for M, a and q in every a_j"""

    order: int
    m_degree: int
    a_degree: int
    q_degree: int

    def __post_init__(self):
        if min(self.order, self.m_degree, self.a_degree, self.q_degree) < 0:
            raise AnsatzError(f"Ansatz bounds must be nonnegative: {self}")

    @property
    def rank(self) -> Tuple[int, int, int, int]:
        return (self.order, self.m_degree, self.a_degree, self.q_degree)

    @property
    def unknowns(self) -> List[Tuple[int, int, int, int]]:
        return [
            (j, m, x, y)
            for j in range(self.order + 1)
            for m in range(self.m_degree + 1)
            for x in range(self.a_degree + 1)
            for y in range(self.q_degree + 1)
        ]

    def required_n_max(self, held_out: int, min_identities: int = 1) -> int:
        return self.order + held_out + min_identities - 1


# -- tables ---------------------------------------------------------------


def _component_sizes(b: ColoredBraid, axis: int, n: int, fixed: Sequence[int]) -> Tuple[int, ...]:
    count = len(b.components)
    if not 0 <= axis < count:
        raise AnsatzError(f"Axis {axis} out of range for a {count}-component link")
    sizes = list(fixed) if fixed else [1] * count
    if len(sizes) != count:
        raise AnsatzError(f"{len(sizes)} fixed colors given for a {count}-component link")
    sizes[axis] = n
    return tuple(sizes)


def _table_entry(args) -> RationalFn:
    b, sizes, shape, framing = args
    spec = ColorSpec(sizes, shape)
    value = RationalFn.coerce(colored_homfly(b, spec))
    if framing == "zero":
        value = renormalize(value, b, spec)
    return value


def build_table(
    b: ColoredBraid,
    axis: int = 0,
    n_max: int = 4,
    fixed: Sequence[int] = (),
    shape: str = "column",
    framing: str = "zero",
    workers: int = 1,
    name: Optional[str] = None,
) -> SequenceTable:
    """
    Compute X(n) for n = 0..n_max with component `axis` colored n.

    Args:
        b: Braid presentation of the link
        axis: Index of the component whose color varies
        n_max: Last color in the table
        fixed: Colors of all components (the axis entry is overwritten)
        shape: "column" for (1^n), "row" for (n)
        framing: "zero" renormalizes every component to writhe 0,
            "blackboard" keeps the framing of the braid closure
        workers: Process pool size, 1 computes in-process

    Returns:
        SequenceTable with n_max + 1 exact values
    """
    if n_max < 0:
        raise AnsatzError(f"n_max must be nonnegative, got {n_max}")
    if framing not in ("zero", "blackboard"):
        raise AnsatzError(f"Unknown framing '{framing}'")
    jobs = [(b, _component_sizes(b, axis, n, fixed), shape, framing) for n in range(n_max + 1)]
    print(f"Building table for {name or b} up to n={n_max}", file=sys.stderr)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_table_entry, jobs))
    else:
        values = []
        for n, job in enumerate(jobs):
            values.append(_table_entry(job))
            print(f"  n={n} done", file=sys.stderr)
    fixed_sizes = jobs[0][1] if jobs else tuple(fixed)
    return SequenceTable(name or b.name or str(b), axis, tuple(values), shape, framing, fixed_sizes)


def table_from_values(values: Sequence, name: str = "sequence") -> SequenceTable:
    return SequenceTable(name, 0, tuple(RationalFn.coerce(v) for v in values), framing="blackboard")


# -- guessing -------------------------------------------------------------


def _lcm_poly(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    common = ONE
    for p in polys:
        g = poly_gcd(common, p)
        common = divide_exact(common * p, g)
    return common


def _index_rows(table: SequenceTable, ansatz: RecursionAnsatz, n: int) -> List[Dict[int, int]]:
    """One sparse row per monomial in (a, q) of the identity at index n"""
    d = ansatz.order
    window = [table.values[n + j] for j in range(d + 1)]
    common = _lcm_poly([v.den for v in window])
    cleared = [v.num * divide_exact(common, v.den) for v in window]
    by_monomial: Dict[Tuple[int, int, int], Dict[int, int]] = {}
    for k, (j, m, x, y) in enumerate(ansatz.unknowns):
        poly = cleared[j]
        if poly.is_zero():
            continue
        dq = y + m * n
        for e, c in poly.items():
            key = (e[0] + x, e[1] + dq, e[2])
            row = by_monomial.setdefault(key, {})
            row[k] = row.get(k, 0) + c
    return [r for r in by_monomial.values() if any(r.values())]


def _primitive(vec: Sequence[int]) -> List[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    return [v // g for v in vec] if g else list(vec)


def _integer_kernel(rows: List[Dict[int, int]], width: int) -> List[List[int]]:
    rows = [r for r in rows if any(r.values())]
    if not rows:
        return [[1 if i == k else 0 for i in range(width)] for k in range(width)]
    sparse = {i: {k: QQ(v) for k, v in row.items() if v} for i, row in enumerate(rows)}
    matrix = DomainMatrix(sparse, (len(rows), width), QQ)
    basis = matrix.nullspace().to_Matrix().tolist()
    out = []
    for vec in basis:
        vec = [sympy.Rational(v) for v in vec]
        scale = 1
        for v in vec:
            scale = lcm(scale, int(v.q))
        ints = _primitive([int(v * scale) for v in vec])
        if any(ints):
            out.append(ints)
    return out


def _restrict(basis: List[List[int]], rows: List[Dict[int, int]]) -> List[List[int]]:
    """Integer basis of the part of span(basis) that also satisfies rows"""
    projected = []
    for row in rows:
        image = {}
        for c, vec in enumerate(basis):
            v = sum(coef * vec[k] for k, coef in row.items())
            if v:
                image[c] = v
        if image:
            projected.append(image)
    if not projected:
        return basis
    width = len(basis[0])
    out = []
    for combo in _integer_kernel(projected, len(basis)):
        vec = [0] * width
        for c, weight in enumerate(combo):
            if weight:
                for k, v in enumerate(basis[c]):
                    vec[k] += weight * v
        out.append(_primitive(vec))
    return out


def _vector_to_operator(vec: Sequence[int], ansatz: RecursionAnsatz) -> OreOperator:
    coeffs: List[Dict] = [dict() for _ in range(ansatz.order + 1)]
    for (j, m, x, y), c in zip(ansatz.unknowns, vec):
        if c:
            coeffs[j][(x, y, m)] = c
    return OreOperator([LaurentPoly(c) for c in coeffs], "Wt")


@dataclass
class KernelFit:
    """
    Ansatz kernel after every index of a table.

    `fitted` are the indices whose equations cut the kernel down,
    `confirming` the trailing indices that every kernel element already
    satisfied before their equations were added.
    """

    basis: List[List[int]]
    fitted: List[int]
    confirming: List[int]


def fit_kernel(
    table: SequenceTable,
    ansatz: RecursionAnsatz,
    held_out: int = 2,
    min_identities: int = 1,
) -> KernelFit:
    """
    Intersect the ansatz kernel with the equations of index 0, 1, ...,
    n_max - d in turn.

    The fit is accepted once the last `held_out` indices leave the kernel
    dimension unchanged. A kernel that shrinks to zero is a conclusive
    "no recursion in this ansatz".

    Raises:
        InsufficientDataError: The table is too short, or the kernel was
            still shrinking at its end
    """
    required = ansatz.required_n_max(held_out, min_identities)
    if table.n_max < required:
        raise InsufficientDataError(
            f"Ansatz {ansatz.rank} with {held_out} held-out terms needs n_max >= {required}, "
            f"table stops at {table.n_max}",
            required_n_max=required,
        )
    width = len(ansatz.unknowns)
    basis: Optional[List[List[int]]] = None
    fitted: List[int] = []
    confirming: List[int] = []
    for n in range(table.n_max - ansatz.order + 1):
        rows = _index_rows(table, ansatz, n)
        new = _integer_kernel(rows, width) if basis is None else _restrict(basis, rows)
        if basis is not None and len(new) == len(basis) and len(fitted) >= min_identities:
            confirming.append(n)
        else:
            fitted.append(n)
            confirming = []
        basis = new
        if not basis:
            return KernelFit([], fitted, [])
    if len(confirming) < held_out:
        needed = table.n_max + held_out - len(confirming)
        raise InsufficientDataError(
            f"Kernel of ansatz {ansatz.rank} still has dimension {len(basis)} and shrank at "
            f"n={fitted[-1]}; needs n_max >= {needed}",
            required_n_max=needed,
        )
    return KernelFit(basis, fitted, confirming)


def _annihilator(fit: KernelFit, ansatz: RecursionAnsatz, table: SequenceTable) -> Optional[OreOperator]:
    candidates: List[OreOperator] = []
    for vec in fit.basis:
        c = content_free(_vector_to_operator(vec, ansatz))
        if not c.is_zero() and c not in candidates:
            candidates.append(c)
    if not candidates:
        return None
    candidates.sort(key=lambda c: c.order)
    if len(candidates) == 1:
        return candidates[0]
    folded = candidates[0]
    for c in candidates[1:]:
        folded = right_gcd(folded, c)
    if folded.order >= 0 and verify_recursion(folded, table).passed:
        return folded
    # every kernel element annihilates the table
    print(
        f"⭕ Kernel of dimension {len(candidates)} has no annihilating right gcd, "
        f"keeping its lowest-order element",
        file=sys.stderr,
    )
    return candidates[0]


def guess_recursion(
    table: SequenceTable,
    ansatz: RecursionAnsatz,
    held_out: int = 2,
    min_identities: int = 1,
) -> Optional[OreOperator]:
    """
    Content-free operator of the ansatz annihilating the whole table, or
    None when the kernel is trivial.

    Raises:
        InsufficientDataError: See fit_kernel
    """
    return _annihilator(fit_kernel(table, ansatz, held_out, min_identities), ansatz, table)


def operator_rank(P: OreOperator) -> Tuple[int, int, int, int]:
    """(order, M span, a span, q span) of an operator"""
    exps = [e for c in P.coeffs for e, _ in c.items()]
    if not exps:
        return (P.order, 0, 0, 0)
    span = [max(e[i] for e in exps) - min(e[i] for e in exps) for i in range(3)]
    return (P.order, span[2], span[0], span[1])


@dataclass
class SearchResult:
    operator: Optional[OreOperator]
    ansatz: Optional[RecursionAnsatz]
    tried: List[Tuple[int, int, int, int]] = field(default_factory=list)
    skipped: List[Tuple[int, int, int, int]] = field(default_factory=list)
    unseen: int = 0

    @property
    def found(self) -> bool:
        return self.operator is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "operator": self.operator.to_dict() if self.operator else None,
            "ansatz": list(self.ansatz.rank) if self.ansatz else None,
            "minimality": "minimal within searched ansatz",
            "ranks_without_recursion": [list(r) for r in self.tried],
            "ranks_skipped_for_data": [list(r) for r in self.skipped],
            "confirming_values": self.unseen,
        }


def search_recursion(
    table: SequenceTable,
    bounds: RecursionAnsatz,
    held_out: int = 2,
    min_identities: int = 1,
) -> SearchResult:
    """
    Fit each order 0..d at the full M, a and q bounds and stop at the first
    order with a recursion.

    An annihilator in some ansatz lies in every larger one, so an empty
    kernel at full bounds rules out the whole order. The reported ansatz
    is the exponent span of the content-free operator found.
    """
    result = SearchResult(None, None)
    for d in range(bounds.order + 1):
        ansatz = RecursionAnsatz(d, bounds.m_degree, bounds.a_degree, bounds.q_degree)
        try:
            fit = fit_kernel(table, ansatz, held_out, min_identities)
        except InsufficientDataError as err:
            print(f"⭕ Skipping ansatz {ansatz.rank}: {err}", file=sys.stderr)
            result.skipped.append(ansatz.rank)
            continue
        operator = _annihilator(fit, ansatz, table)
        if operator is None:
            result.tried.append(ansatz.rank)
            continue
        result.operator = operator
        result.ansatz = RecursionAnsatz(*operator_rank(operator))
        result.unseen = len(fit.confirming)
        print(
            f"✅ Recursion of ansatz {result.ansatz.rank} found, "
            f"confirmed by the last {result.unseen} values",
            file=sys.stderr,
        )
        return result
    print(f"⭕ No recursion within ansatz {bounds.rank}", file=sys.stderr)
    return result


# -- verification ---------------------------------------------------------


@dataclass
class VerifyReport:
    passed: bool
    checked: List[int]
    held_out: List[int]
    first_failure: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "held_out": self.held_out,
            "first_failure": self.first_failure,
        }


def verify_recursion(P: OreOperator, table: SequenceTable, held_out: int = 0) -> VerifyReport:
    """Apply P on the whole table; the last `held_out` values are reported as unseen"""
    residual = op_apply(P, table.view())
    checked = list(range(len(residual)))
    unseen = list(range(table.n_max - held_out + 1, table.n_max + 1)) if held_out else []
    for n, r in enumerate(residual.values):
        if not r.is_zero():
            return VerifyReport(False, checked, unseen, n)
    return VerifyReport(True, checked, unseen)


@dataclass
class SpecializationReport:
    passed: bool
    per_n: Dict[int, dict]
    q1_operators: Dict[int, str]
    q1_coincide: bool
    a1_q1_operator: str

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "per_N": {str(n): r for n, r in self.per_n.items()},
            "q1_operators": {str(n): s for n, s in self.q1_operators.items()},
            "q1_coincide": self.q1_coincide,
            "a1_q1_operator": self.a1_q1_operator,
            "note": "specializations may be non-minimal; minimality is not adjudicated",
        }


def specialization_suite(P: OreOperator, table: SequenceTable, Ns: Sequence[int]) -> SpecializationReport:
    """
    For every N: P(a = q^N) must annihilate the table at a = q^N, and the
    further q = 1 specializations must all equal P(a = 1, q = 1).
    """
    per_n: Dict[int, dict] = {}
    q1: Dict[int, OreOperator] = {}
    reference = op_specialize(P, {"a": 1, "q": 1})
    passed = True
    for N in Ns:
        P_N = op_specialize(P, {"a": Q ** N})
        residual = op_apply(P_N, table.specialize({"a": Q ** N}))
        failing = next((n for n, r in enumerate(residual.values) if not r.is_zero()), None)
        per_n[N] = {"passed": failing is None, "first_failure": failing, "operator": str(P_N)}
        if failing is not None:
            passed = False
        q1[N] = op_specialize(P_N, {"q": 1})
    coincide = all(op == reference for op in q1.values())
    return SpecializationReport(
        passed and coincide,
        per_n,
        {N: str(op) for N, op in q1.items()},
        coincide,
        str(reference),
    )


# -- conjecture experiment -----------------------------------------------


_M, _L = sympy.symbols("M L")


def load_apoly(path) -> sympy.Poly:
    """Read an A-polynomial file: a JSON list of {coef, e_M, e_L}"""
    try:
        with open(Path(path), "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise APolyFileError(f"Cannot read A-polynomial file {path}: {e}")
    return apoly_from_terms(data)


def apoly_from_terms(data) -> sympy.Poly:
    if isinstance(data, dict):
        data = data.get("terms", [])
    if not isinstance(data, list) or not data:
        raise APolyFileError("A-polynomial must be a nonempty list of terms")
    expr = sympy.Integer(0)
    for term in data:
        try:
            coef, e_m, e_l = int(term["coef"]), int(term["e_M"]), int(term["e_L"])
        except (KeyError, TypeError, ValueError) as e:
            raise APolyFileError(f"Malformed A-polynomial term {term}: {e}")
        if e_m < 0 or e_l < 0:
            raise APolyFileError(f"Negative exponent in A-polynomial term {term}")
        expr += coef * _M ** e_m * _L ** e_l
    if expr == 0:
        raise APolyFileError("A-polynomial is zero")
    return sympy.Poly(expr, _M, _L, domain="ZZ")


def operator_to_ml(P: OreOperator) -> sympy.Poly:
    """A(1, 1, M, L) as a commutative polynomial in M and L"""
    if P.algebra != "ZML":
        P = op_specialize(P, {"a": 1, "q": 1}) if P.algebra == "Wt" else op_specialize(P, {"q": 1})
    expr = sympy.Integer(0)
    for j, c in enumerate(P.coeffs):
        for (_, _, m), v in c.items():
            expr += v * _M ** m * _L ** j
    return sympy.Poly(expr, _M, _L, domain="ZZ")


@dataclass
class ConjectureReport:
    specialized: str
    supplied: str
    exact: bool
    quotient: Optional[str]
    in_z_m: bool
    common_factor: Optional[str] = None

    def to_dict(self) -> dict:
        record = {
            "label": "experiment: conjecture, not a theorem",
            "A_1_1": self.specialized,
            "A_supplied": self.supplied,
            "exact": self.exact,
            "quotient": self.quotient,
            "quotient_in_Z[M]": self.in_z_m,
        }
        if self.common_factor is not None:
            record["common_factor"] = self.common_factor
        return record


def conjecture_report(P: OreOperator, apoly, with_gcd: bool = False) -> ConjectureReport:
    """
    Divide P(a = 1, q = 1) by a supplied A-polynomial A(M, L).

    A non-exact division is a finding, reported with exact = False.
    """
    supplied = apoly if isinstance(apoly, sympy.Poly) else load_apoly(apoly)
    specialized = operator_to_ml(P)
    if specialized.is_zero:
        raise QHoloError("Operator vanishes at a = 1, q = 1")
    quotient, remainder = sympy.div(
        specialized.set_domain(QQ), supplied.set_domain(QQ)
    )
    exact = remainder.is_zero
    in_z_m = False
    quotient_text = None
    if exact:
        quotient_text = str(quotient.as_expr())
        in_z_m = quotient.degree(_L) == 0 and all(c.is_Integer for c in quotient.coeffs())
    common = None
    if with_gcd:
        common = str(sympy.gcd(specialized, supplied).as_expr())
    return ConjectureReport(
        str(specialized.as_expr()),
        str(supplied.as_expr()),
        exact,
        quotient_text,
        in_z_m,
        common,
    )
