"""
q-Weyl algebra operators P = sum_j a_j(a, q, M) L^j with L M = q M L.

Algebra tags:
    "Wt"  - coefficients in Z[a^±, q^±, M]
    "W"   - coefficients in Z[q^±, M] (a specialized away)
    "ZML" - the commutative q = 1 quotient Z[M, L]
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from qholo.errors import SequenceRangeError
from qholo.poly import (
    ONE,
    ZERO,
    LaurentPoly,
    Q,
    RationalFn,
    divide_exact,
    normalize_unit,
    poly_gcd,
)

ALGEBRAS = ("Wt", "W", "ZML")

Scalar = Union[LaurentPoly, int]


def _shift(c: LaurentPoly, i: int, algebra: str) -> LaurentPoly:
    """L^i c(M) = c(q^i M) L^i"""
    if i == 0 or algebra == "ZML":
        return c
    return LaurentPoly({(e[0], e[1] + i * e[2], e[2]): v for e, v in c.items()})


def _rshift(c: RationalFn, i: int, algebra: str) -> RationalFn:
    if i == 0 or algebra == "ZML":
        return c
    return RationalFn(_shift(c.num, i, algebra), _shift(c.den, i, algebra))


class OreOperator:
    """Operator in normal form: coefficients a_0..a_d stored left of L^0..L^d"""

    __slots__ = ("algebra", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[Scalar], algebra: str = "Wt"):
        if algebra not in ALGEBRAS:
            raise ValueError(f"Unknown algebra '{algebra}', expected one of {ALGEBRAS}")
        cs = [LaurentPoly.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        forbidden = {"Wt": set(), "W": {"a"}, "ZML": {"a", "q"}}[algebra]
        for c in cs:
            if forbidden & set(c.vars):
                raise ValueError(f"Coefficient {c} does not belong to algebra {algebra}")
        self.algebra = algebra
        self.coeffs: Tuple[LaurentPoly, ...] = tuple(cs)
        self._hash: Optional[int] = None

    @classmethod
    def L(cls, algebra: str = "Wt") -> "OreOperator":
        return cls([ZERO, ONE], algebra)

    @classmethod
    def scalar(cls, c: Scalar, algebra: str = "Wt") -> "OreOperator":
        return cls([c], algebra)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> LaurentPoly:
        if not self.coeffs:
            raise ValueError("Zero operator has no leading coefficient")
        return self.coeffs[-1]

    def _coerce(self, other) -> "OreOperator":
        if isinstance(other, OreOperator):
            if other.algebra != self.algebra:
                raise ValueError(f"Mixing algebras {self.algebra} and {other.algebra}")
            return other
        return OreOperator.scalar(other, self.algebra)

    def __add__(self, other) -> "OreOperator":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for j in range(n):
            x = self.coeffs[j] if j < len(self.coeffs) else ZERO
            y = other.coeffs[j] if j < len(other.coeffs) else ZERO
            out.append(x + y)
        return OreOperator(out, self.algebra)

    __radd__ = __add__

    def __neg__(self) -> "OreOperator":
        return OreOperator([-c for c in self.coeffs], self.algebra)

    def __sub__(self, other) -> "OreOperator":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "OreOperator":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "OreOperator":
        return op_multiply(self, self._coerce(other))

    def __rmul__(self, other) -> "OreOperator":
        return op_multiply(self._coerce(other), self)

    def __pow__(self, k: int) -> "OreOperator":
        result = OreOperator.scalar(1, self.algebra)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, self.coeffs))
        return self._hash

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "terms": [[j, c.to_dict()] for j, c in enumerate(self.coeffs) if not c.is_zero()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OreOperator":
        terms = data.get("terms", [])
        order = max((int(j) for j, _ in terms), default=-1)
        coeffs = [ZERO] * (order + 1)
        for j, poly in terms:
            coeffs[int(j)] = LaurentPoly.from_dict(poly)
        return cls(coeffs, data.get("algebra", "Wt"))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            power = "" if j == 0 else ("L" if j == 1 else f"L^{j}")
            if not power:
                parts.append(f"({c})")
            elif c == ONE:
                parts.append(power)
            else:
                parts.append(f"({c})*{power}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OreOperator[{self.algebra}]({self})"


def op_multiply(P: OreOperator, Q: OreOperator) -> OreOperator:
    """Normal-ordered product (sum a_i L^i)(sum b_j L^j) = sum a_i b_j(q^i M) L^(i+j)"""
    if P.algebra != Q.algebra:
        raise ValueError(f"Cannot multiply operators of algebras {P.algebra} and {Q.algebra}")
    if P.is_zero() or Q.is_zero():
        return OreOperator([], P.algebra)
    out = [ZERO] * (P.order + Q.order + 1)
    for i, a in enumerate(P.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(Q.coeffs):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * _shift(b, i, P.algebra)
    return OreOperator(out, P.algebra)


@dataclass(frozen=True)
class SequenceView:
    """Values f_0..f_n_max of a sequence of rational functions in (a, q)"""

    values: Tuple[RationalFn, ...]

    @classmethod
    def of(cls, values: Sequence[Union[RationalFn, LaurentPoly, int]]) -> "SequenceView":
        return cls(tuple(RationalFn.coerce(v) for v in values))

    @classmethod
    def from_function(cls, fn: Callable[[int], Union[RationalFn, LaurentPoly, int]], n_max: int) -> "SequenceView":
        return cls.of([fn(n) for n in range(n_max + 1)])

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> RationalFn:
        return self.values[n]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def specialize(self, bindings: Dict[str, Union[int, LaurentPoly]]) -> "SequenceView":
        return SequenceView(tuple(v.substitute(bindings) for v in self.values))


def op_apply(P: OreOperator, f: SequenceView) -> SequenceView:
    """(P f)_n = sum_j a_j(a, q, q^n) f_{n+j} for n in 0..n_max-d"""
    d = max(P.order, 0)
    if f.n_max < d:
        raise SequenceRangeError(
            f"Operator of order {d} needs a sequence up to n={d}, got n_max={f.n_max}"
        )
    out = []
    for n in range(f.n_max - d + 1):
        total = RationalFn(ZERO)
        for j, c in enumerate(P.coeffs):
            if c.is_zero():
                continue
            total = total + RationalFn(c.substitute({"M": Q ** n})) * f[n + j]
        out.append(total)
    return SequenceView(tuple(out))


def content_free(P: OreOperator) -> OreOperator:
    """
    Remove the full Z[a, q, M] content (integer, polynomial and monomial)
    and fix the sign so the leading coefficient's lexicographically-largest
    term is positive.
    """
    if P.is_zero():
        return P
    g = ZERO
    for c in P.coeffs:
        if not c.is_zero():
            g = poly_gcd(g, c) if not g.is_zero() else normalize_unit(c)
        if g == ONE:
            break
    coeffs = [divide_exact(c, g) if not c.is_zero() else c for c in P.coeffs]
    nonzero = [c for c in coeffs if not c.is_zero()]
    low = tuple(min(c.min_exps()[i] for c in nonzero) for i in range(3))
    coeffs = [c.shift((-low[0], -low[1], -low[2])) for c in coeffs]
    if coeffs[-1].leading_term()[1] < 0:
        coeffs = [-c for c in coeffs]
    return OreOperator(coeffs, P.algebra)


def op_specialize(P: OreOperator, bindings: Dict[str, Union[int, LaurentPoly]]) -> OreOperator:
    """
    Coefficientwise substitution along the commutative diagram
    Wt --(a -> q^N)--> W --(q -> 1)--> ZML, or Wt --(a -> 1, q -> 1)--> ZML.
    """
    if "M" in bindings:
        raise ValueError("op_specialize does not substitute M")
    target = P.algebra
    if "a" in bindings:
        if P.algebra != "Wt":
            raise ValueError(f"Cannot specialize a in algebra {P.algebra}")
        target = "W"
    if "q" in bindings:
        if target != "W":
            raise ValueError("q -> 1 needs a specialized first (or together)")
        if bindings["q"] != 1:
            raise ValueError("Only q -> 1 is supported")
        target = "ZML"
    return OreOperator([c.substitute(bindings) for c in P.coeffs], target)


# -- localized division ---------------------------------------------------

FracOp = List[RationalFn]


def _to_frac(P: OreOperator) -> FracOp:
    return [RationalFn(c, ONE, _reduced=True) for c in P.coeffs]


def _trim(r: FracOp) -> FracOp:
    while r and r[-1].is_zero():
        r.pop()
    return r


def _right_remainder(a: FracOp, b: FracOp, algebra: str) -> FracOp:
    r = _trim(list(a))
    e = len(b) - 1
    lead = b[-1]
    while r and len(r) - 1 >= e:
        k = len(r) - 1 - e
        c = r[-1] / _rshift(lead, k, algebra)
        for j, bj in enumerate(b):
            if not bj.is_zero():
                r[j + k] = r[j + k] - c * _rshift(bj, k, algebra)
        r[-1] = RationalFn(ZERO)
        _trim(r)
    return r


def _monic(r: FracOp) -> FracOp:
    lead = r[-1]
    return [c / lead for c in r]


def _clear(r: FracOp, algebra: str) -> OreOperator:
    common = ONE
    for c in r:
        g = poly_gcd(common, c.den)
        common = divide_exact(common * c.den, g)
    return content_free(OreOperator([c.num * divide_exact(common, c.den) for c in r], algebra))


def right_remainder(P: OreOperator, Q: OreOperator) -> FracOp:
    """Remainder of P under right division by Q in the localized algebra"""
    if Q.is_zero():
        raise ValueError("Right division by the zero operator")
    return _right_remainder(_to_frac(P), _to_frac(Q), P.algebra)


def right_divides(Q: OreOperator, P: OreOperator) -> bool:
    """True when P = S Q for some S with rational coefficients"""
    return not right_remainder(P, Q)


def right_gcd(P: OreOperator, Q: OreOperator) -> OreOperator:
    """Right gcd by the Euclidean algorithm, returned as its content-free integral lift"""
    if P.algebra != Q.algebra:
        raise ValueError(f"Cannot take gcd across algebras {P.algebra} and {Q.algebra}")
    if P.is_zero():
        return content_free(Q)
    if Q.is_zero():
        return content_free(P)
    a, b = _monic(_to_frac(P)), _monic(_to_frac(Q))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _right_remainder(a, b, P.algebra)
        a, b = b, (_monic(r) if r else r)
    return _clear(a, P.algebra)
