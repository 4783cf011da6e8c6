"""
Exact multivariate Laurent polynomials and rational functions in (a, q, M).

Polynomials are sparse maps from exponent triples (e_a, e_q, e_M) to nonzero
Python integers. Rational functions are kept reduced with a canonical
denominator, so equality is syntactic. Multivariate gcd is delegated to
sympy; everything else is native.
"""

from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy

from qholo.errors import (
    InterpolationError,
    NotDivisibleError,
    SpecializationError,
    ZeroDivisionPolyError,
)

VARS = ("a", "q", "M")
Exps = Tuple[int, int, int]
ZERO_EXPS: Exps = (0, 0, 0)

_SYMBOLS = sympy.symbols("a q M")


def _add(e: Exps, f: Exps) -> Exps:
    return (e[0] + f[0], e[1] + f[1], e[2] + f[2])


def _sub(e: Exps, f: Exps) -> Exps:
    return (e[0] - f[0], e[1] - f[1], e[2] - f[2])


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the integers in (a, q, M)"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Dict[Exps, int]] = None):
        self._terms: Dict[Exps, int] = (
            {e: c for e, c in terms.items() if c != 0} if terms else {}
        )
        self._hash: Optional[int] = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({ZERO_EXPS: c})

    @classmethod
    def monomial(cls, coef: int = 1, a: int = 0, q: int = 0, M: int = 0) -> "LaurentPoly":
        return cls({(a, q, M): coef})

    @classmethod
    def coerce(cls, value: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"Cannot coerce {type(value).__name__} to LaurentPoly")

    # -- inspection -------------------------------------------------------

    def items(self) -> List[Tuple[Exps, int]]:
        """Terms in canonical order (lexicographically largest exponent first)"""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exps: Exps) -> int:
        return self._terms.get(exps, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXPS in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ZERO_EXPS, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of Z[a^±, q^±, M^±] are signed monomials"""
        return self.is_monomial() and abs(next(iter(self._terms.values()))) == 1

    @property
    def vars(self) -> Tuple[str, ...]:
        used = [False, False, False]
        for e in self._terms:
            for i in range(3):
                if e[i]:
                    used[i] = True
        return tuple(v for v, u in zip(VARS, used) if u)

    def degree(self, var: str) -> int:
        i = VARS.index(var)
        return max(e[i] for e in self._terms) if self._terms else 0

    def min_degree(self, var: str) -> int:
        i = VARS.index(var)
        return min(e[i] for e in self._terms) if self._terms else 0

    def min_exps(self) -> Exps:
        if not self._terms:
            return ZERO_EXPS
        return tuple(min(e[i] for e in self._terms) for i in range(3))  # type: ignore[return-value]

    def max_exps(self) -> Exps:
        if not self._terms:
            return ZERO_EXPS
        return tuple(max(e[i] for e in self._terms) for i in range(3))  # type: ignore[return-value]

    def leading_term(self) -> Tuple[Exps, int]:
        if not self._terms:
            raise ValueError("Zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def integer_content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        other = LaurentPoly.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        out: Dict[Exps, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit():
                raise NotDivisibleError(f"Cannot invert non-unit {self}")
            (e, c), = self._terms.items()
            return LaurentPoly({(-e[0] * -k, -e[1] * -k, -e[2] * -k): c ** (-k)})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "RationalFn":
        return RationalFn(self) / other

    def __rtruediv__(self, other) -> "RationalFn":
        return RationalFn(LaurentPoly.coerce(other)) / self

    def shift(self, exps: Exps) -> "LaurentPoly":
        """Multiply by the monomial a^e_a q^e_q M^e_M"""
        return LaurentPoly({_add(e, exps): c for e, c in self._terms.items()})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -----------------------------------------------------

    def substitute(self, bindings: Dict[str, Union[int, "LaurentPoly"]]) -> "LaurentPoly":
        """
        Substitute variables by integers or Laurent polynomials.

        Negative powers of a variable can only be substituted by units
        (signed monomials); anything else raises NotDivisibleError.
        """
        if not bindings:
            return self
        values = {}
        for name, value in bindings.items():
            if name not in VARS:
                raise ValueError(f"Unknown variable '{name}'")
            values[VARS.index(name)] = LaurentPoly.coerce(value)

        # Fast path: every substituted value is a monomial
        if all(v.is_monomial() or v.is_zero() for v in values.values()):
            return self._substitute_monomials(values)

        out = ZERO
        powers: Dict[Tuple[int, int], LaurentPoly] = {}
        for e, c in self._terms.items():
            rest = list(e)
            term = LaurentPoly.constant(c)
            for i, v in values.items():
                k = e[i]
                rest[i] = 0
                if k == 0:
                    continue
                key = (i, k)
                if key not in powers:
                    powers[key] = v ** k
                term = term * powers[key]
            out = out + term.shift(tuple(rest))  # type: ignore[arg-type]
        return out

    def _substitute_monomials(self, values: Dict[int, "LaurentPoly"]) -> "LaurentPoly":
        out: Dict[Exps, int] = {}
        mono = {}
        for i, v in values.items():
            if v.is_zero():
                mono[i] = None
            else:
                (ve, vc), = v._terms.items()
                mono[i] = (ve, vc)
        for e, c in self._terms.items():
            exps = [0 if i in mono else e[i] for i in range(3)]
            coef = c
            vanished = False
            for i, m in mono.items():
                k = e[i]
                if k == 0:
                    continue
                if m is None:
                    if k < 0:
                        raise ZeroDivisionPolyError(f"Substituting 0 for {VARS[i]}^{k}")
                    vanished = True
                    break
                ve, vc = m
                if k < 0 and abs(vc) != 1:
                    raise NotDivisibleError(
                        f"Cannot substitute non-unit value for negative power of {VARS[i]}"
                    )
                coef *= vc ** k if k > 0 else vc ** (-k)
                exps = [exps[j] + k * ve[j] for j in range(3)]
            if vanished:
                continue
            key = (exps[0], exps[1], exps[2])
            out[key] = out.get(key, 0) + coef
        return LaurentPoly(out)

    def mirror_q(self) -> "LaurentPoly":
        """The involution q -> q^{-1}"""
        return LaurentPoly({(e[0], -e[1], e[2]): c for e, c in self._terms.items()})

    # -- conversion -------------------------------------------------------

    def to_sympy(self) -> sympy.Expr:
        a, q, M = _SYMBOLS
        return sympy.Add(
            *[c * a ** e[0] * q ** e[1] * M ** e[2] for e, c in self._terms.items()]
        )

    @classmethod
    def from_sympy(cls, expr) -> "LaurentPoly":
        a, q, M = _SYMBOLS
        expr = sympy.expand(sympy.sympify(expr))
        out: Dict[Exps, int] = {}
        for term in sympy.Add.make_args(expr):
            if term == 0:
                continue
            coef, rest = term.as_coeff_Mul()
            if not coef.is_Integer:
                raise ValueError(f"Non-integer coefficient in {term}")
            powers = rest.as_powers_dict() if rest != 1 else {}
            exps = [0, 0, 0]
            for base, power in powers.items():
                if base == 1:
                    continue
                if base not in _SYMBOLS or not sympy.sympify(power).is_Integer:
                    raise ValueError(f"Unsupported factor {base}**{power}")
                exps[_SYMBOLS.index(base)] += int(power)
            key = (exps[0], exps[1], exps[2])
            out[key] = out.get(key, 0) + int(coef)
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        a, q, M = _SYMBOLS
        expr = sympy.parse_expr(text.replace("^", "**"), local_dict={"a": a, "q": q, "M": M})
        return cls.from_sympy(expr)

    def to_dict(self) -> dict:
        return {
            "vars": list(VARS),
            "terms": [{"coef": str(c), "exps": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LaurentPoly":
        header = data.get("vars", list(VARS))
        out: Dict[Exps, int] = {}
        for record in data.get("terms", []):
            exps = [0, 0, 0]
            for name, k in zip(header, record["exps"]):
                exps[VARS.index(name)] = int(k)
            out[(exps[0], exps[1], exps[2])] = int(record["coef"])
        return cls(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for name, k in zip(VARS, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}" if k > 0 else f"{name}^({k})")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(a=1)
Q = LaurentPoly.monomial(q=1)
M = LaurentPoly.monomial(M=1)


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """
    Exact division p / d in the Laurent ring.

    Raises NotDivisibleError instead of truncating when d does not divide p.
    """
    if d.is_zero():
        raise ZeroDivisionPolyError("Division by the zero polynomial")
    if p.is_zero():
        return ZERO
    lead_e, lead_c = d.leading_term()
    if d.is_monomial():
        out = {}
        for e, c in p._terms.items():
            if c % lead_c:
                raise NotDivisibleError(f"{p} is not divisible by {d}")
            out[_sub(e, lead_e)] = c // lead_c
        return LaurentPoly(out)

    # Any exact quotient lives in this exponent box
    low = _sub(p.min_exps(), d.min_exps())
    high = _sub(p.max_exps(), d.max_exps())
    remainder = dict(p._terms)
    quotient: Dict[Exps, int] = {}
    while remainder:
        e = max(remainder)
        c = remainder[e]
        qe = _sub(e, lead_e)
        if any(qe[i] < low[i] or qe[i] > high[i] for i in range(3)) or c % lead_c:
            raise NotDivisibleError(f"{p} is not divisible by {d}")
        qc = c // lead_c
        quotient[qe] = qc
        for de, dc in d._terms.items():
            key = _add(qe, de)
            v = remainder.get(key, 0) - qc * dc
            if v:
                remainder[key] = v
            else:
                remainder.pop(key, None)
    return LaurentPoly(quotient)


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Strip monomial content and fix the sign of the lexicographically-largest term"""
    if p.is_zero():
        return p
    p = p.shift(tuple(-k for k in p.min_exps()))  # type: ignore[arg-type]
    if p.leading_term()[1] < 0:
        p = -p
    return p


def poly_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units, returned monomial-free with positive lead"""
    if p.is_zero():
        return normalize_unit(r)
    if r.is_zero():
        return normalize_unit(p)
    if p.is_monomial() or r.is_monomial():
        return LaurentPoly.constant(gcd(p.integer_content(), r.integer_content()))
    ps = p.shift(tuple(-k for k in p.min_exps()))  # type: ignore[arg-type]
    rs = r.shift(tuple(-k for k in r.min_exps()))  # type: ignore[arg-type]
    gens = _SYMBOLS
    g = sympy.Poly.from_dict(dict(ps._terms), *gens, domain="ZZ").gcd(
        sympy.Poly.from_dict(dict(rs._terms), *gens, domain="ZZ")
    )
    out = {tuple(int(k) for k in monom): int(c) for monom, c in g.terms()}
    return normalize_unit(LaurentPoly(out))  # type: ignore[arg-type]


class RationalFn:
    """Reduced fraction of Laurent polynomials with a canonical denominator"""

    __slots__ = ("num", "den", "_hash")

    def __init__(
        self,
        num: Union[LaurentPoly, int],
        den: Union[LaurentPoly, int, None] = None,
        _reduced: bool = False,
    ):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionPolyError("Rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num: LaurentPoly = num
        self.den: LaurentPoly = den
        self._hash: Optional[int] = None

    @classmethod
    def coerce(cls, value) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        return cls(LaurentPoly.coerce(value), ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise NotDivisibleError(f"{self} is not a Laurent polynomial")
        return self.num

    @property
    def vars(self) -> Tuple[str, ...]:
        used = set(self.num.vars) | set(self.den.vars)
        return tuple(v for v in VARS if v in used)

    def __add__(self, other) -> "RationalFn":
        other = RationalFn.coerce(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RationalFn":
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) + (-self)

    def __mul__(self, other) -> "RationalFn":
        other = RationalFn.coerce(other)
        if self.den == ONE and other.den == ONE:
            return RationalFn(self.num * other.num, ONE, _reduced=True)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        other = RationalFn.coerce(other)
        if other.is_zero():
            raise ZeroDivisionPolyError(f"Division of {self} by zero")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFn":
        return RationalFn.coerce(other) / self

    def __pow__(self, k: int) -> "RationalFn":
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionPolyError("Negative power of zero")
            return RationalFn(self.den ** (-k), self.num ** (-k))
        return RationalFn(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def substitute(self, bindings: Dict[str, Union[int, LaurentPoly]]) -> "RationalFn":
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        if den.is_zero():
            if num.is_zero():
                raise SpecializationError(
                    f"Substitution {_describe(bindings)} gives 0/0", factor=str(self.den)
                )
            raise SpecializationError(
                f"Substitution {_describe(bindings)} hits a pole", factor=str(self.den)
            )
        return RationalFn(num, den)

    def mirror_q(self) -> "RationalFn":
        return RationalFn(self.num.mirror_q(), self.den.mirror_q())

    def to_dict(self) -> dict:
        return {"num": self.num.to_dict(), "den": self.den.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "RationalFn":
        if "num" not in data:
            return cls(LaurentPoly.from_dict(data))
        return cls(LaurentPoly.from_dict(data["num"]), LaurentPoly.from_dict(data["den"]))

    @classmethod
    def parse(cls, text: str) -> "RationalFn":
        a, q, M = _SYMBOLS
        expr = sympy.parse_expr(text.replace("^", "**"), local_dict={"a": a, "q": q, "M": M})
        num, den = sympy.fraction(sympy.together(expr))
        return cls(LaurentPoly.from_sympy(num), LaurentPoly.from_sympy(den))

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFn({self})"


def _describe(bindings) -> str:
    return "{" + ", ".join(f"{k}->{v}" for k, v in bindings.items()) + "}"


def _reduce(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        (de, dc), = den._terms.items()
        num = num.shift(_sub(ZERO_EXPS, de))
        g = gcd(num.integer_content(), dc)
        if dc < 0:
            g = -g
        return divide_exact(num, LaurentPoly.constant(g)), LaurentPoly.constant(dc // g)
    g = poly_gcd(num, den)
    if g != ONE:
        num = divide_exact(num, g)
        den = divide_exact(den, g)
    shift = _sub(ZERO_EXPS, den.min_exps())
    num, den = num.shift(shift), den.shift(shift)
    if den.leading_term()[1] < 0:
        num, den = -num, -den
    return num, den


# -- quantum integers and q-binomials -------------------------------------


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentPoly:
    """Balanced [n] = (q^n - q^-n)/(q - q^-1); [-n] = -[n]"""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({(0, n - 1 - 2 * i, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentPoly:
    """Balanced Gaussian binomial from the product formula"""
    if n < 0:
        raise ValueError("q_binomial needs n >= 0; use q_binomial_general for negative tops")
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        top = n - i + 1
        num = num * LaurentPoly({(0, top, 0): 1, (0, -top, 0): -1})
        den = den * LaurentPoly({(0, i, 0): 1, (0, -i, 0): -1})
    return divide_exact(num, den)


def q_binomial_general(m: int, t: int) -> LaurentPoly:
    """[m choose t] = [m][m-1]...[m-t+1]/[t]! for any integer m and t >= 0"""
    if t < 0:
        return ZERO
    if m >= 0:
        return q_binomial(m, t)
    sign = -1 if t % 2 else 1
    return q_binomial(t - m - 1, t) * sign


@lru_cache(maxsize=None)
def a_integer(j: int) -> RationalFn:
    """The balanced bracket (a^j - a^-j)/(q^j - q^-j)"""
    if j == 0:
        raise ZeroDivisionPolyError("a_integer(0): the denominator vanishes identically")
    return RationalFn(
        LaurentPoly({(j, 0, 0): 1, (-j, 0, 0): -1}),
        LaurentPoly({(0, j, 0): 1, (0, -j, 0): -1}),
    )


@lru_cache(maxsize=None)
def circle_value(k: int) -> RationalFn:
    """Symbolic value of a closed circle colored k"""
    if k < 0:
        return RationalFn(ZERO)
    value = RationalFn(ONE)
    for i in range(1, k + 1):
        value = value * RationalFn(
            LaurentPoly({(1, 1 - i, 0): 1, (-1, i - 1, 0): -1}),
            LaurentPoly({(0, i, 0): 1, (0, -i, 0): -1}),
        )
    return value


@lru_cache(maxsize=None)
def circle_value_at(k: int, n: int) -> LaurentPoly:
    """Value of a circle colored k at a = q^n, i.e. [n choose k]"""
    if k < 0 or n < 0:
        return ZERO
    return q_binomial(n, k)


# -- specialization -------------------------------------------------------


def a_to_q_power(n: int) -> Dict[str, LaurentPoly]:
    return {"a": Q ** n}


def specialize(
    p: Union[LaurentPoly, RationalFn], bindings: Dict[str, Union[int, LaurentPoly]]
) -> Union[LaurentPoly, RationalFn]:
    """Exact substitution; RationalFn inputs raise SpecializationError on 0/0"""
    return p.substitute(bindings)


# -- interpolation --------------------------------------------------------


def interpolate_in_a(
    samples: Sequence[Tuple[int, Union[LaurentPoly, RationalFn]]], a_degree_bound: int
) -> RationalFn:
    """
    Recover X(a, q) with a-exponents in [-B, B] from its values at a = q^N.

    The first 2B+1 samples fix the answer by Newton interpolation over Q(q);
    any further sample is used as a held-out consistency check.
    """
    bound = a_degree_bound
    needed = 2 * bound + 1
    if len(samples) < needed:
        raise InterpolationError(
            f"Need at least {needed} samples for a-degree bound {bound}, got {len(samples)}"
        )
    ns = [n for n, _ in samples]
    if len(set(ns)) != len(ns):
        raise InterpolationError("Sample points N must be distinct")

    fit, held_out = list(samples[:needed]), list(samples[needed:])
    nodes = [RationalFn(Q ** n) for n, _ in fit]
    values = [RationalFn.coerce(v) * RationalFn(Q ** (n * bound)) for n, v in fit]

    # Newton divided differences
    coeffs = list(values)
    for level in range(1, needed):
        for i in range(needed - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - level])

    # Expand sum_k c_k prod_{i<k} (a - x_i) into a-power coefficients
    poly: List[RationalFn] = [RationalFn(ZERO)]
    for k in range(needed - 1, -1, -1):
        # poly = poly * (a - x_k) + c_k
        shifted = [RationalFn(ZERO)] + poly
        for i, c in enumerate(poly):
            shifted[i] = shifted[i] - c * nodes[k]
        shifted[0] = shifted[0] + coeffs[k]
        poly = shifted

    result = RationalFn(ZERO)
    for power, c in enumerate(poly):
        if not c.is_zero():
            result = result + c * RationalFn(A ** (power - bound))

    for n, v in held_out:
        if result.substitute(a_to_q_power(n)) != RationalFn.coerce(v):
            raise InterpolationError(
                f"Held-out sample N={n} disagrees with the interpolant of a-degree {bound}"
            )
    return result
