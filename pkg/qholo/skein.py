"""
Framed HOMFLY of braid closures through the Hecke algebra.

Independent of the web engine: sigma_i maps to T_i with
T_i^2 = z T_i + 1 (z = q - q^-1), sigma_i^-1 maps to T_i - z, and the
closure is the Markov trace with tr(x T_{n-1} y) = a tr(x y) and
tr(x (x) 1) = U tr(x), U = (a - a^-1)/(q - q^-1).
"""

from functools import lru_cache
from typing import Dict, Tuple

from qholo.link import ColoredBraid
from qholo.poly import ONE, ZERO, LaurentPoly, RationalFn, a_integer

Arrangement = Tuple[int, ...]
# element of the Hecke algebra: basis arrangement -> coefficient
Element = Dict[Arrangement, LaurentPoly]
# trace value: power of U -> coefficient
Trace = Dict[int, LaurentPoly]

Z = LaurentPoly({(0, 1, 0): 1, (0, -1, 0): -1})
A = LaurentPoly.monomial(a=1)


def _add(target: dict, key, value: LaurentPoly) -> None:
    total = target.get(key, ZERO) + value
    if total.is_zero():
        target.pop(key, None)
    else:
        target[key] = total


def times_generator(element: Element, i: int) -> Element:
    """Right multiplication by T_i (positions i-1 and i, 1-based generator)"""
    out: Element = {}
    for arr, c in element.items():
        swapped = list(arr)
        swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
        swapped_t = tuple(swapped)
        if arr[i - 1] < arr[i]:
            _add(out, swapped_t, c)
        else:
            _add(out, arr, c * Z)
            _add(out, swapped_t, c)
    return out


def braid_element(b: ColoredBraid) -> Element:
    element: Element = {tuple(range(b.strands)): ONE}
    for g in b.word:
        i = abs(g)
        moved = times_generator(element, i)
        if g < 0:
            for arr, c in element.items():
                _add(moved, arr, -(c * Z))
        element = moved
    return element


@lru_cache(maxsize=None)
def markov_trace(arr: Arrangement) -> Tuple[Tuple[int, LaurentPoly], ...]:
    """Trace of a basis element T_arr, as sorted (power of U, coefficient) pairs"""
    n = len(arr)
    if n == 0:
        return ((0, ONE),)
    p = arr.index(n - 1)
    rest = tuple(x for x in arr if x != n - 1)
    out: Trace = {}
    if p == n - 1:
        for k, c in markov_trace(rest):
            _add(out, k + 1, c)
        return tuple(sorted(out.items()))
    element: Element = {rest: ONE}
    for j in range(n - 2, p, -1):
        element = times_generator(element, j)
    for sub, coef in element.items():
        for k, c in markov_trace(sub):
            _add(out, k, A * coef * c)
    return tuple(sorted(out.items()))


def skein_homfly(b: ColoredBraid) -> RationalFn:
    """Framed HOMFLY of the closure of b with every strand colored 1"""
    if any(c != 1 for c in b.colors):
        raise ValueError("The skein oracle only handles braids with all colors 1")
    trace: Trace = {}
    for arr, coef in braid_element(b).items():
        for k, c in markov_trace(arr):
            _add(trace, k, coef * c)
    unknot = a_integer(1)
    total = RationalFn(ZERO)
    for k, c in trace.items():
        total = total + RationalFn(c) * unknot ** k
    return total
