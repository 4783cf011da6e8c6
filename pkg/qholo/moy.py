"""
State sums for closed webs at a = q^N.

A state labels every edge of color k with a k-element subset of {1..N}
such that at each vertex the thick edge carries the disjoint union of the
labels on its two thin edges. Every label then runs along disjoint
oriented cycles. A state weighs q to the power

    1/2 * sum over vertices of sum over (l left, r right) of sgn(l - r)
    + sum over labels i of (N + 1 - 2i) * (turning number of its cycles)

and the web value is the sum over all states. Webs with square faces,
which the digon and circle relations cannot touch, go through here.
"""

from collections import Counter
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple, Union

import numpy as np

from qholo.errors import NonPlanarError, SinkSourceError
from qholo.poly import (
    LaurentPoly,
    ONE,
    RationalFn,
    circle_value,
    circle_value_at,
    interpolate_in_a,
)
from qholo.web import Web, strip_digons

# thick, left and right edge indices at one vertex
Junction = Tuple[int, int, int]
Masks = List[Optional[int]]


def _junctions(web: Web) -> List[Junction]:
    out = []
    for v, darts in enumerate(web.vertices):
        heads = [d for d in darts if web.edge_of(d).head == d]
        if len(heads) == 2:
            (thick,) = [d for d in darts if d not in heads]
            left = web.sigma(thick)
            right = web.sigma(left)
        elif len(heads) == 1:
            thick = heads[0]
            right = web.sigma(thick)
            left = web.sigma(right)
        else:
            raise SinkSourceError(f"Vertex {v} is a {'source' if not heads else 'sink'}", vertex=v)
        out.append((web.edge_index(thick), web.edge_index(left), web.edge_index(right)))
    return out


def _propagate(masks: Masks, junctions: List[Junction]) -> bool:
    """Fill labels forced by two known edges at a vertex; False on a clash"""
    changed = True
    while changed:
        changed = False
        for thick, left, right in junctions:
            t, l, r = masks[thick], masks[left], masks[right]
            known = sum(x is not None for x in (t, l, r))
            if known == 3:
                if l & r or l | r != t:
                    return False
            elif known == 2:
                if t is None:
                    if l & r:
                        return False
                    masks[thick] = l | r
                else:
                    other, missing = (l, right) if r is None else (r, left)
                    if other & ~t:
                        return False
                    masks[missing] = t & ~other
                changed = True
    return True


def states(web: Web, n: int) -> Iterator[List[int]]:
    """Every labelling of the edges by subsets of {0..n-1}, as bitmasks"""
    junctions = _junctions(web)
    colors = [e.color for e in web.edges]
    choices = {
        k: [sum(1 << i for i in subset) for subset in combinations(range(n), k)] for k in set(colors)
    }

    def extend(masks: Masks) -> Iterator[List[int]]:
        if None not in masks:
            yield list(masks)
            return
        idx = masks.index(None)
        for m in choices[colors[idx]]:
            trial = list(masks)
            trial[idx] = m
            if _propagate(trial, junctions):
                yield from extend(trial)

    yield from extend([None] * len(colors))


class _Turning:
    """Turning numbers of simple edge cycles in one connected web"""

    def __init__(self, web: Web):
        face_of: Dict[int, int] = {}
        for i, face in enumerate(web.faces()):
            for d in face:
                face_of[d] = i
        # the face holding the tail dart lies to the right of the edge
        self.sides = [(face_of[e.tail], face_of[e.head]) for e in web.edges]
        self.border: Dict[int, List[int]] = {}
        for idx, (right, left) in enumerate(self.sides):
            self.border.setdefault(right, []).append(idx)
            self.border.setdefault(left, []).append(idx)
        self.outer = face_of[web.darts[0]]
        self._cache: Dict[FrozenSet[int], int] = {}

    def __call__(self, cycle: FrozenSet[int]) -> int:
        if cycle not in self._cache:
            region = {self.sides[e][0] for e in cycle}
            stack = list(region)
            while stack:
                f = stack.pop()
                for e in self.border[f]:
                    if e in cycle:
                        continue
                    for g in self.sides[e]:
                        if g not in region:
                            region.add(g)
                            stack.append(g)
            if any(self.sides[e][1] in region for e in cycle):
                raise NonPlanarError("Edge cycle does not separate the sphere")
            self._cache[cycle] = 1 if self.outer in region else -1
        return self._cache[cycle]


def _label_cycles(web: Web, masks: List[int], bit: int, out_edges: Dict[int, List[int]]) -> Iterator[FrozenSet[int]]:
    todo = {e for e, m in enumerate(masks) if m >> bit & 1}
    while todo:
        start = todo.pop()
        cycle = [start]
        e = start
        while True:
            v = web.vertex_of(web.edges[e].head)
            e = next(f for f in out_edges[v] if masks[f] >> bit & 1)
            if e == start:
                break
            todo.discard(e)
            cycle.append(e)
        yield frozenset(cycle)


def _bits(mask: int, n: int) -> List[int]:
    return [i for i in range(n) if mask >> i & 1]


def _connected_state_sum(web: Web, n: int) -> LaurentPoly:
    junctions = _junctions(web)
    turning = _Turning(web)
    out_edges: Dict[int, List[int]] = {}
    for idx, e in enumerate(web.edges):
        out_edges.setdefault(web.vertex_of(e.tail), []).append(idx)

    counts: Counter = Counter()
    for masks in states(web, n):
        twice = 0
        for _, left, right in junctions:
            for i in _bits(masks[left], n):
                for j in _bits(masks[right], n):
                    twice += (i > j) - (i < j)
        for bit in range(n):
            for cycle in _label_cycles(web, masks, bit, out_edges):
                twice += 2 * (n - 1 - 2 * bit) * turning(cycle)
        if twice % 2:
            raise NonPlanarError(f"State of {web!r} has an odd doubled q-degree")
        counts[twice // 2] += 1
    return LaurentPoly({(0, e, 0): c for e, c in counts.items() if c})


def state_sum(web: Web, n: int) -> LaurentPoly:
    """Value of a closed web at a = q^n, one connected component at a time"""
    total = ONE
    for k in web.loops:
        total = total * circle_value_at(k, n)
    for part in web.split():
        if total.is_zero():
            break
        total = total * _connected_state_sum(part, n)
    return total


def dual_width(web: Web) -> int:
    """Largest color-weighted distance between two faces of a connected web"""
    turning = _Turning(web)
    size = 1 + max(max(pair) for pair in turning.sides)
    dist = np.full((size, size), np.inf)
    np.fill_diagonal(dist, 0)
    for idx, (right, left) in enumerate(turning.sides):
        if right != left:
            color = web.edges[idx].color
            dist[right, left] = min(dist[right, left], color)
            dist[left, right] = dist[right, left]
    for k in range(size):
        dist = np.minimum(dist, dist[:, k, None] + dist[None, k, :])
    return int(dist.max())


def web_value(
    web: Web, n: Optional[int] = None, step_limit: int = 10**6
) -> Union[RationalFn, LaurentPoly]:
    """
    Value of a closed web, symbolic when n is None and at a = q^n otherwise.

    Digons go first. The symbolic value of each remaining component is
    interpolated from its state sums at N = 1, ..., 2B + 3 where B is the
    dual width, so two samples are held out as a check.
    """
    coef, rest = strip_digons(web, step_limit)
    if n is not None:
        return coef * state_sum(rest, n)
    value = RationalFn(coef)
    for k in rest.loops:
        value = value * circle_value(k)
    for part in rest.split():
        bound = dual_width(part)
        samples = [(m, _connected_state_sum(part, m)) for m in range(1, 2 * bound + 4)]
        value = value * interpolate_in_a(samples, bound)
    return value
