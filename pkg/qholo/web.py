"""
MOY webs as combinatorial maps.

A web is a set of darts (half-edges). Every edge owns a tail dart and a
head dart, every vertex lists its darts in counter-clockwise order. Faces
are the orbits of sigma * alpha where alpha swaps the two darts of an edge
and sigma rotates a dart to its counter-clockwise neighbour.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from qholo.errors import (
    FlowError,
    NonPlanarError,
    NonTrivalentError,
    SinkSourceError,
    StepLimitError,
    StuckWebError,
    WebError,
)
from qholo.poly import LaurentPoly, ONE, circle_value, q_binomial

# multiset of circle colors -> coefficient in Z[q^±]
Expansion = Dict[Tuple[int, ...], LaurentPoly]


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    color: int


class Web:
    """Immutable combinatorial map with colored, oriented edges and free loops"""

    __slots__ = ("vertices", "edges", "loops", "_alpha", "_sigma", "_edge_of", "_vertex_of", "_code")

    def __init__(
        self,
        vertices: Sequence[Sequence[int]],
        edges: Sequence[Edge],
        loops: Sequence[int] = (),
    ):
        self.vertices: Tuple[Tuple[int, ...], ...] = tuple(tuple(v) for v in vertices)
        self.edges: Tuple[Edge, ...] = tuple(edges)
        self.loops: Tuple[int, ...] = tuple(sorted(c for c in loops if c != 0))
        self._alpha: Dict[int, int] = {}
        self._sigma: Dict[int, int] = {}
        self._edge_of: Dict[int, int] = {}
        self._vertex_of: Dict[int, int] = {}
        self._code: Optional[str] = None
        self._index()

    def _index(self):
        for idx, e in enumerate(self.edges):
            for d in (e.tail, e.head):
                if d in self._edge_of:
                    raise WebError(f"Dart {d} belongs to two edges")
                self._edge_of[d] = idx
            self._alpha[e.tail] = e.head
            self._alpha[e.head] = e.tail
        for v, darts in enumerate(self.vertices):
            for pos, d in enumerate(darts):
                if d in self._vertex_of:
                    raise WebError(f"Dart {d} sits at two vertices")
                if d not in self._edge_of:
                    raise WebError(f"Dart {d} at vertex {v} is not an edge end")
                self._vertex_of[d] = v
                self._sigma[d] = darts[(pos + 1) % len(darts)]
        dangling = set(self._edge_of) - set(self._vertex_of)
        if dangling:
            raise WebError(f"Darts {sorted(dangling)} are not attached to any vertex")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        vertices: Sequence[Sequence[int]],
        edges: Sequence[Edge],
        loops: Sequence[int] = (),
    ) -> "Web":
        """Delete color-0 edges, contract 2-valent vertices, then construct"""
        verts = [list(v) for v in vertices]
        edge_list: List[Optional[Edge]] = list(edges)
        loop_list = [c for c in loops if c]
        dart_edge: Dict[int, int] = {}
        for idx, e in enumerate(edge_list):
            dart_edge[e.tail] = idx
            dart_edge[e.head] = idx

        for idx, e in enumerate(edge_list):
            if e is not None and e.color == 0:
                for v in verts:
                    for d in (e.tail, e.head):
                        if d in v:
                            v.remove(d)
                edge_list[idx] = None

        for v in verts:
            if len(v) != 2:
                continue
            d1, d2 = v
            e1, e2 = dart_edge[d1], dart_edge[d2]
            v.clear()
            if e1 == e2:
                loop_list.append(edge_list[e1].color)
                edge_list[e1] = None
                continue
            first, second = edge_list[e1], edge_list[e2]
            if first.head == d1:
                ein, eout = e1, e2
            else:
                ein, eout = e2, e1
            incoming, outgoing = edge_list[ein], edge_list[eout]
            if incoming.head not in (d1, d2) or outgoing.tail not in (d1, d2) or incoming.color != outgoing.color:
                raise FlowError(f"2-valent vertex with darts {d1}, {d2} breaks the flow")
            edge_list[ein] = Edge(incoming.tail, outgoing.head, incoming.color)
            edge_list[eout] = None
            dart_edge[outgoing.head] = ein

        return cls(
            [v for v in verts if v],
            [e for e in edge_list if e is not None],
            loop_list,
        )

    # -- map structure ----------------------------------------------------

    def alpha(self, d: int) -> int:
        return self._alpha[d]

    def sigma(self, d: int) -> int:
        return self._sigma[d]

    def edge_index(self, d: int) -> int:
        return self._edge_of[d]

    def edge_of(self, d: int) -> Edge:
        return self.edges[self._edge_of[d]]

    def vertex_of(self, d: int) -> int:
        return self._vertex_of[d]

    @property
    def darts(self) -> List[int]:
        return sorted(self._vertex_of)

    def faces(self) -> List[List[int]]:
        seen = set()
        faces = []
        for start in self.darts:
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self._sigma[self._alpha[d]]
            faces.append(face)
        return faces

    def components(self) -> List[List[int]]:
        """Vertex indices grouped by connected component"""
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(self._vertex_of[e.tail]), find(self._vertex_of[e.head])
            if a != b:
                parent[a] = b
        groups: Dict[int, List[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_empty(self) -> bool:
        return not self.vertices and not self.loops

    # -- coloring lattice -------------------------------------------------

    def coloring_basis(self) -> List[List[int]]:
        """
        Integer basis of the kernel of the boundary map d(e) = head - tail.

        Coordinates are the edges in order followed by one coordinate per
        free loop. Basis vectors are the fundamental cycles of a spanning
        forest, listed component by component, then one vector per loop.
        """
        n_edges = len(self.edges)
        width = n_edges + len(self.loops)
        adjacency: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in range(len(self.vertices))}
        for idx, e in enumerate(self.edges):
            u, w = self._vertex_of[e.tail], self._vertex_of[e.head]
            adjacency[u].append((idx, w, +1))
            adjacency[w].append((idx, u, -1))

        basis: List[List[int]] = []
        for component in self.components():
            root = component[0]
            # parent edge and sign of traversal from parent towards child
            parent: Dict[int, Optional[Tuple[int, int, int]]] = {root: None}
            order = [root]
            tree_edges = set()
            i = 0
            while i < len(order):
                v = order[i]
                i += 1
                for idx, w, sign in adjacency[v]:
                    if w not in parent:
                        parent[w] = (idx, v, sign)
                        tree_edges.add(idx)
                        order.append(w)

            def path_to_root(v: int) -> Dict[int, int]:
                # signed edge multiplicities along the tree path v -> root
                out: Dict[int, int] = {}
                while parent[v] is not None:
                    idx, up, sign = parent[v]
                    out[idx] = out.get(idx, 0) - sign
                    v = up
                return out

            component_set = set(component)
            for idx, e in enumerate(self.edges):
                if idx in tree_edges or self._vertex_of[e.tail] not in component_set:
                    continue
                vec = [0] * width
                vec[idx] += 1
                # close the cycle: head -> root -> tail
                for j, m in path_to_root(self._vertex_of[e.head]).items():
                    vec[j] += m
                for j, m in path_to_root(self._vertex_of[e.tail]).items():
                    vec[j] -= m
                basis.append(vec)

        for k in range(len(self.loops)):
            vec = [0] * width
            vec[n_edges + k] = 1
            basis.append(vec)
        return basis

    def bounded_face_count(self) -> int:
        """Sum over components of (faces - 1), plus one per free loop"""
        face_component: Dict[int, int] = {}
        for ci, comp in enumerate(self.components()):
            for v in comp:
                face_component[v] = ci
        counts: Counter = Counter()
        for face in self.faces():
            counts[face_component[self._vertex_of[face[0]]]] += 1
        return sum(c - 1 for c in counts.values()) + len(self.loops)

    # -- canonical code ---------------------------------------------------

    def _component_code(self, start: int, mirror: bool = False) -> Tuple:
        turn = self._sigma_inverse() if mirror else self._sigma
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nxt in (self._alpha[d], turn[d]):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
        return tuple(
            (
                label[self._alpha[d]],
                label[turn[d]],
                self.edges[self._edge_of[d]].color,
                1 if self.edges[self._edge_of[d]].tail == d else 0,
            )
            for d in order
        )

    def _sigma_inverse(self) -> Dict[int, int]:
        return {nxt: d for d, nxt in self._sigma.items()}

    def canonical_code(self) -> str:
        """
        Minimal rotation-system code per component, over all starting darts
        and both rotation senses. A web and its mirror image share a code;
        their values agree because every sl(N) web value is invariant under
        q -> q^-1.
        """
        if self._code is None:
            codes = []
            for comp in self.components():
                darts = [d for v in comp for d in self.vertices[v]]
                codes.append(
                    min(self._component_code(d, mirror) for d in darts for mirror in (False, True))
                )
            codes.sort()
            self._code = repr((tuple(codes), self.loops))
        return self._code

    def mirror(self) -> "Web":
        """Reflected map: every vertex lists its darts in the opposite order"""
        return Web([tuple(reversed(v)) for v in self.vertices], self.edges, self.loops)

    def split(self) -> List["Web"]:
        """Connected components as separate webs, free loops dropped"""
        parts = []
        for comp in self.components():
            vertices = [self.vertices[v] for v in comp]
            darts = {d for v in vertices for d in v}
            parts.append(Web(vertices, [e for e in self.edges if e.tail in darts]))
        return parts

    def __eq__(self, other) -> bool:
        if not isinstance(other, Web):
            return NotImplemented
        return self.canonical_code() == other.canonical_code()

    def __hash__(self) -> int:
        return hash(self.canonical_code())

    # -- file format ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [{"tail": e.tail, "head": e.head, "color": e.color} for e in self.edges],
            "loops": [{"color": c, "count": n} for c, n in sorted(Counter(self.loops).items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Web":
        loops = []
        for record in data.get("loops", []):
            loops.extend([int(record["color"])] * int(record.get("count", 1)))
        return cls.build(
            data.get("vertices", []),
            [Edge(int(e["tail"]), int(e["head"]), int(e["color"])) for e in data.get("edges", [])],
            loops,
        )

    def __repr__(self) -> str:
        return f"Web(vertices={len(self.vertices)}, edges={len(self.edges)}, loops={list(self.loops)})"


def validate_web(raw: Web) -> Web:
    """Return the web unchanged when it is trivalent, balanced, sink/source free and planar"""
    for v, darts in enumerate(raw.vertices):
        if len(darts) != 3:
            raise NonTrivalentError(f"Vertex {v} has valence {len(darts)}", vertex=v)
    for e in raw.edges:
        if e.color < 0:
            raise FlowError(f"Edge {e} has a negative color")
    for v, darts in enumerate(raw.vertices):
        incoming = [raw.edge_of(d).color for d in darts if raw.edge_of(d).head == d]
        outgoing = [raw.edge_of(d).color for d in darts if raw.edge_of(d).tail == d]
        if not incoming or not outgoing:
            raise SinkSourceError(f"Vertex {v} is a {'source' if not incoming else 'sink'}", vertex=v)
        if sum(incoming) != sum(outgoing):
            raise FlowError(
                f"Vertex {v} receives {sum(incoming)} but emits {sum(outgoing)}", vertex=v
            )
    face_component: Dict[int, int] = {}
    components = raw.components()
    for ci, comp in enumerate(components):
        for v in comp:
            face_component[v] = ci
    face_counts: Counter = Counter()
    for face in raw.faces():
        face_counts[face_component[raw.vertex_of(face[0])]] += 1
    for ci, comp in enumerate(components):
        n_vertices = len(comp)
        n_edges = sum(1 for e in raw.edges if face_component[raw.vertex_of(e.tail)] == ci)
        if n_vertices - n_edges + face_counts[ci] != 2:
            raise NonPlanarError(
                f"Component {ci} has Euler characteristic {n_vertices - n_edges + face_counts[ci]}",
                component=ci,
            )
    return raw


class WebCombination:
    """Linear combination of webs (or ladders) merged by a key, zero terms dropped"""

    def __init__(self):
        self._terms: Dict[object, list] = {}

    def add(self, coef, item, key=None) -> None:
        if key is None:
            key = item.canonical_code() if isinstance(item, Web) else item.to_web().canonical_code()
        if key in self._terms:
            entry = self._terms[key]
            entry[0] = entry[0] + coef
            if entry[0].is_zero():
                del self._terms[key]
        elif not coef.is_zero():
            self._terms[key] = [coef, item]

    def __iter__(self) -> Iterator[Tuple[object, object]]:
        for coef, item in self._terms.values():
            yield coef, item

    def __len__(self) -> int:
        return len(self._terms)

    def scaled(self, factor) -> "WebCombination":
        out = WebCombination()
        for key, (coef, item) in self._terms.items():
            out.add(coef * factor, item, key)
        return out


# -- map-level reduction --------------------------------------------------


def _find_digon(web: Web) -> Optional[Tuple[int, int]]:
    by_pair: Dict[Tuple[int, int], List[int]] = {}
    for idx, e in enumerate(web.edges):
        u, v = web.vertex_of(e.tail), web.vertex_of(e.head)
        if u != v:
            by_pair.setdefault((u, v), []).append(idx)
    for pair in sorted(by_pair):
        if len(by_pair[pair]) >= 2:
            return by_pair[pair][0], by_pair[pair][1]
    return None


def _remove_digon(web: Web, e1: int, e2: int) -> Tuple[LaurentPoly, Web]:
    first, second = web.edges[e1], web.edges[e2]
    u, v = web.vertex_of(first.tail), web.vertex_of(first.head)
    (d_in,) = [d for d in web.vertices[u] if d not in (first.tail, second.tail)]
    (d_out,) = [d for d in web.vertices[v] if d not in (first.head, second.head)]
    ein, eout = web._edge_of[d_in], web._edge_of[d_out]
    color = first.color + second.color
    coef = q_binomial(color, first.color)
    loops = list(web.loops)
    drop = {e1, e2, ein, eout}
    edges = [e for idx, e in enumerate(web.edges) if idx not in drop]
    if ein == eout:
        loops.append(color)
    else:
        edges.append(Edge(web.edges[ein].tail, web.edges[eout].head, color))
    vertices = [darts for idx, darts in enumerate(web.vertices) if idx not in (u, v)]
    return coef, Web(vertices, edges, loops)


def reduce_web_step(web: Web) -> WebCombination:
    """One circle or digon removal on a map-level web"""
    out = WebCombination()
    if web.loops:
        k = web.loops[0]
        rest = Web(web.vertices, web.edges, web.loops[1:])
        out.add(circle_value(k), rest)
        return out
    digon = _find_digon(web)
    if digon is not None:
        coef, rest = _remove_digon(web, *digon)
        out.add(coef, rest)
        return out
    raise StuckWebError("No circle or digon to remove", canonical=web.canonical_code())


def strip_digons(web: Web, step_limit: int = 10**6) -> Tuple[LaurentPoly, Web]:
    """Remove digons until none is left; the rest keeps its free loops"""
    coef = ONE
    steps = 0
    while True:
        digon = _find_digon(web)
        if digon is None:
            return coef, web
        steps += 1
        if steps > step_limit:
            raise StepLimitError(f"Exceeded {step_limit} steps", trace=[web.canonical_code()])
        factor, web = _remove_digon(web, *digon)
        coef = coef * factor


def web_expansion(web: Web, step_limit: int = 10**6) -> Expansion:
    """Circle expansion of a web reducible by digon removals alone"""
    coef, rest = strip_digons(web, step_limit)
    if rest.vertices:
        raise StuckWebError("No circle or digon to remove", canonical=rest.canonical_code())
    return {rest.loops: coef}
