"""
Braid-presented colored links.

Crossings are replaced by sums of ladders, the closure is the ladder
trace, and the colored HOMFLY value is the evaluation of the resulting
combination. Row colors (n) are obtained from column colors (1^n) through
the duality X_(n)(a, q) = (-1)^n X_(1^n)(a, q^-1) applied to the whole link.
"""

import json
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from qholo.errors import BraidParseError, ColorSpecError
from qholo.ladder import (
    Ladder,
    Reducer,
    combination_expansion,
    default_reducer,
    expansion_value,
)
from qholo.poly import ONE, ZERO, LaurentPoly, RationalFn, a_to_q_power
from qholo.web import WebCombination


@dataclass(frozen=True)
class ColoredBraid:
    """Closure of a braid word on `strands` strands, colors listed by bottom position"""

    strands: int
    word: Tuple[int, ...]
    colors: Tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def permutation(self) -> Tuple[int, ...]:
        """perm[p] = top position reached by the strand that starts at bottom position p"""
        arrangement = list(range(self.strands))
        for g in self.word:
            i = abs(g) - 1
            arrangement[i], arrangement[i + 1] = arrangement[i + 1], arrangement[i]
        perm = [0] * self.strands
        for top, bottom in enumerate(arrangement):
            perm[bottom] = top
        return tuple(perm)

    @property
    def components(self) -> List[List[int]]:
        """Closure cycles as lists of bottom positions, ordered by smallest position"""
        perm = self.permutation
        seen = set()
        cycles = []
        for start in range(self.strands):
            if start in seen:
                continue
            cycle = []
            p = start
            while p not in seen:
                seen.add(p)
                cycle.append(p)
                p = perm[p]
            cycles.append(cycle)
        return cycles

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    @property
    def component_colors(self) -> List[int]:
        return [self.colors[c[0]] for c in self.components]

    def with_component_colors(self, ns: Sequence[int]) -> "ColoredBraid":
        cycles = self.components
        if len(ns) != len(cycles):
            raise ColorSpecError(f"{len(ns)} colors given for a {len(cycles)}-component link")
        colors = [0] * self.strands
        for n, cycle in zip(ns, cycles):
            for p in cycle:
                colors[p] = n
        return replace(self, colors=tuple(colors))

    def to_dict(self) -> dict:
        return {"strands": self.strands, "word": list(self.word), "colors": list(self.colors)}

    def __str__(self) -> str:
        return f"s={self.strands}; w={list(self.word)}; colors={list(self.colors)}"


def _validate(strands: int, word: Sequence[int], colors: Sequence[int], name: str = "") -> ColoredBraid:
    if strands < 1:
        raise BraidParseError(f"Braid needs at least one strand, got {strands}", position=0)
    for pos, g in enumerate(word):
        if g == 0 or abs(g) > strands - 1:
            raise BraidParseError(
                f"Generator {g} out of range for {strands} strands",
                position=pos,
                code="generator-range",
            )
    if len(colors) != strands:
        raise BraidParseError(
            f"{len(colors)} colors given for {strands} strands",
            position=len(colors),
            code="color-mismatch",
        )
    for pos, c in enumerate(colors):
        if c < 0:
            raise BraidParseError(f"Negative color {c}", position=pos, code="color-mismatch")
    braid = ColoredBraid(strands, tuple(word), tuple(colors), name)
    for cycle in braid.components:
        for p in cycle:
            if colors[p] != colors[cycle[0]]:
                raise BraidParseError(
                    f"Strands {cycle[0]} and {p} close into one component but carry colors "
                    f"{colors[cycle[0]]} and {colors[p]}",
                    position=p,
                    code="color-mismatch",
                )
    return braid


_FIELD = re.compile(r"\s*(\w+)\s*=\s*(\[[^\]]*\]|-?\d+)\s*")
_VALUE = re.compile(r"\s*(\[[^\]]*\]|-?\d+)\s*")
_POSITIONAL = ("s", "w", "colors")


def parse_braid(text: str) -> ColoredBraid:
    """
    Parse "s=3; w=[1,-2,1,-2]; colors=[1,1,1]" (names optional, as in
    "3;[1,-2,1,-2];[1,1,1]") or the JSON braid document
    {"strands": 3, "word": [...], "colors": [...]}. Missing colors default
    to 1 on every strand.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise BraidParseError(f"Invalid braid document: {e.msg}", position=e.pos)
        return braid_from_dict(data)

    fields: Dict[str, Tuple[str, int]] = {}
    offset = 0
    for index, chunk in enumerate(stripped.split(";")):
        if chunk.strip():
            match = _FIELD.fullmatch(chunk)
            positional = _VALUE.fullmatch(chunk)
            if match:
                fields[match.group(1)] = (match.group(2), offset + match.start(2))
            elif positional and index < len(_POSITIONAL):
                fields[_POSITIONAL[index]] = (positional.group(1), offset + positional.start(1))
            else:
                raise BraidParseError(f"Cannot read '{chunk.strip()}'", position=offset)
        offset += len(chunk) + 1

    if "s" not in fields or "w" not in fields:
        raise BraidParseError("Braid text needs both s= and w=", position=0)
    strands = _read_field(fields, "s", int)
    word = _read_field(fields, "w", _int_list)
    colors = _read_field(fields, "colors", _int_list) if "colors" in fields else [1] * strands
    return _validate(strands, word, colors)


def _read_field(fields: Dict[str, Tuple[str, int]], name: str, reader):
    text, position = fields[name]
    try:
        return reader(text)
    except ValueError as e:
        raise BraidParseError(f"Field '{name}': {e}", position=position)


def _int_list(text: str) -> List[int]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"Expected a bracketed list, got '{body}'")
    items = [item.strip() for item in body[1:-1].split(",") if item.strip()]
    out = []
    for item in items:
        if not re.fullmatch(r"-?\d+", item):
            raise ValueError(f"Not an integer: '{item}'")
        out.append(int(item))
    return out


def braid_from_dict(data: dict) -> ColoredBraid:
    try:
        strands = int(data["strands"])
        word = [int(g) for g in data["word"]]
    except (KeyError, TypeError, ValueError) as e:
        raise BraidParseError(f"Malformed braid document: {e}", position=0)
    colors = [int(c) for c in data.get("colors", [1] * strands)]
    return _validate(strands, word, colors, data.get("name", ""))


# -- color specifications -------------------------------------------------


@dataclass(frozen=True)
class ColorSpec:
    """Per-component single-row (n) or single-column (1^n) partitions"""

    sizes: Tuple[int, ...]
    shape: str = "column"

    def __post_init__(self):
        if self.shape not in ("row", "column"):
            raise ColorSpecError(f"Unknown shape '{self.shape}'")
        if any(n < 0 for n in self.sizes):
            raise ColorSpecError(f"Partition sizes must be nonnegative: {list(self.sizes)}")

    @classmethod
    def parse(cls, text: str) -> "ColorSpec":
        """
        Comma-separated entries, one per component: "1^n" or "(1^n)" for
        columns, "n" or "(n)" for rows. Rows and columns of size >= 2 cannot
        be mixed.
        """
        sizes = []
        shapes = set()
        for entry in [e.strip() for e in text.split(",") if e.strip()]:
            body = entry[1:-1] if entry.startswith("(") and entry.endswith(")") else entry
            column = re.fullmatch(r"1\^(\d+)", body)
            row = re.fullmatch(r"\d+", body)
            if column:
                n = int(column.group(1))
                if n >= 2:
                    shapes.add("column")
            elif row:
                n = int(body)
                if n >= 2:
                    shapes.add("row")
            else:
                raise ColorSpecError(
                    f"Color '{entry}' is not a single row (n) or single column (1^n)"
                )
            sizes.append(n)
        if not sizes:
            raise ColorSpecError("Empty color specification")
        if len(shapes) > 1:
            raise ColorSpecError("Rows and columns cannot be mixed in one color specification")
        return cls(tuple(sizes), shapes.pop() if shapes else "column")

    @classmethod
    def columns(cls, *sizes: int) -> "ColorSpec":
        return cls(tuple(sizes), "column")

    @classmethod
    def rows(cls, *sizes: int) -> "ColorSpec":
        return cls(tuple(sizes), "row")

    def __str__(self) -> str:
        if self.shape == "column":
            return ",".join(f"1^{n}" for n in self.sizes)
        return ",".join(f"({n})" for n in self.sizes)


# -- crossings ------------------------------------------------------------


def crossing_terms(i: int, x: int, y: int, positive: bool) -> List[Tuple[Tuple, LaurentPoly]]:
    """
    Ladder expansion of one crossing between positions i and i+1 carrying
    colors x (left) and y (right); colors are swapped on top.
    """
    out = []
    if x <= y:
        for k in range(x + 1):
            sign = -1 if (k + (y + 1) * x) % 2 else 1
            power = x - k
            rungs = ((i, "F", k), (i, "E", y - x + k))
            out.append((rungs, power, sign))
    else:
        for k in range(y + 1):
            sign = -1 if (k + (x + 1) * y) % 2 else 1
            power = y - k
            rungs = ((i, "E", k), (i, "F", x - y + k))
            out.append((rungs, power, sign))
    return [
        (
            tuple(r for r in rungs if r[2]),
            LaurentPoly.monomial(sign, q=power if positive else -power),
        )
        for rungs, power, sign in out
    ]


def resolve_crossings(b: ColoredBraid, merge: bool = True) -> WebCombination:
    """
    Replace every crossing by its ladder sum and close up.

    With merge=True terms are merged by the canonical code of their web;
    otherwise only identical ladders are merged.
    """
    colors = list(b.colors)
    terms: Dict[Tuple, LaurentPoly] = {(): ONE}
    for g in b.word:
        i = abs(g) - 1
        local = crossing_terms(i, colors[i], colors[i + 1], g > 0)
        expanded: Dict[Tuple, LaurentPoly] = {}
        for word, coef in terms.items():
            for rungs, c in local:
                key = word + rungs
                total = expanded.get(key, ZERO) + coef * c
                if total.is_zero():
                    expanded.pop(key, None)
                else:
                    expanded[key] = total
        terms = expanded
        colors[i], colors[i + 1] = colors[i + 1], colors[i]

    combination = WebCombination()
    for word, coef in terms.items():
        ladder = Ladder(tuple(b.colors), word)
        combination.add(coef, ladder, key=None if merge else ladder)
    return combination


def colored_homfly(
    b: ColoredBraid,
    spec: Optional[ColorSpec] = None,
    n: Optional[int] = None,
    reducer: Optional[Reducer] = None,
) -> Union[RationalFn, LaurentPoly]:
    """
    Framed colored HOMFLY of the closure, symbolic in (a, q) or at a = q^n.

    Without a spec the braid's own strand colors are read as columns.
    """
    reducer = reducer or default_reducer()
    if spec is None:
        spec = ColorSpec(tuple(b.component_colors), "column")
    braid = b.with_component_colors(spec.sizes)
    expansion = combination_expansion(resolve_crossings(braid, merge=False), reducer)
    if spec.shape == "column":
        return expansion_value(expansion, n)
    sign = -1 if sum(spec.sizes) % 2 else 1
    value = expansion_value(expansion).mirror_q() * sign
    if n is None:
        return value
    return value.substitute(a_to_q_power(n)).to_laurent()


# -- framing --------------------------------------------------------------


@lru_cache(maxsize=None)
def framing_factor(n: int, shape: str = "column", positive: bool = True) -> RationalFn:
    """
    Scalar picked up by one curl on a strand colored n, measured on the
    closure of a single crossing on two strands.
    """
    if n < 1:
        raise ColorSpecError(f"framing_factor needs a color >= 1, got {n}")
    curl = ColoredBraid(2, (1 if positive else -1,), (n, n))
    spec = ColorSpec((n,), shape)
    straight = ColoredBraid(1, (), (n,))
    return RationalFn.coerce(colored_homfly(curl, spec)) / colored_homfly(straight, spec)


def component_writhes(b: ColoredBraid) -> List[int]:
    """Writhe of the self-crossings of every component, in component order"""
    owner = {}
    for ci, cycle in enumerate(b.components):
        for p in cycle:
            owner[p] = ci
    writhes = [0] * len(b.components)
    arrangement = list(range(b.strands))
    for g in b.word:
        i = abs(g) - 1
        left, right = arrangement[i], arrangement[i + 1]
        if owner[left] == owner[right]:
            writhes[owner[left]] += 1 if g > 0 else -1
        arrangement[i], arrangement[i + 1] = right, left
    return writhes


def renormalize(value: RationalFn, b: ColoredBraid, spec: Optional[ColorSpec] = None) -> RationalFn:
    """Bring a framed value to writhe 0 on every component"""
    if spec is None:
        spec = ColorSpec(tuple(b.component_colors), "column")
    result = RationalFn.coerce(value)
    for size, w in zip(spec.sizes, component_writhes(b)):
        if size and w:
            result = result / framing_factor(size, spec.shape) ** w
    return result


def framing_record(b: ColoredBraid, spec: Optional[ColorSpec] = None) -> dict:
    if spec is None:
        spec = ColorSpec(tuple(b.component_colors), "column")
    return {
        "writhe": b.writhe,
        "component_writhes": component_writhes(b),
        "factor_per_component": [
            str(framing_factor(size, spec.shape)) if size else "1" for size in spec.sizes
        ],
    }
