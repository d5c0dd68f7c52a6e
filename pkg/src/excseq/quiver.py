"""Acyclic quivers, the Euler form, positive roots and Coxeter data.

Vertices are numbered ``1..n``. Dimension vectors are plain integer tuples
indexed ``0..n-1`` (entry ``v - 1`` belongs to vertex ``v``).

Quiver text grammar::

    A3                 type preset, default orientation (arrows i > i+1)
    A3:1>2<3           preset with an explicit orientation (chain syntax)
    D4:sym-source      named orientation (sym-source, sym-sink, linear)
    D4:2>1,2>3,4>2     preset with a comma separated arrow list
    3:1>2,3>2          explicit quiver on three vertices
    1>2,1>2            explicit quiver, rank inferred (Kronecker here)

A chain item ``a>b<c`` stands for the arrows ``a->b`` and ``c->b``.
"""

from __future__ import annotations

import graphlib
import math
import re
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Literal, Sequence

from . import linalg
from .errors import (
    CycleError,
    DimensionError,
    NotFiniteTypeError,
    QuiverSyntaxError,
    VertexIndexError,
)

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...]
    label: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise QuiverSyntaxError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            for v in (s, t):
                if not 1 <= v <= self.n:
                    raise VertexIndexError(f"arrow {s}>{t} uses vertex {v} outside 1..{self.n}")
            if s == t:
                raise CycleError(f"loop at vertex {s}")
        ts = graphlib.TopologicalSorter({v: set() for v in self.vertices})
        for s, t in self.arrows:
            ts.add(t, s)
        try:
            tuple(ts.static_order())
        except graphlib.CycleError as exc:
            raise CycleError(f"oriented cycle through vertices {exc.args[1]}") from None

    def __hash__(self) -> int:
        return hash((self.n, self.arrows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.n == other.n and self.arrows == other.arrows

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def spec(self) -> str:
        """Canonical text form accepted by :func:`parse_quiver`."""
        return f"{self.n}:" + ",".join(f"{s}>{t}" for s, t in self.arrows)

    def is_sink(self, v: int) -> bool:
        return all(s != v for s, _ in self.arrows)

    def is_source(self, v: int) -> bool:
        return all(t != v for _, t in self.arrows)

    def reflect(self, v: int) -> Quiver:
        """Reverse every arrow incident to ``v``; arrow positions are kept."""
        arrows = tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.n, arrows, self.label)

    def admissible_sinks(self) -> tuple[int, ...]:
        """Vertex order ``i1, i2, ...`` with each ``ik`` a sink after reflecting the earlier ones."""
        ts = graphlib.TopologicalSorter({v: set() for v in self.vertices})
        for s, t in self.arrows:
            ts.add(s, t)
        return tuple(ts.static_order())

    def path_counts(self, v: int) -> DimVector:
        """Number of paths starting at ``v`` and ending at each vertex (dim of P_v)."""
        return _path_counts(self, v)

    def path_counts_into(self, v: int) -> DimVector:
        """Number of paths ending at ``v`` from each vertex (dim of I_v)."""
        return tuple(self.path_counts(u)[v - 1] for u in self.vertices)


@cache
def _path_counts(q: Quiver, v: int) -> DimVector:
    order = q.admissible_sinks()[::-1]  # sources first
    counts = [0] * q.n
    counts[v - 1] = 1
    for u in order:
        for s, t in q.arrows:
            if s == u:
                counts[t - 1] += counts[u - 1]
    return tuple(counts)


# ---------------------------------------------------------------- parsing

_PRESET = re.compile(r"^([ADE])(\d+)$")
_CHAIN = re.compile(r"^\d+(?:[<>]\d+)+$")


def _preset_edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A" and n >= 1:
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D" and n >= 4:
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    if kind == "E" and n in (6, 7, 8):
        return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    raise QuiverSyntaxError(f"no Dynkin diagram {kind}{n}")


def _parse_arrows(body: str) -> list[tuple[int, int]]:
    arrows = []
    for item in body.split(","):
        item = item.strip()
        if not _CHAIN.match(item):
            raise QuiverSyntaxError(f"cannot parse arrow item {item!r}")
        nums = [int(x) for x in re.split(r"[<>]", item)]
        ops = re.findall(r"[<>]", item)
        for a, b, op in zip(nums, nums[1:], ops):
            arrows.append((a, b) if op == ">" else (b, a))
    return arrows


def parse_quiver(text: str) -> Quiver:
    """Build a :class:`Quiver` from its text description (see module docstring)."""
    text = text.strip()
    if not text:
        raise QuiverSyntaxError("empty quiver description")
    head, _, body = text.partition(":")
    head, body = head.strip(), body.strip()
    preset = _PRESET.match(head)
    if preset:
        kind, n = preset.group(1), int(preset.group(2))
        edges = _preset_edges(kind, n)
        if not body or body == "linear":
            arrows = edges
        elif body in ("sym-source", "sym-sink"):
            if (kind, n) != ("D", 4):
                raise QuiverSyntaxError(f"{body} orientation is only defined for D4")
            arrows = [(2, 1), (2, 3), (2, 4)]
            if body == "sym-sink":
                arrows = [(t, s) for s, t in arrows]
        else:
            arrows = _parse_arrows(body)
            for s, t in arrows:
                for v in (s, t):
                    if not 1 <= v <= n:
                        raise VertexIndexError(f"arrow {s}>{t} uses vertex {v} outside 1..{n}")
            got = Counter(frozenset(a) for a in arrows)
            want = Counter(frozenset(e) for e in edges)
            if got != want:
                raise QuiverSyntaxError(f"arrows {body!r} do not form the diagram {head}")
        return Quiver(n, tuple(arrows), text)
    if head.isdigit() and body:
        return Quiver(int(head), tuple(_parse_arrows(body)), text)
    if head.isdigit() and not body:
        return Quiver(int(head), (), text)
    if not body:
        arrows = _parse_arrows(head)
        return Quiver(max(max(a) for a in arrows), tuple(arrows), text)
    raise QuiverSyntaxError(f"cannot parse quiver {text!r}")


# ---------------------------------------------------------------- Euler form


def _check(q: Quiver, *vs: Sequence[int]) -> None:
    for v in vs:
        if len(v) != q.n:
            raise DimensionError(f"vector of length {len(v)} for a quiver with {q.n} vertices")


@cache
def euler_matrix(q: Quiver) -> tuple[tuple[int, ...], ...]:
    e = [[int(i == j) for j in range(q.n)] for i in range(q.n)]
    for s, t in q.arrows:
        e[s - 1][t - 1] -= 1
    return tuple(tuple(r) for r in e)


def euler_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    """``<x, y> = sum_i x_i y_i - sum_{a: i->j} x_i y_j``."""
    _check(q, x, y)
    return sum(a * b for a, b in zip(x, y)) - sum(x[s - 1] * y[t - 1] for s, t in q.arrows)


def symmetric_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    return euler_form(q, x, y) + euler_form(q, y, x)


def is_dynkin(q: Quiver) -> bool:
    """Positive definiteness of the symmetrized Euler form (leading minors)."""
    e = euler_matrix(q)
    c = [[e[i][j] + e[j][i] for j in range(q.n)] for i in range(q.n)]
    return all(linalg.det([row[:k] for row in c[:k]]) > 0 for k in range(1, q.n + 1))


def _require_dynkin(q: Quiver) -> None:
    if not is_dynkin(q):
        raise NotFiniteTypeError(f"quiver {q.label or q.spec()} is not of Dynkin type")


@cache
def positive_roots(q: Quiver) -> frozenset[DimVector]:
    """Closure of the simple roots under simple reflections, kept positive."""
    _require_dynkin(q)
    simple = [tuple(int(i == j) for j in range(q.n)) for i in range(q.n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i, e in enumerate(simple):
            c = symmetric_form(q, r, e)
            if c == 0:
                continue
            s = list(r)
            s[i] -= c
            s = tuple(s)
            if min(s) >= 0 and s not in seen:
                seen.add(s)
                queue.append(s)
    return frozenset(seen)


def coxeter_number(q: Quiver) -> int:
    roots = positive_roots(q)
    h, rem = divmod(2 * len(roots), q.n)
    if rem:
        raise NotFiniteTypeError("root count not divisible by rank (disconnected diagram?)")
    return h


@cache
def coxeter_matrix(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """Matrix ``C`` with ``dim tau M = C dim M`` for non-projective indecomposable ``M``.

    Characterized by ``<y, C x> = -<x, y>``, i.e. ``C = -E^{-1} E^T``.
    """
    e = euler_matrix(q)
    prod = linalg.matmul(linalg.inverse(e), linalg.transpose(e))
    return tuple(tuple(-int(x) for x in row) for row in prod)


@cache
def coxeter_matrix_inverse(q: Quiver) -> tuple[tuple[int, ...], ...]:
    inv = linalg.inverse(coxeter_matrix(q))
    return tuple(tuple(int(x) for x in row) for row in inv)


def coxeter_transform(
    q: Quiver, x: Sequence[int], direction: Literal["forward", "inverse"] = "forward"
) -> DimVector:
    _check(q, x)
    if direction == "forward":
        m = coxeter_matrix(q)
    elif direction == "inverse":
        m = coxeter_matrix_inverse(q)
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    return tuple(linalg.matvec(m, x))


# ---------------------------------------------------------------- Dynkin type


def dynkin_components(q: Quiver) -> list[str]:
    """Names of the Dynkin components of the underlying graph, e.g. ``['A3']``."""
    _require_dynkin(q)
    adj: dict[int, set[int]] = {v: set() for v in q.vertices}
    for s, t in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen: set[int] = set()
    names = []
    for v in q.vertices:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        branch = [u for u in comp if len(adj[u]) == 3]
        k = len(comp)
        if not branch:
            names.append(f"A{k}")
            continue
        (b,) = branch
        arms = []
        for w in adj[b]:
            length, prev, cur = 1, b, w
            while len(adj[cur]) == 2:
                prev, cur = cur, next(iter(adj[cur] - {prev}))
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            names.append(f"D{k}")
        else:
            names.append(f"E{k}")
    return names


def weyl_group_order(q: Quiver) -> int:
    order = 1
    for name in dynkin_components(q):
        kind, k = name[0], int(name[1:])
        if kind == "A":
            order *= math.factorial(k + 1)
        elif kind == "D":
            order *= 2 ** (k - 1) * math.factorial(k)
        else:
            order *= {6: 51840, 7: 2903040, 8: 696729600}[k]
    return order


def ces_count_formula(q: Quiver) -> Fraction:
    """``n! h^n / |W|`` for a connected Dynkin quiver."""
    h = coxeter_number(q)
    return Fraction(math.factorial(q.n) * h**q.n, weyl_group_order(q))


def fundamental_degrees(q: Quiver) -> list[int]:
    """Degrees ``d_i`` of the Weyl group invariants, component by component."""
    out = []
    for name in dynkin_components(q):
        kind, k = name[0], int(name[1:])
        if kind == "A":
            out += range(2, k + 2)
        elif kind == "D":
            out += sorted([*range(2, 2 * k - 1, 2), k])
        else:
            out += {
                6: [2, 5, 6, 8, 9, 12],
                7: [2, 6, 8, 10, 12, 14, 18],
                8: [2, 8, 12, 14, 18, 20, 24, 30],
            }[k]
    return out


def fuss_catalan(q: Quiver, m: int) -> Fraction:
    """``prod (m h + d_i) / d_i`` over the degrees of a connected Dynkin quiver."""
    h = coxeter_number(q)
    out = Fraction(1)
    for d in fundamental_degrees(q):
        out *= Fraction(m * h + d, d)
    return out
