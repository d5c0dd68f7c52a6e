"""Explicit representations of Dynkin quivers and their homological data.

Every indecomposable is built by a chain of BGP reflection functors starting
from a simple module, then interned in a :class:`Catalog` under its dimension
vector. Hom dimensions are kernels of the intertwiner system, computed
exactly; Ext follows from the Euler form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import linalg
from .errors import CatalogError, DomainError, IntegrityError
from .quiver import (
    DimVector,
    Quiver,
    coxeter_transform,
    euler_form,
    positive_roots,
    symmetric_form,
)

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Rep:
    """A representation: one vector space per vertex, one matrix per arrow.

    ``maps[a]`` has shape ``dims[t] x dims[s]`` for arrow ``a = (s, t)``.
    """

    quiver: Quiver
    dims: DimVector
    maps: tuple[IntMatrix, ...] = field(repr=False)

    def __post_init__(self) -> None:
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            rows, cols = self.dims[t - 1], self.dims[s - 1]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise IntegrityError(f"map for arrow {s}>{t} has the wrong shape")

    @property
    def key(self) -> DimVector:
        return self.dims

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v in self.quiver.vertices if self.dims[v - 1])

    def top_dims(self) -> DimVector:
        """Dimension vector of ``M / rad M``."""
        q = self.quiver
        out = []
        for v in q.vertices:
            d = self.dims[v - 1]
            incoming = [self.maps[a] for a, (_, t) in enumerate(q.arrows) if t == v]
            blocks = [row for m in incoming for row in linalg.transpose(m)] if d else []
            out.append(d - linalg.rank(blocks) if blocks else d)
        return tuple(out)


def simple_rep(q: Quiver, v: int) -> Rep:
    dims = tuple(int(u == v) for u in q.vertices)
    maps = tuple(tuple(() for _ in range(dims[t - 1])) for s, t in q.arrows)
    return Rep(q, dims, maps)


def reflect_at_source(rep: Rep, i: int) -> Rep:
    """BGP functor at a source ``i``: replace ``M_i`` by the cokernel of ``M_i -> (+) M_t``."""
    q = rep.quiver
    if not q.is_source(i):
        raise DomainError(f"vertex {i} is not a source")
    out = [a for a, (s, _) in enumerate(q.arrows) if s == i]
    stacked: list[tuple[int, ...]] = []
    offsets = {}
    for a in out:
        offsets[a] = len(stacked)
        stacked.extend(rep.maps[a])
    coker = [linalg.primitive(y) for y in linalg.left_nullspace(stacked, len(stacked))]
    new_q = q.reflect(i)
    dims = list(rep.dims)
    dims[i - 1] = len(coker)
    maps = list(rep.maps)
    for a in out:
        t = q.arrows[a][1]
        lo = offsets[a]
        maps[a] = tuple(tuple(row[lo : lo + rep.dims[t - 1]]) for row in coker)
    return Rep(new_q, tuple(dims), tuple(maps))


def reflect_at_sink(rep: Rep, i: int) -> Rep:
    """BGP functor at a sink ``i``: replace ``M_i`` by the kernel of ``(+) M_s -> M_i``."""
    q = rep.quiver
    if not q.is_sink(i):
        raise DomainError(f"vertex {i} is not a sink")
    inc = [a for a, (_, t) in enumerate(q.arrows) if t == i]
    offsets = {}
    width = 0
    for a in inc:
        offsets[a] = width
        width += rep.dims[q.arrows[a][0] - 1]
    joined = [sum((list(rep.maps[a][r]) for a in inc), []) for r in range(rep.dims[i - 1])]
    ker = [linalg.primitive(x) for x in linalg.nullspace(joined, width)]
    new_q = q.reflect(i)
    dims = list(rep.dims)
    dims[i - 1] = len(ker)
    maps = list(rep.maps)
    for a in inc:
        s = q.arrows[a][0]
        lo = offsets[a]
        # new arrow i -> s: projection of the kernel onto the s-summand
        maps[a] = tuple(
            tuple(ker[c][lo + r] for c in range(len(ker))) for r in range(rep.dims[s - 1])
        )
    return Rep(new_q, tuple(dims), tuple(maps))


def _reflect_root(q: Quiver, beta: DimVector, i: int) -> DimVector:
    e = tuple(int(v == i) for v in q.vertices)
    c = symmetric_form(q, beta, e)
    out = list(beta)
    out[i - 1] -= c
    return tuple(out)


def indecomposable(q: Quiver, root: DimVector) -> Rep:
    """The indecomposable representation with dimension vector ``root``.

    Reflects at admissible sinks until ``root`` turns into the simple root of
    the current sink, then applies the inverse functors to that simple.
    """
    order = q.admissible_sinks()
    cap = 2 * q.n * (len(positive_roots(q)) + 1)
    steps: list[tuple[Quiver, int]] = []
    cur, beta = q, tuple(root)
    for t in range(cap):
        i = order[t % q.n]
        if beta == tuple(int(v == i) for v in q.vertices):
            break
        beta = _reflect_root(cur, beta, i)
        if min(beta) < 0:
            raise IntegrityError(f"{root} reflected out of the positive cone at vertex {i}")
        steps.append((cur, i))
        cur = cur.reflect(i)
    else:
        raise IntegrityError(f"reflection chain for {root} did not terminate")
    rep = simple_rep(cur, i)
    for prev, v in reversed(steps):
        rep = reflect_at_source(rep, v)
        if rep.quiver != prev:
            raise IntegrityError("reflection functor landed on the wrong orientation")
    if rep.dims != tuple(root):
        raise IntegrityError(f"built dimension {rep.dims}, wanted {root}")
    return rep


# ---------------------------------------------------------------- Hom / Ext


def _intertwiner_rows(m: Rep, n: Rep) -> tuple[list[list[int]], int]:
    """Linear system ``f_t M_a = N_a f_s`` in the entries of ``(f_v)``."""
    if m.quiver != n.quiver:
        raise CatalogError("modules live over different quivers")
    q = m.quiver
    base = {}
    nvars = 0
    for v in q.vertices:
        base[v] = nvars
        nvars += n.dims[v - 1] * m.dims[v - 1]

    def var(v: int, r: int, c: int) -> int:
        return base[v] + r * m.dims[v - 1] + c

    rows = []
    for a, (s, t) in enumerate(q.arrows):
        ma, na = m.maps[a], n.maps[a]
        for r in range(n.dims[t - 1]):
            for c in range(m.dims[s - 1]):
                row = [0] * nvars
                for k in range(m.dims[t - 1]):
                    row[var(t, r, k)] += ma[k][c]
                for k in range(n.dims[s - 1]):
                    row[var(s, k, c)] -= na[r][k]
                rows.append(row)
    return rows, nvars


def hom_dim(m: Rep, n: Rep) -> int:
    rows, nvars = _intertwiner_rows(m, n)
    return nvars - linalg.rank(rows)


def hom_basis(m: Rep, n: Rep) -> list[tuple[tuple[tuple, ...], ...]]:
    """A basis of ``Hom(M, N)``; each element is the tuple of vertex maps ``f_v``."""
    rows, nvars = _intertwiner_rows(m, n)
    q = m.quiver
    basis = linalg.nullspace(rows, nvars) if rows else linalg.nullspace([], nvars)
    out = []
    for vec in basis:
        vec = linalg.primitive(vec)
        maps, pos = [], 0
        for v in q.vertices:
            r, c = n.dims[v - 1], m.dims[v - 1]
            maps.append(tuple(tuple(vec[pos + i * c : pos + (i + 1) * c]) for i in range(r)))
            pos += r * c
        out.append(tuple(maps))
    return out


def has_epimorphism(sources: list[Rep], target: Rep) -> bool:
    """Whether some direct sum of the ``sources`` maps onto ``target``.

    True iff the images of all morphisms from the sources span ``target`` at
    every vertex.
    """
    for v in target.quiver.vertices:
        d = target.dims[v - 1]
        if not d:
            continue
        cols = [
            col
            for src in sources
            for f in hom_basis(src, target)
            for col in linalg.transpose(f[v - 1])
        ]
        if not cols or linalg.rank(cols) < d:
            return False
    return True


def has_monomorphism(source: Rep, targets: list[Rep]) -> bool:
    """Whether ``source`` embeds into some direct sum of the ``targets``.

    True iff the morphisms out of ``source`` have no common kernel.
    """
    for v in source.quiver.vertices:
        d = source.dims[v - 1]
        if not d:
            continue
        rows = [row for tgt in targets for f in hom_basis(source, tgt) for row in f[v - 1]]
        if not rows or linalg.rank(rows) < d:
            return False
    return True


def ext_dim(m: Rep, n: Rep) -> int:
    """``dim Ext(M, N) = dim Hom(M, N) - <dim M, dim N>``."""
    e = hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)
    if e < 0:
        raise IntegrityError(f"negative Ext dimension between {m.dims} and {n.dims}")
    return e


def ext_dim_resolution(m: Rep, n: Rep) -> int:
    """Ext as the cokernel of ``Hom(P0, N) -> Hom(P1, N)`` for the standard resolution.

    ``0 -> (+)_{a: s->t} P_t^{m_s} -> (+)_v P_v^{m_v} -> M -> 0``; applying
    ``Hom(-, N)`` gives exactly the intertwiner map, so Ext is its cokernel.
    """
    rows, _ = _intertwiner_rows(m, n)
    return len(rows) - linalg.rank(rows)


# ---------------------------------------------------------------- catalog


class Catalog:
    """All indecomposables of a Dynkin quiver, interned by dimension vector."""

    def __init__(self, quiver: Quiver) -> None:
        self.quiver = quiver
        roots = sorted(positive_roots(quiver))
        self.keys: tuple[DimVector, ...] = tuple(roots)
        self.reps: dict[DimVector, Rep] = {r: indecomposable(quiver, r) for r in roots}
        q = quiver
        self.projectives = {v: q.path_counts(v) for v in q.vertices}
        self.injectives = {v: q.path_counts_into(v) for v in q.vertices}
        self.simples = {v: tuple(int(u == v) for u in q.vertices) for v in q.vertices}
        for table in (self.projectives, self.injectives, self.simples):
            for key in table.values():
                if key not in self.reps:
                    raise IntegrityError(f"{key} is not a positive root")
        self._projective_set = frozenset(self.projectives.values())
        self._injective_set = frozenset(self.injectives.values())
        self._supports = {k: self.reps[k].support for k in roots}
        self._hom: dict[tuple[DimVector, DimVector], int] = {}
        self._ext: dict[tuple[DimVector, DimVector], int] = {}
        self.memo: dict = {}  # scratch cache for higher layers, keyed by tuples
        self._rperp: dict[DimVector, frozenset[DimVector]] = {}
        self._lperp: dict[DimVector, frozenset[DimVector]] = {}
        self._preds: dict[DimVector, tuple[DimVector, ...]] = {}
        for k in roots:
            if self.hom(k, k) != 1 or self.ext(k, k) != 0:
                raise IntegrityError(f"module {k} is not a brick without self-extensions")

    def __repr__(self) -> str:
        return f"Catalog({self.quiver.label or self.quiver.spec()!r}, {len(self.keys)} modules)"

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[DimVector]:
        return iter(self.keys)

    def __contains__(self, key: object) -> bool:
        return key in self.reps

    def check(self, key) -> DimVector:
        key = tuple(key)
        if key not in self.reps:
            raise CatalogError(f"no exceptional module with dimension vector {format_key(key)}")
        return key

    def rep(self, key) -> Rep:
        return self.reps[self.check(key)]

    def support(self, key: DimVector) -> frozenset[int]:
        return self._supports[key]

    def is_projective(self, key: DimVector) -> bool:
        return key in self._projective_set

    def is_injective(self, key: DimVector) -> bool:
        return key in self._injective_set

    def is_simple(self, key: DimVector) -> bool:
        return sum(key) == 1

    def hom(self, a: DimVector, b: DimVector) -> int:
        try:
            return self._hom[a, b]
        except KeyError:
            h = self._hom[a, b] = hom_dim(self.reps[a], self.reps[b])
            return h

    def euler(self, a: DimVector, b: DimVector) -> int:
        return euler_form(self.quiver, a, b)

    def ext(self, a: DimVector, b: DimVector) -> int:
        try:
            return self._ext[a, b]
        except KeyError:
            e = self.hom(a, b) - self.euler(a, b)
            if e < 0:
                raise IntegrityError(f"negative Ext dimension between {a} and {b}") from None
            self._ext[a, b] = e
            return e

    def orthogonal(self, a: DimVector, b: DimVector) -> bool:
        """``Hom(a, b) = 0 = Ext(a, b)``, i.e. ``b`` lies in ``a``-perp."""
        return self.hom(a, b) == 0 and self.ext(a, b) == 0

    def right_perp(self, key: DimVector) -> frozenset[DimVector]:
        if key not in self._rperp:
            self._rperp[key] = frozenset(x for x in self.keys if self.orthogonal(key, x))
        return self._rperp[key]

    def left_perp(self, key: DimVector) -> frozenset[DimVector]:
        if key not in self._lperp:
            self._lperp[key] = frozenset(x for x in self.keys if self.orthogonal(x, key))
        return self._lperp[key]

    def projective_in(self, key: DimVector, wide: frozenset[DimVector]) -> bool:
        """Projectivity inside the wide subcategory whose indecomposables are ``wide``."""
        return all(self.ext(key, x) == 0 for x in wide)

    def injective_in(self, key: DimVector, wide: frozenset[DimVector]) -> bool:
        return all(self.ext(x, key) == 0 for x in wide)

    # ------------------------------------------------------------ AR theory

    def tau(self, key: DimVector) -> DimVector | None:
        if self.is_projective(key):
            return None
        t = coxeter_transform(self.quiver, key)
        if t not in self.reps:
            raise IntegrityError(f"Coxeter image {t} of {key} is not a positive root")
        return t

    def tau_inverse(self, key: DimVector) -> DimVector | None:
        if self.is_injective(key):
            return None
        t = coxeter_transform(self.quiver, key, "inverse")
        if t not in self.reps:
            raise IntegrityError(f"inverse Coxeter image {t} of {key} is not a positive root")
        return t

    def ar_predecessors(self, key: DimVector) -> tuple[DimVector, ...]:
        """Sources of the irreducible maps into ``key``, with multiplicity.

        Knitting from the projective slice: maps into ``P_v`` come from the
        summands ``P_w`` of its radical, and the mesh ending at a
        non-projective ``Y`` starts at ``tau Y``.
        """
        if key in self._preds:
            return self._preds[key]
        q = self.quiver
        if self.is_projective(key):
            (v,) = [u for u, p in self.projectives.items() if p == key]
            preds = tuple(self.projectives[t] for s, t in q.arrows if s == v)
        else:
            preds = self._successors(self.tau(key))
        self._preds[key] = tuple(sorted(preds))
        return self._preds[key]

    def _successors(self, key: DimVector) -> tuple[DimVector, ...]:
        q = self.quiver
        out = [
            self.projectives[s]
            for s, t in q.arrows
            if self.projectives[t] == key
        ]
        for z in self.ar_predecessors(key):
            w = self.tau_inverse(z)
            if w is not None:
                out.append(w)
        return tuple(out)


def catalog_build(q: Quiver) -> Catalog:
    return Catalog(q)


def ar_translate(c: Catalog, m: Rep) -> Rep | None:
    t = c.tau(c.check(m.dims))
    return None if t is None else c.reps[t]


def ar_middle(c: Catalog, m: Rep) -> list[Rep]:
    """Indecomposable summands of the middle term of the AR sequence ending at ``m``."""
    key = c.check(m.dims)
    if c.is_projective(key):
        raise DomainError(f"{format_key(key)} is projective; no almost split sequence ends there")
    preds = c.ar_predecessors(key)
    total = [sum(col) for col in zip(*preds)] if preds else [0] * c.quiver.n
    expected = [a + b for a, b in zip(key, c.tau(key))]
    if total != expected:
        raise IntegrityError(f"mesh at {key} is not additive: {total} != {expected}")
    return [c.reps[p] for p in preds]


def format_key(key) -> str:
    return ".".join(str(x) for x in key)


def parse_key(text: str) -> DimVector:
    try:
        return tuple(int(x) for x in text.strip().split("."))
    except ValueError:
        raise CatalogError(f"malformed module key {text!r}") from None


def signed(key: DimVector, level: int) -> tuple[int, ...]:
    """Signed dimension vector ``(-1)^level dim X``."""
    sign = -1 if level % 2 else 1
    return tuple(sign * x for x in key)
