"""Objects of the m-cluster fundamental domain, compatibility, and the
bijection between compatible tuples and m-exceptional sequences.

An object ``X[j]`` is a catalog module with a level ``0 <= j <= m``; level
``m`` is reserved for projectives. No derived-category machinery is built:
every rule reduces to Hom/Ext/support tests over the catalog.

Inside the recursion the ambient category shrinks to a wide subcategory
``W`` (given by its indecomposables). "Projective" in the fundamental domain
of ``W`` then means projective inside ``W``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from . import linalg
from .errors import DomainError, IntegrityError
from .quiver import DimVector
from .reps import Catalog, format_key, signed
from .sequences import (
    ExceptionalSequence,
    classify,
    enumerate_sequences,
    mutate_left,
    mutate_right,
    validate,
)


@dataclass(frozen=True, order=True)
class Leveled:
    key: DimVector
    level: int

    @property
    def signed_dim(self) -> tuple[int, ...]:
        return signed(self.key, self.level)

    def __str__(self) -> str:
        return f"{format_key(self.key)}[{self.level}]"


def _everything(cat: Catalog) -> frozenset[DimVector]:
    return frozenset(cat.keys)


def in_domain(cat: Catalog, obj: Leveled, m: int, wide: frozenset | None = None) -> bool:
    """Membership in ``mod W[0] u ... u mod W[m-1] u W[m]``."""
    wide = _everything(cat) if wide is None else wide
    if obj.key not in wide or not 0 <= obj.level <= m:
        return False
    if obj.level < m:
        return True
    if wide == _everything(cat):
        return cat.is_projective(obj.key)
    return cat.projective_in(obj.key, wide)


def fundamental_domain(cat: Catalog, m: int, wide: frozenset | None = None) -> list[Leveled]:
    wide = _everything(cat) if wide is None else wide
    objs = [Leveled(k, j) for j in range(m + 1) for k in sorted(wide)]
    return [o for o in objs if in_domain(cat, o, m, wide)]


def _compatible(cat: Catalog, a: Leveled, b: Leveled) -> bool:
    if a.level < b.level:
        return cat.orthogonal(b.key, a.key)
    if a.level > b.level:
        return cat.orthogonal(a.key, b.key)
    return cat.ext(a.key, b.key) == 0 and cat.ext(b.key, a.key) == 0


def compatible(cat: Catalog, a: Leveled, b: Leveled, m: int) -> bool:
    """Compatibility of two fundamental-domain objects.

    ``X[j], Y[k]`` are compatible when ``(X, Y)`` is an exceptional pair
    (``j < k``), ``(Y, X)`` is one (``j > k``), or ``X, Y`` are
    Ext-orthogonal (``j = k``).
    """
    for o in (a, b):
        if not in_domain(cat, o, m):
            raise DomainError(f"{o} is outside the fundamental domain for m={m}")
    return _compatible(cat, a, b)


def _multiple_of(vec: Iterable[int], t: DimVector) -> bool:
    vec = tuple(vec)
    i = next(i for i, x in enumerate(t) if x)
    c, r = divmod(vec[i], t[i])
    return r == 0 and all(v == c * x for v, x in zip(vec, t))


def _level_choice(x: Leveled, y_key: DimVector, levels: Iterable[int], t: DimVector) -> int:
    ok = [
        j
        for j in levels
        if _multiple_of((a - b for a, b in zip(x.signed_dim, signed(y_key, j))), t)
    ]
    if len(ok) != 1:
        raise IntegrityError(f"level choice for {x} -> {format_key(y_key)} is ambiguous: {ok}")
    return ok[0]


def key_sigma(
    cat: Catalog,
    t: Leveled,
    x: Leveled,
    m: int,
    direction: Literal["forward", "inverse"] = "forward",
    wide: frozenset | None = None,
) -> Leveled:
    """The bijection from the fundamental domain of ``T``-perp onto the objects compatible with ``T[k]``.

    Forward: ``X[i]`` is fixed when compatible with ``T[k]``; otherwise it
    goes to ``Y[j]`` where ``(T, Y)`` is the right mutation of ``(X, T)`` and
    ``j`` is ``i`` or ``i - 1``, whichever makes ``(-1)^i dim X - (-1)^j dim Y``
    a multiple of ``dim T``. ``inverse`` undoes this.
    """
    wide = _everything(cat) if wide is None else wide
    if direction == "forward":
        return _sigma(cat, t, x, m, wide)
    if direction == "inverse":
        return _sigma_inverse(cat, t, x, m, wide)
    raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")


def _sigma(cat: Catalog, t: Leveled, x: Leveled, m: int, wide: frozenset) -> Leveled:
    sub = wide & cat.right_perp(t.key)
    if not in_domain(cat, x, m, sub):
        raise DomainError(f"{x} is not in the fundamental domain of {format_key(t.key)}-perp")
    if _compatible(cat, x, t):
        return x
    y = mutate_right(cat, x.key, t.key)
    out = Leveled(y, _level_choice(x, y, (x.level, x.level - 1), t.key))
    if not (in_domain(cat, out, m, wide) and _compatible(cat, out, t) and out != t):
        raise IntegrityError(f"sigma sends {x} to {out}, outside the objects compatible with {t}")
    return out


def _sigma_inverse(cat: Catalog, t: Leveled, z: Leveled, m: int, wide: frozenset) -> Leveled:
    if not (in_domain(cat, z, m, wide) and _compatible(cat, z, t) and z != t):
        raise DomainError(f"{z} is not an object compatible with {t}")
    sub = wide & cat.right_perp(t.key)
    if in_domain(cat, z, m, sub):
        pre = z
    else:
        x = mutate_left(cat, t.key, z.key)
        probe = Leveled(x, 0)
        ok = [
            i
            for i in (z.level, z.level + 1)
            if _multiple_of(
                (a - b for a, b in zip(signed(x, i), z.signed_dim)), t.key
            )
        ]
        if len(ok) != 1:
            raise IntegrityError(f"no unique level for the preimage of {z}: {ok} ({probe})")
        pre = Leveled(x, ok[0])
    if _sigma(cat, t, pre, m, wide) != z:
        raise IntegrityError(f"inverse sigma of {z} does not round-trip through {pre}")
    return pre


def sigma_table(
    cat: Catalog, t: Leveled, m: int, wide: frozenset | None = None
) -> dict[Leveled, Leveled]:
    """Forward ``key_sigma`` on the whole fundamental domain of ``T``-perp (inside ``wide``)."""
    wide = _everything(cat) if wide is None else wide
    sub = wide & cat.right_perp(t.key)
    return {x: _sigma(cat, t, x, m, wide) for x in fundamental_domain(cat, m, sub)}


# ---------------------------------------------------------------- tuples and sequences


@dataclass(frozen=True)
class CompatibleTuple:
    catalog: Catalog
    objects: tuple[Leveled, ...]
    m: int

    def __post_init__(self) -> None:
        objs = self.objects
        if not 0 < len(objs) <= self.catalog.quiver.n:
            raise DomainError(f"tuple length {len(objs)} outside 1..{self.catalog.quiver.n}")
        for o in objs:
            self.catalog.check(o.key)
            if not in_domain(self.catalog, o, self.m):
                raise DomainError(f"{o} is outside the fundamental domain for m={self.m}")
        if len(set(objs)) != len(objs):
            raise DomainError("tuple repeats an object")
        for a, b in itertools.combinations(objs, 2):
            if not _compatible(self.catalog, a, b):
                raise DomainError(f"{a} and {b} are not compatible")

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.objects)) + ")"


@dataclass(frozen=True)
class MExcSequence:
    catalog: Catalog
    terms: tuple[Leveled, ...]
    m: int

    def __post_init__(self) -> None:
        seq = self.underlying
        check = validate(seq)
        if not check:
            raise DomainError(f"underlying sequence {seq} is not exceptional")
        for o, c in zip(self.terms, classify(seq)):
            if not 0 <= o.level <= self.m:
                raise DomainError(f"level of {o} outside 0..{self.m}")
            if o.level == self.m and not c.rel_proj:
                raise DomainError(f"{o} has level m but is not relatively projective")

    @property
    def underlying(self) -> ExceptionalSequence:
        return ExceptionalSequence(self.catalog, tuple(o.key for o in self.terms))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.terms)) + ")"


def is_positive(tup: CompatibleTuple) -> bool:
    return all(o.level < tup.m for o in tup.objects)


def is_projectively_signed(seq: MExcSequence) -> bool:
    """No relatively injective term sits at level ``m``."""
    return not any(
        o.level == seq.m and c.rel_inj for o, c in zip(seq.terms, classify(seq.underlying))
    )


def _theta(cat: Catalog, objs: tuple[Leveled, ...], m: int, wide: frozenset) -> tuple[Leveled, ...]:
    if len(objs) == 1:
        return objs
    t = objs[-1]
    xs = tuple(_sigma_inverse(cat, t, o, m, wide) for o in objs[:-1])
    return _theta(cat, xs, m, wide & cat.right_perp(t.key)) + (t,)


def _theta_inverse(
    cat: Catalog, terms: tuple[Leveled, ...], m: int, wide: frozenset
) -> tuple[Leveled, ...]:
    if len(terms) == 1:
        return terms
    t = terms[-1]
    xs = _theta_inverse(cat, terms[:-1], m, wide & cat.right_perp(t.key))
    ts = tuple(_sigma(cat, t, x, m, wide) for x in xs)
    for a, b in itertools.combinations(ts, 2):
        if not _compatible(cat, a, b):
            raise IntegrityError(f"sigma broke compatibility of {a} and {b}")
    return ts + (t,)


def theta(tup: CompatibleTuple) -> MExcSequence:
    """Compatible tuple ``(T_s, ..., T_n)`` to m-exceptional sequence ``(E_s, ..., E_n)``."""
    cat, m = tup.catalog, tup.m
    seq = MExcSequence(cat, _theta(cat, tup.objects, m, _everything(cat)), m)
    _audit(tup, seq)
    if _theta_inverse(cat, seq.terms, m, _everything(cat)) != tup.objects:
        raise IntegrityError(f"theta does not round-trip on {tup}")
    return seq


def theta_inverse(seq: MExcSequence) -> CompatibleTuple:
    cat, m = seq.catalog, seq.m
    tup = CompatibleTuple(cat, _theta_inverse(cat, seq.terms, m, _everything(cat)), m)
    _audit(tup, seq)
    if _theta(cat, tup.objects, m, _everything(cat)) != seq.terms:
        raise IntegrityError(f"theta_inverse does not round-trip on {seq}")
    return tup


def correspondence_failures(tup: CompatibleTuple, seq: MExcSequence) -> list[str]:
    """Every violated property of a matched pair; empty when the pair is sound.

    Checks the span condition on signed dimension vectors, the level
    condition, properties (a), (b), (c) and the positivity equivalence.
    """
    cat = tup.catalog
    ts, es = tup.objects, seq.terms
    if len(ts) != len(es):
        return ["length mismatch"]
    fails = []
    cls = classify(seq.underlying)
    for i, (t, e, c) in enumerate(zip(ts, es, cls)):
        diff = [a - b for a, b in zip(t.signed_dim, e.signed_dim)]
        later_t = [o.signed_dim for o in ts[i + 1 :]]
        later_e = [o.key for o in es[i + 1 :]]
        try:
            in_t = linalg.integer_combination(later_t, diff) is not None
            in_e = linalg.integer_combination(later_e, diff) is not None
        except ValueError:
            in_t = in_e = False
        if not (in_t and in_e):
            fails.append(f"term {i}: {t} - {e} outside the span of later terms")
        if t.level not in (e.level, e.level - 1):
            fails.append(f"term {i}: level {t.level} vs {e.level}")
        if cat.is_projective(t.key) and not (e.level == t.level and c.rel_proj):
            fails.append(f"term {i}: projective {t} but {e} rel_proj={c.rel_proj}")
        if c.root and e.level != t.level:
            fails.append(f"term {i}: root {e} changed level to {t}")
        if e.level != t.level and not (
            c.rel_proj and not c.rel_inj and e.level == t.level + 1
        ):
            fails.append(f"term {i}: level mismatch {t} / {e} with {c}")
    positive = all(o.level < tup.m for o in ts)
    proj_signed = not any(o.level == seq.m and c.rel_inj for o, c in zip(es, cls))
    if positive != proj_signed:
        fails.append(f"positive={positive} but projectively signed={proj_signed}")
    return fails


def _audit(tup: CompatibleTuple, seq: MExcSequence) -> None:
    fails = correspondence_failures(tup, seq)
    if fails:
        raise IntegrityError(f"{tup} <-> {seq}: " + "; ".join(fails))


# ---------------------------------------------------------------- enumeration


def compatibility_graph(cat: Catalog, m: int) -> tuple[list[Leveled], list[set[int]]]:
    memo = ("compat_graph", m)
    if memo not in cat.memo:
        dom = fundamental_domain(cat, m)
        adj = [
            {j for j, b in enumerate(dom) if j != i and _compatible(cat, a, b)}
            for i, a in enumerate(dom)
        ]
        cat.memo[memo] = (dom, adj)
    return cat.memo[memo]


def enumerate_tuples(cat: Catalog, m: int, t: int) -> Iterator[CompatibleTuple]:
    """Ordered ``t``-tuples of distinct pairwise compatible objects."""
    dom, adj = compatibility_graph(cat, m)

    def extend(chosen: tuple[int, ...], allowed: set[int]) -> Iterator[tuple[int, ...]]:
        if len(chosen) == t:
            yield chosen
            return
        for i in sorted(allowed):
            yield from extend(chosen + (i,), allowed & adj[i])

    for idx in extend((), set(range(len(dom)))):
        yield CompatibleTuple(cat, tuple(dom[i] for i in idx), m)


def enumerate_m_sequences(cat: Catalog, m: int, t: int) -> Iterator[MExcSequence]:
    """m-exceptional sequences of length ``t``: level ``m`` only on relatively projective terms."""
    for seq in enumerate_sequences(cat, t):
        cls = classify(seq)
        ranges = [range(m + 1) if c.rel_proj else range(m) for c in cls]
        for levels in itertools.product(*ranges):
            yield MExcSequence(
                cat, tuple(Leveled(k, j) for k, j in zip(seq.terms, levels)), m
            )


def clusters(cat: Catalog, m: int) -> list[frozenset[Leveled]]:
    """Unordered m-clusters: sets of ``n`` pairwise compatible objects."""
    dom, adj = compatibility_graph(cat, m)
    n = cat.quiver.n
    out = []

    def grow(chosen: tuple[int, ...], allowed: set[int]) -> None:
        if len(chosen) == n:
            out.append(frozenset(dom[i] for i in chosen))
            return
        for i in sorted(allowed):
            grow(chosen + (i,), {j for j in allowed & adj[i] if j > i})

    grow((), set(range(len(dom))))
    return out
