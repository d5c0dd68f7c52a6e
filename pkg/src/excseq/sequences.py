"""Exceptional sequences: validation, perpendicular categories, relative
projectivity/injectivity, supports, braid moves and the Garside action.

Sequences are left-incomplete: a sequence of length ``t`` over a rank ``n``
quiver occupies positions ``n - t + 1 .. n``. All positions are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from . import linalg
from .errors import DomainError, IntegrityError
from .reps import Catalog, format_key
from .quiver import DimVector

Wide = frozenset  # indecomposables of a wide subcategory, as catalog keys


@dataclass(frozen=True)
class ExceptionalSequence:
    catalog: Catalog
    terms: tuple[DimVector, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.catalog.check(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if not 0 < len(terms) <= self.n:
            raise DomainError(f"sequence length {len(terms)} outside 1..{self.n}")

    @classmethod
    def from_keys(cls, catalog: Catalog, text: str) -> ExceptionalSequence:
        from .reps import parse_key

        return cls(catalog, tuple(parse_key(k) for k in text.split(",")))

    @property
    def n(self) -> int:
        return self.catalog.quiver.n

    @property
    def start(self) -> int:
        return self.n - len(self.terms) + 1

    @property
    def complete(self) -> bool:
        return len(self.terms) == self.n

    @property
    def positions(self) -> range:
        return range(self.start, self.n + 1)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, k: int) -> DimVector:
        """Term at 1-based position ``k``."""
        if k not in self.positions:
            raise IndexError(f"position {k} outside {self.start}..{self.n}")
        return self.terms[k - self.start]

    def replace(self, terms: Iterable[DimVector]) -> ExceptionalSequence:
        return ExceptionalSequence(self.catalog, tuple(terms))

    def __str__(self) -> str:
        return "(" + ", ".join(format_key(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Violation:
    later: int
    earlier: int
    kind: Literal["Hom", "Ext"]
    dim: int


@dataclass(frozen=True)
class Validation:
    valid: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate(seq: ExceptionalSequence) -> Validation:
    """Check ``Hom(E_j, E_i) = 0 = Ext(E_j, E_i)`` for all ``i < j``."""
    cat = seq.catalog
    for j in seq.positions:
        for i in range(seq.start, j):
            h = cat.hom(seq[j], seq[i])
            if h:
                return Validation(False, Violation(j, i, "Hom", h))
            e = cat.ext(seq[j], seq[i])
            if e:
                return Validation(False, Violation(j, i, "Ext", e))
    return Validation(True)


def is_exceptional(cat: Catalog, terms: Iterable[DimVector]) -> bool:
    terms = tuple(terms)
    return all(
        cat.orthogonal(terms[j], terms[i]) for j in range(len(terms)) for i in range(j)
    )


def _require_valid(seq: ExceptionalSequence) -> None:
    check = validate(seq)
    if not check:
        v = check.violation
        raise DomainError(
            f"{seq} is not exceptional: {v.kind}(E_{v.later}, E_{v.earlier}) has dimension {v.dim}"
        )


def dimension_determinant(seq: ExceptionalSequence) -> int:
    return int(linalg.det([list(t) for t in seq.terms]))


# ---------------------------------------------------------------- perpendicular categories


def perp_A(seq: ExceptionalSequence, k: int) -> Wide:
    """``A_k``: modules ``X`` with ``Hom(E_j, X) = 0 = Ext(E_j, X)`` for all ``j > k``."""
    if not seq.start - 1 <= k <= seq.n:
        raise IndexError(f"A_{k} undefined for positions {seq.start}..{seq.n}")
    cat = seq.catalog
    out = frozenset(cat.keys)
    for j in range(k + 1, seq.n + 1):
        out &= cat.right_perp(seq[j])
    return out


def perp_B(seq: ExceptionalSequence, k: int) -> Wide:
    """``B_k``: the left perpendicular of ``A_{k-1}``."""
    if not seq.start <= k <= seq.n:
        raise IndexError(f"B_{k} undefined for positions {seq.start}..{seq.n}")
    cat = seq.catalog
    out = frozenset(cat.keys)
    for z in perp_A(seq, k - 1):
        out &= cat.left_perp(z)
    return out


def perp_B_direct(seq: ExceptionalSequence, k: int) -> Wide:
    """``B_k`` of a complete sequence as the left perpendicular of ``E_1, ..., E_{k-1}``."""
    if not seq.complete:
        raise DomainError("direct B_k needs a complete sequence")
    cat = seq.catalog
    out = frozenset(cat.keys)
    for i in range(1, k):
        out &= cat.left_perp(seq[i])
    return out


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class TermClass:
    rel_proj: bool
    rel_inj: bool

    @property
    def root(self) -> bool:
        return self.rel_proj and self.rel_inj


RelClass = tuple[TermClass, ...]


def is_rel_proj(seq: ExceptionalSequence, k: int) -> bool:
    return seq.catalog.projective_in(seq[k], perp_A(seq, k))


def is_rel_inj(seq: ExceptionalSequence, k: int) -> bool:
    return seq.catalog.injective_in(seq[k], perp_B(seq, k))


def is_rel_proj_reduced(seq: ExceptionalSequence, k: int) -> bool:
    """Ext-vanishing scan over ``A_k`` intersected with ``E_{k-1}``-perp only."""
    scan = perp_A(seq, k)
    if k > seq.start:
        scan &= seq.catalog.right_perp(seq[k - 1])
    return seq.catalog.projective_in(seq[k], scan)


def classify(seq: ExceptionalSequence) -> RelClass:
    out = tuple(TermClass(is_rel_proj(seq, k), is_rel_inj(seq, k)) for k in seq.positions)
    for k, c in zip(seq.positions, out):
        if not (c.rel_proj or c.rel_inj):
            raise IntegrityError(f"E_{k} of {seq} is neither relatively projective nor injective")
    last = out[-1]
    if not last.rel_inj or last.rel_proj != seq.catalog.is_projective(seq.terms[-1]):
        raise IntegrityError(f"last term of {seq} misclassified")
    return out


def covered_by(
    seq: ExceptionalSequence,
    k: int,
    side: Literal["left", "right", "others"] | Iterable[int],
) -> bool:
    """Whether ``supp E_k`` lies in the union of the supports of the chosen terms."""
    if side == "left":
        idx = range(seq.start, k)
    elif side == "right":
        idx = range(k + 1, seq.n + 1)
    elif side == "others":
        idx = [j for j in seq.positions if j != k]
    else:
        idx = list(side)
    cat = seq.catalog
    union = frozenset().union(*(cat.support(seq[j]) for j in idx))
    return cat.support(seq[k]) <= union


def private_vertices(seq: ExceptionalSequence, k: int) -> frozenset[int]:
    """Vertices in the support of ``E_k`` and of no other term."""
    cat = seq.catalog
    others = frozenset().union(*(cat.support(seq[j]) for j in seq.positions if j != k))
    return cat.support(seq[k]) - others


# ---------------------------------------------------------------- mutation


def _pick(cat: Catalog, candidates: list[tuple[int, ...]], ok) -> DimVector:
    found = {c for c in candidates if c in cat and ok(c)}
    if len(found) != 1:
        raise IntegrityError(f"mutation has {len(found)} valid candidates among {candidates}")
    return found.pop()


def _combine(a: DimVector, s: int, b: DimVector) -> tuple[int, ...]:
    return tuple(x + s * y for x, y in zip(a, b))


def mutate_right(cat: Catalog, x: DimVector, t: DimVector) -> DimVector:
    """Right mutation of the exceptional pair ``(X, T)`` to ``(T, Y)``; returns ``Y``."""
    h, e = cat.hom(x, t), cat.ext(x, t)
    neg = tuple(-c for c in x)
    candidates = [x, _combine(x, e, t), _combine(x, -h, t), _combine(neg, h, t)]
    return _pick(cat, candidates, lambda y: cat.orthogonal(y, t))


def mutate_left(cat: Catalog, a: DimVector, b: DimVector) -> DimVector:
    """Left mutation of the exceptional pair ``(A, B)`` to ``(Z, A)``; returns ``Z``."""
    h, e = cat.hom(a, b), cat.ext(a, b)
    neg = tuple(-c for c in b)
    candidates = [b, _combine(b, e, a), _combine(b, -h, a), _combine(neg, h, a)]
    return _pick(cat, candidates, lambda z: cat.orthogonal(a, z))


def braid_sigma(
    seq: ExceptionalSequence, k: int, direction: Literal["right", "left"] = "right"
) -> ExceptionalSequence:
    """Mutate the adjacent pair at positions ``k, k+1``.

    ``right`` sends ``(E_k, E_{k+1})`` to ``(E_{k+1}, E_k')``; ``left`` is its
    inverse, sending ``(E_k, E_{k+1})`` to ``(E_{k+1}', E_k)``.
    """
    if not seq.start <= k < seq.n:
        raise IndexError(f"no adjacent pair at position {k}")
    cat = seq.catalog
    a, b = seq[k], seq[k + 1]
    if direction == "right":
        pair = (b, mutate_right(cat, a, b))
    elif direction == "left":
        pair = (mutate_left(cat, a, b), a)
    else:
        raise ValueError(f"direction must be 'right' or 'left', not {direction!r}")
    i = k - seq.start
    out = seq.replace(seq.terms[:i] + pair + seq.terms[i + 2 :])
    if not validate(out):
        raise IntegrityError(f"braid move produced a non-exceptional sequence {out}")
    return out


def move_left(seq: ExceptionalSequence, frm: int, to: int) -> ExceptionalSequence:
    """Carry the term at ``frm`` to position ``to <= frm`` by left mutations."""
    for p in range(frm - 1, to - 1, -1):
        seq = braid_sigma(seq, p, "left")
    return seq


def relative_tau(cat: Catalog, basis: tuple[DimVector, ...], key: DimVector) -> tuple[int, ...]:
    """Coxeter transform of the wide subcategory with exceptional basis ``basis``.

    With Gram matrix ``G`` of the Euler form on the basis, the relative
    Coxeter matrix in basis coordinates is ``-G^{-1} G^T``.
    """
    memo = ("relative_tau", basis, key)
    if memo in cat.memo:
        return cat.memo[memo]
    g = [[cat.euler(a, b) for b in basis] for a in basis]
    coords = linalg.solve(basis, key)
    if coords is None:
        raise DomainError(f"{key} is not in the span of the basis")
    phi = linalg.matmul(linalg.inverse(g), linalg.transpose(g))
    image = [-x for x in linalg.matvec(phi, coords)]
    out = [sum(c * b[i] for c, b in zip(image, basis)) for i in range(len(key))]
    cat.memo[memo] = tuple(int(x) for x in out)
    return cat.memo[memo]


def delta_k(seq: ExceptionalSequence, k: int) -> ExceptionalSequence:
    """``(E_1, ..., E_n) -> (E_k', E_1, ..., E_k^, ..., E_n)`` by ``k - 1`` left mutations."""
    if not seq.complete:
        raise DomainError("delta_k acts on complete sequences")
    if not 1 <= k <= seq.n:
        raise IndexError(f"delta_{k} undefined for rank {seq.n}")
    out = move_left(seq, k, 1)
    cat = seq.catalog
    ak = perp_A(seq, k)
    if not cat.projective_in(seq[k], ak):
        expected = relative_tau(cat, seq.terms[:k], seq[k])
        if out[1] != expected:
            raise IntegrityError(f"delta_{k}: {out[1]} differs from relative AR translate {expected}")
    return out


def garside(seq: ExceptionalSequence) -> ExceptionalSequence:
    """``Delta = delta_n ... delta_2``: apply ``delta_2`` first and ``delta_n`` last.

    The result is ``(E_n', ..., E_2', E_1)``; ``E_k'`` sits at position
    ``n - k + 1``.
    """
    if not seq.complete:
        raise DomainError("the Garside element acts on complete sequences")
    out = seq
    for k in range(2, seq.n + 1):
        out = delta_k(out, k)
    return out


# ---------------------------------------------------------------- enumeration


def enumerate_sequences(cat: Catalog, length: int) -> Iterator[ExceptionalSequence]:
    """All exceptional sequences of the given length, ``E_n`` chosen first.

    Candidates at each position are scanned in lexicographic order of their
    dimension vectors, so the stream order is deterministic.
    """
    if not 1 <= length <= cat.quiver.n:
        raise DomainError(f"length {length} outside 1..{cat.quiver.n}")

    def extend(suffix: tuple, allowed: frozenset) -> Iterator[tuple]:
        if len(suffix) == length:
            yield suffix
            return
        for x in sorted(allowed):
            yield from extend((x,) + suffix, allowed & cat.right_perp(x))

    for terms in extend((), frozenset(cat.keys)):
        yield ExceptionalSequence(cat, terms)


def enumerate_ces(cat: Catalog) -> Iterator[ExceptionalSequence]:
    return enumerate_sequences(cat, cat.quiver.n)


# ---------------------------------------------------------------- support order


@dataclass(frozen=True)
class SupportHasse:
    keys: dict[int, DimVector]
    supports: dict[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...]  # (smaller, larger) covering pairs
    maximal: frozenset[int]

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.keys))

    def below(self, node: int) -> frozenset[int]:
        return frozenset(j for j in self.keys if self.supports[j] < self.supports[node])


def support_hasse(seq: ExceptionalSequence) -> SupportHasse:
    """Hasse diagram of the terms ordered by strict inclusion of supports."""
    cat = seq.catalog
    sup = {k: cat.support(seq[k]) for k in seq.positions}
    less = {(a, b) for a in sup for b in sup if sup[a] < sup[b]}
    edges = tuple(
        sorted(
            (a, b)
            for a, b in less
            if not any((a, c) in less and (c, b) in less for c in sup)
        )
    )
    maximal = frozenset(b for b in sup if not any(sup[b] < sup[c] for c in sup))
    return SupportHasse({k: seq[k] for k in sup}, sup, edges, maximal)
