"""Exhaustive statistics over complete exceptional sequences.

Every number here is a count from full enumeration; probabilities are exact
``Fraction`` values and closed formulas appear only as cross-checks.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .clusters import (
    enumerate_m_sequences,
    enumerate_tuples,
    clusters,
    is_positive,
    is_projectively_signed,
    theta,
)
from .errors import IntegrityError, ScaleError
from .quiver import Quiver, ces_count_formula, coxeter_number, fuss_catalan
from .reps import Catalog, catalog_build
from .sequences import (
    ExceptionalSequence,
    classify,
    enumerate_ces,
    move_left,
    perp_A,
    private_vertices,
)

DEFAULT_RANK_CAP = 5
CLUSTER_RANK_CAP = 4

IndexSet = tuple[int, ...]


def rank_cap() -> int:
    raw = os.environ.get("EXCSEQ_RANK_CAP")
    if raw is None:
        return DEFAULT_RANK_CAP
    try:
        return int(raw)
    except ValueError:
        raise ScaleError(f"EXCSEQ_RANK_CAP must be an integer, got {raw!r}") from None


def _require_scale(q: Quiver, cap: int | None = None) -> None:
    cap = rank_cap() if cap is None else cap
    if q.n > cap:
        raise ScaleError(f"rank {q.n} exceeds the cap {cap} (set EXCSEQ_RANK_CAP to raise it)")


@dataclass(frozen=True)
class CensusOptions:
    bijection: bool = False
    cluster_levels: tuple[int, ...] = ()


@dataclass(frozen=True)
class PositionCounts:
    rel_proj: int
    rel_inj: int
    root: int


@dataclass(frozen=True)
class ClusterCensus:
    m: int
    clusters: int
    positive: int
    ordered_tuples: int
    sequences: int
    projectively_signed: int
    fuss_catalan: Fraction


@dataclass
class CensusReport:
    label: str
    rank: int
    h: int
    total: int
    formula: Fraction
    positions: dict[int, PositionCounts]
    rpi_sets: dict[IndexSet, int]
    rel_proj_sets: dict[IndexSet, int]
    last_projective: dict[int, int]
    last_rel_proj: dict[int, int]
    bijection: dict[IndexSet, bool] = field(default_factory=dict)
    clusters: dict[int, ClusterCensus] = field(default_factory=dict)

    def probability(self, count: int) -> Fraction:
        return Fraction(count, self.total)

    def rpi_probability(self, js: IndexSet) -> Fraction:
        return self.probability(self.rpi_sets.get(tuple(sorted(js)), 0))

    def rpi_pair(self) -> tuple[int, Fraction]:
        """Count and probability that the last two terms are both rPI."""
        n = self.rank
        c = self.rpi_sets.get((n - 1, n), 0)
        return c, self.probability(c)

    @property
    def last_term_projective(self) -> Fraction:
        """Probability that the last term is projective."""
        return self.probability(self.last_projective.get(1, 0))


def census(q: Quiver, options: CensusOptions | None = None) -> CensusReport:
    _require_scale(q)
    options = options or CensusOptions()
    cat = catalog_build(q)
    n = q.n
    total = 0
    pos = {k: Counter() for k in range(1, n + 1)}
    rpi_sets: Counter = Counter()
    rp_sets: Counter = Counter()
    last_proj: Counter = Counter()
    last_rp: Counter = Counter()
    by_set: dict[IndexSet, list[ExceptionalSequence]] = {}
    proj_tail: dict[int, list[ExceptionalSequence]] = {}
    for seq in enumerate_ces(cat):
        total += 1
        cls = classify(seq)
        roots, rps = [], []
        for k, c in enumerate(cls, 1):
            pos[k]["rel_proj"] += c.rel_proj
            pos[k]["rel_inj"] += c.rel_inj
            pos[k]["root"] += c.root
            if c.root:
                roots.append(k)
            if c.rel_proj:
                rps.append(k)
        for r in range(1, len(rps) + 1):
            for js in itertools.combinations(rps, r):
                rp_sets[js] += 1
        for r in range(1, len(roots) + 1):
            for js in itertools.combinations(roots, r):
                rpi_sets[js] += 1
                if options.bijection:
                    by_set.setdefault(js, []).append(seq)
        for k in range(1, n + 1):
            if all(cat.is_projective(x) for x in seq.terms[n - k :]):
                last_proj[k] += 1
                if options.bijection:
                    proj_tail.setdefault(k, []).append(seq)
            else:
                break
        for k in range(1, n + 1):
            if all(c.rel_proj for c in cls[n - k :]):
                last_rp[k] += 1
            else:
                break
    report = CensusReport(
        label=q.label or q.spec(),
        rank=n,
        h=coxeter_number(q),
        total=total,
        formula=ces_count_formula(q),
        positions={k: PositionCounts(c["rel_proj"], c["rel_inj"], c["root"]) for k, c in pos.items()},
        rpi_sets={js: rpi_sets[js] for js in sorted(rpi_sets)},
        rel_proj_sets={js: rp_sets[js] for js in sorted(rp_sets)},
        last_projective=dict(sorted(last_proj.items())),
        last_rel_proj=dict(sorted(last_rp.items())),
    )
    if options.bijection:
        for r in range(1, n + 1):
            for js in itertools.combinations(range(1, n + 1), r):
                report.bijection[js] = verify_rpi_bijection(
                    by_set.get(js, []), proj_tail.get(r, []), js
                )
    for m in options.cluster_levels:
        report.clusters[m] = cluster_census(q, m, cat)
    return report


# ---------------------------------------------------------------- B <-> P bijection


def rpi_to_projective_tail(seq: ExceptionalSequence, js: IndexSet) -> ExceptionalSequence:
    """Drop the rPI terms at ``js`` and append ``P_{v_k}, ..., P_{v_1}``.

    ``v_i`` is the vertex private to ``E_{j_i}``.
    """
    cat = seq.catalog
    vs = []
    for j in js:
        private = private_vertices(seq, j)
        if len(private) != 1:
            raise IntegrityError(f"E_{j} of {seq} has private vertices {sorted(private)}")
        vs.append(next(iter(private)))
    kept = [x for k, x in enumerate(seq.terms, 1) if k not in js]
    tail = [cat.projectives[v] for v in reversed(vs)]
    return seq.replace(kept + tail)


def projective_tail_to_rpi(seq: ExceptionalSequence, js: IndexSet) -> ExceptionalSequence:
    """Move the last term left to ``j_1``, then the new last term to ``j_2``, and so on."""
    for j in js:
        seq = move_left(seq, seq.n, j)
    return seq


def verify_rpi_bijection(
    rpi: list[ExceptionalSequence], tails: list[ExceptionalSequence], js: IndexSet
) -> bool:
    """Both maps land in the right set and invert each other."""
    k = len(js)
    if len(rpi) != len(tails):
        return False
    forward = {}
    for seq in rpi:
        image = rpi_to_projective_tail(seq, js)
        cat = seq.catalog
        if not all(cat.is_projective(x) for x in image.terms[seq.n - k :]):
            return False
        forward[seq.terms] = image.terms
    if set(forward.values()) != {s.terms for s in tails}:
        return False
    for seq in tails:
        back = projective_tail_to_rpi(seq, js)
        cls = classify(back)
        if not all(cls[j - 1].root for j in js) or forward.get(back.terms) != seq.terms:
            return False
    return True


# ---------------------------------------------------------------- last k terms


@dataclass
class LastKRecord:
    k: int
    checked: int = 0
    by_vertices: dict[tuple[int, ...], int] = field(default_factory=dict)
    rpi: int = 0
    rpi_by_paths: int = 0
    # vertex set -> orderings whose projectives admit no maps forward
    rpi_orderings: dict[frozenset[int], list[tuple[int, ...]]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _restricted_projective(q: Quiver, v: int, deleted: set[int]) -> tuple[int, ...]:
    """Path counts from ``v`` in the quiver with ``deleted`` vertices removed."""
    counts = [0] * q.n
    counts[v - 1] = 1
    out_arrows: dict[int, list[int]] = {}
    for s, t in q.arrows:
        if s not in deleted and t not in deleted:
            out_arrows.setdefault(s, []).append(t)
    stack = [v]
    while stack:
        u = stack.pop()
        for w in out_arrows.get(u, []):
            counts[w - 1] += 1
            stack.append(w)
    return tuple(counts)


def last_k_projective_structure(q: Quiver, k: int) -> LastKRecord:
    """Check the structure of every sequence whose last ``k`` terms are relatively projective."""
    _require_scale(q)
    if not 1 <= k <= q.n:
        raise ValueError(f"k must lie in 1..{q.n}")
    cat = catalog_build(q)
    n = q.n
    rec = LastKRecord(k)
    counts: Counter = Counter()
    for seq in enumerate_ces(cat):
        cls = classify(seq)
        if not all(c.rel_proj for c in cls[n - k :]):
            continue
        rec.checked += 1
        vs = []
        for i in range(1, k + 1):
            pos = n - k + i
            top = cat.rep(seq[pos]).top_dims()
            if sum(top) != 1:
                rec.failures.append(f"{seq}: E_{pos} has top {top}")
                break
            vs.append(top.index(1) + 1)
        else:
            _check_tail(cat, seq, vs, cls, rec)
            counts[tuple(vs)] += 1
    rec.by_vertices = dict(sorted(counts.items()))
    for vs in rec.by_vertices:
        base = rec.by_vertices[vs]
        for perm in set(itertools.permutations(vs)):
            if counts.get(perm, 0) != base:
                rec.failures.append(f"orderings {vs} and {perm} have different counts")
    for vs in rec.by_vertices:
        if _no_forward_maps(cat, vs):
            rec.rpi_orderings.setdefault(frozenset(vs), []).append(vs)
        else:
            rec.rpi_orderings.setdefault(frozenset(vs), [])
    rec.rpi_by_paths = sum(
        c for vs, c in rec.by_vertices.items() if _no_forward_maps(cat, vs)
    )
    if rec.rpi_by_paths != rec.rpi:
        rec.failures.append(f"path test gives {rec.rpi_by_paths} rPI tails, classification {rec.rpi}")
    return rec


def _no_forward_maps(cat: Catalog, vs: list[int] | tuple[int, ...]) -> bool:
    p = cat.projectives
    return all(cat.hom(p[a], p[b]) == 0 for a, b in itertools.combinations(vs, 2))


def _check_tail(cat: Catalog, seq: ExceptionalSequence, vs: list[int], cls, rec: LastKRecord) -> None:
    n, k = seq.n, len(vs)
    for i, v in enumerate(vs, 1):
        pos = n - k + i
        if any(v in cat.support(seq[j]) for j in range(1, pos)):
            rec.failures.append(f"{seq}: top vertex {v} of E_{pos} appears earlier")
        expected = _restricted_projective(cat.quiver, v, set(vs[i:]))
        if seq[pos] != expected:
            rec.failures.append(f"{seq}: E_{pos} is not the projective {expected}")
        if not cat.projective_in(seq[pos], perp_A(seq, pos)):
            rec.failures.append(f"{seq}: E_{pos} is not projective in its perpendicular category")
    all_root = all(c.root for c in cls[n - k :])
    rec.rpi += all_root
    if all_root != _no_forward_maps(cat, vs):
        rec.failures.append(f"{seq}: rPI={all_root} disagrees with the Hom test on {vs}")


# ---------------------------------------------------------------- clusters


def cluster_census(q: Quiver, m: int, cat: Catalog | None = None) -> ClusterCensus:
    _require_scale(q, min(rank_cap(), CLUSTER_RANK_CAP) if m <= 2 else 3)
    if m < 1:
        raise ValueError("m must be positive")
    cat = cat or catalog_build(q)
    n = q.n
    sets = clusters(cat, m)
    positive = sum(all(o.level < m for o in c) for c in sets)
    tuples = list(enumerate_tuples(cat, m, n))
    seqs = list(enumerate_m_sequences(cat, m, n))
    images = {theta(t).terms for t in tuples}
    if images != {s.terms for s in seqs}:
        raise IntegrityError("theta does not match the m-exceptional sequences")
    if len(tuples) != math.factorial(n) * len(sets):
        raise IntegrityError("ordered tuples are not n! times the clusters")
    signed = sum(is_projectively_signed(s) for s in seqs)
    if signed != sum(is_positive(t) for t in tuples):
        raise IntegrityError("positive tuples and projectively signed sequences differ")
    return ClusterCensus(
        m=m,
        clusters=len(sets),
        positive=positive,
        ordered_tuples=len(tuples),
        sequences=len(seqs),
        projectively_signed=signed,
        fuss_catalan=fuss_catalan(q, m),
    )
