import math

import pytest

from excseq.clusters import (
    CompatibleTuple,
    Leveled,
    MExcSequence,
    clusters,
    compatible,
    correspondence_failures,
    enumerate_m_sequences,
    enumerate_tuples,
    fundamental_domain,
    in_domain,
    is_positive,
    is_projectively_signed,
    key_sigma,
    sigma_table,
    theta,
    theta_inverse,
)
from excseq.errors import DomainError
from excseq.sequences import classify
from excseq.quiver import positive_roots

from _support import catalog

P1, P2, P3 = (1, 1, 0), (0, 1, 0), (0, 1, 1)
I1, I2, I3 = (1, 0, 0), (1, 1, 1), (0, 0, 1)
A3 = "A3:1>2<3"


def L(key, level=0):
    return Leveled(key, level)


def test_compatibility_examples():
    cat = catalog("A2")
    s1, s2 = (1, 0), (0, 1)
    assert not compatible(cat, L(s1), L(s2), 1)
    for x in fundamental_domain(cat, 1):
        assert compatible(cat, x, x, 1)
    a3 = catalog(A3)
    assert not compatible(a3, L(P3, 2), L(I2), 2)
    assert not compatible(a3, L(P3, 2), L(I3), 2)
    assert compatible(a3, L(P3, 2), L(I1), 2)


def test_domain_errors():
    cat = catalog(A3)
    with pytest.raises(DomainError):
        compatible(cat, L(I2, 2), L(I3), 2)
    with pytest.raises(DomainError):
        compatible(cat, L(P3, 3), L(I3), 2)
    assert not in_domain(cat, L(I2, 1), 1)


@pytest.mark.parametrize("spec, m", [("A2", 1), ("A2", 2), (A3, 1), (A3, 2), ("A3", 2), ("D4", 1)])
def test_compatibility_rules(spec, m):
    cat = catalog(spec)
    dom = fundamental_domain(cat, m)
    assert len(dom) == m * len(cat.keys) + cat.quiver.n
    for a in dom:
        for b in dom:
            c = compatible(cat, a, b, m)
            assert c == compatible(cat, b, a, m)
            if a.level == b.level == m:
                assert c
            elif a.level == m:
                # shifted projective P_i[m] is compatible exactly with objects avoiding vertex i
                (v,) = [u for u, p in cat.projectives.items() if p == a.key]
                assert c == (v not in cat.support(b.key))


def test_key_sigma_examples():
    cat = catalog("A2")
    t, x = L((0, 1)), L((1, 0))
    assert key_sigma(cat, t, x, 1) == L((1, 1))
    assert key_sigma(cat, t, L((1, 1)), 1, "inverse") == x
    a3 = catalog(A3)
    assert key_sigma(a3, L(I3), L(P3), 2) == L(P3)


@pytest.mark.parametrize("spec, m", [("A2", 1), ("A2", 2), (A3, 1), (A3, 2), ("A3", 1), ("A3", 2), ("A3:1<2>3", 2)])
def test_key_sigma_is_a_bijection_onto_compatible_objects(spec, m):
    cat = catalog(spec)
    for t in fundamental_domain(cat, m):
        table = sigma_table(cat, t, m)
        targets = {z for z in fundamental_domain(cat, m) if z != t and compatible(cat, z, t, m)}
        assert len(set(table.values())) == len(table)
        assert set(table.values()) == targets
        perp = cat.right_perp(t.key)
        for x, y in table.items():
            assert key_sigma(cat, t, y, m, "inverse") == x
            if x == y:
                continue
            x_proj = cat.projective_in(x.key, perp)
            if y.level == x.level - 1:
                assert x_proj
            if cat.is_projective(y.key):
                assert y.level == x.level and x_proj


def test_worked_example():
    cat = catalog(A3)
    cases = [
        ((L(P3), L(I2), L(I3)), (L(P3), L(I2), L(I3))),
        ((L(P3, 2), L(I2), L(I3)), (L(I1, 1), L(I2), L(I3))),
        ((L(P3, 1), L(I2, 1), L(I3)), (L(P2, 1), L(P1, 1), L(I3))),
    ]
    for seq_terms, tup_objs in cases:
        seq = MExcSequence(cat, seq_terms, 2)
        tup = CompatibleTuple(cat, tup_objs, 2)
        assert theta_inverse(seq).objects == tup_objs
        assert theta(tup).terms == seq_terms
    cls = classify(MExcSequence(cat, cases[0][0], 2).underlying)
    assert (cls[0].rel_proj, cls[0].rel_inj) == (True, False)
    assert cls[1].root


def test_level_m_requires_relative_projectivity():
    cat = catalog(A3)
    with pytest.raises(DomainError):
        MExcSequence(cat, (L(P3), L(I2), L(I3, 2)), 2)
    with pytest.raises(DomainError):
        MExcSequence(cat, (L(I2), L(P3), L(I3)), 2)


def test_projectively_signed_examples():
    cat = catalog(A3)
    assert not is_projectively_signed(MExcSequence(cat, (L(P3), L(I2, 1), L(I3)), 1))
    assert is_projectively_signed(MExcSequence(cat, (L(P3), L(I2), L(I3)), 1))
    seq = MExcSequence(cat, (L(P3, 2), L(I2), L(I3)), 2)
    assert is_projectively_signed(seq) and is_positive(theta_inverse(seq))


def test_single_term_is_identity():
    cat = catalog("D4")
    for x in fundamental_domain(cat, 1):
        assert theta(CompatibleTuple(cat, (x,), 1)).terms == (x,)


@pytest.mark.parametrize("spec, m", [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2), (A3, 1), (A3, 2), ("D4", 1)])
def test_bijection_exhaustive(spec, m):
    cat = catalog(spec)
    for t in range(1, cat.quiver.n + 1):
        tuples = list(enumerate_tuples(cat, m, t))
        seqs = list(enumerate_m_sequences(cat, m, t))
        images = {}
        for tup in tuples:
            seq = theta(tup)
            assert correspondence_failures(tup, seq) == []
            assert is_positive(tup) == is_projectively_signed(seq)
            images[seq.terms] = tup.objects
        assert set(images) == {s.terms for s in seqs}
        for seq in seqs:
            back = theta_inverse(seq)
            assert images[seq.terms] == back.objects
            assert is_projectively_signed(seq) == is_positive(back)


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", A3, "D4"])
def test_signed_counts(spec):
    cat = catalog(spec)
    n = cat.quiver.n
    sets = clusters(cat, 1)
    pos = [c for c in sets if all(o.level == 0 for o in c)]
    seqs = list(enumerate_m_sequences(cat, 1, n))
    assert len(seqs) == math.factorial(n) * len(sets)
    assert sum(map(is_projectively_signed, seqs)) == math.factorial(n) * len(pos)


def test_t1_tuples_are_the_domain():
    cat = catalog("A3")
    for m in (1, 2):
        assert len(list(enumerate_tuples(cat, m, 1))) == m * len(positive_roots(cat.quiver)) + 3


def test_tuple_validation():
    cat = catalog("A2")
    with pytest.raises(DomainError):
        CompatibleTuple(cat, (L((1, 0)), L((0, 1))), 1)
    with pytest.raises(DomainError):
        CompatibleTuple(cat, (L((1, 0)), L((1, 0))), 1)


def test_bad_direction():
    cat = catalog("A2")
    with pytest.raises(ValueError):
        key_sigma(cat, L((0, 1)), L((1, 0)), 1, "sideways")
