import itertools

import pytest

from excseq.errors import DomainError
from excseq.sequences import (
    ExceptionalSequence,
    braid_sigma,
    classify,
    covered_by,
    delta_k,
    dimension_determinant,
    enumerate_sequences,
    garside,
    is_exceptional,
    is_rel_proj_reduced,
    move_left,
    perp_A,
    perp_B,
    perp_B_direct,
    private_vertices,
    relative_tau,
    support_hasse,
    validate,
)

from _support import ALL, SMALL, catalog, ces

P3, I2, I3 = (0, 1, 1), (1, 1, 1), (0, 0, 1)
EXAMPLE = "0.1.1,1.1.1,0.0.1"


def seq(spec, text):
    return ExceptionalSequence.from_keys(catalog(spec), text)


def test_validate_examples():
    assert validate(seq("A3:1>2<3", EXAMPLE))
    bad = validate(seq("A2", "0.1,1.0"))
    assert not bad
    assert (bad.violation.later, bad.violation.earlier, bad.violation.kind) == (2, 1, "Ext")
    assert validate(seq("A3", "1.1.0"))


def test_length_bounds():
    cat = catalog("A2")
    with pytest.raises(DomainError):
        ExceptionalSequence(cat, ())
    with pytest.raises(DomainError):
        ExceptionalSequence(cat, ((1, 0),) * 3)


@pytest.mark.parametrize(
    "spec, count",
    [("A1", 1), ("A2", 3), ("A2:1<2", 3), ("A3", 16), ("A3:1>2<3", 16), ("A4", 125),
     ("D4:sym-source", 162), ("D4:sym-sink", 162), ("D4", 162)],
)
def test_ces_counts(spec, count):
    assert len(ces(spec)) == count


def test_enumeration_is_duplicate_free_and_exceptional():
    for spec in ALL:
        seqs = ces(spec)
        assert len({s.terms for s in seqs}) == len(seqs)
        cat = catalog(spec)
        for s in seqs:
            assert is_exceptional(cat, s.terms)
            assert abs(dimension_determinant(s)) == 1


def test_a2_enumeration_order():
    assert [str(s) for s in ces("A2")] == ["(1.0, 0.1)", "(1.1, 1.0)", "(0.1, 1.1)"]


def test_incomplete_enumeration_counts():
    cat = catalog("A3")
    assert len(list(enumerate_sequences(cat, 1))) == 6
    # each length-2 sequence extends uniquely on the left
    assert len(list(enumerate_sequences(cat, 2))) == 16


def test_perpendicular_examples():
    s = seq("A2", "1.0,0.1")
    assert perp_A(s, 1) == {(1, 0)}
    assert perp_A(s, 2) == set(catalog("A2").keys)
    assert I2 in perp_A(seq("A3:1>2<3", EXAMPLE), 2)


@pytest.mark.parametrize("spec", ALL)
def test_perp_b_matches_direct_left_perp(spec):
    for s in ces(spec):
        for k in s.positions:
            assert perp_B(s, k) == perp_B_direct(s, k)


def test_classify_examples():
    cls = classify(seq("A3:1>2<3", EXAMPLE))
    assert [(c.rel_proj, c.rel_inj) for c in cls] == [(True, False), (True, True), (False, True)]
    cls = classify(seq("A2", "1.0,0.1"))
    assert all(c.root for c in cls)


@pytest.mark.parametrize("spec", ALL)
def test_every_term_is_relatively_projective_or_injective(spec):
    violations = [
        (str(s), k)
        for s in ces(spec)
        for k, c in zip(s.positions, classify(s))
        if not (c.rel_proj or c.rel_inj)
    ]
    assert violations == []


@pytest.mark.parametrize("spec", ALL)
def test_last_term_rule(spec):
    cat = catalog(spec)
    for s in ces(spec):
        last = classify(s)[-1]
        assert last.rel_inj and last.rel_proj == cat.is_projective(s.terms[-1])


@pytest.mark.parametrize("spec", ALL)
def test_covering_criteria(spec):
    for s in ces(spec):
        for k, c in zip(s.positions, classify(s)):
            if c.rel_inj:
                assert c.rel_proj == (not covered_by(s, k, "left"))
            assert (not c.rel_inj) == (c.rel_proj and covered_by(s, k, "right"))


@pytest.mark.parametrize("spec", ALL)
def test_roots_are_uncovered_terms(spec):
    cat = catalog(spec)
    for s in ces(spec):
        h = support_hasse(s)
        for k, c in zip(s.positions, classify(s)):
            uncovered = not covered_by(s, k, "others")
            assert c.root == uncovered == bool(private_vertices(s, k))
            children = [j for j in h.below(k)]
            others = [j for j in h.maximal if j != k]
            hasse_root = k in h.maximal and not covered_by(s, k, children + others)
            assert c.root == hasse_root


@pytest.mark.parametrize("spec", ALL)
def test_roots_complete_by_projectives_and_injectives(spec):
    cat = catalog(spec)
    for s in ces(spec):
        for k, c in zip(s.positions, classify(s)):
            rest = tuple(x for j, x in zip(s.positions, s.terms) if j != k)
            by_p = any(is_exceptional(cat, rest + (p,)) for p in cat.projectives.values())
            by_i = any(is_exceptional(cat, (i,) + rest) for i in cat.injectives.values())
            assert c.root == by_p == by_i


@pytest.mark.parametrize("spec", ALL)
def test_roots_shift_to_roots(spec):
    for s in ces(spec):
        cls = classify(s)
        for k in range(1, s.n):
            if cls[k - 1].root:
                assert classify(braid_sigma(s, k, "right"))[k].root


@pytest.mark.parametrize("spec", ALL)
def test_reduced_projectivity_scan(spec):
    for s in ces(spec):
        for k, c in zip(s.positions, classify(s)):
            assert is_rel_proj_reduced(s, k) == c.rel_proj


@pytest.mark.parametrize("spec", SMALL + ["A4", "D4"])
def test_classification_ignores_missing_terms(spec):
    for s in ces(spec):
        full = classify(s)
        for start in range(2, s.n + 1):
            tail = s.replace(s.terms[start - 1 :])
            assert classify(tail) == full[start - 1 :]


def test_braid_examples():
    s = seq("A2", "1.0,0.1")
    assert str(braid_sigma(s, 1, "right")) == "(0.1, 1.1)"
    a3 = seq("A3:1>2<3", EXAMPLE)
    moved = braid_sigma(a3, 1, "right")
    assert moved.terms[0] == I2
    assert braid_sigma(moved, 1, "left") == a3


def test_orthogonal_pair_swaps():
    cat = catalog("A3")
    for s in ces("A3"):
        for k in range(1, 3):
            a, b = s[k], s[k + 1]
            if cat.orthogonal(a, b):
                assert braid_sigma(s, k, "right")[k + 1] == a


@pytest.mark.parametrize("spec", ["A3", "A3:1>2<3", "A3:1<2>3", "A3:1<2<3"])
def test_braid_relations(spec):
    for s in ces(spec):
        for k in (1, 2):
            assert braid_sigma(braid_sigma(s, k, "right"), k, "left") == s
            assert braid_sigma(braid_sigma(s, k, "left"), k, "right") == s
        r = lambda x, k: braid_sigma(x, k, "right")
        assert r(r(r(s, 1), 2), 1) == r(r(r(s, 2), 1), 2)


def test_far_braid_moves_commute():
    for s in ces("A4:1>2<3>4"):
        r = lambda x, k: braid_sigma(x, k, "right")
        assert r(r(s, 1), 3) == r(r(s, 3), 1)


def test_delta_and_garside_examples():
    s = seq("A2", "1.0,0.1")
    assert str(delta_k(s, 2)) == "(1.1, 1.0)"
    assert delta_k(s, 1) == s
    assert garside(s) == delta_k(s, 2)
    assert garside(seq("A1", "1")) == seq("A1", "1")
    d3 = delta_k(seq("A3:1>2<3", EXAMPLE), 3)
    assert d3.terms[1:] == (P3, I2) and validate(d3)


def test_delta_on_incomplete_sequence_rejected():
    with pytest.raises(DomainError):
        delta_k(seq("A3", "0.0.1"), 1)


def test_relative_tau_is_global_tau_for_full_basis():
    cat = catalog("D4")
    basis = ces("D4")[0].terms
    for x in cat.keys:
        if not cat.is_projective(x):
            assert relative_tau(cat, basis, x) == cat.tau(x)


@pytest.mark.parametrize("spec", ["A1", "A2", "A3", "A3:1>2<3", "A3:1<2>3", "D4:sym-source", "D4:sym-sink", "D4"])
def test_garside_exchanges_projectivity_and_injectivity(spec):
    cat = catalog(spec)
    for s in ces(spec):
        g = garside(s)
        assert g[s.n] == s[1]
        before, after = classify(s), classify(g)
        for k in s.positions:
            c, d = before[k - 1], after[s.n - k]
            ek_prime = g[s.n - k + 1]
            assert c.rel_proj == d.rel_inj
            assert cat.is_projective(s[k]) == d.root
            assert c.root == cat.is_injective(ek_prime)
            assert (c.rel_inj and not c.rel_proj) == (d.rel_proj and not d.rel_inj)


def test_move_left_matches_delta():
    for s in ces("A3"):
        assert move_left(s, 3, 1) == delta_k(s, 3)


def test_support_hasse_examples():
    h = support_hasse(seq("A3:1>2<3", EXAMPLE))
    assert h.maximal == {2}
    assert h.edges == ((1, 2), (3, 1))
    simples = support_hasse(seq("A3:1>2<3", "1.0.0,0.0.1,0.1.0"))
    assert simples.edges == () and simples.maximal == {1, 2, 3}
    single = support_hasse(seq("A3", "0.1.0"))
    assert single.nodes == (3,) and single.edges == ()
