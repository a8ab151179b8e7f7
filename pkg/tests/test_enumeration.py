import json

import pytest

from hypertop import (
    CapExceeded,
    Caps,
    EnumerationCensus,
    HypertopError,
    HypothesisError,
    SubsetFamily,
    Universe,
    census,
    enumerate_hypertopologies,
    enumerate_topologies,
    enumerate_tspaces,
    is_m_closed,
    is_tychonoff_type,
    moore_families,
    named_family,
    topology_masks,
)
from hypertop.setcore import intersection_closure
from hypertop.suite import natural_families


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_topology_counts_two_methods(n, count):
    a, b = topology_masks(n, "filter"), topology_masks(n, "closure")
    assert len(a) == len(b) == count
    assert a == b


def test_topologies_distinct_and_ordered():
    tops = list(enumerate_topologies(3))
    assert len(set(tops)) == 29
    assert tops == list(enumerate_topologies(3))


def test_topology_caps():
    with pytest.raises(CapExceeded):
        list(enumerate_topologies(5))
    with pytest.raises(HypertopError):
        topology_masks(2, "guess")


def test_moore_families_brute():
    for n in (1, 2, 3):
        full = (1 << n) - 1
        size = 1 << n
        brute = set()
        for pick in range(1 << size):
            fam = {s for s in range(size) if pick >> s & 1}
            if full in fam and set(intersection_closure(fam)) == fam:
                brute.add(frozenset(fam))
        got = list(moore_families(n))
        assert len(got) == len(set(got)) == len(brute)
        assert set(got) == brute


def test_tspaces_over_a_point():
    u = Universe(1)
    ts = list(enumerate_tspaces(1, u.singletons()))
    # {X} fails: ∅ is M-covered by the empty subfamily
    assert [t.B.to_lists() for t in ts] == [[[], [0]]]


def test_tspaces_match_tychonoff_type_n2(u2):
    M = u2.singletons()
    assert len(list(enumerate_tspaces(2, M))) == len(enumerate_hypertopologies(2, M, mode="direct")) == 4


def test_example_B_in_stream(example3):
    u, M, B, O = example3
    assert any(t.B == B for t in enumerate_tspaces(3, M))


def test_tspace_cap(u2):
    with pytest.raises(CapExceeded):
        list(enumerate_tspaces(5, Universe(5).singletons()))
    with pytest.raises(HypertopError):
        list(enumerate_tspaces(3, u2.singletons()))


def test_direct_equals_bijection_n2(u2):
    for M in natural_families(u2):
        d = enumerate_hypertopologies(2, M, mode="direct")
        assert d == enumerate_hypertopologies(2, M, mode="bijection")
        assert d == enumerate_hypertopologies(2, M, mode="plus")


def test_non_natural_direct_only(u2):
    M = u2.family([[0]])
    assert len(enumerate_hypertopologies(2, M, mode="direct")) == 1
    with pytest.raises(HypothesisError):
        enumerate_hypertopologies(2, M, mode="bijection")


def test_enumerated_are_tychonoff_type(u3):
    for name in ("natural-min", "fin2", "nonempty"):
        for O in enumerate_hypertopologies(3, named_family(u3, name), mode="plus"):
            assert is_tychonoff_type(O)


def test_direct_and_plus_agree_non_natural():
    for n in (1, 2):
        u = Universe(n)
        size = 1 << n
        for pick in range(1 << size):
            M = SubsetFamily(u, [s for s in range(size) if pick >> s & 1])
            if len(M) <= 4:
                assert enumerate_hypertopologies(n, M, "direct") == enumerate_hypertopologies(n, M, "plus")


def test_hyper_caps(u3):
    with pytest.raises(CapExceeded):
        enumerate_hypertopologies(3, u3.nonempty_subsets(), mode="direct")
    with pytest.raises(CapExceeded):
        enumerate_hypertopologies(3, u3.power_set(), mode="plus", caps=Caps(plus=4))
    with pytest.raises(HypertopError):
        enumerate_hypertopologies(3, u3.singletons(), mode="other")


def test_named_families(u3):
    assert named_family(u3, "natural-min") == u3.singletons()
    assert len(named_family(u3, "fin2")) == 6
    assert len(named_family(u3, "nonempty")) == 7
    assert named_family(u3, "all") == u3.power_set()
    with pytest.raises(HypertopError):
        named_family(u3, "fin7")


@pytest.mark.parametrize(
    "name,expected",
    [("natural-min", 29), ("fin2", 45), ("nonempty", 45)],
)
def test_census_n3(u3, name, expected):
    c = census(3, named_family(u3, name), name)
    assert c.counts["t_spaces"] == c.counts["tychonoff_type"] == expected
    assert c.counts["topologies"] == 29


def test_census_deterministic(u2):
    a = json.dumps(census(2, u2.singletons(), "natural-min").to_dict(), sort_keys=True)
    b = json.dumps(census(2, u2.singletons(), "natural-min").to_dict(), sort_keys=True)
    assert a == b
    c = EnumerationCensus.from_dict(json.loads(a))
    assert c.to_dict() == json.loads(a)


def test_census_non_natural(u2):
    c = census(2, u2.family([[0]]), "single")
    assert c.counts["tychonoff_type"] == 1


def test_m_closed_families_grow_with_M(u3):
    # enlarging M never destroys M-closedness
    singles = u3.singletons()
    bigger = [named_family(u3, "fin2"), u3.nonempty_subsets(), u3.power_set()]
    moore = [SubsetFamily(u3, f) for f in moore_families(3)]
    base = {B for B in moore if is_m_closed(B, singles)}
    for M in bigger:
        assert base <= {B for B in moore if is_m_closed(B, M)}
    assert len(list(enumerate_tspaces(3, singles))) <= len(list(enumerate_tspaces(3, u3.nonempty_subsets())))
