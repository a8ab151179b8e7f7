from itertools import combinations

import pytest

from hypertop import (
    GroundTopology,
    HypothesisError,
    HTObject,
    HyperTopology,
    PropertyReport,
    SubsetFamily,
    Universe,
    density,
    density_report,
    enumerate_topologies,
    generate_hypertopology,
    generates_topology,
    ground_is_t0,
    has_isolated_points,
    hyper_compactness,
    hyper_is_p_infinity,
    hyper_is_t0,
    hyper_is_t1,
    is_p_infinity,
    isolated_points_report,
    minimal_base,
    singleton_embedding,
    t0_sufficient,
    t1_characterization,
    t_of,
    tychonoff_hypertopology,
    weight,
)
from hypertop.hprops import _space
from hypertop.setcore import union_closure
from hypertop.suite import all_families, ht_objects, natural_families


def brute_weight(space):
    """Smallest k such that some k opens generate every open by unions."""
    _, opens = _space(space)
    nonempty = sorted(o for o in opens if o)
    for k in range(len(nonempty) + 1):
        for sub in combinations(nonempty, k):
            if union_closure(sub) == opens:
                return k
    raise AssertionError("no base found")


def density_oracle(space):
    # minimal nonempty opens are pairwise disjoint; a dense set must hit each one
    _, opens = _space(space)
    nonempty = [o for o in opens if o]
    return sum(1 for o in nonempty if not any(p != o and p & ~o == 0 for p in nonempty))


def all_n3_natural_objects():
    return ht_objects(Universe(3))


@pytest.fixture(scope="module")
def n3_objects():
    return all_n3_natural_objects()


# -- separation ---------------------------------------------------------------


def test_example_not_t0_with_valid_witness(example3):
    u, M, B, O = example3
    rep = hyper_is_t0(O)
    assert not rep.holds
    F, G = (u.subset(rep.witness[k]).mask for k in ("F", "G"))
    assert F != G
    assert rep.witness["F"] == [0, 1]
    for o in O.opens:
        assert (o >> M.index(F) & 1) == (o >> M.index(G) & 1)
    # X shares the same neighbourhoods as {0,1}
    X = M.index(u.full)
    assert all((o >> M.index(F) & 1) == (o >> X & 1) for o in O.opens)


def test_two_point_hyper_t0_ground_not(two_point):
    u, T, M = two_point
    O = tychonoff_hypertopology(T, M)
    assert hyper_is_t0(O).holds
    assert not ground_is_t0(T)


def test_singletons_over_discrete_t1(u3):
    O = tychonoff_hypertopology(GroundTopology.discrete(u3), u3.singletons())
    assert hyper_is_t1(O).holds


def test_separation_two_ways_exhaustive_n2(u2):
    fams = all_families(u2)
    for M in fams:
        for B in fams:
            if generates_topology(B, M):
                O = generate_hypertopology(B, M)
                for rep in (hyper_is_t0(O), hyper_is_t1(O)):
                    assert rep.details["direct"] == rep.details["characterization"] == rep.holds


def test_t0_sufficient_examples(u3, example3):
    assert t0_sufficient(u3.power_set(), u3.singletons())
    u, M, B, O = example3
    assert not t0_sufficient(B, M)


def test_t0_sufficient_implies_t0_n2(u2):
    fams = all_families(u2)
    for M in fams:
        for B in fams:
            if generates_topology(B, M) and t0_sufficient(B, M):
                assert hyper_is_t0(generate_hypertopology(B, M)).holds


def test_t1_characterization_example(example3):
    rep = t1_characterization(HTObject(example3[3]))
    assert not rep.holds
    F, G = rep.witness["F"], rep.witness["G"]
    assert set(F) < set(G)
    assert (F, G) == ([0], [0, 1])


def test_t1_characterization_discrete(u3):
    rep = t1_characterization(HTObject(tychonoff_hypertopology(GroundTopology.discrete(u3), u3.singletons())))
    assert rep.holds and rep.details["ground_t1"] and rep.details["M_is_singletons"]


def test_t1_characterization_all_n2(u2):
    for obj in ht_objects(u2):
        t1_characterization(obj)


def test_proper_pair_rules_out_t1():
    for n in (1, 2):
        u = Universe(n)
        fams = all_families(u)
        for M in fams:
            pair = any(f != g and f & ~g == 0 for f in M.masks for g in M.masks)
            if not pair:
                continue
            for B in fams:
                if generates_topology(B, M):
                    assert not hyper_is_t1(generate_hypertopology(B, M)).holds


# -- compactness and P-infinity -----------------------------------------------


def test_compactness_example(example3):
    rep = hyper_compactness(HTObject(example3[3]))
    assert rep.holds and rep.details == {"direct": True, "characterization": True}
    assert rep.witness["m_subcover"] == [[0, 1, 2]]
    assert rep.witness["B_O_m_cover"] == [[0], [1], [2], [0, 1, 2]]
    assert rep.notes


def test_compactness_two_point(two_point):
    u, T, M = two_point
    rep = hyper_compactness(HTObject(tychonoff_hypertopology(T, M), validate=False))
    assert rep.holds


def test_p_infinity_family(u3):
    assert not is_p_infinity(u3.family([[0, 1], [1, 2]]))
    assert is_p_infinity(u3.family([[1], [0, 1], [1, 2]]))


def test_p_infinity_example(example3):
    rep = hyper_is_p_infinity(HTObject(example3[3]))
    assert rep.holds
    assert rep.details["B_O"] and rep.details["hyperspace"] and rep.details["ground"]


def test_p_infinity_levels_all_n2(u2):
    for M in all_families(u2):
        for B in all_families(u2):
            if generates_topology(B, M):
                hyper_is_p_infinity(HTObject(generate_hypertopology(B, M), validate=False))


# -- weight, density, isolated points -----------------------------------------


def test_weight_examples(u3, example3):
    assert weight(GroundTopology.discrete(u3)) == 3
    O = example3[3]
    assert weight(O) == 4
    assert weight(t_of(O)) == 3


def test_weight_matches_brute_force():
    for n in (1, 2, 3):
        for T in enumerate_topologies(n):
            assert weight(T) == brute_weight(T)
    for obj in ht_objects(Universe(2)):
        assert weight(obj.O) == brute_weight(obj.O)


def test_weight_brute_on_example(example3):
    assert brute_weight(example3[3]) == 4


def test_minimal_base_generates(example3):
    O = example3[3]
    assert union_closure(minimal_base(O)) == O.opens


def test_density_example(example3):
    rep = density_report(HTObject(example3[3]))
    assert rep.holds and rep.details == {"hyperspace": 3, "ground": 3}


def test_density_oracle():
    for n in (1, 2, 3):
        for T in enumerate_topologies(n):
            assert density(T) == density_oracle(T)


def test_isolated_points_example(example3):
    rep = isolated_points_report(HTObject(example3[3]))
    assert rep.holds and rep.details == {"hyperspace": True, "ground": True}


def test_empty_member_gate(two_point):
    u, T, M = two_point
    obj = HTObject(tychonoff_hypertopology(T, M), validate=False)
    for rep in (density_report(obj), isolated_points_report(obj)):
        assert rep.hypothesis_violations == ["∅∈M"]


def test_density_isolated_weight_all_n3(n3_objects):
    checked = 0
    for obj in n3_objects:
        O = obj.O
        assert weight(t_of(O)) <= weight(O)
        if O.family.contains_empty:
            continue
        checked += 1
        assert density(O) == density(t_of(O)) == density_oracle(t_of(O))
        assert has_isolated_points(O) == has_isolated_points(t_of(O))
    assert checked > 100


# -- singleton embedding ------------------------------------------------------


def test_singleton_embedding_example(example3):
    rep = singleton_embedding(HTObject(example3[3]))
    assert rep.holds and rep.witness is None
    assert rep.details["weight_inequality"]


def test_singleton_embedding_discrete(u3):
    O = tychonoff_hypertopology(GroundTopology.discrete(u3), u3.singletons())
    rep = singleton_embedding(HTObject(O))
    assert rep.holds and len(O) == 8


def test_singleton_embedding_sweep(n3_objects):
    for obj in list(ht_objects(Universe(2))) + n3_objects:
        rep = singleton_embedding(obj)
        assert rep.holds and rep.details["t0_transfer"]


def test_singleton_embedding_needs_natural(u2):
    with pytest.raises(HypothesisError):
        singleton_embedding(HTObject(HyperTopology(u2.family([[0]]), [0, 1]), validate=False))


# -- reports ------------------------------------------------------------------


def test_report_round_trip(example3):
    rep = hyper_is_t0(example3[3])
    assert PropertyReport.from_dict(rep.to_dict()) == rep
    assert not rep
