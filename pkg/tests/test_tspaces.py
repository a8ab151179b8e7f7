import random

import pytest

from hypertop import (
    CapExceeded,
    GroundTopology,
    HypertopError,
    HypothesisError,
    HTObject,
    HyperTopology,
    SpaceMap,
    SubsetFamily,
    TSpace,
    Universe,
    alpha,
    beta,
    enumerate_hypertopologies,
    enumerate_tspaces,
    functor_roundtrip_objects,
    generate_hypertopology,
    is_ht_morphism,
    is_th_morphism,
    is_tychonoff,
    is_tychonoff_type,
    pullback_plus,
    tychonoff_hypertopology,
)
from hypertop.suite import all_families, all_maps, ht_objects, natural_families


# -- T-spaces and objects -----------------------------------------------------


def test_tspace_validation(u2):
    M = u2.singletons()
    TSpace(u2.power_set(), M)
    with pytest.raises(HypertopError):
        TSpace(u2.family([[0]]), M)  # X missing
    with pytest.raises(HypertopError):
        TSpace(u2.family([[0], [1], [0, 1]]), M)  # {0} ∩ {1} missing


def test_tspace_m_closed_required(u3):
    M = u3.singletons()
    B = u3.family([[], [0], [1], [0, 1, 2]])
    with pytest.raises(HypertopError, match="M-closed"):
        TSpace(B, M)


def test_htobject_requires_natural_and_tychonoff_type(u2):
    M = u2.family([[0]])
    with pytest.raises(HypothesisError):
        HTObject(HyperTopology(M, [0, 1]))
    M = u2.family([[0], [1], [0, 1]])
    bad = [O for O in (HyperTopology(M, f, validate=False) for f in [{0, 4, 7}]) if not is_tychonoff_type(O)]
    with pytest.raises(HypothesisError):
        HTObject(bad[0])


def test_alpha_example(example3):
    u, M, B, O = example3
    ts = alpha(HTObject(O))
    assert ts.B == B and ts.M == M


def test_alpha_discrete(u3):
    M = u3.singletons()
    ts = alpha(HTObject(HyperTopology(M, range(8))))
    assert ts.B == u3.power_set()


def test_alpha_valid_on_all_n2_objects(u2):
    for obj in ht_objects(u2):
        ts = alpha(obj)
        ts._validate()


def test_beta_examples(u3, example3):
    M = u3.singletons()
    assert beta(TSpace(u3.power_set(), M)).O == HyperTopology(M, range(8))
    u, M, B, O = example3
    assert beta(TSpace(B, M)).O == O


def test_beta_rejects_non_natural(u2):
    with pytest.raises(HypothesisError):
        beta(TSpace(u2.power_set(), u2.family([[0]])))


def test_finite_analogue_of_large_discrete_example():
    u = Universe(5)
    B = SubsetFamily(u, [m for m in range(32) if m.bit_count() <= 2] + [31])
    ts = TSpace(B, u.nonempty_subsets())
    O = beta(ts).O
    assert is_tychonoff_type(O)
    assert not is_tychonoff(O).holds
    assert alpha(HTObject(O)) == ts


# -- maps and plus-set pullback ---------------------------------------------------------


def test_space_map_validation(u2, u3):
    with pytest.raises(HypertopError):
        SpaceMap(u2, u3, (0,))
    with pytest.raises(HypertopError):
        SpaceMap(u2, u3, (0, 3))
    f = SpaceMap(u3, u2, (0, 0, 1))
    assert f(u3.subset([0, 1])) == u2.subset([0])
    assert f.preimage(u2.subset([1])) == u3.subset([2])
    assert SpaceMap.identity(u2) == SpaceMap(u2, u2, [0, 1])


def test_pullback_identity(u3):
    M = u3.nonempty_subsets()
    f = SpaceMap.identity(u3)
    for a in range(8):
        left, right = pullback_plus(f, u3.subset([x for x in range(3) if a >> x & 1]), M, M)
        assert left == right


def test_pullback_constant_on_example(example3):
    u, M, B, O = example3
    f = SpaceMap.constant(u, u, 0)
    M2 = M.with_masks(M.masks)
    left, right = pullback_plus(f, u.subset([0]), M, M2)
    assert left == right
    assert left.mask == M.full_hyper


def test_pullback_needs_admissible_map(u2):
    M = u2.family([[0, 1]])
    f = SpaceMap.identity(u2)
    with pytest.raises(HypothesisError) as exc:
        pullback_plus(f, u2.X, M, u2.singletons())
    assert exc.value.witness == 3


def test_pullback_sweep_n3():
    rng = random.Random(3)
    fams = {n: all_families(Universe(n)) for n in (1, 2)}
    for n in (1, 2):
        for n2 in (1, 2, 3):
            u, u2 = Universe(n), Universe(n2)
            for f in all_maps(u, u2):
                for M in fams[n]:
                    for _ in range(3):
                        M2 = SubsetFamily(u2, {f.image_mask(m) for m in M.masks} | {rng.randrange(1 << n2)})
                        for a in range(1 << n2):
                            left, right = pullback_plus(f, u2.subset([x for x in range(n2) if a >> x & 1]), M, M2)
                            assert left == right


# -- morphisms ----------------------------------------------------------------


def test_identity_is_ht_morphism(example3):
    obj = HTObject(example3[3])
    assert is_ht_morphism(SpaceMap.identity(obj.universe), obj, obj)


def test_constant_is_ht_morphism(example3):
    obj = HTObject(example3[3])
    assert is_ht_morphism(SpaceMap.constant(obj.universe, obj.universe, 0), obj, obj)


def test_constant_hyperspace_map_not_induced(u2):
    # F -> X on CL(X) of the discrete two-point space is not f_m for any f
    M = GroundTopology.discrete(u2).nonempty_closed()
    assert not any(all(f.image_mask(m) == u2.full for m in M.masks) for f in all_maps(u2, u2))


def test_th_identity(u2):
    ts = TSpace(u2.power_set(), u2.singletons())
    assert is_th_morphism(SpaceMap.identity(u2), ts, ts)


def test_th_identity_coarse_to_fine_fails(u2):
    src = TSpace(u2.family([[], [0], [0, 1]]), u2.singletons())
    dst = TSpace(u2.power_set(), u2.singletons())
    assert not is_th_morphism(SpaceMap.identity(u2), src, dst)
    assert is_th_morphism(SpaceMap.identity(u2), dst, src)


def test_morphism_correspondence_exhaustive_n2(u2):
    objs = ht_objects(u2)
    for src in objs:
        for dst in objs:
            for f in all_maps(u2, u2):
                assert is_ht_morphism(f, src, dst) == is_th_morphism(f, alpha(src), alpha(dst))


def test_image_outside_codomain_family(u2):
    src = HTObject(HyperTopology(u2.power_set(), [0, 15]), validate=False)
    dst = HTObject(HyperTopology(u2.singletons(), [0, 3]), validate=False)
    f = SpaceMap.identity(u2)
    assert not is_ht_morphism(f, src, dst)


def test_map_equality_is_extensional(u2):
    assert SpaceMap(u2, u2, [1, 1]) == SpaceMap.constant(u2, u2, 1)
    assert hash(SpaceMap(u2, u2, (0, 1))) == hash(SpaceMap.identity(u2))


# -- round trips --------------------------------------------------------------


def test_roundtrip_n2_natural_min(u2):
    rep = functor_roundtrip_objects(2, families=[u2.singletons()])
    assert rep.ok and rep.tspaces_checked == rep.objects_checked == 4


def test_roundtrip_fixed_point(u3):
    ts = TSpace(u3.power_set(), u3.nonempty_subsets())
    assert alpha(beta(ts)) == ts


def test_roundtrip_example(example3):
    obj = HTObject(example3[3])
    assert beta(alpha(obj)).O == obj.O


def test_roundtrip_default_and_cap():
    rep = functor_roundtrip_objects(3)
    assert rep.ok and rep.tspaces_checked == rep.objects_checked > 100
    with pytest.raises(CapExceeded):
        functor_roundtrip_objects(5)


def test_bijection_counts_all_natural_n3():
    u = Universe(3)
    for M in natural_families(u):
        tt = enumerate_hypertopologies(3, M, mode="plus")
        ts = list(enumerate_tspaces(3, M))
        assert len(tt) == len(ts)
        assert {beta(t).O for t in ts} == set(tt)
