import pytest

from hypertop import (
    GroundTopology,
    HypertopError,
    HypothesisError,
    Subset,
    SubsetFamily,
    SubspaceContext,
    Universe,
    b_of,
    build_iAX,
    closed_in,
    closure,
    enumerate_hypertopologies,
    enumerate_topologies,
    ex_operator,
    generate_hypertopology,
    ground_is_t1,
    is_2_comb_embedded,
    is_2B_comb_embedded,
    is_O_commutative,
    is_O_HS,
    tychonoff_hypertopology,
)
from hypertop.setcore import plus_mask


def two_cells(u3):
    """Opens generated by {0} and {1} on {0,1,2}; the point 2 lies in both closures."""
    return GroundTopology.from_base(u3, [0, 1, 2, 3, 7])


def sierpinski():
    u = Universe(2)
    return u, GroundTopology(u, [0, 2, 3])


def all_cl_hypertopologies(T):
    CL = T.nonempty_closed()
    return enumerate_hypertopologies(T.n, CL, mode="plus")


# -- closures -----------------------------------------------------------------


def test_closure_discrete(u3):
    T = GroundTopology.discrete(u3)
    for a in range(8):
        S = Subset(u3, a)
        assert closure(S, T) == S


def test_closure_example(u3):
    T = GroundTopology.from_base(u3, [0, 1, 2, 3, 7])
    assert closure(u3.subset([0]), T) == u3.subset([0, 2])


def test_ex_operator(u3):
    T = two_cells(u3)
    A = u3.subset([0, 1])
    assert ex_operator(A, A, T) == u3.X
    assert ex_operator(u3.subset([0]), A, T) == u3.subset([0])
    with pytest.raises(HypertopError):
        ex_operator(u3.subset([2]), A, T)


# -- combinatorial embeddings -------------------------------------------------


def test_2comb_discrete(u3):
    T = GroundTopology.discrete(u3)
    assert all(is_2_comb_embedded(Subset(u3, a), T).holds for a in range(8))


def test_2comb_failing_fixture(u3):
    rep = is_2_comb_embedded(u3.subset([0, 1]), two_cells(u3))
    assert not rep.holds
    assert rep.witness == {"A": [0, 1], "F": [0], "G": [1], "common": [2]}


def test_2comb_closed_subsets():
    for n in (1, 2, 3):
        u = Universe(n)
        for T in enumerate_topologies(n):
            for c in T.closed_masks():
                assert is_2_comb_embedded(Subset(u, c), T).holds


def test_2B_discrete_any_B(u3):
    T = GroundTopology.discrete(u3)
    for pick in range(0, 256, 7):
        B = SubsetFamily(u3, [m for m in range(8) if pick >> m & 1])
        for a in range(8):
            assert is_2B_comb_embedded(Subset(u3, a), B, T).holds


def test_2B_failing_fixture(u3):
    T = two_cells(u3)
    rep = is_2B_comb_embedded(u3.subset([0, 1]), T.opens, T)
    assert not rep.holds and rep.witness["A"] == [0, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_2comb_equals_2B_with_opens(n):
    u = Universe(n)
    for T in enumerate_topologies(n):
        for a in range(1 << n):
            A = Subset(u, a)
            assert is_2_comb_embedded(A, T).holds == is_2B_comb_embedded(A, T.opens, T).holds


# -- i_{A,X} ------------------------------------------------------------------


def test_iax_discrete_restricted_base(u3):
    T = GroundTopology.discrete(u3)
    B = SubsetFamily(u3, [m for m in range(8) if m.bit_count() <= 1] + [7])
    O = generate_hypertopology(B, T.nonempty_closed())
    assert b_of(O) == B
    rep = build_iAX(SubspaceContext(T, u3.subset([0, 1]), B), O)
    assert rep.injective and rep.continuous and rep.inverse_continuous
    assert rep.comb_2B == is_2B_comb_embedded(u3.subset([0, 1]), B, T).holds == rep.inverse_continuous


def test_iax_closed_subspace_is_inclusion():
    for n in (1, 2, 3):
        u = Universe(n)
        for T in enumerate_topologies(n):
            O = tychonoff_hypertopology(T, T.nonempty_closed())
            for c in T.closed_masks():
                rep = build_iAX(SubspaceContext(T, Subset(u, c), b_of(O)), O)
                assert rep.embedding
                assert all(src == dst for src, dst in rep.images)


def test_iax_sierpinski():
    u, T = sierpinski()
    O = tychonoff_hypertopology(T, T.nonempty_closed())
    rep = build_iAX(SubspaceContext(T, u.subset([1]), b_of(O)), O)
    assert rep.images == [[[1], [0, 1]]]
    assert rep.continuous and rep.injective


def test_iax_empty_subspace(u3):
    T = GroundTopology.discrete(u3)
    O = tychonoff_hypertopology(T, T.nonempty_closed())
    rep = build_iAX(SubspaceContext(T, u3.subset(), b_of(O)), O)
    assert rep.embedding and rep.images == []


def test_iax_hypotheses(u3):
    T = GroundTopology.discrete(u3)
    O = tychonoff_hypertopology(T, u3.singletons())
    with pytest.raises(HypothesisError):
        build_iAX(SubspaceContext(T, u3.X, T.opens), O)
    O = tychonoff_hypertopology(T, T.nonempty_closed())
    with pytest.raises(HypothesisError):
        build_iAX(SubspaceContext(T, u3.X, u3.family([[], [0, 1, 2]])), O)


def test_subspace_context_invariant():
    for n in (1, 2, 3):
        u = Universe(n)
        for T in enumerate_topologies(n):
            for a in range(1 << n):
                ctx = SubspaceContext(T, Subset(u, a), T.opens)
                assert a in ctx.B_A
                assert all(x & y in ctx.B_A for x in ctx.B_A.masks for y in ctx.B_A.masks)
                assert set(ctx.CL_A.masks) == {c for c in closed_in(a, T) if c}


def test_iax_t1_sweep_discrete():
    for n in (1, 2, 3):
        u = Universe(n)
        T = GroundTopology.discrete(u)
        assert ground_is_t1(T)
        for O in all_cl_hypertopologies(T):
            B_O = b_of(O)
            for a in range(1 << n):
                rep = build_iAX(SubspaceContext(T, Subset(u, a), B_O), O)
                assert rep.inverse_continuous == is_2B_comb_embedded(Subset(u, a), B_O, T).holds


# -- O-HS and O-commutative ---------------------------------------------------


def test_ohs_discrete_tychonoff(u3):
    T = GroundTopology.discrete(u3)
    assert is_O_HS(T, tychonoff_hypertopology(T, T.nonempty_closed())).holds


def test_ohs_sierpinski():
    u, T = sierpinski()
    assert is_O_HS(T, generate_hypertopology(T.opens, T.nonempty_closed())).holds


def test_ohs_never_fails_on_finite_spaces():
    # every Tychonoff-type O on CL(X), every topology with n <= 3
    checked = 0
    for n in (1, 2, 3):
        for T in enumerate_topologies(n):
            for O in all_cl_hypertopologies(T):
                checked += 1
                assert is_O_HS(T, O).holds
    assert checked == 233


def test_ohs_tychonoff_n4():
    for T in enumerate_topologies(4):
        assert is_O_HS(T, tychonoff_hypertopology(T, T.nonempty_closed())).holds


def test_ohs_reason_kernel_in_B_O():
    # cl F ⊆ W iff F ⊆ K(W) = {x : cl{x} ⊆ W}, and K(W)+ = W+ on CL(X), so K(W) ∈ B_O
    for n in (1, 2, 3):
        u = Universe(n)
        for T in enumerate_topologies(n):
            CL = T.nonempty_closed()
            for w in range(1 << n):
                k = sum(1 << x for x in range(n) if T.closure_mask(1 << x) & ~w == 0)
                assert plus_mask(k, CL.masks) == plus_mask(w, CL.masks)
                for f in range(1, 1 << n):
                    assert (T.closure_mask(f) & ~w == 0) == (f & ~k == 0)


def test_ocom_discrete_two_points(u2):
    T = GroundTopology.discrete(u2)
    assert is_O_commutative(T, tychonoff_hypertopology(T, T.nonempty_closed())).holds


def test_commutative_iff_hs_and_2B_discrete():
    for n in (1, 2, 3):
        u = Universe(n)
        T = GroundTopology.discrete(u)
        for O in all_cl_hypertopologies(T):
            B_O = b_of(O)
            all_comb = all(is_2B_comb_embedded(Subset(u, a), B_O, T).holds for a in range(1 << n))
            assert is_O_commutative(T, O).holds == (is_O_HS(T, O).holds and all_comb)


def test_non_o_commutative_instance_with_witness():
    found = None
    for T in enumerate_topologies(3):
        if ground_is_t1(T):
            continue
        for O in all_cl_hypertopologies(T):
            rep = is_O_commutative(T, O)
            if not rep.holds:
                found = rep
                break
        if found:
            break
    assert found is not None
    assert "A" in found.witness and not found.witness["map"]["embedding"]


def test_sweep_rejects_wrong_family(u3):
    T = GroundTopology.discrete(u3)
    with pytest.raises(HypothesisError):
        is_O_HS(T, tychonoff_hypertopology(T, u3.singletons()))
