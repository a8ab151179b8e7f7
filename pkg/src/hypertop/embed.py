"""Subspaces and hyperspaces: closures, combinatorial embeddings and ``i_{A,X}``.

For ``A <= X`` the map ``i_{A,X} : CL(A) -> CL(X)`` sends a nonempty set
closed in ``A`` to its closure in ``X``. ``CL(A)`` carries the topology
generated by the traces ``B_A = {U ∩ A : U in B_O}`` and ``CL(X)`` carries a
Tychonoff-type topology ``O``.

Every subset stays a mask over the ambient ``X``; ``CL(A)`` is simply a
family of subsets of ``A``. The empty subspace gives ``CL(∅) = ∅`` and the
empty map, which counts as an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypertopError, HypothesisError, InternalConsistencyError
from .hprops import PropertyReport, ground_is_t1
from .hypergen import GroundTopology, HyperTopology, b_of, generate_hypertopology, is_tychonoff_type
from .setcore import (
    Subset,
    SubsetFamily,
    Universe,
    canonical_key,
    check_same_universe,
    elements,
    intersection_closure,
)

__all__ = [
    "closure",
    "ex_operator",
    "closed_in",
    "is_2_comb_embedded",
    "is_2B_comb_embedded",
    "SubspaceContext",
    "MapReport",
    "build_iAX",
    "is_O_HS",
    "is_O_commutative",
]


def closure(S: Subset, T: GroundTopology) -> Subset:
    check_same_universe(S.universe, T.universe)
    return Subset(T.universe, T.closure_mask(S.mask))


def ex_operator(U: Subset, A: Subset, T: GroundTopology) -> Subset:
    """``Ex_{A,X} U = X \\ cl_X(A \\ U)`` for ``U <= A``."""
    check_same_universe(U.universe, A.universe, T.universe)
    if U.mask & ~A.mask:
        raise HypertopError("Ex_{A,X} U needs U <= A")
    return Subset(T.universe, T.universe.full & ~T.closure_mask(A.mask & ~U.mask))


def closed_in(A: int, T: GroundTopology) -> list[int]:
    """Masks of the sets closed in the subspace ``A`` (traces of closed sets)."""
    return sorted({c & A for c in T.closed_masks()})


def _ids(mask):
    return list(elements(mask))


def is_2_comb_embedded(A: Subset, T: GroundTopology) -> PropertyReport:
    """Disjoint sets closed in ``A`` have disjoint closures in ``X``."""
    check_same_universe(A.universe, T.universe)
    cls = [c for c in closed_in(A.mask, T) if c]
    for i, f in enumerate(cls):
        for g in cls[i + 1:]:
            if f & g:
                continue
            meet = T.closure_mask(f) & T.closure_mask(g)
            if meet:
                return PropertyReport(
                    "2_comb_embedded",
                    False,
                    witness={"A": _ids(A.mask), "F": _ids(f), "G": _ids(g), "common": _ids(meet)},
                )
    return PropertyReport("2_comb_embedded", True)


def _2B_violation(A: int, B_masks, T: GroundTopology):
    for f in closed_in(A, T):
        if not f:
            continue
        cl = T.closure_mask(f)
        for u in B_masks:
            if f & ~u:
                continue
            if not any(cl & ~v == 0 and (v & A) & ~u == 0 for v in B_masks):
                return f, u
    return None


def is_2B_comb_embedded(A: Subset, B: SubsetFamily, T: GroundTopology) -> PropertyReport:
    """Each ``F in CL(A)`` inside ``U in B`` has ``V in B`` with ``cl F <= V`` and ``V ∩ A <= U``."""
    check_same_universe(A.universe, B.universe, T.universe)
    bad = _2B_violation(A.mask, B.masks, T)
    if bad is None:
        return PropertyReport("2B_comb_embedded", True)
    f, u = bad
    return PropertyReport("2B_comb_embedded", False, witness={"A": _ids(A.mask), "F": _ids(f), "U": _ids(u)})


class SubspaceContext:
    """The subspace ``A`` of ``(X, T)`` with its traced base and hyperspace ``(CL(A), O_A)``."""

    def __init__(self, ambient: GroundTopology, A: Subset, B: SubsetFamily):
        check_same_universe(ambient.universe, A.universe, B.universe)
        self.ambient = ambient
        self.A = A
        self.B = B
        a = A.mask
        self.B_A = SubsetFamily(ambient.universe, {u & a for u in B.masks})
        self.CL_A = SubsetFamily(ambient.universe, [c for c in closed_in(a, ambient) if c])
        u = ambient.universe
        if u.full in B and set(intersection_closure(B.masks)) == set(B.masks):
            if a not in self.B_A or set(intersection_closure(self.B_A.masks)) != set(self.B_A.masks):
                raise InternalConsistencyError("traced base lost closure under intersections")
        self.O_A = generate_hypertopology(self.B_A, self.CL_A)

    @classmethod
    def from_hypertopology(cls, ambient: GroundTopology, O: HyperTopology, A: Subset) -> SubspaceContext:
        return cls(ambient, A, b_of(O))


@dataclass
class MapReport:
    A: list[int]
    injective: bool
    continuous: bool
    inverse_continuous: bool
    t1_ambient: bool
    comb_2B: bool
    images: list = field(default_factory=list)

    @property
    def embedding(self) -> bool:
        return self.injective and self.continuous and self.inverse_continuous

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "injective": self.injective,
            "continuous": self.continuous,
            "inverse_continuous": self.inverse_continuous,
            "embedding": self.embedding,
            "t1_ambient": self.t1_ambient,
            "2B_comb_embedded": self.comb_2B,
            "images": self.images,
        }


def _check_cl_hypertopology(T: GroundTopology, O: HyperTopology):
    if O.family != T.nonempty_closed():
        raise HypothesisError("O must be a topology on CL(X) of the ambient space")
    if not is_tychonoff_type(O):
        raise HypothesisError("O must be of Tychonoff-type")


def build_iAX(ctx: SubspaceContext, O: HyperTopology) -> MapReport:
    """Build ``i_{A,X}(F) = cl_X F`` and report injectivity and (inverse) continuity.

    When the ambient space is T1, inverse continuity must coincide with ``A``
    being ``2_{B_O}``-combinatorially embedded; otherwise both are reported
    side by side and nothing is asserted.
    """
    T = ctx.ambient
    _check_cl_hypertopology(T, O)
    B_O = b_of(O)
    if ctx.B != B_O:
        raise HypothesisError("the subspace context must be built from B_O")
    CL_X = O.family
    src = ctx.CL_A.masks
    targets = [CL_X.index(T.closure_mask(f)) for f in src]
    injective = len(set(targets)) == len(targets)
    image = 0
    for t in targets:
        image |= 1 << t

    def pre(w):
        out = 0
        for j, t in enumerate(targets):
            if w >> t & 1:
                out |= 1 << j
        return out

    def fwd(v):
        out = 0
        for j in elements(v):
            out |= 1 << targets[j]
        return out

    continuous = all(pre(w) in ctx.O_A.opens for w in O.opens)
    traces = {w & image for w in O.opens}
    inverse_continuous = injective and all(fwd(v) in traces for v in ctx.O_A.opens)
    t1 = ground_is_t1(T)
    comb = _2B_violation(ctx.A.mask, B_O.masks, T) is None
    if t1 and inverse_continuous != comb:
        raise InternalConsistencyError("inverse continuity and 2_B-embedding disagree on a T1 space")
    return MapReport(
        _ids(ctx.A.mask),
        injective,
        continuous,
        inverse_continuous,
        t1,
        comb,
        [[_ids(f), _ids(CL_X.masks[t])] for f, t in zip(src, targets)],
    )


def _sweep(T: GroundTopology, O: HyperTopology, name: str, test) -> PropertyReport:
    _check_cl_hypertopology(T, O)
    u: Universe = T.universe
    B_O = b_of(O)
    for a in sorted(range(1 << u.n), key=canonical_key):
        rep = build_iAX(SubspaceContext(T, Subset(u, a), B_O), O)
        if not test(rep):
            return PropertyReport(name, False, witness={"A": _ids(a), "map": rep.to_dict()})
    return PropertyReport(name, True)


def is_O_HS(T: GroundTopology, O: HyperTopology) -> PropertyReport:
    """Every ``i_{A,X}`` is continuous."""
    return _sweep(T, O, "O_HS", lambda r: r.continuous)


def is_O_commutative(T: GroundTopology, O: HyperTopology) -> PropertyReport:
    """Every ``i_{A,X}`` is a homeomorphic embedding."""
    return _sweep(T, O, "O_commutative", lambda r: r.embedding)
