"""Tychonoff-type topologies on a family ``M`` of subsets of ``X``.

A family ``B`` generates a topology ``O_B`` on ``M`` when the plus-sets
``{U+_M : U in B}`` form a base for it. From a Tychonoff-type topology ``O``
one recovers ``B_O = {A : A+_M in O}`` and the ground topology ``T_O`` it
generates on ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BaseError, CapExceeded, HypertopError, InternalConsistencyError
from .setcore import (
    HyperSubset,
    Subset,
    SubsetFamily,
    Universe,
    canonical_key,
    check_same_universe,
    elements,
    intersection_closure,
    plus_mask,
    union_closure,
)

__all__ = [
    "GroundTopology",
    "HyperTopology",
    "TychonoffVerdict",
    "generates_topology",
    "mb_conditions",
    "mb_violation",
    "generate_hypertopology",
    "tychonoff_hypertopology",
    "is_tychonoff_type",
    "b_of",
    "t_of",
    "is_tychonoff",
    "is_m_cover",
    "is_m_closed",
    "m_closed_violation",
    "m_covered_sets",
    "topologies_equal_CO",
    "is_m_base",
    "is_network",
    "check_U1",
    "DEFAULT_CAP_N",
]

DEFAULT_CAP_N = 4


class GroundTopology:
    """A topology on ``X`` given by its explicit open sets."""

    __slots__ = ("universe", "opens")

    def __init__(self, universe: Universe, opens: Iterable[int] | SubsetFamily, validate: bool = True):
        if isinstance(opens, SubsetFamily):
            check_same_universe(universe, opens.universe)
        else:
            opens = SubsetFamily(universe, opens)
        self.universe = universe
        self.opens = opens
        if validate:
            self._validate()

    def _validate(self):
        s = set(self.opens.masks)
        if 0 not in s or self.universe.full not in s:
            raise HypertopError("a topology must contain the empty set and X")
        ms = self.opens.masks
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if a | b not in s or a & b not in s:
                    raise HypertopError(
                        f"not closed under union/intersection at {set(elements(a))}, {set(elements(b))}"
                    )

    @classmethod
    def from_base(cls, universe: Universe, base: Iterable[int] | SubsetFamily) -> GroundTopology:
        """Topology generated by ``base``; raises if ``base`` is not a base for any topology."""
        masks = base.masks if isinstance(base, SubsetFamily) else tuple(base)
        return cls(universe, union_closure(masks))

    @classmethod
    def discrete(cls, universe: Universe) -> GroundTopology:
        return cls(universe, range(1 << universe.n), validate=False)

    @classmethod
    def indiscrete(cls, universe: Universe) -> GroundTopology:
        return cls(universe, {0, universe.full}, validate=False)

    @property
    def n(self) -> int:
        return self.universe.n

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def closed_masks(self) -> tuple[int, ...]:
        full = self.universe.full
        return tuple(sorted((full & ~u for u in self.opens.masks), key=canonical_key))

    def closure_mask(self, mask: int) -> int:
        # complement of the union of the opens missing ``mask``
        outside = 0
        for u in self.opens.masks:
            if u & mask == 0:
                outside |= u
        return self.universe.full & ~outside

    def nonempty_closed(self) -> SubsetFamily:
        """``CL(X)``: nonempty closed subsets."""
        return SubsetFamily(self.universe, [c for c in self.closed_masks() if c])

    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.n

    def __eq__(self, other):
        if not isinstance(other, GroundTopology):
            return NotImplemented
        return self.opens == other.opens

    def __hash__(self):
        return hash(self.opens)

    def __repr__(self):
        return f"GroundTopology(n={self.n}, opens={self.opens!r})"


class HyperTopology:
    """A topology on the family ``M``, stored as index masks over ``M``.

    ``generating_base`` records the family ``B`` whose plus-sets generated it,
    when known. Two hypertopologies compare equal when their families and
    open sets agree; the recorded base does not take part.
    """

    __slots__ = ("family", "opens", "generating_base")

    def __init__(
        self,
        family: SubsetFamily,
        opens: Iterable[int],
        generating_base: SubsetFamily | None = None,
        validate: bool = True,
    ):
        self.family = family
        self.opens = frozenset(opens)
        self.generating_base = generating_base
        if validate:
            self._validate()

    def _validate(self):
        full = self.family.full_hyper
        s = self.opens
        if 0 not in s or full not in s:
            raise HypertopError("a hypertopology must contain the empty hyper-subset and all of M")
        for o in s:
            if o < 0 or o & ~full:
                raise HypertopError("open hyper-subset indexes outside M")
        ms = sorted(s)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if a | b not in s or a & b not in s:
                    raise HypertopError("hypertopology not closed under union/intersection")
        if self.generating_base is not None:
            check_same_universe(self.family.universe, self.generating_base.universe)
            images = [plus_mask(b, self.family.masks) for b in self.generating_base.masks]
            if union_closure(images) != s:
                raise HypertopError("opens are not the unions of the recorded base's plus-sets")

    @classmethod
    def from_members(cls, family: SubsetFamily, opens: Iterable[Iterable[Subset | Iterable[int]]]):
        """Build from opens written as collections of members of ``family``."""
        u = family.universe
        masks = []
        for o in opens:
            m = 0
            for s in o:
                sm = s.mask if isinstance(s, Subset) else u.subset(s).mask
                if sm not in family:
                    raise HypertopError(f"{set(elements(sm))} is not a member of M")
                m |= 1 << family.index(sm)
            masks.append(m)
        return cls(family, masks)

    @property
    def universe(self) -> Universe:
        return self.family.universe

    def hyper(self, mask: int) -> HyperSubset:
        return HyperSubset(self.family, mask)

    def sorted_opens(self) -> tuple[int, ...]:
        return tuple(sorted(self.opens, key=canonical_key))

    def open_hypersets(self) -> tuple[HyperSubset, ...]:
        return tuple(self.hyper(o) for o in self.sorted_opens())

    def __len__(self):
        return len(self.opens)

    def __eq__(self, other):
        if not isinstance(other, HyperTopology):
            return NotImplemented
        return self.family == other.family and self.opens == other.opens

    def __hash__(self):
        return hash((self.family, self.opens))

    def __repr__(self):
        return f"HyperTopology(M={self.family!r}, |O|={len(self.opens)})"


# -- generation ---------------------------------------------------------------


def _plus_le(m_masks, u: int, v: int) -> bool:
    # u+ <= v+: every M-member inside u is inside v
    return all(m & ~v == 0 for m in m_masks if m & ~u == 0)


def mb_violation(B: SubsetFamily, M: SubsetFamily, literal: bool = False):
    """First failure of MB1/MB2 as ``(condition, witness)``, or ``None``.

    MB2 asks, for ``M' <= U1 ∩ U2``, for some ``U3 in B`` with ``M' <= U3``
    and ``U3+ <= (U1 ∩ U2)+``; that is exactly the base axiom for ``B+_M``.
    With ``literal=True`` the stronger ``U3 <= U1 ∩ U2`` is demanded instead.
    The two agree whenever ``M`` is natural.
    """
    check_same_universe(B.universe, M.universe)
    bs = B.masks
    ms = M.masks
    for m in ms:
        if not any(m & ~u == 0 for u in bs):
            return "MB1", (m,)
    for i, u1 in enumerate(bs):
        for u2 in bs[i:]:
            meet = u1 & u2
            for m in ms:
                if m & ~meet:
                    continue
                if literal:
                    ok = any(m & ~u3 == 0 and u3 & ~meet == 0 for u3 in bs)
                else:
                    ok = any(m & ~u3 == 0 and _plus_le(ms, u3, meet) for u3 in bs)
                if not ok:
                    return "MB2", (m, u1, u2)
    return None


def generates_topology(B: SubsetFamily, M: SubsetFamily) -> bool:
    """Whether ``B+_M`` is a base for a topology on ``M`` (conditions MB1 and MB2)."""
    return mb_violation(B, M) is None


def mb_conditions(B: SubsetFamily, M: SubsetFamily) -> bool:
    """MB1 and MB2 with the set-level inclusion ``U3 <= U1 ∩ U2``.

    Sufficient for :func:`generates_topology`; necessary only when ``M`` is natural.
    """
    return mb_violation(B, M, literal=True) is None


def _generate(b_masks: Iterable[int], M: SubsetFamily) -> frozenset[int]:
    return union_closure(plus_mask(b, M.masks) for b in b_masks)


def generate_hypertopology(B: SubsetFamily, M: SubsetFamily) -> HyperTopology:
    """``O_B``: all unions of members of ``B+_M``."""
    bad = mb_violation(B, M)
    if bad is not None:
        cond, wit = bad
        desc = ", ".join(str(set(elements(w))) for w in wit)
        raise BaseError(f"B does not generate a topology on M: {cond} fails at {desc}", cond, wit)
    return HyperTopology(M, _generate(B.masks, M), generating_base=B, validate=False)


def tychonoff_hypertopology(T: GroundTopology, M: SubsetFamily) -> HyperTopology:
    """``O_T``, the Tychonoff topology on ``M`` generated by ``(X, T)``."""
    check_same_universe(T.universe, M.universe)
    return HyperTopology(M, _generate(T.opens.masks, M), generating_base=T.opens, validate=False)


# -- analysis -----------------------------------------------------------------


def _plus_opens(O: HyperTopology) -> set[int]:
    ms = O.family.masks
    return {p for p in (plus_mask(a, ms) for a in range(1 << O.universe.n)) if p in O.opens}


def is_tychonoff_type(O: HyperTopology) -> bool:
    """Whether the opens of the form ``A+_M`` form a base of ``O``."""
    plus = _plus_opens(O)
    for o in O.opens:
        cover = 0
        for p in plus:
            if p & ~o == 0:
                cover |= p
        if cover != o:
            return False
    return True


def _b_masks(O: HyperTopology) -> list[int]:
    ms = O.family.masks
    return [a for a in range(1 << O.universe.n) if plus_mask(a, ms) in O.opens]


def b_of(O: HyperTopology) -> SubsetFamily:
    """``B_O = {A <= X : A+_M in O}``."""
    u = O.universe
    masks = _b_masks(O)
    s = set(masks)
    if u.full not in s or intersection_closure(masks) != s:
        raise InternalConsistencyError("B_O must contain X and be closed under intersections")
    return SubsetFamily(u, masks)


def t_of(O: HyperTopology) -> GroundTopology:
    """``T_O``: the topology on ``X`` with base ``B_O``."""
    return GroundTopology(O.universe, union_closure(_b_masks(O)), validate=False)


@dataclass(frozen=True)
class TychonoffVerdict:
    holds: bool
    witnesses: tuple[GroundTopology, ...]
    method: str

    def __bool__(self):
        return self.holds


def is_tychonoff(O: HyperTopology, cap_n: int = DEFAULT_CAP_N) -> TychonoffVerdict:
    """Whether some topology ``T`` on ``X`` has ``T+_M`` as a base of ``O``.

    When ``M`` is a network for ``T_O`` (always the case for natural ``M``)
    the answer is ``B_O == T_O`` and ``T_O`` is the only witness. Otherwise
    every topology on ``X`` is tried, which needs ``n <= cap_n``.
    """
    M = O.family
    if not is_tychonoff_type(O):
        return TychonoffVerdict(False, (), "not-tychonoff-type")
    B = b_of(O)
    T_O = t_of(O)
    if is_network(M, T_O):
        holds = B.masks == T_O.opens.masks
        return TychonoffVerdict(holds, (T_O,) if holds else (), "network")
    if O.universe.n > cap_n:
        raise CapExceeded(f"exhaustive Tychonoff search needs n <= {cap_n}, got n={O.universe.n}")
    from .enumeration import enumerate_topologies

    witnesses = tuple(
        T for T in enumerate_topologies(O.universe.n, cap_n=cap_n) if _generate(T.opens.masks, M) == O.opens
    )
    return TychonoffVerdict(bool(witnesses), witnesses, "exhaustive")


def _is_m_cover(u_masks: Iterable[int], a: int, m_masks: Iterable[int]) -> bool:
    u_masks = tuple(u_masks)
    union = 0
    for u in u_masks:
        union |= u
    if union != a:
        return False
    for m in m_masks:
        if m & ~a == 0 and not any(m & ~u == 0 for u in u_masks):
            return False
    return True


def is_m_cover(U: SubsetFamily, A: Subset, M: SubsetFamily) -> bool:
    """``U`` is an ``M``-cover of ``A``: ``union(U) == A`` and each ``M``-member inside ``A`` sits in some ``U``-member."""
    check_same_universe(U.universe, A.universe, M.universe)
    return _is_m_cover(U.masks, A.mask, M.masks)


def m_covered_sets(U: SubsetFamily, M: SubsetFamily) -> SubsetFamily:
    """All ``A <= X`` that are ``M``-covered by some subfamily of ``U``.

    A covering subfamily of ``A`` can only use members inside ``A``, and adding
    more of those keeps it a cover, so it suffices to test the largest
    candidate ``{V in U : V <= A}``.
    """
    check_same_universe(U.universe, M.universe)
    out = []
    for a in range(1 << U.universe.n):
        cand = [v for v in U.masks if v & ~a == 0]
        if _is_m_cover(cand, a, M.masks):
            out.append(a)
    return SubsetFamily(U.universe, out)


def m_closed_violation(U: SubsetFamily, M: SubsetFamily) -> int | None:
    """First (canonical order) ``M``-covered set missing from ``U``, or ``None``."""
    for a in m_covered_sets(U, M).masks:
        if a not in U:
            return a
    return None


def is_m_closed(U: SubsetFamily, M: SubsetFamily) -> bool:
    return m_closed_violation(U, M) is None


def _refines(m_masks, b_from, b_to, literal: bool = False) -> bool:
    # every m <= u1 in b_from has m <= u2 in b_to with u2 <= u1 (literal) or u2+ <= u1+
    for m in m_masks:
        for u1 in b_from:
            if m & ~u1:
                continue
            if literal:
                ok = any(m & ~u2 == 0 and u2 & ~u1 == 0 for u2 in b_to)
            else:
                ok = any(m & ~u2 == 0 and _plus_le(m_masks, u2, u1) for u2 in b_to)
            if not ok:
                return False
    return True


def _require_generating(M, *families):
    for B in families:
        bad = mb_violation(B, M)
        if bad is not None:
            raise BaseError(f"family does not generate a topology on M ({bad[0]})", *bad)


def topologies_equal_CO(B1: SubsetFamily, B2: SubsetFamily, M: SubsetFamily, literal: bool = False) -> bool:
    """Decide ``O_B1 == O_B2`` through conditions CO1 and CO2.

    As with :func:`mb_violation`, the refining member ``U2`` only has to
    satisfy ``U2+ <= U1+``; ``literal=True`` demands ``U2 <= U1``, which is
    sufficient in general and equivalent for natural ``M``.
    """
    check_same_universe(B1.universe, B2.universe, M.universe)
    _require_generating(M, B1, B2)
    return _refines(M.masks, B1.masks, B2.masks, literal) and _refines(M.masks, B2.masks, B1.masks, literal)


def is_m_base(B: SubsetFamily, T: GroundTopology, M: SubsetFamily, literal: bool = False) -> bool:
    """Every ``M``-member inside an open ``V`` fits in some ``U in B`` with ``U+ <= V+``.

    ``literal=True`` asks for ``U <= V`` instead.
    """
    check_same_universe(B.universe, T.universe, M.universe)
    if not B <= T.opens:
        raise HypertopError("an M-base must consist of open sets")
    _require_generating(M, B)
    return _refines(M.masks, T.opens.masks, B.masks, literal)


def is_network(M: SubsetFamily, T: GroundTopology) -> bool:
    """Every open ``U`` and ``x in U`` admit ``M' in M`` with ``x in M' <= U``.

    This is the usual notion of a network (Arhangel'skii).
    """
    check_same_universe(M.universe, T.universe)
    return check_U1(T.opens, M)


def check_U1(A_family: SubsetFamily, M: SubsetFamily) -> bool:
    """Each point of each member of ``A_family`` lies in an ``M``-member inside that member."""
    check_same_universe(A_family.universe, M.universe)
    for u in A_family.masks:
        reach = 0
        for m in M.masks:
            if m & ~u == 0:
                reach |= m
        if reach != u:
            return False
    return True
