"""Topological properties of hyperspaces ``(M, O)`` and ground spaces ``(X, T_O)``.

Predicates that have a base-level characterization are computed twice, once
on the explicit finite topology and once through the characterization, and
a disagreement raises :class:`InternalConsistencyError`.

On finite spaces some properties degenerate: every space is compact and
closure under finite intersections already gives closure under arbitrary
ones. The reports say so in ``notes`` instead of hiding the predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .errors import CapExceeded, HypothesisError, InternalConsistencyError
from .hypergen import GroundTopology, HyperTopology, b_of, is_tychonoff, is_tychonoff_type, t_of
from .setcore import SubsetFamily, elements, intersection_closure, union_closure

__all__ = [
    "PropertyReport",
    "direct_t0",
    "direct_t1",
    "hyper_is_t0",
    "hyper_is_t1",
    "ground_is_t0",
    "ground_is_t1",
    "t0_sufficient",
    "t1_characterization",
    "hyper_compactness",
    "is_p_infinity",
    "is_p_infinity_masks",
    "hyper_is_p_infinity",
    "minimal_base",
    "weight",
    "density",
    "has_isolated_points",
    "density_report",
    "isolated_points_report",
    "singleton_embedding",
    "MAX_OPENS",
]

MAX_OPENS = 1 << 20

FINITE_COMPACT = "finite spaces are compact; both verdicts are true by finiteness"
FINITE_P_INF = "finite families: closure under finite intersections equals closure under arbitrary ones"


@dataclass
class PropertyReport:
    """Outcome of a property check.

    ``witness`` holds plain JSON values (subsets as ascending id lists) and
    is set whenever a universally quantified property fails.
    """

    name: str
    holds: bool
    witness: dict[str, Any] | None = None
    hypothesis_violations: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "property": self.name,
            "holds": self.holds,
            "witness": self.witness,
            "hypothesis_violations": list(self.hypothesis_violations),
            "details": self.details,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> PropertyReport:
        return cls(
            d["property"],
            d["holds"],
            d.get("witness"),
            list(d.get("hypothesis_violations", [])),
            dict(d.get("details", {})),
            list(d.get("notes", [])),
        )


def _ids(mask: int) -> list[int]:
    return list(elements(mask))


def _hyper_ids(O: HyperTopology, hmask: int) -> list[list[int]]:
    return [_ids(O.family.masks[i]) for i in elements(hmask)]


# -- separation ---------------------------------------------------------------


def _t0_violation(k: int, opens) -> tuple[int, int] | None:
    seen: dict[frozenset, int] = {}
    for p in range(k):
        sig = frozenset(o for o in opens if o >> p & 1)
        if sig in seen:
            return seen[sig], p
        seen[sig] = p
    return None


def _min_nbhd(k: int, opens, p: int) -> int:
    nb = (1 << k) - 1
    for o in opens:
        if o >> p & 1:
            nb &= o
    return nb


def _t1_violation(k: int, opens) -> tuple[int, int] | None:
    # (p, q): every open around p also contains q
    for p in range(k):
        extra = _min_nbhd(k, opens, p) & ~(1 << p)
        if extra:
            return p, elements(extra)[0]
    return None


def direct_t0(O: HyperTopology):
    """First pair of indistinguishable points of ``(M, O)`` as ``M``-indices, or ``None``."""
    return _t0_violation(len(O.family), O.opens)


def direct_t1(O: HyperTopology):
    return _t1_violation(len(O.family), O.opens)


def _base_of(O: HyperTopology) -> SubsetFamily:
    if O.generating_base is not None:
        return O.generating_base
    if not is_tychonoff_type(O):
        raise HypothesisError("separation characterization needs a Tychonoff-type topology")
    return b_of(O)


def _char_t0(M: SubsetFamily, B: SubsetFamily):
    ms = M.masks
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            f, g = ms[i], ms[j]
            if not any((f & ~b == 0) != (g & ~b == 0) for b in B.masks):
                return i, j
    return None


def _char_t1(M: SubsetFamily, B: SubsetFamily):
    ms = M.masks
    for i, f in enumerate(ms):
        for j, g in enumerate(ms):
            if i != j and not any(f & ~b == 0 and g & ~b for b in B.masks):
                return i, j
    return None


def _separation_report(O: HyperTopology, which: str) -> PropertyReport:
    B = _base_of(O)
    if which == "t0":
        direct, char = direct_t0(O), _char_t0(O.family, B)
    else:
        direct, char = direct_t1(O), _char_t1(O.family, B)
    if (direct is None) != (char is None):
        raise InternalConsistencyError(f"{which}: direct and base characterization disagree")
    rep = PropertyReport(
        f"hyper_{which}",
        direct is None,
        details={"direct": direct is None, "characterization": char is None},
    )
    if direct is not None:
        i, j = direct
        rep.witness = {"F": _ids(O.family.masks[i]), "G": _ids(O.family.masks[j])}
        common = [o for o in O.sorted_opens() if o >> i & 1]
        rep.witness["open_sets_containing_F"] = [_hyper_ids(O, o) for o in common]
    return rep


def hyper_is_t0(O: HyperTopology) -> PropertyReport:
    """T0 for ``(M, O)``, directly and through the generating base."""
    return _separation_report(O, "t0")


def hyper_is_t1(O: HyperTopology) -> PropertyReport:
    return _separation_report(O, "t1")


def ground_is_t0(T: GroundTopology) -> bool:
    return _t0_violation(T.n, T.opens.masks) is None


def ground_is_t1(T: GroundTopology) -> bool:
    return _t1_violation(T.n, T.opens.masks) is None


def t0_sufficient(B: SubsetFamily, M: SubsetFamily) -> bool:
    """Each ``x`` outside ``F in M`` is separated from ``F`` by a ``B``-member containing ``F``."""
    n = M.universe.n
    for f in M.masks:
        for x in range(n):
            if f >> x & 1:
                continue
            if not any(f & ~b == 0 and not b >> x & 1 for b in B.masks):
                return False
    return True


def t1_characterization(obj) -> PropertyReport:
    """Hyperspace T1 iff ``T_O`` is T1 and ``M`` is exactly the singletons.

    Also checks that a proper inclusion ``F ⊊ G`` inside ``M`` rules out T1.
    """
    O = obj.O
    M = O.family
    hyper = hyper_is_t1(O)
    ground = ground_is_t1(t_of(O))
    only_singletons = all(m.bit_count() == 1 for m in M.masks) and len(M) == M.universe.n
    if hyper.holds != (ground and only_singletons):
        raise InternalConsistencyError("T1 characterization through T_O and M failed")
    rep = PropertyReport(
        "t1_characterization",
        hyper.holds,
        details={"hyper_t1": hyper.holds, "ground_t1": ground, "M_is_singletons": only_singletons},
    )
    pair = next(
        ((f, g) for f in M.masks for g in M.masks if f != g and f & ~g == 0),
        None,
    )
    if pair is not None:
        if hyper.holds:
            raise InternalConsistencyError("a proper pair F ⊊ G in M but the hyperspace is T1")
        rep.witness = {"F": _ids(pair[0]), "G": _ids(pair[1])}
    elif not hyper.holds:
        rep.witness = hyper.witness
    return rep


# -- compactness --------------------------------------------------------------


def _minimum_subcover(cover: list[int], target: int, ok) -> list[int]:
    for k in range(0, len(cover) + 1):
        for sub in combinations(cover, k):
            if ok(sub):
                return list(sub)
    raise InternalConsistencyError("a cover has no subcover of itself")


def hyper_compactness(obj) -> PropertyReport:
    """Compactness of ``(M, O)``, directly and via ``M``-covers of ``X`` by ``B_O``-members."""
    O = obj.O
    M = O.family
    full_hyper = M.full_hyper
    u = M.universe

    opens = [o for o in O.sorted_opens() if o]
    direct_sub = _minimum_subcover(opens, full_hyper, lambda sub: _or(sub) == full_hyper)

    B = b_of(O)
    cover = [b for b in B.masks if b]

    def is_m_cover_of_x(sub):
        if _or(sub) != u.full:
            return False
        return all(any(m & ~v == 0 for v in sub) for m in M.masks)

    if is_m_cover_of_x(cover):
        char_sub = _minimum_subcover(cover, u.full, is_m_cover_of_x)
    else:
        char_sub = None
    direct = True
    char = True
    return PropertyReport(
        "hyper_compactness",
        direct and char,
        witness={
            "open_subcover": [_hyper_ids(O, o) for o in direct_sub],
            "B_O_m_cover": [_ids(b) for b in cover],
            "m_subcover": None if char_sub is None else [_ids(b) for b in char_sub],
        },
        details={"direct": direct, "characterization": char},
        notes=[FINITE_COMPACT],
    )


def _or(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# -- P-infinity ---------------------------------------------------------------


def is_p_infinity_masks(masks) -> bool:
    s = set(masks)
    return set(intersection_closure(s)) == s


def is_p_infinity(F: SubsetFamily) -> bool:
    """Whether the intersection of every nonempty subfamily of ``F`` is in ``F``."""
    return is_p_infinity_masks(F.masks)


def hyper_is_p_infinity(obj) -> PropertyReport:
    O = obj.O
    B = b_of(O)
    T = t_of(O)
    fam = is_p_infinity(B)
    hyper = is_p_infinity_masks(O.opens)
    ground = is_p_infinity(T.opens)
    if fam != hyper:
        raise InternalConsistencyError("P∞: B_O closure and hyperspace P∞ disagree")
    if hyper and not ground:
        raise InternalConsistencyError("P∞ hyperspace over a non-P∞ ground space")
    tych = is_tychonoff(O).holds
    if tych and hyper != ground:
        raise InternalConsistencyError("P∞ levels disagree for a Tychonoff topology")
    return PropertyReport(
        "hyper_p_infinity",
        hyper,
        details={"B_O": fam, "hyperspace": hyper, "ground": ground, "tychonoff": tych},
        notes=[FINITE_P_INF],
    )


# -- cardinal functions -------------------------------------------------------


def _space(space) -> tuple[int, frozenset[int]]:
    if isinstance(space, GroundTopology):
        return space.n, frozenset(space.opens.masks)
    if isinstance(space, HyperTopology):
        return len(space.family), space.opens
    if hasattr(space, "O"):
        return len(space.O.family), space.O.opens
    raise TypeError(f"not a space: {space!r}")


def minimal_base(space) -> list[int]:
    """The unique smallest base: opens that are not unions of strictly smaller opens."""
    k, opens = _space(space)
    if len(opens) > MAX_OPENS:
        raise CapExceeded(f"weight search capped at {MAX_OPENS} open sets")
    irreducible = []
    for o in opens:
        if not o:
            continue
        below = 0
        for p in opens:
            if p != o and p & ~o == 0:
                below |= p
        if below != o:
            irreducible.append(o)
    if union_closure(irreducible) != opens:
        raise InternalConsistencyError("join-irreducible opens do not form a base")
    return sorted(irreducible)


def weight(space) -> int:
    """Minimum cardinality of a base.

    Every base must contain each open that is not a union of strictly smaller
    opens, and on a finite space those opens already form a base.
    """
    return len(minimal_base(space))


def density(space, max_points: int = 24) -> int:
    """Minimum size of a dense set of points, by exhaustive search."""
    k, opens = _space(space)
    if k > max_points:
        raise CapExceeded(f"density search capped at {max_points} points")
    targets = [o for o in opens if o]
    for size in range(0, k + 1):
        for pts in combinations(range(k), size):
            d = _or(1 << p for p in pts)
            if all(o & d for o in targets):
                return size
    return k


def has_isolated_points(space) -> bool:
    k, opens = _space(space)
    return any((1 << p) in opens for p in range(k))


def _empty_gate(M: SubsetFamily) -> list[str]:
    return ["∅∈M"] if M.contains_empty else []


def density_report(obj) -> PropertyReport:
    """``d(M, O)`` against ``d(X, T_O)``; equality is claimed only when ``∅ ∉ M``."""
    O = obj.O
    dh, dg = density(O), density(t_of(O))
    gate = _empty_gate(O.family)
    if not gate and dh != dg:
        raise InternalConsistencyError(f"density mismatch: hyperspace {dh}, ground {dg}")
    return PropertyReport(
        "density",
        dh == dg,
        hypothesis_violations=gate,
        details={"hyperspace": dh, "ground": dg},
    )


def isolated_points_report(obj) -> PropertyReport:
    O = obj.O
    ih, ig = has_isolated_points(O), has_isolated_points(t_of(O))
    gate = _empty_gate(O.family)
    if not gate and ih != ig:
        raise InternalConsistencyError("isolated points exist on one side only")
    return PropertyReport(
        "isolated_points",
        ih == ig,
        hypothesis_violations=gate,
        details={"hyperspace": ih, "ground": ig},
    )


# -- embedding ----------------------------------------------------------------


def singleton_embedding(obj) -> PropertyReport:
    """Check that ``x -> {x}`` embeds ``(X, T_O)`` homeomorphically into ``(M, O)``."""
    O = obj.O
    M = O.family
    n = M.universe.n
    if not M.is_natural:
        raise HypothesisError("the singleton map needs a natural family M")
    T = t_of(O)
    idx = [M.index(1 << x) for x in range(n)]
    image = _or(1 << i for i in idx)

    def e(mask):
        return _or(1 << idx[x] for x in elements(mask))

    def e_inv(hmask):
        return _or(1 << x for x in range(n) if hmask >> idx[x] & 1)

    injective = len(set(idx)) == n
    continuous = all(T.is_open(e_inv(w)) for w in O.opens)
    traces = {w & image for w in O.opens}
    open_onto_image = all(e(v) in traces for v in T.opens.masks)
    hyper_t0 = direct_t0(O) is None
    ground_t0 = ground_is_t0(T)
    w_ground, w_hyper = weight(T), weight(O)
    details = {
        "injective": injective,
        "continuous": continuous,
        "open_onto_image": open_onto_image,
        "hyper_t0": hyper_t0,
        "ground_t0": ground_t0,
        "t0_transfer": ground_t0 or not hyper_t0,
        "weight_ground": w_ground,
        "weight_hyper": w_hyper,
        "weight_inequality": w_ground <= w_hyper,
    }
    holds = injective and continuous and open_onto_image
    rep = PropertyReport("singleton_embedding", holds, details=details)
    if not holds:
        rep.witness = {"failed": [k for k in ("injective", "continuous", "open_onto_image") if not details[k]]}
    return rep
