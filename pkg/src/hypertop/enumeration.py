"""Exhaustive enumeration of topologies, T-spaces and Tychonoff-type topologies.

These streams are the ground truth the property suites run against, so each
one can be produced by two independent routes:

* topologies on a finite set: filtering every family of subsets, or growing
  families from ``{∅, X}`` by adding one set and re-closing;
* Tychonoff-type topologies on ``M``: filtering every topology on the point
  set ``M`` (``"direct"``), taking unions of subfamilies of the distinct
  plus-sets (``"plus"``), or mapping T-spaces through ``beta``
  (``"bijection"``, natural ``M`` only).

Labeled structures are counted; nothing is identified up to homeomorphism.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import CapExceeded, HypertopError, HypothesisError, InternalConsistencyError
from .hypergen import (
    GroundTopology,
    HyperTopology,
    is_tychonoff,
    is_tychonoff_type,
    m_covered_sets,
)
from .setcore import SubsetFamily, Universe, canonical_key, plus_mask, union_closure

__all__ = [
    "Caps",
    "DEFAULT_CAPS",
    "topology_masks",
    "moore_families",
    "enumerate_topologies",
    "enumerate_tspaces",
    "enumerate_hypertopologies",
    "EnumerationCensus",
    "census",
    "named_family",
]


@dataclass(frozen=True)
class Caps:
    """Size limits for the exhaustive routines."""

    n: int = 4
    m: int = 4  # points of M for direct hyper-enumeration
    plus: int = 10  # distinct plus-sets for plus-mode hyper-enumeration


DEFAULT_CAPS = Caps()


def _family_key(masks) -> tuple:
    ordered = sorted(masks, key=canonical_key)
    return (len(ordered), tuple(canonical_key(m) for m in ordered))


def _is_lattice(family: frozenset[int]) -> bool:
    ms = sorted(family)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if a | b not in family or a & b not in family:
                return False
    return True


def _topologies_filter(k: int) -> list[frozenset[int]]:
    full = (1 << k) - 1
    middle = [s for s in range(1, full)] if k else []
    out = []
    for pick in range(1 << len(middle)):
        fam = {0, full}
        for j, s in enumerate(middle):
            if pick >> j & 1:
                fam.add(s)
        fam = frozenset(fam)
        if _is_lattice(fam):
            out.append(fam)
    return out


def _lattice_closure(family: set[int]) -> frozenset[int]:
    fam = set(family)
    while True:
        new = {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam}
        if new <= fam:
            return frozenset(fam)
        fam |= new


def _topologies_closure(k: int) -> list[frozenset[int]]:
    full = (1 << k) - 1
    start = frozenset({0, full})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for fam in frontier:
            for s in range(1, full):
                if s in fam:
                    continue
                grown = _lattice_closure(fam | {s})
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return list(seen)


@lru_cache(maxsize=None)
def topology_masks(k: int, method: str = "filter") -> tuple[frozenset[int], ...]:
    """Every topology on ``k`` labeled points, as frozensets of masks, in canonical order.

    ``method`` is ``"filter"`` (test every family containing ∅ and the whole
    set) or ``"closure"`` (grow from the indiscrete topology).
    """
    if method == "filter":
        fams = _topologies_filter(k)
    elif method == "closure":
        fams = _topologies_closure(k)
    else:
        raise HypertopError(f"unknown topology enumeration method {method!r}")
    return tuple(sorted(fams, key=_family_key))


def enumerate_topologies(n: int, method: str = "filter", cap_n: int = DEFAULT_CAPS.n) -> Iterator[GroundTopology]:
    if n > cap_n:
        raise CapExceeded(f"topology enumeration capped at n={cap_n}, got n={n}")
    u = Universe(n)
    for fam in topology_masks(n, method):
        yield GroundTopology(u, fam, validate=False)


def moore_families(n: int) -> Iterator[frozenset[int]]:
    """Families of subsets of ``{0..n-1}`` containing ``X`` and closed under intersections.

    Sets are decided from largest to smallest; once a set is chosen, its
    intersections with earlier choices are strictly smaller and become
    mandatory, so no candidate ever needs rejecting afterwards.
    """
    full = (1 << n) - 1
    order = sorted(range(full), key=lambda s: (-s.bit_count(), s))

    def rec(i, chosen, forced):
        if i == len(order):
            yield frozenset(chosen)
            return
        s = order[i]
        if s not in forced:
            yield from rec(i + 1, chosen, forced)
        new_forced = forced | {s & t for t in chosen}
        yield from rec(i + 1, chosen + [s], new_forced)

    yield from rec(0, [full], frozenset())


def enumerate_tspaces(n: int, M: SubsetFamily, cap_n: int = DEFAULT_CAPS.n):
    """Every T-space ``(X, B, M)``, ordered canonically by ``B``."""
    from .tspaces import TSpace

    if n > cap_n:
        raise CapExceeded(f"T-space enumeration capped at n={cap_n}, got n={n}")
    if M.universe.n != n:
        raise HypertopError("M must live over the requested universe")
    u = M.universe
    found = []
    for fam in moore_families(n):
        B = SubsetFamily(u, fam)
        if all(a in fam for a in m_covered_sets(B, M).masks):
            found.append(B)
    found.sort(key=lambda B: _family_key(B.masks))
    for B in found:
        yield TSpace(B, M, validate=False)


def _sorted_hyper(tops) -> list[HyperTopology]:
    return sorted(tops, key=lambda O: _family_key(O.opens))


def enumerate_hypertopologies(n: int, M: SubsetFamily, mode: str = "direct", caps: Caps = DEFAULT_CAPS):
    """Every Tychonoff-type topology on ``M``.

    ``mode`` is ``"direct"`` (all topologies on the points of ``M``, needs
    ``|M| <= caps.m``), ``"plus"`` (unions of subfamilies of the distinct
    plus-sets, needs at most ``caps.plus`` of them) or ``"bijection"``
    (``beta`` over every T-space; natural ``M`` only).
    """
    if M.universe.n != n:
        raise HypertopError("M must live over the requested universe")
    if n > caps.n:
        raise CapExceeded(f"hypertopology enumeration capped at n={caps.n}, got n={n}")
    if mode == "direct":
        k = len(M)
        if k > caps.m:
            raise CapExceeded(f"direct hyper-enumeration capped at |M|={caps.m}, got |M|={k}")
        out = []
        for fam in topology_masks(k, "filter"):
            O = HyperTopology(M, fam, validate=False)
            if is_tychonoff_type(O):
                out.append(O)
        return _sorted_hyper(out)
    if mode == "plus":
        plus = sorted({plus_mask(a, M.masks) for a in range(1 << n)})
        if len(plus) > caps.plus:
            raise CapExceeded(f"plus-mode hyper-enumeration capped at {caps.plus} plus-sets, got {len(plus)}")
        full = M.full_hyper
        seen = set()
        for pick in range(1 << len(plus)):
            base = [p for j, p in enumerate(plus) if pick >> j & 1]
            opens = union_closure(base)
            if full in opens and opens not in seen and _is_lattice(opens):
                seen.add(opens)
        return _sorted_hyper(HyperTopology(M, o, validate=False) for o in seen)
    if mode == "bijection":
        from .tspaces import beta

        if not M.is_natural:
            raise HypothesisError("bijection mode needs a natural family M")
        return _sorted_hyper(beta(ts).O for ts in enumerate_tspaces(n, M, cap_n=caps.n))
    raise HypertopError(f"unknown enumeration mode {mode!r}")


def named_family(u: Universe, name: str) -> SubsetFamily:
    """The ``--m`` presets: ``natural-min``, ``fin2``, ``nonempty``, ``all``."""
    if name == "natural-min":
        return u.singletons()
    if name == "fin2":
        return SubsetFamily(u, [m for m in u.fin(2).masks if m])
    if name == "nonempty":
        return u.nonempty_subsets()
    if name == "all":
        return u.power_set()
    raise HypertopError(f"unknown family preset {name!r}")


@dataclass
class EnumerationCensus:
    n: int
    m_descriptor: str
    counts: dict
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        """Serializable form; omits ``elapsed`` so reruns are byte-identical."""
        return {"n": self.n, "M": self.m_descriptor, "counts": dict(self.counts)}

    @classmethod
    def from_dict(cls, d: dict) -> EnumerationCensus:
        return cls(d["n"], d["M"], dict(d["counts"]))


def census(n: int, M: SubsetFamily, descriptor: str | None = None, caps: Caps = DEFAULT_CAPS) -> EnumerationCensus:
    from .hprops import direct_t0, direct_t1, is_p_infinity_masks

    t0 = time.perf_counter()
    n_top = len(topology_masks(n, "filter")) if n <= caps.n else None
    tspaces = list(enumerate_tspaces(n, M, cap_n=caps.n))
    mode = "direct" if len(M) <= caps.m else "plus"
    tt = enumerate_hypertopologies(n, M, mode=mode, caps=caps)
    counts = {
        "topologies": n_top,
        "t_spaces": len(tspaces),
        "tychonoff_type": len(tt),
        "tychonoff": sum(1 for O in tt if is_tychonoff(O, cap_n=caps.n).holds),
        "t0_hyperspaces": sum(1 for O in tt if direct_t0(O) is None),
        "t1_hyperspaces": sum(1 for O in tt if direct_t1(O) is None),
        "p_infinity_hyperspaces": sum(1 for O in tt if is_p_infinity_masks(O.opens)),
    }
    if M.is_natural and counts["t_spaces"] != counts["tychonoff_type"]:
        raise InternalConsistencyError(
            f"{counts['t_spaces']} T-spaces but {counts['tychonoff_type']} Tychonoff-type topologies"
        )
    return EnumerationCensus(n, descriptor or repr(M), counts, time.perf_counter() - t0)
