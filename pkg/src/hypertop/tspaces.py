"""T-spaces, their correspondence with Tychonoff-type topologies, and morphisms.

``alpha`` sends a Tychonoff-type topology ``O`` on a natural family ``M`` to
the T-space ``(X, B_O, M)``; ``beta`` sends a T-space ``(X, B, M)`` to
``O_B``. Morphisms on both sides are carried by plain maps ``f : X -> X'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import HypertopError, HypothesisError, InternalConsistencyError
from .hypergen import (
    HyperTopology,
    b_of,
    generate_hypertopology,
    is_tychonoff_type,
    m_closed_violation,
)
from .setcore import (
    HyperSubset,
    Subset,
    SubsetFamily,
    Universe,
    check_same_universe,
    elements,
    intersection_closure,
    plus_mask,
)

__all__ = [
    "TSpace",
    "HTObject",
    "SpaceMap",
    "alpha",
    "beta",
    "pullback_plus",
    "is_ht_morphism",
    "is_th_morphism",
    "RoundtripReport",
    "functor_roundtrip_objects",
]


class TSpace:
    """A triple ``(X, B, M)`` with ``B`` ``M``-closed, ``X in B`` and ``B`` closed under intersections."""

    __slots__ = ("B", "M")

    def __init__(self, B: SubsetFamily, M: SubsetFamily, validate: bool = True):
        check_same_universe(B.universe, M.universe)
        self.B = B
        self.M = M
        if validate:
            self._validate()

    def _validate(self):
        u = self.universe
        if u.full not in self.B:
            raise HypertopError("T-space: X must belong to B")
        if set(intersection_closure(self.B.masks)) != set(self.B.masks):
            raise HypertopError("T-space: B must be closed under finite intersections")
        bad = m_closed_violation(self.B, self.M)
        if bad is not None:
            raise HypertopError(f"T-space: B is not M-closed, {set(elements(bad))} is M-covered but missing")

    @property
    def universe(self) -> Universe:
        return self.B.universe

    def __eq__(self, other):
        if not isinstance(other, TSpace):
            return NotImplemented
        return self.B == other.B and self.M == other.M

    def __hash__(self):
        return hash((self.B, self.M))

    def __repr__(self):
        return f"TSpace(n={self.universe.n}, B={self.B!r}, M={self.M!r})"


class HTObject:
    """A triple ``(X, M, O)`` with ``M`` natural and ``O`` of Tychonoff-type on ``M``."""

    __slots__ = ("O",)

    def __init__(self, O: HyperTopology, validate: bool = True):
        self.O = O
        if validate:
            if not O.family.is_natural:
                raise HypothesisError("HT objects need a natural family M")
            if not is_tychonoff_type(O):
                raise HypothesisError("HT objects need a topology of Tychonoff-type")

    @property
    def M(self) -> SubsetFamily:
        return self.O.family

    @property
    def universe(self) -> Universe:
        return self.O.universe

    def __eq__(self, other):
        if not isinstance(other, HTObject):
            return NotImplemented
        return self.O == other.O

    def __hash__(self):
        return hash(self.O)

    def __repr__(self):
        return f"HTObject(n={self.universe.n}, M={self.M!r}, |O|={len(self.O)})"


@dataclass(frozen=True)
class SpaceMap:
    """A total map ``f : {0..n-1} -> {0..n'-1}`` given by its values."""

    domain: Universe
    codomain: Universe
    image: tuple[int, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if len(self.image) != self.domain.n:
            raise HypertopError(f"map needs {self.domain.n} values, got {len(self.image)}")
        for y in self.image:
            if not isinstance(y, int) or not 0 <= y < self.codomain.n:
                raise HypertopError(f"map value {y!r} outside codomain of size {self.codomain.n}")

    @classmethod
    def identity(cls, u: Universe) -> SpaceMap:
        return cls(u, u, tuple(range(u.n)))

    @classmethod
    def constant(cls, domain: Universe, codomain: Universe, value: int) -> SpaceMap:
        return cls(domain, codomain, (value,) * domain.n)

    def image_mask(self, mask: int) -> int:
        out = 0
        for x in elements(mask):
            out |= 1 << self.image[x]
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for x, y in enumerate(self.image):
            if mask >> y & 1:
                out |= 1 << x
        return out

    def __call__(self, S: Subset) -> Subset:
        check_same_universe(S.universe, self.domain)
        return Subset(self.codomain, self.image_mask(S.mask))

    def preimage(self, S: Subset) -> Subset:
        check_same_universe(S.universe, self.codomain)
        return Subset(self.domain, self.preimage_mask(S.mask))


def alpha(obj: HTObject) -> TSpace:
    """``O -> (X, B_O, M)``."""
    B = b_of(obj.O)
    try:
        return TSpace(B, obj.M)
    except HypertopError as exc:
        raise InternalConsistencyError(f"alpha produced an invalid T-space: {exc}") from exc


def beta(ts: TSpace) -> HTObject:
    """``(X, B, M) -> O_B``; ``M`` must be natural."""
    if not ts.M.is_natural:
        raise HypothesisError("beta needs a natural family M")
    return HTObject(generate_hypertopology(ts.B, ts.M), validate=False)


def _image_violation(f: SpaceMap, M: SubsetFamily, M_prime: SubsetFamily) -> int | None:
    for m in M.masks:
        if f.image_mask(m) not in M_prime:
            return m
    return None


def _induced_preimage(f: SpaceMap, M: SubsetFamily, M_prime: SubsetFamily, hyper_mask: int) -> int:
    # f_m^{-1}(W) for W an index mask over M'
    out = 0
    for i, m in enumerate(M.masks):
        if hyper_mask >> M_prime.index(f.image_mask(m)) & 1:
            out |= 1 << i
    return out


def pullback_plus(f: SpaceMap, A_prime: Subset, M: SubsetFamily, M_prime: SubsetFamily):
    """Both sides of ``f_m^{-1}((A')+_{M'}) = (f^{-1}(A'))+_M``.

    Returns the pair of hyper-subsets of ``M``; they are always equal when
    ``f`` maps members of ``M`` into ``M'``.
    """
    check_same_universe(f.domain, M.universe)
    check_same_universe(f.codomain, M_prime.universe, A_prime.universe)
    bad = _image_violation(f, M, M_prime)
    if bad is not None:
        raise HypothesisError(f"f({set(elements(bad))}) is not a member of M'", witness=bad)
    left = _induced_preimage(f, M, M_prime, plus_mask(A_prime.mask, M_prime.masks))
    right = plus_mask(f.preimage_mask(A_prime.mask), M.masks)
    return HyperSubset(M, left), HyperSubset(M, right)


def is_ht_morphism(f: SpaceMap, src: HTObject, dst: HTObject) -> bool:
    """``f(M) <= M'`` and the induced ``f_m : (M, O) -> (M', O')`` is continuous."""
    check_same_universe(f.domain, src.universe)
    check_same_universe(f.codomain, dst.universe)
    if _image_violation(f, src.M, dst.M) is not None:
        return False
    return all(_induced_preimage(f, src.M, dst.M, w) in src.O.opens for w in dst.O.opens)


def is_th_morphism(f: SpaceMap, src: TSpace, dst: TSpace) -> bool:
    """``f(M) <= M'`` and ``f^{-1}(B') <= B``."""
    check_same_universe(f.domain, src.universe)
    check_same_universe(f.codomain, dst.universe)
    if _image_violation(f, src.M, dst.M) is not None:
        return False
    return all(f.preimage_mask(b) in src.B for b in dst.B.masks)


@dataclass
class RoundtripReport:
    n_limit: int
    tspaces_checked: int = 0
    objects_checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _default_families(n: int) -> list[SubsetFamily]:
    from .enumeration import named_family

    u = Universe(n)
    if n <= 2:
        base = u.singletons().masks
        rest = [m for m in range(1 << n) if m.bit_count() != 1]
        return [
            SubsetFamily(u, list(base) + [r for j, r in enumerate(rest) if pick >> j & 1])
            for pick in range(1 << len(rest))
        ]
    return [named_family(u, name) for name in ("natural-min", "fin2", "nonempty")]


def functor_roundtrip_objects(n_limit: int, families: Sequence[SubsetFamily] | None = None, caps=None) -> RoundtripReport:
    """Check ``alpha∘beta = id`` and ``beta∘alpha = id`` on everything enumerable.

    Without ``families``, every natural family is used for ``n <= 2`` and
    the three presets (singletons, nonempty sets of size at most 2, all
    nonempty sets) for larger ``n``. Tychonoff-type topologies are listed
    independently of T-spaces (plus-set mode), so the check is not circular.
    """
    from .enumeration import DEFAULT_CAPS, enumerate_hypertopologies, enumerate_tspaces

    caps = caps or DEFAULT_CAPS
    if n_limit > caps.n:
        from .errors import CapExceeded

        raise CapExceeded(f"round-trip check capped at n={caps.n}, got n={n_limit}")
    report = RoundtripReport(n_limit)
    if families is None:
        fams = [M for n in range(1, n_limit + 1) for M in _default_families(n)]
    else:
        fams = list(families)
    for M in fams:
        n = M.universe.n
        for ts in enumerate_tspaces(n, M, cap_n=caps.n):
            report.tspaces_checked += 1
            back = alpha(beta(ts))
            if back != ts:
                report.counterexamples.append(("alpha∘beta", ts, back))
        for O in enumerate_hypertopologies(n, M, mode="plus", caps=caps):
            report.objects_checked += 1
            obj = HTObject(O)
            back = beta(alpha(obj))
            if back != obj:
                report.counterexamples.append(("beta∘alpha", obj, back))
    return report
