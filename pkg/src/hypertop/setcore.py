"""Finite ground sets, subsets and families of subsets.

Everything is stored as Python ints used as bit sets: a subset of
``X = {0..n-1}`` is a mask with bit ``i`` set when ``i`` is a member, and a
subset of a family ``M`` (a "hyper-subset") is a mask over the positions of
``M``'s canonical ordering. The wrapper classes below add universe checks and
readable reprs on top of the raw masks; the hot loops elsewhere in the
package work on ``family.masks`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import HypertopError, UniverseMismatch

__all__ = [
    "Universe",
    "Subset",
    "SubsetFamily",
    "HyperSubset",
    "PlusImage",
    "plus_set",
    "family_plus",
    "close_under",
    "elements",
    "mask_of",
    "canonical_key",
    "union_closure",
    "intersection_closure",
    "plus_mask",
    "check_same_universe",
]


# -- raw mask helpers ---------------------------------------------------------


def elements(mask: int) -> tuple[int, ...]:
    """Ascending element ids of a bit mask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << x
    return m


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on element ids."""
    return (mask.bit_count(), elements(mask))


def union_closure(masks: Iterable[int], include_empty: bool = True) -> frozenset[int]:
    """All unions of subfamilies of ``masks``.

    The empty union (0) is included when ``include_empty`` is true.
    """
    result = {0}
    for b in set(masks):
        if b in result:
            continue
        result |= {r | b for r in result}
    if not include_empty:
        result.discard(0)
        result |= {b for b in masks if b == 0}
    return frozenset(result)


def intersection_closure(masks: Iterable[int]) -> frozenset[int]:
    """All intersections of nonempty finite subfamilies of ``masks``."""
    result: set[int] = set()
    for b in set(masks):
        if b in result:
            continue
        result |= {r & b for r in result}
        result.add(b)
    return frozenset(result)


def plus_mask(a: int, m_masks: Sequence[int]) -> int:
    """Index mask of ``{M' in M : M' <= A}``."""
    out = 0
    for i, m in enumerate(m_masks):
        if m & ~a == 0:
            out |= 1 << i
    return out


# -- value types --------------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    """The ground set ``{0, ..., n-1}``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise HypertopError(f"universe size must be a positive integer, got {self.n!r}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def X(self) -> Subset:
        return Subset(self, self.full)

    def subset(self, members: Iterable[int] = ()) -> Subset:
        members = list(members)
        for x in members:
            if not isinstance(x, int) or not 0 <= x < self.n:
                raise HypertopError(f"element {x!r} outside universe of size {self.n}")
        return Subset(self, mask_of(members))

    def family(self, sets: Iterable[Iterable[int] | Subset]) -> SubsetFamily:
        masks = []
        for s in sets:
            if isinstance(s, Subset):
                check_same_universe(self, s.universe)
                masks.append(s.mask)
            else:
                masks.append(self.subset(s).mask)
        return SubsetFamily(self, masks)

    def power_set(self) -> SubsetFamily:
        return SubsetFamily(self, range(1 << self.n))

    def nonempty_subsets(self) -> SubsetFamily:
        return SubsetFamily(self, range(1, 1 << self.n))

    def singletons(self) -> SubsetFamily:
        return SubsetFamily(self, [1 << i for i in range(self.n)])

    def fin(self, k: int) -> SubsetFamily:
        """All subsets with at most ``k`` elements (``Fin_k(X)``, includes the empty set)."""
        return SubsetFamily(self, [m for m in range(1 << self.n) if m.bit_count() <= k])


@dataclass(frozen=True)
class Subset:
    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe.n:
            raise HypertopError(f"mask {self.mask:#b} outside universe of size {self.universe.n}")

    @property
    def elements(self) -> tuple[int, ...]:
        return elements(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.universe.n and bool(self.mask >> x & 1)

    def _other(self, other: Subset) -> int:
        check_same_universe(self.universe, other.universe)
        return other.mask

    def __le__(self, other: Subset) -> bool:
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other: Subset) -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask & self._other(other))

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask | self._other(other))

    def __sub__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask & ~self._other(other))

    def complement(self) -> Subset:
        return Subset(self.universe, self.universe.full & ~self.mask)

    def sort_key(self):
        return canonical_key(self.mask)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


class SubsetFamily:
    """A duplicate-free family of subsets of one universe, in canonical order.

    Canonical order sorts by cardinality, then lexicographically on the
    ascending element ids, so ``{}, {0}, {1}, {0,1}, ...``.
    """

    __slots__ = ("universe", "masks", "_index")

    def __init__(self, universe: Universe, masks: Iterable[int]):
        uniq = set()
        for m in masks:
            if m < 0 or m >> universe.n:
                raise HypertopError(f"mask {m:#b} outside universe of size {universe.n}")
            uniq.add(m)
        self.universe = universe
        self.masks: tuple[int, ...] = tuple(sorted(uniq, key=canonical_key))
        self._index = {m: i for i, m in enumerate(self.masks)}

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def is_natural(self) -> bool:
        """Every singleton ``{x}`` is a member."""
        return all((1 << i) in self._index for i in range(self.universe.n))

    @property
    def contains_empty(self) -> bool:
        return 0 in self._index

    @property
    def full_hyper(self) -> int:
        """Index mask selecting every member."""
        return (1 << len(self.masks)) - 1

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return (Subset(self.universe, m) for m in self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, Subset):
            return item.universe == self.universe and item.mask in self._index
        return item in self._index

    def __getitem__(self, i: int) -> Subset:
        return Subset(self.universe, self.masks[i])

    def index(self, mask: int) -> int:
        return self._index[mask]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.universe == other.universe and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.universe.n, self.masks))

    def __le__(self, other: SubsetFamily) -> bool:
        check_same_universe(self.universe, other.universe)
        return all(m in other._index for m in self.masks)

    def union(self) -> Subset:
        u = 0
        for m in self.masks:
            u |= m
        return Subset(self.universe, u)

    def with_masks(self, masks: Iterable[int]) -> SubsetFamily:
        return SubsetFamily(self.universe, masks)

    def to_lists(self) -> list[list[int]]:
        return [list(elements(m)) for m in self.masks]

    def __repr__(self) -> str:
        return "[" + ", ".join("{" + ",".join(map(str, elements(m))) + "}" for m in self.masks) + "]"


@dataclass(frozen=True)
class HyperSubset:
    """A subset of the family ``family``, as an index mask over its canonical order."""

    family: SubsetFamily
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.family):
            raise HypertopError("hyper-subset indices out of range for its family")

    @property
    def members(self) -> tuple[Subset, ...]:
        return tuple(self.family[i] for i in elements(self.mask))

    @property
    def member_masks(self) -> tuple[int, ...]:
        return tuple(self.family.masks[i] for i in elements(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, item: Subset) -> bool:
        return item in self.family and bool(self.mask >> self.family.index(item.mask) & 1)

    def _other(self, other: HyperSubset) -> int:
        if other.family != self.family:
            raise UniverseMismatch("hyper-subsets of different families")
        return other.mask

    def __le__(self, other: HyperSubset) -> bool:
        return self.mask & ~self._other(other) == 0

    def __and__(self, other: HyperSubset) -> HyperSubset:
        return HyperSubset(self.family, self.mask & self._other(other))

    def __or__(self, other: HyperSubset) -> HyperSubset:
        return HyperSubset(self.family, self.mask | self._other(other))

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(s) for s in self.members) + "}"


def check_same_universe(*universes: Universe) -> None:
    first = universes[0]
    for u in universes[1:]:
        if u != first:
            raise UniverseMismatch(f"universe mismatch: n={first.n} vs n={u.n}")


# -- operations ---------------------------------------------------------------


def plus_set(A: Subset, M: SubsetFamily) -> HyperSubset:
    """``A+_M``: the members of ``M`` contained in ``A``."""
    check_same_universe(A.universe, M.universe)
    return HyperSubset(M, plus_mask(A.mask, M.masks))


@dataclass(frozen=True)
class PlusImage:
    images: tuple[HyperSubset, ...]
    provenance: dict

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)


def family_plus(F: SubsetFamily, M: SubsetFamily) -> PlusImage:
    """Apply :func:`plus_set` to every member of ``F``.

    Distinct members of ``F`` can share an image; ``images`` holds each image
    once (ordered by index mask) and ``provenance`` maps every input subset to
    its image.
    """
    check_same_universe(F.universe, M.universe)
    provenance = {S: plus_set(S, M) for S in F}
    seen = {}
    for h in provenance.values():
        seen.setdefault(h.mask, h)
    images = tuple(seen[k] for k in sorted(seen, key=canonical_key))
    return PlusImage(images, provenance)


def close_under(F: SubsetFamily, mode: str) -> SubsetFamily:
    """Smallest superfamily of ``F`` closed under finite intersections or unions.

    ``mode`` is ``"intersections"`` or ``"unions"``. Only nonempty
    subfamilies are combined, so the empty set or ``X`` appear only if they
    arise that way.
    """
    if len(F) == 0:
        raise HypertopError("close_under needs a nonempty family")
    if mode in ("intersections", "cap", "∩"):
        return F.with_masks(intersection_closure(F.masks))
    if mode in ("unions", "cup", "∪"):
        return F.with_masks(union_closure(F.masks, include_empty=False))
    raise HypertopError(f"unknown closure mode {mode!r}")
