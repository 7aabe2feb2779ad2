"""Subsets, subgroups, and cosets of a fixed finite group.

Subsets are bitmasks over element indices, so membership is O(1) and a
product set is a union of precomputed row-translate masks. Everything here
is immutable after construction and pure, so sweeps can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownLabel
from .groups import Element, FiniteGroup, FiniteSemigroup, same_structure
from .util import iter_bits


class GSubset:
    """Membership bitmap over one structure's element indices."""

    __slots__ = ("owner", "mask")

    def __init__(self, owner: FiniteSemigroup, mask: int):
        if not 0 <= mask < (1 << owner.order):
            raise ValueError(f"mask {mask:#x} out of range for order {owner.order}")
        self.owner = owner
        self.mask = mask

    @classmethod
    def from_indices(cls, owner: FiniteSemigroup, indices: Iterable[int]) -> "GSubset":
        m = 0
        for i in indices:
            if not 0 <= i < owner.order:
                raise ValueError(f"index {i} out of range for {owner!r}")
            m |= 1 << i
        return cls(owner, m)

    @classmethod
    def from_labels(cls, owner: FiniteSemigroup, labels: Iterable[str]) -> "GSubset":
        ids = []
        for s in labels:
            i = owner.index_of_label(s)
            if i is None:
                raise UnknownLabel(s)
            ids.append(i)
        return cls.from_indices(owner, ids)

    @classmethod
    def full(cls, owner: FiniteSemigroup) -> "GSubset":
        return cls(owner, (1 << owner.order) - 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def indices(self) -> list[int]:
        return list(iter_bits(self.mask))

    def labels(self) -> list[str]:
        return [self.owner.labels[i] for i in iter_bits(self.mask)]

    def elements(self) -> list[Element]:
        return [Element(self.owner, i) for i in iter_bits(self.mask)]

    def __contains__(self, item) -> bool:
        if isinstance(item, Element):
            same_structure(self.owner, item.owner)
            item = item.index
        return bool(self.mask >> item & 1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GSubset) and other.owner is self.owner
                and other.mask == self.mask)

    def __hash__(self) -> int:
        return hash((id(self.owner), self.mask))

    def __repr__(self):
        return "{" + ", ".join(self.labels()) + "}"


@dataclass(frozen=True)
class Subgroup:
    """A subset that passed is_subgroup; certified records that evidence."""

    carrier: GSubset
    certified: bool = True

    @classmethod
    def from_indices(cls, owner: FiniteGroup, indices: Iterable[int]) -> "Subgroup":
        carrier = GSubset.from_indices(owner, indices)
        if not is_subgroup(carrier):
            raise ValueError(f"{carrier!r} is not a subgroup of {owner.name}")
        return cls(carrier)

    @classmethod
    def from_labels(cls, owner: FiniteGroup, labels: Iterable[str]) -> "Subgroup":
        carrier = GSubset.from_labels(owner, labels)
        if not is_subgroup(carrier):
            raise ValueError(f"{carrier!r} is not a subgroup of {owner.name}")
        return cls(carrier)

    @property
    def owner(self) -> FiniteGroup:
        return self.carrier.owner  # type: ignore[return-value]

    @property
    def mask(self) -> int:
        return self.carrier.mask

    @property
    def order(self) -> int:
        return self.carrier.size

    def __contains__(self, item) -> bool:
        return item in self.carrier

    def __repr__(self):
        return f"Subgroup{self.carrier!r}"


@dataclass(frozen=True)
class CosetPartition:
    """All left cosets of a subgroup, representatives at least index."""

    subgroup: Subgroup
    cosets: tuple[GSubset, ...]
    representatives: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.cosets)


# ---------------------------------------------------------------------------
# mask-level primitives (shared with the closedness engine)


def translate_mask_left(struct: FiniteSemigroup, x: int, mask: int) -> int:
    row = struct.row(x)
    out = 0
    for b in iter_bits(mask):
        out |= 1 << row[b]
    return out


def translate_mask_right(struct: FiniteSemigroup, mask: int, x: int) -> int:
    rows = struct._rows
    out = 0
    for b in iter_bits(mask):
        out |= 1 << rows[b][x]
    return out


def product_mask(struct: FiniteSemigroup, amask: int, bmask: int) -> int:
    out = 0
    for a in iter_bits(amask):
        out |= translate_mask_left(struct, a, bmask)
    return out


# ---------------------------------------------------------------------------
# operations


def product_set(a: GSubset, b: GSubset) -> GSubset:
    """{x*y : x in A, y in B}."""
    same_structure(a.owner, b.owner)
    return GSubset(a.owner, product_mask(a.owner, a.mask, b.mask))


def translate(x: Element, a: GSubset, side: str = "left") -> GSubset:
    """x*A (left) or A*x (right)."""
    same_structure(x.owner, a.owner)
    if side == "left":
        return GSubset(a.owner, translate_mask_left(a.owner, x.index, a.mask))
    if side == "right":
        return GSubset(a.owner, translate_mask_right(a.owner, a.mask, x.index))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def is_subgroup(a: GSubset) -> bool:
    """Nonempty, contains the identity, closed under product and inverse."""
    g = a.owner
    if not isinstance(g, FiniteGroup):
        raise TypeError("is_subgroup requires a group-owned subset")
    mask = a.mask
    if mask == 0 or not mask >> g.identity & 1:
        return False
    ids = list(iter_bits(mask))
    for x in ids:
        if not mask >> g.inv(x) & 1:
            return False
        row = g.row(x)
        for y in ids:
            if not mask >> row[y] & 1:
                return False
    return True


def closure_mask(struct: FiniteSemigroup, seeds: Iterable[int]) -> int:
    """Least product-closed subset containing the seeds."""
    mask = 0
    members: list[int] = []
    pending: list[int] = []

    def add(v: int) -> None:
        nonlocal mask
        bit = 1 << v
        if not mask & bit:
            mask |= bit
            members.append(v)
            pending.append(v)

    for s in seeds:
        add(s)
    rows = struct._rows
    while pending:
        x = pending.pop()
        rx = rows[x]
        for y in list(members):
            add(rx[y])
            add(rows[y][x])
    return mask


def generated_subgroup(gens: Sequence[Element]) -> Subgroup:
    """Least subgroup containing the generators (closure to fixpoint)."""
    if not gens:
        raise ValueError("generator list must be nonempty")
    g = gens[0].owner
    if not isinstance(g, FiniteGroup):
        raise TypeError("generated_subgroup requires group elements")
    same_structure(g, *(x.owner for x in gens))
    mask = closure_mask(g, [g.identity] + [x.index for x in gens])
    carrier = GSubset(g, mask)
    return Subgroup(carrier, certified=is_subgroup(carrier))


def left_cosets(h: Subgroup) -> CosetPartition:
    """Partition of G into left cosets xH, ordered by least representative."""
    g = h.owner
    covered = 0
    cosets = []
    reps = []
    for x in range(g.order):
        if covered >> x & 1:
            continue
        cm = translate_mask_left(g, x, h.mask)
        cosets.append(GSubset(g, cm))
        reps.append(x)
        covered |= cm
    return CosetPartition(h, tuple(cosets), tuple(reps))


def index(h: Subgroup) -> int:
    """Number of distinct left cosets of H."""
    return h.owner.order // h.order


def is_normal_classic(h: Subgroup) -> bool:
    """Conjugation-sweep normality: g*x*g^-1 in H for all g in G, x in H."""
    g = h.owner
    mask = h.mask
    rows = g._rows
    hs = list(iter_bits(mask))
    for a in range(g.order):
        ra = rows[a]
        ai = g.inv(a)
        for x in hs:
            if not mask >> rows[ra[x]][ai] & 1:
                return False
    return True


def coset_commutes(a: Element, h: Subgroup) -> bool:
    """aH = Ha as sets."""
    same_structure(a.owner, h.owner)
    g = h.owner
    return (translate_mask_left(g, a.index, h.mask)
            == translate_mask_right(g, h.mask, a.index))


def conjugation_witness(h: Subgroup):
    """(g, x) with g*x*g^-1 outside H, or None if H is normal."""
    g = h.owner
    mask = h.mask
    rows = g._rows
    for a in range(g.order):
        ra = rows[a]
        ai = g.inv(a)
        for x in iter_bits(mask):
            if not mask >> rows[ra[x]][ai] & 1:
                return a, x
    return None


# ---------------------------------------------------------------------------
# subgroup enumeration (used by the verification harness)


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, found by breadth-first one-generator extension.

    Each subgroup <g1,...,gk> is reached through the chain of closures
    <g1> <= <g1,g2> <= ..., so the search is complete for any finite group;
    it is fast at the orders the harness enumerates (<= 24).
    """
    trivial = 1 << g.identity
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for smask in frontier:
            members = list(iter_bits(smask))
            for x in range(g.order):
                if smask >> x & 1:
                    continue
                m = closure_mask(g, members + [x])
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
        frontier = nxt
    masks = sorted(seen, key=lambda m: (m.bit_count(), m))
    return [Subgroup(GSubset(g, m)) for m in masks]


def proper_subgroups(g: FiniteGroup) -> list[Subgroup]:
    full = (1 << g.order) - 1
    return [s for s in all_subgroups(g) if s.mask != full]
