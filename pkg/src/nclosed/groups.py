"""Cayley-table-backed finite groups and semigroups.

All structures live on element indices 0..order-1 with a dense
multiplication table; element arithmetic is table lookup, never recomputed.
Structures are immutable once validated and safe to share across workers.

The permutation composition convention throughout is "apply the right
factor first": (x*y) acts as x after y. Named constructors put the
identity at index 0.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    DuplicateLabel,
    GroupTooLarge,
    MixedStructures,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    TableFileError,
    UnsupportedParameter,
)

MAX_ORDER = 5040

# below this order the pure-Python triple sweep beats the numpy setup cost
_NUMPY_SWEEP_THRESHOLD = 64


# ---------------------------------------------------------------------------
# validation internals


def _normalize_rows(table) -> tuple[tuple[array, ...], int]:
    rows = []
    for row in table:
        try:
            rows.append(array("i", (int(v) for v in row)))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"table entries must be integers: {exc}") from None
    n = len(rows)
    if n == 0:
        raise ValueError("table must have side >= 1")
    if n > MAX_ORDER:
        raise GroupTooLarge(f"order {n} exceeds the cap of {MAX_ORDER}")
    for row in rows:
        if len(row) != n:
            raise ValueError("table must be square")
    return tuple(rows), n


def _closure_witness(rows, n):
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                return (i, j, v)
    return None


def _assoc_witness_python(rows, n):
    rng = range(n)
    for x in rng:
        rx = rows[x]
        for y in rng:
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in rng:
                if rxy[z] != rx[ry[z]]:
                    return (x, y, z)
    return None


def _assoc_witness_numpy(rows, n):
    t = np.asarray([list(r) for r in rows], dtype=np.int16 if n < 2 ** 15 else np.int32)
    flat = t.reshape(-1)
    block = max(1, (1 << 24) // (n * n))
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        xs = np.arange(lo, hi)
        lhs = t[t[xs].reshape(-1)].reshape(hi - lo, n, n)
        rhs = t[xs][:, flat].reshape(hi - lo, n, n)
        bad = lhs != rhs
        if bad.any():
            i, y, z = (int(v) for v in np.argwhere(bad)[0])
            return (lo + i, y, z)
    return None


def _assoc_witness(rows, n):
    if n <= _NUMPY_SWEEP_THRESHOLD:
        return _assoc_witness_python(rows, n)
    return _assoc_witness_numpy(rows, n)


def _find_identity(rows, n):
    for e in range(n):
        row = rows[e]
        if all(row[x] == x for x in range(n)) and all(rows[x][e] == x for x in range(n)):
            return e
    return None


def _find_inverses(rows, n, identity):
    inv = array("i", [0]) * n
    for x in range(n):
        row = rows[x]
        for y in range(n):
            if row[y] == identity and rows[y][x] == identity:
                inv[x] = y
                break
        else:
            raise NoInverse(x)
    return inv


def _check_labels(labels, n) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise ValueError(f"got {len(labels)} labels for order {n}")
    seen = set()
    for s in labels:
        if s in seen:
            raise DuplicateLabel(s)
        seen.add(s)
    return labels


# ---------------------------------------------------------------------------
# structures


class FiniteSemigroup:
    """Associative magma on indices 0..order-1; no identity required.

    Build through validate_semigroup_table (or validate_cayley_table for
    groups); the raw constructor trusts its arguments.
    """

    kind = "semigroup"

    def __init__(self, rows, labels, name="semigroup"):
        self.order: int = len(rows)
        self._rows = rows
        self.labels: tuple[str, ...] = labels
        self.name: str = name
        self._label_index = {s: i for i, s in enumerate(labels)}

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def row(self, a: int):
        return self._rows[a]

    def table_lists(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def index_of_label(self, label: str) -> int | None:
        return self._label_index.get(label)

    def element(self, i: int) -> "Element":
        return Element(self, i)

    def elements(self) -> list["Element"]:
        return [Element(self, i) for i in range(self.order)]

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} order {self.order}>"


class FiniteGroup(FiniteSemigroup):
    """Validated finite group: adds identity, inverses, powers, orders."""

    kind = "group"

    def __init__(self, rows, labels, identity, inverses, name="group",
                 perm_degree=None, perms=None):
        super().__init__(rows, labels, name)
        self.identity: int = identity
        self._inv = inverses
        # permutation metadata, set for symmetric / perm-generated groups so
        # cycle notation can be resolved against this group's elements
        self.perm_degree: int | None = perm_degree
        self._perms: tuple[tuple[int, ...], ...] | None = perms
        self._perm_index = {p: i for i, p in enumerate(perms)} if perms else None

    def inv(self, a: int) -> int:
        return self._inv[a]

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            raise ValueError("exponent must be nonnegative")
        result = self.identity
        base = a
        while m:
            if m & 1:
                result = self._rows[result][base]
            base = self._rows[base][base]
            m >>= 1
        return result

    def order_of(self, a: int) -> int:
        m, x = 1, a
        while x != self.identity:
            x = self._rows[x][a]
            m += 1
        return m

    @property
    def identity_element(self) -> "Element":
        return Element(self, self.identity)

    def permutation_of(self, i: int) -> tuple[int, ...] | None:
        return self._perms[i] if self._perms else None

    def index_of_permutation(self, perm: tuple[int, ...]) -> int | None:
        return self._perm_index.get(perm) if self._perm_index else None

    def is_abelian(self) -> bool:
        rows = self._rows
        return all(rows[a][b] == rows[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))


def same_structure(*objs) -> None:
    """Reject operands bound to different structures (identity semantics)."""
    first = objs[0]
    for other in objs[1:]:
        if other is not first:
            raise MixedStructures(
                f"operands belong to different structures ({first!r} vs {other!r})")


@dataclass(frozen=True)
class Element:
    """One element of a specific group or semigroup, by index."""

    owner: FiniteSemigroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.owner.order:
            raise ValueError(f"index {self.index} out of range for {self.owner!r}")

    @property
    def label(self) -> str:
        return self.owner.labels[self.index]

    def __mul__(self, other: "Element") -> "Element":
        same_structure(self.owner, other.owner)
        return Element(self.owner, self.owner.mul(self.index, other.index))

    def __pow__(self, m: int) -> "Element":
        return power(self, m)

    def inverse(self) -> "Element":
        return inverse(self)

    def order(self) -> int:
        return element_order(self)

    def __repr__(self):
        return f"<{self.label} in {self.owner.name}>"


# spec-level element arithmetic ---------------------------------------------


def mul(x: Element, y: Element) -> Element:
    return x * y


def inverse(x: Element) -> Element:
    if not isinstance(x.owner, FiniteGroup):
        raise TypeError("inverse requires a group element")
    return Element(x.owner, x.owner.inv(x.index))


def power(x: Element, m: int) -> Element:
    if not isinstance(x.owner, FiniteGroup):
        raise TypeError("power requires a group element")
    return Element(x.owner, x.owner.pow(x.index, m))


def element_order(x: Element) -> int:
    if not isinstance(x.owner, FiniteGroup):
        raise TypeError("element order requires a group element")
    return x.owner.order_of(x.index)


# ---------------------------------------------------------------------------
# factories


def validate_semigroup_table(table, labels=None, name="semigroup") -> FiniteSemigroup:
    """Check closure and associativity exhaustively; return the semigroup."""
    rows, n = _normalize_rows(table)
    labels = _check_labels(labels, n)
    witness = _closure_witness(rows, n)
    if witness:
        raise NotClosed(*witness)
    witness = _assoc_witness(rows, n)
    if witness:
        raise NotAssociative(witness)
    return FiniteSemigroup(rows, labels, name)


def validate_cayley_table(table, labels=None, name="group") -> FiniteGroup:
    """Check all group axioms exhaustively (O(order^3) associativity sweep).

    Locates the identity and the full inverse table; raises NotClosed,
    NotAssociative (with witness triple), NoIdentity, NoInverse (with
    witness element), or DuplicateLabel.
    """
    rows, n = _normalize_rows(table)
    labels = _check_labels(labels, n)
    witness = _closure_witness(rows, n)
    if witness:
        raise NotClosed(*witness)
    witness = _assoc_witness(rows, n)
    if witness:
        raise NotAssociative(witness)
    identity = _find_identity(rows, n)
    if identity is None:
        raise NoIdentity()
    inverses = _find_inverses(rows, n, identity)
    return FiniteGroup(rows, labels, identity, inverses, name)


def _cycle_label(perm: tuple[int, ...]) -> str:
    """Canonical cycle notation on 1-based points; identity prints as 'e'."""
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "e"


def _symmetric_rows(perms: Sequence[tuple[int, ...]], degree: int):
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    if n <= 150:
        return tuple(
            array("i", (index[tuple(p[q[i]] for i in range(degree))] for q in perms))
            for p in perms
        )
    # vectorized: encode one-line notation in base `degree`, compose via lut
    arr = np.array(perms, dtype=np.int64)
    powers = degree ** np.arange(degree, dtype=np.int64)
    lut = np.full(degree ** degree, -1, dtype=np.int64)
    lut[arr @ powers] = np.arange(n)
    rows = []
    for i in range(n):
        comp = arr[i][arr]  # comp[j] = one-line form of perms[i] after perms[j]
        rows.append(array("i", lut[comp @ powers].tolist()))
    return tuple(rows)


def _build_symmetric(degree: int) -> FiniteGroup:
    perms = tuple(permutations(range(degree)))
    rows = _symmetric_rows(perms, degree)
    labels = tuple(_cycle_label(p) for p in perms)
    g = validate_cayley_table([list(r) for r in rows], labels, name=f"S{degree}")
    return FiniteGroup(g._rows, g.labels, g.identity, g._inv, f"S{degree}",
                       perm_degree=degree, perms=perms)


def _build_cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_cayley_table(table, [str(i) for i in range(n)], name=f"Z{n}")


def _build_dihedral(n: int) -> FiniteGroup:
    # indices 0..n-1 rotations r_i, n..2n-1 reflections s_i
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][j + n] = n + (i + j) % n
            table[i + n][j] = n + (i - j) % n
            table[i + n][j + n] = (i - j) % n
    labels = [f"r{i}" for i in range(n)] + [f"s{i}" for i in range(n)]
    return validate_cayley_table(table, labels, name=f"D{n}")


_QUAT_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _build_quaternion() -> FiniteGroup:
    # element = (axis, sign) with axes 0:"1" 1:"i" 2:"j" 3:"k"
    def code(axis, sign):
        return 2 * axis + (0 if sign > 0 else 1)

    def q_mul(a1, s1, a2, s2):
        if a1 == 0:
            return a2, s1 * s2
        if a2 == 0:
            return a1, s1 * s2
        if a1 == a2:
            return 0, -s1 * s2
        third = 6 - a1 - a2
        sign = 1 if (a1, a2) in ((1, 2), (2, 3), (3, 1)) else -1
        return third, s1 * s2 * sign

    table = [[0] * 8 for _ in range(8)]
    for i in range(8):
        a1, s1 = i // 2, 1 if i % 2 == 0 else -1
        for j in range(8):
            a2, s2 = j // 2, 1 if j % 2 == 0 else -1
            axis, sign = q_mul(a1, s1, a2, s2)
            table[i][j] = code(axis, sign)
    return validate_cayley_table(table, _QUAT_LABELS, name="Q8")


@lru_cache(maxsize=None)
def make_named(family: str, parameter: int) -> FiniteGroup:
    """Build a named family member: cyclic, symmetric, dihedral, quaternion.

    Element 0 is the identity. Cyclic labels are residues ascending,
    symmetric elements follow lexicographic one-line order with cycle
    labels, dihedral lists rotations then reflections, quaternion uses the
    unit labels 1, -1, i, -i, j, -j, k, -k.
    """
    fam = family.lower()
    if fam == "cyclic":
        if parameter < 1:
            raise UnsupportedParameter(f"cyclic order must be >= 1, got {parameter}")
        if parameter > MAX_ORDER:
            raise GroupTooLarge(f"cyclic order {parameter} exceeds cap {MAX_ORDER}")
        return _build_cyclic(parameter)
    if fam == "symmetric":
        if not 1 <= parameter <= 6:
            raise UnsupportedParameter(f"symmetric degree must be in 1..6, got {parameter}")
        return _build_symmetric(parameter)
    if fam == "dihedral":
        if parameter < 3:
            raise UnsupportedParameter(f"dihedral parameter must be >= 3, got {parameter}")
        if 2 * parameter > MAX_ORDER:
            raise GroupTooLarge(f"dihedral order {2 * parameter} exceeds cap {MAX_ORDER}")
        return _build_dihedral(parameter)
    if fam == "quaternion":
        if parameter != 8:
            raise UnsupportedParameter("quaternion group is only supported at order 8")
        return _build_quaternion()
    raise UnsupportedParameter(f"unknown family {family!r}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Componentwise product; labels are pairs of the factor labels."""
    order = g1.order * g2.order
    if order > MAX_ORDER:
        raise GroupTooLarge(
            f"product order {order} exceeds cap {MAX_ORDER}")
    n2 = g2.order
    r1, r2 = g1._rows, g2._rows
    labels = [f"({la},{lb})" for la in g1.labels for lb in g2.labels]
    name = f"{g1.name}x{g2.name}"
    if order <= 64:
        table = [[r1[a1][a2] * n2 + r2[b1][b2]
                  for a2 in range(g1.order) for b2 in range(n2)]
                 for a1 in range(g1.order) for b1 in range(n2)]
        return validate_cayley_table(table, labels, name=name)
    # products of validated groups are valid by construction; above the
    # revalidation threshold, build identity and inverses componentwise
    rows = tuple(
        array("i", (r1[a1][a2] * n2 + r2[b1][b2]
                    for a2 in range(g1.order) for b2 in range(n2)))
        for a1 in range(g1.order) for b1 in range(n2))
    identity = g1.identity * n2 + g2.identity
    inverses = array("i", (g1.inv(i // n2) * n2 + g2.inv(i % n2) for i in range(order)))
    return FiniteGroup(rows, tuple(labels), identity, inverses, name)


# ---------------------------------------------------------------------------
# JSON Cayley-table files: {"labels": [...], "table": [[...], ...]}


def load_cayley_table(path) -> FiniteGroup:
    """Load and fully validate a Cayley-table JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise TableFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise TableFileError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "table" not in data:
        raise TableFileError(f"{path}: expected an object with a 'table' key")
    labels = data.get("labels")
    try:
        return validate_cayley_table(data["table"], labels, name=f"table:{path}")
    except (ValueError, TypeError) as exc:
        raise TableFileError(f"{path}: {exc}") from None


def dump_cayley_table(struct: FiniteSemigroup, path) -> None:
    payload = {"labels": list(struct.labels), "table": struct.table_lists()}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True))


def structure_orders(group: FiniteGroup) -> dict[int, int]:
    """Histogram of element orders, an order-multiset isomorphism heuristic."""
    hist: dict[int, int] = {}
    for i in range(group.order):
        k = group.order_of(i)
        hist[k] = hist.get(k, 0) + 1
    return hist
