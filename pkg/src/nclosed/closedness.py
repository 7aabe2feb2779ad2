"""Deciding n-closedness and everything it implies about cosets.

A subset D is n-closed when every product of n factors from D (order
matters, repetition allowed) stays in D. The engine decides this through
iterated product sets P_1 = D, P_{i+1} = P_i * D, which is equivalent to
tuple enumeration but polynomial; is_n_closed_oracle exists solely to
defend that equivalence in tests and the verification harness.

Internal identities that should hold by theorem are re-verified as the
operations run. Violations are recorded on the returned report (for
analyze_coset and extract_subgroup) or raised as TheoremViolation with a
replayable certificate (for the formula-backed operations); with a correct
engine none ever fires, and the harness treats any that does as a failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import (
    AlreadyClosed,
    BudgetExceeded,
    EmptySubset,
    NonCommutingCoset,
    NotNClosed,
    PrefixNotInD,
    RepInSubgroup,
    TheoremViolation,
)
from .groups import Element, FiniteGroup, FiniteSemigroup, same_structure
from .subsets import (
    GSubset,
    Subgroup,
    is_subgroup,
    translate_mask_left,
    translate_mask_right,
)
from .util import derived_rng, iter_bits

# exhaustive prefix-tuple sweeps cap out here; beyond it, seeded samples
TUPLE_SWEEP_BUDGET = 256
TUPLE_SAMPLES = 64

ORACLE_BUDGET = 200_000


def make_certificate(struct: FiniteSemigroup, claim: str, **fields) -> dict:
    """Self-contained record of a failed check: table included for replay."""
    cert = {
        "claim": claim,
        "group": struct.name,
        "labels": list(struct.labels),
        "table": struct.table_lists(),
    }
    cert.update(fields)
    return cert


# ---------------------------------------------------------------------------
# the decision engine


def _require_nonempty(d: GSubset) -> None:
    if d.mask == 0:
        raise EmptySubset("closedness is undefined for the empty subset")


def is_n_closed(d: GSubset, n: int) -> bool:
    """True iff the n-fold product set of D stays inside D."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _require_nonempty(d)
    struct = d.owner
    dmask = d.mask
    trans: list[int | None] = [None] * struct.order
    p = dmask
    for _ in range(n - 1):
        acc = 0
        for x in iter_bits(p):
            tm = trans[x]
            if tm is None:
                tm = trans[x] = translate_mask_left(struct, x, dmask)
            acc |= tm
        p = acc
    return p & ~dmask == 0


def n_closed_witness(d: GSubset, n: int) -> list[int] | None:
    """A length-n index tuple whose product escapes D, or None if n-closed."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _require_nonempty(d)
    struct = d.owner
    dmask = d.mask
    dids = d.indices()
    layers: list[dict[int, tuple[int, int] | None]] = [{i: None for i in dids}]
    for _ in range(n - 1):
        new: dict[int, tuple[int, int]] = {}
        for p in layers[-1]:
            row = struct.row(p)
            for q in dids:
                r = row[q]
                if r not in new:
                    new[r] = (p, q)
        layers.append(new)
    bad = next((r for r in sorted(layers[-1]) if not dmask >> r & 1), None)
    if bad is None:
        return None
    path = []
    cur = bad
    for depth in range(n - 1, 0, -1):
        prev, last = layers[depth][cur]  # type: ignore[misc]
        path.append(last)
        cur = prev
    path.append(cur)
    path.reverse()
    return path


def is_n_closed_oracle(d: GSubset, n: int, budget: int = ORACLE_BUDGET) -> bool:
    """Same contract as is_n_closed, by explicit enumeration of all |D|^n tuples."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _require_nonempty(d)
    ids = d.indices()
    if len(ids) ** n > budget:
        raise BudgetExceeded(f"|D|^n = {len(ids)}^{n} exceeds budget {budget}")
    rows = d.owner._rows
    dmask = d.mask
    for tup in itertools.product(ids, repeat=n):
        p = tup[0]
        for q in tup[1:]:
            p = rows[p][q]
        if not dmask >> p & 1:
            return False
    return True


def least_closed_scan(d: GSubset, n_max: int | None = None) -> int | None:
    """Least n in [2, n_max] with D n-closed, else None (absent up to bound)."""
    _require_nonempty(d)
    struct = d.owner
    if n_max is None:
        n_max = 2 * struct.order + 1
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    dmask = d.mask
    trans: list[int | None] = [None] * struct.order
    p = dmask
    for n in range(2, n_max + 1):
        acc = 0
        for x in iter_bits(p):
            tm = trans[x]
            if tm is None:
                tm = trans[x] = translate_mask_left(struct, x, dmask)
            acc |= tm
        p = acc
        if p & ~dmask == 0:
            return n
    return None


# ---------------------------------------------------------------------------
# coset analysis


def least_exponent(a: Element, h: Subgroup) -> int:
    """Least t >= 1 with a^t in H; t >= 2 whenever a is outside H."""
    same_structure(a.owner, h.owner)
    g = h.owner
    if a.index in h:
        raise RepInSubgroup(f"{a.label} lies in the subgroup")
    hmask = h.mask
    x = a.index
    t = 1
    while not hmask >> x & 1:
        x = g.mul(x, a.index)
        t += 1
    return t


@dataclass(frozen=True)
class CosetReport:
    """Full analysis of one left coset L = a*H."""

    rep: Element
    subgroup: Subgroup
    commutes: bool
    least_exponent: int
    least_closedness: int | None
    spectrum_step: int | None
    violations: tuple[dict, ...] = ()


def _prefix_tuples(ids: Sequence[int], length: int, rng) -> list[tuple[int, ...]]:
    if len(ids) ** length <= TUPLE_SWEEP_BUDGET:
        return list(itertools.product(ids, repeat=length))
    return [tuple(rng.choice(ids) for _ in range(length))
            for _ in range(TUPLE_SAMPLES)]


def analyze_coset(a: Element, h: Subgroup, *, seed: int = 0) -> CosetReport:
    """Commuting flag, least exponent t, and least closedness t+1 of a*H.

    While computing, re-verifies that every b in L translates H onto L from
    both sides, and that length-(t-1) prefix products from L map L back onto
    H; failures are recorded as certificates on the report.
    """
    same_structure(a.owner, h.owner)
    g = h.owner
    if not isinstance(g, FiniteGroup):
        raise TypeError("analyze_coset requires a group-owned subgroup")
    if a.index in h:
        raise RepInSubgroup(f"representative {a.label} lies in the subgroup")
    lmask = translate_mask_left(g, a.index, h.mask)
    commutes = lmask == translate_mask_right(g, h.mask, a.index)
    t = least_exponent(a, h)
    violations: list[dict] = []
    least_closedness = None
    if commutes:
        least_closedness = t + 1
        h_labels = [g.labels[i] for i in iter_bits(h.mask)]
        coset_labels = [g.labels[i] for i in iter_bits(lmask)]
        for b in iter_bits(lmask):
            if (translate_mask_left(g, b, h.mask) != lmask
                    or translate_mask_right(g, h.mask, b) != lmask):
                violations.append(make_certificate(
                    g, "coset-translate", subgroup=h_labels, rep=a.label,
                    witness=g.labels[b],
                    detail="b*H = H*b = L fails for b in L"))
        shift = g.pow(a.index, t - 1)
        if (translate_mask_left(g, shift, lmask) != h.mask
                or translate_mask_right(g, lmask, shift) != h.mask):
            violations.append(make_certificate(
                g, "coset-shift", subgroup=h_labels, rep=a.label,
                n=t + 1, detail="a^(k-2)*L = L*a^(k-2) = H fails"))
        lids = list(iter_bits(lmask))
        rng = derived_rng(seed, "coset-prefix", g.name, h.mask, a.index)
        for tup in _prefix_tuples(lids, t - 1, rng):
            p = tup[0]
            for q in tup[1:]:
                p = g.mul(p, q)
            if (translate_mask_left(g, p, lmask) != h.mask
                    or translate_mask_right(g, lmask, p) != h.mask):
                violations.append(make_certificate(
                    g, "coset-prefix", subgroup=h_labels, rep=a.label,
                    subset=coset_labels, witness=[g.labels[i] for i in tup],
                    detail="prefix product fails to map L back onto H"))
    return CosetReport(
        rep=a,
        subgroup=h,
        commutes=commutes,
        least_exponent=t,
        least_closedness=least_closedness,
        spectrum_step=t if commutes else None,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class SpectrumDescription:
    """All m for which a commuting coset is m-closed: {c*step + 1 : c >= 1}."""

    step: int
    offset: int
    verified_up_to: int

    def contains(self, m: int) -> bool:
        return m >= 2 and (m - self.offset) % self.step == 0


def closedness_spectrum(a: Element, h: Subgroup, verify_up_to: int = 20) -> SpectrumDescription:
    """Spectrum of a*H with the predicate checked against the engine."""
    report = analyze_coset(a, h)
    if not report.commutes:
        raise NonCommutingCoset(f"{a.label}*H != H*{a.label}")
    g = h.owner
    t = report.least_exponent
    coset = translate_mask_left(g, a.index, h.mask)
    subset = GSubset(g, coset)
    spectrum = SpectrumDescription(step=t, offset=1, verified_up_to=verify_up_to)
    for m in range(2, verify_up_to + 1):
        if is_n_closed(subset, m) != spectrum.contains(m):
            raise TheoremViolation(
                f"spectrum predicate disagrees with the engine at m={m}",
                make_certificate(g, "spectrum", subgroup=h.carrier.labels(),
                                 rep=a.label, n=m, detail="step predicate mismatch"))
    return spectrum


def least_power_exponent(a: Element, h: Subgroup, m: int) -> int:
    """Least c with (a^m)^c in H, by the formula c = t/gcd(m, t).

    t is the least positive exponent landing a in H. The formula value is
    checked against a direct search, and the divisibility pattern
    (a^m)^f in H iff c | f is checked for f up to 2t.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    g = h.owner
    t = least_exponent(a, h)
    c = t // gcd(m, t)
    base = g.pow(a.index, m)
    hmask = h.mask
    x = base
    direct = 1
    while not hmask >> x & 1:
        x = g.mul(x, base)
        direct += 1
    if direct != c:
        raise TheoremViolation(
            f"gcd formula gives c={c} but direct search found {direct}",
            make_certificate(g, "power-exponent", subgroup=h.carrier.labels(),
                             rep=a.label, m=m, n=c, detail=f"direct search: {direct}"))
    x = g.identity
    for f in range(1, 2 * t + 1):
        x = g.mul(x, base)
        if (hmask >> x & 1 == 1) != (f % c == 0):
            raise TheoremViolation(
                f"divisibility pattern fails at f={f}",
                make_certificate(g, "power-exponent", subgroup=h.carrier.labels(),
                                 rep=a.label, m=m, n=f, detail="c | f pattern mismatch"))
    return c


def power_coset_closedness(a: Element, h: Subgroup, m: int) -> tuple[GSubset, int]:
    """The coset a^m*H with its least closedness (t/gcd(m,t)) + 1.

    Requires a commuting representative outside H. The claimed closedness
    is confirmed by the engine, minimality is confirmed by scan when a^m is
    outside H, and the full pattern "f-closed iff f = b*c + 1" is checked
    up to f = 3c + 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    g = h.owner
    report = analyze_coset(a, h)
    if not report.commutes:
        raise NonCommutingCoset(f"{a.label}*H != H*{a.label}")
    t = report.least_exponent
    c = t // gcd(m, t)
    am = g.pow(a.index, m)
    coset = GSubset(g, translate_mask_left(g, am, h.mask))
    cert_base = dict(subgroup=h.carrier.labels(), rep=a.label, m=m)
    if not is_n_closed(coset, c + 1):
        raise TheoremViolation(
            f"a^{m}*H is not {c + 1}-closed",
            make_certificate(g, "power-coset", subset=coset.labels(),
                             n=c + 1, **cert_base))
    if not h.mask >> am & 1:
        scanned = least_closed_scan(coset, c + 1)
        if scanned != c + 1:
            raise TheoremViolation(
                f"least closedness of a^{m}*H is {scanned}, formula says {c + 1}",
                make_certificate(g, "power-coset", subset=coset.labels(),
                                 n=c + 1, detail=f"scan found {scanned}", **cert_base))
    for f in range(2, 3 * c + 2):
        if is_n_closed(coset, f) != ((f - 1) % c == 0):
            raise TheoremViolation(
                f"f-closedness pattern fails at f={f}",
                make_certificate(g, "power-coset", subset=coset.labels(),
                                 n=f, detail="f = b*c + 1 pattern mismatch", **cert_base))
    return coset, c + 1


# ---------------------------------------------------------------------------
# subgroup extraction


@dataclass(frozen=True)
class SubgroupExtraction:
    """Witness data recovering the subgroup behind an n-closed subset."""

    source: GSubset
    n: int
    subgroup: Subgroup
    shift_witness: Element
    coset_rep: Element
    violations: tuple[dict, ...] = ()


def extract_subgroup(d: GSubset, n: int, *, seed: int = 0) -> SubgroupExtraction:
    """Recover H = d^(n-2)*D from an n-closed, non-2-closed subset.

    Certifies that H is a subgroup, that D = b*H for the least b in D,
    and that the shift set is independent of the choice of d and of the
    (n-2)-tuple prefix (exhaustively for small D, seeded samples above the
    budget). Any failed identity lands on the report as a certificate.
    """
    if n < 3:
        raise ValueError(f"extraction requires n >= 3, got {n}")
    _require_nonempty(d)
    g = d.owner
    if not isinstance(g, FiniteGroup):
        raise TypeError("extract_subgroup requires a group-owned subset")
    if not is_n_closed(d, n):
        raise NotNClosed(f"subset is not {n}-closed")
    if is_n_closed(d, 2):
        raise AlreadyClosed("subset is 2-closed; extraction requires a non-subgroup")
    ids = d.indices()
    d0 = ids[0]
    shift = g.pow(d0, n - 2)
    hmask = translate_mask_left(g, shift, d.mask)
    subgroup_subset = GSubset(g, hmask)
    violations: list[dict] = []
    d_labels = d.labels()
    if not is_subgroup(subgroup_subset):
        violations.append(make_certificate(
            g, "extraction-subgroup", subset=d_labels, n=n,
            witness=g.labels[d0], detail="d^(n-2)*D failed the subgroup check"))
    b = d0
    if translate_mask_left(g, b, hmask) != d.mask:
        violations.append(make_certificate(
            g, "extraction-coset", subset=d_labels, n=n,
            witness=g.labels[b], detail="D != b*H for b in D"))
    for other in ids[1:]:
        if translate_mask_left(g, g.pow(other, n - 2), d.mask) != hmask:
            violations.append(make_certificate(
                g, "extraction-choice", subset=d_labels, n=n,
                witness=g.labels[other], detail="shift set depends on choice of d"))
    rng = derived_rng(seed, "extract-prefix", g.name, d.mask, n)
    for tup in _prefix_tuples(ids, n - 2, rng):
        p = tup[0]
        for q in tup[1:]:
            p = g.mul(p, q)
        if translate_mask_left(g, p, d.mask) != hmask:
            violations.append(make_certificate(
                g, "extraction-prefix", subset=d_labels, n=n,
                witness=[g.labels[i] for i in tup],
                detail="tuple prefix shift differs from d^(n-2)*D"))
    return SubgroupExtraction(
        source=d,
        n=n,
        subgroup=Subgroup(subgroup_subset, certified=not violations),
        shift_witness=Element(g, d0),
        coset_rep=Element(g, b),
        violations=tuple(violations),
    )


def semigroup_shift_2closed(d: GSubset, n: int, prefix: Sequence[Element]) -> tuple[GSubset, bool]:
    """Shift an n-closed semigroup subset by a prefix; report 2-closedness.

    A False second component would contradict the shift-set theorem and is
    treated as a violation by callers.
    """
    if n < 3:
        raise ValueError(f"shift requires n >= 3, got {n}")
    _require_nonempty(d)
    struct = d.owner
    if len(prefix) != n - 2:
        raise ValueError(f"prefix must have length n-2 = {n - 2}, got {len(prefix)}")
    same_structure(struct, *(x.owner for x in prefix))
    for x in prefix:
        if x.index not in d:
            raise PrefixNotInD(f"prefix element {x.label} is not in the subset")
    if not is_n_closed(d, n):
        raise NotNClosed(f"subset is not {n}-closed")
    p = prefix[0].index
    for x in prefix[1:]:
        p = struct.mul(p, x.index)
    shifted = GSubset(struct, translate_mask_left(struct, p, d.mask))
    return shifted, is_n_closed(shifted, 2)
