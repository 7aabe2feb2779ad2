from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nclosed.closedness import (
    analyze_coset,
    closedness_spectrum,
    extract_subgroup,
    is_n_closed,
    is_n_closed_oracle,
    least_closed_scan,
    least_exponent,
    least_power_exponent,
    n_closed_witness,
    power_coset_closedness,
    semigroup_shift_2closed,
)
from nclosed.errors import (
    AlreadyClosed,
    BudgetExceeded,
    EmptySubset,
    NonCommutingCoset,
    NotNClosed,
    PrefixNotInD,
    RepInSubgroup,
)
from nclosed.groups import Element, make_named
from nclosed.subsets import GSubset, Subgroup, is_subgroup, translate
from nclosed.verify import multiplicative_semigroup


def tuple_oracle(struct, ids, n):
    """Reference n-closedness: literally fold every ordered tuple."""
    members = set(ids)
    for tup in product(ids, repeat=n):
        p = tup[0]
        for q in tup[1:]:
            p = struct.mul(p, q)
        if p not in members:
            return False
    return True


class TestEngine:
    def test_z4_odd_residues(self, z4):
        d = GSubset.from_indices(z4, [1, 3])
        assert tuple_oracle(z4, [1, 3], 3) is True
        assert is_n_closed(d, 3) is True
        assert is_n_closed(d, 2) is False

    def test_s3_coset_not_three_closed(self, s3):
        d = GSubset.from_labels(s3, ["(1 3)", "(1 2 3)"])
        assert tuple_oracle(s3, d.indices(), 3) is False
        assert is_n_closed(d, 3) is False
        witness = n_closed_witness(d, 3)
        p = witness[0]
        for q in witness[1:]:
            p = s3.mul(p, q)
        assert all(i in d for i in witness)
        assert p not in d

    def test_empty_subset_rejected(self, z4):
        with pytest.raises(EmptySubset):
            is_n_closed(GSubset(z4, 0), 3)

    def test_n_below_two_rejected(self, z4):
        with pytest.raises(ValueError):
            is_n_closed(GSubset.from_indices(z4, [0]), 1)

    def test_whole_group_closed_for_all_n(self, s3):
        g = GSubset.full(s3)
        for n in range(2, 8):
            assert is_n_closed(g, n)

    @settings(max_examples=100, deadline=None)
    @given(data=st.data())
    def test_two_closed_implies_n_closed(self, data, small_corpus):
        from nclosed.subsets import all_subgroups
        g = data.draw(st.sampled_from(small_corpus))
        h = data.draw(st.sampled_from(all_subgroups(g)))
        n = data.draw(st.integers(2, 8))
        assert is_n_closed(h.carrier, n)

    def test_two_closed_sub_semigroups_are_n_closed(self):
        m6 = multiplicative_semigroup(6)
        for mask in range(1, 1 << 6):
            d = GSubset(m6, mask)
            if not is_n_closed(d, 2):
                continue
            for n in range(3, 9):
                assert is_n_closed(d, n), (d.labels(), n)


class TestOracle:
    def test_z9_progression(self, z9):
        d = GSubset.from_indices(z9, [1, 4, 7])
        assert is_n_closed_oracle(d, 4) is True
        assert is_n_closed_oracle(d, 3) is False

    def test_singleton_order_plus_one(self, s3):
        a = s3.index_of_label("(1 2 3)")
        d = GSubset.from_indices(s3, [a])
        assert is_n_closed_oracle(d, 4) is True  # |a| = 3, so 4 = 3 + 1 works
        assert is_n_closed_oracle(d, 3) is False

    def test_budget(self, z12):
        d = GSubset.from_indices(z12, range(12))
        with pytest.raises(BudgetExceeded):
            is_n_closed_oracle(d, 6)

    @settings(max_examples=120, deadline=None)
    @given(data=st.data())
    def test_engine_agrees_with_oracle(self, data, small_corpus):
        g = data.draw(st.sampled_from(small_corpus))
        mask = data.draw(st.integers(1, (1 << g.order) - 1))
        d = GSubset(g, mask)
        n = data.draw(st.integers(2, 5))
        if d.size ** n > 50_000:
            n = 2
        assert is_n_closed(d, n) == is_n_closed_oracle(d, n)


class TestLeastClosedScan:
    def test_z4(self, z4):
        assert least_closed_scan(GSubset.from_indices(z4, [1, 3]), 10) == 3

    def test_s3_coset_absent(self, s3):
        d = GSubset.from_labels(s3, ["(1 3)", "(1 2 3)"])
        assert least_closed_scan(d, 12) is None

    def test_subgroup_scans_to_two(self, small_corpus):
        from nclosed.subsets import all_subgroups
        for g in small_corpus:
            for h in all_subgroups(g):
                assert least_closed_scan(h.carrier, 4) == 2

    def test_default_bound_is_twice_order_plus_one(self, z4):
        # {0,1} is never m-closed; the scan must terminate at the default bound
        assert least_closed_scan(GSubset.from_indices(z4, [0, 1])) is None


class TestAnalyzeCoset:
    def test_z9(self, z9):
        h = Subgroup.from_indices(z9, [0, 3, 6])
        rep = analyze_coset(Element(z9, 1), h)
        assert rep.commutes
        assert rep.least_exponent == 3
        assert rep.least_closedness == 4
        assert rep.spectrum_step == 3
        assert rep.violations == ()

    def test_z4(self, z4):
        h = Subgroup.from_indices(z4, [0, 2])
        rep = analyze_coset(Element(z4, 1), h)
        assert (rep.least_exponent, rep.least_closedness) == (2, 3)

    def test_s3_fixture_never_closed(self, s3):
        h = Subgroup.from_labels(s3, ["e", "(1 2)"])
        a = Element(s3, s3.index_of_label("(1 3)"))
        rep = analyze_coset(a, h)
        assert not rep.commutes
        assert rep.least_closedness is None
        assert rep.spectrum_step is None
        # powers still behave: a^6 lands in H, a^7 back in L, for both
        # elements of the coset
        coset = translate(a, h.carrier, "left")
        for b in coset.indices():
            assert s3.pow(b, 6) in h
            assert s3.pow(b, 7) in coset

    def test_rep_inside_subgroup_rejected(self, z9):
        h = Subgroup.from_indices(z9, [0, 3, 6])
        with pytest.raises(RepInSubgroup):
            analyze_coset(Element(z9, 3), h)

    def test_least_exponent_at_least_two(self, small_corpus):
        from nclosed.subsets import left_cosets, proper_subgroups
        for g in small_corpus:
            for h in proper_subgroups(g):
                for rep in left_cosets(h).representatives:
                    if rep in h:
                        continue
                    r = analyze_coset(Element(g, rep), h)
                    assert r.least_exponent >= 2
                    if r.commutes:
                        assert r.least_closedness == r.least_exponent + 1 >= 3


class TestSpectrum:
    def test_z9_spectrum(self, z9):
        h = Subgroup.from_indices(z9, [0, 3, 6])
        desc = closedness_spectrum(Element(z9, 1), h, verify_up_to=20)
        hits = [m for m in range(2, 21) if desc.contains(m)]
        assert hits == [4, 7, 10, 13, 16, 19]
        coset = translate(Element(z9, 1), h.carrier, "left")
        assert hits == [m for m in range(2, 21) if is_n_closed(coset, m)]

    def test_z4_spectrum_odd(self, z4):
        h = Subgroup.from_indices(z4, [0, 2])
        desc = closedness_spectrum(Element(z4, 1), h, verify_up_to=15)
        assert [m for m in range(2, 16) if desc.contains(m)] == \
            [3, 5, 7, 9, 11, 13, 15]

    def test_non_commuting_rejected(self, s3):
        h = Subgroup.from_labels(s3, ["e", "(1 2)"])
        with pytest.raises(NonCommutingCoset):
            closedness_spectrum(Element(s3, s3.index_of_label("(1 3)")), h)


class TestLeastPowerExponent:
    def test_z12_cases(self, z12):
        h = Subgroup.from_indices(z12, [0, 6])
        a = Element(z12, 1)
        assert least_exponent(a, h) == 6
        assert least_power_exponent(a, h, 4) == 3
        assert least_power_exponent(a, h, 6) == 1
        assert least_power_exponent(a, h, 5) == 6

    def test_matches_direct_search_everywhere(self, small_corpus):
        from nclosed.subsets import left_cosets, proper_subgroups
        for g in small_corpus[:6]:
            for h in proper_subgroups(g):
                for rep in left_cosets(h).representatives:
                    if rep in h:
                        continue
                    a = Element(g, rep)
                    t = least_exponent(a, h)
                    for m in range(1, 2 * t + 1):
                        c = least_power_exponent(a, h, m)
                        # independent oracle: walk powers of a^m directly
                        base = g.pow(rep, m)
                        x, direct = base, 1
                        while x not in h:
                            x = g.mul(x, base)
                            direct += 1
                        assert c == direct == t // gcd(m, t)


class TestPowerCoset:
    def test_z9_m2(self, z9):
        h = Subgroup.from_indices(z9, [0, 3, 6])
        coset, k = power_coset_closedness(Element(z9, 1), h, 2)
        assert coset.indices() == [2, 5, 8]
        assert k == 4

    def test_z9_m3_collapses_to_subgroup(self, z9):
        h = Subgroup.from_indices(z9, [0, 3, 6])
        coset, k = power_coset_closedness(Element(z9, 1), h, 3)
        assert coset.indices() == [0, 3, 6]
        assert k == 2

    def test_z12_m2(self, z12):
        h = Subgroup.from_indices(z12, [0, 6])
        coset, k = power_coset_closedness(Element(z12, 1), h, 2)
        assert coset.indices() == [2, 8]
        assert k == 4

    def test_non_commuting_rejected(self, s3):
        h = Subgroup.from_labels(s3, ["e", "(1 2)"])
        with pytest.raises(NonCommutingCoset):
            power_coset_closedness(Element(s3, s3.index_of_label("(1 3)")), h, 2)


class TestExtraction:
    def test_z4(self, z4):
        d = GSubset.from_indices(z4, [1, 3])
        ext = extract_subgroup(d, 3)
        assert ext.subgroup.carrier.indices() == [0, 2]
        assert ext.coset_rep.index == 1
        assert translate(ext.coset_rep, ext.subgroup.carrier, "left") == d
        assert ext.violations == ()

    def test_z9(self, z9):
        d = GSubset.from_indices(z9, [1, 4, 7])
        ext = extract_subgroup(d, 4)
        assert ext.subgroup.carrier.indices() == [0, 3, 6]
        assert translate(ext.coset_rep, ext.subgroup.carrier, "left") == d

    def test_singleton_involution(self, s3):
        d = GSubset.from_labels(s3, ["(1 2)"])
        ext = extract_subgroup(d, 3)
        assert ext.subgroup.carrier.indices() == [s3.identity]

    def test_not_n_closed_rejected(self, z4):
        with pytest.raises(NotNClosed):
            extract_subgroup(GSubset.from_indices(z4, [0, 1]), 3)

    def test_subgroup_input_rejected(self, z4):
        with pytest.raises(AlreadyClosed):
            extract_subgroup(GSubset.from_indices(z4, [0, 2]), 3)

    def test_empty_rejected(self, z4):
        with pytest.raises(EmptySubset):
            extract_subgroup(GSubset(z4, 0), 3)

    def test_extraction_invariance_over_cosets(self, small_corpus):
        # construct known n-closed sets as commuting cosets, then extract
        from nclosed.subsets import left_cosets, proper_subgroups
        for g in small_corpus:
            for h in proper_subgroups(g):
                for rep in left_cosets(h).representatives:
                    if rep in h:
                        continue
                    a = Element(g, rep)
                    r = analyze_coset(a, h)
                    if not r.commutes:
                        continue
                    coset = translate(a, h.carrier, "left")
                    ext = extract_subgroup(coset, r.least_closedness)
                    assert ext.violations == ()
                    assert ext.subgroup.carrier.mask == h.mask
                    assert is_subgroup(ext.subgroup.carrier)


class TestSemigroupShift:
    def test_mult_z6_fixture(self):
        m6 = multiplicative_semigroup(6)
        d = GSubset.from_labels(m6, ["3", "5"])
        assert is_n_closed(d, 3) and not is_n_closed(d, 2)
        shifted, ok = semigroup_shift_2closed(d, 3, [Element(m6, 3)])
        assert shifted.labels() == ["3"] and ok
        shifted, ok = semigroup_shift_2closed(d, 3, [Element(m6, 5)])
        assert shifted.labels() == ["1", "3"] and ok

    def test_group_case_matches_extraction(self, z4):
        d = GSubset.from_indices(z4, [1, 3])
        shifted, ok = semigroup_shift_2closed(d, 3, [Element(z4, 1)])
        assert shifted.indices() == [0, 2] and ok

    def test_prefix_validation(self, z4):
        d = GSubset.from_indices(z4, [1, 3])
        with pytest.raises(PrefixNotInD):
            semigroup_shift_2closed(d, 3, [Element(z4, 2)])
        with pytest.raises(ValueError):
            semigroup_shift_2closed(d, 3, [Element(z4, 1), Element(z4, 1)])

    def test_not_n_closed_rejected(self):
        m6 = multiplicative_semigroup(6)
        d = GSubset.from_labels(m6, ["2", "5"])
        if not is_n_closed(d, 3):
            with pytest.raises(NotNClosed):
                semigroup_shift_2closed(d, 3, [Element(m6, 2)])


class TestCosetMembershipPattern:
    def test_powers_in_h_iff_t_divides(self, small_corpus):
        from nclosed.subsets import left_cosets, proper_subgroups
        for g in small_corpus[:7]:
            for h in proper_subgroups(g):
                for rep in left_cosets(h).representatives:
                    if rep in h:
                        continue
                    t = least_exponent(Element(g, rep), h)
                    x = g.identity
                    for m in range(1, 2 * g.order + 1):
                        x = g.mul(x, rep)
                        assert (x in h) == (m % t == 0)

    def test_rep_independence_when_commuting(self, small_corpus):
        from nclosed.subsets import coset_commutes, left_cosets, proper_subgroups
        for g in small_corpus:
            for h in proper_subgroups(g):
                for rep in left_cosets(h).representatives:
                    if rep in h or not coset_commutes(Element(g, rep), h):
                        continue
                    t = least_exponent(Element(g, rep), h)
                    coset = translate(Element(g, rep), h.carrier, "left")
                    for b in coset.indices():
                        assert least_exponent(Element(g, b), h) == t
