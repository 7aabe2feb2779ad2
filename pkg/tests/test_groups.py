import json
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nclosed.errors import (
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
from nclosed.groups import (
    Element,
    direct_product,
    dump_cayley_table,
    element_order,
    inverse,
    load_cayley_table,
    make_named,
    mul,
    power,
    structure_orders,
    validate_cayley_table,
    validate_semigroup_table,
)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def mult_table(n):
    return [[(i * j) % n for j in range(n)] for i in range(n)]


class TestValidation:
    def test_trivial_group(self):
        g = validate_cayley_table([[0]])
        assert g.order == 1
        assert g.identity == 0

    def test_z4_table_is_a_group(self):
        g = validate_cayley_table(cyclic_table(4))
        assert g.order == 4
        assert g.identity == 0
        assert [g.inv(i) for i in range(4)] == [0, 3, 2, 1]

    def test_no_inverse(self):
        # [[0,1],[1,1]] is boolean OR: identity 0, but 1 has no partner
        with pytest.raises(NoInverse) as exc:
            validate_cayley_table([[0, 1], [1, 1]])
        assert exc.value.element == 1

    def test_not_closed(self):
        with pytest.raises(NotClosed):
            validate_cayley_table([[0, 2], [2, 0]])

    def test_no_identity(self):
        with pytest.raises(NoIdentity):
            validate_cayley_table([[0, 0], [0, 0]])

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            validate_cayley_table(cyclic_table(2), labels=["a", "a"])

    def test_not_associative_with_witness(self):
        table = [[1, 0], [0, 0]]
        with pytest.raises(NotAssociative) as exc:
            validate_semigroup_table(table)
        x, y, z = exc.value.witness
        assert table[table[x][y]][z] != table[x][table[y][z]]

    def test_semigroup_accepts_modular_multiplication(self):
        s = validate_semigroup_table(mult_table(6))
        assert s.order == 6

    def test_semigroup_accepts_any_group_table(self):
        s = validate_semigroup_table(cyclic_table(4))
        assert s.order == 4

    def test_rectangular_table_rejected(self):
        with pytest.raises(ValueError):
            validate_cayley_table([[0, 1], [1]])

    def test_numpy_sweep_matches_python_sweep(self):
        # order above the pure-python threshold exercises the vectorized path
        n = 96
        g = validate_cayley_table(cyclic_table(n))
        assert g.order == n
        bad = [row[:] for row in cyclic_table(n)]
        bad[3][5] = (3 + 5 + 1) % n  # breaks associativity somewhere
        with pytest.raises(NotAssociative) as exc:
            validate_cayley_table(bad)
        x, y, z = exc.value.witness
        assert bad[bad[x][y]][z] != bad[x][bad[y][z]]


class TestNamedFamilies:
    def test_s3_order(self):
        assert make_named("symmetric", 3).order == 6

    def test_z9_element_orders(self):
        z9 = make_named("cyclic", 9)
        orders = {element_order(Element(z9, i)) for i in range(1, 9)}
        assert orders == {3, 9}

    def test_quaternion_single_involution(self):
        q8 = make_named("quaternion", 8)
        # oracle: walk each element to the identity by repeated multiplication
        involutions = []
        for i in range(8):
            x, m = i, 1
            while x != q8.identity:
                x = q8.mul(x, i)
                m += 1
            if m == 2:
                involutions.append(q8.labels[i])
        assert involutions == ["-1"]

    def test_dihedral_order(self):
        assert make_named("dihedral", 5).order == 10

    @pytest.mark.parametrize("family,parameter", [
        ("symmetric", 7), ("symmetric", 0), ("dihedral", 2),
        ("quaternion", 4), ("cyclic", 0), ("nosuch", 3),
    ])
    def test_unsupported_parameters(self, family, parameter):
        with pytest.raises(UnsupportedParameter):
            make_named(family, parameter)

    def test_identity_is_element_zero(self):
        for g in (make_named("cyclic", 7), make_named("symmetric", 4),
                  make_named("dihedral", 6), make_named("quaternion", 8)):
            assert g.identity == 0


class TestDirectProduct:
    def test_z2_x_z3_is_cyclic_of_order_6(self):
        g = direct_product(make_named("cyclic", 2), make_named("cyclic", 3))
        assert g.order == 6
        assert max(element_order(Element(g, i)) for i in range(6)) == 6

    def test_z2_x_z2_has_no_order_4(self):
        g = direct_product(make_named("cyclic", 2), make_named("cyclic", 2))
        assert g.order == 4
        assert max(element_order(Element(g, i)) for i in range(4)) == 2

    def test_trivial_factor_preserves_order_multiset(self, s3):
        g = direct_product(make_named("cyclic", 1), s3)
        assert g.order == s3.order
        assert structure_orders(g) == structure_orders(s3)

    def test_order_is_lcm_of_component_orders(self, z4, s3):
        g = direct_product(z4, s3)
        for a in range(z4.order):
            for b in range(s3.order):
                la = element_order(Element(z4, a))
                lb = element_order(Element(s3, b))
                combined = element_order(Element(g, a * s3.order + b))
                import math
                assert combined == math.lcm(la, lb)

    def test_cap_enforced(self):
        with pytest.raises(GroupTooLarge):
            direct_product(make_named("cyclic", 100), make_named("cyclic", 100))


class TestElementArithmetic:
    def test_s3_composition_applies_right_first(self, s3):
        x = Element(s3, s3.index_of_label("(1 3)"))
        y = Element(s3, s3.index_of_label("(1 2)"))
        assert mul(x, y).label == "(1 2 3)"

    def test_power_zero_is_identity(self, s3, z12):
        for g in (s3, z12):
            for i in range(g.order):
                assert power(Element(g, i), 0).index == g.identity

    def test_z12_power(self, z12):
        assert power(Element(z12, 4), 3).index == 0

    def test_element_orders(self, s3, z12):
        assert element_order(Element(z12, 0)) == 1
        assert element_order(Element(z12, 4)) == 3
        assert element_order(Element(s3, s3.index_of_label("(1 2 3)"))) == 3

    def test_mixed_structures_rejected(self, z4, s3):
        with pytest.raises(MixedStructures):
            mul(Element(z4, 1), Element(s3, 1))

    def test_inverse(self, q8):
        i = Element(q8, q8.index_of_label("i"))
        assert inverse(i).label == "-i"
        assert (i * inverse(i)).index == q8.identity


class TestGroupLaws:
    def test_axioms_exhaustively_small_corpus(self, small_corpus):
        for g in small_corpus:
            if g.order > 64:
                continue
            e = g.identity
            rng = range(g.order)
            for x in rng:
                assert g.mul(x, e) == g.mul(e, x) == x
                assert g.mul(x, g.inv(x)) == e
                for y in rng:
                    for z in rng:
                        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))

    def test_element_order_divides_group_order(self, small_corpus):
        for g in small_corpus:
            for i in range(g.order):
                assert g.order % element_order(Element(g, i)) == 0

    def test_order_minimality(self, small_corpus):
        for g in small_corpus:
            for i in range(g.order):
                k = element_order(Element(g, i))
                assert g.pow(i, k) == g.identity
                for m in range(1, k):
                    assert g.pow(i, m) != g.identity

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_power_adds_exponents(self, data):
        g = make_named("dihedral", data.draw(st.integers(3, 8)))
        x = Element(g, data.draw(st.integers(0, g.order - 1)))
        m = data.draw(st.integers(0, 20))
        k = data.draw(st.integers(0, 20))
        assert power(x, m) * power(x, k) == power(x, m + k)


class TestJsonTables:
    def test_round_trip(self, tmp_path, q8):
        path = tmp_path / "q8.json"
        dump_cayley_table(q8, path)
        loaded = load_cayley_table(path)
        assert loaded.order == q8.order
        assert loaded.labels == q8.labels
        assert loaded.table_lists() == q8.table_lists()

    def test_missing_file(self, tmp_path):
        with pytest.raises(TableFileError):
            load_cayley_table(tmp_path / "nope.json")

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json at all")
        with pytest.raises(TableFileError):
            load_cayley_table(path)

    def test_corrupted_table(self, tmp_path):
        path = tmp_path / "corrupt.json"
        path.write_text(json.dumps({"labels": ["a", "b"], "table": [[0, 1], [1, 1]]}))
        with pytest.raises(NoInverse):
            load_cayley_table(path)
