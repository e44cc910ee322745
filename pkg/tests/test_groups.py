import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from sigmakit import (
    GroupError,
    MismatchError,
    Scalar,
    SeededEntropy,
    SerializationError,
    StubEntropy,
    multi_exp,
    random_scalar,
    secp256k1,
    toy_group,
)
from sigmakit.groups import scalar_byte_length

from conftest import TOY_P, TOY_Q, elem, words


class TestToyGroupConstruction:
    def test_valid_parameters(self):
        g = toy_group(23, 11, 2)
        assert pow(2, 11, 23) == 1 and pow(2, 1, 23) != 1
        assert g.order == 11
        assert g.generator().handle == 2

    def test_generator_outside_subgroup(self):
        assert pow(7, 11, 23) != 1
        with pytest.raises(GroupError):
            toy_group(23, 11, 7)

    def test_composite_order(self):
        with pytest.raises(GroupError):
            toy_group(23, 12, 2)

    def test_composite_modulus(self):
        with pytest.raises(GroupError):
            toy_group(25, 11, 2)

    def test_order_must_divide(self):
        with pytest.raises(GroupError):
            toy_group(23, 13, 2)


class TestScalarSampling:
    def test_reduce_mod_q_policy(self, toy):
        # one 64-bit word covers q=11; the raw draw reduces mod q
        s = random_scalar(toy.order, StubEntropy(words(25)))
        assert s.value == 25 % 11 == 3

    def test_seeded_streams_agree(self, toy):
        a = random_scalar(toy.order, SeededEntropy(1234))
        b = random_scalar(toy.order, SeededEntropy(1234))
        assert a == b

    def test_uniform_chi_square(self, toy):
        ent = SeededEntropy(b"chi-square-scalars")
        counts = [0] * 11
        for _ in range(10_000):
            counts[random_scalar(toy.order, ent).value] += 1
        assert chisquare(counts).pvalue >= 0.001

    def test_range(self, curve):
        ent = SeededEntropy(0)
        for _ in range(50):
            assert 0 <= random_scalar(curve.order, ent).value < curve.order


class TestScalarArithmetic:
    @given(st.integers(), st.integers())
    def test_matches_bigint_reference(self, a, b):
        q = TOY_Q
        x, y = Scalar(a, q), Scalar(b, q)
        assert (x + y).value == (a + b) % q
        assert (x - y).value == (a - b) % q
        assert (x * y).value == (a * b) % q
        assert (-x).value == -a % q

    @given(st.integers(min_value=1, max_value=TOY_Q - 1))
    def test_inverse(self, a):
        x = Scalar(a, TOY_Q)
        assert (x * x.inverse()).value == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            Scalar(0, TOY_Q).inverse()

    def test_orders_never_mix(self):
        with pytest.raises(MismatchError):
            Scalar(1, 11) + Scalar(1, 13)

    def test_byte_roundtrip_strict(self):
        s = Scalar(7, TOY_Q)
        assert Scalar.from_bytes(s.to_bytes(), TOY_Q) == s
        with pytest.raises(SerializationError):
            Scalar.from_bytes(bytes([11]), TOY_Q)  # == order, non-canonical
        with pytest.raises(SerializationError):
            Scalar.from_bytes(b"\x00\x01", TOY_Q)  # wrong width


class TestMultiExp:
    def test_toy_worked_example(self, toy):
        g, h = toy.generator(), elem(toy, 16)
        expected = pow(2, 3, 23) * pow(16, 5, 23) % 23
        assert multi_exp([g, h], [3, 5]).handle == expected == 2

    def test_zero_exponent(self, toy):
        assert multi_exp([toy.generator()], [0]) == toy.identity()

    def test_length_mismatch(self, toy):
        with pytest.raises(ValueError):
            multi_exp([toy.generator()], [1, 2])
        with pytest.raises(ValueError):
            multi_exp([], [])

    def test_group_mismatch(self, toy):
        other = toy_group(59, 29, 4)
        with pytest.raises(MismatchError):
            multi_exp([toy.generator(), other.generator()], [1, 1])

    @given(st.integers(min_value=0, max_value=TOY_Q - 1),
           st.integers(min_value=0, max_value=TOY_Q - 1))
    def test_exponent_additivity_toy(self, a, b):
        g = toy_group(TOY_P, TOY_Q, 2).generator()
        assert multi_exp([g, g], [a, b]) == multi_exp([g], [(a + b) % TOY_Q])

    @settings(max_examples=20)
    @given(st.integers(min_value=0), st.integers(min_value=0))
    def test_exponent_additivity_curve(self, a, b):
        curve = secp256k1()
        g = curve.generator()
        assert multi_exp([g, g], [a, b]) == g ** (a + b)

    def test_exponentiation_matches_pow(self, toy):
        ent = SeededEntropy(5)
        for _ in range(50):
            e = random_scalar(toy.order, ent)
            v = toy.generator() ** e
            assert v.handle == pow(2, e.value, 23)


class TestEncoding:
    def test_toy_fixed_width(self, toy):
        assert toy.element_byte_length() == 1
        assert elem(toy, 8).encode() == bytes([8])

    def test_toy_roundtrip(self, toy):
        ent = SeededEntropy(6)
        for _ in range(1000):
            e = toy.random_element(ent)
            assert toy.decode(e.encode()) == e

    def test_toy_rejects_off_subgroup(self, toy):
        assert pow(7, 11, 23) != 1
        with pytest.raises(GroupError):
            toy.decode(bytes([7]))

    def test_toy_rejects_zero_and_width(self, toy):
        with pytest.raises(GroupError):
            toy.decode(bytes([0]))
        with pytest.raises(SerializationError):
            toy.decode(bytes([0, 8]))

    def test_curve_roundtrip(self, curve):
        ent = SeededEntropy(7)
        for _ in range(200):
            e = curve.random_element(ent)
            data = e.encode()
            assert len(data) == 33
            assert curve.decode(data) == e

    def test_curve_identity(self, curve):
        assert curve.identity().encode() == bytes(33)
        assert curve.decode(bytes(33)) == curve.identity()

    def test_curve_rejects_garbage(self, curve):
        with pytest.raises(GroupError):
            curve.decode(bytes([0x05]) + bytes(32))
        # x = 5 is on the curve; x = 6 is not a quadratic-residue rhs there
        bad = bytes([0x02]) + (6).to_bytes(32, "big")
        with pytest.raises(GroupError):
            curve.decode(bad)
        with pytest.raises(SerializationError):
            curve.decode(bytes(32))


class TestGroupAlgebra:
    def test_identity_and_inverse(self, toy):
        g = toy.generator()
        assert g * g.inverse() == toy.identity()
        assert g / g == toy.identity()
        assert (g**0).is_identity()

    def test_curve_basic_relations(self, curve):
        g = curve.generator()
        assert g * g == g**2
        assert g**curve.order == curve.identity()
        assert g ** (curve.order - 1) * g == curve.identity()

    def test_elements_never_mix_groups(self, toy):
        other = toy_group(59, 29, 4)
        with pytest.raises(MismatchError):
            toy.generator() * other.generator()

    def test_scalar_order_checked_on_exponent(self, toy):
        with pytest.raises(MismatchError):
            toy.generator() ** Scalar(3, 29)

    def test_scalar_width_per_group(self, toy, curve):
        assert scalar_byte_length(toy.order) == 1
        assert scalar_byte_length(curve.order) == 32
