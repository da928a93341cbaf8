import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import ParameterError
from core.field.gf2m import (
    FieldOpCounter,
    IRREDUCIBLE_TERMS,
    _mul_shift_xor,
    field_new,
    gf_inv,
    gf_mul,
    gf_mul_array,
    gf_pow,
    is_irreducible,
    is_irreducible_bruteforce,
    log_tables,
    modulus_for,
    poly_mod,
    primitive_element,
)


@pytest.mark.parametrize("m", sorted(IRREDUCIBLE_TERMS))
def test_table_entries_are_irreducible(m):
    poly = modulus_for(m)
    assert poly.bit_length() - 1 == m
    assert is_irreducible(poly)
    if m <= 16:
        assert is_irreducible_bruteforce(poly)


def test_reducible_polynomials_are_rejected():
    for poly in (0b101, 0b10101, 0b1111, 0b100000001):
        assert not is_irreducible(poly)
        assert not is_irreducible_bruteforce(poly)


def test_irreducibility_checks_agree_up_to_degree_8():
    for poly in range(2, 1 << 9):
        assert is_irreducible(poly) == is_irreducible_bruteforce(poly)


def test_known_moduli():
    assert field_new(3).modulus == 0b1011
    assert field_new(8).modulus == 0x11B
    assert field_new(1).modulus == 0b11
    assert field_new(32).mask == 0xFFFFFFFF
    for m in (0, 33, -1):
        with pytest.raises(ParameterError):
            field_new(m)


def test_mul_examples():
    f3 = field_new(3)
    assert gf_mul(f3, 2, 2) == 4
    assert gf_mul(f3, 4, 2) == 3
    assert gf_mul(f3, 5, 1) == 5
    assert gf_mul(f3, 6, 0) == 0
    f8 = field_new(8)
    assert gf_mul(f8, 0x53, 0xCA) == 0x01


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    field = field_new(m)
    elements = range(field.order)
    for a in elements:
        assert gf_mul(field, a, 1) == a
        for b in elements:
            ab = gf_mul(field, a, b)
            assert ab == gf_mul(field, b, a)
            for c in elements:
                assert gf_mul(field, ab, c) == gf_mul(field, a, gf_mul(field, b, c))
                assert gf_mul(field, a, b ^ c) == ab ^ gf_mul(field, a, c)


@pytest.mark.parametrize("m", range(1, 9))
def test_inverses_exhaustive(m):
    field = field_new(m)
    for a in range(1, field.order):
        assert gf_mul(field, a, gf_inv(field, a)) == 1
    with pytest.raises(ZeroDivisionError):
        gf_inv(field, 0)


@given(st.integers(min_value=1, max_value=32), st.data())
def test_field_axioms_random(m, data):
    field = field_new(m)
    element = st.integers(min_value=0, max_value=field.mask)
    a, b, c = data.draw(element), data.draw(element), data.draw(element)
    assert gf_mul(field, a, b) == gf_mul(field, b, a)
    assert gf_mul(field, gf_mul(field, a, b), c) == gf_mul(field, a, gf_mul(field, b, c))
    assert gf_mul(field, a, b ^ c) == gf_mul(field, a, b) ^ gf_mul(field, a, c)
    assert gf_mul(field, a, b) <= field.mask
    if a:
        assert gf_mul(field, a, gf_inv(field, a)) == 1


@given(st.integers(min_value=1, max_value=32))
def test_multiplicative_group_order(m):
    field = field_new(m)
    generator = min(2, field.mask)
    assert gf_pow(field, generator, field.order - 1) == 1


@pytest.mark.parametrize("m", [5, 13, 16, 17, 32])
def test_vectorized_mul_matches_scalar(m):
    field = field_new(m)
    rng = np.random.default_rng(m)
    a = rng.integers(0, field.order, size=200, dtype=np.uint64)
    b = rng.integers(0, field.order, size=200, dtype=np.uint64)
    product = gf_mul_array(field, a, b)
    assert [int(v) for v in product] == [gf_mul(field, int(x), int(y)) for x, y in zip(a, b)]
    # 标量广播
    scaled = gf_mul_array(field, a, np.uint64(3))
    assert [int(v) for v in scaled] == [gf_mul(field, int(x), 3) for x in a]


def test_primitive_element():
    # AES 域中 x 不是生成元，x + 1 是
    assert primitive_element(field_new(8)) == 3
    assert primitive_element(field_new(1)) == 1
    assert primitive_element(field_new(4)) == 2


@pytest.mark.parametrize("m", [1, 2, 8, 16])
def test_log_tables_cover_the_group(m):
    field = field_new(m)
    exp, log = log_tables(field)
    group = field.order - 1
    assert exp.size == 2 * group
    assert np.array_equal(np.sort(exp[:group]), np.arange(1, field.order, dtype=np.uint64))
    assert np.array_equal(exp[log[1:]], np.arange(1, field.order, dtype=np.uint64))
    assert not exp.flags.writeable


def test_log_tables_reject_wide_fields():
    with pytest.raises(ParameterError):
        log_tables(field_new(17))


@pytest.mark.parametrize("m", [3, 10, 16])
def test_table_mul_matches_shift_xor(m):
    field = field_new(m)
    rng = np.random.default_rng(100 + m)
    a = rng.integers(0, field.order, size=500, dtype=np.uint64)
    b = rng.integers(0, field.order, size=500, dtype=np.uint64)
    a[:20] = 0
    b[20:40] = 0
    assert np.array_equal(gf_mul_array(field, a, b), _mul_shift_xor(field, a, b))


def test_shift_xor_stops_at_highest_bit():
    field = field_new(20)
    a = np.array([0xABCDE, 1, 0], dtype=np.uint64)
    assert np.array_equal(_mul_shift_xor(field, a, np.uint64(1)), a)
    assert np.array_equal(_mul_shift_xor(field, a, np.uint64(0)), np.zeros(3, dtype=np.uint64))


def test_counter_counts_performed_multiplications():
    field = field_new(10)
    counter = FieldOpCounter()
    gf_mul(field, 3, 5, counter)
    gf_mul_array(field, np.arange(12).reshape(3, 4), np.uint64(7), counter)
    gf_mul_array(field, [], [], counter)
    assert counter.multiplications == 13
    assert counter.evaluations == 0
    counter.reset()
    assert counter.multiplications == 0


def test_poly_mod():
    assert poly_mod(0b10101, 0b111) == 0
    assert poly_mod(0b1000, 0b1011) == 0b011
    with pytest.raises(ZeroDivisionError):
        poly_mod(5, 0)
