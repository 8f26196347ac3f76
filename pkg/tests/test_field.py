import pickle
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

import nihoperm.field as fld
from nihoperm import gf2x
from nihoperm.errors import ContextMismatch, DivisionByZero, ReduciblePolynomial
from nihoperm.field import SHIFT_REDUCE, TABLE, BinaryField, FieldElement, FieldSpec, default_field, make_field
from oracles import peasant_mul, peasant_pow


def strategies_for(k):
    return [TABLE, SHIFT_REDUCE] if k <= fld.TABLE_MAX_DEGREE else [SHIFT_REDUCE]


# -- construction ------------------------------------------------------------------


def test_fieldspec_parse_roundtrip():
    spec = FieldSpec.parse("k=8, poly=0x11b")
    assert spec == FieldSpec(8, 0x11B)
    assert FieldSpec.parse(str(spec)) == spec


@pytest.mark.parametrize("text", ["k=8", "poly=0x11b", "k=x,poly=0x11b", "k=8;poly=0x11b", "k=8,poly=0x1b"])
def test_fieldspec_parse_rejects(text):
    with pytest.raises(ValueError):
        FieldSpec.parse(text)


def test_fieldspec_rejects_zero_constant_term():
    with pytest.raises(ValueError):
        FieldSpec(4, 0b10010)


def test_reducible_modulus_rejected():
    with pytest.raises(ReduciblePolynomial):
        BinaryField(FieldSpec(4, 0b10101))  # (x^2 + x + 1)^2
    with pytest.raises(ReduciblePolynomial):
        make_field("k=6,poly=0x41")


def test_default_field_uses_smallest_irreducible():
    for k in range(1, 33):
        assert default_field(k).poly == gf2x.smallest_irreducible(k)


def test_default_strategy_switches_at_table_limit():
    assert default_field(fld.TABLE_MAX_DEGREE).strategy == TABLE
    assert default_field(fld.TABLE_MAX_DEGREE + 1).strategy == SHIFT_REDUCE
    with pytest.raises(ValueError):
        BinaryField(FieldSpec.default(24), TABLE)


def test_field_table_env_override(tmp_path, monkeypatch):
    table = tmp_path / "fields.txt"
    table.write_text("# alternative moduli\nk=8,poly=0x11d\n")
    monkeypatch.setenv(fld.FIELD_TABLE_ENV, str(table))
    assert default_field(8).poly == 0x11D
    assert default_field(7).poly == gf2x.smallest_irreducible(7)


def test_field_pickles_and_compares_by_spec():
    F = default_field(12)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and hash(G) == hash(F)
    assert G.mul(0x123, 0x456) == F.mul(0x123, 0x456)


def test_elements_and_generator():
    F = default_field(4)
    assert [e.value for e in F.elements()] == list(range(16))
    g = F.primitive_element
    assert len({F.pow(g, i) for i in range(15)}) == 15
    assert F.x.value == 2


# -- axioms ------------------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("strategy", [TABLE, SHIFT_REDUCE])
def test_field_axioms_exhaustive(k, strategy):
    F = make_field(FieldSpec.default(k), strategy)
    E = list(F.elements())
    zero, one = F.zero, F.one
    for a in E:
        assert a + zero == a and a * one == a and a + a == zero
        if a:
            assert a * a.inverse() == one
        for b in E:
            assert a + b == b + a and a * b == b * a
            for c in E:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


@given(st.data())
def test_field_axioms_random(data):
    k = data.draw(st.integers(1, 32))
    strategy = data.draw(st.sampled_from(strategies_for(k)))
    F = make_field(FieldSpec.default(k), strategy)
    el = st.integers(0, F.mask).map(F)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == F.one
        assert a ** (F.order - 1) == F.one
    assert (a * b).value == peasant_mul(a.value, b.value, F.poly, k)


# -- the two strategies ------------------------------------------------------------


@pytest.mark.parametrize("k", range(1, 9))
def test_strategies_agree_exhaustively(k):
    T = make_field(FieldSpec.default(k), TABLE)
    S = make_field(FieldSpec.default(k), SHIFT_REDUCE)
    xs = T.all_elements()
    a, b = np.repeat(xs, xs.size), np.tile(xs, xs.size)
    assert np.array_equal(T.vmul(a, b), S.vmul(a, b))
    assert np.array_equal(S.vmul(a, b), S._vmul_sr_bitwise(a, b))
    for x in range(T.order):
        for y in range(T.order):
            assert T.mul(x, y) == S.mul(x, y) == peasant_mul(x, y, T.poly, k)


@pytest.mark.parametrize("k", [9, 13, 16, 22])
def test_strategies_agree_on_samples(k):
    T = make_field(FieldSpec.default(k), TABLE)
    S = make_field(FieldSpec.default(k), SHIFT_REDUCE)
    rng = np.random.default_rng(k)
    a = rng.integers(0, T.order, 50_000, dtype=np.uint64)
    b = rng.integers(0, T.order, 50_000, dtype=np.uint64)
    assert np.array_equal(T.vmul(a, b), S.vmul(a, b))
    for e in (3, 1 << k, T.order - 2, 12345):
        assert np.array_equal(T.vpow(a, e), S.vpow(a, e))


@pytest.mark.parametrize("k", [2, 5, 8, 13, 16, 22, 24, 28, 32])
def test_vector_ops_match_scalar(k):
    F = default_field(k)
    rng = np.random.default_rng(100 + k)
    a = rng.integers(0, F.order, 400, dtype=np.uint64)
    b = rng.integers(0, F.order, 400, dtype=np.uint64)
    e = int(rng.integers(1, 1 << 40))
    s = int(rng.integers(1, F.order))
    ai, bi = a.tolist(), b.tolist()
    assert F.vmul(a, b).tolist() == [F.mul(x, y) for x, y in zip(ai, bi)]
    assert F.vsqr(a).tolist() == [F.mul(x, x) for x in ai]
    assert F.vpow(a, e).tolist() == [F.pow(x, e) for x in ai]
    assert F.scalar_mul(s, a).tolist() == [F.mul(s, x) for x in ai]
    assert F.vfrobenius(a, 3).tolist() == [F.frobenius(x, 3) for x in ai]
    nz = a[a != 0]
    assert F.vmul(F.vinv(nz), nz).tolist() == [1] * nz.size
    if F.strategy == SHIFT_REDUCE:
        assert np.array_equal(F.vmul(a, b), F._vmul_sr_bitwise(a, b))


# -- exponentiation and Frobenius --------------------------------------------------


def test_pow_conventions():
    F = default_field(8)
    assert F.pow(0, 0) == 1 and F.pow(0, 5) == 0
    assert F.pow(3, -1) == F.inv(3)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F.pow(0, -2)
    for a in range(1, 40):
        assert F.pow(a, 7) == peasant_pow(a, 7, F.poly, 8)


@given(st.integers(1, 24), st.data())
def test_frobenius_is_additive_and_has_order_k(k, data):
    F = default_field(k)
    a, b = data.draw(st.integers(0, F.mask)), data.draw(st.integers(0, F.mask))
    assert F.frobenius(a ^ b) == F.frobenius(a) ^ F.frobenius(b)
    assert F.frobenius(a, k) == a
    assert F.sqr(F.sqrt(a)) == a
    assert F.trace(a) in (0, 1)
    assert F.trace(a ^ b) == F.trace(a) ^ F.trace(b)


def test_trace_is_balanced():
    for k in range(1, 11):
        F = default_field(k)
        assert sum(F.trace(a) for a in range(F.order)) == F.order // 2


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9, 11])
def test_half_trace_solves_artin_schreier(k):
    F = default_field(k)
    for c in range(F.order):
        if F.trace(c) == 0:
            h = F.half_trace(c)
            assert F.sqr(h) ^ h == c


def test_half_trace_needs_odd_degree():
    with pytest.raises(ValueError):
        default_field(4).half_trace(3)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_norm_lands_in_subfield(m):
    F = default_field(2 * m)
    for a in range(F.order):
        n = F.norm(a, m)
        assert F.in_subfield(n, m)
    fixed = [a for a in range(F.order) if F.in_subfield(a, m)]
    assert len(fixed) == 1 << m


# -- quadratics --------------------------------------------------------------------


def quadratic_roots_by_scan(F, a, b):
    return sorted(x for x in range(F.order) if F.mul(x, x) ^ F.mul(a, x) ^ b == 0)


@pytest.mark.parametrize("k", range(1, 9))
def test_solve_quadratic_exhaustive(k):
    F = default_field(k)
    xs = F.all_elements()
    for a in range(F.order):
        vals = F.vsqr(xs) ^ F.scalar_mul(a, xs)
        for b in range(F.order):
            assert F.solve_quadratic(a, b) == np.flatnonzero(vals == b).tolist()


def test_solve_quadratic_module_function_returns_set():
    F = default_field(6)
    roots = fld.solve_quadratic(F(5), F(9))
    assert roots == {F(r) for r in quadratic_roots_by_scan(F, 5, 9)}
    assert fld.solve_quadratic(F(0), F(1)) == {F.one}


@given(st.integers(2, 32), st.data())
def test_solve_quadratic_roots_are_roots(k, data):
    F = default_field(k)
    a, b = data.draw(st.integers(0, F.mask)), data.draw(st.integers(0, F.mask))
    for r in F.solve_quadratic(a, b):
        assert F.mul(r, r) ^ F.mul(a, r) ^ b == 0
    if a:
        c = F.mul(b, F.inv(F.mul(a, a)))
        assert len(F.solve_quadratic(a, b)) == (0 if F.trace(c) else 2)


# -- element wrapper and module functions ------------------------------------------


def test_element_operators():
    F = default_field(8)
    a, b = F(0x57), F(0x83)
    assert (a * b).value == 0xC1  # the worked product for x^8 + x^4 + x^3 + x + 1
    assert a + b == F(0x57 ^ 0x83) == a - b
    assert (a / b) * b == a and (1 / a) * a == F.one
    assert -a == a and a ** 0 == F.one
    assert repr(a) == "GF(2^8)(0x57)" and a.hex() == "0x57" and int(a) == 0x57
    assert a == 0x57 and bool(F.zero) is False
    assert sorted([b, a]) == [a, b]
    with pytest.raises(ValueError):
        F(256)


def test_context_mismatch():
    a = default_field(8)(3)
    b = make_field("k=8,poly=0x11d")(3)
    with pytest.raises(ContextMismatch):
        a + b
    with pytest.raises(ContextMismatch):
        fld.mul(a, b)
    with pytest.raises(ContextMismatch):
        a * "x"


def test_module_api():
    F = default_field(5)
    a = F(7)
    assert fld.add(a, F(1)) == F(6)
    assert fld.mul(a, fld.inv(a)) == F.one
    assert fld.power(a, 31) == F.one
    assert fld.frobenius(a, 5) == a
    assert fld.trace(a) == F.trace(7)
    assert fld.is_irreducible(0x25) and not fld.is_irreducible(0x21)


@pytest.mark.parametrize("small,big", [(2, 4), (3, 6), (5, 10), (4, 12)])
def test_subfield_embedding_is_a_ring_map(small, big):
    S, B = default_field(small), default_field(big)
    phi = fld.subfield_embedding(S, B)
    rng = random.Random(small * big)
    for _ in range(200):
        a, b = rng.randrange(S.order), rng.randrange(S.order)
        assert phi(a ^ b) == phi(a) ^ phi(b)
        assert phi(S.mul(a, b)) == B.mul(phi(a), phi(b))
        assert B.in_subfield(phi(a), small)
    assert phi(1) == 1
    with pytest.raises(ValueError):
        fld.subfield_embedding(default_field(3), default_field(8))
