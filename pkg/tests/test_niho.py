import numpy as np
import pytest
from hypothesis import given, strategies as st

from nihoperm.circle import make_circle
from nihoperm.errors import NotInvertible, NotOnCircle
from nihoperm.field import default_field
from nihoperm.niho import (
    NOT_INVERTIBLE,
    OUT_OF_THEOREM,
    PROVED,
    CircleMapSpec,
    NihoTrinomial,
    circle_map_array,
    circle_map_eval,
    circle_map_histogram,
    circle_map_power_form,
    conjecture_exponents,
    eq4_poly,
    eq4_root_count,
    eq4_root_counts,
    regime,
    trinomial_eval,
)
from nihoperm.perm import is_permutation_bruteforce, lemma1_full_map
from oracles import egcd_inverse, peasant_pow


def test_exponents_worked_examples():
    assert conjecture_exponents(2) == (4, 0)
    assert conjecture_exponents(3) == (2, 5)
    with pytest.raises(NotInvertible):
        conjecture_exponents(5)
    with pytest.raises(ValueError):
        conjecture_exponents(0)


def test_exponents_match_extended_euclid():
    for m in range(1, 41):
        n = (1 << m) + 1
        if m % 10 == 5:
            with pytest.raises(NotInvertible):
                conjecture_exponents(m)
            continue
        inv = egcd_inverse(11, n)
        assert conjecture_exponents(m) == (4 * inv % n, 10 * inv % n)
        s, t = conjecture_exponents(m)
        assert 11 * s % n == 4 % n and 11 * t % n == 10 % n


def test_regimes():
    table = {m: regime(m) for m in range(1, 21)}
    assert [m for m, r in table.items() if r == NOT_INVERTIBLE] == [5, 15]
    assert [m for m, r in table.items() if r == OUT_OF_THEOREM] == [10, 20]
    assert all(r == PROVED for m, r in table.items() if m % 5)


@given(st.integers(1, 30), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 5))
def test_niho_property_and_residue_dependence(m, s, t, k):
    f = NihoTrinomial(m, s, t)
    n = (1 << m) + 1
    assert f.e_s % ((1 << m) - 1) == 1 % ((1 << m) - 1)
    assert f.e_t % ((1 << m) - 1) == 1 % ((1 << m) - 1)
    g = NihoTrinomial(m, s + k * n, t + (k + 1) * n)
    assert (g.e_s, g.e_t) == (f.e_s, f.e_t)


def test_trinomial_fixed_points():
    for m in (1, 2, 3, 4, 6):
        f = NihoTrinomial.conjecture(m)
        F = f.field()
        assert trinomial_eval(f, F.zero) == F.zero
        assert trinomial_eval(f, F.one) == F.one


def test_m2_collapses_to_power_map():
    f = NihoTrinomial.conjecture(2)
    F = f.field()
    for x in range(16):
        assert f.eval_int(F, x) == peasant_pow(x, 13, F.poly, 4)
    assert f.eval_array(F, F.all_elements()).tolist() == [F.pow(x, 13) for x in range(16)]


@pytest.mark.parametrize("m", [1, 3, 4])
def test_trinomial_matches_oracle(m):
    f = NihoTrinomial.conjecture(m)
    F = f.field()
    e_s, e_t = f.s * ((1 << m) - 1) + 1, f.t * ((1 << m) - 1) + 1
    want = [x ^ peasant_pow(x, e_s, F.poly, 2 * m) ^ peasant_pow(x, e_t, F.poly, 2 * m) for x in range(F.order)]
    assert f.eval_array(F, F.all_elements()).tolist() == want


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 7])
def test_lemma1_form_reproduces_trinomial(m):
    f = NihoTrinomial.conjecture(m)
    F = f.field()
    r, h, d, s = f.lemma1_form(F)
    assert d * s == F.order - 1
    xs = F.all_elements()
    assert np.array_equal(lemma1_full_map(r, h, s, F)(xs), f.eval_array(F, xs))


def test_circle_map_spec():
    F = default_field(6)
    spec = CircleMapSpec.for_field(F)
    assert spec.numerator.format() == "11:1,7:1,1:1"
    assert spec.denominator.format() == "10:1,4:1,0:1"


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6])
def test_circle_map_forms_agree_and_stay_on_circle(m):
    c = make_circle(None, m)
    assert circle_map_eval(c, c.field.one) == c.field.one
    for x in c:
        y = circle_map_eval(c, x)
        assert c.contains(y)
        assert y == circle_map_power_form(c, x)
    assert circle_map_array(c).tolist() == [circle_map_eval(c, x).value for x in c]


def test_circle_map_rejects_off_circle():
    c = make_circle(None, 3)
    off = next(x for x in c.field.elements() if x and not c.contains(x))
    with pytest.raises(NotOnCircle):
        circle_map_eval(c, off)
    with pytest.raises(NotOnCircle):
        eq4_root_count(c, off)


@pytest.mark.parametrize("m", range(1, 15))
def test_denominator_never_vanishes_on_circle(m):
    c = make_circle(None, m)
    assert np.count_nonzero(CircleMapSpec.for_field(c.field).denominator.eval_array(c.elements) == 0) == 0


@pytest.mark.parametrize("m", [1, 3])
def test_eq4_single_root_worked_examples(m):
    c = make_circle(None, m)
    assert [eq4_root_count(c, t) for t in c] == [1] * c.size


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_bulk_counts_match_single_counts(m):
    c = make_circle(None, m)
    counts = eq4_root_counts(c)
    assert counts.tolist() == [eq4_root_count(c, t) for t in c]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8, 10])
def test_counts_equal_circle_map_fibres(m):
    # F_t(x) = 0 with D(x) != 0 means exactly that the circle map sends x to t
    c = make_circle(None, m)
    assert np.array_equal(eq4_root_counts(c), circle_map_histogram(c))


def test_parallel_counts_identical():
    c = make_circle(None, 7)
    assert np.array_equal(eq4_root_counts(c, workers=2), eq4_root_counts(c, workers=1))


def test_eq4_poly_shape():
    F = default_field(6)
    p = eq4_poly(F, 0x2A)
    assert p.format() == "11:1,10:2a,7:1,4:2a,1:1,0:2a"


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 7, 8])
def test_reduction_soundness(m):
    # the trinomial permutes the big field iff the circle map permutes the circle
    f = NihoTrinomial.conjecture(m)
    c = make_circle(None, m)
    bijective_on_circle = bool((circle_map_histogram(c) == 1).all())
    assert is_permutation_bruteforce(f, c.field).verdict == bijective_on_circle


def test_out_of_theorem_m10_computed_not_asserted():
    # m = 10 is outside the theorem; record what the computation says and check
    # that the two independent routes agree, without claiming either outcome
    f = NihoTrinomial.conjecture(10)
    c = make_circle(None, 10)
    counts = eq4_root_counts(c)
    on_circle = bool((counts == 1).all())
    assert is_permutation_bruteforce(f, c.field).verdict == on_circle
