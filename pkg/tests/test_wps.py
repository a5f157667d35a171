from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mdv import wps as W
from mdv.poly import NotDivisibleError, Polynomial, exact_divide, parse_polynomial, xyz
from mdv.wps import DivClass, WeightedTriple, WpsError

x, y, z = xyz()
X, Y, Z = sympy.symbols("x y z")
T25 = WeightedTriple(25, 72, 29)
ONES = WeightedTriple(1, 1, 1)


def kernel_dim_oracle(t, d, l):
    """Dimension via sympy: derivatives of a generic combination of monomials."""
    monos = [(i, j, k) for i in range(d + 1) for j in range(d + 1) for k in range(d + 1)
             if t.a * i + t.b * j + t.c * k == d]
    if not monos:
        return 0
    rows = []
    for order in range(l):
        for a in range(order + 1):
            for b in range(order - a + 1):
                c = order - a - b
                row = []
                for e in monos:
                    expr = sympy.diff(X**e[0] * Y**e[1] * Z**e[2], X, a, Y, b, Z, c)
                    row.append(expr.subs({X: 1, Y: 1, Z: 1}))
                rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - sympy.Matrix(rows).rank()


# types


def test_triple_requires_coprime_positive_weights():
    with pytest.raises(WpsError):
        WeightedTriple(2, 4, 5)
    with pytest.raises(WpsError):
        WeightedTriple(0, 1, 1)


# intersection numbers


def test_intersection_examples():
    H, E = DivClass(1, 0), DivClass(0, -1)
    assert W.class_intersection(T25, H, H) == Fraction(1, 52200)
    assert W.class_intersection(T25, E, E) == -1
    C = DivClass(216, 1)
    assert W.class_intersection(T25, C, C) == Fraction(216**2, 52200) - 1 == Fraction(-77, 725)


@settings(max_examples=100, deadline=None)
@given(*[st.integers(-50, 50) for _ in range(6)], st.integers(-5, 5), st.integers(-5, 5))
def test_intersection_symmetric_bilinear(d1, l1, d2, l2, d3, l3, s, t):
    u, v, w = DivClass(d1, l1), DivClass(d2, l2), DivClass(d3, l3)
    assert W.class_intersection(T25, u, v) == W.class_intersection(T25, v, u)
    lhs = W.class_intersection(T25, u.scale(s) + v.scale(t), w)
    assert lhs == s * W.class_intersection(T25, u, w) + t * W.class_intersection(T25, v, w)


# monomials


def test_monomial_examples():
    assert set(W.monomials_of_weighted_degree(T25, 725)) == {
        (3, 5, 10), (14, 4, 3), (7, 2, 14), (18, 1, 7), (29, 0, 0), (0, 0, 25)}
    assert len(W.monomials_of_weighted_degree(ONES, 2)) == 6
    assert W.monomials_of_weighted_degree(WeightedTriple(2, 3, 5), 1) == []
    found = W.monomials_of_weighted_degree(T25, 725)
    assert found == sorted(found)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(1, 1, 1), (1, 2, 3), (2, 3, 5), (3, 4, 5)]), st.integers(0, 30))
def test_monomial_enumeration_brute_force(w, d):
    t = WeightedTriple(*w)
    brute = {(i, j, k) for i in range(d + 1) for j in range(d + 1) for k in range(d + 1)
             if w[0] * i + w[1] * j + w[2] * k == d}
    assert set(W.monomials_of_weighted_degree(t, d)) == brute


# multiplicity at the identity point


def test_multiplicity_examples():
    assert W.multiplicity_at_e(x) == 0
    assert W.multiplicity_at_e(y**3 - x**4 * z**4, T25) == 1
    assert W.multiplicity_at_e((x - y) ** 2, ONES) == 2
    with pytest.raises(WpsError):
        W.multiplicity_at_e(Polynomial.zero())


# effectivity kernels


def test_effectivity_examples():
    assert len(W.effectivity_kernel(ONES, DivClass(2, 1))) == 5
    assert len(W.effectivity_kernel(ONES, DivClass(2, 3))) == 0
    assert len(W.effectivity_kernel(T25, DivClass(725, 3))) == 0


@pytest.mark.parametrize("d", range(7))
def test_effectivity_dimension_matches_count_on_plane(d):
    for l in range(d + 1):
        expected = max(0, comb(d + 2, 2) - comb(l + 1, 2))
        dim = len(W.effectivity_kernel(ONES, DivClass(d, l)))
        assert dim == expected == kernel_dim_oracle(ONES, d, l)


@pytest.mark.parametrize("w,d,l", [((1, 2, 3), 6, 2), ((1, 2, 3), 9, 3), ((2, 3, 5), 30, 3), ((1, 2, 3), 12, 4)])
def test_effectivity_dimension_weighted_oracle(w, d, l):
    t = WeightedTriple(*w)
    assert len(W.effectivity_kernel(t, DivClass(d, l))) == kernel_dim_oracle(t, d, l)


@pytest.mark.parametrize("w,d,l", [((1, 1, 1), 4, 2), ((1, 2, 3), 9, 3), ((2, 3, 5), 30, 3)])
def test_kernel_elements_vanish_and_obey_euler_cascade(w, d, l):
    t = WeightedTriple(*w)
    for f in W.effectivity_kernel(t, DivClass(d, l)):
        assert W.multiplicity_at_e(f, t) >= l
        for order in range(1, l + 1):
            assert W.euler_cascade_holds(f, order)


# negative curves


def test_negative_curve_examples():
    c4 = W.negative_curve(4)
    assert c4.f == y**3 - x**4 * z**4
    assert c4.cls == DivClass(216, 1)
    assert c4.self_intersection == Fraction(-77, 725)
    c5 = W.negative_curve(5)
    assert c5.cls == DivClass(345, 1)
    assert c5.self_intersection == Fraction(345**2, 136160) - 1 < 0
    with pytest.raises(WpsError):
        W.negative_curve(6)
    with pytest.raises(WpsError):
        W.negative_curve(3)


def test_curve_data_checks_class():
    with pytest.raises(WpsError):
        W.CurveData(y - x**2, DivClass(3, 1), WeightedTriple(1, 2, 3))
    with pytest.raises(WpsError):
        W.CurveData(y - x**2, DivClass(2, 0), WeightedTriple(1, 2, 3))


def test_orthogonal_classes_for_many_m():
    for m in range(4, 41):
        if m % 3 == 0:
            continue
        c = W.negative_curve(m)
        for d in range(1, 6):
            assert W.class_intersection(c.triple, W.orthogonal_class(m, d), c.cls) == 0


# determinant


def test_determinant_examples():
    r4 = W.d1_determinant(4)
    assert abs(r4.determinant) == 4 * 625 * 841 * 24 * 28 * 653 and r4.equal
    r5 = W.d1_determinant(5)
    assert abs(r5.determinant) == 4 * 1024 * 1369 * 31 * 36 * 1069 and r5.equal
    assert W.d1_determinant(7).equal


def test_determinant_matrix_against_sympy_derivatives():
    m = 4
    monos = W.d1_monomials(m)
    rows = []
    for a, b, c in W.SECOND_ORDER:
        rows.append([sympy.diff(X**e[0] * Y**e[1] * Z**e[2], X, a, Y, b, Z, c).subs({X: 1, Y: 1, Z: 1})
                     for e in monos])
    assert W.d1_matrix(m) == [[int(v) for v in r] for r in rows]
    assert sympy.Matrix(rows).det() == W.d1_determinant(m).determinant


def test_determinant_precondition():
    with pytest.raises(WpsError):
        W.d1_determinant(9)


# symbolic powers


def test_symbolic_power_examples():
    from mdv.gnwpoly import gnw_system

    s = gnw_system(4)
    assert W.in_symbolic_power(s.d2, 2, T25)
    assert W.in_symbolic_power(s.d3, 3, T25)
    assert not W.in_symbolic_power(x, 1, T25)
    assert W.symbolic_power_obstruction(x, 1, T25) == (0, 0, 0)
    with pytest.raises(WpsError):
        W.in_symbolic_power(Polynomial({(1, 0, 0): 1}, modulus=3), 1, T25)


def test_symbolic_power_order_is_sharp_for_curve_generator():
    c = y**3 - x**4 * z**4
    assert W.in_symbolic_power(c, 1, T25)
    assert not W.in_symbolic_power(c, 2, T25)
    assert W.in_symbolic_power(c**2, 2, T25)


# witness search


def _brute_force_witness(t, cls, f):
    """Some kernel element not divisible by f, using sympy nullspace and division."""
    monos = W.monomials_of_weighted_degree(t, cls.d)
    rows = []
    for order in range(cls.l):
        for a in range(order + 1):
            for b in range(order - a + 1):
                c = order - a - b
                rows.append([sympy.diff(X**e[0] * Y**e[1] * Z**e[2], X, a, Y, b, Z, c).subs({X: 1, Y: 1, Z: 1})
                             for e in monos])
    basis = sympy.Matrix(rows).nullspace() if rows else [sympy.eye(len(monos))[:, i] for i in range(len(monos))]
    F = sympy.sympify(f.to_string().replace("^", "**"))
    for v in basis:
        g = sum(v[i] * X**e[0] * Y**e[1] * Z**e[2] for i, e in enumerate(monos))
        q = sympy.cancel(g / F)
        if not sympy.fraction(q)[1].is_number:
            return True
    return False


def test_witness_search_positive_control():
    t = WeightedTriple(1, 2, 3)
    curve = W.CurveData(y - x**2, DivClass(2, 1), t)
    assert curve.self_intersection == Fraction(-1, 3)
    found = W.huneke_witness_search(t, curve, 3)
    assert [k for k, _ in found] == [1, 2, 3]
    k1 = found[0][1]
    assert W.weighted_degree(k1, t.weights) == 3 and W.multiplicity_at_e(k1) >= 1
    with pytest.raises(NotDivisibleError):
        exact_divide(k1, curve.f)
    for k in (1, 2, 3):
        assert _brute_force_witness(t, DivClass(3 * k, k), curve.f)


def test_witness_levels_form_semigroup():
    t = WeightedTriple(1, 2, 3)
    curve = W.CurveData(y - x**2, DivClass(2, 1), t)
    levels = [k for k, _ in W.huneke_witness_search(t, curve, 6)]
    assert levels == [1, 2, 3, 4, 5, 6]
    assert W.semigroup_consistent(levels, 6)


def test_witness_search_negative_control():
    c = W.negative_curve(4)
    assert W.huneke_witness_search(c.triple, c, 2) == []
    dims = [lv.dimension for lv in W.scan_levels(c.triple, c, 2)]
    assert dims[0] == 0


def test_witness_search_parallel_matches_serial():
    t = WeightedTriple(1, 2, 3)
    curve = W.CurveData(y - x**2, DivClass(2, 1), t)
    assert W.scan_levels(t, curve, 4, jobs=2) == W.scan_levels(t, curve, 4)


def test_witness_search_rejects_nonnegative_curve():
    curve = W.CurveData(parse_polynomial("x"), DivClass(1, 0), ONES)
    with pytest.raises(WpsError):
        W.huneke_witness_search(ONES, curve, 2)


def test_semigroup_consistency_rules():
    assert W.semigroup_consistent([], 5)
    assert W.semigroup_consistent([2, 4], 5)
    assert not W.semigroup_consistent([2, 3], 6)
    assert not W.semigroup_consistent([2, 5], 6)
