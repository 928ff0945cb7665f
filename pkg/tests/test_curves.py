"""Curve engine: evaluation, classification, explicit/structural forms,
exceptional constructors, enumeration, nonintersection."""

from __future__ import annotations

import itertools
import random

import pytest

from mubcurves.errors import (
    DegenerateRoots,
    InputError,
    NoExplicitForm,
    NoStructuralEquation,
    NotAnAdmissibleCurve,
    NotCommutative,
)
from mubcurves import curves as C
from mubcurves.field import make_field, subgroup_basis

F4 = make_field(2)
F8 = make_field(3)
F16 = make_field(4)


def s4(k):
    return F4.sigma_pow(k)


def s8(k):
    return F8.sigma_pow(k)


# the two eight-dimensional worked regular curves
CURVE_431 = C.ParametricCurve((s8(2), 1, s8(4)), (s8(3), s8(6), s8(6)))
CURVE_432 = C.ParametricCurve((0, 0, s8(2)), (s8(2), 1, s8(1)))


class TestEvaluation:
    def test_origin(self):
        assert CURVE_431.eval(F8, 0) == (0, 0)

    @pytest.mark.parametrize("F,curve", [
        (F8, CURVE_431),
        (F8, CURVE_432),
        (F4, C.ParametricCurve((2, 0), (3, 2))),
    ])
    def test_additivity_all_pairs(self, F, curve):
        for k1 in F.elements():
            for k2 in F.elements():
                p1, p2 = curve.eval(F, k1), curve.eval(F, k2)
                p12 = curve.eval(F, k1 ^ k2)
                assert p12 == (p1[0] ^ p2[0], p1[1] ^ p2[1])

    def test_additivity_random_coefficients(self):
        rng = random.Random(11)
        for _ in range(200):
            curve = C.ParametricCurve(
                tuple(rng.randrange(8) for _ in range(3)),
                tuple(rng.randrange(8) for _ in range(3)))
            for k1, k2 in itertools.product(range(8), repeat=2):
                p1, p2 = curve.eval(F8, k1), curve.eval(F8, k2)
                assert curve.eval(F8, k1 ^ k2) == (p1[0] ^ p2[0], p1[1] ^ p2[1])

    def test_point_set_is_subgroup(self):
        pts = C.point_set(F8, CURVE_431)
        assert len(pts) == 8
        assert C.is_additive_subgroup(pts)

    def test_mismatched_degree(self):
        with pytest.raises(InputError):
            C.point_set(F4, CURVE_431)


class TestCommutativity:
    def test_ray_commutes(self):
        for mu in F4.elements():
            for nu in F4.elements():
                pts = {(F4.mul(mu, k), F4.mul(nu, k)) for k in F4.elements()}
                assert C.is_commutative(F4, pts)

    def test_noncommutative_example(self):
        # alpha = kappa, beta = sigma kappa^2 over GF(4)
        pts = C.point_set(F4, C.ParametricCurve((1, 0), (0, 2)))
        assert not C.is_commutative(F4, pts)

    def test_worked_curves_commute(self):
        assert C.is_commutative(F8, C.point_set(F8, CURVE_431))
        assert C.is_commutative(F8, C.point_set(F8, CURVE_432))

    def test_coefficient_symmetry_matches_pointwise_test(self):
        # explicit-form symmetry constraint agrees with the exhaustive test
        for phi in itertools.product(F4.elements(), repeat=2):
            pts = C.point_set(F4, C.ParametricCurve((1, 0), phi))
            assert (C.is_commutative(F4, pts)
                    == C.commutativity_symmetric(F4, phi))


class TestWMatrices:
    def test_worked_example_dets(self):
        assert C.w_det(F8, CURVE_431.alpha_coeffs) == 1
        assert C.w_det(F8, CURVE_431.beta_coeffs) == 1
        assert C.w_det(F8, CURVE_432.alpha_coeffs) == 1
        assert C.w_det(F8, CURVE_432.beta_coeffs) == 0

    def test_zero_tuple(self):
        assert C.w_det(F8, (0, 0, 0)) == 0
        assert C.w_rank(F8, (0, 0, 0)) == 0

    def test_det_in_01_exhaustive_gf4(self):
        for coeffs in itertools.product(F4.elements(), repeat=2):
            assert C.w_det(F4, coeffs) in (0, 1)

    def test_det_in_01_random_gf8(self):
        rng = random.Random(3)
        for _ in range(10_000):
            coeffs = tuple(rng.randrange(8) for _ in range(3))
            assert C.w_det(F8, coeffs) in (0, 1)

    def test_rank_full_iff_det_one(self):
        for coeffs in itertools.product(F4.elements(), repeat=2):
            rank, det = C.w_rank(F4, coeffs), C.w_det(F4, coeffs)
            assert (rank == 2) == (det == 1)


class TestClassification:
    def test_regular_both(self):
        cls = C.classify(F8, CURVE_431)
        assert cls.kind == "regular" and cls.variant == "RegularBoth"
        assert cls.rank_alpha == cls.rank_beta == 3

    def test_regular_alpha_only(self):
        cls = C.classify(F8, CURVE_432)
        assert cls.variant == "RegularAlphaOnly"
        assert (cls.degeneracy_alpha, cls.degeneracy_beta) == (1, 2)

    def test_gf4_exceptional(self):
        pts = C.exceptional_equal(F4, [F4.primitive])
        cls = C.classify_points(F4, pts)
        assert cls.variant == "Exceptional"
        assert (cls.rank_alpha, cls.rank_beta) == (1, 1)
        assert (cls.degeneracy_alpha, cls.degeneracy_beta) == (2, 2)

    def test_ray_variant(self):
        ray = frozenset((a, F4.mul(F4.primitive, a)) for a in F4.elements())
        assert C.classify_points(F4, ray).variant == "Ray"

    def test_singular_input_rejected(self):
        # both coordinates collapse: alpha = kappa + kappa^2, beta = sigma alpha
        bad = C.ParametricCurve((1, 1), (2, 2))
        assert not C.is_nonsingular(F4, bad)
        with pytest.raises(NotAnAdmissibleCurve):
            C.classify(F4, bad)

    def test_noncommutative_input_rejected(self):
        with pytest.raises(NotCommutative):
            C.classify(F4, C.ParametricCurve((1, 0), (0, 2)))

    def test_exceptional_rank_bound(self):
        # r_alpha + r_beta >= n over the full atlases
        for F in (F4, F8):
            for pts in C.enumerate_exceptional(F):
                cls = C.classify_points(F, pts)
                assert cls.rank_alpha + cls.rank_beta >= F.n


class TestExplicitForms:
    def test_worked_example_431(self):
        assert C.explicit_form(F8, CURVE_431).phi == (s8(6), s8(3), s8(5))

    def test_worked_example_432(self):
        assert C.explicit_form(F8, CURVE_432).phi == (s8(6), s8(5), s8(6))

    def test_ray_form(self):
        lam = s8(4)
        ray = C.ParametricCurve((1, 0, 0), (lam, 0, 0))
        assert C.explicit_form(F8, ray).phi == (lam, 0, 0)

    def test_exceptional_has_no_explicit_form(self):
        pts = C.exceptional_equal(F4, [F4.primitive])
        with pytest.raises(NoExplicitForm):
            C.explicit_curve(F4, pts)

    def test_orientation_fallback(self):
        # alpha = beta^2 type curve: beta map invertible, alpha map not
        pts = frozenset((F4.mul(k, k), k) for k in F4.elements())
        pts = C.point_set(F4, C.ParametricCurve((0, 1), (1, 0)))
        ec = C.explicit_curve(F4, pts)
        assert ec.orientation in ("alpha_form", "beta_form")
        assert all(ec.holds(F4, p) for p in pts)

    def test_explicit_roundtrip_regular_both(self):
        # alpha-form and beta-form describe the same point set
        pts = C.point_set(F8, CURVE_431)
        ec = C.explicit_curve(F8, pts)
        assert all(ec.holds(F8, p) for p in pts)
        mirrored = frozenset((b, a) for a, b in pts)
        em = C.explicit_curve(F8, mirrored)
        assert all(em.holds(F8, p) for p in mirrored)


class TestStructuralEquations:
    def test_gf4_example(self):
        # alpha^2 = sigma alpha and beta^2 = sigma^2 beta
        pts = C.exceptional_equal(F4, [F4.primitive])
        assert pts == frozenset({(0, 0), (s4(1), s4(2)), (0, s4(2)), (s4(1), 0)})
        ea, eb = C.structural_equations(F4, pts)
        assert ea.coeffs == (s4(1),) and eb.coeffs == (s4(2),)

    def test_gf8_equal_degeneracy_example(self):
        pts = C.exceptional_equal(F8, [s8(4), s8(3)])
        assert pts == frozenset({
            (0, 0), (s8(4), 0), (s8(4), s8(5)), (s8(3), 1), (s8(3), s8(4)),
            (s8(6), s8(4)), (s8(6), 1), (0, s8(5))})
        ea, eb = C.structural_equations(F8, pts)
        assert ea.coeffs == (s8(6), s8(4))
        assert eb.coeffs == (s8(2), s8(6))

    def test_gf8_unequal_degeneracy_example(self):
        pts = C.exceptional_unequal(F8, [s8(3), s8(5)])
        assert pts == frozenset({
            (0, 0), (s8(3), 0), (s8(5), 0), (s8(2), 0),
            (s8(3), s8(6)), (s8(5), s8(6)), (s8(2), s8(6)), (0, s8(6))})
        ea, eb = C.structural_equations(F8, pts)
        assert ea.coeffs == (s8(3), s8(2))
        assert eb.coeffs == (s8(6),)

    def test_trace_witness_annihilates_exactly(self):
        for F in (F4, F8):
            for pts in C.enumerate_exceptional(F):
                for axis, eq in zip((0, 1), C.structural_equations(F, pts)):
                    admissible = {p[axis] for p in pts}
                    for v in F.elements():
                        assert (eq.eval(F, v) == 0) == (v in admissible)
                        if eq.xi is not None:
                            assert ((F.trace(F.mul(eq.xi, v)) == 0)
                                    == (v in admissible))

    def test_regular_projection_has_no_annihilator(self):
        pts = C.point_set(F8, CURVE_431)
        with pytest.raises(NoStructuralEquation):
            C.annihilator(F8, {a for a, _ in pts})


class TestExceptionalConstructors:
    def test_gf8_beta1_formula(self):
        # beta_1 = 1/(a1+a2) + 1/a1 + 1/a2 = sigma^5 for (sigma^4, sigma^3)
        a1, a2 = s8(4), s8(3)
        b1 = F8.inv(a1 ^ a2) ^ F8.inv(a1) ^ F8.inv(a2)
        assert b1 == s8(5)
        assert (0, s8(5)) in C.exceptional_equal(F8, [a1, a2])

    def test_equal_count_21(self):
        curves = {C.exceptional_equal(F8, [a, b])
                  for a, b in itertools.permutations(range(1, 8), 2)}
        assert len(curves) == 21

    def test_root_permutation_symmetry(self):
        # alpha_2 and alpha_1 + alpha_2 give the same curve
        a1, a2 = s8(4), s8(3)
        assert (C.exceptional_equal(F8, [a1, a2])
                == C.exceptional_equal(F8, [a1, a1 ^ a2]))

    def test_unequal_count_14(self):
        curves = set()
        for r1, r2 in itertools.combinations(range(1, 8), 2):
            for swap in (False, True):
                curves.add(C.exceptional_unequal(F8, [r1, r2], swap=swap))
        assert len(curves) == 14

    def test_unequal_beta_values(self):
        pts = C.exceptional_unequal(F8, [s8(3), s8(5)])
        assert {b for _, b in pts} == {0, s8(6)}

    def test_dependent_roots_rejected(self):
        with pytest.raises(DegenerateRoots):
            C.exceptional_equal(F8, [s8(1), s8(1)])
        with pytest.raises(DegenerateRoots):
            C.exceptional_unequal(F8, [3, 3])


class TestEnumeration:
    def test_gf4_census(self):
        atlas = C.enumerate_curves(F4)
        kinds = [C.classify_points(F4, pts).kind for pts in atlas]
        assert len(atlas) == 15
        assert kinds.count("regular") == 12
        assert kinds.count("exceptional") == 3

    def test_gf8_census(self):
        atlas = C.enumerate_curves(F8)
        assert len(atlas) == 135
        regular = [p for p in atlas if C.classify_points(F8, p).kind == "regular"]
        exceptional = [p for p in atlas if C.classify_points(F8, p).kind == "exceptional"]
        assert len(regular) == 100
        equal = [p for p in exceptional
                 if C.classify_points(F8, p).degeneracy_alpha
                 == C.classify_points(F8, p).degeneracy_beta]
        assert len(equal) == 21 and len(exceptional) - len(equal) == 14

    def test_atlas_size_formula(self):
        assert [C.atlas_size(n) for n in (1, 2, 3, 4)] == [3, 15, 135, 2295]
        assert len(C.enumerate_curves(F16)) == 2295

    def test_every_curve_is_admissible(self):
        for F in (F4, F8):
            for pts in C.enumerate_curves(F):
                assert C.is_admissible(F, pts)

    def test_enumeration_is_deterministic(self):
        assert C.enumerate_curves(F8) == C.enumerate_curves(F8)


class TestNonintersection:
    def test_same_tail_fast_path_agrees(self):
        # det(W_phi + W_phi') = (phi0+phi0')^(2^n - 1) = 1 for phi0 != phi0'
        tail = (s8(2), s8(1))
        for p0, q0 in itertools.combinations(F8.elements(), 2):
            c1 = C.point_set(F8, C.curve_from_phi(F8, (p0,) + tail))
            c2 = C.point_set(F8, C.curve_from_phi(F8, (q0,) + tail))
            diff = [p0 ^ q0, 0, 0]
            det = C.w_det(F8, diff)
            assert det == 1
            assert C.nonintersecting(c1, c2)

    def test_identical_curves_intersect(self):
        pts = C.point_set(F8, CURVE_431)
        assert not C.nonintersecting(pts, pts)

    def test_mixed_regular_exceptional_pair(self):
        regular = C.point_set(F8, C.curve_from_phi(F8, (s8(2), s8(6), s8(3))))
        mirrored = frozenset((b, a) for a, b in regular)
        exceptional = C.exceptional_unequal(F8, [s8(3), s8(5)])
        assert C.nonintersecting(mirrored, exceptional)
