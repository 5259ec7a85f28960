import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_surface
from equimult.curves import (CurveError, CurveIdeal, axis_curve,
                             check_equimultiple, curves_equal,
                             enumerate_smooth_equimultiple, is_equimultiple,
                             is_permitted_axis, normalize_curve)
from equimult.series import TruncatedSeries, generators
from equimult.surface import from_equation

X, Y, Z = generators("X", "Y", "Z")
Xp, Yp = generators("X", "Y")


class TestIsEquimultiple:
    def test_singular_curve_of_the_flagship(self):
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        assert is_equimultiple(S, CurveIdeal(Yp ** 2 - Xp ** 3))

    def test_axis_on_cusp(self):
        S = from_equation(Z ** 2 - X ** 3)
        assert is_equimultiple(S, axis_curve(S, "X"))       # X^2 | X^3

    def test_wrong_axis_on_cusp(self):
        S = from_equation(Z ** 2 - X ** 3)
        assert not is_equimultiple(S, axis_curve(S, "Y"))   # Y^2 does not divide X^3

    def test_obstruction_reported(self):
        S = from_equation(Z ** 2 - X ** 3 - Y ** 7)
        check = check_equimultiple(S, CurveIdeal(Xp))
        assert check.verdict is False
        assert check.obstruction == (0, "Y^7")

    def test_zero_coefficient_is_divisible(self):
        S = from_equation(Z ** 3 + X ** 2 * Z)   # a_0 = 0, a_1 = X^2
        assert is_equimultiple(S, axis_curve(S, "X"))


class TestPermittedAxis:
    def test_whitney_umbrella(self):
        assert is_permitted_axis(from_equation(Z ** 2 - X ** 2 * Y))

    def test_product_of_cubes(self):
        assert is_permitted_axis(from_equation(Z ** 2 - X ** 3 * Y ** 3))

    def test_low_x_power_fails(self):
        assert not is_permitted_axis(from_equation(Z ** 2 - X * Y ** 3))

    def test_agrees_with_divisibility(self, rng):
        for trial in range(60):
            S = random_surface(rng, force_axis=(trial % 2 == 0))
            assert is_permitted_axis(S) == is_equimultiple(S, axis_curve(S, "X"))


class TestNormalizeCurve:
    def test_parabola_translation(self):
        S = from_equation(Z ** 2 - X ** 2 * Y)
        S2, phi = normalize_curve(S, CurveIdeal(Xp - Yp ** 2))
        assert phi.to_json() == {"X": "X + Y^2", "Y": "Y", "Z": "Z"}

    def test_axis_swap(self):
        S = from_equation(Z ** 2 - X ** 2 * Y)
        S2, phi = normalize_curve(S, CurveIdeal(Yp))
        assert phi.to_json() == {"X": "Y", "Y": "X", "Z": "Z"}

    def test_unit_absorbed(self):
        S = from_equation(Z ** 2 - X ** 2 * Y)
        S2, phi = normalize_curve(S, CurveIdeal(2 * Xp + Yp ** 3))
        image = phi.apply(2 * Xp + Yp ** 3)
        assert image.to_text() == "2*X"   # unit multiple of the axis

    def test_singular_curve_rejected(self):
        S = from_equation(Z ** 2 - X ** 3)
        with pytest.raises(CurveError):
            normalize_curve(S, CurveIdeal(Yp ** 2 - Xp ** 3))

    def test_conjugation_invariant(self, rng):
        # a smooth curve is equimultiple iff the axis is permitted after moving it there
        shifts = [Yp ** 2, -Yp ** 2, 2 * Yp ** 3, Yp ** 2 + Yp ** 3]
        for shift in shifts:
            curve = CurveIdeal(Xp - shift)
            gen3 = curve.g
            # build a surface with that curve planted: Z^2 - (X - shift)^2 * unit-free junk
            planted = (gen3 ** 2) * (Xp + Yp + 1)
            terms3 = {(i, j, 0): c for (i, j), c in planted.terms.items()}
            F = Z ** 2 - TruncatedSeries(("X", "Y", "Z"), terms3)
            S = from_equation(F)
            assert is_equimultiple(S, curve)
            S2, _phi = normalize_curve(S, curve)
            assert is_permitted_axis(S2)


class TestEnumerate:
    def test_whitney_umbrella(self):
        S = from_equation(Z ** 2 - X ** 2 * Y)
        report = enumerate_smooth_equimultiple(S, 4)
        assert [c.normalized_generator().to_text() for c in report.smooth_curves] == ["X"]

    def test_both_axes(self):
        S = from_equation(Z ** 2 - X ** 3 * Y ** 3)
        report = enumerate_smooth_equimultiple(S, 4)
        assert [c.normalized_generator().to_text() for c in report.smooth_curves] == ["X", "Y"]

    def test_flagship_has_no_smooth_members(self):
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        report = enumerate_smooth_equimultiple(S, 6)
        assert report.smooth_curves == []
        assert report.includes_origin

    def test_planted_curve_found(self):
        g = Yp - Xp ** 2 - 2 * Xp ** 3
        planted = g ** 2 * (1 + Xp)
        F = Z ** 2 - TruncatedSeries(
            ("X", "Y", "Z"), {(i, j, 0): c for (i, j), c in planted.terms.items()})
        S = from_equation(F)
        report = enumerate_smooth_equimultiple(S, 4)
        assert any(curves_equal(c, CurveIdeal(g)) for c in report.smooth_curves)

    def test_two_branches_through_same_tangent(self):
        a0 = (Yp - Xp ** 2) ** 2 * (Yp - Xp ** 2 - Xp ** 3) ** 2
        F = Z ** 2 - TruncatedSeries(
            ("X", "Y", "Z"), {(i, j, 0): c for (i, j), c in a0.terms.items()})
        S = from_equation(F)
        report = enumerate_smooth_equimultiple(S, 4)
        names = {c.normalized_generator().to_text() for c in report.smooth_curves}
        assert names == {"Y - X^2", "Y - X^2 - X^3"}

    def test_irrational_branch_reported(self):
        # tangent directions are the roots of c^2 = 2
        a0 = (Yp ** 2 - 2 * Xp ** 2) ** 2
        F = Z ** 2 - TruncatedSeries(
            ("X", "Y", "Z"), {(i, j, 0): c for (i, j), c in a0.terms.items()})
        S = from_equation(F)
        report = enumerate_smooth_equimultiple(S, 3)
        assert report.smooth_curves == []
        assert any("c^2 - 2" in w for w in report.witnesses)
        assert "irrational branch detected" in report.completeness

    def test_sound_and_complete_against_brute_force(self, rng):
        for _ in range(12):
            S = random_surface(rng, n=2, max_degree=5)
            report = enumerate_smooth_equimultiple(S, 2)
            found = {c.normalized_generator().to_text() for c in report.smooth_curves}
            # soundness
            for c in report.smooth_curves:
                assert check_equimultiple(S, c).verdict is True
            # completeness against exhaustive small search
            brute = set()
            for c1, c2 in itertools.product(range(-2, 3), repeat=2):
                for main, param in ((Xp, Yp), (Yp, Xp)):
                    g = main - c1 * param - c2 * param ** 2
                    if check_equimultiple(S, CurveIdeal(g)).verdict is True:
                        brute.add(CurveIdeal(g).normalized_generator().to_text())
            assert brute <= found

    def test_degenerate_surface_reported(self):
        S = from_equation(Z ** 2 + TruncatedSeries.zero(("X", "Y", "Z")))
        report = enumerate_smooth_equimultiple(S, 3)
        assert "degenerate" in report.completeness
