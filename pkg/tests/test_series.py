import math
import random
from fractions import Fraction

import pytest

from equimult.series import (DEFAULT_PRECISION, NotDivisible, OrderBound,
                             PrecisionViolation, TruncatedSeries, generators)

X, Y, Z = generators("X", "Y", "Z")
Xp, Yp = generators("X", "Y")


def random_poly(rng, vars, max_degree=5, terms=4):
    table = {}
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(0, max_degree // len(vars) + 1) for _ in vars)
        if sum(exps) > max_degree:
            continue
        table[exps] = Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3]))
    return TruncatedSeries(vars, {e: c for e, c in table.items() if c != 0})


class TestOrder:
    def test_smallest_total_degree(self):
        assert (X ** 2 * Y + Z ** 3).order() == 3

    def test_exact_zero_is_infinite(self):
        assert TruncatedSeries.zero(("X", "Y")).order() == math.inf

    def test_nonzero_constant(self):
        assert TruncatedSeries.constant(7, ("X", "Y")).order() == 0

    def test_truncated_zero_reports_lower_bound(self):
        zero24 = TruncatedSeries.zero(("X", "Y"), prec=24)
        assert zero24.order() == OrderBound(24)

    def test_multiplicative_on_exact_series(self, rng):
        for _ in range(50):
            f = random_poly(rng, ("X", "Y"))
            g = random_poly(rng, ("X", "Y"))
            if f.is_zero() or g.is_zero():
                continue
            assert (f * g).order() == f.order() + g.order()


class TestInitialForm:
    def test_lowest_homogeneous_part(self):
        assert (Z ** 2 - X ** 3).initial_form() == Z ** 2

    def test_two_terms_of_minimal_degree(self):
        f = Z ** 2 - X ** 2 - X ** 3
        assert f.initial_form() == Z ** 2 - X ** 2

    def test_linear_part(self):
        assert (X + Y + X * Y).initial_form() == X + Y

    def test_empty_series_rejected(self):
        with pytest.raises(Exception, match="indeterminate initial form"):
            TruncatedSeries.zero(("X", "Y")).initial_form()


class TestSubstitute:
    def test_quadratic_chart_on_tacnode_source(self):
        X1, Y1 = generators("X1", "Y1")
        f = Yp ** 2 - Xp ** 3
        image = f.substitute({"X": X1, "Y": X1 * Y1})
        assert image == X1 ** 2 * Y1 ** 2 - X1 ** 3

    def test_monoidal_image_with_translation(self):
        X1, Y1, Z1 = generators("X1", "Y1", "Z1")
        image = Z.substitute({"Z": X1 * (Z1 + 1), "X": X1, "Y": Y1})
        assert image == X1 * Z1 + X1

    def test_constant_shift_of_exact_polynomial(self):
        t = Fraction(3, 2)
        shifted = Xp.substitute({"X": Xp + TruncatedSeries.constant(t, ("X", "Y"))})
        assert shifted == Xp + t

    def test_constant_shift_into_truncation_rejected(self):
        trunc = (Xp + Yp).truncated_at(5)
        with pytest.raises(PrecisionViolation):
            trunc.substitute({"X": Xp + 1})

    def test_associativity_on_exact_inputs(self, rng):
        for _ in range(20):
            f = random_poly(rng, ("X", "Y"), max_degree=4)
            g1 = {"X": random_poly(rng, ("X", "Y"), 3), "Y": random_poly(rng, ("X", "Y"), 3)}
            g2 = {"X": random_poly(rng, ("X", "Y"), 3), "Y": random_poly(rng, ("X", "Y"), 3)}
            step = f.substitute(g1).substitute(g2)
            composed = f.substitute({v: img.substitute(g2) for v, img in g1.items()})
            assert step == composed


class TestDivideExact:
    def test_factor_out_exceptional_power(self):
        X1, Y1 = generators("X1", "Y1")
        q = (X1 ** 2 * Y1 ** 2 - X1 ** 3).divide_exact(X1 ** 2)
        assert q == Y1 ** 2 - X1

    def test_unit_divisor_identity(self):
        f = Xp ** 2 + 3 * Yp
        assert f.divide_exact(TruncatedSeries.constant(1, ("X", "Y"))) == f

    def test_perfect_square(self):
        f = Yp ** 4 - 2 * Xp ** 3 * Yp ** 2 + Xp ** 6
        assert f.divide_exact(Yp ** 2 - Xp ** 3) == Yp ** 2 - Xp ** 3

    def test_obstruction_reported(self):
        with pytest.raises(NotDivisible) as err:
            (Xp ** 3 + Yp ** 5).divide_exact(Yp ** 2)
        assert err.value.monomial == "X^3"

    def test_roundtrip_random(self, rng):
        for _ in range(40):
            f = random_poly(rng, ("X", "Y"), 4)
            g = random_poly(rng, ("X", "Y"), 4)
            if f.is_zero() or g.is_zero():
                continue
            assert (f * g).divide_exact(g) == f

    def test_unit_quotient_is_series(self):
        # X / (X + X^2) = 1/(1+X): divisible in the local ring, quotient truncated
        q = Xp.divide_exact(Xp + Xp ** 2, 6)
        expected = TruncatedSeries(("X", "Y"),
                                   {(i, 0): Fraction((-1) ** i) for i in range(6)}, 6)
        assert q == expected


class TestInvertUnit:
    def test_one(self):
        one = TruncatedSeries.constant(1, ("X", "Y"))
        assert one.invert_unit(8) == one

    def test_geometric_series(self):
        inv = (1 + Yp).invert_unit(4)
        assert inv == TruncatedSeries(("X", "Y"),
                                      {(0, j): Fraction((-1) ** j) for j in range(4)},
                                      prec=4)

    def test_constant(self):
        assert TruncatedSeries.constant(2, ("X", "Y")).invert_unit(4) == Fraction(1, 2)

    def test_product_is_one_to_precision(self, rng):
        for _ in range(25):
            u = random_poly(rng, ("X", "Y"), 4) + 1
            if u.constant_term() == 0:
                continue
            prod = u * u.invert_unit(9)
            one = TruncatedSeries.constant(1, ("X", "Y"))
            assert prod.agrees_with(one, upto=9)


class TestRingAxioms:
    def test_distributivity_exact(self, rng):
        for _ in range(40):
            f = random_poly(rng, ("X", "Y", "Z"), 4)
            g = random_poly(rng, ("X", "Y", "Z"), 4)
            h = random_poly(rng, ("X", "Y", "Z"), 4)
            assert (f + g) * h == f * h + g * h

    def test_exact_closed_under_ring_ops(self):
        f = Xp + Yp ** 2
        assert (f * f + f - f).is_exact

    def test_mixed_precision_truncates(self):
        f = (Xp + Yp).truncated_at(6)
        g = Xp ** 2 + 1
        assert (f + g).prec == 6
        assert (f * g).prec == 6  # g is a unit: order 0


@pytest.fixture
def rng():
    return random.Random(97)
