import random
from fractions import Fraction

import pytest

from equimult.series import TruncatedSeries, generators
from equimult.weierstrass import (NotRegular, weierstrass_divide,
                                  weierstrass_prepare)

X, Y = generators("X", "Y")


def catalan_shift(order):
    """Solve h - h^2 = X coefficient by coefficient: the independent oracle
    for the preparation of Y + Y^2 + X."""
    h = [Fraction(0)] * order
    h[1] = Fraction(1)
    for n in range(2, order):
        # coefficient of X^n in h^2
        square = sum(h[i] * h[n - i] for i in range(1, n))
        h[n] = square
    return h


class TestDivide:
    def test_exact_square(self):
        f = Y ** 4 - 2 * X ** 3 * Y ** 2 + X ** 6
        res = weierstrass_divide(f, (Y ** 2 - X ** 3) ** 2, 12)
        assert res.quotient.agrees_with(TruncatedSeries.constant(1, ("X", "Y")), upto=12)
        assert all(s.is_zero() for s in res.remainder_coeffs)

    def test_degree_too_low(self):
        res = weierstrass_divide(Y, Y ** 2, 8)
        assert res.quotient.is_zero()
        assert res.remainder_coeffs[0].is_zero()
        assert res.remainder_coeffs[1] == TruncatedSeries.constant(1, ("X",), prec=8)

    def test_linear_quotient(self):
        res = weierstrass_divide(X * Y ** 2 + X ** 2, Y ** 2 + X, 10)
        assert res.quotient.agrees_with(X, upto=10)
        assert all(s.is_zero() for s in res.remainder_coeffs)

    def test_membership_requires_vanishing_remainder(self):
        res = weierstrass_divide(Y ** 2, Y ** 2 - X ** 3, 10)
        assert res.quotient.agrees_with(TruncatedSeries.constant(1, ("X", "Y")), upto=10)
        assert res.remainder_coeffs[0].agrees_with(
            TruncatedSeries(("X",), {(3,): 1}), upto=9)

    def test_not_regular_rejected(self):
        with pytest.raises(NotRegular):
            weierstrass_divide(Y, X, 8)

    def test_uniqueness_under_permuted_term_order(self):
        rng = random.Random(11)
        terms = [((i, j), Fraction(rng.randint(-3, 3)))
                 for i in range(4) for j in range(4)]
        terms = [t for t in terms if t[1] != 0]
        h = Y ** 2 + X ** 3 + X * Y
        results = []
        for _ in range(4):
            rng.shuffle(terms)
            table = {}
            for e, c in terms:
                table[e] = c
            f = TruncatedSeries(("X", "Y"), table)
            res = weierstrass_divide(f, h, 10)
            results.append((res.quotient, tuple(res.remainder_coeffs)))
        first = results[0]
        assert all(r == first for r in results[1:])


class TestPrepare:
    def test_already_factored(self):
        f = (1 + X) * (Y ** 2 - X ** 3)
        unit, dist = weierstrass_prepare(f, 10)
        assert unit.agrees_with(1 + X, upto=10)
        assert dist.agrees_with(Y ** 2 - X ** 3, upto=10)

    def test_catalan_coefficients(self):
        unit, dist = weierstrass_prepare(Y + Y ** 2 + X, 8)
        h = dist - Y
        oracle = catalan_shift(8)
        for n in range(1, 8):
            assert h.coefficient((n, 0)) == oracle[n]
        assert [h.coefficient((n, 0)) for n in range(1, 6)] == \
            [Fraction(c) for c in (1, 1, 2, 5, 14)]

    def test_monomial_fast_path(self):
        unit, dist = weierstrass_prepare(Y ** 2, 8)
        assert unit == TruncatedSeries.constant(1, ("X", "Y"))
        assert dist == Y ** 2 and dist.is_exact

    def test_roundtrip_random(self):
        rng = random.Random(5)
        for _ in range(15):
            d = rng.randint(1, 3)
            f = Y ** d
            for _ in range(rng.randint(1, 3)):
                i = rng.randint(0, 3)
                j = rng.randint(0, 2)
                if i == 0 and j >= d:
                    continue
                f = f + Fraction(rng.randint(-2, 2)) * X ** i * Y ** j if i + j > 0 else f
            if not f.terms.get((0, d)):
                continue
            try:
                unit, dist = weierstrass_prepare(f, 10)
            except NotRegular:
                continue
            assert (unit * dist).agrees_with(f, upto=unit.prec or 10)
            # distinguished: monic of the regularity order with non-unit lower coefficients
            top = max(j for (i, j) in dist.terms if i == 0)
            assert dist.coefficient((0, top)) == 1
            for (i, j) in dist.terms:
                assert j <= top
                if j < top:
                    assert i >= 1

    def test_prepare_in_first_variable(self):
        g = 2 * X + Y ** 3
        unit, dist = weierstrass_prepare(g, 8, var="X")
        assert dist.agrees_with(X + Fraction(1, 2) * Y ** 3, upto=8)
