import random
from fractions import Fraction

import pytest

from equimult.series import TruncatedSeries, generators
from equimult.surface import (NotHypersurface, from_equation)

X, Y, Z = generators("X", "Y", "Z")


class TestFromEquation:
    def test_already_normalized(self):
        S = from_equation(Z ** 2 - X ** 3)
        assert S.n == 2
        assert S.coeffs[0].to_text() == "-X^3"
        assert len(S.coeffs) == 1  # the Z^{n-1} slot does not exist

    def test_complete_the_square(self):
        S = from_equation(Z ** 2 + 2 * X * Z + X ** 2 - Y ** 3)
        assert S.n == 2
        assert S.to_text() == "Z^2 - Y^3"

    def test_flagship_expansion(self):
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        assert S.n == 2
        assert S.coeffs[0].to_text() == "-Y^4 + 2*X^3*Y^2 - X^6"

    def test_unit_rejected(self):
        with pytest.raises(NotHypersurface):
            from_equation(Z ** 2 + 1)

    def test_zero_rejected(self):
        with pytest.raises(NotHypersurface):
            from_equation(TruncatedSeries.zero(("X", "Y", "Z")))

    def test_idempotent(self):
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        again = from_equation(S.equation())
        assert again == S

    def test_z_coefficient_removed(self):
        # the normalized surface has no Z^{n-1} coefficient at all
        S = from_equation(Z ** 3 + X * Z ** 2 + X ** 5)
        assert S.n == 3
        assert S.coefficient(2).is_zero()

    def test_regularization_recorded(self):
        S = from_equation(X * Z + Y ** 5)
        assert S.n == 2
        assert any(p.get("op") == "z_regularize" for p in S.provenance)


class TestMultiplicity:
    def test_cusp(self):
        assert from_equation(Z ** 2 - X ** 3).multiplicity() == 2

    def test_order_three(self):
        assert from_equation(Z ** 3 + X ** 2 * Y ** 2 * Z + X ** 5).multiplicity() == 3

    def test_smooth(self):
        assert from_equation(Z + X ** 7).multiplicity() == 1

    def test_matches_newton_minimum(self, rng):
        from conftest import random_surface
        for _ in range(30):
            S = random_surface(rng)
            n = S.n
            degrees = [i + j + k for (i, j, k) in S.newton_set()]
            assert min(degrees + [n]) == n

    def test_invariant_under_linear_changes(self):
        rng = random.Random(3)
        F = Z ** 2 - (Y ** 2 - X ** 3) ** 2
        x, y, z = (TruncatedSeries.variable(v, ("X", "Y", "Z")) for v in ("X", "Y", "Z"))
        for _ in range(12):
            while True:
                m = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
                det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                       - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                       + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
                if det != 0:
                    break
            images = {v: m[i][0] * x + m[i][1] * y + m[i][2] * z
                      for i, v in enumerate(("X", "Y", "Z"))}
            G = F.substitute(images)
            assert from_equation(G, search_bound=4).multiplicity() == 2


class TestNewtonSet:
    def test_cusp(self):
        assert from_equation(Z ** 2 - X ** 3).newton_set() == [(3, 0, 0)]

    def test_square_monomial(self):
        assert from_equation(Z ** 2 - X ** 2 * Y ** 2).newton_set() == [(2, 2, 0)]

    def test_flagship(self):
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        assert S.newton_set() == [(0, 4, 0), (3, 2, 0), (6, 0, 0)]

    def test_roundtrip_through_serialization(self):
        import json
        S = from_equation(Z ** 2 - (Y ** 2 - X ** 3) ** 2)
        blob = json.dumps([list(t) for t in S.newton_set()])
        assert [tuple(t) for t in json.loads(blob)] == S.newton_set()


class TestTangentCone:
    def test_plane(self):
        assert from_equation(Z ** 2 - X ** 3).tangent_cone_is_plane()

    def test_degree_n_monomial_breaks_planarity(self):
        assert not from_equation(Z ** 2 - X ** 2 - X ** 3).tangent_cone_is_plane()

    def test_quartic_tail_irrelevant(self):
        S = from_equation(Z ** 2 - X ** 2 - Y ** 4)
        assert not S.tangent_cone_is_plane()
        assert S.cone().to_text() == "-X^2 + Z^2"
