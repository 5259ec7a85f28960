"""Algebroid surfaces in Weierstrass form.

A surface is stored as its multiplicity n together with the coefficient
series a_0 .. a_{n-2} of a normalized equation
``Z^n + a_{n-2} Z^{n-2} + ... + a_0`` over the plane variables.  The
normalization pipeline (regularization, preparation, removal of the Z^{n-1}
term) is recorded in the provenance so every surface knows how it was put
into this shape.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .series import (DEFAULT_PRECISION, SeriesError, TruncatedSeries,
                     precision_text)
from .weierstrass import NotRegular, regularity_order, weierstrass_prepare


class SurfaceError(Exception):
    pass


class NotHypersurface(SurfaceError):
    pass


class RegularizationFailed(SurfaceError):
    pass


class WeierstrassSurface:
    __slots__ = ("n", "coeffs", "vars", "provenance")

    def __init__(self, n: int, coeffs, vars=("X", "Y", "Z"), provenance=()):
        vars = tuple(vars)
        if len(vars) != 3:
            raise SurfaceError("a surface needs three variables")
        coeffs = tuple(coeffs)
        if n < 1:
            raise NotHypersurface("multiplicity must be at least 1")
        expected = max(n - 1, 0)
        if len(coeffs) != expected:
            raise SurfaceError(f"need {expected} coefficients for multiplicity {n}")
        plane = vars[:2]
        for k, a in enumerate(coeffs):
            if a.vars != plane:
                raise SurfaceError(f"coefficient {k} over {a.vars}, expected {plane}")
            lb = a.order_lower_bound()
            if lb < n - k:
                raise SurfaceError(
                    f"order of coefficient {k} is {lb}, violating ord >= {n - k}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "provenance", tuple(provenance))

    def __setattr__(self, name, value):
        raise AttributeError("WeierstrassSurface is immutable")

    @property
    def plane_vars(self):
        return self.vars[:2]

    def coefficient(self, k: int) -> TruncatedSeries:
        """a_k, including the implicit zero a_{n-1} and the monic a_n = 1."""
        if k == self.n:
            return TruncatedSeries.constant(1, self.plane_vars)
        if k == self.n - 1 or k > self.n:
            return TruncatedSeries.zero(self.plane_vars)
        return self.coeffs[k]

    def equation(self) -> TruncatedSeries:
        terms = {}
        prec = None
        for k in range(self.n + 1):
            a = self.coefficient(k)
            if a.prec is not None:
                prec = a.prec if prec is None else min(prec, a.prec)
            for exps, c in a.terms.items():
                terms[(exps[0], exps[1], k)] = c
        return TruncatedSeries(self.vars, terms, prec)

    def newton_set(self):
        """Exponents (i, j, k) of the nonzero coefficients, k <= n-2."""
        triples = []
        for k, a in enumerate(self.coeffs):
            for (i, j), _ in a.terms.items():
                triples.append((i, j, k))
        return sorted(triples)

    def multiplicity(self) -> int:
        return self.n

    def tangent_cone_is_plane(self) -> bool:
        """True when the initial form is Z^n: no Newton point on degree n."""
        return all(i + j + k > self.n for (i, j, k) in self.newton_set())

    def cone(self) -> TruncatedSeries:
        """The initial form of the equation (an exact homogeneous form)."""
        return self.equation().initial_form()

    def relabel(self, vars) -> "WeierstrassSurface":
        vars = tuple(vars)
        coeffs = [a.relabel(vars[:2]) for a in self.coeffs]
        return WeierstrassSurface(self.n, coeffs, vars, self.provenance)

    def with_provenance(self, *entries) -> "WeierstrassSurface":
        return WeierstrassSurface(self.n, self.coeffs, self.vars,
                                  self.provenance + tuple(entries))

    def precision(self):
        precs = [a.prec for a in self.coeffs if a.prec is not None]
        return min(precs) if precs else None

    def __eq__(self, other):
        return (isinstance(other, WeierstrassSurface) and self.n == other.n
                and self.vars == other.vars and self.coeffs == other.coeffs)

    def to_text(self) -> str:
        return self.equation().to_text()

    def __repr__(self):
        return f"WeierstrassSurface(n={self.n}, {self.to_text()})"

    def to_json(self):
        return {
            "n": self.n,
            "vars": list(self.vars),
            "coeffs": [{"k": k, "series": a.to_text(),
                        "precision": precision_text(a.prec)}
                       for k, a in enumerate(self.coeffs)],
            "equation": self.to_text(),
            "provenance": [dict(p) for p in self.provenance],
        }


def _is_monic_z_polynomial(F: TruncatedSeries, n: int) -> bool:
    pure = (0, 0, n)
    if F.terms.get(pure) != 1:
        return False
    for exps in F.terms:
        if exps[2] > n:
            return False
        if exps[2] == n and exps != pure:
            return False
    return True


def _coeff_list(F: TruncatedSeries, n: int):
    """Split a monic Z-polynomial into its coefficient series b_0..b_{n-1}."""
    plane = F.vars[:2]
    tables = [dict() for _ in range(n)]
    for (i, j, k), c in F.terms.items():
        if k < n:
            tables[k][(i, j)] = c
    return [TruncatedSeries(plane, t, F.prec) for t in tables]


def from_equation(F: TruncatedSeries, precision: int | None = None,
                  search_bound: int = 5, provenance=()) -> WeierstrassSurface:
    """Normalize an equation into a Weierstrass surface.

    Steps, each recorded in the provenance: make the equation regular in the
    last variable (searching small integer shears when needed), apply
    Weierstrass preparation and discard the unit, then remove the Z^{n-1}
    coefficient by the standard shift Z -> Z - a_{n-1}/n.
    """
    if F.arity != 3:
        raise SurfaceError("surface equations use three variables")
    if F.is_zero():
        raise NotHypersurface("zero equation does not define a surface germ")
    n = F.min_degree()
    if n == 0:
        raise NotHypersurface("not a hypersurface germ: the equation is a unit")
    precision = precision or DEFAULT_PRECISION
    vars = F.vars
    zname = vars[2]
    history = list(provenance)

    F_reg = F
    if regularity_order(F, zname) != n:
        found = False
        shears = sorted(
            ((c, d) for c in range(-search_bound, search_bound + 1)
             for d in range(-search_bound, search_bound + 1)),
            key=lambda cd: (abs(cd[0]) + abs(cd[1]), cd))
        x, y, z = (TruncatedSeries.variable(v, vars) for v in vars)
        for c, d in shears:
            if c == 0 and d == 0:
                continue
            candidate = F.substitute({vars[0]: x + c * z, vars[1]: y + d * z})
            if regularity_order(candidate, zname) == n:
                F_reg = candidate
                history.append({"op": "z_regularize", "shear": [c, d]})
                found = True
                break
        if not found:
            raise RegularizationFailed(
                f"no shear with |c|+|d| <= {2 * search_bound} makes the equation "
                f"regular of order {n} in {zname}")

    if _is_monic_z_polynomial(F_reg, n):
        b = _coeff_list(F_reg, n)
    else:
        unit, dist = weierstrass_prepare(F_reg, precision, zname)
        history.append({"op": "weierstrass_prepare",
                        "unit_discarded": unit.to_text(),
                        "precision": precision_text(dist.prec)})
        b = _coeff_list(dist, n)

    if not b[n - 1].is_zero():
        shift = b[n - 1] / n
        new_b = []
        for m in range(n):
            acc = TruncatedSeries.constant(comb(n, m), b[0].vars) * ((-shift) ** (n - m))
            for k in range(m, n):
                acc = acc + comb(k, m) * b[k] * ((-shift) ** (k - m))
            new_b.append(acc)
        if not new_b[n - 1].is_zero():
            raise SurfaceError("shift failed to remove the Z^{n-1} coefficient")
        history.append({"op": "tschirnhausen", "shift": shift.to_text()})
        b = new_b

    coeffs = b[:max(n - 1, 0)]
    return WeierstrassSurface(n, coeffs, vars, history)


def multiplicity(S: WeierstrassSurface) -> int:
    return S.multiplicity()


def newton_set(S: WeierstrassSurface):
    return S.newton_set()


def tangent_cone_is_plane(S: WeierstrassSurface) -> bool:
    return S.tangent_cone_is_plane()
