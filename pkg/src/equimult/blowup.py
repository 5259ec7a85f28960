"""Quadratic and monoidal transforms of surfaces and curves, chart maps
induced by changes of variables, and the constructive inverse of the strict
transform of a curve tangent to the exceptional divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coordinates import ChartError, Direction, VariableChange
from .curves import CurveIdeal, is_permitted_axis
from .series import DEFAULT_PRECISION, TruncatedSeries, precision_text
from .surface import WeierstrassSurface, from_equation


class NotPermittedError(ChartError):
    pass


class TransversalError(ChartError):
    pass


def subscript(vars):
    return tuple(v + "1" for v in vars)


def rename(obj):
    """The renaming isomorphism: X -> X1, Y -> Y1, Z -> Z1."""
    if isinstance(obj, TruncatedSeries):
        return obj.relabel(subscript(obj.vars))
    if isinstance(obj, WeierstrassSurface):
        return obj.relabel(subscript(obj.vars))
    if isinstance(obj, CurveIdeal):
        return obj.relabel(subscript(obj.vars))
    raise TypeError(f"cannot rename {type(obj)!r}")


def relabel_base(obj, vars):
    """Inverse bookkeeping for ``rename``: move an object onto ``vars``."""
    return obj.relabel(tuple(vars))


def quadratic_chart(vars3, d: Direction):
    """Images of the chart homomorphism for a quadratic transform, the
    subscripted target alphabet, and the name of the exceptional coordinate."""
    new = subscript(vars3)
    gens = {v: TruncatedSeries.variable(v, new) for v in new}
    x1, y1, z1 = (gens[v] for v in new)
    a, b, c = d.coords
    if d.privileged == 0:
        images = {vars3[0]: x1, vars3[1]: x1 * (y1 + b), vars3[2]: x1 * (z1 + c)}
        exceptional = new[0]
    elif d.privileged == 1:
        images = {vars3[0]: y1 * (x1 + a), vars3[1]: y1, vars3[2]: y1 * (z1 + c)}
        exceptional = new[1]
    else:
        images = {vars3[0]: z1 * (x1 + a), vars3[1]: z1 * (y1 + b), vars3[2]: z1}
        exceptional = new[2]
    return images, new, exceptional


def monoidal_chart(vars3, d: Direction):
    """Chart images for the monoidal transform centered at (Z, X)."""
    if d.beta != 0:
        raise ChartError("monoidal directions at the center (Z, X) have beta = 0")
    if d.privileged != 0 or d.alpha == 0:
        raise ChartError("monoidal charts privilege the X coordinate")
    new = subscript(vars3)
    x1 = TruncatedSeries.variable(new[0], new)
    y1 = TruncatedSeries.variable(new[1], new)
    z1 = TruncatedSeries.variable(new[2], new)
    images = {vars3[0]: x1, vars3[1]: y1, vars3[2]: x1 * (z1 + d.gamma)}
    return images, new, new[0]


def _on_cone(S: WeierstrassSurface, d: Direction) -> bool:
    point = dict(zip(S.vars, d.coords))
    return S.cone().evaluate(point) == 0


def quadratic_transform(S: WeierstrassSurface, d: Direction,
                        precision: int | None = None) -> WeierstrassSurface:
    """Blow up the origin and take the chart selected by the direction."""
    precision = precision or DEFAULT_PRECISION
    if not _on_cone(S, d):
        raise ChartError("transform is a unit — no surface germ here")
    images, _new, exceptional = quadratic_chart(S.vars, d)
    image = S.equation().substitute(images)
    e_power = TruncatedSeries.variable(exceptional, _new) ** S.n
    strict = image.divide_exact(e_power, precision)
    entry = {"op": "quadratic", "direction": [str(c) for c in d.coords],
             "privileged": d.privileged_name, "exceptional": exceptional}
    return from_equation(strict, precision, provenance=S.provenance + (entry,))


def monoidal_transform(S: WeierstrassSurface, d: Direction,
                       precision: int | None = None) -> WeierstrassSurface:
    """Blow up along the permitted curve (Z, X) in the direction (alpha:0:gamma)."""
    precision = precision or DEFAULT_PRECISION
    if not is_permitted_axis(S, "X"):
        raise NotPermittedError("center (Z, X) is not permitted")
    images, _new, exceptional = monoidal_chart(S.vars, d)
    point = {S.vars[0]: d.alpha, S.vars[1]: Fraction(0), S.vars[2]: d.gamma}
    if S.cone().evaluate(point) != 0:
        raise ChartError("transform is a unit — no surface germ here")
    image = S.equation().substitute(images)
    e_power = TruncatedSeries.variable(exceptional, _new) ** S.n
    strict = image.divide_exact(e_power, precision)
    entry = {"op": "monoidal", "center": "(Z, X)",
             "direction": [str(c) for c in d.coords], "exceptional": exceptional}
    return from_equation(strict, precision, provenance=S.provenance + (entry,))


def curve_quadratic_transform(Q: CurveIdeal, d: Direction) -> CurveIdeal:
    """Strict transform of a curve under the quadratic chart at d."""
    plane = Q.vars
    new = subscript(plane)
    x1 = TruncatedSeries.variable(new[0], new)
    y1 = TruncatedSeries.variable(new[1], new)
    if d.privileged == 0:
        images = {plane[0]: x1, plane[1]: x1 * (y1 + d.beta)}
        exceptional = x1
    elif d.privileged == 1:
        images = {plane[0]: y1 * (x1 + d.alpha), plane[1]: y1}
        exceptional = y1
    else:
        raise ChartError("curve transforms use X- or Y-privileged charts")
    m = Q.g.min_degree()
    image = Q.g.substitute(images)
    strict = image.divide_exact(exceptional ** m)
    if strict.is_unit():
        raise ChartError("curve does not pass through this point")
    return CurveIdeal(strict)


def curve_monoidal_transform(Q: CurveIdeal, d: Direction) -> CurveIdeal:
    """Strict transform of a curve under the monoidal chart at (Z, X);
    divides out the X-adic order of the generator along the center."""
    if d.beta != 0 or d.alpha == 0:
        raise ChartError("monoidal directions at the center (Z, X) have beta = 0")
    plane = Q.vars
    new = subscript(plane)
    m = min(e[0] for e in Q.g.terms)
    terms = {(i - m, j): c for (i, j), c in Q.g.terms.items()}
    strict = TruncatedSeries(new, terms, Q.g.prec)
    if strict.is_unit():
        raise ChartError("improper transform: the curve is the center")
    return CurveIdeal(strict)


def induced_chart_map(phi: VariableChange, d: Direction, d_prime: Direction,
                      precision: int | None = None) -> VariableChange:
    """The unique change of variables between the chart at d and the chart at
    d' with psi . pi_d = pi_d' . phi, built constructively and verified."""
    precision = precision or DEFAULT_PRECISION
    if not phi.maps_direction(d_prime, d):
        raise ChartError("the linear part of the change does not map d' to d")
    src = phi.source_vars
    chart_d, src1, _ = quadratic_chart(src, d)
    chart_dp, tgt1, _ = quadratic_chart(phi.target_vars, d_prime)
    rhs = {v: phi.images[v].substitute(chart_dp) for v in src}

    piv = d.privileged
    piv_var = src[piv]
    e_psi = rhs[piv_var]
    images = {src1[piv]: e_psi}
    for i, v in enumerate(src):
        if i == piv:
            continue
        quotient = rhs[v].divide_exact(e_psi, precision)
        images[src1[i]] = quotient - d.coords[i]
    psi = VariableChange(src1, tgt1, images)
    for v in src:
        lhs = chart_d[v].substitute(psi.images)
        if not lhs.agrees_with(rhs[v], upto=precision):
            raise ChartError("internal consistency failure: chart map does not commute")
    return psi


@dataclass
class StrictTransformInverse:
    """Solution (H, u) of H(X1, X1*Y1) = X1^lambda * u * (X1 + G(Y1)),
    with the solved coefficient tables kept for audit."""

    H: TruncatedSeries
    u: TruncatedSeries
    lam: int
    gamma_table: dict
    beta_table: dict

    def to_json(self):
        def table(t):
            return {f"{i},{j}": str(c) for (i, j), c in sorted(t.items())}
        return {"H": self.H.to_text(), "u": self.u.to_text(),
                "lambda": self.lam,
                "precision": precision_text(self.H.prec),
                "beta": table(self.beta_table),
                "gamma": table(self.gamma_table)}


def invert_strict_transform(G: TruncatedSeries, precision: int | None = None,
                            plane_vars=("X", "Y")) -> StrictTransformInverse:
    """Invert the strict transform of a curve tangent to the divisor.

    G is a one-variable series of order lambda >= 2 (the curve downstairs is
    (Z1, X1 + G(Y1))); the returned H generates its preimage (Z, H(X, Y)).
    The solution is the canonical one: gamma_{0,0} = 1, the free gamma
    entries zero, constrained entries solved in the lexicographic sweep.
    """
    if G.arity != 1:
        raise ChartError("G must be a one-variable series")
    lam = G.min_degree()
    if lam is None:
        raise ChartError("G must be nonzero")
    if lam < 2:
        raise TransversalError("curve is transversal — inversion is the trivial renaming preimage")
    p = precision or DEFAULT_PRECISION
    if G.prec is not None:
        p = min(p, G.prec)
    alpha = {e[0]: c for e, c in G.terms.items()}
    a_lam = alpha[lam]

    top = p - 1
    needs = [0] * (top + 1)
    needs[top] = max(p - 1 - top, 0)
    for a in range(top - 1, -1, -1):
        needs[a] = max(p - 1 - a, needs[a + 1] + lam)

    gamma = {(0, 0): Fraction(1)}

    def gval(a, m):
        if a < 0 or m < 0:
            return Fraction(0)
        return gamma.get((a, m), Fraction(0))

    for a in range(0, top + 1):
        for m in range(a + 1 if a else 1, needs[a] + 1):
            b = m + lam
            acc = gval(a - 1, b)
            for l, al in alpha.items():
                if l == lam or l > b:
                    continue
                acc += al * gval(a, b - l)
            val = -acc / a_lam
            if val != 0:
                gamma[(a, m)] = val

    beta = {}
    for a in range(0, max(p - lam, 0) + 1):
        for b in range(0, a + lam + 1):
            acc = gval(a - 1, b)
            for l, al in alpha.items():
                if l > b:
                    continue
                acc += al * gval(a, b - l)
            if acc != 0:
                beta[(a + lam - b, b)] = acc

    # a trivial unit with exact G closes the recursion: every further table
    # entry is forced to zero, so H is the exact polynomial already computed
    trivial_unit = (G.is_exact and G.max_degree() <= p
                    and all(c == 0 for key, c in gamma.items() if key != (0, 0)))
    if trivial_unit:
        H = TruncatedSeries(plane_vars, beta, None)
        u = TruncatedSeries.constant(1, plane_vars)
    else:
        h_terms = {(i, j): c for (i, j), c in beta.items() if i + j < p}
        H = TruncatedSeries(plane_vars, h_terms, p)
        u_terms = {(a, m): c for (a, m), c in gamma.items() if a + m < p}
        u = TruncatedSeries(plane_vars, u_terms, p)

    if H.min_degree() != lam:
        raise ChartError("inversion failed: order of H is not lambda")
    slice0 = sorted(j for (i, j) in H.terms if i == 0)
    if not slice0 or slice0[0] != lam:
        raise ChartError("inversion failed: H(0, Y) does not have order lambda")
    if not u.is_unit():
        raise ChartError("inversion failed: u is not a unit")

    x_gen = TruncatedSeries.variable(plane_vars[0], plane_vars)
    y_gen = TruncatedSeries.variable(plane_vars[1], plane_vars)
    g_plane = TruncatedSeries(plane_vars, {(0, e[0]): c for e, c in G.terms.items()},
                              G.prec)
    window = p - lam
    lhs = H.substitute({plane_vars[0]: x_gen, plane_vars[1]: x_gen * y_gen})
    lhs = lhs.divide_exact(x_gen ** lam, window)
    rhs = u * (x_gen + g_plane)
    if not lhs.agrees_with(rhs, upto=window):
        raise ChartError("inversion failed: defining identity does not hold")
    return StrictTransformInverse(H, u, lam, gamma, beta)
