"""The equimultiple locus: membership, permittedness, and the search for
smooth equimultiple curves.

Membership of a curve (Z, G) is the divisibility criterion G^{n-k} | a_k for
every coefficient of the surface; for exact polynomial data the test is
decided exactly through a polynomial gcd, otherwise it is certified only to
the working precision.  Smooth members with polynomial parametrizations
``Y - h(X)`` / ``X - h(Y)`` are found by lifting the coefficients of h one
degree at a time, branching on the rational roots of the lowest obstruction
that the divisibility conditions leave exposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coordinates import VariableChange
from .series import (DEFAULT_PRECISION, SeriesError, NotDivisible,
                     TruncatedSeries, precision_text)
from .surface import WeierstrassSurface
from .univariate import (divides_in_local_ring, irreducible_witnesses,
                         normalize as upoly_normalize, poly_gcd,
                         rational_roots)
from .weierstrass import weierstrass_prepare


class CurveError(Exception):
    pass


class PrecisionUndecided(Exception):
    """The divisibility test passed to the working precision but the inputs
    are truncated, so the answer is not a certificate."""


class LiftingError(Exception):
    pass


class CurveIdeal:
    """The ideal (Z, G) for a plane series G of positive order."""

    __slots__ = ("g",)

    def __init__(self, g: TruncatedSeries):
        if g.arity != 2:
            raise CurveError("curve generator must be a plane series")
        if g.order_lower_bound() < 1:
            raise CurveError("curve generator must vanish at the origin")
        if g.is_zero():
            raise CurveError("zero generator does not define a curve")
        object.__setattr__(self, "g", g)

    def __setattr__(self, name, value):
        raise AttributeError("CurveIdeal is immutable")

    @property
    def smooth(self) -> bool:
        return self.g.min_degree() == 1

    @property
    def vars(self):
        return self.g.vars

    def normalized_generator(self) -> TruncatedSeries:
        """Generator scaled so its graded-lex-least term has coefficient 1."""
        exps = min(self.g.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
        lead = self.g.terms[exps]
        return self.g / lead

    def canonical_key(self):
        return (self.vars, self.normalized_generator().to_text())

    def relabel(self, vars) -> "CurveIdeal":
        return CurveIdeal(self.g.relabel(vars))

    def __eq__(self, other):
        if not isinstance(other, CurveIdeal):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        z = "Z" if not self.vars[0].endswith("1") else "Z1"
        return f"({z}, {self.normalized_generator().to_text()})"

    def to_json(self):
        return {"g": self.normalized_generator().to_text(),
                "smooth": self.smooth,
                "precision": precision_text(self.g.prec)}


def curves_equal(a: CurveIdeal, b: CurveIdeal) -> bool:
    """Ideal equality: same normalized generator, or mutual divisibility of
    exact generators (unit factors do not change the ideal)."""
    if a.vars != b.vars:
        return False
    if a.canonical_key() == b.canonical_key():
        return True
    if a.g.is_exact and b.g.is_exact:
        return (divides_in_local_ring(a.g, b.g)
                and divides_in_local_ring(b.g, a.g))
    return False


@dataclass
class EquimultipleCheck:
    verdict: bool | None          # None: divisible to precision only
    certified: str                # "exact" or "to precision p"
    obstruction: tuple | None = None   # (k, monomial text or None)

    def to_json(self):
        out = {"equimultiple": self.verdict, "certified": self.certified}
        if self.obstruction is not None:
            k, mono = self.obstruction
            out["obstruction"] = {"coefficient": k, "monomial": mono}
        return out


def check_equimultiple(S: WeierstrassSurface, C: CurveIdeal,
                       precision: int | None = None) -> EquimultipleCheck:
    """Divisibility criterion G^{n-k} | a_k for k = 0..n-2."""
    if C.vars != S.plane_vars:
        raise CurveError(f"curve over {C.vars} does not match surface over {S.plane_vars}")
    precision = precision or DEFAULT_PRECISION
    n = S.n
    exact_inputs = C.g.is_exact and all(a.is_exact for a in S.coeffs)
    any_bounded = False
    bound = precision
    for k, a in enumerate(S.coeffs):
        power = n - k
        if a.is_zero():
            if not a.is_exact:
                any_bounded = True
                bound = min(bound, a.prec)
            continue
        gm = C.g ** power
        if exact_inputs:
            if not divides_in_local_ring(a, gm):
                mono = None
                try:
                    a.divide_exact(gm, precision)
                except NotDivisible as exc:
                    mono = exc.monomial
                except SeriesError:
                    mono = None
                return EquimultipleCheck(False, "exact", (k, mono))
        else:
            try:
                q = a.divide_exact(gm, precision)
            except NotDivisible as exc:
                return EquimultipleCheck(False, f"to precision {precision}", (k, exc.monomial))
            if q.prec is not None:
                any_bounded = True
                bound = min(bound, q.prec + gm.order_lower_bound())
    if exact_inputs:
        return EquimultipleCheck(True, "exact")
    if any_bounded:
        return EquimultipleCheck(None, f"to precision {bound}")
    return EquimultipleCheck(True, "exact")


def is_equimultiple(S: WeierstrassSurface, C: CurveIdeal,
                    precision: int | None = None) -> bool:
    check = check_equimultiple(S, C, precision)
    if check.verdict is None:
        raise PrecisionUndecided(f"undecided at {check.certified}")
    return check.verdict


def is_permitted_axis(S: WeierstrassSurface, axis: str = "X") -> bool:
    """Combinatorial permittedness of (Z, X): every Newton point satisfies
    i + k >= n (symmetric test for the (Z, Y) axis)."""
    if axis not in ("X", "Y"):
        raise CurveError("axis must be 'X' or 'Y'")
    pick = 0 if axis == "X" else 1
    return all(t[pick] + t[2] >= S.n for t in S.newton_set())


def axis_curve(S: WeierstrassSurface, axis: str = "X") -> CurveIdeal:
    name = S.plane_vars[0 if axis == "X" else 1]
    return CurveIdeal(TruncatedSeries.variable(name, S.plane_vars))


def _swap_plane(series: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(series.vars,
                           {(j, i): c for (i, j), c in series.terms.items()},
                           series.prec)


def normalize_curve(S: WeierstrassSurface, C: CurveIdeal,
                    precision: int | None = None):
    """Move a smooth curve to the axis (Z, X) by a plane change of variables.

    Returns the transformed surface and the change; the change applied to
    C's generator is a unit multiple of X.
    """
    if not C.smooth:
        raise CurveError("only smooth curves can be normalized to an axis")
    precision = precision or DEFAULT_PRECISION
    plane = S.plane_vars
    vars3 = S.vars
    x_name, y_name = plane
    init = C.g.initial_form()
    a = init.coefficient((1, 0))
    changes = []
    work_g = C.g
    if a == 0:
        work_g = _swap_plane(work_g)
        swap = VariableChange.from_plane_images(
            vars3,
            TruncatedSeries.variable(y_name, vars3),
            TruncatedSeries.variable(x_name, vars3))
        changes.append(swap)
    unit, dist = weierstrass_prepare(work_g, precision, var=x_name)
    shift = dist - TruncatedSeries.variable(x_name, plane)
    for (i, _j) in shift.terms:
        if i != 0:
            raise CurveError("preparation did not isolate the X generator")
    shift3 = TruncatedSeries(vars3, {(0, j, 0): c for (_i, j), c in shift.terms.items()},
                             shift.prec)
    x3 = TruncatedSeries.variable(x_name, vars3)
    y3 = TruncatedSeries.variable(y_name, vars3)
    translate = VariableChange.from_plane_images(vars3, x3 - shift3, y3)
    changes.append(translate)
    change = changes[0]
    for nxt in changes[1:]:
        change = change.compose(nxt)
    image = change.apply(C.g)
    if image.is_exact:
        x_gen = TruncatedSeries.variable(x_name, plane)
        if not (divides_in_local_ring(image, x_gen)
                and divides_in_local_ring(x_gen, image)):
            raise CurveError("normalization failed to map the curve onto the axis")
    new_coeffs = [change.apply(ak) for ak in S.coeffs]
    S2 = WeierstrassSurface(S.n, new_coeffs, vars3,
                            S.provenance + ({"op": "normalize_curve",
                                             "curve": C.normalized_generator().to_text(),
                                             "change": change.to_json()},))
    return S2, change


# -- enumeration of smooth equimultiple curves -------------------------------

@dataclass
class LocusReport:
    curves: list
    smooth_curves: list
    completeness: str
    witnesses: list = field(default_factory=list)
    degree_bound: int = 0
    includes_origin: bool = True

    def to_json(self):
        return {
            "curves": [c.to_json() for c in self.curves],
            "smooth_curves": [c.to_json() for c in self.smooth_curves],
            "includes_origin": self.includes_origin,
            "completeness": self.completeness,
            "witnesses": list(self.witnesses),
            "degree_bound": self.degree_bound,
        }


def _param_order(series: TruncatedSeries) -> int | None:
    """Adic order in the first variable of a two-variable polynomial."""
    if not series.terms:
        return None
    return min(e[0] for e in series.terms)


def _c_polynomials(series: TruncatedSeries, window) -> list:
    """Coefficient polynomials in C of param^m for every m below the window."""
    polys = {}
    for (m, cexp), coeff in series.terms.items():
        if window is not None and m >= window:
            continue
        polys.setdefault(m, {})[cexp] = coeff
    out = []
    for m in sorted(polys):
        table = polys[m]
        top = max(table)
        out.append(upoly_normalize([table.get(i, Fraction(0)) for i in range(top + 1)]))
    return [p for p in out if p]


def _lift_family(S: WeierstrassSurface, main: str, degree_bound: int):
    """All polynomial h of degree <= bound with (Z, main - h(param))
    equimultiple, by staged coefficient lifting; returns (curves, witnesses)."""
    plane = S.plane_vars
    param = plane[0] if plane[1] == main else plane[1]
    n = S.n
    aux_vars = (param, "C")
    param_gen = TruncatedSeries.variable(param, aux_vars)

    main_idx = plane.index(main)
    ders = {}
    for k, a in enumerate(S.coeffs):
        if a.is_zero():
            continue
        deg_main = max(e[main_idx] for e in a.terms)
        d = a
        ders[(k, 0)] = a
        for j in range(1, deg_main + 1):
            d = d.derivative(main)
            ders[(k, j)] = d

    found = []
    witnesses = []

    def substituted(h_coeffs, stage):
        image_terms = {(t + 1, 0): c for t, c in enumerate(h_coeffs) if c != 0}
        image_terms[(stage + 1, 1)] = Fraction(1)
        image = TruncatedSeries(aux_vars, image_terms)
        images = {main: image, param: param_gen}
        return {kj: d.substitute(images) for kj, d in ders.items()}

    def verify(h_coeffs):
        terms = {}
        e_main = tuple(1 if v == main else 0 for v in plane)
        terms[e_main] = Fraction(1)
        for t, c in enumerate(h_coeffs):
            if c == 0:
                continue
            e = tuple(t + 1 if v == param else 0 for v in plane)
            terms[e] = terms.get(e, Fraction(0)) - c
        curve = CurveIdeal(TruncatedSeries(plane, terms))
        if check_equimultiple(S, curve).verdict is True:
            found.append(curve)

    def stage(h_coeffs):
        s = len(h_coeffs)
        if s == degree_bound:
            verify(h_coeffs)
            return
        subs = substituted(h_coeffs, s)
        constraints = []
        live = False
        for (k, j), r in subs.items():
            if j >= n - k:
                continue
            if r.is_zero():
                continue
            live = True
            window = None
            i = 1
            while (k, j + i) in subs:
                higher = subs[(k, j + i)]
                if not higher.is_zero():
                    candidate = _param_order(higher) + i * (s + 2)
                    window = candidate if window is None else min(window, candidate)
                i += 1
            constraints.extend(_c_polynomials(r, window))
        if not live:
            # every divisibility condition vanishes identically: only possible
            # when the relevant coefficients are all zero, handled by caller
            verify(h_coeffs)
            return
        if not constraints:
            # nothing below the safe window: stop this branch loudly rather
            # than guess; the prefix itself is still checked
            witnesses.append(
                f"lifting stalled at degree {s}; completeness not guaranteed "
                f"beyond this prefix")
            verify(h_coeffs)
            return
        g = constraints[0]
        for p in constraints[1:]:
            g = poly_gcd(g, p)
            if len(g) == 1:
                return  # no common root: branch dies
        if len(g) == 1:
            return
        witnesses.extend(irreducible_witnesses(g, "c"))
        for root, _mult in rational_roots(g):
            stage(h_coeffs + [root])

    stage([])
    return found, witnesses


def enumerate_smooth_equimultiple(S: WeierstrassSurface, degree_bound: int = 8,
                                  precision: int | None = None) -> LocusReport:
    """Search the smooth equimultiple locus over polynomial parametrizations
    of degree <= degree_bound with rational coefficients."""
    if any(not a.is_exact for a in S.coeffs):
        raise CurveError("enumeration requires exact polynomial coefficients")
    plane = S.plane_vars
    if all(a.is_zero() for a in S.coeffs):
        axes = [axis_curve(S, "X"), axis_curve(S, "Y")]
        return LocusReport(
            curves=axes, smooth_curves=axes,
            completeness=("degenerate: every coefficient vanishes, so every "
                          "curve through the origin is equimultiple; axis "
                          "representatives listed"),
            degree_bound=degree_bound)
    curves = []
    witnesses = []
    for main in (plane[0], plane[1]):
        fam, wit = _lift_family(S, main, degree_bound)
        witnesses.extend(wit)
        for c in fam:
            if not any(curves_equal(c, seen) for seen in curves):
                curves.append(c)
    curves.sort(key=lambda c: c.canonical_key())
    completeness = f"verified within degree bound {degree_bound}"
    if witnesses:
        completeness += "; irrational branch detected"
        witnesses = sorted(set(witnesses))
    return LocusReport(curves=curves, smooth_curves=list(curves),
                       completeness=completeness, witnesses=witnesses,
                       degree_bound=degree_bound)
