"""Orchestration: multiplicity-preserving directions, the multiplicity-drop
lemma for monoidal transforms at non-plane cones, classification of how the
smooth equimultiple locus moves through a blow-up, and the blow-up-until-
the-multiplicity-drops resolution loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .blowup import (curve_quadratic_transform, invert_strict_transform,
                     monoidal_transform, quadratic_chart, quadratic_transform,
                     relabel_base, rename, subscript)
from .coordinates import ChartError, Direction
from .curves import (CurveIdeal, axis_curve, check_equimultiple, curves_equal,
                     enumerate_smooth_equimultiple, is_permitted_axis,
                     normalize_curve)
from .series import DEFAULT_PRECISION, TruncatedSeries, precision_text
from .surface import WeierstrassSurface
from .univariate import irreducible_witnesses, normalize as upoly_normalize, \
    poly_gcd, poly_text, rational_roots
from .weierstrass import weierstrass_prepare

DEFAULT_DEGREE_BOUND = 8
DEFAULT_MAX_DEPTH = 12


class TheoremViolation(Exception):
    """A permitted curve of the transform fits none of the predicted shapes:
    this falsifies the classification encoding and is never a report state."""


class HypothesisViolation(Exception):
    pass


# -- equimultiple directions -------------------------------------------------

@dataclass
class DirectionSearch:
    isolated: list
    divisor_equimultiple: bool
    unresolved: list

    def to_json(self):
        return {"isolated": [d.to_json() for d in self.isolated],
                "divisor_equimultiple": self.divisor_equimultiple,
                "unresolved": list(self.unresolved)}


def equimultiple_directions(S: WeierstrassSurface) -> DirectionSearch:
    """Directions on the tangent cone where the quadratic transform keeps
    multiplicity n.

    In the chart (1:t:0) every low-degree coefficient of the transform is a
    polynomial in t; their common rational roots are the isolated directions,
    and if every condition vanishes identically the whole exceptional divisor
    stays equimultiple.  The direction (0:1:0) is checked combinatorially.
    """
    n = S.n
    conditions: dict = {}
    for (i, j, k) in S.newton_set():
        c = S.coeffs[k].coefficient((i, j))
        a = i + j + k - n
        for b in range(j + 1):
            if a + b + k >= n:
                continue
            poly = conditions.setdefault((a, b, k), {})
            e = j - b
            poly[e] = poly.get(e, Fraction(0)) + comb(j, b) * c
    polys = []
    for table in conditions.values():
        top = max(table)
        coeffs = upoly_normalize([table.get(i, Fraction(0)) for i in range(top + 1)])
        if coeffs:
            polys.append(coeffs)

    isolated = []
    unresolved = []
    divisor = not polys
    if polys:
        g = polys[0]
        for p in polys[1:]:
            g = poly_gcd(g, p)
            if len(g) == 1:
                break
        if len(g) > 1:
            for root, _m in rational_roots(g):
                isolated.append(Direction(1, root, 0))
            unresolved = irreducible_witnesses(g, "t")

    if all(2 * (i + k) + j >= 2 * n for (i, j, k) in S.newton_set()):
        isolated.append(Direction(0, 1, 0))
    return DirectionSearch(isolated, divisor, unresolved)


# -- the multiplicity-drop lemma ----------------------------------------------

@dataclass
class LemmaReport:
    cone_is_plane: bool
    vacuous: bool
    reason: str = ""
    center: str = ""
    directions_checked: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)
    m_values: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    verdict: bool | None = None

    def to_json(self):
        return {"cone_is_plane": self.cone_is_plane, "vacuous": self.vacuous,
                "reason": self.reason, "center": self.center,
                "directions_checked": [d.to_json() for d in self.directions_checked],
                "multiplicities": self.multiplicities,
                "m_values": self.m_values,
                "witnesses": list(self.witnesses),
                "verdict": self.verdict}


def _cone_root_polynomial(S: WeierstrassSurface):
    """Dehomogenized cone Z^n + sum a_{i,0,k} X^i Z^k -> monic p(t), assuming
    the cone does not involve Y (true once (Z, X) is permitted)."""
    n = S.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for (i, j, k) in S.newton_set():
        if i + j + k == n:
            if j != 0:
                raise HypothesisViolation("tangent cone depends on Y; normalize the center first")
            coeffs[k] += S.coeffs[k].coefficient((i, j))
    return coeffs


def verify_lemma(S: WeierstrassSurface, degree_bound: int = DEFAULT_DEGREE_BOUND,
                 precision: int | None = None) -> LemmaReport:
    """Check that every monoidal transform of a non-plane-cone surface drops
    the multiplicity, at every rational direction of the exceptional divisor."""
    precision = precision or DEFAULT_PRECISION
    if S.tangent_cone_is_plane():
        return LemmaReport(cone_is_plane=True, vacuous=True,
                           reason="tangent cone is a plane", verdict=None)
    locus = enumerate_smooth_equimultiple(S, degree_bound)
    if not locus.smooth_curves:
        return LemmaReport(cone_is_plane=False, vacuous=True,
                           reason="no permitted curve within the search bound",
                           witnesses=locus.witnesses, verdict=None)
    center = locus.smooth_curves[0]
    work = S
    if not curves_equal(center, axis_curve(S, "X")):
        work, _change = normalize_curve(S, center, precision)
    p = _cone_root_polynomial(work)
    roots = rational_roots(p)
    witnesses = irreducible_witnesses(p, "t")
    directions = []
    mults = []
    m_values = []
    verdict = True
    for root, m in roots:
        d = Direction(1, 0, root)
        transform = monoidal_transform(work, d, precision)
        directions.append(d)
        mults.append(transform.n)
        m_values.append(m)
        if transform.n >= S.n:
            verdict = False
    return LemmaReport(cone_is_plane=False, vacuous=False,
                       center=center.normalized_generator().to_text(),
                       directions_checked=directions, multiplicities=mults,
                       m_values=m_values, witnesses=witnesses, verdict=verdict)


# -- theorem classification ----------------------------------------------------

@dataclass
class TheoremReport:
    case: str
    kind: str
    direction: Direction
    outcome: str = ""
    locus_before: list = field(default_factory=list)
    locus_after: list = field(default_factory=list)
    image_equality: bool | None = None
    entries: list = field(default_factory=list)
    moreover: str = ""
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "case": self.case, "kind": self.kind,
            "direction": self.direction.to_json(),
            "outcome": self.outcome,
            "locus_before": [c.to_json() for c in self.locus_before],
            "locus_after": [c.to_json() for c in self.locus_after],
            "image_equality": self.image_equality,
            "entries": list(self.entries),
            "moreover": self.moreover,
            "notes": list(self.notes),
        }


def _sets_equal(left, right) -> bool:
    if len(left) != len(right):
        return False
    used = [False] * len(right)
    for c in left:
        hit = False
        for i, other in enumerate(right):
            if not used[i] and curves_equal(c, other):
                used[i] = True
                hit = True
                break
        if not hit:
            return False
    return True


def _pure_parametrized(g: TruncatedSeries, main_idx: int):
    """If g is unit * (main - h(other)), return h as a series in the other
    variable's exponent; otherwise None."""
    e_main = tuple(1 if i == main_idx else 0 for i in range(2))
    lead = g.coefficient(e_main)
    if lead == 0:
        return None
    gn = g / lead
    h_terms = {}
    for exps, c in gn.terms.items():
        if exps == e_main:
            continue
        if exps[main_idx] != 0:
            return None
        h_terms[exps] = -c
    return TruncatedSeries(g.vars, h_terms, gn.prec)


def classify_transform(S: WeierstrassSurface, kind: str, d: Direction,
                       center: CurveIdeal | None = None,
                       S1: WeierstrassSurface | None = None,
                       degree_bound: int = DEFAULT_DEGREE_BOUND,
                       precision: int | None = None) -> TheoremReport:
    """Classify how the smooth equimultiple locus moves through one blow-up
    with constant multiplicity.

    Monoidal transforms: the locus after is the renamed locus before, with or
    without the center.  Quadratic transforms at a non-plane cone: the locus
    maps through the curve transform one-to-one.  Quadratic transforms at a
    plane cone: every permitted curve after is the exceptional divisor, the
    desingularized image of a singular equimultiple curve (tangent to the
    divisor, inverted constructively), or the image of a permitted curve
    transversal to the divisor.
    """
    precision = precision or DEFAULT_PRECISION
    if kind == "monoidal":
        if center is None:
            center = axis_curve(S, "X")
        if not curves_equal(center, axis_curve(S, "X")):
            raise ChartError("normalize the center to (Z, X) before classifying")
        computed = monoidal_transform(S, d, precision)
    elif kind == "quadratic":
        computed = quadratic_transform(S, d, precision)
    else:
        raise ValueError(f"unknown transform kind {kind!r}")
    if S1 is None:
        S1 = computed
    elif S1.n != computed.n or not S1.equation().agrees_with(computed.equation()):
        raise HypothesisViolation("supplied transform does not match the stated blow-up")
    if S1.n != S.n:
        raise HypothesisViolation("theorem hypothesis violated — nothing to classify: "
                                  f"multiplicity {S.n} -> {S1.n}")

    before = enumerate_smooth_equimultiple(S, degree_bound).smooth_curves
    after = enumerate_smooth_equimultiple(S1, degree_bound).smooth_curves

    if kind == "monoidal":
        report = TheoremReport("a", kind, d, locus_before=before, locus_after=after)
        nu_all = [rename(c) for c in before]
        nu_minus = [rename(c) for c in before if not curves_equal(c, center)]
        if _sets_equal(after, nu_all):
            report.outcome = "nu(E_0)"
        elif _sets_equal(after, nu_minus):
            report.outcome = "nu(E_0 minus {P})"
        else:
            raise TheoremViolation("monoidal locus is neither nu(E_0) nor nu(E_0 minus {P})")
        return report

    if not S.tangent_cone_is_plane():
        report = TheoremReport("b1", kind, d, locus_before=before, locus_after=after)
        images = []
        for q in before:
            try:
                images.append(curve_quadratic_transform(q, d))
            except ChartError:
                report.notes.append(
                    f"curve {q.normalized_generator().to_text()} misses the chart point")
        report.image_equality = _sets_equal(after, images)
        report.outcome = "E_0(S1) == curve transform of E_0(S)" if report.image_equality \
            else "image equality FAILED"
        return report

    # case (b.2): plane cone
    report = TheoremReport("b2", kind, d, locus_before=before, locus_after=after)
    _images, new_vars, exceptional = quadratic_chart(S.vars, d)
    plane1 = new_vars[:2]
    e_idx = plane1.index(exceptional)
    o_idx = 1 - e_idx
    plane0 = S.plane_vars
    shift = d.coords[o_idx]  # beta in the X-chart, alpha in the Y-chart
    has_type_i = False
    has_type_ii = False

    for c1 in after:
        g1 = c1.g
        entry = {"curve": c1.normalized_generator().to_text()}
        h_tangent = _pure_parametrized(g1, e_idx)
        if h_tangent is not None and h_tangent.is_zero():
            entry["type"] = "i"
            entry["preimage"] = "exceptional"
            has_type_i = True
            report.entries.append(entry)
            continue
        if h_tangent is not None and h_tangent.min_degree() >= 2:
            # tangent to the divisor: desingularization of a singular
            # equimultiple curve; reconstruct it by inverting the strict
            # transform of (Z1, e1 - h(o1)) = (Z1, e1 + G(o1)), G = -h
            g_uni = TruncatedSeries((plane1[o_idx],),
                                    {(e[o_idx],): -c for e, c in h_tangent.terms.items()},
                                    h_tangent.prec)
            inverse = invert_strict_transform(g_uni, precision, plane_vars=plane0)
            x0 = TruncatedSeries.variable(plane0[0], plane0)
            y0 = TruncatedSeries.variable(plane0[1], plane0)
            if e_idx == 0:
                images = {plane0[0]: x0, plane0[1]: y0 - shift * x0}
            else:
                images = {plane0[0]: y0, plane0[1]: x0 - shift * y0}
            preimage = CurveIdeal(inverse.H.substitute(images))
            verdict = check_equimultiple(S, preimage, precision)
            if verdict.verdict is False:
                raise TheoremViolation(
                    "tangent permitted curve has no equimultiple preimage: "
                    f"{entry['curve']}")
            entry["type"] = "ii"
            entry["preimage"] = preimage.normalized_generator().to_text()
            entry["preimage_singular"] = not preimage.smooth
            entry["verified"] = verdict.certified
            has_type_ii = True
            report.entries.append(entry)
            continue
        h_trans = _pure_parametrized(g1, o_idx)
        if h_trans is None:
            # not in parametrized shape: normalize by preparation first
            unit, dist = weierstrass_prepare(g1, precision, var=plane1[o_idx])
            h_trans = _pure_parametrized(dist, o_idx)
            if h_trans is None:
                raise TheoremViolation(f"cannot classify permitted curve {entry['curve']}")
        # transversal to the divisor: image of a transversal permitted curve;
        # pull h(e1) back to the source plane
        x0 = TruncatedSeries.variable(plane0[0], plane0)
        y0 = TruncatedSeries.variable(plane0[1], plane0)
        if e_idx == 0:
            h_src = TruncatedSeries(plane0, {(e[0], 0): c for e, c in h_trans.terms.items()},
                                    h_trans.prec)
            gen = y0 - shift * x0 - x0 * h_src
        else:
            h_src = TruncatedSeries(plane0, {(0, e[1]): c for e, c in h_trans.terms.items()},
                                    h_trans.prec)
            gen = x0 - shift * y0 - y0 * h_src
        preimage = CurveIdeal(gen)
        verdict = check_equimultiple(S, preimage, precision)
        if verdict.verdict is False:
            raise TheoremViolation(
                f"transversal permitted curve has no permitted preimage: {entry['curve']}")
        entry["type"] = "iii"
        entry["preimage"] = preimage.normalized_generator().to_text()
        entry["verified"] = verdict.certified
        report.entries.append(entry)

    if has_type_ii and not has_type_i:
        raise TheoremViolation("a tangent curve appeared without the exceptional divisor")
    if has_type_ii:
        report.moreover = "holds: type (ii) present and type (i) present"
    else:
        report.moreover = "vacuous: no type (ii) curve"
    if report.entries:
        report.outcome = "types " + ", ".join(sorted({e["type"] for e in report.entries}))
    else:
        report.outcome = "empty locus"
    return report


# -- resolution driver ---------------------------------------------------------

@dataclass
class ResolutionNode:
    surface: WeierstrassSurface
    depth: int
    action: dict | None
    status: str = "open"
    children: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    blew_up: bool = False

    def to_json(self):
        return {
            "equation": self.surface.to_text(),
            "multiplicity": self.surface.n,
            "depth": self.depth,
            "status": self.status,
            "action": self.action,
            "notes": list(self.notes),
            "children": [c.to_json() for c in self.children],
        }


def tree_steps(root: ResolutionNode) -> int:
    """Number of blow-up rounds performed along the deepest path."""
    best = 0
    stack = [root]
    while stack:
        node = stack.pop()
        if node.blew_up:
            best = max(best, node.depth + 1)
        stack.extend(node.children)
    return best


def levi_zariski_resolve(S: WeierstrassSurface,
                         max_depth: int = DEFAULT_MAX_DEPTH,
                         degree_bound: int = DEFAULT_DEGREE_BOUND,
                         precision: int | None = None) -> ResolutionNode:
    """Blow up smooth equimultiple centers of maximal dimension until the
    multiplicity drops everywhere, keeping every chart in the tree.

    A permitted curve is always preferred (the graded-lex-least one); with
    none available the origin is blown up and the recursion branches over
    the multiplicity-preserving directions.  Multiplicity-1 nodes and nodes
    whose blow-up certifiably drops the multiplicity at every point are
    leaves; rational-arithmetic boundaries become loud leaf statuses.
    """
    precision = precision or DEFAULT_PRECISION
    base_vars = S.vars

    def expand(surface: WeierstrassSurface, depth: int, action) -> ResolutionNode:
        node = ResolutionNode(surface, depth, action)
        if surface.n <= 1:
            node.status = "resolved"
            return node
        if depth >= max_depth:
            node.status = "depth-capped"
            return node
        locus = enumerate_smooth_equimultiple(surface, degree_bound)
        if locus.witnesses:
            node.notes.extend(locus.witnesses)
        if locus.smooth_curves:
            center = locus.smooth_curves[0]
            work = surface
            action_extra = {}
            if not curves_equal(center, axis_curve(surface, "X")):
                work, change = normalize_curve(surface, center, precision)
                action_extra = {"normalized_by": change.to_json()}
            p = _cone_root_polynomial(work)
            witnesses = irreducible_witnesses(p, "t")
            node.blew_up = True
            if witnesses:
                node.status = "irrational-direction"
                node.notes.extend(witnesses)
                return node
            for root, _m in rational_roots(p):
                d = Direction(1, 0, root)
                child_surface = relabel_base(monoidal_transform(work, d, precision),
                                             base_vars)
                child_action = {"kind": "monoidal",
                                "center": center.normalized_generator().to_text(),
                                "direction": [str(c) for c in d.coords]}
                child_action.update(action_extra)
                node.children.append(expand(child_surface, depth + 1, child_action))
            node.status = "open" if node.children else "resolved"
            if not node.children:
                node.notes.append("no direction of the exceptional divisor meets the cone")
            return node
        search = equimultiple_directions(surface)
        node.blew_up = True
        if search.unresolved:
            node.status = "irrational-direction"
            node.notes.extend(search.unresolved)
            return node
        directions = []
        if search.divisor_equimultiple:
            directions.append(Direction(1, 0, 0))
            node.notes.append("multiplicity persists along the whole exceptional divisor")
        directions.extend(search.isolated)
        seen = set()
        for d in directions:
            if d in seen:
                continue
            seen.add(d)
            child_surface = relabel_base(quadratic_transform(surface, d, precision),
                                         base_vars)
            child_action = {"kind": "quadratic",
                            "direction": [str(c) for c in d.coords],
                            "privileged": d.privileged_name}
            node.children.append(expand(child_surface, depth + 1, child_action))
        if node.children:
            node.status = "open"
        else:
            node.status = "resolved"
            node.notes.append("multiplicity drops at every point of the exceptional divisor")
        return node

    return expand(S, 0, None)


def tree_to_dot(root: ResolutionNode) -> str:
    lines = ["digraph resolution {", '  node [shape=box, fontname="monospace"];']
    counter = [0]

    def visit(node):
        my_id = counter[0]
        counter[0] += 1
        label = f"n={node.surface.n}\\n{node.surface.to_text()}\\n[{node.status}]"
        lines.append(f'  n{my_id} [label="{label}"];')
        for child in node.children:
            child_id = visit(child)
            action = child.action or {}
            edge = action.get("kind", "")
            if "direction" in action:
                edge += " (" + ":".join(action["direction"]) + ")"
            lines.append(f'  n{my_id} -> n{child_id} [label="{edge}"];')
        return my_id

    visit(root)
    lines.append("}")
    return "\n".join(lines)


def tree_to_text(root: ResolutionNode) -> str:
    lines = []

    def visit(node, indent):
        action = ""
        if node.action:
            action = node.action.get("kind", "")
            if "direction" in node.action:
                action += " (" + ":".join(node.action["direction"]) + ") "
            action = f"<- {action}"
        lines.append("  " * indent
                     + f"n={node.surface.n} {node.surface.to_text()} [{node.status}] {action}".rstrip())
        for child in node.children:
            visit(child, indent + 1)

    visit(root, 0)
    return "\n".join(lines)
