"""Blow-up directions and changes of variables."""

from __future__ import annotations

from fractions import Fraction

from .series import TruncatedSeries, _coeff


class ChartError(Exception):
    pass


class Direction:
    """A projective direction (alpha : beta : gamma) with a privileged
    nonzero coordinate; stored normalized so the privileged coordinate is 1."""

    __slots__ = ("coords", "privileged")

    AXES = ("X", "Y", "Z")

    def __init__(self, alpha, beta, gamma, privileged: int | None = None):
        coords = (_coeff(alpha), _coeff(beta), _coeff(gamma))
        if all(c == 0 for c in coords):
            raise ChartError("direction (0:0:0) is not projective")
        if privileged is None:
            privileged = next(i for i, c in enumerate(coords) if c != 0)
        if coords[privileged] == 0:
            raise ChartError("privileged coordinate is zero")
        scale = coords[privileged]
        object.__setattr__(self, "coords", tuple(c / scale for c in coords))
        object.__setattr__(self, "privileged", privileged)

    def __setattr__(self, name, value):
        raise AttributeError("Direction is immutable")

    @classmethod
    def parse(cls, text: str, privileged: str | None = None) -> "Direction":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ChartError(f"direction needs three coordinates, got {text!r}")
        coords = [Fraction(p) for p in parts]
        idx = cls.AXES.index(privileged) if privileged else None
        return cls(*coords, privileged=idx)

    @property
    def alpha(self) -> Fraction:
        return self.coords[0]

    @property
    def beta(self) -> Fraction:
        return self.coords[1]

    @property
    def gamma(self) -> Fraction:
        return self.coords[2]

    @property
    def privileged_name(self) -> str:
        return self.AXES[self.privileged]

    def __eq__(self, other):
        return (isinstance(other, Direction) and self.coords == other.coords
                and self.privileged == other.privileged)

    def __hash__(self):
        return hash((self.coords, self.privileged))

    def sort_key(self):
        return (self.privileged, self.coords)

    def __repr__(self):
        a, b, c = self.coords
        return f"({a}:{b}:{c})"

    def to_json(self):
        return {"direction": [str(c) for c in self.coords],
                "privileged": self.privileged_name}


def _det(matrix):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if n == 3:
        a, b, c = matrix[0]
        d, e, f = matrix[1]
        g, h, i = matrix[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    raise ValueError("unsupported matrix size")


class VariableChange:
    """A local change of variables: each source variable maps to a series in
    the target variables with zero constant term and invertible linear part."""

    __slots__ = ("source_vars", "target_vars", "images")

    def __init__(self, source_vars, target_vars, images):
        source_vars = tuple(source_vars)
        target_vars = tuple(target_vars)
        if len(source_vars) != len(target_vars):
            raise ChartError("source and target arities differ")
        imgs = {}
        for v in source_vars:
            img = images[v]
            if img.vars != target_vars:
                raise ChartError(f"image of {v} lives in {img.vars}, expected {target_vars}")
            if img.constant_term() != 0:
                raise ChartError(f"image of {v} has a constant term")
            imgs[v] = img
        object.__setattr__(self, "source_vars", source_vars)
        object.__setattr__(self, "target_vars", target_vars)
        object.__setattr__(self, "images", imgs)
        if _det(self.linear_part()) == 0:
            raise ChartError("linear part is singular")

    def __setattr__(self, name, value):
        raise AttributeError("VariableChange is immutable")

    @classmethod
    def identity(cls, vars) -> "VariableChange":
        vars = tuple(vars)
        return cls(vars, vars,
                   {v: TruncatedSeries.variable(v, vars) for v in vars})

    @classmethod
    def from_plane_images(cls, vars3, x_image, y_image) -> "VariableChange":
        """A change acting on the first two variables, fixing the third."""
        vars3 = tuple(vars3)
        z = TruncatedSeries.variable(vars3[2], vars3)
        return cls(vars3, vars3, {vars3[0]: x_image, vars3[1]: y_image, vars3[2]: z})

    def linear_part(self):
        """Rows indexed by source variable, columns by target variable."""
        rows = []
        for v in self.source_vars:
            img = self.images[v]
            row = []
            for i, _ in enumerate(self.target_vars):
                exps = tuple(1 if j == i else 0 for j in range(len(self.target_vars)))
                row.append(img.coefficient(exps))
            rows.append(row)
        return rows

    def higher_order_ok(self) -> bool:
        """Images minus their linear parts have order at least 2."""
        for v in self.source_vars:
            for exps in self.images[v].terms:
                if sum(exps) == 1:
                    continue
                if sum(exps) < 2:
                    return False
        return True

    def apply(self, series: TruncatedSeries) -> TruncatedSeries:
        if series.vars == self.source_vars:
            return series.substitute(self.images)
        if series.vars == self.source_vars[:series.arity]:
            # plane series under a change fixing the remaining variables
            restricted = {}
            for v in series.vars:
                img = self.images[v]
                kept = {}
                for exps, c in img.terms.items():
                    if any(exps[i] for i in range(series.arity, len(self.target_vars))):
                        raise ChartError(f"image of {v} leaves the plane")
                    kept[exps[:series.arity]] = c
                restricted[v] = TruncatedSeries(self.target_vars[:series.arity], kept, img.prec)
            return series.substitute(restricted)
        raise ChartError(f"series over {series.vars} does not match {self.source_vars}")

    def compose(self, then: "VariableChange") -> "VariableChange":
        """First self, then ``then``: the source stays, the target is then's."""
        if self.target_vars != then.source_vars:
            raise ChartError("changes do not compose")
        images = {v: img.substitute(then.images) for v, img in self.images.items()}
        return VariableChange(self.source_vars, then.target_vars, images)

    def maps_direction(self, d_target: Direction, d_source: Direction) -> bool:
        """Linear part sends d_target's coordinates to a multiple of d_source's."""
        m = self.linear_part()
        vec = [sum(m[i][j] * d_target.coords[j] for j in range(3)) for i in range(3)]
        cross = [vec[1] * d_source.coords[2] - vec[2] * d_source.coords[1],
                 vec[2] * d_source.coords[0] - vec[0] * d_source.coords[2],
                 vec[0] * d_source.coords[1] - vec[1] * d_source.coords[0]]
        return all(c == 0 for c in cross) and any(v != 0 for v in vec)

    def to_json(self):
        return {v: self.images[v].to_text() for v in self.source_vars}

    def __repr__(self):
        inner = ", ".join(f"{v} -> {self.images[v].to_text()}" for v in self.source_vars)
        return f"VariableChange({inner})"
