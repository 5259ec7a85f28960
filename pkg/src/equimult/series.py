"""Exact truncated multivariate power series over the rationals.

A series is a sparse map from exponent vectors to nonzero Fractions plus a
precision marker: ``prec is None`` means the stored polynomial *is* the
series ("exact"); ``prec == p`` means every term of total degree < p is
stored and correct, and nothing is known from degree p on.  All arithmetic
is exact rational arithmetic; truncation is the only loss of information,
and the precision of every result is derived from its inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

DEFAULT_PRECISION = 24

Exponents = tuple
Scalar = Union[int, Fraction]


class SeriesError(Exception):
    """Base error for series arithmetic."""


class PrecisionViolation(SeriesError):
    """An operation would need coefficients beyond the stored precision."""


class NotDivisible(SeriesError):
    def __init__(self, message: str, monomial: str | None = None):
        super().__init__(message)
        self.monomial = monomial


class NotAUnit(SeriesError):
    pass


class IndeterminateInitialForm(SeriesError):
    pass


class OrderBound:
    """Order of a truncated series with no stored terms: only bounded below."""

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, OrderBound) and self.bound == other.bound

    def __repr__(self):
        return f"at-least-{self.bound}"


INFINITE_ORDER = math.inf


def term_key(exps: Exponents):
    """Graded-lex sort key: total degree first, then X before Y before Z."""
    return (sum(exps), tuple(-e for e in exps))


def _coeff(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact coefficient: {value!r}")


def _min_prec(*precs):
    best = None
    for p in precs:
        if p is None:
            continue
        best = p if best is None else min(best, p)
    return best


class TruncatedSeries:
    """Immutable sparse series over named variables.

    ``vars`` is the ordered variable alphabet, e.g. ``("X", "Y", "Z")``.
    ``terms`` maps exponent tuples to nonzero Fractions.  Instances are
    never mutated after construction; all operations return new values.
    """

    __slots__ = ("vars", "terms", "prec")

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponents, Scalar] | None = None,
                 prec: int | None = None):
        vars = tuple(vars)
        if not vars:
            raise ValueError("need at least one variable")
        if prec is not None and prec < 1:
            raise PrecisionViolation("no retained precision (precision < 1)")
        clean: dict = {}
        if terms:
            for exps, value in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(vars):
                    raise ValueError(f"exponent arity {len(exps)} != {len(vars)}")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                c = _coeff(value)
                if c == 0:
                    continue
                if prec is not None and sum(exps) >= prec:
                    continue
                clean[exps] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars, prec=None):
        return cls(vars, {}, prec)

    @classmethod
    def constant(cls, value: Scalar, vars, prec=None):
        zero = (0,) * len(tuple(vars))
        return cls(vars, {zero: value}, prec)

    @classmethod
    def variable(cls, name: str, vars, prec=None):
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} not in {vars}")
        return cls(vars, {exps: 1}, prec)

    # -- basic queries -----------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.vars)

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True when no terms are stored (exact zero, or zero to precision)."""
        return not self.terms

    def min_degree(self):
        """Smallest total degree among stored terms, or None."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def max_degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def order(self):
        """Order (minimal total degree), ``INFINITE_ORDER`` for the exact
        zero series, an :class:`OrderBound` when only a lower bound is known."""
        d = self.min_degree()
        if d is not None:
            return d
        if self.is_exact:
            return INFINITE_ORDER
        return OrderBound(self.prec)

    def order_lower_bound(self):
        """Numeric lower bound for the order (inf for exact zero)."""
        d = self.min_degree()
        if d is not None:
            return d
        return INFINITE_ORDER if self.is_exact else self.prec

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.arity, Fraction(0))

    def is_unit(self) -> bool:
        return self.constant_term() != 0

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: term_key(item[0]))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.vars)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.vars == other.vars and self.prec == other.prec
                and self.terms == other.terms)

    def agrees_with(self, other: "TruncatedSeries", upto: int | None = None) -> bool:
        """Equality of the parts both sides are certain about."""
        if self.vars != other.vars:
            return False
        bound = _min_prec(self.prec, other.prec, upto)
        if bound is None:
            return self.terms == other.terms
        mine = {e: c for e, c in self.terms.items() if sum(e) < bound}
        theirs = {e: c for e, c in other.terms.items() if sum(e) < bound}
        return mine == theirs

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {other.vars} vs {self.vars}")
            return other
        return TruncatedSeries.constant(_coeff(other), self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        prec = _min_prec(self.prec, other.prec)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, Fraction(0)) + c
            if s == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return TruncatedSeries(self.vars, terms, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.vars, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if c == 0:
                return TruncatedSeries.zero(self.vars, self.prec)
            return TruncatedSeries(self.vars, {e: k * c for e, k in self.terms.items()}, self.prec)
        other = self._coerce(other)
        if (self.is_exact and not self.terms) or (other.is_exact and not other.terms):
            return TruncatedSeries.zero(self.vars, None)
        prec = _min_prec(
            None if self.prec is None else self.prec + min(other.order_lower_bound(), 10 ** 9),
            None if other.prec is None else other.prec + min(self.order_lower_bound(), 10 ** 9),
        )
        terms: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if prec is not None and d1 + sum(e2) >= prec:
                    continue
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exps, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(exps, None)
                else:
                    terms[exps] = s
        return TruncatedSeries(self.vars, terms, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = TruncatedSeries.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if c == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * (Fraction(1) / c)
        raise TypeError("use divide_exact or invert_unit for series divisors")

    # -- core operations ---------------------------------------------------

    def truncated_at(self, prec: int | None) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, self.terms, _min_prec(self.prec, prec))

    def homogeneous_part(self, degree: int) -> "TruncatedSeries":
        terms = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return TruncatedSeries(self.vars, terms, None)

    def initial_form(self) -> "TruncatedSeries":
        """Lowest homogeneous part; exact by construction."""
        if not self.terms:
            raise IndeterminateInitialForm("indeterminate initial form")
        return self.homogeneous_part(self.min_degree())

    def derivative(self, var: str) -> "TruncatedSeries":
        i = self.vars.index(var)
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            k = e[i]
            e[i] = k - 1
            terms[tuple(e)] = c * k
        prec = None if self.prec is None else max(self.prec - 1, 1)
        return TruncatedSeries(self.vars, terms, prec)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Value of an exact polynomial at a rational point."""
        if not self.is_exact:
            raise PrecisionViolation("cannot evaluate a truncated series at a point")
        vals = [_coeff(point[v]) for v in self.vars]
        total = Fraction(0)
        for exps, c in self.terms.items():
            prod = c
            for v, e in zip(vals, exps):
                if e:
                    prod *= v ** e
            total += prod
        return total

    def relabel(self, new_vars) -> "TruncatedSeries":
        new_vars = tuple(new_vars)
        if len(new_vars) != self.arity:
            raise ValueError("relabel must preserve arity")
        return TruncatedSeries(new_vars, self.terms, self.prec)

    def substitute(self, images: Mapping[str, "TruncatedSeries"],
                   precision: int | None = None) -> "TruncatedSeries":
        """Composition: replace each variable by its image series.

        Unmapped variables map to the same-named generator of the target
        space when it exists.  Substituting an image with nonzero constant
        term into a truncated series is rejected: the low-degree output
        would depend on discarded terms.
        """
        if not images:
            raise ValueError("no images given")
        target_vars = None
        for img in images.values():
            if not isinstance(img, TruncatedSeries):
                raise TypeError("images must be TruncatedSeries")
            if target_vars is None:
                target_vars = img.vars
            elif img.vars != target_vars:
                raise ValueError("images live in different variable alphabets")
        used = set()
        for exps in self.terms:
            for v, e in zip(self.vars, exps):
                if e:
                    used.add(v)
        full_images = {}
        for v in self.vars:
            if v in images:
                full_images[v] = images[v]
            elif v in used:
                if v in target_vars:
                    full_images[v] = TruncatedSeries.variable(v, target_vars)
                else:
                    raise ValueError(f"no image for variable {v!r}")
        if not self.is_exact:
            for v, img in full_images.items():
                if v in used and img.constant_term() != 0:
                    raise PrecisionViolation(
                        "precision violation: constant-term substitution into a truncated series")
        prec = self.prec
        for v, img in full_images.items():
            if v in used:
                prec = _min_prec(prec, img.prec)
        prec = _min_prec(prec, precision)
        result = TruncatedSeries.zero(target_vars, prec)
        power_cache = {v: {0: TruncatedSeries.constant(1, target_vars, prec)}
                       for v in full_images}
        for exps, c in self.sorted_terms():
            prod = TruncatedSeries.constant(c, target_vars, prec)
            for v, e in zip(self.vars, exps):
                if not e:
                    continue
                cache = power_cache[v]
                if e not in cache:
                    best = max(k for k in cache if k <= e)
                    acc = cache[best]
                    for k in range(best + 1, e + 1):
                        acc = acc * full_images[v]
                        cache[k] = acc
                prod = prod * cache[e]
            result = result + prod
        return result.truncated_at(prec)

    def divide_exact(self, divisor: "TruncatedSeries",
                     precision: int | None = None) -> "TruncatedSeries":
        """Quotient q with self = q * divisor, as far as certifiable.

        Raises :class:`NotDivisible` (with the first obstructing monomial)
        when no quotient exists within the checkable window.  The result is
        exact when the long division terminates on exact inputs; otherwise
        it carries the precision of the certified window.
        """
        g = self._coerce(divisor)
        if not g.terms:
            raise SeriesError("division by zero series")
        w = g.min_degree()
        ghat = {e: c for e, c in g.terms.items() if sum(e) == w}
        lead = max(ghat)
        lead_c = ghat[lead]
        tail = {e: c for e, c in g.terms.items() if sum(e) > w}
        natural = _min_prec(self.prec, g.prec)
        if natural is not None:
            natural -= w
            if natural < 1:
                raise PrecisionViolation("no retained precision for quotient")
        cap = natural if natural is not None else (precision or DEFAULT_PRECISION)
        if precision is not None:
            cap = min(cap, precision)
        residual = dict(self.terms)
        quotient: dict = {}
        capped = False
        while residual:
            degree = min(sum(e) for e in residual)
            if degree - w >= cap:
                capped = True
                break
            layer = {e: c for e, c in residual.items() if sum(e) == degree}
            while layer:
                m = max(layer)
                if any(a < b for a, b in zip(m, lead)):
                    mono = format_monomial(self.vars, m)
                    raise NotDivisible(f"not divisible: obstructing monomial {mono}", mono)
                shift = tuple(a - b for a, b in zip(m, lead))
                c = layer[m] / lead_c
                quotient[shift] = quotient.get(shift, Fraction(0)) + c
                for e, gc in ghat.items():
                    key = tuple(a + b for a, b in zip(shift, e))
                    s = layer.get(key, Fraction(0)) - c * gc
                    if s == 0:
                        layer.pop(key, None)
                    else:
                        layer[key] = s
                for e, gc in tail.items():
                    key = tuple(a + b for a, b in zip(shift, e))
                    s = residual.get(key, Fraction(0)) - c * gc
                    if s == 0:
                        residual.pop(key, None)
                    else:
                        residual[key] = s
            for e in [e for e in residual if sum(e) == degree]:
                del residual[e]
        if not capped and natural is None:
            return TruncatedSeries(self.vars, quotient, None)
        return TruncatedSeries(self.vars, quotient, cap if capped else natural)

    def invert_unit(self, precision: int | None = None) -> "TruncatedSeries":
        """Multiplicative inverse of a unit, to the requested precision."""
        c0 = self.constant_term()
        if c0 == 0:
            raise NotAUnit("not a unit")
        if len(self.terms) == 1 and self.is_exact:
            zero = (0,) * self.arity
            return TruncatedSeries(self.vars, {zero: Fraction(1) / c0}, None)
        p = precision or DEFAULT_PRECISION
        p = _min_prec(p, self.prec)
        zero = (0,) * self.arity
        inv = {zero: Fraction(1) / c0}
        by_degree: dict = {}
        for e, c in self.terms.items():
            d = sum(e)
            if d:
                by_degree.setdefault(d, {})[e] = c
        inv_by_degree = {0: {zero: inv[zero]}}
        for degree in range(1, p):
            layer: dict = {}
            for d, terms in by_degree.items():
                if d > degree:
                    continue
                lower = inv_by_degree.get(degree - d)
                if not lower:
                    continue
                for e1, c1 in terms.items():
                    for e2, c2 in lower.items():
                        key = tuple(a + b for a, b in zip(e1, e2))
                        s = layer.get(key, Fraction(0)) + c1 * c2
                        if s == 0:
                            layer.pop(key, None)
                        else:
                            layer[key] = s
            layer = {e: -c / c0 for e, c in layer.items() if c != 0}
            if layer:
                inv_by_degree[degree] = layer
                inv.update(layer)
        return TruncatedSeries(self.vars, inv, p)

    # -- rendering ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical polynomial text: graded-lex term order, exact coefficients."""
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = format_monomial(self.vars, exps)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        text = self.to_text()
        if self.prec is not None:
            text += f" + O(deg {self.prec})"
        return text

    def __repr__(self):
        return f"TruncatedSeries({self})"


def format_monomial(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def generators(*names, prec=None):
    """The variable series of the alphabet, e.g. ``X, Y, Z = generators("X", "Y", "Z")``."""
    return tuple(TruncatedSeries.variable(n, names, prec) for n in names)


def precision_text(prec) -> str | int:
    return "exact" if prec is None else prec
