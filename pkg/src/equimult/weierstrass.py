"""Weierstrass division and preparation for series regular in one variable.

Division works slice by slice in the total degree of the non-distinguished
variables; within each slice the problem is univariate in the distinguished
variable and solved by exact polynomial division plus a unit inverse.  The
quotient/remainder pair is the unique formal one, computed to a stated
precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (DEFAULT_PRECISION, SeriesError, TruncatedSeries, _min_prec)


class NotRegular(SeriesError):
    pass


@dataclass
class WeierstrassDivisionResult:
    quotient: TruncatedSeries
    remainder_coeffs: list  # sigma_j over the base variables, j = 0..d-1
    regular_var: str
    base_vars: tuple

    def remainder_series(self) -> TruncatedSeries:
        """The remainder as a series in the full alphabet."""
        vars = self.quotient.vars
        idx = vars.index(self.regular_var)
        terms = {}
        for j, sigma in enumerate(self.remainder_coeffs):
            for exps, c in sigma.terms.items():
                full = list(exps[:idx]) + [j] + list(exps[idx:])
                terms[tuple(full)] = c
        prec = _min_prec(*(s.prec for s in self.remainder_coeffs)) if self.remainder_coeffs else None
        return TruncatedSeries(vars, terms, prec)


# -- univariate helpers (dicts degree -> Fraction) --------------------------

def _umul(a: dict, b: dict, cap: int) -> dict:
    out: dict = {}
    for i, c in a.items():
        for j, d in b.items():
            if i + j >= cap:
                continue
            s = out.get(i + j, Fraction(0)) + c * d
            if s == 0:
                out.pop(i + j, None)
            else:
                out[i + j] = s
    return out


def _uinv(a: dict, cap: int) -> dict:
    c0 = a.get(0, Fraction(0))
    if c0 == 0:
        raise NotRegular("leading slice is not a unit")
    inv = {0: Fraction(1) / c0}
    for n in range(1, cap):
        acc = Fraction(0)
        for k, c in a.items():
            if 0 < k <= n:
                acc += c * inv.get(n - k, Fraction(0))
        if acc:
            inv[n] = -acc / c0
    return inv


def _split_slices(f: TruncatedSeries, idx: int) -> dict:
    """Group terms by base total degree: m -> {base_exps: {t: coeff}}."""
    slices: dict = {}
    for exps, c in f.terms.items():
        base = exps[:idx] + exps[idx + 1:]
        t = exps[idx]
        m = sum(base)
        slices.setdefault(m, {}).setdefault(base, {})[t] = c
    return slices


def _slice_mul(s1: dict, s2: dict, cap_t: int) -> dict:
    out: dict = {}
    for b1, t1 in s1.items():
        for b2, t2 in s2.items():
            base = tuple(a + b for a, b in zip(b1, b2))
            prod = _umul(t1, t2, cap_t)
            if not prod:
                continue
            tgt = out.setdefault(base, {})
            for t, c in prod.items():
                s = tgt.get(t, Fraction(0)) + c
                if s == 0:
                    tgt.pop(t, None)
                else:
                    tgt[t] = s
            if not tgt:
                out.pop(base, None)
    return out


def regularity_order(f: TruncatedSeries, var: str):
    """Order of f with every other variable set to 0, or None if no term."""
    idx = f.vars.index(var)
    best = None
    for exps, _ in f.terms.items():
        if all(e == 0 for i, e in enumerate(exps) if i != idx):
            t = exps[idx]
            best = t if best is None else min(best, t)
    return best


def weierstrass_divide(f: TruncatedSeries, h: TruncatedSeries,
                       precision: int | None = None,
                       var: str | None = None) -> WeierstrassDivisionResult:
    """Divide f by h, regular of some order d in ``var`` (default: last).

    Returns quotient q and coefficients sigma_j with
    ``f = q*h + sum_j sigma_j * var**j`` to the result precision; the
    sigma_j all vanish exactly when h divides f.
    """
    if f.vars != h.vars:
        raise ValueError("variable alphabets differ")
    var = var or f.vars[-1]
    idx = f.vars.index(var)
    base_vars = f.vars[:idx] + f.vars[idx + 1:]
    d = regularity_order(h, var)
    if d is None:
        raise NotRegular(f"divisor is not regular in {var}")
    p = precision or DEFAULT_PRECISION
    p_in = _min_prec(f.prec, h.prec)
    if p_in is not None:
        p = min(p, max(1, (p_in + max(d, 1) - 1) // max(d, 1)))

    if d == 0:
        q = f * h.invert_unit(p if (not f.is_exact or not h.is_exact or len(h.terms) > 1) else None)
        return WeierstrassDivisionResult(q, [], var, base_vars)

    cap_t = p * d + d + 1
    h_slices = _split_slices(h, idx)
    f_slices = _split_slices(f, idx)
    zero_base = (0,) * len(base_vars)
    h0 = h_slices.get(0, {}).get(zero_base, {})
    v = {t - d: c for t, c in h0.items() if t >= d}
    low = {t: c for t, c in h0.items() if t < d}
    if low:
        raise NotRegular(f"divisor is not regular of order {d} in {var}")
    v_inv = _uinv(v, cap_t)

    q_slices: dict = {}
    sigma = [dict() for _ in range(d)]
    for m in range(p):
        g_m: dict = {}
        for base, tp in f_slices.get(m, {}).items():
            g_m[base] = dict(tp)
        for i in range(m):
            if i not in q_slices:
                continue
            part = _slice_mul(q_slices[i], h_slices.get(m - i, {}), cap_t)
            for base, tp in part.items():
                tgt = g_m.setdefault(base, {})
                for t, c in tp.items():
                    s = tgt.get(t, Fraction(0)) - c
                    if s == 0:
                        tgt.pop(t, None)
                    else:
                        tgt[t] = s
        q_m: dict = {}
        for base, tp in g_m.items():
            rem = {t: c for t, c in tp.items() if t < d}
            for t, c in rem.items():
                sigma[t][base] = c
            high = {t - d: c for t, c in tp.items() if t >= d}
            if high:
                q_tp = _umul(high, v_inv, cap_t)
                if q_tp:
                    q_m[base] = q_tp
        if q_m:
            q_slices[m] = q_m

    q_terms = {}
    for m, bases in q_slices.items():
        for base, tp in bases.items():
            for t, c in tp.items():
                if m + t >= p:
                    continue
                full = base[:idx] + (t,) + base[idx:]
                q_terms[full] = c
    quotient = TruncatedSeries(f.vars, q_terms, p)
    sigmas = [TruncatedSeries(base_vars, table, p) for table in sigma]
    return WeierstrassDivisionResult(quotient, sigmas, var, base_vars)


def is_distinguished(f: TruncatedSeries, var: str) -> bool:
    """Monic polynomial of degree d in ``var`` whose lower coefficients are
    non-units: the shape Weierstrass preparation produces."""
    idx = f.vars.index(var)
    d = regularity_order(f, var)
    if d is None:
        return False
    pure = tuple(d if i == idx else 0 for i in range(f.arity))
    if f.terms.get(pure) != 1:
        return False
    for exps, _ in f.terms.items():
        if exps[idx] > d:
            return False
        if exps[idx] == d and exps != pure:
            return False
        if exps[idx] < d and all(e == 0 for i, e in enumerate(exps) if i != idx):
            return False
    return True


def weierstrass_prepare(f: TruncatedSeries, precision: int | None = None,
                        var: str | None = None):
    """Factor f = unit * distinguished, with the distinguished part monic in
    ``var`` and its lower coefficients of positive order.

    A single Weierstrass division of ``var**d`` by f yields the factorization:
    the quotient is a unit whose inverse is the unit factor, and the negated
    remainder completes the distinguished polynomial.
    """
    var = var or f.vars[-1]
    d = regularity_order(f, var)
    if d is None:
        raise NotRegular(f"not regular in {var}")
    one = TruncatedSeries.constant(1, f.vars)
    if d == 0:
        return f, one
    if f.is_exact and is_distinguished(f, var):
        return one, f
    p = precision or DEFAULT_PRECISION
    idx = f.vars.index(var)
    pure = tuple(d if i == idx else 0 for i in range(f.arity))
    t_power = TruncatedSeries(f.vars, {pure: 1})
    division = weierstrass_divide(t_power, f, p, var)
    q = division.quotient
    if not q.is_unit():
        raise NotRegular("preparation failed: quotient is not a unit")
    unit = q.invert_unit(p)
    distinguished = t_power - division.remainder_series()
    for j, s in enumerate(division.remainder_coeffs):
        if s.constant_term() != 0:
            raise NotRegular(f"coefficient of {var}^{j} is a unit; not distinguished")
    return unit, distinguished.truncated_at(division.quotient.prec)
