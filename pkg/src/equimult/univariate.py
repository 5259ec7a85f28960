"""Exact univariate polynomial utilities and the sympy bridge.

Univariate polynomials over the rationals are lists of Fractions indexed by
degree.  Root finding is the classical rational-root sieve with deflation;
multivariate gcd and irreducible factorization are delegated to sympy, which
is the only place sympy is touched.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .series import TruncatedSeries


def normalize(coeffs) -> list:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p) -> int:
    return len(p) - 1


def evaluate(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divide_linear(p, root: Fraction) -> list:
    """Synthetic division by (x - root) for an exact root of p."""
    n = len(p) - 1
    q = [Fraction(0)] * n
    q[n - 1] = p[n]
    for i in range(n - 1, 0, -1):
        q[i - 1] = p[i] + root * q[i]
    return q


def poly_divmod(a, b):
    a = normalize(a)
    b = normalize(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(c != 0 for c in r):
        if r[-1] == 0:
            r.pop()
            continue
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        while r and r[-1] == 0:
            r.pop()
    return normalize(q), normalize(r)


def poly_gcd(a, b) -> list:
    a, b = normalize(a), normalize(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def rational_roots(p) -> list:
    """All rational roots with multiplicities, found exactly."""
    p = normalize(p)
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = []
    k = 0
    while p[0] == 0:
        p = p[1:]
        k += 1
    if k:
        roots.append((Fraction(0), k))
    if degree(p) == 0:
        return roots
    from math import gcd as igcd
    denom = 1
    for c in p:
        denom = denom * c.denominator // igcd(denom, c.denominator)
    ints = [int(c * denom) for c in p]
    def divisors(n):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.add(i)
                out.add(n // i)
            i += 1
        return out
    candidates = set()
    for num in divisors(ints[0]):
        for den in divisors(ints[-1]):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        mult = 0
        while degree(p) >= 1 and evaluate(p, cand) == 0:
            p = divide_linear(p, cand)
            mult += 1
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots


def poly_text(p, var: str = "t") -> str:
    p = normalize(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            mono = str(abs(c))
        elif i == 1:
            mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
        else:
            mono = f"{var}^{i}" if abs(c) == 1 else f"{abs(c)}*{var}^{i}"
        parts.append(("-" if c < 0 else "+", mono))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def irreducible_witnesses(p, var: str = "t") -> list:
    """Texts of the irreducible degree >= 2 factors: certificates that some
    solutions exist only over an extension of the rationals."""
    p = normalize(p)
    if degree(p) < 2:
        return []
    x = sympy.Symbol(var)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(p))
    _, factors = sympy.factor_list(expr)
    out = []
    for fac, _mult in factors:
        poly = sympy.Poly(fac, x)
        if poly.degree() >= 2:
            coeffs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
            out.append(poly_text(coeffs, var))
    return sorted(out)


# -- sympy bridge for multivariate polynomials -------------------------------

def series_to_sympy(series: TruncatedSeries):
    if not series.is_exact:
        raise ValueError("only exact polynomials convert to sympy")
    symbols = sympy.symbols(series.vars)
    if series.arity == 1:
        symbols = (symbols,) if not isinstance(symbols, tuple) else symbols
    expr = sympy.Integer(0)
    for exps, c in series.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, exps):
            if e:
                term *= s ** e
        expr += term
    return sympy.Poly(expr, *symbols, domain="QQ")


def sympy_to_series(poly, vars) -> TruncatedSeries:
    terms = {}
    for exps, c in poly.terms():
        terms[tuple(int(e) for e in exps)] = Fraction(str(c))
    return TruncatedSeries(vars, terms, None)


def divides_in_local_ring(dividend: TruncatedSeries, divisor: TruncatedSeries) -> bool:
    """Does ``divisor`` divide ``dividend`` in the formal power series ring?

    For exact polynomials this is decidable.  Cheap complete cases first:
    monomial divisors reduce to exponent dominance, and the long division
    either terminates (divisible) or exposes an obstruction (not divisible)
    in most cases.  Only a quotient that is still running at the precision
    cap needs the general argument: strip the common polynomial factor with
    a gcd; what remains of the divisor must be a unit.  Coprime polynomials
    share no series factor, so that verdict is exact too.
    """
    if dividend.is_zero() and dividend.is_exact:
        return True
    if divisor.is_unit():
        return True
    if len(divisor.terms) == 1:
        (exps,) = divisor.terms
        return all(all(a >= b for a, b in zip(e, exps)) for e in dividend.terms)
    if dividend.min_degree() < divisor.min_degree():
        return False
    from .series import DEFAULT_PRECISION, NotDivisible
    try:
        q = dividend.divide_exact(divisor, DEFAULT_PRECISION)
        if q.is_exact:
            return True
    except NotDivisible:
        return False
    a = series_to_sympy(dividend)
    g = series_to_sympy(divisor)
    common = sympy.gcd(a, g)
    cofactor = sympy.div(g, common)[0]
    origin = cofactor.eval(dict.fromkeys(cofactor.gens, 0))
    return origin != 0
