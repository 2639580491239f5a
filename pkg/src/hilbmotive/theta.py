"""q-expansions of theta functions.

A q-series here is a ``TSeries`` in q whose coefficients are Laurent
polynomials in y = e^{2 pi i z}, stored in the first exponent slot of an
``LPoly``.  The variable z only ever enters through y-exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import HalfIntegerLefschetzPower, ProductFormUnavailable
from .exactalg import ONE, LPoly, Q, TSeries, fmt_rational, infinite_product
from .lattice import Vec, _as_lattice, theta_support, vec

QYSeries = TSeries


def qshift(f: TSeries, e, coeff: LPoly = ONE) -> TSeries:
    """coeff * q^e * f, with the truncation order moved up by e."""
    e = Q(e)
    return TSeries({k + e: c * coeff for k, c in f.items()}, f.order + e)


def rescale_q(f: TSeries, k=2) -> TSeries:
    """f(k tau): every q-exponent (and the order) multiplied by k."""
    return f.substitute(k)


def _y(b, c=1) -> LPoly:
    return LPoly.y(b, c)


def jacobi_theta(mu: int, nu: int, order, form: str = "sum") -> TSeries:
    """theta_{mu,nu}(tau, z) = sum_n (-1)^{n nu} q^{(n+mu/2)^2/2} y^{n+mu/2}."""
    if mu not in (0, 1) or nu not in (0, 1):
        raise ValueError("mu and nu must be 0 or 1")
    order = Q(order)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if form == "sum":
        half = Fraction(mu, 2)
        terms = {}
        r = math.isqrt(math.floor(2 * order)) + 2
        for n in range(-r, r + 1):
            x = n + half
            e = x * x / 2
            if e <= order:
                terms.setdefault(e, []).append(_y(x, -1 if n * nu % 2 else 1))
        return TSeries({e: sum(cs, LPoly()) for e, cs in terms.items()}, order)
    if form != "product":
        raise ValueError(f"unknown form {form!r}")
    if (mu, nu) == (1, 1):
        inner = order - Fraction(1, 8)
        if inner < 0:
            return TSeries({}, order)
        prod = infinite_product(
            lambda n: TSeries({0: ONE, n: -ONE}, inner)
            * TSeries({0: ONE, n: -_y(1)}, inner)
            * TSeries({0: ONE, n: -_y(-1)}, inner),
            inner)
        return qshift(prod, Fraction(1, 8), _y(Fraction(1, 2)) - _y(Fraction(-1, 2)))
    if (mu, nu) == (0, 1):
        return infinite_product(
            lambda n: TSeries({0: ONE, n: -ONE}, order)
            * TSeries({0: ONE, n - Fraction(1, 2): -_y(1)}, order)
            * TSeries({0: ONE, n - Fraction(1, 2): -_y(-1)}, order),
            order)
    raise ProductFormUnavailable(f"no product form for theta_{{{mu},{nu}}}")


def eta(order) -> TSeries:
    """eta(tau) = q^{1/24} prod_{n > 0} (1 - q^n)."""
    order = Q(order)
    inner = order - Fraction(1, 24)
    if inner < 0:
        return TSeries({}, order)
    prod = infinite_product(lambda n: TSeries({0: ONE, n: -ONE}, inner), inner)
    return qshift(prod, Fraction(1, 24))


def specialize_y(f: TSeries, b) -> TSeries:
    """Substitute y -> y^b (b = 0 evaluates at z = 0)."""
    b = Q(b)
    return f.map_coeffs(lambda c: LPoly([((p * b, 0), v) for (p, _), v in c.items()]))


@dataclass(frozen=True)
class ThetaSpec:
    """Data of an indefinite theta function Theta^{F,G}_{Gamma,C}(tau, xdir z).

    ``gram`` is the intersection form; the theta function uses its negative.
    The summation coset is Gamma + C/2.
    """

    gram: tuple
    C: Vec
    F: Vec
    G: Vec
    xdir: Vec

    def __post_init__(self):
        object.__setattr__(self, "gram", _as_lattice(self.gram).gram)
        for name in ("C", "F", "G", "xdir"):
            object.__setattr__(self, name, vec(getattr(self, name)))

    @classmethod
    def of(cls, S, C, F, G, xdir) -> ThetaSpec:
        return cls(_as_lattice(S).gram, C, F, G, xdir)

    def shifted(self, v: Sequence) -> ThetaSpec:
        """Spec of the coset moved by v (C -> C + 2v)."""
        return replace(self, C=tuple(c + 2 * Q(x) for c, x in zip(self.C, v)))


def indefinite_theta(S, C, F, G, xdir, order) -> TSeries:
    """sum over xi in Gamma + C/2 of (mu(<xi,F>) - mu(<xi,G>)) q^{<xi,xi>/2} y^{<xi,xdir>}.

    <,> is the negative of the intersection form.
    """
    lat = _as_lattice(S)
    order = Q(order)
    xdir = vec(xdir)
    acc: dict = {}
    for xi, w in theta_support(lat, C, F, G, order):
        e = -lat.square(xi) / 2
        b = -lat.pair(xi, xdir)
        acc.setdefault(e, []).append(_y(b, w))
    return TSeries({e: sum(cs, LPoly()) for e, cs in acc.items()}, order)


def theta_from_spec(spec: ThetaSpec, order) -> TSeries:
    return indefinite_theta(spec.gram, spec.C, spec.F, spec.G, spec.xdir, order)


def half_shift(spec: ThetaSpec, v: Sequence, order) -> TSeries:
    """f|_v = q^{<v,v>/2} y^{<v,xdir>} f(tau, x + v tau) for f = Theta^{F,G}_{Gamma,C}.

    Terms are enumerated on the shifted coset with the weight read at the
    shifted point; each xi of the original coset then contributes
    q^{<xi,xi>/2 + <xi,v> + <v,v>/2} y^{<xi,xdir> + <v,xdir>}.
    """
    lat = _as_lattice(spec.gram)
    v = vec(v)
    if any((2 * x).denominator != 1 for x in v):
        raise ValueError(f"shift {v} must have denominators dividing 2")
    order = Q(order)
    target = spec.shifted(v)

    def neg(a, b):
        return -lat.pair(a, b)

    vv, vx = neg(v, v), neg(v, spec.xdir)
    acc: dict = {}
    for eta_, w in theta_support(lat, target.C, spec.F, spec.G, order):
        xi = tuple(a - b for a, b in zip(eta_, v))
        e = neg(xi, xi) / 2 + neg(xi, v) + vv / 2
        b = neg(xi, spec.xdir) + vx
        acc.setdefault(e, []).append(_y(b, w))
    return TSeries({e: sum(cs, LPoly()) for e, cs in acc.items()}, order)


def star_specialize(f: TSeries, order=None) -> TSeries:
    """Apply f(2 tau, z) and then q^a y^b -> L^{2a+b} t^a.

    Every resulting power of L must be integral.
    """
    g = rescale_q(f, 2)
    if order is not None:
        g = g.truncate(order)
    acc: dict = {}
    for a, c in g.items():
        for (b, q), v in c.items():
            if q != 0:
                raise ValueError("q-series coefficients must be single-variable in y")
            k = 2 * a + b
            if k.denominator != 1:
                raise HalfIntegerLefschetzPower(
                    f"q^{fmt_rational(a)} y^{fmt_rational(b)} gives L^{fmt_rational(k)}")
            acc.setdefault(a, []).append(LPoly.L(k, v))
    return TSeries({a: sum(cs, LPoly()) for a, cs in acc.items()}, g.order)


__all__ = [
    "QYSeries", "qshift", "rescale_q", "jacobi_theta", "eta", "specialize_y", "ThetaSpec",
    "indefinite_theta", "theta_from_spec", "half_shift", "star_specialize",
]
