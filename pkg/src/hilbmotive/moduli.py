"""Classes of moduli spaces of rank-2 sheaves: wall-crossing and its theta form.

The wall-crossing difference is

    sum over xi of type (C, d) with xi.L > 0 > xi.H of
        [Pic^0] [(S u S)^[d + xi^2]] ([P^{d - xi^2 + xi K - chi - 1}] - [P^{d - xi^2 - xi K - chi - 1}])

and equals [M^H(C,d)] - [M^L(C,d)].  Its generating function over d is

    [Pic^0] (sum_n [S^[n]] L^n t^n)^2 Theta^{L,H}_{Gamma,C}(2 tau, K z)^* L^{-chi} / (L - 1)

where the division by L - 1 is expanded in 1/L and negative powers of L are dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegeneratePair, ExponentOffGrid, MixedHodgeExponents, NonIntegralExponent
from .exactalg import ONE, ZERO, LPoly, Q, TSeries, infinite_product, positive_part_div, projective_space
from .geom import SurfaceData, pic0_class, preset, surface_class
from .hilb import disjoint_hilb_class, hilb_class
from .lattice import Vec, Wall, enumerate_walls, fmt_vec, vec
from .theta import indefinite_theta, jacobi_theta, star_specialize

# Global orientation of the theta route: +1 pairs Theta^{L,H} with the
# difference [M^H] - [M^L] as computed by the direct route.
THETA_ORIENTATION = 1


@dataclass(frozen=True)
class ModuliProblem:
    """Data of M_S^H(C, d) and M_S^L(C, d).

    H and L are positive classes (ample proxies); with ``nef`` set, classes
    of square zero are accepted as limits of polarizations.
    """

    S: SurfaceData
    C: Vec
    H: Vec
    L: Vec
    d: Fraction
    nef: tuple = field(default=())

    def __post_init__(self):
        for name in ("C", "H", "L"):
            object.__setattr__(self, name, vec(getattr(self, name)))
        object.__setattr__(self, "d", Q(self.d))
        object.__setattr__(self, "nef", tuple(vec(n) for n in self.nef))
        lat = self.S.lattice
        for name in ("C", "H", "L"):
            if len(getattr(self, name)) != lat.rank:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, NS has rank {lat.rank}")
        for name in ("H", "L"):
            v = getattr(self, name)
            sq = lat.square(v)
            if sq < 0 or (sq == 0 and v not in self.nef):
                raise DegeneratePair(f"{name}={fmt_vec(v)} has square {sq}; a positive class is required")
        check_d_grid(self.S, self.C, self.d)


def check_d_grid(S: SurfaceData, C: Sequence, d) -> None:
    """d must lie in Z - C^2/4."""
    d = Q(d)
    c2 = S.lattice.square(vec(C))
    if (d + c2 / 4).denominator != 1:
        raise ExponentOffGrid(f"d={d} is not in Z - C^2/4 (C^2 = {c2})")


def d_grid(S: SurfaceData, C: Sequence, order) -> list[Fraction]:
    """Positive d in Z - C^2/4 up to order."""
    c2 = S.lattice.square(vec(C))
    off = -c2 / 4
    off -= math.floor(off)
    out = []
    d = off if off > 0 else Fraction(1)
    while d <= Q(order):
        out.append(d)
        d += 1
    return out


@dataclass(frozen=True)
class WallcrossResult:
    value: LPoly
    walls: tuple[Wall, ...]

    @property
    def conditional(self) -> bool:
        return any(w.provenance != "proved" for w in self.walls)


def _int_exponent(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegralExponent(f"{what} = {x} is not an integer")
    return int(x)


def wallcross_report(P: ModuliProblem) -> WallcrossResult:
    S = P.S
    walls = enumerate_walls(S, P.C, P.d, P.H, P.L, nef=P.nef)
    pic0 = pic0_class(S)
    chi = S.chi
    total = ZERO
    for w in walls:
        n = _int_exponent(P.d + w.xi_sq, "d + xi^2")
        a = _int_exponent(P.d - w.xi_sq + w.xiK - chi - 1, "d - xi^2 + xi.K - chi - 1")
        b = _int_exponent(P.d - w.xi_sq - w.xiK - chi - 1, "d - xi^2 - xi.K - chi - 1")
        total = total + pic0 * disjoint_hilb_class(S, n) * (projective_space(a) - projective_space(b))
    return WallcrossResult(total, tuple(walls))


def wallcross_diff(P: ModuliProblem) -> LPoly:
    """[M^H(C,d)] - [M^L(C,d)] as a sum over the separating walls."""
    return wallcross_report(P).value


def wallcross_series(S: SurfaceData, C, H, L, order, route: str = "direct",
                     nef: Sequence = (), orientation: int | None = None) -> TSeries:
    """sum_d ([M^H(C,d)] - [M^L(C,d)]) t^d for 0 < d <= order."""
    order = Q(order)
    if route == "direct":
        terms = {d: wallcross_diff(ModuliProblem(S, C, H, L, d, tuple(nef))) for d in d_grid(S, C, order)}
        return TSeries(terms, order)
    if route == "theta":
        return _wallcross_theta(S, vec(C), vec(H), vec(L), order, THETA_ORIENTATION if orientation is None else orientation)
    raise ValueError(f"unknown route {route!r}")


def twisted_hilb_series(S, order) -> TSeries:
    """sum_n [S^[n]] L^n t^n."""
    N = math.floor(Q(order))
    return TSeries({n: hilb_class(S, n) * LPoly.L(n) for n in range(N + 1)}, order)


def lefschetz_quotient(x: LPoly) -> LPoly:
    """x / (L - 1) expanded in 1/L, negative powers of L dropped.

    A class with off-diagonal Hodge monomials is split by p - q; each part is
    u^k P(L) or v^k P(L) and the rule is applied to P.
    """
    if x.is_L_poly():
        return positive_part_div(x)
    groups: dict[Fraction, dict] = {}
    for (p, q), c in x.items():
        groups.setdefault(p - q, {})[(min(p, q), min(p, q))] = c
    out = ZERO
    for delta, part in groups.items():
        base = LPoly.monomial(delta, 0) if delta > 0 else LPoly.monomial(0, -delta)
        out = out + base * positive_part_div(LPoly(part))
    return out


def _wallcross_theta(S: SurfaceData, C: Vec, H: Vec, L: Vec, order: Fraction, orientation: int) -> TSeries:
    # Theta^{L,H}(2 tau, K z)^*: the q-order of Theta is half the t-order
    F, G = (L, H) if orientation > 0 else (H, L)
    theta = indefinite_theta(S, C, F, G, S.K, order / 2)
    star = star_specialize(theta)
    hs = twisted_hilb_series(S, order)
    body = star * hs * hs * (pic0_class(S) * LPoly.L(-S.chi))
    grid = d_grid(S, C, order)
    return TSeries({d: lefschetz_quotient(body.coeff(d)) for d in grid}, order)


def blowup_numerator(a: int, order) -> TSeries:
    """theta_{a,0}(2 tau, z)^*, the numerator of the blowup ratio."""
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    order = Q(order)
    return star_specialize(jacobi_theta(a, 0, order / 2))


def blowup_ratio(a: int, order) -> TSeries:
    """theta_{a,0}(2 tau, z)^* / prod_{l>0} (1 - L^{2l} t^l)."""
    order = Q(order)
    num = blowup_numerator(a, order)
    den = infinite_product(lambda l: TSeries({0: ONE, l: -LPoly.L(2 * l)}, order), order)
    return num * den ** -1


# -- ruled surface over an elliptic curve with sigma^2 = 1 ----------------------

ELLIPTIC_F = (Fraction(0), Fraction(1))
ELLIPTIC_G = (Fraction(2), Fraction(-1))      # G = 2 sigma - F = -K
ELLIPTIC_C = {0: (Fraction(1), Fraction(-1)),  # sigma - F, d in Z + 1/4
              1: (Fraction(1), Fraction(0))}   # sigma,     d in Z + 3/4


def _elliptic_index(d) -> int:
    k = 2 * Q(d) - Fraction(1, 2)
    if k.denominator != 1 or k < 0:
        raise ExponentOffGrid(f"2d - 1/2 = {k} is not a nonnegative integer")
    return int(k)


def _elliptic_class(S: SurfaceData) -> LPoly:
    # e(S) = e(E) (1 + L)
    e = surface_class(S)
    E = pic0_class(S)
    if E * (ONE + LPoly.L(1)) != e:
        raise MixedHodgeExponents("surface class is not e(E)(1 + L)")
    return E


def elliptic_product_series(order, exponent_form: str = "fibrewise") -> TSeries:
    """The closed product whose t^{2d-1/2} coefficient is [M^G(C,d)].

    The inner sum over l carries L^{l(2m - i)} t^{2lm} (``fibrewise``), which
    is what the Hilbert series of S produces; ``printed`` uses L^{m(2l - i)}
    instead.  The two agree below t^4.
    """
    order = Q(order)
    S = preset("elliptic-ruled")
    E = _elliptic_class(S)
    N = math.floor(order)
    result = TSeries({0: E}, order)
    for m in range(1, N // 2 + 1):
        for i in (0, 1):
            terms = {0: ONE}
            inner = {}
            for l in range(1, N // (2 * m) + 1):
                k = l * (2 * m - i) if exponent_form == "fibrewise" else m * (2 * l - i)
                inner[2 * l * m] = projective_space(l - 1) * LPoly.L(k)
            factor = TSeries(terms, order) + TSeries(inner, order) * E
            result = result * factor * factor
    for n in range(1, N + 1):
        f = (TSeries({0: ONE, n: -LPoly.L(n - 1)}, order)
             * TSeries({0: ONE, n: -LPoly.L(n)}, order) ** 2
             * TSeries({0: ONE, n: -LPoly.L(n + 1)}, order))
        result = result * (f if n % 2 == 0 else f ** -1)
    return result


def elliptic_ruled_moduli_class(d, order=None, exponent_form: str = "fibrewise") -> LPoly:
    """[M_S^G(C,d)] from the product formula, d in Z + 1/4 or Z + 3/4."""
    k = _elliptic_index(d)
    order = k if order is None else Q(order)
    if k > order:
        raise ValueError(f"coefficient t^{k} lies beyond order {order}")
    return elliptic_product_series(order, exponent_form).coeff(k)


def elliptic_ruled_theta_series(order, route: str = "theta") -> TSeries:
    """[M^G(C,d)] placed at t^{2d - 1/2}, from wall-crossing between F and G.

    M^F(C,d) is empty because C.F is odd, so the difference [M^G] - [M^F]
    is the absolute class.  Both determinants sigma and sigma - F contribute.
    """
    order = Q(order)
    S = preset("elliptic-ruled")
    d_order = (order + Fraction(1, 2)) / 2
    nef = (ELLIPTIC_F, ELLIPTIC_G)
    out = {}
    for C in ELLIPTIC_C.values():
        series = wallcross_series(S, C, ELLIPTIC_G, ELLIPTIC_F, d_order, route=route, nef=nef)
        for d, c in series.items():
            out[2 * d - Fraction(1, 2)] = c
    return TSeries(out, order)


def elliptic_ruled_theta_class(d, route: str = "theta") -> LPoly:
    k = _elliptic_index(d)
    return elliptic_ruled_theta_series(k, route).coeff(k)


__all__ = [
    "THETA_ORIENTATION", "ModuliProblem", "WallcrossResult", "check_d_grid", "d_grid",
    "wallcross_report", "wallcross_diff", "wallcross_series", "twisted_hilb_series",
    "lefschetz_quotient", "blowup_numerator", "blowup_ratio", "elliptic_product_series",
    "elliptic_ruled_moduli_class", "elliptic_ruled_theta_series", "elliptic_ruled_theta_class",
]
