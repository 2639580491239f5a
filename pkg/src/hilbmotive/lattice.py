"""Neron-Severi lattice arithmetic and bounded enumeration.

Walls and indefinite-theta supports are both sets of classes xi in a coset
NS + C/2 whose pairings with two positive (or nef) classes A, B have opposite
signs and whose norm -xi^2 is bounded.  Such xi project to a negative vector
in span(A, B) and a negative vector in its orthogonal complement, so the
positive definite majorant  N(xi) = -xi^2 + 2 (xi.P)^2 / P^2  (P = A + B) is
bounded on them; the enumeration is a Fincke-Pohst search for N on the coset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BoundaryContact, DegeneratePair, DimensionMismatch, OnWall
from .exactalg import Q, fmt_rational

Vec = tuple[Fraction, ...]


def vec(v: Iterable) -> Vec:
    return tuple(Q(x) for x in v)


def fmt_vec(v: Sequence) -> str:
    return "(" + ",".join(fmt_rational(Q(x)) for x in v) + ")"


@dataclass(frozen=True)
class Lattice:
    """A lattice Z^rank with a symmetric rational Gram matrix (the intersection form)."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(Q(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DimensionMismatch("Gram matrix is not square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def lattice(self) -> Lattice:
        return self

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        if len(x) != self.rank or len(y) != self.rank:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} on a rank-{self.rank} lattice")
        g = self.gram
        return sum((Q(x[i]) * g[i][j] * Q(y[j]) for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def square(self, x: Sequence) -> Fraction:
        return self.pair(x, x)

    def signature(self) -> tuple[int, int, int]:
        return congruence_signature(self.gram)


def _as_lattice(S) -> Lattice:
    if isinstance(S, Lattice):
        return S
    lat = getattr(S, "lattice", None)
    if isinstance(lat, Lattice):
        return lat
    return Lattice(S)


def pair(x: Sequence, y: Sequence, S) -> Fraction:
    """Intersection pairing x^T Gram y on the lattice of S (exact)."""
    return _as_lattice(S).pair(x, y)


def congruence_signature(gram) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) by symmetric Gaussian elimination over Q."""
    a = [[Q(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = zero = 0
    k = 0
    while k < n:
        m = len(a)
        if m == 0:
            break
        if a[0][0] == 0:
            j = next((j for j in range(1, m) if a[j][j] != 0), None)
            if j is not None:
                a[0], a[j] = a[j], a[0]
                for row in a:
                    row[0], row[j] = row[j], row[0]
            else:
                j = next((j for j in range(1, m) if a[0][j] != 0), None)
                if j is None:
                    zero += 1
                    a = [row[1:] for row in a[1:]]
                    k += 1
                    continue
                # a[0][0] = a[j][j] = 0, a[0][j] != 0: replace e0 by e0 + e_j
                for c in range(m):
                    a[0][c] += a[j][c]
                for r in range(m):
                    a[r][0] += a[r][j]
        p = a[0][0]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [[a[r][c] - a[r][0] * a[0][c] / p for c in range(1, m)] for r in range(1, m)]
        a = rest
        k += 1
    return pos, neg, zero


def _ldl(gram: list[list[Fraction]]) -> list[list[Fraction]]:
    """Quadratic-form decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(gram)
    q = [[Q(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(form, center: Sequence, bound) -> list[tuple[int, ...]]:
    """All integer v with (v - center)^T form (v - center) <= bound, exactly.

    ``form`` must be positive definite.
    """
    bound = Q(bound)
    n = len(form)
    if n == 0:
        return [()]
    if bound < 0:
        return []
    q = _ldl([list(r) for r in form])
    c = [Q(x) for x in center]
    out: list[tuple[int, ...]] = []
    v = [0] * n

    def rec(i: int, remaining: Fraction):
        s = sum((q[i][j] * (v[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        # need q_ii (v_i - c_i + s)^2 <= remaining
        mid = c[i] - s
        r2 = remaining / q[i][i]
        r = math.isqrt(math.floor(r2)) + 1
        lo = math.floor(mid) - r
        hi = math.ceil(mid) + r
        for k in range(lo, hi + 1):
            d = k - mid
            used = q[i][i] * d * d
            if used <= remaining:
                v[i] = k
                if i == 0:
                    out.append(tuple(v))
                else:
                    rec(i - 1, remaining - used)

    rec(n - 1, bound)
    return sorted(out)


def _rational_gcd(values: Iterable[Fraction]) -> Fraction:
    values = [Q(x) for x in values if x != 0]
    if not values:
        return Fraction(0)
    den = 1
    for x in values:
        den = den * x.denominator // math.gcd(den, x.denominator)
    g = 0
    for x in values:
        g = math.gcd(g, int(x * den))
    return Fraction(g, den)


def min_abs_pairing(lat: Lattice, offset: Sequence, A: Sequence) -> Fraction:
    """min |xi.A| over xi in Z^rank + offset (0 if the value 0 is attained)."""
    gA = [sum((lat.gram[i][j] * Q(A[j]) for j in range(lat.rank)), Fraction(0)) for i in range(lat.rank)]
    step = _rational_gcd(gA)
    base = sum((Q(offset[i]) * gA[i] for i in range(lat.rank)), Fraction(0))
    if step == 0:
        return abs(base)
    r = base - step * math.floor(base / step)
    return min(r, step - r)


def separated_classes(lat: Lattice, C: Sequence, A: Sequence, B: Sequence, norm_bound) -> list[Vec]:
    """All xi in Z^rank + C/2 with (xi.A)(xi.B) <= 0 and -xi^2 <= norm_bound.

    Requires A^2, B^2 >= 0 and A.B > 0, A and B not proportional; when A^2 = 0
    (resp. B^2 = 0) the coset pairings with B (resp. A) must stay away from 0.
    """
    D = Q(norm_bound)
    A, B = vec(A), vec(B)
    offset = tuple(Q(c) / 2 for c in C)
    aa, bb, ab = lat.square(A), lat.square(B), lat.pair(A, B)
    if aa < 0 or bb < 0 or ab <= 0:
        raise DegeneratePair(f"need A^2 >= 0, B^2 >= 0, A.B > 0 (got {aa}, {bb}, {ab})")
    det = aa * bb - ab * ab
    if det == 0:
        # proportional classes never separate anything
        return []
    if D < 0:
        return []
    # |det| (-xi_V^2) = B^2 x^2 + 2 AB |x y| + A^2 y^2 <= D |det|,  x = xi.A, y = xi.B
    budget = D * (-det)
    mA = min_abs_pairing(lat, offset, A)
    mB = min_abs_pairing(lat, offset, B)
    x2_bounds, y2_bounds = [], []
    if bb > 0:
        x2_bounds.append(budget / bb)
    if mB > 0:
        x2_bounds.append((budget / (2 * ab * mB)) ** 2)
    if aa > 0:
        y2_bounds.append(budget / aa)
    if mA > 0:
        y2_bounds.append((budget / (2 * ab * mA)) ** 2)
    if not x2_bounds or not y2_bounds:
        raise DegeneratePair("pairings can vanish on an isotropic direction; enumeration is infinite")
    X2, Y2 = min(x2_bounds), min(y2_bounds)
    P = tuple(a + b for a, b in zip(A, B))
    pp = lat.square(P)
    n = lat.rank
    gP = [sum((lat.gram[i][j] * P[j] for j in range(n)), Fraction(0)) for i in range(n)]
    majorant = [[-lat.gram[i][j] + 2 * gP[i] * gP[j] / pp for j in range(n)] for i in range(n)]
    bound = D + 2 * (X2 + Y2) / pp
    center = tuple(-o for o in offset)
    out = []
    for v in short_vectors(majorant, center, bound):
        xi = tuple(Fraction(v[i]) + offset[i] for i in range(n))
        x, y = lat.pair(xi, A), lat.pair(xi, B)
        if x * y <= 0 and -lat.square(xi) <= D:
            out.append(xi)
    return out


def box_scan(lat: Lattice, C: Sequence, radius: int) -> Iterable[Vec]:
    """Brute-force coset points with integer part in [-radius, radius]^rank (test oracle)."""
    import itertools

    offset = tuple(Q(c) / 2 for c in C)
    for v in itertools.product(range(-radius, radius + 1), repeat=lat.rank):
        yield tuple(Fraction(v[i]) + offset[i] for i in range(lat.rank))


@dataclass(frozen=True)
class Wall:
    xi: Vec
    xi_sq: Fraction
    xiH: Fraction
    xiL: Fraction
    xiK: Fraction
    good: bool
    provenance: str  # "proved" or "assumed"
    witness: str = ""

    def to_json(self) -> dict:
        return {
            "xi": [fmt_rational(x) for x in self.xi],
            "xi_sq": fmt_rational(self.xi_sq),
            "xiH": fmt_rational(self.xiH),
            "xiL": fmt_rational(self.xiL),
            "xiK": fmt_rational(self.xiK),
            "good": self.good,
            "provenance": self.provenance,
            "witness": self.witness,
        }

    def describe(self) -> str:
        verdict = "PROVED-GOOD" if self.provenance == "proved" else "ASSUMED-GOOD"
        return (f"xi={fmt_vec(self.xi)} xi^2={fmt_rational(self.xi_sq)} xi.H={fmt_rational(self.xiH)} "
                f"xi.L={fmt_rational(self.xiL)} xi.K={fmt_rational(self.xiK)} {verdict}"
                + (f" [{self.witness}]" if self.witness else ""))


def _goodness(lat: Lattice, xi: Vec, K: Vec, H: Vec, L: Vec, nef: Sequence = ()) -> tuple[bool, str, str]:
    D = tuple(2 * a + b for a, b in zip(xi, K))
    for name, A in (("H", H), ("L", L), ("H+L", tuple(h + l for h, l in zip(H, L)))):
        if lat.pair(D, A) < 0:
            return True, "proved", f"(2xi+K).{name} < 0"
    if nef and any(x != 0 for x in D) and all(lat.pair(D, N) < 0 for N in nef):
        return True, "proved", "(2xi+K).N < 0 for declared nef N"
    return True, "assumed", ""


def enumerate_walls(S, C: Sequence, d, H: Sequence, L: Sequence, nef: Sequence = ()) -> list[Wall]:
    """Classes xi in NS + C/2 of type (C, d) with xi.L > 0 > xi.H.

    Raises OnWall if some xi with 0 < -xi^2 <= d is orthogonal to H or L.
    Each wall carries a goodness verdict: proved when 2xi + K pairs negatively
    with H, L, H + L (or with every declared nef class), otherwise assumed.
    """
    lat = _as_lattice(S)
    K = vec(getattr(S, "K", (0,) * lat.rank))
    H, L, C = vec(H), vec(L), vec(C)
    d = Q(d)
    walls = []
    for xi in separated_classes(lat, C, H, L, d):
        sq = lat.square(xi)
        if not (0 < -sq <= d):
            continue
        xh, xl = lat.pair(xi, H), lat.pair(xi, L)
        if xh == 0 or xl == 0:
            raise OnWall(f"xi={fmt_vec(xi)} with xi^2={fmt_rational(sq)} is orthogonal to "
                         + ("H" if xh == 0 else "L"))
        if not (xl > 0 > xh):
            continue
        # a point of the segment [H, L] orthogonal to xi must have positive square
        s = -xh / (xl - xh)
        P = tuple(h + s * (l - h) for h, l in zip(H, L))
        if lat.square(P) <= 0:
            continue
        good, prov, why = _goodness(lat, xi, K, H, L, tuple(vec(n) for n in nef))
        walls.append(Wall(xi, sq, xh, xl, lat.pair(xi, K), good, prov, why))
    walls.sort(key=lambda w: (-w.xi_sq, w.xi))
    return walls


def _mu(t: Fraction) -> int:
    return 1 if t >= 0 else 0


def check_theta_pair(S, C: Sequence, F: Sequence, G: Sequence) -> None:
    """Raise DegeneratePair unless the theta series is a power series."""
    lat = _as_lattice(S)
    F, G, C = vec(F), vec(G), vec(C)
    ff, gg, fg = lat.square(F), lat.square(G), lat.pair(F, G)
    if fg <= 0:
        raise DegeneratePair(f"F.G = {fmt_rational(fg)} must be positive")
    if ff > 0 and gg > 0:
        return
    cf, cg = lat.pair(C, F), lat.pair(C, G)
    odd = all(x.denominator == 1 and int(x) % 2 == 1 for x in (cf, cg))
    if ff >= 0 and gg >= 0 and odd:
        return
    raise DegeneratePair(f"need F^2, G^2 > 0 or (F^2, G^2 >= 0 and C.F, C.G odd); got "
                         f"F^2={fmt_rational(ff)}, G^2={fmt_rational(gg)}, C.F={fmt_rational(cf)}, C.G={fmt_rational(cg)}")


def theta_support(S, C: Sequence, F: Sequence, G: Sequence, norm_bound) -> list[tuple[Vec, int]]:
    """Support of the indefinite theta function with <xi, xi>/2 <= norm_bound.

    <,> is the negative of the intersection form; the weight is
    mu(<xi,F>) - mu(<xi,G>) with mu(t) = 1 for t >= 0 and 0 otherwise.
    """
    lat = _as_lattice(S)
    check_theta_pair(lat, C, F, G)
    F, G = vec(F), vec(G)
    out = []
    for xi in separated_classes(lat, C, F, G, 2 * Q(norm_bound)):
        xf, xg = -lat.pair(xi, F), -lat.pair(xi, G)
        w = _mu(xf) - _mu(xg)
        if w == 0:
            continue
        if xf == 0 or xg == 0:
            raise BoundaryContact(f"xi={fmt_vec(xi)} has <xi,{'F' if xf == 0 else 'G'}> = 0")
        out.append((xi, w))
    out.sort(key=lambda t: (-lat.square(t[0]), t[0]))
    return out
