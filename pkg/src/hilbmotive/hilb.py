"""Classes of Hilbert schemes of points on a surface and of their strata.

Everything is computed in the E-polynomial measure from e(S) alone.  The
basic identity is

    [S^[n]] = sum_{alpha in P(n)} [S^(alpha)] L^{n - |alpha|},
    S^(alpha) = prod_i S^(a_i),

and the finer stratum classes are sums of classes of configurations of
distinct points carrying colours, one colour per local punctual cell type.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .errors import PartitionMismatch
from .exactalg import ONE, ZERO, LPoly, Q, TSeries, infinite_product, mobius
from .geom import L, SurfaceData, surface_class, sym_power, sym_power_series
from .partitions import Partition, age_and_centralizer, enumerate_partitions


def _eclass(S) -> LPoly:
    if isinstance(S, LPoly):
        return S
    if isinstance(S, SurfaceData):
        return surface_class(S)
    raise TypeError(f"expected SurfaceData or LPoly, got {type(S).__name__}")


def _check_n(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    return int(n)


@dataclass(frozen=True)
class StratumKey:
    alpha: Partition
    beta: Optional[Partition] = None

    def __post_init__(self):
        if self.beta is not None and self.alpha.n != self.beta.n:
            raise PartitionMismatch(f"{self.alpha} and {self.beta} partition different integers")


def punctual_class(n: int) -> LPoly:
    """[R_n] = sum over partitions beta of n of L^{n - |beta|}."""
    n = _check_n(n)
    if n == 0:
        return ONE
    # p[m][k]: partitions of m into exactly k parts
    p = [[0] * (n + 1) for _ in range(n + 1)]
    p[0][0] = 1
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            p[m][k] = p[m - 1][k - 1] + p[m - k][k]
    return LPoly({(n - k, n - k): p[n][k] for k in range(1, n + 1)})


def symmetric_product_class(S, alpha: Partition) -> LPoly:
    """e(S^(alpha)) = prod_i e(S^(a_i))."""
    e = _eclass(S)
    out = ONE
    for _, a in alpha.multiplicities.items():
        out = out * sym_power(e, a)
    return out


@lru_cache(maxsize=4096)
def _hilb_class(e: LPoly, n: int) -> LPoly:
    total = ZERO
    for alpha in enumerate_partitions(n):
        total = total + symmetric_product_class(e, alpha) * LPoly.L(n - alpha.length)
    return total


def hilb_class(S, n: int) -> LPoly:
    """[S^[n]] by the partition sum."""
    return _hilb_class(_eclass(S), _check_n(n))


def hilb_series(S, order, method: str = "direct") -> TSeries:
    """sum_n [S^[n]] t^n up to t^order.

    ``product`` uses prod_{l >= 1} Z_S(L^{l-1} t^l) with Z_S(t) = PE[e(S) t].
    """
    e = _eclass(S)
    order = Q(order)
    if order < 0:
        raise ValueError("order must be nonnegative")
    N = math.floor(order)
    if method == "direct":
        return TSeries({n: _hilb_class(e, n) for n in range(N + 1)}, order)
    if method == "product":
        def factor(l: int) -> TSeries:
            return sym_power_series(e, Fraction(N // l)).substitute(l, LPoly.L(l - 1), order)
        return infinite_product(factor, order)
    raise ValueError(f"unknown method {method!r}")


def lefschetz_euler_product(order) -> TSeries:
    """prod_{l > 0} 1/(1 - L^l t^l)."""
    order = Q(order)
    return infinite_product(lambda l: TSeries({0: ONE, l: -LPoly.L(l)}, order) ** -1, order)


def blowup_hilb_series(base: TSeries, order=None) -> TSeries:
    """Hilbert series of the blowup in a point: base * prod_l 1/(1 - L^l t^l)."""
    order = base.order if order is None else min(Q(order), base.order)
    return base.truncate(order) * lefschetz_euler_product(order)


def incidence_class(S, n: int) -> LPoly:
    """[S^[n,n+1]] = sum_{l=0}^n [S] [S^[l]] L^{n-l}."""
    e = _eclass(S)
    n = _check_n(n)
    total = ZERO
    for l in range(n + 1):
        total = total + e * _hilb_class(e, l) * LPoly.L(n - l)
    return total


def disjoint_hilb_class(S, n: int) -> LPoly:
    """[(S u S)^[n]] = sum_k [S^[k]] [S^[n-k]]."""
    e = _eclass(S)
    n = _check_n(n)
    total = ZERO
    for k in range(n + 1):
        total = total + _hilb_class(e, k) * _hilb_class(e, n - k)
    return total


# -- coloured configurations -------------------------------------------------

def _box(counts: tuple[int, ...]) -> list[tuple[int, ...]]:
    return sorted(itertools.product(*(range(c + 1) for c in counts)), key=sum)


@lru_cache(maxsize=4096)
def _colored_conf(e: LPoly, counts: tuple[int, ...]) -> LPoly:
    k = len(counts)
    if k == 0:
        return ONE
    box = _box(counts)
    zero = (0,) * k

    # log(1 + sum_j s_j): coefficient (-1)^{m+1} (m-1)!/prod a_j! at total degree m
    log = {}
    for a in box:
        m = sum(a)
        if m:
            log[a] = Fraction((-1) ** (m + 1) * math.factorial(m - 1), math.prod(math.factorial(x) for x in a))
    # PL(1 + sum s_j) = sum_k mu(k)/k psi_k(log)
    pl = {}
    for a in box:
        m = sum(a)
        if not m:
            continue
        g = math.gcd(*a)
        c = Fraction(0)
        for d in range(1, g + 1):
            if g % d == 0 and mobius(d):
                c += Fraction(mobius(d), d) * log[tuple(x // d for x in a)]
        if c:
            pl[a] = c
    # G = sum_k psi_k(e * pl)/k, with psi_k acting on u, v and on the colours
    G: dict = {}
    for a, c in pl.items():
        for d in itertools.count(1):
            b = tuple(d * x for x in a)
            if any(x > y for x, y in zip(b, counts)):
                break
            G[b] = G.get(b, ZERO) + e.psi(d).scale(c / d)
    # exp(G) by the Euler recurrence |a| g_a = sum_b |b| G_b g_{a-b}
    g = {zero: ONE}
    Gi = sorted(G.items(), key=lambda t: sum(t[0]))
    for a in box[1:]:
        s = ZERO
        for b, Gb in Gi:
            r = tuple(x - y for x, y in zip(a, b))
            if min(r) < 0:
                continue
            prev = g.get(r)
            if prev:
                s = s + (Gb * prev).scale(sum(b))
        g[a] = s.scale(Fraction(1, sum(a)))
    return g[tuple(counts)]


def colored_configuration_class(S, counts) -> LPoly:
    """Class of configurations of distinct points, counts[j] of them of colour j.

    Points of one colour are unordered.  Computed as the coefficient of
    prod_j s_j^{counts[j]} in PE[e(S) PL(1 + sum_j s_j)].
    """
    c = tuple(sorted(int(x) for x in counts if x))
    if any(x < 0 for x in c):
        raise ValueError("counts must be nonnegative")
    return _colored_conf(_eclass(S), c)


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _colourings(alpha: Partition) -> Iterator[dict[Partition, int]]:
    """All f: (cell types) -> counts with sum_{beta in P(i)} f(beta) = a_i."""
    blocks = []
    for i, a in alpha.multiplicities.items():
        cells = enumerate_partitions(i)
        blocks.append([{b: c for b, c in zip(cells, comp) if c} for comp in _weak_compositions(a, len(cells))])
    for choice in itertools.product(*blocks):
        f: dict[Partition, int] = {}
        for part in choice:
            f.update(part)
        yield f


def stratum_class(S, alpha: Partition) -> LPoly:
    """Class of the stratum of S^[n] whose support has a_i points of length i."""
    e = _eclass(S)
    n = alpha.n
    total = ZERO
    for f in _colourings(alpha):
        used = sum(c * beta.length for beta, c in f.items())
        total = total + _colored_conf(e, tuple(sorted(f.values()))) * LPoly.L(n - used)
    return total


def fiber_stratum_class(S, alpha: Partition, beta: Partition) -> LPoly:
    """Sum over colourings f of the support cycle of type beta with sum f(gamma) gamma = alpha.

    Returned without the affine twist L^{n - |alpha|}.
    """
    if alpha.n != beta.n:
        raise PartitionMismatch(f"{alpha} partitions {alpha.n} but {beta} partitions {beta.n}")
    e = _eclass(S)
    target = alpha.multiplicities
    total = ZERO
    for f in _colourings(beta):
        acc: dict[int, int] = {}
        for gamma, c in f.items():
            for i, m in gamma.multiplicities.items():
                acc[i] = acc.get(i, 0) + c * m
        if acc == target:
            total = total + _colored_conf(e, tuple(sorted(f.values())))
    return total


def mckay_sum(S, n: int) -> LPoly:
    """Orbifold sum over conjugacy classes of S_n acting on S^n.

    The class of cycle type alpha contributes [S^n fixed / centralizer] = e(S^(alpha))
    times L^age.
    """
    e = _eclass(S)
    n = _check_n(n)
    total = ZERO
    for alpha in enumerate_partitions(n):
        age, _ = age_and_centralizer(alpha)
        total = total + symmetric_product_class(e, alpha) * LPoly.L(age)
    return total


__all__ = [
    "StratumKey", "punctual_class", "symmetric_product_class", "hilb_class", "hilb_series",
    "lefschetz_euler_product", "blowup_hilb_series", "incidence_class", "disjoint_hilb_class",
    "colored_configuration_class", "stratum_class", "fiber_stratum_class", "mckay_sum",
]
