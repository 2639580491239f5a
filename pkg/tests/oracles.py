"""Independent reference computations used only by the tests.

Nothing here calls the plethystic engine or the lattice enumerator; classes
are handled as plain dicts {(p, q): int} of Hodge monomials.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

Poly = dict  # {(p, q): coefficient}


def padd(a: Poly, b: Poly, s: int = 1) -> Poly:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + s * c
    return {k: c for k, c in out.items() if c}


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (p1, q1), c1 in a.items():
        for (p2, q2), c2 in b.items():
            k = (p1 + p2, q1 + q2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def Lpow(k: int) -> Poly:
    return {(k, k): 1}


def hodge_poly(hodge) -> Poly:
    return {(p, q): (-1) ** (p + q) * hodge[p][q] for p in range(3) for q in range(3) if hodge[p][q]}


def macdonald_sym_powers(x: Poly, N: int) -> list[Poly]:
    """e(X^(m)) for m <= N from prod_{p,q} (1 - u^p v^q t)^{-c_{pq}} (Macdonald's formula).

    A monomial with coefficient c contributes (1 - m t)^{-c}: for c > 0 the
    t^k coefficient is binom(c + k - 1, k) m^k, for c < 0 it is
    (-1)^k binom(-c, k) m^k.
    """
    series = [dict() for _ in range(N + 1)]
    series[0] = {(0, 0): 1}
    for (p, q), c in x.items():
        factor = []
        for k in range(N + 1):
            coef = math.comb(c + k - 1, k) if c > 0 else (-1) ** k * math.comb(-c, k)
            factor.append({(k * p, k * q): coef} if coef else {})
        new = [dict() for _ in range(N + 1)]
        for i in range(N + 1):
            for j in range(N + 1 - i):
                if series[i] and factor[j]:
                    new[i + j] = padd(new[i + j], pmul(series[i], factor[j]))
        series = new
    return series


def hilb_partition_sum(x: Poly, n: int) -> Poly:
    """The partition sum for [S^[n]] with symmetric powers from Macdonald's formula."""
    sym = macdonald_sym_powers(x, n)
    total: Poly = {}
    for parts in _partitions(n):
        mult: dict[int, int] = {}
        for i in parts:
            mult[i] = mult.get(i, 0) + 1
        term = Lpow(n - len(parts))
        for a in mult.values():
            term = pmul(term, sym[a])
        total = padd(total, term)
    return total


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for head in range(min(n, largest), 0, -1):
        for tail in _partitions(n - head, head):
            yield (head,) + tail


def euler_power_series(e: int, N: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - t^k)^{-e} via a_n = (e/n) sum_k sigma(k) a_{n-k}."""
    sigma = [0] + [sum(d for d in range(1, k + 1) if k % d == 0) for k in range(1, N + 1)]
    a = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        a[n] = Fraction(e, n) * sum(sigma[k] * a[n - k] for k in range(1, n + 1))
    assert all(x.denominator == 1 for x in a)
    return [int(x) for x in a]


def colored_conf_inclusion_exclusion(x: Poly, counts: tuple[int, ...], _memo=None) -> Poly:
    """Configurations of distinct coloured points by inclusion-exclusion.

    prod_j X^(m_j) is stratified by how the points collide: each point of the
    support carries a nonzero vector v of colour multiplicities.  The stratum
    with g(v) points of type v is a configuration space with one colour per
    v, so conf(m) = prod_j X^(m_j) - sum over non-trivial collision patterns.
    """
    if _memo is None:
        _memo = {}
    counts = tuple(sorted(c for c in counts if c))
    if counts in _memo:
        return _memo[counts]
    if not counts:
        return {(0, 0): 1}
    N = max(counts)
    sym = macdonald_sym_powers(x, N)
    total: Poly = {(0, 0): 1}
    for c in counts:
        total = pmul(total, sym[c])
    k = len(counts)
    vectors = [v for v in itertools.product(*(range(c + 1) for c in counts)) if any(v)]
    for pattern in _vector_multisets(vectors, counts):
        if all(sum(v) == 1 for v in pattern):
            continue
        types: dict[tuple, int] = {}
        for v in pattern:
            types[v] = types.get(v, 0) + 1
        total = padd(total, colored_conf_inclusion_exclusion(x, tuple(types.values()), _memo), -1)
    _memo[counts] = total
    return total


def _vector_multisets(vectors, target):
    """Multisets of vectors (nondecreasing in list order) summing to target."""
    def rec(start, remaining):
        if not any(remaining):
            yield []
            return
        for i in range(start, len(vectors)):
            v = vectors[i]
            if all(a <= b for a, b in zip(v, remaining)):
                rest = tuple(b - a for a, b in zip(v, remaining))
                for tail in rec(i, rest):
                    yield [v] + tail
    yield from rec(0, tuple(target))


def permutation_age(perm: tuple[int, ...]) -> Fraction:
    """Age of a permutation acting on (C^2)^n, from numerical eigenvalues."""
    import numpy as np

    n = len(perm)
    P = np.zeros((n, n))
    for i, j in enumerate(perm):
        P[j, i] = 1.0
    M = np.kron(P, np.eye(2))
    order = 1
    for c in _cycle_lengths(perm):
        order = order * c // math.gcd(order, c)
    total = Fraction(0)
    for lam in np.linalg.eigvals(M):
        theta = (np.angle(lam) / (2 * np.pi)) % 1.0
        k = round(theta * order) % order
        assert abs(theta * order - round(theta * order)) < 1e-6 or abs(theta * order - order) < 1e-6
        total += Fraction(k, order)
    return total


def _cycle_lengths(perm) -> list[int]:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        L, j = 0, s
        while j not in seen:
            seen.add(j)
            j = perm[j]
            L += 1
        out.append(L)
    return out


def cycle_type(perm) -> tuple[int, ...]:
    return tuple(sorted(_cycle_lengths(perm), reverse=True))


def eta_cubed_odd_squares(N: int) -> dict[Fraction, int]:
    """eta^3 = sum_{n>=0} (-1)^n (2n+1) q^{(2n+1)^2/8}."""
    out = {}
    n = 0
    while Fraction((2 * n + 1) ** 2, 8) <= N:
        out[Fraction((2 * n + 1) ** 2, 8)] = (-1) ** n * (2 * n + 1)
        n += 1
    return out


def gram_pair(gram, x, y) -> Fraction:
    return sum(Fraction(x[i]) * Fraction(gram[i][j]) * Fraction(y[j]) for i in range(len(x)) for j in range(len(y)))


def coset_box(rank: int, C, R: int):
    off = [Fraction(c, 2) if not isinstance(c, Fraction) else c / 2 for c in C]
    for v in itertools.product(range(-R, R + 1), repeat=rank):
        yield tuple(Fraction(v[i]) + off[i] for i in range(rank))


def walls_by_box(gram, K, C, d, H, L, R: int) -> set:
    d = Fraction(d)
    out = set()
    for xi in coset_box(len(gram), C, R):
        sq = gram_pair(gram, xi, xi)
        if not (0 < -sq <= d):
            continue
        xh, xl = gram_pair(gram, xi, H), gram_pair(gram, xi, L)
        if xl > 0 > xh:
            out.add(xi)
    return out


def theta_support_by_box(gram, C, F, G, bound, R: int) -> set:
    out = set()
    for xi in coset_box(len(gram), C, R):
        n = -gram_pair(gram, xi, xi)
        if not (0 <= n / 2 <= Fraction(bound)):
            continue
        xf, xg = -gram_pair(gram, xi, F), -gram_pair(gram, xi, G)
        w = (1 if xf >= 0 else 0) - (1 if xg >= 0 else 0)
        if w:
            out.add((xi, w))
    return out


def blowup_numerator_binomial(a: int, N: int) -> dict[Fraction, Poly]:
    """sum_n L^{binom(2n+a+1, 2)} t^{(n+a/2)^2} up to t^N."""
    out: dict[Fraction, Poly] = {}
    r = int(math.isqrt(N)) + 2
    for n in range(-r, r + 1):
        e = (Fraction(n) + Fraction(a, 2)) ** 2
        if e > N:
            continue
        m = 2 * n + a + 1
        k = m * (m - 1) // 2
        out[e] = padd(out.get(e, {}), Lpow(k))
    return out


def on_wall_by_box(gram, C, d, H, L, R: int) -> bool:
    """Whether some class of type (C, d) is orthogonal to H or L."""
    for xi in coset_box(len(gram), C, R):
        sq = gram_pair(gram, xi, xi)
        if 0 < -sq <= Fraction(d) and (gram_pair(gram, xi, H) == 0 or gram_pair(gram, xi, L) == 0):
            return True
    return False


def rank2_window_identity(p: int, r: int, N: int = 3, R: int = 40, W: int = 15) -> bool:
    """Theta_L(2 tau, x) th11(<-F/2,x>) th11(<G/2,x>) = eta^3 th11(<(-F+G)/2,x>), windowed.

    The lattice is spanned by e1 = F/2, e2 = G/2 with e1.e2 = 1/2 and x is chosen
    so that <e1, x> = -p z and <e2, x> = r z.  The theta series of the C = 0 coset
    is summed over a box (it has boundary terms at b = 0, a geometric tail in y),
    so both sides are compared only on y-exponents in [-W, W].  The right side
    uses the package's eta and theta11, which are checked separately against the
    triple product and the odd-square series.
    """
    from hilbmotive.exactalg import LPoly, TSeries
    from hilbmotive.theta import eta, jacobi_theta, specialize_y

    th11 = jacobi_theta(1, 1, N)
    terms: dict = {}
    for a in range(-R, R + 1):
        for b in range(-R, R + 1):
            w = (1 if -b >= 0 else 0) - (1 if -a >= 0 else 0)
            e = -a * b
            if w and 0 <= e <= N:
                terms.setdefault(e, []).append(LPoly.y(-a * p + b * r, w))
    theta = TSeries({e: sum(cs, LPoly()) for e, cs in terms.items()}, N)
    lhs = theta * specialize_y(th11, p) * specialize_y(th11, r)
    rhs = eta(N) ** 3 * specialize_y(th11, p + r)
    compared = 0
    for e in set(lhs.exponents()) | set(rhs.exponents()):
        if e > N:
            continue
        compared += 1
        a_ = {k: c for k, c in lhs.coeff(e).items() if abs(k[0]) <= W}
        b_ = {k: c for k, c in rhs.coeff(e).items() if abs(k[0]) <= W}
        if a_ != b_:
            return False
    return compared >= 3 or p + r == 0
