"""Exact coefficient arithmetic.

``LPoly`` is a sparse Laurent polynomial in the Hodge variables u, v (the
Lefschetz class is L = uv).  ``TSeries`` is a truncated series in one formal
variable with exact rational exponents and ``LPoly`` coefficients.  The
plethystic exponential and logarithm act on both at once: the k-th Adams
operation multiplies the series exponent and both Hodge exponents by k.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import ConstantTermNotOne, ConstantTermPresent, MixedHodgeExponents, NonUnitLeadingTerm

Number = Union[int, Fraction]
Exp = Fraction


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact values")
    return Fraction(x)


def _norm_coeff(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def fmt_rational(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


class LPoly:
    """Immutable sparse Laurent polynomial in u, v.

    Keys are exponent pairs ``(p, q)`` of Fractions; values are nonzero ints
    (or Fractions, which only appear transiently inside the plethystic log).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Fraction, Fraction], Number] = {}
        for (p, q), c in items:
            key = (Q(p), Q(q))
            acc[key] = acc.get(key, 0) + c
        self._terms = {k: _norm_coeff(c) for k, c in acc.items() if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Number) -> LPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, p, q, c: Number = 1) -> LPoly:
        return cls({(p, q): c})

    @classmethod
    def L(cls, k=1, c: Number = 1) -> LPoly:
        return cls({(k, k): c})

    @classmethod
    def y(cls, b=1, c: Number = 1) -> LPoly:
        # single-variable use: y^b is stored in the first slot
        return cls({(b, 0): c})

    @classmethod
    def from_L_coeffs(cls, coeffs: Mapping | list) -> LPoly:
        if isinstance(coeffs, list):
            coeffs = dict(enumerate(coeffs))
        return cls({(k, k): c for k, c in coeffs.items()})

    # basic protocol
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LPoly({self})"

    def __str__(self):
        return self.render()

    # arithmetic
    @staticmethod
    def _lift(x) -> LPoly:
        if isinstance(x, LPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return LPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                k = (p1 + p2, q1 + q2)
                acc[k] = acc.get(k, 0) + c1 * c2
        return LPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of LPoly are only defined for units; use unit_inverse")
        result, base = LPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Number) -> LPoly:
        return LPoly({k: v * c for k, v in self._terms.items()})

    def shift(self, p, q) -> LPoly:
        p, q = Q(p), Q(q)
        return LPoly({(a + p, b + q): c for (a, b), c in self._terms.items()})

    def unit_inverse(self) -> LPoly:
        if len(self._terms) != 1:
            raise NonUnitLeadingTerm(f"{self} is not a monomial")
        ((p, q), c), = self._terms.items()
        if c not in (1, -1):
            raise NonUnitLeadingTerm(f"coefficient {c} of {self} is not a unit")
        return LPoly({(-p, -q): c})

    def psi(self, k: int) -> LPoly:
        """Adams operation: u -> u^k, v -> v^k."""
        return LPoly({(p * k, q * k): c for (p, q), c in self._terms.items()})

    # inspection
    def is_L_poly(self) -> bool:
        return all(p == q for p, q in self._terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def L_coeffs(self) -> dict[Fraction, Number]:
        if not self.is_L_poly():
            raise MixedHodgeExponents(f"{self} is not a polynomial in L")
        return {p: c for (p, _), c in self._terms.items()}

    def coeff(self, p, q=None) -> Number:
        if q is None:
            q = p
        return self._terms.get((Q(p), Q(q)), 0)

    def L_degree(self) -> Fraction:
        return max(self.L_coeffs(), default=Fraction(0))

    def total_degree(self) -> Fraction:
        return max((p + q for p, q in self._terms), default=Fraction(0))

    def min_exponents(self) -> tuple[Fraction, Fraction]:
        if not self._terms:
            return Fraction(0), Fraction(0)
        return min(p for p, _ in self._terms), min(q for _, q in self._terms)

    def evaluate(self, u: Number, v: Number) -> Number:
        total: Number = 0
        for (p, q), c in self._terms.items():
            total += c * _rpow(u, p) * _rpow(v, q)
        return _norm_coeff(Fraction(total)) if isinstance(total, Fraction) else total

    def sorted_items(self):
        return sorted(self._terms.items())

    # rendering
    def render(self, var: str = "uv") -> str:
        """Canonical text form.

        ``var="uv"`` prints ``L^k`` on the diagonal and ``u^p v^q`` elsewhere;
        ``var="y"`` or ``"z"`` prints the first slot as a single variable.
        """
        if not self._terms:
            return "0"
        parts = []
        for (p, q), c in self.sorted_items():
            if var == "uv":
                mono = _mono_uv(p, q)
            else:
                if q != 0:
                    raise ValueError("second Hodge slot is nonzero; cannot render as single variable")
                mono = _mono_1(var, p)
            parts.append((c, mono))
        out = []
        for i, (c, mono) in enumerate(parts):
            neg = c < 0
            a = -c if neg else c
            if mono == "":
                body = fmt_rational(Q(a))
            elif a == 1:
                body = mono
            else:
                body = f"{fmt_rational(Q(a))} {mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def to_json(self) -> list:
        return [[fmt_rational(p), fmt_rational(q), fmt_rational(Q(c))] for (p, q), c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list) -> LPoly:
        return cls({(Q(p), Q(q)): _norm_coeff(Q(c)) for p, q, c in data})


def _rpow(x: Number, e: Fraction):
    e = Q(e)
    if e.denominator != 1:
        raise ValueError("cannot evaluate a fractional power exactly")
    return Fraction(x) ** int(e)


def _pow_str(e: Fraction) -> str:
    s = fmt_rational(e)
    return s if (e.denominator == 1 and e >= 0) else "{" + s + "}"


def _mono_1(var: str, e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{_pow_str(e)}"


def _mono_uv(p: Fraction, q: Fraction) -> str:
    if p == q:
        return _mono_1("L", p)
    return " ".join(s for s in (_mono_1("u", p), _mono_1("v", q)) if s)


ONE = LPoly.const(1)
ZERO = LPoly()


class TSeries:
    """Truncated series sum_e c_e t^e with exact rational exponents.

    Terms with exponent above ``order`` are dropped on construction; the
    result of any binary operation carries the smaller of the two orders.
    """

    __slots__ = ("order", "_terms")

    def __init__(self, terms: Mapping = (), order=0):
        self.order = Q(order)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, LPoly] = {}
        for e, c in items:
            e = Q(e)
            if e > self.order:
                continue
            c = LPoly._lift(c)
            acc[e] = acc[e] + c if e in acc else c
        self._terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def one(cls, order) -> TSeries:
        return cls({0: ONE}, order)

    @classmethod
    def monomial(cls, e, c, order) -> TSeries:
        return cls({e: c}, order)

    @property
    def terms(self) -> dict[Fraction, LPoly]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def coeff(self, e) -> LPoly:
        return self._terms.get(Q(e), ZERO)

    def __getitem__(self, e) -> LPoly:
        return self.coeff(e)

    def min_exponent(self) -> Fraction | None:
        return min(self._terms) if self._terms else None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self):
        return hash((self.order, frozenset(self._terms.items())))

    def agrees(self, other: TSeries, order=None) -> bool:
        """Termwise equality up to ``order`` (default: the smaller order)."""
        n = min(self.order, other.order) if order is None else Q(order)
        return self.truncate(n)._terms == other.truncate(n)._terms

    def __repr__(self):
        return f"TSeries({self}, order={fmt_rational(self.order)})"

    def __str__(self):
        return self.render()

    def render(self, var: str = "t", coeff_var: str = "uv") -> str:
        if not self._terms:
            return f"O({var}^{_pow_str(self.order)})" if self.order >= 0 else "0"
        out = []
        for e, c in self.items():
            cs = c.render(coeff_var)
            mono = _mono_1(var, e)
            single = len(c) == 1
            neg = single and cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not mono:
                body = cs if single else f"({cs})"
            elif cs == "1":
                body = mono
            else:
                body = f"{cs} {mono}" if single else f"({cs}) {mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out) + f" + O({var}^{_pow_str(self.order)})"

    def to_json(self) -> dict:
        return {"order": fmt_rational(self.order),
                "terms": [[fmt_rational(e), c.to_json()] for e, c in self.items()]}

    @classmethod
    def from_json(cls, data: dict) -> TSeries:
        return cls({Q(e): LPoly.from_json(c) for e, c in data["terms"]}, Q(data["order"]))

    # arithmetic
    def truncate(self, order) -> TSeries:
        order = min(Q(order), self.order)
        return TSeries(self._terms, order)

    def with_order(self, order) -> TSeries:
        """Relabel the truncation order downward (never upward)."""
        return self.truncate(order)

    def _lift(self, other) -> TSeries:
        if isinstance(other, TSeries):
            return other
        if isinstance(other, (int, Fraction, LPoly)):
            return TSeries({0: other}, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return TSeries(acc, order)

    __radd__ = __add__

    def __neg__(self):
        return TSeries({e: -c for e, c in self._terms.items()}, self.order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LPoly)):
            return TSeries({e: c * other for e, c in self._terms.items()}, self.order)
        if not isinstance(other, TSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_invert(self) ** (-n)
        result = TSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map_coeffs(self, fn: Callable[[LPoly], LPoly]) -> TSeries:
        return TSeries({e: fn(c) for e, c in self._terms.items()}, self.order)

    def substitute(self, scale, coeff_twist: LPoly | None = None, order=None) -> TSeries:
        """Return f(c * t^scale) where c = coeff_twist, i.e. t^e -> c^e t^{scale*e}.

        Only integral exponents may be twisted by a non-unit coefficient.
        """
        scale = Q(scale)
        new_order = self.order * scale if order is None else Q(order)
        acc = {}
        for e, c in self._terms.items():
            if coeff_twist is not None:
                if e.denominator != 1:
                    raise ValueError("coefficient twist needs integral exponents")
                c = c * coeff_twist ** int(e)
            acc[e * scale] = c
        return TSeries(acc, new_order)

    def psi(self, k: int) -> TSeries:
        return TSeries({e * k: c.psi(k) for e, c in self._terms.items()}, self.order * k)


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    """Truncated product; the result carries min(a.order, b.order)."""
    order = min(a.order, b.order)
    ai, bi = a.items(), b.items()
    acc: dict[Fraction, LPoly] = {}
    if not ai or not bi:
        return TSeries({}, order)
    bmin = bi[0][0]
    for ea, ca in ai:
        if ea + bmin > order:
            break
        for eb, cb in bi:
            e = ea + eb
            if e > order:
                break
            p = ca * cb
            acc[e] = acc[e] + p if e in acc else p
    return TSeries(acc, order)


def exponent_closure(generators: Iterable[Fraction], bound: Fraction) -> list[Fraction]:
    """All sums of positive generators (with repetition) that are <= bound, plus 0."""
    gens = sorted({Q(g) for g in generators if Q(g) <= bound})
    if any(g <= 0 for g in gens):
        raise ValueError("generators must be positive")
    seen = {Fraction(0)}
    heap = [Fraction(0)]
    out = []
    while heap:
        e = heapq.heappop(heap)
        out.append(e)
        for g in gens:
            f = e + g
            if f > bound:
                break
            if f not in seen:
                seen.add(f)
                heapq.heappush(heap, f)
    return out


def series_invert(a: TSeries) -> TSeries:
    """Multiplicative inverse.

    The lowest coefficient must be a unit (plus or minus a single monomial).  If
    the lowest exponent is e0 the inverse starts at -e0 and is known up to
    order - 2*e0.
    """
    if not a:
        raise NonUnitLeadingTerm("cannot invert the zero series")
    e0 = a.min_exponent()
    a0 = a.coeff(e0)
    try:
        inv0 = a0.unit_inverse()
    except NonUnitLeadingTerm as exc:
        raise NonUnitLeadingTerm(f"lowest coefficient {a0} is not a unit") from exc
    rel_order = a.order - e0
    rest = {e - e0: c for e, c in a.items() if e > e0}
    grid = exponent_closure(rest, rel_order)
    c: dict[Fraction, LPoly] = {Fraction(0): inv0}
    rest_items = sorted(rest.items())
    for e in grid[1:]:
        s = ZERO
        for r, br in rest_items:
            if r > e:
                break
            prev = c.get(e - r)
            if prev:
                s = s + br * prev
        c[e] = -(inv0 * s)
    return TSeries({e - e0: v for e, v in c.items()}, rel_order - e0)


def _exp_recurrence(h: TSeries) -> TSeries:
    """exp(h) for h with only positive exponents, via e*g_e = sum e' h_e' g_{e-e'}."""
    hi = h.items()
    grid = exponent_closure([e for e, _ in hi], h.order)
    g: dict[Fraction, LPoly] = {Fraction(0): ONE}
    for e in grid[1:]:
        s = ZERO
        for r, hr in hi:
            if r > e:
                break
            prev = g.get(e - r)
            if prev:
                s = s + (hr * prev).scale(r)
        g[e] = s.scale(1 / e)
    return TSeries(g, h.order)


def _log_recurrence(g: TSeries) -> TSeries:
    gi = [(e, c) for e, c in g.items() if e > 0]
    grid = exponent_closure([e for e, _ in gi], g.order)
    h: dict[Fraction, LPoly] = {}
    for e in grid[1:]:
        s = ZERO
        for r, hr in sorted(h.items()):
            if r >= e:
                break
            ge = g.coeff(e - r)
            if ge:
                s = s + (hr * ge).scale(r)
        h[e] = g.coeff(e) - s.scale(1 / e)
    return TSeries(h, g.order)


def _check_positive_support(f: TSeries) -> None:
    m = f.min_exponent()
    if m is None:
        return
    if m == 0:
        raise ConstantTermPresent(f"constant term {f.coeff(0)} must vanish")
    if m < 0:
        raise ConstantTermPresent(f"series has a negative exponent {fmt_rational(m)}")


def plethystic_exp(f: TSeries) -> TSeries:
    """PE[f] = exp(sum_k psi_k(f)/k)."""
    _check_positive_support(f)
    m = f.min_exponent()
    if m is None:
        return TSeries.one(f.order)
    h = TSeries({}, f.order)
    k = 1
    while m * k <= f.order:
        h = h + f.psi(k).truncate(f.order) * Fraction(1, k)
        k += 1
    return _exp_recurrence(h)


def plethystic_log(g: TSeries) -> TSeries:
    """Inverse of :func:`plethystic_exp`; internally rational, integral output expected."""
    if g.coeff(0) != ONE:
        raise ConstantTermNotOne(f"constant term is {g.coeff(0)}, expected 1")
    if g.min_exponent() < 0:
        raise ConstantTermNotOne("series has negative exponents")
    lg = _log_recurrence(g)
    m = lg.min_exponent()
    out = TSeries({}, g.order)
    if m is None:
        return out
    k = 1
    while m * k <= g.order:
        mu = mobius(k)
        if mu:
            out = out + lg.psi(k).truncate(g.order) * Fraction(mu, k)
        k += 1
    return out


def positive_part_div(p: LPoly) -> LPoly:
    """Divide by (L - 1) expanded in 1/L and discard nonpositive powers of L.

    Sends c L^a to c (1 + L + ... + L^{a-1}) for a >= 1 and to 0 for a <= 0.
    """
    acc: dict = {}
    for a, c in p.L_coeffs().items():
        if a.denominator != 1:
            raise MixedHodgeExponents(f"fractional power L^{fmt_rational(a)}")
        for k in range(int(a)):
            acc[(k, k)] = acc.get((k, k), 0) + c
    return LPoly(acc)


def projective_space(m: int) -> LPoly:
    """[P^m]; empty (zero) for m < 0."""
    return positive_part_div(LPoly.L(m + 1)) if m >= 0 else ZERO


def infinite_product(factor: Callable[[int], TSeries], order, start: int = 1) -> TSeries:
    """Product over l >= start of factor(l); stops once a factor is 1 + O(t^order+).

    ``factor(l)`` must return a series with constant term 1 whose lowest
    nontrivial exponent grows with l.
    """
    order = Q(order)
    result = TSeries.one(order)
    l = start
    while True:
        f = factor(l).truncate(order)
        if not any(e > 0 for e in f.exponents()):
            return result
        result = result * f
        l += 1
