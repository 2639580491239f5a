"""Surfaces, curves, motivic measures and symmetric-power series."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .errors import InvalidSurface, MixedHodgeExponents
from .exactalg import ONE, LPoly, Q, TSeries, fmt_rational, plethystic_exp
from .lattice import Lattice, congruence_signature

U = LPoly.monomial(1, 0)
V = LPoly.monomial(0, 1)
L = LPoly.L(1)


@dataclass(frozen=True)
class SurfaceData:
    name: str
    hodge: tuple[tuple[int, ...], ...]
    ns_gram: tuple[tuple[int, ...], ...]
    K: tuple[int, ...]

    def __post_init__(self):
        h = tuple(tuple(int(x) for x in row) for row in self.hodge)
        object.__setattr__(self, "hodge", h)
        object.__setattr__(self, "ns_gram", tuple(tuple(int(x) for x in row) for row in self.ns_gram))
        object.__setattr__(self, "K", tuple(int(x) for x in self.K))
        self.validate()

    def validate(self) -> None:
        h = self.hodge
        if len(h) != 3 or any(len(r) != 3 for r in h):
            raise InvalidSurface("hodge must be a 3x3 matrix")
        if any(x < 0 for r in h for x in r):
            raise InvalidSurface("Hodge numbers must be nonnegative")
        for p in range(3):
            for q in range(3):
                if h[p][q] != h[q][p]:
                    raise InvalidSurface(f"h^{p},{q} != h^{q},{p}")
        if h[0][0] != 1 or h[2][2] != 1:
            raise InvalidSurface("h^00 = h^22 = 1 is required")
        n = len(self.ns_gram)
        if len(self.K) != n:
            raise InvalidSurface("K has the wrong length")
        if n:
            pos, neg, zero = congruence_signature(self.ns_gram)
            if (pos, neg, zero) != (1, n - 1, 0):
                raise InvalidSurface(f"NS signature is ({pos},{neg},{zero}), expected (1,{n - 1},0)")

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.ns_gram)

    @property
    def irregularity(self) -> int:
        return self.hodge[0][1]

    @property
    def chi(self) -> int:
        """chi(O_S) = 1 - h^{0,1} + h^{0,2}."""
        return 1 - self.hodge[0][1] + self.hodge[0][2]

    @property
    def rank(self) -> int:
        return len(self.ns_gram)

    def to_json(self) -> dict:
        return {"name": self.name, "hodge": [list(r) for r in self.hodge],
                "ns_gram": [list(r) for r in self.ns_gram], "K": list(self.K)}

    @classmethod
    def from_json(cls, data) -> SurfaceData:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["name"], data["hodge"], data["ns_gram"], data["K"])


@dataclass(frozen=True)
class CurveData:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")


def curve_class(C: CurveData | int) -> LPoly:
    g = C.genus if isinstance(C, CurveData) else int(C)
    return ONE - U.scale(g) - V.scale(g) + L


def surface_class(S: SurfaceData) -> LPoly:
    """E-polynomial sum (-1)^{p+q} h^{p,q} u^p v^q."""
    return LPoly({(p, q): (-1) ** (p + q) * S.hodge[p][q] for p in range(3) for q in range(3)})


def pic0_class(S: SurfaceData) -> LPoly:
    """E-polynomial of the Picard torus, (1-u)^q (1-v)^q with q the irregularity."""
    q = S.irregularity
    return (ONE - U) ** q * (ONE - V) ** q


def euler_number(S: SurfaceData) -> int:
    return surface_class(S).evaluate(1, 1)


# -- presets -----------------------------------------------------------------

_PRESET_JSON = {
    "p2": '{"name": "p2", "hodge": [[1,0,0],[0,1,0],[0,0,1]], "ns_gram": [[1]], "K": [-3]}',
    "p1xp1": '{"name": "p1xp1", "hodge": [[1,0,0],[0,2,0],[0,0,1]], "ns_gram": [[0,1],[1,0]], "K": [-2,-2]}',
    "k3": '{"name": "k3", "hodge": [[1,0,1],[0,20,0],[1,0,1]], "ns_gram": [[0,1],[1,0]], "K": [0,0]}',
    "abelian": '{"name": "abelian", "hodge": [[1,2,1],[2,4,2],[1,2,1]], "ns_gram": [[0,1],[1,0]], "K": [0,0]}',
    "elliptic-ruled": '{"name": "elliptic-ruled", "hodge": [[1,1,0],[1,2,1],[0,1,1]], '
                      '"ns_gram": [[1,1],[1,0]], "K": [-2,1]}',
}


def ruled(g: int) -> SurfaceData:
    """C x P^1 over a genus-g curve; basis (section sigma, fibre F), sigma^2 = 0."""
    return SurfaceData(f"ruled:{g}", [[1, g, 0], [g, 2, g], [0, g, 1]], [[0, 1], [1, 0]], [-2, 2 * g - 2])


def blowup(S: SurfaceData) -> SurfaceData:
    """Blowup in a point: new class E with E^2 = -1 and K_new = K + E."""
    n = S.rank
    gram = [list(r) + [0] for r in S.ns_gram] + [[0] * n + [-1]]
    h = [list(r) for r in S.hodge]
    h[1][1] += 1
    return SurfaceData(f"blowup:{S.name}", h, gram, list(S.K) + [1])


def hirzebruch1() -> SurfaceData:
    return blowup(preset("p2"))


def elliptic_ruled() -> SurfaceData:
    """Ruled surface over an elliptic curve with section sigma^2 = 1; basis (sigma, F)."""
    return preset("elliptic-ruled")


@lru_cache(maxsize=None)
def preset(name: str) -> SurfaceData:
    name = name.strip()
    if name in _PRESET_JSON:
        return SurfaceData.from_json(_PRESET_JSON[name])
    if name == "f1":
        return hirzebruch1()
    if name.startswith("ruled:"):
        return ruled(int(name.split(":", 1)[1]))
    if name.startswith("blowup:"):
        return blowup(preset(name.split(":", 1)[1]))
    raise KeyError(f"unknown surface preset {name!r}")


def load_surface(spec: str) -> SurfaceData:
    """A preset name or a path to a JSON file in the surface schema."""
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        return SurfaceData.from_json(p.read_text())
    return preset(spec)


PRESET_NAMES = ("p2", "p1xp1", "ruled:g", "blowup:<base>", "f1", "k3", "abelian", "elliptic-ruled")


# -- measures ----------------------------------------------------------------

@dataclass(frozen=True)
class MeasureMode:
    kind: str  # "epoly" | "poincare" | "euler" | "pointcount"
    q: int | None = None

    @classmethod
    def parse(cls, text: str) -> MeasureMode:
        t = text.strip().lower()
        if t in ("epoly", "e", "hodge"):
            return cls("epoly")
        if t == "poincare":
            return cls("poincare")
        if t == "euler":
            return cls("euler")
        if t.startswith("pointcount"):
            _, _, q = t.partition(":")
            if not q or int(q) <= 0:
                raise ValueError("pointcount needs a positive q, e.g. pointcount:5")
            return cls("pointcount", int(q))
        raise ValueError(f"unknown measure {text!r}")


EPOLY = MeasureMode("epoly")
POINCARE = MeasureMode("poincare")
EULER = MeasureMode("euler")


def specialize(x: LPoly, mode: MeasureMode):
    """Apply a specialization of the E-polynomial.

    Poincare substitutes u = v = -z and returns a polynomial in z (stored in the
    first exponent slot); Euler and point counts return integers.
    """
    if mode.kind == "epoly":
        return x
    if mode.kind == "poincare":
        return LPoly([((p + q, 0), c * (-1 if int(p + q) % 2 else 1)) for (p, q), c in x.items()])
    if mode.kind == "euler":
        return x.evaluate(1, 1)
    if mode.kind == "pointcount":
        if not x.is_L_poly():
            raise MixedHodgeExponents(f"{x} is not a polynomial in L; point count undefined")
        total = Fraction(0)
        for a, c in x.L_coeffs().items():
            if a.denominator != 1:
                raise MixedHodgeExponents("fractional power of L")
            total += c * Fraction(mode.q) ** int(a)
        return int(total) if total.denominator == 1 else total
    raise ValueError(mode.kind)


def render_measured(value, mode: MeasureMode) -> str:
    if mode.kind == "poincare":
        # Betti-style listing keeps explicit coefficients
        if not value:
            return "0"
        parts = []
        for (p, _), c in value.sorted_items():
            mono = "" if p == 0 else ("z" if p == 1 else f"z^{fmt_rational(p)}")
            body = f"{abs(c)}" + (f" {mono}" if mono else "")
            parts.append(("-" if c < 0 else "") + body if not parts else (" - " if c < 0 else " + ") + body)
        return "".join(parts)
    if isinstance(value, LPoly):
        return value.render()
    return str(value)


# -- symmetric powers --------------------------------------------------------

@lru_cache(maxsize=512)
def _sym_series(x: LPoly, order: Fraction) -> TSeries:
    return plethystic_exp(TSeries({1: x}, order))


def sym_power_series(x: LPoly, order) -> TSeries:
    """sum_m e(X^(m)) t^m = PE[x t]."""
    order = Q(order)
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _sym_series(x, order)


def sym_power(x: LPoly, m: int) -> LPoly:
    """e(X^(m))."""
    if m == 0:
        return ONE
    return sym_power_series(x, 8 * ((m + 7) // 8)).coeff(m)
