"""Built-in cross-validation suites run by ``hilbmotive selftest``."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exactalg import LPoly, TSeries, plethystic_exp, plethystic_log
from .geom import preset, surface_class
from .hilb import hilb_class, hilb_series, punctual_class
from .moduli import elliptic_product_series, elliptic_ruled_theta_series, wallcross_series
from .partitions import enumerate_partitions, partition_count
from .theta import eta, indefinite_theta, jacobi_theta, rescale_q, specialize_y


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        # timings are left out so that reports are reproducible byte for byte
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _partition_counts() -> bool:
    return all(len(enumerate_partitions(n)) == partition_count(n) for n in range(30))


def _pe_roundtrip() -> bool:
    for name in ("p2", "k3", "abelian"):
        f = TSeries({1: surface_class(preset(name))}, 6)
        if plethystic_log(plethystic_exp(f)) != f:
            return False
    return True


def _punctual() -> bool:
    return all(punctual_class(n).evaluate(1, 1) == partition_count(n) for n in range(30))


def _hilb_table() -> bool:
    P2 = preset("p2")
    want = [[1, 1, 1], [1, 2, 3, 2, 1], [1, 2, 5, 6, 5, 2, 1]]
    return all(hilb_class(P2, n + 1) == LPoly.from_L_coeffs(w) for n, w in enumerate(want))


def _method_agreement() -> bool:
    return all(hilb_series(preset(s), 5, "direct") == hilb_series(preset(s), 5, "product")
               for s in ("p2", "p1xp1", "k3"))


def _triple_product() -> bool:
    return all(jacobi_theta(m, n, 4, "sum") == jacobi_theta(m, n, 4, "product") for m, n in ((1, 1), (0, 1)))


def _shifted_rank2() -> bool:
    half = Fraction(1, 2)
    gram = [[0, half], [half, 0]]
    lhs = rescale_q(indefinite_theta(gram, (1, 1), (2, 0), (0, 2), (0, -2), Fraction(3, 2)))
    t01 = jacobi_theta(0, 1, 3, "product")
    rhs = eta(3) ** 3 * jacobi_theta(1, 1, 3, "product") * (t01 * specialize_y(t01, 0)) ** -1
    return lhs.agrees(rhs, 3)


def _route_p1xp1(orientation: int) -> bool:
    S = preset("p1xp1")
    a = wallcross_series(S, (1, 0), (1, 3), (3, 1), 4, "direct")
    b = wallcross_series(S, (1, 0), (1, 3), (3, 1), 4, "theta", orientation=orientation)
    return a == b


def _elliptic() -> bool:
    th = elliptic_ruled_theta_series(3)
    pr = elliptic_product_series(3)
    return all(th.coeff(k) == pr.coeff(k) for k in range(4))


def suite(level: str, orientation: int = 1) -> list[tuple[str, Callable[[], bool]]]:
    quick = [
        ("partition-count", _partition_counts),
        ("pe-pl-roundtrip", _pe_roundtrip),
        ("punctual-at-1", _punctual),
        ("hilb-p2-table", _hilb_table),
    ]
    if level == "quick":
        return quick
    if level != "full":
        raise ValueError(f"unknown level {level!r}")
    return quick + [
        ("hilb-method-agreement", _method_agreement),
        ("jacobi-triple-product", _triple_product),
        ("rank2-shifted-identity", _shifted_rank2),
        ("wallcross-route-equality", lambda: _route_p1xp1(orientation)),
        ("elliptic-ruled-consistency", _elliptic),
    ]


def run_selftest(level: str = "quick", orientation: int = 1) -> list[CheckResult]:
    out = []
    for name, fn in suite(level, orientation):
        t0 = time.perf_counter()
        try:
            ok, detail = bool(fn()), ""
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, time.perf_counter() - t0, detail))
    return out
