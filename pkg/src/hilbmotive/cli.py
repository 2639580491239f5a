"""Command-line front end.

Exit codes: 0 success, 1 failed comparison or self-test, 2 invalid input,
3 violated mathematical precondition.  Exact rationals are read and written
as "a/b" strings.  HILBMOTIVE_WORKERS > 1 computes independent coefficients
in worker processes; output is identical either way.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import hilb, moduli, theta
from .errors import PreconditionError
from .exactalg import LPoly, Q, TSeries, fmt_rational
from .geom import MeasureMode, load_surface, render_measured, specialize
from .lattice import enumerate_walls, fmt_vec
from .partitions import Partition, enumerate_partitions
from .selftest import run_selftest

WORKERS_ENV = "HILBMOTIVE_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Q(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a vector of rationals: {text!r}") from exc


def _measure(text: str) -> MeasureMode:
    try:
        return MeasureMode.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _pmap(fn, args: list) -> list:
    w = _workers()
    if w == 1 or len(args) < 2:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, *zip(*args)))


# -- value encoding ------------------------------------------------------------

def encode(value):
    """JSON form of an exact value; ``decode`` inverts it."""
    if isinstance(value, LPoly):
        return {"type": "lpoly", "terms": value.to_json()}
    if isinstance(value, TSeries):
        return {"type": "series", **value.to_json()}
    if isinstance(value, (int, Fraction)):
        return {"type": "rational", "value": fmt_rational(Q(value))}
    raise TypeError(type(value).__name__)


def decode(data):
    kind = data["type"]
    if kind == "lpoly":
        return LPoly.from_json(data["terms"])
    if kind == "series":
        return TSeries.from_json(data)
    if kind == "rational":
        q = Q(data["value"])
        return int(q) if q.denominator == 1 else q
    raise ValueError(kind)


def _render(value, mode: MeasureMode, var: str = "uv") -> str:
    if isinstance(value, LPoly) and var != "uv":
        return value.render(var)
    return render_measured(value, mode)


def _series_rows(series: TSeries, mode: MeasureMode, var: str = "uv"):
    return [(fmt_rational(e), _render(specialize(c, mode) if var == "uv" else c, mode, var)) for e, c in series.items()]


class Output:
    """Collects rows of (key, rendered value) plus a JSON payload."""

    def __init__(self, verb: str, fmt: str):
        self.verb, self.fmt = verb, fmt
        self.lines: list[str] = []
        self.rows: list[tuple[str, str]] = []
        self.payload: dict = {"verb": verb}

    def line(self, text: str):
        self.lines.append(text)

    def row(self, key: str, value: str):
        self.rows.append((key, value))

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True)
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            for k, v in self.rows:
                w.writerow([k, v])
            return buf.getvalue().rstrip("\n")
        return "\n".join(self.lines)


def _measured(value, mode: MeasureMode):
    return specialize(value, mode)


# -- verbs ---------------------------------------------------------------------

def _hilb(a, out: Output):
    S = load_surface(a.surface)
    v = _measured(hilb.hilb_class(S, a.n), a.measure)
    text = render_measured(v, a.measure)
    out.line(text)
    out.row(f"n={a.n}", text)
    out.payload.update(surface=S.name, n=a.n, measure=a.measure.kind, value=encode(v))


def _hilb_coeff(S, n):
    return hilb.hilb_class(S, n)


def _hilb_series(a, out: Output):
    S = load_surface(a.surface)
    order = a.order
    if a.method == "direct":
        N = math.floor(order)
        coeffs = _pmap(_hilb_coeff, [(S, n) for n in range(N + 1)])
        series = TSeries(dict(enumerate(coeffs)), order)
    else:
        series = hilb.hilb_series(S, order, a.method)
    for e, text in _series_rows(series, a.measure):
        out.line(f"t^{e}: {text}")
        out.row(f"t^{e}", text)
    if a.measure.kind == "epoly":
        out.payload["value"] = encode(series)
    else:
        out.payload["value"] = {fmt_rational(e): encode(_measured(c, a.measure)) for e, c in series.items()}
    out.payload.update(surface=S.name, order=fmt_rational(order), method=a.method, measure=a.measure.kind)


def _punctual(a, out: Output):
    v = _measured(hilb.punctual_class(a.n), a.measure)
    text = render_measured(v, a.measure)
    out.line(text)
    out.row(f"n={a.n}", text)
    out.payload.update(n=a.n, measure=a.measure.kind, value=encode(v))


def _stratum(S, alpha):
    return hilb.stratum_class(S, alpha)


def _strata(a, out: Output):
    S = load_surface(a.surface)
    parts = enumerate_partitions(a.n)
    entries = []
    if a.beta is None:
        values = _pmap(_stratum, [(S, alpha) for alpha in parts])
        entries = list(zip((str(p) for p in parts), values))
    else:
        beta = Partition.parse(a.beta)
        if beta.n != a.n:
            raise ValueError(f"--beta {beta} does not partition n={a.n}")
        entries = [(str(alpha), hilb.fiber_stratum_class(S, alpha, beta)) for alpha in parts]
    out.payload.update(surface=S.name, n=a.n, measure=a.measure.kind, beta=a.beta, strata={})
    for key, v in entries:
        mv = _measured(v, a.measure)
        text = render_measured(mv, a.measure)
        out.line(f"{key}: {text}")
        out.row(key, text)
        out.payload["strata"][key] = encode(mv)


def _incidence(a, out: Output):
    S = load_surface(a.surface)
    v = _measured(hilb.incidence_class(S, a.n), a.measure)
    text = render_measured(v, a.measure)
    out.line(text)
    out.row(f"n={a.n}", text)
    out.payload.update(surface=S.name, n=a.n, measure=a.measure.kind, value=encode(v))


def _mckay(a, out: Output):
    S = load_surface(a.surface)
    v = _measured(hilb.mckay_sum(S, a.n), a.measure)
    text = render_measured(v, a.measure)
    out.line(text)
    out.row(f"n={a.n}", text)
    out.payload.update(surface=S.name, n=a.n, measure=a.measure.kind, value=encode(v))


def _walls(a, out: Output):
    S = load_surface(a.surface)
    moduli.check_d_grid(S, a.C, a.d)
    walls = enumerate_walls(S, a.C, a.d, a.H, a.L, nef=a.nef or ())
    out.line(f"{len(walls)} wall(s)")
    for w in walls:
        out.line(w.describe())
        out.row(fmt_vec(w.xi), w.describe())
    out.payload.update(surface=S.name, d=fmt_rational(a.d), walls=[w.to_json() for w in walls])


def _theta(a, out: Output):
    if a.kind == "eta":
        f = theta.eta(a.order)
    elif a.kind == "jacobi":
        f = theta.jacobi_theta(a.mu, a.nu, a.order, a.form)
    else:
        S = load_surface(a.surface)
        missing = [n for n in ("C", "F", "G") if getattr(a, n) is None]
        if missing:
            raise ValueError("indefinite theta needs " + ", ".join("--" + m for m in missing))
        xdir = a.xdir if a.xdir is not None else S.K
        f = theta.indefinite_theta(S, a.C, a.F, a.G, xdir, a.order)
    if a.star:
        f = theta.star_specialize(f)
        rows = [(fmt_rational(e), c.render()) for e, c in f.items()]
        var = "t"
    else:
        rows = [(fmt_rational(e), c.render("y")) for e, c in f.items()]
        var = "q"
    for e, text in rows:
        out.line(f"{var}^{e}: {text}")
        out.row(f"{var}^{e}", text)
    out.payload.update(kind=a.kind, star=a.star, value=encode(f))


def _wallcross(a, out: Output):
    S = load_surface(a.surface)
    P = moduli.ModuliProblem(S, a.C, a.H, a.L, a.d, tuple(a.nef or ()))
    rep = moduli.wallcross_report(P)
    v = _measured(rep.value, a.measure)
    text = render_measured(v, a.measure)
    out.line(text + ("  [CONDITIONAL]" if rep.conditional else ""))
    for w in rep.walls:
        out.line("  " + w.describe())
    out.row(f"d={fmt_rational(a.d)}", text)
    out.payload.update(surface=S.name, d=fmt_rational(a.d), measure=a.measure.kind, value=encode(v),
                       walls=[w.to_json() for w in rep.walls], conditional=rep.conditional,
                       assumptions=["H and L are ample (asserted by the caller)"])


def _wallcross_series(a, out: Output) -> int:
    S = load_surface(a.surface)
    routes = ["direct", "theta"] if a.route == "both" else [a.route]
    results = {r: moduli.wallcross_series(S, a.C, a.H, a.L, a.order, r, nef=a.nef or ()) for r in routes}
    series = results[routes[0]]
    for e, text in _series_rows(series, a.measure):
        out.line(f"t^{e}: {text}")
        out.row(f"t^{e}", text)
    out.payload.update(surface=S.name, order=fmt_rational(a.order), route=a.route,
                       value=encode(series) if a.measure.kind == "epoly" else None)
    if a.route == "both":
        same = results["direct"] == results["theta"]
        out.line("routes agree" if same else "ROUTES DIFFER")
        out.payload["routes_agree"] = same
        if not same:
            diff = results["direct"] - results["theta"]
            out.line("direct - theta = " + diff.render())
            return 1
    return 0


def _blowup_ratio(a, out: Output):
    f = moduli.blowup_ratio(a.a, a.order)
    for e, c in f.items():
        out.line(f"t^{fmt_rational(e)}: {c.render()}")
        out.row(f"t^{fmt_rational(e)}", c.render())
    out.payload.update(a=a.a, order=fmt_rational(a.order), value=encode(f))


def _elliptic_moduli(a, out: Output) -> int:
    values = {}
    if a.route in ("product", "both"):
        values["product"] = moduli.elliptic_ruled_moduli_class(a.d)
    if a.route in ("theta", "both"):
        values["theta"] = moduli.elliptic_ruled_theta_class(a.d)
    if a.route == "direct":
        values["direct"] = moduli.elliptic_ruled_theta_class(a.d, route="direct")
    first = next(iter(values.values()))
    v = _measured(first, a.measure)
    text = render_measured(v, a.measure)
    out.line(text)
    out.row(f"d={fmt_rational(a.d)}", text)
    out.payload.update(d=fmt_rational(a.d), route=a.route, measure=a.measure.kind, value=encode(v))
    if a.route == "both":
        same = values["product"] == values["theta"]
        out.line("routes agree" if same else "ROUTES DIFFER")
        out.payload["routes_agree"] = same
        return 0 if same else 1
    return 0


def _selftest(a, out: Output) -> int:
    results = run_selftest(a.level, orientation=-1 if a.flip_orientation else 1)
    for r in results:
        out.line(f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f" ({r.detail})" if r.detail else ""))
        out.row(r.name, "pass" if r.ok else "fail")
    out.payload.update(level=a.level, results=[r.to_json() for r in results])
    return 0 if all(r.ok for r in results) else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--measure", type=_measure, default=MeasureMode("epoly"),
                        help="epoly | poincare | euler | pointcount:q")

    surf = _Parser(add_help=False)
    surf.add_argument("--surface", default="p2", help="preset name or JSON file")

    lat = _Parser(add_help=False)
    lat.add_argument("--C", type=_vector)
    lat.add_argument("--H", type=_vector)
    lat.add_argument("--L", type=_vector)
    lat.add_argument("--nef", type=_vector, action="append", help="declared nef class (repeatable)")

    p = _Parser(prog="hilbmotive", description="Grothendieck classes of Hilbert schemes and moduli of sheaves")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, parents, help_):
        s = sub.add_parser(name, parents=parents, help=help_)
        s.set_defaults(fn=fn)
        return s

    s = verb("hilb", _hilb, [common, surf], "class of S^[n]")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s = verb("hilb-series", _hilb_series, [common, surf], "generating series of S^[n]")
    s.add_argument("--order", type=_rational, required=True)
    s.add_argument("--method", choices=("direct", "product"), default="direct")
    s = verb("punctual", _punctual, [common], "class of the punctual Hilbert scheme")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s = verb("strata", _strata, [common, surf], "stratum classes of S^[n]")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s.add_argument("--beta", help="support cycle type, e.g. (1,2); lists fibre classes over it")
    s = verb("incidence", _incidence, [common, surf], "class of S^[n,n+1]")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s = verb("mckay", _mckay, [common, surf], "orbifold sum for S_n acting on S^n")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s = verb("walls", _walls, [common, surf, lat], "walls of type (C,d) between H and L")
    s.add_argument("--d", type=_rational, required=True)
    s = verb("theta", _theta, [common, surf], "theta function q-expansions")
    s.add_argument("--kind", choices=("jacobi", "indefinite", "eta"), default="jacobi")
    s.add_argument("--mu", type=int, choices=(0, 1), default=1)
    s.add_argument("--nu", type=int, choices=(0, 1), default=1)
    s.add_argument("--form", choices=("sum", "product"), default="sum")
    s.add_argument("--C", type=_vector)
    s.add_argument("--F", type=_vector)
    s.add_argument("--G", type=_vector)
    s.add_argument("--xdir", type=_vector, help="default: K_S")
    s.add_argument("--order", type=_rational, required=True)
    s.add_argument("--star", action="store_true", help="apply tau -> 2 tau, y -> L, q -> L^2 t")
    s = verb("wallcross", _wallcross, [common, surf, lat], "[M^H(C,d)] - [M^L(C,d)]")
    s.add_argument("--d", type=_rational, required=True)
    s = verb("wallcross-series", _wallcross_series, [common, surf, lat], "wall-crossing generating series")
    s.add_argument("--order", type=_rational, required=True)
    s.add_argument("--route", choices=("direct", "theta", "both"), default="direct")
    s = verb("blowup-ratio", _blowup_ratio, [common], "universal blowup series")
    s.add_argument("--a", type=int, choices=(0, 1), required=True)
    s.add_argument("--order", type=_rational, required=True)
    s = verb("elliptic-moduli", _elliptic_moduli, [common], "moduli class on the elliptic ruled surface")
    s.add_argument("--d", type=_rational, required=True)
    s.add_argument("--route", choices=("product", "theta", "direct", "both"), default="product")
    s = verb("selftest", _selftest, [common], "run the cross-validation suites")
    s.add_argument("level", nargs="?", choices=("quick", "full"), default="quick")
    s.add_argument("--flip-orientation", action="store_true", help="mutation check: reverse the theta orientation")
    return p


def _require(a, names):
    missing = [n for n in names if getattr(a, n, None) is None]
    if missing:
        raise ValueError("missing " + ", ".join("--" + n for n in missing))


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one invocation and return (exit code, rendered output)."""
    try:
        a = build_parser().parse_args(argv)
    except UsageError as exc:
        return 2, f"error: {exc}"
    out = Output(a.verb, getattr(a, "format", "text"))
    try:
        if a.verb in ("walls", "wallcross", "wallcross-series"):
            _require(a, ("C", "H", "L"))
        code = a.fn(a, out) or 0
    except PreconditionError as exc:
        return 3, f"{type(exc).__name__}: {exc}"
    except KeyError as exc:
        # str(KeyError) quotes its message
        return 2, f"error: {exc.args[0] if exc.args else exc}"
    except (ValueError, TypeError, OSError) as exc:
        return 2, f"error: {exc}"
    return code, out.render()


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (0, 1) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
