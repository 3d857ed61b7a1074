"""Command-line surface: Gabor slices, kernel panels, the sharp heat rate,
verification suites, and figure-panel emission.

Panels are emitted as self-describing JSON:

    {"kind": ..., "params": {...}, "axes": {name: [...], ...},
     "values": nested row-major arrays,
     "values_kind": "abs" | "complex",
     "provenance": {"equation": slug, "paper_anchor": formula}}

complex values are [re, im] pairs; floats carry 17 significant digits so
files round-trip bit-faithfully.  Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 I/O error.
"""

import argparse
import csv
import io
import os
import sys

import numpy as np

from . import gabor as gb
from . import kernels as kn
from ._serialize import dumps
from .grids import Grid, SampledField
from .propagators import ComplexDiffusion, WaveMeasure, heat_symbol, wave_measure_nodes
from .verify import SUITE_NAMES, SuiteConfig, run_suite

__all__ = ["main", "run_command", "validate_panel", "PANEL_SCHEMA_KEYS"]

PANEL_SCHEMA_KEYS = ("kind", "params", "axes", "values", "values_kind", "provenance")

FIGURE_NAMES = ("heat-real", "heat-complex", "wave-gabor", "wave-kernels", "hermite-rotation")


# ------------------------------------------------------------------ panels


def validate_panel(panel):
    """Validate a panel dict against the emission schema; raises ValueError."""
    for key in PANEL_SCHEMA_KEYS:
        if key not in panel:
            raise ValueError(f"panel is missing key {key!r}")
    axes = panel["axes"]
    if not isinstance(axes, dict) or not axes:
        raise ValueError("axes must be a non-empty mapping")
    shape = tuple(len(v) for v in axes.values())
    vals = np.asarray(panel["values"], dtype=float)
    if panel["values_kind"] == "abs":
        if vals.shape != shape:
            raise ValueError(f"values shaped {vals.shape}, axes imply {shape}")
    elif panel["values_kind"] == "complex":
        if vals.shape != shape + (2,):
            raise ValueError(f"complex values shaped {vals.shape}, axes imply {shape + (2,)}")
    else:
        raise ValueError(f"unknown values_kind {panel['values_kind']!r}")
    if not np.all(np.isfinite(vals)):
        raise ValueError("panel contains non-finite values")
    prov = panel["provenance"]
    if not isinstance(prov, dict) or "equation" not in prov or "paper_anchor" not in prov:
        raise ValueError("provenance must carry 'equation' and 'paper_anchor'")
    return panel


def _axis(extent, n):
    return (np.arange(n) - n // 2) * (2.0 * extent / n)


def _panel(kind, params, axes, values, values_kind, equation, anchor):
    panel = {
        "kind": kind,
        "params": params,
        "axes": {k: [float(v) for v in vals] for k, vals in axes.items()},
        "values": _nest(values, values_kind),
        "values_kind": values_kind,
        "provenance": {"equation": equation, "paper_anchor": anchor},
    }
    return validate_panel(panel)


def _nest(values, values_kind):
    arr = np.asarray(values)
    if values_kind == "complex":
        arr = np.stack([arr.real, arr.imag], axis=-1)
    else:
        arr = arr.real if np.iscomplexobj(arr) else arr
    return arr.tolist()


def _write_panel(panel, path, fmt="json"):
    if fmt == "json":
        text = dumps(panel)
    else:
        text = _panel_to_csv(panel)
    with open(path, "w") as fh:
        fh.write(text)
        fh.write("\n")


def _panel_to_csv(panel):
    axes = list(panel["axes"].items())
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = [name for name, _ in axes]
    if panel["values_kind"] == "complex":
        header += ["re", "im"]
    else:
        header += ["value"]
    writer.writerow(header)
    vals = np.asarray(panel["values"], dtype=float)
    grids = np.meshgrid(*[v for _, v in axes], indexing="ij")
    flat = [g.ravel() for g in grids]
    if panel["values_kind"] == "complex":
        re = vals[..., 0].ravel()
        im = vals[..., 1].ravel()
        for row in zip(*flat, re, im):
            writer.writerow([f"{v:.17g}" for v in row])
    else:
        for row in zip(*flat, vals.ravel()):
            writer.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue().rstrip("\n")


# -------------------------------------------------------------- gabor slices


def _parse_point(text, d):
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2 * d:
        raise ValueError(f"--z needs {2 * d} comma-separated values, got {len(parts)}")
    return np.asarray(parts)


def _slice_axes(z, d, n, extent):
    # the panel varies the first position/frequency pair of w; any other
    # coordinates stay pinned to the fixed point z
    y_axis = _axis(extent, n)
    e_axis = _axis(extent, n)
    return y_axis, e_axis


def _w_from_axes(z, d, y, eta):
    w = np.array(z, dtype=float)
    w[0] = y
    w[d] = eta
    return w


def gabor_heat_panel(args):
    gam = ComplexDiffusion(args.alpha, args.beta)
    d = args.d
    z = _parse_point(args.z, d)
    y_axis, e_axis = _slice_axes(z, d, args.w_grid_n, args.w_extent)
    vals = np.empty((len(y_axis), len(e_axis)), dtype=complex)
    for i, y in enumerate(y_axis):
        for j, eta in enumerate(e_axis):
            vals[i, j] = gb.gabor_heat_closed(args.t, gam, z, _w_from_axes(z, d, y, eta), d)
    kind = "gabor-heat"
    values_kind = "complex" if args.phase else "abs"
    data = vals if args.phase else np.abs(vals)
    return _panel(
        kind,
        {"d": d, "t": args.t, "alpha": args.alpha, "beta": args.beta, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        data,
        values_kind,
        "gabor-heat-closed",
        "G_t(z,w) = (2 rho_t)^(-d/2) exp(-pi(|z2|^2+|w2|^2)) exp(2 pi i(z2.z1-w2.w1)) exp(pi c.c/(2 rho_t))",
    )


def gabor_wave_panel(args):
    d = args.d
    z = _parse_point(args.z, d)
    y_axis, e_axis = _slice_axes(z, d, args.w_grid_n, args.w_extent)
    t = args.t
    if t == 0.0:
        vals = np.zeros((len(y_axis), len(e_axis)))
    else:
        vals = _wave_modulus_grid(t, d, z, y_axis, e_axis)
    return _panel(
        "gabor-wave",
        {"d": d, "t": t, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        vals,
        "abs",
        "gabor-wave-modsq",
        "|h|^2 = 2^(-d) exp(-pi|xi-eta|^2) intint exp(-pi|x-y-(a+b)/2|^2 - pi|a-b|^2/4) e^(-2 pi i (a-b).(xi+eta)/2) dmu dmu",
    )


def _wave_modulus_grid(t, d, z, y_axis, e_axis):
    """|h| on a w-grid; d = 1 is vectorized over the measure-pair sum."""
    if d > 1:
        out = np.empty((len(y_axis), len(e_axis)))
        for i, y in enumerate(y_axis):
            for j, eta in enumerate(e_axis):
                out[i, j] = np.sqrt(
                    gb.gabor_wave_modsq(t, d, z, _w_from_axes(z, d, y, eta))
                )
        return out
    pts, wts = wave_measure_nodes(WaveMeasure(1, t), 160, 1)
    a = pts[:, 0]
    mid = 0.5 * (a[:, None] + a[None, :]).ravel()
    gap = (a[:, None] - a[None, :]).ravel()
    base = (wts[:, None] * wts[None, :]).ravel() * np.exp(-0.25 * np.pi * gap**2)
    z1, z2 = z[0], z[1]
    phase = np.exp(-1j * np.pi * np.outer(gap, z2 + e_axis))
    damping = 0.5 * np.exp(-np.pi * (z2 - e_axis) ** 2)
    out = np.empty((len(y_axis), len(e_axis)))
    for i, y in enumerate(y_axis):
        pos_part = base * np.exp(-np.pi * (z1 - y - mid) ** 2)
        modsq = damping * (pos_part @ phase).real
        out[i] = np.sqrt(np.maximum(modsq, 0.0))
    return out


def gabor_hermite_panel(args):
    d = args.d
    z = _parse_point(args.z, d)
    y_axis, e_axis = _slice_axes(z, d, args.w_grid_n, args.w_extent)
    vals = np.empty((len(y_axis), len(e_axis)))
    theta = (args.theta,) * d
    for i, y in enumerate(y_axis):
        for j, eta in enumerate(e_axis):
            vals[i, j] = gb.gabor_hermite_mod(theta, z, _w_from_axes(z, d, y, eta))
    return _panel(
        "gabor-hermite",
        {"d": d, "theta": args.theta, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        vals,
        "abs",
        "gabor-hermite-mod",
        "|G| = prod_j 2^(-1/2) exp(-theta_j/2) exp(-pi/4 (1+e^-theta_j)(z_j-w_j)^2) exp(-pi/4 (1-e^-theta_j)(z_j+w_j)^2)",
    )


def gabor_complex_hermite_panel(args):
    d = args.d
    z = _parse_point(args.z, d)
    y_axis, e_axis = _slice_axes(z, d, args.w_grid_n, args.w_extent)
    vals = np.empty((len(y_axis), len(e_axis)))
    if args.t == 0.0:
        for i, y in enumerate(y_axis):
            for j, eta in enumerate(e_axis):
                vals[i, j] = gb.free_gabor_mod(z, _w_from_axes(z, d, y, eta), d)
    else:
        for i, y in enumerate(y_axis):
            for j, eta in enumerate(e_axis):
                vals[i, j] = gb.gabor_complex_hermite_mod(
                    args.theta, args.mu, args.t, z, _w_from_axes(z, d, y, eta)
                )
    return _panel(
        "gabor-complex-hermite",
        {"d": d, "theta": args.theta, "mu": args.mu, "t": args.t, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        vals,
        "abs",
        "gabor-complex-hermite-mod",
        "|G(z,w)| equals the hermite modulus at (S_(mu t) z, w): a rigid phase-space rotation",
    )


# ------------------------------------------------------------- kernel panels


def kernel_heat_panel(args):
    gam = ComplexDiffusion(args.alpha, args.beta)
    s_axis = _axis(args.s_extent, args.s_grid_n)
    xi_axis = _axis(args.xi_extent, args.xi_grid_n)
    vals = kn.kernel_heat(args.t, gam, s_axis[:, None], xi_axis[None, :], args.d)
    return _panel(
        "kernel-heat",
        {"d": args.d, "t": args.t, "alpha": args.alpha, "beta": args.beta,
         "normalization": "unit-peak-kernel"},
        {"s": s_axis, "xi": xi_axis},
        vals,
        "abs",
        "kernel-heat-closed",
        "kappa = (8 pi t |gamma|^2/alpha)^(d/2) exp(-alpha|s|^2/(2t|gamma|^2)) exp(-8 pi^2 t |gamma|^2/alpha |xi - k s|^2)",
    )


def kernel_wave_panel(args):
    t, d = args.t, args.d
    s_axis = _axis(args.s_extent, args.s_grid_n)
    xi_axis = _axis(args.xi_extent, args.xi_grid_n)
    if d == 1:
        vals = kn.kernel_wave(1, t, s_axis[:, None], xi_axis[None, :])
        axes = {"s": s_axis, "xi": xi_axis}
    else:
        s_abs = np.abs(s_axis)
        xi_abs = np.abs(xi_axis)
        vals = np.empty((len(s_axis), len(xi_axis)))
        for i, s in enumerate(s_abs):
            svec = np.zeros(d)
            svec[0] = s
            for j, x in enumerate(xi_abs):
                xvec = np.zeros(d)
                xvec[-1] = x  # orthogonal to s
                vals[i, j] = kn.kernel_wave(d, t, svec, xvec)
        axes = {"abs_s": s_axis, "abs_xi_perp": xi_axis}
    return _panel(
        "kernel-wave",
        {"d": d, "t": t},
        axes,
        vals,
        "abs",
        "kernel-wave-closed",
        "d=1: 1_{|s|<=t} sin(4 pi (t-|s|) xi)/(4 pi xi); d>=2: support |s|<2t with J0(4 pi r(s)|xi_perp|)",
    )


def kernel_hermite_panel(args):
    d = args.d
    z = _parse_point(args.z, d)
    y_axis = _axis(args.s_extent, args.s_grid_n)
    e_axis = _axis(args.xi_extent, args.xi_grid_n)
    theta = (args.theta,) * d
    vals = np.empty((len(y_axis), len(e_axis)))
    for i, y in enumerate(y_axis):
        for j, eta in enumerate(e_axis):
            vals[i, j] = kn.kernel_hermite(theta, z, _w_from_axes(z, d, y, eta))
    return _panel(
        "kernel-hermite",
        {"d": d, "theta": args.theta, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        vals,
        "abs",
        "kernel-hermite-closed",
        "k(z,w) = prod_j sinh(theta_j)^(-1) exp(-(2 pi/tanh)(|z_j|^2+|w_j|^2)) exp((4 pi/sinh) z_j.w_j)",
    )


def kernel_complex_hermite_panel(args):
    d = args.d
    z = _parse_point(args.z, d)
    y_axis = _axis(args.s_extent, args.s_grid_n)
    e_axis = _axis(args.xi_extent, args.xi_grid_n)
    vals = np.empty((len(y_axis), len(e_axis)))
    for i, y in enumerate(y_axis):
        for j, eta in enumerate(e_axis):
            vals[i, j] = kn.kernel_complex_hermite(
                args.theta, args.mu, args.t, z, _w_from_axes(z, d, y, eta)
            )
    return _panel(
        "kernel-complex-hermite",
        {"d": d, "theta": args.theta, "mu": args.mu, "t": args.t, "z": [float(v) for v in z]},
        {"w_pos": y_axis, "w_freq": e_axis},
        vals,
        "abs",
        "kernel-complex-hermite-closed",
        "k(z,w) = k_hermite(z, S_(mu t) w): the input slot is rigidly rotated",
    )


def kernel_from_symbol_panel(args):
    n = args.s_grid_n
    extent = args.s_extent
    # sample the symbol at half the reciprocal spacing so the s axis of
    # the result has spacing extent * 2 / n
    symg = Grid(1, n, 2.0 * extent).dual()
    xi = symg.axis()
    if args.symbol == "heat":
        gam = ComplexDiffusion(args.alpha, args.beta)
        samples = heat_symbol(args.t, gam, xi[:, None])
        params = {"symbol": "heat", "t": args.t, "alpha": args.alpha, "beta": args.beta}
    elif args.symbol == "wave-sine":
        taper = args.taper
        samples = args.t * np.sinc(2.0 * np.abs(xi) * args.t) * np.exp(-np.pi * taper * xi**2)
        params = {"symbol": "wave-sine", "t": args.t, "taper": args.taper}
    else:
        raise ValueError(f"unknown symbol {args.symbol!r}")
    kern = kn.kernel_from_symbol(SampledField(symg, samples))
    return _panel(
        "kernel-from-symbol",
        params,
        {"s": kern.s_axis, "xi": kern.xi_axis},
        np.abs(kern.values),
        "abs",
        "kernel-from-symbol",
        "kappa(s, xi) = W(sigma)(xi, -s), discrete transform of the sampled symbol",
    )


# ------------------------------------------------------------------ figures


def _figure_panels(name):
    times = (0.0, 1.0, 2.0, 5.0)
    ns = argparse.Namespace
    if name == "heat-real":
        out = []
        for t in times:
            if t == 0.0:
                args = ns(d=1, t=0.0, alpha=1.0, beta=0.0, z="0,0", w_grid_n=128,
                          w_extent=6.0, phase=False)
                out.append((f"heat-real_t{t:g}", gabor_heat_panel(args)))
            else:
                s_axis = _axis(6.0, 128)
                e_axis = _axis(6.0, 128)
                gam = ComplexDiffusion(1.0, 0.0)
                vals = np.empty((128, 128))
                for i, y in enumerate(s_axis):
                    for j, eta in enumerate(e_axis):
                        vals[i, j] = gb.gabor_heat_bound(t, gam, (0.0, 0.0), (y, eta), 1)
                out.append(
                    (
                        f"heat-real_t{t:g}",
                        _panel(
                            "gabor-heat-bound",
                            {"d": 1, "t": t, "alpha": 1.0, "beta": 0.0, "z": [0.0, 0.0]},
                            {"w_pos": s_axis, "w_freq": e_axis},
                            vals,
                            "abs",
                            "gabor-heat-bound",
                            "2^(-d/2)((1+2 pi a t)^2+(2 pi b t)^2)^(-d/4) exp(-eps/2(|z2|^2+|w2|^2) - eps|z1-w1|^2)",
                        ),
                    )
                )
        return out
    if name == "heat-complex":
        out = []
        for t in times:
            args = ns(d=1, t=t, alpha=1.0, beta=1.0, z="0,0", w_grid_n=128,
                      w_extent=6.0, phase=False)
            out.append((f"heat-complex_t{t:g}", gabor_heat_panel(args)))
        return out
    if name == "wave-gabor":
        out = []
        for t in times:
            args = ns(d=1, t=t, z="0,0", w_grid_n=96, w_extent=6.0)
            out.append((f"wave-gabor_t{t:g}", gabor_wave_panel(args)))
        return out
    if name == "wave-kernels":
        out = []
        for d in (1, 2, 3):
            args = ns(d=d, t=1.0, s_extent=2.5, s_grid_n=128, xi_extent=3.0, xi_grid_n=128)
            out.append((f"wave-kernels_d{d}", kernel_wave_panel(args)))
        return out
    if name == "hermite-rotation":
        out = []
        for t in times:
            args = ns(d=1, theta=0.7, mu=1.3, t=t, z="0,1", w_grid_n=128, w_extent=3.0)
            out.append((f"hermite-rotation_t{t:g}", gabor_complex_hermite_panel(args)))
        return out
    raise ValueError(f"unknown figure {name!r}")


# --------------------------------------------------------------------- main


def _build_parser():
    p = argparse.ArgumentParser(prog="phasekit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common_gabor(sp, heat=False, hermite=False):
        sp.add_argument("--d", type=int, default=1, choices=(1, 2, 3))
        sp.add_argument("--t", type=float, default=1.0)
        if heat:
            sp.add_argument("--alpha", type=float, default=1.0)
            sp.add_argument("--beta", type=float, default=0.0)
        if hermite:
            sp.add_argument("--theta", type=float, default=1.0)
            sp.add_argument("--mu", type=float, default=0.0)
        sp.add_argument("--z", type=str, default=None)
        sp.add_argument("--w-grid-n", dest="w_grid_n", type=int, default=128)
        sp.add_argument("--w-extent", dest="w_extent", type=float, default=6.0)
        sp.add_argument("--out", type=str, required=True)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--phase", action="store_true")

    g = sub.add_parser("gabor", help="emit a Gabor-matrix w-slice")
    gsub = g.add_subparsers(dest="operator", required=True)
    add_common_gabor(gsub.add_parser("heat"), heat=True)
    add_common_gabor(gsub.add_parser("wave"))
    add_common_gabor(gsub.add_parser("hermite"), hermite=True)
    add_common_gabor(gsub.add_parser("complex-hermite"), hermite=True)

    k = sub.add_parser("kernel", help="emit a phase-space kernel panel")
    ksub = k.add_subparsers(dest="operator", required=True)
    for op in ("heat", "wave", "hermite", "complex-hermite", "from-symbol"):
        sp = ksub.add_parser(op)
        sp.add_argument("--d", type=int, default=1, choices=(1, 2, 3))
        sp.add_argument("--t", type=float, default=1.0)
        sp.add_argument("--alpha", type=float, default=1.0)
        sp.add_argument("--beta", type=float, default=0.0)
        sp.add_argument("--theta", type=float, default=1.0)
        sp.add_argument("--mu", type=float, default=0.0)
        sp.add_argument("--z", type=str, default=None)
        sp.add_argument("--s-extent", dest="s_extent", type=float, default=3.0)
        sp.add_argument("--xi-extent", dest="xi_extent", type=float, default=3.0)
        sp.add_argument("--s-grid-n", dest="s_grid_n", type=int, default=128)
        sp.add_argument("--xi-grid-n", dest="xi_grid_n", type=int, default=128)
        sp.add_argument("--symbol", choices=("heat", "wave-sine"), default="heat")
        sp.add_argument("--taper", type=float, default=0.06)
        sp.add_argument("--out", type=str, required=True)
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    e = sub.add_parser("epsilon", help="print the sharp heat Gaussian rate")
    e.add_argument("--t", type=float, required=True)
    e.add_argument("--alpha", type=float, required=True)
    e.add_argument("--beta", type=float, required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITE_NAMES, required=True)
    v.add_argument("--grid-n", dest="grid_n", type=int, default=256)
    v.add_argument("--extent", type=float, default=16.0)
    v.add_argument("--seed", type=int, default=31415)
    v.add_argument("--out", type=str, default=None)

    f = sub.add_parser("figure", help="emit figure panels as JSON")
    f.add_argument("name", choices=FIGURE_NAMES)
    f.add_argument("--out", type=str, required=True)
    return p


_GABOR_PANELS = {
    "heat": gabor_heat_panel,
    "wave": gabor_wave_panel,
    "hermite": gabor_hermite_panel,
    "complex-hermite": gabor_complex_hermite_panel,
}

_KERNEL_PANELS = {
    "heat": kernel_heat_panel,
    "wave": kernel_wave_panel,
    "hermite": kernel_hermite_panel,
    "complex-hermite": kernel_complex_hermite_panel,
    "from-symbol": kernel_from_symbol_panel,
}


def run_command(argv):
    """Parse and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        if args.command == "epsilon":
            print(f"{gb.heat_epsilon(args.t, args.alpha, args.beta):.9f}")
            return 0

        if args.command == "verify":
            cfg = SuiteConfig(grid_n=args.grid_n, extent=args.extent, seed=args.seed)
            report = run_suite(args.suite, cfg)
            for entry in report.entries:
                flag = "PASS" if entry.passed else "FAIL"
                tag = " [recorded]" if entry.recorded else ""
                print(f"{flag}{tag} {entry.check_id}: measured={entry.measured:.6g} "
                      f"tol={entry.tolerance:g}", file=sys.stderr)
            text = report.to_json()
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
            return 0 if report.overall else 1

        if args.command == "gabor":
            if args.z is None:
                args.z = ",".join(["0"] * (2 * args.d))
            panel = _GABOR_PANELS[args.operator](args)
            _write_panel(panel, args.out, args.format)
            return 0

        if args.command == "kernel":
            if args.z is None:
                args.z = ",".join(["0"] * (2 * args.d))
            panel = _KERNEL_PANELS[args.operator](args)
            _write_panel(panel, args.out, args.format)
            return 0

        if args.command == "figure":
            os.makedirs(args.out, exist_ok=True)
            paths = []
            for stem, panel in _figure_panels(args.name):
                path = os.path.join(args.out, f"{stem}.json")
                _write_panel(panel, path, "json")
                paths.append(path)
            for path in paths:
                print(path)
            return 0
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
