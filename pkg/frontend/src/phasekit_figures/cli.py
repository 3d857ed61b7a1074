"""Command-line renderer for phasekit panels.

    phasekit-figures render PANEL.json OUT.png [--dpi N --width W --height H]
    phasekit-figures figure NAME --in DIR --out DIR [...]

`figure` mirrors the emitting CLI's figure names and renders every panel
file of that figure found in the input directory.  Schema violations exit
nonzero with a message.
"""

import argparse
import glob
import os
import sys

from .render import RenderStyle, render
from .schema import PanelError

FIGURE_NAMES = ("heat-real", "heat-complex", "wave-gabor", "wave-kernels", "hermite-rotation")


def _style(args):
    return RenderStyle(width=args.width, height=args.height, dpi=args.dpi, cmap=args.cmap)


def _add_style_args(sp):
    sp.add_argument("--dpi", type=int, default=120)
    sp.add_argument("--width", type=float, default=5.0)
    sp.add_argument("--height", type=float, default=4.0)
    sp.add_argument("--cmap", type=str, default="viridis")


def run_command(argv):
    parser = argparse.ArgumentParser(prog="phasekit-figures", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="render one panel file")
    r.add_argument("panel")
    r.add_argument("out")
    _add_style_args(r)

    f = sub.add_parser("figure", help="render every panel of a named figure")
    f.add_argument("name", choices=FIGURE_NAMES)
    f.add_argument("--in", dest="indir", required=True)
    f.add_argument("--out", dest="outdir", required=True)
    _add_style_args(f)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        if args.command == "render":
            info = render(args.panel, args.out, _style(args))
            print(info["out"])
            return 0
        pattern = os.path.join(args.indir, f"{args.name}_*.json")
        panels = sorted(glob.glob(pattern))
        if not panels:
            print(f"no panels matching {pattern}", file=sys.stderr)
            return 2
        os.makedirs(args.outdir, exist_ok=True)
        for panel in panels:
            stem = os.path.splitext(os.path.basename(panel))[0]
            info = render(panel, os.path.join(args.outdir, f"{stem}.png"), _style(args))
            print(info["out"])
        return 0
    except PanelError as exc:
        print(f"invalid panel: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
