"""Command line interface: ``sfkit <command> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when a verification
fails, so shell scripts can branch on the outcome.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from . import families, io
from .complexpack import (EdgeLabel, angle_sums, check_packing_label, classify_vertex,
                          layout_complex, octahedron_complex, soccerball_complex,
                          soccerball_label)
from .errors import SfkitError
from .flower import (ULabel, classify_flower, complete_label, flower_from_radii,
                     layout_flower, verify_packing_label)
from .svg import render_svg

EXIT_INVALID = 1
EXIT_FAILED = 2


class VerificationFailed(Exception):
    pass


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _label_arg(args) -> ULabel:
    """Full label from --file, --u or --s."""
    if getattr(args, "file", None):
        return io.read_flower(args.file).label
    if getattr(args, "u", None) is not None:
        return ULabel(tuple(args.u))
    if getattr(args, "s", None) is not None:
        return ULabel.from_s(args.s)
    raise ValueError("give --file, --u or --s")


def _write_text(path: str, text: str):
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(text)


def _emit_flower(fl, args, cls=None):
    """Print the flower's label and class, then write any requested files."""
    cls = cls if cls is not None else classify_flower(fl)
    rec = io.flower_record(fl, cls)
    print("u=" + ",".join(io.fmt(x) for x in rec.u))
    print("s=" + ",".join(io.fmt(x) for x in rec.s))
    print(f"class={cls}")
    if getattr(args, "out", None):
        io.write_flower(args.out, rec)
    if getattr(args, "svg", None):
        _write_text(args.svg, render_svg(fl, annotate=getattr(args, "annotate", False)))


# ---------------------------------------------------------------------------
# commands


def cmd_layout(args):
    if args.u is None and args.s is None:
        raise ValueError("give --u or --s")
    params = args.u if args.u is not None else [1.0 - x for x in args.s]
    if len(params) == args.n:
        params = list(ULabel(tuple(params)).params(0))
    _emit_flower(layout_flower(args.n, params), args)


def cmd_label_verify(args):
    verify = partial(verify_packing_label, tol=args.tol)
    if args.file and len(args.file) > 1:
        labels = [io.read_flower(f).label.s for f in args.file]
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            verdicts = list(ex.map(verify, labels))
        for f, v in zip(args.file, verdicts):
            print(f"{f}: {v}")
    else:
        if args.file:
            args.file = args.file[0]
        verdicts = [verify(_label_arg(args).s)]
        print(verdicts[0])
    if not all(v.valid for v in verdicts):
        raise VerificationFailed()


def cmd_label_complete(args):
    lab = complete_label(args.n, args.u, args.method)
    print("u=" + ",".join(io.fmt(x) for x in lab.u))
    print("s=" + ",".join(io.fmt(x) for x in lab.s))
    if args.out:
        io.write_flower(args.out, io.FlowerRecord(lab.n, lab.u))


def cmd_classify(args):
    lab = _label_arg(args)
    fl = layout_flower(lab.n, lab.params(0))
    if not fl.label.allclose(lab, 1e-7):
        print("label does not close")
        raise VerificationFailed()
    cls = classify_flower(fl)
    print(cls)
    for v in cls.violations:
        print(f"  {v}")


def cmd_family(args):
    kind = args.family
    if kind == "uniform":
        fl = families.uniform_flower(args.n, args.d)
    elif kind == "extremal":
        lab = families.extremal_label(args.n)
        fl = layout_flower(args.n, lab.params(0))
    elif kind == "ring":
        fl = families.ring_flower(args.n)
    elif kind == "doyle":
        if args.a is not None and args.b is not None:
            _, fl, _ = flower_from_radii(families.doyle_radii(args.a, args.b))
        elif args.u1 is not None and args.u2 is not None:
            lab = families.doyle(args.u1, args.u2)
            fl = layout_flower(6, lab.params(0))
        else:
            raise ValueError("doyle needs --a/--b or --u1/--u2")
    elif kind == "soccerball":
        if args.rule == "reciprocal":
            s, sp = families.soccerball_labels(args.branched)
        else:
            s, sp = families.soccerball_packing_labels(args.branched)
        print(f"s56={io.fmt(s)}")
        print(f"s66={io.fmt(sp)}")
        if args.labels_out:
            io.write_labels(args.labels_out, soccerball_label(soccerball_complex(), s, sp))
        return
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(kind)
    _emit_flower(fl, args)


def _load_complex(spec: str):
    if spec == "soccerball":
        return soccerball_complex()
    if spec == "octahedron":
        return octahedron_complex()
    return io.read_complex(spec)


def _load_labels(spec: str, K) -> EdgeLabel:
    if spec.startswith(("auto:", "reciprocal:")):
        rule, _, kind = spec.partition(":")
        if kind not in ("unbranched", "branched"):
            raise ValueError(f"unknown label set {spec!r}")
        if K.n_vertices != 42:
            raise ValueError("built-in label sets are for the soccerball complex")
        fn = families.soccerball_packing_labels if rule == "auto" else families.soccerball_labels
        return soccerball_label(K, *fn(kind == "branched"))
    return io.read_labels(spec)


def cmd_pack(args):
    K = _load_complex(args.complex)
    label = _load_labels(args.labels, K)
    lay = layout_complex(K, label, root_face=args.root)
    hmax = lay.max_holonomy
    print(f"vertices={K.n_vertices} faces={len(K.faces)} edges={len(K.edges)}")
    print(f"holonomy max={hmax:.3e}")
    ok = hmax < args.tol
    if args.report:
        verdicts = check_packing_label(K, label)
        sums = angle_sums(lay)
        for v in sorted(sums):
            cls = classify_vertex(K, label, v)
            print(f"v{v} deg={K.degree(v)} angle={sums[v] / math.pi:.9f}pi "
                  f"label={verdicts[v]} class={cls}")
        ok = ok and all(v.valid for v in verdicts.values())
    if args.labels_out:
        io.write_labels(args.labels_out, label)
    if args.svg:
        _write_text(args.svg, render_svg(lay, annotate=args.annotate))
    if not ok:
        raise VerificationFailed()


def random_radii(n: int, seed: int) -> np.ndarray:
    """Log-uniform radii in [1/5, 5], reproducible from the seed."""
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(-math.log(5.0), math.log(5.0), size=n))


def cmd_random_flower(args):
    if args.n < 3:
        raise ValueError("n must be at least 3")
    _, fl, _ = flower_from_radii(random_radii(args.n, args.seed), args.d)
    _emit_flower(fl, args)


def cmd_render(args):
    rec = io.read_flower(args.file)
    fl = layout_flower(rec.n, rec.label.params(0))
    _write_text(args.svg, render_svg(fl, annotate=args.annotate))
    print(args.svg)


# ---------------------------------------------------------------------------
# parser


def _add_outputs(p):
    p.add_argument("--out", help="write a flower file")
    p.add_argument("--svg", help="write an SVG drawing")
    p.add_argument("--annotate", action="store_true", help="label petals with t_j and r_j")


def _add_label_source(p, multi=False):
    if multi:
        p.add_argument("--file", nargs="+", help="flower file(s)")
    else:
        p.add_argument("--file", help="flower file")
    p.add_argument("--u", type=_floats, help="comma separated u-label")
    p.add_argument("--s", type=_floats, help="comma separated schwarzians")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sfkit", description="Schwarzian flowers and circle packings.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="lay out a flower from its free parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_floats, help="u_1..u_{n-3} (or a full label)")
    p.add_argument("--s", type=_floats, help="s_1..s_{n-3} (or a full label)")
    _add_outputs(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("label", help="verify or complete labels")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("verify")
    _add_label_source(q, multi=True)
    q.add_argument("--tol", type=float, default=1e-8)
    q.add_argument("--jobs", type=int, default=4, help="workers for several files")
    q.set_defaults(func=cmd_label_verify)
    q = lsub.add_parser("complete")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--u", type=_floats, required=True)
    q.add_argument("--method", choices=["auto", "algebraic", "geometric"], default="auto")
    q.add_argument("--out")
    q.set_defaults(func=cmd_label_complete)

    p = sub.add_parser("classify", help="Univalent, UnBranched or Branched(d)")
    _add_label_source(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("family", help="closed-form flower families")
    fsub = p.add_subparsers(dest="family", required=True)
    q = fsub.add_parser("uniform")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--d", type=int, default=1)
    _add_outputs(q)
    q = fsub.add_parser("extremal")
    q.add_argument("--n", type=int, required=True)
    _add_outputs(q)
    q = fsub.add_parser("ring")
    q.add_argument("--n", type=int, required=True)
    _add_outputs(q)
    q = fsub.add_parser("doyle")
    q.add_argument("--a", type=float)
    q.add_argument("--b", type=float)
    q.add_argument("--u1", type=float)
    q.add_argument("--u2", type=float)
    _add_outputs(q)
    q = fsub.add_parser("soccerball")
    q.add_argument("--branched", action="store_true")
    q.add_argument("--rule", choices=["closing", "reciprocal"], default="closing",
                   help="closing: labels that pack the complex; reciprocal: u u' = 1")
    q.add_argument("--labels-out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("pack", help="lay out a labelled complex")
    p.add_argument("--complex", required=True, help="soccerball, octahedron or a complex file")
    p.add_argument("--labels", required=True,
                   help="auto:unbranched, auto:branched, reciprocal:unbranched, reciprocal:branched "
                        "or a label file")
    p.add_argument("--root", type=int, default=0, help="root face")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--report", action="store_true")
    p.add_argument("--labels-out")
    p.add_argument("--svg")
    p.add_argument("--annotate", action="store_true")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("random-flower", help="seeded random euclidean flower")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--d", type=int, default=1, help="wrap count")
    _add_outputs(p)
    p.set_defaults(func=cmd_random_flower)

    p = sub.add_parser("render", help="draw a flower file as SVG")
    p.add_argument("--file", required=True)
    p.add_argument("--svg", required=True)
    p.add_argument("--annotate", action="store_true")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    try:
        args.func(args)
    except VerificationFailed:
        return EXIT_FAILED
    except (SfkitError, ValueError, OSError) as exc:
        print(f"sfkit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
