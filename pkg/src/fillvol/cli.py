"""Command line entry point: ``fillvol fill|decompose|volume|verify|sweep|generate``.

Reports go to stdout as JSON. The exit code is 0 iff every certificate
passes, 1 on a certificate failure, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .chainfile import ChainFileError, emit_chain, read_chain, write_chain
from .constants import build_constants
from .decomposition import DecompositionError, decompose, verify_decomposition
from .filling import FillError, fill_cycle, verify_fill
from .generators import GENERATORS, generate_cycle
from .kernels import BACKEND
from .metric import chain_volume
from .sweep import GalleryError, load_gallery, parse_value, run_sweep


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _report(rep) -> dict:
    return {"ok": rep.ok, "checks": rep.as_dict()}


def _epsilon(text: str):
    if text == "auto":
        return None
    try:
        eps = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"epsilon must be 'auto' or a real, got {text!r}") from None
    if not eps > 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return eps


def cmd_fill(args) -> int:
    z = read_chain(args.input)
    try:
        result = fill_cycle(z, theta=args.theta, seed=args.seed, max_rounds=args.max_rounds)
    except FillError as exc:
        _emit({"ok": False, "error": str(exc), "stages": len(exc.stages)})
        return 1
    if args.out:
        write_chain(result.fill, args.out)
    out = result.summary()
    out["report"] = _report(result.report)
    out["stages"] = [
        {"round": s.round, "volume": s.volume, "residual_volume": s.residual_volume, "report": _report(s.report)}
        for s in result.stages
    ]
    out["ok"] = result.certificates_ok
    _emit(out)
    return 0 if result.certificates_ok else 1


def cmd_decompose(args) -> int:
    z = read_chain(args.input)
    if z.dim < 1 or not z.is_cycle():
        raise ValueError("decompose needs a cycle of dimension >= 1")
    constants = build_constants(z.dim, z.ambient)
    try:
        dec = decompose(z, constants, seed=args.seed, epsilon=args.epsilon)
    except DecompositionError as exc:
        _emit({"ok": False, "error": str(exc), "best_coverage": exc.best_coverage})
        return 1
    check = verify_decomposition(z, dec, constants)
    out = dec.summary()
    out["report"] = _report(dec.report)
    out["verification"] = _report(check)
    out["ok"] = dec.ok and check.ok
    _emit(out)
    return 0 if out["ok"] else 1


def cmd_volume(args) -> int:
    z = read_chain(args.input)
    print("%.12g" % chain_volume(z))
    return 0


def cmd_verify(args) -> int:
    z = read_chain(args.cycle)
    fill = read_chain(args.fill)
    rep = verify_fill(z, fill)
    _emit(_report(rep))
    return 0 if rep.ok else 1


def cmd_sweep(args) -> int:
    entries = load_gallery(args.gallery)
    text, rows = run_sweep(entries, seed=args.seed, theta=args.theta, timestamp=not args.no_timestamp)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r["all_ok"] == "true" for r in rows) else 1


def cmd_generate(args) -> int:
    params = {}
    for tok in args.params:
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, found {tok!r}")
        params[key] = parse_value(val)
    z = generate_cycle(args.kind, params, args.seed)
    if args.out:
        write_chain(z, args.out)
    else:
        sys.stdout.write(emit_chain(z))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fillvol", description="Certified fillings of PL cycles in l-infinity space.")
    p.add_argument("--version", action="version", version=f"%(prog)s (kernels: {BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fill", help="fill a cycle and certify every stage")
    f.add_argument("input")
    f.add_argument("--out", help="write the filling chain here")
    f.add_argument("--theta", type=float, default=1e-2, help="stop once the residual is below theta * Vol(z)")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-rounds", type=int, default=None)
    f.set_defaults(func=cmd_fill)

    d = sub.add_parser("decompose", help="ball decomposition with certificates (i)-(iii)")
    d.add_argument("input")
    d.add_argument("--epsilon", type=_epsilon, default=None, help="'auto' (default) or a positive real")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("volume", help="print the Euclidean volume of a chain")
    v.add_argument("input")
    v.set_defaults(func=cmd_volume)

    c = sub.add_parser("verify", help="re-check a filling against its cycle")
    c.add_argument("cycle")
    c.add_argument("fill")
    c.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="fill a gallery of cycles and write a CSV")
    s.add_argument("gallery", help="gallery spec file, or 'default' / 'full'")
    s.add_argument("--csv", help="write the CSV here instead of stdout")
    s.add_argument("--no-timestamp", action="store_true", help="omit the wall-time column")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--theta", type=float, default=1e-2)
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("generate", help="write a gallery cycle as a chain file")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="*", help="key=value generator parameters")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ChainFileError, GalleryError, OSError, ValueError, TypeError) as exc:
        print(f"fillvol: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
