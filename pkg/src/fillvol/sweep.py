"""Gallery sweeps: fill a list of cycles and tabulate the certificates as CSV.

A gallery spec is a text file, one cycle per line::

    # name        kind               parameters
    square        square-loop
    octagon       polygon-loop       m=8
    long-box      box-surface        sizes=1,1,20 cells=1,1,20
    mine          file               path=cycles/mine.chain

Parameters are ``key=value``; values that look like integers (or comma
separated integers) become ints (tuples), ``p/q`` becomes a rational, the rest
stay strings. ``file`` paths are relative to the gallery file. The names
``default`` and ``full`` select built-in galleries.
"""
from __future__ import annotations

import csv
import io
import os
import re
import time
from dataclasses import dataclass, field

from ._rational import parse_rational
from .chainfile import read_chain
from .constants import build_constants
from .filling import fill_cycle
from .generators import generate_cycle
from .metric import chain_volume

BUILTIN_GALLERIES = {
    "default": """
square      square-loop
octahedron  octahedron
sphere-1    subdivided-sphere  depth=1
""",
    "full": """
square      square-loop
octagon     polygon-loop       m=8
loop-r3     random-loop        m=12 seed=1
octahedron  octahedron
sphere-1    subdivided-sphere  depth=1
sphere-2    subdivided-sphere  depth=2
torus-4x4   torus-grid         p=4 q=4
long-box    box-surface        sizes=1,1,200 cells=1,1,200
""",
}

FLAG_COLUMNS = (
    "boundary_exact",
    "decomposition",
    "inner_fill_mass",
    "mass_ball",
    "round",
    "cone_inequality",
    "volume_sum",
    "residual_decay",
    "subadditivity",
    "ratio_within_bound",
    "all",
)
COLUMNS = ("name", "kind", "n", "N", "simplices", "volume", "fill_volume", "ratio", "certified_bound", "reference_bound", "rounds") + tuple(
    f"{f}_ok" if f != "all" else "all_ok" for f in FLAG_COLUMNS
)

_INT = re.compile(r"^-?\d+$")
_INTS = re.compile(r"^-?\d+(,-?\d+)+$")
_RAT = re.compile(r"^-?\d+/\d+$")


class GalleryError(ValueError):
    pass


@dataclass
class GalleryEntry:
    name: str
    kind: str
    params: dict = field(default_factory=dict)
    base: str = "."

    def build(self, seed: int = 0):
        if self.kind == "file":
            if "path" not in self.params:
                raise GalleryError(f"{self.name}: file entry needs path=")
            return read_chain(os.path.join(self.base, str(self.params["path"])))
        return generate_cycle(self.kind, self.params, seed)


def parse_value(tok: str):
    if _INT.match(tok):
        return int(tok)
    if _INTS.match(tok):
        return tuple(int(t) for t in tok.split(","))
    if _RAT.match(tok):
        return parse_rational(tok)
    return tok


def parse_gallery(text: str, base: str = ".") -> list[GalleryEntry]:
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *rest = line.split()
        if not rest:
            raise GalleryError(f"line {lineno}: missing cycle kind for {name!r}")
        if name in seen:
            raise GalleryError(f"line {lineno}: duplicate name {name!r}")
        seen.add(name)
        params = {}
        for tok in rest[1:]:
            key, sep, val = tok.partition("=")
            if not sep or not key:
                raise GalleryError(f"line {lineno}: expected key=value, found {tok!r}")
            params[key] = parse_value(val)
        entries.append(GalleryEntry(name, rest[0], params, base))
    return entries


def load_gallery(spec: str) -> list[GalleryEntry]:
    """Read a gallery from a file path, or a built-in gallery by name."""
    if spec in BUILTIN_GALLERIES and not os.path.exists(spec):
        return parse_gallery(BUILTIN_GALLERIES[spec])
    with open(spec, encoding="utf-8") as fh:
        return parse_gallery(fh.read(), os.path.dirname(os.path.abspath(spec)))


def _real(x: float) -> str:
    return "%.11e" % x


def sweep_row(entry: GalleryEntry, seed: int = 0, theta: float = 1e-2, timestamp: bool = True, **fill_kwargs) -> dict:
    z = entry.build(seed)
    started = time.perf_counter()
    result = fill_cycle(z, build_constants(z.dim, z.ambient), theta=theta, seed=seed, **fill_kwargs)
    elapsed = time.perf_counter() - started
    flags = result.flags()
    row = {
        "name": entry.name,
        "kind": entry.kind,
        "n": z.dim,
        "N": z.ambient,
        "simplices": len(z),
        "volume": _real(chain_volume(z)),
        "fill_volume": _real(result.total_volume),
        "ratio": _real(result.ratio),
        "certified_bound": _real(result.certified_bound),
        "reference_bound": _real(result.reference_bound),
        "rounds": len(result.stages),
    }
    for f in FLAG_COLUMNS:
        row[f"{f}_ok" if f != "all" else "all_ok"] = "true" if flags[f] else "false"
    if timestamp:
        row["wall_time_s"] = "%.3f" % elapsed
    return row


def run_sweep(entries, seed: int = 0, theta: float = 1e-2, timestamp: bool = True, **fill_kwargs) -> tuple[str, list[dict]]:
    """Fill every entry; returns the CSV text and the rows."""
    rows = [sweep_row(e, seed, theta, timestamp, **fill_kwargs) for e in entries]
    cols = list(COLUMNS) + (["wall_time_s"] if timestamp else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue(), rows
