"""Plain-text chain files.

    fillvol-chain 1
    N 2
    k 1
    ring Z
    1 0/1 0/1 1/1 0/1
    ...

One record per simplex: the coefficient followed by (k+1)*N rationals
written as ``p/q``. ``#`` starts a comment. Emission is canonical (sorted
simplex keys), so parse(emit(c)) == c and emit is byte-stable.
"""
from __future__ import annotations

from ._rational import format_rational, parse_rational
from .chain import RINGS, Chain, _accumulate, canonicalize

MAGIC = "fillvol-chain"
VERSION = 1


class ChainFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_chain(text: str) -> Chain:
    lines = [(i + 1, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines())]
    lines = [(i, s) for i, s in lines if s]
    header: dict = {}
    names = ("magic", "N", "k", "ring")
    for pos, key in enumerate(names):
        if pos >= len(lines):
            raise ChainFileError(f"missing header field {key!r}")
        lineno, content = lines[pos]
        parts = content.split()
        if len(parts) != 2:
            raise ChainFileError(f"malformed header line {content!r}", lineno)
        if key == "magic":
            if parts[0] != MAGIC:
                raise ChainFileError(f"not a chain file (expected {MAGIC!r})", lineno)
            if parts[1] != str(VERSION):
                raise ChainFileError(f"unsupported format version {parts[1]}", lineno)
        elif parts[0] != key:
            raise ChainFileError(f"expected header field {key!r}, found {parts[0]!r}", lineno)
        elif key == "ring":
            if parts[1] not in RINGS:
                raise ChainFileError(f"unknown ring tag {parts[1]!r}", lineno)
            header[key] = parts[1]
        else:
            try:
                header[key] = int(parts[1])
            except ValueError:
                raise ChainFileError(f"{key} must be an integer", lineno) from None
    N, k, ring = header["N"], header["k"], header["ring"]
    if N < 1 or k < 0:
        raise ChainFileError(f"invalid dimensions N={N}, k={k}", lines[1][0])
    width = 1 + (k + 1) * N
    terms: dict = {}
    for lineno, content in lines[4:]:
        tokens = content.split()
        if len(tokens) != width:
            raise ChainFileError(f"expected {width} tokens, found {len(tokens)}", lineno)
        try:
            coef = int(tokens[0])
            coords = [parse_rational(t) for t in tokens[1:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise ChainFileError(f"malformed number ({exc})", lineno) from None
        verts = tuple(tuple(coords[i * N : (i + 1) * N]) for i in range(k + 1))
        key, c = canonicalize(verts, coef, ring)
        _accumulate(terms, key, c, ring)
    return Chain._trusted(k, N, ring, terms)


def emit_chain(c: Chain) -> str:
    out = [f"{MAGIC} {VERSION}", f"N {c.ambient}", f"k {c.dim}", f"ring {c.ring}"]
    for simplex in sorted(c.terms):
        coef = c.terms[simplex]
        out.append(" ".join([str(coef)] + [format_rational(x) for v in simplex for x in v]))
    return "\n".join(out) + "\n"


def read_chain(path) -> Chain:
    with open(path, encoding="utf-8") as fh:
        return parse_chain(fh.read())


def write_chain(c: Chain, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_chain(c))
