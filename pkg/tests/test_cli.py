import json
import subprocess
import sys

import pytest

from fillvol.chainfile import read_chain, write_chain
from fillvol.cli import main
from fillvol.generators import octahedron, square_loop
from fillvol.sweep import COLUMNS, GalleryError, load_gallery, parse_gallery, run_sweep


@pytest.fixture
def files(tmp_path):
    sq, oc = tmp_path / "square.chain", tmp_path / "octa.chain"
    write_chain(square_loop(), sq)
    write_chain(octahedron(), oc)
    return tmp_path, str(sq), str(oc)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_volume(files, capsys):
    _, sq, _ = files
    code, out = run(capsys, "volume", sq)
    assert code == 0 and out.out.strip() == "4"


def test_fill_square(files, capsys):
    tmp, sq, _ = files
    code, out = run(capsys, "fill", sq, "--out", str(tmp / "fill.chain"))
    report = json.loads(out.out)
    assert code == 0 and report["ratio"] == 1 / 16 and report["ok"]
    assert read_chain(tmp / "fill.chain").boundary() == square_loop()
    code, out = run(capsys, "verify", sq, str(tmp / "fill.chain"))
    assert code == 0 and json.loads(out.out)["ok"]


def test_fill_octahedron_and_decompose(files, capsys):
    _, _, oc = files
    code, out = run(capsys, "fill", oc, "--seed", "2", "--theta", "0.05")
    assert code == 0 and json.loads(out.out)["boundary_exact"]
    code, out = run(capsys, "decompose", oc, "--epsilon", "auto")
    assert code == 0 and json.loads(out.out)["verification"]["ok"]
    code, out = run(capsys, "decompose", oc, "--epsilon", "100")
    assert code == 1 and not json.loads(out.out)["ok"]


def test_verify_detects_wrong_fill(files, capsys):
    tmp, sq, _ = files
    write_chain(_half_fill(), tmp / "bad.chain")
    code, out = run(capsys, "verify", sq, str(tmp / "bad.chain"))
    assert code == 1 and not json.loads(out.out)["checks"]["boundary"]["ok"]


def _half_fill():
    from fillvol.chain import Chain

    return Chain(2, 2, [(((0, 0), (1, 0), (1, 1)), 1)])


def test_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.chain"
    bad.write_text("not a chain\n")
    code, out = run(capsys, "volume", str(bad))
    assert code == 2 and "line 1" in out.err
    code, _ = run(capsys, "volume", str(tmp_path / "missing.chain"))
    assert code == 2


def test_generate(tmp_path, capsys):
    code, _ = run(capsys, "generate", "box-surface", "sizes=1,1,3", "cells=1,1,3", "--out", str(tmp_path / "b.chain"))
    assert code == 0 and read_chain(tmp_path / "b.chain").is_cycle()


def test_sweep_default(tmp_path, capsys):
    code, _ = run(capsys, "sweep", "default", "--csv", str(tmp_path / "a.csv"), "--no-timestamp")
    lines = (tmp_path / "a.csv").read_text().splitlines()
    assert code == 0 and len(lines) == 4
    header = lines[0].split(",")
    assert header == list(COLUMNS)
    flags = [i for i, h in enumerate(header) if h.endswith("_ok")]
    for row in lines[1:]:
        cells = row.split(",")
        assert all(cells[i] == "true" for i in flags)


def test_sweep_timestamp_column():
    text, _ = run_sweep(parse_gallery("sq square-loop"), timestamp=True)
    assert text.splitlines()[0].endswith(",wall_time_s")


def test_gallery_parsing(tmp_path):
    (tmp_path / "sq.chain").write_text(open_square_text())
    spec = tmp_path / "g.txt"
    spec.write_text("# comment\nbox box-surface sizes=1,1,4 cells=1,1,4\nsq file path=sq.chain\nr random-loop m=5 seed=2\n")
    entries = load_gallery(str(spec))
    assert [e.name for e in entries] == ["box", "sq", "r"]
    assert entries[0].params == {"sizes": (1, 1, 4), "cells": (1, 1, 4)}
    assert entries[1].build() == square_loop()
    with pytest.raises(GalleryError):
        parse_gallery("a square-loop\na octahedron")
    with pytest.raises(GalleryError):
        parse_gallery("a square-loop foo")
    with pytest.raises(GalleryError):
        parse_gallery("lonely")


def open_square_text():
    from fillvol.chainfile import emit_chain

    return emit_chain(square_loop())


def test_module_entry_point(files):
    _, sq, _ = files
    out = subprocess.run([sys.executable, "-m", "fillvol.cli", "volume", sq], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "4"
