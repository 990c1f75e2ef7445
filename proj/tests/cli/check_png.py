"""Renders a PNG through the CLI and decodes it with Pillow."""
import json
import pathlib
import subprocess
import sys

from PIL import Image

exe, outdir = sys.argv[1], pathlib.Path(sys.argv[2])
outdir.mkdir(parents=True, exist_ok=True)
png = outdir / "basins.png"
pgm = outdir / "basins.pgm"
for path in (png, pgm):
    subprocess.run([exe, "render", "--map", "f2", "--size", "96x64", "--out", str(path)], check=True)

with Image.open(png) as im:
    assert im.size == (96, 64), im.size
    png_pixels = list(im.convert("L").getdata())
with Image.open(pgm) as im:
    assert im.size == (96, 64), im.size
    pgm_pixels = list(im.getdata())
assert png_pixels == pgm_pixels, "PNG and PGM payloads differ"
assert 0 in png_pixels and any(p >= 64 for p in png_pixels)

meta = json.loads((outdir / "basins.meta.json").read_text())
assert meta["size"] == [96, 64]

bad = subprocess.run([exe, "eta-scan", "--map", "bogus"], capture_output=True, text=True)
assert bad.returncode == 2, bad.returncode
assert bad.stderr.startswith("error code=UsageError"), bad.stderr
print("ok")
