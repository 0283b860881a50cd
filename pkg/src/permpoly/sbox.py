"""Substitution-table export for permutation polynomials.

Entry n of the table is rank(f(unrank(n))).  The on-disk format is chosen by
extension: ``.bin`` writes little-endian unsigned integers of the smallest
width that holds Q - 1 (1, 2 or 4 bytes), ``.hex`` writes one zero-padded
lowercase hex value per line.  A sidecar ``<path>.json`` certificate records
the field spec, the polynomial, its compositional inverse, and whether the
map is an involution.  Nothing is written unless the polynomial verifies as a
permutation first.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import NotAPermutation
from .fields import FieldSpec
from .oracle import brute_inverse, is_permutation
from .polyring import MapTable, Poly, interpolate


def entry_width(size: int) -> int:
    if size - 1 < 1 << 8:
        return 1
    if size - 1 < 1 << 16:
        return 2
    return 4


def export_sbox(spec: FieldSpec, poly: Poly, path: str | Path) -> dict:
    """Write the table and its certificate; returns the report dict."""
    path = Path(path)
    table = poly.tabulate()
    if not is_permutation(table):
        raise NotAPermutation("refusing to export a non-bijective table")
    inverse = brute_inverse(table)
    involution = table.values == inverse.values
    width = entry_width(spec.field.size)
    if path.suffix == ".hex":
        body = "\n".join(format(v, f"0{2 * width}x") for v in table.values) + "\n"
        payload = body.encode("ascii")
    elif path.suffix == ".bin":
        payload = b"".join(v.to_bytes(width, "little") for v in table.values)
    else:
        raise ValueError(f"unknown table format {path.suffix!r}; use .bin or .hex")
    certificate = {
        "field": str(spec),
        "poly": poly.to_text(),
        "inverse_coeffs": interpolate(inverse).to_text(),
        "involution": involution,
    }
    path.write_bytes(payload)
    Path(str(path) + ".json").write_text(json.dumps(certificate, indent=2) + "\n",
                                         encoding="ascii")
    return {"written": str(path), "entries": spec.field.size, "involution": involution}


def read_sbox(path: str | Path, spec: FieldSpec) -> MapTable:
    """Re-import a table written by export_sbox."""
    path = Path(path)
    width = entry_width(spec.field.size)
    if path.suffix == ".hex":
        values = [int(line, 16) for line in path.read_text().split()]
    elif path.suffix == ".bin":
        raw = path.read_bytes()
        values = [int.from_bytes(raw[i:i + width], "little")
                  for i in range(0, len(raw), width)]
    else:
        raise ValueError(f"unknown table format {path.suffix!r}")
    return MapTable(spec.field, values)
