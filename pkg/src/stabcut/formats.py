"""Instance readers: TSPLIB-95 ``.tsp`` files and the plain ``MCUT`` edge list.

Only the TSPLIB features needed for dense symmetric benchmarks are
supported: ``EXPLICIT`` weights in the five row-wise matrix layouts and
``EUC_2D`` coordinates. Anything else raises :class:`FormatError` rather
than being read wrongly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .graph import GraphError, WeightMatrix, build_matrix, from_array, total_weight

WEIGHT_TYPES = ("EXPLICIT", "EUC_2D")
WEIGHT_FORMATS = ("FULL_MATRIX", "UPPER_ROW", "LOWER_ROW", "UPPER_DIAG_ROW", "LOWER_DIAG_ROW")

# Totals of the TSPLIB releases the benchmark tables were computed on. Files
# whose totals differ are later revisions and are refused.
KNOWN_TOTALS = {
    "gr17": 37346,
    "bayg29": 66313,
    "hk48": 1153784,
    "berlin52": 762783,
    "brazil58": 3523646,
}

_KEYWORD = re.compile(r"^([A-Z_][A-Z0-9_]*)\s*(?::\s*(.*))?$")


class FormatError(ValueError):
    """Unreadable or unsupported instance file."""


@dataclass
class TsplibInstance:
    name: str
    dimension: int
    weight_type: str
    weight_format: Optional[str] = None
    coords: Optional[list[tuple[float, float]]] = None
    explicit_weights: Optional[list] = None
    comment: str = ""


def _number(token: str, where: str):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"non-numeric token {token!r} in {where}") from None
    if not math.isfinite(value):
        raise FormatError(f"non-finite value {token!r} in {where}")
    return value


def expected_weight_count(fmt: str, n: int) -> int:
    if fmt == "FULL_MATRIX":
        return n * n
    if fmt in ("UPPER_ROW", "LOWER_ROW"):
        return n * (n - 1) // 2
    if fmt in ("UPPER_DIAG_ROW", "LOWER_DIAG_ROW"):
        return n * (n + 1) // 2
    raise FormatError(f"unsupported EDGE_WEIGHT_FORMAT {fmt}")


def parse_tsplib(text: str) -> TsplibInstance:
    """Parse the header and data sections of a TSPLIB file.

    Unknown keywords and sections are skipped. NODE_COORD_SECTION and
    DISPLAY_DATA_SECTION in EXPLICIT files are read past and not used.
    """
    header: dict[str, str] = {}
    sections: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        m = _KEYWORD.match(line)
        if m and (m.group(2) is not None or m.group(1).endswith("_SECTION")):
            key, value = m.group(1), m.group(2)
            if key.endswith("_SECTION"):
                current = key
                sections[current] = []
                # A few files put data on the section line after a colon.
                if value:
                    sections[current].append(value)
            else:
                header[key] = value.strip()
                current = None
            continue
        if current is None:
            raise FormatError(f"line {lineno}: unexpected content {line[:40]!r}")
        sections[current].append(line)

    for key in ("NAME", "DIMENSION", "EDGE_WEIGHT_TYPE"):
        if key not in header:
            raise FormatError(f"missing {key} keyword")
    name = header["NAME"]
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise FormatError(f"bad DIMENSION {header['DIMENSION']!r}") from None
    if n < 1:
        raise FormatError(f"DIMENSION must be positive, got {n}")
    wtype = header["EDGE_WEIGHT_TYPE"].upper()
    if wtype not in WEIGHT_TYPES:
        raise FormatError(f"unsupported EDGE_WEIGHT_TYPE {wtype}")
    inst = TsplibInstance(name, n, wtype, comment=header.get("COMMENT", ""))

    if wtype == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if not fmt:
            raise FormatError("EXPLICIT instance without EDGE_WEIGHT_FORMAT")
        need = expected_weight_count(fmt, n)
        if "EDGE_WEIGHT_SECTION" not in sections:
            raise FormatError("missing EDGE_WEIGHT_SECTION")
        tokens = " ".join(sections["EDGE_WEIGHT_SECTION"]).split()
        if len(tokens) < need:
            raise FormatError(f"EDGE_WEIGHT_SECTION truncated: {len(tokens)} of {need} values")
        if len(tokens) > need:
            raise FormatError(f"EDGE_WEIGHT_SECTION has {len(tokens)} values, expected {need}")
        inst.weight_format = fmt
        inst.explicit_weights = [_number(t, "EDGE_WEIGHT_SECTION") for t in tokens]
    else:
        if "NODE_COORD_SECTION" not in sections:
            raise FormatError("missing NODE_COORD_SECTION")
        rows = sections["NODE_COORD_SECTION"]
        if len(rows) != n:
            raise FormatError(f"NODE_COORD_SECTION has {len(rows)} nodes, expected {n}")
        coords = [None] * n
        for row in rows:
            parts = row.split()
            if len(parts) != 3:
                raise FormatError(f"bad coordinate line {row!r}")
            idx = _number(parts[0], "NODE_COORD_SECTION")
            if not isinstance(idx, int) or not 1 <= idx <= n or coords[idx - 1] is not None:
                raise FormatError(f"bad or repeated node id {parts[0]!r}")
            coords[idx - 1] = (
                float(_number(parts[1], "NODE_COORD_SECTION")),
                float(_number(parts[2], "NODE_COORD_SECTION")),
            )
        inst.coords = coords
    return inst


def nint(x: float) -> int:
    """TSPLIB rounding: floor(x + 0.5)."""
    return int(math.floor(x + 0.5))


def _explicit_matrix(inst: TsplibInstance) -> np.ndarray:
    n, fmt, vals = inst.dimension, inst.weight_format, inst.explicit_weights
    if vals is None or len(vals) != expected_weight_count(fmt, n):
        raise FormatError("explicit weight count does not match the declared format")
    dtype = object
    w = np.zeros((n, n), dtype=dtype)
    it = iter(vals)
    if fmt == "FULL_MATRIX":
        for i in range(n):
            for j in range(n):
                w[i, j] = next(it)
        if not all(w[i, j] == w[j, i] for i in range(n) for j in range(i)):
            raise FormatError("FULL_MATRIX is not symmetric")
    else:
        for i in range(n):
            if fmt == "UPPER_ROW":
                cols = range(i + 1, n)
            elif fmt == "UPPER_DIAG_ROW":
                cols = range(i, n)
            elif fmt == "LOWER_ROW":
                cols = range(i)
            else:
                cols = range(i + 1)
            for j in cols:
                w[i, j] = w[j, i] = next(it)
    # Diagonal entries in the data are placeholders (often 0 or 9999).
    for i in range(n):
        w[i, i] = 0
    return w


def to_weight_matrix(inst: TsplibInstance, check_known_total: bool = True) -> WeightMatrix:
    """Convert a parsed instance into a dense integer-or-real weight matrix.

    EUC_2D distances are rounded with :func:`nint`, so the result is always
    integer valued. If the instance name has a known reference total and
    ``check_known_total`` is set, a mismatching file is rejected.
    """
    if inst.weight_type == "EXPLICIT":
        w = _explicit_matrix(inst)
    else:
        if inst.coords is None or len(inst.coords) != inst.dimension:
            raise FormatError("coordinate count does not match DIMENSION")
        n = inst.dimension
        w = np.zeros((n, n), dtype=object)
        for i in range(n):
            xi, yi = inst.coords[i]
            for j in range(i + 1, n):
                xj, yj = inst.coords[j]
                w[i, j] = w[j, i] = nint(math.sqrt((xi - xj) ** 2 + (yi - yj) ** 2))
    try:
        W = from_array(w)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    if check_known_total and inst.name in KNOWN_TOTALS:
        expected = KNOWN_TOTALS[inst.name]
        got = total_weight(W)
        if got != expected:
            raise FormatError(
                f"{inst.name}: total weight {got} differs from the reference release ({expected}); "
                "the file is probably a revised version"
            )
    return W


def parse_mcut(text: str) -> WeightMatrix:
    """Parse the MCUT edge-list format.

    First data line ``n m``, then ``m`` lines ``i j w`` with ``1 <= i < j <= n``.
    ``#`` starts a comment. Weights without a decimal point are integers.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))
    if not lines:
        raise FormatError("empty MCUT input")
    lineno, head = lines[0]
    if len(head) != 2:
        raise FormatError(f"line {lineno}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"line {lineno}: 'n m' must be integers") from None
    if n < 1 or m < 0:
        raise FormatError(f"line {lineno}: need n >= 1 and m >= 0")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"expected {m} edge lines, found {len(body)}")
    entries = []
    for lineno, parts in body:
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'i j w'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: vertex ids must be integers") from None
        if not (1 <= i < j <= n):
            raise FormatError(f"line {lineno}: need 1 <= i < j <= {n}, got {i} {j}")
        tok = parts[2]
        try:
            wt = float(tok) if "." in tok else int(tok)
        except ValueError:
            try:
                wt = float(tok)
            except ValueError:
                raise FormatError(f"line {lineno}: bad weight {tok!r}") from None
        if isinstance(wt, float) and not math.isfinite(wt):
            raise FormatError(f"line {lineno}: weight must be finite")
        entries.append((i, j, wt))
    try:
        return build_matrix(n, entries)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def load_instance(path, fmt: Optional[str] = None) -> tuple[str, WeightMatrix]:
    """Read an instance file; ``fmt`` is ``tsplib`` or ``mcut`` (default: by suffix)."""
    path = Path(path)
    if fmt is None:
        fmt = "mcut" if path.suffix.lower() == ".mcut" else "tsplib"
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError:
        raise FormatError(f"{path} is not a text file") from None
    if fmt == "tsplib":
        inst = parse_tsplib(text)
        return inst.name, to_weight_matrix(inst)
    if fmt == "mcut":
        return path.stem, parse_mcut(text)
    raise ValueError(f"unknown format {fmt!r}")
