"""Plain-text metric manifests.

Format::

    # comments start with '#'
    [chart]
    name = "example"                 # optional
    dimension = 4
    coordinates = "x1, x2, x3, x4"
    positive = "x1, x2, x3, x4"      # optional

    [metric]
    g11 = "x2"                       # single-digit indices
    g_3_4 = "0"                      # or underscore-separated indices

    [extras]                         # optional
    eta = "1, 0, 0, x1"              # candidate 1-form for QGK structures
    points = "1, 1, 1, 1; 2, 1, 1/2, 1"

    [golden]                         # optional reference components, 1-based
    riemann_1_2_1_2 = "(1/4)*(1/x2 + 1/x1)"
    scalar = "-2"

Each line inside a block is ``key = value`` where ``value`` is a double-quoted
string or a bare integer.  Metric entries are symmetric; absent entries are 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ExpressionError, ManifestError
from .tensor import Chart

BLOCKS = ("chart", "metric", "extras", "golden")
GOLDEN_NAMES = ("christoffel", "riemann", "ricci", "scalar", "nabla_riemann",
                "g_wedge_g", "g_wedge_s", "s_wedge_s")

_HEADER = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")
_ENTRY = re.compile(r'^([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(?:"([^"]*)"|(-?\d+))$')
_METRIC_KEY = re.compile(r"^g(?:(\d)(\d)|_(\d+)_(\d+))$")


@dataclass
class Manifest:
    coordinates: tuple[str, ...]
    metric: dict[tuple[int, int], str]
    positive: tuple[str, ...] = ()
    name: str = ""
    eta: tuple[str, ...] | None = None
    points: tuple[tuple[Fraction, ...], ...] = ()
    golden: dict[tuple[str, tuple[int, ...]], str] = field(default_factory=dict)
    path: str | None = None

    def __eq__(self, other):
        if not isinstance(other, Manifest):
            return NotImplemented
        keys = ("coordinates", "metric", "positive", "name", "eta", "points", "golden")
        return all(getattr(self, k) == getattr(other, k) for k in keys)

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    @property
    def chart(self) -> Chart:
        return Chart(self.coordinates, self.positive)

    def metric_table(self) -> list[list[str]]:
        n = self.dimension
        table = [["0"] * n for _ in range(n)]
        for (i, j), expr in self.metric.items():
            table[i - 1][j - 1] = table[j - 1][i - 1] = expr
        return table


def _split_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _parse_points(text: str, n: int, path, line) -> tuple[tuple[Fraction, ...], ...]:
    points = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        try:
            point = tuple(Fraction(v) for v in _split_list(chunk))
        except ValueError as exc:
            raise ManifestError(f"bad point {chunk.strip()!r}: {exc}", path, line) from None
        if len(point) != n:
            raise ManifestError(f"point {chunk.strip()!r} has {len(point)} coordinates, expected {n}",
                                path, line)
        points.append(point)
    return tuple(points)


def _golden_key(key: str, path, line):
    for name in sorted(GOLDEN_NAMES, key=len, reverse=True):
        if key == name:
            return name, ()
        if key.startswith(name + "_"):
            rest = key[len(name) + 1:].split("_")
            if all(r.isdigit() for r in rest):
                return name, tuple(int(r) for r in rest)
    raise ManifestError(f"unknown reference component {key!r}", path, line)


_GOLDEN_RANK = {"christoffel": 3, "riemann": 4, "ricci": 2, "scalar": 0, "nabla_riemann": 5,
                "g_wedge_g": 4, "g_wedge_s": 4, "s_wedge_s": 4}


def parse_manifest(text: str, path: str | None = None) -> Manifest:
    blocks: dict[str, dict[str, tuple[str, int]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            current = m.group(1).lower()
            if current not in BLOCKS:
                raise ManifestError(f"unknown block [{current}]", path, lineno)
            if current in blocks:
                raise ManifestError(f"duplicate block [{current}]", path, lineno)
            blocks[current] = {}
            continue
        m = _ENTRY.match(line)
        if m is None:
            raise ManifestError(f"expected 'key = \"value\"', got {line!r}", path, lineno)
        if current is None:
            raise ManifestError("entry outside of any block", path, lineno)
        key = m.group(1)
        value = m.group(2) if m.group(2) is not None else m.group(3)
        if key in blocks[current]:
            raise ManifestError(f"duplicate key {key!r}", path, lineno)
        blocks[current][key] = (value, lineno)

    for required in ("chart", "metric"):
        if required not in blocks:
            raise ManifestError(f"missing [{required}] block", path)

    chart_block = blocks["chart"]
    unknown = set(chart_block) - {"name", "dimension", "coordinates", "positive"}
    if unknown:
        key = sorted(unknown)[0]
        raise ManifestError(f"unknown chart key {key!r}", path, chart_block[key][1])
    if "coordinates" not in chart_block:
        raise ManifestError("chart block needs 'coordinates'", path)
    coords_text, coords_line = chart_block["coordinates"]
    coordinates = _split_list(coords_text)
    if "dimension" in chart_block:
        dim_text, dim_line = chart_block["dimension"]
        try:
            dimension = int(dim_text)
        except ValueError:
            raise ManifestError(f"dimension must be an integer, got {dim_text!r}", path, dim_line) from None
        if dimension != len(coordinates):
            raise ManifestError(f"dimension {dimension} does not match {len(coordinates)} coordinates",
                                path, dim_line)
    positive = _split_list(chart_block["positive"][0]) if "positive" in chart_block else ()
    try:
        chart = Chart(coordinates, positive)
    except ValueError as exc:
        raise ManifestError(str(exc), path, coords_line) from None
    n = chart.dim

    def parse_expr(expr, lineno):
        try:
            return chart.parse(expr)
        except ExpressionError as exc:
            raise ManifestError(f"in expression {expr!r}: {exc}", path, lineno) from None

    metric: dict[tuple[int, int], str] = {}
    for key, (value, lineno) in blocks["metric"].items():
        m = _METRIC_KEY.match(key)
        if m is None:
            raise ManifestError(f"bad metric key {key!r}; use gIJ or g_I_J", path, lineno)
        i, j = (int(m.group(1)), int(m.group(2))) if m.group(1) else (int(m.group(3)), int(m.group(4)))
        if not (1 <= i <= n and 1 <= j <= n):
            raise ManifestError(f"metric index ({i},{j}) out of range 1..{n}", path, lineno)
        pair = (min(i, j), max(i, j))
        if pair in metric:
            raise ManifestError(f"metric entry ({i},{j}) given twice", path, lineno)
        parse_expr(value, lineno)
        metric[pair] = value.strip()
    if all(parse_expr(metric.get((i, i), "0"), None).is_zero() for i in range(1, n + 1)):
        raise ManifestError("every diagonal metric entry is zero", path)

    name = chart_block["name"][0] if "name" in chart_block else ""
    eta = None
    points: tuple = ()
    extras = blocks.get("extras", {})
    for key, (value, lineno) in extras.items():
        if key == "eta":
            eta = _split_list(value)
            if len(eta) != n:
                raise ManifestError(f"eta has {len(eta)} components, expected {n}", path, lineno)
            for e in eta:
                parse_expr(e, lineno)
        elif key == "points":
            points = _parse_points(value, n, path, lineno)
        else:
            raise ManifestError(f"unknown extras key {key!r}", path, lineno)

    golden = {}
    for key, (value, lineno) in blocks.get("golden", {}).items():
        gname, index = _golden_key(key, path, lineno)
        if len(index) != _GOLDEN_RANK[gname] or not all(1 <= i <= n for i in index):
            raise ManifestError(f"bad index for {gname}: {key!r}", path, lineno)
        parse_expr(value, lineno)
        golden[(gname, index)] = value.strip()

    return Manifest(coordinates, metric, positive, name, eta, points, golden, path)


def _strip_comment(raw: str) -> str:
    """Drop a trailing comment that is not inside a quoted string."""
    inside = False
    for i, ch in enumerate(raw):
        if ch == '"':
            inside = not inside
        elif ch == "#" and not inside:
            return raw[:i].strip()
    return raw.strip()


def load_manifest(path) -> Manifest:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc.strerror}", str(path)) from None
    return parse_manifest(text, str(path))


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_manifest(m: Manifest) -> str:
    """Canonical text form; ``parse_manifest(format_manifest(m)) == m``."""
    lines = ["[chart]"]
    if m.name:
        lines.append(f'name = "{m.name}"')
    lines.append(f"dimension = {m.dimension}")
    lines.append(f'coordinates = "{", ".join(m.coordinates)}"')
    if m.positive:
        lines.append(f'positive = "{", ".join(m.positive)}"')
    lines += ["", "[metric]"]
    wide = m.dimension > 9
    for (i, j) in sorted(m.metric):
        key = f"g_{i}_{j}" if wide else f"g{i}{j}"
        lines.append(f'{key} = "{m.metric[(i, j)]}"')
    if m.eta is not None or m.points:
        lines += ["", "[extras]"]
        if m.eta is not None:
            lines.append(f'eta = "{", ".join(m.eta)}"')
        if m.points:
            pts = "; ".join(", ".join(_format_fraction(v) for v in p) for p in m.points)
            lines.append(f'points = "{pts}"')
    if m.golden:
        lines += ["", "[golden]"]
        for (gname, index) in sorted(m.golden):
            key = "_".join([gname, *map(str, index)])
            lines.append(f'{key} = "{m.golden[(gname, index)]}"')
    return "\n".join(lines) + "\n"


def manifest_metric(m: Manifest):
    """Build the exact metric; raises the metric-layer errors unchanged."""
    from .curvature import build_metric

    return build_metric(m.chart, m.metric_table())


def parsed_golden(m: Manifest) -> dict:
    chart = m.chart
    return {key: chart.parse(expr) for key, expr in m.golden.items()}


def parsed_eta(m: Manifest):
    if m.eta is None:
        return None
    chart = m.chart
    return [chart.parse(e) for e in m.eta]


__all__ = [
    "Manifest",
    "format_manifest",
    "load_manifest",
    "manifest_metric",
    "parse_manifest",
    "parsed_eta",
    "parsed_golden",
]
