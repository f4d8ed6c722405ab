"""JSON forms of graphs, covers, length assignments and polynomials."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cover import DoubleCover, VoltageSpec, build_from_voltage
from .errors import CoverError, GraphError, ParseError
from .graph import Edge, MetricGraph, as_length


def _length_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def graph_to_json(g: MetricGraph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst, "length": _length_str(e.length)}
                      for e in g.edges]}


def graph_from_json(data) -> MetricGraph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ParseError("graph JSON needs 'vertices' and 'edges'")
    try:
        edges = []
        for item in data["edges"]:
            length = item.get("length", "1")
            if isinstance(length, float):
                raise ParseError(f"edge {item.get('id')!r}: length must be an integer or 'p/q' string")
            edges.append(Edge(str(item["id"]), str(item["src"]), str(item["dst"]), as_length(length)))
        return MetricGraph([str(v) for v in data["vertices"]], edges)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from exc
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def spec_to_json(spec: VoltageSpec) -> dict:
    return {"graph": graph_to_json(spec.base),
            "cover": {"form": "voltage",
                      "dilated_vertices": sorted(spec.dilated_vertices),
                      "dilated_edges": sorted(spec.dilated_edges),
                      "signs": {e: int(spec.signs[e]) for e in sorted(spec.signs)}}}


def cover_to_json(c: DoubleCover) -> dict:
    """Explicit form; lifts of base loops carry their orientation sign."""
    degree = {**c.vertex_degree, **c.edge_degree}
    out = {"form": "explicit", "total": graph_to_json(c.total),
           "vertex_map": dict(sorted(c.vertex_map.items())),
           "edge_map": dict(sorted(c.edge_map.items())),
           "degree": dict(sorted(degree.items()))}
    loop_signs = {te: c.sign(te) for te in c.total.edge_ids if c.base.edge(c.edge_map[te]).is_loop}
    if any(s != 1 for s in loop_signs.values()):
        out["edge_orientation"] = loop_signs
    return {"graph": graph_to_json(c.base), "cover": out}


def cover_from_json(data) -> DoubleCover:
    if not isinstance(data, dict) or "graph" not in data or "cover" not in data:
        raise ParseError("cover JSON needs 'graph' and 'cover'")
    base = graph_from_json(data["graph"])
    spec = data["cover"]
    form = spec.get("form") if isinstance(spec, dict) else None
    try:
        if form == "voltage":
            signs = spec.get("signs", {})
            if any(not isinstance(s, int) or isinstance(s, bool) for s in signs.values()):
                raise ParseError("signs must be the integers 1 or -1")
            return build_from_voltage(VoltageSpec(base, frozenset(spec.get("dilated_vertices", [])),
                                                  frozenset(spec.get("dilated_edges", [])), dict(signs)))
        if form == "explicit":
            total = graph_from_json(spec["total"])
            degree = spec["degree"]
            if set(degree) <= {"vertices", "edges"} and all(isinstance(x, dict) for x in degree.values()):
                degree = {**degree.get("vertices", {}), **degree.get("edges", {})}
            return DoubleCover.from_maps(base, total, spec["vertex_map"], spec["edge_map"],
                                         {k: int(v) for k, v in degree.items()},
                                         spec.get("edge_orientation"))
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, (ParseError, CoverError)):
            raise
        raise ParseError(f"malformed cover JSON: {exc}") from exc
    raise ParseError("cover 'form' must be 'voltage' or 'explicit'")


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_cover(path: str | Path) -> DoubleCover:
    return cover_from_json(load_json(path))


def lengths_from_json(data) -> dict[str, Fraction]:
    if not isinstance(data, dict):
        raise ParseError("length assignment must be an object mapping edge ids to lengths")
    try:
        return {str(k): as_length(v) for k, v in data.items()}
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
