"""Plain-text instance formats and JSON results.

``IP`` files hold ``max w.x s.t. A x <= b``::

    IP m n
    <m lines of n rationals>
    RHS b_1 .. b_m
    OBJ w_1 .. w_n
    LB  l_1 .. l_n        (optional, '-' for no bound)
    UB  u_1 .. u_n        (optional)
    EQ  i j ..            (optional, rows that hold with equality)

``GRAPH`` files list ``E u v [cost]`` and ``VW v w`` lines after a
``GRAPH n m`` header. ``EMBED`` files give ``ROT v: e ..`` rotations and
``SIG e: +1|-1`` signatures after ``EMBED n m``; edge endpoints are read
off the rotations. Lines starting with ``#`` are comments everywhere.

Rationals are written as ``p`` or ``p/q``; in JSON they are strings so no
precision is lost.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .model import IPInstance, IPResult
from .stableset.graph import Graph
from .surface.embedding import EmbeddedGraph


class FormatError(ValueError):
    """Malformed instance text."""


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _rat(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {tok!r}") from exc


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise FormatError(f"not an integer: {tok!r}") from exc


def fmt_rational(v) -> str:
    return str(Fraction(v))


def _header(line: str, tag: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 3 or parts[0] != tag:
        raise FormatError(f"expected header '{tag} <a> <b>', got {line!r}")
    return _int(parts[1]), _int(parts[2])


# ----------------------------------------------------------------------------
# IP


def parse_ip(text: str) -> IPInstance:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty IP file")
    m, n = _header(lines[0], "IP")
    if len(lines) < 1 + m:
        raise FormatError(f"expected {m} constraint lines")
    rows = []
    for ln in lines[1:1 + m]:
        vals = [_rat(t) for t in ln.split()]
        if len(vals) != n:
            raise FormatError(f"constraint line needs {n} entries: {ln!r}")
        rows.append(vals)
    fields: dict[str, list[str]] = {}
    for ln in lines[1 + m:]:
        key, *rest = ln.split()
        if key not in ("RHS", "OBJ", "LB", "UB", "EQ") or key in fields:
            raise FormatError(f"unexpected or repeated line {ln!r}")
        fields[key] = rest
    if "RHS" not in fields or "OBJ" not in fields:
        raise FormatError("RHS and OBJ lines are required")
    b = [_rat(t) for t in fields["RHS"]]
    w = [_rat(t) for t in fields["OBJ"]]
    if len(b) != m or len(w) != n:
        raise FormatError("RHS needs m entries and OBJ needs n entries")

    def bounds(key):
        if key not in fields:
            return None
        vals = [None if t == "-" else _rat(t) for t in fields[key]]
        if len(vals) != n:
            raise FormatError(f"{key} needs {n} entries")
        return vals

    eqs = [_int(t) for t in fields.get("EQ", [])]
    if any(not 0 <= i < m for i in eqs):
        raise FormatError("EQ row index out of range")
    return IPInstance.build(rows, b, w, bounds("LB"), bounds("UB"), eqs)


def format_ip(ip: IPInstance) -> str:
    out = [f"IP {ip.m} {ip.n}"]
    for i in range(ip.m):
        out.append(" ".join(fmt_rational(v) for v in ip.A.row(i)))
    out.append("RHS " + " ".join(fmt_rational(v) for v in ip.b))
    out.append("OBJ " + " ".join(fmt_rational(v) for v in ip.w))
    for key, vals in (("LB", ip.lower), ("UB", ip.upper)):
        if any(v is not None for v in vals):
            out.append(key + " " + " ".join("-" if v is None else fmt_rational(v) for v in vals))
    if ip.equalities:
        out.append("EQ " + " ".join(str(i) for i in sorted(ip.equalities)))
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# GRAPH


@dataclass(frozen=True)
class GraphFile:
    """A parsed GRAPH file; ``costs``/``weights`` are ``None`` when absent."""

    graph: Graph
    costs: tuple[Fraction, ...] | None
    weights: tuple[Fraction, ...] | None

    def vertex_weights(self) -> tuple[Fraction, ...]:
        """Explicit weights, else weights induced by the costs, else all ones."""
        if self.weights is not None:
            return self.weights
        if self.costs is not None:
            out = [Fraction(0)] * self.graph.n
            for (u, v), c in zip(self.graph.edges, self.costs):
                out[u] += c
                out[v] += c
            return tuple(out)
        return (Fraction(1),) * self.graph.n


def parse_graph(text: str) -> GraphFile:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty GRAPH file")
    n, m = _header(lines[0], "GRAPH")
    edges, costs = [], []
    weights: dict[int, Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "E" and len(parts) in (3, 4):
            edges.append((_int(parts[1]), _int(parts[2])))
            costs.append(_rat(parts[3]) if len(parts) == 4 else None)
        elif parts[0] == "VW" and len(parts) == 3:
            weights[_int(parts[1])] = _rat(parts[2])
        else:
            raise FormatError(f"unexpected line {ln!r}")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if any(not 0 <= v < n for v in weights):
        raise FormatError("VW vertex out of range")
    if any(c is None for c in costs) and any(c is not None for c in costs):
        raise FormatError("give a cost on every edge or on none")
    cost_t = tuple(costs) if costs and costs[0] is not None else None
    weight_t = tuple(weights.get(v, Fraction(0)) for v in range(n)) if weights else None
    return GraphFile(g, cost_t, weight_t)


def format_graph(g: Graph, costs: Sequence | None = None, weights: Sequence | None = None) -> str:
    out = [f"GRAPH {g.n} {g.m}"]
    for e, (u, v) in enumerate(g.edges):
        out.append(f"E {u} {v}" + (f" {fmt_rational(costs[e])}" if costs is not None else ""))
    if weights is not None:
        out.extend(f"VW {v} {fmt_rational(w)}" for v, w in enumerate(weights))
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# EMBED

_ROT = re.compile(r"^ROT\s+(\d+)\s*:(.*)$")
_SIG = re.compile(r"^SIG\s+(\d+)\s*:\s*([+-]?1)$")


def parse_embed(text: str) -> EmbeddedGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty EMBED file")
    n, m = _header(lines[0], "EMBED")
    rotation: dict[int, tuple[int, ...]] = {}
    signature: dict[int, int] = {}
    for ln in lines[1:]:
        if (mt := _ROT.match(ln)):
            rotation[int(mt.group(1))] = tuple(_int(t) for t in mt.group(2).split())
        elif (mt := _SIG.match(ln)):
            signature[int(mt.group(1))] = int(mt.group(2))
        else:
            raise FormatError(f"unexpected line {ln!r}")
    if sorted(rotation) != list(range(n)) or sorted(signature) != list(range(m)):
        raise FormatError("need one ROT line per vertex and one SIG line per edge")
    ends: dict[int, list[int]] = {e: [] for e in range(m)}
    for v, rot in rotation.items():
        for e in rot:
            if e not in ends:
                raise FormatError(f"edge id {e} out of range")
            ends[e].append(v)
    if any(len(vs) != 2 for vs in ends.values()):
        raise FormatError("every edge must appear in exactly two rotations")
    try:
        return EmbeddedGraph.from_rotation(n, [rotation[v] for v in range(n)],
                                           [tuple(ends[e]) for e in range(m)],
                                           [signature[e] for e in range(m)])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_embed(eg: EmbeddedGraph) -> str:
    out = [f"EMBED {eg.n} {eg.m}"]
    out.extend(f"ROT {v}: " + " ".join(map(str, eg.rotation[v])) for v in range(eg.n))
    out.extend(f"SIG {e}: {'+1' if s == 1 else '-1'}" for e, s in enumerate(eg.signature))
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# JSON

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def to_jsonable(obj: Any) -> Any:
    """Fractions become ``"p/q"`` strings; tuples become lists."""
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True)


def result_to_dict(res: IPResult) -> dict:
    return {"status": res.status, "objective": res.objective,
            "solution": None if res.solution is None else list(res.solution),
            "guesses_explored": res.guesses_explored}


def result_from_dict(d: dict) -> IPResult:
    obj = d.get("objective")
    if isinstance(obj, str) and not _RATIONAL.match(obj):
        raise FormatError(f"objective is not a rational: {obj!r}")
    sol = d.get("solution")
    return IPResult(d["status"], None if obj is None else Fraction(obj),
                    None if sol is None else tuple(int(v) for v in sol),
                    int(d.get("guesses_explored", 0)))


def result_from_json(text: str) -> IPResult:
    return result_from_dict(json.loads(text))


def result_to_json(res: IPResult) -> str:
    return dumps(result_to_dict(res))


def rationals(values: Iterable) -> list[str]:
    return [fmt_rational(v) for v in values]
