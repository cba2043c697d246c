"""Graph file formats, report rendering and Macaulay2 export."""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .linalg import FieldSpec
from .monomials import MonomialIdeal
from .resolution import BettiTable
from .tree import TreeAnalysis, TreeError, WeightedTree, witness_monomial


class GraphFormatError(ValueError):
    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass(frozen=True)
class GraphDocument:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    def to_tree(self) -> WeightedTree:
        try:
            return WeightedTree.from_edges(self.vertices, self.edges)
        except TreeError as e:
            raise GraphFormatError(str(e), "graph") from e

    @classmethod
    def from_tree(cls, G: WeightedTree) -> "GraphDocument":
        return cls(G.vertices, tuple((G.vertices[i], G.vertices[j], w) for i, j, w in G.edges))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"u": u, "v": v, "w": w} for u, v, w in self.edges]}


def _check_edges(vertices, edges, where):
    seen = {}
    for k, (u, v, w) in enumerate(edges):
        loc = where(k)
        if u not in vertices:
            raise GraphFormatError(f"unknown vertex {u!r}", loc)
        if v not in vertices:
            raise GraphFormatError(f"unknown vertex {v!r}", loc)
        if w < 1:
            raise GraphFormatError(f"non-positive weight {w}", loc)
        key = frozenset((u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u}-{v} (first at {seen[key]})", loc)
        seen[key] = loc


# Optional first line fixing the vertex order; otherwise vertices are ordered
# by first appearance.
VERTEX_PRAGMA = "# vertices:"


def _parse_edgelist(text: str) -> GraphDocument:
    vertices: list[str] = []
    declared: list[str] | None = None
    edges = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.startswith(VERTEX_PRAGMA) and declared is None and not edges:
            declared = raw[len(VERTEX_PRAGMA):].split()
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"expected 'u v w', got {line!r}", f"line {lineno}")
        u, v, w = parts
        try:
            w = int(w)
        except ValueError:
            raise GraphFormatError(f"weight {w!r} is not an integer", f"line {lineno}") from None
        for x in (u, v):
            if x not in vertices:
                vertices.append(x)
        edges.append((u, v, w))
        lines.append(lineno)
    if declared is not None:
        if len(set(declared)) != len(declared):
            raise GraphFormatError("vertex names must be unique", "vertices comment")
        missing = [v for v in vertices if v not in declared]
        if missing:
            raise GraphFormatError(f"vertex {missing[0]!r} is not in the vertices comment", "vertices comment")
        vertices = declared
    _check_edges(vertices, edges, lambda k: f"line {lines[k]}")
    return GraphDocument(tuple(vertices), tuple(edges))


def _parse_json(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", f"line {e.lineno}") from None
    if not isinstance(data, dict):
        raise GraphFormatError("top level must be an object", "$")
    vertices = data.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("'vertices' must be a list of names", "vertices")
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("vertex names must be unique", "vertices")
    raw = data.get("edges")
    if not isinstance(raw, list):
        raise GraphFormatError("'edges' must be a list", "edges")
    edges = []
    for k, e in enumerate(raw):
        if not isinstance(e, dict) or set(e) != {"u", "v", "w"}:
            raise GraphFormatError("edge must be an object with keys u, v, w", f"edges[{k}]")
        if not isinstance(e["w"], int) or isinstance(e["w"], bool):
            raise GraphFormatError("weight must be an integer", f"edges[{k}].w")
        edges.append((str(e["u"]), str(e["v"]), e["w"]))
    _check_edges(vertices, edges, lambda k: f"edges[{k}]")
    return GraphDocument(tuple(vertices), tuple(edges))


def parse_graph(data: bytes | str, format: str) -> GraphDocument:
    """Parse ``json`` or ``edgelist`` input into a validated GraphDocument."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if format == "json":
        doc = _parse_json(text)
    elif format == "edgelist":
        doc = _parse_edgelist(text)
    else:
        raise ValueError(f"unknown graph format {format!r}")
    doc.to_tree()
    return doc


def infer_format(path: str | Path) -> str:
    return "json" if str(path).lower().endswith(".json") else "edgelist"


def read_graph(path: str | Path) -> GraphDocument:
    return parse_graph(Path(path).read_bytes(), infer_format(path))


def render_graph(doc: GraphDocument, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(doc.to_dict(), indent=2) + "\n").encode()
    if format == "edgelist":
        head = f"{VERTEX_PRAGMA} {' '.join(doc.vertices)}\n"
        return (head + "".join(f"{u} {v} {w}\n" for u, v, w in doc.edges)).encode()
    raise ValueError(f"unknown graph format {format!r}")


# --- reports ---------------------------------------------------------------


def analysis_to_dict(G: WeightedTree, A: TreeAnalysis) -> dict:
    names = G.vertices

    def vs(s):
        return [names[v] for v in sorted(s)]

    per_root = []
    for a in A.per_root:
        entry = {"root": names[a.root], "increasing": a.increasing,
                 "strictly_increasing": a.strictly_increasing, "s": a.s,
                 "special_edges": [[names[u], names[v]] for u, v in sorted(a.special_edges)]}
        if a.increasing:
            entry["witness"] = list(witness_monomial(G, a.root, a))
        per_root.append(entry)
    return {
        "vertices": list(names),
        "is_increasing": A.is_increasing,
        "is_strictly_increasing": A.is_strictly_increasing,
        "roots": [names[r] for r in A.roots],
        "s_min": A.s_min,
        "d_max": A.d_max,
        "mu": list(A.mu),
        "a_set": vs(A.a_set),
        "bipartition": [vs(A.bipartition[0]), vs(A.bipartition[1])],
        "per_root": per_root,
    }


def betti_to_dict(T: BettiTable, field: FieldSpec, engine: str, power: int = 1) -> dict:
    return {
        "ring_dim": T.ring_dim,
        "field": str(field),
        "engine": engine,
        "power": power,
        "entries": [{"i": i, "multidegree": list(b), "rank": r} for i, b, r in T.entries],
        "totals": T.totals(),
        "pd": T.pd(),
        "depth": T.depth(),
        "reg_quotient": T.reg_quotient(),
        "reg_ideal": T.reg_ideal(),
    }


def ideal_to_dict(I: MonomialIdeal, names, power: int = 1) -> dict:
    return {"ring_dim": I.ring_dim, "variables": list(names), "power": power,
            "unit": I.unit, "generators": [list(g) for g in I.gens], "text": I.format(names)}


@dataclass
class Report:
    command: list[str]
    analysis: dict | None = None
    ideal: dict | None = None
    betti: dict | None = None
    verdicts: dict | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(**d)


def parse_report(data: bytes | str) -> Report:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return Report.from_dict(json.loads(text))


def _plain(report: Report) -> str:
    out = [f"$ {' '.join(report.command)}"]
    a = report.analysis
    if a:
        out.append("analysis:")
        out.append(f"  increasing: {a['is_increasing']}  strictly increasing: {a['is_strictly_increasing']}")
        out.append(f"  roots: {', '.join(a['roots']) or '-'}  s(G): {a['s_min']}  d: {a['d_max']}")
        out.append("  mu: " + " ".join(f"{v}={m}" for v, m in zip(a["vertices"], a["mu"])))
        out.append(f"  A(G): {{{', '.join(a['a_set'])}}}")
        out.append(f"  bipartition: {{{', '.join(a['bipartition'][0])}}} | {{{', '.join(a['bipartition'][1])}}}")
        for r in a["per_root"]:
            if r["increasing"]:
                sp = ", ".join(f"{u}->{v}" for u, v in r["special_edges"]) or "-"
                out.append(f"  root {r['root']}: strict={r['strictly_increasing']} s={r['s']} special: {sp}"
                           f" witness={r['witness']}")
    if report.ideal:
        out.append(f"ideal (power {report.ideal['power']}): {report.ideal['text']}")
        out.append(f"  {len(report.ideal['generators'])} minimal generators")
    b = report.betti
    if b:
        out.append(f"betti table of S/I^{b['power']} over {b['field']} ({b['engine']}):")
        for e in b["entries"]:
            out.append(f"  i={e['i']}  {e['multidegree']}  rank {e['rank']}")
        out.append(f"  totals: {b['totals']}")
        out.append(f"  pd={b['pd']} depth={b['depth']} reg(S/I)={b['reg_quotient']} reg(I)={b['reg_ideal']}")
    v = report.verdicts
    if v:
        out.append(f"verdicts ({v['suite']}):")
        for item in v["verdicts"]:
            out.append(f"  [{item['status']}] {item['claim']}  {item['instance'].get('label', '')}".rstrip())
            if item.get("detail"):
                out.append(f"      {json.dumps(item['detail'], sort_keys=True)}")
        s = v["summary"]
        out.append(f"  summary: {s['holds']} holds, {s['counterexample']} counterexamples, "
                   f"{s['skipped_resource']} skipped")
    return "\n".join(out) + "\n"


def _csv(report: Report) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "multidegree", "rank"])
    if report.betti:
        for e in report.betti["entries"]:
            w.writerow([e["i"], json.dumps(e["multidegree"], separators=(",", ":")), e["rank"]])
        b = report.betti
        buf.write(f"# pd={b['pd']} depth={b['depth']} reg_quotient={b['reg_quotient']} reg_ideal={b['reg_ideal']}\n")
    return buf.getvalue()


def render_report(report: Report, mode: str = "json") -> bytes:
    if mode == "json":
        return (json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n").encode()
    if mode == "plain":
        return _plain(report).encode()
    if mode == "csv":
        return _csv(report).encode()
    raise ValueError(f"unknown render mode {mode!r}")


# --- Macaulay2 -------------------------------------------------------------


def export_macaulay2(G: WeightedTree, t: int = 1, field: FieldSpec | None = None) -> bytes:
    """A standalone Macaulay2 script printing regularity, pdim and depth of I^t.

    Variables are x_1..x_n in vertex order; the original names are listed in
    a comment.
    """
    if t < 1:
        raise ValueError("power must be at least 1")
    coeff = "QQ" if field is None or field.prime is None else f"ZZ/{field.prime}"
    n = G.n
    gens = [f"(x_{i + 1}*x_{j + 1})^{w}" for i, j, w in G.edges]
    lines = [
        "-- edge ideal of an edge-weighted tree",
        "-- variables: " + ", ".join(f"x_{k + 1}={name}" for k, name in enumerate(G.vertices)),
        f"R = {coeff}[x_1..x_{n}];",
        f"I = ideal({', '.join(gens)});",
        f"J = I^{t};",
        "M = R^1/J;",
        'print("regularity " | toString regularity J);',
        'print("pdim " | toString pdim M);',
        f'print("depth " | toString({n} - pdim M));',
        "",
    ]
    return "\n".join(lines).encode()
