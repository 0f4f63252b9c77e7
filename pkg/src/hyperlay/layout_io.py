"""Layout interchange file (JSON, version 1) shared with the browser
viewer.  Floats round-trip exactly through repr-based JSON encoding."""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .graphs import Graph, Polygon
from .projection import Layout

VERSION = 1

_ARITY = {"euclidean": 2, "hyperbolic": 2, "spherical": 3}


class LayoutFileError(ValueError):
    pass


def layout_document(l: Layout, g: Graph, seed: int = None,
                    trace: np.ndarray = None) -> dict:
    nodes = []
    for i in range(g.n):
        node = {"id": i, "label": g.labels[i]}
        if g.clusters[i] is not None:
            node["cluster"] = int(g.clusters[i])
        nodes.append(node)
    edges = []
    for (u, v), w in zip(g.edges, g.weights):
        if w == 1.0:
            edges.append([int(u), int(v)])
        else:
            edges.append([int(u), int(v), float(w)])
    doc = {
        "version": VERSION,
        "graph": {"nodes": nodes, "edges": edges},
        "geometry": l.geometry,
        "method": l.method,
        "alpha": float(l.alpha),
        "seed": seed,
        "coords": [[float(c) for c in row] for row in l.coords],
    }
    if l.polygons:
        doc["polygons"] = [
            {"cluster": int(p.cluster),
             "vertices": [[float(x), float(y)] for x, y in p.vertices],
             "color": p.color}
            for p in l.polygons]
    if l.euclidean_source is not None:
        doc["euclidean_source"] = [[float(x), float(y)]
                                   for x, y in l.euclidean_source]
    if trace is not None and len(trace):
        doc["trace"] = [[int(t), float(s), float(d)] for t, s, d in trace]
    return doc


def write_layout_file(path: str, l: Layout, g: Graph, seed: int = None,
                      trace: np.ndarray = None):
    """Atomic write: the document lands under a temporary name first."""
    doc = layout_document(l, g, seed=seed, trace=trace)
    text = json.dumps(doc, indent=1)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hyperlay-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_layout_document(doc: dict):
    """Returns (Graph, Layout, meta) where meta holds seed and trace."""
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise LayoutFileError("missing or unsupported version field")
    try:
        geometry = doc["geometry"]
        nodes = doc["graph"]["nodes"]
        edges = doc["graph"]["edges"]
        coords = np.asarray(doc["coords"], dtype=float)
    except (KeyError, TypeError) as e:
        raise LayoutFileError(f"malformed layout file: {e}")
    n = len(nodes)
    if len(coords) != n:
        raise LayoutFileError("coords length does not match node count")
    if geometry not in _ARITY:
        raise LayoutFileError(f"unknown geometry {geometry!r}")
    if coords.ndim != 2 or coords.shape[1] != _ARITY[geometry]:
        raise LayoutFileError(
            f"{geometry} coords must have arity {_ARITY[geometry]}")
    labels = [str(nd.get("label", nd["id"])) for nd in nodes]
    clusters = [nd.get("cluster") for nd in nodes]
    e = np.array([[int(r[0]), int(r[1])] for r in edges],
                 dtype=np.int64).reshape(-1, 2)
    w = np.array([float(r[2]) if len(r) > 2 else 1.0 for r in edges])
    polygons = [Polygon(int(p["cluster"]), np.asarray(p["vertices"], float),
                        p.get("color", "#cccccc"))
                for p in doc.get("polygons", [])]
    g = Graph(n=n, edges=e, weights=w, labels=labels, clusters=clusters)
    src = doc.get("euclidean_source")
    l = Layout(geometry=geometry, coords=coords,
               alpha=float(doc.get("alpha", 1.0)),
               method=doc.get("method", ""), polygons=polygons,
               euclidean_source=None if src is None else np.asarray(src, float))
    meta = {"seed": doc.get("seed"),
            "trace": np.asarray(doc["trace"]) if "trace" in doc else None}
    return g, l, meta


def read_layout_file(path: str):
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise LayoutFileError(f"not valid JSON: {e}")
    return parse_layout_document(doc)
