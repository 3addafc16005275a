"""JSON and DOT serialisation for lattices and graphs."""

import json
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import InvalidParameter
from .lattice import Edge, Lattice, build_lattice


def lattice_to_dict(L: Lattice) -> dict:
    data = {"n": L.n, "covers": [list(e) for e in L.covers]}
    if L.labels is not None:
        data["labels"] = list(L.labels)
    return data


def lattice_from_dict(data, check: bool = True) -> Lattice:
    if not isinstance(data, dict) or "n" not in data or "covers" not in data:
        raise InvalidParameter('lattice JSON needs "n" and "covers"')
    try:
        n = int(data["n"])
        covers = [(int(a), int(b)) for a, b in data["covers"]]
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"malformed lattice JSON: {exc}") from None
    labels = data.get("labels")
    if labels is not None and len(labels) != n:
        raise InvalidParameter(f"expected {n} labels, got {len(labels)}")
    return build_lattice(n, covers, labels, check=check)


def dumps_lattice(L: Lattice) -> str:
    return json.dumps(lattice_to_dict(L), separators=(",", ":"))


def loads_lattice(text: str, check: bool = True) -> Lattice:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"invalid JSON: {exc}") from None
    return lattice_from_dict(data, check=check)


def load_lattice(path: str, check: bool = True) -> Lattice:
    with open(path) as fh:
        return loads_lattice(fh.read(), check=check)


def save_lattice(L: Lattice, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_lattice(L) + "\n")


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_to_dot(L: Lattice, edge_labels: Optional[Dict[Edge, object]] = None,
                   name: str = "L") -> str:
    """Hasse diagram with edges pointing from lower to upper element."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(L.n):
        lines.append(f"  {x} [label={_quote(L.label(x))}];")
    for a, b in L.covers:
        extra = ""
        if edge_labels is not None and (a, b) in edge_labels:
            extra = f" [label={_quote(edge_labels[(a, b)])}]"
        lines.append(f"  {a} -> {b}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(m: int, edges: Iterable[Tuple[int, int]], labels: Optional[Sequence[str]] = None,
                 directed: bool = True, name: str = "G") -> str:
    kind, arrow = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    for v in range(m):
        lines.append(f"  {v} [label={_quote(labels[v] if labels else v)}];")
    for u, v in edges:
        lines.append(f"  {u} {arrow} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
