"""DOT (graph description language) emission for Hasse diagrams."""

from __future__ import annotations


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(labels, edges, title="hasse") -> str:
    """A digraph of the covering relation, drawn bottom-to-top.

    labels is a list of node labels; edges holds (lower, upper) index
    pairs.  Output is deterministic: nodes in index order, edges sorted.
    """
    lines = [f"digraph {_quote(title)} {{", "  rankdir=BT;",
             "  node [shape=box];"]
    for i, lab in enumerate(labels):
        lines.append(f"  n{i} [label={_quote(lab)}];")
    for lo, hi in sorted(edges):
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
