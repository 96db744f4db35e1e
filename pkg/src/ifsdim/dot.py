"""Graphviz DOT rendering of the transition graphs.

Output is deterministic: nodes appear in id order, edges in child order,
so identical structures give byte-identical files.
"""

from __future__ import annotations

from .classes import ClassDecomposition, TripleDiagram
from .net import FiniteTypeStructure


def _quote(text: str) -> str:
    return '"%s"' % text.replace('"', '\\"')


def reduced_dot(structure: FiniteTypeStructure, dec: ClassDecomposition) -> str:
    """The reduced characteristic-vector graph; essential vectors filled."""
    essential = set(dec.essential_reduced)
    lines = [
        "digraph reduced_transitions {",
        "  rankdir=LR;",
        '  node [shape=box, fontsize=10];',
    ]
    for rid in range(structure.reduced_count):
        length, neighbours = structure.reduced_signature(rid)
        label = "r%d\\nlen %s\\nnbrs %s" % (
            rid,
            length,
            ", ".join(str(v) for v in neighbours),
        )
        style = ', style=filled, fillcolor="#cfe8cf"' if rid in essential else ""
        lines.append("  r%d [label=%s%s];" % (rid, _quote(label), style))
    for rid in range(structure.reduced_count):
        for rec in structure.children_of_reduced(rid):
            lines.append(
                '  r%d -> r%d [label="%d"];'
                % (rid, structure.reduced_of(rec.child), rec.edge_index)
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _triple_label(structure: FiniteTypeStructure, key) -> str:
    left, centre, right = key
    part = lambda f: "x" if f is None else "f%d" % f
    return "(%s, %s, %s)" % (part(left), part(centre), part(right))


def triple_dot(structure: FiniteTypeStructure, diagram: TripleDiagram) -> str:
    """The triple diagram; essential triples filled, descent direction
    annotated on edges (L = leftmost child and abutting, R = rightmost)."""
    lines = [
        "digraph triple_diagram {",
        "  rankdir=LR;",
        '  node [shape=ellipse, fontsize=10];',
    ]
    for nid, key in enumerate(diagram.keys):
        label = "t%d %s" % (nid, _triple_label(structure, key))
        style = (
            ', style=filled, fillcolor="#cfd8e8"' if nid in diagram.essential else ""
        )
        lines.append("  t%d [label=%s%s];" % (nid, _quote(label), style))
    for nid in range(diagram.node_count()):
        for edge in diagram.edges[nid]:
            marks = ""
            if edge.is_leftmost:
                marks += " L"
            if edge.is_rightmost:
                marks += " R"
            lines.append(
                '  t%d -> t%d [label="%d%s"];'
                % (nid, edge.child, edge.edge_index, marks)
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
