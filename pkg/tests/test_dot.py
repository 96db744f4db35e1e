"""Tests for DOT export of the transition graphs."""

from ifsdim.classes import build_triple_diagram, decompose
from ifsdim.dot import reduced_dot, triple_dot


def test_reduced_dot_lists_every_vector_once(six_map_quarter_structure):
    structure = six_map_quarter_structure
    dec = decompose(structure)
    text = reduced_dot(structure, dec)
    assert text.startswith("digraph reduced_transitions {")
    assert text.endswith("}\n")
    for rid in range(structure.reduced_count):
        assert text.count("  r%d [label=" % rid) == 1
    assert text.count('fillcolor="#cfe8cf"') == len(set(dec.essential_reduced))


def test_reduced_dot_edge_lines_match_edge_count(six_map_quarter_structure):
    dec = decompose(six_map_quarter_structure)
    text = reduced_dot(six_map_quarter_structure, dec)
    arrows = [line for line in text.splitlines() if " -> " in line]
    assert len(arrows) == six_map_quarter_structure.edge_count()


def test_triple_dot_annotates_descent(gap_system_structure):
    dec = decompose(gap_system_structure)
    diagram = build_triple_diagram(gap_system_structure, dec)
    text = triple_dot(gap_system_structure, diagram)
    assert text.startswith("digraph triple_diagram {")
    nodes = [line for line in text.splitlines() if '[label="t' in line]
    assert len(nodes) == diagram.node_count()
    assert ' L"' in text
    assert ' R"' in text
    assert text.count('fillcolor="#cfd8e8"') == len(diagram.essential)


def test_dot_output_is_deterministic(
    six_map_quarter_structure, gap_system_structure
):
    dec = decompose(six_map_quarter_structure)
    assert reduced_dot(six_map_quarter_structure, dec) == reduced_dot(
        six_map_quarter_structure, dec
    )
    dec = decompose(gap_system_structure)
    diagram = build_triple_diagram(gap_system_structure, dec)
    assert triple_dot(gap_system_structure, diagram) == triple_dot(
        gap_system_structure, diagram
    )
