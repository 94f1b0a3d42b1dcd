from stmodkit.diagram import loewy_diagram, to_ascii, to_dot
from stmodkit.module import free_module, simple_module


def test_case_a_projective_cover_of_k(A):
    d = loewy_diagram(free_module(A, ["k"]))
    assert len(d.nodes) == 9
    assert d.row_sizes() == [1, 2, 3, 2, 1]
    names = [[n.name for n in row] for row in d.rows()]
    assert names == [["k"], ["k", "ε"], ["k", "ε", "k"], ["ε", "k"], ["k"]]
    by_id = {n.id: n for n in d.nodes}
    for e in d.edges:
        step = by_id[e.dst].x - by_id[e.src].x
        assert step == {"Z": -1, "Y": 1}[e.gen]
        assert by_id[e.dst].layer == by_id[e.src].layer + 1


def test_case_b_projective(B):
    d = loewy_diagram(free_module(B, ["k"]))
    assert d.row_sizes() == [1, 3, 3, 1]
    assert [n.name for n in d.rows()[1]] == ["ω", "k", "ω̄"]
    assert len(d.edges) == 12


def test_renderers(B, A):
    d = loewy_diagram(free_module(B, ["ω"]))
    dot = to_dot(d, B.field.symbol)
    assert dot.startswith("digraph loewy {") and "rank=same" in dot and 'label="X"' in dot
    art = to_ascii(loewy_diagram(free_module(A, ["k"])))
    assert art.splitlines()[0].strip() == "k"
    assert "/" in art and "\\" in art
    assert to_ascii(loewy_diagram(simple_module(A, "k")).__class__()) == "(zero module)\n"


def test_json_shape(A):
    j = loewy_diagram(free_module(A, ["ε"])).to_json()
    assert set(j) == {"title", "nodes", "edges", "row_sizes"}
    assert j["row_sizes"] == [1, 2, 3, 2, 1]
