import pytest

from secnum.fileio import Document, ParseError, format_map, format_space, parse_document
from secnum.finspace import make_map, sierpinski


SIERPINSKI_TEXT = """\
# two points, one non-trivial reach generator
space S 2
reach 1 0
label 0 bottom
label 1 top
"""


def test_parse_space_with_closure_and_labels():
    doc = parse_document(SIERPINSKI_TEXT)
    s = doc.spaces["S"]
    assert s.reach_rows == (0b01, 0b11)
    assert s.labels == ("bottom", "top")


def test_closure_applied_on_load():
    doc = parse_document("space X 3\nreach 2 1\nreach 1 0\n")
    assert doc.spaces["X"].reach(2, 0)


def test_parse_map():
    text = SIERPINSKI_TEXT + "map f S S\nsend 0 0\nsend 1 0\n"
    doc = parse_document(text)
    f = doc.maps["f"]
    assert f.assignment == (0, 0)
    assert f.source == sierpinski()


def test_round_trip():
    s = sierpinski()
    f = make_map(s, s, [0, 0], name="f")
    text = format_space("S", s) + format_map("f", f, "S", "S")
    doc = parse_document(text)
    assert doc.spaces["S"] == s
    assert doc.maps["f"].assignment == (0, 0)


def test_duplicate_space_name_rejected_unless_identical():
    text = "space A 1\nspace A 1\n"
    doc = parse_document(text)  # identical redefinition is allowed
    assert doc.spaces["A"].n == 1
    with pytest.raises(ParseError):
        parse_document("space A 1\nspace A 2\n")


def test_duplicate_map_name_rejected():
    text = "space A 1\nmap f A A\nsend 0 0\nmap f A A\nsend 0 0\n"
    with pytest.raises(ParseError):
        parse_document(text)


def test_dangling_indices_rejected():
    with pytest.raises(ParseError):
        parse_document("space A 2\nreach 0 2\n")
    with pytest.raises(ParseError):
        parse_document("space A 2\nlabel 5 x\n")
    with pytest.raises(ParseError):
        parse_document("space A 1\nmap f A A\nsend 0 3\n")
    with pytest.raises(ParseError):
        parse_document("space A 1\nmap f A A\nsend 4 0\n")


def test_incomplete_or_duplicated_assignment_rejected():
    with pytest.raises(ParseError) as err:
        parse_document("space A 2\nmap f A A\nsend 0 0\n")
    assert "misses" in str(err.value)
    with pytest.raises(ParseError):
        parse_document("space A 1\nmap f A A\nsend 0 0\nsend 0 0\n")


def test_discontinuous_map_rejected():
    text = "space S 2\nreach 1 0\nmap bad S S\nsend 0 1\nsend 1 0\n"
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert "not continuous" in str(err.value)


def test_unknown_directive_and_stray_lines():
    with pytest.raises(ParseError):
        parse_document("frobnicate 1\n")
    with pytest.raises(ParseError):
        parse_document("reach 0 0\n")
    with pytest.raises(ParseError):
        parse_document("send 0 0\n")
    with pytest.raises(ParseError):
        parse_document("space A 1\nmap f A B\nsend 0 0\n")  # undeclared target


def test_merge_into_shared_registry():
    doc = Document()
    parse_document("space A 1\n", into=doc)
    parse_document("space B 2\nmap f B A\nsend 0 0\nsend 1 0\n", into=doc)
    assert set(doc.spaces) == {"A", "B"}
    assert doc.maps["f"].target == doc.spaces["A"]


def test_fence_serializes_and_parses_back():
    from secnum.fileio import format_fence
    from secnum.finspace import constant_map, identity_map
    from secnum.homotopy import homotopy_fence

    s = sierpinski()
    fence = homotopy_fence(identity_map(s), constant_map(s, s, 1))
    text = format_fence(fence)
    doc = parse_document(text)
    steps = [doc.maps[f"step_{i}"] for i in range(len(fence.steps))]
    assert [m.assignment for m in steps] == [m.assignment for m in fence.steps]
