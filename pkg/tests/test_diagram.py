import pytest

from zcolor.diagram import (
    Diagram,
    DiagramError,
    PDSyntaxError,
    canonical,
    components,
    is_connected,
    isomorphic,
    linking_number,
    parse_pd,
    same_diagram,
    serialize_pd,
    validate,
    writhe,
)

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
HOPF = "X[4,1,3,2] X[2,3,1,4]"


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert len(d.crossings) == 3
    assert len(d.components) == 1
    assert validate(d) == []


def test_parse_empty():
    d = parse_pd("")
    assert len(d.crossings) == 0
    assert d.num_components == 0
    assert writhe(d) == 0


def test_parse_kink():
    d = parse_pd("X[1,2,2,1]")
    assert len(d.components) == 1
    assert writhe(d) == -1
    d2 = parse_pd("X[1,1,2,2]")
    assert writhe(d2) == 1


def test_parse_errors():
    with pytest.raises(PDSyntaxError):
        parse_pd("X[1,2,3]")
    with pytest.raises(PDSyntaxError):
        parse_pd("garbage")
    with pytest.raises(DiagramError):
        parse_pd("X[1,1,1,1]")  # arc multiplicity violation
    with pytest.raises(DiagramError):
        parse_pd("X[1,2,3,7] X[7,3,2,1]")  # labels not 1..2n


def test_contradictory_header_rejected():
    with pytest.raises(DiagramError):
        parse_pd("% component: 1 4 2 5 3 6\n" + TREFOIL)


def test_comment_and_headers():
    text = "# a trefoil\n% component: 1 2 3 4 5 6\n" + TREFOIL.replace(" ", "\n")
    d = parse_pd(text)
    assert len(d.crossings) == 3
    d2 = parse_pd("% loops: 2\n")
    assert d2.free_loops == 2
    assert d2.num_components == 2


def test_writhe_convention():
    assert abs(writhe(parse_pd(TREFOIL))) == 3
    assert writhe(parse_pd(TREFOIL)) == -3  # this PD is the left trefoil


def test_linking_number():
    h = parse_pd(HOPF)
    assert abs(linking_number(h, 0, 1)) == 1
    assert linking_number(h, 0, 1) == linking_number(h, 1, 0)
    split = parse_pd("X[1,1,2,2] X[3,3,4,4]")
    assert linking_number(split, 0, 1) == 0
    with pytest.raises(DiagramError):
        linking_number(h, 0, 0)
    with pytest.raises(DiagramError):
        linking_number(h, 0, 5)


def test_components():
    assert len(components(parse_pd(TREFOIL))) == 1
    assert len(components(parse_pd(HOPF))) == 2
    assert is_connected(parse_pd(HOPF))
    assert not is_connected(parse_pd("X[1,1,2,2] X[3,3,4,4]"))


def test_round_trip():
    for text in (TREFOIL, HOPF, "X[1,1,2,2]"):
        d = parse_pd(text)
        d2 = parse_pd(serialize_pd(d))
        assert same_diagram(d, d2)
        assert writhe(d) == writhe(d2)


def test_writhe_invariant_under_relabeling(corpus):
    for d in corpus.values():
        c, _ = canonical(d)
        assert writhe(c) == writhe(d)


def test_arc_classes_merge_over_pairs():
    d = parse_pd(TREFOIL)
    cls = d.arc_classes()
    assert len(set(cls.values())) == 3
    k = parse_pd("X[1,1,2,2]")
    assert len(set(k.arc_classes().values())) == 1


def test_faces_euler(corpus):
    for name, d in corpus.items():
        if not d.crossings:
            continue
        v = len(d.crossings)
        e = len(d.edges)
        f = len(d.faces())
        pieces = 2 if name == "split_unlink" else 1
        assert v - e + f == 2 * pieces, name


def test_isomorphic():
    d = parse_pd(TREFOIL)
    shifted = parse_pd("X[3,6,4,1] X[5,2,6,3] X[1,4,2,5]")
    assert isomorphic(d, shifted)
    assert not isomorphic(d, parse_pd(HOPF))


def test_signs_recomputed_from_traversal(corpus):
    for d in corpus.values():
        for x in d.crossings:
            expected = 1 if x.over_in == x.slots[3] else -1
            assert x.sign == expected
