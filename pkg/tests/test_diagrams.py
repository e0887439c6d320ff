import pytest
from hypothesis import given, strategies as st

from corpus import identity_corpus, words_strategy
from graphprod.diagrams import (
    DiskDiagram,
    DualGraph,
    build_diagram,
    carrier_word,
    combing_functions,
    commuting_operation,
    concatenate,
    is_left_combed,
    left_comb,
    reduction_control_check,
    right_comb,
    validate,
)
from graphprod.errors import InputError, InvalidDiagram
from graphprod.words import PrismWord, geodesic


def W(graph, text):
    return PrismWord.parse(graph, text)


def mirror(w):
    return build_diagram(w + w.inverse()), (len(w), 2 * len(w))


def test_two_block_example(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:1.b:-1.a:-2"))
    assert d.blocks == (DualGraph("a", (0, 2, 4)), DualGraph("b", (1, 3)))
    assert validate(d) == []


def test_non_identity_rejected(p4):
    with pytest.raises(InputError, match="not an identity word"):
        build_diagram(W(p4, "a:1.b:1"))


def test_empty_word(p4):
    d = build_diagram(W(p4, ""))
    assert d.blocks == () and validate(d) == []


def test_validate_flags_singleton_block(p4):
    d = DiskDiagram(p4, W(p4, "a:1.a:-1").letters, (DualGraph("a", (0,)), DualGraph("a", (1,))))
    assert any("block size < 2" in p for p in validate(d))


def test_validate_flags_illegal_crossing(p4):
    d = DiskDiagram(
        p4, W(p4, "a:1.c:1.a:-1.c:-1").letters, (DualGraph("a", (0, 2)), DualGraph("c", (1, 3)))
    )
    assert any("illegal crossing" in p for p in validate(d))


def test_validate_flags_double_root_in_geodesic_range(p4):
    d = build_diagram(W(p4, "a:1.a:1.a:-2"))
    assert validate(d) == []
    assert validate(d, (0, 2))


def test_json_round_trip(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:1.b:-1.a:-2"))
    assert DiskDiagram.from_json(p4, d.to_json()) == d


def test_rotation_preserves_validity(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:1.b:-1.a:-2"))
    for k in range(len(d)):
        assert validate(d.rotate(k)) == []


def test_concatenate_mirror_with_mirror(p4):
    w = W(p4, "a:1.c:2.b:1.d:-1")
    d, _ = mirror(w)
    n = len(w)
    glued = concatenate(d, d, (0, n), (n, 2 * n))
    assert glued.word.letters == (w + w.inverse()).letters
    assert glued == d


def test_concatenate_empty_shared_range(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:-1.b:-1"))
    empty = build_diagram(W(p4, ""))
    assert concatenate(d, empty, (0, 0), (0, 0)) == d


def test_concatenate_rejects_mismatched_ranges(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:-1.b:-1"))
    with pytest.raises(InputError):
        concatenate(d, d, (0, 1), (0, 1))


def test_concatenate_vanishing_generator(p4):
    # h = h1 h2 h3 with h2 cancelling inside; replace h2 by its geodesic u
    h = W(p4, "a:1.b:1.b:-1.d:1")
    w = geodesic(h)
    d1 = build_diagram(h + w.inverse())
    sub = W(p4, "b:1.b:-1")
    u = geodesic(sub)
    d2 = build_diagram(sub.inverse() + u)
    glued = concatenate(d1, d2, (1, 3), (0, 2))
    assert validate(glued) == []
    assert glued.word.format() == "a:1.d:1.d:-1.a:-1"


def test_combing_functions_example(p4):
    g = W(p4, "a:1.b:1.a:1")
    w = geodesic(g)
    d = build_diagram(g + w.inverse())
    fn = combing_functions(d, (3, 5))
    assert fn.beginning == {1: 1, 2: 2}
    assert left_comb(d, (3, 5)).diagram == d
    assert combing_functions(build_diagram(W(p4, "")), (0, 0)).beginning == {}


def test_commuting_operation(p4):
    d = build_diagram(W(p4, "a:1.b:1.a:-1.b:-1"))
    swapped = commuting_operation(d, 0)
    assert swapped.word.format() == "b:1.a:1.a:-1.b:-1"
    assert validate(swapped) == []
    bad = build_diagram(W(p4, "a:1.c:1.c:-1.a:-1"))
    with pytest.raises(InputError):
        commuting_operation(bad, 0)


@pytest.mark.parametrize("comb, key", [(left_comb, "beginning"), (right_comb, "ending")])
def test_combing_sorts_and_tracks(p4, comb, key):
    for s, w_range in identity_corpus(p4, 150, seed=11):
        d = build_diagram(s)
        before = combing_functions(d, w_range)
        res = comb(d, w_range)
        after = combing_functions(res.diagram, w_range)
        values = [getattr(after, key)[i] for i in sorted(getattr(after, key))]
        assert values == sorted(set(values))
        for i, j in enumerate(res.permutation, start=1):
            assert after.beginning[i] == before.beginning[j]
            assert after.ending[i] == before.ending[j]
        assert geodesic(res.word) == geodesic(PrismWord(p4, s.letters[w_range[0]:w_range[1]]).inverse())


def test_carrier_word_examples(p4):
    w = W(p4, "a:1.c:1.b:2")
    d, _ = mirror(w)
    a_block = next(i for i, b in enumerate(d.blocks) if b.vertex == "a")
    assert carrier_word(d, a_block, 0).format() == ""
    d = build_diagram(W(p4, "a:1.b:1.a:-1.b:-1"))
    assert carrier_word(d, 0, 0).format() == "b:1"


def test_carrier_word_detects_corruption(p4):
    letters = W(p4, "a:1.c:1.a:-1.c:-1").letters
    d = DiskDiagram(p4, letters, (DualGraph("a", (0, 2)), DualGraph("c", (1, 3))))
    with pytest.raises(InvalidDiagram):
        carrier_word(d, 0, 0)


def test_reduction_control_degenerate(p4):
    d, rng = mirror(W(p4, "a:1"))
    assert reduction_control_check(d, rng, 1, 1, [1], 1)


def test_reduction_control_rejects_uncombed(p4):
    g = W(p4, "b:1.a:1")
    w = W(p4, "a:1.b:1")  # same element, beginning (2, 1) so not left-combed
    d = build_diagram(g + w.inverse())
    assert not is_left_combed(d, (2, 4))
    with pytest.raises(InputError):
        reduction_control_check(d, (2, 4), 1, 2, [2], 2)


@given(data=st.data())
def test_build_diagram_property(c5, data):
    w = data.draw(words_strategy(c5, 8))
    c = data.draw(words_strategy(c5, 3))
    s = c + w + w.inverse() + c.inverse()
    d = build_diagram(s)
    assert validate(d) == []
    geo = geodesic(w)
    d2 = build_diagram(w + geo.inverse())
    assert validate(d2, (len(w), len(w) + len(geo))) == []


def test_diagram_corpus_is_valid(c5):
    for s, w_range in identity_corpus(c5, 200, seed=5):
        assert validate(build_diagram(s), w_range) == []
