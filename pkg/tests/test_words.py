import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from corpus import random_word, words_strategy
from graphprod import _pykernels, kernels, oracle
from graphprod.errors import BudgetExceeded, InputError
from graphprod.graph import DefiningGraph
from graphprod.words import (
    PrismWord,
    canonical_letters,
    geodesic,
    geodesic_representatives,
    head_in_parabolic,
    in_parabolic,
    in_parabolic_product,
    is_geodesic,
    is_identity,
    multiply,
    prism_length,
    reduce_to_geodesic,
    replay,
)


def W(graph, text):
    return PrismWord.parse(graph, text)


@pytest.mark.parametrize(
    "text, expected, length",
    [("a:1.b:1.a:1", "a:2.b:1", 2), ("a:1.c:1.a:1", "a:1.c:1.a:1", 3), ("", "", 0), ("b:1.a:1", "a:1.b:1", 2)],
)
def test_reduce_examples(p4, text, expected, length):
    geo, _ = reduce_to_geodesic(W(p4, text))
    assert geo.format() == expected
    assert prism_length(W(p4, text)) == length


def test_reduce_examples_agree_with_bfs(p4_z5):
    ball = oracle.prism_ball(p4_z5, 3)
    for text, length in [("a:1.b:1.a:1", 2), ("a:1.c:1.a:1", 3)]:
        key = oracle.brute_normal_form(p4_z5, W(p4_z5, text).letters)
        assert ball[key] == length


@pytest.mark.parametrize(
    "text, expected", [("a:1.b:1.a:1", (1, 3)), ("a:1.c:1.a:1", None), ("", None), ("a:1.b:1.b:2", (2, 3))]
)
def test_is_geodesic(p4, text, expected):
    assert is_geodesic(W(p4, text)) == expected


@pytest.mark.parametrize(
    "text, expected",
    [("a:1.b:1", {"a:1.b:1", "b:1.a:1"}), ("a:1.c:1", {"a:1.c:1"}), ("d:2", {"d:2"})],
)
def test_geodesic_representatives(p4, text, expected):
    assert {w.format() for w in geodesic_representatives(W(p4, text))} == expected


def test_geodesic_representatives_budget(p4):
    with pytest.raises(BudgetExceeded):
        geodesic_representatives(W(p4, "a:1.b:1.c:1.d:1"), limit=2)


def test_head_extraction(p4):
    head, tail = head_in_parabolic(W(p4, "d:1.a:1"), {"a", "b"})
    assert head.format() == "" and tail.format() == "d:1.a:1"
    head, tail = head_in_parabolic(W(p4, "a:1.d:1"), {"a", "b"})
    assert head.format() == "a:1" and tail.format() == "d:1"
    g = W(p4, "a:1.c:2.b:1.d:1")
    head, tail = head_in_parabolic(g, p4.vertices)
    assert head == geodesic(g) and tail.format() == ""


def test_parabolic_membership(p4):
    assert in_parabolic(W(p4, "a:1.b:1"), {"a", "b"})
    assert not in_parabolic(W(p4, "a:1.d:1"), {"a", "b"})
    assert in_parabolic(W(p4, ""), set())


def test_parabolic_product(p4):
    x, y = in_parabolic_product(W(p4, "a:1.c:1"), {"a", "b"}, {"b", "c", "d"})
    assert (x.format(), y.format()) == ("a:1", "c:1")
    assert in_parabolic_product(W(p4, "a:1.d:1.a:1"), {"a", "b"}, {"c", "d"}) is None
    x, y = in_parabolic_product(W(p4, ""), {"a"}, {"b"})
    assert len(x) == len(y) == 0


def test_parabolic_product_negative_by_enumeration(p4_z5):
    # with Z/5 vertex groups both parabolics are finite, so enumerate them outright
    g = W(p4_z5, "a:1.d:1.a:1")
    elems_ab = [(("a", i), ("b", j)) for i in range(5) for j in range(5)]
    elems_cd = [(("c", i), ("d", j)) for i in range(5) for j in range(5)]
    target = canonical_letters(p4_z5, g.letters)
    for x in elems_ab:
        for y in elems_cd:
            letters = [(v, e) for v, e in x + y if e]
            assert canonical_letters(p4_z5, PrismWord(p4_z5, letters).letters) != target


def test_parse_and_format(p4):
    w = W(p4, "a:1.b:-2.a:3")
    assert w.format() == "a:1.b:-2.a:3"
    assert len(w) == 3 and w[1].element == -2
    with pytest.raises(InputError):
        W(p4, "e:1")
    with pytest.raises(InputError):
        W(p4, "a:0")
    with pytest.raises(InputError):
        W(p4, "a1")


def test_free_group_letters():
    g = DefiningGraph.path("ab", "F2")
    w = W(g, "a:(x.y).b:x.a:(y^-1.x^-1)")
    assert geodesic(w).format() == "b:x"
    assert W(g, w.format()) == w


def test_trace_replays_to_canonical(p4):
    rng = random.Random(3)
    for _ in range(200):
        w = random_word(p4, rng, 12)
        geo, trace = reduce_to_geodesic(w)
        assert replay(w, trace) == geo
        assert geo.letters == canonical_letters(p4, w.letters)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("order", [0, 3, 7])
def test_kernel_parity(order):
    from graphprod import _ckernels

    rng = random.Random(order)
    adj = [0b0010, 0b0101, 0b1010, 0b0100]
    moduli = [order] * 4
    for _ in range(500):
        n = rng.randint(0, 20)
        vids = [rng.randrange(4) for _ in range(n)]
        if order:
            vals = [rng.randrange(1, order) for _ in range(n)]
        else:
            vals = [rng.choice([-3, -1, 1, 2]) for _ in range(n)]
        assert _ckernels.reduce_cyclic(adj, moduli, vids, vals) == _pykernels.reduce_cyclic(adj, moduli, vids, vals)


def test_generic_path_agrees_with_kernel(p4):
    # Z^1 routes through the generic reducer, Z through the kernel
    generic = DefiningGraph.path("abcd", "Z^1")
    rng = random.Random(9)
    for _ in range(200):
        w = random_word(p4, rng, 12)
        lifted = [(v, (x,)) for v, x in w.letters]
        out = canonical_letters(generic, lifted)
        assert [(v, x[0]) for v, x in out] == list(canonical_letters(p4, w.letters))


@given(data=st.data())
def test_geodesic_properties(p4, data):
    w = data.draw(words_strategy(p4, 12))
    geo = geodesic(w)
    assert is_geodesic(geo) is None
    assert len(geo) <= len(w)
    assert is_identity(multiply(w, geo.inverse()))
    assert geodesic(geo) == geo


@given(data=st.data())
def test_multiset_uniqueness(c5, data):
    w = data.draw(words_strategy(c5, 10))
    reps = geodesic_representatives(w)
    counts = {frozenset(Counter(r.letters).items()) for r in reps}
    assert len(counts) == 1
    assert all(len(r) == prism_length(w) for r in reps)


@given(data=st.data())
def test_inverse_and_associativity(p4, data):
    x, y, z = (data.draw(words_strategy(p4, 6)) for _ in range(3))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert is_identity(x + x.inverse())


def test_prism_length_matches_bfs_small(p4_z3):
    ball = oracle.prism_ball(p4_z3, 3)
    for key, dist in ball.items():
        assert prism_length(PrismWord(p4_z3, key)) == dist


def test_pure_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GRAPHPROD_PURE="1")
    code = (
        "from graphprod import kernels, PrismWord, DefiningGraph, geodesic;"
        "g = DefiningGraph.path('abcd');"
        "print(kernels.BACKEND, geodesic(PrismWord.parse(g, 'a:1.b:1.a:1')).format())"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "a:2.b:1"]
