import pytest
from hypothesis import given, strategies as st

from graphprod.errors import InputError
from graphprod.groups import Free, FiniteCyclic, FreeAbelian, InfiniteCyclic, parse_group

Z, Z5, Z3 = InfiniteCyclic(), FiniteCyclic(5), FiniteCyclic(3)
F1, F2 = Free(1), Free(2)


def test_infinite_cyclic_products():
    assert Z.multiply(2, 3) == 5
    assert Z.multiply(2, -2) == Z.identity()


@pytest.mark.parametrize(
    "group, x, expected",
    [(Z, 3, -3), (Z5, 2, 3), (F2, (1, 2), (-2, -1))],
    ids=["Z", "Z/5", "F2"],
)
def test_invert(group, x, expected):
    assert group.invert(x) == expected


def test_identity_recognition():
    assert Z.is_identity(0)
    assert Z5.is_identity(5)
    assert F2.is_identity(F2.multiply((1,), (-1,)))


@pytest.mark.parametrize(
    "group, radius, expected",
    [(Z, 2, {-2, -1, 0, 1, 2}), (Z3, 5, {0, 1, 2}), (F1, 1, {(), (1,), (-1,)})],
)
def test_enumerate_ball(group, radius, expected):
    assert group.enumerate_ball(radius) == expected


def test_free_reduction_and_text():
    x = F2.parse_element("x.y^-1.y.x")
    assert x == (1, 1)
    assert F2.format_element(x) == "x^2"
    assert F2.format_tagged((1, -2)) == "F2:x.y^-1"
    assert F2.parse_tagged("F2:x.y^-1") == (1, -2)
    with pytest.raises(InputError):
        F2.check((1, -1))


@pytest.mark.parametrize("text", ["Z", "Z/7", "Z^3", "F4"])
def test_parse_group_round_trip(text):
    assert parse_group(text).tag == text


def test_parse_group_rejects_junk():
    with pytest.raises(InputError):
        parse_group("Q")


def test_order_of():
    assert Z5.order_of(2) == 5
    assert FiniteCyclic(6).order_of(4) == 3
    assert Z.order_of(3) is None
    assert Z.order_of(0) == 1


GROUP_ELEMENTS = [
    (Z, st.integers(-50, 50)),
    (Z5, st.integers(0, 4)),
    (FreeAbelian(2), st.tuples(st.integers(-9, 9), st.integers(-9, 9))),
    (F2, st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8).map(Free._reduce)),
]


@pytest.mark.parametrize("group, elements", GROUP_ELEMENTS, ids=lambda g: getattr(g, "tag", ""))
@given(data=st.data())
def test_group_laws(group, elements, data):
    x, y, z = (data.draw(elements) for _ in range(3))
    e = group.identity()
    assert group.multiply(x, e) == x == group.multiply(e, x)
    assert group.is_identity(group.multiply(group.invert(x), x))
    assert group.multiply(group.multiply(x, y), z) == group.multiply(x, group.multiply(y, z))
    assert group.parse_tagged(group.format_tagged(x)) == x
