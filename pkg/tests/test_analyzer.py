import json

import pytest

from graphprod.analyzer import (
    SubgroupSpec,
    analyze,
    distortion_table,
    fit_qi_constants,
    homogeneity_index,
    join_busting_profile,
    max_join_subword,
    measure_constants,
    obstruction_certificates,
    reduction_control_cases,
    sample_words,
    subgroup_diagram,
    verify_certificate,
)
from graphprod.errors import InputError
from graphprod.words import PrismWord


def W(graph, text):
    return PrismWord.parse(graph, text)


@pytest.fixture
def h1(p4):
    return SubgroupSpec.parse(p4, ["a:1.d:1"], "H1")


@pytest.fixture
def h2(p4):
    return SubgroupSpec.parse(p4, ["a:1.b:1"], "H2")


@pytest.fixture
def trivial(p4):
    return SubgroupSpec(p4, [], "trivial")


# {a,b,c} is the join of {b} with {a,c}, so the whole of a.b.c is a join word
@pytest.mark.parametrize(
    "text, expected", [("a:1.d:1.a:1.d:1", 1), ("a:1.b:1.c:1", 3), ("a:1.b:1.c:1.d:1", 3), ("a:1", 1), ("", 0)]
)
def test_max_join_subword(p4, text, expected):
    assert max_join_subword(W(p4, text))[0] == expected


def test_max_join_subword_needs_geodesic(p4):
    with pytest.raises(InputError):
        max_join_subword(W(p4, "a:1.b:2.a:3"))


def test_join_busting_profiles(h1, h2, trivial):
    assert join_busting_profile(h1, 20).per_horizon == [1] * 20
    # (a,1)(b,1) to the n has geodesic (a,n)(b,n): a single length-2 join word
    assert join_busting_profile(h2, 20).per_horizon == [2] * 20
    assert join_busting_profile(trivial, 5).n_obs == 0


def test_profile_is_monotone(p4):
    h = SubgroupSpec.parse(p4, ["a:1.c:1", "b:1.d:1"])
    per = join_busting_profile(h, 6).per_horizon
    assert per == sorted(per)


def test_constants(h1, p4, trivial):
    c = measure_constants(h1, 6)
    assert (c.d_obs, c.k_obs) == (1, 0)
    h = SubgroupSpec.parse(p4, ["a:1.b:1", "b:-1.c:1"])
    assert measure_constants(h, 4).d_obs >= 2
    c = measure_constants(trivial, 4)
    assert (c.d_obs, c.k_obs, c.c_obs) == (0, 0, 0)


def test_vanishing_generators_detected(p4):
    h = SubgroupSpec.parse(p4, ["a:1", "b:1.c:1.b:-1"])
    c = measure_constants(h, 4)
    assert c.k_obs == 0
    h = SubgroupSpec.parse(p4, ["a:1", "a:1.c:1"])
    assert measure_constants(h, 3).k_obs >= 1


def test_distortion_rows(h1, h2, trivial):
    rows = distortion_table(h1, 5)
    assert rows[0].h_length == rows[0].prism == rows[0].star == 0
    assert all((r.prism, r.star) == (2 * r.h_length, 2 * r.h_length) for r in rows)
    rows = distortion_table(h2, 5)
    assert all((r.prism, r.star) == (2, 1) for r in rows[1:])
    assert len(distortion_table(trivial, 3)) == 1


def test_fit_qi_constants(h1):
    lam, c = fit_qi_constants(distortion_table(h1, 5), h1.m_h)
    assert lam == 2.0 and c == 0.0


@pytest.mark.parametrize("text, vertices, expected", [("a:1.d:1.a:1", {"a", "d"}, 2), ("a:1", {"a", "d"}, None)])
def test_homogeneity(p4, text, vertices, expected):
    assert homogeneity_index(W(p4, text), vertices) == expected


def test_certificates(h1, h2, trivial, p4):
    assert obstruction_certificates(h1, 12) == []
    certs = obstruction_certificates(h2, 3)
    assert certs and certs[0].element == "a:1.b:1" and certs[0].join == ["a", "b"]
    assert certs[0].conjugator == "" and certs[0].infinite_order
    assert all(verify_certificate(p4, c) for c in certs)
    assert obstruction_certificates(trivial, 3) == []


def test_torsion_certificate_flag(p4_z5):
    h = SubgroupSpec.parse(p4_z5, ["a:1.b:1"])
    certs = obstruction_certificates(h, 2)
    assert certs and not any(c.infinite_order for c in certs)


def test_sampling_is_seeded(p4):
    h = SubgroupSpec.parse(p4, ["a:1.c:1", "b:1.d:1"])
    assert sample_words(h, 9, 3, budget=10, per_length=20) == sample_words(h, 9, 3, budget=10, per_length=20)
    assert len(sample_words(h, 2, 0, budget=10**5, per_length=5)) == 12


def test_reduction_control_weaker_bound(p4):
    # the inequality the combing argument actually yields
    h = SubgroupSpec.parse(p4, ["a:1.d:1", "b:1.c:2.a:1"])
    for length in range(1, 5):
        for symbols in sample_words(h, length, 0, 2000, 40):
            for left, right, big_l, big_r, _ in reduction_control_cases(h, subgroup_diagram(h, symbols)):
                assert right - left <= (big_r - big_l + 1) * h.m_h - 1


def test_report_is_deterministic(h1):
    a = analyze(h1, 4, seed=3, config_text="x").to_json()
    b = analyze(h1, 4, seed=3, config_text="x").to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["constants"]["D_observed"] == 1 and doc["seed"] == 3
    assert doc["hypotheses"] == {"finite_vertex_groups": False, "isolated_vertices": False}
