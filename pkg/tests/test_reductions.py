import random

import pytest

from compdiff.diffusion import is_nash, simulate
from compdiff.graph import WeightedGraph
from compdiff.reductions import (
    InvalidCertificate,
    NotNash,
    PartitionInstance,
    StandardnessViolation,
    build_gadget,
    build_is_gadget,
    build_partition_forest_gadget,
    build_partition_sp_gadget,
    certificate_to_profile,
    expected_size,
    expected_utilities,
    is_standard,
    profile_to_certificate,
    standard_conditions,
    standard_profiles,
)


def test_partition_instance_checks():
    inst = PartitionInstance((1, 3, 2, 2))
    assert inst.n == 2 and inst.total == 8 and inst.alpha == 4
    assert inst.check([1, 0]) == (0, 1)
    assert (0, 1) in inst.solutions() and (2, 3) in inst.solutions()
    with pytest.raises(InvalidCertificate, match="sums to 3"):
        inst.check([0, 2])
    with pytest.raises(InvalidCertificate, match="outside"):
        inst.check([9])
    halves = PartitionInstance((1, 1, 1, 3), require_equal_halves=True)
    assert halves.solutions() == []
    with pytest.raises(ValueError):
        PartitionInstance((1, 2, 3))
    with pytest.raises(ValueError):
        PartitionInstance((1, 0))
    with pytest.raises(ValueError, match="odd"):
        PartitionInstance((1, 2)).alpha


def test_is_gadget_size_and_hub_weight():
    g = build_is_gadget(WeightedGraph.from_edges(2, [(0, 1)]), 1)
    assert g.game.n == 35 == expected_size(g)
    assert g.metadata["lambda"] == 2**3 + 3 * 2 + 1 + 6
    assert g.game.k == 4


def test_is_gadget_on_two_isolated_vertices():
    g = build_is_gadget(WeightedGraph.from_edges(2, []), 2)
    prof = certificate_to_profile(g, [1, 0])
    assert prof == (8, 9, 14, 1, 2)
    assert [g.role_of(v) for v in prof] == ["v_0", "v_1", "b", "a_2", "a_3"]
    assert simulate(g.game, prof).utilities == (3, 3, 21, 4, 4)
    assert expected_utilities(g, [0, 1]) == (3, 3, 21, 4, 4)
    assert is_nash(g.game, prof) is None
    assert profile_to_certificate(g, prof) == (0, 1)


def test_is_certificate_validation():
    g = build_is_gadget(WeightedGraph.from_edges(3, [(0, 1)]), 2)
    with pytest.raises(InvalidCertificate, match="adjacent"):
        certificate_to_profile(g, [0, 1])
    with pytest.raises(InvalidCertificate, match="need 2"):
        certificate_to_profile(g, [2])
    # a larger independent set seats its smallest k vertices
    g1 = build_is_gadget(WeightedGraph.from_edges(3, [(0, 1)]), 1)
    assert certificate_to_profile(g1, [2, 0]) == certificate_to_profile(g1, [0])


def test_sp_gadget_fixture():
    g = build_partition_sp_gadget(PartitionInstance((2, 2, 2, 2)))
    assert g.game.n == 26 == expected_size(g)
    prof = certificate_to_profile(g, [0, 1])
    assert simulate(g.game, prof).utilities == (8,) * 6 + (9, 9)
    assert profile_to_certificate(g, prof) == (0, 1)


def test_forest_gadget_fixture():
    g = build_partition_forest_gadget(PartitionInstance((2, 6, 4, 4), True))
    assert [g.game.graph.weights[g.vertex(f"b_{j}")] for j in range(4)] == [-6, -2, -4, -4]
    assert len(g.game.graph.components()) == 2
    assert not g.metadata["doubled"]
    prof = certificate_to_profile(g, [0, 1])
    assert simulate(g.game, prof).utilities == (8,) * 4 + (9,) * 4
    assert profile_to_certificate(g, prof) == (0, 1)


def test_forest_gadget_doubles_odd_values():
    g = build_partition_forest_gadget(PartitionInstance((1, 3, 2, 2), True))
    assert g.metadata["doubled"] and g.metadata["values"] == [2, 6, 4, 4]
    assert g.metadata["alpha"] == 8
    results = {}
    for prof in standard_profiles(g):
        assert is_standard(g, prof)
        if is_nash(g.game, prof) is None:
            cert = profile_to_certificate(g, prof)
            results[cert] = prof
    assert sorted(results) == [(0, 1), (2, 3)]


def test_forest_gadget_needs_equal_halves():
    g = build_partition_forest_gadget(PartitionInstance((1, 1, 1, 1, 1, 3), True))
    with pytest.raises(InvalidCertificate):
        certificate_to_profile(g, [5])


def test_standard_profiles_only_nash_for_solutions():
    inst = PartitionInstance((1, 2, 3, 4))
    g = build_partition_sp_gadget(inst)
    nash = [profile_to_certificate(g, p) for p in standard_profiles(g) if is_nash(g.game, p) is None]
    assert sorted(nash) == sorted(inst.solutions())


def test_profile_to_certificate_rejects_non_equilibria():
    g = build_partition_sp_gadget(PartitionInstance((2, 2, 2, 2)))
    bad = tuple(g.vertex("a_2") for _ in range(g.game.k))
    with pytest.raises(NotNash) as info:
        profile_to_certificate(g, bad)
    assert info.value.counterexample.gain > 0


def test_standardness_violation_is_an_assertion():
    assert issubclass(StandardnessViolation, AssertionError)


def test_standard_conditions_keys():
    g = build_partition_sp_gadget(PartitionInstance((2, 2, 2, 2)))
    conds = standard_conditions(g, certificate_to_profile(g, [0, 1]))
    assert conds == {"B.1": True, "B.2": True, "B.3": True}
    gi = build_is_gadget(WeightedGraph.from_edges(2, []), 1)
    assert set(standard_conditions(gi, certificate_to_profile(gi, [0]))) == {"A.1", "A.2", "A.3"}


def test_standard_profiles_not_defined_for_is():
    g = build_is_gadget(WeightedGraph.from_edges(2, []), 1)
    with pytest.raises(ValueError):
        list(standard_profiles(g))


def test_build_gadget_dispatch():
    assert build_gadget("partition-sp", PartitionInstance((1, 1))).kind == "partition-sp"
    with pytest.raises(ValueError):
        build_gadget("is", WeightedGraph.from_edges(1, []))
    with pytest.raises(ValueError):
        build_gadget("vertex-cover", None)


def test_role_names_are_unique_and_cover_every_vertex():
    rng = random.Random(2)
    for _ in range(5):
        vals = tuple(rng.randint(1, 5) for _ in range(3))
        vals += (rng.randrange(2 - sum(vals) % 2, 6, 2),)
        for build in (build_partition_sp_gadget, build_partition_forest_gadget):
            g = build(PartitionInstance(vals, build is build_partition_forest_gadget))
            assert sorted(g.roles.values()) == list(range(g.game.n))
            assert all(g.role_of(v) == name for name, v in g.roles.items())
            assert g.game.n == expected_size(g)


def test_is_gadget_structure_and_lambda_guard():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(1, 5)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        src = WeightedGraph.from_edges(n, [e for e in pairs if rng.random() < 0.5])
        g = build_is_gadget(src, 1)
        lam, m = g.metadata["lambda"], src.m
        graph = g.game.graph
        assert graph.degree(g.vertex("b")) == n + lam
        assert all(graph.degree(v) == 2 for name, v in g.roles.items() if name.startswith("b_e"))
        assert set(graph.weights) == {1}
        assert lam - 2 * (n + 2) > n * n + n - m and lam > n + 1
