import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compdiff import _pure, kernels
from compdiff.diffusion import (
    NEUTRAL,
    UNDOMINATED,
    ProfileError,
    best_response,
    extra_potential,
    is_nash,
    simulate,
    utility_of_deviation,
)
from compdiff.graph import GameInstance, WeightedGraph
from reference import reference_run

N, U = NEUTRAL, UNDOMINATED


# frozen hand-simulated outcomes: (weights, edges, profile) -> (owner, time, utilities)
def test_three_path_opposite_ends(path3):
    out = simulate(path3, (0, 2))
    assert out.owner == (0, N, 1)
    assert out.time == (1, 2, 1)
    assert out.utilities == (1, 1)


def test_shared_seed_is_neutral_and_blocks(path3):
    out = simulate(path3, (1, 1))
    assert out.owner == (U, N, U)
    assert out.time == (None, 1, None)
    assert out.utilities == (0, 0)


def test_seven_path_equidistant_vertex_turns_neutral(path7):
    out = simulate(path7, (0, 4))
    assert out.owner == (0, 0, N, 1, 1, 1, 1)
    assert out.time == (1, 2, 3, 2, 1, 2, 3)
    assert out.utilities == (2, 4)


def test_seven_path_far_ends(path7):
    out = simulate(path7, (0, 6))
    assert out.owner == (0, 0, 0, N, 1, 1, 1)
    assert out.time == (1, 2, 3, 4, 3, 2, 1)
    assert out.utilities == (3, 3)


def test_neutral_cut_lets_a_slower_player_win(blocking):
    out = simulate(blocking, (0, 4, 1))
    assert out.owner == (0, 2, N, 1, 1, 1, 1)
    assert out.time == (1, 1, 2, 4, 1, 2, 3)
    assert out.utilities == (1, 4, 1)
    # player 0 is two steps from vertex 3, player 1 three steps, yet player 1 owns it
    assert out.owner[3] == 1 and out.time[3] == 4


def test_weighted_utilities_sum_owned_weights():
    g = GameInstance(WeightedGraph.path([5, -2, 3, 0, 4]), 2)
    out = simulate(g, (0, 4))
    assert out.owner == (0, 0, N, 1, 1)
    assert out.utilities == (3, 4)


def test_unseeded_component_stays_undominated():
    g = GameInstance(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]), 1)
    out = simulate(g, (0,))
    assert out.owner == (0, 0, U, U)
    assert out.utilities == (2,)


def test_profile_validation(path7):
    with pytest.raises(ProfileError, match="k=2"):
        simulate(path7, (0,))
    with pytest.raises(ProfileError, match="outside"):
        simulate(path7, (0, 7))


def test_outcome_to_dict_labels(path3):
    d = simulate(path3, (1, 1)).to_dict()
    assert d == {"owner": ["undominated", "neutral", "undominated"], "time": [None, 1, None], "utilities": [0, 0]}


# deviations, Nash checks, best responses


def test_deviation_to_own_seed_is_identity(path7):
    assert utility_of_deviation(path7, (0, 4), 1, 4) == 4


def test_single_vertex_deviation_takes_its_weight():
    g = GameInstance(WeightedGraph.from_edges(1, [], [7]), 1)
    assert utility_of_deviation(g, (0,), 0, 0) == 7


def test_deviation_onto_occupied_seed_gives_zero(path7):
    assert utility_of_deviation(path7, (0, 4), 0, 4) == 0


def test_lone_player_floods_path_from_any_seed():
    g = GameInstance(WeightedGraph.path([1, 1, 1]), 1)
    assert is_nash(g, (1,)) is None
    assert is_nash(g, (0,)) is None


def test_far_ends_on_seven_path_not_nash(path7):
    cex = is_nash(path7, (0, 6))
    assert (cex.player, cex.vertex, cex.gain) == (0, 1, 1)
    # moving one step further in is also strictly better
    assert utility_of_deviation(path7, (0, 6), 0, 2) > 3


def test_nash_on_seven_path_centre_pair(path7):
    assert is_nash(path7, (3, 4)) is None


def test_best_response_total_weight_when_alone():
    g = GameInstance(WeightedGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)], [2, 0, 5, 1]), 1)
    assert best_response(g, (3,), 0) == (0, 8)


def test_best_response_only_vacant_vertex_pays():
    g = GameInstance(WeightedGraph.path([5, 1]), 2)
    assert best_response(g, (1, 0), 0) == (1, 1)


def test_best_response_tie_goes_to_smaller_id():
    g = GameInstance(WeightedGraph.path([1] * 7), 2)
    assert best_response(g, (0, 3), 0) == (2, 3)


def test_extra_potential_on_empty_path_is_total():
    g = GameInstance(WeightedGraph.path([2, -5, 1]), 1)
    assert extra_potential(g, ()) == -2


# properties against the independent reference


@st.composite
def games(draw, max_n=8, max_k=3):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    weights = draw(st.lists(st.integers(-3, 5), min_size=n, max_size=n))
    k = draw(st.integers(1, max_k))
    profile = tuple(draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k)))
    return GameInstance(WeightedGraph.from_edges(n, edges, weights), k), profile


def _ref_owner(o):
    return {None: U, "neutral": N}.get(o, o)


@settings(max_examples=400, deadline=None)
@given(games())
def test_engine_matches_reference(case):
    game, prof = case
    g = game.graph
    owner, time, util = reference_run(g.n, g.edges(), g.weights, prof)
    out = simulate(game, prof)
    assert out.owner == tuple(_ref_owner(o) for o in owner)
    assert out.time == tuple(time)
    assert out.utilities == tuple(util)


@settings(max_examples=200, deadline=None)
@given(games(), st.randoms(use_true_random=False))
def test_permuting_players_permutes_utilities(case, rnd):
    game, prof = case
    perm = list(range(len(prof)))
    rnd.shuffle(perm)
    base = simulate(game, prof).utilities
    moved = simulate(game, tuple(prof[p] for p in perm)).utilities
    assert moved == tuple(base[p] for p in perm)


@settings(max_examples=200, deadline=None)
@given(games())
def test_conservation_partition_and_termination(case):
    game, prof = case
    g = game.graph
    out = simulate(game, prof)
    owned = [v for v, o in enumerate(out.owner) if o >= 0]
    assert sum(out.utilities) == sum(g.weights[v] for v in owned)
    for v, (o, t) in enumerate(zip(out.owner, out.time)):
        assert (o == U) == (t is None)
        if t is not None:
            assert 1 <= t <= g.n


@settings(max_examples=200, deadline=None)
@given(games())
def test_each_decision_is_explained_by_previous_round(case):
    game, prof = case
    g = game.graph
    out = simulate(game, prof)
    seeds = set(prof)
    for v in range(g.n):
        t = out.time[v]
        if t is None:
            # an undecided vertex has no dominated neighbour at all
            assert all(out.owner[u] < 0 for u in g.neighbors(v))
            continue
        if v in seeds:
            assert t == 1
            continue
        claim = {out.owner[u] for u in g.neighbors(v) if out.time[u] == t - 1 and out.owner[u] >= 0}
        if out.owner[v] == N:
            assert len(claim) >= 2
        else:
            assert claim == {out.owner[v]}


@settings(max_examples=200, deadline=None)
@given(games())
def test_players_stay_in_their_component(case):
    game, prof = case
    g = game.graph
    comp_of = {}
    for c, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = c
    out = simulate(game, prof)
    for v, o in enumerate(out.owner):
        if o >= 0:
            assert comp_of[v] == comp_of[prof[o]]


@settings(max_examples=150, deadline=None)
@given(games(max_n=6))
def test_is_nash_matches_full_deviation_scan(case):
    game, prof = case
    base = simulate(game, prof).utilities
    first = None
    for i in range(game.k):
        for v in range(game.n):
            alt = list(prof)
            alt[i] = v
            gain = simulate(game, alt).utilities[i] - base[i]
            if gain > 0 and first is None:
                first = (i, v, gain)
    cex = is_nash(game, prof)
    if first is None:
        assert cex is None
    else:
        # co-located players share deviation values, so the reported player may be a twin
        assert cex is not None and cex.gain > 0
        assert prof[cex.player] == prof[first[0]] and cex.vertex == first[1]


# pure fallback and compiled extension


@settings(max_examples=300, deadline=None)
@given(games())
def test_pure_and_selected_backend_agree(case):
    game, prof = case
    csr = game.graph.csr
    a = _pure.simulate(*csr, prof)
    b = kernels.simulate(*csr, prof)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    assert _pure.first_improvement(*csr, prof) == kernels.first_improvement(*csr, prof)
    assert _pure.extra_potential(*csr, prof) == kernels.extra_potential(*csr, prof)
    for i in range(game.k):
        for v in range(game.n):
            assert _pure.deviation_utility(*csr, prof, i, v) == kernels.deviation_utility(*csr, prof, i, v)


@pytest.mark.skipif(os.environ.get("COMPDIFF_PURE") == "1", reason="pure backend forced")
def test_compiled_backend_is_built():
    assert kernels.BACKEND == "compiled"


def test_environment_variable_forces_pure_backend():
    code = "from compdiff import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, COMPDIFF_PURE="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "pure"
