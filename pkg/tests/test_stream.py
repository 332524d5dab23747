import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkdensity import (
    BoundsError,
    EmptyStreamError,
    NodeNotFoundError,
    PairKey,
    build_stream,
    contact_series,
    induced_graph,
    neighborhood,
    pair_key,
    substream_nodes,
    substream_pairs,
)
from linkdensity.errors import LinkStreamError


def test_build_sorts_and_merges_directions():
    L = build_stream([(5, "b", "a"), (2, "a", "b")])
    assert [(e.t, e.pair) for e in L.events] == [(2.0, PairKey("a", "b")), (5.0, PairKey("a", "b"))]
    assert (L.alpha, L.omega) == (2.0, 5.0)
    assert L.bounds_from_data


def test_self_loops_dropped_and_counted():
    L = build_stream([(3, "x", "x")], alpha=0, omega=10)
    assert len(L) == 0
    assert L.dropped_self_loops == 1
    assert L.nodes == frozenset()


def test_alpha_after_event_is_bounds_error():
    with pytest.raises(BoundsError):
        build_stream([(2, "a", "b")], alpha=5)


def test_omega_before_event_is_bounds_error():
    with pytest.raises(BoundsError):
        build_stream([(2, "a", "b")], omega=1)


def test_empty_without_bounds():
    with pytest.raises(EmptyStreamError):
        build_stream([])


def test_empty_with_bounds_is_fine():
    L = build_stream([], alpha=0, omega=3)
    assert len(L) == 0 and L.duration == 3 and not L.bounds_from_data


@pytest.mark.parametrize("t", [-1.0, math.inf, math.nan])
def test_bad_timestamps(t):
    with pytest.raises(LinkStreamError):
        build_stream([(t, "a", "b")], alpha=0, omega=10)


def test_pair_key_rejects_self_pair():
    with pytest.raises(LinkStreamError):
        pair_key("a", "a")


def test_stable_sort_keeps_input_order_for_ties():
    L = build_stream([(1, "c", "d"), (1, "a", "b"), (0, "a", "c")])
    assert [str(e.pair) for e in L.events] == ["a|c", "c|d", "a|b"]


@pytest.mark.parametrize(
    "times, gaps",
    [
        ([2, 5, 8], [2, 3, 3, 2]),
        ([], [10]),
        ([0], [0, 10]),
    ],
)
def test_contact_series_gaps(times, gaps):
    raw = [(t, "u", "v") for t in times] + [(1, "x", "y")]
    L = build_stream(raw, alpha=0, omega=10)
    cs = contact_series(L, ("u", "v"))
    assert list(cs.times) == times
    assert list(cs.gaps) == gaps


def test_contact_series_unknown_labels():
    L = build_stream([(1, "a", "b")], alpha=0, omega=4)
    assert contact_series(L, ("zz", "yy")).gaps == (4.0,)


def test_duplicates_kept_as_zero_gaps():
    L = build_stream([(3, "a", "b"), (3, "b", "a")], alpha=0, omega=5)
    assert contact_series(L, ("a", "b")).gaps == (3.0, 0.0, 2.0)


def test_substream_pairs(abc_stream):
    sub = substream_pairs(abc_stream, {("a", "b")})
    assert {str(e.pair) for e in sub.events} == {"a|b"}
    assert (sub.alpha, sub.omega) == (abc_stream.alpha, abc_stream.omega)

    empty = substream_pairs(abc_stream, set())
    assert len(empty) == 0 and empty.omega == 10

    full = substream_pairs(abc_stream, abc_stream.pairs())
    assert full.events == abc_stream.events


def test_substream_nodes(abc_stream):
    sub = substream_nodes(abc_stream, {"a", "b"})
    assert {str(e.pair) for e in sub.events} == {"a|b"}
    assert len(substream_nodes(abc_stream, set())) == 0
    assert substream_nodes(abc_stream, abc_stream.nodes).events == abc_stream.events


def test_induced_graph(triangle):
    G = induced_graph(build_stream([(1, "a", "b"), (2, "a", "b")]))
    assert len(G.vertices) == 2 and len(G.edges) == 1
    assert induced_graph(build_stream([], alpha=0, omega=1)).vertices == frozenset()
    T = induced_graph(triangle)
    assert len(T.vertices) == 3 and len(T.edges) == 3
    assert neighborhood(T, "a") == {"b", "c"}


def test_neighborhood_star_and_unknown():
    G = induced_graph(build_stream([(1, "h", "l1"), (2, "h", "l2")]))
    assert neighborhood(G, "h") == {"l1", "l2"}
    assert "h" not in neighborhood(G, "h")
    with pytest.raises(NodeNotFoundError):
        neighborhood(G, "nope")


def test_node_index_requires_presence(abc_stream):
    sub = substream_pairs(abc_stream, {("a", "b")})
    with pytest.raises(NodeNotFoundError):
        sub.node_index("c")


def test_shift_and_scale():
    L = build_stream([(1, "a", "b"), (3, "a", "c")], alpha=0, omega=4)
    S = L.shifted(10).scaled(2)
    assert (S.alpha, S.omega) == (20, 28)
    assert [e.t for e in S.events] == [22, 26]


# -- properties -------------------------------------------------------------

labels = st.sampled_from(list("abcdef"))
raw_events = st.lists(
    st.tuples(st.integers(0, 1000).map(float), labels, labels), min_size=1, max_size=40
)


def _with_bounds(raw):
    return build_stream(raw, alpha=0, omega=1000)


@given(raw_events)
def test_gap_conservation(raw):
    L = _with_bounds(raw)
    for key in L.pairs():
        # integer timestamps make every difference exact
        assert sum(contact_series(L, key).gaps) == L.duration


@given(raw_events, st.sets(labels))
def test_substream_nodes_matches_pairs(raw, nodes):
    L = _with_bounds(raw)
    pairs = {(u, v) for u in nodes for v in nodes if u < v}
    assert substream_nodes(L, nodes).events == substream_pairs(L, pairs).events
    assert induced_graph(substream_nodes(L, nodes)).vertices <= nodes


@given(raw_events)
def test_rebuild_is_idempotent(raw):
    L = _with_bounds(raw)
    again = build_stream(list(L.raw_events()), alpha=L.alpha, omega=L.omega)
    assert again.events == L.events
    assert again.labels == L.labels


@given(raw_events, labels, labels)
def test_contact_series_symmetric(raw, u, v):
    if u == v:
        return
    L = _with_bounds(raw)
    assert contact_series(L, (u, v)).gaps == contact_series(L, (v, u)).gaps


@settings(max_examples=50)
@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=50))
def test_gap_sum_close_for_float_times(times):
    L = build_stream([(t, "a", "b") for t in times], alpha=0, omega=1e6)
    gaps = contact_series(L, ("a", "b")).gaps
    assert min(gaps) >= 0
    assert math.isclose(math.fsum(gaps), 1e6, rel_tol=1e-12)


def test_pair_times_are_sorted_views(abc_stream):
    for times in abc_stream.pair_times.values():
        assert np.all(np.diff(times) >= 0)
        assert not times.flags.writeable
