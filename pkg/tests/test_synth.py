import numpy as np
import pytest

from linkdensity import DomainError, contact_series, delta_clustering, induced_graph, pair_density
from linkdensity.synth import (
    GeneratorSpec,
    gen_burst,
    gen_clique,
    gen_periodic,
    gen_poisson,
    gen_star,
    generate,
    random_pair_fixture,
)


def times_of(L):
    return [e.t for e in L.events]


def test_periodic_progression():
    assert times_of(gen_periodic("a", "b", 3, 2, 0, 10)) == [2, 5, 8]


def test_periodic_longer_than_capture():
    assert times_of(gen_periodic("a", "b", 50, 0, 0, 10)) == [0]


@pytest.mark.parametrize("period, phase", [(3, 3), (3, -1), (0, 0)])
def test_periodic_bad_args(period, phase):
    with pytest.raises(DomainError):
        gen_periodic("a", "b", period, phase, 0, 10)


def test_periodic_bad_window():
    with pytest.raises(DomainError):
        gen_periodic("a", "b", 3, 0, 10, 10)


def test_star_shape():
    L = gen_star("h", 3, 10.0, 2.0, 0.0, 100.0)
    G = induced_graph(L)
    assert G.adjacency["h"] == {"h-leaf0", "h-leaf1", "h-leaf2"}
    assert all(G.adjacency[leaf] == {"h"} for leaf in G.adjacency["h"])
    for d in (0.5, 5.0, 100.0):
        assert delta_clustering(L, "h", d) == 0.0
    assert contact_series(L, ("h", "h-leaf2")).times[0] == 4.0


def test_star_needs_leaves():
    with pytest.raises(DomainError):
        gen_star("h", 0, 10.0, 1.0, 0.0, 100.0)


def test_clique_all_pairs():
    L = gen_clique(list("abcd"), 5.0, 0.0, 50.0)
    assert len(induced_graph(L).edges) == 6


def test_poisson_seeded_and_in_window():
    a = gen_poisson("u", "v", 0.5, 10.0, 200.0, seed=3)
    b = gen_poisson("u", "v", 0.5, 10.0, 200.0, seed=3)
    assert times_of(a) == times_of(b)
    assert a.times.tobytes() == b.times.tobytes()
    assert all(10 <= t <= 200 for t in times_of(a))
    assert 50 < len(a) < 150


def test_poisson_bad_rate():
    with pytest.raises(DomainError):
        gen_poisson("u", "v", 0, 0, 10, seed=1)


def test_burst():
    L = gen_burst("a", "b", 100.0, 60.0, 4, 0.0, 1000.0)
    assert times_of(L) == [100, 120, 140, 160]
    with pytest.raises(DomainError):
        gen_burst("a", "b", 990.0, 60.0, 4, 0.0, 1000.0)


def test_periodic_dense_when_delta_covers_everything():
    # phase <= delta, period <= delta, tail gap <= delta
    L = gen_periodic("a", "b", 7.0, 3.0, 0.0, 100.0)
    cs = contact_series(L, ("a", "b"))
    assert pair_density(cs, 7.0, 100.0) == 1.0


@pytest.mark.parametrize("period, delta", [(7.0, 2.5), (10.0, 9.0), (3.0, 0.5)])
def test_periodic_closed_form(period, delta):
    omega = 100.0
    L = gen_periodic("a", "b", period, 0.0, 0.0, omega)
    t = np.array(times_of(L))
    interior = len(t) - 1
    tail = omega - t[-1]
    assert tail < period
    expected = 1 - (interior * (period - delta) + max(tail - delta, 0)) / (omega - delta)
    assert pair_density(contact_series(L, ("a", "b")), delta, omega) == pytest.approx(expected, abs=1e-12)


def test_generator_spec_round_trip():
    spec = GeneratorSpec("poisson", {"u": "a", "v": "b", "rate": 0.1}, 0.0, 500.0, seed=9)
    again = GeneratorSpec.from_dict(spec.to_dict())
    assert again == spec
    assert generate(spec).times.tobytes() == generate(again).times.tobytes()


def test_generate_all_kinds_and_union():
    specs = [
        GeneratorSpec("periodic", {"u": "a", "v": "b", "period": 10.0, "phase": 1.0}, 0, 100),
        GeneratorSpec("poisson", {"u": "a", "v": "c", "rate": 0.2}, 0, 100, seed=1),
        GeneratorSpec("burst", {"u": "c", "v": "d", "start": 5.0, "length": 2.0, "count": 3}, 0, 100),
        GeneratorSpec("star", {"hub": "h", "leaf_count": 2, "period": 20.0, "stagger": 3.0}, 0, 100),
        GeneratorSpec("clique", {"nodes": ["x", "y", "z"], "period": 30.0}, 0, 100),
    ]
    L = generate(specs)
    assert {"a", "b", "c", "d", "h", "x", "y", "z"} <= L.nodes
    assert (L.alpha, L.omega) == (0, 100)


def test_generate_rejects_unknown():
    with pytest.raises(DomainError):
        generate(GeneratorSpec("nope", {}, 0, 1))
    with pytest.raises(DomainError):
        generate(GeneratorSpec("periodic", {"u": "a"}, 0, 1))
    with pytest.raises(DomainError):
        GeneratorSpec.from_dict({"kind": "star", "bogus": 1})


def test_random_fixture_reproducible():
    a = random_pair_fixture(np.random.default_rng(5))
    b = random_pair_fixture(np.random.default_rng(5))
    assert a.times.tobytes() == b.times.tobytes() and (a.alpha, a.omega) == (b.alpha, b.omega)
