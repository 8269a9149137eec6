import pytest

from braidseed import (
    AnomalyCounters,
    BraidWord,
    ColumnKind,
    EmptyVariety,
    FilmSlice,
    Marker,
    Permutation,
    Sheet,
    build_diagram,
    propagate_films,
    reflect,
    step_bridge,
    step_crossing,
    unit_vector,
)

from conftest import EXAMPLE_A, EXAMPLE_D, RUNNING, instance, perm, word


def test_build_diagram_example_a():
    diagram = build_diagram(*instance(EXAMPLE_A))
    assert diagram.bridge_positions == (1, 2, 3, 5)
    crossing = diagram.column(4)
    assert crossing.kind is ColumnKind.CROSSING
    assert crossing.gap == 2
    assert all(diagram.columns[j].position == j + 1 for j in range(diagram.k))


def test_build_diagram_single_bridge_and_running():
    diagram = build_diagram(Permutation.identity(2), word("1", 2))
    assert diagram.bridge_positions == (1,)
    diagram = build_diagram(*instance(RUNNING))
    assert len(diagram.bridge_positions) == 10
    assert [c.position for c in diagram.columns if not c.is_bridge] == [8, 11, 12]


def test_build_diagram_empty_variety():
    with pytest.raises(EmptyVariety):
        build_diagram(perm("1", 2), word("", 2))


def test_step_crossing_widens_with_over_marker():
    state = FilmSlice.of(4, [Sheet(3, 3)])
    after = step_crossing(state, 2)
    assert after.sheets == (Sheet(2, 3, 1, ((3, Marker.OVER),)),)

    state = FilmSlice.of(6, [Sheet(5, 5)])
    assert step_crossing(state, 4).sheets == (Sheet(4, 5, 1, ((5, Marker.OVER),)),)


def test_step_crossing_other_rules():
    assert step_crossing(FilmSlice.of(4, []), 2).is_empty()
    # top edge on strand i: widen up with an under marker
    assert step_crossing(FilmSlice.of(4, [Sheet(1, 1)]), 2).sheets == (
        Sheet(1, 2, 1, ((2, Marker.UNDER),)),
    )
    # bottom edge on strand i: narrow
    assert step_crossing(FilmSlice.of(5, [Sheet(2, 3, 1, ((3, Marker.OVER),))]), 2).sheets == (
        Sheet(3, 3),
    )
    # far away
    assert step_crossing(FilmSlice.of(6, [Sheet(5, 5)]), 2).sheets == (Sheet(5, 5),)


def test_step_crossing_counts_anomalies():
    counters = AnomalyCounters()
    step_crossing(FilmSlice.of(4, [Sheet(2, 2)]), 2, counters)
    assert counters.pinched == 1
    sheet = Sheet(1, 3, 1, ((2, Marker.OVER), (3, Marker.UNDER)))
    after = step_crossing(FilmSlice.of(4, [sheet]), 2, counters)
    assert after.sheets == (Sheet(1, 3, 1, ((2, Marker.UNDER), (3, Marker.OVER))),)
    assert counters.interior_swaps == 1


def test_step_bridge_cut_dies():
    after, local = step_bridge(FilmSlice.of(4, [Sheet(2, 2)]), 2)
    assert after.is_empty()
    assert local == (0, 1, 0, 0)


def test_step_bridge_passes_under_marker():
    sheet = Sheet(1, 2, 1, ((2, Marker.UNDER),))
    after, local = step_bridge(FilmSlice.of(4, [sheet]), 2)
    assert after.sheets == (sheet,)
    assert local == (0, 1, 1, 1)


def test_step_bridge_cut_keeps_lower_part():
    sheet = Sheet(2, 3, 1, ((3, Marker.OVER),))
    after, local = step_bridge(FilmSlice.of(4, [sheet]), 3)
    assert after.sheets == (Sheet(2, 2),)
    assert local == (0, 1, 1, 0)


def test_step_bridge_merges_identical_pieces():
    state = FilmSlice.of(5, [Sheet(1, 3), Sheet(1, 1)])
    after, local = step_bridge(state, 2)
    assert after.sheets == (Sheet(1, 1, 2), Sheet(3, 3))
    assert local == (1, 1, 2, 0)


def test_propagate_films_example_a():
    films = propagate_films(build_diagram(*instance(EXAMPLE_A)))
    assert [f.boundary for f in films] == EXAMPLE_A["boundaries"]
    assert all(f.frozen for f in films)
    assert [f.origin for f in films] == [1, 2, 3, 5]
    last = films[3]
    assert last.bridge_local == {5: (0, 0, 0, 1), 3: (1, 0, 0, 0), 2: (1, 1, 0, 1), 1: (0, 1, 1, 0)}


def test_propagate_films_running_example():
    films = propagate_films(build_diagram(*instance(RUNNING)))
    assert [f.origin for f in films] == RUNNING["order"]
    assert [f.boundary for f in films] == RUNNING["boundaries"]
    assert [f.vertex_id for f in films] == list(range(1, 11))
    assert [f.frozen for f in films] == [False] * 4 + [True] * 6


def test_propagate_films_example_d():
    films = propagate_films(build_diagram(*instance(EXAMPLE_D)))
    assert [f.origin for f in films] == EXAMPLE_D["order"]
    assert [f.boundary for f in films if f.frozen] == EXAMPLE_D["frozen_boundaries"]


def test_single_bridge():
    films = propagate_films(build_diagram(Permutation.identity(2), word("1", 2)))
    assert len(films) == 1
    assert films[0].boundary == (1,)
    assert films[0].frozen
    assert films[0].bridge_local == {1: (0, 0, 0, 1)}


def test_coverage_tracks_each_region():
    films = propagate_films(build_diagram(*instance(EXAMPLE_A)))
    last = films[3]
    assert last.coverage[5] == (0, 0, 1)
    assert last.coverage[4] == (0, 1, 1)
    assert last.coverage[1] == last.boundary


def test_frozen_iff_boundary_nonzero(corpus_seeds):
    for seed in corpus_seeds:
        for film in seed.films:
            assert film.frozen == any(film.boundary)
            assert film.bridge_local[film.origin] == (0, 0, 0, 1)
            if not seed.anomalies.high_multiplicity:
                assert set(film.boundary) <= {0, 1}


def test_leftmost_bridge_film_boundary(corpus_seeds):
    for seed in corpus_seeds:
        if 1 in seed.trace.J:
            film = next(f for f in seed.films if f.origin == 1)
            assert film.boundary == unit_vector(seed.beta.letters[0], seed.beta.n - 1)


def test_prepending_crossing_reflects_boundaries(corpus):
    checked = 0
    for u, beta in corpus:
        if not beta.letters:
            continue
        i = beta.letters[0]
        if not u.has_left_descent(i):
            continue
        # a crossing at position 1 strips to (s_i u, beta')
        stripped_u = u.left_multiply(i)
        stripped = BraidWord(beta.n, beta.letters[1:])
        full = propagate_films(build_diagram(u, beta))
        if any(f.origin == 1 for f in full):
            continue
        short = {f.origin + 1: f.boundary for f in propagate_films(build_diagram(stripped_u, stripped))}
        for film in full:
            assert film.boundary == reflect(i, short[film.origin])
        checked += 1
        if checked == 200:
            break
    assert checked > 0


def test_prepending_bridge_adds_cut_multiplicity(corpus_seeds):
    for seed in corpus_seeds:
        if 1 not in seed.trace.J:
            continue
        i = seed.beta.letters[0]
        stripped = seed.beta.suffix(2)
        short = {f.origin + 1: f.boundary for f in propagate_films(build_diagram(seed.u, stripped))}
        for film in seed.films:
            if film.origin == 1:
                continue
            a, b, c, d = film.bridge_local[1]
            expected = tuple(
                value + (b - d if g == i else 0) for g, value in enumerate(film.boundary, start=1)
            )
            assert short[film.origin] == expected
