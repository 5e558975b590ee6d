"""Move rewrites: site enumeration, insert/remove round trips, the triangle
slide, and invariance of every invariant under every move."""

import random

import pytest

from tanglepoly import (
    MoveError,
    MoveKind,
    apply,
    enumerate_sites,
    equal_diagrams,
    invariant_report,
    link_with_linking_numbers,
    parse,
    random_walk,
    self_crossing_polynomial,
    validate,
)
from tanglepoly.moves import KinkInsert, PairInsert, TriangleSlide
from helpers import (
    clasp,
    closed_triangle_knot,
    identity_braid,
    poly,
    positive_braid_triangle,
    random_diagram,
    virtual_trefoil,
)


def test_kink_insert_sites_on_bare_unknot():
    unknot = parse("tangle 0 0\ncomponent K closed\n")
    sites = enumerate_sites(unknot, MoveKind.KINK_INSERT)
    assert len(sites) == 4  # one gap, sign x over-choice


def test_kink_remove_single_site():
    d = parse("tangle 1 1\ncomponent K long T1:in B1:out\nO1+ U1+ O2+ U3+ U2+ O3+\n")
    sites = enumerate_sites(d, MoveKind.KINK_REMOVE)
    assert [site.label for site in sites] == ["1"]


def test_kink_insert_remove_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        d = random_diagram(rng, max_components=3, max_chords=6)
        for site in enumerate_sites(d, MoveKind.KINK_INSERT)[:6]:
            grown = apply(d, site)
            assert validate(grown) == []
            removals = [s for s in enumerate_sites(grown, MoveKind.KINK_REMOVE)
                        if not any(c.label == s.label for c in d.chords)]
            assert removals
            assert equal_diagrams(apply(grown, removals[0]), d)


def test_clasp_has_no_pair_removal():
    assert enumerate_sites(clasp(), MoveKind.PAIR_REMOVE) == []


def test_pair_insert_site_count_identity_braid():
    braid = identity_braid(2)
    sites = enumerate_sites(braid, MoveKind.PAIR_INSERT)
    assert len(sites) == 8  # 2 ordered gap pairs x sign x order variant


def test_pair_insert_remove_round_trip():
    rng = random.Random(9)
    for _ in range(15):
        d = random_diagram(rng, max_components=3, max_chords=6)
        sites = enumerate_sites(d, MoveKind.PAIR_INSERT)
        if not sites:
            continue
        for site in sites[:: max(1, len(sites) // 5)]:
            grown = apply(d, site)
            assert validate(grown) == []
            new_labels = {c.label for c in grown.chords} - {c.label for c in d.chords}
            removals = [
                s for s in enumerate_sites(grown, MoveKind.PAIR_REMOVE)
                if {s.first, s.second} == new_labels
            ]
            assert removals, (site, new_labels)
            assert equal_diagrams(apply(grown, removals[0]), d)


def test_triangle_slide_on_braid():
    braid = positive_braid_triangle()
    sites = enumerate_sites(braid, MoveKind.TRIANGLE_SLIDE)
    assert sites == [TriangleSlide("X", "Y", "Z", forward=True)]
    slid = apply(braid, sites[0])
    assert validate(slid) == []
    assert invariant_report(slid, 1, 2) == invariant_report(braid, 1, 2)
    back = enumerate_sites(slid, MoveKind.TRIANGLE_SLIDE)
    assert back == [TriangleSlide("X", "Y", "Z", forward=False)]
    assert equal_diagrams(apply(slid, back[0]), braid)


def test_triangle_slide_single_component():
    knot = closed_triangle_knot()
    assert self_crossing_polynomial(knot) == poly(1, {(1,): 2, (0,): -2})
    sites = enumerate_sites(knot, MoveKind.TRIANGLE_SLIDE)
    assert len(sites) == 1
    slid = apply(knot, sites[0])
    assert self_crossing_polynomial(slid) == poly(1, {(1,): 2, (0,): -2})
    assert equal_diagrams(apply(slid, enumerate_sites(slid, MoveKind.TRIANGLE_SLIDE)[0]),
                          knot)


def test_every_move_preserves_invariants():
    rng = random.Random(17)
    seeds = [clasp(), virtual_trefoil(), positive_braid_triangle(),
             closed_triangle_knot(), link_with_linking_numbers(2, 1)]
    seeds += [random_diagram(rng, max_components=3, max_chords=7) for _ in range(8)]
    for d in seeds:
        baseline = invariant_report(d, 1, 2)
        for kind in MoveKind:
            sites = enumerate_sites(d, kind)
            step = max(1, len(sites) // 8)
            for site in sites[::step]:
                assert invariant_report(apply(d, site), 1, 2) == baseline, (kind, site)


def test_stale_sites_raise():
    d = virtual_trefoil()
    with pytest.raises(MoveError):
        apply(d, KinkInsert("missing", 0, 1, "a"))
    with pytest.raises(MoveError):
        apply(d, KinkInsert("K", 99, 1, "a"))
    with pytest.raises(MoveError):
        apply(d, PairInsert(("K", 0), ("K", 0), 1, False))
    with pytest.raises(MoveError):
        apply(d, TriangleSlide("1", "2", "3", True))
    from tanglepoly.moves import KinkRemove, PairRemove
    with pytest.raises(MoveError):
        apply(d, KinkRemove("1"))  # endpoints are not adjacent
    with pytest.raises(MoveError):
        apply(d, PairRemove("1", "2"))


def test_walk_zero_steps():
    d = clasp()
    assert random_walk(d, 0, seed=5) == [d]


def test_walk_deterministic():
    d = virtual_trefoil()
    first = random_walk(d, 60, seed=99)
    second = random_walk(d, 60, seed=99)
    assert first == second
    other = random_walk(d, 60, seed=100)
    assert other != first


def test_walk_respects_cap():
    d = clasp()
    for step in random_walk(d, 150, seed=3, cap=10):
        assert len(step.chords) <= 10


def test_walk_on_empty_diagram():
    empty = parse("tangle 0 0\n")
    trail = random_walk(empty, 5, seed=0)
    assert len(trail) == 6
    assert all(step == empty for step in trail)


def test_walk_preserves_invariants_smoke():
    d = link_with_linking_numbers(1, 2)
    baseline = invariant_report(d, 1, 2)
    for step in random_walk(d, 100, seed=21):
        assert validate(step) == []
        assert invariant_report(step, 1, 2) == baseline
