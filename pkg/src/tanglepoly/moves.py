"""Reidemeister moves as Gauss-diagram rewrites, plus a seeded random walk.

In the Gauss-diagram model the virtual moves and the detour move are
identities, so any two arcs of the diagram can be brought together before a
classical move fires.  That makes the move patterns purely combinatorial:

* Kink (first move).  Insert one chord with adjacent endpoints on a single
  arc; any sign and either over-choice is legal (four kink variants).
  Removal matches a classical chord whose endpoints are adjacent.

* Pair (second move).  Insert two chords of opposite signs whose endpoints
  form two adjacent pairs: the over passages of both chords sit next to each
  other on one arc, the under passages next to each other on another
  (possibly the same component, never the same gap).  The under pair comes
  in both orders, covering parallel and antiparallel arcs.  Removal matches
  the same pattern.

* Triangle (third move).  One oriented variant is implemented, the one
  realized by the positive braid relation on three upward strands: three
  positive chords X, Y, Z whose six endpoints form three adjacent pairs

      over(X)  over(Y)   |   under(X)  over(Z)   |   under(Y)  under(Z)

  in this order along their arcs; the slide swaps the two entries of every
  pair simultaneously, giving the mirrored order.  Applying the slide twice
  restores the diagram.  The remaining oriented variants are compositions
  of this one with the pair moves and are not needed for a sound fuzzer.

The random walk applies a seeded stream of legal moves, preferring removals
once the chord count reaches the configured cap, and never changes any of
the polynomial or linking invariants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .diagram import (
    Chord,
    Classical,
    Component,
    TangleDiagram,
    TangleError,
    _kind_map,
    _rebuild,
    component_tokens,
)


class MoveError(TangleError):
    """Move site does not match the diagram (stale or malformed)."""


class MoveKind(Enum):
    KINK_INSERT = "kink-insert"
    KINK_REMOVE = "kink-remove"
    PAIR_INSERT = "pair-insert"
    PAIR_REMOVE = "pair-remove"
    TRIANGLE_SLIDE = "triangle-slide"


Gap = tuple[str, int]  # (component id, insertion index)


@dataclass(frozen=True)
class KinkInsert:
    component: str
    gap: int
    sign: int
    over_end: str  # "a" | "b": which passage of the new chord is the over one

    kind = MoveKind.KINK_INSERT


@dataclass(frozen=True)
class KinkRemove:
    label: str

    kind = MoveKind.KINK_REMOVE


@dataclass(frozen=True)
class PairInsert:
    over_gap: Gap
    under_gap: Gap
    lead_sign: int        # sign of the first inserted chord; the second is opposite
    antiparallel: bool    # reverse the order of the under pair

    kind = MoveKind.PAIR_INSERT


@dataclass(frozen=True)
class PairRemove:
    first: str   # chord whose over passage comes first in the over pair
    second: str

    kind = MoveKind.PAIR_REMOVE


@dataclass(frozen=True)
class TriangleSlide:
    x: str
    y: str
    z: str
    forward: bool

    kind = MoveKind.TRIANGLE_SLIDE


MoveSite = KinkInsert | KinkRemove | PairInsert | PairRemove | TriangleSlide


# ── Shared helpers ────────────────────────────────────────────────────────


def _gaps(comp: Component) -> list[int]:
    v = len(comp.visits)
    if comp.is_closed:
        return list(range(v)) if v else [0]
    return list(range(v + 1))


def _next_pos(comp: Component, pos: int) -> int | None:
    v = len(comp.visits)
    if comp.is_closed:
        return (pos + 1) % v if v > 1 else None
    return pos + 1 if pos + 1 < v else None


def _prev_pos(comp: Component, pos: int) -> int | None:
    v = len(comp.visits)
    if comp.is_closed:
        return (pos - 1) % v if v > 1 else None
    return pos - 1 if pos > 0 else None


def _adjacent(comp: Component, first: int, second: int) -> bool:
    return _next_pos(comp, first) == second


def _fresh_labels(diagram: TangleDiagram, count: int) -> list[str]:
    existing = {c.label for c in diagram.chords}
    labels: list[str] = []
    candidate = 1
    while len(labels) < count:
        name = str(candidate)
        if name not in existing:
            labels.append(name)
            existing.add(name)
        candidate += 1
    return labels


def _is_over(chord: Chord, tag: str) -> bool:
    return isinstance(chord.kind, Classical) and chord.kind.over == tag


# ── Kink moves ────────────────────────────────────────────────────────────


def _kink_insert_sites(diagram: TangleDiagram) -> list[KinkInsert]:
    sites = []
    for comp in diagram.components:
        for gap in _gaps(comp):
            for sign in (1, -1):
                for over_end in ("a", "b"):
                    sites.append(KinkInsert(comp.cid, gap, sign, over_end))
    return sites


def _apply_kink_insert(diagram: TangleDiagram, site: KinkInsert) -> TangleDiagram:
    try:
        comp = diagram.component(site.component)
    except TangleError as exc:
        raise MoveError(str(exc)) from exc
    if site.gap not in _gaps(comp):
        raise MoveError(f"gap {site.gap} is stale for component {site.component!r}")
    if site.sign not in (1, -1) or site.over_end not in ("a", "b"):
        raise MoveError("bad kink parameters")
    label = _fresh_labels(diagram, 1)[0]
    tokens = component_tokens(diagram)
    row = tokens[site.component]
    tokens[site.component] = row[:site.gap] + [(label, "a"), (label, "b")] + row[site.gap:]
    kinds = _kind_map(diagram)
    kinds[label] = Classical(site.sign, site.over_end)
    return _rebuild(diagram, tokens, kinds)


def _kink_remove_sites(diagram: TangleDiagram) -> list[KinkRemove]:
    sites = []
    for chord in diagram.chords:
        if not chord.is_classical:
            continue
        if chord.end_a.component != chord.end_b.component:
            continue
        comp = diagram.component(chord.end_a.component)
        pa, pb = chord.end_a.position, chord.end_b.position
        if _adjacent(comp, pa, pb) or _adjacent(comp, pb, pa):
            sites.append(KinkRemove(chord.label))
    return sites


def _apply_kink_remove(diagram: TangleDiagram, site: KinkRemove) -> TangleDiagram:
    if site not in _kink_remove_sites(diagram):
        raise MoveError(f"chord {site.label!r} is not a removable kink")
    return _delete_chords(diagram, {site.label})


def _delete_chords(diagram: TangleDiagram, labels: set[str]) -> TangleDiagram:
    tokens = component_tokens(diagram)
    pruned = {
        cid: [tok for tok in row if tok[0] not in labels]
        for cid, row in tokens.items()
    }
    kinds = {lab: kind for lab, kind in _kind_map(diagram).items() if lab not in labels}
    return _rebuild(diagram, pruned, kinds)


# ── Pair moves ────────────────────────────────────────────────────────────


def _all_gaps(diagram: TangleDiagram) -> list[Gap]:
    return [(comp.cid, gap) for comp in diagram.components for gap in _gaps(comp)]


def _pair_insert_sites(diagram: TangleDiagram) -> list[PairInsert]:
    gaps = _all_gaps(diagram)
    sites = []
    for over_gap in gaps:
        for under_gap in gaps:
            if over_gap == under_gap:
                continue
            for lead_sign in (1, -1):
                for antiparallel in (False, True):
                    sites.append(PairInsert(over_gap, under_gap, lead_sign, antiparallel))
    return sites


def _apply_pair_insert(diagram: TangleDiagram, site: PairInsert) -> TangleDiagram:
    if site.over_gap == site.under_gap:
        raise MoveError("over and under gaps must differ")
    if site.lead_sign not in (1, -1):
        raise MoveError("bad pair parameters")
    tokens = component_tokens(diagram)
    for cid, gap in (site.over_gap, site.under_gap):
        try:
            comp = diagram.component(cid)
        except TangleError as exc:
            raise MoveError(str(exc)) from exc
        if gap not in _gaps(comp):
            raise MoveError(f"gap {gap} is stale for component {cid!r}")
    first, second = _fresh_labels(diagram, 2)
    over_pair = [(first, "a"), (second, "a")]
    under_pair = [(first, "b"), (second, "b")]
    if site.antiparallel:
        under_pair.reverse()

    inserts = [(site.over_gap, over_pair), (site.under_gap, under_pair)]
    # same component: apply the higher insertion index first so the lower
    # one is not displaced
    inserts.sort(key=lambda item: (item[0][0], -item[0][1]))
    for (cid, gap), pair in inserts:
        row = tokens[cid]
        tokens[cid] = row[:gap] + pair + row[gap:]

    kinds = _kind_map(diagram)
    kinds[first] = Classical(site.lead_sign, "a")
    kinds[second] = Classical(-site.lead_sign, "a")
    return _rebuild(diagram, tokens, kinds)


def _pair_remove_sites(diagram: TangleDiagram) -> list[PairRemove]:
    chord_by_label = {c.label: c for c in diagram.chords}
    tokens = component_tokens(diagram)
    sites = []
    for comp in diagram.components:
        row = tokens[comp.cid]
        for pos in range(len(row)):
            nxt = _next_pos(comp, pos)
            if nxt is None:
                continue
            label1, tag1 = row[pos]
            label2, tag2 = row[nxt]
            if label1 == label2:
                continue
            c1, c2 = chord_by_label[label1], chord_by_label[label2]
            if not (_is_over(c1, tag1) and _is_over(c2, tag2)):
                continue
            if c1.kind.sign + c2.kind.sign != 0:  # type: ignore[union-attr]
                continue
            u1, u2 = c1.under_endpoint(), c2.under_endpoint()
            if u1.component != u2.component:
                continue
            under_comp = diagram.component(u1.component)
            if (_adjacent(under_comp, u1.position, u2.position)
                    or _adjacent(under_comp, u2.position, u1.position)):
                sites.append(PairRemove(label1, label2))
    return sites


def _apply_pair_remove(diagram: TangleDiagram, site: PairRemove) -> TangleDiagram:
    if site not in _pair_remove_sites(diagram):
        raise MoveError(f"chords {site.first!r}, {site.second!r} do not form a "
                        "removable pair")
    return _delete_chords(diagram, {site.first, site.second})


# ── Triangle move ─────────────────────────────────────────────────────────


def _triangle_pairs(diagram: TangleDiagram, site: TriangleSlide,
                    ) -> list[tuple[str, int, int]] | None:
    """Locate the three adjacent pairs of a triangle site on the current
    diagram; None when the pattern is absent.

    Forward pattern: over(x) followed by over(y); under(x) followed by
    over(z); under(y) followed by under(z).  Backward: every pair reversed.
    """
    try:
        cx = diagram.chord(site.x)
        cy = diagram.chord(site.y)
        cz = diagram.chord(site.z)
    except TangleError:
        return None
    if len({site.x, site.y, site.z}) != 3:
        return None
    for chord in (cx, cy, cz):
        if not chord.is_classical or chord.kind.sign != 1:  # type: ignore[union-attr]
            return None

    step = _next_pos if site.forward else _prev_pos

    def paired(first_end, second_end) -> tuple[str, int, int] | None:
        if first_end.component != second_end.component:
            return None
        comp = diagram.component(first_end.component)
        if step(comp, first_end.position) != second_end.position:
            return None
        lo, hi = first_end.position, second_end.position
        if not site.forward:
            lo, hi = hi, lo
        return (first_end.component, lo, hi)

    pairs = [
        paired(cx.over_endpoint(), cy.over_endpoint()),
        paired(cx.under_endpoint(), cz.over_endpoint()),
        paired(cy.under_endpoint(), cz.under_endpoint()),
    ]
    if any(p is None for p in pairs):
        return None
    positions = {(cid, pos) for cid, lo, hi in pairs for pos in (lo, hi)}  # type: ignore[misc]
    if len(positions) != 6:
        return None
    return pairs  # type: ignore[return-value]


def _triangle_sites(diagram: TangleDiagram) -> list[TriangleSlide]:
    chord_by_label = {c.label: c for c in diagram.chords}
    tokens = component_tokens(diagram)
    sites = []
    for comp in diagram.components:
        row = tokens[comp.cid]
        for pos in range(len(row)):
            nxt = _next_pos(comp, pos)
            if nxt is None:
                continue
            label1, tag1 = row[pos]
            label2, tag2 = row[nxt]
            if label1 == label2:
                continue
            c1, c2 = chord_by_label[label1], chord_by_label[label2]
            if not (_is_over(c1, tag1) and _is_over(c2, tag2)):
                continue
            # forward: this is the over pair (x, y); z is read off the
            # successors of the under passages
            for forward, (x, y) in ((True, (c1, c2)), (False, (c2, c1))):
                step = _next_pos if forward else _prev_pos
                ux = x.under_endpoint()
                comp_b = diagram.component(ux.component)
                spot = step(comp_b, ux.position)
                if spot is None:
                    continue
                z_label, z_tag = tokens[ux.component][spot]
                if z_label in (x.label, y.label):
                    continue
                z = chord_by_label[z_label]
                if not _is_over(z, z_tag):
                    continue
                candidate = TriangleSlide(x.label, y.label, z_label, forward)
                if _triangle_pairs(diagram, candidate) is not None:
                    sites.append(candidate)
    return sites


def _apply_triangle(diagram: TangleDiagram, site: TriangleSlide) -> TangleDiagram:
    pairs = _triangle_pairs(diagram, site)
    if pairs is None:
        raise MoveError(f"triangle {site.x!r}/{site.y!r}/{site.z!r} is not present")
    tokens = component_tokens(diagram)
    for cid, lo, hi in pairs:
        row = tokens[cid]
        row[lo], row[hi] = row[hi], row[lo]
    return _rebuild(diagram, tokens, _kind_map(diagram))


# ── Public surface ────────────────────────────────────────────────────────


def enumerate_sites(diagram: TangleDiagram, kind: MoveKind) -> list[MoveSite]:
    """Every legal application of one move kind, in a deterministic order."""
    if kind is MoveKind.KINK_INSERT:
        return list(_kink_insert_sites(diagram))
    if kind is MoveKind.KINK_REMOVE:
        return list(_kink_remove_sites(diagram))
    if kind is MoveKind.PAIR_INSERT:
        return list(_pair_insert_sites(diagram))
    if kind is MoveKind.PAIR_REMOVE:
        return list(_pair_remove_sites(diagram))
    if kind is MoveKind.TRIANGLE_SLIDE:
        return list(_triangle_sites(diagram))
    raise MoveError(f"unknown move kind {kind!r}")


def apply(diagram: TangleDiagram, site: MoveSite) -> TangleDiagram:
    """Apply one move; raises MoveError when the site is stale."""
    if isinstance(site, KinkInsert):
        return _apply_kink_insert(diagram, site)
    if isinstance(site, KinkRemove):
        return _apply_kink_remove(diagram, site)
    if isinstance(site, PairInsert):
        return _apply_pair_insert(diagram, site)
    if isinstance(site, PairRemove):
        return _apply_pair_remove(diagram, site)
    if isinstance(site, TriangleSlide):
        return _apply_triangle(diagram, site)
    raise MoveError(f"unknown move site {site!r}")


DEFAULT_CHORD_CAP = 24

_WALK_WEIGHTS = {
    MoveKind.KINK_INSERT: 2,
    MoveKind.KINK_REMOVE: 2,
    MoveKind.PAIR_INSERT: 4,
    MoveKind.PAIR_REMOVE: 4,
    MoveKind.TRIANGLE_SLIDE: 3,
}


def random_walk(diagram: TangleDiagram, steps: int, seed: int,
                cap: int = DEFAULT_CHORD_CAP) -> list[TangleDiagram]:
    """Deterministic random walk through equivalent diagrams.

    Returns steps+1 diagrams starting with the input; each successive
    diagram is one legal move from its predecessor (or a repeat when no
    move is available).  Insertions stop once the chord count would exceed
    ``cap``.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rng = random.Random(seed)
    trail = [diagram]
    current = diagram
    for _ in range(steps):
        gaps = _all_gaps(current)
        choices: list[tuple[MoveKind, object]] = []
        chord_count = len(current.chords)
        if gaps and chord_count + 1 <= cap:
            choices.append((MoveKind.KINK_INSERT, None))
        if len(gaps) >= 2 and chord_count + 2 <= cap:
            choices.append((MoveKind.PAIR_INSERT, None))
        for kind in (MoveKind.KINK_REMOVE, MoveKind.PAIR_REMOVE,
                     MoveKind.TRIANGLE_SLIDE):
            sites = enumerate_sites(current, kind)
            if sites:
                choices.append((kind, sites))
        if not choices:
            trail.append(current)
            continue
        weights = [_WALK_WEIGHTS[kind] for kind, _ in choices]
        kind, sites = rng.choices(choices, weights=weights, k=1)[0]
        if kind is MoveKind.KINK_INSERT:
            cid, gap = gaps[rng.randrange(len(gaps))]
            site: MoveSite = KinkInsert(cid, gap, rng.choice((1, -1)),
                                        rng.choice(("a", "b")))
        elif kind is MoveKind.PAIR_INSERT:
            first, second = rng.sample(range(len(gaps)), 2)
            site = PairInsert(gaps[first], gaps[second], rng.choice((1, -1)),
                              rng.choice((False, True)))
        else:
            site = sites[rng.randrange(len(sites))]  # type: ignore[arg-type]
        current = apply(current, site)
        trail.append(current)
    return trail
