"""Index-polynomial invariants of virtual tangles.

The building block is the intersection index of a self-crossing: smoothing
the crossing along the orientation splits its component into two pieces, and
the index is the signed count of the remaining self-crossings that join the
two pieces.  The sign rule is applied combinatorially: a crossing joining
the pieces counts +sign when its over passage lies on piece 1 and -sign
otherwise (declaring piece 1 the upper strand flips a crossing exactly when
piece 1 ran underneath).  Crossings involving other components are ignored.

On top of the index sit the polynomial invariants:

* self-crossing polynomial   sum over self-crossings of sign * (t_i^|index| - 1)
* linking polynomial         adds [a*vlk(i,j) + b*vlk(j,i)] * t_i t_j over pairs i<j
* Laurent linking polynomial adds a*vlk(i,j)*t_i t_j^-1 + b*vlk(j,i)*t_i^-1 t_j

where vlk(i,j) counts, with sign, the crossings in which component i passes
over component j.  Components are numbered from 1 in list order, matching
the variable names t1..tn.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import Chord, Component, TangleDiagram, TangleError
from .laurent import LaurentPoly, RationalLike, as_fraction, mono, zero


class InvariantError(TangleError):
    """Invariant evaluated outside its preconditions."""


@dataclass(frozen=True)
class SmoothSplit:
    """Outcome of smoothing a self-crossing along the orientation.

    ``piece1`` and ``piece2`` are disjoint sets of visit positions on the
    smoothed component, covering everything except the smoothed chord's own
    two endpoints.  On a long component piece 1 is always the long piece
    (the one keeping the boundary ends) and piece 2 the closed middle; on a
    closed component piece 1 is the arc following end_a, a deterministic but
    arbitrary choice that only affects the sign of the index.
    """

    chord: str
    component: str
    piece1: frozenset[int]
    piece2: frozenset[int]
    long_piece1: bool

    def swapped(self) -> "SmoothSplit":
        return SmoothSplit(self.chord, self.component, self.piece2, self.piece1,
                           self.long_piece1)


@dataclass(frozen=True)
class IndexValue:
    signed: int

    @property
    def absolute(self) -> int:
        return abs(self.signed)


def _self_chord(diagram: TangleDiagram, label: str) -> tuple[Chord, Component]:
    chord = diagram.chord(label)
    if not chord.is_classical:
        raise InvariantError(f"chord {label!r} is singular and cannot be smoothed")
    if chord.end_a.component != chord.end_b.component:
        raise InvariantError(f"chord {label!r} joins two distinct components")
    return chord, diagram.component(chord.end_a.component)


def oriented_smoothing(diagram: TangleDiagram, label: str) -> SmoothSplit:
    """Split a component at a classical self-crossing.

    Closed component: piece 1 holds the visits strictly between end_a and
    end_b in traversal order, piece 2 the complementary arc.  Long
    component: piece 2 is the closed loop strictly between the two passages,
    piece 1 the rest of the strand.
    """
    chord, comp = _self_chord(diagram, label)
    size = len(comp.visits)
    pa, pb = chord.end_a.position, chord.end_b.position
    if comp.is_closed:
        piece1 = []
        pos = (pa + 1) % size
        while pos != pb:
            piece1.append(pos)
            pos = (pos + 1) % size
        piece2 = []
        pos = (pb + 1) % size
        while pos != pa:
            piece2.append(pos)
            pos = (pos + 1) % size
        return SmoothSplit(label, comp.cid, frozenset(piece1), frozenset(piece2), False)
    first, second = min(pa, pb), max(pa, pb)
    middle = frozenset(range(first + 1, second))
    rest = frozenset(range(0, first)) | frozenset(range(second + 1, size))
    return SmoothSplit(label, comp.cid, rest, middle, True)


def index_from_split(diagram: TangleDiagram, split: SmoothSplit) -> IndexValue:
    """Signed intersection index for a given labeling of the two pieces."""
    signed = 0
    for other in diagram.chords:
        if other.label == split.chord or not other.is_classical:
            continue
        if (other.end_a.component != split.component
                or other.end_b.component != split.component):
            continue
        pos_a, pos_b = other.end_a.position, other.end_b.position
        in1_a = pos_a in split.piece1
        in1_b = pos_b in split.piece1
        if in1_a == in1_b:
            continue  # both endpoints in the same piece: no crossing between pieces
        over_pos = other.over_endpoint().position
        sign = other.kind.sign  # type: ignore[union-attr]
        signed += sign if over_pos in split.piece1 else -sign
    return IndexValue(signed)


def intersection_index(diagram: TangleDiagram, label: str) -> IndexValue:
    """Intersection index of a classical self-crossing.

    Only the absolute value is independent of the piece labeling; the split
    used here is the deterministic one from ``oriented_smoothing``.
    """
    return index_from_split(diagram, oriented_smoothing(diagram, label))


def _require_classical(diagram: TangleDiagram, what: str) -> None:
    for chord in diagram.chords:
        if not chord.is_classical:
            raise InvariantError(
                f"{what} is undefined on diagrams with singular chords "
                f"(found {chord.label!r}); resolve them first")


def _component_number(diagram: TangleDiagram, number: int) -> Component:
    if not 1 <= number <= len(diagram.components):
        raise InvariantError(
            f"component number {number} out of range 1..{len(diagram.components)}")
    return diagram.components[number - 1]


def self_crossing_polynomial(diagram: TangleDiagram) -> LaurentPoly:
    """Sum over classical self-crossings of sign * (t_i^|index| - 1).

    One variable per component; only nonnegative exponents occur.
    """
    _require_classical(diagram, "the self-crossing polynomial")
    n = len(diagram.components)
    result = zero(n)
    comp_number = {comp.cid: i for i, comp in enumerate(diagram.components)}
    for chord in diagram.chords:
        if chord.end_a.component != chord.end_b.component:
            continue
        i = comp_number[chord.end_a.component]
        magnitude = intersection_index(diagram, chord.label).absolute
        sign = chord.kind.sign  # type: ignore[union-attr]
        exps = [0] * n
        exps[i] = magnitude
        result = result + mono(sign, exps) + mono(-sign, [0] * n)
    return result


def virtual_linking_number(diagram: TangleDiagram, i: int, j: int) -> int:
    """Signed count of classical crossings where component i goes over j.

    Components are numbered from 1 in list order.  Unlike the classical
    linking number this is not symmetric in (i, j).
    """
    ci = _component_number(diagram, i)
    cj = _component_number(diagram, j)
    if i == j:
        raise InvariantError("virtual linking number needs two distinct components")
    total = 0
    for chord in diagram.chords:
        if not chord.is_classical:
            continue
        comps = {chord.end_a.component, chord.end_b.component}
        if comps != {ci.cid, cj.cid}:
            continue
        if chord.over_endpoint().component == ci.cid:
            total += chord.kind.sign  # type: ignore[union-attr]
    return total


def wriggle_number(diagram: TangleDiagram, i: int, j: int) -> int:
    """vlk(i, j) - vlk(j, i); antisymmetric in the pair."""
    return virtual_linking_number(diagram, i, j) - virtual_linking_number(diagram, j, i)


def _cross_terms(diagram: TangleDiagram, a: Fraction, b: Fraction,
                 laurent: bool) -> LaurentPoly:
    n = len(diagram.components)
    result = zero(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            forward = virtual_linking_number(diagram, i, j)
            backward = virtual_linking_number(diagram, j, i)
            if laurent:
                up = [0] * n
                up[i - 1], up[j - 1] = 1, -1
                down = [0] * n
                down[i - 1], down[j - 1] = -1, 1
                result = result + mono(a * forward, up) + mono(b * backward, down)
            else:
                exps = [0] * n
                exps[i - 1] = exps[j - 1] = 1
                result = result + mono(a * forward + b * backward, exps)
    return result


def linking_polynomial(diagram: TangleDiagram, a: RationalLike,
                       b: RationalLike) -> LaurentPoly:
    """Self-crossing polynomial plus [a*vlk(i,j) + b*vlk(j,i)] * t_i t_j."""
    _require_classical(diagram, "the linking polynomial")
    return self_crossing_polynomial(diagram) + _cross_terms(
        diagram, as_fraction(a), as_fraction(b), laurent=False)


def laurent_linking_polynomial(diagram: TangleDiagram, a: RationalLike,
                               b: RationalLike) -> LaurentPoly:
    """Self-crossing polynomial plus a*vlk(i,j)*t_i t_j^-1 + b*vlk(j,i)*t_i^-1 t_j.

    The inverse exponents keep vlk(i,j) and vlk(j,i) in separate monomials,
    which is what makes this family strictly stronger than the plain
    linking polynomial.
    """
    _require_classical(diagram, "the Laurent linking polynomial")
    return self_crossing_polynomial(diagram) + _cross_terms(
        diagram, as_fraction(a), as_fraction(b), laurent=True)


def henrich_turaev_polynomial(diagram: TangleDiagram) -> LaurentPoly:
    """Index polynomial of a one-component closed diagram (a virtual knot).

    Coincides with the self-crossing polynomial in one variable.
    """
    if len(diagram.components) != 1 or not diagram.components[0].is_closed:
        raise InvariantError("expected exactly one closed component")
    return self_crossing_polynomial(diagram)


def long_ordered_polynomial(diagram: TangleDiagram) -> LaurentPoly:
    """Signed-index polynomial of a one-component long diagram.

    Fixing the long piece as piece 1 makes the signed index well defined, so
    the exponents keep their signs; negative indices produce genuine Laurent
    terms.  Strictly finer than the unsigned polynomial on long diagrams.
    """
    if len(diagram.components) != 1 or not diagram.components[0].is_long:
        raise InvariantError("expected exactly one long component")
    _require_classical(diagram, "the ordered polynomial")
    result = zero(1)
    for chord in diagram.chords:
        signed = intersection_index(diagram, chord.label).signed
        sign = chord.kind.sign  # type: ignore[union-attr]
        result = result + mono(sign, (signed,)) + mono(-sign, (0,))
    return result


# ── Report assembly ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class InvariantReport:
    """All invariant values of one diagram at fixed (a, b)."""

    a: Fraction
    b: Fraction
    psc: LaurentPoly
    plk: LaurentPoly
    plk_laurent: LaurentPoly
    vlk: tuple[tuple[int, ...], ...]
    wriggle: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "psc": self.psc.to_json_terms(),
            "plk": {"a": str(self.a), "b": str(self.b),
                    "value": self.plk.to_json_terms()},
            "plkL": {"a": str(self.a), "b": str(self.b),
                     "value": self.plk_laurent.to_json_terms()},
            "vlk": [list(row) for row in self.vlk],
            "wriggle": [list(row) for row in self.wriggle],
        }


def invariant_report(diagram: TangleDiagram, a: RationalLike = 1,
                     b: RationalLike = 1) -> InvariantReport:
    """Evaluate every invariant once; the self-crossing polynomial is shared
    between the two linking polynomials."""
    a_frac, b_frac = as_fraction(a), as_fraction(b)
    psc = self_crossing_polynomial(diagram)
    plk = psc + _cross_terms(diagram, a_frac, b_frac, laurent=False)
    plk_laurent = psc + _cross_terms(diagram, a_frac, b_frac, laurent=True)
    n = len(diagram.components)
    vlk_matrix = tuple(
        tuple(0 if i == j else virtual_linking_number(diagram, i, j)
              for j in range(1, n + 1))
        for i in range(1, n + 1))
    wriggle_matrix = tuple(
        tuple(vlk_matrix[i][j] - vlk_matrix[j][i] for j in range(n))
        for i in range(n))
    return InvariantReport(a_frac, b_frac, psc, plk, plk_laurent,
                           vlk_matrix, wriggle_matrix)
