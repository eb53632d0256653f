"""Combinatorial knot diagrams: PD codes, Gauss codes, Wirtinger presentations,
crossing changes, mirrors, and greedy Reidemeister I/II simplification.

Conventions
-----------
A diagram with c crossings has 2c edges labeled 1..2c in traversal order.
Each crossing stores four edge labels in PD slot order ``(a, b, c, d)``:
slot ``a`` is the incoming under-strand and the remaining slots follow
counterclockwise around the crossing.  Because labels follow the traversal,
the outgoing under-strand always satisfies ``c == a + 1 (mod 2c)``.

The over-strand occupies slots ``b`` and ``d``.  For a positive crossing
(over direction crossed with under direction is a positive frame) the over
strand enters at slot ``d`` and leaves at slot ``b``, so ``b == d + 1``;
for a negative crossing it enters at ``b`` and leaves at ``d``, so
``d == b + 1``.  The sign is therefore recoverable from the slots alone
whenever c >= 2, and the text PD format stores only the four labels.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_left
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


class DiagramError(ValueError):
    """Structurally invalid diagram or illegal diagram edit."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: PD slots ``(a, b, c, d)`` plus orientation sign."""

    id: int
    slots: tuple[int, int, int, int]
    sign: int

    @property
    def under_in(self) -> int:
        return self.slots[0]

    @property
    def under_out(self) -> int:
        return self.slots[2]

    @property
    def over_in(self) -> int:
        return self.slots[3] if self.sign > 0 else self.slots[1]

    @property
    def over_out(self) -> int:
        return self.slots[1] if self.sign > 0 else self.slots[3]


@dataclass(frozen=True)
class Diagram:
    """A knot diagram as an ordered tuple of crossings (empty = unknot)."""

    crossings: tuple[Crossing, ...] = ()

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    def crossing_by_id(self, cid: int) -> Crossing:
        for x in self.crossings:
            if x.id == cid:
                return x
        raise DiagramError(f"no crossing with id {cid}")


def _wrap(label: int, n_edges: int) -> int:
    return (label - 1) % n_edges + 1


def validate(diagram: Diagram) -> str | None:
    """Check Diagram invariants; return None if ok, else the first defect."""
    c = diagram.n_crossings
    if c == 0:
        return None
    n = 2 * c
    ids = [x.id for x in diagram.crossings]
    if len(set(ids)) != c:
        return f"duplicate crossing ids in {sorted(ids)}"
    seen: dict[int, int] = {}
    for x in diagram.crossings:
        for e in x.slots:
            if not 1 <= e <= n:
                return f"crossing {x.id}: edge label {e} outside 1..{n}"
            seen[e] = seen.get(e, 0) + 1
    for e in range(1, n + 1):
        if seen.get(e, 0) != 2:
            return f"edge label {e} appears {seen.get(e, 0)} times, expected 2"
    ins: set[int] = set()
    outs: set[int] = set()
    for x in diagram.crossings:
        if x.sign not in (1, -1):
            return f"crossing {x.id}: sign {x.sign} not +-1"
        a, b, cc, d = x.slots
        if cc != _wrap(a + 1, n):
            return f"crossing {x.id}: under-out {cc} != under-in {a} + 1"
        if x.sign > 0 and b != _wrap(d + 1, n):
            return f"crossing {x.id}: positive crossing needs b == d + 1"
        if x.sign < 0 and d != _wrap(b + 1, n):
            return f"crossing {x.id}: negative crossing needs d == b + 1"
        for e in (x.under_in, x.over_in):
            if e in ins:
                return f"edge {e} is incoming at two passages"
            ins.add(e)
        for e in (x.under_out, x.over_out):
            if e in outs:
                return f"edge {e} is outgoing at two passages"
            outs.add(e)
    # labels 1..2c with in/out coverage imply a single closed component
    return None


def check(diagram: Diagram) -> Diagram:
    """Validate, raising DiagramError on the first defect."""
    defect = validate(diagram)
    if defect is not None:
        raise DiagramError(defect)
    return diagram


# ---------------------------------------------------------------------------
# construction from raw crossing data


def canonical_diagram(
    raw: Sequence[tuple[Sequence[Hashable], int]],
    start_edge: Hashable | None = None,
) -> Diagram:
    """Build a canonical Diagram from crossings over arbitrary edge ids.

    ``raw`` holds ``(slots, sign)`` pairs in the PD slot convention but with
    arbitrary hashable edge ids.  Edges are relabeled 1..2c by traversal from
    ``start_edge`` (default: minimum edge id), crossings are renumbered 1..c
    in order of first passage.
    """
    c = len(raw)
    if c == 0:
        return Diagram(())
    in_map: dict[Hashable, tuple[int, str]] = {}
    out_map: dict[Hashable, tuple[int, str]] = {}
    for idx, (slots, sign) in enumerate(raw):
        if sign not in (1, -1):
            raise DiagramError(f"crossing {idx}: sign {sign} not +-1")
        a, b, cc, d = slots
        over_in, over_out = (d, b) if sign > 0 else (b, d)
        for e, kind in ((a, "U"), (over_in, "O")):
            if e in in_map:
                raise DiagramError(f"edge {e!r} is incoming at two passages")
            in_map[e] = (idx, kind)
        for e, kind in ((cc, "U"), (over_out, "O")):
            if e in out_map:
                raise DiagramError(f"edge {e!r} is outgoing at two passages")
            out_map[e] = (idx, kind)
    if set(in_map) != set(out_map):
        raise DiagramError("incoming and outgoing edge sets differ")
    if start_edge is None:
        start_edge = min(in_map)  # type: ignore[type-var]
    if start_edge not in in_map:
        raise DiagramError(f"start edge {start_edge!r} unknown")

    # walk the strand: passage position p (0-based) has in-edge label p+1
    pos: dict[tuple[int, str], int] = {}
    e = start_edge
    for p in range(2 * c):
        idx, kind = in_map[e]
        pos[(idx, kind)] = p
        out_slots = raw[idx][0]
        sign = raw[idx][1]
        if kind == "U":
            e = out_slots[2]
        else:
            e = out_slots[1] if sign > 0 else out_slots[3]
        if e == start_edge and p != 2 * c - 1:
            raise DiagramError(
                f"traversal closed after {p + 1} of {2 * c} passages: "
                "diagram has more than one component"
            )
    n = 2 * c
    order = sorted(range(c), key=lambda idx: min(pos[(idx, "U")], pos[(idx, "O")]))
    crossings = []
    for new_id, idx in enumerate(order, start=1):
        sign = raw[idx][1]
        pu = pos[(idx, "U")] + 1
        po = pos[(idx, "O")] + 1
        if sign > 0:
            slots = (pu, _wrap(po + 1, n), _wrap(pu + 1, n), po)
        else:
            slots = (pu, po, _wrap(pu + 1, n), _wrap(po + 1, n))
        crossings.append(Crossing(new_id, slots, sign))
    return check(Diagram(tuple(crossings)))


# ---------------------------------------------------------------------------
# traversal views


def gauss_code(diagram: Diagram) -> tuple[tuple[int, str, int], ...]:
    """Signed Gauss sequence ``(crossing id, 'O'|'U', sign)`` from edge 1."""
    check(diagram)
    entries: dict[int, tuple[int, str, int]] = {}
    for x in diagram.crossings:
        entries[x.under_in] = (x.id, "U", x.sign)
        entries[x.over_in] = (x.id, "O", x.sign)
    return tuple(entries[e] for e in range(1, diagram.n_edges + 1))


@dataclass(frozen=True)
class Relation:
    """Wirtinger relation ``out = over^sign * in * over^-sign`` at a crossing."""

    in_arc: int
    over_arc: int
    out_arc: int
    sign: int
    crossing_id: int


@dataclass(frozen=True)
class WirtingerPresentation:
    """Arc generators plus one conjugation relation per crossing."""

    n_arcs: int
    relations: tuple[Relation, ...]
    arc_edges: tuple[tuple[int, ...], ...]

    @property
    def n_relations(self) -> int:
        return len(self.relations)


def _arc_table(diagram: Diagram) -> tuple[list[int], tuple[tuple[int, ...], ...]]:
    """Sorted under-in edges and the edge runs forming each arc."""
    n = diagram.n_edges
    under_ins = sorted(x.under_in for x in diagram.crossings)
    c = len(under_ins)
    arcs = []
    for k in range(c):
        lo = under_ins[k - 1] + 1 if k > 0 else under_ins[-1] + 1
        hi = under_ins[k]
        if k == 0:
            run = tuple(range(lo, n + 1)) + tuple(range(1, hi + 1))
        else:
            run = tuple(range(lo, hi + 1))
        arcs.append(run)
    return under_ins, tuple(arcs)


def _edge_arc(under_ins: list[int], e: int) -> int:
    """Arc index of edge e: arc k ends at the k-th sorted under-in edge."""
    k = bisect_left(under_ins, e)
    return k % len(under_ins)


def wirtinger(diagram: Diagram) -> WirtingerPresentation:
    """Wirtinger presentation read off the diagram.

    Arcs are maximal edge runs between under-passages, indexed 0..c-1 in
    order of their final edge label.  Each crossing contributes the relation
    ``out = over^s * in * over^-s`` with s the crossing sign.  The
    0-crossing diagram yields the unknot presentation: one generator, no
    relations.
    """
    check(diagram)
    if diagram.n_crossings == 0:
        return WirtingerPresentation(1, (), ((),))
    under_ins, arcs = _arc_table(diagram)
    rels = []
    for x in diagram.crossings:
        rels.append(
            Relation(
                in_arc=_edge_arc(under_ins, x.under_in),
                over_arc=_edge_arc(under_ins, x.over_in),
                out_arc=_edge_arc(under_ins, x.under_out),
                sign=x.sign,
                crossing_id=x.id,
            )
        )
    return WirtingerPresentation(len(arcs), tuple(rels), arcs)


def arc_descriptors(diagram: Diagram) -> tuple[tuple[int, ...], ...]:
    """Describe each arc as signed crossing ids: (-start, over..., -end).

    The arc leaves the under-passage of crossing ``start``, runs over the
    listed crossings in order, and dives under crossing ``end``.  This is the
    strand naming used when seeding homomorphism labelings by hand.
    """
    check(diagram)
    if diagram.n_crossings == 0:
        return ((),)
    under_ins, arcs = _arc_table(diagram)
    by_under_out = {x.under_out: x.id for x in diagram.crossings}
    by_under_in = {x.under_in: x.id for x in diagram.crossings}
    over_at = {x.over_in: x.id for x in diagram.crossings}
    out = []
    for run in arcs:
        overs = tuple(over_at[e] for e in run[:-1] if e in over_at)
        out.append((-by_under_out[run[0]],) + overs + (-by_under_in[run[-1]],))
    return tuple(out)


# ---------------------------------------------------------------------------
# structural edits


def change_crossings(diagram: Diagram, changes: Iterable[int]) -> Diagram:
    """Switch over/under at the given crossing ids (slots rotate, sign flips)."""
    check(diagram)
    wanted = set(changes)
    known = {x.id for x in diagram.crossings}
    unknown = wanted - known
    if unknown:
        raise DiagramError(f"unknown crossing ids {sorted(unknown)}")
    out = []
    for x in diagram.crossings:
        if x.id not in wanted:
            out.append(x)
            continue
        a, b, c, d = x.slots
        if x.sign > 0:
            out.append(Crossing(x.id, (d, a, b, c), -1))
        else:
            out.append(Crossing(x.id, (b, c, d, a), 1))
    return check(Diagram(tuple(out)))


def mirror(diagram: Diagram) -> Diagram:
    """Mirror image: reverse the rotational slot order, flip every sign."""
    check(diagram)
    out = [
        Crossing(x.id, (x.slots[0], x.slots[3], x.slots[2], x.slots[1]), -x.sign)
        for x in diagram.crossings
    ]
    return check(Diagram(tuple(out)))


def faces(diagram: Diagram) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Faces of the underlying 4-valent planar map as half-edge orbits.

    A half-edge is ``(crossing index, slot index)``.  The successor of a
    half-edge crosses its edge to the twin slot and rotates one step
    counterclockwise; orbits of this map are the diagram faces.
    """
    check(diagram)
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(diagram.crossings):
        for si, e in enumerate(x.slots):
            occ.setdefault(e, []).append((ci, si))
    twin: dict[tuple[int, int], tuple[int, int]] = {}
    for ends in occ.values():
        twin[ends[0]] = ends[1]
        twin[ends[1]] = ends[0]
    unseen = set(twin)
    out = []
    while unseen:
        h = min(unseen)
        face = []
        while h in unseen:
            unseen.remove(h)
            face.append(h)
            cj, sj = twin[h]
            h = (cj, (sj + 1) % 4)
        out.append(tuple(face))
    return tuple(out)


# ---------------------------------------------------------------------------
# Reidemeister I/II simplification


def _passage_seq(diagram: Diagram) -> tuple[list[tuple[int, str]], list[int]]:
    """Traversal-ordered passages as (crossing index, 'U'|'O') plus signs."""
    seq: list[tuple[int, str]] = [None] * diagram.n_edges  # type: ignore[list-item]
    for ci, x in enumerate(diagram.crossings):
        seq[x.under_in - 1] = (ci, "U")
        seq[x.over_in - 1] = (ci, "O")
    return seq, [x.sign for x in diagram.crossings]


def _rebuild(seq: list[tuple[int, str]], signs: list[int]) -> Diagram:
    """Diagram from a passage sequence; crossing ids follow first passages."""
    raw = []
    pos: dict[int, dict[str, int]] = {}
    for p, (ci, kind) in enumerate(seq):
        pos.setdefault(ci, {})[kind] = p + 1
    n = len(seq)
    order = sorted(pos, key=lambda ci: min(pos[ci].values()))
    for ci in order:
        pu, po = pos[ci]["U"], pos[ci]["O"]
        if signs[ci] > 0:
            slots = (pu, _wrap(po + 1, n), _wrap(pu + 1, n), po)
        else:
            slots = (pu, po, _wrap(pu + 1, n), _wrap(po + 1, n))
        raw.append((slots, signs[ci]))
    return canonical_diagram(raw, start_edge=1)


def _find_r1(seq: list[tuple[int, str]]) -> int | None:
    """Index of a passage whose cyclic successor is the same crossing."""
    n = len(seq)
    for p in range(n):
        if seq[p][0] == seq[(p + 1) % n][0]:
            return p
    return None


def _find_r2(diagram: Diagram) -> tuple[int, int] | None:
    """Crossing index pair bounding a removable Reidemeister-II bigon."""
    for face in faces(diagram):
        if len(face) != 2:
            continue
        (ci, si), (cj, sj) = face
        if ci == cj:
            continue
        x, y = diagram.crossings[ci], diagram.crossings[cj]
        e1 = x.slots[si]
        e2 = y.slots[sj]
        e1_over_both = e1 in (x.over_in, x.over_out) and e1 in (y.over_in, y.over_out)
        e2_over_both = e2 in (x.over_in, x.over_out) and e2 in (y.over_in, y.over_out)
        e1_under_both = e1 in (x.under_in, x.under_out) and e1 in (
            y.under_in,
            y.under_out,
        )
        e2_under_both = e2 in (x.under_in, x.under_out) and e2 in (
            y.under_in,
            y.under_out,
        )
        if (e1_over_both and e2_under_both) or (e2_over_both and e1_under_both):
            return ci, cj
    return None


def simplify(diagram: Diagram) -> Diagram:
    """Greedy exhaustive Reidemeister I and II reduction.

    Kinks and over/over bigons are removed until none remains.  The result is
    ambient-isotopic to the input with a non-increasing crossing count; edges
    are relabeled by traversal and crossing ids reassigned in traversal order.
    """
    check(diagram)
    current = diagram
    while current.n_crossings > 0:
        seq, signs = _passage_seq(current)
        p = _find_r1(seq)
        if p is not None:
            drop = seq[p][0]
            seq = [entry for entry in seq if entry[0] != drop]
            if not seq:
                current = Diagram(())
                break
            kept = sorted(set(ci for ci, _ in seq))
            renum = {ci: k for k, ci in enumerate(kept)}
            seq = [(renum[ci], kind) for ci, kind in seq]
            signs = [signs[ci] for ci in kept]
            current = _rebuild(seq, signs)
            continue
        pair = _find_r2(current)
        if pair is None:
            break
        drop_set = set(pair)
        seq = [entry for entry in seq if entry[0] not in drop_set]
        if not seq:
            current = Diagram(())
            break
        kept = sorted(set(ci for ci, _ in seq))
        renum = {ci: k for k, ci in enumerate(kept)}
        seq = [(renum[ci], kind) for ci, kind in seq]
        signs = [signs[ci] for ci in kept]
        current = _rebuild(seq, signs)
    return current


# ---------------------------------------------------------------------------
# text PD format


def write_pd(diagram: Diagram) -> str:
    """Canonical text PD: one ``X a,b,c,d`` line per crossing."""
    check(diagram)
    lines = [f"X {x.slots[0]},{x.slots[1]},{x.slots[2]},{x.slots[3]}" for x in diagram.crossings]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_pd(text: str) -> Diagram:
    """Parse the text PD format (``X a,b,c,d`` lines, ``#`` comments)."""
    rows: list[tuple[int, tuple[int, int, int, int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if not body.startswith("X"):
            raise DiagramError(f"line {lineno}: expected 'X a,b,c,d', got {line!r}")
        parts = body[1:].replace(",", " ").split()
        if len(parts) != 4:
            raise DiagramError(f"line {lineno}: expected 4 edge labels, got {len(parts)}")
        try:
            slots = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise DiagramError(f"line {lineno}: non-integer edge label") from exc
        rows.append((lineno, slots))  # type: ignore[arg-type]
    c = len(rows)
    n = 2 * c
    crossings = []
    for cid, (lineno, slots) in enumerate(rows, start=1):
        a, b, cc, d = slots
        pos = b == _wrap(d + 1, n)
        neg = d == _wrap(b + 1, n)
        if pos:
            sign = 1
        elif neg:
            sign = -1
        else:
            raise DiagramError(
                f"line {lineno}: over-strand labels {b},{d} are not consecutive"
            )
        crossings.append(Crossing(cid, (a, b, cc, d), sign))
    diagram = Diagram(tuple(crossings))
    defect = validate(diagram)
    if defect is not None:
        raise DiagramError(defect)
    return diagram


def fingerprint(diagram: Diagram) -> str:
    """SHA-256 hash of the canonical PD text."""
    return hashlib.sha256(write_pd(diagram).encode()).hexdigest()
